//! Odd- and even-sunflowers in set families.
//!
//! * [`family`]: bit-vector backed set families and multifamilies.
//! * [`detect`]: classic/even/odd sunflower detection with certificates.
//! * [`construct`]: `C_n`, direct sums, wreath products and friends.
//! * [`bounds`]: log-domain growth-rate lower bounds.
//! * [`extremal`]: exact extremal sizes on tiny universes.
//! * [`mos`]: minimal odd-sunflowers up to isomorphism.
//! * [`reduction`]: 3-dimensional matching to odd-sunflower containment.
//! * [`io`]: text formats for families, 3DM instances and reduction legends.

pub mod bounds;
pub mod construct;
pub mod detect;
pub mod error;
pub mod extremal;
pub mod family;
pub mod io;
pub mod mos;
pub mod reduction;

pub use error::{Error, Result};
pub use family::{make_family, DegreeVector, ElemSet, Members, MultiFamily, SetFamily};
