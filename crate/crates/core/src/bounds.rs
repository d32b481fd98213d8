//! Lower bounds of the form `|F|^(1/n)`, evaluated in the log domain.
//!
//! Family sizes such as `160511 · 3^1605100` never fit a machine number, so a
//! size is kept as a product of prime-power-like factors and only its natural
//! log is formed. An independent 256-bit evaluation is available through
//! [`SymbolicSize::precise_root`].

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use serde::Serialize;

/// Working precision for the high-precision route, in bits.
pub const PRECISE_BITS: usize = 256;

/// `exp(log_size / universe)` with its inputs.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LogBound {
    pub log_size: f64,
    pub universe: u64,
    pub value: f64,
}

impl LogBound {
    pub fn recompute(&self) -> f64 {
        (self.log_size / self.universe as f64).exp()
    }
}

/// `exp(size_log / universe)`, never exponentiating the size itself.
pub fn mu_lower_bound(size_log: f64, universe: u64) -> LogBound {
    assert!(universe >= 1, "universe must be positive");
    assert!(size_log >= 0.0, "a family size is at least 1");
    LogBound {
        log_size: size_log,
        universe,
        value: (size_log / universe as f64).exp(),
    }
}

/// A family size written as `∏ base^exponent`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymbolicSize {
    pub factors: Vec<(u64, u64)>,
}

impl SymbolicSize {
    pub fn new(factors: &[(u64, u64)]) -> Self {
        SymbolicSize {
            factors: factors.to_vec(),
        }
    }

    pub fn ln(&self) -> f64 {
        self.factors
            .iter()
            .map(|&(base, exp)| exp as f64 * (base as f64).ln())
            .sum()
    }

    pub fn bound(&self, universe: u64) -> LogBound {
        mu_lower_bound(self.ln(), universe)
    }

    /// `size^(1/universe)` evaluated with [`PRECISE_BITS`]-bit arithmetic.
    pub fn precise_root(&self, universe: u64) -> BigFloat {
        let p = PRECISE_BITS;
        let rm = RoundingMode::ToEven;
        let mut cc = Consts::new().expect("constants cache");
        let mut log = BigFloat::from_u64(0, p);
        for &(base, exp) in &self.factors {
            let term = BigFloat::from_u64(base, p).ln(p, rm, &mut cc).mul(
                &BigFloat::from_u64(exp, p),
                p,
                rm,
            );
            log = log.add(&term, p, rm);
        }
        log.div(&BigFloat::from_u64(universe, p), p, rm)
            .exp(p, rm, &mut cc)
    }

    /// The high-precision root as a decimal string.
    pub fn precise_root_string(&self, universe: u64) -> String {
        let mut cc = Consts::new().expect("constants cache");
        self.precise_root(universe)
            .format(Radix::Dec, RoundingMode::ToEven, &mut cc)
            .expect("finite value")
    }

    /// The high-precision root rounded to `f64`.
    pub fn precise_root_f64(&self, universe: u64) -> f64 {
        decimal_to_f64(&self.precise_root_string(universe))
    }
}

fn decimal_to_f64(s: &str) -> f64 {
    s.parse()
        .unwrap_or_else(|_| panic!("unparseable decimal {s}"))
}

/// Size `|C_n|·|G|^(n-1)` of `C_n ≀ G`, where `|G| = g_base^g_exp`.
pub fn cn_wreath_size(n: u64, g_base: u64, g_exp: u64) -> SymbolicSize {
    SymbolicSize::new(&[(n, 1), (g_base, g_exp * (n - 1))])
}

/// The bound from `C_160511 ≀ (C_9 ≀ C_3)`: `160511 · 3^1605100` sets on 4333797 elements.
pub fn construction3_bound() -> LogBound {
    let (size, universe) = construction3();
    size.bound(universe)
}

/// Symbolic size and universe of `C_160511 ≀ (C_9 ≀ C_3)`.
pub fn construction3() -> (SymbolicSize, u64) {
    let n = 160_511;
    (cn_wreath_size(n, 3, 10), n * 27)
}

/// A published lower bound together with the threshold it is claimed to beat.
#[derive(Clone, Debug, Serialize)]
pub struct ClaimedBound {
    pub id: u8,
    pub expression: &'static str,
    pub size: SymbolicSize,
    pub bound: LogBound,
    pub threshold: f64,
}

impl ClaimedBound {
    pub fn holds(&self) -> bool {
        self.bound.value > self.threshold
    }
}

/// The three bounds: `3^(1/3)`, `3^(10/27)`, and the `C_160511` wreath.
pub fn claimed_bounds() -> Vec<ClaimedBound> {
    let make = |id, expression, size: SymbolicSize, universe, threshold| {
        let bound = size.bound(universe);
        ClaimedBound {
            id,
            expression,
            size,
            bound,
            threshold,
        }
    };
    let (c3_size, c3_universe) = construction3();
    vec![
        make(1, "3^(1/3)", SymbolicSize::new(&[(3, 1)]), 3, 1.44),
        make(2, "3^(10/27)", SymbolicSize::new(&[(3, 10)]), 27, 1.502144),
        make(
            3,
            "(160511*3^1605100)^(1/4333797)",
            c3_size,
            c3_universe,
            1.502148,
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cube_root_of_three() {
        let b = mu_lower_bound(3f64.ln(), 3);
        assert!((b.value - 1.442_249_570_307_408_4).abs() < 1e-15);
        assert!(b.value > 1.44);
    }

    #[test]
    fn construction2_value() {
        let b = mu_lower_bound(10.0 * 3f64.ln(), 27);
        // 3^(10/27) = 1.50214402903720754...
        assert!((b.value - 1.502_144_029_037_207_5).abs() < 1e-15);
        assert!(b.value > 1.502144);
    }

    #[test]
    fn single_set_gives_one() {
        assert_eq!(mu_lower_bound(0.0, 5).value, 1.0);
    }

    #[test]
    fn construction3_is_symbolic_and_consistent() {
        let (size, universe) = construction3();
        assert_eq!(universe, 160_511 * 27);
        assert_eq!(universe, 4_333_797);
        assert_eq!(size.factors, vec![(160_511, 1), (3, 1_605_100)]);
        let b = construction3_bound();
        let eq2 = mu_lower_bound(10.0 * 3f64.ln(), 27);
        assert!(b.value > eq2.value);
        // True value 1.50214437564700349547...; this sits below the 1.502148 claim.
        assert!((b.value - 1.502_144_375_647_003_5).abs() < 1e-14);
    }

    #[test]
    fn f64_and_precise_routes_agree() {
        for claimed in claimed_bounds() {
            let precise = claimed.size.precise_root_f64(claimed.bound.universe);
            assert!(
                (precise - claimed.bound.value).abs() < 1e-13,
                "bound {}: {} vs {}",
                claimed.id,
                precise,
                claimed.bound.value
            );
        }
    }

    #[test]
    fn recompute_matches() {
        for claimed in claimed_bounds() {
            let b = claimed.bound;
            assert!((b.recompute() - b.value).abs() <= 1e-12 * b.value);
        }
    }

    #[test]
    fn claim_status() {
        let holds: Vec<bool> = claimed_bounds().iter().map(ClaimedBound::holds).collect();
        assert_eq!(holds, vec![true, true, false]);
    }
}
