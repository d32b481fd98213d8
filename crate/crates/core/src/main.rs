use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use oddsun::bounds::{claimed_bounds, ClaimedBound};
use oddsun::construct::{self, DEFAULT_MEMBER_CAP};
use oddsun::detect::{
    find_classic_sunflower, find_even_sunflower, find_odd_sunflower, OddSearch, DEFAULT_BUDGET,
};
use oddsun::io::{self, ParsedFamily};
use oddsun::mos::{enumerate_mos, MosSearchConfig};
use oddsun::reduction::{reduce_3dm_with, solve_3dm, verify_reduction_with, TagGadget};
use oddsun::{Error, SetFamily};

const EXIT_FREE: u8 = 0;
const EXIT_WITNESS: u8 = 1;
const EXIT_BUDGET: u8 = 2;
const EXIT_ERROR: u8 = 3;

#[derive(Parser)]
#[command(
    name = "oddsun",
    version,
    about = "Odd- and even-sunflower tools for set families"
)]
struct Cli {
    /// Emit one JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Look for a sunflower of the given kind in a family file.
    ///
    /// Exit status: 0 none contained, 1 witness found, 2 budget exceeded, 3 error.
    Check {
        kind: Kind,
        family: PathBuf,
        /// Print the witness as input line numbers.
        #[arg(long)]
        witness: bool,
        /// Node budget for the odd search.
        #[arg(long, env = "ODDSUN_BUDGET", default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Build a family and write it as a family file.
    Construct {
        #[command(subcommand)]
        which: Construction,
        /// Output path; the family goes to stdout when omitted.
        #[arg(long, global = true)]
        out: Option<PathBuf>,
        /// Refuse to materialize more members than this.
        #[arg(long, global = true, env = "ODDSUN_MAX_MEMBERS", default_value_t = DEFAULT_MEMBER_CAP)]
        max_members: usize,
    },
    /// Evaluate the growth-rate lower bounds against their stated thresholds.
    Bounds {
        /// All three bounds (the default).
        #[arg(long, conflicts_with = "eq")]
        all: bool,
        /// Only bound 1, 2 or 3.
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        eq: Option<u8>,
    },
    /// Enumerate k-uniform minimal odd-sunflowers up to isomorphism.
    Mos {
        k: usize,
        /// Largest universe searched.
        #[arg(long)]
        max_n: Option<usize>,
        /// Largest family searched.
        #[arg(long)]
        max_members: Option<usize>,
        /// Write the classes as sections of one family file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reduce a 3DM instance to a family; the legend goes next to `--out`.
    Reduce {
        instance: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Compare matching existence with odd-sunflower existence.
        #[arg(long)]
        verify: bool,
        #[arg(long, value_enum, default_value_t = Gadget::ApexCycle)]
        gadget: Gadget,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Odd,
    Even,
    Classic,
}

#[derive(Clone, Copy, ValueEnum)]
enum Gadget {
    ApexCycle,
    SharedCn,
}

#[derive(Subcommand)]
enum Construction {
    /// All (n-1)-subsets of {1..n}.
    Cn { n: usize },
    /// C_n together with {1..n}.
    Cnplus { n: usize },
    /// Direct sum of two family files.
    Dsum { f: PathBuf, g: PathBuf },
    /// Wreath product of two family files.
    Wreath { f: PathBuf, g: PathBuf },
    /// Sets meeting each of floor(n/3) disjoint triples in two elements.
    Construction1 { n: usize },
    /// C_9 wreath C_3.
    Construction2,
    /// Root-to-leaf paths of the complete binary tree with k levels.
    Tree { k: usize },
}

struct Report {
    text: String,
    json: serde_json::Value,
    code: u8,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_ERROR } else { 0 });
        }
    };
    match run(&cli.command) {
        Ok(report) => {
            if cli.json {
                println!("{}", report.json);
            } else {
                print!("{}", report.text);
            }
            ExitCode::from(report.code)
        }
        Err(e) => {
            if cli.json {
                println!("{}", json!({ "error": e.to_string() }));
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(EXIT_ERROR)
        }
    }
}

fn run(command: &Command) -> Result<Report, Error> {
    match command {
        Command::Check {
            kind,
            family,
            witness,
            budget,
        } => check(*kind, family, *witness, *budget),
        Command::Construct {
            which,
            out,
            max_members,
        } => build(which, out.as_deref(), *max_members),
        Command::Bounds { eq, .. } => Ok(bounds(*eq)),
        Command::Mos {
            k,
            max_n,
            max_members,
            out,
        } => mos(*k, *max_n, *max_members, out.as_deref()),
        Command::Reduce {
            instance,
            out,
            verify,
            gadget,
        } => reduce(instance, out.as_deref(), *verify, *gadget),
    }
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path)
        .map_err(|e| Error::InvalidParameter(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, contents: &str) -> Result<(), Error> {
    fs::write(path, contents)
        .map_err(|e| Error::InvalidParameter(format!("cannot write {}: {e}", path.display())))
}

fn read_family(path: &Path) -> Result<ParsedFamily, Error> {
    io::parse_family(&read(path)?)
}

fn check(kind: Kind, path: &Path, show_witness: bool, budget: u64) -> Result<Report, Error> {
    let ParsedFamily { family, lines } = read_family(path)?;
    let (name, outcome, certificate, nodes) = match kind {
        Kind::Odd => {
            let result = find_odd_sunflower(&family, budget);
            let nodes = Some(result.nodes());
            match result {
                OddSearch::Found { certificate, .. } => {
                    ("odd", "witness", Some(certificate), nodes)
                }
                OddSearch::Absent { .. } => ("odd", "free", None, nodes),
                OddSearch::BudgetExceeded { .. } => ("odd", "budget-exceeded", None, nodes),
            }
        }
        Kind::Even => {
            let c = find_even_sunflower(&family);
            (
                "even",
                if c.is_some() { "witness" } else { "free" },
                c,
                None,
            )
        }
        Kind::Classic => {
            let c = find_classic_sunflower(&family);
            (
                "classic",
                if c.is_some() { "witness" } else { "free" },
                c,
                None,
            )
        }
    };
    let code = match outcome {
        "free" => EXIT_FREE,
        "witness" => EXIT_WITNESS,
        _ => EXIT_BUDGET,
    };
    let witness_lines: Option<Vec<usize>> = certificate.as_ref().map(|c| {
        let mut l: Vec<usize> = c.indices().iter().map(|&i| lines[i]).collect();
        l.sort_unstable();
        l
    });

    let mut text = format!(
        "{name}-sunflower: {}\nmembers: {}\nuniverse: {}\nantichain: {}\nuniformity: {}\n",
        match outcome {
            "free" => "none contained",
            "witness" => "witness found",
            _ => "budget exceeded",
        },
        family.len(),
        family.universe(),
        family.is_antichain(),
        family
            .uniformity()
            .map_or("mixed".to_string(), |k| k.to_string()),
    );
    if let Some(n) = nodes {
        text.push_str(&format!("search nodes: {n}\n"));
    }
    if show_witness {
        if let Some(l) = &witness_lines {
            let joined: Vec<String> = l.iter().map(|x| x.to_string()).collect();
            text.push_str(&format!("witness lines: {}\n", joined.join(" ")));
        }
    }
    let json = json!({
        "command": "check",
        "kind": name,
        "outcome": outcome,
        "members": family.len(),
        "universe": family.universe(),
        "antichain": family.is_antichain(),
        "uniformity": family.uniformity(),
        "nodes": nodes,
        "witness_lines": witness_lines,
    });
    Ok(Report { text, json, code })
}

fn build(which: &Construction, out: Option<&Path>, cap: usize) -> Result<Report, Error> {
    let (name, family) = match which {
        Construction::Cn { n } => ("cn", construct::c_n(*n)?),
        Construction::Cnplus { n } => ("cnplus", construct::c_n_plus(*n)?),
        Construction::Dsum { f, g } => {
            let (f, g) = (read_family(f)?.family, read_family(g)?.family);
            ("dsum", construct::direct_sum_capped(&f, &g, cap)?.0)
        }
        Construction::Wreath { f, g } => {
            let (f, g) = (read_family(f)?.family, read_family(g)?.family);
            ("wreath", construct::wreath_capped(&f, &g, cap)?.0)
        }
        Construction::Construction1 { n } => ("construction1", construct::construction1(*n)?),
        Construction::Construction2 => ("construction2", construct::construction2()?),
        Construction::Tree { k } => ("tree", construct::binary_tree_family(*k)?),
    };
    if family.len() > cap {
        return Err(Error::MaterializationTooLarge {
            members: family.len() as u128,
            cap,
        });
    }
    let rendered = io::render_family(&family);
    let uniformity = family
        .uniformity()
        .map_or("mixed".to_string(), |k| k.to_string());
    let summary = format!(
        "{name}: {} members, uniformity {uniformity}, universe {}\n",
        family.len(),
        family.universe()
    );
    let text = match out {
        Some(path) => {
            write(path, &rendered)?;
            summary
        }
        None => {
            eprint!("{summary}");
            rendered
        }
    };
    let json = json!({
        "command": "construct",
        "construction": name,
        "members": family.len(),
        "universe": family.universe(),
        "uniformity": family.uniformity(),
        "out": out.map(|p| p.display().to_string()),
    });
    Ok(Report {
        text,
        json,
        code: EXIT_FREE,
    })
}

#[derive(Serialize)]
struct BoundRow {
    id: u8,
    expression: &'static str,
    value: f64,
    precise: String,
    threshold: f64,
    holds: bool,
}

fn bound_row(b: &ClaimedBound) -> BoundRow {
    let precise = b.size.precise_root_string(b.bound.universe);
    BoundRow {
        id: b.id,
        expression: b.expression,
        value: b.bound.value,
        precise,
        threshold: b.threshold,
        holds: b.holds(),
    }
}

fn bounds(only: Option<u8>) -> Report {
    let rows: Vec<BoundRow> = claimed_bounds()
        .iter()
        .filter(|b| only.map_or(true, |id| b.id == id))
        .map(bound_row)
        .collect();
    let mut text = String::new();
    for r in &rows {
        let (cmp, status) = if r.holds { (">", "OK") } else { ("<=", "FAIL") };
        text.push_str(&format!(
            "bound {}: {} = {:.12} {cmp} {} {status}\n  256-bit: {}\n",
            r.id,
            r.expression,
            r.value,
            r.threshold,
            truncate_digits(&r.precise, 32)
        ));
    }
    let code = if rows.iter().all(|r| r.holds) { 0 } else { 1 };
    Report {
        text,
        json: json!({ "command": "bounds", "bounds": rows }),
        code,
    }
}

/// Keeps `digits` significant characters of a decimal rendering such as `1.50214...e+0`.
fn truncate_digits(s: &str, digits: usize) -> String {
    let (mantissa, exponent) = s.split_once('e').unwrap_or((s, ""));
    let cut: String = mantissa.chars().take(digits + 1).collect();
    if exponent.is_empty()
        || exponent
            .trim_start_matches(['+', '-'])
            .chars()
            .all(|c| c == '0')
    {
        cut
    } else {
        format!("{cut}e{exponent}")
    }
}

fn mos(
    k: usize,
    max_n: Option<usize>,
    max_members: Option<usize>,
    out: Option<&Path>,
) -> Result<Report, Error> {
    let mut config = match MosSearchConfig::default_for(k) {
        Ok(c) => c,
        Err(e) => match (max_n, max_members) {
            (Some(u), Some(m)) => MosSearchConfig {
                k,
                max_members: m,
                max_universe: u,
            },
            _ => return Err(e),
        },
    };
    if let Some(u) = max_n {
        config.max_universe = u;
    }
    if let Some(m) = max_members {
        config.max_members = m;
    }
    let result = enumerate_mos(config)?;
    let count = result.classes.len();
    let noun = if count == 1 { "class" } else { "classes" };
    let mut text = format!(
        "{count} {noun} (k = {k}, at most {} members on at most {} elements{})\n",
        config.max_members,
        config.max_universe,
        if result.bounded {
            ", bounded search"
        } else {
            ""
        }
    );
    let sections: Vec<(String, &SetFamily)> = result
        .classes
        .iter()
        .enumerate()
        .map(|(i, c)| {
            (
                format!(
                    "class {}: {} members, {} automorphisms",
                    i + 1,
                    c.family.len(),
                    c.automorphisms
                ),
                &c.family,
            )
        })
        .collect();
    match out {
        Some(path) => write(path, &io::render_sections(sections))?,
        None => {
            for c in &result.classes {
                let members: Vec<String> = c.family.iter().map(|m| format!("{{{}}}", m)).collect();
                text.push_str(&format!("  {}\n", members.join(" ")));
            }
        }
    }
    let classes: Vec<_> = result
        .classes
        .iter()
        .map(|c| {
            json!({
                "universe": c.family.universe(),
                "members": c.family.iter().map(|m| m.iter().collect::<Vec<_>>()).collect::<Vec<_>>(),
                "automorphisms": c.automorphisms,
            })
        })
        .collect();
    let json = json!({
        "command": "mos",
        "config": config,
        "bounded": result.bounded,
        "count": count,
        "classes": classes,
    });
    Ok(Report {
        text,
        json,
        code: EXIT_FREE,
    })
}

fn reduce(path: &Path, out: Option<&Path>, verify: bool, gadget: Gadget) -> Result<Report, Error> {
    let inst = io::parse_3dm(&read(path)?)?;
    let gadget = match gadget {
        Gadget::ApexCycle => TagGadget::ApexCycle,
        Gadget::SharedCn => TagGadget::SharedCn,
    };
    let reduced = reduce_3dm_with(&inst, gadget)?;
    let family = &reduced.family;
    let rendered = io::render_family(family);
    let summary = format!(
        "reduced: {} members on {} elements\n",
        family.len(),
        family.universe()
    );
    let mut text = String::new();
    match out {
        Some(p) => {
            write(p, &rendered)?;
            let mut legend = p.as_os_str().to_owned();
            legend.push(".legend");
            write(Path::new(&legend), &io::render_legend(&reduced))?;
            text.push_str(&summary);
        }
        None => {
            eprint!("{summary}");
            text.push_str(&rendered);
        }
    }
    let mut verdict = None;
    let mut code = EXIT_FREE;
    if verify {
        let equivalent = verify_reduction_with(&inst, gadget)?;
        let matching = solve_3dm(&inst).is_some();
        let line = if equivalent {
            format!("EQUIVALENT (both {})", if matching { "YES" } else { "NO" })
        } else {
            code = EXIT_WITNESS;
            format!(
                "MISMATCH (matching {})",
                if matching { "exists" } else { "absent" }
            )
        };
        if out.is_some() {
            text.push_str(&line);
            text.push('\n');
        } else {
            eprintln!("{line}");
        }
        verdict = Some(json!({ "equivalent": equivalent, "matching": matching }));
    }
    let json = json!({
        "command": "reduce",
        "members": family.len(),
        "universe": family.universe(),
        "gadget": gadget,
        "out": out.map(|p| p.display().to_string()),
        "verify": verdict,
    });
    Ok(Report { text, json, code })
}
