//! Text formats.
//!
//! A family file has an optional `universe <n>` header, then one member per
//! line as ascending space-separated elements. Blank lines and lines starting
//! with `#` are skipped. Without a header the universe is the largest element.
//!
//! A 3DM file starts with `n <n>` and lists one edge `a b c` per line.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::family::{ElemSet, SetFamily};
use crate::reduction::{ElementRole, PairReason, Part, ReducedInstance, ThreeDMInstance};

/// A parsed family and, for each member, the 1-based line it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedFamily {
    pub family: SetFamily,
    pub lines: Vec<usize>,
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_number(line: usize, token: &str) -> Result<usize> {
    token.parse().map_err(|_| {
        Error::parse(
            line,
            format!("expected a non-negative integer, found {token:?}"),
        )
    })
}

fn parse_header(line: usize, text: &str, keyword: &str) -> Result<Option<usize>> {
    let mut tokens = text.split_whitespace();
    if tokens.next() != Some(keyword) {
        return Ok(None);
    }
    let value = tokens
        .next()
        .ok_or_else(|| Error::parse(line, format!("`{keyword}` needs a value")))?;
    let value = parse_number(line, value)?;
    if tokens.next().is_some() {
        return Err(Error::parse(
            line,
            format!("trailing tokens after `{keyword} {value}`"),
        ));
    }
    Ok(Some(value))
}

pub fn parse_family(text: &str) -> Result<ParsedFamily> {
    let mut universe = None;
    let mut sets: Vec<(usize, ElemSet)> = Vec::new();
    for (i, (line, content)) in content_lines(text).enumerate() {
        if i == 0 {
            if let Some(n) = parse_header(line, content, "universe")? {
                universe = Some(n);
                continue;
            }
        }
        let mut previous = 0;
        let mut set = ElemSet::new();
        for token in content.split_whitespace() {
            let e = parse_number(line, token)?;
            if e == 0 {
                return Err(Error::parse(line, "elements start at 1"));
            }
            if e <= previous {
                return Err(Error::parse(line, "elements must be strictly ascending"));
            }
            if let Some(n) = universe {
                if e > n {
                    return Err(Error::parse(
                        line,
                        format!("element {e} exceeds universe {n}"),
                    ));
                }
            }
            previous = e;
            set.insert(e);
        }
        sets.push((line, set));
    }

    let mut first_seen: HashMap<&ElemSet, usize> = HashMap::new();
    for (line, set) in &sets {
        if let Some(prev) = first_seen.insert(set, *line) {
            return Err(Error::parse(
                *line,
                format!("repeats the set on line {prev}"),
            ));
        }
    }
    let universe =
        universe.unwrap_or_else(|| sets.iter().map(|(_, s)| s.max_element()).max().unwrap_or(0));
    sets.sort_by(|a, b| a.1.cmp(&b.1));
    let lines = sets.iter().map(|(l, _)| *l).collect();
    let family = SetFamily::new(universe, sets.into_iter().map(|(_, s)| s).collect())?;
    Ok(ParsedFamily { family, lines })
}

pub fn render_family(f: &SetFamily) -> String {
    let mut out = format!("universe {}\n", f.universe());
    for m in f.iter() {
        writeln!(out, "{m}").expect("writing to a String");
    }
    out
}

/// Several families, each preceded by `#` comment lines and its own header.
pub fn render_sections<'a>(sections: impl IntoIterator<Item = (String, &'a SetFamily)>) -> String {
    let mut out = String::new();
    for (i, (title, f)) in sections.into_iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        for line in title.lines() {
            writeln!(out, "# {line}").expect("writing to a String");
        }
        out.push_str(&render_family(f));
    }
    out
}

/// Splits a multi-section file at its `universe` headers.
pub fn parse_sections(text: &str) -> Result<Vec<SetFamily>> {
    let mut starts = Vec::new();
    let lines: Vec<&str> = text.lines().collect();
    for (i, l) in lines.iter().enumerate() {
        if l.trim_start().starts_with("universe") {
            starts.push(i);
        }
    }
    starts
        .iter()
        .enumerate()
        .map(|(s, &from)| {
            let to = starts.get(s + 1).copied().unwrap_or(lines.len());
            // keep line numbers meaningful by blanking the lines before `from`
            let chunk: String = lines
                .iter()
                .enumerate()
                .map(|(i, l)| if (from..to).contains(&i) { *l } else { "" })
                .collect::<Vec<_>>()
                .join("\n");
            parse_family(&chunk).map(|p| p.family)
        })
        .collect()
}

pub fn parse_3dm(text: &str) -> Result<ThreeDMInstance> {
    let mut lines = content_lines(text);
    let (line, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "missing `n <n>` header"))?;
    let n =
        parse_header(line, header, "n")?.ok_or_else(|| Error::parse(line, "expected `n <n>`"))?;
    if n == 0 {
        return Err(Error::parse(line, "n must be at least 1"));
    }
    let mut edges = Vec::new();
    let mut seen: HashMap<(usize, usize, usize), usize> = HashMap::new();
    for (line, content) in lines {
        let coords = content
            .split_whitespace()
            .map(|t| parse_number(line, t))
            .collect::<Result<Vec<_>>>()?;
        let [a, b, c] = coords[..] else {
            return Err(Error::parse(line, "an edge is three vertices `a b c`"));
        };
        if [a, b, c].iter().any(|&v| v == 0 || v > n) {
            return Err(Error::parse(line, format!("vertices must lie in 1..={n}")));
        }
        if let Some(prev) = seen.insert((a, b, c), line) {
            return Err(Error::parse(
                line,
                format!("repeats the edge on line {prev}"),
            ));
        }
        edges.push((a, b, c));
    }
    ThreeDMInstance::new(n, edges)
}

pub fn render_3dm(inst: &ThreeDMInstance) -> String {
    let mut out = format!("n {}\n", inst.n());
    for (a, b, c) in inst.edges() {
        writeln!(out, "{a} {b} {c}").expect("writing to a String");
    }
    out
}

/// One line per element, then one per member, naming where each came from.
pub fn render_legend(reduced: &ReducedInstance) -> String {
    let mut out = String::from("# element role\n");
    for (i, role) in reduced.element_legend.iter().enumerate() {
        let e = i + 1;
        let text = match role {
            ElementRole::Vertex { part, index } => {
                let p = match part {
                    Part::A => 'A',
                    Part::B => 'B',
                    Part::C => 'C',
                };
                format!("vertex {p}{index}")
            }
            ElementRole::Tag { index } => format!("tag {index}"),
            ElementRole::Apex => "tag apex".to_string(),
            ElementRole::Pair {
                first,
                second,
                reason,
            } => {
                let why = match reason {
                    PairReason::SharedVertex => "shared-vertex",
                    PairReason::SharedTag => "shared-tag",
                };
                format!(
                    "pair edge{}.copy{} edge{}.copy{} {why}",
                    first.0 + 1,
                    first.1,
                    second.0 + 1,
                    second.1
                )
            }
        };
        writeln!(out, "{e} {text}").expect("writing to a String");
    }
    out.push_str("# member edge copy\n");
    for (i, (edge, copy)) in reduced.copy_index.iter().enumerate() {
        writeln!(out, "member {} edge{} copy{copy}", i + 1, edge + 1).expect("writing to a String");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::c_n;
    use crate::family::make_family;

    #[test]
    fn round_trip() {
        let f = c_n(5).unwrap();
        assert_eq!(parse_family(&render_family(&f)).unwrap().family, f);
        let sparse = make_family(9, &[vec![2], vec![1, 3]]).unwrap();
        assert_eq!(
            parse_family(&render_family(&sparse)).unwrap().family,
            sparse
        );
    }

    #[test]
    fn universe_inferred_and_lines_kept() {
        let p = parse_family("# comment\n1 3 4\n\n1 3\n1 2 3\n").unwrap();
        assert_eq!(p.family.universe(), 4);
        // sorted members: {1,3}, {1,2,3}, {1,3,4}
        assert_eq!(p.lines, vec![4, 5, 2]);
    }

    #[test]
    fn parse_errors_carry_lines() {
        let err = |t: &str| match parse_family(t) {
            Err(Error::Parse { line, .. }) => line,
            other => panic!("{other:?}"),
        };
        assert_eq!(err("1 2\n3 x\n"), 2);
        assert_eq!(err("universe 3\n1 4\n"), 2);
        assert_eq!(err("1 2\n\n2 1\n"), 3);
        assert_eq!(err("1 2\n1 2\n"), 2);
        assert_eq!(err("0\n"), 1);
    }

    #[test]
    fn sections() {
        let a = c_n(3).unwrap();
        let b = c_n(4).unwrap();
        let text = render_sections([("first".to_string(), &a), ("second\nclass".to_string(), &b)]);
        assert_eq!(parse_sections(&text).unwrap(), vec![a, b]);
    }

    #[test]
    fn three_dm_files() {
        let inst = parse_3dm("# demo\nn 3\n1 1 1\n2 2 2\n").unwrap();
        assert_eq!(inst.edges(), &[(1, 1, 1), (2, 2, 2)]);
        assert_eq!(parse_3dm(&render_3dm(&inst)).unwrap(), inst);
        assert!(matches!(
            parse_3dm("n 3\n1 1 1\n1 1 1\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(
            parse_3dm("n 3\n1 1 4\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_3dm("n 3\n1 1\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(parse_3dm("1 1 1\n").is_err());
    }
}
