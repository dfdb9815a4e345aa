//! Plain-text points files.
//!
//! ```text
//! # d=2 n=3
//! 0.25 0.5
//! 0.75 0.125
//! 1 0
//! ```
//!
//! The header is optional. Coordinates are separated by single spaces; blank
//! lines are ignored. When there is no header the dimension is taken from
//! the first point.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::geometry::PointSet;

fn parse_header(line: &str, lineno: usize) -> Result<(usize, usize)> {
    let err = |message: String| Error::Parse { line: lineno, message };
    let body = line.trim_start_matches('#').trim();
    let mut d = None;
    let mut n = None;
    for field in body.split_whitespace() {
        let (key, value) = field.split_once('=').ok_or_else(|| err(format!("malformed header field `{field}`")))?;
        let value: usize = value.parse().map_err(|_| err(format!("header value `{value}` is not an integer")))?;
        match key {
            "d" => d = Some(value),
            "n" => n = Some(value),
            other => return Err(err(format!("unknown header key `{other}`"))),
        }
    }
    match (d, n) {
        (Some(d), Some(n)) => Ok((d, n)),
        _ => Err(err("header must be `# d=<int> n=<int>`".into())),
    }
}

pub fn parse_points(text: &str) -> Result<PointSet> {
    let mut header: Option<(usize, usize)> = None;
    let mut dim: Option<usize> = None;
    let mut coords = Vec::new();
    let mut rows = 0usize;

    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim_end_matches('\r');
        if line.trim().is_empty() {
            continue;
        }
        if line.starts_with('#') {
            if rows > 0 || header.is_some() {
                return Err(Error::Parse { line: lineno, message: "header must precede the points".into() });
            }
            let h = parse_header(line, lineno)?;
            header = Some(h);
            dim = Some(h.0);
            continue;
        }
        let before = coords.len();
        for tok in line.trim().split(' ') {
            let v: f64 = tok.parse().map_err(|_| Error::Parse {
                line: lineno,
                message: format!("`{tok}` is not a decimal number"),
            })?;
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::Parse { line: lineno, message: format!("coordinate {tok} is outside [0, 1]") });
            }
            coords.push(v);
        }
        let width = coords.len() - before;
        match dim {
            None => dim = Some(width),
            Some(d) if d != width => {
                return Err(Error::Parse { line: lineno, message: format!("expected {d} coordinates, found {width}") })
            }
            Some(_) => {}
        }
        rows += 1;
    }

    if let Some((_, n)) = header {
        if n != rows {
            return Err(Error::Parse { line: 1, message: format!("header announces {n} points, file has {rows}") });
        }
    }
    let dim = dim.ok_or(Error::Parse { line: 1, message: "no points and no header".into() })?;
    if dim == 0 {
        return Err(Error::Parse { line: 1, message: "dimension must be at least 1".into() });
    }
    PointSet::from_flat(dim, coords)
}

/// Renders one point per line with shortest round-trip decimals.
pub fn write_points(ps: &PointSet, with_header: bool) -> String {
    let mut out = String::new();
    if with_header {
        writeln!(out, "# d={} n={}", ps.dim(), ps.len()).unwrap();
    }
    for p in ps.points() {
        let mut first = true;
        for v in p {
            if !first {
                out.push(' ');
            }
            first = false;
            write!(out, "{v}").unwrap();
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_chain, gen_random, gen_staircase};
    use proptest::prelude::*;

    #[test]
    fn chain_text() {
        let text = write_points(&gen_chain(9, 2).unwrap(), false);
        assert_eq!(text.lines().count(), 9);
        assert_eq!(text.lines().next(), Some("0.1 0.1"));
        let text = write_points(&gen_staircase(2).unwrap(), true);
        assert_eq!(text, "# d=2 n=2\n0.3333333333333333 0.6666666666666666\n0.6666666666666666 0.3333333333333333\n");
    }

    #[test]
    fn parse_variants() {
        let ps = parse_points("# d=2 n=2\n0.5 0.25\n\n1e-1 1\n").unwrap();
        assert_eq!(ps.point(1), &[0.1, 1.0]);
        assert!(parse_points("# d=2 n=3\n0.5 0.25\n").is_err());
        assert!(parse_points("0.5 0.25\n0.5\n").is_err());
        assert!(parse_points("0.5 1.25\n").is_err());
        assert!(parse_points("0.5  0.25\n").is_err());
        assert!(parse_points("0.5 abc\n").is_err());
        assert!(parse_points("").is_err());
        let empty = parse_points("# d=3 n=0\n").unwrap();
        assert!(empty.is_empty());
        assert_eq!(empty.dim(), 3);
    }

    proptest! {
        #[test]
        fn write_then_parse_is_identity(n in 1usize..40, d in 1usize..6, seed in any::<u64>(), header in any::<bool>()) {
            let ps = gen_random(n, d, seed).unwrap();
            prop_assert_eq!(parse_points(&write_points(&ps, header)).unwrap(), ps);
        }
    }
}
