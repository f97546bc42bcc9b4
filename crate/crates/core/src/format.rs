//! Line-oriented text format for matroids and colourings.
//!
//! ```text
//! # comment
//! dim: 4
//! points: 1 2 4
//! points: 8 15
//! ```
//!
//! Colouring files list every point and add `colors: <c>` plus one
//! `color <point> <id>` line per point. Emitted files are canonical: one
//! `points:` line with strictly increasing points, and `parse(emit(m))`
//! reproduces the input byte for byte.

use std::fmt::Write as _;

use thiserror::Error;

use crate::gf2::{PointSet, Vector, MAX_SET_DIM};
use crate::matroid::Matroid;
use crate::ramsey::Coloring;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("malformed header: {0}")]
    MalformedHeader(String),
    #[error("missing `dim:` header")]
    MissingDim,
    #[error("point {point} out of range for dimension {dim}")]
    PointOutOfRange { point: u64, dim: usize },
    #[error("point 0 is not a point of the projective geometry")]
    ZeroPoint,
    #[error("duplicate point {0}")]
    DuplicatePoint(Vector),
    #[error("malformed number `{0}`")]
    BadNumber(String),
    #[error("colour {color} out of range for {colors} colours")]
    ColorOutOfRange { color: u32, colors: u32 },
    #[error("point {0} has no colour")]
    MissingColor(Vector),
}

/// A parse failure at a 1-based line number (0 when the problem is the
/// file as a whole).
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

fn err(line: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, kind }
}

fn number(line: usize, tok: &str) -> Result<u64, ParseError> {
    tok.parse()
        .map_err(|_| err(line, ParseErrorKind::BadNumber(tok.to_string())))
}

struct Parsed {
    dim: usize,
    points: PointSet,
    colors: Option<(u32, Vec<(usize, Vector, u64)>)>,
}

fn parse_lines(text: &str, allow_colors: bool) -> Result<Parsed, ParseError> {
    let mut dim: Option<usize> = None;
    let mut points: Option<PointSet> = None;
    let mut num_colors: Option<u32> = None;
    let mut color_lines = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        if let Some(rest) = body.strip_prefix("dim:") {
            if dim.is_some() {
                return Err(err(line, ParseErrorKind::MalformedHeader("repeated `dim:`".into())));
            }
            let n = number(line, rest.trim())
                .map_err(|_| err(line, ParseErrorKind::MalformedHeader(body.to_string())))?;
            if n as usize > MAX_SET_DIM {
                return Err(err(
                    line,
                    ParseErrorKind::MalformedHeader(format!("dimension {n} exceeds {MAX_SET_DIM}")),
                ));
            }
            dim = Some(n as usize);
            points = Some(PointSet::empty(n as usize));
        } else if let Some(rest) = body.strip_prefix("points:") {
            let (n, set) = match (dim, points.as_mut()) {
                (Some(n), Some(set)) => (n, set),
                _ => return Err(err(line, ParseErrorKind::MissingDim)),
            };
            for tok in rest.split_whitespace() {
                let p = number(line, tok)?;
                if p == 0 {
                    return Err(err(line, ParseErrorKind::ZeroPoint));
                }
                if p >= 1u64 << n {
                    return Err(err(line, ParseErrorKind::PointOutOfRange { point: p, dim: n }));
                }
                if !set.insert(p as Vector) {
                    return Err(err(line, ParseErrorKind::DuplicatePoint(p as Vector)));
                }
            }
        } else if allow_colors && body.starts_with("colors:") {
            let c = number(line, body["colors:".len()..].trim())
                .map_err(|_| err(line, ParseErrorKind::MalformedHeader(body.to_string())))?;
            if num_colors.is_some() || c == 0 || c > u32::MAX as u64 {
                return Err(err(line, ParseErrorKind::MalformedHeader(body.to_string())));
            }
            num_colors = Some(c as u32);
        } else if allow_colors && body.starts_with("color ") {
            let toks: Vec<&str> = body.split_whitespace().collect();
            if toks.len() != 3 {
                return Err(err(line, ParseErrorKind::MalformedHeader(body.to_string())));
            }
            let p = number(line, toks[1])?;
            let c = number(line, toks[2])?;
            color_lines.push((line, p as Vector, c));
            let n = dim.ok_or_else(|| err(line, ParseErrorKind::MissingDim))?;
            if p == 0 {
                return Err(err(line, ParseErrorKind::ZeroPoint));
            }
            if p >= 1u64 << n {
                return Err(err(line, ParseErrorKind::PointOutOfRange { point: p, dim: n }));
            }
        } else {
            return Err(err(line, ParseErrorKind::MalformedHeader(body.to_string())));
        }
    }
    let dim = dim.ok_or_else(|| err(0, ParseErrorKind::MissingDim))?;
    let points = points.expect("set together with dim");
    let colors = match (num_colors, color_lines.is_empty()) {
        (Some(c), _) => Some((c, color_lines)),
        (None, true) => None,
        (None, false) => {
            return Err(err(
                color_lines[0].0,
                ParseErrorKind::MalformedHeader("`color` line without `colors:` header".into()),
            ))
        }
    };
    Ok(Parsed { dim, points, colors })
}

/// Parses a matroid file. Comments and blank lines are ignored.
pub fn parse_matroid(text: &str) -> Result<Matroid, ParseError> {
    let p = parse_lines(text, false)?;
    Ok(Matroid::new(p.dim, p.points).expect("points validated while parsing"))
}

/// Canonical text form of a matroid.
pub fn emit_matroid(m: &Matroid) -> String {
    let mut out = format!("dim: {}\npoints:", m.dim());
    for p in m.ground() {
        write!(out, " {p}").unwrap();
    }
    out.push('\n');
    out
}

/// Parses a colouring file; every nonzero vector must be listed under
/// `points:` and coloured exactly once.
pub fn parse_coloring(text: &str) -> Result<Coloring, ParseError> {
    let p = parse_lines(text, true)?;
    let (num_colors, lines) = p
        .colors
        .ok_or_else(|| err(0, ParseErrorKind::MalformedHeader("missing `colors:`".into())))?;
    let len = (1usize << p.dim) - 1;
    let mut colors: Vec<Option<u32>> = vec![None; len];
    for (line, point, c) in lines {
        if c >= num_colors as u64 {
            return Err(err(
                line,
                ParseErrorKind::ColorOutOfRange {
                    color: c.min(u32::MAX as u64) as u32,
                    colors: num_colors,
                },
            ));
        }
        let slot = &mut colors[point as usize - 1];
        if slot.is_some() {
            return Err(err(line, ParseErrorKind::DuplicatePoint(point)));
        }
        *slot = Some(c as u32);
    }
    let mut out = Vec::with_capacity(len);
    for (i, c) in colors.into_iter().enumerate() {
        let v = (i + 1) as Vector;
        match c {
            Some(c) if p.points.contains(v) => out.push(c),
            _ => return Err(err(0, ParseErrorKind::MissingColor(v))),
        }
    }
    Ok(Coloring::new(p.dim, num_colors, out).expect("colours validated while parsing"))
}

/// Canonical text form of a colouring.
pub fn emit_coloring(col: &Coloring) -> String {
    let n = col.dim();
    let mut out = format!("dim: {n}\npoints:");
    for v in 1..(1 as Vector) << n {
        write!(out, " {v}").unwrap();
    }
    write!(out, "\ncolors: {}\n", col.num_colors()).unwrap();
    for v in 1..(1 as Vector) << n {
        writeln!(out, "color {v} {}", col.color_of(v)).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_c5() {
        let m = parse_matroid("# the circuit\ndim: 4\npoints: 1 2 4 8 15\n").unwrap();
        assert_eq!(m.ground().to_vec(), vec![1, 2, 4, 8, 15]);
        assert_eq!(emit_matroid(&m), "dim: 4\npoints: 1 2 4 8 15\n");
    }

    #[test]
    fn empty_and_multiline() {
        let m = parse_matroid("dim: 3\npoints:\n").unwrap();
        assert!(m.is_empty());
        assert_eq!(emit_matroid(&m), "dim: 3\npoints:\n");
        let m = parse_matroid("dim: 3\n\npoints: 1\npoints: 7 # tail\n").unwrap();
        assert_eq!(m.ground().to_vec(), vec![1, 7]);
    }

    #[test]
    fn errors_carry_lines() {
        let e = parse_matroid("dim: 2\npoints: 4").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(matches!(e.kind, ParseErrorKind::PointOutOfRange { point: 4, dim: 2 }));
        assert_eq!(parse_matroid("dim: 2\npoints: 0").unwrap_err().kind, ParseErrorKind::ZeroPoint);
        assert_eq!(
            parse_matroid("dim: 3\npoints: 1\npoints: 1").unwrap_err(),
            err(3, ParseErrorKind::DuplicatePoint(1))
        );
        assert!(matches!(
            parse_matroid("dimension 3").unwrap_err().kind,
            ParseErrorKind::MalformedHeader(_)
        ));
        assert_eq!(parse_matroid("points: 1").unwrap_err().kind, ParseErrorKind::MissingDim);
        assert_eq!(parse_matroid("").unwrap_err().kind, ParseErrorKind::MissingDim);
    }

    #[test]
    fn coloring_round_trip() {
        let col = Coloring::new(2, 2, vec![0, 1, 1]).unwrap();
        let text = emit_coloring(&col);
        assert_eq!(text, "dim: 2\npoints: 1 2 3\ncolors: 2\ncolor 1 0\ncolor 2 1\ncolor 3 1\n");
        assert_eq!(parse_coloring(&text).unwrap(), col);
        assert!(parse_coloring("dim: 2\npoints: 1 2 3\ncolors: 2\ncolor 1 0\n").is_err());
    }
}
