//! File formats.
//!
//! Grids: one text line `grid n h o_1 … o_n d_1 … d_n`, then the samples in
//! row-major order as little-endian `f64` pairs `(re, im)`.
//!
//! Direction sets (text):
//!
//! ```text
//! finite 2
//! 0.6 0.8
//! 1 0
//! ```
//!
//! or `arc` followed by the two endpoint lines, or a single `lightcone n1 n2`
//! line. Line lists start with `lines n`, then one record `p_1 … p_n v_1 … v_n`
//! per line. Blank lines and `#` comments are skipped in text formats.

use std::io::{BufRead, Write};

use num_complex::Complex64;

use super::field::{GridField, GridSpec};
use super::geometry::{DirectionSet, Line};
use super::EuclideanError;
use crate::diophantine::Signature;
use crate::numerics::ComplexArray;

fn parse_error(line: usize, msg: impl Into<String>) -> EuclideanError {
    EuclideanError::Parse {
        line,
        msg: msg.into(),
    }
}

pub fn write_grid<W: Write>(field: &GridField, mut out: W) -> Result<(), EuclideanError> {
    let spec = field.spec();
    let mut header = format!("grid {} {:e}", spec.ndim(), spec.spacing());
    for o in spec.origin() {
        header.push_str(&format!(" {o:e}"));
    }
    for d in spec.dims() {
        header.push_str(&format!(" {d}"));
    }
    header.push('\n');
    out.write_all(header.as_bytes())?;
    let mut buf = Vec::with_capacity(field.values().len() * 16);
    for z in field.values().data() {
        buf.extend_from_slice(&z.re.to_le_bytes());
        buf.extend_from_slice(&z.im.to_le_bytes());
    }
    out.write_all(&buf)?;
    Ok(())
}

pub fn read_grid<R: BufRead>(mut input: R) -> Result<GridField, EuclideanError> {
    let mut header = String::new();
    input.read_line(&mut header)?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    if tokens.first() != Some(&"grid") {
        return Err(parse_error(1, "expected `grid n h origin... dims...`"));
    }
    let n: usize = tokens
        .get(1)
        .and_then(|t| t.parse().ok())
        .filter(|&n| n > 0)
        .ok_or_else(|| parse_error(1, "bad dimension"))?;
    if tokens.len() != 3 + 2 * n {
        return Err(parse_error(
            1,
            format!("expected {} header fields", 3 + 2 * n),
        ));
    }
    let float = |t: &str| {
        t.parse::<f64>()
            .map_err(|_| parse_error(1, format!("bad number `{t}`")))
    };
    let spacing = float(tokens[2])?;
    let origin = tokens[3..3 + n]
        .iter()
        .map(|t| float(t))
        .collect::<Result<Vec<_>, _>>()?;
    let dims = tokens[3 + n..]
        .iter()
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| parse_error(1, format!("bad size `{t}`")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let spec = GridSpec::new(origin, spacing, dims)?;
    let mut bytes = Vec::new();
    input.read_to_end(&mut bytes)?;
    if bytes.len() != spec.len() * 16 {
        return Err(EuclideanError::Io(format!(
            "expected {} bytes of samples, found {}",
            spec.len() * 16,
            bytes.len()
        )));
    }
    let data: Vec<Complex64> = bytes
        .chunks_exact(16)
        .map(|c| {
            let re = f64::from_le_bytes(c[..8].try_into().expect("8 bytes"));
            let im = f64::from_le_bytes(c[8..].try_into().expect("8 bytes"));
            Complex64::new(re, im)
        })
        .collect();
    GridField::new(spec.clone(), ComplexArray::from_vec(spec.dims(), data)?)
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn numbers(line: usize, s: &str) -> Result<Vec<f64>, EuclideanError> {
    s.split_whitespace()
        .map(|t| {
            t.parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| parse_error(line, format!("bad number `{t}`")))
        })
        .collect()
}

pub fn parse_direction_set(text: &str) -> Result<DirectionSet, EuclideanError> {
    let mut lines = content_lines(text);
    let (line, header) = lines.next().ok_or_else(|| parse_error(1, "empty input"))?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    let wrap = |line: usize| move |e: EuclideanError| parse_error(line, e.to_string());
    match tokens.as_slice() {
        ["finite", n] => {
            let n: usize = n.parse().map_err(|_| parse_error(line, "bad dimension"))?;
            let dirs = lines
                .map(|(l, s)| {
                    let v = numbers(l, s)?;
                    if v.len() != n {
                        return Err(parse_error(l, format!("expected {n} components")));
                    }
                    Ok(v)
                })
                .collect::<Result<Vec<_>, _>>()?;
            DirectionSet::finite(dirs).map_err(wrap(line))
        }
        ["arc"] => {
            let (la, a) = lines
                .next()
                .ok_or_else(|| parse_error(line, "missing arc start"))?;
            let (lb, b) = lines
                .next()
                .ok_or_else(|| parse_error(la, "missing arc end"))?;
            if let Some((l, _)) = lines.next() {
                return Err(parse_error(l, "arc takes exactly two endpoints"));
            }
            DirectionSet::arc(numbers(la, a)?, numbers(lb, b)?).map_err(wrap(lb))
        }
        ["lightcone", n1, n2] => {
            let parse = |t: &str| {
                t.parse::<usize>()
                    .map_err(|_| parse_error(line, "bad signature"))
            };
            let signature = Signature::new(parse(n1)?, parse(n2)?)
                .map_err(|e| parse_error(line, e.to_string()))?;
            if let Some((l, _)) = lines.next() {
                return Err(parse_error(l, "unexpected record after lightcone"));
            }
            Ok(DirectionSet::light_cone(signature))
        }
        _ => Err(parse_error(
            line,
            "expected `finite n`, `arc` or `lightcone n1 n2`",
        )),
    }
}

fn join(v: &[f64]) -> String {
    v.iter()
        .map(|x| format!("{x}"))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn format_direction_set(set: &DirectionSet) -> String {
    match set {
        DirectionSet::Finite(dirs) => {
            let mut out = format!("finite {}\n", set.dim());
            for d in dirs {
                out.push_str(&join(d));
                out.push('\n');
            }
            out
        }
        DirectionSet::Arc(arc) => format!("arc\n{}\n{}\n", join(arc.start()), join(arc.end())),
        DirectionSet::LightCone(s) => format!("lightcone {} {}\n", s.n1, s.n2),
    }
}

pub fn parse_lines(text: &str) -> Result<Vec<Line>, EuclideanError> {
    let mut lines = content_lines(text);
    let (line, header) = lines.next().ok_or_else(|| parse_error(1, "empty input"))?;
    let n = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["lines", n] => n.parse::<usize>().ok().filter(|&n| n > 0),
        _ => None,
    }
    .ok_or_else(|| parse_error(line, "expected `lines n`"))?;
    lines
        .map(|(l, s)| {
            let v = numbers(l, s)?;
            if v.len() != 2 * n {
                return Err(parse_error(l, format!("expected {} numbers", 2 * n)));
            }
            Line::new(v[..n].to_vec(), v[n..].to_vec()).map_err(|e| parse_error(l, e.to_string()))
        })
        .collect()
}

pub fn format_lines(lines: &[Line]) -> String {
    let n = lines.first().map_or(0, |l| l.dim());
    let mut out = format!("lines {n}\n");
    for l in lines {
        out.push_str(&format!("{} {}\n", join(l.point()), join(l.direction())));
    }
    out
}
