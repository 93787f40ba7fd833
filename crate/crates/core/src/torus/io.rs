//! Text formats.
//!
//! ```text
//! signature 2 1
//! [3,4] [0] 1 0
//! [1,-1] [0] 1/2 -3/4
//! ```
//!
//! Blank lines and lines starting with `#` are ignored. Direction lists use
//! the same header followed by `[v_1,...] [w_1,...]` records. Transform data
//! interleaves `direction [v_1,...] [w_1,...]` lines with the coefficient
//! records seen by that direction.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::{Coefficient, ExactComplex, TrigPolynomial};
use super::TorusError;
use crate::diophantine::{LatticeFrequency, NullLatticeDirection, Signature, VecDisplay};

/// Coefficients that can be written to and read from the text format.
pub trait CoefficientFormat: Coefficient {
    fn format_parts(&self) -> (String, String);
    fn parse_parts(re: &str, im: &str) -> Option<Self>;
}

impl CoefficientFormat for Complex64 {
    fn format_parts(&self) -> (String, String) {
        (format!("{}", self.re), format!("{}", self.im))
    }

    fn parse_parts(re: &str, im: &str) -> Option<Self> {
        fn one(s: &str) -> Option<f64> {
            if s.contains('/') {
                let r = parse_rational(s)?;
                num_traits::ToPrimitive::to_f64(&r)
            } else {
                s.parse().ok().filter(|x: &f64| x.is_finite())
            }
        }
        Some(Complex64::new(one(re)?, one(im)?))
    }
}

impl CoefficientFormat for ExactComplex {
    fn format_parts(&self) -> (String, String) {
        (format_rational(&self.re), format_rational(&self.im))
    }

    fn parse_parts(re: &str, im: &str) -> Option<Self> {
        Some(Complex::new(parse_rational(re)?, parse_rational(im)?))
    }
}

fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `n`, `n/d` or a finite decimal such as `-1.25e-3`, exactly.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part
        .bytes()
        .chain(frac_part.bytes())
        .all(|b| b.is_ascii_digit())
    {
        return None;
    }
    let all: BigInt = format!("0{int_part}{frac_part}").parse().ok()?;
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10u8);
    let mut value = BigRational::from_integer(all);
    if scale >= 0 {
        value *= BigRational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        value /= BigRational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Some(if negative { -value } else { value })
}

fn parse_error(line: usize, msg: impl Into<String>) -> TorusError {
    TorusError::Parse {
        line,
        msg: msg.into(),
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_header(line: usize, s: &str) -> Result<Signature, TorusError> {
    let mut parts = s.split_whitespace();
    if parts.next() != Some("signature") {
        return Err(parse_error(line, "expected header `signature n1 n2`"));
    }
    let mut dim = || -> Result<usize, TorusError> {
        parts
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| parse_error(line, "signature needs two positive integers"))
    };
    let (n1, n2) = (dim()?, dim()?);
    if parts.next().is_some() {
        return Err(parse_error(line, "trailing tokens after signature"));
    }
    Signature::new(n1, n2).map_err(|e| parse_error(line, e.to_string()))
}

/// Splits off a leading `[a,b,...]` group.
fn take_vector(line: usize, s: &str) -> Result<(Vec<i64>, &str), TorusError> {
    let s = s.trim_start();
    let body = s
        .strip_prefix('[')
        .ok_or_else(|| parse_error(line, "expected `[`"))?;
    let close = body
        .find(']')
        .ok_or_else(|| parse_error(line, "unterminated `[`"))?;
    let inner = body[..close].trim();
    let values = if inner.is_empty() {
        Vec::new()
    } else {
        inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|_| parse_error(line, format!("bad integer `{}`", t.trim())))
            })
            .collect::<Result<_, _>>()?
    };
    Ok((values, &body[close + 1..]))
}

fn take_pair(line: usize, signature: Signature, s: &str) -> Result<(Vec<i64>, &str), TorusError> {
    let (first, rest) = take_vector(line, s)?;
    let (second, rest) = take_vector(line, rest)?;
    if first.len() != signature.n1 || second.len() != signature.n2 {
        return Err(parse_error(
            line,
            format!(
                "expected vectors of lengths {} and {}, got {} and {}",
                signature.n1,
                signature.n2,
                first.len(),
                second.len()
            ),
        ));
    }
    let mut coords = first;
    coords.extend(second);
    Ok((coords, rest))
}

pub fn parse_polynomial<C: CoefficientFormat>(text: &str) -> Result<TrigPolynomial<C>, TorusError> {
    let mut lines = content_lines(text);
    let (line, header) = lines.next().ok_or_else(|| parse_error(1, "empty input"))?;
    let signature = parse_header(line, header)?;
    let mut out = TrigPolynomial::zero(signature);
    let mut seen = std::collections::BTreeSet::new();
    for (line, s) in lines {
        let (coords, rest) = take_pair(line, signature, s)?;
        let tokens: Vec<&str> = rest.split_whitespace().collect();
        let [re, im] = tokens[..] else {
            return Err(parse_error(line, "expected `re im` after the frequency"));
        };
        let c = C::parse_parts(re, im)
            .ok_or_else(|| parse_error(line, format!("bad coefficient `{re} {im}`")))?;
        let freq = LatticeFrequency::from_coords(signature, coords)?;
        if !seen.insert(freq.clone()) {
            return Err(parse_error(line, format!("duplicate frequency {freq}")));
        }
        out.add_term(freq, c)?;
    }
    Ok(out)
}

pub fn format_polynomial<C: CoefficientFormat>(f: &TrigPolynomial<C>) -> String {
    let s = f.signature();
    let mut out = format!("signature {} {}\n", s.n1, s.n2);
    for (freq, c) in f.iter() {
        let (re, im) = c.format_parts();
        writeln!(
            out,
            "{} {} {re} {im}",
            VecDisplay(freq.k()),
            VecDisplay(freq.p())
        )
        .expect("writing to a string");
    }
    out
}

pub fn parse_directions(text: &str) -> Result<(Signature, Vec<NullLatticeDirection>), TorusError> {
    let mut lines = content_lines(text);
    let (line, header) = lines.next().ok_or_else(|| parse_error(1, "empty input"))?;
    let signature = parse_header(line, header)?;
    let mut out = Vec::new();
    for (line, s) in lines {
        let (coords, rest) = take_pair(line, signature, s)?;
        if !rest.trim().is_empty() {
            return Err(parse_error(line, "trailing tokens after direction"));
        }
        let d = NullLatticeDirection::from_coords(signature, coords)
            .map_err(|e| parse_error(line, e.to_string()))?;
        out.push(d);
    }
    Ok((signature, out))
}

pub fn format_directions(signature: Signature, directions: &[NullLatticeDirection]) -> String {
    let mut out = format!("signature {} {}\n", signature.n1, signature.n2);
    for d in directions {
        writeln!(out, "{} {}", VecDisplay(d.v()), VecDisplay(d.w())).expect("writing to a string");
    }
    out
}

/// Transform data: the header, then for each direction a line
/// `direction [v] [w]` followed by the coefficient records of `R_v f`.
pub fn format_transform_data<C: CoefficientFormat>(
    signature: Signature,
    data: &BTreeMap<NullLatticeDirection, TrigPolynomial<C>>,
) -> String {
    let mut out = format!("signature {} {}\n", signature.n1, signature.n2);
    for (d, values) in data {
        writeln!(out, "direction {} {}", VecDisplay(d.v()), VecDisplay(d.w()))
            .expect("writing to a string");
        for (freq, c) in values.iter() {
            let (re, im) = c.format_parts();
            writeln!(
                out,
                "{} {} {re} {im}",
                VecDisplay(freq.k()),
                VecDisplay(freq.p())
            )
            .expect("writing to a string");
        }
    }
    out
}

pub fn parse_transform_data<C: CoefficientFormat>(
    text: &str,
) -> Result<(Signature, BTreeMap<NullLatticeDirection, TrigPolynomial<C>>), TorusError> {
    let mut lines = content_lines(text);
    let (line, header) = lines.next().ok_or_else(|| parse_error(1, "empty input"))?;
    let signature = parse_header(line, header)?;
    let mut data = BTreeMap::new();
    let mut current: Option<(NullLatticeDirection, TrigPolynomial<C>)> = None;
    for (line, s) in lines {
        if let Some(rest) = s.strip_prefix("direction") {
            let (coords, tail) = take_pair(line, signature, rest)?;
            if !tail.trim().is_empty() {
                return Err(parse_error(line, "trailing tokens after direction"));
            }
            let d = NullLatticeDirection::from_coords(signature, coords)
                .map_err(|e| parse_error(line, e.to_string()))?;
            if let Some((d, values)) = current.take() {
                data.insert(d, values);
            }
            if data.contains_key(&d) {
                return Err(parse_error(line, format!("duplicate direction {d}")));
            }
            current = Some((d, TrigPolynomial::zero(signature)));
            continue;
        }
        let Some((_, values)) = current.as_mut() else {
            return Err(parse_error(
                line,
                "coefficient record before any `direction` line",
            ));
        };
        let (coords, rest) = take_pair(line, signature, s)?;
        let tokens: Vec<&str> = rest.split_whitespace().collect();
        let [re, im] = tokens[..] else {
            return Err(parse_error(line, "expected `re im` after the frequency"));
        };
        let c = C::parse_parts(re, im)
            .ok_or_else(|| parse_error(line, format!("bad coefficient `{re} {im}`")))?;
        let freq = LatticeFrequency::from_coords(signature, coords)?;
        if values.coefficient(&freq) != C::zero() {
            return Err(parse_error(line, format!("duplicate frequency {freq}")));
        }
        values.add_term(freq, c)?;
    }
    if let Some((d, values)) = current {
        data.insert(d, values);
    }
    Ok((signature, data))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torus::poly::{exact, exact_ratio};

    #[test]
    fn rationals() {
        let r = |s| parse_rational(s).unwrap();
        assert_eq!(r("3/4"), BigRational::new(3.into(), 4.into()));
        assert_eq!(r("-2"), BigRational::from_integer((-2).into()));
        assert_eq!(r("0.25"), BigRational::new(1.into(), 4.into()));
        assert_eq!(r("-1.5e-1"), BigRational::new((-3).into(), 20.into()));
        assert_eq!(r("2e2"), BigRational::from_integer(200.into()));
        assert!(parse_rational("1/0").is_none());
        assert!(parse_rational("abc").is_none());
        assert!(parse_rational(".").is_none());
    }

    #[test]
    fn exact_round_trip() {
        let s = Signature::new(2, 1).unwrap();
        let f = TrigPolynomial::from_terms(
            s,
            [
                (
                    LatticeFrequency::new(s, &[3, 4], &[0]).unwrap(),
                    exact(1, 0),
                ),
                (
                    LatticeFrequency::new(s, &[1, -1], &[0]).unwrap(),
                    exact_ratio((1, 2), (-3, 4)),
                ),
            ],
        )
        .unwrap();
        let text = format_polynomial(&f);
        assert!(text.starts_with("signature 2 1\n"));
        assert!(text.contains("[1,-1] [0] 1/2 -3/4"));
        assert_eq!(parse_polynomial::<ExactComplex>(&text).unwrap(), f);
        let float = parse_polynomial::<Complex64>(&text).unwrap();
        assert_eq!(float, f.to_complex64());
        assert_eq!(
            parse_polynomial::<Complex64>(&format_polynomial(&float)).unwrap(),
            float
        );
    }

    #[test]
    fn parse_errors() {
        let bad = [
            "",
            "sig 1 1",
            "signature 0 1",
            "signature 1 1\n[1] 0 1 0",
            "signature 1 1\n[1,2] [0] 1 0",
            "signature 1 1\n[1] [0] 1",
            "signature 1 1\n[1] [0] x 0",
            "signature 1 1\n[1] [0] 1 0\n[1] [0] 2 0",
        ];
        for text in bad {
            assert!(parse_polynomial::<ExactComplex>(text).is_err(), "{text:?}");
        }
        let e = parse_polynomial::<ExactComplex>("# c\nsignature 1 1\n\n[1] [x] 1 0").unwrap_err();
        assert!(matches!(e, TorusError::Parse { line: 4, .. }));
    }

    #[test]
    fn directions_round_trip() {
        let s = Signature::new(2, 1).unwrap();
        let dirs = crate::diophantine::enumerate_null_directions(s, 5);
        let text = format_directions(s, &dirs);
        assert!(text.contains("[4,3] [5]"));
        assert_eq!(parse_directions(&text).unwrap(), (s, dirs));
        assert!(parse_directions("signature 1 1\n[1] [2]").is_err());
    }

    #[test]
    fn transform_data_round_trip() {
        let sig = Signature::new(1, 1).unwrap();
        let f = TrigPolynomial::from_terms(
            sig,
            [
                (
                    LatticeFrequency::from_coords(sig, vec![1, -1]).unwrap(),
                    exact_ratio((1, 2), (0, 1)),
                ),
                (
                    LatticeFrequency::from_coords(sig, vec![1, 0]).unwrap(),
                    exact(2, 0),
                ),
            ],
        )
        .unwrap();
        let dirs = crate::diophantine::enumerate_null_directions(sig, 1);
        let data = crate::torus::transform_data(&f, &dirs).unwrap();
        let text = format_transform_data(sig, &data);
        assert!(text.contains("direction [1] [-1]\n"));
        let (back_sig, back) = parse_transform_data::<ExactComplex>(&text).unwrap();
        assert_eq!(back_sig, sig);
        assert_eq!(back, data);
        assert!(parse_transform_data::<ExactComplex>("signature 1 1\n[1] [1] 1 0\n").is_err());
        assert!(
            parse_transform_data::<ExactComplex>("signature 1 1\ndirection [1] [2]\n").is_err()
        );
    }
}
