//! Text forms for exact numbers.
//!
//! Rationals: `p`, `p/q`, or a finite decimal `1.25`.
//! Complex: `re+imi` (`1/2-3/4i`, `2i`, `-i`, `1`), or polar `r@q` meaning `r·e^{iπq}`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Cyclotomic, Rational};

pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    if s.is_empty() {
        return Err("empty rational".into());
    }
    if let Some((int_part, frac)) = s.split_once('.') {
        if s.contains('/') {
            return Err(format!("malformed rational `{s}`"));
        }
        let neg = int_part.starts_with('-');
        let digits = format!("{}{}", int_part.trim_start_matches(['-', '+']), frac);
        let n = BigInt::from_str(if digits.is_empty() { "0" } else { &digits })
            .map_err(|_| format!("malformed decimal `{s}`"))?;
        let d = BigInt::from(10u32).pow(frac.len() as u32);
        let r = Rational::new(n, d);
        return Ok(if neg { -r } else { r });
    }
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n = BigInt::from_str(n).map_err(|_| format!("malformed rational `{s}`"))?;
    let d = BigInt::from_str(d).map_err(|_| format!("malformed rational `{s}`"))?;
    if d.is_zero() {
        return Err(format!("zero denominator in `{s}`"));
    }
    Ok(Rational::new(n, d))
}

/// An exactly specified complex number as written in input files.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExactComplex {
    Cartesian { re: Rational, im: Rational },
    /// `modulus·e^{iπ·turns}`.
    Polar { modulus: Rational, turns: Rational },
}

impl ExactComplex {
    pub fn real(re: Rational) -> Self {
        ExactComplex::Cartesian { re, im: Rational::zero() }
    }

    pub fn to_cyclotomic(&self) -> Cyclotomic {
        match self {
            ExactComplex::Cartesian { re, im } => Cyclotomic::complex(re.clone(), im.clone()),
            ExactComplex::Polar { modulus, turns } => Cyclotomic::polar(modulus.clone(), turns),
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        match self {
            ExactComplex::Cartesian { re, im } => {
                Complex64::new(re.to_f64().unwrap_or(f64::NAN), im.to_f64().unwrap_or(f64::NAN))
            }
            ExactComplex::Polar { modulus, turns } => Complex64::from_polar(
                modulus.to_f64().unwrap_or(f64::NAN),
                std::f64::consts::PI * turns.to_f64().unwrap_or(f64::NAN),
            ),
        }
    }
}

impl fmt::Display for ExactComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactComplex::Cartesian { re, im } => {
                if im.is_zero() {
                    write!(f, "{re}")
                } else {
                    let sign = if im.is_negative() { '-' } else { '+' };
                    write!(f, "{re}{sign}{}i", im.abs())
                }
            }
            ExactComplex::Polar { modulus, turns } => write!(f, "{modulus}@{turns}"),
        }
    }
}

impl FromStr for ExactComplex {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        parse_complex(s)
    }
}

pub fn parse_complex(s: &str) -> Result<ExactComplex, String> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err("empty complex number".into());
    }
    if let Some((m, t)) = s.split_once('@') {
        return Ok(ExactComplex::Polar { modulus: parse_rational(m)?, turns: parse_rational(t)? });
    }
    if let Some(body) = s.strip_suffix('i') {
        // find the sign separating the real part, skipping a leading sign
        let split = body
            .char_indices()
            .skip(1)
            .filter(|(_, c)| *c == '+' || *c == '-')
            .map(|(i, _)| i)
            .last();
        let (re, im) = match split {
            Some(i) => (&body[..i], &body[i..]),
            None => ("0", body),
        };
        let im = match im {
            "" | "+" => Rational::one(),
            "-" => -Rational::one(),
            other => parse_rational(other)?,
        };
        return Ok(ExactComplex::Cartesian { re: parse_rational(re)?, im });
    }
    Ok(ExactComplex::real(parse_rational(&s)?))
}
