//! Rational generating functions with integer coefficients.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `numerator / denominator`, coefficients listed from the constant term up.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalSeries {
    pub numerator: Vec<i64>,
    pub denominator: Vec<i64>,
}

impl RationalSeries {
    pub fn new(numerator: Vec<i64>, denominator: Vec<i64>) -> Result<Self> {
        match denominator.first() {
            Some(1) | Some(-1) => Ok(RationalSeries { numerator, denominator }),
            Some(0) | None => Err(Error::SeriesConstantTerm),
            Some(c) => Err(Error::Invalid(format!("constant term {c} of the denominator is not a unit"))),
        }
    }

    /// Builds the series from factored numerator and denominator.
    pub fn from_factors(numerator: &[&[i64]], denominator: &[&[i64]]) -> Result<Self> {
        let prod = |fs: &[&[i64]]| fs.iter().fold(vec![1], |acc, f| poly_mul(&acc, f));
        Self::new(prod(numerator), prod(denominator))
    }

    /// Coefficients of `t^0 .. t^bound`.
    pub fn expand(&self, bound: usize) -> Vec<i64> {
        let c0 = self.denominator[0];
        let mut out = Vec::with_capacity(bound + 1);
        for n in 0..=bound {
            let mut acc = self.numerator.get(n).copied().unwrap_or(0);
            for k in 1..self.denominator.len().min(n + 1) {
                acc -= self.denominator[k] * out[n - k];
            }
            out.push(acc * c0);
        }
        out
    }
}

pub fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn fmt_poly(p: &[i64]) -> String {
    let mut s = String::new();
    for (k, &c) in p.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let sign = if c < 0 {
            "-"
        } else if s.is_empty() {
            ""
        } else {
            "+"
        };
        let mag = c.unsigned_abs();
        let coef = if mag == 1 && k > 0 { String::new() } else { mag.to_string() };
        let var = match k {
            0 => String::new(),
            1 => "t".to_string(),
            _ => format!("t^{k}"),
        };
        s.push_str(&format!("{sign}{coef}{var}"));
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

impl fmt::Display for RationalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/({})", fmt_poly(&self.numerator), fmt_poly(&self.denominator))
    }
}
