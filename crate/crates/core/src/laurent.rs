//! Integer Laurent polynomials in one variable `v`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A Laurent polynomial with integer coefficients, stored as
/// `(exponent, coefficient)` pairs sorted by exponent with no zero entries.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct LaurentPoly {
    terms: Vec<(i32, i64)>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * v^exp`.
    pub fn monomial(c: i64, exp: i32) -> Self {
        if c == 0 {
            Self::zero()
        } else {
            LaurentPoly {
                terms: vec![(exp, c)],
            }
        }
    }

    /// `v`.
    pub fn v() -> Self {
        Self::monomial(1, 1)
    }

    /// `v + v^-1`.
    pub fn quantum_two() -> Self {
        LaurentPoly {
            terms: vec![(-1, 1), (1, 1)],
        }
    }

    /// Builds a polynomial from arbitrary `(exponent, coefficient)` pairs,
    /// combining repeated exponents.
    pub fn from_terms(pairs: impl IntoIterator<Item = (i32, i64)>) -> Self {
        let mut terms: Vec<(i32, i64)> = pairs.into_iter().collect();
        terms.sort_unstable_by_key(|t| t.0);
        let mut out: Vec<(i32, i64)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == e => last.1 += c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|t| t.1 != 0);
        LaurentPoly { terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(i32, i64)] {
        &self.terms
    }

    pub fn coeff(&self, exp: i32) -> i64 {
        self.terms
            .binary_search_by_key(&exp, |t| t.0)
            .map_or(0, |i| self.terms[i].1)
    }

    pub fn constant_term(&self) -> i64 {
        self.coeff(0)
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.first().map(|t| t.0)
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.last().map(|t| t.0)
    }

    /// Multiply by `v^k`.
    pub fn shift(&self, k: i32) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|&(e, c)| (e + k, c)).collect(),
        }
    }

    pub fn scale(&self, k: i64) -> Self {
        if k == 0 {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|&(e, c)| (e, c * k)).collect(),
        }
    }

    /// The involution `v -> v^-1`.
    pub fn bar(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().rev().map(|&(e, c)| (-e, c)).collect(),
        }
    }

    /// Whether every exponent is strictly positive.
    pub fn in_v_z_v(&self) -> bool {
        self.min_exp().is_none_or(|e| e > 0)
    }

    pub fn all_nonnegative(&self) -> bool {
        self.terms.iter().all(|t| t.1 >= 0)
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a
    /// remainder or is not integral.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Option<LaurentPoly> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (dmin, dmax) = (divisor.min_exp()?, divisor.max_exp()?);
        let lead = divisor.terms.last()?.1;
        let mut rem = self.clone();
        let mut quotient = Vec::new();
        while let Some(&(e, c)) = rem.terms.last() {
            if e - dmax < rem.min_exp()? - dmin || c % lead != 0 {
                return None;
            }
            let q = (e - dmax, c / lead);
            quotient.push(q);
            rem = &rem - &(divisor * &LaurentPoly::monomial(q.1, q.0));
        }
        Some(LaurentPoly::from_terms(quotient))
    }

    fn merge(&self, other: &Self, sign: i64) -> Self {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i]);
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                out.push((b[j].0, sign * b[j].1));
                j += 1;
            } else {
                let c = a[i].1 + sign * b[j].1;
                if c != 0 {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
        LaurentPoly { terms: out }
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        LaurentPoly::constant(c)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.merge(rhs, 1)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.merge(rhs, -1)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        if rhs.terms.len() == 1 {
            let (e, c) = rhs.terms[0];
            return LaurentPoly {
                terms: self.terms.iter().map(|&(a, b)| (a + e, b * c)).collect(),
            };
        }
        LaurentPoly::from_terms(
            self.terms
                .iter()
                .flat_map(|&(a, b)| rhs.terms.iter().map(move |&(e, c)| (a + e, b * c))),
        )
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(-1)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$m(rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        *self = self.merge(rhs, 1);
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        *self = self.merge(rhs, -1);
    }
}

/// Terms in increasing exponent order, e.g. `v^-1 + 2 + v^3`, `-2*v`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, &(e, c)) in self.terms.iter().enumerate() {
            let mag = c.unsigned_abs();
            if i == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if c < 0 { " - " } else { " + " })?;
            }
            match (e, mag) {
                (0, m) => write!(f, "{m}")?,
                (1, 1) => write!(f, "v")?,
                (1, m) => write!(f, "{m}*v")?,
                (e, 1) => write!(f, "v^{e}")?,
                (e, m) => write!(f, "{m}*v^{e}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let bad = |why: &str| Error::Parse(format!("bad Laurent polynomial `{text}`: {why}"));
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(bad("empty"));
        }
        // split into signed terms; a '-' right after '^' belongs to the exponent
        let mut pieces: Vec<(i64, String)> = Vec::new();
        let mut sign = 1i64;
        let mut cur = String::new();
        for ch in s.chars() {
            if (ch == '+' || ch == '-') && !cur.ends_with('^') {
                if !cur.is_empty() {
                    pieces.push((sign, std::mem::take(&mut cur)));
                    sign = 1;
                }
                if ch == '-' {
                    sign = -sign;
                }
            } else {
                cur.push(ch);
            }
        }
        if cur.is_empty() {
            return Err(bad("trailing sign"));
        }
        pieces.push((sign, cur));

        let mut terms = Vec::new();
        for (sign, piece) in pieces {
            let (coef, var) = match piece.split_once('*') {
                Some((c, v)) => (Some(c), Some(v)),
                None if piece.starts_with('v') => (None, Some(piece.as_str())),
                None => (Some(piece.as_str()), None),
            };
            let c: i64 = match coef {
                Some(c) => c.parse().map_err(|_| bad("coefficient"))?,
                None => 1,
            };
            let e: i32 = match var {
                None => 0,
                Some("v") => 1,
                Some(v) => v
                    .strip_prefix("v^")
                    .and_then(|e| e.parse().ok())
                    .ok_or_else(|| bad("exponent"))?,
            };
            terms.push((e, sign * c));
        }
        Ok(LaurentPoly::from_terms(terms))
    }
}

impl From<LaurentPoly> for String {
    fn from(p: LaurentPoly) -> String {
        p.to_string()
    }
}

impl TryFrom<String> for LaurentPoly {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn display_round_trip() {
        for text in ["v^-1 + 2 + v^3", "-v", "0", "3*v^-2 + 7 - v", "-2 + v^2"] {
            assert_eq!(p(text).to_string(), text);
        }
        assert_eq!(p("v + v").to_string(), "2*v");
        assert_eq!(p("v - v"), LaurentPoly::zero());
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!("v^".parse::<LaurentPoly>().is_err());
        assert!("2*w".parse::<LaurentPoly>().is_err());
        assert!("1 +".parse::<LaurentPoly>().is_err());
        assert!("".parse::<LaurentPoly>().is_err());
    }

    #[test]
    fn arithmetic() {
        let q = LaurentPoly::quantum_two();
        assert_eq!(&q * &q, p("v^-2 + 2 + v^2"));
        assert_eq!(&q - &q, LaurentPoly::zero());
        assert_eq!(q.bar(), q);
        assert_eq!(p("v^3 - 2*v").bar(), p("-2*v^-1 + v^-3"));
        assert_eq!(p("v").shift(-3), p("v^-2"));
        assert_eq!(p("v^-1 + 5").constant_term(), 5);
    }

    #[test]
    fn exact_division() {
        let q = LaurentPoly::quantum_two();
        let prod = &q * &p("v^-3 + 4 - v^2");
        assert_eq!(prod.div_exact(&q), Some(p("v^-3 + 4 - v^2")));
        assert_eq!(p("v").div_exact(&q), None);
        assert_eq!(p("2").div_exact(&p("3")), None);
        assert_eq!(LaurentPoly::zero().div_exact(&q), Some(LaurentPoly::zero()));
    }
}
