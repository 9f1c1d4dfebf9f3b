//! Multivariate polynomials over `Q` with the symmetric-group action, the
//! roots `alpha_i = x_{i+1} - x_i`, and the operators
//! `P_i(p) = (p + s_i p) / 2` and `d_i(p) = (p - s_i p) / (2 alpha_i)`,
//! so that `p = P_i(p) + alpha_i d_i(p)`.
//!
//! Variables are indexed from 0 internally and printed from 1 (`x1`, `x2`, ...).
//! Each variable has degree 2 in the grading used by bimodules.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Q = Ratio<i64>;

/// Maximum number of variables.
pub const MAX_VARS: usize = 16;

/// A monomial packed into 16 exponent bytes; variable 0 is the most
/// significant byte, so integer order is lexicographic order.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(u128);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    fn shift(i: usize) -> u32 {
        debug_assert!(i < MAX_VARS);
        8 * (MAX_VARS - 1 - i) as u32
    }

    pub fn var(i: usize) -> Self {
        Monomial(1u128 << Self::shift(i))
    }

    pub fn from_exponents(exps: &[u8]) -> Self {
        assert!(exps.len() <= MAX_VARS, "at most {MAX_VARS} variables");
        Monomial(
            exps.iter()
                .enumerate()
                .fold(0, |acc, (i, &e)| acc | (e as u128) << Self::shift(i)),
        )
    }

    pub fn exp(self, i: usize) -> u8 {
        (self.0 >> Self::shift(i)) as u8
    }

    pub fn exponents(self) -> [u8; MAX_VARS] {
        let mut out = [0; MAX_VARS];
        for (i, e) in out.iter_mut().enumerate() {
            *e = self.exp(i);
        }
        out
    }

    pub fn degree(self) -> u32 {
        self.0.to_le_bytes().iter().map(|&b| b as u32).sum()
    }

    pub fn with_exp(self, i: usize, e: u8) -> Self {
        let s = Self::shift(i);
        Monomial(self.0 & !(0xffu128 << s) | (e as u128) << s)
    }

    pub fn times(self, other: Monomial) -> Self {
        debug_assert!(
            (0..MAX_VARS).all(|i| self.exp(i) as u16 + other.exp(i) as u16 <= 255),
            "exponent overflow"
        );
        Monomial(self.0 + other.0)
    }

    /// Exchange the exponents of variables `i` and `j`.
    pub fn swap(self, i: usize, j: usize) -> Self {
        let (a, b) = (self.exp(i), self.exp(j));
        self.with_exp(i, b).with_exp(j, a)
    }

    /// Image under `x_j -> x_{perm[j]}`.
    pub fn permute(self, perm: &[usize]) -> Self {
        let mut out = [0u8; MAX_VARS];
        for (j, &target) in perm.iter().enumerate() {
            out[target] = self.exp(j);
        }
        for (j, slot) in out.iter_mut().enumerate().skip(perm.len()) {
            *slot = self.exp(j);
        }
        Monomial::from_exponents(&out)
    }

    /// All monomials of the given degree in the listed variables.
    pub fn all_of_degree(vars: &[usize], degree: u32) -> Vec<Monomial> {
        fn go(vars: &[usize], degree: u32, acc: Monomial, out: &mut Vec<Monomial>) {
            match vars {
                [] if degree == 0 => out.push(acc),
                [] => {}
                [v, rest @ ..] => {
                    for e in 0..=degree {
                        go(rest, degree - e, acc.with_exp(*v, e as u8), out);
                    }
                }
            }
        }
        let mut out = Vec::new();
        go(vars, degree, Monomial::ONE, &mut out);
        out.sort();
        out
    }
}

/// A polynomial as sorted `(monomial, coefficient)` pairs without zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: Vec<(Monomial, Q)>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        Self::term(Monomial::ONE, c)
    }

    pub fn int(c: i64) -> Self {
        Self::constant(Q::from_integer(c))
    }

    pub fn term(m: Monomial, c: Q) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Poly {
                terms: vec![(m, c)],
            }
        }
    }

    /// The variable `x_i` (0-based).
    pub fn var(i: usize) -> Self {
        Self::term(Monomial::var(i), Q::one())
    }

    pub fn from_terms(pairs: impl IntoIterator<Item = (Monomial, Q)>) -> Self {
        let mut terms: Vec<(Monomial, Q)> = pairs.into_iter().collect();
        terms.sort_unstable_by_key(|t| t.0);
        let mut out: Vec<(Monomial, Q)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 += c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|t| !t.1.is_zero());
        Poly { terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Monomial, Q)] {
        &self.terms
    }

    pub fn coeff(&self, m: Monomial) -> Q {
        self.terms
            .binary_search_by_key(&m, |t| t.0)
            .map_or(Q::zero(), |i| self.terms[i].1)
    }

    /// Largest total degree of a term; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0.degree()).max()
    }

    /// The common total degree of all terms, if the polynomial is homogeneous
    /// and nonzero.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.terms.first()?.0.degree();
        self.terms.iter().all(|t| t.0.degree() == d).then_some(d)
    }

    /// Number of variables actually occurring (one past the largest index).
    pub fn var_span(&self) -> usize {
        self.terms
            .iter()
            .map(|(m, _)| {
                (0..MAX_VARS)
                    .rev()
                    .find(|&i| m.exp(i) > 0)
                    .map_or(0, |i| i + 1)
            })
            .max()
            .unwrap_or(0)
    }

    pub fn scale(&self, c: Q) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|&(m, a)| (m, a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: Monomial, c: Q) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|&(t, a)| (t.times(m), a * c))
                .collect(),
        }
    }

    fn merge(&self, other: &Poly, sign: Q) -> Poly {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let ord = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => x.0.cmp(&y.0),
                (Some(_), None) => Ordering::Less,
                _ => Ordering::Greater,
            };
            match ord {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((b[j].0, b[j].1 * sign));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = a[i].1 + b[j].1 * sign;
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Poly { terms: out }
    }

    /// The action of the adjacent transposition `s_i`, swapping `x_i` and `x_{i+1}`.
    pub fn swap_adjacent(&self, i: usize) -> Poly {
        Poly::from_terms(self.terms.iter().map(|&(m, c)| (m.swap(i, i + 1), c)))
    }

    /// The action `w . x_j = x_{w(j)}` of a permutation in one-line notation.
    pub fn act(&self, perm: &[usize]) -> Poly {
        Poly::from_terms(self.terms.iter().map(|&(m, c)| (m.permute(perm), c)))
    }

    pub fn is_invariant(&self, i: usize) -> bool {
        self.swap_adjacent(i) == *self
    }

    /// `alpha_i = x_{i+1} - x_i`.
    pub fn alpha(i: usize) -> Poly {
        &Poly::var(i + 1) - &Poly::var(i)
    }

    /// `P_i(p) = (p + s_i p) / 2`.
    pub fn p_op(&self, i: usize) -> Poly {
        (self + &self.swap_adjacent(i)).scale(Q::new(1, 2))
    }

    /// `d_i(p) = (p - s_i p) / (2 alpha_i)`, computed monomial by monomial:
    /// with `a`, `b` the exponents of `x_i`, `x_{i+1}`, the quotient is a
    /// geometric sum in `x_i`, `x_{i+1}`.
    pub fn partial(&self, i: usize) -> Poly {
        let half = Q::new(1, 2);
        let mut out = Vec::new();
        for &(m, c) in &self.terms {
            let (a, b) = (m.exp(i), m.exp(i + 1));
            if a == b {
                continue;
            }
            let low = a.min(b);
            let d = a.max(b) - low;
            let base = m.with_exp(i, low).with_exp(i + 1, low);
            let sign = if a > b { -half } else { half };
            for k in 0..d {
                let mono = base.times(Monomial::ONE.with_exp(i, k).with_exp(i + 1, d - 1 - k));
                out.push((mono, c * sign));
            }
        }
        Poly::from_terms(out)
    }

    /// Homogeneous component of the given total degree.
    pub fn component(&self, degree: u32) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|t| t.0.degree() == degree)
                .copied()
                .collect(),
        }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.merge(rhs, Q::one())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.merge(rhs, -Q::one())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        if rhs.terms.len() == 1 {
            let (m, c) = rhs.terms[0];
            return self.mul_monomial(m, c);
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms[0];
            return rhs.mul_monomial(m, c);
        }
        Poly::from_terms(
            self.terms
                .iter()
                .flat_map(|&(m, a)| rhs.terms.iter().map(move |&(n, b)| (m.times(n), a * b))),
        )
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(-Q::one())
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

fn fmt_monomial(m: Monomial, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let mut first = true;
    for i in 0..MAX_VARS {
        let e = m.exp(i);
        if e == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        if e == 1 {
            write!(f, "x{}", i + 1)?;
        } else {
            write!(f, "x{}^{e}", i + 1)?;
        }
    }
    Ok(())
}

/// Terms in decreasing lexicographic order, e.g. `3*x1*x2^2 - 1/2*x3`.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, &(m, c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            if k == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if c.is_negative() { " - " } else { " + " })?;
            }
            if m == Monomial::ONE {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                fmt_monomial(m, f)?;
            }
        }
        Ok(())
    }
}

impl FromStr for Poly {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let bad = |why: &str| Error::Parse(format!("bad polynomial `{text}`: {why}"));
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(bad("empty"));
        }
        let mut pieces: Vec<(bool, String)> = Vec::new();
        let mut neg = false;
        let mut cur = String::new();
        for ch in s.chars() {
            if ch == '+' || ch == '-' {
                if !cur.is_empty() {
                    pieces.push((neg, std::mem::take(&mut cur)));
                    neg = false;
                }
                if ch == '-' {
                    neg = !neg;
                }
            } else {
                cur.push(ch);
            }
        }
        if cur.is_empty() {
            return Err(bad("trailing sign"));
        }
        pieces.push((neg, cur));

        let mut terms = Vec::new();
        for (neg, piece) in pieces {
            let mut coef = Q::one();
            let mut mono = Monomial::ONE;
            for factor in piece.split('*') {
                if let Some(rest) = factor.strip_prefix('x') {
                    let (idx, e) = match rest.split_once('^') {
                        Some((i, e)) => (i, e.parse::<u8>().map_err(|_| bad("exponent"))?),
                        None => (rest, 1),
                    };
                    let idx: usize = idx.parse().map_err(|_| bad("variable index"))?;
                    if idx == 0 || idx > MAX_VARS {
                        return Err(bad("variable index out of range"));
                    }
                    let i = idx - 1;
                    let total = mono.exp(i) as u16 + e as u16;
                    if total > 255 {
                        return Err(bad("exponent too large"));
                    }
                    mono = mono.with_exp(i, total as u8);
                } else {
                    let c = match factor.split_once('/') {
                        Some((n, d)) => {
                            let n: i64 = n.parse().map_err(|_| bad("numerator"))?;
                            let d: i64 = d.parse().map_err(|_| bad("denominator"))?;
                            if d == 0 {
                                return Err(bad("zero denominator"));
                            }
                            Q::new(n, d)
                        }
                        None => Q::from_integer(factor.parse().map_err(|_| bad("coefficient"))?),
                    };
                    coef *= c;
                }
            }
            terms.push((mono, if neg { -coef } else { coef }));
        }
        Ok(Poly::from_terms(terms))
    }
}

#[cfg(test)]
mod tests {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    fn random_poly(rng: &mut ChaCha8Rng, nvars: usize, max_deg: u8) -> Poly {
        Poly::from_terms((0..rng.gen_range(1..6)).map(|_| {
            let exps: Vec<u8> = (0..nvars).map(|_| rng.gen_range(0..=max_deg)).collect();
            (
                Monomial::from_exponents(&exps),
                Q::new(rng.gen_range(-5..=5), rng.gen_range(1..=3)),
            )
        }))
    }

    #[test]
    fn print_and_parse() {
        for text in ["3*x1*x2^2 - 1/2*x3", "0", "-x1 + 1", "x2^3 - 7/3"] {
            assert_eq!(p(text).to_string(), text);
        }
        assert_eq!(p("x1*x1"), p("x1^2"));
        assert_eq!(p("2*x1 - 2*x1"), Poly::zero());
        assert!("x0".parse::<Poly>().is_err());
        assert!("x1 +".parse::<Poly>().is_err());
        assert!("1/0".parse::<Poly>().is_err());
        assert!("y".parse::<Poly>().is_err());
    }

    #[test]
    fn action_examples() {
        // s_1 swaps x1 and x2
        assert_eq!(p("x1").swap_adjacent(0), p("x2"));
        let q = p("3*x1*x2^2*x3^7 + x2*x3");
        assert_eq!(q.swap_adjacent(0), p("3*x2*x1^2*x3^7 + x1*x3"));
        assert_eq!(q.act(&[0, 1, 2]), q);
        assert_eq!(q.act(&[1, 0, 2]), q.swap_adjacent(0));
    }

    #[test]
    fn operator_examples() {
        assert_eq!(p("x1").partial(0), p("-1/2"));
        assert_eq!(p("x1").p_op(0), p("1/2*x1 + 1/2*x2"));
        let q = p("3*x1*x2^2*x3^7 + x2*x3");
        assert_eq!(
            &q - &q.swap_adjacent(0),
            &p("x2 - x1") * &p("3*x1*x2*x3^7 + x3")
        );
        assert_eq!(Poly::alpha(0), p("x2 - x1"));
        assert_eq!(Poly::alpha(0).partial(0), Poly::one());
    }

    #[test]
    fn decomposition_on_all_small_monomials() {
        // p = P(p) + alpha d(p) for every monomial in three variables up to degree 12
        for deg in 0..=12 {
            for m in Monomial::all_of_degree(&[0, 1, 2], deg) {
                let q = Poly::term(m, Q::one());
                for i in 0..2 {
                    let (pp, dp) = (q.p_op(i), q.partial(i));
                    assert_eq!(&pp + &(&Poly::alpha(i) * &dp), q);
                    assert!(pp.is_invariant(i));
                    assert!(dp.is_invariant(i));
                    // oracle: 2 alpha d(p) = p - s p
                    assert_eq!(
                        (&Poly::alpha(i) * &dp).scale(Q::from_integer(2)),
                        &q - &q.swap_adjacent(i)
                    );
                }
            }
        }
    }

    #[test]
    fn random_identities() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a2 = &Poly::alpha(1) * &Poly::alpha(1);
        assert!(a2.is_invariant(1));
        for _ in 0..100 {
            let q = random_poly(&mut rng, 4, 4);
            let r = random_poly(&mut rng, 4, 3);
            let inv = q.p_op(1);
            // d is linear over invariants on both sides
            assert_eq!((&inv * &r).partial(1), &inv * &r.partial(1));
            assert_eq!((&r * &inv).partial(1), &r.partial(1) * &inv);
            // group action law for permutations in S_4
            let w1 = [2, 0, 3, 1];
            let w2 = [1, 3, 0, 2];
            let w1w2: Vec<usize> = (0..4).map(|j| w1[w2[j]]).collect();
            assert_eq!(q.act(&w1w2), q.act(&w2).act(&w1));
            assert_eq!(&(&q * &r) - &(&r * &q), Poly::zero());
        }
    }

    #[test]
    fn monomial_enumeration() {
        assert_eq!(Monomial::all_of_degree(&[0, 1, 2], 2).len(), 6);
        assert_eq!(Monomial::all_of_degree(&[0, 1], 0), vec![Monomial::ONE]);
        assert_eq!(Monomial::var(3).degree(), 1);
    }
}
