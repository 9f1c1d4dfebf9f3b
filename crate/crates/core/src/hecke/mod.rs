//! Hecke algebra arithmetic in the standard basis `{h_x}` over `Z[v, v^-1]`,
//! with quadratic relation `h_s^2 = (v^-1 - v) h_s + 1`.

mod algebra;

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{Map, Value};

use crate::coxeter::{CoxeterSpec, CoxeterSystem, Element, Gen, Side, Word};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

pub use algebra::{Factorization, HeckeAlgebra};

/// A finitely supported combination `sum_x c_x h_x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeElt {
    spec: CoxeterSpec,
    terms: BTreeMap<Element, LaurentPoly>,
}

impl HeckeElt {
    pub fn zero(spec: CoxeterSpec) -> Self {
        HeckeElt {
            spec,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(spec: CoxeterSpec) -> Self {
        Self::h_std(&Element::identity(spec))
    }

    /// The standard basis element `h_x`.
    pub fn h_std(x: &Element) -> Self {
        let mut h = Self::zero(x.spec());
        h.terms.insert(x.clone(), LaurentPoly::one());
        h
    }

    /// `b_s = h_s + v`.
    pub fn b_gen(system: &CoxeterSystem, s: Gen) -> Result<Self> {
        let mut h = Self::h_std(&system.generator(s)?);
        h.add_term(&system.identity(), &LaurentPoly::v());
        Ok(h)
    }

    pub fn spec(&self) -> CoxeterSpec {
        self.spec
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing element order (by length first).
    pub fn terms(&self) -> impl Iterator<Item = (&Element, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, x: &Element) -> LaurentPoly {
        self.terms.get(x).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, x: &Element, p: &LaurentPoly) {
        if p.is_zero() {
            return;
        }
        match self.terms.get_mut(x) {
            Some(c) => {
                *c += p;
                if c.is_zero() {
                    self.terms.remove(x);
                }
            }
            None => {
                self.terms.insert(x.clone(), p.clone());
            }
        }
    }

    fn check_same(&self, other: &HeckeElt) -> Result<()> {
        if self.spec == other.spec {
            Ok(())
        } else {
            Err(Error::SystemMismatch(self.spec, other.spec))
        }
    }

    pub fn add(&self, other: &HeckeElt) -> Result<HeckeElt> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (x, p) in &other.terms {
            out.add_term(x, p);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &HeckeElt) -> Result<HeckeElt> {
        self.add(&other.scale(&LaurentPoly::constant(-1)))
    }

    pub fn scale(&self, c: &LaurentPoly) -> HeckeElt {
        let mut out = Self::zero(self.spec);
        if c.is_zero() {
            return out;
        }
        for (x, p) in &self.terms {
            out.terms.insert(x.clone(), p * c);
        }
        out
    }

    fn check_gen(&self, s: Gen) -> Result<()> {
        if s < self.spec.rank() {
            Ok(())
        } else {
            Err(Error::ForeignGenerator {
                gen: s,
                system: self.spec,
            })
        }
    }

    /// Multiply by `h_s` on the given side.
    pub fn mult_gen_std(&self, s: Gen, side: Side) -> Result<HeckeElt> {
        self.check_gen(s)?;
        Ok(self.mul_h_gen(s, side))
    }

    pub(crate) fn mul_h_gen(&self, s: Gen, side: Side) -> HeckeElt {
        let quad = LaurentPoly::from_terms([(-1, 1), (1, -1)]);
        let mut out = Self::zero(self.spec);
        for (x, p) in &self.terms {
            let sx = x.mul(s, side);
            if sx.length() < x.length() {
                out.add_term(x, &(p * &quad));
            }
            out.add_term(&sx, p);
        }
        out
    }

    /// Multiply by `b_s = h_s + v` on the given side.
    pub(crate) fn mul_b_gen(&self, s: Gen, side: Side) -> HeckeElt {
        let mut out = self.mul_h_gen(s, side);
        for (x, p) in &self.terms {
            out.add_term(x, &p.shift(1));
        }
        out
    }

    pub fn mult_b_gen(&self, s: Gen, side: Side) -> Result<HeckeElt> {
        self.check_gen(s)?;
        Ok(self.mul_b_gen(s, side))
    }

    /// The product `self * other`: each `h_x` of `self` acts on `other` through
    /// the letters of a reduced word of `x`, right to left.
    pub fn mult(&self, other: &HeckeElt) -> Result<HeckeElt> {
        self.check_same(other)?;
        let mut out = Self::zero(self.spec);
        for (x, p) in &self.terms {
            let mut acc = other.clone();
            for s in x.canonical_word().reversed().iter() {
                acc = acc.mul_h_gen(s, Side::Left);
            }
            for (y, q) in &acc.terms {
                out.add_term(y, &(p * q));
            }
        }
        Ok(out)
    }

    /// The bar involution: `v -> v^-1` and `h_x -> (h_{x^-1})^-1`.
    ///
    /// Terms are grouped by the lowest left descent `s` of their element, so
    /// that `self = c_e + sum_s h_s T_s` and `bar(self) = bar(c_e) +
    /// sum_s (h_s + v - v^-1) bar(T_s)`.
    pub fn bar(&self) -> HeckeElt {
        let mut out = Self::zero(self.spec);
        let mut groups: BTreeMap<Gen, HeckeElt> = BTreeMap::new();
        for (x, p) in &self.terms {
            match x.first_descent(Side::Left) {
                None => out.add_term(x, &p.bar()),
                Some(s) => {
                    groups
                        .entry(s)
                        .or_insert_with(|| Self::zero(self.spec))
                        .terms
                        .insert(x.mul(s, Side::Left), p.clone());
                }
            }
        }
        let inv_shift = LaurentPoly::from_terms([(-1, -1), (1, 1)]);
        for (s, tail) in groups {
            let bt = tail.bar();
            for (y, q) in bt.mul_h_gen(s, Side::Left).terms {
                out.add_term(&y, &q);
            }
            for (y, q) in &bt.terms {
                out.add_term(y, &(q * &inv_shift));
            }
        }
        out
    }

    /// Divide every coefficient by `d`, failing if any division is inexact.
    pub fn div_exact(&self, d: &LaurentPoly) -> Result<HeckeElt> {
        let mut out = Self::zero(self.spec);
        for (x, p) in &self.terms {
            let q = p
                .div_exact(d)
                .ok_or_else(|| Error::NotDivisible(format!("coefficient {p} of h[{x}] by {d}")))?;
            out.terms.insert(x.clone(), q);
        }
        Ok(out)
    }

    /// JSON object `{word: laurent-string}` in element order.
    pub fn to_json(&self) -> Value {
        let map: Map<String, Value> = self
            .terms
            .iter()
            .map(|(x, p)| (x.canonical_word().to_string(), Value::String(p.to_string())))
            .collect();
        Value::Object(map)
    }

    pub fn from_json(system: &CoxeterSystem, value: &Value) -> Result<HeckeElt> {
        let obj = value
            .as_object()
            .ok_or_else(|| Error::Parse("Hecke element must be a JSON object".into()))?;
        let mut out = Self::zero(system.spec());
        for (word, coef) in obj {
            let w: Word = word.parse()?;
            let x = system.evaluate(&w)?;
            let p: LaurentPoly = coef
                .as_str()
                .ok_or_else(|| Error::Parse(format!("coefficient of {word} must be a string")))?
                .parse()?;
            out.add_term(&x, &p);
        }
        Ok(out)
    }
}

/// Text form such as `h[s0.s1] + (v)*h[s0] + (v^2)`.
impl fmt::Display for HeckeElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // print from the longest element down, as is customary
        for (i, (x, p)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match (x.is_identity(), *p == LaurentPoly::one()) {
                (true, _) => write!(f, "({p})")?,
                (false, true) => write!(f, "h[{x}]")?,
                (false, false) => write!(f, "({p})*h[{x}]")?,
            }
        }
        Ok(())
    }
}
