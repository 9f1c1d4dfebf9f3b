//! Bott-Samelson bimodules `B_{s_1} ... B_{s_n}` for symmetric groups, in
//! left-module normal form.
//!
//! Every element is written uniquely as `sum_e c_e (1 (x) u_1 (x) ... (x) u_n)`
//! with `u_k = alpha_{s_k}` when bit `k` of the mask `e` is set and `u_k = 1`
//! otherwise. The left coefficients `c_e` are polynomials.

mod braid;
mod morphism;
mod rank;

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Map, Value};

use crate::coxeter::{CoxeterSpec, Word};
use crate::error::{Error, Result};
use crate::poly::{Poly, MAX_VARS, Q};

pub use braid::f_morphism;
pub use morphism::{adjunction_left, adjunction_right, BSMorphism, GenKind};
pub use rank::{decompose_srs, graded_rank, image_graded_rank, srs_idempotent, SrsDecomposition};

/// Number of polynomial variables for `S_n`, checking the supported range.
pub fn variables_for(spec: CoxeterSpec) -> Result<usize> {
    match spec {
        CoxeterSpec::Symmetric(n) if n as usize <= MAX_VARS => Ok(n as usize),
        CoxeterSpec::Symmetric(n) => Err(Error::InvalidSpec(format!(
            "bimodule computations support at most {MAX_VARS} variables, S_{n} needs {n}"
        ))),
        actual => Err(Error::KindMismatch {
            expected: "symmetric",
            actual,
        }),
    }
}

/// An element of a Bott-Samelson bimodule in left normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BSElement {
    word: Word,
    nvars: usize,
    comps: BTreeMap<u32, Poly>,
}

impl BSElement {
    pub fn zero(word: &Word, nvars: usize) -> Self {
        assert!(word.len() < 32, "words are limited to 31 letters");
        assert!(
            word.iter().all(|s| s + 1 < nvars),
            "letter out of range for {nvars} variables"
        );
        BSElement {
            word: word.clone(),
            nvars,
            comps: BTreeMap::new(),
        }
    }

    /// The basis element `1 (x) u_1 (x) ... (x) u_n` for a mask.
    pub fn basis(word: &Word, nvars: usize, mask: u32) -> Self {
        let mut out = Self::zero(word, nvars);
        out.comps.insert(mask, Poly::one());
        out
    }

    /// `1 (x) 1 (x) ... (x) 1`.
    pub fn one_tensor(word: &Word, nvars: usize) -> Self {
        Self::basis(word, nvars, 0)
    }

    /// Normal form of the pure tensor `p_0 (x) p_1 (x) ... (x) p_n`.
    ///
    /// Slots are processed right to left: the content `q` of slot `k+1` is
    /// split as `P(q) + alpha d(q)`; the invariant factors `P(q)` and `d(q)`
    /// move into slot `k`, leaving `1` or `alpha` behind.
    pub fn from_slots(word: &Word, nvars: usize, slots: &[Poly]) -> Result<Self> {
        if slots.len() != word.len() + 1 {
            return Err(Error::LengthMismatch(slots.len(), word.len() + 1));
        }
        let mut out = Self::zero(word, nvars);
        let mut work: Vec<(Vec<Poly>, u32)> = vec![(slots.to_vec(), 0)];
        for (k, s) in word.iter().enumerate().rev() {
            let mut next = Vec::with_capacity(work.len() * 2);
            for (mut sl, mask) in work {
                let q = sl.pop().expect("slot count checked");
                if q.is_zero() {
                    continue;
                }
                let (inv, div) = (q.p_op(s), q.partial(s));
                if !div.is_zero() {
                    let mut with_alpha = sl.clone();
                    with_alpha[k] = &with_alpha[k] * &div;
                    next.push((with_alpha, mask | 1 << k));
                }
                if !inv.is_zero() {
                    sl[k] = &sl[k] * &inv;
                    next.push((sl, mask));
                }
            }
            work = next;
        }
        for (sl, mask) in work {
            out.add_comp(mask, &sl[0]);
        }
        Ok(out)
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn comps(&self) -> impl Iterator<Item = (u32, &Poly)> {
        self.comps.iter().map(|(&m, p)| (m, p))
    }

    pub fn comp(&self, mask: u32) -> Poly {
        self.comps.get(&mask).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub(crate) fn add_comp(&mut self, mask: u32, p: &Poly) {
        if p.is_zero() {
            return;
        }
        let entry = self.comps.entry(mask).or_default();
        *entry = &*entry + p;
        if entry.is_zero() {
            self.comps.remove(&mask);
        }
    }

    fn check_same(&self, other: &BSElement) -> Result<()> {
        if self.word == other.word && self.nvars == other.nvars {
            Ok(())
        } else {
            Err(Error::Incompatible(format!(
                "elements of B[{}] and B[{}]",
                self.word, other.word
            )))
        }
    }

    pub fn add(&self, other: &BSElement) -> Result<BSElement> {
        self.check_same(other)?;
        let mut out = self.clone();
        out.add_assign(other);
        Ok(out)
    }

    pub(crate) fn add_assign(&mut self, other: &BSElement) {
        for (&m, p) in &other.comps {
            self.add_comp(m, p);
        }
    }

    pub fn sub(&self, other: &BSElement) -> Result<BSElement> {
        self.add(&other.scale(-Q::from_integer(1)))
    }

    pub fn scale(&self, c: Q) -> BSElement {
        self.left_mult(&Poly::constant(c))
    }

    pub fn left_mult(&self, p: &Poly) -> BSElement {
        let mut out = Self::zero(&self.word, self.nvars);
        for (&m, c) in &self.comps {
            out.add_comp(m, &(p * c));
        }
        out
    }

    pub fn right_mult(&self, p: &Poly) -> BSElement {
        let mut out = Self::zero(&self.word, self.nvars);
        if p.is_zero() {
            return out;
        }
        for (&mask, c) in &self.comps {
            let mut slots = self.basis_slots(mask);
            slots[0] = c.clone();
            let last = slots.len() - 1;
            slots[last] = &slots[last] * p;
            let part = Self::from_slots(&self.word, self.nvars, &slots).expect("slot count");
            out.add_assign(&part);
        }
        out
    }

    /// Slot contents `[1, u_1, ..., u_n]` of a basis element.
    fn basis_slots(&self, mask: u32) -> Vec<Poly> {
        std::iter::once(Poly::one())
            .chain(self.word.iter().enumerate().map(|(k, s)| {
                if mask >> k & 1 == 1 {
                    Poly::alpha(s)
                } else {
                    Poly::one()
                }
            }))
            .collect()
    }

    /// Graded degree `2 deg(c) + 2|mask| - n` if the element is homogeneous.
    pub fn degree(&self) -> Option<i32> {
        let n = self.word.len() as i32;
        let mut deg = None;
        for (&mask, c) in &self.comps {
            let d = 2 * c.homogeneous_degree()? as i32 + 2 * mask.count_ones() as i32 - n;
            if deg.is_some_and(|e| e != d) {
                return None;
            }
            deg = Some(d);
        }
        deg
    }

    fn mask_string(&self, mask: u32) -> String {
        (0..self.word.len())
            .map(|k| if mask >> k & 1 == 1 { '1' } else { '0' })
            .collect()
    }

    /// `{"word": ..., "comps": {"010": "<poly>", ...}}`, mask bits in word order.
    pub fn to_json(&self) -> Value {
        let comps: Map<String, Value> = self
            .comps
            .iter()
            .map(|(&m, p)| (self.mask_string(m), Value::String(p.to_string())))
            .collect();
        json!({ "word": self.word.to_string(), "comps": comps })
    }
}

/// `(c)*[mask]` terms, e.g. `(x1 + x2)*[000] - (1)*[100]`.
impl fmt::Display for BSElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.comps.is_empty() {
            return write!(f, "0");
        }
        for (i, (&m, c)) in self.comps.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*[{}]", self.mask_string(m))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests;
