use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::coxeter::{CoxeterSpec, CoxeterSystem, Element, Gen, Side, Word};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

use super::HeckeElt;

type Memo = RwLock<HashMap<Element, Arc<HeckeElt>>>;

/// A Hecke algebra with memoized Kazhdan-Lusztig basis elements.
///
/// The memo tables are the only shared state. They may be filled from several
/// threads at once; fills are idempotent, so a race only costs duplicate work.
pub struct HeckeAlgebra {
    system: CoxeterSystem,
    kl: Memo,
    universal: Memo,
}

/// Alternating segments of a word in a universal Coxeter group, together with
/// the outcome of checking `b_x = b_{seg_1} * b_{seg_2} * ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub segments: Vec<Word>,
    pub verified: bool,
}

impl HeckeAlgebra {
    pub fn new(system: CoxeterSystem) -> Self {
        HeckeAlgebra {
            system,
            kl: RwLock::new(HashMap::new()),
            universal: RwLock::new(HashMap::new()),
        }
    }

    pub fn system(&self) -> &CoxeterSystem {
        &self.system
    }

    pub fn spec(&self) -> CoxeterSpec {
        self.system.spec()
    }

    pub fn one(&self) -> HeckeElt {
        HeckeElt::one(self.spec())
    }

    pub fn h_std(&self, x: &Element) -> Result<HeckeElt> {
        self.system.check_element(x)?;
        Ok(HeckeElt::h_std(x))
    }

    pub fn mult(&self, a: &HeckeElt, b: &HeckeElt) -> Result<HeckeElt> {
        a.check_same(b)?;
        if a.spec() != self.spec() {
            return Err(Error::SystemMismatch(self.spec(), a.spec()));
        }
        a.mult(b)
    }

    pub fn bar(&self, h: &HeckeElt) -> HeckeElt {
        h.bar()
    }

    /// Number of memoized KL basis elements.
    pub fn cached(&self) -> usize {
        self.kl.read().unwrap().len()
    }

    fn memo_get(memo: &Memo, x: &Element) -> Option<Arc<HeckeElt>> {
        memo.read().unwrap().get(x).cloned()
    }

    fn memo_put(memo: &Memo, x: &Element, h: HeckeElt) -> Arc<HeckeElt> {
        memo.write()
            .unwrap()
            .entry(x.clone())
            .or_insert_with(|| Arc::new(h))
            .clone()
    }

    /// Seeds the KL memo, e.g. from a persistent cache.
    pub fn insert_kl(&self, x: &Element, h: HeckeElt) -> Result<()> {
        self.system.check_element(x)?;
        Self::memo_put(&self.kl, x, h);
        Ok(())
    }

    /// The Kazhdan-Lusztig basis element `b_x`: the unique bar-invariant
    /// element of `h_x + sum_{y<x} v Z[v] h_y`.
    ///
    /// With `s` the lowest left descent, `b_x = b_s b_{sx} - sum_{y<x} p_y(0) b_y`
    /// where `p_y` is the coefficient of `h_y` in `b_s b_{sx}`.
    pub fn kl_basis(&self, x: &Element) -> Result<Arc<HeckeElt>> {
        self.system.check_element(x)?;
        Ok(self.kl_inner(x))
    }

    fn kl_inner(&self, x: &Element) -> Arc<HeckeElt> {
        if let Some(h) = Self::memo_get(&self.kl, x) {
            return h;
        }
        let h = match x.first_descent(Side::Left) {
            None => self.one(),
            Some(s) => self.kl_step(x, s),
        };
        Self::memo_put(&self.kl, x, h)
    }

    fn kl_step(&self, x: &Element, s: Gen) -> HeckeElt {
        let sx = x.mul(s, Side::Left);
        let mut h = self.kl_inner(&sx).mul_b_gen(s, Side::Left);
        let corrections: Vec<(Element, i64)> = h
            .terms()
            .filter(|(y, p)| *y != x && p.constant_term() != 0)
            .map(|(y, p)| (y.clone(), p.constant_term()))
            .collect();
        for (y, c) in corrections {
            let by = self.kl_inner(&y);
            for (z, q) in by.terms() {
                h.add_term(z, &q.scale(-c));
            }
        }
        h
    }

    /// `b_x` computed with the given left descent in the top step (the lower
    /// steps use the memo). Not memoized.
    pub fn kl_basis_with_descent(&self, x: &Element, s: Gen) -> Result<HeckeElt> {
        self.system.check_element(x)?;
        self.system.check_gen(s)?;
        if !x.has_descent(s, Side::Left) {
            return Err(Error::LetterMismatch(format!(
                "s{s} is not a left descent of {x}"
            )));
        }
        Ok(self.kl_step(x, s))
    }

    /// The coefficient `h_{y,x}` of `h_y` in `b_x`.
    pub fn kl_coefficient(&self, y: &Element, x: &Element) -> Result<LaurentPoly> {
        self.system.check_element(y)?;
        Ok(self.kl_basis(x)?.coeff(y))
    }

    /// `v^{l(y)-l(x)} h_{y,x}`; for `y <= x` this is a polynomial in `v^-1`
    /// with constant term 1 at `y = x`.
    pub fn kl_coefficient_normalized(&self, y: &Element, x: &Element) -> Result<LaurentPoly> {
        let shift = y.length() as i32 - x.length() as i32;
        Ok(self.kl_coefficient(y, x)?.shift(shift))
    }

    /// `(h_{s_1} + v) ... (h_{s_n} + v)`.
    pub fn bott_samelson_character(&self, w: &Word) -> Result<HeckeElt> {
        self.system.check_word(w)?;
        Ok(w.iter()
            .fold(self.one(), |h, s| h.mul_b_gen(s, Side::Right)))
    }

    /// `sum_{y <= x} v^{l(x)-l(y)} h_y` for dihedral groups, where `y <= x`
    /// exactly when `y = x` or `y` is shorter.
    pub fn dihedral_kl(&self, x: &Element) -> Result<HeckeElt> {
        if !matches!(self.spec(), CoxeterSpec::Dihedral(_)) {
            return Err(Error::KindMismatch {
                expected: "dihedral",
                actual: self.spec(),
            });
        }
        self.system.check_element(x)?;
        let mut h = HeckeElt::zero(self.spec());
        for y in self.system.elements_up_to(Some(x.length()))? {
            if y.length() < x.length() || y == *x {
                h.add_term(
                    &y,
                    &LaurentPoly::monomial(1, (x.length() - y.length()) as i32),
                );
            }
        }
        Ok(h)
    }

    fn check_universal(&self) -> Result<()> {
        match self.spec() {
            CoxeterSpec::Universal(_) | CoxeterSpec::Dihedral(None) => Ok(()),
            actual => Err(Error::KindMismatch {
                expected: "universal",
                actual,
            }),
        }
    }

    /// `b_s b_x` expanded in the KL basis of a universal Coxeter group.
    /// With `x = r s' ...`:
    /// `b_r b_x = (v + v^-1) b_x`, `b_{s'} b_x = b_{s'x} + b_{rx}`, and
    /// `b_t b_x = b_{tx}` for any other `t`.
    pub fn dyer_mult(&self, s: Gen, x: &Element) -> Result<Vec<(Element, LaurentPoly)>> {
        self.check_universal()?;
        self.system.check_element(x)?;
        self.system.check_gen(s)?;
        let word = x.canonical_word();
        let sx = x.mul(s, Side::Left);
        Ok(match word.letters() {
            [r, ..] if *r == s => vec![(x.clone(), LaurentPoly::quantum_two())],
            [r, second, ..] if *second == s => vec![
                (sx, LaurentPoly::one()),
                (x.mul(*r, Side::Left), LaurentPoly::one()),
            ],
            _ => vec![(sx, LaurentPoly::one())],
        })
    }

    /// `b_x` in a universal Coxeter group by iterating Dyer's formula:
    /// for `x = t x'` with `x' = r s' ...`, `b_x = b_t b_{x'}`, minus `b_{rx'}`
    /// when `t = s'`.
    pub fn kl_universal(&self, x: &Element) -> Result<Arc<HeckeElt>> {
        self.check_universal()?;
        self.system.check_element(x)?;
        Ok(self.universal_inner(x))
    }

    fn universal_inner(&self, x: &Element) -> Arc<HeckeElt> {
        if let Some(h) = Self::memo_get(&self.universal, x) {
            return h;
        }
        let word = x.canonical_word();
        let h = match word.letters() {
            [] => self.one(),
            [t, rest @ ..] => {
                let tail = x.mul(*t, Side::Left);
                let mut h = self.universal_inner(&tail).mul_b_gen(*t, Side::Left);
                if rest.len() >= 2 && rest[1] == *t {
                    let shorter = tail.mul(rest[0], Side::Left);
                    let correction = self.universal_inner(&shorter);
                    for (z, q) in correction.terms() {
                        h.add_term(z, &-q);
                    }
                }
                h
            }
        };
        Self::memo_put(&self.universal, x, h)
    }

    /// `a * b = a b / (v + v^-1)`, exact.
    pub fn star_product(&self, a: &HeckeElt, b: &HeckeElt) -> Result<HeckeElt> {
        self.mult(a, b)?.div_exact(&LaurentPoly::quantum_two())
    }

    /// Splits the unique reduced word of `x` into maximal two-letter
    /// alternating runs, consecutive runs sharing their boundary letter, and
    /// checks `b_x` against the star product of the runs' KL elements.
    pub fn factorize_universal(&self, x: &Element) -> Result<Factorization> {
        self.check_universal()?;
        self.system.check_element(x)?;
        let letters = x.canonical_word().0;
        let segments = alternating_segments(&letters);
        let mut product = self.one();
        for (i, seg) in segments.iter().enumerate() {
            let b = self.kl_inner(&self.system.evaluate(seg)?);
            product = if i == 0 {
                (*b).clone()
            } else {
                self.star_product(&product, &b)?
            };
        }
        let verified = product == *self.kl_inner(x);
        Ok(Factorization { segments, verified })
    }
}

fn alternating_segments(letters: &[Gen]) -> Vec<Word> {
    if letters.is_empty() {
        return Vec::new();
    }
    let mut segments = Vec::new();
    let mut start = 0;
    for i in 2..letters.len() {
        if i >= start + 2 && letters[i] != letters[i - 2] {
            segments.push(Word::from(&letters[start..i]));
            start = i - 1;
        }
    }
    segments.push(Word::from(&letters[start..]));
    segments
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn segments_share_boundaries() {
        let seg = |v: &[Gen]| -> Vec<Vec<Gen>> {
            alternating_segments(v).into_iter().map(|w| w.0).collect()
        };
        assert_eq!(
            seg(&[0, 1, 0, 2, 1]),
            vec![vec![0, 1, 0], vec![0, 2], vec![2, 1]]
        );
        assert_eq!(seg(&[0, 1, 0]), vec![vec![0, 1, 0]]);
        assert_eq!(seg(&[0]), vec![vec![0]]);
        assert_eq!(seg(&[0, 1, 2]), vec![vec![0, 1], vec![1, 2]]);
        assert!(seg(&[]).is_empty());
    }
}
