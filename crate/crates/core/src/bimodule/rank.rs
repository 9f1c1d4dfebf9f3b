use std::collections::HashMap;

use num_traits::Zero;
use serde_json::{json, Value};

use crate::coxeter::{Gen, Word};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::linalg;
use crate::poly::{Monomial, Poly, Q};

use super::{BSElement, BSMorphism, GenKind};

/// Graded rank of `B_w` as a free left module: one basis element per mask,
/// of degree `2|mask| - n`, recorded as `v^{n - 2|mask|}`. So `B_s` gives
/// `v^-1 + v`.
pub fn graded_rank(word: &Word) -> LaurentPoly {
    let n = word.len() as i32;
    LaurentPoly::from_terms((0..1u32 << word.len()).map(|m| (n - 2 * m.count_ones() as i32, 1)))
}

fn binomial(n: u64, k: u64) -> i64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1)) as i64
}

/// Graded rank of the image of a degree-0 idempotent endomorphism.
///
/// The image is a graded free module, so its Hilbert series is
/// `G(t) / (1 - t^2)^N` where `G(t) = sum t^{d_i}` lists the degrees of a
/// basis and `N` is the number of variables. The coefficients of the Hilbert
/// series are the ranks of the map on each finite-dimensional degree slice;
/// slices from `-n` to `n` determine `G` because every `d_i` lies there.
pub fn image_graded_rank(f: &BSMorphism) -> Result<LaurentPoly> {
    if f.degree() != 0 || !f.is_idempotent() {
        return Err(Error::NotIdempotent);
    }
    let word = f.source();
    let n = word.len() as i32;
    let nvars = f.nvars();
    let vars: Vec<usize> = (0..nvars).collect();

    let mut hilbert: HashMap<i32, i64> = HashMap::new();
    for k in -n..=n {
        // basis of the slice: (mask, monomial) with 2 deg(m) + 2|mask| - n = k
        let mut basis = Vec::new();
        for mask in 0..1u32 << word.len() {
            let rest = k + n - 2 * mask.count_ones() as i32;
            if rest < 0 || rest % 2 != 0 {
                continue;
            }
            for m in Monomial::all_of_degree(&vars, (rest / 2) as u32) {
                basis.push((mask, m));
            }
        }
        let index: HashMap<(u32, Monomial), usize> =
            basis.iter().enumerate().map(|(i, &b)| (b, i)).collect();
        let rows: Vec<Vec<Q>> = basis
            .iter()
            .map(|&(mask, m)| {
                let img = f.image(mask).left_mult(&Poly::term(m, Q::from_integer(1)));
                let mut row = vec![Q::zero(); basis.len()];
                for (mask2, c) in img.comps() {
                    for &(m2, q) in c.terms() {
                        row[index[&(mask2, m2)]] += q;
                    }
                }
                row
            })
            .collect();
        hilbert.insert(k, linalg::rank(&rows) as i64);
    }

    // multiply by (1 - t^2)^N and keep degrees -n..=n
    let mut terms = Vec::new();
    for d in -n..=n {
        let mut g = 0i64;
        for j in 0..=nvars as i32 {
            let h = hilbert.get(&(d - 2 * j)).copied().unwrap_or(0);
            let sign = if j % 2 == 0 { 1 } else { -1 };
            g += sign * binomial(nvars as u64, j as u64) * h;
        }
        if g < 0 {
            return Err(Error::Internal(format!(
                "negative generator count in degree {d}"
            )));
        }
        terms.push((-d, g));
    }
    Ok(LaurentPoly::from_terms(terms))
}

/// `e = -m_r^a o j_s^a o j_s o m_r` on `B_s B_r B_s`.
pub fn srs_idempotent(nvars: usize, s: Gen, r: Gen) -> Result<BSMorphism> {
    let srs = Word::new(vec![s, r, s]);
    let ss = Word::new(vec![s, s]);
    let bs = Word::new(vec![s]);
    let m_r = BSMorphism::generator(GenKind::Dot, r, 1, &srs, nvars)?;
    let j_s = BSMorphism::generator(GenKind::Trivalent, s, 0, &ss, nvars)?;
    let j_s_adj = BSMorphism::generator(GenKind::TrivalentAdjoint, s, 0, &bs, nvars)?;
    let m_r_adj = BSMorphism::generator(GenKind::DotAdjoint, r, 1, &ss, nvars)?;
    let e = m_r_adj.compose(&j_s_adj)?.compose(&j_s)?.compose(&m_r)?;
    Ok(e.scale(-Q::from_integer(1)))
}

/// The splitting `B_s B_r B_s = im(1 - e) + im(e)`.
#[derive(Clone, Debug)]
pub struct SrsDecomposition {
    pub word: Word,
    pub e: BSMorphism,
    pub complement: BSMorphism,
    pub e_idempotent: bool,
    pub total_rank: LaurentPoly,
    pub image_e: LaurentPoly,
    pub image_complement: LaurentPoly,
    /// `(1 - e)(1 (x) x_s (x) 1 (x) 1)` where `x_s` is the first variable moved by `s`.
    pub complement_on_generator: BSElement,
}

impl SrsDecomposition {
    pub fn ranks_add_up(&self) -> bool {
        &self.image_e + &self.image_complement == self.total_rank
    }

    pub fn to_json(&self) -> Value {
        json!({
            "word": self.word.to_string(),
            "e_idempotent": self.e_idempotent,
            "graded_rank": self.total_rank.to_string(),
            "image_e": self.image_e.to_string(),
            "image_one_minus_e": self.image_complement.to_string(),
            "ranks_add_up": self.ranks_add_up(),
            "one_minus_e_on_generator": self.complement_on_generator.to_json(),
        })
    }
}

pub fn decompose_srs(nvars: usize, s: Gen, r: Gen) -> Result<SrsDecomposition> {
    let e = srs_idempotent(nvars, s, r)?;
    let word = e.source().clone();
    let complement = BSMorphism::identity(&word, nvars).sub(&e)?;
    let gen = BSElement::from_slots(
        &word,
        nvars,
        &[Poly::one(), Poly::var(s), Poly::one(), Poly::one()],
    )?;
    Ok(SrsDecomposition {
        e_idempotent: e.is_idempotent(),
        total_rank: graded_rank(&word),
        image_e: image_graded_rank(&e)?,
        image_complement: image_graded_rank(&complement)?,
        complement_on_generator: complement.apply(&gen)?,
        word,
        e,
        complement,
    })
}
