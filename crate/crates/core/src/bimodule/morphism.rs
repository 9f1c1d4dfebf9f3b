use std::fmt;

use serde_json::{json, Value};

use crate::coxeter::{Gen, Word};
use crate::error::{Error, Result};
use crate::poly::{Poly, Q};

use super::BSElement;

/// A left-linear map between Bott-Samelson bimodules, stored as the images of
/// the source basis elements (indexed by mask).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BSMorphism {
    source: Word,
    target: Word,
    nvars: usize,
    degree: i32,
    images: Vec<BSElement>,
}

/// The four generating morphisms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GenKind {
    /// `m_s: B_s -> R`, `p (x) q -> pq`; degree +1.
    Dot,
    /// `m_s^a: R -> B_s`, `1 -> alpha (x) 1 + 1 (x) alpha`; degree +1.
    DotAdjoint,
    /// `j_s: B_s B_s -> B_s`, `p (x) q (x) h -> p d(q) (x) h`; degree -1.
    Trivalent,
    /// `j_s^a: B_s -> B_s B_s`, `p (x) q -> p (x) 1 (x) q`; degree -1.
    TrivalentAdjoint,
}

impl fmt::Display for GenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GenKind::Dot => "m",
            GenKind::DotAdjoint => "m^a",
            GenKind::Trivalent => "j",
            GenKind::TrivalentAdjoint => "j^a",
        })
    }
}

impl BSMorphism {
    /// Builds a morphism from the images of the source basis elements.
    pub fn from_images(
        source: &Word,
        target: &Word,
        nvars: usize,
        degree: i32,
        images: Vec<BSElement>,
    ) -> Result<Self> {
        if images.len() != 1 << source.len() {
            return Err(Error::LengthMismatch(images.len(), 1 << source.len()));
        }
        if let Some(bad) = images
            .iter()
            .find(|im| im.word() != target || im.nvars() != nvars)
        {
            return Err(Error::Incompatible(format!(
                "image in B[{}] for a map into B[{target}]",
                bad.word()
            )));
        }
        Ok(BSMorphism {
            source: source.clone(),
            target: target.clone(),
            nvars,
            degree,
            images,
        })
    }

    pub fn identity(word: &Word, nvars: usize) -> Self {
        BSMorphism {
            source: word.clone(),
            target: word.clone(),
            nvars,
            degree: 0,
            images: (0..1u32 << word.len())
                .map(|m| BSElement::basis(word, nvars, m))
                .collect(),
        }
    }

    pub fn zero(source: &Word, target: &Word, nvars: usize, degree: i32) -> Self {
        BSMorphism {
            source: source.clone(),
            target: target.clone(),
            nvars,
            degree,
            images: vec![BSElement::zero(target, nvars); 1 << source.len()],
        }
    }

    pub fn source(&self) -> &Word {
        &self.source
    }

    pub fn target(&self) -> &Word {
        &self.target
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    /// Image of the basis element with the given mask.
    pub fn image(&self, mask: u32) -> &BSElement {
        &self.images[mask as usize]
    }

    pub fn images(&self) -> &[BSElement] {
        &self.images
    }

    /// A generating morphism acting at `position` of `source`, with identities
    /// on both sides. For `DotAdjoint` the letter `s` is inserted at
    /// `position`; the other kinds require the letters there to be `s`.
    pub fn generator(
        kind: GenKind,
        s: Gen,
        position: usize,
        source: &Word,
        nvars: usize,
    ) -> Result<Self> {
        if s + 1 >= nvars {
            return Err(Error::LetterMismatch(format!(
                "s{s} is not a generator for {nvars} variables"
            )));
        }
        let width = match kind {
            GenKind::DotAdjoint => 0,
            GenKind::Dot | GenKind::TrivalentAdjoint => 1,
            GenKind::Trivalent => 2,
        };
        let letters = source.letters();
        if position + width > letters.len()
            || letters[position..position + width].iter().any(|&t| t != s)
        {
            return Err(Error::LetterMismatch(format!(
                "{kind}_s{s} needs {width} letter(s) s{s} at position {position} of {source}"
            )));
        }
        let local = Self::local_generator(kind, s, nvars);
        let left = Word::from(&letters[..position]);
        let right = Word::from(&letters[position + width..]);
        local.tensor_with_identity(&left, &right)
    }

    fn local_generator(kind: GenKind, s: Gen, nvars: usize) -> Self {
        let one = Word::empty();
        let bs = Word::new(vec![s]);
        let bss = Word::new(vec![s, s]);
        let basis = |w: &Word, m| BSElement::basis(w, nvars, m);
        let (source, target, degree, images) = match kind {
            GenKind::Dot => (
                bs.clone(),
                one.clone(),
                1,
                vec![basis(&one, 0), basis(&one, 0).left_mult(&Poly::alpha(s))],
            ),
            GenKind::DotAdjoint => {
                let mut img = basis(&bs, 0).left_mult(&Poly::alpha(s));
                img.add_assign(&basis(&bs, 1));
                (one.clone(), bs.clone(), 1, vec![img])
            }
            GenKind::Trivalent => (
                bss.clone(),
                bs.clone(),
                -1,
                vec![
                    BSElement::zero(&bs, nvars),
                    basis(&bs, 0),
                    BSElement::zero(&bs, nvars),
                    basis(&bs, 1),
                ],
            ),
            GenKind::TrivalentAdjoint => (
                bs.clone(),
                bss.clone(),
                -1,
                vec![basis(&bss, 0), basis(&bss, 2)],
            ),
        };
        BSMorphism {
            source,
            target,
            nvars,
            degree,
            images,
        }
    }

    /// Applies the map to an element, using left linearity.
    pub fn apply(&self, m: &BSElement) -> Result<BSElement> {
        if m.word() != &self.source || m.nvars() != self.nvars {
            return Err(Error::Incompatible(format!(
                "map from B[{}] applied to an element of B[{}]",
                self.source,
                m.word()
            )));
        }
        Ok(self.apply_unchecked(m))
    }

    fn apply_unchecked(&self, m: &BSElement) -> BSElement {
        let mut out = BSElement::zero(&self.target, self.nvars);
        for (mask, c) in m.comps() {
            let img = &self.images[mask as usize];
            if c == &Poly::one() {
                out.add_assign(img);
            } else {
                out.add_assign(&img.left_mult(c));
            }
        }
        out
    }

    /// `self` after `first`.
    pub fn compose(&self, first: &BSMorphism) -> Result<BSMorphism> {
        if first.target != self.source || first.nvars != self.nvars {
            return Err(Error::Incompatible(format!(
                "cannot compose B[{}] -> B[{}] after B[{}] -> B[{}]",
                self.source, self.target, first.source, first.target
            )));
        }
        Ok(BSMorphism {
            source: first.source.clone(),
            target: self.target.clone(),
            nvars: self.nvars,
            degree: self.degree + first.degree,
            images: first
                .images
                .iter()
                .map(|im| self.apply_unchecked(im))
                .collect(),
        })
    }

    fn check_parallel(&self, other: &BSMorphism) -> Result<()> {
        if self.source == other.source && self.target == other.target && self.nvars == other.nvars {
            Ok(())
        } else {
            Err(Error::Incompatible(format!(
                "maps B[{}] -> B[{}] and B[{}] -> B[{}] are not parallel",
                self.source, self.target, other.source, other.target
            )))
        }
    }

    pub fn add(&self, other: &BSMorphism) -> Result<BSMorphism> {
        self.check_parallel(other)?;
        let mut out = self.clone();
        for (a, b) in out.images.iter_mut().zip(&other.images) {
            a.add_assign(b);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &BSMorphism) -> Result<BSMorphism> {
        self.add(&other.scale(-Q::from_integer(1)))
    }

    pub fn scale(&self, c: Q) -> BSMorphism {
        BSMorphism {
            images: self.images.iter().map(|im| im.scale(c)).collect(),
            ..self.clone()
        }
    }

    pub fn is_idempotent(&self) -> bool {
        self.source == self.target && self.compose(self).is_ok_and(|sq| sq == *self)
    }

    /// `id_left (x) self (x) id_right`.
    ///
    /// A basis element splits as `b_l (x) b_m (x) b_r`; its image is
    /// `(b_l . c) (x) b_m' (x) b_r` summed over the terms `c b_m'` of
    /// `self(b_m)`, where `b_l . c` is renormalized in `B_left`.
    pub fn tensor_with_identity(&self, left: &Word, right: &Word) -> Result<BSMorphism> {
        let (p, m, mt, r) = (
            left.len(),
            self.source.len(),
            self.target.len(),
            right.len(),
        );
        let join =
            |mid: &Word| Word::new(left.iter().chain(mid.iter()).chain(right.iter()).collect());
        let (source, target) = (join(&self.source), join(&self.target));
        if source.len() >= 32 || target.len() >= 32 {
            return Err(Error::Incompatible(
                "words are limited to 31 letters".into(),
            ));
        }
        let mut images = vec![BSElement::zero(&target, self.nvars); 1 << source.len()];
        for gamma in 0..1u32 << p {
            let b_left = BSElement::basis(left, self.nvars, gamma);
            for delta in 0..1u32 << m {
                // image of b_gamma (x) b_delta, without the right factor
                let mut parts: Vec<(u32, Poly)> = Vec::new();
                for (delta2, c) in self.images[delta as usize].comps() {
                    for (gamma2, a) in b_left.right_mult(c).comps() {
                        parts.push((gamma2 | delta2 << p, a.clone()));
                    }
                }
                for rho in 0..1u32 << r {
                    let src = gamma | delta << p | rho << (p + m);
                    let img = &mut images[src as usize];
                    for (mask, a) in &parts {
                        img.add_comp(mask | rho << (p + mt), a);
                    }
                }
            }
        }
        Ok(BSMorphism {
            source,
            target,
            nvars: self.nvars,
            degree: self.degree,
            images,
        })
    }

    /// Whether `f(b . p) = f(b) . p` for every basis element `b`.
    pub fn commutes_with_right_mult(&self, p: &Poly) -> bool {
        (0..1u32 << self.source.len()).all(|mask| {
            let b = BSElement::basis(&self.source, self.nvars, mask);
            self.apply_unchecked(&b.right_mult(p)) == self.images[mask as usize].right_mult(p)
        })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "source": self.source.to_string(),
            "target": self.target.to_string(),
            "degree": self.degree,
            "images": self.images.iter().map(|im| im.to_json()["comps"].clone()).collect::<Vec<_>>(),
        })
    }
}

/// The unit `R -> B_s B_s`.
fn unit(s: Gen, nvars: usize) -> Result<BSMorphism> {
    let one = Word::empty();
    let bs = Word::new(vec![s]);
    BSMorphism::generator(GenKind::TrivalentAdjoint, s, 0, &bs, nvars)?.compose(
        &BSMorphism::generator(GenKind::DotAdjoint, s, 0, &one, nvars)?,
    )
}

/// The counit `B_s B_s -> R`.
fn counit(s: Gen, nvars: usize) -> Result<BSMorphism> {
    let bss = Word::new(vec![s, s]);
    let bs = Word::new(vec![s]);
    BSMorphism::generator(GenKind::Dot, s, 0, &bs, nvars)?.compose(&BSMorphism::generator(
        GenKind::Trivalent,
        s,
        0,
        &bss,
        nvars,
    )?)
}

/// `Hom(B_s M, N) -> Hom(M, B_s N)`: `f -> (id (x) f) o (unit (x) id_M)`.
pub fn adjunction_right(s: Gen, f: &BSMorphism) -> Result<BSMorphism> {
    let src = f.source().letters();
    if src.first() != Some(&s) {
        return Err(Error::LetterMismatch(format!(
            "source B[{}] does not start with s{s}",
            f.source()
        )));
    }
    let m = Word::from(&src[1..]);
    let bs = Word::new(vec![s]);
    let lifted = f.tensor_with_identity(&bs, &Word::empty())?;
    let unit_m = unit(s, f.nvars())?.tensor_with_identity(&Word::empty(), &m)?;
    lifted.compose(&unit_m)
}

/// `Hom(M, B_s N) -> Hom(B_s M, N)`: `g -> (counit (x) id_N) o (id (x) g)`.
pub fn adjunction_left(s: Gen, g: &BSMorphism) -> Result<BSMorphism> {
    let tgt = g.target().letters();
    if tgt.first() != Some(&s) {
        return Err(Error::LetterMismatch(format!(
            "target B[{}] does not start with s{s}",
            g.target()
        )));
    }
    let n = Word::from(&tgt[1..]);
    let bs = Word::new(vec![s]);
    let lifted = g.tensor_with_identity(&bs, &Word::empty())?;
    let counit_n = counit(s, g.nvars())?.tensor_with_identity(&Word::empty(), &n)?;
    counit_n.compose(&lifted)
}
