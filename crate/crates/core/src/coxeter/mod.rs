//! Coxeter systems with exact group engines.
//!
//! Three engines are provided: symmetric groups `S_n` (type `A_{n-1}`),
//! dihedral groups `I_2(m)` with `2 <= m <= inf`, and universal Coxeter groups
//! `U_k` where every pair of generators has `m = inf`. Generators are indexed
//! `0..rank`.

mod element;
mod word;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

pub use element::Element;
pub use word::Word;

use crate::error::{Error, Result};

/// Index of a simple reflection.
pub type Gen = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// Which Coxeter system to build.
///
/// `Dihedral(None)` is the infinite dihedral group; internally it uses the
/// same engine as `Universal(2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoxeterSpec {
    Symmetric(u32),
    Dihedral(Option<u32>),
    Universal(u32),
}

impl CoxeterSpec {
    pub fn validate(self) -> Result<Self> {
        match self {
            CoxeterSpec::Symmetric(n) if !(2..=64).contains(&n) => Err(Error::InvalidSpec(
                format!("symmetric group needs 2 <= n <= 64, got {n}"),
            )),
            CoxeterSpec::Dihedral(Some(m)) if m < 2 => Err(Error::InvalidSpec(format!(
                "dihedral group needs m >= 2, got {m}"
            ))),
            CoxeterSpec::Universal(k) if !(1..=255).contains(&k) => Err(Error::InvalidSpec(
                format!("universal group needs 1 <= k <= 255, got {k}"),
            )),
            _ => Ok(self),
        }
    }

    pub fn rank(self) -> usize {
        match self {
            CoxeterSpec::Symmetric(n) => n as usize - 1,
            CoxeterSpec::Dihedral(_) => 2,
            CoxeterSpec::Universal(k) => k as usize,
        }
    }

    /// Coxeter matrix entry `m(s, r)`; `None` stands for infinity.
    pub fn coxeter_entry(self, s: Gen, r: Gen) -> Option<u32> {
        if s == r {
            return Some(1);
        }
        match self {
            CoxeterSpec::Symmetric(_) => Some(if s.abs_diff(r) == 1 { 3 } else { 2 }),
            CoxeterSpec::Dihedral(m) => m,
            CoxeterSpec::Universal(_) => None,
        }
    }

    /// Group order, `None` when infinite.
    pub fn order(self) -> Option<u64> {
        match self {
            CoxeterSpec::Symmetric(n) => Some((1..=n as u64).product()),
            CoxeterSpec::Dihedral(Some(m)) => Some(2 * m as u64),
            CoxeterSpec::Dihedral(None) => None,
            CoxeterSpec::Universal(1) => Some(2),
            CoxeterSpec::Universal(_) => None,
        }
    }

    pub fn is_finite(self) -> bool {
        self.order().is_some()
    }

    pub fn is_symmetric(self) -> bool {
        matches!(self, CoxeterSpec::Symmetric(_))
    }
}

impl fmt::Display for CoxeterSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoxeterSpec::Symmetric(n) => write!(f, "A{}", n - 1),
            CoxeterSpec::Dihedral(Some(m)) => write!(f, "I2({m})"),
            CoxeterSpec::Dihedral(None) => write!(f, "I2(inf)"),
            CoxeterSpec::Universal(k) => write!(f, "U{k}"),
        }
    }
}

/// Parses `A<n>` (the symmetric group on `n+1` letters), `I2(<m>|inf)` and `U<k>`.
impl FromStr for CoxeterSpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let t = text.trim();
        let bad = || {
            Error::Parse(format!(
                "unknown system `{t}` (expected A<n>, I2(<m>|inf) or U<k>)"
            ))
        };
        let spec = if let Some(inner) = t.strip_prefix("I2(").and_then(|r| r.strip_suffix(')')) {
            if inner == "inf" {
                CoxeterSpec::Dihedral(None)
            } else {
                CoxeterSpec::Dihedral(Some(inner.parse().map_err(|_| bad())?))
            }
        } else if let Some(n) = t.strip_prefix('A') {
            let n: u32 = n.parse().map_err(|_| bad())?;
            CoxeterSpec::Symmetric(n + 1)
        } else if let Some(k) = t.strip_prefix('U') {
            CoxeterSpec::Universal(k.parse().map_err(|_| bad())?)
        } else {
            return Err(bad());
        };
        spec.validate()
    }
}

/// A single braid relation applied at a position of a word: the alternating
/// segment `first second first ...` of length `order` starting at `position`
/// is replaced by `second first second ...`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BraidMove {
    pub position: usize,
    pub first: Gen,
    pub second: Gen,
    pub order: usize,
}

impl BraidMove {
    pub fn apply(&self, word: &Word) -> Word {
        let mut out = word.clone();
        for k in 0..self.order {
            out.0[self.position + k] = if k % 2 == 0 { self.second } else { self.first };
        }
        out
    }

    /// The move that undoes this one.
    pub fn inverse(&self) -> BraidMove {
        BraidMove {
            first: self.second,
            second: self.first,
            ..*self
        }
    }
}

impl fmt::Display for BraidMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "@{}:s{}s{}(m={})",
            self.position, self.first, self.second, self.order
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CoxeterSystem {
    spec: CoxeterSpec,
}

impl CoxeterSystem {
    pub fn new(spec: CoxeterSpec) -> Result<Self> {
        Ok(CoxeterSystem {
            spec: spec.validate()?,
        })
    }

    pub fn spec(&self) -> CoxeterSpec {
        self.spec
    }

    pub fn rank(&self) -> usize {
        self.spec.rank()
    }

    pub fn generators(&self) -> std::ops::Range<Gen> {
        0..self.rank()
    }

    pub fn order(&self) -> Option<u64> {
        self.spec.order()
    }

    pub fn is_finite(&self) -> bool {
        self.spec.is_finite()
    }

    pub fn coxeter_matrix(&self) -> Vec<Vec<Option<u32>>> {
        let r = self.rank();
        (0..r)
            .map(|s| (0..r).map(|t| self.spec.coxeter_entry(s, t)).collect())
            .collect()
    }

    pub fn identity(&self) -> Element {
        Element::identity(self.spec)
    }

    pub(crate) fn check_gen(&self, s: Gen) -> Result<()> {
        if s < self.rank() {
            Ok(())
        } else {
            Err(Error::ForeignGenerator {
                gen: s,
                system: self.spec,
            })
        }
    }

    pub(crate) fn check_element(&self, x: &Element) -> Result<()> {
        if x.spec() == self.spec {
            Ok(())
        } else {
            Err(Error::SystemMismatch(self.spec, x.spec()))
        }
    }

    pub(crate) fn check_word(&self, w: &Word) -> Result<()> {
        w.iter().try_for_each(|s| self.check_gen(s))
    }

    pub fn generator(&self, s: Gen) -> Result<Element> {
        self.check_gen(s)?;
        Ok(self.identity().mul(s, Side::Right))
    }

    pub fn mult_gen(&self, x: &Element, s: Gen, side: Side) -> Result<Element> {
        self.check_element(x)?;
        self.check_gen(s)?;
        Ok(x.mul(s, side))
    }

    pub fn evaluate(&self, w: &Word) -> Result<Element> {
        self.check_word(w)?;
        Ok(w.iter().fold(self.identity(), |x, s| x.mul(s, Side::Right)))
    }

    pub fn is_reduced(&self, w: &Word) -> Result<bool> {
        Ok(self.evaluate(w)?.length() == w.len())
    }

    pub fn length(&self, x: &Element) -> usize {
        x.length()
    }

    pub fn canonical_word(&self, x: &Element) -> Word {
        x.canonical_word()
    }

    pub fn descents(&self, x: &Element, side: Side) -> Result<Vec<Gen>> {
        self.check_element(x)?;
        Ok(x.descents(side))
    }

    /// Bruhat order by the lifting property: with `s` a left descent of `y`,
    /// `x <= y` iff `sx <= sy` (when `sx < x`) or `x <= sy` (when `sx > x`).
    pub fn bruhat_leq(&self, x: &Element, y: &Element) -> Result<bool> {
        self.check_element(x)?;
        self.check_element(y)?;
        Ok(bruhat_leq(x, y))
    }

    /// All elements of length at most `bound` (all elements when `bound` is
    /// `None`, which is only allowed for finite groups), in nondecreasing
    /// length order.
    pub fn elements_up_to(&self, bound: Option<usize>) -> Result<ElementsUpTo> {
        if bound.is_none() && !self.is_finite() {
            return Err(Error::Unbounded(self.spec));
        }
        Ok(ElementsUpTo {
            rank: self.rank(),
            bound,
            level: vec![self.identity()],
            level_len: 0,
            next: 0,
        })
    }

    /// The longest element, for finite groups.
    pub fn longest_element(&self) -> Option<Element> {
        self.elements_up_to(None).ok()?.last()
    }

    /// Braid moves applicable to `w`, one per position at most.
    pub fn braid_moves(&self, w: &Word) -> Vec<BraidMove> {
        let letters = w.letters();
        let mut moves = Vec::new();
        for p in 0..letters.len().saturating_sub(1) {
            let (a, b) = (letters[p], letters[p + 1]);
            if a == b {
                continue;
            }
            let Some(m) = self.spec.coxeter_entry(a, b) else {
                continue;
            };
            let m = m as usize;
            if p + m > letters.len() {
                continue;
            }
            let alternating = (0..m).all(|k| letters[p + k] == if k % 2 == 0 { a } else { b });
            if alternating {
                moves.push(BraidMove {
                    position: p,
                    first: a,
                    second: b,
                    order: m,
                });
            }
        }
        moves
    }

    /// Every reduced word of `x`, in the order they are discovered by the
    /// braid-move closure from the canonical word.
    pub fn reduced_expressions(&self, x: &Element) -> Result<Vec<Word>> {
        self.check_element(x)?;
        Ok(crate::rex::build_rex(self, x)?.nodes)
    }
}

pub(crate) fn bruhat_leq(x: &Element, y: &Element) -> bool {
    let mut x = x.clone();
    let mut y = y.clone();
    loop {
        if x.length() > y.length() {
            return false;
        }
        if x.length() == y.length() {
            return x == y;
        }
        if x.is_identity() {
            return true;
        }
        let s = y
            .first_descent(Side::Left)
            .expect("non-identity has a descent");
        y = y.mul(s, Side::Left);
        if x.has_descent(s, Side::Left) {
            x = x.mul(s, Side::Left);
        }
    }
}

/// Level-by-level enumeration of a Coxeter group.
pub struct ElementsUpTo {
    rank: usize,
    bound: Option<usize>,
    level: Vec<Element>,
    level_len: usize,
    next: usize,
}

impl Iterator for ElementsUpTo {
    type Item = Element;

    fn next(&mut self) -> Option<Element> {
        if self.next == self.level.len() {
            if self.bound.is_some_and(|b| self.level_len >= b) {
                return None;
            }
            let next_level: BTreeSet<Element> = self
                .level
                .iter()
                .flat_map(|x| (0..self.rank).map(move |s| (x, s)))
                .filter(|(x, s)| !x.has_descent(*s, Side::Right))
                .map(|(x, s)| x.mul(s, Side::Right))
                .collect();
            if next_level.is_empty() {
                return None;
            }
            self.level = next_level.into_iter().collect();
            self.level_len += 1;
            self.next = 0;
        }
        let x = self.level[self.next].clone();
        self.next += 1;
        Some(x)
    }
}
