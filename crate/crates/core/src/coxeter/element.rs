use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use super::{CoxeterSpec, Gen, Side, Word};

/// A group element in canonical form.
///
/// The representation depends on the engine:
/// - symmetric groups store the permutation in one-line notation,
/// - finite dihedral groups store the first letter of the alternating word
///   together with the length (the longest element always uses first letter 0),
/// - universal groups and the infinite dihedral group store the unique
///   reduced word.
///
/// Two elements compare equal exactly when they are the same group element.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Element {
    spec: CoxeterSpec,
    len: u32,
    repr: Repr,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Repr {
    Perm(SmallVec<[u8; 8]>),
    Alternating { first: u8 },
    Reduced(SmallVec<[u8; 16]>),
}

impl Element {
    pub(crate) fn identity(spec: CoxeterSpec) -> Self {
        let repr = match spec {
            CoxeterSpec::Symmetric(n) => Repr::Perm((0..n as u8).collect()),
            CoxeterSpec::Dihedral(Some(_)) => Repr::Alternating { first: 0 },
            CoxeterSpec::Dihedral(None) | CoxeterSpec::Universal(_) => {
                Repr::Reduced(SmallVec::new())
            }
        };
        Element { spec, len: 0, repr }
    }

    pub fn spec(&self) -> CoxeterSpec {
        self.spec
    }

    pub fn length(&self) -> usize {
        self.len as usize
    }

    pub fn is_identity(&self) -> bool {
        self.len == 0
    }

    /// One-line notation (0-based) for elements of a symmetric group.
    pub fn permutation(&self) -> Option<Vec<usize>> {
        match &self.repr {
            Repr::Perm(p) => Some(p.iter().map(|&v| v as usize).collect()),
            _ => None,
        }
    }

    /// Whether `s` is a descent on the given side. `s` must be a valid generator.
    pub(crate) fn has_descent(&self, s: Gen, side: Side) -> bool {
        match &self.repr {
            Repr::Perm(p) => match side {
                Side::Right => p[s] > p[s + 1],
                Side::Left => {
                    let pos = |v: usize| p.iter().position(|&x| x as usize == v).unwrap();
                    pos(s) > pos(s + 1)
                }
            },
            Repr::Alternating { first } => {
                let m = self.dihedral_order();
                if self.len == 0 {
                    false
                } else if self.len == m {
                    true
                } else {
                    let f = *first as Gen;
                    match side {
                        Side::Left => s == f,
                        Side::Right => s == self.last_alternating(f),
                    }
                }
            }
            Repr::Reduced(w) => match side {
                Side::Left => w.first().is_some_and(|&a| a as Gen == s),
                Side::Right => w.last().is_some_and(|&a| a as Gen == s),
            },
        }
    }

    fn dihedral_order(&self) -> u32 {
        match self.spec {
            CoxeterSpec::Dihedral(Some(m)) => m,
            _ => unreachable!("alternating representation outside a finite dihedral group"),
        }
    }

    fn last_alternating(&self, first: Gen) -> Gen {
        if self.len % 2 == 1 {
            first
        } else {
            1 - first
        }
    }

    /// Multiply by the generator `s` on the given side. `s` must be valid.
    pub(crate) fn mul(&self, s: Gen, side: Side) -> Element {
        let mut out = self.clone();
        match &mut out.repr {
            Repr::Perm(p) => {
                let up = match side {
                    Side::Right => {
                        let up = p[s] < p[s + 1];
                        p.swap(s, s + 1);
                        up
                    }
                    Side::Left => {
                        let a = p.iter().position(|&x| x as usize == s).unwrap();
                        let b = p.iter().position(|&x| x as usize == s + 1).unwrap();
                        p.swap(a, b);
                        a < b
                    }
                };
                if up {
                    out.len += 1;
                } else {
                    out.len -= 1;
                }
            }
            Repr::Alternating { first } => {
                let m = self.dihedral_order();
                let f = *first as Gen;
                let (new_first, new_len) = if self.len == 0 {
                    (s, 1)
                } else if self.len == m {
                    // w0 has a reduced word ending (or starting) with any generator
                    match side {
                        Side::Right => (if m % 2 == 1 { s } else { 1 - s }, m - 1),
                        Side::Left => (1 - s, m - 1),
                    }
                } else {
                    match side {
                        Side::Right if self.last_alternating(f) == s => (f, self.len - 1),
                        Side::Right => (f, self.len + 1),
                        Side::Left if f == s => (1 - f, self.len - 1),
                        Side::Left => (s, self.len + 1),
                    }
                };
                out.len = new_len;
                *first = if new_len == 0 || new_len == m {
                    0
                } else {
                    new_first as u8
                };
            }
            Repr::Reduced(w) => {
                let g = s as u8;
                match side {
                    Side::Right => {
                        if w.last() == Some(&g) {
                            w.pop();
                        } else {
                            w.push(g);
                        }
                    }
                    Side::Left => {
                        if w.first() == Some(&g) {
                            w.remove(0);
                        } else {
                            w.insert(0, g);
                        }
                    }
                }
                out.len = w.len() as u32;
            }
        }
        out
    }

    /// Lowest-index descent on the given side, if any.
    pub(crate) fn first_descent(&self, side: Side) -> Option<Gen> {
        (0..self.spec.rank()).find(|&s| self.has_descent(s, side))
    }

    pub fn descents(&self, side: Side) -> Vec<Gen> {
        (0..self.spec.rank())
            .filter(|&s| self.has_descent(s, side))
            .collect()
    }

    /// The canonical reduced word: greedily strip the lowest-index left
    /// descent. For symmetric groups this is the lexicographically smallest
    /// reduced word; for the other engines it is the stored word.
    pub fn canonical_word(&self) -> Word {
        match &self.repr {
            Repr::Reduced(w) => Word(w.iter().map(|&a| a as Gen).collect()),
            Repr::Alternating { first } => {
                let f = *first as Gen;
                Word((0..self.len as usize).map(|i| (f + i) % 2).collect())
            }
            Repr::Perm(_) => {
                let mut letters = Vec::with_capacity(self.len as usize);
                let mut x = self.clone();
                while let Some(s) = x.first_descent(Side::Left) {
                    letters.push(s);
                    x = x.mul(s, Side::Left);
                }
                Word(letters)
            }
        }
    }
}

impl PartialOrd for Element {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total order by length, then by representation. Used only for
/// deterministic iteration; it has nothing to do with the Bruhat order.
impl Ord for Element {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len
            .cmp(&other.len)
            .then_with(|| self.repr.cmp(&other.repr))
            .then_with(|| self.spec.cmp(&other.spec))
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.canonical_word())
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.spec, self.canonical_word())
    }
}
