//! Light leaves: the subexpressions of a word, walked through the binary tree
//! that keeps or drops each letter.
//!
//! At step `k` with running element `t` and letter `s`:
//! - ascent, keep (`U1`): `t -> ts`, degree 0;
//! - ascent, drop (`U0`): a dot, degree +1;
//! - descent, keep (`D1`): rewrite the running word to end in `s`, merge with
//!   a trivalent vertex, `t` unchanged, degree -1;
//! - descent, drop (`D0`): rewrite, merge, then a dot; `t -> ts`, degree 0.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde_json::{json, Value};

use crate::coxeter::{BraidMove, CoxeterSystem, Element, Side, Word};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::rex::{build_rex, RexGraph};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subexpression {
    pub word: Word,
    /// `true` keeps the letter, `false` drops it.
    pub bits: Vec<bool>,
}

impl Subexpression {
    pub fn new(word: Word, bits: Vec<bool>) -> Result<Self> {
        if word.len() != bits.len() {
            return Err(Error::LengthMismatch(bits.len(), word.len()));
        }
        Ok(Subexpression { word, bits })
    }

    /// Bits read as a binary counter, most significant bit first.
    pub fn from_index(word: Word, index: u64) -> Self {
        let n = word.len();
        let bits = (0..n).map(|k| index >> (n - 1 - k) & 1 == 1).collect();
        Subexpression { word, bits }
    }

    pub fn bit_string(&self) -> String {
        self.bits
            .iter()
            .map(|&b| if b { '1' } else { '0' })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Label {
    U0,
    U1,
    D0,
    D1,
}

impl Label {
    pub fn degree(self) -> i32 {
        match self {
            Label::U0 => 1,
            Label::D1 => -1,
            Label::U1 | Label::D0 => 0,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Label::U0 => "U0",
            Label::U1 => "U1",
            Label::D0 => "D0",
            Label::D1 => "D1",
        };
        write!(f, "{s}")
    }
}

/// One elementary move of a leaf's morphism; `k` is the step index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RecipeStep {
    Dot(usize),
    Trivalent(usize),
    /// Braid moves rewriting the running word `from` into `to` before step `k`.
    PathMove {
        step: usize,
        from: Word,
        to: Word,
        moves: Vec<BraidMove>,
    },
    KeepId(usize),
}

impl fmt::Display for RecipeStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RecipeStep::Dot(k) => write!(f, "dot({k})"),
            RecipeStep::Trivalent(k) => write!(f, "trivalent({k})"),
            RecipeStep::KeepId(k) => write!(f, "id({k})"),
            RecipeStep::PathMove {
                step,
                from,
                to,
                moves,
            } => {
                write!(f, "path({step}: {from} -> {to} in {} moves)", moves.len())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LightLeaf {
    pub subexpr: Subexpression,
    pub labels: Vec<Label>,
    pub target: Element,
    pub degree: i32,
    pub recipe: Vec<RecipeStep>,
    /// Reduced word for the target carried by the leaf's top boundary.
    pub output: Word,
}

impl LightLeaf {
    pub fn to_json(&self) -> Value {
        json!({
            "bits": self.subexpr.bit_string(),
            "labels": self.labels.iter().map(|l| l.to_string()).collect::<Vec<_>>(),
            "target": self.target.canonical_word().to_string(),
            "degree": self.degree,
        })
    }
}

/// Rex graphs of the running elements, shared across leaves.
struct Rewriter<'a> {
    system: &'a CoxeterSystem,
    graphs: HashMap<Element, RexGraph>,
}

impl Rewriter<'_> {
    fn moves(&mut self, t: &Element, from: &Word, to: &Word) -> Result<Vec<BraidMove>> {
        if from == to {
            return Ok(Vec::new());
        }
        if !self.graphs.contains_key(t) {
            self.graphs.insert(t.clone(), build_rex(self.system, t)?);
        }
        let g = &self.graphs[t];
        match (g.index_of(from), g.index_of(to)) {
            (Some(i), Some(j)) => Ok(g.shortest_moves(i, j)),
            _ => Err(Error::Internal(format!(
                "{from} or {to} is not a reduced word for {t}"
            ))),
        }
    }

    fn walk(&mut self, sub: &Subexpression) -> Result<LightLeaf> {
        self.system.check_word(&sub.word)?;
        let mut t = self.system.identity();
        let mut output = Word::empty();
        let mut labels = Vec::with_capacity(sub.bits.len());
        let mut recipe = Vec::new();
        for (k, (s, &keep)) in sub.word.iter().zip(&sub.bits).enumerate() {
            let ts = t.mul(s, Side::Right);
            if ts.length() > t.length() {
                if keep {
                    labels.push(Label::U1);
                    recipe.push(RecipeStep::KeepId(k));
                    output.push(s);
                    t = ts;
                } else {
                    labels.push(Label::U0);
                    recipe.push(RecipeStep::Dot(k));
                }
                continue;
            }
            let mut ending = ts.canonical_word();
            ending.push(s);
            let moves = self.moves(&t, &output, &ending)?;
            recipe.push(RecipeStep::PathMove {
                step: k,
                from: output.clone(),
                to: ending.clone(),
                moves,
            });
            recipe.push(RecipeStep::Trivalent(k));
            if keep {
                labels.push(Label::D1);
                recipe.push(RecipeStep::KeepId(k));
                output = ending;
            } else {
                labels.push(Label::D0);
                recipe.push(RecipeStep::Dot(k));
                output = ts.canonical_word();
                t = ts;
            }
        }
        Ok(LightLeaf {
            subexpr: sub.clone(),
            degree: labels.iter().map(|l| l.degree()).sum(),
            labels,
            target: t,
            recipe,
            output,
        })
    }
}

pub fn evaluate_subexpression(
    system: &CoxeterSystem,
    word: &Word,
    bits: &[bool],
) -> Result<LightLeaf> {
    let sub = Subexpression::new(word.clone(), bits.to_vec())?;
    Rewriter {
        system,
        graphs: HashMap::new(),
    }
    .walk(&sub)
}

/// All `2^n` leaves, ordered by the bits as a binary counter.
pub fn enumerate_leaves(system: &CoxeterSystem, word: &Word) -> Result<Vec<LightLeaf>> {
    system.check_word(word)?;
    if word.len() >= 64 {
        return Err(Error::LengthMismatch(word.len(), 63));
    }
    let mut rw = Rewriter {
        system,
        graphs: HashMap::new(),
    };
    (0..1u64 << word.len())
        .map(|i| rw.walk(&Subexpression::from_index(word.clone(), i)))
        .collect()
}

/// `sum v^degree` over the leaves of each target, computed prefix by prefix.
pub fn leaf_polynomials(
    system: &CoxeterSystem,
    word: &Word,
) -> Result<BTreeMap<Element, LaurentPoly>> {
    system.check_word(word)?;
    let mut layer = BTreeMap::from([(system.identity(), LaurentPoly::one())]);
    for s in word.iter() {
        let mut next: BTreeMap<Element, LaurentPoly> = BTreeMap::new();
        for (t, p) in layer {
            let ts = t.mul(s, Side::Right);
            let (keep, drop) = if ts.length() > t.length() {
                ((ts, Label::U1), (t, Label::U0))
            } else {
                ((t, Label::D1), (ts, Label::D0))
            };
            for (target, label) in [keep, drop] {
                *next.entry(target).or_default() += &p.shift(label.degree());
            }
        }
        layer = next;
    }
    Ok(layer)
}

pub fn leaf_polynomial(system: &CoxeterSystem, word: &Word, z: &Element) -> Result<LaurentPoly> {
    system.check_element(z)?;
    Ok(leaf_polynomials(system, word)?
        .remove(z)
        .unwrap_or_default())
}

/// A light leaf of `lower`'s word followed by the adjoint of a light leaf of
/// `upper`'s word, joined through the braid moves `middle` between their
/// output words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleLeaf {
    pub upper: LightLeaf,
    pub lower: LightLeaf,
    pub middle: Vec<BraidMove>,
}

impl DoubleLeaf {
    pub fn degree(&self) -> i32 {
        self.upper.degree + self.lower.degree
    }
}

#[derive(Clone, Debug)]
pub struct DoubleLeaves {
    pub pairs: Vec<DoubleLeaf>,
    /// `sum_z LP(word1, z) LP(word2, z)`.
    pub count: LaurentPoly,
}

/// Pairs of leaves from `word1` (upper) and `word2` (lower) with equal targets.
pub fn double_leaves(system: &CoxeterSystem, word1: &Word, word2: &Word) -> Result<DoubleLeaves> {
    let uppers = enumerate_leaves(system, word1)?;
    let lowers = enumerate_leaves(system, word2)?;
    let mut rw = Rewriter {
        system,
        graphs: HashMap::new(),
    };
    let mut pairs = Vec::new();
    let mut count = LaurentPoly::zero();
    for lower in &lowers {
        for upper in uppers.iter().filter(|u| u.target == lower.target) {
            let middle = rw.moves(&lower.target, &lower.output, &upper.output)?;
            count += &LaurentPoly::monomial(1, upper.degree + lower.degree);
            pairs.push(DoubleLeaf {
                upper: upper.clone(),
                lower: lower.clone(),
                middle,
            });
        }
    }
    Ok(DoubleLeaves { pairs, count })
}

/// The graded count of double leaves without building them.
pub fn double_leaf_count(
    system: &CoxeterSystem,
    word1: &Word,
    word2: &Word,
) -> Result<LaurentPoly> {
    let a = leaf_polynomials(system, word1)?;
    let b = leaf_polynomials(system, word2)?;
    Ok(a.iter()
        .filter_map(|(z, p)| b.get(z).map(|q| p * q))
        .fold(LaurentPoly::zero(), |acc, x| &acc + &x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CoxeterSpec;
    use crate::hecke::{HeckeAlgebra, HeckeElt};

    fn sys(spec: &str) -> CoxeterSystem {
        CoxeterSystem::new(spec.parse::<CoxeterSpec>().unwrap()).unwrap()
    }

    fn w(letters: &[usize]) -> Word {
        Word::new(letters.to_vec())
    }

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn single_steps() {
        let a2 = sys("A2");
        let leaf = evaluate_subexpression(&a2, &w(&[0]), &[true]).unwrap();
        assert_eq!(leaf.labels, vec![Label::U1]);
        assert_eq!(leaf.target, a2.generator(0).unwrap());
        assert_eq!(leaf.degree, 0);
        let leaf = evaluate_subexpression(&a2, &w(&[0]), &[false]).unwrap();
        assert_eq!((leaf.labels[0], leaf.degree), (Label::U0, 1));
        assert!(leaf.target.is_identity());

        let leaf = evaluate_subexpression(&a2, &w(&[0, 0]), &[true, false]).unwrap();
        assert_eq!(leaf.labels, vec![Label::U1, Label::D0]);
        assert!(leaf.target.is_identity());
        assert_eq!(leaf.degree, 0);
        let leaf = evaluate_subexpression(&a2, &w(&[0, 0]), &[false, false]).unwrap();
        assert_eq!(leaf.labels, vec![Label::U0, Label::U0]);
        assert_eq!(leaf.degree, 2);

        assert!(matches!(
            evaluate_subexpression(&a2, &w(&[0, 1]), &[true]),
            Err(Error::LengthMismatch(1, 2))
        ));
    }

    #[test]
    fn descent_recipes_rewrite_the_running_word() {
        let a2 = sys("A2");
        // s r s then r: the running word s.r.s is rewritten to r.s.r first
        let leaf = evaluate_subexpression(&a2, &w(&[0, 1, 0, 1]), &[true; 4]).unwrap();
        assert_eq!(
            leaf.labels,
            vec![Label::U1, Label::U1, Label::U1, Label::D1]
        );
        assert_eq!(leaf.degree, -1);
        let path = leaf
            .recipe
            .iter()
            .find_map(|r| match r {
                RecipeStep::PathMove {
                    from, to, moves, ..
                } => Some((from, to, moves)),
                _ => None,
            })
            .unwrap();
        assert_eq!(path.0, &w(&[0, 1, 0]));
        assert_eq!(path.1, &w(&[1, 0, 1]));
        assert_eq!(path.2.len(), 1);
        assert_eq!(leaf.output, w(&[1, 0, 1]));
        assert!(leaf.recipe.contains(&RecipeStep::Trivalent(3)));
    }

    #[test]
    fn enumeration_examples() {
        let a2 = sys("A2");
        let empty = enumerate_leaves(&a2, &Word::empty()).unwrap();
        assert_eq!(empty.len(), 1);
        assert!(empty[0].target.is_identity());
        assert_eq!(empty[0].degree, 0);

        let leaves = enumerate_leaves(&a2, &w(&[0, 1])).unwrap();
        let got: Vec<(String, i32)> = leaves
            .iter()
            .map(|l| (l.target.canonical_word().to_string(), l.degree))
            .collect();
        // counter order 00, 01, 10, 11
        assert_eq!(
            got,
            vec![
                ("e".to_string(), 2),
                ("s1".to_string(), 1),
                ("s0".to_string(), 1),
                ("s0.s1".to_string(), 0)
            ]
        );
        assert_eq!(enumerate_leaves(&a2, &w(&[0, 1, 0])).unwrap().len(), 8);
    }

    #[test]
    fn leaf_polynomial_examples() {
        let a2 = sys("A2");
        let e = a2.identity();
        let s = a2.generator(0).unwrap();
        assert_eq!(leaf_polynomial(&a2, &w(&[0]), &e).unwrap(), lp("v"));
        assert_eq!(leaf_polynomial(&a2, &w(&[0]), &s).unwrap(), lp("1"));
        assert_eq!(
            leaf_polynomial(&a2, &w(&[0, 0]), &s).unwrap(),
            lp("v^-1 + v")
        );
    }

    #[test]
    fn walker_and_tree_agree() {
        for spec in ["A3", "I2(5)", "U3"] {
            let system = sys(spec);
            for word in [
                w(&[0, 1, 0, 1, 2, 1]),
                w(&[1, 1, 0, 1, 0]),
                w(&[2, 0, 1, 2, 0, 1]),
            ] {
                let word = Word::new(word.iter().map(|s| s % system.rank()).collect());
                let mut from_tree: BTreeMap<Element, LaurentPoly> = BTreeMap::new();
                for leaf in enumerate_leaves(&system, &word).unwrap() {
                    *from_tree.entry(leaf.target.clone()).or_default() +=
                        &LaurentPoly::monomial(1, leaf.degree);
                    assert_eq!(system.evaluate(&leaf.output).unwrap(), leaf.target);
                    assert!(system.is_reduced(&leaf.output).unwrap());
                }
                assert_eq!(from_tree, leaf_polynomials(&system, &word).unwrap());
            }
        }
    }

    #[test]
    fn deodhar_identity_small() {
        for spec in ["A2", "A3", "I2(4)", "U3"] {
            let system = sys(spec);
            let hecke = HeckeAlgebra::new(system);
            let r = system.rank();
            for n in 0..=5usize {
                for code in 0..r.pow(n as u32) {
                    let word = Word::new((0..n).map(|k| code / r.pow(k as u32) % r).collect());
                    let mut sum = HeckeElt::zero(system.spec());
                    for (z, p) in leaf_polynomials(&system, &word).unwrap() {
                        sum.add_term(&z, &p);
                    }
                    assert_eq!(
                        sum,
                        hecke.bott_samelson_character(&word).unwrap(),
                        "{spec} {word}"
                    );
                }
            }
        }
    }

    #[test]
    fn targets_lie_below_the_demazure_product() {
        let a3 = sys("A3");
        let word = w(&[0, 1, 0, 2, 1, 0, 1]);
        let demazure = word.iter().fold(a3.identity(), |t, s| {
            let ts = t.mul(s, Side::Right);
            if ts.length() > t.length() {
                ts
            } else {
                t
            }
        });
        for leaf in enumerate_leaves(&a3, &word).unwrap() {
            assert!(a3.bruhat_leq(&leaf.target, &demazure).unwrap());
        }
    }

    #[test]
    fn double_leaf_examples() {
        let a2 = sys("A2");
        let d = double_leaves(&a2, &w(&[0]), &w(&[0])).unwrap();
        assert_eq!(d.count, lp("1 + v^2"));
        assert_eq!(d.pairs.len(), 2);

        let word = w(&[0, 1, 0]);
        let d = double_leaves(&a2, &word, &Word::empty()).unwrap();
        assert_eq!(
            d.count,
            leaf_polynomial(&a2, &word, &a2.identity()).unwrap()
        );

        // against the Hecke expansions
        let hecke = HeckeAlgebra::new(a2);
        let (w1, w2) = (w(&[0, 1, 0]), w(&[1, 0, 1]));
        let c1 = hecke.bott_samelson_character(&w1).unwrap();
        let c2 = hecke.bott_samelson_character(&w2).unwrap();
        let expected = c1
            .terms()
            .map(|(z, p)| p * &c2.coeff(z))
            .fold(LaurentPoly::zero(), |a, b| &a + &b);
        let d = double_leaves(&a2, &w1, &w2).unwrap();
        assert_eq!(d.count, expected);
        assert_eq!(double_leaf_count(&a2, &w1, &w2).unwrap(), expected);
        assert_eq!(double_leaf_count(&a2, &w2, &w1).unwrap(), expected);
        for pair in &d.pairs {
            let mut word = pair.lower.output.clone();
            for mv in &pair.middle {
                word = mv.apply(&word);
            }
            assert_eq!(word, pair.upper.output);
        }
    }

    #[test]
    fn json_record() {
        let a2 = sys("A2");
        let leaf = evaluate_subexpression(&a2, &w(&[0, 0]), &[true, false]).unwrap();
        assert_eq!(
            leaf.to_json(),
            json!({"bits": "10", "labels": ["U1", "D0"], "target": "e", "degree": 0})
        );
    }
}
