use std::collections::HashMap;
use std::time::Instant;

use serde_json::{json, Value};

use crate::bimodule::{f_morphism, variables_for, BSMorphism};
use crate::coxeter::{BraidMove, CoxeterSystem, Element, Word};
use crate::error::{Error, Result};

use super::{build_rex, RexGraph, RexPath, Strategy};

/// Evaluates path morphisms, caching the morphism of each edge.
pub struct PathEvaluator {
    nvars: usize,
    edges: HashMap<(Word, BraidMove), BSMorphism>,
}

impl PathEvaluator {
    pub fn new(system: &CoxeterSystem) -> Result<Self> {
        Ok(PathEvaluator {
            nvars: variables_for(system.spec())?,
            edges: HashMap::new(),
        })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// `id (x) f (x) id` for a braid move applied to `word`.
    pub fn edge_morphism(&mut self, word: &Word, mv: BraidMove) -> Result<&BSMorphism> {
        let key = (word.clone(), mv);
        if !self.edges.contains_key(&key) {
            let letters = word.letters();
            let end = mv.position + mv.order;
            if end > letters.len() || letters[mv.position] != mv.first {
                return Err(Error::LetterMismatch(format!(
                    "{mv} does not apply to {word}"
                )));
            }
            let f = f_morphism(self.nvars, mv.first, mv.second)?;
            let m = f.tensor_with_identity(
                &Word::from(&letters[..mv.position]),
                &Word::from(&letters[end..]),
            )?;
            self.edges.insert(key.clone(), m);
        }
        Ok(&self.edges[&key])
    }

    /// Composite of the edge morphisms along `path`, from the first node's
    /// bimodule to the last node's.
    pub fn path_morphism(&mut self, graph: &RexGraph, path: &RexPath) -> Result<BSMorphism> {
        let mut out = BSMorphism::identity(&graph.nodes[path.start()], self.nvars);
        for (k, &mv) in path.moves.iter().enumerate() {
            let word = &graph.nodes[path.nodes[k]];
            out = self.edge_morphism(word, mv)?.compose(&out)?;
        }
        Ok(out)
    }
}

/// Outcome of one strategy in a forking check.
#[derive(Clone, Debug)]
pub struct StrategyOutcome {
    pub strategy: Strategy,
    pub path_len: usize,
    pub visits: Vec<usize>,
    pub complete: bool,
    pub closed: bool,
    pub idempotent: Option<bool>,
    pub morphism: BSMorphism,
}

#[derive(Clone, Debug)]
pub struct ForkingReport {
    pub element: Word,
    pub nodes: usize,
    pub edges: usize,
    pub strategies: Vec<StrategyOutcome>,
    /// All morphisms with the same endpoints agree.
    pub equal: bool,
    /// Every closed-path morphism is idempotent.
    pub idempotent_endos: bool,
    /// Pairs of strategies whose morphisms differ.
    pub witnesses: Vec<(Strategy, Strategy)>,
    pub runtime_ms: u128,
}

impl ForkingReport {
    pub fn to_json(&self) -> Value {
        json!({
            "element": self.element.to_string(),
            "nodes": self.nodes,
            "edges": self.edges,
            "anchoring": "closed walks at the canonical word",
            "strategies": self.strategies.iter().map(|o| json!({
                "strategy": o.strategy.to_string(),
                "path_len": o.path_len,
                "visits": o.visits,
                "complete": o.complete,
                "closed": o.closed,
                "idempotent": o.idempotent,
            })).collect::<Vec<_>>(),
            "equal": self.equal,
            "idempotent_endos": self.idempotent_endos,
            "witnesses": self.witnesses.iter()
                .map(|(a, b)| [a.to_string(), b.to_string()])
                .collect::<Vec<_>>(),
            "runtime_ms": self.runtime_ms,
        })
    }
}

/// Computes the path morphism of a complete closed walk for each strategy
/// and compares those with matching endpoints.
pub fn forking_check(
    system: &CoxeterSystem,
    x: &Element,
    strategies: &[Strategy],
) -> Result<ForkingReport> {
    let start = Instant::now();
    let mut eval = PathEvaluator::new(system)?;
    let graph = build_rex(system, x)?;
    let mut outcomes = Vec::with_capacity(strategies.len());
    for &strategy in strategies {
        let path = graph.complete_path(strategy);
        let morphism = eval.path_morphism(&graph, &path)?;
        let closed = path.is_closed();
        outcomes.push(StrategyOutcome {
            strategy,
            path_len: path.len(),
            visits: path.visit_counts(graph.node_count()),
            complete: path.complete,
            closed,
            idempotent: closed.then(|| morphism.is_idempotent()),
            morphism,
        });
    }
    let mut witnesses = Vec::new();
    for (i, a) in outcomes.iter().enumerate() {
        for b in &outcomes[i + 1..] {
            let same_ends = a.morphism.source() == b.morphism.source()
                && a.morphism.target() == b.morphism.target();
            if same_ends && a.morphism != b.morphism {
                witnesses.push((a.strategy, b.strategy));
            }
        }
    }
    Ok(ForkingReport {
        element: x.canonical_word(),
        nodes: graph.node_count(),
        edges: graph.edge_count(),
        equal: witnesses.is_empty(),
        idempotent_endos: outcomes.iter().all(|o| o.idempotent != Some(false)),
        strategies: outcomes,
        witnesses,
        runtime_ms: start.elapsed().as_millis(),
    })
}
