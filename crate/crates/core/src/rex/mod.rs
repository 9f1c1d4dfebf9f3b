//! Reduced-expression graphs: nodes are the reduced words of an element and
//! edges are single braid moves.

mod forking;

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::coxeter::{BraidMove, CoxeterSystem, Element, Word};
use crate::error::{Error, Result};

pub use forking::{forking_check, ForkingReport, PathEvaluator, StrategyOutcome};

/// An undirected edge; applying `braid` to node `a` gives node `b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RexEdge {
    pub a: usize,
    pub b: usize,
    pub braid: BraidMove,
}

#[derive(Clone, Debug)]
pub struct RexGraph {
    pub element: Element,
    /// Node 0 is the canonical word; the rest follow in BFS order.
    pub nodes: Vec<Word>,
    pub edges: Vec<RexEdge>,
    index: HashMap<Word, usize>,
    adjacency: Vec<Vec<(usize, BraidMove)>>,
}

/// Closure of the canonical word of `x` under braid moves.
pub fn build_rex(system: &CoxeterSystem, x: &Element) -> Result<RexGraph> {
    system.check_element(x)?;
    let start = x.canonical_word();
    let mut nodes = vec![start.clone()];
    let mut index = HashMap::from([(start, 0usize)]);
    let mut adjacency: Vec<Vec<(usize, BraidMove)>> = vec![Vec::new()];
    let mut edges = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for mv in system.braid_moves(&nodes[i]) {
            let next = mv.apply(&nodes[i]);
            let j = match index.get(&next) {
                Some(&j) => j,
                None => {
                    let j = nodes.len();
                    index.insert(next.clone(), j);
                    nodes.push(next);
                    adjacency.push(Vec::new());
                    queue.push_back(j);
                    j
                }
            };
            adjacency[i].push((j, mv));
            if i < j {
                edges.push(RexEdge {
                    a: i,
                    b: j,
                    braid: mv,
                });
            }
        }
    }
    Ok(RexGraph {
        element: x.clone(),
        nodes,
        edges,
        index,
        adjacency,
    })
}

impl RexGraph {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn index_of(&self, w: &Word) -> Option<usize> {
        self.index.get(w).copied()
    }

    /// Neighbours of node `i` with the move leading to each.
    pub fn neighbours(&self, i: usize) -> &[(usize, BraidMove)] {
        &self.adjacency[i]
    }

    fn move_between(&self, i: usize, j: usize) -> Option<BraidMove> {
        self.adjacency[i]
            .iter()
            .find(|(k, _)| *k == j)
            .map(|(_, mv)| *mv)
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.nodes.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for &(j, _) in &self.adjacency[i] {
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen.into_iter().all(|b| b)
    }

    /// Shortest sequence of braid moves turning node `from` into node `to`.
    pub fn shortest_moves(&self, from: usize, to: usize) -> Vec<BraidMove> {
        let mut parent: Vec<Option<(usize, BraidMove)>> = vec![None; self.nodes.len()];
        let mut seen = vec![false; self.nodes.len()];
        let mut queue = VecDeque::from([from]);
        seen[from] = true;
        while let Some(i) = queue.pop_front() {
            if i == to {
                break;
            }
            for &(j, mv) in &self.adjacency[i] {
                if !seen[j] {
                    seen[j] = true;
                    parent[j] = Some((i, mv));
                    queue.push_back(j);
                }
            }
        }
        let mut moves = Vec::new();
        let mut cur = to;
        while let Some((p, mv)) = parent[cur] {
            moves.push(mv);
            cur = p;
        }
        moves.reverse();
        moves
    }

    /// A walk through the given node sequence; consecutive nodes must be
    /// adjacent.
    pub fn path_through(&self, nodes: &[usize]) -> Result<RexPath> {
        let first = *nodes
            .first()
            .ok_or_else(|| Error::Incompatible("empty node sequence".into()))?;
        let mut path = RexPath::trivial(first);
        for &j in &nodes[1..] {
            let i = path.end();
            let mv = self.move_between(i, j).ok_or_else(|| {
                Error::Incompatible(format!("nodes {i} and {j} are not adjacent"))
            })?;
            path.push(j, mv);
        }
        path.complete = path.visits_all(self.node_count());
        Ok(path)
    }

    /// A complete walk anchored at node 0 that returns to node 0.
    pub fn complete_path(&self, strategy: Strategy) -> RexPath {
        let walk = match strategy {
            Strategy::DfsWalk => self.dfs_walk(),
            Strategy::BfsRetrace => self.bfs_retrace(),
            Strategy::Random(seed) => self.random_walk(seed),
        };
        self.path_through(&walk)
            .expect("strategies only step along edges")
    }

    fn dfs_walk(&self) -> Vec<usize> {
        let mut seen = vec![false; self.nodes.len()];
        let mut walk = vec![0];
        let mut stack = vec![(0usize, 0usize)];
        seen[0] = true;
        while let Some((i, next)) = stack.pop() {
            if let Some(&(j, _)) = self.adjacency[i].get(next) {
                stack.push((i, next + 1));
                if !seen[j] {
                    seen[j] = true;
                    walk.push(j);
                    stack.push((j, 0));
                }
            } else if let Some(&(parent, _)) = stack.last() {
                walk.push(parent);
            }
        }
        walk
    }

    fn bfs_retrace(&self) -> Vec<usize> {
        let mut parent = vec![usize::MAX; self.nodes.len()];
        let mut order = Vec::new();
        let mut queue = VecDeque::from([0usize]);
        parent[0] = 0;
        while let Some(i) = queue.pop_front() {
            order.push(i);
            for &(j, _) in &self.adjacency[i] {
                if parent[j] == usize::MAX {
                    parent[j] = i;
                    queue.push_back(j);
                }
            }
        }
        let mut walk = vec![0];
        for &target in &order[1..] {
            let mut down = vec![target];
            while *down.last().unwrap() != 0 {
                let p = parent[*down.last().unwrap()];
                down.push(p);
            }
            // down = target .. 0; go 0 -> target -> 0
            walk.extend(down.iter().rev().skip(1));
            walk.extend(down.iter().skip(1));
        }
        walk
    }

    fn random_walk(&self, seed: u64) -> Vec<usize> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut seen = vec![false; self.nodes.len()];
        let mut remaining = self.nodes.len() - 1;
        seen[0] = true;
        let mut walk = vec![0];
        while remaining > 0 {
            let i = *walk.last().unwrap();
            let &(j, _) = self.adjacency[i]
                .choose(&mut rng)
                .expect("connected graph with more than one node");
            if !seen[j] {
                seen[j] = true;
                remaining -= 1;
            }
            walk.push(j);
        }
        let back: Vec<usize> = walk.iter().rev().skip(1).copied().collect();
        walk.extend(back);
        walk
    }

    /// Graphviz rendering with nodes labelled by their words.
    pub fn to_dot(&self, rank: usize) -> String {
        let mut out = String::from("graph rex {\n");
        for (i, w) in self.nodes.iter().enumerate() {
            out.push_str(&format!("  n{i} [label=\"{}\"];\n", w.pretty(rank)));
        }
        for e in &self.edges {
            out.push_str(&format!(
                "  n{} -- n{} [label=\"{}\"];\n",
                e.a, e.b, e.braid
            ));
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "element": self.element.canonical_word().to_string(),
            "nodes": self.nodes.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
            "edges": self.edges.iter().map(|e| json!({
                "a": e.a,
                "b": e.b,
                "position": e.braid.position,
                "letters": [e.braid.first, e.braid.second],
                "order": e.braid.order,
            })).collect::<Vec<_>>(),
        })
    }
}

/// A walk in a Rex graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RexPath {
    pub nodes: Vec<usize>,
    /// `moves[k]` turns `nodes[k]` into `nodes[k + 1]`.
    pub moves: Vec<BraidMove>,
    pub complete: bool,
}

impl RexPath {
    pub fn trivial(node: usize) -> Self {
        RexPath {
            nodes: vec![node],
            moves: Vec::new(),
            complete: false,
        }
    }

    fn push(&mut self, node: usize, mv: BraidMove) {
        self.nodes.push(node);
        self.moves.push(mv);
    }

    pub fn start(&self) -> usize {
        self.nodes[0]
    }

    pub fn end(&self) -> usize {
        *self.nodes.last().unwrap()
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    pub fn is_closed(&self) -> bool {
        self.start() == self.end()
    }

    fn visits_all(&self, n: usize) -> bool {
        let mut seen = vec![false; n];
        for &i in &self.nodes {
            seen[i] = true;
        }
        seen.into_iter().all(|b| b)
    }

    /// How many times each node is visited.
    pub fn visit_counts(&self, n: usize) -> Vec<usize> {
        let mut counts = vec![0; n];
        for &i in &self.nodes {
            counts[i] += 1;
        }
        counts
    }

    /// This path followed by `other`.
    pub fn then(&self, other: &RexPath, node_count: usize) -> Result<RexPath> {
        if self.end() != other.start() {
            return Err(Error::Incompatible(format!(
                "path ends at node {} but the next starts at {}",
                self.end(),
                other.start()
            )));
        }
        let mut out = self.clone();
        out.nodes.extend(&other.nodes[1..]);
        out.moves.extend(&other.moves);
        out.complete = out.visits_all(node_count);
        Ok(out)
    }
}

/// How to generate a complete closed walk.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Depth-first traversal, recording the backtracking steps.
    DfsWalk,
    /// Out and back along the BFS tree for every node in BFS order.
    BfsRetrace,
    /// Random walk until every node is seen, then retrace it.
    Random(u64),
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strategy::DfsWalk => write!(f, "dfs"),
            Strategy::BfsRetrace => write!(f, "bfs"),
            Strategy::Random(seed) => write!(f, "random:{seed}"),
        }
    }
}

/// Parses `dfs`, `bfs` and `random:<seed>`.
impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "dfs" | "dfs-walk" => Ok(Strategy::DfsWalk),
            "bfs" | "bfs-retrace" => Ok(Strategy::BfsRetrace),
            other => other
                .strip_prefix("random:")
                .and_then(|seed| seed.parse().ok())
                .map(Strategy::Random)
                .ok_or_else(|| Error::Parse(format!("unknown strategy `{other}`"))),
        }
    }
}
