//! Weighted undirected graphs with 1-based vertices.
//!
//! Text form: a header `n <count>`, then one `e <u> <v> [<weight>]` line per
//! edge (weight defaults to 1). `#` starts a comment line.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write as _;

use num_traits::One;

use super::ProblemError;
use crate::poly::{Rational, SpinIndex};
use crate::text::parse_rational;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: BTreeMap<(SpinIndex, SpinIndex), Rational>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            n,
            edges: BTreeMap::new(),
        }
    }

    /// Adds `{u, v}`; self-loops, repeats and out-of-range ends are errors.
    pub fn add_edge(
        &mut self,
        u: SpinIndex,
        v: SpinIndex,
        w: Rational,
    ) -> Result<(), ProblemError> {
        let bad = |m: String| Err(ProblemError::InvalidGraph(m));
        if u == v {
            return bad(format!("self-loop at {u}"));
        }
        for x in [u, v] {
            if x == 0 || x as usize > self.n {
                return bad(format!("vertex {x} outside 1..={}", self.n));
            }
        }
        let key = (u.min(v), u.max(v));
        if self.edges.contains_key(&key) {
            return bad(format!("duplicate edge {}-{}", key.0, key.1));
        }
        self.edges.insert(key, w);
        Ok(())
    }

    pub fn add_unit_edge(&mut self, u: SpinIndex, v: SpinIndex) -> Result<(), ProblemError> {
        self.add_edge(u, v, Rational::one())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v, w)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (SpinIndex, SpinIndex, &Rational)> {
        self.edges.iter().map(|(&(u, v), w)| (u, v, w))
    }

    pub fn total_weight(&self) -> Rational {
        self.edges.values().sum()
    }

    pub fn vertices(&self) -> impl Iterator<Item = SpinIndex> {
        1..=self.n as SpinIndex
    }

    pub fn adjacency(&self) -> BTreeMap<SpinIndex, BTreeSet<SpinIndex>> {
        let mut adj: BTreeMap<SpinIndex, BTreeSet<SpinIndex>> =
            self.vertices().map(|v| (v, BTreeSet::new())).collect();
        for &(u, v) in self.edges.keys() {
            adj.entry(u).or_default().insert(v);
            adj.entry(v).or_default().insert(u);
        }
        adj
    }

    pub fn degree(&self, v: SpinIndex) -> usize {
        self.edges
            .keys()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    pub fn is_cubic(&self) -> bool {
        self.adjacency().values().all(|s| s.len() == 3)
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let adj = self.adjacency();
        let mut seen = BTreeSet::from([1]);
        let mut queue = VecDeque::from([1]);
        while let Some(v) = queue.pop_front() {
            for &u in &adj[&v] {
                if seen.insert(u) {
                    queue.push_back(u);
                }
            }
        }
        seen.len() == self.n
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("n {}\n", self.n);
        for (u, v, w) in self.edges() {
            if w.is_one() {
                let _ = writeln!(s, "e {u} {v}");
            } else {
                let _ = writeln!(s, "e {u} {v} {w}");
            }
        }
        s
    }

    pub fn parse_text(text: &str) -> Result<Graph, ProblemError> {
        let mut graph: Option<Graph> = None;
        for (k, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |m: &str| ProblemError::GraphParse {
                line: k + 1,
                message: m.to_string(),
            };
            let toks: Vec<&str> = line.split_whitespace().collect();
            match (toks[0], &mut graph) {
                ("n", None) if toks.len() == 2 => {
                    let n = toks[1].parse().map_err(|_| err("bad vertex count"))?;
                    graph = Some(Graph::new(n));
                }
                ("n", Some(_)) => return Err(err("repeated header")),
                ("e", Some(g)) if toks.len() == 3 || toks.len() == 4 => {
                    let u = toks[1].parse().map_err(|_| err("bad vertex"))?;
                    let v = toks[2].parse().map_err(|_| err("bad vertex"))?;
                    let w = match toks.get(3) {
                        Some(t) => parse_rational(t).ok_or_else(|| err("bad weight"))?,
                        None => Rational::one(),
                    };
                    g.add_edge(u, v, w).map_err(|e| err(&e.to_string()))?;
                }
                ("e", None) => return Err(err("edge before `n` header")),
                _ => return Err(err("expected `n <count>` or `e <u> <v> [w]`")),
            }
        }
        graph.ok_or(ProblemError::GraphParse {
            line: 0,
            message: "missing `n` header".into(),
        })
    }
}
