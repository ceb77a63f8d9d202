//! Finite graphs with loops, implicit graphs, cycle searches and vertex
//! partitions.
//!
//! Loops are kept apart from the adjacency lists: a loop never contributes to
//! a degree or to the edge count, it only marks the vertex in [`Graph::loops`].

mod cycles;
pub mod io;
mod partition;

pub use cycles::{
    contains_c4, even_cycle_free_upto, find_cycle_of_length, find_even_cycle_through, girth,
};
pub use partition::{pair_edge_matrix, PairEdgeMatrix, Partition};

use rayon::prelude::*;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {v} out of range for a graph on {n} vertices")]
    InvalidVertex { v: u64, n: usize },
    #[error("{n} vertices exceed the materialization ceiling {limit}")]
    CeilingExceeded { n: usize, limit: usize },
    #[error("adjacency is not symmetric: {v} lists {u} but not conversely")]
    Asymmetric { u: u32, v: u32 },
    #[error("vertex {v} lists neighbor {u} more than once")]
    DuplicateNeighbor { v: u32, u: u32 },
    #[error("vertex {0} lists itself as a neighbor; loops are recorded separately")]
    SelfNeighbor(u32),
    #[error("even-cycle half length {0} outside 2..=5")]
    KmaxOutOfRange(u32),
    #[error("partition covers {partition} vertices but the graph has {graph}")]
    SizeMismatch { graph: usize, partition: usize },
    #[error("class {0} is empty")]
    EmptyClass(u32),
    #[error("vertex {v} assigned to class {class}, but only {count} classes exist")]
    ClassOutOfRange { v: u32, class: u32, count: u32 },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Explicit undirected graph in compressed adjacency form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<u32>,
    loops: Vec<u32>,
}

impl Graph {
    /// Builds a graph from an edge list. Pairs `(v, v)` become loops and
    /// repeated edges collapse.
    pub fn from_edges<E, L>(n: usize, edges: E, loops: L) -> Result<Graph, GraphError>
    where
        E: IntoIterator<Item = (u32, u32)>,
        L: IntoIterator<Item = u32>,
    {
        let check = |v: u32| {
            if (v as usize) < n {
                Ok(v)
            } else {
                Err(GraphError::InvalidVertex { v: v as u64, n })
            }
        };
        let mut lists = vec![Vec::new(); n];
        let mut loop_set = Vec::new();
        for (u, v) in edges {
            let (u, v) = (check(u)?, check(v)?);
            if u == v {
                loop_set.push(u);
            } else {
                lists[u as usize].push(v);
                lists[v as usize].push(u);
            }
        }
        for v in loops {
            loop_set.push(check(v)?);
        }
        for l in &mut lists {
            l.sort_unstable();
            l.dedup();
        }
        loop_set.sort_unstable();
        loop_set.dedup();
        Ok(Graph::from_sorted_lists(lists, loop_set))
    }

    /// Builds a graph from per-vertex neighbor lists, validating symmetry and
    /// the absence of duplicates and self-references.
    pub fn from_adjacency(
        mut lists: Vec<Vec<u32>>,
        mut loops: Vec<u32>,
    ) -> Result<Graph, GraphError> {
        let n = lists.len();
        for (v, l) in lists.iter_mut().enumerate() {
            l.sort_unstable();
            for w in l.windows(2) {
                if w[0] == w[1] {
                    return Err(GraphError::DuplicateNeighbor {
                        v: v as u32,
                        u: w[0],
                    });
                }
            }
            if let Some(&bad) = l.iter().find(|&&u| u as usize >= n) {
                return Err(GraphError::InvalidVertex { v: bad as u64, n });
            }
            if l.binary_search(&(v as u32)).is_ok() {
                return Err(GraphError::SelfNeighbor(v as u32));
            }
        }
        let asym = (0..n).into_par_iter().find_map_first(|v| {
            lists[v]
                .iter()
                .find(|&&u| lists[u as usize].binary_search(&(v as u32)).is_err())
                .map(|&u| GraphError::Asymmetric { u, v: v as u32 })
        });
        if let Some(e) = asym {
            return Err(e);
        }
        loops.sort_unstable();
        loops.dedup();
        if let Some(&bad) = loops.iter().find(|&&u| u as usize >= n) {
            return Err(GraphError::InvalidVertex { v: bad as u64, n });
        }
        Ok(Graph::from_sorted_lists(lists, loops))
    }

    fn from_sorted_lists(lists: Vec<Vec<u32>>, loops: Vec<u32>) -> Graph {
        let mut offsets = Vec::with_capacity(lists.len() + 1);
        offsets.push(0);
        let mut targets = Vec::with_capacity(lists.iter().map(Vec::len).sum());
        for l in lists {
            targets.extend_from_slice(&l);
            offsets.push(targets.len());
        }
        Graph {
            offsets,
            targets,
            loops,
        }
    }

    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Graph {
        Graph {
            offsets: vec![0; n + 1],
            targets: Vec::new(),
            loops: Vec::new(),
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Sorted neighbors of `v`, loops excluded. Panics if `v` is out of range.
    #[inline]
    pub fn neighbors(&self, v: u32) -> &[u32] {
        let v = v as usize;
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: u32) -> Result<usize, GraphError> {
        if (v as usize) < self.n() {
            Ok(self.neighbors(v).len())
        } else {
            Err(GraphError::InvalidVertex {
                v: v as u64,
                n: self.n(),
            })
        }
    }

    /// Number of non-loop edges.
    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    pub fn loop_count(&self) -> usize {
        self.loops.len()
    }

    pub fn loops(&self) -> &[u32] {
        &self.loops
    }

    #[inline]
    pub fn has_loop(&self, v: u32) -> bool {
        self.loops.binary_search(&v).is_ok()
    }

    #[inline]
    pub fn is_edge(&self, u: u32, v: u32) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (0..self.n() as u32).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n() as u32)
            .map(|v| self.neighbors(v).len())
            .max()
            .unwrap_or(0)
    }

    /// Degree → number of vertices with that degree.
    pub fn degree_histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for v in 0..self.n() as u32 {
            *h.entry(self.neighbors(v).len()).or_default() += 1;
        }
        h
    }
}

/// A graph whose neighborhoods are computed on demand.
pub trait ImplicitGraph: Sync {
    fn vertex_count(&self) -> usize;

    /// Calls `f` once for every neighbor of `v`, loops excluded.
    fn for_each_neighbor(&self, v: u32, f: &mut dyn FnMut(u32));

    fn has_loop(&self, v: u32) -> bool;

    fn neighbors_vec(&self, v: u32) -> Vec<u32> {
        let mut out = Vec::new();
        self.for_each_neighbor(v, &mut |u| out.push(u));
        out
    }
}

impl ImplicitGraph for Graph {
    fn vertex_count(&self) -> usize {
        self.n()
    }
    fn for_each_neighbor(&self, v: u32, f: &mut dyn FnMut(u32)) {
        for &u in self.neighbors(v) {
            f(u);
        }
    }
    fn has_loop(&self, v: u32) -> bool {
        Graph::has_loop(self, v)
    }
}

/// An implicit graph given by closures.
pub struct RuleGraph<N, L> {
    n: usize,
    rule: N,
    loop_rule: L,
}

impl<N, L> RuleGraph<N, L>
where
    N: Fn(u32) -> Vec<u32> + Sync,
    L: Fn(u32) -> bool + Sync,
{
    pub fn new(n: usize, rule: N, loop_rule: L) -> Self {
        RuleGraph { n, rule, loop_rule }
    }
}

impl<N, L> ImplicitGraph for RuleGraph<N, L>
where
    N: Fn(u32) -> Vec<u32> + Sync,
    L: Fn(u32) -> bool + Sync,
{
    fn vertex_count(&self) -> usize {
        self.n
    }
    fn for_each_neighbor(&self, v: u32, f: &mut dyn FnMut(u32)) {
        for u in (self.rule)(v) {
            f(u);
        }
    }
    fn has_loop(&self, v: u32) -> bool {
        (self.loop_rule)(v)
    }
}

/// Builds the explicit graph of `ig`, checking that the enumeration is
/// duplicate-free and symmetric.
pub fn materialize<G: ImplicitGraph + ?Sized>(ig: &G, limit: usize) -> Result<Graph, GraphError> {
    let n = ig.vertex_count();
    if n > limit {
        return Err(GraphError::CeilingExceeded { n, limit });
    }
    let lists: Vec<Vec<u32>> = (0..n as u32)
        .into_par_iter()
        .map(|v| ig.neighbors_vec(v))
        .collect();
    let loops: Vec<u32> = (0..n as u32).filter(|&v| ig.has_loop(v)).collect();
    Graph::from_adjacency(lists, loops)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn cycle(n: u32) -> Graph {
        Graph::from_edges(n as usize, (0..n).map(|i| (i, (i + 1) % n)), []).unwrap()
    }

    #[test]
    fn triangle_counts() {
        let g = cycle(3);
        for v in 0..3 {
            assert_eq!(g.degree(v).unwrap(), 2);
        }
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.loop_count(), 0);
        assert!(g.degree(3).is_err());
    }

    #[test]
    fn loops_are_not_edges() {
        let g = Graph::from_edges(3, [(0, 1), (1, 1), (1, 0)], [2]).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.loops(), &[1, 2]);
        assert_eq!(g.degree(1).unwrap(), 1);
        assert!(g.has_loop(1) && !g.has_loop(0));
    }

    #[test]
    fn asymmetric_adjacency_is_rejected() {
        let err = Graph::from_adjacency(vec![vec![1], vec![]], vec![]).unwrap_err();
        assert_eq!(err, GraphError::Asymmetric { u: 1, v: 0 });
        let err = Graph::from_adjacency(vec![vec![0]], vec![]).unwrap_err();
        assert_eq!(err, GraphError::SelfNeighbor(0));
        let err = Graph::from_adjacency(vec![vec![1, 1], vec![0]], vec![]).unwrap_err();
        assert_eq!(err, GraphError::DuplicateNeighbor { v: 0, u: 1 });
    }

    #[test]
    fn materialize_rule_graphs() {
        let empty = RuleGraph::new(7, |_| Vec::new(), |_| false);
        let g = materialize(&empty, 100).unwrap();
        assert_eq!((g.n(), g.edge_count()), (7, 0));
        assert_eq!(
            materialize(&empty, 6).unwrap_err(),
            GraphError::CeilingExceeded { n: 7, limit: 6 }
        );
        let broken = RuleGraph::new(2, |v| if v == 0 { vec![1] } else { vec![] }, |_| false);
        assert!(matches!(
            materialize(&broken, 10),
            Err(GraphError::Asymmetric { .. })
        ));
        let c5 = RuleGraph::new(5, |v| vec![(v + 1) % 5, (v + 4) % 5], |v| v == 0);
        let g = materialize(&c5, 10).unwrap();
        assert_eq!(
            g,
            Graph::from_edges(5, (0..5).map(|i| (i, (i + 1) % 5)), [0]).unwrap()
        );
    }
}
