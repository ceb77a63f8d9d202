use super::{Graph, GraphError};
use serde::{Deserialize, Serialize};

/// An assignment of every vertex to one of `class_count` nonempty classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    class_of: Vec<u32>,
    class_count: u32,
}

impl Partition {
    pub fn new(class_of: Vec<u32>, class_count: u32) -> Result<Partition, GraphError> {
        let mut seen = vec![false; class_count as usize];
        for (v, &c) in class_of.iter().enumerate() {
            if c >= class_count {
                return Err(GraphError::ClassOutOfRange {
                    v: v as u32,
                    class: c,
                    count: class_count,
                });
            }
            seen[c as usize] = true;
        }
        if let Some(c) = seen.iter().position(|&s| !s) {
            return Err(GraphError::EmptyClass(c as u32));
        }
        Ok(Partition {
            class_of,
            class_count,
        })
    }

    /// Uses `max(label) + 1` as the class count.
    pub fn from_labels(class_of: Vec<u32>) -> Result<Partition, GraphError> {
        let r = class_of.iter().max().map_or(0, |&m| m + 1);
        Partition::new(class_of, r)
    }

    /// Number of vertices covered.
    pub fn len(&self) -> usize {
        self.class_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.class_of.is_empty()
    }

    #[inline]
    pub fn class_of(&self, v: u32) -> u32 {
        self.class_of[v as usize]
    }

    pub fn labels(&self) -> &[u32] {
        &self.class_of
    }

    pub fn class_count(&self) -> u32 {
        self.class_count
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.class_count as usize];
        for &c in &self.class_of {
            sizes[c as usize] += 1;
        }
        sizes
    }

    pub fn members(&self) -> Vec<Vec<u32>> {
        let mut m = vec![Vec::new(); self.class_count as usize];
        for (v, &c) in self.class_of.iter().enumerate() {
            m[c as usize].push(v as u32);
        }
        m
    }
}

/// Edge counts between and within the classes of a partition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairEdgeMatrix {
    r: usize,
    cross: Vec<u64>,
    within: Vec<u64>,
    loops_within: Vec<u64>,
}

impl PairEdgeMatrix {
    pub fn class_count(&self) -> usize {
        self.r
    }

    /// Edges between classes `a` and `b`; zero on the diagonal.
    pub fn cross(&self, a: u32, b: u32) -> u64 {
        if a == b {
            0
        } else {
            self.cross[a as usize * self.r + b as usize]
        }
    }

    pub fn within(&self, c: u32) -> u64 {
        self.within[c as usize]
    }

    pub fn loops_within(&self, c: u32) -> u64 {
        self.loops_within[c as usize]
    }

    /// Unordered class pairs `(a, b)`, `a < b`, with their edge counts.
    pub fn pairs(&self) -> impl Iterator<Item = (u32, u32, u64)> + '_ {
        let r = self.r as u32;
        (0..r).flat_map(move |a| (a + 1..r).map(move |b| (a, b, self.cross(a, b))))
    }

    pub fn total_cross(&self) -> u64 {
        self.pairs().map(|(_, _, c)| c).sum()
    }

    pub fn total_within(&self) -> u64 {
        self.within.iter().sum()
    }

    pub fn total_loops(&self) -> u64 {
        self.loops_within.iter().sum()
    }
}

pub fn pair_edge_matrix(g: &Graph, part: &Partition) -> Result<PairEdgeMatrix, GraphError> {
    if part.len() != g.n() {
        return Err(GraphError::SizeMismatch {
            graph: g.n(),
            partition: part.len(),
        });
    }
    let r = part.class_count() as usize;
    let mut m = PairEdgeMatrix {
        r,
        cross: vec![0; r * r],
        within: vec![0; r],
        loops_within: vec![0; r],
    };
    for (u, v) in g.edges() {
        let (a, b) = (part.class_of(u) as usize, part.class_of(v) as usize);
        if a == b {
            m.within[a] += 1;
        } else {
            m.cross[a * r + b] += 1;
            m.cross[b * r + a] += 1;
        }
    }
    for &v in g.loops() {
        m.loops_within[part.class_of(v) as usize] += 1;
    }
    Ok(m)
}
