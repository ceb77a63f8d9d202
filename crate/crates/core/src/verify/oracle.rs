//! Exhaustive search over set partitions of graphs with at most twelve
//! vertices. Partitions are enumerated as restricted growth strings. Loops
//! are ignored.

use super::{binom_ub, VerifyError};
use crate::graphs::Graph;

pub const ORACLE_MAX_N: usize = 12;

struct Search {
    n: usize,
    adj: Vec<u16>,
    members: Vec<u16>,
    proper: bool,
    cap: usize,
    best: usize,
}

impl Search {
    fn new(g: &Graph, proper: bool) -> Result<Search, VerifyError> {
        let n = g.n();
        if n > ORACLE_MAX_N {
            return Err(VerifyError::OracleCeiling(n));
        }
        let adj = (0..n as u32)
            .map(|v| g.neighbors(v).iter().fold(0u16, |m, &u| m | 1 << u))
            .collect();
        let cap = (binom_ub(g.edge_count() as u64) as usize).min(n);
        Ok(Search {
            n,
            adj,
            members: Vec::new(),
            proper,
            cap,
            best: 0,
        })
    }

    fn complete(&self) -> bool {
        let reach: Vec<u16> = self
            .members
            .iter()
            .map(|&m| {
                (0..self.n)
                    .filter(|&v| m >> v & 1 == 1)
                    .fold(0, |acc, v| acc | self.adj[v])
            })
            .collect();
        (0..self.members.len())
            .all(|a| (a + 1..self.members.len()).all(|b| reach[a] & self.members[b] != 0))
    }

    /// Largest number of parts in a complete partition.
    fn maximize(&mut self, v: usize) {
        if self.members.len() + (self.n - v) <= self.best {
            return;
        }
        if v == self.n {
            if self.complete() {
                self.best = self.members.len();
            }
            return;
        }
        for c in 0..self.members.len() {
            if self.proper && self.adj[v] & self.members[c] != 0 {
                continue;
            }
            self.members[c] |= 1 << v;
            self.maximize(v + 1);
            self.members[c] &= !(1 << v);
        }
        if self.members.len() < self.cap {
            self.members.push(1 << v);
            self.maximize(v + 1);
            self.members.pop();
        }
    }

    /// Fewest colors in a proper coloring.
    fn minimize(&mut self, v: usize) {
        if self.members.len() >= self.best {
            return;
        }
        if v == self.n {
            self.best = self.members.len();
            return;
        }
        for c in 0..self.members.len() {
            if self.adj[v] & self.members[c] == 0 {
                self.members[c] |= 1 << v;
                self.minimize(v + 1);
                self.members[c] &= !(1 << v);
            }
        }
        self.members.push(1 << v);
        self.minimize(v + 1);
        self.members.pop();
    }
}

/// Pseudo-achromatic number: most parts in a complete partition.
pub fn brute_force_psi(g: &Graph) -> Result<u32, VerifyError> {
    let mut s = Search::new(g, false)?;
    s.maximize(0);
    Ok(s.best as u32)
}

/// Achromatic number: most parts in a complete partition into independent
/// sets.
pub fn brute_force_chi_a(g: &Graph) -> Result<u32, VerifyError> {
    let mut s = Search::new(g, true)?;
    s.maximize(0);
    Ok(s.best as u32)
}

pub fn brute_force_chromatic(g: &Graph) -> Result<u32, VerifyError> {
    let mut s = Search::new(g, true)?;
    s.best = s.n + 1;
    s.minimize(0);
    Ok(s.best.min(s.n) as u32)
}
