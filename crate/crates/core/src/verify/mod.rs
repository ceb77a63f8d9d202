//! Claim checking: partition verdicts, upper-bound arithmetic, the relations
//! between a bipartite graph and its polarity graph, cycle certificates and
//! brute-force oracles for tiny graphs.

mod oracle;
mod report;
mod sampled;

pub use oracle::{brute_force_chi_a, brute_force_chromatic, brute_force_psi, ORACLE_MAX_N};
pub use report::{
    family_report, files_report, generic_report, gh_original_report, Bounds, Certificate, Counts,
    FamilyParams, Params, Prop1, UpperBound, VerificationReport,
};
pub use sampled::{SampledConfig, SamplingSummary};

use crate::adg::{AdgError, Family, PolarityViolation};
use crate::gf::GfError;
use crate::graphs::{
    contains_c4, find_cycle_of_length, find_even_cycle_through, girth, pair_edge_matrix, Graph,
    GraphError, ImplicitGraph, Partition,
};
use crate::partitions::PartitionError;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

/// Witnesses kept per kind of failure.
pub const WITNESS_CAP: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error(transparent)]
    Adg(#[from] AdgError),
    #[error(transparent)]
    Field(#[from] GfError),
    #[error("brute force is limited to {ORACLE_MAX_N} vertices, got {0}")]
    OracleCeiling(usize),
    #[error("{0}")]
    Invalid(String),
}

/// Concrete evidence for a failed check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Witness {
    MissingPair {
        a: u32,
        b: u32,
    },
    ExtraCross {
        a: u32,
        b: u32,
        edges: u64,
    },
    WithinEdge {
        class: u32,
        u: u32,
        v: u32,
    },
    Cycle {
        length: usize,
        vertices: Vec<u32>,
    },
    Degree {
        vertex: u32,
        expected: usize,
        found: usize,
    },
    Relation {
        name: String,
        detail: String,
    },
    Polarity {
        violation: PolarityViolation,
    },
}

pub(crate) fn relation(name: &str, detail: impl Into<String>) -> Witness {
    Witness::Relation {
        name: name.to_string(),
        detail: detail.into(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionVerdict {
    pub r: u32,
    pub complete: bool,
    pub achromatic: bool,
    pub optimally_complete: bool,
    pub witnesses: Vec<Witness>,
}

pub fn binom2(r: u64) -> u64 {
    r * r.saturating_sub(1) / 2
}

/// Complete: every pair of classes is joined. Achromatic: also no edge
/// inside a class. Optimally complete: also exactly one edge per pair and
/// `e(G) = C(r, 2)`. Loops are ignored throughout.
pub fn verdict(g: &Graph, part: &Partition) -> Result<PartitionVerdict, VerifyError> {
    let pm = pair_edge_matrix(g, part)?;
    let r = part.class_count();
    let mut witnesses = Vec::new();
    let missing: Vec<_> = pm.pairs().filter(|&(_, _, c)| c == 0).collect();
    let extra: Vec<_> = pm.pairs().filter(|&(_, _, c)| c > 1).collect();
    witnesses.extend(
        missing
            .iter()
            .take(WITNESS_CAP)
            .map(|&(a, b, _)| Witness::MissingPair { a, b }),
    );
    let within = pm.total_within();
    if within > 0 {
        witnesses.extend(
            g.edges()
                .filter(|&(u, v)| part.class_of(u) == part.class_of(v))
                .take(WITNESS_CAP)
                .map(|(u, v)| Witness::WithinEdge {
                    class: part.class_of(u),
                    u,
                    v,
                }),
        );
    }
    let complete = missing.is_empty();
    let achromatic = complete && within == 0;
    let counts_match = g.edge_count() as u64 == binom2(r as u64);
    let optimally_complete = achromatic && extra.is_empty() && counts_match;
    if achromatic && !optimally_complete {
        witnesses.extend(
            extra
                .iter()
                .take(WITNESS_CAP)
                .map(|&(a, b, edges)| Witness::ExtraCross { a, b, edges }),
        );
        if !counts_match {
            witnesses.push(relation(
                "edge_count",
                format!(
                    "{} edges but C({r}, 2) = {}",
                    g.edge_count(),
                    binom2(r as u64)
                ),
            ));
        }
    }
    Ok(PartitionVerdict {
        r,
        complete,
        achromatic,
        optimally_complete,
        witnesses,
    })
}

/// Necessary condition for a complete partition into `r` parts of a graph
/// with `n` vertices and maximum degree `delta`: `⌊n/r⌋·Δ ≥ r − 1`.
pub fn proposition_bound(n: u64, delta: u64, r: u64) -> bool {
    assert!(r >= 1, "a partition has at least one part");
    (n / r) as u128 * delta as u128 >= (r - 1) as u128
}

/// Largest `r` with `C(r, 2) ≤ e`, i.e. `⌊√(2e + 1/4) + 1/2⌋`.
pub fn binom_ub(e: u64) -> u64 {
    let disc = 1 + 8 * e as u128;
    let mut r = ((1 + disc.isqrt()) / 2) as u64;
    while binom2(r + 1) <= e {
        r += 1;
    }
    while r > 0 && binom2(r) > e {
        r -= 1;
    }
    r
}

/// `ψ / √(2e)` with exact comparisons against `1/√2` and `1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Eq6 {
    pub psi_lower: u64,
    pub edges: u64,
    pub value: f64,
    pub at_least_inv_sqrt2: bool,
    pub at_least_one: bool,
}

pub fn ratio_eq6(psi_lower: u64, edges: u64) -> Result<Eq6, VerifyError> {
    if edges == 0 {
        return Err(VerifyError::Invalid(
            "the ratio needs at least one edge".into(),
        ));
    }
    let sq = psi_lower as u128 * psi_lower as u128;
    Ok(Eq6 {
        psi_lower,
        edges,
        value: psi_lower as f64 / (2.0 * edges as f64).sqrt(),
        at_least_inv_sqrt2: sq >= edges as u128,
        at_least_one: sq >= 2 * edges as u128,
    })
}

/// Outcome of a search for cycles of one length.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "status")]
pub enum CycleStatus {
    Pass,
    Fail {
        witness: Vec<u32>,
    },
    Sampled {
        starts: u32,
        seed: u64,
        found: Option<Vec<u32>>,
    },
    Skipped,
}

impl CycleStatus {
    pub fn ok(&self) -> bool {
        matches!(
            self,
            CycleStatus::Pass | CycleStatus::Skipped | CycleStatus::Sampled { found: None, .. }
        )
    }
}

pub fn cycle_name(len: usize) -> String {
    format!("C{len}")
}

/// Exact searches for the given cycle lengths; lengths not listed among
/// `C4, C6, C8, C10` are reported as skipped.
pub fn exact_cycle_checks(g: &Graph, lengths: &[usize]) -> BTreeMap<String, CycleStatus> {
    [4, 6, 8, 10]
        .into_iter()
        .map(|len| {
            let status = if !lengths.contains(&len) {
                CycleStatus::Skipped
            } else {
                let found = if len == 4 {
                    contains_c4(g).map(|c| c.to_vec())
                } else {
                    find_cycle_of_length(g, len)
                };
                match found {
                    Some(witness) => CycleStatus::Fail { witness },
                    None => CycleStatus::Pass,
                }
            };
            (cycle_name(len), status)
        })
        .collect()
}

/// Polarity graphs up to this many vertices get exact searches for cycles
/// longer than four and the girth relations.
pub const EXACT_CYCLE_LIMIT: usize = 5000;

/// Exact for `C4` and for every length on graphs within
/// [`EXACT_CYCLE_LIMIT`]; longer cycles in bigger graphs are searched from
/// seeded sample starts.
pub fn cycle_checks(
    g: &Graph,
    lengths: &[usize],
    starts: u32,
    seed: u64,
) -> BTreeMap<String, CycleStatus> {
    if g.n() <= EXACT_CYCLE_LIMIT {
        return exact_cycle_checks(g, lengths);
    }
    let long: Vec<usize> = lengths.iter().copied().filter(|&l| l > 4).collect();
    let mut out = sampled_cycle_checks(g, &long, starts, seed);
    if lengths.contains(&4) {
        out.extend(
            exact_cycle_checks(g, &[4])
                .into_iter()
                .filter(|(k, _)| k == "C4"),
        );
    }
    out
}

/// Meet-in-the-middle searches through `starts` random vertices per length.
pub fn sampled_cycle_checks<G: ImplicitGraph + ?Sized>(
    g: &G,
    lengths: &[usize],
    starts: u32,
    seed: u64,
) -> BTreeMap<String, CycleStatus> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = g.vertex_count() as u32;
    [4, 6, 8, 10]
        .into_iter()
        .map(|len| {
            let status = if !lengths.contains(&len) {
                CycleStatus::Skipped
            } else {
                let vs: Vec<u32> = (0..starts).map(|_| rng.gen_range(0..n)).collect();
                let found = vs
                    .iter()
                    .find_map(|&s| find_even_cycle_through(g, s, len as u32 / 2));
                CycleStatus::Sampled {
                    starts,
                    seed,
                    found,
                }
            };
            (cycle_name(len), status)
        })
        .collect()
}

/// Relations between a bipartite graph `Γ` (points first) and its polarity
/// graph `Γ^π`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LuwReport {
    /// `deg_{Γ^π}(p) = deg_Γ(p) − 1` on absolute points, equal elsewhere.
    pub degree_relation: bool,
    pub incidences: u64,
    pub polarity_edges: u64,
    pub absolute: u64,
    /// `|E(Γ)| = 2·e(Γ^π) + N_π`.
    pub incidence_reconciled: bool,
    /// `e(Γ^π) − (|E(Γ)| − N_π)`; zero iff the unhalved form holds.
    pub literal_difference: i64,
    pub literal_holds: bool,
    pub girth_bipartite: Option<u32>,
    pub girth_polarity: Option<u32>,
    /// `girth(Γ^π) ≥ girth(Γ)/2`.
    pub girth_relation: bool,
    pub cycles_checked: bool,
    /// For each `C_2k` with `2k` below the girth of `Γ`: is `Γ^π` free of it.
    pub cycle_transfer: BTreeMap<String, bool>,
    pub witnesses: Vec<Witness>,
}

impl LuwReport {
    pub fn passes(&self) -> bool {
        self.degree_relation
            && self.incidence_reconciled
            && self.girth_relation
            && self.cycle_transfer.values().all(|&ok| ok)
    }
}

pub fn luw_report(g: &Graph, gp: &Graph, absolute: &[u32]) -> Result<LuwReport, VerifyError> {
    luw_report_with(g, gp, absolute, true)
}

/// As [`luw_report`]; without `cycles` the girth and cycle-transfer
/// relations are left unchecked (`cycles_checked = false`).
pub fn luw_report_with(
    g: &Graph,
    gp: &Graph,
    absolute: &[u32],
    cycles: bool,
) -> Result<LuwReport, VerifyError> {
    let n = gp.n();
    if g.n() != 2 * n {
        return Err(VerifyError::Invalid(format!(
            "bipartite graph has {} vertices, expected twice the {n} points",
            g.n()
        )));
    }
    let mut is_abs = vec![false; n];
    for &v in absolute {
        is_abs[v as usize] = true;
    }
    let mut witnesses = Vec::new();
    for p in 0..n as u32 {
        let expected = g.neighbors(p).len() - is_abs[p as usize] as usize;
        let found = gp.neighbors(p).len();
        if found != expected && witnesses.len() < WITNESS_CAP {
            witnesses.push(Witness::Degree {
                vertex: p,
                expected,
                found,
            });
        }
    }
    let degree_relation = witnesses.is_empty();
    let incidences = g.edge_count() as u64;
    let polarity_edges = gp.edge_count() as u64;
    let nabs = absolute.len() as u64;
    let incidence_reconciled = incidences == 2 * polarity_edges + nabs;
    if !incidence_reconciled {
        witnesses.push(relation(
            "incidences",
            format!("{incidences} != 2·{polarity_edges} + {nabs}"),
        ));
    }
    let literal_difference = polarity_edges as i64 - (incidences as i64 - nabs as i64);
    let (girth_bipartite, girth_polarity) = if cycles {
        (girth(g), girth(gp))
    } else {
        (None, None)
    };
    let girth_relation = match (girth_bipartite, girth_polarity) {
        (Some(a), Some(b)) => 2 * b >= a,
        _ => true,
    };
    let mut cycle_transfer = BTreeMap::new();
    let limit = if cycles {
        girth_bipartite.unwrap_or(11) as usize
    } else {
        0
    };
    for len in [4usize, 6, 8, 10].into_iter().filter(|&len| len < limit) {
        let found = if len == 4 {
            contains_c4(gp).map(|c| c.to_vec())
        } else {
            find_cycle_of_length(gp, len)
        };
        if let Some(vertices) = &found {
            witnesses.push(Witness::Cycle {
                length: len,
                vertices: vertices.clone(),
            });
        }
        cycle_transfer.insert(cycle_name(len), found.is_none());
    }
    Ok(LuwReport {
        degree_relation,
        incidences,
        polarity_edges,
        absolute: nabs,
        incidence_reconciled,
        literal_difference,
        literal_holds: literal_difference == 0,
        girth_bipartite,
        girth_polarity,
        girth_relation,
        cycles_checked: cycles,
        cycle_transfer,
        witnesses,
    })
}

/// An `(r, k)`-graph record: a complete partition into `r` parts of size at
/// most `k` in a graph free of the listed cycles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub family: Family,
    pub q: u64,
    pub r: u64,
    pub k: u64,
    pub forbidden: Vec<String>,
    pub checks: BTreeMap<String, CycleStatus>,
    /// Every listed check passed, or found nothing in its samples.
    pub holds: bool,
    pub sampled: bool,
}

pub fn forbidden_lengths(family: Family) -> Result<Vec<usize>, VerifyError> {
    match family {
        Family::Plane => Ok(vec![4]),
        Family::Gq => Ok(vec![4, 6]),
        Family::Gh => Ok(vec![4, 6, 8, 10]),
        other => Err(VerifyError::Invalid(format!(
            "no (r, k) record for family {other}"
        ))),
    }
}

pub fn witness_record(
    family: Family,
    q: u64,
    complete: bool,
    cycles: &BTreeMap<String, CycleStatus>,
) -> Result<WitnessRecord, VerifyError> {
    let lengths = forbidden_lengths(family)?;
    if !complete {
        return Err(VerifyError::Invalid(
            "the partition was not verified complete".into(),
        ));
    }
    let (r, k) = match family {
        Family::Plane => (q.pow(3), q),
        Family::Gq => (q * q, q),
        _ => (q.pow(3), q * q),
    };
    let forbidden: Vec<String> = lengths.iter().map(|&l| cycle_name(l)).collect();
    let checks: BTreeMap<_, _> = forbidden
        .iter()
        .map(|name| {
            (
                name.clone(),
                cycles.get(name).cloned().unwrap_or(CycleStatus::Skipped),
            )
        })
        .collect();
    let holds = checks
        .values()
        .all(|s| s.ok() && *s != CycleStatus::Skipped);
    let sampled = checks
        .values()
        .any(|s| matches!(s, CycleStatus::Sampled { .. }));
    Ok(WitnessRecord {
        family,
        q,
        r,
        k,
        forbidden,
        checks,
        holds,
        sampled,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c4() -> Graph {
        Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)], []).unwrap()
    }

    #[test]
    fn c4_with_a_merged_pair() {
        // Classes {v1}, {v2}, {v3, v4} on the cycle v1 v2 v3 v4.
        let p = Partition::new(vec![0, 1, 2, 2], 3).unwrap();
        let v = verdict(&c4(), &p).unwrap();
        assert!(v.complete && !v.achromatic && !v.optimally_complete);
        assert_eq!(
            v.witnesses,
            vec![Witness::WithinEdge {
                class: 2,
                u: 2,
                v: 3
            }]
        );
    }

    #[test]
    fn triangle_singletons_are_optimal() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)], [1]).unwrap();
        let v = verdict(&g, &Partition::new(vec![0, 1, 2], 3).unwrap()).unwrap();
        assert!(v.optimally_complete && v.witnesses.is_empty());
    }

    #[test]
    fn missing_pair_is_named() {
        let g = Graph::from_edges(3, [(0, 1)], []).unwrap();
        let v = verdict(&g, &Partition::new(vec![0, 1, 2], 3).unwrap()).unwrap();
        assert!(!v.complete);
        assert_eq!(v.witnesses[0], Witness::MissingPair { a: 0, b: 2 });
    }

    #[test]
    fn proposition_arithmetic() {
        assert!(proposition_bound(512, 8, 64));
        assert!(!proposition_bound(512, 8, 65));
        let q: u64 = 27;
        assert!(!proposition_bound(q.pow(5), q, q.pow(3) + 1));
        assert!(proposition_bound(q.pow(5), q, q.pow(3)));
    }

    #[test]
    fn binomial_bound() {
        assert_eq!(binom_ub(0), 1);
        assert_eq!(binom_ub(28), 8);
        assert_eq!(binom_ub(27), 7);
        assert_eq!(binom_ub(351), 27);
        for e in 0..2000u64 {
            let r = binom_ub(e);
            assert!(binom2(r) <= e && binom2(r + 1) > e);
            let float = ((2.0 * e as f64 + 0.25).sqrt() + 0.5).floor() as u64;
            assert_eq!(r, float);
        }
    }

    #[test]
    fn eq6_values() {
        let r = ratio_eq6(8, 28).unwrap();
        assert!((r.value - 8.0 / 56f64.sqrt()).abs() < 1e-12);
        assert!(r.at_least_one && r.at_least_inv_sqrt2);
        // Exactly 1/√2: ψ² = e.
        let r = ratio_eq6(4, 16).unwrap();
        assert!(r.at_least_inv_sqrt2 && !r.at_least_one);
        assert!(!ratio_eq6(3, 16).unwrap().at_least_inv_sqrt2);
        assert!(ratio_eq6(1, 0).is_err());
    }

    #[test]
    fn records_need_a_complete_partition() {
        let cycles = exact_cycle_checks(&c4(), &[4]);
        assert!(matches!(cycles["C4"], CycleStatus::Fail { .. }));
        assert_eq!(cycles["C6"], CycleStatus::Skipped);
        assert!(witness_record(Family::Plane, 2, false, &cycles).is_err());
        let rec = witness_record(Family::Plane, 2, true, &cycles).unwrap();
        assert_eq!((rec.r, rec.k, rec.holds), (8, 2, false));
        assert!(witness_record(Family::Generic, 2, true, &cycles).is_err());
    }
}
