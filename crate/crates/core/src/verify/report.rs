//! End-to-end reports: build a family, partition it, and check every claim
//! about it, exhaustively when the graph fits under the ceiling and by
//! sampling otherwise.

use super::sampled::{sample_hexagon, SampledConfig};
use super::{
    binom2, binom_ub, cycle_checks, forbidden_lengths, luw_report, luw_report_with,
    proposition_bound, ratio_eq6, relation, sampled_cycle_checks, verdict, witness_record,
    CycleStatus, Eq6, LuwReport, PartitionVerdict, VerifyError, Witness, WitnessRecord,
    EXACT_CYCLE_LIMIT,
};
use crate::adg::{
    build_polarity_graph, generic_conjugation_polarity, gh_family, gh_original_family,
    gh_spec_over, gq_family, is_point_line_symmetric, phi, plane_family, AdgError, AdgSpec,
    BipartiteGraph, CheckMode, Family, PolarityGraph, PolaritySpec, SymmetryReport,
};
use crate::gf::{find_normal_element, FieldHeader};
use crate::graphs::{materialize, pair_edge_matrix, Graph, GraphError, ImplicitGraph, Partition};
use crate::partitions::{
    general_even_partition, general_odd_partition, general_polarity_partition, gh_partition,
    gh_unique_edge, gq_partition, gq_unique_edge, plane_partition, plane_unique_edge,
    ClassedPartition, UniqueEdge,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    pub q: Option<u64>,
    pub e: Option<u32>,
    pub m: Option<usize>,
    pub field: Option<FieldHeader>,
    pub mode: String,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub n: u64,
    pub edges: u64,
    pub loops: u64,
    pub absolute: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UpperBound {
    /// `C(r + 1, 2)` exceeds the edge count.
    EdgeCount,
    /// `⌊n/(r+1)⌋·Δ < r`.
    Proposition,
}

/// `χ_a = ψ = value`: the lower bound is an optimally complete partition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub value: u64,
    pub upper: UpperBound,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prop1 {
    pub n: u64,
    pub max_degree: u64,
    pub r: u64,
    pub holds_at_r: bool,
    pub holds_at_r_plus_one: bool,
}

impl Prop1 {
    fn new(n: u64, max_degree: u64, r: u64) -> Prop1 {
        Prop1 {
            n,
            max_degree,
            r,
            holds_at_r: proposition_bound(n, max_degree, r),
            holds_at_r_plus_one: proposition_bound(n, max_degree, r + 1),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Bounds {
    pub r: u64,
    pub binom_ub: u64,
    pub prop1: Option<Prop1>,
    pub eq6_ratio: BTreeMap<String, Eq6>,
    pub certified: Option<Certificate>,
}

impl Bounds {
    fn new(r: u64, edges: u64, prop1: Option<Prop1>) -> Bounds {
        Bounds {
            r,
            binom_ub: binom_ub(edges),
            prop1,
            eq6_ratio: BTreeMap::new(),
            certified: None,
        }
    }

    fn certify(&mut self, optimal: bool) {
        self.certified = if !optimal {
            None
        } else if self.binom_ub == self.r {
            Some(Certificate {
                value: self.r,
                upper: UpperBound::EdgeCount,
            })
        } else if self.prop1.is_some_and(|p| !p.holds_at_r_plus_one) {
            Some(Certificate {
                value: self.r,
                upper: UpperBound::Proposition,
            })
        } else {
            None
        };
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub family: Family,
    pub params: Params,
    pub counts: Counts,
    pub verdicts: BTreeMap<String, bool>,
    pub bounds: Option<Bounds>,
    pub cycles: BTreeMap<String, CycleStatus>,
    pub degree_histogram: BTreeMap<u64, u64>,
    pub luw: Option<LuwReport>,
    pub ledger: Option<WitnessRecord>,
    pub symmetry: Option<SymmetryReport>,
    pub sampling: Option<SampledConfig>,
    pub witnesses: Vec<Witness>,
    pub seeds: Vec<u64>,
}

impl VerificationReport {
    fn new(family: Family, params: Params) -> VerificationReport {
        VerificationReport {
            family,
            params,
            counts: Counts::default(),
            verdicts: BTreeMap::new(),
            bounds: None,
            cycles: BTreeMap::new(),
            degree_histogram: BTreeMap::new(),
            luw: None,
            ledger: None,
            symmetry: None,
            sampling: None,
            witnesses: Vec::new(),
            seeds: Vec::new(),
        }
    }

    /// Every verdict holds and no forbidden cycle was found.
    pub fn passed(&self) -> bool {
        self.verdicts.values().all(|&v| v)
            && self.cycles.values().all(CycleStatus::ok)
            && self.ledger.as_ref().is_none_or(|l| l.holds)
    }

    fn set(&mut self, name: &str, value: bool) {
        self.verdicts.insert(name.to_string(), value);
    }

    fn record_partition(&mut self, prefix: &str, v: PartitionVerdict) {
        self.set(&format!("{prefix}complete"), v.complete);
        self.set(&format!("{prefix}achromatic"), v.achromatic);
        self.set(&format!("{prefix}optimally_complete"), v.optimally_complete);
        self.witnesses.extend(v.witnesses);
    }

    fn record_eq6(&mut self, name: &str, r: u64, edges: u64) -> Result<(), VerifyError> {
        let eq6 = ratio_eq6(r, edges)?;
        self.set(
            &format!("{name}.eq6_at_least_inv_sqrt2"),
            eq6.at_least_inv_sqrt2,
        );
        if let Some(b) = self.bounds.as_mut() {
            b.eq6_ratio.insert(name.to_string(), eq6);
        }
        Ok(())
    }
}

/// Inputs for a family report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyParams {
    pub family: Family,
    pub q: Option<u64>,
    pub e: Option<u32>,
    /// Check the polarity on samples, and route the hexagon to the sampled
    /// pipeline even when it would fit.
    pub sampled: bool,
    pub allow_small_e: bool,
    pub ceiling: usize,
    pub sampling: SampledConfig,
}

impl FamilyParams {
    pub fn new(family: Family) -> FamilyParams {
        FamilyParams {
            family,
            q: None,
            e: None,
            sampled: false,
            allow_small_e: false,
            ceiling: 2_000_000,
            sampling: SampledConfig::with_seed(0),
        }
    }

    /// `e` given directly or read off `q = base^(2e+1)`.
    pub fn exponent(&self, base: u64) -> Result<u32, VerifyError> {
        match (self.e, self.q) {
            (Some(e), None) => Ok(e),
            (e, Some(q)) => {
                let mut k = 0;
                let mut x = 1u64;
                while x < q {
                    x = x.saturating_mul(base);
                    k += 1;
                }
                if x != q || k % 2 == 0 {
                    return Err(VerifyError::Invalid(format!(
                        "q = {q} is not {base}^(2e+1)"
                    )));
                }
                let from_q = (k - 1) / 2;
                match e {
                    Some(e) if e != from_q => Err(VerifyError::Invalid(format!(
                        "q = {q} does not match e = {e}"
                    ))),
                    _ => Ok(from_q),
                }
            }
            (None, None) => Err(VerifyError::Invalid("give q or e".into())),
        }
    }

    fn check_mode(&self) -> CheckMode {
        if self.sampled {
            CheckMode::Sampled {
                samples: self.sampling.polarity_samples,
                seed: self.sampling.seed,
            }
        } else {
            CheckMode::Exhaustive
        }
    }

    fn mode_name(&self) -> String {
        if self.sampled {
            "sampled"
        } else {
            "exhaustive"
        }
        .to_string()
    }
}

pub fn family_report(fp: &FamilyParams) -> Result<VerificationReport, VerifyError> {
    match fp.family {
        Family::Plane => {
            let q =
                fp.q.ok_or_else(|| VerifyError::Invalid("the plane needs q".into()))?;
            let (spec, pol) = plane_family(q)?;
            polarity_report(fp, q, None, &spec, &pol)
        }
        Family::Gq => {
            let e = fp.exponent(2)?;
            let (spec, pol) = gq_family(e, fp.allow_small_e)?;
            polarity_report(fp, spec.q() as u64, Some(e), &spec, &pol)
        }
        Family::Gh => {
            let e = fp.exponent(3)?;
            let (spec, pol) = gh_family(e, fp.allow_small_e)?;
            let q = spec.q() as u64;
            if fp.sampled || q.pow(5) > fp.ceiling as u64 {
                hexagon_sampled_report(fp, e, &spec, &pol)
            } else {
                polarity_report(fp, q, Some(e), &spec, &pol)
            }
        }
        Family::GhOriginal => {
            let q =
                fp.q.ok_or_else(|| VerifyError::Invalid("the original hexagon needs q".into()))?;
            gh_original_report(q, fp.ceiling)
        }
        Family::Generic => Err(VerifyError::Invalid(
            "the generic family needs a spec file".into(),
        )),
    }
}

fn params(fp: &FamilyParams, q: u64, e: Option<u32>, spec: &AdgSpec) -> Params {
    Params {
        q: Some(q),
        e,
        m: Some(spec.m()),
        field: Some(spec.field().header()),
        mode: fp.mode_name(),
    }
}

/// Builds the polarity graph, or a failing report naming the violated clause.
fn polarity_graph(
    spec: &AdgSpec,
    pol: &PolaritySpec,
    mode: CheckMode,
    report: &mut VerificationReport,
) -> Result<Option<PolarityGraph>, VerifyError> {
    match build_polarity_graph(spec, pol, mode) {
        Ok(pg) => {
            report.set("polarity", true);
            Ok(Some(pg))
        }
        Err(AdgError::Polarity(violation)) => {
            report.set("polarity", false);
            report.witnesses.push(Witness::Polarity { violation });
            Ok(None)
        }
        Err(e) => Err(e.into()),
    }
}

fn family_partition(
    family: Family,
    spec: &AdgSpec,
) -> Result<(ClassedPartition, UniqueEdgeFn), VerifyError> {
    let f = spec.field().clone();
    Ok(match family {
        Family::Plane => {
            let basis = find_normal_element(spec.field())?;
            let part = plane_partition(spec, &basis)?;
            (part, Box::new(move |a, b| plane_unique_edge(a, b, &basis)))
        }
        Family::Gq => (
            gq_partition(spec)?,
            Box::new(move |a, b| gq_unique_edge(&f, a, b)),
        ),
        _ => (
            gh_partition(spec)?,
            Box::new(move |a, b| gh_unique_edge(&f, a, b)),
        ),
    })
}

type UniqueEdgeFn = Box<
    dyn Fn(
            &crate::partitions::ClassKey,
            &crate::partitions::ClassKey,
        ) -> Result<UniqueEdge, crate::partitions::PartitionError>
        + Sync,
>;

/// Checks the closed form against the explicit graph for every pair of
/// classes; with one edge per pair this pins down the edge exactly.
fn unique_edges_match(
    g: &Graph,
    pg: &PolarityGraph,
    part: &ClassedPartition,
    formula: &UniqueEdgeFn,
) -> Result<Vec<Witness>, VerifyError> {
    let r = part.partition.class_count();
    let class = |v: &[crate::gf::Fe]| part.partition.class_of(pg.encode(v));
    let bad: Vec<Witness> = (0..r)
        .into_par_iter()
        .flat_map_iter(|a| {
            (a..r).filter_map(move |b| {
                let ok = match formula(&part.key(a), &part.key(b)) {
                    Ok(UniqueEdge::Edge(x, y)) => {
                        a != b
                            && class(&x) == a
                            && class(&y) == b
                            && g.is_edge(pg.encode(&x), pg.encode(&y))
                    }
                    Ok(UniqueEdge::Loop(x)) => {
                        a == b && class(&x) == a && g.has_loop(pg.encode(&x))
                    }
                    Err(_) => false,
                };
                (!ok).then(|| relation("unique_edge", format!("classes {a} and {b}")))
            })
        })
        .collect();
    Ok(bad)
}

fn polarity_report(
    fp: &FamilyParams,
    q: u64,
    e: Option<u32>,
    spec: &AdgSpec,
    pol: &PolaritySpec,
) -> Result<VerificationReport, VerifyError> {
    let mut report = VerificationReport::new(fp.family, params(fp, q, e, spec));
    if fp.sampled {
        report.seeds.push(fp.sampling.seed);
    }
    let Some(pg) = polarity_graph(spec, pol, fp.check_mode(), &mut report)? else {
        return Ok(report);
    };
    let g = materialize(&pg, fp.ceiling)?;
    let (part, formula) = family_partition(fp.family, spec)?;
    let r = part.partition.class_count() as u64;
    let n = g.n() as u64;
    let edges = g.edge_count() as u64;
    let absolute = pg.absolute_count();
    report.counts = Counts {
        n,
        edges,
        loops: g.loop_count() as u64,
        absolute,
    };

    let order = spec.q() as u64;
    report.degree_histogram = g
        .degree_histogram()
        .into_iter()
        .map(|(d, c)| (d as u64, c as u64))
        .collect();
    let expected: BTreeMap<u64, u64> = [(order - 1, r), (order, n - r)].into_iter().collect();
    report.set(
        "absolute_count",
        absolute == r && g.loop_count() as u64 == r,
    );
    report.set("degree_spectrum", report.degree_histogram == expected);
    report.set("edge_count", edges == binom2(r));

    let v = verdict(&g, &part.partition)?;
    let optimal = v.optimally_complete;
    report.record_partition("", v);
    let pm = pair_edge_matrix(&g, &part.partition)?;
    report.set(
        "one_loop_per_class",
        (0..r as u32).all(|c| pm.loops_within(c) == 1),
    );
    let bad = unique_edges_match(&g, &pg, &part, &formula)?;
    report.set("unique_edge_formula", bad.is_empty());
    report
        .witnesses
        .extend(bad.into_iter().take(super::WITNESS_CAP));

    let mut bounds = Bounds::new(r, edges, Some(Prop1::new(n, g.max_degree() as u64, r)));
    bounds.certify(optimal);
    report.set("tight", bounds.certified.is_some());
    report.bounds = Some(bounds);
    report.record_eq6("polarity", r, edges)?;

    let bip = materialize(&BipartiteGraph::new(spec.clone())?, 2 * fp.ceiling)?;
    let small = g.n() <= EXACT_CYCLE_LIMIT;
    let luw = luw_report_with(&bip, &g, g.loops(), small)?;
    report.set("luw", luw.passes());
    report.luw = Some(luw);

    let lengths = forbidden_lengths(fp.family)?;
    if !small && !report.seeds.contains(&fp.sampling.seed) {
        report.seeds.push(fp.sampling.seed);
    }
    report.cycles = cycle_checks(&g, &lengths, fp.sampling.cycle_starts, fp.sampling.seed);
    let complete = report.verdicts["complete"];
    report.ledger = Some(witness_record(fp.family, q, complete, &report.cycles)?);
    Ok(report)
}

fn hexagon_sampled_report(
    fp: &FamilyParams,
    e: u32,
    spec: &AdgSpec,
    pol: &PolaritySpec,
) -> Result<VerificationReport, VerifyError> {
    let q = spec.q() as u64;
    let mut report = VerificationReport::new(Family::Gh, params(fp, q, Some(e), spec));
    report.params.mode = "sampled".into();
    let cfg = fp.sampling;
    report.seeds.push(cfg.seed);
    report.sampling = Some(cfg);
    let mode = CheckMode::Sampled {
        samples: cfg.polarity_samples,
        seed: cfg.seed,
    };
    let Some(pg) = polarity_graph(spec, pol, mode, &mut report)? else {
        return Ok(report);
    };
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let n = q.pow(5);
    let r = q.pow(3);
    let absolute = pg.absolute_count();
    // Every vertex has q neighbors on its polar line, one of them itself
    // exactly when it is absolute.
    let edges = (q * n - absolute) / 2;
    report.counts = Counts {
        n,
        edges,
        loops: absolute,
        absolute,
    };

    let sample = sample_hexagon(&pg, e, &cfg, &mut rng);
    report.degree_histogram = sample.degree_histogram;
    report.witnesses.extend(sample.witnesses);
    let v = &sample.verdicts;
    let complete = v["sampled_pairs_joined"];
    let achromatic = complete && v["sampled_classes_independent"];
    let optimal = achromatic && v["sampled_pairs_single_edge"] && edges == binom2(r);
    report.verdicts.extend(sample.verdicts);
    report.set("edge_count", edges == binom2(r));
    report.set("complete", complete);
    report.set("achromatic", achromatic);
    report.set("optimally_complete", optimal);

    let mut bounds = Bounds::new(r, edges, Some(Prop1::new(n, q, r)));
    bounds.certify(optimal);
    report.set("tight", bounds.certified.is_some());
    report.bounds = Some(bounds);
    report.record_eq6("polarity", r, edges)?;

    let cycle_seed: u64 = rng.gen();
    report.seeds.push(cycle_seed);
    report.cycles = sampled_cycle_checks(&pg, &[4, 6, 8, 10], cfg.cycle_starts, cycle_seed);
    report.ledger = Some(witness_record(Family::Gh, q, complete, &report.cycles)?);
    Ok(report)
}

/// Checks that `φ` maps the original hexagon coordinatization onto the
/// `p_1, ℓ_1` form: a bijection that keeps sides and carries edges to edges.
pub fn gh_original_report(q: u64, ceiling: usize) -> Result<VerificationReport, VerifyError> {
    let orig = BipartiteGraph::new(gh_original_family(q)?)?;
    let field = orig.spec().field().clone();
    let gh = BipartiteGraph::new(gh_spec_over(field.clone())?)?;
    let n = orig.vertex_count();
    if n > ceiling {
        return Err(GraphError::CeilingExceeded { n, limit: ceiling }.into());
    }
    let half = n as u32 / 2;
    let mut report = VerificationReport::new(
        Family::GhOriginal,
        Params {
            q: Some(q),
            e: None,
            m: Some(5),
            field: Some(field.header()),
            mode: "exhaustive".into(),
        },
    );
    let image: Vec<u32> = (0..n as u32)
        .into_par_iter()
        .map(|v| gh.id_of(&phi(&field, &orig.vertex(v))))
        .collect();
    let mut seen = vec![false; n];
    let mut bijective = true;
    for &w in &image {
        bijective &= !std::mem::replace(&mut seen[w as usize], true);
    }
    let sides = (0..n).all(|v| (v < half as usize) == (image[v] < half));
    let (orig_edges, broken): (u64, Vec<(u32, u32)>) = (0..half)
        .into_par_iter()
        .map(|v| {
            let pv = phi(&field, &orig.vertex(v));
            let nb = orig.neighbors_vec(v);
            let broken: Vec<(u32, u32)> = nb
                .iter()
                .copied()
                .filter(|&u| {
                    !gh.spec()
                        .is_incident(&pv.coords, &phi(&field, &orig.vertex(u)).coords)
                })
                .map(|u| (v, u))
                .collect();
            (nb.len() as u64, broken)
        })
        .reduce(
            || (0, Vec::new()),
            |(a, mut x), (b, y)| {
                x.extend(y);
                (a + b, x)
            },
        );
    let gh_edges: u64 = (0..half)
        .into_par_iter()
        .map(|v| gh.neighbors_vec(v).len() as u64)
        .sum();
    report.counts = Counts {
        n: n as u64,
        edges: orig_edges,
        loops: 0,
        absolute: 0,
    };
    report.set("phi_bijective", bijective);
    report.set("phi_preserves_sides", sides);
    report.set("phi_preserves_adjacency", broken.is_empty());
    report.set(
        "edge_counts_equal",
        orig_edges == gh_edges && orig_edges == q.pow(6),
    );
    report
        .witnesses
        .extend(broken.iter().take(super::WITNESS_CAP).map(|(v, u)| {
            relation(
                "phi_adjacency",
                format!("edge {v} {u} is not mapped to an edge"),
            )
        }));
    Ok(report)
}

/// The general constructions on a user-supplied system: the paired
/// partition of the incidence graph, and for symmetric even-dimensional
/// systems over `F_{q²}` the normal-basis partition of the conjugation
/// polarity graph.
pub fn generic_report(spec: &AdgSpec, ceiling: usize) -> Result<VerificationReport, VerifyError> {
    let m = spec.m();
    let k = spec.field().k();
    let mut report = VerificationReport::new(
        Family::Generic,
        Params {
            q: Some(spec.q() as u64),
            e: None,
            m: Some(m),
            field: Some(spec.field().header()),
            mode: "exhaustive".into(),
        },
    );
    let g = materialize(&BipartiteGraph::new(spec.clone())?, ceiling)?;
    let basis = if k % 2 == 0 {
        Some(find_normal_element(spec.field())?)
    } else {
        None
    };
    let part = if m % 2 == 1 {
        general_odd_partition(spec, None)?
    } else {
        let basis = basis.as_ref().ok_or_else(|| {
            VerifyError::Invalid(format!(
                "even dimension needs a field of square order, got degree {k}"
            ))
        })?;
        general_even_partition(spec, basis)?
    };
    let r = part.partition.class_count() as u64;
    let edges = g.edge_count() as u64;
    report.counts = Counts {
        n: g.n() as u64,
        edges,
        loops: 0,
        absolute: 0,
    };
    let v = verdict(&g, &part.partition)?;
    report.set("bipartite.complete", v.complete);
    report.witnesses.extend(
        v.witnesses
            .into_iter()
            .filter(|w| matches!(w, Witness::MissingPair { .. })),
    );
    report.bounds = Some(Bounds::new(
        r,
        edges,
        Some(Prop1::new(g.n() as u64, g.max_degree() as u64, r)),
    ));
    report.record_eq6("bipartite", r, edges)?;

    let symmetry = is_point_line_symmetric(spec);
    let symmetric = symmetry.symmetric;
    report.symmetry = Some(symmetry);
    let Some(basis) = basis.filter(|_| m % 2 == 0 && symmetric) else {
        return Ok(report);
    };
    let pol = match generic_conjugation_polarity(spec) {
        Ok(pol) => pol,
        Err(AdgError::Polarity(violation)) => {
            report.set("polarity", false);
            report.witnesses.push(Witness::Polarity { violation });
            return Ok(report);
        }
        Err(e) => return Err(e.into()),
    };
    let Some(pg) = polarity_graph(spec, &pol, CheckMode::Exhaustive, &mut report)? else {
        return Ok(report);
    };
    let gp = materialize(&pg, ceiling)?;
    report.counts.absolute = pg.absolute_count();
    report.counts.loops = gp.loop_count() as u64;
    let pp = general_polarity_partition(spec, &basis)?;
    let pr = pp.partition.class_count() as u64;
    let pv = verdict(&gp, &pp.partition)?;
    report.record_partition("polarity.", pv);
    report.record_eq6("polarity", pr, gp.edge_count() as u64)?;
    let luw = luw_report(&g, &gp, gp.loops())?;
    report.set("luw", luw.passes());
    report.luw = Some(luw);
    Ok(report)
}

/// Verdicts for an edge list and partition read from files.
pub fn files_report(
    family: Family,
    g: &Graph,
    part: &Partition,
) -> Result<VerificationReport, VerifyError> {
    let mut report = VerificationReport::new(
        family,
        Params {
            q: None,
            e: None,
            m: None,
            field: None,
            mode: "files".into(),
        },
    );
    let edges = g.edge_count() as u64;
    report.counts = Counts {
        n: g.n() as u64,
        edges,
        loops: g.loop_count() as u64,
        absolute: g.loop_count() as u64,
    };
    let v = verdict(g, part)?;
    let r = v.r as u64;
    let optimal = v.optimally_complete;
    report.record_partition("", v);
    let mut bounds = Bounds::new(
        r,
        edges,
        Some(Prop1::new(g.n() as u64, g.max_degree() as u64, r)),
    );
    bounds.certify(optimal);
    report.bounds = Some(bounds);
    if edges > 0 {
        report.record_eq6("graph", r, edges)?;
    }
    Ok(report)
}
