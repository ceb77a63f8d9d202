//! Polarities given by coordinate permutations with Frobenius twists, their
//! validation, and the resulting polarity graphs.

use super::{AdgError, AdgSpec, BiVertex, Side, VertexCodec};
use crate::gf::{Fe, FieldCtx};
use crate::graphs::ImplicitGraph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt;

/// Output coordinate `source^(p^frobenius)`, `source` 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoordRule {
    pub source: usize,
    pub frobenius: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SideRule {
    pub target: Side,
    pub coords: Vec<CoordRule>,
}

impl SideRule {
    #[inline]
    fn map(&self, f: &FieldCtx, src: &[Fe], out: &mut [Fe]) {
        for (o, r) in out.iter_mut().zip(&self.coords) {
            *o = f.frobenius(src[r.source - 1], r.frobenius);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolaritySpec {
    pub point_to_line: SideRule,
    pub line_to_point: SideRule,
}

impl PolaritySpec {
    /// Points go to lines and back; each side given as `(source, frobenius)`
    /// pairs.
    pub fn swapping(
        point_to_line: &[(usize, u32)],
        line_to_point: &[(usize, u32)],
    ) -> PolaritySpec {
        let rule = |target, rs: &[(usize, u32)]| SideRule {
            target,
            coords: rs
                .iter()
                .map(|&(source, frobenius)| CoordRule { source, frobenius })
                .collect(),
        };
        PolaritySpec {
            point_to_line: rule(Side::Line, point_to_line),
            line_to_point: rule(Side::Point, line_to_point),
        }
    }

    /// `(p_1..p_m) ↦ [p_1^(p^j)..p_m^(p^j)]` and likewise on lines.
    pub fn coordinatewise(m: usize, frobenius: u32) -> PolaritySpec {
        let rs: Vec<_> = (1..=m).map(|i| (i, frobenius)).collect();
        PolaritySpec::swapping(&rs, &rs)
    }

    pub fn validate(&self, m: usize) -> Result<(), AdgError> {
        for rule in [&self.point_to_line, &self.line_to_point] {
            if rule.coords.len() != m {
                return Err(AdgError::DimensionMismatch {
                    got: rule.coords.len(),
                    m,
                });
            }
            if let Some(r) = rule.coords.iter().find(|r| r.source == 0 || r.source > m) {
                return Err(AdgError::InvalidParameter(format!(
                    "polarity source coordinate {} outside 1..={m}",
                    r.source
                )));
            }
        }
        Ok(())
    }

    pub fn apply(&self, f: &FieldCtx, v: &BiVertex) -> BiVertex {
        let rule = self.rule_for(v.side);
        let mut coords = vec![Fe::ZERO; v.coords.len()];
        rule.map(f, &v.coords, &mut coords);
        BiVertex {
            side: rule.target,
            coords,
        }
    }

    fn rule_for(&self, side: Side) -> &SideRule {
        match side {
            Side::Point => &self.point_to_line,
            Side::Line => &self.line_to_point,
        }
    }

    /// Coordinates of `π(p)`, assuming `π` sends points to lines.
    #[inline]
    pub fn polar_line(&self, f: &FieldCtx, point: &[Fe], out: &mut [Fe]) {
        self.point_to_line.map(f, point, out);
    }

    #[inline]
    pub fn polar_point(&self, f: &FieldCtx, line: &[Fe], out: &mut [Fe]) {
        self.line_to_point.map(f, line, out);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum CheckMode {
    Exhaustive,
    Sampled { samples: u64, seed: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PolarityClause {
    SwapsSides,
    Involution,
    PreservesIncidence,
}

impl fmt::Display for PolarityClause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PolarityClause::SwapsSides => "(i) the map does not exchange points and lines",
            PolarityClause::Involution => "(ii) the map is not an involution",
            PolarityClause::PreservesIncidence => "(iii) the map does not preserve incidence",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolarityViolation {
    pub clause: PolarityClause,
    pub witness: Vec<BiVertex>,
}

impl fmt::Display for PolarityViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "polarity check failed: {}; witness", self.clause)?;
        for v in &self.witness {
            write!(f, " {v}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolarityReport {
    pub mode: CheckMode,
    pub points_checked: u64,
    pub incidences_checked: u64,
}

fn violation(clause: PolarityClause, witness: Vec<BiVertex>) -> AdgError {
    AdgError::Polarity(PolarityViolation { clause, witness })
}

/// Checks clauses (ii) and (iii) around one point: the point itself and the
/// lines through it with the given first coordinates.
fn check_around(
    spec: &AdgSpec,
    pol: &PolaritySpec,
    point: &[Fe],
    firsts: &mut dyn Iterator<Item = Fe>,
) -> Option<PolarityViolation> {
    let f = &**spec.field();
    let m = spec.m();
    let mut pl = vec![Fe::ZERO; m];
    let mut back = vec![Fe::ZERO; m];
    pol.polar_line(f, point, &mut pl);
    pol.polar_point(f, &pl, &mut back);
    if back != point {
        return Some(PolarityViolation {
            clause: PolarityClause::Involution,
            witness: vec![
                BiVertex::point(point.to_vec()),
                BiVertex::line(pl),
                BiVertex::point(back),
            ],
        });
    }
    let mut line = vec![Fe::ZERO; m];
    let mut lp = vec![Fe::ZERO; m];
    for l1 in firsts {
        spec.line_through(point, l1, &mut line);
        pol.polar_point(f, &line, &mut lp);
        pol.polar_line(f, &lp, &mut back);
        if back != line {
            return Some(PolarityViolation {
                clause: PolarityClause::Involution,
                witness: vec![
                    BiVertex::line(line),
                    BiVertex::point(lp),
                    BiVertex::line(back),
                ],
            });
        }
        if !spec.is_incident(&lp, &pl) {
            return Some(PolarityViolation {
                clause: PolarityClause::PreservesIncidence,
                witness: vec![
                    BiVertex::point(point.to_vec()),
                    BiVertex::line(line),
                    BiVertex::line(pl),
                    BiVertex::point(lp),
                ],
            });
        }
    }
    None
}

/// Verifies that `pol` exchanges points and lines, squares to the identity
/// and maps incident pairs to incident pairs. Exhaustive mode visits every
/// incidence; sampled mode draws random incidences from a seeded generator.
pub fn check_polarity(
    spec: &AdgSpec,
    pol: &PolaritySpec,
    mode: CheckMode,
) -> Result<PolarityReport, AdgError> {
    let m = spec.m();
    pol.validate(m)?;
    let f = spec.field();
    for side in [Side::Point, Side::Line] {
        if pol.rule_for(side).target == side {
            let v = BiVertex {
                side,
                coords: vec![Fe::ZERO; m],
            };
            let image = pol.apply(f, &v);
            return Err(violation(PolarityClause::SwapsSides, vec![v, image]));
        }
    }
    let q = spec.q() as u64;
    match mode {
        CheckMode::Exhaustive => {
            let codec = spec.codec()?;
            let bad = (0..codec.count())
                .into_par_iter()
                .map(|id| {
                    let point = codec.decode_vec(id);
                    check_around(spec, pol, &point, &mut f.elements())
                })
                .find_first(Option::is_some)
                .flatten();
            if let Some(v) = bad {
                return Err(AdgError::Polarity(v));
            }
            let n = codec.count() as u64;
            Ok(PolarityReport {
                mode,
                points_checked: n,
                incidences_checked: n * q,
            })
        }
        CheckMode::Sampled { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let draws: Vec<(Vec<Fe>, Fe)> = (0..samples)
                .map(|_| {
                    let point = (0..m).map(|_| Fe(rng.gen_range(0..q as u32))).collect();
                    (point, Fe(rng.gen_range(0..q as u32)))
                })
                .collect();
            let bad = draws
                .par_iter()
                .map(|(point, l1)| check_around(spec, pol, point, &mut std::iter::once(*l1)))
                .find_first(Option::is_some)
                .flatten();
            if let Some(v) = bad {
                return Err(AdgError::Polarity(v));
            }
            Ok(PolarityReport {
                mode,
                points_checked: samples,
                incidences_checked: samples,
            })
        }
    }
}

/// The polarity graph on points: `p ~ r` iff `r` lies on `π(p)` and `r ≠ p`.
/// Points on their own polar line are absolute and carry a loop.
#[derive(Clone, Debug)]
pub struct PolarityGraph {
    spec: AdgSpec,
    pol: PolaritySpec,
    codec: VertexCodec,
    absolute: Vec<u64>,
    absolute_count: u64,
    check: PolarityReport,
}

/// Validates `pol` in the given mode, then scans every point once for
/// absoluteness.
pub fn build_polarity_graph(
    spec: &AdgSpec,
    pol: &PolaritySpec,
    mode: CheckMode,
) -> Result<PolarityGraph, AdgError> {
    let check = check_polarity(spec, pol, mode)?;
    let codec = spec.codec()?;
    let n = codec.count() as usize;
    let m = spec.m();
    let f = &**spec.field();
    let mut absolute = vec![0u64; n.div_ceil(64)];
    absolute.par_iter_mut().enumerate().for_each(|(w, word)| {
        let mut point = vec![Fe::ZERO; m];
        let mut line = vec![Fe::ZERO; m];
        for bit in 0..64 {
            let id = w * 64 + bit;
            if id >= n {
                break;
            }
            codec.decode(id as u32, &mut point);
            pol.polar_line(f, &point, &mut line);
            if spec.is_incident(&point, &line) {
                *word |= 1 << bit;
            }
        }
    });
    let absolute_count = absolute.iter().map(|w| w.count_ones() as u64).sum();
    Ok(PolarityGraph {
        spec: spec.clone(),
        pol: pol.clone(),
        codec,
        absolute,
        absolute_count,
        check,
    })
}

impl PolarityGraph {
    pub fn spec(&self) -> &AdgSpec {
        &self.spec
    }

    pub fn polarity(&self) -> &PolaritySpec {
        &self.pol
    }

    pub fn codec(&self) -> VertexCodec {
        self.codec
    }

    pub fn check_report(&self) -> &PolarityReport {
        &self.check
    }

    #[inline]
    pub fn is_absolute(&self, v: u32) -> bool {
        self.absolute[v as usize / 64] >> (v % 64) & 1 == 1
    }

    /// `N_π`.
    pub fn absolute_count(&self) -> u64 {
        self.absolute_count
    }

    pub fn absolute_points(&self) -> impl Iterator<Item = u32> + '_ {
        (0..self.codec.count()).filter(|&v| self.is_absolute(v))
    }

    pub fn encode(&self, coords: &[Fe]) -> u32 {
        self.codec.encode(coords)
    }

    pub fn decode(&self, v: u32) -> Vec<Fe> {
        self.codec.decode_vec(v)
    }

    #[inline]
    pub fn polar_line(&self, point: &[Fe], out: &mut [Fe]) {
        self.pol.polar_line(self.spec.field(), point, out);
    }

    /// The point of `π(point)` with first coordinate `r1`, which is `point`
    /// itself when that point is absolute and `r1 = p_1`.
    pub fn neighbor_with_first(&self, point: &[Fe], r1: Fe, out: &mut [Fe]) {
        let mut line = vec![Fe::ZERO; self.spec.m()];
        self.polar_line(point, &mut line);
        self.spec.point_on(&line, r1, out);
    }

    pub fn adjacent(&self, u: u32, v: u32) -> bool {
        if u == v {
            return false;
        }
        let m = self.spec.m();
        let mut line = vec![Fe::ZERO; m];
        self.polar_line(&self.decode(u), &mut line);
        self.spec.is_incident(&self.decode(v), &line)
    }

    /// `q - 1` on absolute points, `q` elsewhere.
    pub fn degree(&self, v: u32) -> usize {
        self.spec.q() as usize - self.is_absolute(v) as usize
    }
}

impl ImplicitGraph for PolarityGraph {
    fn vertex_count(&self) -> usize {
        self.codec.count() as usize
    }

    fn for_each_neighbor(&self, v: u32, f: &mut dyn FnMut(u32)) {
        let m = self.spec.m();
        let mut point = vec![Fe::ZERO; m];
        let mut line = vec![Fe::ZERO; m];
        let mut out = vec![Fe::ZERO; m];
        self.codec.decode(v, &mut point);
        self.polar_line(&point, &mut line);
        for r1 in self.spec.field().elements() {
            self.spec.point_on(&line, r1, &mut out);
            let u = self.codec.encode(&out);
            if u != v {
                f(u);
            }
        }
    }

    fn has_loop(&self, v: u32) -> bool {
        self.is_absolute(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adg::{l, p};
    use crate::gf::make_field;
    use crate::graphs::materialize;

    fn plane4() -> AdgSpec {
        AdgSpec::new(make_field(2, 2).unwrap(), vec![p(1) * l(1)]).unwrap()
    }

    #[test]
    fn unitary_polarity_passes_both_modes() {
        let s = plane4();
        let pol = PolaritySpec::coordinatewise(2, 1);
        let r = check_polarity(&s, &pol, CheckMode::Exhaustive).unwrap();
        assert_eq!((r.points_checked, r.incidences_checked), (16, 64));
        check_polarity(
            &s,
            &pol,
            CheckMode::Sampled {
                samples: 500,
                seed: 3,
            },
        )
        .unwrap();
    }

    #[test]
    fn identity_fails_clause_one() {
        let s = plane4();
        let mut pol = PolaritySpec::coordinatewise(2, 0);
        pol.point_to_line.target = Side::Point;
        match check_polarity(&s, &pol, CheckMode::Exhaustive) {
            Err(AdgError::Polarity(v)) => assert_eq!(v.clause, PolarityClause::SwapsSides),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn non_involution_and_non_automorphism_are_caught() {
        let s = plane4();
        let pol = PolaritySpec::swapping(&[(2, 0), (1, 0)], &[(1, 0), (2, 0)]);
        match check_polarity(&s, &pol, CheckMode::Exhaustive) {
            Err(AdgError::Polarity(v)) => assert_eq!(v.clause, PolarityClause::Involution),
            other => panic!("{other:?}"),
        }
        // Swapping sides verbatim is an involution, but breaks incidence
        // once f_2 is not symmetric.
        let skew = AdgSpec::new(make_field(2, 2).unwrap(), vec![p(1) * l(1) + p(1)]).unwrap();
        let pol = PolaritySpec::coordinatewise(2, 0);
        match check_polarity(&skew, &pol, CheckMode::Exhaustive) {
            Err(AdgError::Polarity(v)) => assert_eq!(v.clause, PolarityClause::PreservesIncidence),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn plane_polarity_graph_counts() {
        let pg = build_polarity_graph(
            &plane4(),
            &PolaritySpec::coordinatewise(2, 1),
            CheckMode::Exhaustive,
        )
        .unwrap();
        assert_eq!(pg.absolute_count(), 8);
        let g = materialize(&pg, 1 << 20).unwrap();
        assert_eq!(g.edge_count(), 28);
        assert_eq!(g.loop_count(), 8);
        for v in 0..16 {
            assert_eq!(g.degree(v).unwrap(), pg.degree(v));
            for u in 0..16 {
                assert_eq!(g.is_edge(u, v), pg.adjacent(u, v));
            }
        }
    }
}
