//! Closed-form vertex partitions of the polarity graphs and of general
//! algebraically defined graphs, with the formulas for the unique edge
//! between two classes.

mod general;

pub use crate::adg::is_point_line_symmetric;
pub use general::{general_even_partition, general_odd_partition, general_polarity_partition};

use crate::adg::{AdgError, AdgSpec, SymmetryWitness, VertexCodec};
use crate::gf::{Fe, FieldCtx, GfError, QuadBasis};
use crate::graphs::{GraphError, Partition};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PartitionError {
    #[error(transparent)]
    Adg(#[from] AdgError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Field(#[from] GfError),
    #[error("the basis belongs to a different field than the system")]
    BasisMismatch,
    #[error("{0}")]
    Unsupported(String),
    #[error("pairing is not a bijection: {0}")]
    PairingNotBijective(String),
    #[error("not point-line-symmetric: {0}")]
    NotSymmetric(SymmetryWitness),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum KeyFamily {
    Plane,
    Gq,
    Gh,
    GeneralOdd,
    GeneralEven,
    GeneralPolarity,
}

/// The coordinates naming one class.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClassKey {
    pub family: KeyFamily,
    pub coords: Vec<Fe>,
}

/// A partition together with the key of each class; class ids are the
/// mixed-radix encodings of the keys.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassedPartition {
    pub family: KeyFamily,
    pub partition: Partition,
    pub keys: Vec<Vec<Fe>>,
}

/// Class id → key coordinates, as written next to a partition file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassSidecar {
    pub family: KeyFamily,
    pub classes: Vec<Vec<Fe>>,
}

impl ClassedPartition {
    pub fn key(&self, class: u32) -> ClassKey {
        ClassKey {
            family: self.family,
            coords: self.keys[class as usize].clone(),
        }
    }

    pub fn sidecar(&self) -> ClassSidecar {
        ClassSidecar {
            family: self.family,
            classes: self.keys.clone(),
        }
    }
}

/// The single edge joining two distinct classes, or the loop vertex when
/// both keys name the same class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UniqueEdge {
    Edge(Vec<Fe>, Vec<Fe>),
    Loop(Vec<Fe>),
}

fn unsupported(msg: impl Into<String>) -> PartitionError {
    PartitionError::Unsupported(msg.into())
}

fn labels(n: u32, class_of: impl Fn(u32) -> u32 + Sync) -> Vec<u32> {
    (0..n).into_par_iter().map(&class_of).collect()
}

fn subfield_index(basis: &QuadBasis, a: Fe) -> u32 {
    basis
        .subfield()
        .index_of(a)
        .expect("basis coordinates lie in the subfield")
}

/// `(x, u) ↦ (x, t)` where `u = aβ + tβ^q`; `q³` classes of `q` points.
pub fn plane_partition(
    spec: &AdgSpec,
    basis: &QuadBasis,
) -> Result<ClassedPartition, PartitionError> {
    if **spec.field() != **basis.ctx() {
        return Err(PartitionError::BasisMismatch);
    }
    if spec.m() != 2 {
        return Err(unsupported(
            "the plane partition needs a two-coordinate system",
        ));
    }
    let codec = spec.codec()?;
    let big = spec.q();
    let q = basis.q();
    let class_of = |id: u32| {
        let (x, u) = (id / big, Fe(id % big));
        let (_, t) = basis.decompose_normal(u);
        x * q + subfield_index(basis, t)
    };
    let partition = Partition::new(labels(codec.count(), class_of), big * q)?;
    let keys = (0..big * q)
        .map(|c| vec![Fe(c / q), basis.subfield().element(c % q)])
        .collect();
    Ok(ClassedPartition {
        family: KeyFamily::Plane,
        partition,
        keys,
    })
}

fn plane_key(c: &ClassKey, basis: &QuadBasis) -> Result<(Fe, Fe), PartitionError> {
    let f = basis.ctx();
    match c.coords[..] {
        [x, y] if c.family == KeyFamily::Plane && f.contains(x) && basis.subfield().contains(y) => {
            Ok((x, y))
        }
        _ => Err(unsupported(format!(
            "{c:?} is not a plane class key for this field"
        ))),
    }
}

/// With `x z^q = sβ + tβ^q`, the edge between `V_{x,y}` and `V_{z,w}` is
/// `(x, (s-w)β + yβ^q) ~ (z, (t-y)β + wβ^q)`. For `V_{x,y}` itself the loop
/// vertex is `(x, (s_x - y)β + yβ^q)` with `x^(q+1) = s_x β + s_x β^q`.
pub fn plane_unique_edge(
    c1: &ClassKey,
    c2: &ClassKey,
    basis: &QuadBasis,
) -> Result<UniqueEdge, PartitionError> {
    let (x, y) = plane_key(c1, basis)?;
    let (z, w) = plane_key(c2, basis)?;
    let f = &**basis.ctx();
    if (x, y) == (z, w) {
        let (sx, _) = basis.decompose_normal(f.mul(x, basis.conj(x)));
        return Ok(UniqueEdge::Loop(vec![
            x,
            basis.recompose_normal(f.sub(sx, y), y),
        ]));
    }
    let (s, t) = basis.decompose_normal(f.mul(x, basis.conj(z)));
    Ok(UniqueEdge::Edge(
        vec![x, basis.recompose_normal(f.sub(s, w), y)],
        vec![z, basis.recompose_normal(f.sub(t, y), w)],
    ))
}

/// `e` with `q = p^(2e+1)` for the given characteristic.
fn odd_exponent(f: &FieldCtx, ch: u32) -> Result<u32, PartitionError> {
    if f.p() != ch || f.k() % 2 == 0 {
        return Err(unsupported(format!(
            "need a field of order {ch}^(2e+1), got {}^{}",
            f.p(),
            f.k()
        )));
    }
    Ok((f.k() - 1) / 2)
}

/// Classes of points sharing their first `width` coordinates.
fn prefix_partition(
    spec: &AdgSpec,
    m: usize,
    width: usize,
    family: KeyFamily,
) -> Result<ClassedPartition, PartitionError> {
    if spec.m() != m {
        return Err(unsupported(format!(
            "expected a {m}-coordinate system, got {}",
            spec.m()
        )));
    }
    let codec = spec.codec()?;
    let keys_codec = VertexCodec::new(spec.q(), width)?;
    let tail = spec.q().pow((m - width) as u32);
    let r = keys_codec.count();
    let partition = Partition::new(labels(codec.count(), |id| id / tail), r)?;
    let keys = (0..r).map(|c| keys_codec.decode_vec(c)).collect();
    Ok(ClassedPartition {
        family,
        partition,
        keys,
    })
}

/// `P_{p_1,p_2} = {(p_1, p_2, a)}`: `q²` classes of `q` points.
pub fn gq_partition(spec: &AdgSpec) -> Result<ClassedPartition, PartitionError> {
    odd_exponent(spec.field(), 2)?;
    prefix_partition(spec, 3, 2, KeyFamily::Gq)
}

fn key_coords<const N: usize>(
    c: &ClassKey,
    family: KeyFamily,
    f: &FieldCtx,
) -> Result<[Fe; N], PartitionError> {
    if c.family != family || c.coords.len() != N || !c.coords.iter().all(|&a| f.contains(a)) {
        return Err(unsupported(format!(
            "{c:?} is not a {family:?} class key for this field"
        )));
    }
    Ok(std::array::from_fn(|i| c.coords[i]))
}

/// With `E = 2^(e+1)`: `(p_1, p_2, p_1² r_1^E + r_2^E) ~ (r_1, r_2, p_1^E r_1² + p_2^E)`.
pub fn gq_unique_edge(
    f: &FieldCtx,
    c1: &ClassKey,
    c2: &ClassKey,
) -> Result<UniqueEdge, PartitionError> {
    let e = odd_exponent(f, 2)?;
    let [p1, p2] = key_coords(c1, KeyFamily::Gq, f)?;
    let [r1, r2] = key_coords(c2, KeyFamily::Gq, f)?;
    let big = |a: Fe| f.frobenius(a, e + 1);
    let a = f.add(f.mul(f.mul(p1, p1), big(r1)), big(r2));
    if (p1, p2) == (r1, r2) {
        return Ok(UniqueEdge::Loop(vec![p1, p2, a]));
    }
    let c = f.add(f.mul(big(p1), f.mul(r1, r1)), big(p2));
    Ok(UniqueEdge::Edge(vec![p1, p2, a], vec![r1, r2, c]))
}

/// `P_{p_1,p_2,p_3} = {(p_1, p_2, p_3, a, b)}`: `q³` classes of `q²` points.
pub fn gh_partition(spec: &AdgSpec) -> Result<ClassedPartition, PartitionError> {
    odd_exponent(spec.field(), 3)?;
    prefix_partition(spec, 5, 3, KeyFamily::Gh)
}

/// Class of a hexagon polarity-graph vertex, computed from its id.
#[inline]
pub fn gh_class_of(q: u32, v: u32) -> u32 {
    v / (q * q)
}

/// With `E = 3^(e+1)`, the edge `(p_1, p_2, p_3, a, b) ~ (r_1, r_2, r_3, c, d)`
/// where `a = p_1³ r_1^E - r_2^E`, `b = p_1³ r_1^(2E) - r_3^E`,
/// `c = (p_1 r_1^E - p_2)^E` and `d = (p_1² r_1^E - p_3)^E`.
pub fn gh_unique_edge(
    f: &FieldCtx,
    c1: &ClassKey,
    c2: &ClassKey,
) -> Result<UniqueEdge, PartitionError> {
    let e = odd_exponent(f, 3)?;
    let [p1, p2, p3] = key_coords(c1, KeyFamily::Gh, f)?;
    let [r1, r2, r3] = key_coords(c2, KeyFamily::Gh, f)?;
    let big = |x: Fe| f.frobenius(x, e + 1);
    let r1e = big(r1);
    let p1cube = f.pow(p1, 3);
    let a = f.sub(f.mul(p1cube, r1e), big(r2));
    let b = f.sub(f.mul(p1cube, f.mul(r1e, r1e)), big(r3));
    if (p1, p2, p3) == (r1, r2, r3) {
        return Ok(UniqueEdge::Loop(vec![p1, p2, p3, a, b]));
    }
    let c = big(f.sub(f.mul(p1, r1e), p2));
    let d = big(f.sub(f.mul(f.mul(p1, p1), r1e), p3));
    Ok(UniqueEdge::Edge(
        vec![p1, p2, p3, a, b],
        vec![r1, r2, r3, c, d],
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adg::{build_polarity_graph, gq_family, plane_family, CheckMode, PolarityGraph};
    use crate::gf::find_normal_element;

    fn plane(q: u64) -> (PolarityGraph, QuadBasis) {
        let (s, pol) = plane_family(q).unwrap();
        let basis = find_normal_element(s.field()).unwrap();
        (
            build_polarity_graph(&s, &pol, CheckMode::Exhaustive).unwrap(),
            basis,
        )
    }

    /// Every adjacent pair (or loop) between two classes, by scanning them.
    fn scan(pg: &PolarityGraph, part: &ClassedPartition, a: u32, b: u32) -> Vec<(u32, u32)> {
        let members = part.partition.members();
        let mut out = Vec::new();
        for &u in &members[a as usize] {
            for &v in &members[b as usize] {
                if (a != b && pg.adjacent(u, v))
                    || (a == b && u <= v && (pg.adjacent(u, v) || (u == v && pg.is_absolute(u))))
                {
                    out.push((u, v));
                }
            }
        }
        out
    }

    #[test]
    fn plane_classes_and_zero_key() {
        let (pg, basis) = plane(2);
        let part = plane_partition(pg.spec(), &basis).unwrap();
        assert_eq!(part.partition.class_count(), 8);
        assert!(part.partition.class_sizes().iter().all(|&s| s == 2));
        let zero = part.key(0);
        assert_eq!(
            plane_unique_edge(&zero, &zero, &basis).unwrap(),
            UniqueEdge::Loop(vec![Fe(0), Fe(0)])
        );
        // (x, yβ^q) sits in class (x, y).
        let y = basis.subfield().element(1);
        let v = pg.encode(&[Fe(3), basis.recompose_normal(Fe(0), y)]);
        assert_eq!(part.key(part.partition.class_of(v)).coords, vec![Fe(3), y]);
    }

    #[test]
    fn plane_formula_matches_exhaustive_scan() {
        for q in [2, 3] {
            let (pg, basis) = plane(q);
            let part = plane_partition(pg.spec(), &basis).unwrap();
            let r = part.partition.class_count();
            for a in 0..r {
                for b in 0..r {
                    let found = scan(&pg, &part, a, b);
                    assert_eq!(found.len(), 1, "q={q} classes {a} {b}");
                    let (u, v) = found[0];
                    let want = match plane_unique_edge(&part.key(a), &part.key(b), &basis).unwrap()
                    {
                        UniqueEdge::Edge(x, y) => (pg.encode(&x), pg.encode(&y)),
                        UniqueEdge::Loop(x) => (pg.encode(&x), pg.encode(&x)),
                    };
                    assert_eq!((u, v), want);
                }
            }
        }
    }

    #[test]
    fn gq_formula_matches_scan_on_sampled_pairs() {
        let (s, pol) = gq_family(1, false).unwrap();
        let pg = build_polarity_graph(&s, &pol, CheckMode::Exhaustive).unwrap();
        let part = gq_partition(&s).unwrap();
        assert_eq!(part.partition.class_count(), 64);
        let zero = part.key(0);
        assert_eq!(
            gq_unique_edge(s.field(), &zero, &zero).unwrap(),
            UniqueEdge::Loop(vec![Fe(0); 3])
        );
        for (a, b) in [(0, 0), (0, 1), (5, 63), (17, 17), (40, 9)] {
            let found = scan(&pg, &part, a, b);
            assert_eq!(found.len(), 1);
            let got = match gq_unique_edge(s.field(), &part.key(a), &part.key(b)).unwrap() {
                UniqueEdge::Edge(x, y) => (pg.encode(&x), pg.encode(&y)),
                UniqueEdge::Loop(x) => (pg.encode(&x), pg.encode(&x)),
            };
            assert_eq!(found[0], got);
        }
    }

    #[test]
    fn wrong_keys_and_fields_are_rejected() {
        let (pg, basis) = plane(2);
        let other = find_normal_element(&crate::gf::make_field(3, 2).unwrap()).unwrap();
        assert_eq!(
            plane_partition(pg.spec(), &other).unwrap_err(),
            PartitionError::BasisMismatch
        );
        let bad = ClassKey {
            family: KeyFamily::Gq,
            coords: vec![Fe(0), Fe(0)],
        };
        assert!(plane_unique_edge(&bad, &bad, &basis).is_err());
        assert!(gq_partition(pg.spec()).is_err());
        assert!(gh_unique_edge(pg.spec().field(), &bad, &bad).is_err());
    }
}
