//! Algebraically defined bipartite graphs.
//!
//! Points `(p_1..p_m)` and lines `[ℓ_1..ℓ_m]` are vectors over a finite
//! field; a point and a line are incident when `ℓ_j + p_j = f_j(..)` for
//! `j = 2..=m`, each `f_j` reading only coordinates below `j`. Fixing `ℓ_1`
//! (or `p_1`) therefore determines the rest of an incident line (or point) by
//! forward substitution.

mod expr;
mod families;
mod polarity;
mod symmetry;

pub use expr::{konst, l, p, Expr, Program};
pub use families::{
    generic_conjugation_polarity, gh_family, gh_original_family, gh_spec_over, gq_family, phi,
    plane_family, Family,
};
pub use polarity::{
    build_polarity_graph, check_polarity, CheckMode, CoordRule, PolarityClause, PolarityGraph,
    PolarityReport, PolaritySpec, PolarityViolation, SideRule,
};
pub use symmetry::{is_point_line_symmetric, SymmetryReport, SymmetryWitness};

use crate::gf::{make_field_with_modulus, Fe, FieldCtx, FieldHeader, GfError};
use crate::graphs::ImplicitGraph;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

/// Largest vertex count of one side; ids of both sides must fit in a `u32`.
pub const MAX_SIDE: u64 = 1 << 31;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AdgError {
    #[error(transparent)]
    Field(#[from] GfError),
    #[error("invalid adjacency expression: {0}")]
    BadExpression(String),
    #[error("dimension must be at least 2, got {0}")]
    BadDimension(usize),
    #[error("{q}^{m} vertices per side exceed the id space")]
    TooManyVertices { q: u32, m: usize },
    #[error("polarity has {got} coordinate rules on one side, the system has dimension {m}")]
    DimensionMismatch { got: usize, m: usize },
    #[error("{0}")]
    Polarity(PolarityViolation),
    #[error("not point-line-symmetric: {0}")]
    NotSymmetric(SymmetryWitness),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Point,
    Line,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Point => Side::Line,
            Side::Line => Side::Point,
        }
    }
}

/// A point or a line with its coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BiVertex {
    pub side: Side,
    pub coords: Vec<Fe>,
}

impl BiVertex {
    pub fn point(coords: Vec<Fe>) -> BiVertex {
        BiVertex {
            side: Side::Point,
            coords,
        }
    }

    pub fn line(coords: Vec<Fe>) -> BiVertex {
        BiVertex {
            side: Side::Line,
            coords,
        }
    }
}

impl fmt::Display for BiVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (open, close) = match self.side {
            Side::Point => ('(', ')'),
            Side::Line => ('[', ']'),
        };
        write!(f, "{open}")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "{close}")
    }
}

/// Mixed-radix vertex ids over coordinate tuples, first coordinate most
/// significant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VertexCodec {
    q: u32,
    m: usize,
    count: u32,
}

impl VertexCodec {
    pub fn new(q: u32, m: usize) -> Result<VertexCodec, AdgError> {
        match (q as u64).checked_pow(m as u32) {
            Some(c) if c <= MAX_SIDE => Ok(VertexCodec {
                q,
                m,
                count: c as u32,
            }),
            _ => Err(AdgError::TooManyVertices { q, m }),
        }
    }

    /// Vertices per side.
    pub fn count(&self) -> u32 {
        self.count
    }

    #[inline]
    pub fn encode(&self, coords: &[Fe]) -> u32 {
        coords.iter().fold(0u32, |acc, c| acc * self.q + c.0)
    }

    #[inline]
    pub fn decode(&self, mut id: u32, out: &mut [Fe]) {
        for slot in out[..self.m].iter_mut().rev() {
            *slot = Fe(id % self.q);
            id /= self.q;
        }
    }

    pub fn decode_vec(&self, id: u32) -> Vec<Fe> {
        let mut out = vec![Fe::ZERO; self.m];
        self.decode(id, &mut out);
        out
    }
}

/// Serialized form of an [`AdgSpec`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecFile {
    pub field: FieldHeader,
    pub m: usize,
    /// `f_2, .., f_m`.
    pub fs: Vec<Expr>,
}

/// An adjacency system `ℓ_j + p_j = f_j` over one field.
#[derive(Clone, Debug)]
pub struct AdgSpec {
    field: Arc<FieldCtx>,
    fs: Vec<Expr>,
    progs: Vec<Program>,
}

impl AdgSpec {
    /// `fs[i]` is `f_{i+2}`.
    pub fn new(field: Arc<FieldCtx>, fs: Vec<Expr>) -> Result<AdgSpec, AdgError> {
        if fs.is_empty() {
            return Err(AdgError::BadDimension(fs.len() + 1));
        }
        let progs = fs
            .iter()
            .enumerate()
            .map(|(i, e)| Program::compile(e, i + 2, field.order()))
            .collect::<Result<_, _>>()?;
        Ok(AdgSpec { field, fs, progs })
    }

    pub fn from_file(file: &SpecFile) -> Result<AdgSpec, AdgError> {
        let field = make_field_with_modulus(file.field.p, file.field.modulus.clone())?;
        if field.k() != file.field.k {
            return Err(GfError::BadModulus(file.field.modulus.clone()).into());
        }
        if file.fs.len() + 1 != file.m {
            return Err(AdgError::BadDimension(file.m));
        }
        AdgSpec::new(field, file.fs.clone())
    }

    pub fn to_file(&self) -> SpecFile {
        SpecFile {
            field: self.field.header(),
            m: self.m(),
            fs: self.fs.clone(),
        }
    }

    pub fn field(&self) -> &Arc<FieldCtx> {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.field.order()
    }

    pub fn m(&self) -> usize {
        self.fs.len() + 1
    }

    /// `f_j` for `j` in `2..=m`.
    pub fn function(&self, j: usize) -> &Expr {
        &self.fs[j - 2]
    }

    pub fn codec(&self) -> Result<VertexCodec, AdgError> {
        VertexCodec::new(self.q(), self.m())
    }

    #[inline]
    pub fn eval(&self, j: usize, points: &[Fe], lines: &[Fe]) -> Fe {
        self.progs[j - 2].eval(&self.field, points, lines)
    }

    pub fn is_incident(&self, point: &[Fe], line: &[Fe]) -> bool {
        let f = &*self.field;
        self.progs
            .iter()
            .enumerate()
            .all(|(i, prog)| f.add(line[i + 1], point[i + 1]) == prog.eval(f, point, line))
    }

    /// The unique line through `point` with first coordinate `l1`.
    #[inline]
    pub fn line_through(&self, point: &[Fe], l1: Fe, out: &mut [Fe]) {
        let f = &*self.field;
        out[0] = l1;
        for (i, prog) in self.progs.iter().enumerate() {
            out[i + 1] = f.sub(prog.eval(f, point, out), point[i + 1]);
        }
    }

    /// The unique point on `line` with first coordinate `p1`.
    #[inline]
    pub fn point_on(&self, line: &[Fe], p1: Fe, out: &mut [Fe]) {
        let f = &*self.field;
        out[0] = p1;
        for (i, prog) in self.progs.iter().enumerate() {
            out[i + 1] = f.sub(prog.eval(f, out, line), line[i + 1]);
        }
    }

    /// The `q` lines through a point, ordered by first coordinate.
    pub fn neighbors_of_point(&self, point: &[Fe]) -> impl Iterator<Item = Vec<Fe>> + '_ {
        let point = point.to_vec();
        self.field.elements().map(move |l1| {
            let mut out = vec![Fe::ZERO; self.m()];
            self.line_through(&point, l1, &mut out);
            out
        })
    }

    /// The `q` points on a line, ordered by first coordinate.
    pub fn neighbors_of_line(&self, line: &[Fe]) -> impl Iterator<Item = Vec<Fe>> + '_ {
        let line = line.to_vec();
        self.field.elements().map(move |p1| {
            let mut out = vec![Fe::ZERO; self.m()];
            self.point_on(&line, p1, &mut out);
            out
        })
    }
}

/// The incidence graph of an [`AdgSpec`]: points take ids `0..N`, lines
/// `N..2N`.
#[derive(Clone, Debug)]
pub struct BipartiteGraph {
    spec: AdgSpec,
    codec: VertexCodec,
}

impl BipartiteGraph {
    pub fn new(spec: AdgSpec) -> Result<BipartiteGraph, AdgError> {
        let codec = spec.codec()?;
        Ok(BipartiteGraph { spec, codec })
    }

    pub fn spec(&self) -> &AdgSpec {
        &self.spec
    }

    pub fn codec(&self) -> VertexCodec {
        self.codec
    }

    pub fn id_of(&self, v: &BiVertex) -> u32 {
        let base = match v.side {
            Side::Point => 0,
            Side::Line => self.codec.count(),
        };
        base + self.codec.encode(&v.coords)
    }

    pub fn vertex(&self, id: u32) -> BiVertex {
        let n = self.codec.count();
        if id < n {
            BiVertex::point(self.codec.decode_vec(id))
        } else {
            BiVertex::line(self.codec.decode_vec(id - n))
        }
    }
}

impl ImplicitGraph for BipartiteGraph {
    fn vertex_count(&self) -> usize {
        2 * self.codec.count() as usize
    }

    fn for_each_neighbor(&self, v: u32, f: &mut dyn FnMut(u32)) {
        let n = self.codec.count();
        let m = self.spec.m();
        let mut src = vec![Fe::ZERO; m];
        let mut out = vec![Fe::ZERO; m];
        if v < n {
            self.codec.decode(v, &mut src);
            for l1 in self.spec.field.elements() {
                self.spec.line_through(&src, l1, &mut out);
                f(n + self.codec.encode(&out));
            }
        } else {
            self.codec.decode(v - n, &mut src);
            for p1 in self.spec.field.elements() {
                self.spec.point_on(&src, p1, &mut out);
                f(self.codec.encode(&out));
            }
        }
    }

    fn has_loop(&self, _v: u32) -> bool {
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;
    use crate::graphs::{girth, materialize};

    fn plane4() -> AdgSpec {
        AdgSpec::new(make_field(2, 2).unwrap(), vec![p(1) * l(1)]).unwrap()
    }

    #[test]
    fn plane_origin_neighbors() {
        let s = plane4();
        let lines: Vec<_> = s.neighbors_of_point(&[Fe(0), Fe(0)]).collect();
        assert_eq!(
            lines,
            (0..4).map(|a| vec![Fe(a), Fe(0)]).collect::<Vec<_>>()
        );
    }

    #[test]
    fn forward_substitution_is_incident() {
        let s = plane4();
        let c = s.codec().unwrap();
        for id in 0..c.count() {
            let pt = c.decode_vec(id);
            for line in s.neighbors_of_point(&pt) {
                assert!(s.is_incident(&pt, &line));
                assert!(s.neighbors_of_line(&line).any(|x| x == pt));
            }
        }
    }

    #[test]
    fn codec_round_trip_and_order() {
        let c = VertexCodec::new(3, 2).unwrap();
        assert_eq!(c.encode(&[Fe(1), Fe(2)]), 5);
        assert_eq!(c.decode_vec(5), vec![Fe(1), Fe(2)]);
        assert!(VertexCodec::new(243, 5).is_err());
    }

    #[test]
    fn plane_incidence_graph_has_girth_six() {
        let g = materialize(&BipartiteGraph::new(plane4()).unwrap(), 1 << 20).unwrap();
        assert_eq!(g.n(), 32);
        assert_eq!(g.edge_count(), 64);
        assert_eq!(girth(&g), Some(6));
    }

    #[test]
    fn spec_file_round_trip() {
        let s = plane4();
        let json = serde_json::to_string(&s.to_file()).unwrap();
        let back = AdgSpec::from_file(&serde_json::from_str(&json).unwrap()).unwrap();
        assert_eq!(back.to_file(), s.to_file());
        assert!(AdgSpec::new(make_field(2, 2).unwrap(), vec![]).is_err());
    }
}
