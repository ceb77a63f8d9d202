use super::{Fe, FieldCtx, GfError};
use serde::{Deserialize, Serialize};
use std::sync::Arc;

/// The subfield GF(p^d) of a field GF(p^k), `d | k`, listed by encoding.
#[derive(Clone, Debug)]
pub struct Subfield {
    degree: u32,
    elems: Vec<Fe>,
    index: Vec<u32>,
}

impl Subfield {
    pub fn new(ctx: &FieldCtx, degree: u32) -> Result<Subfield, GfError> {
        if degree == 0 || ctx.k() % degree != 0 {
            return Err(GfError::InvalidBasis(format!(
                "degree {degree} does not divide {}",
                ctx.k()
            )));
        }
        let mut index = vec![u32::MAX; ctx.order() as usize];
        let mut elems = Vec::new();
        for a in ctx.elements() {
            if ctx.frobenius(a, degree) == a {
                index[a.0 as usize] = elems.len() as u32;
                elems.push(a);
            }
        }
        debug_assert_eq!(elems.len() as u64, (ctx.p() as u64).pow(degree));
        Ok(Subfield {
            degree,
            elems,
            index,
        })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }
    pub fn order(&self) -> u32 {
        self.elems.len() as u32
    }
    pub fn elements(&self) -> &[Fe] {
        &self.elems
    }
    #[inline]
    pub fn contains(&self, a: Fe) -> bool {
        self.index.get(a.0 as usize).is_some_and(|&i| i != u32::MAX)
    }
    /// Position of `a` among the subfield elements, in `0..order`.
    #[inline]
    pub fn index_of(&self, a: Fe) -> Option<u32> {
        self.index
            .get(a.0 as usize)
            .copied()
            .filter(|&i| i != u32::MAX)
    }
    #[inline]
    pub fn element(&self, i: u32) -> Fe {
        self.elems[i as usize]
    }
}

/// Which F_q-basis of F_{q^2} a decomposition is taken against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BasisMode {
    /// `u = s·β + t·β^q`
    Normal,
    /// `u = s + t·μ`
    Mu,
}

/// A normal basis `{β, β^q}` and a basis `{1, μ}` of F_{q^2} over F_q.
#[derive(Clone, Debug)]
pub struct QuadBasis {
    ctx: Arc<FieldCtx>,
    half: u32,
    beta: Fe,
    beta_q: Fe,
    mu: Fe,
    det_inv: Fe,
    mu_diff_inv: Fe,
    subfield: Subfield,
}

/// Smallest-by-encoding normal element `β` and non-subfield `μ` of a field of
/// even degree, viewed as F_{q^2} over F_q.
pub fn find_normal_element(ctx: &Arc<FieldCtx>) -> Result<QuadBasis, GfError> {
    if ctx.k() % 2 != 0 {
        return Err(GfError::NotQuadratic(ctx.k()));
    }
    let half = ctx.k() / 2;
    let sub = Subfield::new(ctx, half)?;
    let beta = ctx
        .elements()
        .find(|&b| normal_pair_independent(ctx, &sub, b, half))
        .expect("normal elements exist in every finite extension");
    let mu = ctx
        .elements()
        .find(|&m| !sub.contains(m))
        .expect("a proper subfield misses some element");
    QuadBasis::with_subfield(ctx.clone(), sub, beta, mu)
}

fn normal_pair_independent(ctx: &FieldCtx, sub: &Subfield, b: Fe, half: u32) -> bool {
    if b.is_zero() {
        return false;
    }
    let bq = ctx.frobenius(b, half);
    // {b, b^q} is dependent iff b^q = c·b for some c in F_q.
    let ratio = ctx.div(bq, b).expect("b is nonzero");
    !sub.contains(ratio)
}

impl QuadBasis {
    pub fn new(ctx: Arc<FieldCtx>, beta: Fe, mu: Fe) -> Result<QuadBasis, GfError> {
        if ctx.k() % 2 != 0 {
            return Err(GfError::NotQuadratic(ctx.k()));
        }
        let sub = Subfield::new(&ctx, ctx.k() / 2)?;
        QuadBasis::with_subfield(ctx, sub, beta, mu)
    }

    fn with_subfield(
        ctx: Arc<FieldCtx>,
        sub: Subfield,
        beta: Fe,
        mu: Fe,
    ) -> Result<QuadBasis, GfError> {
        let half = ctx.k() / 2;
        if !ctx.contains(beta) || !ctx.contains(mu) {
            return Err(GfError::InvalidBasis("element outside the field".into()));
        }
        if !normal_pair_independent(&ctx, &sub, beta, half) {
            return Err(GfError::InvalidBasis(format!(
                "{{β, β^q}} is dependent for β = {}",
                beta.0
            )));
        }
        if sub.contains(mu) {
            return Err(GfError::InvalidBasis(format!("μ = {} lies in F_q", mu.0)));
        }
        let beta_q = ctx.frobenius(beta, half);
        let mu_q = ctx.frobenius(mu, half);
        let det = ctx.sub(ctx.mul(beta, beta), ctx.mul(beta_q, beta_q));
        let det_inv = ctx.inv(det)?;
        let mu_diff_inv = ctx.inv(ctx.sub(mu, mu_q))?;
        Ok(QuadBasis {
            ctx,
            half,
            beta,
            beta_q,
            mu,
            det_inv,
            mu_diff_inv,
            subfield: sub,
        })
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }
    /// `q`, the order of the subfield.
    pub fn q(&self) -> u32 {
        self.subfield.order()
    }
    /// Frobenius exponent `j` with `p^j = q`.
    pub fn half_degree(&self) -> u32 {
        self.half
    }
    pub fn beta(&self) -> Fe {
        self.beta
    }
    pub fn beta_q(&self) -> Fe {
        self.beta_q
    }
    pub fn mu(&self) -> Fe {
        self.mu
    }
    pub fn subfield(&self) -> &Subfield {
        &self.subfield
    }

    /// `u^q`.
    #[inline]
    pub fn conj(&self, u: Fe) -> Fe {
        self.ctx.frobenius(u, self.half)
    }

    /// Coordinates of `u` against `{β, β^q}`.
    #[inline]
    pub fn decompose_normal(&self, u: Fe) -> (Fe, Fe) {
        let f = &*self.ctx;
        let uq = self.conj(u);
        let s = f.mul(
            f.sub(f.mul(u, self.beta), f.mul(uq, self.beta_q)),
            self.det_inv,
        );
        let t = f.mul(
            f.sub(f.mul(uq, self.beta), f.mul(u, self.beta_q)),
            self.det_inv,
        );
        debug_assert!(self.subfield.contains(s) && self.subfield.contains(t));
        (s, t)
    }

    /// Coordinates of `u` against `{1, μ}`.
    #[inline]
    pub fn decompose_mu(&self, u: Fe) -> (Fe, Fe) {
        let f = &*self.ctx;
        let t = f.mul(f.sub(u, self.conj(u)), self.mu_diff_inv);
        let s = f.sub(u, f.mul(t, self.mu));
        debug_assert!(self.subfield.contains(s) && self.subfield.contains(t));
        (s, t)
    }

    pub fn decompose(&self, u: Fe, mode: BasisMode) -> Result<(Fe, Fe), GfError> {
        if !self.ctx.contains(u) {
            return Err(GfError::OutOfRange {
                n: u.0 as u64,
                order: self.ctx.order(),
            });
        }
        Ok(match mode {
            BasisMode::Normal => self.decompose_normal(u),
            BasisMode::Mu => self.decompose_mu(u),
        })
    }

    #[inline]
    pub fn recompose_normal(&self, s: Fe, t: Fe) -> Fe {
        let f = &*self.ctx;
        f.add(f.mul(s, self.beta), f.mul(t, self.beta_q))
    }

    #[inline]
    pub fn recompose_mu(&self, s: Fe, t: Fe) -> Fe {
        let f = &*self.ctx;
        f.add(s, f.mul(t, self.mu))
    }

    pub fn recompose(&self, s: Fe, t: Fe, mode: BasisMode) -> Result<Fe, GfError> {
        for x in [s, t] {
            if !self.subfield.contains(x) {
                return Err(GfError::NotInSubfield(self.q()));
            }
        }
        Ok(match mode {
            BasisMode::Normal => self.recompose_normal(s, t),
            BasisMode::Mu => self.recompose_mu(s, t),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    #[test]
    fn gf4_over_gf2() {
        let f = make_field(2, 2).unwrap();
        let b = find_normal_element(&f).unwrap();
        // 1 is in F_2, and ω = x is the first element with ω^2 ∉ F_2·ω.
        assert_eq!(b.beta(), Fe(2));
        assert_eq!(b.mu(), Fe(2));
        assert_eq!(b.decompose_normal(b.beta()), (Fe::ONE, Fe::ZERO));
        assert_eq!(b.q(), 2);
    }

    #[test]
    fn odd_degree_is_rejected() {
        let f = make_field(2, 3).unwrap();
        assert_eq!(
            find_normal_element(&f).unwrap_err(),
            GfError::NotQuadratic(3)
        );
    }

    #[test]
    fn invalid_bases_are_rejected() {
        let f = make_field(3, 2).unwrap();
        assert!(QuadBasis::new(f.clone(), Fe::ONE, Fe(3)).is_err()); // 1 ∈ F_3
        assert!(QuadBasis::new(f.clone(), Fe::ZERO, Fe(3)).is_err());
        assert!(QuadBasis::new(f.clone(), Fe(3), Fe(2)).is_err()); // μ = 2 ∈ F_3
    }

    #[test]
    fn norm_decomposes_with_equal_coordinates() {
        for (p, k) in [(2, 2), (3, 2), (2, 4), (5, 2), (3, 4)] {
            let f = make_field(p, k).unwrap();
            let b = find_normal_element(&f).unwrap();
            let q = b.q() as u64;
            for x in f.elements() {
                let norm = f.pow(x, q + 1);
                let (s, t) = b.decompose_normal(norm);
                assert_eq!(s, t, "x = {x} in GF({p}^{k})");
            }
        }
    }
}
