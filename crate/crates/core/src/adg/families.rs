//! The concrete systems: the biaffine unitary plane, the Tits-type
//! quadrangle, the hexagon in both coordinatizations, and the coordinatewise
//! conjugation polarity for symmetric systems.

use super::{
    check_polarity, is_point_line_symmetric, l, p, AdgError, AdgSpec, BiVertex, CheckMode,
    PolaritySpec, Side, VertexCodec,
};
use crate::gf::poly::prime_power;
use crate::gf::{make_field, FieldCtx};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Plane,
    Gq,
    Gh,
    GhOriginal,
    Generic,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Plane => "plane",
            Family::Gq => "gq",
            Family::Gh => "gh",
            Family::GhOriginal => "gh-original",
            Family::Generic => "generic",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = AdgError;
    fn from_str(s: &str) -> Result<Family, AdgError> {
        [
            Family::Plane,
            Family::Gq,
            Family::Gh,
            Family::GhOriginal,
            Family::Generic,
        ]
        .into_iter()
        .find(|f| f.name() == s)
        .ok_or_else(|| AdgError::InvalidParameter(format!("unknown family {s:?}")))
    }
}

fn invalid(msg: impl Into<String>) -> AdgError {
    AdgError::InvalidParameter(msg.into())
}

/// `ℓ_2 + p_2 = p_1ℓ_1` over `F_{q²}` with `π(p) = [p_1^q, p_2^q]`.
pub fn plane_family(q: u64) -> Result<(AdgSpec, PolaritySpec), AdgError> {
    let (ch, d) = prime_power(q).ok_or_else(|| invalid(format!("q = {q} is not a prime power")))?;
    let field = make_field(ch, 2 * d)?;
    let spec = AdgSpec::new(field, vec![p(1) * l(1)])?;
    Ok((spec, PolaritySpec::coordinatewise(2, d)))
}

fn check_small_e(e: u32, allow_small: bool) -> Result<(), AdgError> {
    if e == 0 && !allow_small {
        Err(invalid(
            "e must be at least 1 (e = 0 requires the small-e override)",
        ))
    } else {
        Ok(())
    }
}

/// The quadrangle system over `F_q`, `q = 2^(2e+1)`, with its Tits-type
/// polarity.
pub fn gq_family(e: u32, allow_small: bool) -> Result<(AdgSpec, PolaritySpec), AdgError> {
    check_small_e(e, allow_small)?;
    let field = make_field(2, 2 * e + 1)?;
    let spec = AdgSpec::new(field, vec![p(1) * l(1), p(1).pow(2) * l(1)])?;
    let pol = PolaritySpec::swapping(
        &[(1, e + 1), (3, e), (2, e + 1)],
        &[(1, e), (3, e), (2, e + 1)],
    );
    Ok((spec, pol))
}

/// The hexagon system written in `p_1, ℓ_1` only; needs characteristic 3.
pub fn gh_spec_over(field: Arc<FieldCtx>) -> Result<AdgSpec, AdgError> {
    if field.p() != 3 {
        return Err(invalid(format!(
            "the hexagon system needs characteristic 3, got {}",
            field.p()
        )));
    }
    AdgSpec::new(
        field,
        vec![
            p(1) * l(1),
            p(1).pow(2) * l(1),
            p(1).pow(3) * l(1),
            p(1).pow(3) * l(1).pow(2),
        ],
    )
}

/// The hexagon over `F_q`, `q = 3^(2e+1)`, with its polarity.
pub fn gh_family(e: u32, allow_small: bool) -> Result<(AdgSpec, PolaritySpec), AdgError> {
    check_small_e(e, allow_small)?;
    let spec = gh_spec_over(make_field(3, 2 * e + 1)?)?;
    let pol = PolaritySpec::swapping(
        &[(1, e + 1), (4, e), (5, e), (2, e + 1), (3, e + 1)],
        &[(1, e), (4, e), (5, e), (2, e + 1), (3, e + 1)],
    );
    Ok((spec, pol))
}

/// The original hexagon coordinatization over `F_q`, `q` a power of 3.
pub fn gh_original_family(q: u64) -> Result<AdgSpec, AdgError> {
    match prime_power(q) {
        Some((3, k)) => AdgSpec::new(
            make_field(3, k)?,
            vec![
                p(1) * l(1),
                p(1) * l(2),
                p(1) * l(3),
                p(2) * l(3) - p(3) * l(2),
            ],
        ),
        _ => Err(invalid(format!("q = {q} is not a power of 3"))),
    }
}

/// The isomorphism from the original hexagon coordinates to the
/// `p_1, ℓ_1` form.
pub fn phi(f: &FieldCtx, v: &BiVertex) -> BiVertex {
    let c = &v.coords;
    match v.side {
        Side::Point => {
            let (p1, p2, p3, p4, p5) = (c[0], c[1], c[2], c[3], c[4]);
            let p1p2 = f.mul(p1, p2);
            BiVertex::point(vec![
                p1,
                p2,
                f.add(p3, p1p2),
                f.add(f.add(p4, f.mul(p1, p3)), f.mul(p1, p1p2)),
                f.sub(f.sub(f.mul(p1p2, p2), f.mul(p2, p3)), p5),
            ])
        }
        Side::Line => BiVertex::line(vec![c[0], c[1], c[2], c[3], f.sub(f.mul(c[1], c[2]), c[4])]),
    }
}

/// `(p_1..p_m) ↦ [p_1^q..p_m^q]` on a system over `F_{q²}`, after confirming
/// the system is point-line-symmetric and the map is a polarity.
pub fn generic_conjugation_polarity(spec: &AdgSpec) -> Result<PolaritySpec, AdgError> {
    let k = spec.field().k();
    if k % 2 != 0 {
        return Err(invalid(format!(
            "field degree {k} is odd, so there is no F_q inside F_(q^2)"
        )));
    }
    let sym = is_point_line_symmetric(spec);
    if let Some(w) = sym.witness {
        return Err(AdgError::NotSymmetric(w));
    }
    let pol = PolaritySpec::coordinatewise(spec.m(), k / 2);
    let small = VertexCodec::new(spec.q(), spec.m() + 1).is_ok_and(|c| c.count() <= 1 << 22);
    let mode = if small {
        CheckMode::Exhaustive
    } else {
        CheckMode::Sampled {
            samples: 100_000,
            seed: 0,
        }
    };
    check_polarity(spec, &pol, mode)?;
    Ok(pol)
}
