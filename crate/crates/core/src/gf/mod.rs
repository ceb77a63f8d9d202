//! Arithmetic in GF(p^k).
//!
//! Elements are stored as their integer encoding `n = Σ c_i p^i`, where `c_i`
//! are the coefficients of the element in the polynomial basis
//! `1, x, .., x^(k-1)` modulo the field's defining polynomial. Multiplication,
//! inversion and Frobenius powers go through log/antilog tables built once per
//! field, so every operation is O(1) or O(k).

pub mod poly;
mod quad;

pub use quad::{find_normal_element, BasisMode, QuadBasis, Subfield};

use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

/// Largest field order [`make_field`] accepts.
pub const MAX_ORDER: u64 = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GfError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {p}^{k} exceeds the ceiling {MAX_ORDER}")]
    OrderTooLarge { p: u32, k: u32 },
    #[error("modulus {0:?} is not a monic irreducible polynomial of the requested degree")]
    BadModulus(Vec<u32>),
    #[error("inverse of zero")]
    InverseOfZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("encoding {n} out of range for a field of order {order}")]
    OutOfRange { n: u64, order: u32 },
    #[error("field of degree {0} has no quadratic subfield structure")]
    NotQuadratic(u32),
    #[error("invalid basis: {0}")]
    InvalidBasis(String),
    #[error("element is not in the field F_q(q = {0})")]
    NotInSubfield(u32),
}

/// A field element in integer encoding. Only meaningful together with the
/// [`FieldCtx`] that produced it.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct Fe(pub u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Serializable description of a field: `(p, k, modulus)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldHeader {
    pub p: u32,
    pub k: u32,
    pub modulus: Vec<u32>,
}

/// GF(p^k) with precomputed tables.
pub struct FieldCtx {
    p: u32,
    k: u32,
    order: u32,
    modulus: Vec<u32>,
    /// `exp[i] = g^i` for a primitive `g`, doubled in length so that sums of
    /// two logs index directly.
    exp: Vec<u32>,
    log: Vec<u32>,
    /// `p^j mod (order - 1)` for `j` in `0..k`.
    frob_mult: Vec<u64>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("k", &self.k)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.modulus == other.modulus
    }
}
impl Eq for FieldCtx {}

/// Builds GF(p^k) over the lexicographically smallest monic irreducible
/// polynomial of degree `k`. For `k = 1` the modulus is `x`.
pub fn make_field(p: u32, k: u32) -> Result<Arc<FieldCtx>, GfError> {
    check_params(p, k)?;
    let modulus = poly::smallest_irreducible(p, k as usize);
    Ok(Arc::new(FieldCtx::build(p, k, modulus)))
}

/// Builds GF(p^k) over a caller-supplied modulus (little-endian, monic).
pub fn make_field_with_modulus(p: u32, modulus: Vec<u32>) -> Result<Arc<FieldCtx>, GfError> {
    let k = poly::degree(&modulus).ok_or_else(|| GfError::BadModulus(modulus.clone()))? as u32;
    check_params(p, k)?;
    if modulus.len() != k as usize + 1
        || modulus[k as usize] != 1
        || modulus.iter().any(|&c| c >= p)
        || !poly::is_irreducible(&modulus, p)
    {
        return Err(GfError::BadModulus(modulus));
    }
    Ok(Arc::new(FieldCtx::build(p, k, modulus)))
}

/// Field of order `q`, which must be a prime power.
pub fn field_of_order(q: u64) -> Result<Arc<FieldCtx>, GfError> {
    let (p, k) = poly::prime_power(q).ok_or(GfError::NotPrime(q.min(u32::MAX as u64) as u32))?;
    make_field(p, k)
}

fn check_params(p: u32, k: u32) -> Result<(), GfError> {
    if !poly::is_prime(p) {
        return Err(GfError::NotPrime(p));
    }
    if k == 0 {
        return Err(GfError::ZeroDegree);
    }
    let order = (p as u64).checked_pow(k);
    match order {
        Some(o) if o <= MAX_ORDER => Ok(()),
        _ => Err(GfError::OrderTooLarge { p, k }),
    }
}

impl FieldCtx {
    fn build(p: u32, k: u32, modulus: Vec<u32>) -> FieldCtx {
        let order = (p as u64).pow(k) as u32;
        let mut ctx = FieldCtx {
            p,
            k,
            order,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
            frob_mult: Vec::new(),
        };
        let g = ctx.find_primitive();
        let n = (order - 1) as usize;
        let mut exp = vec![0u32; 2 * n.max(1)];
        let mut log = vec![0u32; order as usize];
        let mut cur = 1u32;
        for i in 0..n {
            exp[i] = cur;
            log[cur as usize] = i as u32;
            cur = ctx.mul_slow(cur, g);
        }
        debug_assert_eq!(cur, 1, "generator order mismatch");
        for i in n..exp.len() {
            exp[i] = exp[i - n.max(1)];
        }
        ctx.exp = exp;
        ctx.log = log;
        let m = (order - 1).max(1) as u64;
        ctx.frob_mult = (0..k).map(|j| (p as u64).pow(j) % m).collect();
        ctx
    }

    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        if self.k == 1 {
            return ((a as u64 * b as u64) % self.p as u64) as u32;
        }
        let k = self.k as usize;
        let da = poly::digits(a as u64, self.p, k);
        let db = poly::digits(b as u64, self.p, k);
        let prod = poly::mul(&da, &db, self.p);
        let r = poly::rem_monic(&prod, &self.modulus, self.p);
        poly::from_digits(&r, self.p) as u32
    }

    fn pow_slow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            e >>= 1;
        }
        acc
    }

    fn find_primitive(&self) -> u32 {
        let n = (self.order - 1) as u64;
        let factors = poly::prime_factors(n);
        (1..self.order)
            .find(|&c| factors.iter().all(|&r| self.pow_slow(c, n / r) != 1))
            .expect("the multiplicative group of a finite field is cyclic")
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }
    #[inline]
    pub fn k(&self) -> u32 {
        self.k
    }
    /// Number of elements, `p^k`.
    #[inline]
    pub fn order(&self) -> u32 {
        self.order
    }
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn header(&self) -> FieldHeader {
        FieldHeader {
            p: self.p,
            k: self.k,
            modulus: self.modulus.clone(),
        }
    }

    /// All elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = Fe> + Clone {
        (0..self.order).map(Fe)
    }

    #[inline]
    pub fn contains(&self, a: Fe) -> bool {
        a.0 < self.order
    }

    pub fn encode(&self, a: Fe) -> u32 {
        a.0
    }

    pub fn decode(&self, n: u64) -> Result<Fe, GfError> {
        if n < self.order as u64 {
            Ok(Fe(n as u32))
        } else {
            Err(GfError::OutOfRange {
                n,
                order: self.order,
            })
        }
    }

    /// Polynomial-basis coefficients, little-endian, length `k`.
    pub fn coeffs(&self, a: Fe) -> Vec<u32> {
        poly::digits(a.0 as u64, self.p, self.k as usize)
    }

    pub fn from_coeffs(&self, c: &[u32]) -> Result<Fe, GfError> {
        if c.len() > self.k as usize || c.iter().any(|&d| d >= self.p) {
            return Err(GfError::OutOfRange {
                n: poly::from_digits(c, self.p.max(2)),
                order: self.order,
            });
        }
        Ok(Fe(poly::from_digits(c, self.p) as u32))
    }

    /// The image of the integer `n` under `Z -> GF(p)`.
    pub fn from_int(&self, n: i64) -> Fe {
        Fe(n.rem_euclid(self.p as i64) as u32)
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        if self.p == 2 {
            return Fe(a.0 ^ b.0);
        }
        if self.k == 1 {
            let s = a.0 + b.0;
            return Fe(if s >= self.p { s - self.p } else { s });
        }
        let p = self.p;
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0u32;
        let mut place = 1u32;
        while x > 0 || y > 0 {
            let mut d = x % p + y % p;
            if d >= p {
                d -= p;
            }
            out += d * place;
            x /= p;
            y /= p;
            place = place.wrapping_mul(p);
        }
        Fe(out)
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        if self.p == 2 || a.0 == 0 {
            return a;
        }
        if self.k == 1 {
            return Fe(self.p - a.0);
        }
        let p = self.p;
        let mut x = a.0;
        let mut out = 0u32;
        let mut place = 1u32;
        while x > 0 {
            let d = x % p;
            if d != 0 {
                out += (p - d) * place;
            }
            x /= p;
            place = place.wrapping_mul(p);
        }
        Fe(out)
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 || b.0 == 0 {
            return Fe::ZERO;
        }
        let i = self.log[a.0 as usize] + self.log[b.0 as usize];
        Fe(self.exp[i as usize])
    }

    pub fn inv(&self, a: Fe) -> Result<Fe, GfError> {
        if a.0 == 0 {
            return Err(GfError::InverseOfZero);
        }
        let n = self.order - 1;
        let l = self.log[a.0 as usize];
        Ok(Fe(self.exp[((n - l) % n.max(1)) as usize]))
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe, GfError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e` by square-and-multiply; the exponent is first reduced modulo
    /// `order - 1` for nonzero bases.
    pub fn pow(&self, a: Fe, e: u64) -> Fe {
        if e == 0 {
            return Fe::ONE;
        }
        if a.0 == 0 {
            return Fe::ZERO;
        }
        let mut e = e % (self.order as u64 - 1).max(1);
        if e == 0 {
            return Fe::ONE;
        }
        let mut base = a;
        let mut acc = Fe::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `a^(p^j)`.
    #[inline]
    pub fn frobenius(&self, a: Fe, j: u32) -> Fe {
        if a.0 == 0 {
            return a;
        }
        let n = (self.order - 1) as u64;
        if n <= 1 {
            return a;
        }
        let mult = self.frob_mult[(j % self.k) as usize];
        let l = self.log[a.0 as usize] as u64 * mult % n;
        Fe(self.exp[l as usize])
    }

    /// Wraps an encoding into a checked [`Element`].
    pub fn elem(&self, n: u64) -> Result<Element<'_>, GfError> {
        Ok(Element {
            ctx: self,
            value: self.decode(n)?,
        })
    }

    pub fn wrap(&self, a: Fe) -> Element<'_> {
        debug_assert!(self.contains(a));
        Element {
            ctx: self,
            value: a,
        }
    }
}

/// An element bound to its field, for call sites that want field mismatches
/// reported instead of silently producing garbage.
#[derive(Clone, Copy)]
pub struct Element<'a> {
    ctx: &'a FieldCtx,
    value: Fe,
}

impl fmt::Debug for Element<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@GF({}^{})", self.value.0, self.ctx.p, self.ctx.k)
    }
}

impl PartialEq for Element<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value && same_field(self.ctx, other.ctx)
    }
}
impl Eq for Element<'_> {}

fn same_field(a: &FieldCtx, b: &FieldCtx) -> bool {
    std::ptr::eq(a, b) || a == b
}

impl<'a> Element<'a> {
    pub fn value(&self) -> Fe {
        self.value
    }
    pub fn ctx(&self) -> &'a FieldCtx {
        self.ctx
    }

    fn check(&self, other: &Element<'a>) -> Result<(), GfError> {
        if same_field(self.ctx, other.ctx) {
            Ok(())
        } else {
            Err(GfError::FieldMismatch)
        }
    }

    pub fn checked_add(&self, other: &Element<'a>) -> Result<Element<'a>, GfError> {
        self.check(other)?;
        Ok(self.ctx.wrap(self.ctx.add(self.value, other.value)))
    }
    pub fn checked_sub(&self, other: &Element<'a>) -> Result<Element<'a>, GfError> {
        self.check(other)?;
        Ok(self.ctx.wrap(self.ctx.sub(self.value, other.value)))
    }
    pub fn checked_mul(&self, other: &Element<'a>) -> Result<Element<'a>, GfError> {
        self.check(other)?;
        Ok(self.ctx.wrap(self.ctx.mul(self.value, other.value)))
    }
    pub fn inv(&self) -> Result<Element<'a>, GfError> {
        Ok(self.ctx.wrap(self.ctx.inv(self.value)?))
    }
    pub fn pow(&self, e: u64) -> Element<'a> {
        self.ctx.wrap(self.ctx.pow(self.value, e))
    }
    pub fn frobenius(&self, j: u32) -> Element<'a> {
        self.ctx.wrap(self.ctx.frobenius(self.value, j))
    }
}

macro_rules! element_op {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<'a> std::ops::$tr for Element<'a> {
            type Output = Element<'a>;
            fn $method(self, rhs: Element<'a>) -> Element<'a> {
                self.$checked(&rhs).expect("mixed-field operands")
            }
        }
    };
}
element_op!(Add, add, checked_add);
element_op!(Sub, sub, checked_sub);
element_op!(Mul, mul, checked_mul);

impl<'a> std::ops::Neg for Element<'a> {
    type Output = Element<'a>;
    fn neg(self) -> Element<'a> {
        self.ctx.wrap(self.ctx.neg(self.value))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf4_modulus_and_omega_squared() {
        let f = make_field(2, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        let w = Fe(2); // x
        assert_eq!(f.mul(w, w), Fe(3)); // x + 1
        assert_eq!(f.frobenius(w, 1), Fe(3));
        assert_eq!(f.encode(w), 2);
        assert_eq!(f.coeffs(w), vec![0, 1]);
    }

    #[test]
    fn prime_field_uses_modulus_x() {
        let f = make_field(3, 1).unwrap();
        assert_eq!(f.modulus(), &[0, 1]);
        assert_eq!(f.coeffs(Fe(2)), vec![2]);
        assert_eq!(f.mul(Fe(2), Fe(2)), Fe(1));
        assert_eq!(f.inv(Fe(2)).unwrap(), Fe(2));
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(make_field(4, 1).unwrap_err(), GfError::NotPrime(4));
        assert_eq!(make_field(2, 0).unwrap_err(), GfError::ZeroDegree);
        assert!(matches!(
            make_field(2, 21),
            Err(GfError::OrderTooLarge { .. })
        ));
        assert!(make_field(3, 10).is_ok());
        assert!(make_field_with_modulus(2, vec![1, 0, 1]).is_err());
        assert!(make_field_with_modulus(2, vec![1, 1, 1]).is_ok());
    }

    #[test]
    fn identities_and_lagrange() {
        for (p, k) in [(2, 3), (3, 2), (5, 1), (2, 4), (3, 3)] {
            let f = make_field(p, k).unwrap();
            let q = f.order() as u64;
            for a in f.elements() {
                assert_eq!(f.add(a, Fe::ZERO), a);
                assert_eq!(f.mul(a, Fe::ONE), a);
                assert_eq!(f.add(a, f.neg(a)), Fe::ZERO);
                if !a.is_zero() {
                    assert_eq!(f.pow(a, q - 1), Fe::ONE);
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), Fe::ONE);
                }
            }
        }
    }

    #[test]
    fn inverse_of_zero_and_decode_range() {
        let f = make_field(3, 2).unwrap();
        assert_eq!(f.inv(Fe::ZERO), Err(GfError::InverseOfZero));
        assert!(f.decode(9).is_err());
        assert_eq!(f.decode(8).unwrap(), Fe(8));
        assert!(f.elem(0).unwrap().inv().is_err());
    }

    #[test]
    fn mixed_field_operands_are_rejected() {
        let a = make_field(3, 2).unwrap();
        let b = make_field(2, 3).unwrap();
        let x = a.elem(2).unwrap();
        let y = b.elem(2).unwrap();
        assert_eq!(x.checked_add(&y).unwrap_err(), GfError::FieldMismatch);
        assert_eq!(x.checked_mul(&y).unwrap_err(), GfError::FieldMismatch);
        // Structurally equal contexts are the same field.
        let a2 = make_field(3, 2).unwrap();
        let z = a2.elem(5).unwrap();
        assert!(x.checked_mul(&z).is_ok());
        assert_eq!((x * z).value(), a.mul(Fe(2), Fe(5)));
    }

    #[test]
    fn encode_decode_roundtrip_exhaustive() {
        let f = make_field(3, 4).unwrap();
        for n in 0..f.order() as u64 {
            let a = f.decode(n).unwrap();
            assert_eq!(f.encode(a) as u64, n);
            assert_eq!(f.from_coeffs(&f.coeffs(a)).unwrap(), a);
        }
    }
}
