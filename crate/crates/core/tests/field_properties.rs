use achromatic::gf::poly::{is_irreducible, prime_power};
use achromatic::gf::{find_normal_element, make_field, Fe, FieldCtx};
use proptest::prelude::*;
use std::collections::HashSet;
use std::sync::Arc;

const FIELDS: [(u32, u32); 8] = [(2, 1), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2), (7, 1), (2, 6)];

fn field(i: usize) -> Arc<FieldCtx> {
    let (p, k) = FIELDS[i % FIELDS.len()];
    make_field(p, k).unwrap()
}

fn elem(f: &FieldCtx, raw: u32) -> Fe {
    Fe(raw % f.order())
}

proptest! {
    #[test]
    fn ring_axioms(i in 0usize..8, a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let f = field(i);
        let (a, b, c) = (elem(&f, a), elem(&f, b), elem(&f, c));
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), Fe::ZERO);
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        prop_assert_eq!(f.mul(a, Fe::ONE), a);
    }

    #[test]
    fn inverses(i in 0usize..8, a in any::<u32>()) {
        let f = field(i);
        let a = elem(&f, a);
        if a.is_zero() {
            prop_assert!(f.inv(a).is_err());
        } else {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), Fe::ONE);
            prop_assert_eq!(f.pow(a, f.order() as u64 - 1), Fe::ONE);
        }
    }

    #[test]
    fn frobenius_is_an_automorphism(i in 0usize..8, a in any::<u32>(), b in any::<u32>(), j in 0u32..12) {
        let f = field(i);
        let (a, b) = (elem(&f, a), elem(&f, b));
        prop_assert_eq!(f.frobenius(f.add(a, b), j), f.add(f.frobenius(a, j), f.frobenius(b, j)));
        prop_assert_eq!(f.frobenius(f.mul(a, b), j), f.mul(f.frobenius(a, j), f.frobenius(b, j)));
        prop_assert_eq!(f.frobenius(a, j), f.pow(a, (f.p() as u64).pow(j % f.k())));
        prop_assert_eq!(f.frobenius(a, f.k()), a);
    }

    #[test]
    fn pow_matches_repeated_multiplication(i in 0usize..8, a in any::<u32>(), e in 0u64..40) {
        let f = field(i);
        let a = elem(&f, a);
        let slow = (0..e).fold(Fe::ONE, |acc, _| f.mul(acc, a));
        prop_assert_eq!(f.pow(a, e), slow);
    }

    #[test]
    fn coefficient_encoding_round_trips(i in 0usize..8, a in any::<u32>()) {
        let f = field(i);
        let a = elem(&f, a);
        prop_assert_eq!(f.from_coeffs(&f.coeffs(a)).unwrap(), a);
    }
}

/// Schoolbook product over `F_p`, coefficients little-endian.
fn poly_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    out
}

fn monic(p: u32, deg: usize) -> Vec<Vec<u32>> {
    let mut all = vec![vec![]];
    for _ in 0..deg {
        all = all
            .into_iter()
            .flat_map(|v: Vec<u32>| {
                (0..p).map(move |c| {
                    let mut w = v.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    all.into_iter()
        .map(|mut v| {
            v.push(1);
            v
        })
        .collect()
}

/// Irreducibility decided by listing every product of two monic factors.
#[test]
fn irreducibility_agrees_with_the_product_sieve() {
    for (p, k) in [(2, 2), (2, 3), (2, 4), (2, 5), (3, 2), (3, 3), (3, 4), (5, 2), (5, 3)] {
        let mut reducible = HashSet::new();
        for d in 1..=k / 2 {
            for a in monic(p, d) {
                for b in monic(p, k - d) {
                    reducible.insert(poly_mul(&a, &b, p));
                }
            }
        }
        let candidates = monic(p, k);
        let irreducible = candidates.iter().filter(|f| !reducible.contains(*f)).count();
        for f in &candidates {
            assert_eq!(is_irreducible(f, p), !reducible.contains(f), "p={p} f={f:?}");
        }
        // Count of monic irreducibles: (1/k) Σ_{d | k} μ(d) p^(k/d).
        let mobius = |n: usize| match n {
            1 => 1i64,
            2 | 3 | 5 => -1,
            4 => 0,
            _ => unreachable!(),
        };
        let gauss: i64 = (1..=k)
            .filter(|d| k % d == 0)
            .map(|d| mobius(d) * (p as i64).pow((k / d) as u32))
            .sum::<i64>()
            / k as i64;
        assert_eq!(irreducible as i64, gauss, "p={p} k={k}");
    }
}

#[test]
fn constructed_moduli_are_irreducible() {
    for (p, k) in FIELDS {
        let f = make_field(p, k).unwrap();
        assert!(is_irreducible(f.modulus(), p));
        assert_eq!(f.order(), p.pow(k));
        assert_eq!(f.elements().count() as u32, f.order());
    }
}

#[test]
fn prime_power_detection() {
    assert_eq!(prime_power(27), Some((3, 3)));
    assert_eq!(prime_power(1024), Some((2, 10)));
    assert_eq!(prime_power(12), None);
    assert_eq!(prime_power(1), None);
}

#[test]
fn normal_basis_decompositions() {
    for (p, k) in [(2, 2), (3, 2), (2, 4), (5, 2), (2, 6), (3, 4)] {
        let f = make_field(p, k).unwrap();
        let basis = find_normal_element(&f).unwrap();
        let sub = basis.subfield();
        let mut seen = HashSet::new();
        for u in f.elements() {
            let (s, t) = basis.decompose_normal(u);
            assert!(sub.contains(s) && sub.contains(t));
            assert_eq!(basis.recompose_normal(s, t), u);
            assert_eq!(basis.conj(u), f.frobenius(u, k / 2));
            let (x, y) = basis.decompose_mu(u);
            assert!(sub.contains(x) && sub.contains(y));
            assert!(seen.insert((s, t)));
        }
        assert_eq!(seen.len() as u32, f.order());
    }
}
