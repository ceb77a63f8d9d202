//! Dense polynomials over a prime field GF(p), little-endian coefficients.
//!
//! These routines are slow and allocation-heavy; they are only used to pick
//! moduli and to seed the log/antilog tables of [`super::FieldCtx`].

/// Removes trailing zero coefficients. The zero polynomial becomes `[]`.
pub fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn degree(a: &[u32]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let p64 = p as u64;
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p64;
        }
    }
    trim(out.into_iter().map(|c| c as u32).collect())
}

/// Remainder of `a` modulo a monic `m`.
pub fn rem_monic(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let dm = degree(m).expect("modulus must be nonzero");
    debug_assert_eq!(m[dm], 1, "modulus must be monic");
    let mut r: Vec<u64> = a.iter().map(|&c| c as u64).collect();
    let p64 = p as u64;
    while let Some(dr) = r.iter().rposition(|&c| c != 0) {
        if dr < dm {
            break;
        }
        let lead = r[dr];
        let shift = dr - dm;
        for (i, &c) in m.iter().enumerate().take(dm + 1) {
            let sub = lead * c as u64 % p64;
            r[shift + i] = (r[shift + i] + p64 - sub) % p64;
        }
    }
    trim(r.into_iter().map(|c| c as u32).collect())
}

/// Base-`p` digits of `n`, exactly `len` of them.
pub fn digits(mut n: u64, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push((n % p as u64) as u32);
        n /= p as u64;
    }
    out
}

/// Inverse of [`digits`]; trailing coefficients beyond the vector are zero.
pub fn from_digits(d: &[u32], p: u32) -> u64 {
    d.iter()
        .rev()
        .fold(0u64, |acc, &c| acc * p as u64 + c as u64)
}

/// Monic polynomial of degree `deg` whose lower coefficients are the base-`p`
/// digits of `n`.
pub fn monic_from_index(n: u64, p: u32, deg: usize) -> Vec<u32> {
    let mut c = digits(n, p, deg);
    c.push(1);
    c
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
pub fn is_irreducible(f: &[u32], p: u32) -> bool {
    let Some(deg) = degree(f) else { return false };
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for n in 0..count {
            let g = monic_from_index(n, p, d);
            if rem_monic(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Lexicographically smallest monic irreducible of degree `k`, ordering the
/// candidates by the base-`p` value of their non-leading coefficients.
pub fn smallest_irreducible(p: u32, k: usize) -> Vec<u32> {
    let count = (p as u64).pow(k as u32);
    (0..count)
        .map(|n| monic_from_index(n, p, k))
        .find(|f| is_irreducible(f, p))
        .expect("an irreducible polynomial of every degree exists over a prime field")
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Splits a prime power `q = p^d`, or returns `None`.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    let fs = prime_factors(q);
    if fs.len() != 1 {
        return None;
    }
    let p = fs[0];
    let mut d = 0;
    let mut r = q;
    while r > 1 {
        r /= p;
        d += 1;
    }
    Some((p as u32, d))
}
