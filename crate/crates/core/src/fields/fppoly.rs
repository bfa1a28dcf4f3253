//! Dense univariate polynomials over a prime field, coefficients low-degree
//! first in `Vec<u64>`. Backs extension-field element arithmetic and the
//! deterministic search for the defining modulus.

use super::fp;
use num::BigUint;

pub fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

pub fn deg(v: &[u64]) -> Option<usize> {
    v.iter().rposition(|&c| c != 0)
}

pub fn is_zero(v: &[u64]) -> bool {
    deg(v).is_none()
}

pub fn add(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = fp::add(x, y, p);
    }
    trim(&mut out);
    out
}

pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = fp::sub(x, y, p);
    }
    trim(&mut out);
    out
}

pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if is_zero(a) || is_zero(b) {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = fp::add(out[i + j], fp::mul(x, y, p), p);
        }
    }
    trim(&mut out);
    out
}

/// Remainder of `a` modulo the nonzero polynomial `m`.
pub fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let dm = deg(m).expect("remainder by zero polynomial");
    let lead_inv = fp::inv(m[dm], p);
    let mut r: Vec<u64> = a.to_vec();
    trim(&mut r);
    while let Some(dr) = deg(&r) {
        if dr < dm {
            break;
        }
        let factor = fp::mul(r[dr], lead_inv, p);
        let shift = dr - dm;
        for (j, &mc) in m.iter().enumerate().take(dm + 1) {
            r[j + shift] = fp::sub(r[j + shift], fp::mul(factor, mc, p), p);
        }
        trim(&mut r);
    }
    r
}

pub fn monic(a: &[u64], p: u64) -> Vec<u64> {
    let mut v = a.to_vec();
    trim(&mut v);
    if let Some(d) = deg(&v) {
        if v[d] != 1 {
            let s = fp::inv(v[d], p);
            for c in &mut v {
                *c = fp::mul(*c, s, p);
            }
        }
    }
    v
}

pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !is_zero(&y) {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    monic(&x, p)
}

/// `x^e mod m` with an arbitrary-precision exponent.
pub fn pow_x_mod(e: &BigUint, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut base = rem(&[0, 1], m, p);
    for i in 0..e.bits() {
        if e.bit(i) {
            acc = rem(&mul(&acc, &base, p), m, p);
        }
        if i + 1 < e.bits() {
            base = rem(&mul(&base, &base, p), m, p);
        }
    }
    acc
}

/// Extended Euclid: inverse of `a` modulo `m`, both over F_p. `None` when not coprime.
pub fn inv_mod(a: &[u64], m: &[u64], p: u64) -> Option<Vec<u64>> {
    let mut r0 = m.to_vec();
    let mut r1 = rem(a, m, p);
    let mut t0: Vec<u64> = Vec::new();
    let mut t1 = vec![1u64];
    while !is_zero(&r1) {
        let dr0 = deg(&r0).unwrap();
        let dr1 = deg(&r1).unwrap();
        if dr0 < dr1 {
            std::mem::swap(&mut r0, &mut r1);
            std::mem::swap(&mut t0, &mut t1);
            continue;
        }
        // one long-division step folded into the loop
        let factor = fp::mul(r0[dr0], fp::inv(r1[dr1], p), p);
        let shift = dr0 - dr1;
        let mut q = vec![0u64; shift + 1];
        q[shift] = factor;
        r0 = sub(&r0, &mul(&q, &r1, p), p);
        t0 = sub(&t0, &mul(&q, &t1, p), p);
        if deg(&r0) < deg(&r1) || is_zero(&r0) {
            std::mem::swap(&mut r0, &mut r1);
            std::mem::swap(&mut t0, &mut t1);
        }
    }
    let d = deg(&r0)?;
    if d != 0 {
        return None;
    }
    let s = fp::inv(r0[0], p);
    let mut out = t0;
    for c in &mut out {
        *c = fp::mul(*c, s, p);
    }
    trim(&mut out);
    Some(out)
}

fn prime_divisors(mut k: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= k {
        if k % d == 0 {
            out.push(d);
            while k % d == 0 {
                k /= d;
            }
        }
        d += 1;
    }
    if k > 1 {
        out.push(k);
    }
    out
}

/// Irreducibility over F_p of a monic polynomial of degree >= 1:
/// x^(p^k) = x mod f, and gcd(x^(p^(k/q)) - x, f) = 1 for each prime q | k.
pub fn is_irreducible(f: &[u64], p: u64) -> bool {
    let k = match deg(f) {
        Some(0) | None => return false,
        Some(k) => k,
    };
    if k == 1 {
        return true;
    }
    let pb = BigUint::from(p);
    let x = vec![0u64, 1];
    let xq = pow_x_mod(&pb.pow(k as u32), f, p);
    if sub(&xq, &x, p) != Vec::<u64>::new() {
        return false;
    }
    for q in prime_divisors(k) {
        let e = pb.pow((k / q) as u32);
        let g = gcd(&sub(&pow_x_mod(&e, f, p), &x, p), f, p);
        if deg(&g) != Some(0) {
            return false;
        }
    }
    true
}

/// The smallest monic irreducible of degree `k` over F_p, minimizing the
/// coefficient vector (c_0, ..., c_{k-1}) in lexicographic order with the
/// low-degree coefficient most significant.
pub fn smallest_irreducible(p: u64, k: usize) -> Vec<u64> {
    assert!(k >= 1);
    let mut coeffs = vec![0u64; k + 1];
    coeffs[k] = 1;
    loop {
        if is_irreducible(&coeffs, p) {
            return coeffs;
        }
        // increment (c_{k-1}, ..., c_0) so that c_0 varies slowest
        let mut i = k;
        loop {
            assert!(i > 0, "no irreducible of degree {k} over F_{p}");
            i -= 1;
            coeffs[i] += 1;
            if coeffs[i] < p {
                break;
            }
            coeffs[i] = 0;
        }
    }
}
