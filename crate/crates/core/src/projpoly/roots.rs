//! Root extraction with multiplicity for binary forms of degree at most 3.
//!
//! Finite fields use squarefree reduction, the distinct-degree split of the
//! linear part, and randomized equal-degree (Cantor-Zassenhaus) splitting
//! driven by the caller's generator. The rationals use the rational-root
//! test on the primitive integer form, reporting `complete = false` when an
//! irreducible nonlinear factor remains. The complex backend solves the
//! quadratic/cubic in closed form, polishes each root with one Newton step,
//! and assigns multiplicities by tolerance clustering.

use super::upoly::{self, HomogFactors};
use super::{BinaryForm, ProjError, ProjPoint};
use crate::fields::{Elem, Field};
use crate::CzRng;
use num::{BigInt, BigRational, BigUint, One, Signed, Zero};

/// Roots of a binary form, each with its multiplicity, sorted by the
/// canonical point order. `complete` holds exactly when the multiplicities
/// sum to the degree of the source form.
#[derive(Clone, Debug)]
pub struct RootList {
    pub entries: Vec<(ProjPoint, usize)>,
    pub complete: bool,
}

impl RootList {
    pub fn total_multiplicity(&self) -> usize {
        self.entries.iter().map(|(_, m)| m).sum()
    }

    pub fn find(&self, p: &ProjPoint) -> Option<usize> {
        self.entries.iter().find(|(q, _)| q == p).map(|(_, m)| *m)
    }

    /// Expand to a flat list of points repeated by multiplicity.
    pub fn with_multiplicity(&self) -> Vec<ProjPoint> {
        let mut out = Vec::with_capacity(self.total_multiplicity());
        for (p, m) in &self.entries {
            for _ in 0..*m {
                out.push(p.clone());
            }
        }
        out
    }
}

pub(super) fn roots(form: &BinaryForm, rng: &mut CzRng) -> Result<RootList, ProjError> {
    if form.is_zero() {
        return Err(ProjError::ZeroForm);
    }
    let d = form.degree();
    if d > 3 {
        return Err(ProjError::DegreeTooLarge(d));
    }
    if form.field().is_exact() {
        roots_exact(form, rng)
    } else {
        roots_complex(form)
    }
}

fn sort_entries(entries: &mut [(ProjPoint, usize)]) {
    entries.sort_by(|(a, _), (b, _)| a.cmp_points(b));
}

fn roots_exact(form: &BinaryForm, rng: &mut CzRng) -> Result<RootList, ProjError> {
    let field = form.field().clone();
    let d = form.degree();
    let h = HomogFactors::of(form);
    let mut entries: Vec<(ProjPoint, usize)> = Vec::new();
    if h.ypow > 0 {
        entries.push((ProjPoint::infinity(&field), h.ypow));
    }
    if upoly::deg(&h.u).unwrap_or(0) >= 1 {
        for r in distinct_finite_roots(&h.u, &field, rng)? {
            let mut m = 0usize;
            let mut v = h.u.clone();
            while let Some(q) = upoly::div_linear_exact(&v, &r, &field) {
                m += 1;
                v = q;
            }
            debug_assert!(m >= 1);
            entries.push((ProjPoint::finite(r), m));
        }
    }
    sort_entries(&mut entries);
    let total: usize = entries.iter().map(|(_, m)| m).sum();
    Ok(RootList { entries, complete: total == d })
}

/// Distinct roots in the field of a polynomial of degree 1..=3.
fn distinct_finite_roots(u: &[Elem], field: &Field, rng: &mut CzRng) -> Result<Vec<Elem>, ProjError> {
    let du = upoly::deg(u).expect("nonzero");
    let deriv = upoly::derivative(u, field);
    if deriv.is_empty() {
        // char 3 and u = a z^3 + b: u = (cbrt(a) z + cbrt(b))^3
        let p = field.characteristic();
        assert_eq!(p, 3, "vanishing derivative needs characteristic 3");
        assert_eq!(du, 3);
        let k = cube_root_frobenius_exponent(field);
        let alpha = frob_pow(&u[3], k);
        let beta = frob_pow(&u[0], k);
        let r = (-&beta).div(&alpha)?;
        return Ok(vec![r]);
    }
    let g = upoly::gcd(u, &deriv, field);
    let (w, rem) = upoly::divmod(u, &g, field);
    debug_assert!(rem.is_empty(), "gcd divides");
    let dw = match upoly::deg(&w) {
        None | Some(0) => return Ok(Vec::new()),
        Some(dw) => dw,
    };
    if field.size().is_some() {
        // distinct-degree: the product of the linear factors of w is
        // gcd(z^q - z, w); equal-degree splitting then separates them.
        let q = field.size().unwrap();
        let z = vec![field.zero(), field.one()];
        let zq = upoly::powmod(&z, &q, &w, field);
        let mut zq_minus_z = zq;
        while zq_minus_z.len() < 2 {
            zq_minus_z.push(field.zero());
        }
        zq_minus_z[1] = &zq_minus_z[1] - &field.one();
        upoly::trim(&mut zq_minus_z);
        let g1 = upoly::gcd(&zq_minus_z, &w, field);
        let mut out = Vec::new();
        split_linear_product(&g1, field, &q, rng, &mut out);
        Ok(out)
    } else {
        Ok(rational_roots_squarefree(&w, field, dw))
    }
}

/// For F_{p^k} with p = 3 the cube root is the (k-1)-fold Frobenius,
/// i.e. x -> x^(3^(k-1)).
fn cube_root_frobenius_exponent(field: &Field) -> u32 {
    let size = field.size().expect("finite field");
    let mut k = 0u32;
    let mut acc = BigUint::from(3u64);
    while acc < size {
        acc *= 3u64;
        k += 1;
    }
    k
}

fn frob_pow(x: &Elem, k: u32) -> Elem {
    let mut v = x.clone();
    for _ in 0..k {
        v = v.pow_u64(3);
    }
    v
}

/// Split a monic product of distinct linear factors into its roots.
fn split_linear_product(g: &[Elem], field: &Field, q: &BigUint, rng: &mut CzRng, out: &mut Vec<Elem>) {
    let d = match upoly::deg(g) {
        None | Some(0) => return,
        Some(d) => d,
    };
    if d == 1 {
        out.push(-&g[0]);
        return;
    }
    let e = (q - BigUint::one()) / BigUint::from(2u64);
    for _attempt in 0..256 {
        let a = field.sample(rng);
        let base = vec![a, field.one()];
        let mut h = upoly::powmod(&base, &e, g, field);
        while h.is_empty() {
            h.push(field.zero());
        }
        h[0] = &h[0] - &field.one();
        upoly::trim(&mut h);
        let s = upoly::gcd(&h, g, field);
        let ds = upoly::deg(&s).unwrap_or(0);
        if ds > 0 && ds < d {
            let (rest, r) = upoly::divmod(g, &s, field);
            debug_assert!(r.is_empty());
            split_linear_product(&s, field, q, rng, out);
            split_linear_product(&rest, field, q, rng, out);
            return;
        }
    }
    unreachable!("equal-degree splitting failed to separate linear factors");
}

/// Rational roots of a squarefree polynomial of degree 1..=3 over Q.
fn rational_roots_squarefree(w: &[Elem], field: &Field, _dw: usize) -> Vec<Elem> {
    let mut out = Vec::new();
    let mut v: Vec<Elem> = w.to_vec();
    if v[0].is_zero() {
        out.push(field.zero());
        v.remove(0);
        upoly::trim(&mut v);
    }
    match upoly::deg(&v) {
        None | Some(0) => {}
        Some(1) => {
            out.push((-&v[0]).div(&v[1]).expect("nonzero leading coefficient"));
        }
        Some(2) => out.extend(rational_quadratic_roots(&v, field)),
        Some(3) => {
            if let Some(r) = rational_cubic_root(&v, field) {
                let q = upoly::div_linear_exact(&v, &r, field).expect("verified root");
                out.push(r);
                match upoly::deg(&q) {
                    Some(2) => out.extend(rational_quadratic_roots(&q, field)),
                    Some(1) => out.push((-&q[0]).div(&q[1]).expect("nonzero")),
                    _ => {}
                }
            }
        }
        Some(_) => unreachable!("degree bounded by 3"),
    }
    out
}

fn rational_quadratic_roots(v: &[Elem], field: &Field) -> Vec<Elem> {
    let (c, b, a) = (&v[0], &v[1], &v[2]);
    let disc = &(b * b) - &(&(&field.from_i64(4) * a) * c);
    let two_a = &field.from_i64(2) * a;
    if disc.is_zero() {
        return vec![(-b).div(&two_a).expect("nonzero leading coefficient")];
    }
    match rational_sqrt(disc.as_rational().expect("rational backend")) {
        None => Vec::new(),
        Some(s) => {
            let s = field.from_rational(s);
            let r1 = (&(-b) + &s).div(&two_a).expect("nonzero");
            let r2 = (&(-b) - &s).div(&two_a).expect("nonzero");
            vec![r1, r2]
        }
    }
}

/// Exact square root of a nonnegative rational, if it exists.
fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let num = r.numer().magnitude();
    let den = r.denom().magnitude();
    let sn = num.sqrt();
    let sd = den.sqrt();
    if &(&sn * &sn) == num && &(&sd * &sd) == den {
        Some(BigRational::new(BigInt::from(sn), BigInt::from(sd)))
    } else {
        None
    }
}

/// One rational root of a cubic, by the rational-root test on the primitive
/// integer model: any root n/d has n | constant and d | leading.
fn rational_cubic_root(v: &[Elem], field: &Field) -> Option<Elem> {
    let ints = primitive_integer_coeffs(v);
    let a0 = ints[0].magnitude().clone();
    let a3 = ints[3].magnitude().clone();
    debug_assert!(!a0.is_zero(), "zero root was stripped");
    for n in divisors(&a0) {
        for d in divisors(&a3) {
            for sign in [1i64, -1] {
                let cand = field.from_rational(BigRational::new(
                    BigInt::from(n.clone()) * BigInt::from(sign),
                    BigInt::from(d.clone()),
                ));
                if upoly::eval(v, &cand, field).is_zero() {
                    return Some(cand);
                }
            }
        }
    }
    None
}

fn primitive_integer_coeffs(v: &[Elem]) -> Vec<BigInt> {
    let rats: Vec<&BigRational> = v.iter().map(|e| e.as_rational().expect("rational")).collect();
    let mut lcm = BigInt::one();
    for r in &rats {
        lcm = num::integer::lcm(lcm.clone(), r.denom().clone());
    }
    let ints: Vec<BigInt> = rats.iter().map(|r| (*r * &lcm).to_integer()).collect();
    let mut gcd = BigInt::zero();
    for i in &ints {
        gcd = num::integer::gcd(gcd.clone(), i.clone());
    }
    if gcd.is_zero() || gcd.is_one() {
        ints
    } else {
        ints.iter().map(|i| i / &gcd).collect()
    }
}

fn divisors(n: &BigUint) -> Vec<BigUint> {
    let mut out = Vec::new();
    if n.is_zero() {
        return out;
    }
    let mut d = BigUint::one();
    loop {
        let dd = &d * &d;
        if dd > *n {
            break;
        }
        if (n % &d).is_zero() {
            out.push(d.clone());
            let q = n / &d;
            if q != d {
                out.push(q);
            }
        }
        d += BigUint::one();
    }
    out.sort();
    out
}

// ---- complex backend ----

fn roots_complex(form: &BinaryForm) -> Result<RootList, ProjError> {
    let field = form.field().clone();
    let d = form.degree();
    let coeffs = form.coeffs();
    // leading coefficients that vanish relative to the largest one carry the
    // roots at infinity; the remaining polynomial is solved as found, without
    // rescaling, so exactly representable inputs stay exact
    let scale = coeffs
        .iter()
        .max_by(|a, b| a.complex_abs2_cmp(b))
        .unwrap()
        .clone();
    let mut m = 0usize;
    while m < d && coeffs[m].is_zero_relative_to(&scale) {
        m += 1;
    }
    let mut entries: Vec<(ProjPoint, usize)> = Vec::new();
    if m > 0 {
        entries.push((ProjPoint::infinity(&field), m));
    }
    let n = d - m;
    let u: Vec<Elem> = (0..=n).map(|j| coeffs[d - j].clone()).collect();
    let finite: Vec<Elem> = match n {
        0 => Vec::new(),
        1 => vec![(-&u[0]).div(&u[1])?],
        2 => complex_quadratic(&u, &field)?,
        3 => complex_cubic(&u, &field)?,
        _ => unreachable!(),
    };
    let polished: Vec<Elem> = finite.iter().map(|r| newton_polish(&u, r, &field)).collect();
    // cluster within tolerance; multiplicity is the cluster size
    let mut clusters: Vec<(Vec<Elem>, usize)> = Vec::new();
    'next: for r in polished {
        for (members, count) in clusters.iter_mut() {
            if members.contains(&r) {
                members.push(r);
                *count += 1;
                continue 'next;
            }
        }
        clusters.push((vec![r], 1));
    }
    for (members, count) in clusters {
        let mut sum = field.zero();
        for m in &members {
            sum = &sum + m;
        }
        let center = sum.div(&field.from_i64(count as i64))?;
        entries.push((ProjPoint::finite(center), count));
    }
    sort_entries(&mut entries);
    let total: usize = entries.iter().map(|(_, m)| m).sum();
    Ok(RootList { entries, complete: total == d })
}

fn newton_polish(u: &[Elem], r: &Elem, field: &Field) -> Elem {
    let du = upoly::derivative(u, field);
    let f = upoly::eval(u, r, field);
    let fp = upoly::eval(&du, r, field);
    if fp.is_zero() {
        return r.clone();
    }
    match f.div(&fp) {
        Ok(step) => r - &step,
        Err(_) => r.clone(),
    }
}

fn complex_quadratic(u: &[Elem], field: &Field) -> Result<Vec<Elem>, ProjError> {
    let (c, b, a) = (&u[0], &u[1], &u[2]);
    let four = field.from_i64(4);
    let disc = &(b * b) - &(&(&four * a) * c);
    let s = disc.complex_sqrt();
    // pick the branch that avoids cancellation in b + s
    let plus = b + &s;
    let minus = b - &s;
    let t = if plus.complex_abs2_cmp(&minus) == std::cmp::Ordering::Less { minus } else { plus };
    if t.is_zero() {
        // b = s = 0: double root at 0 shifted; roots +-sqrt(-c/a)
        let r = (-&c.div(a)?).complex_sqrt();
        return Ok(vec![r.clone(), -&r]);
    }
    let q = (-&t).div(&field.from_i64(2))?;
    let r1 = q.div(a)?;
    let r2 = c.div(&q)?;
    Ok(vec![r1, r2])
}

fn complex_cubic(u: &[Elem], field: &Field) -> Result<Vec<Elem>, ProjError> {
    let a = &u[3];
    let b = u[2].div(a)?;
    let c = u[1].div(a)?;
    let d = u[0].div(a)?;
    let three = field.from_i64(3);
    let shift = b.div(&three)?; // z = t - b/3
    // depressed cubic t^3 + p t + q
    let p = &c - &(&b * &b).div(&field.from_i64(3))?;
    let q = &(&(&(&field.from_i64(2) * &(&(&b * &b) * &b)).div(&field.from_i64(27))?
        - &(&b * &c).div(&three)?)
        + &d)
        .clone();
    let omega = field.complex_omega();
    let omega2 = &omega * &omega;
    let ts: Vec<Elem> = if p.is_zero() {
        let t0 = (-q).complex_cbrt();
        vec![t0.clone(), &t0 * &omega, &t0 * &omega2]
    } else {
        let half_q = q.div(&field.from_i64(2))?;
        let disc = &(&half_q * &half_q) + &(&(&p * &p) * &p).div(&field.from_i64(27))?;
        let s = disc.complex_sqrt();
        let cand1 = &(-&half_q) + &s;
        let cand2 = &(-&half_q) - &s;
        let picked = if cand1.complex_abs2_cmp(&cand2) == std::cmp::Ordering::Less {
            cand2
        } else {
            cand1
        };
        let u0 = picked.complex_cbrt();
        let mut out = Vec::with_capacity(3);
        for w in [field.one(), omega, omega2] {
            let uw = &u0 * &w;
            let t = &uw - &p.div(&(&three * &uw))?;
            out.push(t);
        }
        out
    };
    Ok(ts.into_iter().map(|t| &t - &shift).collect())
}
