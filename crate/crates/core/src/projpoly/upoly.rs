//! Dehomogenized polynomial machinery shared by gcd and root extraction.
//! Polynomials are `Vec<Elem>` in ascending degree, trimmed.

use super::{BinaryForm, ProjError, ProjPoint};
use crate::fields::{Elem, Field};

pub(crate) fn trim(v: &mut Vec<Elem>) {
    while v.last().map(|c| c.is_zero()).unwrap_or(false) {
        v.pop();
    }
}

pub(crate) fn deg(v: &[Elem]) -> Option<usize> {
    v.iter().rposition(|c| !c.is_zero())
}

pub(crate) fn mul(a: &[Elem], b: &[Elem], field: &Field) -> Vec<Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![field.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    trim(&mut out);
    out
}

/// Quotient and remainder by a nonzero divisor.
pub(crate) fn divmod(a: &[Elem], m: &[Elem], field: &Field) -> (Vec<Elem>, Vec<Elem>) {
    let dm = deg(m).expect("division by zero polynomial");
    let lead_inv = m[dm].inv().expect("nonzero leading coefficient");
    let mut r: Vec<Elem> = a.to_vec();
    trim(&mut r);
    let mut q: Vec<Elem> = Vec::new();
    while let Some(dr) = deg(&r) {
        if dr < dm {
            break;
        }
        let factor = &r[dr] * &lead_inv;
        let shift = dr - dm;
        if q.len() <= shift {
            q.resize(shift + 1, field.zero());
        }
        q[shift] = factor.clone();
        for (j, mc) in m.iter().enumerate().take(dm + 1) {
            r[j + shift] = &r[j + shift] - &(&factor * mc);
        }
        // the top coefficient cancels; force it to avoid inexact residue
        r[dr] = field.zero();
        trim(&mut r);
    }
    (q, r)
}

pub(crate) fn rem(a: &[Elem], m: &[Elem], field: &Field) -> Vec<Elem> {
    divmod(a, m, field).1
}

pub(crate) fn monic(a: &[Elem]) -> Vec<Elem> {
    let mut v = a.to_vec();
    trim(&mut v);
    if let Some(d) = deg(&v) {
        if !v[d].is_one() {
            let s = v[d].inv().expect("nonzero leading coefficient");
            for c in &mut v {
                *c = &*c * &s;
            }
        }
    }
    v
}

pub(crate) fn gcd(a: &[Elem], b: &[Elem], field: &Field) -> Vec<Elem> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y, field);
        x = y;
        y = r;
    }
    monic(&x)
}

pub(crate) fn derivative(a: &[Elem], field: &Field) -> Vec<Elem> {
    let mut out: Vec<Elem> = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * &field.from_i64(i as i64))
        .collect();
    trim(&mut out);
    out
}

pub(crate) fn eval(a: &[Elem], z: &Elem, field: &Field) -> Elem {
    let mut acc = field.zero();
    for c in a.iter().rev() {
        acc = &(&acc * z) + c;
    }
    acc
}

/// `base^e mod m` over the field, arbitrary-precision exponent.
pub(crate) fn powmod(base: &[Elem], e: &num::BigUint, m: &[Elem], field: &Field) -> Vec<Elem> {
    let mut acc = vec![field.one()];
    let mut b = rem(base, m, field);
    let bits = e.bits();
    for i in 0..bits {
        if e.bit(i) {
            acc = rem(&mul(&acc, &b, field), m, field);
        }
        if i + 1 < bits {
            b = rem(&mul(&b, &b, field), m, field);
        }
    }
    acc
}

/// Synthetic division by (z - r); returns the quotient when the remainder
/// vanishes, `None` otherwise.
pub(crate) fn div_linear_exact(a: &[Elem], r: &Elem, field: &Field) -> Option<Vec<Elem>> {
    let d = deg(a)?;
    if d == 0 {
        return None;
    }
    let mut q = vec![field.zero(); d];
    let mut carry = field.zero();
    for i in (0..=d).rev() {
        let coeff = &a[i] + &(&carry * r);
        if i == 0 {
            if coeff.is_zero() {
                return Some(q);
            }
            return None;
        }
        q[i - 1] = coeff.clone();
        carry = coeff;
    }
    unreachable!()
}

/// A binary form split as Y^ypow times the homogenization of `u`.
pub(crate) struct HomogFactors {
    pub ypow: usize,
    pub u: Vec<Elem>,
}

impl HomogFactors {
    pub fn of(form: &BinaryForm) -> HomogFactors {
        let c = form.coeffs();
        let d = form.degree();
        let ypow = c.iter().take_while(|v| v.is_zero()).count().min(d);
        // dehomogenized polynomial in ascending degree: u_j = c_{d-j}
        let mut u: Vec<Elem> = (0..=(d - ypow)).map(|j| c[d - j].clone()).collect();
        trim(&mut u);
        HomogFactors { ypow, u }
    }

    /// Divide by the linear form of `p` (a known root).
    pub fn divide_linear(&mut self, p: &ProjPoint) {
        if p.is_infinite() {
            assert!(self.ypow > 0, "no factor of Y left");
            self.ypow -= 1;
        } else {
            let field = p.field().clone();
            let q = div_linear_exact(&self.u, p.affine().expect("finite"), &field);
            match q {
                Some(q) => self.u = q,
                None => {
                    // tolerate a tiny residue on the inexact backend
                    assert!(!field.is_exact(), "claimed root does not divide the form");
                    let (q, _) = divmod(
                        &self.u,
                        &[(-p.affine().unwrap()), field.one()],
                        &field,
                    );
                    self.u = q;
                }
            }
        }
    }

    pub fn into_form(self, field: &Field) -> BinaryForm {
        let du = deg(&self.u).unwrap_or(0);
        let mut coeffs = vec![field.zero(); self.ypow];
        for j in (0..=du).rev() {
            coeffs.push(self.u.get(j).cloned().unwrap_or_else(|| field.zero()));
        }
        BinaryForm::new(coeffs)
    }
}

/// Monic gcd of two binary forms: common power of Y times the homogenized
/// gcd of the dehomogenized parts.
pub(crate) fn form_gcd(f: &BinaryForm, g: &BinaryForm) -> Result<BinaryForm, ProjError> {
    let field = f.field().clone();
    if f.is_zero() {
        return Ok(monic_form(g));
    }
    if g.is_zero() {
        return Ok(monic_form(f));
    }
    let hf = HomogFactors::of(f);
    let hg = HomogFactors::of(g);
    let u = gcd(&hf.u, &hg.u, &field);
    let out = HomogFactors { ypow: hf.ypow.min(hg.ypow), u };
    Ok(out.into_form(&field))
}

fn monic_form(f: &BinaryForm) -> BinaryForm {
    let h = HomogFactors::of(f);
    let hm = HomogFactors { ypow: h.ypow, u: monic(&h.u) };
    hm.into_form(f.field())
}
