//! Arbitrary-precision complex arithmetic with a per-field precision and a
//! relative comparison tolerance. Real parts are `astro_float::BigFloat`;
//! every operation rounds to the owning field's precision.

use astro_float::{BigFloat, Consts, RoundingMode, Radix};
use std::cell::RefCell;
use std::cmp::Ordering;

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constants cache"));
}

fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

/// A complex number; always finite (never NaN/Inf).
#[derive(Clone, Debug)]
pub struct CVal {
    pub re: BigFloat,
    pub im: BigFloat,
}

pub fn zero(prec: usize) -> CVal {
    CVal { re: BigFloat::from_f64(0.0, prec), im: BigFloat::from_f64(0.0, prec) }
}

pub fn from_f64(re: f64, im: f64, prec: usize) -> CVal {
    CVal { re: BigFloat::from_f64(re, prec), im: BigFloat::from_f64(im, prec) }
}

pub fn from_i64(v: i64, prec: usize) -> CVal {
    CVal { re: BigFloat::from_i64(v, prec), im: BigFloat::from_f64(0.0, prec) }
}

pub fn add(a: &CVal, b: &CVal, p: usize) -> CVal {
    CVal { re: a.re.add(&b.re, p, RM), im: a.im.add(&b.im, p, RM) }
}

pub fn sub(a: &CVal, b: &CVal, p: usize) -> CVal {
    CVal { re: a.re.sub(&b.re, p, RM), im: a.im.sub(&b.im, p, RM) }
}

pub fn neg(a: &CVal) -> CVal {
    CVal { re: a.re.neg(), im: a.im.neg() }
}

pub fn mul(a: &CVal, b: &CVal, p: usize) -> CVal {
    let re = a.re.mul(&b.re, p, RM).sub(&a.im.mul(&b.im, p, RM), p, RM);
    let im = a.re.mul(&b.im, p, RM).add(&a.im.mul(&b.re, p, RM), p, RM);
    CVal { re, im }
}

/// Squared modulus re^2 + im^2.
pub fn norm2(a: &CVal, p: usize) -> BigFloat {
    a.re.mul(&a.re, p, RM).add(&a.im.mul(&a.im, p, RM), p, RM)
}

pub fn modulus(a: &CVal, p: usize) -> BigFloat {
    norm2(a, p).sqrt(p, RM)
}

/// Sup-norm max(|re|, |im|); cheap scale estimate for tolerance tests.
pub fn sup_norm(a: &CVal, _p: usize) -> BigFloat {
    let r = a.re.abs();
    let i = a.im.abs();
    if r.partial_cmp(&i) == Some(Ordering::Less) { i } else { r }
}

/// `None` when the divisor is zero (exactly).
pub fn div(a: &CVal, b: &CVal, p: usize) -> Option<CVal> {
    let n2 = norm2(b, p);
    if n2.is_zero() {
        return None;
    }
    let re = a.re.mul(&b.re, p, RM).add(&a.im.mul(&b.im, p, RM), p, RM).div(&n2, p, RM);
    let im = a.im.mul(&b.re, p, RM).sub(&a.re.mul(&b.im, p, RM), p, RM).div(&n2, p, RM);
    Some(CVal { re, im })
}

/// Relative equality: |a-b|_sup <= tol * max(scale, 1-ulp floor at `tol`).
/// Two values both below `tol` in magnitude compare equal.
pub fn eq(a: &CVal, b: &CVal, p: usize, tol: &BigFloat) -> bool {
    let d = sub(a, b, p);
    let dn = sup_norm(&d, p);
    let sa = sup_norm(a, p);
    let sb = sup_norm(b, p);
    let scale = if sa.partial_cmp(&sb) == Some(Ordering::Less) { sb } else { sa };
    if scale.partial_cmp(tol) != Some(Ordering::Greater) {
        return true; // both essentially zero
    }
    dn.partial_cmp(&tol.mul(&scale, p, RM)) != Some(Ordering::Greater)
}

pub fn is_zero(a: &CVal, p: usize, tol: &BigFloat) -> bool {
    sup_norm(a, p).partial_cmp(tol) != Some(Ordering::Greater)
}

/// Total order on (re, im) with tolerance-collapsed equality per component.
pub fn cmp(a: &CVal, b: &CVal, p: usize, tol: &BigFloat) -> Ordering {
    let real_eq = real_close(&a.re, &b.re, p, tol);
    if !real_eq {
        return a.re.partial_cmp(&b.re).unwrap_or(Ordering::Equal);
    }
    if real_close(&a.im, &b.im, p, tol) {
        return Ordering::Equal;
    }
    a.im.partial_cmp(&b.im).unwrap_or(Ordering::Equal)
}

fn real_close(a: &BigFloat, b: &BigFloat, p: usize, tol: &BigFloat) -> bool {
    let d = a.sub(b, p, RM).abs();
    let sa = a.abs();
    let sb = b.abs();
    let scale = if sa.partial_cmp(&sb) == Some(Ordering::Less) { sb } else { sa };
    if scale.partial_cmp(tol) != Some(Ordering::Greater) {
        return true;
    }
    d.partial_cmp(&tol.mul(&scale, p, RM)) != Some(Ordering::Greater)
}

/// Principal square root via the real-part formula (no trigonometry).
pub fn sqrt(a: &CVal, p: usize) -> CVal {
    let two = BigFloat::from_f64(2.0, p);
    if a.im.is_zero() {
        if a.re.is_negative() {
            return CVal {
                re: BigFloat::from_f64(0.0, p),
                im: a.re.neg().sqrt(p, RM),
            };
        }
        return CVal { re: a.re.sqrt(p, RM), im: BigFloat::from_f64(0.0, p) };
    }
    let m = modulus(a, p);
    let re = m.add(&a.re, p, RM).div(&two, p, RM).sqrt(p, RM);
    let mut im = m.sub(&a.re, p, RM).div(&two, p, RM).sqrt(p, RM);
    if a.im.is_negative() {
        im = im.neg();
    }
    CVal { re, im }
}

fn atan2(y: &BigFloat, x: &BigFloat, p: usize) -> BigFloat {
    with_consts(|cc| {
        let pi = cc.pi(p, RM);
        if x.is_zero() && y.is_zero() {
            return BigFloat::from_f64(0.0, p);
        }
        if x.is_zero() {
            let half_pi = pi.div(&BigFloat::from_f64(2.0, p), p, RM);
            return if y.is_negative() { half_pi.neg() } else { half_pi };
        }
        let base = y.div(x, p, RM).atan(p, RM, cc);
        if !x.is_negative() {
            base
        } else if y.is_negative() {
            base.sub(&pi, p, RM)
        } else {
            base.add(&pi, p, RM)
        }
    })
}

/// Principal cube root via polar form.
pub fn cbrt(a: &CVal, p: usize) -> CVal {
    if a.im.is_zero() {
        return CVal { re: a.re.cbrt(p, RM), im: BigFloat::from_f64(0.0, p) };
    }
    let r = modulus(a, p).cbrt(p, RM);
    let three = BigFloat::from_f64(3.0, p);
    let theta = atan2(&a.im, &a.re, p).div(&three, p, RM);
    with_consts(|cc| CVal {
        re: r.mul(&theta.cos(p, RM, cc), p, RM),
        im: r.mul(&theta.sin(p, RM, cc), p, RM),
    })
}

/// A primitive cube root of unity, (-1 + sqrt(3) i) / 2.
pub fn omega(p: usize) -> CVal {
    let half = BigFloat::from_f64(0.5, p);
    let s3 = BigFloat::from_f64(3.0, p).sqrt(p, RM);
    CVal { re: half.neg(), im: s3.mul(&half, p, RM) }
}

pub fn parse_real(s: &str, p: usize) -> Option<BigFloat> {
    let v = with_consts(|cc| BigFloat::parse(s, Radix::Dec, p, RM, cc));
    if v.is_nan() || v.is_inf() {
        return None;
    }
    Some(v)
}

pub fn format_real(v: &BigFloat) -> String {
    format!("{v}")
}
