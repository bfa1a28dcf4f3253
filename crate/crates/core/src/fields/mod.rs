//! Field abstraction with four concrete backends: exact rationals, prime
//! fields, finite extension fields, and high-precision complex numbers.
//!
//! Elements carry a shared handle to their field, all representations are
//! canonical (reduced fractions with positive denominator, residues in
//! `[0,p)`, extension coordinates reduced mod the defining polynomial), and
//! equality is exact on the three exact backends and tolerance-based on the
//! complex one. Characteristic two is rejected everywhere.

pub mod bigc;
pub mod fp;
pub mod fppoly;

use astro_float::BigFloat;
use num::bigint::Sign;
use num::{BigInt, BigRational, BigUint, One, Zero};
use rand::Rng;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FieldError {
    #[error("characteristic two is unsupported")]
    CharacteristicTwo,
    #[error("{0} is not an odd prime")]
    NotPrime(u64),
    #[error("invalid field descriptor `{0}`")]
    BadDescriptor(String),
    #[error("invalid element literal `{0}`")]
    BadLiteral(String),
    #[error("modulus is not a monic irreducible of the stated degree: {0}")]
    BadModulus(String),
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
}

/// Default precision (bits) for the complex backend.
pub const DEFAULT_COMPLEX_PRECISION: usize = 128;
/// Default relative comparison tolerance for the complex backend: 2^-80.
pub const DEFAULT_COMPLEX_TOL_LOG2: i32 = -80;

#[derive(Debug)]
enum FieldRepr {
    Rationals,
    Prime {
        p: u64,
    },
    Extension {
        p: u64,
        k: usize,
        /// Monic, degree k, irreducible; low-degree-first, length k+1.
        modulus: Vec<u64>,
    },
    Complex {
        prec: usize,
        tol: BigFloat,
        /// Kept for the descriptor display.
        tol_log2: i32,
    },
}

/// A field descriptor; cheap to clone and share.
#[derive(Clone, Debug)]
pub struct Field(Arc<FieldRepr>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        match (&*self.0, &*other.0) {
            (FieldRepr::Rationals, FieldRepr::Rationals) => true,
            (FieldRepr::Prime { p: a }, FieldRepr::Prime { p: b }) => a == b,
            (
                FieldRepr::Extension { p: pa, k: ka, modulus: ma },
                FieldRepr::Extension { p: pb, k: kb, modulus: mb },
            ) => pa == pb && ka == kb && ma == mb,
            (
                FieldRepr::Complex { prec: qa, tol_log2: ta, .. },
                FieldRepr::Complex { prec: qb, tol_log2: tb, .. },
            ) => qa == qb && ta == tb,
            _ => false,
        }
    }
}
impl Eq for Field {}

fn pow2(log2: i32, prec: usize) -> BigFloat {
    let one = BigFloat::from_f64(1.0, prec);
    let two = BigFloat::from_f64(2.0, prec);
    let mut acc = one;
    for _ in 0..log2.unsigned_abs() {
        acc = if log2 < 0 {
            acc.div(&two, prec, astro_float::RoundingMode::ToEven)
        } else {
            acc.mul(&two, prec, astro_float::RoundingMode::ToEven)
        };
    }
    acc
}

impl Field {
    pub fn rationals() -> Field {
        Field(Arc::new(FieldRepr::Rationals))
    }

    pub fn prime(p: u64) -> Result<Field, FieldError> {
        if p == 2 {
            return Err(FieldError::CharacteristicTwo);
        }
        if !fp::is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(Field(Arc::new(FieldRepr::Prime { p })))
    }

    /// Extension field F_{p^k} with the deterministic smallest modulus.
    pub fn extension(p: u64, k: usize) -> Result<Field, FieldError> {
        if p == 2 {
            return Err(FieldError::CharacteristicTwo);
        }
        if !fp::is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if k == 0 {
            return Err(FieldError::BadDescriptor(format!("Fpk:{p}^0")));
        }
        let modulus = fppoly::smallest_irreducible(p, k);
        Ok(Field(Arc::new(FieldRepr::Extension { p, k, modulus })))
    }

    /// Extension field with an explicit modulus (monic irreducible of degree k).
    pub fn extension_with_modulus(p: u64, k: usize, modulus: Vec<u64>) -> Result<Field, FieldError> {
        if p == 2 {
            return Err(FieldError::CharacteristicTwo);
        }
        if !fp::is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        let mut m = modulus;
        fppoly::trim(&mut m);
        if m.iter().any(|&c| c >= p) {
            return Err(FieldError::BadModulus("coefficient out of range".into()));
        }
        if fppoly::deg(&m) != Some(k) || m[k] != 1 {
            return Err(FieldError::BadModulus(format!("expected monic of degree {k}")));
        }
        if !fppoly::is_irreducible(&m, p) {
            return Err(FieldError::BadModulus("reducible polynomial".into()));
        }
        Ok(Field(Arc::new(FieldRepr::Extension { p, k, modulus: m })))
    }

    pub fn complex(prec: usize) -> Field {
        Self::complex_with_tolerance(prec, DEFAULT_COMPLEX_TOL_LOG2)
    }

    /// Complex backend with explicit precision (bits) and tolerance 2^tol_log2.
    pub fn complex_with_tolerance(prec: usize, tol_log2: i32) -> Field {
        assert!(prec > 0 && tol_log2 < 0, "need positive precision and tolerance < 1");
        let tol = pow2(tol_log2, prec.max(64));
        Field(Arc::new(FieldRepr::Complex { prec, tol, tol_log2 }))
    }

    /// Parse a descriptor: `Q` | `Fp:<p>` | `Fpk:<p>^<k>[,mod=<poly>]` | `C[:<bits>]`.
    pub fn parse(spec: &str) -> Result<Field, FieldError> {
        let s = spec.trim();
        if s == "Q" {
            return Ok(Field::rationals());
        }
        if let Some(rest) = s.strip_prefix("Fp:") {
            let p: u64 = rest
                .trim()
                .parse()
                .map_err(|_| FieldError::BadDescriptor(spec.into()))?;
            return Field::prime(p);
        }
        if let Some(rest) = s.strip_prefix("Fpk:") {
            let (pk, modpart) = match rest.split_once(',') {
                Some((a, b)) => (a, Some(b)),
                None => (rest, None),
            };
            let (ps, ks) = pk
                .split_once('^')
                .ok_or_else(|| FieldError::BadDescriptor(spec.into()))?;
            let p: u64 = ps.trim().parse().map_err(|_| FieldError::BadDescriptor(spec.into()))?;
            let k: usize = ks.trim().parse().map_err(|_| FieldError::BadDescriptor(spec.into()))?;
            match modpart {
                None => return Field::extension(p, k),
                Some(m) => {
                    let m = m
                        .trim()
                        .strip_prefix("mod=")
                        .ok_or_else(|| FieldError::BadDescriptor(spec.into()))?;
                    let coeffs = parse_t_poly(m, p)?;
                    return Field::extension_with_modulus(p, k, coeffs);
                }
            }
        }
        if s == "C" {
            return Ok(Field::complex(DEFAULT_COMPLEX_PRECISION));
        }
        if let Some(rest) = s.strip_prefix("C:") {
            let bits: usize = rest
                .trim()
                .parse()
                .map_err(|_| FieldError::BadDescriptor(spec.into()))?;
            if bits == 0 {
                return Err(FieldError::BadDescriptor(spec.into()));
            }
            return Ok(Field::complex(bits));
        }
        Err(FieldError::BadDescriptor(spec.into()))
    }

    pub fn characteristic(&self) -> u64 {
        match &*self.0 {
            FieldRepr::Rationals | FieldRepr::Complex { .. } => 0,
            FieldRepr::Prime { p } | FieldRepr::Extension { p, .. } => *p,
        }
    }

    pub fn is_exact(&self) -> bool {
        !matches!(&*self.0, FieldRepr::Complex { .. })
    }

    /// Number of elements for the finite backends.
    pub fn size(&self) -> Option<BigUint> {
        match &*self.0 {
            FieldRepr::Prime { p } => Some(BigUint::from(*p)),
            FieldRepr::Extension { p, k, .. } => Some(BigUint::from(*p).pow(*k as u32)),
            _ => None,
        }
    }

    pub fn complex_precision(&self) -> Option<usize> {
        match &*self.0 {
            FieldRepr::Complex { prec, .. } => Some(*prec),
            _ => None,
        }
    }

    pub fn zero(&self) -> Elem {
        match &*self.0 {
            FieldRepr::Rationals => self.wrap(Value::Rat(BigRational::zero())),
            FieldRepr::Prime { .. } => self.wrap(Value::Mod(0)),
            FieldRepr::Extension { k, .. } => self.wrap(Value::Ext(vec![0; *k])),
            FieldRepr::Complex { prec, .. } => self.wrap(Value::Cplx(bigc::zero(*prec))),
        }
    }

    pub fn one(&self) -> Elem {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Elem {
        match &*self.0 {
            FieldRepr::Rationals => self.wrap(Value::Rat(BigRational::from_integer(v.into()))),
            FieldRepr::Prime { p } => self.wrap(Value::Mod(fp::reduce_i64(v, *p))),
            FieldRepr::Extension { p, k, .. } => {
                let mut c = vec![0u64; *k];
                c[0] = fp::reduce_i64(v, *p);
                self.wrap(Value::Ext(c))
            }
            FieldRepr::Complex { prec, .. } => self.wrap(Value::Cplx(bigc::from_i64(v, *prec))),
        }
    }

    /// The image of the rational n/d; exact in every backend that can hold it.
    pub fn from_ratio_i64(&self, n: i64, d: i64) -> Result<Elem, FieldError> {
        self.from_i64(n).div(&self.from_i64(d))
    }

    fn wrap(&self, value: Value) -> Elem {
        Elem { field: self.clone(), value }
    }

    /// Parse an element literal in this field's grammar.
    pub fn parse_elem(&self, lit: &str) -> Result<Elem, FieldError> {
        let s = lit.trim();
        if s.is_empty() {
            return Err(FieldError::BadLiteral(lit.into()));
        }
        match &*self.0 {
            FieldRepr::Rationals => {
                let (n, d) = match s.split_once('/') {
                    None => (s, "1"),
                    Some((a, b)) => (a, b),
                };
                let n: BigInt = n.trim().parse().map_err(|_| FieldError::BadLiteral(lit.into()))?;
                let d: BigInt = d.trim().parse().map_err(|_| FieldError::BadLiteral(lit.into()))?;
                if d.is_zero() {
                    return Err(FieldError::DivisionByZero);
                }
                Ok(self.wrap(Value::Rat(BigRational::new(n, d))))
            }
            FieldRepr::Prime { p } => {
                let v: BigInt = s.parse().map_err(|_| FieldError::BadLiteral(lit.into()))?;
                Ok(self.wrap(Value::Mod(reduce_bigint(&v, *p))))
            }
            FieldRepr::Extension { p, k, .. } => {
                let mut c = parse_t_poly(s, *p)?;
                if c.len() > *k {
                    // reduce literals of degree >= k mod the modulus
                    let m = match &*self.0 {
                        FieldRepr::Extension { modulus, .. } => modulus.clone(),
                        _ => unreachable!(),
                    };
                    c = fppoly::rem(&c, &m, *p);
                }
                c.resize(*k, 0);
                Ok(self.wrap(Value::Ext(c)))
            }
            FieldRepr::Complex { prec, .. } => {
                let (re, im) = split_complex_literal(s).ok_or_else(|| FieldError::BadLiteral(lit.into()))?;
                let re = bigc::parse_real(&re, *prec).ok_or_else(|| FieldError::BadLiteral(lit.into()))?;
                let im = match im {
                    None => BigFloat::from_f64(0.0, *prec),
                    Some(t) => bigc::parse_real(&t, *prec).ok_or_else(|| FieldError::BadLiteral(lit.into()))?,
                };
                Ok(self.wrap(Value::Cplx(bigc::CVal { re, im })))
            }
        }
    }

    /// Uniform element of a finite backend; small random data otherwise.
    pub fn sample<R: Rng>(&self, rng: &mut R) -> Elem {
        match &*self.0 {
            FieldRepr::Rationals => {
                let n = rng.gen_range(-30i64..=30);
                let d = rng.gen_range(1i64..=10);
                self.wrap(Value::Rat(BigRational::new(n.into(), d.into())))
            }
            FieldRepr::Prime { p } => self.wrap(Value::Mod(rng.gen_range(0..*p))),
            FieldRepr::Extension { p, k, .. } => {
                let c: Vec<u64> = (0..*k).map(|_| rng.gen_range(0..*p)).collect();
                self.wrap(Value::Ext(c))
            }
            FieldRepr::Complex { prec, .. } => {
                let re = rng.gen_range(-1.0f64..1.0);
                let im = rng.gen_range(-1.0f64..1.0);
                self.wrap(Value::Cplx(bigc::from_f64(re, im, *prec)))
            }
        }
    }

    /// A primitive cube root of unity (complex backend only).
    pub fn complex_omega(&self) -> Elem {
        match &*self.0 {
            FieldRepr::Complex { prec, .. } => self.wrap(Value::Cplx(bigc::omega(*prec))),
            _ => panic!("complex_omega on an exact backend"),
        }
    }

    /// Exact complex element from a float pair (complex backend only).
    pub fn from_f64_complex(&self, re: f64, im: f64) -> Elem {
        match &*self.0 {
            FieldRepr::Complex { prec, .. } => self.wrap(Value::Cplx(bigc::from_f64(re, im, *prec))),
            _ => panic!("from_f64_complex on an exact backend"),
        }
    }

    /// Wrap a rational value (rational backend only).
    pub fn from_rational(&self, r: BigRational) -> Elem {
        match &*self.0 {
            FieldRepr::Rationals => self.wrap(Value::Rat(r)),
            _ => panic!("from_rational on a non-rational backend"),
        }
    }

    /// All elements of a finite backend in canonical order. Intended for
    /// exhaustive checks over small fields.
    pub fn elements(&self) -> Option<Vec<Elem>> {
        match &*self.0 {
            FieldRepr::Prime { p } => Some((0..*p).map(|v| self.wrap(Value::Mod(v))).collect()),
            FieldRepr::Extension { p, k, .. } => {
                let mut out = Vec::new();
                let mut c = vec![0u64; *k];
                loop {
                    out.push(self.wrap(Value::Ext(c.clone())));
                    let mut i = 0;
                    loop {
                        if i == *k {
                            return Some(out);
                        }
                        c[i] += 1;
                        if c[i] < *p {
                            break;
                        }
                        c[i] = 0;
                        i += 1;
                    }
                }
            }
            _ => None,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            FieldRepr::Rationals => write!(f, "Q"),
            FieldRepr::Prime { p } => write!(f, "Fp:{p}"),
            FieldRepr::Extension { p, k, modulus } => {
                write!(f, "Fpk:{p}^{k},mod={}", format_t_poly(modulus))
            }
            FieldRepr::Complex { prec, .. } => write!(f, "C:{prec}"),
        }
    }
}

fn reduce_bigint(v: &BigInt, p: u64) -> u64 {
    let m = (v % BigInt::from(p) + BigInt::from(p)) % BigInt::from(p);
    m.to_u64_digits().1.first().copied().unwrap_or(0)
}

/// Split `<float>[+<float>i]` into real and optional imaginary text.
fn split_complex_literal(s: &str) -> Option<(String, Option<String>)> {
    let bytes = s.as_bytes();
    if s.ends_with('i') || s.ends_with('I') {
        let body = &s[..s.len() - 1];
        // find the sign that separates re from im: a '+'/'-' not at the start
        // and not part of an exponent
        let mut split_at = None;
        for (idx, &b) in body.as_bytes().iter().enumerate().skip(1) {
            if (b == b'+' || b == b'-')
                && !matches!(body.as_bytes()[idx - 1], b'e' | b'E')
            {
                split_at = Some(idx);
            }
        }
        let idx = split_at?;
        let re = body[..idx].to_string();
        let im = body[idx..].to_string();
        return Some((re, Some(im)));
    }
    if bytes.contains(&b'i') {
        return None;
    }
    Some((s.to_string(), None))
}

fn parse_t_poly(s: &str, p: u64) -> Result<Vec<u64>, FieldError> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(FieldError::BadLiteral(s.into()));
    }
    let mut coeffs: Vec<u64> = Vec::new();
    let mut term = String::new();
    let mut terms: Vec<String> = Vec::new();
    for (i, ch) in compact.chars().enumerate() {
        if (ch == '+' || ch == '-') && i > 0 {
            terms.push(term.clone());
            term.clear();
            if ch == '-' {
                term.push('-');
            }
        } else {
            term.push(ch);
        }
    }
    terms.push(term);
    for t in terms {
        if t.is_empty() || t == "-" {
            return Err(FieldError::BadLiteral(s.into()));
        }
        let (coef_str, power) = match t.find('t') {
            None => (t.as_str(), 0usize),
            Some(pos) => {
                let coef = &t[..pos];
                let rest = &t[pos + 1..];
                let power = if rest.is_empty() {
                    1
                } else {
                    rest.strip_prefix('^')
                        .and_then(|e| e.parse::<usize>().ok())
                        .ok_or_else(|| FieldError::BadLiteral(s.into()))?
                };
                let coef = coef.strip_suffix('*').unwrap_or(coef);
                (coef, power)
            }
        };
        let c: i64 = match coef_str {
            "" => 1,
            "-" => -1,
            other => other.parse().map_err(|_| FieldError::BadLiteral(s.into()))?,
        };
        if coeffs.len() <= power {
            coeffs.resize(power + 1, 0);
        }
        coeffs[power] = fp::add(coeffs[power], fp::reduce_i64(c, p), p);
    }
    fppoly::trim(&mut coeffs);
    Ok(coeffs)
}

fn format_t_poly(c: &[u64]) -> String {
    let mut parts: Vec<String> = Vec::new();
    for (i, &v) in c.iter().enumerate().rev() {
        if v == 0 {
            continue;
        }
        let part = match (i, v) {
            (0, _) => format!("{v}"),
            (1, 1) => "t".to_string(),
            (1, _) => format!("{v}*t"),
            (_, 1) => format!("t^{i}"),
            (_, _) => format!("{v}*t^{i}"),
        };
        parts.push(part);
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join("+")
    }
}

#[derive(Clone, Debug)]
enum Value {
    Rat(BigRational),
    Mod(u64),
    Ext(Vec<u64>),
    Cplx(bigc::CVal),
}

/// An element of one of the four field backends.
#[derive(Clone, Debug)]
pub struct Elem {
    field: Field,
    value: Value,
}

impl Elem {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn same_field(&self, other: &Elem) -> bool {
        self.field == other.field
    }

    fn expect_same_field(&self, other: &Elem) {
        assert!(self.same_field(other), "operands belong to different fields");
    }

    pub fn is_zero(&self) -> bool {
        match (&self.value, &*self.field.0) {
            (Value::Rat(r), _) => r.is_zero(),
            (Value::Mod(v), _) => *v == 0,
            (Value::Ext(c), _) => c.iter().all(|&x| x == 0),
            (Value::Cplx(c), FieldRepr::Complex { prec, tol, .. }) => bigc::is_zero(c, *prec, tol),
            _ => unreachable!(),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == self.field.one()
    }

    fn binop(
        &self,
        rhs: &Elem,
        frat: impl Fn(&BigRational, &BigRational) -> BigRational,
        fmod: impl Fn(u64, u64, u64) -> u64,
        fext: impl Fn(&[u64], &[u64], u64) -> Vec<u64>,
        fcpx: impl Fn(&bigc::CVal, &bigc::CVal, usize) -> bigc::CVal,
    ) -> Elem {
        self.expect_same_field(rhs);
        let value = match (&self.value, &rhs.value, &*self.field.0) {
            (Value::Rat(a), Value::Rat(b), _) => Value::Rat(frat(a, b)),
            (Value::Mod(a), Value::Mod(b), FieldRepr::Prime { p }) => Value::Mod(fmod(*a, *b, *p)),
            (Value::Ext(a), Value::Ext(b), FieldRepr::Extension { p, k, .. }) => {
                let mut c = fext(a, b, *p);
                c.resize(*k, 0);
                Value::Ext(c)
            }
            (Value::Cplx(a), Value::Cplx(b), FieldRepr::Complex { prec, .. }) => {
                Value::Cplx(fcpx(a, b, *prec))
            }
            _ => unreachable!("value/backend mismatch"),
        };
        Elem { field: self.field.clone(), value }
    }

    pub fn add_ref(&self, rhs: &Elem) -> Elem {
        self.binop(rhs, |a, b| a + b, fp::add, fppoly::add, bigc::add)
    }

    pub fn sub_ref(&self, rhs: &Elem) -> Elem {
        self.binop(rhs, |a, b| a - b, fp::sub, fppoly::sub, bigc::sub)
    }

    pub fn mul_ref(&self, rhs: &Elem) -> Elem {
        self.binop(
            rhs,
            |a, b| a * b,
            fp::mul,
            |a, b, p| {
                let m = match &*self.field.0 {
                    FieldRepr::Extension { modulus, .. } => modulus,
                    _ => unreachable!(),
                };
                fppoly::rem(&fppoly::mul(a, b, p), m, p)
            },
            bigc::mul,
        )
    }

    pub fn neg_ref(&self) -> Elem {
        let value = match (&self.value, &*self.field.0) {
            (Value::Rat(a), _) => Value::Rat(-a),
            (Value::Mod(a), FieldRepr::Prime { p }) => Value::Mod(fp::neg(*a, *p)),
            (Value::Ext(a), FieldRepr::Extension { p, .. }) => {
                Value::Ext(a.iter().map(|&c| fp::neg(c, *p)).collect())
            }
            (Value::Cplx(a), _) => Value::Cplx(bigc::neg(a)),
            _ => unreachable!(),
        };
        Elem { field: self.field.clone(), value }
    }

    pub fn inv(&self) -> Result<Elem, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let value = match (&self.value, &*self.field.0) {
            (Value::Rat(a), _) => Value::Rat(a.recip()),
            (Value::Mod(a), FieldRepr::Prime { p }) => Value::Mod(fp::inv(*a, *p)),
            (Value::Ext(a), FieldRepr::Extension { p, k, modulus }) => {
                let mut c = fppoly::inv_mod(a, modulus, *p).ok_or(FieldError::DivisionByZero)?;
                c.resize(*k, 0);
                Value::Ext(c)
            }
            (Value::Cplx(a), FieldRepr::Complex { prec, .. }) => {
                let one = bigc::from_f64(1.0, 0.0, *prec);
                Value::Cplx(bigc::div(&one, a, *prec).ok_or(FieldError::DivisionByZero)?)
            }
            _ => unreachable!(),
        };
        Ok(Elem { field: self.field.clone(), value })
    }

    pub fn div(&self, rhs: &Elem) -> Result<Elem, FieldError> {
        if !self.same_field(rhs) {
            return Err(FieldError::FieldMismatch);
        }
        if rhs.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        // single rounding on the complex backend; reciprocal is exact elsewhere
        if let (Value::Cplx(a), Value::Cplx(b), FieldRepr::Complex { prec, .. }) =
            (&self.value, &rhs.value, &*self.field.0)
        {
            let v = bigc::div(a, b, *prec).ok_or(FieldError::DivisionByZero)?;
            return Ok(self.field.wrap(Value::Cplx(v)));
        }
        Ok(self.mul_ref(&rhs.inv()?))
    }

    pub fn pow_u64(&self, mut e: u64) -> Elem {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            base = base.mul_ref(&base);
            e >>= 1;
        }
        acc
    }

    /// Total order per backend: rationals by value, residues by value,
    /// extension elements by base-p value of the coordinate vector (high
    /// degree most significant), complex lexicographically on (re, im) with
    /// tolerance-collapsed equality.
    pub fn canonical_cmp(&self, other: &Elem) -> Ordering {
        self.expect_same_field(other);
        match (&self.value, &other.value, &*self.field.0) {
            (Value::Rat(a), Value::Rat(b), _) => a.cmp(b),
            (Value::Mod(a), Value::Mod(b), _) => a.cmp(b),
            (Value::Ext(a), Value::Ext(b), _) => a.iter().rev().cmp(b.iter().rev()),
            (Value::Cplx(a), Value::Cplx(b), FieldRepr::Complex { prec, tol, .. }) => {
                bigc::cmp(a, b, *prec, tol)
            }
            _ => unreachable!(),
        }
    }

    /// Reduce a rational element into a prime or extension field.
    /// Fails when the characteristic divides the denominator.
    pub fn reduce_into(&self, target: &Field) -> Result<Elem, FieldError> {
        let r = match &self.value {
            Value::Rat(r) => r,
            _ => return Err(FieldError::FieldMismatch),
        };
        let p = target.characteristic();
        if p == 0 {
            if *target == self.field {
                return Ok(self.clone());
            }
            // rational into the complex backend
            if let FieldRepr::Complex { prec, .. } = &*target.0 {
                let num = bigint_to_bigfloat(r.numer(), *prec);
                let den = bigint_to_bigfloat(r.denom(), *prec);
                let v = num.div(&den, *prec, astro_float::RoundingMode::ToEven);
                return Ok(target.wrap(Value::Cplx(bigc::CVal {
                    re: v,
                    im: BigFloat::from_f64(0.0, *prec),
                })));
            }
            return Err(FieldError::FieldMismatch);
        }
        let den = reduce_bigint(r.denom(), p);
        if den == 0 {
            return Err(FieldError::DivisionByZero);
        }
        let num = reduce_bigint(r.numer(), p);
        let v = fp::mul(num, fp::inv(den, p), p);
        Ok(match &*target.0 {
            FieldRepr::Prime { .. } => target.wrap(Value::Mod(v)),
            FieldRepr::Extension { k, .. } => {
                let mut c = vec![0u64; *k];
                c[0] = v;
                target.wrap(Value::Ext(c))
            }
            _ => unreachable!(),
        })
    }

    /// Access the complex payload (complex backend only).
    pub fn complex_parts(&self) -> Option<(&BigFloat, &BigFloat)> {
        match &self.value {
            Value::Cplx(c) => Some((&c.re, &c.im)),
            _ => None,
        }
    }

    /// Principal square root (complex backend only).
    pub fn complex_sqrt(&self) -> Elem {
        match (&self.value, &*self.field.0) {
            (Value::Cplx(c), FieldRepr::Complex { prec, .. }) => {
                self.field.wrap(Value::Cplx(bigc::sqrt(c, *prec)))
            }
            _ => panic!("complex_sqrt on an exact backend"),
        }
    }

    /// Principal cube root (complex backend only).
    pub fn complex_cbrt(&self) -> Elem {
        match (&self.value, &*self.field.0) {
            (Value::Cplx(c), FieldRepr::Complex { prec, .. }) => {
                self.field.wrap(Value::Cplx(bigc::cbrt(c, *prec)))
            }
            _ => panic!("complex_cbrt on an exact backend"),
        }
    }

    /// Compare squared moduli (complex backend only).
    pub fn complex_abs2_cmp(&self, other: &Elem) -> Ordering {
        match (&self.value, &other.value, &*self.field.0) {
            (Value::Cplx(a), Value::Cplx(b), FieldRepr::Complex { prec, .. }) => {
                bigc::norm2(a, *prec)
                    .partial_cmp(&bigc::norm2(b, *prec))
                    .unwrap_or(Ordering::Equal)
            }
            _ => panic!("complex_abs2_cmp on an exact backend"),
        }
    }

    /// The underlying rational (rational backend only).
    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.value {
            Value::Rat(r) => Some(r),
            _ => None,
        }
    }

    /// Zero test relative to an explicit scale: exact on exact backends,
    /// |self| <= tol * |scale| on the complex one.
    pub fn is_zero_relative_to(&self, scale: &Elem) -> bool {
        match (&self.value, &scale.value, &*self.field.0) {
            (Value::Cplx(a), Value::Cplx(s), FieldRepr::Complex { prec, tol, .. }) => {
                let an = bigc::sup_norm(a, *prec);
                let sn = bigc::sup_norm(s, *prec);
                an.partial_cmp(&tol.mul(&sn, *prec, astro_float::RoundingMode::ToEven))
                    != Some(Ordering::Greater)
            }
            _ => self.is_zero(),
        }
    }

    /// |value| as an f64 estimate (complex backend only); for diagnostics.
    pub fn complex_abs_estimate(&self) -> Option<f64> {
        let (re, im) = self.complex_parts()?;
        let r: f64 = format!("{re}").parse().unwrap_or(f64::NAN);
        let i: f64 = format!("{im}").parse().unwrap_or(f64::NAN);
        Some(r.hypot(i))
    }
}

fn bigint_to_bigfloat(v: &BigInt, prec: usize) -> BigFloat {
    let (sign, digits) = v.to_radix_be(10);
    let mut s: String = if sign == Sign::Minus { "-".into() } else { String::new() };
    for d in digits {
        s.push((b'0' + d) as char);
    }
    if s.is_empty() || s == "-" {
        s.push('0');
    }
    bigc::parse_real(&s, prec).expect("integer literal")
}

impl PartialEq for Elem {
    fn eq(&self, other: &Self) -> bool {
        if !self.same_field(other) {
            return false;
        }
        match (&self.value, &other.value, &*self.field.0) {
            (Value::Rat(a), Value::Rat(b), _) => a == b,
            (Value::Mod(a), Value::Mod(b), _) => a == b,
            (Value::Ext(a), Value::Ext(b), _) => a == b,
            (Value::Cplx(a), Value::Cplx(b), FieldRepr::Complex { prec, tol, .. }) => {
                bigc::eq(a, b, *prec, tol)
            }
            _ => false,
        }
    }
}

impl Add for &Elem {
    type Output = Elem;
    fn add(self, rhs: &Elem) -> Elem {
        self.add_ref(rhs)
    }
}

impl Sub for &Elem {
    type Output = Elem;
    fn sub(self, rhs: &Elem) -> Elem {
        self.sub_ref(rhs)
    }
}

impl Mul for &Elem {
    type Output = Elem;
    fn mul(self, rhs: &Elem) -> Elem {
        self.mul_ref(rhs)
    }
}

impl Neg for &Elem {
    type Output = Elem;
    fn neg(self) -> Elem {
        self.neg_ref()
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            Value::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Value::Mod(v) => write!(f, "{v}"),
            Value::Ext(c) => write!(f, "{}", format_t_poly(c)),
            Value::Cplx(c) => {
                if c.im.is_zero() {
                    write!(f, "{}", bigc::format_real(&c.re))
                } else {
                    let im = bigc::format_real(&c.im);
                    if im.starts_with('-') {
                        write!(f, "{}{}i", bigc::format_real(&c.re), im)
                    } else {
                        write!(f, "{}+{}i", bigc::format_real(&c.re), im)
                    }
                }
            }
        }
    }
}
