//! Projective-line geometry (points, brackets, Möbius transformations) and
//! binary-form algebra (resultants, Wronskians, gcd, root extraction).

mod roots;
mod upoly;

pub use roots::RootList;

use crate::fields::{Elem, Field, FieldError};
use crate::CzRng;
use std::cmp::Ordering;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ProjError {
    #[error("projective point needs a nonzero coordinate")]
    BothCoordinatesZero,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("points in a defining triple must be pairwise distinct")]
    DegenerateTriple,
    #[error("the zero form has no well-defined roots")]
    ZeroForm,
    #[error("binary form of degree {0} where degree {1} was required")]
    WrongDegree(usize, usize),
    #[error("root extraction supports degree at most 3, got {0}")]
    DegreeTooLarge(usize),
    #[error("polynomial gcd is not defined on the complex backend")]
    GcdOverComplex,
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A point of the projective line, stored in normalized form:
/// `[x : 1]` when finite, `[1 : 0]` at infinity.
#[derive(Clone, Debug)]
pub struct ProjPoint {
    x: Elem,
    y: Elem,
}

impl ProjPoint {
    /// Normalize a homogeneous pair; rejects `[0 : 0]`.
    pub fn new(x: Elem, y: Elem) -> Result<Self, ProjError> {
        if x.is_zero() && y.is_zero() {
            return Err(ProjError::BothCoordinatesZero);
        }
        if y.is_zero() {
            let f = x.field().clone();
            Ok(ProjPoint { x: f.one(), y: f.zero() })
        } else {
            let v = x.div(&y)?;
            let f = v.field().clone();
            Ok(ProjPoint { x: v, y: f.one() })
        }
    }

    pub fn finite(v: Elem) -> Self {
        let f = v.field().clone();
        ProjPoint { x: v, y: f.one() }
    }

    pub fn infinity(field: &Field) -> Self {
        ProjPoint { x: field.one(), y: field.zero() }
    }

    pub fn from_i64(field: &Field, v: i64) -> Self {
        ProjPoint::finite(field.from_i64(v))
    }

    /// Parse an element literal or `inf`.
    pub fn parse(field: &Field, s: &str) -> Result<Self, FieldError> {
        let t = s.trim();
        if t == "inf" {
            return Ok(ProjPoint::infinity(field));
        }
        Ok(ProjPoint::finite(field.parse_elem(t)?))
    }

    pub fn field(&self) -> &Field {
        self.x.field()
    }

    pub fn is_infinite(&self) -> bool {
        self.y.is_zero()
    }

    /// The affine value; `None` at infinity.
    pub fn affine(&self) -> Option<&Elem> {
        if self.is_infinite() { None } else { Some(&self.x) }
    }

    pub fn x(&self) -> &Elem {
        &self.x
    }

    pub fn y(&self) -> &Elem {
        &self.y
    }

    /// `[d : n]`, the image under z -> 1/z.
    pub fn reciprocal(&self) -> ProjPoint {
        ProjPoint::new(self.y.clone(), self.x.clone()).expect("reciprocal of a valid point")
    }

    /// bracket(P, Q) = x_P y_Q - y_P x_Q on the normalized representatives;
    /// zero exactly when the points coincide.
    pub fn bracket(&self, other: &ProjPoint) -> Elem {
        &(&self.x * &other.y) - &(&self.y * &other.x)
    }

    /// Total order (finite before infinite, finite values by canonical order).
    pub fn cmp_points(&self, other: &ProjPoint) -> Ordering {
        match (self.is_infinite(), other.is_infinite()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Greater,
            (false, true) => Ordering::Less,
            (false, false) => self.x.canonical_cmp(&other.x),
        }
    }
}

impl PartialEq for ProjPoint {
    fn eq(&self, other: &Self) -> bool {
        match (self.is_infinite(), other.is_infinite()) {
            (true, true) => true,
            (false, false) => self.x == other.x,
            _ => false,
        }
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            write!(f, "inf")
        } else {
            write!(f, "{}", self.x)
        }
    }
}

/// An invertible transformation `[x : y] -> [a x + b y : c x + d y]`,
/// stored up to scalar.
#[derive(Clone, Debug)]
pub struct MobiusMap {
    pub a: Elem,
    pub b: Elem,
    pub c: Elem,
    pub d: Elem,
}

impl MobiusMap {
    pub fn new(a: Elem, b: Elem, c: Elem, d: Elem) -> Result<Self, ProjError> {
        let m = MobiusMap { a, b, c, d };
        if m.det().is_zero() {
            return Err(ProjError::SingularMatrix);
        }
        Ok(m)
    }

    pub fn identity(field: &Field) -> Self {
        MobiusMap {
            a: field.one(),
            b: field.zero(),
            c: field.zero(),
            d: field.one(),
        }
    }

    /// z -> z + t
    pub fn translation(t: Elem) -> Self {
        let f = t.field().clone();
        MobiusMap { a: f.one(), b: t, c: f.zero(), d: f.one() }
    }

    /// z -> s z, s nonzero
    pub fn scaling(s: Elem) -> Result<Self, ProjError> {
        let f = s.field().clone();
        MobiusMap::new(s, f.zero(), f.zero(), f.one())
    }

    /// z -> 1/z
    pub fn inversion(field: &Field) -> Self {
        MobiusMap {
            a: field.zero(),
            b: field.one(),
            c: field.one(),
            d: field.zero(),
        }
    }

    pub fn det(&self) -> Elem {
        &(&self.a * &self.d) - &(&self.b * &self.c)
    }

    pub fn field(&self) -> &Field {
        self.a.field()
    }

    pub fn apply(&self, p: &ProjPoint) -> ProjPoint {
        let x = &(&self.a * p.x()) + &(&self.b * p.y());
        let y = &(&self.c * p.x()) + &(&self.d * p.y());
        ProjPoint::new(x, y).expect("nonsingular matrix maps points to points")
    }

    /// self after `rhs` (matrix product self * rhs).
    pub fn compose(&self, rhs: &MobiusMap) -> MobiusMap {
        MobiusMap {
            a: &(&self.a * &rhs.a) + &(&self.b * &rhs.c),
            b: &(&self.a * &rhs.b) + &(&self.b * &rhs.d),
            c: &(&self.c * &rhs.a) + &(&self.d * &rhs.c),
            d: &(&self.c * &rhs.b) + &(&self.d * &rhs.d),
        }
    }

    /// Inverse up to scalar (the adjugate).
    pub fn inverse(&self) -> MobiusMap {
        MobiusMap {
            a: self.d.clone(),
            b: (-&self.b),
            c: (-&self.c),
            d: self.a.clone(),
        }
    }

    /// The transformation sending `(p1, p2, p3)` to `(0, 1, inf)`:
    /// `P -> [bracket(P, p1) * bracket(p2, p3) : bracket(P, p3) * bracket(p2, p1)]`.
    pub fn to_standard_triple(p: &[ProjPoint; 3]) -> Result<MobiusMap, ProjError> {
        let s = p[1].bracket(&p[2]);
        let t = p[1].bracket(&p[0]);
        if s.is_zero() || t.is_zero() || p[0] == p[2] {
            return Err(ProjError::DegenerateTriple);
        }
        MobiusMap::new(
            &p[0].y * &s,
            -&(&p[0].x * &s),
            &p[2].y * &t,
            -&(&p[2].x * &t),
        )
    }

    /// The unique (up to scalar) transformation with `src[i] -> dst[i]`,
    /// verified by applying it to all three sources.
    pub fn from_three(src: &[ProjPoint; 3], dst: &[ProjPoint; 3]) -> Result<MobiusMap, ProjError> {
        let a = Self::to_standard_triple(src)?;
        let b = Self::to_standard_triple(dst)?;
        let g = b.inverse().compose(&a);
        for (s, d) in src.iter().zip(dst.iter()) {
            if g.apply(s) != *d {
                return Err(ProjError::DegenerateTriple);
            }
        }
        Ok(g)
    }
}

/// A binary form  c_0 X^d + c_1 X^(d-1) Y + ... + c_d Y^d. The zero form of a
/// given degree is representable and rejected where roots are requested.
#[derive(Clone, Debug)]
pub struct BinaryForm {
    coeffs: Vec<Elem>,
}

impl BinaryForm {
    /// Coefficients high-X-degree first; at least one (the degree is len-1).
    pub fn new(coeffs: Vec<Elem>) -> Self {
        assert!(!coeffs.is_empty(), "a binary form needs d+1 coefficients");
        let f = coeffs[0].field();
        assert!(coeffs.iter().all(|c| c.field() == f), "mixed fields in a form");
        BinaryForm { coeffs }
    }

    pub fn from_i64(field: &Field, coeffs: &[i64]) -> Self {
        BinaryForm::new(coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn field(&self) -> &Field {
        self.coeffs[0].field()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Evaluate on the normalized representative of `p`.
    pub fn eval(&self, p: &ProjPoint) -> Elem {
        let mut acc = self.field().zero();
        let d = self.degree();
        // sum c_i x^(d-i) y^i by Horner in x over y-powers
        let mut ypow = self.field().one();
        let mut terms: Vec<Elem> = Vec::with_capacity(d + 1);
        for i in 0..=d {
            terms.push(&self.coeffs[i] * &ypow);
            if i < d {
                ypow = &ypow * p.y();
            }
        }
        for term in terms.iter() {
            acc = &(&acc * p.x()) + term;
        }
        acc
    }

    pub fn derivative_x(&self) -> BinaryForm {
        let d = self.degree();
        assert!(d >= 1);
        let mut out = Vec::with_capacity(d);
        for i in 0..d {
            let e = (d - i) as i64;
            out.push(&self.coeffs[i] * &self.field().from_i64(e));
        }
        BinaryForm::new(out)
    }

    pub fn derivative_y(&self) -> BinaryForm {
        let d = self.degree();
        assert!(d >= 1);
        let mut out = Vec::with_capacity(d);
        for i in 1..=d {
            out.push(&self.coeffs[i] * &self.field().from_i64(i as i64));
        }
        BinaryForm::new(out)
    }

    pub fn mul(&self, rhs: &BinaryForm) -> BinaryForm {
        let f = self.field();
        let mut out = vec![f.zero(); self.degree() + rhs.degree() + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        BinaryForm::new(out)
    }

    pub fn scale(&self, s: &Elem) -> BinaryForm {
        BinaryForm::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// The linear form vanishing exactly at `p`: `y_p X - x_p Y`.
    pub fn linear_at(p: &ProjPoint) -> BinaryForm {
        BinaryForm::new(vec![p.y().clone(), -p.x()])
    }

    /// Substitute `(X, Y) -> (a X + b Y, c X + d Y)`.
    pub fn compose_linear(&self, g: &MobiusMap) -> BinaryForm {
        let f = self.field();
        let row0 = BinaryForm::new(vec![g.a.clone(), g.b.clone()]);
        let row1 = BinaryForm::new(vec![g.c.clone(), g.d.clone()]);
        let d = self.degree();
        let mut acc = BinaryForm::new(vec![f.zero(); d + 1]);
        for (i, c) in self.coeffs.iter().enumerate() {
            let mut term = BinaryForm::new(vec![c.clone()]);
            for _ in 0..(d - i) {
                term = term.mul(&row0);
            }
            for _ in 0..i {
                term = term.mul(&row1);
            }
            let mut padded = vec![f.zero(); d + 1];
            let off = d + 1 - term.coeffs.len();
            for (j, t) in term.coeffs.iter().enumerate() {
                padded[off + j] = t.clone();
            }
            let term = BinaryForm::new(padded);
            acc = acc.add(&term);
        }
        acc
    }

    pub fn add(&self, rhs: &BinaryForm) -> BinaryForm {
        assert_eq!(self.degree(), rhs.degree());
        BinaryForm::new(
            self.coeffs
                .iter()
                .zip(rhs.coeffs.iter())
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// Proportionality up to a nonzero scalar (cross-multiplication test).
    pub fn proportional_to(&self, rhs: &BinaryForm) -> bool {
        if self.degree() != rhs.degree() {
            return false;
        }
        if self.is_zero() || rhs.is_zero() {
            return self.is_zero() && rhs.is_zero();
        }
        for i in 0..self.coeffs.len() {
            for j in (i + 1)..self.coeffs.len() {
                let lhs = &self.coeffs[i] * &rhs.coeffs[j];
                let rhs_v = &self.coeffs[j] * &rhs.coeffs[i];
                if lhs != rhs_v {
                    return false;
                }
            }
        }
        true
    }

    /// Roots with multiplicity; see the module documentation for the
    /// per-backend method. Degree at most 3.
    pub fn roots(&self, rng: &mut CzRng) -> Result<RootList, ProjError> {
        roots::roots(self, rng)
    }

    /// Divide out the found roots, leaving the factor that did not split.
    pub fn unsplit_factor(&self, roots: &RootList) -> BinaryForm {
        let mut u = upoly::HomogFactors::of(self);
        for (point, mult) in &roots.entries {
            for _ in 0..*mult {
                u.divide_linear(point);
            }
        }
        u.into_form(self.field())
    }

    /// Multiplicity of `p` as a root of this nonzero form.
    pub fn root_multiplicity(&self, p: &ProjPoint) -> usize {
        let h = upoly::HomogFactors::of(self);
        if p.is_infinite() {
            return h.ypow;
        }
        let field = self.field().clone();
        let r = p.affine().expect("finite point");
        let mut m = 0usize;
        let mut u = h.u;
        while let Some(q) = upoly::div_linear_exact(&u, r, &field) {
            m += 1;
            u = q;
        }
        m
    }
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

fn det_small(m: &[Vec<Elem>]) -> Elem {
    let n = m.len();
    let field = m[0][0].field().clone();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = field.zero();
    for (j, top) in m[0].iter().enumerate() {
        if top.is_zero() {
            continue;
        }
        let minor: Vec<Vec<Elem>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, e)| e.clone())
                    .collect()
            })
            .collect();
        let term = top * &det_small(&minor);
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// Resultant of two degree-2 binary forms as the 4x4 Sylvester determinant;
/// zero exactly when the forms share a projective root.
pub fn resultant2(f: &BinaryForm, g: &BinaryForm) -> Result<Elem, ProjError> {
    if f.degree() != 2 {
        return Err(ProjError::WrongDegree(f.degree(), 2));
    }
    if g.degree() != 2 {
        return Err(ProjError::WrongDegree(g.degree(), 2));
    }
    if f.is_zero() || g.is_zero() {
        return Err(ProjError::ZeroForm);
    }
    let k = f.field();
    let z = k.zero();
    let (a, b) = (f.coeffs(), g.coeffs());
    let m = vec![
        vec![a[0].clone(), a[1].clone(), a[2].clone(), z.clone()],
        vec![z.clone(), a[0].clone(), a[1].clone(), a[2].clone()],
        vec![b[0].clone(), b[1].clone(), b[2].clone(), z.clone()],
        vec![z.clone(), b[0].clone(), b[1].clone(), b[2].clone()],
    ];
    Ok(det_small(&m))
}

/// The Wronskian dF/dX * dG/dY - dF/dY * dG/dX of two degree-2 forms;
/// a degree-2 form whose roots are the critical points of `[F : G]`.
pub fn wronskian(f: &BinaryForm, g: &BinaryForm) -> Result<BinaryForm, ProjError> {
    if f.degree() != 2 {
        return Err(ProjError::WrongDegree(f.degree(), 2));
    }
    if g.degree() != 2 {
        return Err(ProjError::WrongDegree(g.degree(), 2));
    }
    let fx = f.derivative_x();
    let fy = f.derivative_y();
    let gx = g.derivative_x();
    let gy = g.derivative_y();
    let prod1 = fx.mul(&gy);
    let prod2 = fy.mul(&gx);
    Ok(BinaryForm::new(
        prod1
            .coeffs()
            .iter()
            .zip(prod2.coeffs().iter())
            .map(|(a, b)| a - b)
            .collect(),
    ))
}

/// Monic gcd of two binary forms over an exact backend.
pub fn form_gcd(f: &BinaryForm, g: &BinaryForm) -> Result<BinaryForm, ProjError> {
    if !f.field().is_exact() {
        return Err(ProjError::GcdOverComplex);
    }
    if f.is_zero() && g.is_zero() {
        return Err(ProjError::ZeroForm);
    }
    upoly::form_gcd(f, g)
}
