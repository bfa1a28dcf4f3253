//! Degree-two rational self-maps of the projective line: construction with
//! the resultant check, evaluation, fixed and critical points, multipliers,
//! and conjugation.

use crate::fields::{Elem, Field, FieldError};
use crate::projpoly::{resultant2, wronskian, BinaryForm, MobiusMap, ProjError, ProjPoint, RootList};
use crate::CzRng;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum MapError {
    #[error("degenerate: common root")]
    Degenerate,
    #[error("point is not a fixed point of the map")]
    NotFixed,
    #[error("fixed points do not all lie in the field; unsplit factor {0}")]
    IncompleteFixedPoints(String),
    #[error("critical points do not lie in the field; irreducible factor {0}")]
    IrrationalCriticalPoints(String),
    #[error(transparent)]
    Proj(#[from] ProjError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A rational map `[a X^2 + b XY + c Y^2 : d X^2 + e XY + f Y^2]` with
/// nonzero resultant, stored up to scalar in a canonical representative.
#[derive(Clone, Debug)]
pub struct RatMap2 {
    coeffs: [Elem; 6],
}

impl RatMap2 {
    /// Build from the six coefficients `(a, b, c, d, e, f)`.
    pub fn new(coeffs: [Elem; 6]) -> Result<Self, MapError> {
        let field = coeffs[0].field().clone();
        if field.characteristic() == 2 {
            return Err(MapError::Field(FieldError::CharacteristicTwo));
        }
        let map = RatMap2 { coeffs: canonicalize(coeffs) };
        let num = map.numerator();
        let den = map.denominator();
        if num.is_zero() || den.is_zero() {
            return Err(MapError::Degenerate);
        }
        let res = resultant2(&num, &den)?;
        if res.is_zero() {
            return Err(MapError::Degenerate);
        }
        Ok(map)
    }

    pub fn from_i64(field: &Field, coeffs: &[i64; 6]) -> Result<Self, MapError> {
        let c: Vec<Elem> = coeffs.iter().map(|&v| field.from_i64(v)).collect();
        RatMap2::new(c.try_into().expect("six coefficients"))
    }

    pub fn from_forms(num: &BinaryForm, den: &BinaryForm) -> Result<Self, MapError> {
        assert_eq!(num.degree(), 2);
        assert_eq!(den.degree(), 2);
        let n = num.coeffs();
        let d = den.coeffs();
        RatMap2::new([
            n[0].clone(),
            n[1].clone(),
            n[2].clone(),
            d[0].clone(),
            d[1].clone(),
            d[2].clone(),
        ])
    }

    pub fn coeffs(&self) -> &[Elem; 6] {
        &self.coeffs
    }

    pub fn field(&self) -> &Field {
        self.coeffs[0].field()
    }

    pub fn numerator(&self) -> BinaryForm {
        BinaryForm::new(self.coeffs[0..3].to_vec())
    }

    pub fn denominator(&self) -> BinaryForm {
        BinaryForm::new(self.coeffs[3..6].to_vec())
    }

    pub fn resultant(&self) -> Elem {
        resultant2(&self.numerator(), &self.denominator()).expect("degree-2 forms")
    }

    /// Resultant of the display representative (integer-valued over Q).
    pub fn display_resultant(&self) -> Elem {
        let c = self.display_coeffs();
        let num = BinaryForm::new(c[0..3].to_vec());
        let den = BinaryForm::new(c[3..6].to_vec());
        resultant2(&num, &den).expect("degree-2 forms")
    }

    pub fn eval(&self, p: &ProjPoint) -> ProjPoint {
        let x = self.numerator().eval(p);
        let y = self.denominator().eval(p);
        ProjPoint::new(x, y).expect("nonzero resultant forbids 0/0")
    }

    /// The binary cubic `Y phi_0 - X phi_1`, whose roots are the fixed points.
    pub fn fixed_point_form(&self) -> BinaryForm {
        let [a, b, c, d, e, f] = &self.coeffs;
        // -d X^3 + (a - e) X^2 Y + (b - f) X Y^2 + c Y^3
        BinaryForm::new(vec![-d, a - e, b - f, c.clone()])
    }

    /// The Wronskian of the defining forms; its roots are the critical points.
    pub fn critical_form(&self) -> BinaryForm {
        wronskian(&self.numerator(), &self.denominator()).expect("degree-2 forms")
    }

    /// Fixed points with multiplicity; `complete` is false when the cubic has
    /// an irreducible factor over the field.
    pub fn fixed_points(&self, rng: &mut CzRng) -> RootList {
        self.fixed_point_form()
            .roots(rng)
            .expect("fixed-point form of a nondegenerate map is a nonzero cubic")
    }

    /// The two distinct critical points guaranteed by the nonzero resultant
    /// in odd characteristic.
    pub fn critical_points(&self, rng: &mut CzRng) -> Result<RootList, MapError> {
        let w = self.critical_form();
        let roots = w.roots(rng).expect("nonzero Wronskian");
        if !roots.complete {
            let leftover = w.unsplit_factor(&roots);
            return Err(MapError::IrrationalCriticalPoints(leftover.to_string()));
        }
        assert_eq!(roots.entries.len(), 2, "critical points are distinct");
        assert!(roots.entries.iter().all(|(_, m)| *m == 1));
        Ok(roots)
    }

    /// Derivative of the map at a fixed point `p`; exactly 1 at a multiple
    /// fixed point, and computed at 0 after conjugating by `z -> 1/z` when
    /// `p` is infinite.
    pub fn multiplier(&self, p: &ProjPoint) -> Result<Elem, MapError> {
        if self.eval(p) != *p {
            return Err(MapError::NotFixed);
        }
        let field = self.field().clone();
        if self.fixed_point_form().root_multiplicity(p) >= 2 {
            return Ok(field.one());
        }
        if p.is_infinite() {
            let inv = MobiusMap::inversion(&field);
            let conj = self.conjugate(&inv);
            return conj.multiplier(&ProjPoint::finite(field.zero()));
        }
        let z = p.affine().expect("finite");
        let [a, b, c, d, e, f] = &self.coeffs;
        let num_val = horner2(a, b, c, z);
        let den_val = horner2(d, e, f, z);
        // (N' D - N D') / D^2
        let two = field.from_i64(2);
        let np = &(&(&two * a) * z) + b;
        let dp = &(&(&two * d) * z) + e;
        let upper = &(&np * &den_val) - &(&num_val * &dp);
        let lower = &den_val * &den_val;
        Ok(upper.div(&lower)?)
    }

    /// All three multipliers (counted with multiplicity); errors when the
    /// fixed points do not all lie in the field.
    pub fn multiplier_spectrum(&self, rng: &mut CzRng) -> Result<MultiplierSpectrum, MapError> {
        let roots = self.fixed_points(rng);
        if !roots.complete {
            let leftover = self.fixed_point_form().unsplit_factor(&roots);
            return Err(MapError::IncompleteFixedPoints(leftover.to_string()));
        }
        let mut entries = Vec::with_capacity(roots.entries.len());
        for (p, m) in &roots.entries {
            let mu = self.multiplier(p)?;
            entries.push(SpectrumEntry { point: p.clone(), multiplicity: *m, multiplier: mu });
        }
        Ok(MultiplierSpectrum { entries })
    }

    /// First and second symmetric functions of the multipliers; the classical
    /// conjugation-invariant coordinates on the space of quadratic maps.
    pub fn invariant_coords(&self, rng: &mut CzRng) -> Result<(Elem, Elem), MapError> {
        let spec = self.multiplier_spectrum(rng)?;
        Ok((spec.sigma(1), spec.sigma(2)))
    }

    /// The conjugate `g . phi = g o phi o g^(-1)`.
    pub fn conjugate(&self, g: &MobiusMap) -> RatMap2 {
        let ginv = g.inverse();
        let f0 = self.numerator().compose_linear(&ginv);
        let f1 = self.denominator().compose_linear(&ginv);
        let num = f0.scale(&g.a).add(&f1.scale(&g.b));
        let den = f0.scale(&g.c).add(&f1.scale(&g.d));
        RatMap2::from_forms(&num, &den).expect("conjugation preserves the resultant")
    }

    /// Proportionality of coefficient vectors (maps are projective data).
    pub fn eq_up_to_scalar(&self, other: &RatMap2) -> bool {
        if self.field() != other.field() {
            return false;
        }
        for i in 0..6 {
            for j in (i + 1)..6 {
                if &self.coeffs[i] * &other.coeffs[j] != &self.coeffs[j] * &other.coeffs[i] {
                    return false;
                }
            }
        }
        true
    }

    /// The display representative: over the rationals, the integer vector
    /// with content one and positive first nonzero entry; the canonical
    /// representative elsewhere.
    pub fn display_coeffs(&self) -> [Elem; 6] {
        use num::{BigInt, One, Signed, Zero};
        let field = self.field().clone();
        if self.coeffs[0].as_rational().is_none() {
            return self.coeffs.clone();
        }
        let rats: Vec<&num::BigRational> =
            self.coeffs.iter().map(|c| c.as_rational().expect("rational")).collect();
        let mut lcm = BigInt::one();
        for r in &rats {
            lcm = num::integer::lcm(lcm.clone(), r.denom().clone());
        }
        let ints: Vec<BigInt> = rats.iter().map(|r| (*r * &lcm).to_integer()).collect();
        let mut gcd = BigInt::zero();
        for i in &ints {
            gcd = num::integer::gcd(gcd.clone(), i.clone());
        }
        if gcd.is_zero() {
            gcd = BigInt::one();
        }
        if let Some(first) = ints.iter().find(|v| !v.is_zero()) {
            if first.is_negative() {
                gcd = -gcd;
            }
        }
        let out: Vec<Elem> = ints
            .iter()
            .map(|i| field.from_rational(num::BigRational::from_integer(i / &gcd)))
            .collect();
        out.try_into().expect("six coefficients")
    }

    /// `(numerator)/(denominator)` in the dehomogenized variable, using the
    /// display representative.
    pub fn to_fraction_string(&self) -> String {
        let c = self.display_coeffs();
        format!("({})/({})", poly_z_string(&c[0..3]), poly_z_string(&c[3..6]))
    }
}

fn horner2(c2: &Elem, c1: &Elem, c0: &Elem, z: &Elem) -> Elem {
    &(&(&(c2 * z) + c1) * z) + c0
}

fn poly_z_string(coeffs: &[Elem]) -> String {
    let d = coeffs.len() - 1;
    let mut out = String::new();
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let power = d - i;
        let cs = c.to_string();
        let needs_parens = cs[1..].contains(['+', '-']);
        let body = if needs_parens { format!("({cs})") } else { cs.clone() };
        let term = match power {
            0 => body,
            _ => {
                let zp = if power == 1 { "z".to_string() } else { format!("z^{power}") };
                if c.is_one() {
                    zp
                } else {
                    format!("{body}*{zp}")
                }
            }
        };
        if out.is_empty() {
            out = term;
        } else if term.starts_with('-') {
            out.push_str(&term);
        } else {
            out.push('+');
            out.push_str(&term);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn canonicalize(coeffs: [Elem; 6]) -> [Elem; 6] {
    let field = coeffs[0].field().clone();
    if field.is_exact() {
        if let Some(first) = coeffs.iter().find(|c| !c.is_zero()) {
            let s = first.inv().expect("nonzero");
            return coeffs.map(|c| &c * &s);
        }
        coeffs
    } else {
        // scale by the coefficient of largest magnitude for stability
        let lead = coeffs
            .iter()
            .max_by(|a, b| a.complex_abs2_cmp(b))
            .expect("six coefficients")
            .clone();
        if lead.is_zero() {
            return coeffs;
        }
        coeffs.map(|c| c.div(&lead).expect("nonzero lead"))
    }
}

impl PartialEq for RatMap2 {
    fn eq(&self, other: &Self) -> bool {
        self.eq_up_to_scalar(other)
    }
}

impl fmt::Display for RatMap2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.display_coeffs();
        write!(f, "[{},{},{};{},{},{}]", c[0], c[1], c[2], c[3], c[4], c[5])
    }
}

#[derive(Clone, Debug)]
pub struct SpectrumEntry {
    pub point: ProjPoint,
    pub multiplicity: usize,
    pub multiplier: Elem,
}

/// Multipliers at the fixed points, with multiplicities summing to 3.
#[derive(Clone, Debug)]
pub struct MultiplierSpectrum {
    pub entries: Vec<SpectrumEntry>,
}

impl MultiplierSpectrum {
    /// The multipliers as a flat multiset of three values.
    pub fn multipliers(&self) -> Vec<Elem> {
        let mut out = Vec::with_capacity(3);
        for e in &self.entries {
            for _ in 0..e.multiplicity {
                out.push(e.multiplier.clone());
            }
        }
        out
    }

    /// Elementary symmetric function of the multiplier multiset.
    pub fn sigma(&self, k: usize) -> Elem {
        let mus = self.multipliers();
        let field = self.entries[0].multiplier.field().clone();
        let mut esym = vec![field.zero(); mus.len() + 1];
        esym[0] = field.one();
        for mu in &mus {
            for j in (1..esym.len()).rev() {
                esym[j] = &esym[j] + &(&esym[j - 1] * mu);
            }
        }
        esym[k].clone()
    }

    /// The trace identity sigma_1 = sigma_3 + 2 satisfied by every complete
    /// spectrum of a quadratic map.
    pub fn trace_identity_holds(&self) -> bool {
        let two = self.entries[0].multiplier.field().from_i64(2);
        self.sigma(1) == &self.sigma(3) + &two
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seeded_rng;

    fn q() -> Field {
        Field::rationals()
    }

    fn z_squared(field: &Field) -> RatMap2 {
        RatMap2::from_i64(field, &[1, 0, 0, 0, 0, 1]).unwrap()
    }

    fn triple_fixed(field: &Field) -> RatMap2 {
        RatMap2::from_i64(field, &[3, 0, 1, 1, 0, 3]).unwrap()
    }

    #[test]
    fn construction_fixtures() {
        let f = q();
        assert!(RatMap2::from_i64(&f, &[1, 0, 0, 0, 0, 1]).is_ok());
        assert!(RatMap2::from_i64(&f, &[3, 0, 1, 1, 0, 3]).is_ok());
        let err = RatMap2::from_i64(&f, &[1, 0, 0, 1, 0, 0]).unwrap_err();
        assert_eq!(err.to_string(), "degenerate: common root");
    }

    #[test]
    fn eval_fixtures() {
        let f = q();
        let phi = z_squared(&f);
        assert_eq!(phi.eval(&ProjPoint::from_i64(&f, 3)), ProjPoint::from_i64(&f, 9));
        assert_eq!(phi.eval(&ProjPoint::infinity(&f)), ProjPoint::infinity(&f));
        let psi = triple_fixed(&f);
        assert_eq!(psi.eval(&ProjPoint::from_i64(&f, 1)), ProjPoint::from_i64(&f, 1));
    }

    #[test]
    fn fixed_point_fixtures() {
        let f = q();
        let mut rng = seeded_rng(0);
        let fp = z_squared(&f).fixed_points(&mut rng);
        assert!(fp.complete);
        let labels: Vec<String> = fp.entries.iter().map(|(p, m)| format!("{p}:{m}")).collect();
        assert_eq!(labels, ["0:1", "1:1", "inf:1"]);

        let fp = triple_fixed(&f).fixed_points(&mut rng);
        assert!(fp.complete);
        assert_eq!(fp.entries.len(), 1);
        assert_eq!(fp.entries[0], (ProjPoint::from_i64(&f, 1), 3));

        // [X^2+Y^2 : Y^2] over F_5: only the fixed point at infinity is rational
        let f5 = Field::prime(5).unwrap();
        let phi = RatMap2::from_i64(&f5, &[1, 0, 1, 0, 0, 1]).unwrap();
        let fp = phi.fixed_points(&mut rng);
        assert!(!fp.complete);
        assert_eq!(fp.entries, vec![(ProjPoint::infinity(&f5), 1)]);
    }

    #[test]
    fn critical_point_fixtures() {
        let f = q();
        let mut rng = seeded_rng(0);
        let cp = z_squared(&f).critical_points(&mut rng).unwrap();
        let labels: Vec<String> = cp.entries.iter().map(|(p, _)| p.to_string()).collect();
        assert_eq!(labels, ["0", "inf"]);

        let cp = triple_fixed(&f).critical_points(&mut rng).unwrap();
        let labels: Vec<String> = cp.entries.iter().map(|(p, _)| p.to_string()).collect();
        assert_eq!(labels, ["0", "inf"]);

        // [X^2 + XY : Y^2]: Wronskian (2X+Y)(2Y) - X*0... has two distinct roots
        let phi = RatMap2::from_i64(&f, &[1, 1, 0, 0, 0, 1]).unwrap();
        let cp = phi.critical_points(&mut rng).unwrap();
        assert_eq!(cp.entries.len(), 2);

        // critical points of (z^2+1)/1 are 0 and inf, both rational;
        // take instead a map with irrational critical points: (z^2-2)/(z)
        // phi = [X^2 - 2Y^2 : XY]: wronskian = 2X*X - (X)(-4Y)... compute:
        // fx=2X, fy=-4Y, gx=Y, gy=X -> 2X^2 + 4Y^2, roots z^2 = -2
        let phi = RatMap2::from_i64(&f, &[1, 0, -2, 0, 1, 0]).unwrap();
        let err = phi.critical_points(&mut rng).unwrap_err();
        assert!(matches!(err, MapError::IrrationalCriticalPoints(_)));
    }

    #[test]
    fn multiplier_fixtures() {
        let f = q();
        let phi = z_squared(&f);
        assert_eq!(phi.multiplier(&ProjPoint::from_i64(&f, 1)).unwrap(), f.from_i64(2));
        assert_eq!(phi.multiplier(&ProjPoint::from_i64(&f, 0)).unwrap(), f.zero());
        assert_eq!(phi.multiplier(&ProjPoint::infinity(&f)).unwrap(), f.zero());
        assert!(matches!(
            phi.multiplier(&ProjPoint::from_i64(&f, 5)),
            Err(MapError::NotFixed)
        ));
        let psi = triple_fixed(&f);
        assert_eq!(psi.multiplier(&ProjPoint::from_i64(&f, 1)).unwrap(), f.one());
    }

    #[test]
    fn spectrum_fixtures() {
        let f = q();
        let mut rng = seeded_rng(0);
        let spec = z_squared(&f).multiplier_spectrum(&mut rng).unwrap();
        let mus: Vec<String> = spec.multipliers().iter().map(|m| m.to_string()).collect();
        assert_eq!(mus, ["0", "2", "0"]);
        assert!(spec.trace_identity_holds());

        let spec = triple_fixed(&f).multiplier_spectrum(&mut rng).unwrap();
        assert_eq!(spec.entries.len(), 1);
        assert_eq!(spec.entries[0].multiplicity, 3);
        assert!(spec.entries[0].multiplier.is_one());
        assert!(spec.trace_identity_holds());

        assert_eq!(
            z_squared(&f).invariant_coords(&mut rng).unwrap(),
            (f.from_i64(2), f.zero())
        );
        assert_eq!(
            triple_fixed(&f).invariant_coords(&mut rng).unwrap(),
            (f.from_i64(3), f.from_i64(3))
        );
    }

    #[test]
    fn conjugation_fixtures() {
        let f = q();
        let mut rng = seeded_rng(0);
        let phi = z_squared(&f);
        assert_eq!(phi.conjugate(&MobiusMap::identity(&f)), phi);
        // g(phi(g^{-1}(z))) with g = 1/z: 1/(1/z)^2 = z^2, so z^2 is its own
        // conjugate under inversion
        let inv = MobiusMap::inversion(&f);
        let conj = phi.conjugate(&inv);
        assert_eq!(conj, phi);

        // fixed points move with the conjugation over F_7
        let f7 = Field::prime(7).unwrap();
        let phi = z_squared(&f7);
        let shift = MobiusMap::translation(f7.one());
        let conj = phi.conjugate(&shift);
        let fp = conj.fixed_points(&mut rng);
        let labels: Vec<String> = fp.entries.iter().map(|(p, _)| p.to_string()).collect();
        assert_eq!(labels, ["1", "2", "inf"]);

        // invariant coordinates do not move
        let (s1, s2) = conj.invariant_coords(&mut rng).unwrap();
        assert_eq!((s1, s2), (f7.from_i64(2), f7.zero()));
    }

    #[test]
    fn canonical_scaling() {
        let f = q();
        let phi = RatMap2::from_i64(&f, &[3, 0, 1, 1, 0, 3]).unwrap();
        assert!(phi.coeffs()[0].is_one());
        assert_eq!(phi.to_fraction_string(), "(3*z^2+1)/(z^2+3)");
        assert_eq!(phi.to_string(), "[3,0,1;1,0,3]");
        let psi = RatMap2::from_i64(&f, &[6, 0, 2, 2, 0, 6]).unwrap();
        assert_eq!(phi, psi);
    }
}
