//! Totally marked quadratic maps: an ordered listing of the three fixed
//! points and two critical points, the cross-ratio invariants they carry,
//! the surfaces those invariants live on, reconstruction of the map from the
//! marking, the conjugacy decision with a transporting witness, and the
//! twelve-element remarking orbit.

use crate::dynmap::{MapError, RatMap2};
use crate::fields::{Elem, Field};
use crate::projpoly::{BinaryForm, MobiusMap, ProjPoint};
use crate::CzRng;
use std::cmp::Ordering;
use std::fmt;
use thiserror::Error;

/// The excluded loci: coincident critical slots (C) or a cross ratio
/// equal to -1 (R1, R2, R3).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Locus {
    C,
    R1,
    R2,
    R3,
}

impl Locus {
    fn r(i: usize) -> Locus {
        [Locus::R1, Locus::R2, Locus::R3][i]
    }
}

impl fmt::Display for Locus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Locus::C => write!(f, "C"),
            Locus::R1 => write!(f, "R1"),
            Locus::R2 => write!(f, "R2"),
            Locus::R3 => write!(f, "R3"),
        }
    }
}

#[derive(Debug, Error)]
pub enum MarkingError {
    #[error("marking rejected: locus {0}")]
    Invalid(Locus),
    #[error("cross-ratio coordinate equals -1")]
    MinusOne,
    #[error("triple violates the surface equation r1*r2*r3 = 1")]
    NotOnSurface,
    #[error("coordinate at infinity where finite data is required")]
    InfiniteCoordinate,
    #[error("no normalization chart covers this triple")]
    ChartUnavailable,
    #[error(transparent)]
    Map(#[from] MapError),
}

/// An ordered tuple (p1, p2, p3; q1, q2) of fixed-point and critical-point
/// slots, validated to avoid the loci C and R_i.
#[derive(Clone, Debug, PartialEq)]
pub struct TotalMarking {
    p: [ProjPoint; 3],
    q: [ProjPoint; 2],
}

/// Raw cross-ratio numerator/denominator for slot `i` of a candidate tuple,
/// using the cyclic convention (i, j, k) in {(1,2,3), (2,3,1), (3,1,2)}.
fn ratio_raw(p: &[ProjPoint; 3], q: &[ProjPoint; 2], i: usize) -> (Elem, Elem) {
    let j = (i + 1) % 3;
    let k = (i + 2) % 3;
    let num = &p[j].bracket(&q[0]) * &p[k].bracket(&q[1]);
    let den = &p[j].bracket(&q[1]) * &p[k].bracket(&q[0]);
    (num, den)
}

/// Homogeneous test for `num/den = -1`, including the indeterminate [0 : 0]
/// case (which only arises on excluded tuples).
fn ratio_hits_minus_one(num: &Elem, den: &Elem) -> bool {
    if num.is_zero() && den.is_zero() {
        return true;
    }
    let sum = num + den;
    if num.field().is_exact() {
        sum.is_zero()
    } else {
        let scale = if num.complex_abs2_cmp(den) == Ordering::Less { den } else { num };
        sum.is_zero_relative_to(scale)
    }
}

impl TotalMarking {
    /// Accept the tuple or name the violated locus.
    pub fn validate(
        p1: ProjPoint,
        p2: ProjPoint,
        p3: ProjPoint,
        q1: ProjPoint,
        q2: ProjPoint,
    ) -> Result<TotalMarking, Locus> {
        let p = [p1, p2, p3];
        let q = [q1, q2];
        if q[0] == q[1] {
            return Err(Locus::C);
        }
        for i in 0..3 {
            let (num, den) = ratio_raw(&p, &q, i);
            if ratio_hits_minus_one(&num, &den) {
                return Err(Locus::r(i));
            }
        }
        Ok(TotalMarking { p, q })
    }

    /// The canonical marking of a map: fixed points (with multiplicity) and
    /// critical points, each in ascending point order.
    pub fn of_map(map: &RatMap2, rng: &mut CzRng) -> Result<TotalMarking, MarkingError> {
        let fixed = map.fixed_points(rng);
        if !fixed.complete {
            let leftover = map.fixed_point_form().unsplit_factor(&fixed);
            return Err(MapError::IncompleteFixedPoints(leftover.to_string()).into());
        }
        let crit = map.critical_points(rng)?;
        let ps = fixed.with_multiplicity();
        let qs = crit.with_multiplicity();
        TotalMarking::validate(
            ps[0].clone(),
            ps[1].clone(),
            ps[2].clone(),
            qs[0].clone(),
            qs[1].clone(),
        )
        .map_err(MarkingError::Invalid)
    }

    pub fn fixed_slots(&self) -> &[ProjPoint; 3] {
        &self.p
    }

    pub fn critical_slots(&self) -> &[ProjPoint; 2] {
        &self.q
    }

    pub fn field(&self) -> &Field {
        self.p[0].field()
    }

    pub fn points(&self) -> [&ProjPoint; 5] {
        [&self.p[0], &self.p[1], &self.p[2], &self.q[0], &self.q[1]]
    }

    /// Transport every slot by a Möbius transformation.
    pub fn apply(&self, g: &MobiusMap) -> TotalMarking {
        let m = TotalMarking {
            p: [g.apply(&self.p[0]), g.apply(&self.p[1]), g.apply(&self.p[2])],
            q: [g.apply(&self.q[0]), g.apply(&self.q[1])],
        };
        debug_assert!(
            TotalMarking::validate(
                m.p[0].clone(),
                m.p[1].clone(),
                m.p[2].clone(),
                m.q[0].clone(),
                m.q[1].clone()
            )
            .is_ok(),
            "transport preserves validity"
        );
        m
    }

    /// Reorder the fixed slots by `perm` and optionally swap the critical slots.
    pub fn permuted(&self, perm: [usize; 3], swap_critical: bool) -> TotalMarking {
        let p = [
            self.p[perm[0]].clone(),
            self.p[perm[1]].clone(),
            self.p[perm[2]].clone(),
        ];
        let q = if swap_critical {
            [self.q[1].clone(), self.q[0].clone()]
        } else {
            self.q.clone()
        };
        TotalMarking { p, q }
    }

    /// The invariant triple (r1, r2, r3), each a projective-line point
    /// distinct from -1, computed homogeneously from brackets.
    pub fn cross_ratios(&self) -> CrossRatioTriple {
        let mut r = Vec::with_capacity(3);
        for i in 0..3 {
            let (num, den) = ratio_raw(&self.p, &self.q, i);
            assert!(
                !(num.is_zero() && den.is_zero()),
                "indeterminate cross ratio on a validated marking"
            );
            r.push(ProjPoint::new(num, den).expect("not both zero"));
        }
        CrossRatioTriple { r: [r[0].clone(), r[1].clone(), r[2].clone()] }
    }

    /// The unique quadratic map with these fixed and critical points.
    pub fn reconstruct(&self) -> Result<RatMap2, MapError> {
        let map = try_reconstruct_raw(&[
            self.p[0].clone(),
            self.p[1].clone(),
            self.p[2].clone(),
            self.q[0].clone(),
            self.q[1].clone(),
        ])?;
        // postconditions: the fixed-point cubic and the critical form of the
        // result factor through exactly the marked points
        let fixed_target = BinaryForm::linear_at(&self.p[0])
            .mul(&BinaryForm::linear_at(&self.p[1]))
            .mul(&BinaryForm::linear_at(&self.p[2]));
        assert!(
            map.fixed_point_form().proportional_to(&fixed_target),
            "reconstruction must fix the marked fixed points"
        );
        let crit_target = BinaryForm::linear_at(&self.q[0]).mul(&BinaryForm::linear_at(&self.q[1]));
        assert!(
            map.critical_form().proportional_to(&crit_target),
            "reconstruction must ramify at the marked critical points"
        );
        Ok(map)
    }

    /// Equality of cross ratios decides conjugacy; on success the transporting
    /// transformation is built from the critical slots and one fixed slot
    /// avoiding them, then checked on all five points.
    pub fn equivalent(&self, other: &TotalMarking) -> Equivalence {
        if self.cross_ratios() != other.cross_ratios() {
            return Equivalence { equivalent: false, witness: None };
        }
        let i = (0..3)
            .find(|&i| self.p[i] != self.q[0] && self.p[i] != self.q[1])
            .expect("some fixed slot avoids both critical slots");
        debug_assert!(
            other.p[i] != other.q[0] && other.p[i] != other.q[1],
            "coincidence pattern is conjugacy-invariant"
        );
        let src = [self.q[0].clone(), self.q[1].clone(), self.p[i].clone()];
        let dst = [other.q[0].clone(), other.q[1].clone(), other.p[i].clone()];
        let g = MobiusMap::from_three(&src, &dst).expect("slots are pairwise distinct");
        let transports = self
            .points()
            .iter()
            .zip(other.points().iter())
            .all(|(a, b)| g.apply(a) == **b);
        if !transports {
            assert!(
                !self.field().is_exact(),
                "equal cross ratios must admit a transporter on exact backends"
            );
            return Equivalence { equivalent: true, witness: None };
        }
        Equivalence { equivalent: true, witness: Some(g) }
    }

    /// All twelve remarkings (six fixed-slot orders times two critical-slot
    /// orders) with their triples, and the lexicographically least triple as
    /// the canonical representative of the underlying unmarked map.
    pub fn remarking_orbit(&self) -> MarkingOrbit {
        const PERMS: [[usize; 3]; 6] = [
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        let mut triples = Vec::with_capacity(12);
        for perm in PERMS {
            for swap in [false, true] {
                triples.push(self.permuted(perm, swap).cross_ratios());
            }
        }
        let canonical = triples
            .iter()
            .min_by(|a, b| a.lex_cmp(b))
            .expect("twelve triples")
            .clone();
        MarkingOrbit { triples, canonical }
    }
}

impl fmt::Display for TotalMarking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{},{};{},{})",
            self.p[0], self.p[1], self.p[2], self.q[0], self.q[1]
        )
    }
}

/// Construct the map with fixed points `p1,p2,p3` and critical points
/// `q1,q2` if one exists: move the critical slots to 0 and infinity, read
/// the normal form off the cubic with the pushed fixed points as roots, and
/// move back. Fails with `Degenerate` exactly on invalid tuples.
pub fn try_reconstruct_raw(points: &[ProjPoint; 5]) -> Result<RatMap2, MapError> {
    let field = points[0].field().clone();
    let q1 = &points[3];
    let q2 = &points[4];
    let g = MobiusMap::new(
        q1.y().clone(),
        -q1.x(),
        q2.y().clone(),
        -q2.x(),
    )
    .map_err(|_| MapError::Degenerate)?;
    let cubic = [&points[0], &points[1], &points[2]]
        .iter()
        .map(|p| BinaryForm::linear_at(&g.apply(p)))
        .reduce(|a, b| a.mul(&b))
        .expect("three factors");
    let c = cubic.coeffs();
    // in the chart with critical points 0 and inf the map is
    // [a X^2 + c Y^2 : d X^2 + f Y^2] with fixed cubic
    // -d X^3 + a X^2 Y - f X Y^2 + c Y^3
    let num = BinaryForm::new(vec![c[1].clone(), field.zero(), c[3].clone()]);
    let den = BinaryForm::new(vec![-&c[0], field.zero(), -&c[2]]);
    let normal = RatMap2::from_forms(&num, &den)?;
    Ok(normal.conjugate(&g.inverse()))
}

/// The invariant triple; every coordinate avoids -1 and the product identity
/// num1*num2*num3 = den1*den2*den3 holds multihomogeneously.
#[derive(Clone, Debug)]
pub struct CrossRatioTriple {
    r: [ProjPoint; 3],
}

impl CrossRatioTriple {
    pub fn new(r: [ProjPoint; 3]) -> Result<CrossRatioTriple, MarkingError> {
        let t = CrossRatioTriple { r };
        for ri in &t.r {
            if ratio_hits_minus_one(ri.x(), ri.y()) {
                return Err(MarkingError::MinusOne);
            }
        }
        if !t.product_identity_holds() {
            return Err(MarkingError::NotOnSurface);
        }
        Ok(t)
    }

    pub fn coords(&self) -> &[ProjPoint; 3] {
        &self.r
    }

    pub fn field(&self) -> &Field {
        self.r[0].field()
    }

    /// The multihomogeneous surface membership test.
    pub fn product_identity_holds(&self) -> bool {
        let nums = &(self.r[0].x() * self.r[1].x()) * self.r[2].x();
        let dens = &(self.r[0].y() * self.r[1].y()) * self.r[2].y();
        nums == dens
    }

    /// Coordinates on the involution-image surface:
    /// `x_i = (1 - r_i) / (1 + r_i)` computed homogeneously.
    pub fn to_v(&self) -> VPoint {
        let x = self.r.clone().map(|ri| cayley_involute(&ri));
        let v = VPoint { x };
        debug_assert!(v.sum_identity_holds());
        v
    }

    /// Total lexicographic comparison of normalized triples.
    pub fn lex_cmp(&self, other: &CrossRatioTriple) -> Ordering {
        for (a, b) in self.r.iter().zip(other.r.iter()) {
            match a.cmp_points(b) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }

    /// Build a marked map whose cross ratios reproduce this triple, using the
    /// first of the three normalization charts that accepts it. The charts
    /// place the critical points at 0 and infinity and one fixed slot at 1;
    /// together they cover the whole surface.
    pub fn reconstruct_marked(&self) -> Result<(TotalMarking, RatMap2), MarkingError> {
        let field = self.field().clone();
        let one = ProjPoint::finite(field.one());
        let zero = ProjPoint::finite(field.zero());
        let inf = ProjPoint::infinity(&field);
        let [r1, r2, r3] = &self.r;
        let charts: [[ProjPoint; 3]; 3] = [
            [one.clone(), r3.reciprocal(), r2.clone()],
            [r3.clone(), one.clone(), r1.reciprocal()],
            [r2.reciprocal(), r1.clone(), one.clone()],
        ];
        for omega in charts {
            let candidate = TotalMarking::validate(
                omega[0].clone(),
                omega[1].clone(),
                omega[2].clone(),
                zero.clone(),
                inf.clone(),
            );
            if let Ok(m) = candidate {
                assert_eq!(
                    m.cross_ratios(),
                    *self,
                    "normalization chart must reproduce the input triple"
                );
                let map = m.reconstruct()?;
                return Ok((m, map));
            }
        }
        Err(MarkingError::ChartUnavailable)
    }
}

impl PartialEq for CrossRatioTriple {
    fn eq(&self, other: &Self) -> bool {
        self.r == other.r
    }
}

impl fmt::Display for CrossRatioTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.r[0], self.r[1], self.r[2])
    }
}

/// The involution `[n : d] -> [d - n : d + n]`; applying it twice is the
/// identity (characteristic two excluded).
fn cayley_involute(p: &ProjPoint) -> ProjPoint {
    ProjPoint::new(p.y() - p.x(), p.y() + p.x()).expect("image of a point distinct from -1")
}

/// A point on the surface x1 + x2 + x3 + x1 x2 x3 = 0 (homogeneously
/// a1 b2 b3 + b1 a2 b3 + b1 b2 a3 + a1 a2 a3 = 0).
#[derive(Clone, Debug, PartialEq)]
pub struct VPoint {
    x: [ProjPoint; 3],
}

impl VPoint {
    pub fn new(x: [ProjPoint; 3]) -> Result<VPoint, MarkingError> {
        let v = VPoint { x };
        if !v.sum_identity_holds() {
            return Err(MarkingError::NotOnSurface);
        }
        Ok(v)
    }

    pub fn coords(&self) -> &[ProjPoint; 3] {
        &self.x
    }

    pub fn sum_identity_holds(&self) -> bool {
        let [x1, x2, x3] = &self.x;
        let (a1, b1) = (x1.x(), x1.y());
        let (a2, b2) = (x2.x(), x2.y());
        let (a3, b3) = (x3.x(), x3.y());
        let t = &(&(&(a1 * b2) * b3) + &(&(b1 * a2) * b3));
        let u = &(&(&(b1 * b2) * a3) + &(&(a1 * a2) * a3));
        (t + u).is_zero()
    }

    /// The inverse leg of the involution, back to a cross-ratio triple;
    /// fails when a coordinate sits at infinity (image would be -1).
    pub fn to_cross_ratios(&self) -> Result<CrossRatioTriple, MarkingError> {
        let r = self.x.clone().map(|xi| cayley_involute(&xi));
        CrossRatioTriple::new(r)
    }

    /// The three multipliers `mu_i = 1 + x_j x_k`; requires finite coordinates.
    pub fn multipliers(&self) -> Result<[Elem; 3], MarkingError> {
        let vals: Vec<&Elem> = self
            .x
            .iter()
            .map(|x| x.affine().ok_or(MarkingError::InfiniteCoordinate))
            .collect::<Result<_, _>>()?;
        let field = vals[0].field().clone();
        let one = field.one();
        let mu = |j: usize, k: usize| &one + &(vals[j] * vals[k]);
        Ok([mu(1, 2), mu(2, 0), mu(0, 1)])
    }
}

impl fmt::Display for VPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.x[0], self.x[1], self.x[2])
    }
}

/// Result of the conjugacy decision.
#[derive(Clone, Debug)]
pub struct Equivalence {
    pub equivalent: bool,
    pub witness: Option<MobiusMap>,
}

/// The twelve remarking triples and the canonical (lexicographically least)
/// representative.
#[derive(Clone, Debug)]
pub struct MarkingOrbit {
    pub triples: Vec<CrossRatioTriple>,
    pub canonical: CrossRatioTriple,
}

impl MarkingOrbit {
    /// Number of distinct triples; always divides 12.
    pub fn distinct_count(&self) -> usize {
        let mut distinct: Vec<&CrossRatioTriple> = Vec::new();
        for t in &self.triples {
            if !distinct.iter().any(|d| **d == *t) {
                distinct.push(t);
            }
        }
        distinct.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seeded_rng;

    fn q() -> Field {
        Field::rationals()
    }

    fn pt(f: &Field, v: i64) -> ProjPoint {
        ProjPoint::from_i64(f, v)
    }

    fn marking(f: &Field, ps: [i64; 3], q1: ProjPoint, q2: ProjPoint) -> TotalMarking {
        TotalMarking::validate(pt(f, ps[0]), pt(f, ps[1]), pt(f, ps[2]), q1, q2).unwrap()
    }

    fn z2_marking(f: &Field) -> TotalMarking {
        TotalMarking::validate(
            pt(f, 0),
            pt(f, 1),
            ProjPoint::infinity(f),
            pt(f, 0),
            ProjPoint::infinity(f),
        )
        .unwrap()
    }

    fn triple_marking(f: &Field) -> TotalMarking {
        marking(f, [1, 1, 1], pt(f, 0), ProjPoint::infinity(f))
    }

    #[test]
    fn validate_fixtures() {
        let f = q();
        // omega_1 = -omega_2 violates R_3
        let rejected = TotalMarking::validate(
            pt(&f, 1),
            pt(&f, -1),
            pt(&f, 2),
            pt(&f, 0),
            ProjPoint::infinity(&f),
        );
        assert_eq!(rejected.unwrap_err(), Locus::R3);
        // the marking of z^2 is fine even though slots collide with critical points
        assert!(TotalMarking::validate(
            pt(&f, 0),
            pt(&f, 1),
            ProjPoint::infinity(&f),
            pt(&f, 0),
            ProjPoint::infinity(&f),
        )
        .is_ok());
        // coincident critical slots
        let c = TotalMarking::validate(pt(&f, 1), pt(&f, 2), pt(&f, 3), pt(&f, 5), pt(&f, 5));
        assert_eq!(c.unwrap_err(), Locus::C);
    }

    #[test]
    fn cross_ratio_fixtures() {
        let f = q();
        let m = z2_marking(&f);
        let r = m.cross_ratios();
        assert_eq!(r.to_string(), "(0,inf,0)");
        assert!(r.product_identity_holds());

        let m = triple_marking(&f);
        let r = m.cross_ratios();
        assert_eq!(r.to_string(), "(1,1,1)");

        // invariance under z -> z + 1 over F_7
        let f7 = Field::prime(7).unwrap();
        let m = z2_marking(&f7);
        let g = MobiusMap::translation(f7.one());
        assert_eq!(m.apply(&g).cross_ratios(), m.cross_ratios());
    }

    #[test]
    fn v_coordinate_fixtures() {
        let f = q();
        let r = triple_marking(&f).cross_ratios();
        let v = r.to_v();
        assert_eq!(v.to_string(), "(0,0,0)");
        let mus = v.multipliers().unwrap();
        assert!(mus.iter().all(|m| m.is_one()));

        let r = z2_marking(&f).cross_ratios();
        let v = r.to_v();
        assert_eq!(v.to_string(), "(1,-1,1)");
        assert!(v.sum_identity_holds());
        let mus = v.multipliers().unwrap();
        let strs: Vec<String> = mus.iter().map(|m| m.to_string()).collect();
        assert_eq!(strs, ["0", "2", "0"]);

        // involution is self-inverse
        assert_eq!(v.to_cross_ratios().unwrap(), r);
    }

    #[test]
    fn reconstruct_fixtures() {
        let f = q();
        let mut rng = seeded_rng(0);
        let z2 = RatMap2::from_i64(&f, &[1, 0, 0, 0, 0, 1]).unwrap();
        let m = z2_marking(&f);
        assert_eq!(m.reconstruct().unwrap(), z2);

        let m = triple_marking(&f);
        let map = m.reconstruct().unwrap();
        assert_eq!(map, RatMap2::from_i64(&f, &[3, 0, 1, 1, 0, 3]).unwrap());

        // of_map gives back a marking that reconstructs the same map
        let again = TotalMarking::of_map(&map, &mut rng).unwrap();
        assert_eq!(again.reconstruct().unwrap(), map);
    }

    #[test]
    fn reconstruct_raw_rejects_excluded_tuples() {
        let f = q();
        let bad = [
            pt(&f, 1),
            pt(&f, -1),
            pt(&f, 2),
            pt(&f, 0),
            ProjPoint::infinity(&f),
        ];
        assert!(matches!(try_reconstruct_raw(&bad), Err(MapError::Degenerate)));
    }

    #[test]
    fn reconstruct_from_triple_fixtures() {
        let f = q();
        let one = ProjPoint::from_i64(&f, 1);
        let r = CrossRatioTriple::new([one.clone(), one.clone(), one.clone()]).unwrap();
        let (m, map) = r.reconstruct_marked().unwrap();
        assert_eq!(map, RatMap2::from_i64(&f, &[3, 0, 1, 1, 0, 3]).unwrap());
        assert_eq!(m.cross_ratios(), r);

        // (0, inf, 0) sits on the excluded curve of the first chart
        let zero = ProjPoint::from_i64(&f, 0);
        let inf = ProjPoint::infinity(&f);
        let r = CrossRatioTriple::new([zero.clone(), inf.clone(), zero.clone()]).unwrap();
        let (m, _map) = r.reconstruct_marked().unwrap();
        assert_eq!(m.cross_ratios(), r);
    }

    #[test]
    fn surface_constructor_rejects() {
        let f = q();
        let one = ProjPoint::from_i64(&f, 1);
        let two = ProjPoint::from_i64(&f, 2);
        // product 1*1*2 != 1
        assert!(matches!(
            CrossRatioTriple::new([one.clone(), one.clone(), two.clone()]),
            Err(MarkingError::NotOnSurface)
        ));
        let minus = ProjPoint::from_i64(&f, -1);
        assert!(matches!(
            CrossRatioTriple::new([minus, one.clone(), one.clone()]),
            Err(MarkingError::MinusOne)
        ));
    }

    #[test]
    fn equivalence_fixtures() {
        let f7 = Field::prime(7).unwrap();
        let m = z2_marking(&f7);
        // transport by a generic transformation
        let g = MobiusMap::new(f7.from_i64(2), f7.from_i64(1), f7.from_i64(1), f7.from_i64(1))
            .unwrap();
        let moved = m.apply(&g);
        let eq = m.equivalent(&moved);
        assert!(eq.equivalent);
        let w = eq.witness.unwrap();
        for (a, b) in m.points().iter().zip(moved.points().iter()) {
            assert_eq!(w.apply(a), **b);
        }

        // distinct invariants
        let t = triple_marking(&f7);
        assert!(!m.equivalent(&t).equivalent);

        // permuting fixed slots usually changes the marked class
        let swapped = m.permuted([1, 0, 2], false);
        assert!(!m.equivalent(&swapped).equivalent);
    }

    #[test]
    fn orbit_fixtures() {
        let f = q();
        let orbit = triple_marking(&f).remarking_orbit();
        assert_eq!(orbit.triples.len(), 12);
        assert_eq!(orbit.distinct_count(), 1);
        assert_eq!(orbit.canonical.to_string(), "(1,1,1)");

        let orbit = z2_marking(&f).remarking_orbit();
        assert_eq!(orbit.triples.len(), 12);
        assert!(12 % orbit.distinct_count() == 0);
        // swapping the critical slots inverts every coordinate
        let m = z2_marking(&f);
        let swapped = m.permuted([0, 1, 2], true).cross_ratios();
        assert_eq!(swapped.to_string(), "(inf,0,inf)");
    }
}
