//! Property suites for markings: surface membership, invariance,
//! reconstruction, the involution between the two surface models, the
//! multiplier consistency between the two computation paths, and the
//! remarking orbit.

mod common;

use common::{random_marking, random_mobius};
use tmrat2::marking::try_reconstruct_raw;
use tmrat2::projpoly::ProjPoint;
use tmrat2::selftest::proj_line;
use tmrat2::{seeded_rng, CrossRatioTriple, Field, RatMap2, TotalMarking};

#[test]
fn surface_membership_random_1000_per_backend() {
    let fields = [
        Field::prime(101).unwrap(),
        Field::extension(3, 2).unwrap(),
        Field::rationals(),
    ];
    for field in &fields {
        let mut rng = seeded_rng(20);
        for _ in 0..1000 {
            let m = random_marking(field, &mut rng);
            let r = m.cross_ratios();
            assert!(r.product_identity_holds(), "field {field}: {m} -> {r}");
        }
    }
}

#[test]
fn surface_membership_exhaustive_f3() {
    let f3 = Field::prime(3).unwrap();
    let line = proj_line(&f3);
    let mut checked = 0u32;
    for p1 in &line {
        for p2 in &line {
            for p3 in &line {
                for q1 in &line {
                    for q2 in &line {
                        let m = TotalMarking::validate(
                            p1.clone(),
                            p2.clone(),
                            p3.clone(),
                            q1.clone(),
                            q2.clone(),
                        );
                        if let Ok(m) = m {
                            assert!(m.cross_ratios().product_identity_holds());
                            checked += 1;
                        }
                    }
                }
            }
        }
    }
    assert!(checked > 0);
}

#[test]
fn transport_invariance_500() {
    let f = Field::prime(101).unwrap();
    let mut rng = seeded_rng(21);
    for _ in 0..500 {
        let m = random_marking(&f, &mut rng);
        let g = random_mobius(&f, &mut rng);
        assert_eq!(m.apply(&g).cross_ratios(), m.cross_ratios());
    }
}

#[test]
fn validity_matches_symmetric_function_resultant() {
    // in the chart with critical points (0, inf):
    //   e1 e2 - e3 = (w1+w2)(w2+w3)(w3+w1),
    // and the marking is valid exactly when no factor vanishes
    for p in [5u64, 7] {
        let field = Field::prime(p).unwrap();
        let elems = field.elements().unwrap();
        let zero = ProjPoint::finite(field.zero());
        let inf = ProjPoint::infinity(&field);
        for w1 in &elems {
            for w2 in &elems {
                for w3 in &elems {
                    let e1 = &(w1 + w2) + w3;
                    let e2 = &(&(w1 * w2) + &(w2 * w3)) + &(w3 * w1);
                    let e3 = &(w1 * w2) * w3;
                    let lhs = &(&e1 * &e2) - &e3;
                    let rhs = &(&(w1 + w2) * &(w2 + w3)) * &(w3 + w1);
                    assert_eq!(lhs, rhs);
                    let valid = TotalMarking::validate(
                        ProjPoint::finite(w1.clone()),
                        ProjPoint::finite(w2.clone()),
                        ProjPoint::finite(w3.clone()),
                        zero.clone(),
                        inf.clone(),
                    )
                    .is_ok();
                    assert_eq!(valid, !lhs.is_zero(), "p={p} w=({w1},{w2},{w3})");
                }
            }
        }
    }
}

#[test]
fn round_trip_random_f7_500() {
    let f = Field::prime(7).unwrap();
    let mut rng = seeded_rng(22);
    let mut done = 0;
    while done < 500 {
        let coeffs: Vec<_> = (0..6).map(|_| f.sample(&mut rng)).collect();
        let map = match RatMap2::new(coeffs.try_into().expect("six")) {
            Ok(m) => m,
            Err(_) => continue,
        };
        let marking = match TotalMarking::of_map(&map, &mut rng) {
            Ok(m) => m,
            Err(_) => continue,
        };
        assert_eq!(marking.reconstruct().unwrap(), map);
        done += 1;
    }
}

#[test]
fn triple_reconstruction_section_500() {
    let f = Field::prime(101).unwrap();
    let mut rng = seeded_rng(23);
    for _ in 0..500 {
        let m = random_marking(&f, &mut rng);
        let r = m.cross_ratios();
        let (marked, map) = r.reconstruct_marked().unwrap();
        assert_eq!(marked.cross_ratios(), r);
        // the reconstructed marked map is conjugate to the original marking's map
        let eq = marked.equivalent(&m);
        assert!(eq.equivalent);
        let original = m.reconstruct().unwrap();
        let witness = eq.witness.unwrap();
        assert_eq!(map.conjugate(&witness), original);
    }
}

/// The four normalization-chart coefficient tables for the map with marked
/// tuple (1, 1/r3, r2; 0, inf), as (a, b, c, d) with phi = (a z^2 + b)/(c z^2 + d).
/// Signs fixed against the reconstruction oracle: a and b are positive
/// symmetric-function values.
#[test]
fn chart_coefficient_tables_agree_with_reconstruction() {
    let f = Field::prime(101).unwrap();
    let mut rng = seeded_rng(24);
    let one = f.one();
    let mut done = 0;
    while done < 200 {
        let m = random_marking(&f, &mut rng);
        let triple = m.cross_ratios();
        let [r1, r2, r3] = triple.coords().clone();
        // generic case: all coordinates finite and nonzero
        let finite_nonzero = [&r1, &r2, &r3]
            .iter()
            .all(|r| !r.is_infinite() && !r.x().is_zero());
        if !finite_nonzero {
            continue;
        }
        let r2v = r2.affine().unwrap().clone();
        let r3v = r3.affine().unwrap().clone();
        let (_, expected) = triple.reconstruct_marked().unwrap();
        let inv = |x: &tmrat2::Elem| x.inv().unwrap();
        let cases: Vec<[tmrat2::Elem; 4]> = vec![
            // c = 1
            [
                &(&one + &r2v) + &inv(&r3v),
                &r2v * &inv(&r3v),
                one.clone(),
                &(&r2v + &inv(&r3v)) + &(&r2v * &inv(&r3v)),
            ],
            // c = r3
            [
                &(&one + &r3v) + &(&r2v * &r3v),
                r2v.clone(),
                r3v.clone(),
                &(&one + &r2v) + &(&r2v * &r3v),
            ],
            // b = 1/r3
            [
                &(&one + &inv(&r2v)) + &inv(&(&r2v * &r3v)),
                inv(&r3v),
                inv(&r2v),
                &(&one + &inv(&r3v)) + &inv(&(&r2v * &r3v)),
            ],
            // b = 1
            [
                &(&r3v + &inv(&r2v)) + &(&r3v * &inv(&r2v)),
                one.clone(),
                &r3v * &inv(&r2v),
                &(&one + &r3v) + &inv(&r2v),
            ],
        ];
        for (idx, [a, b, c, d]) in cases.into_iter().enumerate() {
            let candidate = RatMap2::new([
                a,
                f.zero(),
                b,
                c,
                f.zero(),
                d,
            ])
            .unwrap_or_else(|e| panic!("case {idx}: {e}"));
            assert_eq!(candidate, expected, "case {idx} disagrees for {triple}");
        }
        done += 1;
    }
}

#[test]
fn two_path_multiplier_consistency_500() {
    let f = Field::prime(101).unwrap();
    let mut rng = seeded_rng(25);
    let mut done = 0;
    while done < 500 {
        let m = random_marking(&f, &mut rng);
        let triple = m.cross_ratios();
        let generic = triple
            .coords()
            .iter()
            .all(|r| !r.is_infinite() && !r.x().is_zero());
        if !generic {
            continue;
        }
        let map = m.reconstruct().unwrap();
        let mus_v = triple.to_v().multipliers().unwrap();
        for (i, p) in m.fixed_slots().iter().enumerate() {
            let mu = map.multiplier(p).unwrap();
            assert_eq!(mu, mus_v[i], "slot {i} of {m}");
        }
        done += 1;
    }
}

#[test]
fn involution_is_self_inverse_500() {
    let f = Field::prime(101).unwrap();
    let mut rng = seeded_rng(26);
    for _ in 0..500 {
        let m = random_marking(&f, &mut rng);
        let r = m.cross_ratios();
        let v = r.to_v();
        assert!(v.sum_identity_holds());
        assert_eq!(v.to_cross_ratios().unwrap(), r);
    }
}

#[test]
fn normalized_chart_critical_point_formulas_200() {
    // for the map (z^2 + mu_j z)/(mu_k z + 1), which fixes 0 and inf with
    // multipliers mu_j and mu_k, the critical slots satisfy
    // xi_1 = (-1 + x_i)/mu_k and xi_2 = (-1 - x_i)/mu_k, where x_i is the
    // surface coordinate attached to the remaining fixed slot
    let f = Field::prime(101).unwrap();
    let mut rng = seeded_rng(27);
    for variant in 0..2 {
        let mut done = 0;
        while done < 100 {
            let mu_j = f.sample(&mut rng);
            let mu_k = f.sample(&mut rng);
            if mu_k.is_zero() || mu_j.is_one() || mu_k.is_one() || (&mu_j * &mu_k).is_one() {
                continue;
            }
            let map = RatMap2::new([
                f.one(),
                mu_j.clone(),
                f.zero(),
                f.zero(),
                mu_k.clone(),
                f.one(),
            ])
            .unwrap();
            let crit = match map.critical_points(&mut rng) {
                Ok(c) => c, // rational exactly when 1 - mu_j mu_k is a square
                Err(_) => continue,
            };
            let xi_slots = crit.with_multiplicity();
            // third fixed point (1 - mu_j)/(1 - mu_k)
            let third = ProjPoint::finite(
                (&f.one() - &mu_j).div(&(&f.one() - &mu_k)).unwrap(),
            );
            let zero = ProjPoint::finite(f.zero());
            let inf = ProjPoint::infinity(&f);
            // variant 0: (i,j,k) = (1,2,3); variant 1: (i,j,k) = (2,3,1)
            let candidate = if variant == 0 {
                TotalMarking::validate(
                    third.clone(),
                    zero.clone(),
                    inf.clone(),
                    xi_slots[0].clone(),
                    xi_slots[1].clone(),
                )
            } else {
                TotalMarking::validate(
                    inf.clone(),
                    third.clone(),
                    zero.clone(),
                    xi_slots[0].clone(),
                    xi_slots[1].clone(),
                )
            };
            let m = match candidate {
                Ok(m) => m,
                Err(_) => continue,
            };
            let (i, k) = if variant == 0 { (0, 2) } else { (1, 0) };
            // the multiplier at the slot placed at infinity is mu_k
            assert_eq!(map.multiplier(&m.fixed_slots()[k]).unwrap(), mu_k);
            let x = m.cross_ratios().to_v();
            let xi = x.coords()[i].affine().unwrap();
            let minus_one = f.from_i64(-1);
            let xi1 = (&minus_one + xi).div(&mu_k).unwrap();
            let xi2 = (&minus_one - xi).div(&mu_k).unwrap();
            assert_eq!(*m.critical_slots()[0].affine().unwrap(), xi1, "{m}");
            assert_eq!(*m.critical_slots()[1].affine().unwrap(), xi2, "{m}");
            // and the ratio collapses to (1 - x_i)/(1 + x_i)
            let triple = m.cross_ratios();
            let r_i = &triple.coords()[i];
            let expect_num = &f.one() - xi;
            let expect_den = &f.one() + xi;
            assert_eq!(
                r_i.x() * &expect_den,
                &expect_num * r_i.y(),
                "ratio formula for {m}"
            );
            done += 1;
        }
    }
}

#[test]
fn remarking_orbit_properties_500() {
    let f = Field::prime(101).unwrap();
    let mut rng = seeded_rng(28);
    for _ in 0..500 {
        let m = random_marking(&f, &mut rng);
        let orbit = m.remarking_orbit();
        assert_eq!(orbit.triples.len(), 12);
        assert_eq!(12 % orbit.distinct_count(), 0, "{m}");
        // canonical representative does not depend on the slot order
        let reordered = m.permuted([2, 0, 1], true);
        assert_eq!(
            reordered.remarking_orbit().canonical,
            orbit.canonical,
            "{m}"
        );
        // swapping the critical slots inverts every coordinate
        let swapped = m.permuted([0, 1, 2], true).cross_ratios();
        for (orig, inv) in m.cross_ratios().coords().iter().zip(swapped.coords()) {
            assert_eq!(orig.reciprocal(), *inv);
        }
    }
}

#[test]
fn equivalence_witness_transports_500() {
    let f = Field::prime(101).unwrap();
    let mut rng = seeded_rng(29);
    for _ in 0..500 {
        let m = random_marking(&f, &mut rng);
        let g = random_mobius(&f, &mut rng);
        let moved = m.apply(&g);
        let eq = m.equivalent(&moved);
        assert!(eq.equivalent);
        let w = eq.witness.expect("witness over an exact backend");
        for (a, b) in m.points().iter().zip(moved.points().iter()) {
            assert_eq!(w.apply(a), **b);
        }
    }
}

#[test]
fn rejected_tuples_fail_reconstruction_f5() {
    let f5 = Field::prime(5).unwrap();
    let line = proj_line(&f5);
    let mut rejected = 0;
    for p1 in &line {
        for p2 in &line {
            for q1 in &line {
                // a family of tuples on the excluded loci
                let tuple = [
                    p1.clone(),
                    p2.clone(),
                    p1.clone(),
                    q1.clone(),
                    q1.clone(),
                ];
                assert!(try_reconstruct_raw(&tuple).is_err());
                rejected += 1;
            }
        }
    }
    assert!(rejected > 0);
}

#[test]
fn witness_slot_exists_exhaustive_f5() {
    // at most two fixed slots can coincide with critical slots, so the
    // witness construction always finds a free fixed slot
    let f5 = Field::prime(5).unwrap();
    for m in tmrat2::selftest::all_valid_markings(&f5) {
        let q = m.critical_slots();
        let free = m
            .fixed_slots()
            .iter()
            .any(|p| *p != q[0] && *p != q[1]);
        assert!(free, "{m}");
    }
}

#[test]
fn triple_constructor_accepts_computed_invariants() {
    let f = Field::prime(101).unwrap();
    let mut rng = seeded_rng(30);
    for _ in 0..100 {
        let m = random_marking(&f, &mut rng);
        let r = m.cross_ratios();
        let rebuilt = CrossRatioTriple::new(r.coords().clone()).unwrap();
        assert_eq!(rebuilt, r);
    }
}
