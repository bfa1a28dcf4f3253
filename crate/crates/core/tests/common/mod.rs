#![allow(dead_code)] // shared across test targets with different usage

//! Shared random generators for the property suites.

use rand::Rng;
use tmrat2::projpoly::{MobiusMap, ProjPoint};
use tmrat2::{CzRng, Field, RatMap2, TotalMarking};

/// A random point of the projective line (infinity with probability 1/8).
pub fn random_point(field: &Field, rng: &mut CzRng) -> ProjPoint {
    if rng.gen_range(0..8) == 0 {
        ProjPoint::infinity(field)
    } else {
        ProjPoint::finite(field.sample(rng))
    }
}

/// A random valid marking, by rejection.
pub fn random_marking(field: &Field, rng: &mut CzRng) -> TotalMarking {
    loop {
        let p1 = random_point(field, rng);
        let p2 = random_point(field, rng);
        let p3 = random_point(field, rng);
        let q1 = random_point(field, rng);
        let q2 = random_point(field, rng);
        if let Ok(m) = TotalMarking::validate(p1, p2, p3, q1, q2) {
            return m;
        }
    }
}

/// A random invertible transformation, by rejection.
pub fn random_mobius(field: &Field, rng: &mut CzRng) -> MobiusMap {
    loop {
        let g = MobiusMap::new(
            field.sample(rng),
            field.sample(rng),
            field.sample(rng),
            field.sample(rng),
        );
        if let Ok(g) = g {
            return g;
        }
    }
}

/// A random quadratic map with nonzero resultant, by rejection.
pub fn random_map(field: &Field, rng: &mut CzRng) -> RatMap2 {
    loop {
        let coeffs: Vec<_> = (0..6).map(|_| field.sample(rng)).collect();
        if let Ok(map) = RatMap2::new(coeffs.try_into().expect("six")) {
            return map;
        }
    }
}
