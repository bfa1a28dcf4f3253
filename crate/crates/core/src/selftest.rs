//! Exhaustive desk-scale verification harnesses over small prime fields,
//! shared by the command-line `selftest` and the acceptance suite. Each
//! suite returns its case count and any counterexamples found.

use crate::dynmap::RatMap2;
use crate::fields::Field;
use crate::gitstab::{Stability, WeightedConfig};
use crate::marking::{try_reconstruct_raw, TotalMarking};
use crate::projpoly::{MobiusMap, ProjPoint};
use crate::seeded_rng;
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scale {
    /// Capped case counts for quick runs.
    Small,
    /// Every case.
    Full,
}

impl Scale {
    fn cap(&self, full: usize) -> usize {
        match self {
            Scale::Small => full.min(300),
            Scale::Full => full,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub name: String,
    pub cases: u64,
    pub failures: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn fail(&mut self, msg: String) {
        // keep reports bounded; the count is in len()
        if self.failures.len() < 32 {
            self.failures.push(msg);
        }
    }
}

/// A random point of the projective line (infinity with probability 1/8).
pub fn random_point(field: &Field, rng: &mut crate::CzRng) -> ProjPoint {
    use rand::Rng;
    if rng.gen_range(0..8) == 0 {
        ProjPoint::infinity(field)
    } else {
        ProjPoint::finite(field.sample(rng))
    }
}

/// A random valid marking, by rejection sampling.
pub fn random_valid_marking(field: &Field, rng: &mut crate::CzRng) -> TotalMarking {
    loop {
        let candidate = TotalMarking::validate(
            random_point(field, rng),
            random_point(field, rng),
            random_point(field, rng),
            random_point(field, rng),
            random_point(field, rng),
        );
        if let Ok(m) = candidate {
            return m;
        }
    }
}

/// All points of the projective line over a finite field.
pub fn proj_line(field: &Field) -> Vec<ProjPoint> {
    let mut out: Vec<ProjPoint> = field
        .elements()
        .expect("finite field")
        .into_iter()
        .map(ProjPoint::finite)
        .collect();
    out.push(ProjPoint::infinity(field));
    out
}

/// All classes of invertible 2x2 matrices over a finite field up to scalar,
/// represented with the first nonzero entry scaled to 1.
pub fn pgl2_elements(field: &Field) -> Vec<MobiusMap> {
    let elems = field.elements().expect("finite field");
    let mut out = Vec::new();
    let one = field.one();
    let zero = field.zero();
    // first nonzero entry is a: (1, b, c, d)
    for b in &elems {
        for c in &elems {
            for d in &elems {
                if let Ok(m) = MobiusMap::new(one.clone(), b.clone(), c.clone(), d.clone()) {
                    out.push(m);
                }
            }
        }
    }
    // a = 0, first nonzero is b: (0, 1, c, d); det = -c, need c != 0
    for c in &elems {
        if c.is_zero() {
            continue;
        }
        for d in &elems {
            out.push(
                MobiusMap::new(zero.clone(), one.clone(), c.clone(), d.clone())
                    .expect("nonzero determinant"),
            );
        }
    }
    out
}

/// Every quadratic map over a finite field, one representative per scalar
/// class, nonzero resultant enforced by construction.
pub fn all_maps(field: &Field) -> Vec<RatMap2> {
    let elems = field.elements().expect("finite field");
    let mut out = Vec::new();
    let mut coeffs = vec![field.zero(); 6];
    // first nonzero coefficient sits at position i and equals 1
    for i in 0..6 {
        coeffs[i] = field.one();
        let free = 5 - i;
        let mut idx = vec![0usize; free];
        loop {
            for (off, &e) in idx.iter().enumerate() {
                coeffs[i + 1 + off] = elems[e].clone();
            }
            if let Ok(map) = RatMap2::new(coeffs.clone().try_into().expect("six")) {
                out.push(map);
            }
            // increment the mixed-radix counter
            let mut pos = 0;
            loop {
                if pos == free {
                    break;
                }
                idx[pos] += 1;
                if idx[pos] < elems.len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
            if pos == free {
                break;
            }
        }
        coeffs[i] = field.zero();
    }
    out
}

/// All validated markings over a finite field.
pub fn all_valid_markings(field: &Field) -> Vec<TotalMarking> {
    let line = proj_line(field);
    let mut out = Vec::new();
    for p1 in &line {
        for p2 in &line {
            for p3 in &line {
                for q1 in &line {
                    for q2 in &line {
                        if let Ok(m) = TotalMarking::validate(
                            p1.clone(),
                            p2.clone(),
                            p3.clone(),
                            q1.clone(),
                            q2.clone(),
                        ) {
                            out.push(m);
                        }
                    }
                }
            }
        }
    }
    out
}

/// Exhaustive check that a five-tuple is accepted by the locus test exactly
/// when the map reconstruction succeeds.
pub fn validity_reconstruction_sweep(p: u64, scale: Scale) -> SuiteReport {
    let field = Field::prime(p).expect("odd prime");
    let line = proj_line(&field);
    let mut report = SuiteReport {
        name: format!("validity-reconstructability-F{p}"),
        cases: 0,
        failures: Vec::new(),
    };
    let n = line.len();
    let full = n.pow(5);
    let cap = scale.cap(full);
    let mut count = 0usize;
    'outer: for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    for e in 0..n {
                        if count >= cap {
                            break 'outer;
                        }
                        count += 1;
                        let tuple = [
                            line[a].clone(),
                            line[b].clone(),
                            line[c].clone(),
                            line[d].clone(),
                            line[e].clone(),
                        ];
                        let valid = TotalMarking::validate(
                            tuple[0].clone(),
                            tuple[1].clone(),
                            tuple[2].clone(),
                            tuple[3].clone(),
                            tuple[4].clone(),
                        )
                        .is_ok();
                        let reconstructs = try_reconstruct_raw(&tuple).is_ok();
                        report.cases += 1;
                        if valid != reconstructs {
                            report.fail(format!(
                                "tuple ({},{},{},{},{}): valid={valid} reconstructs={reconstructs}",
                                tuple[0], tuple[1], tuple[2], tuple[3], tuple[4]
                            ));
                        }
                    }
                }
            }
        }
    }
    report
}

/// Exhaustive round trip over a finite field: every map with a fully
/// rational marking is reproduced, up to scalar, from that marking.
pub fn round_trip_sweep(p: u64, scale: Scale, seed: u64) -> SuiteReport {
    let field = Field::prime(p).expect("odd prime");
    let mut rng = seeded_rng(seed);
    let mut report = SuiteReport {
        name: format!("marking-round-trip-F{p}"),
        cases: 0,
        failures: Vec::new(),
    };
    let maps = all_maps(&field);
    let cap = scale.cap(maps.len());
    for map in maps.into_iter().take(cap) {
        let marking = match TotalMarking::of_map(&map, &mut rng) {
            Ok(m) => m,
            Err(_) => continue, // marking not rational over F_p
        };
        report.cases += 1;
        match marking.reconstruct() {
            Ok(back) if back == map => {}
            Ok(back) => report.fail(format!("{map} -> {marking} -> {back}")),
            Err(e) => report.fail(format!("{map} -> {marking}: {e}")),
        }
    }
    report
}

/// Exhaustive conjugacy oracle: cross-ratio equality of markings coincides
/// with lying in the same orbit under every element of PGL2.
pub fn conjugacy_oracle(p: u64, scale: Scale, seed: u64) -> SuiteReport {
    let field = Field::prime(p).expect("odd prime");
    let mut report = SuiteReport {
        name: format!("conjugacy-oracle-F{p}"),
        cases: 0,
        failures: Vec::new(),
    };
    let group = pgl2_elements(&field);
    let markings = all_valid_markings(&field);
    let cap = scale.cap(markings.len());
    // orbit key: the least serialized transport; triple key: the invariant
    let mut orbit_to_triples: BTreeMap<String, Vec<String>> = BTreeMap::new();
    let mut triple_to_orbits: BTreeMap<String, Vec<String>> = BTreeMap::new();
    for m in markings.iter().take(cap) {
        report.cases += 1;
        let triple = m.cross_ratios().to_string();
        let orbit = group
            .iter()
            .map(|g| m.apply(g).to_string())
            .min()
            .expect("nonempty group");
        let t = orbit_to_triples.entry(orbit.clone()).or_default();
        if !t.contains(&triple) {
            t.push(triple.clone());
        }
        let o = triple_to_orbits.entry(triple).or_default();
        if !o.contains(&orbit) {
            o.push(orbit);
        }
    }
    for (orbit, triples) in &orbit_to_triples {
        if triples.len() != 1 {
            report.fail(format!("orbit {orbit} carries {} distinct triples", triples.len()));
        }
    }
    for (triple, orbits) in &triple_to_orbits {
        if orbits.len() != 1 {
            report.fail(format!("triple {triple} spread over {} orbits", orbits.len()));
        }
    }
    // sampled agreement of the pairwise decision, witnesses included
    let mut rng = seeded_rng(seed ^ 0x5eed);
    use rand::Rng;
    let sample = scale.cap(200);
    for _ in 0..sample {
        if markings.is_empty() {
            break;
        }
        let a = &markings[rng.gen_range(0..markings.len().min(cap))];
        let g = &group[rng.gen_range(0..group.len())];
        let moved = a.apply(g);
        report.cases += 1;
        let eq = a.equivalent(&moved);
        if !eq.equivalent || eq.witness.is_none() {
            report.fail(format!("transport of {a} not recognized as equivalent"));
        }
        let b = &markings[rng.gen_range(0..markings.len().min(cap))];
        report.cases += 1;
        let decided = a.equivalent(b).equivalent;
        let truth = a.cross_ratios() == b.cross_ratios();
        if decided != truth {
            report.fail(format!("pair {a} vs {b}: decision {decided}, invariant {truth}"));
        }
    }
    report
}

/// Exhaustive check that every map with nonzero resultant has a Wronskian
/// with two distinct roots (nonzero discriminant).
pub fn critical_distinctness_sweep(p: u64, scale: Scale) -> SuiteReport {
    let field = Field::prime(p).expect("odd prime");
    let mut report = SuiteReport {
        name: format!("critical-distinctness-F{p}"),
        cases: 0,
        failures: Vec::new(),
    };
    let maps = all_maps(&field);
    let cap = scale.cap(maps.len());
    let four = field.from_i64(4);
    for map in maps.into_iter().take(cap) {
        report.cases += 1;
        let w = map.critical_form();
        if w.is_zero() {
            report.fail(format!("{map}: zero Wronskian"));
            continue;
        }
        let c = w.coeffs();
        let disc = &(&c[1] * &c[1]) - &(&(&four * &c[0]) * &c[2]);
        if disc.is_zero() {
            report.fail(format!("{map}: Wronskian discriminant vanishes"));
        }
    }
    report
}

/// Exhaustive comparison of the coincidence-class classifier against direct
/// enumeration of the candidate subspaces (the rational points of the line).
pub fn stability_brute_force(scale: Scale) -> SuiteReport {
    let field = Field::prime(3).expect("odd prime");
    let line = proj_line(&field);
    let mut report = SuiteReport {
        name: "stability-brute-force-F3".to_string(),
        cases: 0,
        failures: Vec::new(),
    };
    let max_total = 8u64;
    let mut configs = 0usize;
    for m in 1..=4usize {
        let weight_vectors = compositions(m, max_total);
        let mut idx = vec![0usize; m];
        loop {
            let points: Vec<ProjPoint> = idx.iter().map(|&i| line[i].clone()).collect();
            for ws in &weight_vectors {
                if configs >= scale.cap(30_000) {
                    return report;
                }
                configs += 1;
                report.cases += 1;
                let cfg = WeightedConfig::new(points.clone(), ws.clone()).expect("valid config");
                let got = cfg.classify().classification;
                let total: u64 = ws.iter().sum();
                let mut semi = true;
                let mut strict = true;
                for w in &line {
                    let class: u64 = points
                        .iter()
                        .zip(ws.iter())
                        .filter(|(pt, _)| *pt == w)
                        .map(|(_, v)| v)
                        .sum();
                    if 2 * class > total {
                        semi = false;
                    }
                    if 2 * class >= total {
                        strict = false;
                    }
                }
                let expected = if !semi {
                    Stability::Unstable
                } else if !strict {
                    Stability::StrictlySemistable
                } else {
                    Stability::Stable
                };
                if got != expected {
                    report.fail(format!("points {idx:?} weights {ws:?}: {got:?} vs {expected:?}"));
                }
            }
            let mut pos = 0;
            loop {
                if pos == m {
                    break;
                }
                idx[pos] += 1;
                if idx[pos] < line.len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
            if pos == m {
                break;
            }
        }
    }
    report
}

fn compositions(m: usize, max_total: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut cur = vec![1u64; m];
    loop {
        if cur.iter().sum::<u64>() <= max_total {
            out.push(cur.clone());
        }
        let mut pos = 0;
        loop {
            if pos == m {
                return out;
            }
            cur[pos] += 1;
            if cur.iter().sum::<u64>() <= max_total {
                break;
            }
            cur[pos] = 1;
            pos += 1;
        }
    }
}

/// The whole battery, in a deterministic order.
pub fn run_all(scale: Scale, seed: u64) -> Vec<SuiteReport> {
    vec![
        validity_reconstruction_sweep(5, scale),
        round_trip_sweep(5, scale, seed),
        conjugacy_oracle(5, scale, seed),
        critical_distinctness_sweep(5, scale),
        critical_distinctness_sweep(7, scale),
        stability_brute_force(scale),
    ]
}
