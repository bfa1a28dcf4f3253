//! One function per subcommand; each returns a `Report` carrying the JSON
//! body, the text rendering, and the exit status.

use crate::report::{Diagnostic, Report, Status};
use rayon::prelude::*;
use serde_json::{json, Value};
use tmrat2::dynmap::MapError;
use tmrat2::gitstab::WeightedConfig;
use tmrat2::marking::TotalMarking;
use tmrat2::parse;
use tmrat2::projpoly::ProjPoint;
use tmrat2::selftest::{run_all, Scale};
use tmrat2::{seeded_rng, CrossRatioTriple, Elem, Field, RatMap2};

pub struct Ctx {
    pub field: Field,
    pub seed: u64,
}

impl Ctx {
    fn report(&self, command: &str) -> Report {
        Report::new(command, &self.field.to_string(), self.seed)
    }
}

fn point_json(p: &ProjPoint) -> Value {
    Value::String(p.to_string())
}

fn elem_json(e: &Elem) -> Value {
    Value::String(e.to_string())
}

fn homog_json(p: &ProjPoint) -> Value {
    json!([p.x().to_string(), p.y().to_string()])
}

fn map_json(map: &RatMap2) -> Value {
    let c = map.display_coeffs();
    json!({
        "coefficients": c.iter().map(elem_json).collect::<Vec<_>>(),
        "fraction": map.to_fraction_string(),
    })
}

fn triple_json(r: &CrossRatioTriple) -> Value {
    json!({
        "affine": r.coords().iter().map(point_json).collect::<Vec<_>>(),
        "homogeneous": r.coords().iter().map(homog_json).collect::<Vec<_>>(),
    })
}

pub fn analyze(ctx: &Ctx, map_text: &str) -> Report {
    let report = ctx.report("analyze");
    let coeffs = match parse::parse_map_coeffs(&ctx.field, map_text) {
        Ok(c) => c,
        Err(e) => return report.usage_error(e.to_string()),
    };
    let map = match RatMap2::new(coeffs) {
        Ok(m) => m,
        Err(e) => return report.reject(Diagnostic::error("degenerate-map", e.to_string())),
    };
    let mut rng = seeded_rng(ctx.seed);
    let fixed = map.fixed_points(&mut rng);
    if !fixed.complete {
        let leftover = map.fixed_point_form().unsplit_factor(&fixed);
        return report.reject(Diagnostic::error(
            "incomplete-fixed-points",
            format!("fixed points do not all lie in the field; unsplit factor {leftover}"),
        ));
    }
    let critical = match map.critical_points(&mut rng) {
        Ok(c) => c,
        Err(e @ MapError::IrrationalCriticalPoints(_)) => {
            return report.reject(Diagnostic::error("irrational-critical-points", e.to_string()))
        }
        Err(e) => return report.reject(Diagnostic::error("map", e.to_string())),
    };
    let spectrum = map
        .multiplier_spectrum(&mut rng)
        .expect("complete fixed points give a complete spectrum");
    let sigma1 = spectrum.sigma(1);
    let sigma2 = spectrum.sigma(2);
    let mut report = report;
    report.result = json!({
        "map": map_json(&map),
        "resultant": map.display_resultant().to_string(),
        "fixed_points": fixed.entries.iter().map(|(p, m)| json!({
            "point": p.to_string(), "multiplicity": m,
        })).collect::<Vec<_>>(),
        "critical_points": critical.entries.iter().map(|(p, _)| point_json(p)).collect::<Vec<_>>(),
        "multiplier_spectrum": spectrum.entries.iter().map(|e| json!({
            "point": e.point.to_string(),
            "multiplicity": e.multiplicity,
            "multiplier": e.multiplier.to_string(),
        })).collect::<Vec<_>>(),
        "sigma": [sigma1.to_string(), sigma2.to_string()],
        "trace_identity": spectrum.trace_identity_holds(),
    });
    report.text.push(format!("map {}", map.to_fraction_string()));
    report.text.push(format!(
        "fixed points {}",
        fixed
            .entries
            .iter()
            .map(|(p, m)| format!("{p}:{m}"))
            .collect::<Vec<_>>()
            .join(" ")
    ));
    report.text.push(format!(
        "critical points {}",
        critical
            .entries
            .iter()
            .map(|(p, _)| p.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    ));
    report.text.push(format!("sigma ({sigma1}, {sigma2})"));
    report
}

fn parse_and_validate_marking(
    ctx: &Ctx,
    text: &str,
) -> Result<TotalMarking, Box<dyn FnOnce(Report) -> Report>> {
    let pts = match parse::parse_marking_points(&ctx.field, text) {
        Ok(p) => p,
        Err(e) => {
            let msg = e.to_string();
            return Err(Box::new(move |r: Report| r.usage_error(msg)));
        }
    };
    let [p1, p2, p3, q1, q2] = pts;
    match TotalMarking::validate(p1, p2, p3, q1, q2) {
        Ok(m) => Ok(m),
        Err(locus) => Err(Box::new(move |r: Report| {
            r.reject(Diagnostic::error(
                &format!("locus-{locus}"),
                format!("marking rejected: locus {locus}"),
            ))
        })),
    }
}

pub fn invariants(ctx: &Ctx, marking_text: &str) -> Report {
    let report = ctx.report("invariants");
    let m = match parse_and_validate_marking(ctx, marking_text) {
        Ok(m) => m,
        Err(reject) => return reject(report),
    };
    let r = m.cross_ratios();
    let v = r.to_v();
    let mus = v.multipliers().expect("surface coordinates are finite");
    let mut report = report;
    report.result = json!({
        "marking": m.points().iter().map(|p| point_json(p)).collect::<Vec<_>>(),
        "cross_ratios": triple_json(&r),
        "w_check": r.product_identity_holds(),
        "v_coords": v.coords().iter().map(point_json).collect::<Vec<_>>(),
        "v_check": v.sum_identity_holds(),
        "multipliers": mus.iter().map(elem_json).collect::<Vec<_>>(),
    });
    report.text.push(format!("marking {m}"));
    report.text.push(format!("cross ratios {r}"));
    report.text.push(format!("surface coordinates {v}"));
    report.text.push(format!(
        "multipliers ({},{},{})",
        mus[0], mus[1], mus[2]
    ));
    report
}

pub fn reconstruct(ctx: &Ctx, marking_text: &str) -> Report {
    let report = ctx.report("reconstruct");
    let m = match parse_and_validate_marking(ctx, marking_text) {
        Ok(m) => m,
        Err(reject) => return reject(report),
    };
    let map = match m.reconstruct() {
        Ok(map) => map,
        Err(e) => return report.reject(Diagnostic::error("reconstruct", e.to_string())),
    };
    let mut report = report;
    report.result = json!({
        "map": map_json(&map),
        "verified": true,
    });
    report.text.push(format!("map {map}"));
    report.text.push(format!("fraction {}", map.to_fraction_string()));
    report
}

pub fn equiv(ctx: &Ctx, first: &str, second: &str) -> Report {
    let report = ctx.report("equiv");
    let m1 = match parse_and_validate_marking(ctx, first) {
        Ok(m) => m,
        Err(reject) => return reject(report),
    };
    let m2 = match parse_and_validate_marking(ctx, second) {
        Ok(m) => m,
        Err(reject) => return reject(report),
    };
    let eq = m1.equivalent(&m2);
    let witness = eq.witness.as_ref().map(|g| {
        json!([
            [g.a.to_string(), g.b.to_string()],
            [g.c.to_string(), g.d.to_string()],
        ])
    });
    let mut report = report;
    report.result = json!({
        "equivalent": eq.equivalent,
        "witness": witness.unwrap_or(Value::Null),
        "cross_ratios": [
            triple_json(&m1.cross_ratios()),
            triple_json(&m2.cross_ratios()),
        ],
    });
    report.text.push(format!(
        "equivalent: {}",
        if eq.equivalent { "yes" } else { "no" }
    ));
    if let Some(g) = &eq.witness {
        report
            .text
            .push(format!("witness [[{},{}],[{},{}]]", g.a, g.b, g.c, g.d));
    }
    report
}

pub fn orbit(ctx: &Ctx, marking_text: &str) -> Report {
    let report = ctx.report("orbit");
    let m = match parse_and_validate_marking(ctx, marking_text) {
        Ok(m) => m,
        Err(reject) => return reject(report),
    };
    let orbit = m.remarking_orbit();
    let mut report = report;
    report.result = json!({
        "triples": orbit.triples.iter()
            .map(|t| t.coords().iter().map(point_json).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
        "canonical": orbit.canonical.coords().iter().map(point_json).collect::<Vec<_>>(),
        "distinct": orbit.distinct_count(),
    });
    report.text.push(format!("canonical {}", orbit.canonical));
    report
        .text
        .push(format!("distinct triples {}", orbit.distinct_count()));
    report
}

pub fn stability(ctx: &Ctx, config_text: &str) -> Report {
    let report = ctx.report("stability");
    let (points, weights) = match parse::parse_config(&ctx.field, config_text) {
        Ok(v) => v,
        Err(e) => return report.usage_error(e.to_string()),
    };
    let cfg = match WeightedConfig::new(points, weights) {
        Ok(c) => c,
        Err(e) => return report.usage_error(e.to_string()),
    };
    let verdict = cfg.classify();
    let mut report = report;
    report.result = json!({
        "classification": verdict.classification.to_string(),
        "total_weight": cfg.total_weight(),
        "witnesses": verdict.witnesses.iter().map(|w| json!({
            "point": w.point.to_string(),
            "weight": w.weight,
        })).collect::<Vec<_>>(),
    });
    report
        .text
        .push(format!("classification {}", verdict.classification));
    for w in &verdict.witnesses {
        report
            .text
            .push(format!("witness point {} weight {}", w.point, w.weight));
    }
    report
}

enum SweepPayload {
    Map(RatMap2),
    Marking(TotalMarking),
}

enum PrimeOutcome {
    Skipped(String),
    Pass,
    Fail(String),
}

pub fn sweep(ctx: &Ctx, payload_text: &str, primes_text: &str) -> Report {
    let report = ctx.report("sweep");
    let rationals = Field::rationals();
    let looks_like_map =
        payload_text.trim_start().starts_with('[') || payload_text.contains('z');
    let payload = if looks_like_map {
        match parse::parse_map_coeffs(&rationals, payload_text).map(RatMap2::new) {
            Ok(Ok(map)) => SweepPayload::Map(map),
            Ok(Err(e)) => {
                return report.reject(Diagnostic::error("degenerate-map", e.to_string()))
            }
            Err(e) => return report.usage_error(e.to_string()),
        }
    } else {
        let pts = match parse::parse_marking_points(&rationals, payload_text) {
            Ok(p) => p,
            Err(e) => return report.usage_error(e.to_string()),
        };
        let [p1, p2, p3, q1, q2] = pts;
        match TotalMarking::validate(p1, p2, p3, q1, q2) {
            Ok(m) => SweepPayload::Marking(m),
            Err(locus) => {
                return report.reject(Diagnostic::error(
                    &format!("locus-{locus}"),
                    format!("marking rejected over the rationals: locus {locus}"),
                ))
            }
        }
    };
    let primes = match parse::parse_primes(primes_text) {
        Ok(p) => p,
        Err(e) => return report.usage_error(e.to_string()),
    };
    let seed = ctx.seed;
    let mut outcomes: Vec<(u64, PrimeOutcome)> = primes
        .par_iter()
        .map(|&p| (p, sweep_one_prime(&payload, p, seed)))
        .collect();
    outcomes.sort_by_key(|(p, _)| *p);
    let mut passed = 0u64;
    let mut failed = 0u64;
    let mut skipped = 0u64;
    let entries: Vec<Value> = outcomes
        .iter()
        .map(|(p, o)| match o {
            PrimeOutcome::Pass => {
                passed += 1;
                json!({"p": p, "status": "pass"})
            }
            PrimeOutcome::Fail(why) => {
                failed += 1;
                json!({"p": p, "status": "fail", "reason": why})
            }
            PrimeOutcome::Skipped(why) => {
                skipped += 1;
                json!({"p": p, "status": "skipped", "reason": why})
            }
        })
        .collect();
    let mut report = report;
    for (p, o) in &outcomes {
        match o {
            PrimeOutcome::Pass => report.text.push(format!("p={p} pass")),
            PrimeOutcome::Fail(w) => report.text.push(format!("p={p} FAIL: {w}")),
            PrimeOutcome::Skipped(w) => {
                report
                    .diagnostics
                    .push(Diagnostic::info("prime-skipped", format!("p={p} skipped: {w}")));
                report.text.push(format!("p={p} skipped: {w}"));
            }
        }
    }
    report.result = json!({
        "primes": entries,
        "passed": passed,
        "failed": failed,
        "skipped": skipped,
    });
    report
        .text
        .push(format!("passed {passed} failed {failed} skipped {skipped}"));
    if passed == 0 || failed > 0 {
        report.status = Status::Rejected;
        report
            .diagnostics
            .push(Diagnostic::error("sweep", "no prime passed the identity battery"));
    }
    report
}

fn reduce_point(p: &ProjPoint, target: &Field) -> Result<ProjPoint, String> {
    if p.is_infinite() {
        return Ok(ProjPoint::infinity(target));
    }
    let v = p
        .affine()
        .expect("finite point")
        .reduce_into(target)
        .map_err(|_| "denominator divisible by p".to_string())?;
    Ok(ProjPoint::finite(v))
}

fn reduce_map(map: &RatMap2, target: &Field) -> Result<RatMap2, String> {
    let coeffs = map.display_coeffs();
    let mut reduced = Vec::with_capacity(6);
    for c in &coeffs {
        reduced.push(c.reduce_into(target).map_err(|e| e.to_string())?);
    }
    RatMap2::new(reduced.try_into().expect("six"))
        .map_err(|_| "resultant vanishes mod p".to_string())
}

fn sweep_one_prime(payload: &SweepPayload, p: u64, seed: u64) -> PrimeOutcome {
    if p == 2 {
        return PrimeOutcome::Skipped("characteristic two excluded".to_string());
    }
    let field = match Field::prime(p) {
        Ok(f) => f,
        Err(e) => return PrimeOutcome::Skipped(e.to_string()),
    };
    let mut rng = seeded_rng(seed ^ p.wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let (map_p, marking_p) = match payload {
        SweepPayload::Map(map) => {
            let map_p = match reduce_map(map, &field) {
                Ok(m) => m,
                Err(why) => return PrimeOutcome::Skipped(why),
            };
            let marking = match TotalMarking::of_map(&map_p, &mut rng) {
                Ok(m) => m,
                Err(e) => {
                    return PrimeOutcome::Skipped(format!(
                        "marked points not rational mod p: {e}"
                    ))
                }
            };
            (map_p, marking)
        }
        SweepPayload::Marking(m) => {
            let mut pts = Vec::with_capacity(5);
            for q in m.points() {
                match reduce_point(q, &field) {
                    Ok(r) => pts.push(r),
                    Err(why) => return PrimeOutcome::Skipped(why),
                }
            }
            let reduced = TotalMarking::validate(
                pts[0].clone(),
                pts[1].clone(),
                pts[2].clone(),
                pts[3].clone(),
                pts[4].clone(),
            );
            let marking = match reduced {
                Ok(m) => m,
                Err(locus) => {
                    return PrimeOutcome::Skipped(format!("marking degenerates mod p: locus {locus}"))
                }
            };
            let map_p = match marking.reconstruct() {
                Ok(m) => m,
                Err(_) => return PrimeOutcome::Skipped("resultant vanishes mod p".to_string()),
            };
            (map_p, marking)
        }
    };
    // identity battery
    let r = marking_p.cross_ratios();
    if !r.product_identity_holds() {
        return PrimeOutcome::Fail("surface product identity".to_string());
    }
    let v = r.to_v();
    if !v.sum_identity_holds() {
        return PrimeOutcome::Fail("surface sum identity".to_string());
    }
    let mus = match v.multipliers() {
        Ok(m) => m,
        Err(e) => return PrimeOutcome::Fail(format!("multipliers: {e}")),
    };
    for (i, slot) in marking_p.fixed_slots().iter().enumerate() {
        match map_p.multiplier(slot) {
            Ok(mu) if mu == mus[i] => {}
            Ok(mu) => {
                return PrimeOutcome::Fail(format!(
                    "multiplier mismatch at slot {i}: {mu} vs {}",
                    mus[i]
                ))
            }
            Err(e) => return PrimeOutcome::Fail(format!("multiplier: {e}")),
        }
    }
    let spectrum = match map_p.multiplier_spectrum(&mut rng) {
        Ok(s) => s,
        Err(e) => return PrimeOutcome::Fail(format!("spectrum: {e}")),
    };
    if !spectrum.trace_identity_holds() {
        return PrimeOutcome::Fail("trace identity".to_string());
    }
    match marking_p.reconstruct() {
        Ok(back) if back == map_p => {}
        Ok(_) => return PrimeOutcome::Fail("round trip produced a different map".to_string()),
        Err(e) => return PrimeOutcome::Fail(format!("round trip: {e}")),
    }
    PrimeOutcome::Pass
}

pub fn selftest(ctx: &Ctx, scale_text: &str) -> Report {
    let report = ctx.report("selftest");
    let scale = match scale_text {
        "small" => Scale::Small,
        "full" => Scale::Full,
        other => return report.usage_error(format!("unknown scale `{other}`")),
    };
    let suites = run_all(scale, ctx.seed);
    let all_passed = suites.iter().all(|s| s.passed());
    let mut report = report;
    report.result = json!({
        "scale": scale_text,
        "suites": suites.iter().map(|s| json!({
            "name": s.name,
            "cases": s.cases,
            "failures": s.failures.len(),
            "counterexamples": s.failures,
        })).collect::<Vec<_>>(),
        "all_passed": all_passed,
    });
    for s in &suites {
        report.text.push(format!(
            "{:<36} cases={:<7} {}",
            s.name,
            s.cases,
            if s.passed() { "pass" } else { "FAIL" }
        ));
        for c in s.failures.iter().take(3) {
            report.text.push(format!("  counterexample: {c}"));
        }
    }
    if !all_passed {
        report.status = Status::Rejected;
        report
            .diagnostics
            .push(Diagnostic::error("selftest", "oracle disagreement"));
    }
    report
}
