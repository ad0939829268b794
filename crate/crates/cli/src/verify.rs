//! The verification harness behind `walkbound verify`: every invariant suite
//! runs against the live library, printing one line per suite.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use walkbound::bounds::{excursion_floor, shuffle_search, BoundKind, BoundLedger, Certificate, GrowthBound};
use walkbound::enumeration::{count_excursions, count_halfspace, count_orthant, estimate_growth};
use walkbound::halfplane::{
    best_upper_bound, critical_point, half_plane_growth, tau_of, theta_sweep,
    Exponent1D,
};
use walkbound::orthant::{conjectured_growth, hyperplane_growth, min_growth_over_normals};
use walkbound::smallsteps::{enumerate_small_models, fr_values, ModelSurveyEntry};
use walkbound::{Error, StepSet};

pub struct VerifyConfig {
    pub n_max: usize,
    pub gridsize: usize,
    pub tolerance: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            n_max: 24,
            gridsize: 1572,
            tolerance: 1e-9,
        }
    }
}

type SuiteResult = Result<String, String>;

pub const SUITE_NAMES: &[&str] = &[
    "worked-examples",
    "census",
    "rhox-identities",
    "critpoint-identity",
    "oracle-consistency",
    "shuffle-tightness",
    "scaling",
    "continuity",
    "table1-signs",
    "threed-consistency",
    "ledger-integrity",
    "reflection-coherence",
    "convexity",
    "domination",
    "fekete",
    "best-vs-sweep",
    "2d-reduction",
    "hyperplane-floor",
];

/// Runs the selected suites (all when `filter` is empty); returns true when
/// every suite passed.
pub fn run(filter: &[String], cfg: &VerifyConfig) -> bool {
    let mut all_ok = true;
    for &name in SUITE_NAMES {
        if !filter.is_empty() && !filter.iter().any(|f| f == name) {
            continue;
        }
        let start = Instant::now();
        let outcome = run_suite(name, cfg);
        let elapsed = start.elapsed();
        match outcome {
            Ok(stats) => println!("PASS {name} ({elapsed:.2?}) {stats}"),
            Err(why) => {
                all_ok = false;
                println!("FAIL {name} ({elapsed:.2?}) {why}");
            }
        }
    }
    all_ok
}

fn run_suite(name: &str, cfg: &VerifyConfig) -> SuiteResult {
    match name {
        "worked-examples" => worked_examples(),
        "census" => census(),
        "rhox-identities" => rhox_identities(),
        "critpoint-identity" => critpoint_identity(),
        "oracle-consistency" => oracle_consistency(cfg),
        "shuffle-tightness" => shuffle_tightness(),
        "scaling" => scaling(),
        "continuity" => continuity(cfg),
        "table1-signs" => table1_signs(),
        "threed-consistency" => threed_consistency(),
        "ledger-integrity" => ledger_integrity(),
        "reflection-coherence" => reflection_coherence(),
        "convexity" => convexity(),
        "domination" => domination(),
        "fekete" => fekete(),
        "best-vs-sweep" => best_vs_sweep(),
        "2d-reduction" => two_d_reduction(),
        "hyperplane-floor" => hyperplane_floor(),
        other => Err(format!("unknown suite '{other}'")),
    }
}

fn set(names: &str) -> StepSet {
    StepSet::from_compass(names).expect("valid compass model")
}

fn check(ok: bool, why: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(why())
    }
}

fn survey() -> Result<Vec<ModelSurveyEntry>, String> {
    enumerate_small_models().map_err(|e| format!("survey failed: {e}"))
}

fn worked_examples() -> SuiteResult {
    let start = Instant::now();
    let b = best_upper_bound(&set("N,SW,S,SE")).map_err(|e| e.to_string())?;
    let two_rt3 = 2.0 * 3f64.sqrt();
    check((b.value - two_rt3).abs() <= 1e-9, || {
        format!("bound {} vs 2 sqrt(3)", b.value)
    })?;
    check(b.theta_star == 0.0, || format!("theta* {}", b.theta_star))?;
    let p = walkbound::fr_classify(&set("N,SW,S,SE")).map_err(|e| e.to_string())?;
    check(
        (p.predicted_growth.unwrap_or(0.0) - two_rt3).abs() <= 1e-9,
        || "classification disagrees on the first worked example".to_string(),
    )?;

    let b = best_upper_bound(&set("N,W,SE,S,SW")).map_err(|e| e.to_string())?;
    let cp = critical_point(&set("N,W,SE,S,SW"));
    check(
        (cp.coordinates[0] - 1.6760).abs() <= 5e-4 && (cp.coordinates[1] - 1.8091).abs() <= 5e-4,
        || format!("critical point {:?}", cp.coordinates),
    )?;
    check(
        (b.theta_star - 0.2281 * std::f64::consts::PI).abs() <= 5e-4 * std::f64::consts::PI,
        || format!("theta* {}", b.theta_star),
    )?;
    check((b.value - 4.2148).abs() <= 5e-4, || {
        format!("bound {}", b.value)
    })?;
    Ok(format!("2 worked examples in {:.2?}", start.elapsed()))
}

fn census() -> SuiteResult {
    let survey = survey()?;
    check(survey.len() == 79, || format!("{} classes", survey.len()))?;
    let applicable = survey.iter().filter(|e| e.fr_applicable()).count();
    check(applicable == 74, || format!("{applicable} applicable"))?;
    let mut worst = 0.0f64;
    for e in &survey {
        if let Some(pred) = e.prediction.predicted_growth {
            worst = worst.max((pred - e.min_theta_bound).abs());
        }
    }
    check(worst <= 1e-9, || format!("max |pred - bound| = {worst:e}"))?;
    Ok(format!(
        "79 classes, 74 applicable, max |pred - bound| = {worst:.2e}"
    ))
}

fn rhox_identities() -> SuiteResult {
    let survey = survey()?;
    let mut worst = 0.0f64;
    for e in &survey {
        let v = fr_values(&e.model).map_err(|e| e.to_string())?;
        for (normal, radical) in [([0.0, 1.0], v.rho_y_inv), ([1.0, 0.0], v.rho_x_inv)] {
            let a = walkbound::halfplane::project(&e.model, &normal)
                .map_err(|e| e.to_string())?;
            let chi_min = if a.is_nontrivial() {
                let tau = tau_of(&a).map_err(|e| e.to_string())?;
                a.chi(tau)
            } else {
                a.total() as f64
            };
            worst = worst.max((radical - chi_min).abs());
        }
    }
    check(worst <= 1e-9, || format!("max radical error {worst:e}"))?;
    Ok(format!("all 79 models, max |radical - chi(tau)| = {worst:.2e}"))
}

fn critpoint_identity() -> SuiteResult {
    let survey = survey()?;
    let mut checked = 0usize;
    let mut worst = 0.0f64;
    for e in &survey {
        let cp = critical_point(&e.model);
        if !cp.converged {
            continue;
        }
        let la = cp.coordinates[0].ln();
        let lb = cp.coordinates[1].ln();
        let theta = match (la.abs() <= 1e-9, lb.abs() <= 1e-9) {
            (true, _) => 0.0,
            (false, true) => std::f64::consts::FRAC_PI_2,
            _ if la / lb >= 0.0 => (la / lb).atan(),
            _ => continue,
        };
        let normal = if theta == std::f64::consts::FRAC_PI_2 {
            [1.0, 0.0]
        } else if theta == 0.0 {
            [0.0, 1.0]
        } else {
            [theta.sin(), theta.cos()]
        };
        let projected =
            walkbound::halfplane::project(&e.model, &normal).map_err(|e| e.to_string())?;
        let chi_min = if projected.is_nontrivial() {
            let tau = tau_of(&projected).map_err(|e| e.to_string())?;
            projected.chi(tau)
        } else {
            projected.total() as f64
        };
        worst = worst.max((cp.inventory_value - chi_min).abs());
        checked += 1;
    }
    check(worst <= 1e-9, || format!("max identity error {worst:e}"))?;
    Ok(format!(
        "{checked} converged models, max |P - chi(tau)| = {worst:.2e}"
    ))
}

pub const DESIGNATED_MODELS: [&str; 10] = [
    "N,E,S,W",
    "N,SW,S,SE",
    "N,NE,S,SW,W",
    "NE,W,S",
    "N,E,SW",
    "N,W,SE",
    "N,SE,SW",
    "NE,NW,SE,SW",
    "N,W,SE,S,SW",
    "N,NE,E,SE,S,SW,W,NW",
];

/// Resolves a model with the standard bound suite.
pub fn resolve_with_ledger(s: &StepSet, n_max: usize, tol: f64) -> Result<Option<f64>, Error> {
    let mut ledger = BoundLedger::new(s.clone());
    let best = best_upper_bound(s)?;
    ledger.add(GrowthBound::from_best_angle(s, &best))?;
    if let Ok(floor) = excursion_floor(s) {
        ledger.add(floor)?;
    }
    if let Some(b) = shuffle_search(s) {
        ledger.add(b)?;
    }
    ledger.register_series(&count_orthant(s, n_max.min(16))?)?;
    ledger.resolve(tol)
}

fn oracle_consistency(cfg: &VerifyConfig) -> SuiteResult {
    let mut fitted = 0usize;
    for names in DESIGNATED_MODELS {
        let s = set(names);
        let q = count_orthant(&s, cfg.n_max).map_err(|e| e.to_string())?;
        // supermultiplicativity over every split
        for m in 1..q.counts.len() - 1 {
            for n in 1..q.counts.len() - m {
                check(q.counts[m + n] >= &q.counts[m] * &q.counts[n], || {
                    format!("{names}: q_{} < q_{m} q_{n}", m + n)
                })?;
            }
        }
        // roots stay below the upper bound
        let upper = best_upper_bound(&s).map_err(|e| e.to_string())?.value;
        let floor = q.fekete_floor().unwrap_or(0.0);
        check(floor <= upper + 1e-9, || {
            format!("{names}: floor {floor} above bound {upper}")
        })?;
        // DP equals brute force over short horizons
        let brute = brute_orthant(&s, 8);
        check(
            q.counts[..=8].to_vec() == brute,
            || format!("{names}: DP disagrees with brute force"),
        )?;
        // the fitted estimate lands within 5% of the resolved constant
        let resolved = resolve_with_ledger(&s, cfg.n_max, cfg.tolerance)
            .map_err(|e| e.to_string())?
            .ok_or_else(|| format!("{names}: ledger did not resolve"))?;
        let est = estimate_growth(&q).map_err(|e| e.to_string())?;
        check((est.estimate - resolved).abs() / resolved <= 0.05, || {
            format!(
                "{names}: estimate {} vs resolved {resolved}",
                est.estimate
            )
        })?;
        fitted += 1;
    }
    Ok(format!("{fitted} designated models to n = {}", cfg.n_max))
}

fn shuffle_tightness() -> SuiteResult {
    let s = set("N,NE,S,SW,W");
    let resolved = resolve_with_ledger(&s, 12, 1e-9)
        .map_err(|e| e.to_string())?
        .ok_or("five-step model did not resolve")?;
    let expected = 2.0 + 2.0 * 2f64.sqrt();
    check((resolved - expected).abs() <= 1e-9, || {
        format!("resolved {resolved} vs 2 + 2 sqrt(2)")
    })?;
    let s = set("N,E,S,W");
    let resolved = resolve_with_ledger(&s, 12, 1e-9)
        .map_err(|e| e.to_string())?
        .ok_or("simple walk did not resolve")?;
    check((resolved - 4.0).abs() <= 1e-9, || {
        format!("resolved {resolved} vs 4")
    })?;
    Ok("both shuffle-tight models resolve".into())
}

fn scaling() -> SuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5ca1e);
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let a = loop {
            let len = rng.gen_range(2..=7);
            let values: Vec<f64> = (0..len).map(|_| rng.gen_range(-3.0..3.0)).collect();
            let a = Exponent1D::from_values(values);
            if a.is_nontrivial() {
                break a;
            }
        };
        let numer = rng.gen_range(1u32..=40);
        let denom = rng.gen_range(1u32..=4);
        let r = numer as f64 / denom as f64;
        let ka = half_plane_growth(&a).map_err(|e| e.to_string())?;
        let kb = half_plane_growth(&a.scale(r)).map_err(|e| e.to_string())?;
        worst = worst.max((ka - kb).abs());
    }
    check(worst <= 1e-10, || format!("max scaling error {worst:e}"))?;
    Ok(format!("200 multisets, max |K(A) - K(rA)| = {worst:.2e}"))
}

fn continuity(cfg: &VerifyConfig) -> SuiteResult {
    let survey = survey()?;
    let results: Vec<Result<(f64, f64), String>> = survey
        .par_iter()
        .map(|e| {
            let sweep = theta_sweep(&e.model, cfg.gridsize).map_err(|er| er.to_string())?;
            let max_jump = sweep
                .windows(2)
                .map(|w| (w[1].growth - w[0].growth).abs())
                .fold(0.0f64, f64::max);
            let min = sweep
                .iter()
                .map(|b| b.growth)
                .fold(f64::INFINITY, f64::min);
            Ok((max_jump, (min - e.min_theta_bound).abs()))
        })
        .collect();
    let mut worst_jump = 0.0f64;
    let mut worst_gap = 0.0f64;
    for r in results {
        let (jump, gap) = r?;
        worst_jump = worst_jump.max(jump);
        worst_gap = worst_gap.max(gap);
    }
    check(worst_jump <= 0.1, || format!("max jump {worst_jump}"))?;
    check(worst_gap <= 1e-6, || format!("grid minimum off by {worst_gap:e}"))?;
    Ok(format!(
        "79 models, max jump {worst_jump:.2e}, max |gridmin - best| = {worst_gap:.2e}"
    ))
}

fn table1_signs() -> SuiteResult {
    let survey = survey()?;
    let margin = 1e-9;
    let mut checked = 0usize;
    for e in &survey {
        let mut t = e.model.clone();
        if t.drift().get(0) < 0 {
            t = t.reflect_coordinate(0);
        }
        if t.drift().get(1) < 0 {
            t = t.reflect_coordinate(1);
        }
        if t.drift().get(0) < t.drift().get(1) {
            t = t.reflect_xy();
        }
        let cp = critical_point(&t);
        if !cp.converged {
            continue;
        }
        let (a, b) = (cp.coordinates[0], cp.coordinates[1]);
        let gamma = t.covariance().map_err(|e| e.to_string())?;
        let pattern_ok = match (t.drift().get(0).signum(), t.drift().get(1).signum()) {
            (0, 0) => (a - 1.0).abs() <= margin && (b - 1.0).abs() <= margin,
            (1, 1) => a < 1.0 - margin && b < 1.0 - margin,
            (1, 0) => {
                a < 1.0 - margin
                    && match gamma.signum() {
                        1 => b > 1.0 + margin,
                        0 => (b - 1.0).abs() <= margin,
                        _ => b < 1.0 - margin,
                    }
            }
            _ => false,
        };
        check(pattern_ok, || {
            format!("{}: normalized cp = ({a}, {b}), gamma = {gamma}", e.model)
        })?;
        checked += 1;
    }
    Ok(format!("{checked} converged critical points match the table"))
}

fn threed_consistency() -> SuiteResult {
    let s = StepSet::from_vectors(
        3,
        vec![
            vec![1, 1, 1],
            vec![0, 1, 1],
            vec![0, 1, -1],
            vec![-1, 0, 0],
            vec![-1, 1, 0],
            vec![-1, -1, 0],
        ],
    )
    .map_err(|e| e.to_string())?;
    let bound = conjectured_growth(&s).map_err(|e| e.to_string())?;
    let q = count_orthant(&s, 16).map_err(|e| e.to_string())?;
    let floor = q.fekete_floor().unwrap_or(0.0);
    check(floor <= bound.value + 1e-9, || {
        format!("floor {floor} above bound {}", bound.value)
    })?;
    check(bound.value <= 6.0 + 1e-9, || {
        format!("bound {} above |S| = 6", bound.value)
    })?;
    // the claimed lower bound quoted in the literature contradicts K <= |S|
    let claim = 2.0 * 2f64.sqrt() + 4.0;
    let mut ledger = BoundLedger::new(s.clone());
    ledger.add(bound.clone()).map_err(|e| e.to_string())?;
    ledger
        .add(GrowthBound {
            value: claim,
            kind: BoundKind::Lower,
            certificate: Certificate::ExternalClaim {
                description: "claimed shuffle-plus-rotation lower bound 2*sqrt(2) + 4".into(),
            },
            source_model: s.to_string(),
        })
        .map_err(|e| e.to_string())?;
    match ledger.resolve(1e-9) {
        Err(Error::LedgerIntegrity {
            max_lower,
            min_upper,
            ..
        }) => {
            println!(
                "  discrepancy report: claimed lower bound {max_lower:.6} exceeds the \
                 universal cap |S| = 6 and the hyperplane bound {min_upper:.6}; \
                 the claim is inconsistent with the stated step set"
            );
            Ok(format!(
                "floor {floor:.4} <= bound {:.4} <= 6; claim {claim:.4} rejected",
                bound.value
            ))
        }
        other => Err(format!(
            "expected a ledger integrity error for the external claim, got {other:?}"
        )),
    }
}

fn ledger_integrity() -> SuiteResult {
    let survey = survey()?;
    for e in &survey {
        let upper = e.min_theta_bound;
        if let Ok(floor) = excursion_floor(&e.model) {
            check(floor.value <= upper + 1e-9, || {
                format!("{}: excursion {} vs upper {upper}", e.model, floor.value)
            })?;
        }
        if let Some(b) = shuffle_search(&e.model) {
            check(b.value <= upper + 1e-9, || {
                format!("{}: shuffle {} vs upper {upper}", e.model, b.value)
            })?;
        }
    }
    // negative-drift models resolve through the excursion floor
    let mut resolved_neg = 0usize;
    for e in &survey {
        let d = e.model.drift();
        if d.get(0) < 0 && d.get(1) < 0 {
            let r = resolve_with_ledger(&e.model, 12, 1e-9).map_err(|e| e.to_string())?;
            check(r.is_some(), || format!("{} did not resolve", e.model))?;
            resolved_neg += 1;
        }
    }
    Ok(format!(
        "79 ledgers consistent; {resolved_neg} doubly-negative models resolved"
    ))
}

fn reflection_coherence() -> SuiteResult {
    let survey = survey()?;
    for e in &survey {
        let p = walkbound::fr_classify(&e.model).map_err(|e| e.to_string())?;
        let pr =
            walkbound::fr_classify(&e.model.reflect_xy()).map_err(|e| e.to_string())?;
        check(p.fr_applicable() == pr.fr_applicable(), || {
            format!("{}: applicability differs under reflection", e.model)
        })?;
        if let (Some(a), Some(b)) = (p.predicted_growth, pr.predicted_growth) {
            check((a - b).abs() <= 1e-12, || {
                format!("{}: {a} vs {b} under reflection", e.model)
            })?;
        }
    }
    Ok("all 79 classes reflection-coherent".into())
}

fn convexity() -> SuiteResult {
    // chi is convex in log u for every multiset; convexity in u itself needs
    // every exponent of modulus at least one (u^a with 0 < a < 1 is concave)
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let a = loop {
            let len = rng.gen_range(2..=7);
            let values: Vec<f64> = (0..len).map(|_| rng.gen_range(-3.0..3.0)).collect();
            let a = Exponent1D::from_values(values);
            if a.is_nontrivial() {
                break a;
            }
        };
        let u1: f64 = rng.gen_range(0.05..2.0);
        let u2 = u1 + rng.gen_range(0.01..3.0);
        let geo = (u1 * u2).sqrt();
        check(
            a.chi(geo) <= 0.5 * (a.chi(u1) + a.chi(u2)) * (1.0 + 1e-12),
            || format!("log-convexity violated at ({u1}, {u2})"),
        )?;
        // unit-or-larger exponents: midpoint convexity in u directly
        let big = Exponent1D::from_entries(
            a.entries()
                .iter()
                .map(|&(e, m)| (if e >= 0.0 { e + 1.0 } else { e - 1.0 }, m)),
        );
        let mid = 0.5 * (u1 + u2);
        check(
            big.chi(mid) <= 0.5 * (big.chi(u1) + big.chi(u2)) * (1.0 + 1e-12),
            || format!("convexity violated at ({u1}, {u2}) with unit exponents"),
        )?;
        let tau = tau_of(&a).map_err(|e| e.to_string())?;
        for _ in 0..100 {
            let u = rng.gen_range(1e-3..1e3);
            check(a.chi(tau) <= a.chi(u) * (1.0 + 1e-12), || {
                format!("chi({tau}) above chi({u})")
            })?;
        }
    }
    Ok("100 multisets, chi log-convex with the global minimum at tau".into())
}

fn domination() -> SuiteResult {
    for names in ["N,E,S,W", "N,SW,S,SE", "N,NE,S,SW,W"] {
        let s = set(names);
        let q = count_orthant(&s, 12).map_err(|e| e.to_string())?;
        let e = count_excursions(&s, 12).map_err(|e| e.to_string())?;
        for normal in [[1i64, 0], [0, 1], [1, 1]] {
            let h = count_halfspace(&s, &normal, 12).map_err(|e| e.to_string())?;
            for n in 0..=12 {
                check(q.counts[n] <= h.counts[n], || {
                    format!("{names}: q_{n} above h_{n} for {normal:?}")
                })?;
            }
        }
        for n in 0..=12 {
            check(e.counts[n] <= q.counts[n], || {
                format!("{names}: excursions exceed walks at {n}")
            })?;
        }
    }
    Ok("q <= h <= |S|^n and excursions <= q on 3 models".into())
}

fn fekete() -> SuiteResult {
    // every n-th root of the exact counts stays below the upper bound
    for names in DESIGNATED_MODELS {
        let s = set(names);
        let upper = best_upper_bound(&s).map_err(|e| e.to_string())?.value;
        let q = count_orthant(&s, 16).map_err(|e| e.to_string())?;
        let floor = q.fekete_floor().unwrap_or(0.0);
        check(floor <= upper + 1e-9, || {
            format!("{names}: floor {floor} above bound {upper}")
        })?;
    }
    Ok("10 sampled models: enumeration floor below the upper bound".into())
}

fn best_vs_sweep() -> SuiteResult {
    let survey = survey()?;
    let mut worst = 0.0f64;
    for e in survey.iter() {
        let sweep = theta_sweep(&e.model, 10001).map_err(|er| er.to_string())?;
        let min = sweep
            .iter()
            .map(|b| b.growth)
            .fold(f64::INFINITY, f64::min);
        worst = worst.max((min - e.min_theta_bound).abs());
    }
    check(worst <= 1e-6, || format!("max |sweep - best| = {worst:e}"))?;
    Ok(format!("79 models, max |sweep - best| = {worst:.2e}"))
}

fn two_d_reduction() -> SuiteResult {
    let survey = survey()?;
    let mut worst = 0.0f64;
    for e in survey.iter() {
        let (value, _) = min_growth_over_normals(&e.model).map_err(|er| er.to_string())?;
        worst = worst.max((value - e.min_theta_bound).abs());
    }
    check(worst <= 1e-9, || {
        format!("max |hyperplane - angle| = {worst:e}")
    })?;
    Ok(format!("79 models, max deviation {worst:.2e}"))
}

fn hyperplane_floor() -> SuiteResult {
    let s = StepSet::from_vectors(
        3,
        vec![
            vec![1, 1, 1],
            vec![0, 1, 1],
            vec![0, 1, -1],
            vec![-1, 0, 0],
            vec![-1, 1, 0],
            vec![-1, -1, 0],
        ],
    )
    .map_err(|e| e.to_string())?;
    let q = count_orthant(&s, 12).map_err(|e| e.to_string())?;
    let floor = q.fekete_floor().unwrap_or(0.0);
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for _ in 0..100 {
        let normal = loop {
            let v: Vec<f64> = (0..3).map(|_| rng.gen_range(0.0..1.0)).collect();
            let norm: f64 = v.iter().map(|c| c * c).sum::<f64>().sqrt();
            if norm > 1e-3 {
                break v.iter().map(|c| c / norm).collect::<Vec<f64>>();
            }
        };
        let b = hyperplane_growth(&s, &normal).map_err(|e| e.to_string())?;
        check(floor <= b.growth + 1e-9, || {
            format!("floor {floor} above K({normal:?}) = {}", b.growth)
        })?;
    }
    Ok("enumeration floor below 100 random hyperplane bounds".into())
}

/// Exhaustive orthant counts for short horizons.
fn brute_orthant(s: &StepSet, n_max: usize) -> Vec<num_bigint::BigUint> {
    let mut flat: Vec<Vec<i64>> = Vec::new();
    for st in s.steps() {
        for _ in 0..st.multiplicity {
            flat.push(st.vector.clone());
        }
    }
    let mut counts = vec![num_bigint::BigUint::default(); n_max + 1];
    counts[0] = 1u32.into();
    fn recurse(
        flat: &[Vec<i64>],
        pos: &mut Vec<i64>,
        depth: usize,
        n_max: usize,
        counts: &mut [num_bigint::BigUint],
    ) {
        if depth == n_max {
            return;
        }
        for step in flat {
            for (p, c) in pos.iter_mut().zip(step) {
                *p += c;
            }
            if pos.iter().all(|&c| c >= 0) {
                counts[depth + 1] += 1u32;
                recurse(flat, pos, depth + 1, n_max, counts);
            }
            for (p, c) in pos.iter_mut().zip(step) {
                *p -= c;
            }
        }
    }
    let mut pos = vec![0i64; s.dimension()];
    recurse(&flat, &mut pos, 0, n_max, &mut counts);
    counts
}
