//! Acceptance suite: one test per criterion, each printing a pass line with
//! its runtime. Expected values come from independent oracles (exhaustive
//! enumeration, golden-section minimization) or closed forms, never from the
//! code paths under test.

use std::time::Instant;

use num_bigint::BigUint;
use walkbound::bounds::{excursion_floor, shuffle_search, BoundLedger, GrowthBound};
use walkbound::enumeration::{count_orthant, estimate_growth};
use walkbound::halfplane::{best_upper_bound, critical_point, theta_sweep};
use walkbound::orthant::conjectured_growth;
use walkbound::smallsteps::enumerate_small_models;
use walkbound::StepSet;

fn set(names: &str) -> StepSet {
    StepSet::from_compass(names).unwrap()
}

/// Exhaustive orthant counts: the independent oracle for the DP.
fn brute_orthant(s: &StepSet, n_max: usize) -> Vec<BigUint> {
    fn recurse(
        flat: &[Vec<i64>],
        pos: &mut Vec<i64>,
        depth: usize,
        n_max: usize,
        counts: &mut [BigUint],
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
    let mut flat = Vec::new();
    for st in s.steps() {
        for _ in 0..st.multiplicity {
            flat.push(st.vector.clone());
        }
    }
    let mut counts = vec![BigUint::default(); n_max + 1];
    counts[0] = 1u32.into();
    let mut pos = vec![0i64; s.dimension()];
    recurse(&flat, &mut pos, 0, n_max, &mut counts);
    counts
}

/// Golden-section minimization of chi over u > 0: independent of the Newton
/// solver inside the library.
fn golden_chi_min(entries: &[(f64, u32)]) -> f64 {
    let chi = |u: f64| -> f64 {
        entries
            .iter()
            .map(|&(a, m)| m as f64 * u.powf(a))
            .sum::<f64>()
    };
    let (mut lo, mut hi) = (1e-9f64, 1e9f64);
    for _ in 0..200 {
        let m1 = (lo.ln() + (hi.ln() - lo.ln()) * 0.382).exp();
        let m2 = (lo.ln() + (hi.ln() - lo.ln()) * 0.618).exp();
        if chi(m1) < chi(m2) {
            hi = m2;
        } else {
            lo = m1;
        }
        if hi / lo < 1.0 + 1e-14 {
            break;
        }
    }
    chi(0.5 * (lo + hi))
}

fn resolve_with_ledger(s: &StepSet, n_max: usize) -> Option<f64> {
    let mut ledger = BoundLedger::new(s.clone());
    let best = best_upper_bound(s).unwrap();
    ledger
        .add(GrowthBound::from_best_angle(s, &best))
        .unwrap();
    if let Ok(floor) = excursion_floor(s) {
        ledger.add(floor).unwrap();
    }
    if let Some(b) = shuffle_search(s) {
        ledger.add(b).unwrap();
    }
    ledger
        .register_series(&count_orthant(s, n_max.min(16)).unwrap())
        .unwrap();
    ledger.resolve(1e-9).unwrap()
}

#[test]
fn criterion_01_worked_example_one() {
    let start = Instant::now();
    let s = set("N,SW,S,SE");
    let best = best_upper_bound(&s).unwrap();
    let two_rt3 = 2.0 * 3f64.sqrt();
    assert!(
        (best.value - two_rt3).abs() <= 1e-9,
        "bound {} vs 3.4641016151...",
        best.value
    );
    assert_eq!(best.theta_star, 0.0);
    let p = walkbound::fr_classify(&s).unwrap();
    assert!((p.predicted_growth.unwrap() - two_rt3).abs() <= 1e-9);
    // the gamma = 0 row: both candidate formulas coincide
    let v = walkbound::fr_values(&s).unwrap();
    assert!((v.rho0_inv.unwrap() - v.rho_y_inv).abs() <= 1e-9);
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 0.1, "took {elapsed:.2?}");
    println!("PASS criterion 1: worked example {{N,SW,S,SE}} = 2 sqrt(3) at theta* = 0 ({elapsed:.2?})");
}

#[test]
fn criterion_02_worked_example_two() {
    let start = Instant::now();
    let s = set("N,W,SE,S,SW");
    let cp = critical_point(&s);
    assert!(cp.converged);
    assert!((cp.coordinates[0] - 1.6760).abs() <= 5e-4, "{:?}", cp.coordinates);
    assert!((cp.coordinates[1] - 1.8091).abs() <= 5e-4, "{:?}", cp.coordinates);
    let best = best_upper_bound(&s).unwrap();
    let pi = std::f64::consts::PI;
    assert!((best.theta_star - 0.2281 * pi).abs() <= 5e-4 * pi, "theta* {}", best.theta_star);
    assert!((best.value - 4.2148).abs() <= 5e-4, "bound {}", best.value);
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 0.1, "took {elapsed:.2?}");
    println!("PASS criterion 2: worked example {{N,W,SE,S,SW}} = 4.2148 at theta* = 0.2281 pi ({elapsed:.2?})");
}

#[test]
fn criterion_03_survey_census() {
    let start = Instant::now();
    let survey = enumerate_small_models().unwrap();
    assert_eq!(survey.len(), 79, "expected 79 classes");
    let applicable = survey.iter().filter(|e| e.fr_applicable()).count();
    assert_eq!(applicable, 74, "expected 74 applicable models");
    let mut worst = 0.0f64;
    for e in &survey {
        if let Some(pred) = e.prediction.predicted_growth {
            let err = (pred - e.min_theta_bound).abs();
            assert!(err <= 1e-9, "{}: |{pred} - {}| = {err}", e.model, e.min_theta_bound);
            worst = worst.max(err);
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 30.0, "took {elapsed:.2?}");
    println!("PASS criterion 3: census 79/74, max |prediction - bound| = {worst:.2e} ({elapsed:.2?})");
}

#[test]
fn criterion_04_radical_identities() {
    let start = Instant::now();
    let survey = enumerate_small_models().unwrap();
    let mut worst = 0.0f64;
    for e in &survey {
        let v = walkbound::fr_values(&e.model).unwrap();
        // rho_y pairs with theta = 0 (y-heights), rho_x with theta = pi/2
        for (normal, radical) in [([0.0, 1.0], v.rho_y_inv), ([1.0, 0.0], v.rho_x_inv)] {
            let a = walkbound::halfplane::project(&e.model, &normal).unwrap();
            let oracle = golden_chi_min(a.entries());
            let err = (radical - oracle).abs();
            assert!(err <= 1e-9, "{}: radical {radical} vs chi {oracle}", e.model);
            worst = worst.max(err);
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "took {elapsed:.2?}");
    println!("PASS criterion 4: 79 models, max |radical - chi(tau)| = {worst:.2e} ({elapsed:.2?})");
}

#[test]
fn criterion_05_critical_point_identity() {
    let start = Instant::now();
    let survey = enumerate_small_models().unwrap();
    let mut checked = 0;
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
        let a = walkbound::halfplane::project(&e.model, &normal).unwrap();
        let chi_min = if a.is_nontrivial() {
            golden_chi_min(a.entries())
        } else {
            a.total() as f64
        };
        let err = (cp.inventory_value - chi_min).abs();
        assert!(err <= 1e-9, "{}: P = {} vs chi = {chi_min}", e.model, cp.inventory_value);
        worst = worst.max(err);
        checked += 1;
    }
    assert!(checked >= 50, "identity exercised on only {checked} models");
    let elapsed = start.elapsed();
    println!("PASS criterion 5: identity on {checked} models, max error {worst:.2e} ({elapsed:.2?})");
}

#[test]
fn criterion_06_oracle_consistency() {
    let start = Instant::now();
    let designated = [
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
    for names in designated {
        let s = set(names);
        let q = count_orthant(&s, 24).unwrap();
        for m in 1..24 {
            for n in 1..=24 - m {
                assert!(
                    q.counts[m + n] >= &q.counts[m] * &q.counts[n],
                    "{names}: q_{} < q_{m} q_{n}",
                    m + n
                );
            }
        }
        let bound = best_upper_bound(&s).unwrap().value;
        for n in 1..=24 {
            if q.counts[n] == BigUint::default() {
                continue;
            }
            let root = walkbound_root(&q.counts[n], n);
            assert!(root <= bound + 1e-9, "{names}: q_{n}^(1/{n}) = {root} vs {bound}");
        }
        let resolved = resolve_with_ledger(&s, 24).unwrap_or_else(|| panic!("{names} unresolved"));
        let est = estimate_growth(&q).unwrap();
        assert!(
            (est.estimate - resolved).abs() / resolved <= 0.05,
            "{names}: estimate {} vs resolved {resolved}",
            est.estimate
        );
        assert_eq!(q.counts[..=8].to_vec(), brute_orthant(&s, 8), "{names} brute force");
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "took {elapsed:.2?}");
    println!("PASS criterion 6: 10 designated models consistent to n = 24 ({elapsed:.2?})");
}

fn walkbound_root(q: &BigUint, n: usize) -> f64 {
    use num_traits::ToPrimitive;
    let f = q.to_f64().unwrap();
    (f.ln() / n as f64).exp()
}

#[test]
fn criterion_07_shuffle_tightness() {
    let start = Instant::now();
    let resolved = resolve_with_ledger(&set("N,NE,S,SW,W"), 12).expect("resolves");
    let expected = 2.0 + 2.0 * 2f64.sqrt();
    assert!((resolved - expected).abs() <= 1e-9, "{resolved} vs 2 + 2 sqrt(2)");
    let resolved = resolve_with_ledger(&set("N,E,S,W"), 12).expect("resolves");
    assert!((resolved - 4.0).abs() <= 1e-9);
    let elapsed = start.elapsed();
    println!("PASS criterion 7: shuffle-tight ledgers resolve at 2 + 2 sqrt(2) and 4 ({elapsed:.2?})");
}

#[test]
fn criterion_08_scaling_suite() {
    use rand::{Rng, SeedableRng};
    let start = Instant::now();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xACCE55);
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let a = loop {
            let len = rng.gen_range(2..=7);
            let values: Vec<f64> = (0..len).map(|_| rng.gen_range(-3.0..3.0)).collect();
            let a = walkbound::halfplane::Exponent1D::from_values(values);
            if a.is_nontrivial() {
                break a;
            }
        };
        let numer = rng.gen_range(1u32..=40);
        let denom = rng.gen_range(1u32..=4);
        let r = numer as f64 / denom as f64; // rational in (0, 10]
        let ka = walkbound::halfplane::half_plane_growth(&a).unwrap();
        let kb = walkbound::halfplane::half_plane_growth(&a.scale(r)).unwrap();
        let err = (ka - kb).abs();
        assert!(err <= 1e-10, "scaling by {r}: {ka} vs {kb}");
        worst = worst.max(err);
    }
    let elapsed = start.elapsed();
    println!("PASS criterion 8: 200 scalings invariant, max error {worst:.2e} ({elapsed:.2?})");
}

#[test]
fn criterion_09_continuity_suite() {
    let start = Instant::now();
    let survey = enumerate_small_models().unwrap();
    // grid spacing 1e-3 over [0, pi/2]
    let gridsize = (std::f64::consts::FRAC_PI_2 / 1e-3).ceil() as usize + 1;
    let mut worst_jump = 0.0f64;
    let mut worst_gap = 0.0f64;
    for e in &survey {
        let sweep = theta_sweep(&e.model, gridsize).unwrap();
        let jump = sweep
            .windows(2)
            .map(|w| (w[1].growth - w[0].growth).abs())
            .fold(0.0f64, f64::max);
        assert!(jump <= 0.1, "{}: max adjacent jump {jump}", e.model);
        let min = sweep.iter().map(|b| b.growth).fold(f64::INFINITY, f64::min);
        let gap = (min - e.min_theta_bound).abs();
        assert!(gap <= 1e-6, "{}: grid minimum off by {gap:e}", e.model);
        worst_jump = worst_jump.max(jump);
        worst_gap = worst_gap.max(gap);
    }
    let elapsed = start.elapsed();
    println!(
        "PASS criterion 9: 79 models, max jump {worst_jump:.2e}, max grid gap {worst_gap:.2e} ({elapsed:.2?})"
    );
}

#[test]
fn criterion_10_table_one_signs() {
    let start = Instant::now();
    let survey = enumerate_small_models().unwrap();
    let margin = 1e-9;
    let mut checked = 0;
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
        let gamma = t.covariance().unwrap();
        let ok = match (t.drift().get(0).signum(), t.drift().get(1).signum()) {
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
            other => panic!("unexpected normalized drift {other:?} for {}", e.model),
        };
        assert!(ok, "{}: normalized critical point ({a}, {b}), gamma {gamma}", e.model);
        checked += 1;
    }
    assert!(checked >= 70, "only {checked} critical points checked");
    let elapsed = start.elapsed();
    println!("PASS criterion 10: {checked} critical points match the sign table ({elapsed:.2?})");
}

#[test]
fn criterion_11_three_d_consistency() {
    let start = Instant::now();
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
    .unwrap();
    let bound = conjectured_growth(&s).unwrap();
    let q = count_orthant(&s, 16).unwrap();
    let floor = q.fekete_floor().unwrap();
    assert!(floor <= bound.value + 1e-9, "floor {floor} vs bound {}", bound.value);
    assert!(bound.value <= 6.0 + 1e-9, "bound {} vs |S| = 6", bound.value);
    // the claimed lower bound 2 sqrt(2) + 4 quoted in the literature exceeds the
    // universal cap |S| and must be rejected by ledger integrity
    let claim = 2.0 * 2f64.sqrt() + 4.0;
    let mut ledger = BoundLedger::new(s.clone());
    ledger.add(bound.clone()).unwrap();
    ledger
        .add(GrowthBound {
            value: claim,
            kind: walkbound::bounds::BoundKind::Lower,
            certificate: walkbound::bounds::Certificate::ExternalClaim {
                description: "claimed shuffle-plus-rotation lower bound".into(),
            },
            source_model: s.to_string(),
        })
        .unwrap();
    let err = ledger.resolve(1e-9).unwrap_err();
    let report = err.to_string();
    assert!(report.contains("inconsistent"), "report: {report}");
    println!(
        "discrepancy report: claimed lower bound {claim:.6} is inconsistent: floor {floor:.6} <= bound {:.6} <= 6 ({report})",
        bound.value
    );
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 120.0, "took {elapsed:.2?}");
    println!(
        "PASS criterion 11: 3D sandwich {floor:.4} <= {:.4} <= 6 and discrepancy reported ({elapsed:.2?})",
        bound.value
    );
}
