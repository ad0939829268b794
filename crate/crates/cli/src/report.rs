//! Building the machine-readable analysis report.

use serde_json::{json, Map, Value};
use walkbound::bounds::{
    excursion_floor, rotation_search, shuffle_search, BoundLedger, GrowthBound,
};
use walkbound::enumeration::{self, count_orthant, estimate_growth};
use walkbound::format::round_sig;
use walkbound::halfplane::{best_upper_bound, theta_sweep};
use walkbound::orthant::{conjectured_growth, is_orthant_essential, min_inventory_orthant};
use walkbound::smallsteps::{fr_classify, fr_values};
use walkbound::{Error, StepSet};

pub struct AnalyzeOptions {
    pub n_max: Option<usize>,
    pub gridsize: usize,
    pub tolerance: f64,
}

/// Runs the full pipeline for one model and assembles the JSON report.
pub fn analyze(input: &str, s: &StepSet, opts: &AnalyzeOptions) -> Result<Value, Error> {
    let n_max = opts.n_max.unwrap_or(if s.dimension() <= 2 {
        enumeration::DEFAULT_NMAX_2D
    } else {
        enumeration::DEFAULT_NMAX_ND
    });

    let mut report = Map::new();
    report.insert(
        "model".into(),
        json!({
            "input": input,
            "canonical": s.to_string(),
            "compass": s.compass_string(),
            "dimension": s.dimension(),
            "cardinality": s.cardinality(),
            "steps": s.steps().iter().map(|st| json!({
                "vector": st.vector,
                "multiplicity": st.multiplicity,
            })).collect::<Vec<_>>(),
        }),
    );
    report.insert("drift".into(), json!(s.drift().components()));
    if s.dimension() == 2 {
        report.insert("covariance".into(), json!(s.covariance()?));
    }

    let mut ledger = BoundLedger::new(s.clone());

    // upper bound with its certificate
    let upper = if s.dimension() == 2 {
        if !s.is_quarterplane_essential()? {
            return Err(Error::Inessential {
                model: s.to_string(),
                reason: "model not quarter-plane essential".into(),
            });
        }
        let best = best_upper_bound(s)?;
        let bound = GrowthBound::from_best_angle(s, &best);
        report.insert(
            "upper_bound".into(),
            json!({
                "value": best.value,
                "theta_star": best.theta_star,
                "attained_everywhere": best.attained_everywhere,
                "radical_heuristic": radical_heuristic(best.value),
            }),
        );
        let sweep = theta_sweep(s, opts.gridsize)?;
        let (argmin, min) = sweep
            .iter()
            .map(|b| (b.theta, b.growth))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("nonempty sweep");
        report.insert(
            "theta_sweep".into(),
            json!({"gridsize": opts.gridsize, "min": min, "argmin_theta": argmin}),
        );
        bound
    } else {
        if !is_orthant_essential(s)? {
            return Err(Error::Inessential {
                model: s.to_string(),
                reason: "model not orthant essential".into(),
            });
        }
        let bound = conjectured_growth(s)?;
        report.insert(
            "upper_bound".into(),
            json!({
                "value": bound.value,
                "certificate": serde_json::to_value(&bound.certificate).unwrap(),
                "radical_heuristic": radical_heuristic(bound.value),
            }),
        );
        bound
    };
    ledger.add(upper).expect("upper bound is about this model");

    // small-step closed forms
    if s.is_small_step_2d() {
        let v = fr_values(s)?;
        let p = fr_classify(s)?;
        report.insert(
            "fr".into(),
            json!({
                "values": serde_json::to_value(&v).unwrap(),
                "prediction": serde_json::to_value(&p).unwrap(),
                "applicable": p.fr_applicable(),
            }),
        );
    }

    // critical point / inventory minimum
    let cp = min_inventory_orthant(s);
    report.insert("critical_point".into(), serde_json::to_value(&cp).unwrap());

    // lower bounds
    if let Ok(floor) = excursion_floor(s) {
        ledger.add(floor).expect("model matches");
    }
    if s.dimension() == 2 {
        if let Some(b) = shuffle_search(s) {
            ledger.add(b).expect("model matches");
        }
        if let Some(b) = rotation_search(s) {
            ledger.add(b).expect("model matches");
        }
    }

    // exact enumeration
    let series = count_orthant(s, n_max)?;
    let estimate = estimate_growth(&series).ok();
    report.insert(
        "enumeration".into(),
        json!({
            "region": series.region.to_string(),
            "n_max": n_max,
            "final_count": series.counts.last().unwrap().to_string(),
            "fekete_floor": series.fekete_floor(),
            "estimate": estimate.map(|e| serde_json::to_value(&e).unwrap()),
        }),
    );
    ledger.register_series(&series).expect("model matches");

    let resolved = ledger.resolve(opts.tolerance)?;
    report.insert(
        "lower_bounds".into(),
        serde_json::to_value(
            ledger
                .bounds
                .iter()
                .filter(|b| matches!(b.kind, walkbound::bounds::BoundKind::Lower | walkbound::bounds::BoundKind::Exact))
                .collect::<Vec<_>>(),
        )
        .unwrap(),
    );
    report.insert(
        "resolved".into(),
        serde_json::to_value(&ledger.resolved).unwrap(),
    );
    report.insert(
        "verdict".into(),
        json!(match resolved {
            Some(v) => format!(
                "resolved: growth constant {} (tolerance {:e})",
                walkbound::format::format_sig(v, 12),
                opts.tolerance
            ),
            None => format!(
                "open: bounded in [{}, {}]",
                walkbound::format::format_sig(ledger.max_lower().unwrap_or(0.0), 12),
                walkbound::format::format_sig(
                    ledger.min_upper().unwrap_or(f64::INFINITY),
                    12
                )
            ),
        }),
    );

    let mut value = Value::Object(report);
    round_floats(&mut value);
    Ok(value)
}

/// Rounds every number in the tree to 12 significant digits.
pub fn round_floats(value: &mut Value) {
    match value {
        Value::Number(n) => {
            if let Some(f) = n.as_f64() {
                if n.is_f64() {
                    if let Some(rounded) = serde_json::Number::from_f64(round_sig(f, 12)) {
                        *n = rounded;
                    }
                }
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_floats),
        Value::Object(map) => map.values_mut().for_each(round_floats),
        _ => {}
    }
}

/// Best-effort recognition of a + b*sqrt(c) with small integers; labelled
/// heuristic because it proves nothing.
pub fn radical_heuristic(v: f64) -> Option<String> {
    if !v.is_finite() {
        return None;
    }
    if (v - v.round()).abs() <= 1e-9 {
        return Some(format!("{} (heuristic)", v.round() as i64));
    }
    for c in 2i64..=50 {
        let root = (c as f64).sqrt();
        if (root - root.round()).abs() < 1e-12 {
            continue; // perfect square
        }
        for b in 1i64..=12 {
            let a = v - b as f64 * root;
            if (a - a.round()).abs() <= 1e-9 && a.round().abs() <= 64.0 {
                let a = a.round() as i64;
                let b_part = if b == 1 {
                    format!("sqrt({c})")
                } else {
                    format!("{b}*sqrt({c})")
                };
                let expr = if a == 0 {
                    b_part
                } else {
                    format!("{a} + {b_part}")
                };
                return Some(format!("{expr} (heuristic)"));
            }
        }
    }
    None
}
