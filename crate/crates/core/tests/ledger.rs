//! End-to-end ledger flows: upper bounds meeting lower bounds on the models
//! where the toolkit proves tightness.

use walkbound::bounds::{
    excursion_floor, shuffle_search, BoundLedger, GrowthBound,
};
use walkbound::enumeration::count_orthant;
use walkbound::halfplane::best_upper_bound;
use walkbound::StepSet;

fn set(names: &str) -> StepSet {
    StepSet::from_compass(names).unwrap()
}

/// Builds a ledger with the standard bound suite and resolves it.
fn resolve_model(names: &str) -> (BoundLedger, Option<f64>) {
    let s = set(names);
    let mut ledger = BoundLedger::new(s.clone());
    let best = best_upper_bound(&s).unwrap();
    ledger
        .add(GrowthBound::from_best_angle(&s, &best))
        .unwrap();
    if let Ok(floor) = excursion_floor(&s) {
        ledger.add(floor).unwrap();
    }
    if let Some(shuffle) = shuffle_search(&s) {
        ledger.add(shuffle).unwrap();
    }
    ledger
        .register_series(&count_orthant(&s, 16).unwrap())
        .unwrap();
    let resolved = ledger.resolve(1e-9).unwrap();
    (ledger, resolved)
}

#[test]
fn shuffle_resolves_the_five_step_model() {
    let (_, resolved) = resolve_model("N,NE,S,SW,W");
    let expected = 2.0 + 2.0 * 2f64.sqrt();
    assert!((resolved.unwrap() - expected).abs() <= 1e-9);
}

#[test]
fn shuffle_resolves_the_simple_walk() {
    let (_, resolved) = resolve_model("N,E,S,W");
    assert!((resolved.unwrap() - 4.0).abs() <= 1e-9);
}

#[test]
fn excursion_floor_resolves_negative_drift_models() {
    // doubly-negative drift: the excursion growth equals the upper bound
    for names in ["N,W,SE,S,SW", "N,SW,S,SE"] {
        let s = set(names);
        let upper = best_upper_bound(&s).unwrap().value;
        let floor = excursion_floor(&s).unwrap().value;
        assert!(
            (upper - floor).abs() <= 1e-9,
            "{names}: upper {upper} vs excursion {floor}"
        );
        let (_, resolved) = resolve_model(names);
        assert!((resolved.unwrap() - upper).abs() <= 1e-9);
    }
}

#[test]
fn zero_drift_models_resolve_at_cardinality() {
    for names in ["NE,W,S", "N,E,SW", "NE,NW,SE,SW", "N,NE,E,SE,S,SW,W,NW"] {
        let (_, resolved) = resolve_model(names);
        let card = set(names).cardinality() as f64;
        assert_eq!(resolved, Some(card), "{names}");
    }
}

#[test]
fn every_lower_stays_below_every_upper_across_survey() {
    let survey = walkbound::enumerate_small_models().unwrap();
    for e in survey.iter() {
        let s = &e.model;
        let upper = e.min_theta_bound;
        if let Ok(floor) = excursion_floor(s) {
            assert!(floor.value <= upper + 1e-9, "{s}");
        }
        if let Some(shuffle) = shuffle_search(s) {
            assert!(shuffle.value <= upper + 1e-9, "{s}");
        }
        let q = count_orthant(s, 12).unwrap();
        if let Some(f) = q.fekete_floor() {
            assert!(f <= upper + 1e-9, "{s}: fekete {f} vs upper {upper}");
        }
    }
}

#[test]
fn ledger_json_export_carries_bounds_and_resolution() {
    let (ledger, resolved) = resolve_model("N,E,S,W");
    assert!(resolved.is_some());
    let json = ledger.to_json();
    assert_eq!(json["model"], serde_json::json!("(-1,0)x1;(0,-1)x1;(0,1)x1;(1,0)x1"));
    assert!(json["bounds"].as_array().unwrap().len() >= 3);
    assert_eq!(json["resolved"]["value"], serde_json::json!(4.0));
    // each bound row exposes value, kind and certificate
    for b in json["bounds"].as_array().unwrap() {
        assert!(b["value"].is_number());
        assert!(b["kind"].is_string());
        assert!(b["certificate"].is_object());
    }
}

#[test]
fn rotation_chains_transfer_bounds() {
    use walkbound::bounds::rotation_relation;
    // K{N,S,E,W} = 4 transfers along r_x then r_y into {N,NE,SE,W} variants;
    // chain two rotations and check the final bound stays valid
    let base = set("N,E,S,W");
    let k = 4.0;
    // r_y(E) = NE
    let b1 = rotation_relation(&base, k, &[1, 0], 1).unwrap();
    let mid: StepSet = set("N,NE,S,W");
    assert_eq!(b1.source_model, mid.to_string());
    // r_x(S) = SE on the rotated set
    let b2 = rotation_relation(&mid, b1.value, &[0, -1], 0).unwrap();
    let fin = set("N,NE,SE,W");
    assert_eq!(b2.source_model, fin.to_string());
    // the final model upper bound must dominate the transferred lower bound
    let upper = best_upper_bound(&fin).unwrap().value;
    assert!(b2.value <= upper + 1e-9, "chain bound {} vs {upper}", b2.value);
}
