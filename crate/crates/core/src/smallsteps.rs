//! Closed forms and classification for 2D small-step models, and the census
//! of non-isomorphic essential models.
//!
//! For a small-step inventory written as
//! `P(x,y) = a(x) y + b(x) + c(x) / y = at(y) x + bt(y) + ct(y) / x`
//! the candidate growth constants are |S|, P(alpha,beta) at the critical
//! point, and the two radical endpoint values
//! `rho_y_inv = b(1) + 2 sqrt(a(1) c(1))` and
//! `rho_x_inv = bt(1) + 2 sqrt(at(1) ct(1))`.
//! Which one applies is a function of the drift signs and the covariance.
//! The radical paired with the upper half-plane (theta = 0) is `rho_y_inv`
//! and the one paired with the right half-plane (theta = pi/2) is
//! `rho_x_inv`; the classification table below is consistent with that
//! pairing and the survey itself cross-checks it.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::format::format_sig;
use crate::halfplane::{self, BestAngle};
use crate::stepset::StepSet;

/// Sign of an exact integer statistic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Sign {
    Neg,
    Zero,
    Pos,
}

impl Sign {
    pub fn of(v: i64) -> Sign {
        match v.cmp(&0) {
            std::cmp::Ordering::Less => Sign::Neg,
            std::cmp::Ordering::Equal => Sign::Zero,
            std::cmp::Ordering::Greater => Sign::Pos,
        }
    }
}

/// Which closed form the classification picked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChosenFormula {
    /// Unrestricted growth |S|.
    Cardinality,
    /// P(alpha, beta) at the interior critical point.
    Rho0,
    /// Right half-plane radical.
    RhoX,
    /// Upper half-plane radical.
    RhoY,
    /// A covariance-zero row where two formulas apply and agree.
    AmbiguousEqual,
}

impl ChosenFormula {
    pub fn name(&self) -> &'static str {
        match self {
            ChosenFormula::Cardinality => "cardinality",
            ChosenFormula::Rho0 => "rho0",
            ChosenFormula::RhoX => "rhoX",
            ChosenFormula::RhoY => "rhoY",
            ChosenFormula::AmbiguousEqual => "ambiguous-equal",
        }
    }
}

/// The closed-form ingredients for one small-step model.
#[derive(Debug, Clone, Serialize)]
pub struct FRValues {
    pub cardinality: u64,
    /// P(alpha, beta); absent when the inventory has no interior critical point.
    pub rho0_inv: Option<f64>,
    /// bt(1) + 2 sqrt(at(1) ct(1)), the right half-plane radical.
    pub rho_x_inv: f64,
    /// b(1) + 2 sqrt(a(1) c(1)), the upper half-plane radical.
    pub rho_y_inv: f64,
}

/// Outcome of the drift/covariance classification.
#[derive(Debug, Clone, Serialize)]
pub struct FRPrediction {
    pub drift_signs: (Sign, Sign),
    pub covariance_sign: Sign,
    /// None when the model is singular (no interior critical point).
    pub chosen: Option<ChosenFormula>,
    pub predicted_growth: Option<f64>,
}

impl FRPrediction {
    /// The classification applies exactly when the inventory has an interior
    /// critical point; the five singular models fail this.
    pub fn fr_applicable(&self) -> bool {
        self.chosen.is_some()
    }
}

fn require_small_step(s: &StepSet) -> Result<()> {
    if !s.is_small_step_2d() {
        return Err(Error::NotSmallStep);
    }
    Ok(())
}

/// Computes |S|, the two endpoint radicals, and P(alpha,beta) when it exists.
pub fn fr_values(s: &StepSet) -> Result<FRValues> {
    require_small_step(s)?;
    let coeff = |sel: fn(&[i64]) -> i64, want: i64| -> u64 {
        s.steps()
            .iter()
            .filter(|st| sel(&st.vector) == want)
            .map(|st| st.multiplicity as u64)
            .sum()
    };
    let a1 = coeff(|v| v[1], 1) as f64;
    let b1 = coeff(|v| v[1], 0) as f64;
    let c1 = coeff(|v| v[1], -1) as f64;
    let at1 = coeff(|v| v[0], 1) as f64;
    let bt1 = coeff(|v| v[0], 0) as f64;
    let ct1 = coeff(|v| v[0], -1) as f64;
    let cp = halfplane::critical_point(s);
    Ok(FRValues {
        cardinality: s.cardinality(),
        rho0_inv: cp.converged.then_some(cp.inventory_value),
        rho_x_inv: bt1 + 2.0 * (at1 * ct1).sqrt(),
        rho_y_inv: b1 + 2.0 * (a1 * c1).sqrt(),
    })
}

/// Selects the growth formula from the drift signs and the covariance.
///
/// Rows, with `K = 1/rho`:
///
/// | delta_x | delta_y | choice                              |
/// |---------|---------|-------------------------------------|
/// | 0/+     | 0/+     | cardinality                         |
/// | +       | -       | rho_y                               |
/// | 0       | -       | rho_0 if gamma<=0, rho_y if gamma>=0 |
/// | -       | +       | rho_x                               |
/// | -       | 0       | rho_0 if gamma<=0, rho_x if gamma>=0 |
/// | -       | -       | rho_0                               |
pub fn fr_classify(s: &StepSet) -> Result<FRPrediction> {
    require_small_step(s)?;
    let values = fr_values(s)?;
    let drift = s.drift();
    let gamma = s.covariance()?;
    let sx = Sign::of(drift.get(0));
    let sy = Sign::of(drift.get(1));
    let sg = Sign::of(gamma);

    let mut prediction = FRPrediction {
        drift_signs: (sx, sy),
        covariance_sign: sg,
        chosen: None,
        predicted_growth: None,
    };
    let rho0 = match values.rho0_inv {
        Some(v) => v,
        // Models whose steps never leave the orthant grow like unrestricted
        // walks; no critical point is needed to see that.
        None if s
            .steps()
            .iter()
            .all(|st| st.vector.iter().all(|&c| c >= 0)) =>
        {
            prediction.chosen = Some(ChosenFormula::Cardinality);
            prediction.predicted_growth = Some(values.cardinality as f64);
            return Ok(prediction);
        }
        // Otherwise the derivation presupposes the interior critical point;
        // without it the model is singular and outside the classification.
        None => return Ok(prediction),
    };

    let (chosen, growth) = match (sx, sy) {
        (Sign::Pos | Sign::Zero, Sign::Pos | Sign::Zero) => {
            (ChosenFormula::Cardinality, values.cardinality as f64)
        }
        (Sign::Pos, Sign::Neg) => (ChosenFormula::RhoY, values.rho_y_inv),
        (Sign::Zero, Sign::Neg) => match sg {
            Sign::Neg => (ChosenFormula::Rho0, rho0),
            Sign::Pos => (ChosenFormula::RhoY, values.rho_y_inv),
            Sign::Zero => (ChosenFormula::AmbiguousEqual, values.rho_y_inv),
        },
        (Sign::Neg, Sign::Pos) => (ChosenFormula::RhoX, values.rho_x_inv),
        (Sign::Neg, Sign::Zero) => match sg {
            Sign::Neg => (ChosenFormula::Rho0, rho0),
            Sign::Pos => (ChosenFormula::RhoX, values.rho_x_inv),
            Sign::Zero => (ChosenFormula::AmbiguousEqual, values.rho_x_inv),
        },
        (Sign::Neg, Sign::Neg) => (ChosenFormula::Rho0, rho0),
    };
    prediction.chosen = Some(chosen);
    prediction.predicted_growth = Some(growth);
    Ok(prediction)
}

/// One row of the small-step census.
#[derive(Debug, Clone)]
pub struct ModelSurveyEntry {
    /// Lexicographically least representative of the x<->y symmetry class.
    pub model: StepSet,
    /// Whether the model is fixed by the x<->y reflection.
    pub self_symmetric: bool,
    pub essential: bool,
    pub values: FRValues,
    pub prediction: FRPrediction,
    pub theta_star: f64,
    pub min_theta_bound: f64,
    pub attained_everywhere: bool,
}

impl ModelSurveyEntry {
    pub fn fr_applicable(&self) -> bool {
        self.prediction.fr_applicable()
    }
}

const SMALL_STEPS: [[i64; 2]; 8] = [
    [-1, -1],
    [-1, 0],
    [-1, 1],
    [0, -1],
    [0, 1],
    [1, -1],
    [1, 0],
    [1, 1],
];

/// Enumerates the nonempty subsets of the eight nonzero small steps, keeps
/// the essential ones, and dedupes by the x<->y reflection, keeping the
/// lexicographically least representative. Entries come back in canonical
/// order.
pub fn enumerate_small_models() -> Result<Vec<ModelSurveyEntry>> {
    let mut classes: BTreeMap<Vec<(Vec<i64>, u32)>, StepSet> = BTreeMap::new();
    for mask in 1u16..256 {
        let vectors: Vec<Vec<i64>> = SMALL_STEPS
            .iter()
            .enumerate()
            .filter(|(k, _)| mask & (1 << k) != 0)
            .map(|(_, v)| v.to_vec())
            .collect();
        let s = StepSet::from_vectors(2, vectors)?;
        if !s.is_quarterplane_essential()? {
            continue;
        }
        let r = s.reflect_xy();
        let rep = if s.key() <= r.key() { s } else { r };
        classes.entry(rep.key()).or_insert(rep);
    }
    classes.into_values().map(survey_entry).collect()
}

fn survey_entry(model: StepSet) -> Result<ModelSurveyEntry> {
    let values = fr_values(&model)?;
    let prediction = fr_classify(&model)?;
    let best: BestAngle = halfplane::best_upper_bound_unchecked(&model)?;
    Ok(ModelSurveyEntry {
        self_symmetric: model == model.reflect_xy(),
        essential: true,
        values,
        prediction,
        theta_star: best.theta_star,
        min_theta_bound: best.value,
        attained_everywhere: best.attained_everywhere,
        model,
    })
}

/// CSV export: one row per class.
pub fn survey_to_csv(entries: &[ModelSurveyEntry]) -> String {
    let mut out = String::from(
        "model,cardinality,drift_x,drift_y,covariance,chosen,predicted_growth,theta_star,min_theta_bound,fr_applicable\n",
    );
    for e in entries {
        let drift = e.model.drift();
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{}\n",
            e.model.compass_string().unwrap_or_else(|| e.model.to_string()),
            e.model.cardinality(),
            drift.get(0),
            drift.get(1),
            e.model.covariance().expect("2D survey model"),
            e.prediction.chosen.map_or("none", |c| c.name()),
            e.prediction
                .predicted_growth
                .map_or_else(|| "".into(), |g| format_sig(g, 12)),
            format_sig(e.theta_star, 12),
            format_sig(e.min_theta_bound, 12),
            e.fr_applicable(),
        ));
    }
    out
}

/// JSON export mirroring the CSV columns.
pub fn survey_to_json(entries: &[ModelSurveyEntry]) -> serde_json::Value {
    serde_json::Value::Array(
        entries
            .iter()
            .map(|e| {
                let drift = e.model.drift();
                serde_json::json!({
                    "model": e.model.compass_string().unwrap_or_else(|| e.model.to_string()),
                    "canonical": e.model.to_string(),
                    "cardinality": e.model.cardinality(),
                    "drift": [drift.get(0), drift.get(1)],
                    "covariance": e.model.covariance().expect("2D survey model"),
                    "self_symmetric": e.self_symmetric,
                    "chosen": e.prediction.chosen.map(|c| c.name()),
                    "predicted_growth": e.prediction.predicted_growth,
                    "theta_star": e.theta_star,
                    "min_theta_bound": e.min_theta_bound,
                    "fr_applicable": e.fr_applicable(),
                })
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(names: &str) -> StepSet {
        StepSet::from_compass(names).unwrap()
    }

    #[test]
    fn fr_values_examples() {
        let v = fr_values(&set("N,SW,S,SE")).unwrap();
        assert_eq!(v.cardinality, 4);
        let two_rt3 = 2.0 * 3f64.sqrt();
        assert!((v.rho0_inv.unwrap() - two_rt3).abs() < 1e-12);
        // a(1)=1, b(1)=0, c(1)=3
        assert!((v.rho_y_inv - two_rt3).abs() < 1e-12);

        // P(x,y) = y + x + 1/y + 1/x: b(1) = bt(1) = 2, so both radicals
        // evaluate to 2 + 2 sqrt(1) = 4 = chi(1) of either axis projection
        let v = fr_values(&set("N,E,S,W")).unwrap();
        assert_eq!(v.rho_x_inv, 4.0);
        assert_eq!(v.rho_y_inv, 4.0);
        assert_eq!(v.rho0_inv.unwrap(), 4.0);
    }

    #[test]
    fn fr_values_rejects_long_steps() {
        let s: StepSet = "(2,0);(0,-1);(0,1)".parse().unwrap();
        assert!(matches!(fr_values(&s), Err(Error::NotSmallStep)));
    }

    #[test]
    fn classify_examples() {
        let p = fr_classify(&set("N,SW,S,SE")).unwrap();
        assert_eq!(p.drift_signs, (Sign::Zero, Sign::Neg));
        assert_eq!(p.covariance_sign, Sign::Zero);
        assert_eq!(p.chosen, Some(ChosenFormula::AmbiguousEqual));
        assert!((p.predicted_growth.unwrap() - 2.0 * 3f64.sqrt()).abs() < 1e-12);

        let p = fr_classify(&set("N,E,S,W")).unwrap();
        assert_eq!(p.chosen, Some(ChosenFormula::Cardinality));
        assert_eq!(p.predicted_growth, Some(4.0));

        let p = fr_classify(&set("N,NE,E")).unwrap();
        assert_eq!(p.chosen, Some(ChosenFormula::Cardinality));
        assert_eq!(p.predicted_growth, Some(3.0));
    }

    #[test]
    fn singular_models_are_flagged() {
        for names in ["NW,N,SE", "NW,NE,SE", "NW,N,NE,SE", "NW,N,SE,E", "NW,N,NE,E,SE"] {
            let p = fr_classify(&set(names)).unwrap();
            assert!(!p.fr_applicable(), "{names} should be singular");
            assert_eq!(p.predicted_growth, None);
        }
    }

    #[test]
    fn gamma_zero_rows_agree() {
        // (0,-) with gamma = 0: rho0 and rhoY must coincide
        let s = set("N,SW,S,SE");
        let v = fr_values(&s).unwrap();
        assert!((v.rho0_inv.unwrap() - v.rho_y_inv).abs() < 1e-9);
    }

    #[test]
    fn reflection_coherence() {
        for names in ["N,SW,S,SE", "N,NE,S,SW,W", "NE,W,S", "N,W,SE,S,SW", "N,E,SW"] {
            let s = set(names);
            let p = fr_classify(&s).unwrap();
            let pr = fr_classify(&s.reflect_xy()).unwrap();
            match (p.predicted_growth, pr.predicted_growth) {
                (Some(a), Some(b)) => assert!((a - b).abs() < 1e-12, "{names}"),
                (a, b) => assert_eq!(a.is_some(), b.is_some(), "{names}"),
            }
        }
    }

    #[test]
    fn census_counts() {
        let survey = enumerate_small_models().unwrap();
        assert_eq!(survey.len(), 79);
        assert_eq!(survey.iter().filter(|e| e.fr_applicable()).count(), 74);
        // {N,E,S,W} is its own representative
        let nesw = set("N,E,S,W");
        assert!(survey.iter().any(|e| e.model == nesw && e.self_symmetric));
    }

    #[test]
    fn survey_rows_are_deduped_and_canonical() {
        let survey = enumerate_small_models().unwrap();
        for e in &survey {
            let r = e.model.reflect_xy();
            assert!(e.model.key() <= r.key());
            assert_eq!(e.self_symmetric, e.model == r);
        }
        // sorted canonical order
        let mut keys: Vec<_> = survey.iter().map(|e| e.model.key()).collect();
        let sorted = {
            let mut k = keys.clone();
            k.sort();
            k
        };
        assert_eq!(keys, sorted);
        keys.dedup();
        assert_eq!(keys.len(), survey.len());
    }

    #[test]
    fn csv_export_has_79_rows() {
        let survey = enumerate_small_models().unwrap();
        let csv = survey_to_csv(&survey);
        assert_eq!(csv.lines().count(), 80);
        assert!(csv.lines().nth(1).unwrap().split(',').count() >= 10);
    }
}
