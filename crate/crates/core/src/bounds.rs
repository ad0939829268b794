//! Lower-bound toolkit (shuffle, rotation, excursion) and the per-model
//! ledger combining all certified bounds into a verdict.

use serde::Serialize;

use crate::enumeration::{self, CountSeries};
use crate::error::{Error, Result};
use crate::halfplane::{self, BestAngle};
use crate::smallsteps;
use crate::stepset::StepSet;

/// Slack allowed between the best lower and upper bound before the ledger is
/// declared inconsistent.
pub const LEDGER_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundKind {
    Upper,
    Lower,
    Exact,
}

/// What justifies a bound.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Certificate {
    /// Half-plane bound at the minimizing angle.
    Angle { theta: f64, attained_everywhere: bool },
    /// d-dimensional hyperplane bound.
    Hyperplane { normal: Vec<f64> },
    /// Shuffle of two models partitioning the step multiset.
    Partition { left: String, right: String },
    /// Rotating one step of a certified model into this one.
    Rotation {
        source: String,
        step: Vec<i64>,
        axis: usize,
    },
    /// Excursion growth P(alpha, beta).
    Excursion,
    /// Closed-form value from the small-step classification.
    FrFormula { name: String },
    /// The orthant counts coincide with a single half-space model.
    HalfPlaneEquivalence { normal: Vec<i64> },
    /// The constraints never bind; growth is the unrestricted |S|.
    Unrestricted,
    /// max_n q_n^{1/n} from exact enumeration.
    EnumerationFloor { n_max: usize },
    /// A value quoted from an external source, to be checked not trusted.
    ExternalClaim { description: String },
}

/// A certified bound on the growth constant of `source_model`.
#[derive(Debug, Clone, Serialize)]
pub struct GrowthBound {
    pub value: f64,
    pub kind: BoundKind,
    pub certificate: Certificate,
    pub source_model: String,
}

impl GrowthBound {
    pub fn from_best_angle(model: &StepSet, best: &BestAngle) -> GrowthBound {
        GrowthBound {
            value: best.value,
            kind: BoundKind::Upper,
            certificate: Certificate::Angle {
                theta: best.theta_star,
                attained_everywhere: best.attained_everywhere,
            },
            source_model: model.to_string(),
        }
    }

    /// The angle certificate, when there is one.
    pub fn angle(&self) -> Option<f64> {
        match self.certificate {
            Certificate::Angle { theta, .. } => Some(theta),
            _ => None,
        }
    }
}

/// Shuffling walks from S1 with walks from S2 interleaves them inside the
/// union model, so certified growths add: K1 + K2 <= K of the multiset union.
pub fn shuffle_bound(s1: &StepSet, k1: f64, s2: &StepSet, k2: f64) -> Result<GrowthBound> {
    if s1.dimension() != s2.dimension() {
        return Err(Error::DimensionMismatch {
            left: s1.dimension(),
            right: s2.dimension(),
        });
    }
    let union = s1.union(s2)?;
    Ok(GrowthBound {
        value: k1 + k2,
        kind: BoundKind::Lower,
        certificate: Certificate::Partition {
            left: s1.to_string(),
            right: s2.to_string(),
        },
        source_model: union.to_string(),
    })
}

/// Incrementing coordinate `axis` of one step injects the walks of S into the
/// walks of the rotated set T, so a certified lower bound on S transfers to T.
/// Returns that transferred bound on T = S - step + r(step).
pub fn rotation_relation(
    s: &StepSet,
    certified_lower: f64,
    step: &[i64],
    axis: usize,
) -> Result<GrowthBound> {
    if axis >= s.dimension() {
        return Err(Error::RotationPrecondition {
            reason: format!("axis {axis} out of range for dimension {}", s.dimension()),
        });
    }
    if !s.contains(step) {
        return Err(Error::RotationPrecondition {
            reason: format!("step {step:?} not in the set"),
        });
    }
    let mut rotated = step.to_vec();
    rotated[axis] += 1;
    if s.contains(&rotated) {
        return Err(Error::RotationPrecondition {
            reason: format!("rotated step {rotated:?} already present"),
        });
    }
    let target = replace_one(s, step, &rotated)?;
    Ok(GrowthBound {
        value: certified_lower,
        kind: BoundKind::Lower,
        certificate: Certificate::Rotation {
            source: s.to_string(),
            step: step.to_vec(),
            axis,
        },
        source_model: target.to_string(),
    })
}

/// T = S with one copy of `from` replaced by `to`.
pub fn replace_one(s: &StepSet, from: &[i64], to: &[i64]) -> Result<StepSet> {
    let mut items: Vec<(Vec<i64>, u32)> = Vec::new();
    for st in s.steps() {
        if st.vector == from {
            if st.multiplicity > 1 {
                items.push((st.vector.clone(), st.multiplicity - 1));
            }
        } else {
            items.push((st.vector.clone(), st.multiplicity));
        }
    }
    items.push((to.to_vec(), 1));
    StepSet::new(s.dimension(), items)
}

/// The excursion growth factor P(alpha, beta) is a lower bound on the full
/// model's growth.
pub fn excursion_floor(s: &StepSet) -> Result<GrowthBound> {
    let cp = halfplane::critical_point(s);
    if !cp.converged {
        return Err(Error::ExcursionUnavailable);
    }
    Ok(GrowthBound {
        value: cp.inventory_value,
        kind: BoundKind::Lower,
        certificate: Certificate::Excursion,
        source_model: s.to_string(),
    })
}

/// A growth value for S certified without reference to the quarter-plane
/// problem itself: unrestricted models, models whose counts coincide with a
/// single half-space model, and essential small-step models via the closed
/// forms. Returns None when no route applies.
pub fn certified_growth(s: &StepSet) -> Option<GrowthBound> {
    if s.dimension() != 2 {
        return None;
    }
    let horizon = crate::stepset::ESSENTIAL_HORIZON_2D;
    let q = enumeration::count_orthant(s, horizon).ok()?;
    if q.counts[1..].iter().all(num_traits::Zero::is_zero) {
        return None; // no walks at all
    }
    // unrestricted: q_n = |S|^n throughout the horizon
    let card = num_bigint::BigUint::from(s.cardinality());
    let mut power = num_bigint::BigUint::from(1u32);
    let mut unrestricted = true;
    for qn in &q.counts {
        if *qn != power {
            unrestricted = false;
            break;
        }
        power *= &card;
    }
    if unrestricted {
        return Some(GrowthBound {
            value: s.cardinality() as f64,
            kind: BoundKind::Exact,
            certificate: Certificate::Unrestricted,
            source_model: s.to_string(),
        });
    }
    // equality with a single-constraint half-space model
    for normal in [[1i64, 0], [0i64, 1]] {
        let h = enumeration::count_halfspace(s, &normal, horizon).ok()?;
        if h.counts == q.counts {
            let unit = [normal[0] as f64, normal[1] as f64];
            let a = halfplane::project(s, &unit).ok()?;
            let growth = halfplane::half_plane_growth(&a).ok()?;
            return Some(GrowthBound {
                value: growth,
                kind: BoundKind::Exact,
                certificate: Certificate::HalfPlaneEquivalence {
                    normal: normal.to_vec(),
                },
                source_model: s.to_string(),
            });
        }
    }
    // essential small-step model with an applicable closed form; the forms
    // are proven tight for plain sets only, so weighted models never
    // certify through this route
    let unweighted = s.steps().iter().all(|st| st.multiplicity == 1);
    if unweighted && s.is_small_step_2d() && s.is_quarterplane_essential().ok()? {
        let p = smallsteps::fr_classify(s).ok()?;
        if let (Some(chosen), Some(growth)) = (p.chosen, p.predicted_growth) {
            return Some(GrowthBound {
                value: growth,
                kind: BoundKind::Exact,
                certificate: Certificate::FrFormula {
                    name: chosen.name().to_string(),
                },
                source_model: s.to_string(),
            });
        }
    }
    None
}

/// Best shuffle lower bound over all 2-partitions of the distinct steps where
/// both parts carry certified growth values.
pub fn shuffle_search(s: &StepSet) -> Option<GrowthBound> {
    let steps = s.steps();
    if steps.len() < 2 || steps.len() > 16 {
        return None;
    }
    let mut best: Option<GrowthBound> = None;
    for mask in 1u32..(1 << (steps.len() - 1)) {
        let mut left = Vec::new();
        let mut right = Vec::new();
        for (k, st) in steps.iter().enumerate() {
            if mask & (1 << k) != 0 {
                left.push((st.vector.clone(), st.multiplicity));
            } else {
                right.push((st.vector.clone(), st.multiplicity));
            }
        }
        let (Ok(l), Ok(r)) = (
            StepSet::new(s.dimension(), left),
            StepSet::new(s.dimension(), right),
        ) else {
            continue;
        };
        let (Some(kl), Some(kr)) = (certified_growth(&l), certified_growth(&r)) else {
            continue;
        };
        let bound = shuffle_bound(&l, kl.value, &r, kr.value).ok()?;
        if best.as_ref().is_none_or(|b| bound.value > b.value) {
            best = Some(bound);
        }
    }
    best
}

/// Best rotation lower bound: looks for a certified predecessor that rotates
/// into `s` by incrementing one coordinate of one step.
pub fn rotation_search(s: &StepSet) -> Option<GrowthBound> {
    let mut best: Option<GrowthBound> = None;
    for st in s.steps() {
        for axis in 0..s.dimension() {
            let mut pre = st.vector.clone();
            pre[axis] -= 1;
            if s.contains(&pre) {
                continue;
            }
            let Ok(source) = replace_one(s, &st.vector, &pre) else {
                continue;
            };
            let Some(k) = certified_growth(&source) else {
                continue;
            };
            let Ok(bound) = rotation_relation(&source, k.value, &pre, axis) else {
                continue;
            };
            debug_assert_eq!(bound.source_model, s.to_string());
            if best.as_ref().is_none_or(|b| bound.value > b.value) {
                best = Some(bound);
            }
        }
    }
    best
}

/// Resolution state of a ledger.
#[derive(Debug, Clone, Serialize)]
pub struct Resolution {
    pub value: f64,
    pub tolerance: f64,
}

/// All certified bounds for one model.
#[derive(Debug, Clone, Serialize)]
pub struct BoundLedger {
    pub model: StepSet,
    pub bounds: Vec<GrowthBound>,
    pub resolved: Option<Resolution>,
}

impl BoundLedger {
    pub fn new(model: StepSet) -> Self {
        BoundLedger {
            model,
            bounds: Vec::new(),
            resolved: None,
        }
    }

    /// Adds a bound; it must be about this ledger's model.
    pub fn add(&mut self, bound: GrowthBound) -> Result<()> {
        if bound.source_model != self.model.to_string() {
            return Err(Error::LedgerModelMismatch {
                ledger_model: self.model.to_string(),
                bound_model: bound.source_model,
            });
        }
        self.bounds.push(bound);
        Ok(())
    }

    /// Registers the Fekete floor of an exact counting series as a lower bound.
    pub fn register_series(&mut self, series: &CountSeries) -> Result<()> {
        if series.stepset != self.model {
            return Err(Error::LedgerModelMismatch {
                ledger_model: self.model.to_string(),
                bound_model: series.stepset.to_string(),
            });
        }
        if let Some(floor) = series.fekete_floor() {
            self.bounds.push(GrowthBound {
                value: floor,
                kind: BoundKind::Lower,
                certificate: Certificate::EnumerationFloor {
                    n_max: series.n_max(),
                },
                source_model: self.model.to_string(),
            });
        }
        Ok(())
    }

    pub fn max_lower(&self) -> Option<f64> {
        self.bounds
            .iter()
            .filter(|b| matches!(b.kind, BoundKind::Lower | BoundKind::Exact))
            .map(|b| b.value)
            .fold(None, |acc, v| Some(acc.map_or(v, |a: f64| a.max(v))))
    }

    pub fn min_upper(&self) -> Option<f64> {
        self.bounds
            .iter()
            .filter(|b| matches!(b.kind, BoundKind::Upper | BoundKind::Exact))
            .map(|b| b.value)
            .fold(None, |acc, v| Some(acc.map_or(v, |a: f64| a.min(v))))
    }

    /// Checks integrity and, when the gap closes within `tolerance`, records
    /// the minimum upper bound as the resolved growth constant.
    pub fn resolve(&mut self, tolerance: f64) -> Result<Option<f64>> {
        let (Some(lower), Some(upper)) = (self.max_lower(), self.min_upper()) else {
            return Ok(None);
        };
        if lower > upper + LEDGER_SLACK {
            return Err(Error::LedgerIntegrity {
                model: self.model.to_string(),
                max_lower: lower,
                min_upper: upper,
            });
        }
        if upper - lower <= tolerance {
            self.resolved = Some(Resolution {
                value: upper,
                tolerance,
            });
            Ok(Some(upper))
        } else {
            self.resolved = None;
            Ok(None)
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("ledger serializes")
    }
}
