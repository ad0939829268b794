//! Half-plane growth constants and the best bounding angle.
//!
//! Projecting a step set onto the inward normal of a bounding half-plane
//! turns the model into a unidimensional one whose growth constant has a
//! closed form: |A| when the projected drift is nonnegative, chi(tau)
//! otherwise, where tau is the unique positive critical point of the
//! inventory chi(u) = sum u^a. Minimizing over the admissible normals gives
//! the best upper bound on the orthant growth constant; when the inventory
//! P has an interior critical point (alpha, beta) with log alpha / log beta
//! nonnegative, the minimizing angle is theta* = arctan(log alpha / log beta)
//! and the bound equals P(alpha, beta).

use std::f64::consts::FRAC_PI_2;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::solve;
use crate::stepset::StepSet;

/// Exponents closer than this merge into one entry.
pub const EXPONENT_MERGE_TOL: f64 = 1e-14;
/// Sign tolerance for floating-point drift tests.
pub const DRIFT_EPS: f64 = 1e-12;
/// |log coordinate| below this is treated as an exact 1 in the theta*
/// conventions.
const LOG_ONE_EPS: f64 = 1e-9;

/// A finite multiset of real exponents: the projected unidimensional model.
#[derive(Debug, Clone, PartialEq)]
pub struct Exponent1D {
    entries: Vec<(f64, u32)>,
}

impl Exponent1D {
    /// Builds the multiset, merging exponents equal within `EXPONENT_MERGE_TOL`.
    pub fn from_entries(entries: impl IntoIterator<Item = (f64, u32)>) -> Self {
        let mut items: Vec<(f64, u32)> = entries.into_iter().collect();
        items.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut merged: Vec<(f64, u32)> = Vec::with_capacity(items.len());
        for (value, mult) in items {
            match merged.last_mut() {
                Some(last) if (value - last.0).abs() <= EXPONENT_MERGE_TOL => last.1 += mult,
                _ => merged.push((value, mult)),
            }
        }
        Exponent1D { entries: merged }
    }

    pub fn from_values(values: impl IntoIterator<Item = f64>) -> Self {
        Self::from_entries(values.into_iter().map(|v| (v, 1)))
    }

    pub fn entries(&self) -> &[(f64, u32)] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Total count |A| with multiplicity.
    pub fn total(&self) -> u64 {
        self.entries.iter().map(|&(_, m)| m as u64).sum()
    }

    /// delta(A) = chi'(1) = sum of the exponents with multiplicity.
    pub fn drift(&self) -> f64 {
        self.entries.iter().map(|&(a, m)| a * m as f64).sum()
    }

    pub fn has_positive(&self) -> bool {
        self.entries.iter().any(|&(a, _)| a > EXPONENT_MERGE_TOL)
    }

    pub fn has_negative(&self) -> bool {
        self.entries.iter().any(|&(a, _)| a < -EXPONENT_MERGE_TOL)
    }

    /// Non-trivial means at least one positive and one negative exponent.
    pub fn is_nontrivial(&self) -> bool {
        self.has_positive() && self.has_negative()
    }

    /// chi(u) = sum m u^a for u > 0.
    pub fn chi(&self, u: f64) -> f64 {
        self.entries
            .iter()
            .map(|&(a, m)| m as f64 * u.powf(a))
            .sum()
    }

    /// The scaled multiset rA.
    pub fn scale(&self, r: f64) -> Exponent1D {
        Exponent1D::from_entries(self.entries.iter().map(|&(a, m)| (a * r, m)))
    }
}

/// Drift-sign regime of a projected model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DriftRegime {
    NonnegDrift,
    NegDrift,
}

/// Growth constant of one bounding half-plane, with its certificate data.
#[derive(Debug, Clone, Serialize)]
pub struct AngleBound {
    pub theta: f64,
    pub growth: f64,
    pub regime: DriftRegime,
    pub tau: Option<f64>,
}

/// Positive critical point of the inventory, or the escape certificate when
/// none exists (`converged` false; coordinates hold the last iterate).
#[derive(Debug, Clone, Serialize)]
pub struct CriticalPoint {
    pub coordinates: Vec<f64>,
    pub inventory_value: f64,
    pub converged: bool,
    pub residual: f64,
}

/// Projects every step onto a unit normal with nonnegative components.
pub fn project(s: &StepSet, normal: &[f64]) -> Result<Exponent1D> {
    if normal.len() != s.dimension() {
        return Err(Error::InvalidNormal {
            reason: format!(
                "normal has {} components, step set has dimension {}",
                normal.len(),
                s.dimension()
            ),
        });
    }
    if normal.iter().any(|&c| c < 0.0 || !c.is_finite()) {
        return Err(Error::InvalidNormal {
            reason: "components must be nonnegative".into(),
        });
    }
    let norm: f64 = normal.iter().map(|&c| c * c).sum::<f64>().sqrt();
    if norm == 0.0 {
        return Err(Error::InvalidNormal {
            reason: "normal must be nonzero".into(),
        });
    }
    if (norm - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidNormal {
            reason: format!("normal must have unit length, |n| = {norm}"),
        });
    }
    Ok(Exponent1D::from_entries(s.steps().iter().map(|step| {
        let a: f64 = step
            .vector
            .iter()
            .zip(normal)
            .map(|(&c, &n)| c as f64 * n)
            .sum();
        (a, step.multiplicity)
    })))
}

/// The unique positive tau with chi'(tau) = 0.
pub fn tau_of(a: &Exponent1D) -> Result<f64> {
    if a.is_empty() {
        return Err(Error::EmptyExponents);
    }
    if !a.is_nontrivial() {
        return Err(Error::TrivialExponents);
    }
    let terms: Vec<(f64, f64)> = a.entries().iter().map(|&(e, m)| (e, m as f64)).collect();
    Ok(solve::minimize_univariate(&terms)?.tau)
}

/// Growth constant of the unidimensional half-line model on A:
/// |A| for nonnegative drift (or no descending exponent), chi(tau) otherwise.
pub fn half_plane_growth(a: &Exponent1D) -> Result<f64> {
    if a.is_empty() {
        return Err(Error::EmptyExponents);
    }
    if a.drift() >= -DRIFT_EPS || !a.has_negative() {
        return Ok(a.total() as f64);
    }
    if !a.is_nontrivial() {
        return Err(Error::TrivialExponents);
    }
    let terms: Vec<(f64, f64)> = a.entries().iter().map(|&(e, m)| (e, m as f64)).collect();
    Ok(solve::minimize_univariate(&terms)?.chi_value)
}

/// Unit normal for the half-plane at angle theta; the endpoints substitute
/// the exact axis normals rather than evaluating sin/cos.
pub(crate) fn normal_of_angle(theta: f64) -> [f64; 2] {
    if theta == 0.0 {
        [0.0, 1.0]
    } else if theta == FRAC_PI_2 {
        [1.0, 0.0]
    } else {
        [theta.sin(), theta.cos()]
    }
}

/// Growth constant of the half-plane model at angle theta in [0, pi/2].
pub fn growth_at_angle(s: &StepSet, theta: f64) -> Result<AngleBound> {
    if s.dimension() != 2 {
        return Err(Error::UnsupportedDimension {
            expected: 2,
            got: s.dimension(),
        });
    }
    if !(0.0..=FRAC_PI_2).contains(&theta) {
        return Err(Error::AngleOutOfRange { theta });
    }
    let normal = normal_of_angle(theta);
    let a = project(s, &normal)?;
    let projected_drift = s.drift().dot(&normal);
    if projected_drift >= -DRIFT_EPS || !a.has_negative() {
        Ok(AngleBound {
            theta,
            growth: a.total() as f64,
            regime: DriftRegime::NonnegDrift,
            tau: None,
        })
    } else if a.is_nontrivial() {
        let terms: Vec<(f64, f64)> = a.entries().iter().map(|&(e, m)| (e, m as f64)).collect();
        let min = solve::minimize_univariate(&terms)?;
        Ok(AngleBound {
            theta,
            growth: min.chi_value,
            regime: DriftRegime::NegDrift,
            tau: Some(min.tau),
        })
    } else {
        // every exponent nonpositive and some negative: only the
        // zero-displacement steps remain usable, so the count is exactly
        // their multiplicity to the n-th power
        Ok(AngleBound {
            theta,
            growth: zero_exponent_count(&a),
            regime: DriftRegime::NegDrift,
            tau: None,
        })
    }
}

pub(crate) fn zero_exponent_count(a: &Exponent1D) -> f64 {
    a.entries()
        .iter()
        .filter(|&&(e, _)| e.abs() <= EXPONENT_MERGE_TOL)
        .map(|&(_, m)| m as f64)
        .sum()
}

/// Minimizes the inventory over the positive orthant in log coordinates.
///
/// Existence is decided exactly for dimensions up to three (the origin must
/// lie in the relative interior of the convex hull of the steps); the solver
/// then either converges to the unique minimum or certifies the escape to the
/// boundary by running into the log-norm cap.
pub fn critical_point(s: &StepSet) -> CriticalPoint {
    let vectors: Vec<Vec<i64>> = s.steps().iter().map(|st| st.vector.clone()).collect();
    let weights: Vec<f64> = s.steps().iter().map(|st| st.multiplicity as f64).collect();
    let existence = solve::origin_in_relint(s.dimension(), &vectors);
    let m = solve::minimize_posynomial(&vectors, &weights, existence);
    CriticalPoint {
        coordinates: m.point,
        inventory_value: m.value,
        converged: m.converged,
        residual: m.residual,
    }
}

/// Where the minimum of K_S(theta) sits, and its value.
#[derive(Debug, Clone, Serialize)]
pub struct BestAngle {
    pub theta_star: f64,
    pub value: f64,
    /// True when K_S(theta) is constant so every angle attains the minimum.
    pub attained_everywhere: bool,
    pub critical_point: CriticalPoint,
}

/// min over theta in [0, pi/2] of K_S(theta), requiring an essential model.
pub fn best_upper_bound(s: &StepSet) -> Result<BestAngle> {
    if s.dimension() != 2 {
        return Err(Error::UnsupportedDimension {
            expected: 2,
            got: s.dimension(),
        });
    }
    if !s.is_quarterplane_essential()? {
        return Err(Error::Inessential {
            model: s.to_string(),
            reason: "model not quarter-plane essential".into(),
        });
    }
    best_upper_bound_unchecked(s)
}

/// The minimization itself, without the essentiality gate.
pub(crate) fn best_upper_bound_unchecked(s: &StepSet) -> Result<BestAngle> {
    let cp = critical_point(s);
    let card = s.cardinality() as f64;
    let drift = s.drift();
    if cp.converged {
        let la = cp.coordinates[0].ln();
        let lb = cp.coordinates[1].ln();
        let theta_star = if la.abs() <= LOG_ONE_EPS && lb.abs() <= LOG_ONE_EPS {
            // minimum attained everywhere; report theta* = 0
            return Ok(BestAngle {
                theta_star: 0.0,
                value: card,
                attained_everywhere: true,
                critical_point: cp,
            });
        } else if la.abs() <= LOG_ONE_EPS {
            Some(0.0)
        } else if lb.abs() <= LOG_ONE_EPS {
            Some(FRAC_PI_2)
        } else if la / lb >= 0.0 {
            Some((la / lb).atan())
        } else {
            None
        };
        if let Some(theta_star) = theta_star {
            // The minimum is attained at theta*. Its value is the half-plane
            // growth there: P(alpha, beta) in the descending-drift regime and
            // |S| otherwise (then K_S is constant equal to |S|).
            let normal = normal_of_angle(theta_star);
            let projected_drift = drift.dot(&normal);
            let (value, everywhere) = if projected_drift < -DRIFT_EPS {
                (cp.inventory_value, false)
            } else {
                (card, true)
            };
            return Ok(BestAngle {
                theta_star,
                value,
                attained_everywhere: everywhere,
                critical_point: cp,
            });
        }
    }
    // No usable interior angle: the minimum sits at an endpoint.
    let k0 = growth_at_angle(s, 0.0)?;
    let k1 = growth_at_angle(s, FRAC_PI_2)?;
    let (theta_star, value) = if k0.growth <= k1.growth {
        (0.0, k0.growth)
    } else {
        (FRAC_PI_2, k1.growth)
    };
    Ok(BestAngle {
        theta_star,
        value,
        attained_everywhere: (k0.growth - k1.growth).abs() <= 1e-12 && value >= card - 1e-12,
        critical_point: cp,
    })
}

/// K_S(theta) on a uniform grid of `gridsize` angles over [0, pi/2].
pub fn theta_sweep(s: &StepSet, gridsize: usize) -> Result<Vec<AngleBound>> {
    if gridsize < 2 {
        return Err(Error::Parse("gridsize must be at least 2".into()));
    }
    (0..gridsize)
        .map(|k| {
            let theta = (k as f64 / (gridsize - 1) as f64) * FRAC_PI_2;
            growth_at_angle(s, theta)
        })
        .collect()
}
