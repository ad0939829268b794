//! d-dimensional generalization: inventory minimization over the positive
//! orthant and the minimum bounding-hyperplane growth constant.
//!
//! Every hyperplane through the origin whose closed positive side contains
//! the first orthant has a unit normal with nonnegative components.
//! Projecting the steps onto that normal gives a unidimensional model whose
//! growth constant upper-bounds the orthant model, exactly as in two
//! dimensions. The minimum over the spherical simplex of normals is computed
//! from the interior critical point when its log-coordinates are a valid
//! direction, and otherwise by recursing over the simplex faces with a dense
//! grid as a safety net.

use serde::Serialize;

use crate::bounds::{BoundKind, Certificate, GrowthBound};
use crate::error::{Error, Result};
use crate::halfplane::{self, CriticalPoint, DriftRegime};
use crate::stepset::{StepSet, ESSENTIAL_HORIZON_2D, ESSENTIAL_HORIZON_ND};

/// Angular grid spacing of the fallback search, per free parameter.
const GRID_SPACING: f64 = 1e-3;
/// Grid resolution used when three or more angles are free.
const COARSE_GRID: usize = 48;
const LOG_ONE_EPS: f64 = 1e-9;

/// Growth constant of one bounding hyperplane.
#[derive(Debug, Clone, Serialize)]
pub struct HyperplaneBound {
    pub normal: Vec<f64>,
    pub growth: f64,
    pub regime: DriftRegime,
}

/// Projects onto a unit normal with nonnegative components and applies the
/// unidimensional growth formula.
pub fn hyperplane_growth(s: &StepSet, normal: &[f64]) -> Result<HyperplaneBound> {
    let a = halfplane::project(s, normal)?;
    let projected_drift = s.drift().dot(normal);
    let regime = if projected_drift >= -halfplane::DRIFT_EPS {
        DriftRegime::NonnegDrift
    } else {
        DriftRegime::NegDrift
    };
    let growth = match halfplane::half_plane_growth(&a) {
        Ok(g) => g,
        // all projections nonpositive with some negative: only the
        // zero-projection steps are ever usable
        Err(Error::TrivialExponents) => halfplane::zero_exponent_count(&a),
        Err(e) => return Err(e),
    };
    Ok(HyperplaneBound {
        normal: normal.to_vec(),
        growth,
        regime,
    })
}

/// Minimizes the inventory over the positive orthant; identical contract to
/// the two-dimensional critical point.
pub fn min_inventory_orthant(s: &StepSet) -> CriticalPoint {
    halfplane::critical_point(s)
}

/// The d-dimensional essentiality test: some walk exists, every coordinate
/// constraint strictly binds within the horizon, and the reachable positions
/// span all of R^d.
pub fn is_orthant_essential(s: &StepSet) -> Result<bool> {
    let horizon = if s.dimension() <= 2 {
        ESSENTIAL_HORIZON_2D
    } else {
        ESSENTIAL_HORIZON_ND
    };
    s.is_orthant_essential_with_horizon(horizon)
}

/// Upper bound on the orthant growth constant: the minimum hyperplane growth,
/// with the minimizing normal as certificate. Requires an essential model.
pub fn conjectured_growth(s: &StepSet) -> Result<GrowthBound> {
    if !is_orthant_essential(s)? {
        return Err(Error::Inessential {
            model: s.to_string(),
            reason: "some orthant constraint never binds".into(),
        });
    }
    let (value, normal) = min_growth_over_normals(s)?;
    Ok(GrowthBound {
        value,
        kind: BoundKind::Upper,
        certificate: Certificate::Hyperplane { normal },
        source_model: s.to_string(),
    })
}

/// min over unit normals with nonnegative components of the hyperplane
/// growth, together with a minimizing normal. No essentiality check.
pub fn min_growth_over_normals(s: &StepSet) -> Result<(f64, Vec<f64>)> {
    let d = s.dimension();
    if d == 1 {
        let b = hyperplane_growth(s, &[1.0])?;
        return Ok((b.growth, vec![1.0]));
    }
    // Interior closed form: when the inventory has an interior critical point
    // whose log-coordinates all point into the orthant, the minimizing normal
    // is their normalization.
    let cp = min_inventory_orthant(s);
    if cp.converged {
        let logs: Vec<f64> = cp.coordinates.iter().map(|&x| x.ln()).collect();
        if logs.iter().all(|&l| l >= -LOG_ONE_EPS) {
            if logs.iter().all(|&l| l.abs() <= LOG_ONE_EPS) {
                // zero-drift style minimum: constant |S| over every normal
                let mut normal = vec![0.0; d];
                normal[d - 1] = 1.0;
                return Ok((s.cardinality() as f64, normal));
            }
            let norm: f64 = logs.iter().map(|&l| l * l).sum::<f64>().sqrt();
            let normal: Vec<f64> = logs.iter().map(|&l| (l / norm).max(0.0)).collect();
            let b = hyperplane_growth(s, &normal)?;
            return Ok((b.growth, normal));
        }
    }
    // Faces of the simplex: pinning normal component k to zero is the same
    // problem one dimension down on the projected steps.
    let mut best: Option<(f64, Vec<f64>)> = None;
    for k in 0..d {
        let sub = s.drop_coordinate(k)?;
        let (value, sub_normal) = min_growth_over_normals(&sub)?;
        let mut normal = sub_normal;
        normal.insert(k, 0.0);
        if best.as_ref().is_none_or(|(b, _)| value < *b) {
            best = Some((value, normal));
        }
    }
    // Dense interior grid with local refinement.
    let (grid_value, grid_normal) = grid_minimum(s)?;
    if best.as_ref().is_none_or(|(b, _)| grid_value < *b) {
        best = Some((grid_value, grid_normal));
    }
    Ok(best.expect("at least one candidate"))
}

/// Spherical-simplex parameterization: angles in [0, pi/2]^(d-1).
fn normal_from_angles(angles: &[f64]) -> Vec<f64> {
    // d=2: (sin t, cos t); d=3: (sin u sin t, sin u cos t, cos u); and so on.
    let mut normal = vec![1.0; angles.len() + 1];
    for (k, &t) in angles.iter().enumerate() {
        // components 0..=k pick up sin(t), component k+1 the cos(t)
        for c in normal.iter_mut().take(k + 1) {
            *c *= t.sin();
        }
        normal[k + 1] *= t.cos();
    }
    normal
}

fn growth_at_angles(s: &StepSet, angles: &[f64]) -> Result<f64> {
    Ok(hyperplane_growth(s, &normal_from_angles(angles))?.growth)
}

/// Grid search over the free angles, then a few rounds of coordinate-wise
/// golden-section refinement around the best cell.
fn grid_minimum(s: &StepSet) -> Result<(f64, Vec<f64>)> {
    let free = s.dimension() - 1;
    let steps_per_axis = if free <= 2 {
        (std::f64::consts::FRAC_PI_2 / GRID_SPACING).ceil() as usize
    } else {
        COARSE_GRID
    };
    let mut best_angles = vec![0.0; free];
    let mut best_value = f64::INFINITY;
    let mut idx = vec![0usize; free];
    loop {
        let angles: Vec<f64> = idx
            .iter()
            .map(|&i| (i as f64 / steps_per_axis as f64) * std::f64::consts::FRAC_PI_2)
            .collect();
        let v = growth_at_angles(s, &angles)?;
        if v < best_value {
            best_value = v;
            best_angles = angles;
        }
        // odometer increment
        let mut k = 0;
        loop {
            if k == free {
                break;
            }
            idx[k] += 1;
            if idx[k] <= steps_per_axis {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == free {
            break;
        }
    }
    // golden-section polish, one axis at a time
    let h = std::f64::consts::FRAC_PI_2 / steps_per_axis as f64;
    for _ in 0..3 {
        for axis in 0..free {
            let lo = (best_angles[axis] - h).max(0.0);
            let hi = (best_angles[axis] + h).min(std::f64::consts::FRAC_PI_2);
            let (t, v) = golden_section(
                |t| {
                    let mut a = best_angles.clone();
                    a[axis] = t;
                    growth_at_angles(s, &a).unwrap_or(f64::INFINITY)
                },
                lo,
                hi,
            );
            if v < best_value {
                best_value = v;
                best_angles[axis] = t;
            }
        }
    }
    Ok((best_value, normal_from_angles(&best_angles)))
}

fn golden_section(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut c = hi - INV_PHI * (hi - lo);
    let mut d = lo + INV_PHI * (hi - lo);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..60 {
        if fc < fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - INV_PHI * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + INV_PHI * (hi - lo);
            fd = f(d);
        }
        if hi - lo < 1e-12 {
            break;
        }
    }
    let mid = 0.5 * (lo + hi);
    (mid, f(mid))
}
