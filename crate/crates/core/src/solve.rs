//! Log-domain convex minimization kernels.
//!
//! Both the univariate inventory chi(u) and the multivariate inventory
//! P(x_1..x_d) become sums of exponentials of linear forms after the change
//! of variables x_k = e^{s_k}. Working with the log of that sum keeps every
//! quantity bounded (softmax weights), so Newton iterations are stable for
//! exponents of mixed magnitude.

use crate::error::{Error, Result};

/// Iteration cap shared by all solvers.
pub(crate) const MAX_ITERATIONS: usize = 200;
/// Declared non-existence once the log-coordinate iterate passes this norm.
pub(crate) const LOG_NORM_CAP: f64 = 60.0;
/// Relative-gradient target used by the univariate solver.
pub(crate) const REL_GRAD_TOL: f64 = 1e-12;

/// Minimum of chi(u) = sum m_i u^{a_i} over u > 0.
pub(crate) struct UnivariateMin {
    pub tau: f64,
    pub chi_value: f64,
}

/// Minimizes f(t) = ln sum m_i e^{a_i t} for a multiset with at least one
/// positive and one negative exponent; the minimizer is unique.
pub(crate) fn minimize_univariate(terms: &[(f64, f64)]) -> Result<UnivariateMin> {
    debug_assert!(terms.iter().any(|&(a, _)| a > 0.0) && terms.iter().any(|&(a, _)| a < 0.0));

    let logged: Vec<(f64, f64)> = terms.iter().map(|&(a, w)| (a, w.ln())).collect();
    let grad = |t: f64| -> (f64, f64, f64) {
        // returns (lse, g, h) where g = d/dt ln chi, h = second derivative
        let m = logged
            .iter()
            .map(|&(a, lw)| a * t + lw)
            .fold(f64::NEG_INFINITY, f64::max);
        let mut tot = 0.0;
        let mut g1 = 0.0;
        let mut g2 = 0.0;
        for &(a, lw) in &logged {
            let e = (a * t + lw - m).exp();
            tot += e;
            g1 += a * e;
            g2 += a * a * e;
        }
        let g = g1 / tot;
        (m + tot.ln(), g, g2 / tot - g * g)
    };

    // bracket the root of g
    let mut lo = -1.0;
    let mut hi = 1.0;
    for _ in 0..80 {
        if grad(lo).1 < 0.0 {
            break;
        }
        lo *= 2.0;
    }
    for _ in 0..80 {
        if grad(hi).1 > 0.0 {
            break;
        }
        hi *= 2.0;
    }
    let (_, glo, _) = grad(lo);
    let (_, ghi, _) = grad(hi);
    if glo >= 0.0 || ghi <= 0.0 {
        return Err(Error::SolverFailure {
            reason: "could not bracket the inventory critical point".into(),
        });
    }

    let amax = terms.iter().map(|&(a, _)| a.abs()).fold(0.0, f64::max);
    let tol = 1e-15 * amax.max(1.0);
    let mut t = 0.0;
    if !(lo < t && t < hi) {
        t = 0.5 * (lo + hi);
    }
    for _ in 0..MAX_ITERATIONS {
        let (_, g, h) = grad(t);
        if g.abs() <= tol {
            break;
        }
        if g > 0.0 {
            hi = t;
        } else {
            lo = t;
        }
        let newton = t - g / h;
        t = if h > 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if hi - lo <= f64::EPSILON * (1.0 + t.abs()) {
            break;
        }
    }
    let (lse, g, _) = grad(t);
    let tau = t.exp();
    let chi_value = lse.exp();
    // chi'(tau) = chi(tau) * g / tau, so |chi'|/chi = |g|/tau
    let rel_gradient = g.abs() / tau;
    if rel_gradient > REL_GRAD_TOL {
        return Err(Error::SolverFailure {
            reason: format!("relative gradient {rel_gradient:.3e} above tolerance at tau={tau}"),
        });
    }
    Ok(UnivariateMin { tau, chi_value })
}

/// Outcome of the d-dimensional inventory minimization in log coordinates.
pub(crate) struct PosynomialMin {
    /// e^{s_k} at the final iterate.
    pub point: Vec<f64>,
    /// P at the final iterate.
    pub value: f64,
    pub converged: bool,
    /// max_k |dP/dx_k| at the final iterate.
    pub residual: f64,
}

/// Minimizes P(e^{s_1},..,e^{s_d}) = sum m_i e^{<v_i, s>} by damped Newton.
///
/// `existence` carries the exact origin-in-relative-interior verdict when the
/// dimension admits one. A critical point exists precisely when the verdict is
/// true; in that case the residual stop is armed. When the verdict is false
/// the infimum sits at the boundary of the orthant and the gradient can decay
/// along the escape path, so only the norm cap terminates the run and the
/// result is reported as non-converged.
pub(crate) fn minimize_posynomial(
    vectors: &[Vec<i64>],
    weights: &[f64],
    existence: Option<bool>,
) -> PosynomialMin {
    let dim = vectors.first().map_or(0, |v| v.len());
    let n = vectors.len();
    let may_converge = existence.unwrap_or(true);

    let mut s = vec![0.0f64; dim];
    let eval = |s: &[f64]| -> (f64, Vec<f64>, Vec<f64>) {
        let mut exps = Vec::with_capacity(n);
        let mut m = f64::NEG_INFINITY;
        for (v, &w) in vectors.iter().zip(weights) {
            let e: f64 = v.iter().zip(s).map(|(&c, &sk)| c as f64 * sk).sum::<f64>() + w.ln();
            m = m.max(e);
            exps.push(e);
        }
        let mut tot = 0.0;
        let mut g = vec![0.0f64; dim];
        let mut h = vec![0.0f64; dim * dim];
        for (v, &e) in vectors.iter().zip(&exps) {
            let w = (e - m).exp();
            tot += w;
            for k in 0..dim {
                g[k] += w * v[k] as f64;
            }
            for k in 0..dim {
                for l in 0..=k {
                    h[k * dim + l] += w * v[k] as f64 * v[l] as f64;
                }
            }
        }
        for gk in g.iter_mut() {
            *gk /= tot;
        }
        for k in 0..dim {
            for l in 0..=k {
                let c = h[k * dim + l] / tot - g[k] * g[l];
                h[k * dim + l] = c;
                h[l * dim + k] = c;
            }
        }
        (m + tot.ln(), g, h)
    };
    let residual_of = |s: &[f64], g: &[f64], log_p: f64| -> f64 {
        // |dP/dx_k| = P * |g_k| * e^{-s_k}
        let p = log_p.exp();
        (0..dim)
            .map(|k| p * g[k].abs() * (-s[k]).exp())
            .fold(0.0, f64::max)
    };

    for _ in 0..MAX_ITERATIONS {
        let (log_p, g, h) = eval(&s);
        let p = log_p.exp();
        if may_converge {
            let res = residual_of(&s, &g, log_p);
            if res <= 1e-13 * p.max(1.0) {
                return PosynomialMin {
                    point: s.iter().map(|&x| x.exp()).collect(),
                    value: p,
                    converged: true,
                    residual: res,
                };
            }
        }
        // Newton direction with ridge fallback
        let mut dir = solve_spd(&h, &g, dim)
            .unwrap_or_else(|| g.iter().map(|&x| -x).collect());
        // make sure it is a descent direction
        let slope: f64 = g.iter().zip(&dir).map(|(&a, &b)| a * b).sum();
        if slope >= 0.0 {
            dir = g.iter().map(|&x| -x).collect();
        }
        let slope: f64 = g.iter().zip(&dir).map(|(&a, &b)| a * b).sum();
        // Armijo backtracking, accepting flat steps near machine precision
        let mut step = 1.0;
        let mut moved = false;
        while step >= 1e-14 {
            let cand: Vec<f64> = s.iter().zip(&dir).map(|(&x, &d)| x + step * d).collect();
            let (lp, _, _) = eval(&cand);
            if lp <= log_p + 1e-4 * step * slope || lp <= log_p + 4.0 * f64::EPSILON * log_p.abs() {
                s = cand;
                moved = true;
                break;
            }
            step *= 0.5;
        }
        let norm = s.iter().map(|&x| x * x).sum::<f64>().sqrt();
        if norm > LOG_NORM_CAP {
            let (log_p, g, _) = eval(&s);
            return PosynomialMin {
                point: s.iter().map(|&x| x.exp()).collect(),
                value: log_p.exp(),
                converged: false,
                residual: residual_of(&s, &g, log_p),
            };
        }
        if !moved {
            break;
        }
    }
    let (log_p, g, _) = eval(&s);
    let res = residual_of(&s, &g, log_p);
    let p = log_p.exp();
    PosynomialMin {
        point: s.iter().map(|&x| x.exp()).collect(),
        value: p,
        converged: may_converge && res <= 1e-12 * p.max(1.0),
        residual: res,
    }
}

/// Solves H x = -g for symmetric positive semi-definite H; None if singular.
fn solve_spd(h: &[f64], g: &[f64], dim: usize) -> Option<Vec<f64>> {
    // Cholesky with a scale-aware singularity guard
    let scale = (0..dim).map(|k| h[k * dim + k]).fold(0.0, f64::max);
    if scale <= 0.0 {
        return None;
    }
    let mut l = vec![0.0f64; dim * dim];
    for k in 0..dim {
        for j in 0..=k {
            let mut sum = h[k * dim + j];
            for i in 0..j {
                sum -= l[k * dim + i] * l[j * dim + i];
            }
            if k == j {
                if sum <= 1e-13 * scale {
                    return None;
                }
                l[k * dim + k] = sum.sqrt();
            } else {
                l[k * dim + j] = sum / l[j * dim + j];
            }
        }
    }
    // forward/back substitution of -g
    let mut y = vec![0.0f64; dim];
    for k in 0..dim {
        let mut sum = -g[k];
        for i in 0..k {
            sum -= l[k * dim + i] * y[i];
        }
        y[k] = sum / l[k * dim + k];
    }
    let mut x = vec![0.0f64; dim];
    for k in (0..dim).rev() {
        let mut sum = y[k];
        for i in k + 1..dim {
            sum -= l[i * dim + k] * x[i];
        }
        x[k] = sum / l[k * dim + k];
    }
    Some(x)
}

/// Exact test for whether the origin lies in the relative interior of the
/// convex hull of a set of integer vectors. Decides critical-point existence
/// for the inventory. Supported for dimensions 1..=3; returns None above.
pub(crate) fn origin_in_relint(dim: usize, vectors: &[Vec<i64>]) -> Option<bool> {
    let distinct: Vec<Vec<i128>> = {
        let mut seen = std::collections::BTreeSet::new();
        vectors
            .iter()
            .filter(|v| v.iter().any(|&c| c != 0))
            .filter_map(|v| {
                let w: Vec<i128> = v.iter().map(|&c| c as i128).collect();
                seen.insert(w.clone()).then_some(w)
            })
            .collect()
    };
    if distinct.is_empty() {
        return Some(true); // hull is {0}
    }
    // Candidate separating normals: a separator exists iff one of these
    // candidates c satisfies <v,c> <= 0 for all v with some inequality strict.
    let mut candidates: Vec<Vec<i128>> = Vec::new();
    let push = |c: Vec<i128>, candidates: &mut Vec<Vec<i128>>| {
        if c.iter().any(|&x| x != 0) {
            candidates.push(c.iter().map(|&x| -x).collect());
            candidates.push(c);
        }
    };
    match dim {
        1 => push(vec![1], &mut candidates),
        2 => {
            for v in &distinct {
                push(v.clone(), &mut candidates);
                push(vec![-v[1], v[0]], &mut candidates);
            }
        }
        3 => {
            for v in &distinct {
                push(v.clone(), &mut candidates);
            }
            for k in 0..3 {
                let mut e = vec![0i128; 3];
                e[k] = 1;
                push(e, &mut candidates);
            }
            let cross = |a: &[i128], b: &[i128]| -> Vec<i128> {
                vec![
                    a[1] * b[2] - a[2] * b[1],
                    a[2] * b[0] - a[0] * b[2],
                    a[0] * b[1] - a[1] * b[0],
                ]
            };
            for i in 0..distinct.len() {
                for j in i + 1..distinct.len() {
                    let c = cross(&distinct[i], &distinct[j]);
                    push(c.clone(), &mut candidates);
                    // extreme rays inside a rank-2 span: cross with the span normal
                    if c.iter().any(|&x| x != 0) {
                        for v in &distinct {
                            push(cross(v, &c), &mut candidates);
                        }
                    }
                }
            }
        }
        _ => return None,
    }
    for c in &candidates {
        let mut any_negative = false;
        let mut all_nonpositive = true;
        for v in &distinct {
            let dot: i128 = v.iter().zip(c).map(|(&a, &b)| a * b).sum();
            if dot > 0 {
                all_nonpositive = false;
                break;
            }
            if dot < 0 {
                any_negative = true;
            }
        }
        if all_nonpositive && any_negative {
            return Some(false);
        }
    }
    Some(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn univariate_matches_closed_forms() {
        // {1,-1}: tau = 1, chi = 2
        let m = minimize_univariate(&[(1.0, 1.0), (-1.0, 1.0)]).unwrap();
        assert!((m.tau - 1.0).abs() < 1e-12);
        assert!((m.chi_value - 2.0).abs() < 1e-12);

        // {1,-1,-1,-1}: tau = sqrt(3), chi = 2 sqrt(3)
        let m = minimize_univariate(&[(1.0, 1.0), (-1.0, 3.0)]).unwrap();
        assert!((m.tau - 3f64.sqrt()).abs() < 1e-12);
        assert!((m.chi_value - 2.0 * 3f64.sqrt()).abs() < 1e-12);

        // {1,-1,-1}: tau = sqrt(2), chi = 2 sqrt(2)
        let m = minimize_univariate(&[(1.0, 1.0), (-1.0, 2.0)]).unwrap();
        assert!((m.tau - 2f64.sqrt()).abs() < 1e-12);
        assert!((m.chi_value - 2.0 * 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn univariate_handles_mixed_magnitudes() {
        let m = minimize_univariate(&[(0.01, 2.0), (-5.0, 1.0), (3.5, 1.0)]).unwrap();
        // minimum of a convex function: sample around tau
        let chi = |u: f64| 2.0 * u.powf(0.01) + u.powf(-5.0) + u.powf(3.5);
        assert!(m.chi_value <= chi(m.tau * 1.01) + 1e-12);
        assert!(m.chi_value <= chi(m.tau * 0.99) + 1e-12);
    }

    #[test]
    fn posynomial_finds_known_critical_points() {
        // {N,SW,S,SE}: critical point (1, sqrt(3)), P = 2 sqrt(3)
        let vs = vec![vec![0, 1], vec![-1, -1], vec![0, -1], vec![1, -1]];
        let w = vec![1.0; 4];
        let m = minimize_posynomial(&vs, &w, Some(true));
        assert!(m.converged);
        assert!((m.point[0] - 1.0).abs() < 1e-9);
        assert!((m.point[1] - 3f64.sqrt()).abs() < 1e-9);
        assert!((m.value - 2.0 * 3f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn posynomial_detects_escape() {
        // {NE,SW,S}: infimum 2 approached as y -> infinity along xy = 1
        let vs = vec![vec![1, 1], vec![-1, -1], vec![0, -1]];
        let w = vec![1.0; 3];
        let exists = origin_in_relint(2, &vs);
        assert_eq!(exists, Some(false));
        let m = minimize_posynomial(&vs, &w, exists);
        assert!(!m.converged);
    }

    #[test]
    fn relint_test_agrees_with_geometry() {
        // square spans the origin
        assert_eq!(
            origin_in_relint(2, &[vec![0, 1], vec![1, 0], vec![0, -1], vec![-1, 0]]),
            Some(true)
        );
        // all steps in a half-plane through 0 with some strictly inside
        assert_eq!(
            origin_in_relint(2, &[vec![1, 1], vec![0, 1], vec![1, -1]]),
            Some(false)
        );
        // opposite pair: origin in relative interior of a segment
        assert_eq!(origin_in_relint(2, &[vec![1, 1], vec![-1, -1]]), Some(true));
        // one vector only
        assert_eq!(origin_in_relint(2, &[vec![1, 0]]), Some(false));
        // 3D: all z-components <= 0 and one negative
        assert_eq!(
            origin_in_relint(
                3,
                &[
                    vec![1, 0, 0],
                    vec![-1, 0, 0],
                    vec![0, 1, 0],
                    vec![0, -1, 0],
                    vec![0, 0, -1]
                ]
            ),
            Some(false)
        );
        // 3D symmetric: interior
        assert_eq!(
            origin_in_relint(
                3,
                &[
                    vec![1, 0, 0],
                    vec![-1, 0, 0],
                    vec![0, 1, 0],
                    vec![0, -1, 0],
                    vec![0, 0, 1],
                    vec![0, 0, -1]
                ]
            ),
            Some(true)
        );
        // dimension 4 not decided exactly
        assert_eq!(origin_in_relint(4, &[vec![1, 0, 0, 0]]), None);
    }
}
