//! Exact walk counting by dynamic programming over positions, with
//! arbitrary-precision integers, plus empirical growth estimation.
//!
//! These counts are the independent oracle for every analytic bound in the
//! library: orthant counts are supermultiplicative, so each q_n^{1/n} is a
//! rigorous lower bound on the growth constant, and any valid upper bound
//! must dominate the whole sequence.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::format::format_sig;
use crate::stepset::StepSet;

/// Default cap on the number of DP states.
pub const DEFAULT_STATE_CAP: usize = 1 << 26;
/// Default series length for 2D models.
pub const DEFAULT_NMAX_2D: usize = 24;
/// Default series length for models in dimension three and higher.
pub const DEFAULT_NMAX_ND: usize = 16;

/// Which region a counting series was computed in.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Region {
    Orthant { dimension: usize },
    Halfspace { normal: Vec<i64> },
    Excursion { dimension: usize },
}

impl std::fmt::Display for Region {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Region::Orthant { dimension } => write!(f, "orthant-{dimension}"),
            Region::Halfspace { normal } => write!(
                f,
                "halfspace({})",
                normal
                    .iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            ),
            Region::Excursion { dimension } => write!(f, "excursion-{dimension}"),
        }
    }
}

/// Exact counts q_0..q_n for one model and region.
#[derive(Debug, Clone)]
pub struct CountSeries {
    pub region: Region,
    pub counts: Vec<BigUint>,
    pub stepset: StepSet,
}

impl CountSeries {
    pub fn n_max(&self) -> usize {
        self.counts.len() - 1
    }

    /// max over n >= 1 of q_n^{1/n}; None when every count past q_0 is zero.
    pub fn fekete_floor(&self) -> Option<f64> {
        let mut best: Option<f64> = None;
        for (n, q) in self.counts.iter().enumerate().skip(1) {
            if q.is_zero() {
                continue;
            }
            let root = (ln_biguint(q) / n as f64).exp();
            best = Some(best.map_or(root, |b: f64| b.max(root)));
        }
        best
    }

    /// CSV rows `n,count,count^{1/n}`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,count,nth_root\n");
        for (n, q) in self.counts.iter().enumerate() {
            let root = if n == 0 || q.is_zero() {
                String::from("0")
            } else {
                format_sig((ln_biguint(q) / n as f64).exp(), 12)
            };
            out.push_str(&format!("{n},{q},{root}\n"));
        }
        out
    }
}

/// Natural log of a nonzero big integer, stable for values beyond f64 range.
pub(crate) fn ln_biguint(q: &BigUint) -> f64 {
    debug_assert!(!q.is_zero());
    if let Some(f) = q.to_f64() {
        if f.is_finite() {
            return f.ln();
        }
    }
    let bits = q.bits();
    let top = q >> (bits.saturating_sub(64));
    let mant = top.to_f64().unwrap_or(f64::MAX);
    mant.ln() + (bits.saturating_sub(64)) as f64 * std::f64::consts::LN_2
}

/// Exact counts of orthant walks of length 0..=n_max.
pub fn count_orthant(s: &StepSet, n_max: usize) -> Result<CountSeries> {
    count_orthant_capped(s, n_max, DEFAULT_STATE_CAP)
}

pub fn count_orthant_capped(s: &StepSet, n_max: usize, cap: usize) -> Result<CountSeries> {
    let counts = if s.dimension() <= 2 {
        orthant_dense(s, n_max, cap, false)?
    } else {
        orthant_sparse(s, n_max, cap, false)?
    };
    Ok(CountSeries {
        region: Region::Orthant {
            dimension: s.dimension(),
        },
        counts,
        stepset: s.clone(),
    })
}

/// Exact counts of excursions: orthant walks ending at the origin.
pub fn count_excursions(s: &StepSet, n_max: usize) -> Result<CountSeries> {
    count_excursions_capped(s, n_max, DEFAULT_STATE_CAP)
}

pub fn count_excursions_capped(s: &StepSet, n_max: usize, cap: usize) -> Result<CountSeries> {
    let counts = if s.dimension() <= 2 {
        orthant_dense(s, n_max, cap, true)?
    } else {
        orthant_sparse(s, n_max, cap, true)?
    };
    Ok(CountSeries {
        region: Region::Excursion {
            dimension: s.dimension(),
        },
        counts,
        stepset: s.clone(),
    })
}

/// Exact counts of walks whose running inner product with an integer normal
/// stays nonnegative. The one-dimensional reduction of a half-space model.
pub fn count_halfspace(s: &StepSet, normal: &[i64], n_max: usize) -> Result<CountSeries> {
    count_halfspace_capped(s, normal, n_max, DEFAULT_STATE_CAP)
}

pub fn count_halfspace_capped(
    s: &StepSet,
    normal: &[i64],
    n_max: usize,
    cap: usize,
) -> Result<CountSeries> {
    if normal.len() != s.dimension() {
        return Err(Error::InvalidNormal {
            reason: format!(
                "normal has {} components, step set has dimension {}",
                normal.len(),
                s.dimension()
            ),
        });
    }
    if normal.iter().all(|&c| c == 0) || normal.iter().any(|&c| c < 0) {
        return Err(Error::InvalidNormal {
            reason: "integer normal must be nonzero with nonnegative components".into(),
        });
    }
    // project to integer heights
    let proj: Vec<(i64, u32)> = s
        .steps()
        .iter()
        .map(|st| {
            (
                st.vector.iter().zip(normal).map(|(&c, &n)| c * n).sum(),
                st.multiplicity,
            )
        })
        .collect();
    let max_up: i64 = proj.iter().map(|&(a, _)| a.max(0)).max().unwrap_or(0);
    let height_bound = (n_max as i64 * max_up) as usize + 1;
    if height_bound > cap {
        return Err(Error::StateSpaceExceeded {
            required: height_bound,
            cap,
        });
    }
    let mut cur = vec![BigUint::zero(); height_bound];
    cur[0] = BigUint::from(1u32);
    let mut counts = Vec::with_capacity(n_max + 1);
    counts.push(BigUint::from(1u32));
    let mut live = 0usize; // highest occupied height
    for _ in 0..n_max {
        let mut next = vec![BigUint::zero(); height_bound];
        let mut new_live = 0usize;
        for (h, count) in cur.iter().enumerate().take(live + 1) {
            if count.is_zero() {
                continue;
            }
            for &(a, m) in &proj {
                let nh = h as i64 + a;
                if nh < 0 {
                    continue;
                }
                let nh = nh as usize;
                if nh >= height_bound {
                    continue; // unreachable within n_max by construction
                }
                next[nh] += count * m;
                new_live = new_live.max(nh);
            }
        }
        counts.push(next.iter().sum());
        cur = next;
        live = new_live;
    }
    Ok(CountSeries {
        region: Region::Halfspace {
            normal: normal.to_vec(),
        },
        counts,
        stepset: s.clone(),
    })
}

fn orthant_dense(
    s: &StepSet,
    n_max: usize,
    cap: usize,
    excursions: bool,
) -> Result<Vec<BigUint>> {
    let d = s.dimension();
    // per-coordinate reachable box: positions stay in [0, n * max positive step]
    let mut box_dims = vec![1usize; d];
    for (k, dim) in box_dims.iter_mut().enumerate() {
        let max_up = s
            .steps()
            .iter()
            .map(|st| st.vector[k].max(0))
            .max()
            .unwrap_or(0);
        *dim = (n_max as i64 * max_up) as usize + 1;
    }
    let states: usize = box_dims.iter().try_fold(1usize, |acc, &b| {
        acc.checked_mul(b).filter(|&v| v <= cap)
    })
    .ok_or(Error::StateSpaceExceeded {
        required: box_dims.iter().product::<usize>(),
        cap,
    })?;
    let strides: Vec<usize> = {
        let mut st = vec![1usize; d];
        for k in (0..d.saturating_sub(1)).rev() {
            st[k] = st[k + 1] * box_dims[k + 1];
        }
        st
    };
    let offsets: Vec<(i64, Vec<i64>, u32)> = s
        .steps()
        .iter()
        .map(|st| {
            let off: i64 = st
                .vector
                .iter()
                .zip(&strides)
                .map(|(&c, &str_)| c * str_ as i64)
                .sum();
            (off, st.vector.clone(), st.multiplicity)
        })
        .collect();
    let decode = |idx: usize| -> Vec<i64> {
        let mut rem = idx;
        (0..d)
            .map(|k| {
                let c = rem / strides[k];
                rem %= strides[k];
                c as i64
            })
            .collect()
    };
    let mut cur = vec![BigUint::zero(); states];
    cur[0] = BigUint::from(1u32);
    let mut counts = Vec::with_capacity(n_max + 1);
    counts.push(BigUint::from(1u32));
    for _ in 0..n_max {
        let mut next = vec![BigUint::zero(); states];
        for (idx, count) in cur.iter().enumerate() {
            if count.is_zero() {
                continue;
            }
            let pos = decode(idx);
            for (off, vector, mult) in &offsets {
                let valid = pos
                    .iter()
                    .zip(vector)
                    .enumerate()
                    .all(|(k, (&p, &v))| p + v >= 0 && ((p + v) as usize) < box_dims[k]);
                if !valid {
                    continue;
                }
                let nidx = (idx as i64 + off) as usize;
                next[nidx] += count * *mult;
            }
        }
        counts.push(if excursions {
            next[0].clone()
        } else {
            next.iter().sum()
        });
        cur = next;
    }
    Ok(counts)
}

fn orthant_sparse(
    s: &StepSet,
    n_max: usize,
    cap: usize,
    excursions: bool,
) -> Result<Vec<BigUint>> {
    let d = s.dimension();
    let max_coord = s.max_abs_coordinate().max(1) as usize;
    let estimate = (n_max * max_coord + 1)
        .checked_pow(d as u32)
        .unwrap_or(usize::MAX);
    if estimate > cap {
        return Err(Error::StateSpaceExceeded {
            required: estimate,
            cap,
        });
    }
    let mut cur: HashMap<Vec<i64>, BigUint> = HashMap::new();
    cur.insert(vec![0; d], BigUint::from(1u32));
    let mut counts = Vec::with_capacity(n_max + 1);
    counts.push(BigUint::from(1u32));
    let origin = vec![0i64; d];
    for _ in 0..n_max {
        let mut next: HashMap<Vec<i64>, BigUint> = HashMap::with_capacity(cur.len() * 2);
        for (pos, c) in &cur {
            for st in s.steps() {
                let q: Vec<i64> = pos.iter().zip(&st.vector).map(|(&a, &b)| a + b).collect();
                if q.iter().any(|&x| x < 0) {
                    continue;
                }
                *next.entry(q).or_default() += c * st.multiplicity;
            }
        }
        if next.len() > cap {
            return Err(Error::StateSpaceExceeded {
                required: next.len(),
                cap,
            });
        }
        counts.push(if excursions {
            next.get(&origin).cloned().unwrap_or_default()
        } else {
            next.values().sum()
        });
        cur = next;
    }
    Ok(counts)
}

/// Least-squares fit of log q_n against n, log n and a constant.
#[derive(Debug, Clone, Serialize)]
pub struct GrowthEstimate {
    /// e^{logK}, the fitted growth constant.
    pub estimate: f64,
    pub log_k: f64,
    /// The fitted polynomial-correction exponent.
    pub alpha: f64,
    pub intercept: f64,
    /// max_n q_n^{1/n}, a rigorous lower bound by supermultiplicativity.
    pub fekete_floor: f64,
    /// Inclusive index range the fit used.
    pub window: (usize, usize),
}

/// Fits log q_n ~ n logK + alpha log n + c over the tail of the series.
///
/// The window is the last half of the nonzero indices, never fewer than 12 of
/// them; series with vanishing odd terms fall back to the surviving
/// (even-index) subsequence automatically.
pub fn estimate_growth(series: &CountSeries) -> Result<GrowthEstimate> {
    let nonzero: Vec<usize> = (1..series.counts.len())
        .filter(|&n| !series.counts[n].is_zero())
        .collect();
    if nonzero.len() < 12 {
        return Err(Error::InsufficientData {
            reason: format!(
                "need at least 12 nonzero terms past q_0, found {}",
                nonzero.len()
            ),
        });
    }
    let take = nonzero.len().div_ceil(2).max(12);
    let window = &nonzero[nonzero.len() - take..];

    // normal equations for the 3-parameter linear model
    let mut ata = [[0.0f64; 3]; 3];
    let mut atb = [0.0f64; 3];
    for &n in window {
        let row = [n as f64, (n as f64).ln(), 1.0];
        let y = ln_biguint(&series.counts[n]);
        for i in 0..3 {
            for j in 0..3 {
                ata[i][j] += row[i] * row[j];
            }
            atb[i] += row[i] * y;
        }
    }
    let sol = solve3(&mut ata, &mut atb).ok_or(Error::InsufficientData {
        reason: "degenerate fit window".into(),
    })?;
    let fekete_floor = series.fekete_floor().ok_or(Error::InsufficientData {
        reason: "all counts are zero".into(),
    })?;
    Ok(GrowthEstimate {
        estimate: sol[0].exp(),
        log_k: sol[0],
        alpha: sol[1],
        intercept: sol[2],
        fekete_floor,
        window: (window[0], *window.last().unwrap()),
    })
}

#[allow(clippy::needless_range_loop)] // row operations touch two rows at once
fn solve3(a: &mut [[f64; 3]; 3], b: &mut [f64; 3]) -> Option<[f64; 3]> {
    for col in 0..3 {
        let pivot = (col..3).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[pivot][col].abs() < 1e-300 {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..3 {
            let f = a[row][col] / a[col][col];
            for k in col..3 {
                a[row][k] -= f * a[col][k];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = [0.0f64; 3];
    for row in (0..3).rev() {
        let mut sum = b[row];
        for k in row + 1..3 {
            sum -= a[row][k] * x[k];
        }
        x[row] = sum / a[row][row];
    }
    Some(x)
}
