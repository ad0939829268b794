#![allow(dead_code)] // each integration target uses a different subset

//! Brute-force oracles shared by the integration suites. These enumerate
//! every step sequence explicitly and must stay independent of the DP code
//! they check.

use num_bigint::BigUint;
use walkbound::StepSet;

/// Expands multiplicities into a flat list of step vectors.
pub fn flat_steps(s: &StepSet) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for st in s.steps() {
        for _ in 0..st.multiplicity {
            out.push(st.vector.clone());
        }
    }
    out
}

/// Counts walks of each length up to n_max by trying every step sequence.
/// `keep` receives each prefix position and decides validity.
pub fn brute_force_counts(
    s: &StepSet,
    n_max: usize,
    keep: impl Fn(&[i64]) -> bool + Copy,
    end_at_origin: bool,
) -> Vec<BigUint> {
    let steps = flat_steps(s);
    let d = s.dimension();
    let mut counts = vec![BigUint::default(); n_max + 1];
    counts[0] = BigUint::from(1u32);
    // depth-first over sequences, extending positions one step at a time
    fn recurse(
        steps: &[Vec<i64>],
        pos: &mut Vec<i64>,
        depth: usize,
        n_max: usize,
        keep: impl Fn(&[i64]) -> bool + Copy,
        end_at_origin: bool,
        counts: &mut [BigUint],
    ) {
        if depth == n_max {
            return;
        }
        for step in steps {
            for (p, c) in pos.iter_mut().zip(step) {
                *p += c;
            }
            if keep(pos) {
                if !end_at_origin || pos.iter().all(|&c| c == 0) {
                    counts[depth + 1] += 1u32;
                }
                recurse(steps, pos, depth + 1, n_max, keep, end_at_origin, counts);
            }
            for (p, c) in pos.iter_mut().zip(step) {
                *p -= c;
            }
        }
    }
    let mut pos = vec![0i64; d];
    if end_at_origin {
        counts[0] = BigUint::from(1u32);
    }
    recurse(
        &steps,
        &mut pos,
        0,
        n_max,
        keep,
        end_at_origin,
        &mut counts,
    );
    counts
}

/// Orthant walks by brute force.
pub fn brute_orthant(s: &StepSet, n_max: usize) -> Vec<BigUint> {
    brute_force_counts(s, n_max, |p| p.iter().all(|&c| c >= 0), false)
}

/// Excursions by brute force.
pub fn brute_excursions(s: &StepSet, n_max: usize) -> Vec<BigUint> {
    brute_force_counts(s, n_max, |p| p.iter().all(|&c| c >= 0), true)
}

/// Half-space walks by brute force.
pub fn brute_halfspace(s: &StepSet, normal: &[i64], n_max: usize) -> Vec<BigUint> {
    brute_force_counts(
        s,
        n_max,
        |p| p.iter().zip(normal).map(|(&a, &b)| a * b).sum::<i64>() >= 0,
        false,
    )
}

/// Golden-section minimization of chi(u) over u > 0, independent of the
/// Newton path used by the library.
pub fn golden_chi_min(entries: &[(f64, u32)]) -> f64 {
    let chi = |u: f64| -> f64 {
        entries
            .iter()
            .map(|&(a, m)| m as f64 * u.powf(a))
            .sum::<f64>()
    };
    let (mut lo, mut hi) = (1e-9f64, 1e9f64);
    // shrink on the log scale first
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
