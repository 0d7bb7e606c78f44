//! Durand-Kerner iteration for real-coefficient polynomials on the complex slice.

use num_complex::Complex64;

use crate::error::{Error, Result};

pub(crate) const MAX_ITERATIONS: usize = 500;
pub(crate) const RESIDUAL_TOL: f64 = 1e-12;
pub(crate) const CLUSTER_RADIUS: f64 = 1e-6;

/// A root together with how many iterates collapsed onto it.
#[derive(Clone, Copy, Debug)]
pub(crate) struct ClusteredRoot {
    pub value: Complex64,
    pub multiplicity: usize,
}

fn horner(coeffs: &[f64], z: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

/// `sum |c_k| |z|^k`, the natural scale for a residual at `z`.
fn magnitude_scale(coeffs: &[f64], z: Complex64) -> f64 {
    let r = z.norm();
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * r + c.abs())
}

/// All complex roots of `sum coeffs[n] z^n` (coefficients low to high, last nonzero).
pub(crate) fn durand_kerner(coeffs: &[f64]) -> Result<Vec<Complex64>> {
    let degree = coeffs.len().saturating_sub(1);
    if degree == 0 {
        return Ok(Vec::new());
    }
    let lead = coeffs[degree];
    let monic: Vec<f64> = coeffs.iter().map(|c| c / lead).collect();

    // Cauchy bound on root moduli sets the radius of the initial guesses.
    let bound = 1.0 + monic[..degree].iter().fold(0.0_f64, |m, c| m.max(c.abs()));
    // off-axis starting angle keeps conjugate roots from sharing an orbit
    let mut z: Vec<Complex64> = (0..degree)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * k as f64 / degree as f64 + 0.4;
            Complex64::from_polar(0.5 * bound, angle)
        })
        .collect();

    let converged = |z: &[Complex64]| {
        z.iter()
            .all(|&zi| horner(&monic, zi).norm() <= RESIDUAL_TOL * magnitude_scale(&monic, zi))
    };

    for _ in 0..MAX_ITERATIONS {
        let mut max_step = 0.0_f64;
        for i in 0..degree {
            let zi = z[i];
            let denom = z
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(Complex64::new(1.0, 0.0), |acc, (_, &zj)| acc * (zi - zj));
            if denom.norm() == 0.0 {
                // coincident iterates: nudge apart
                z[i] = zi + Complex64::new(1e-10, 1e-10);
                max_step = f64::INFINITY;
                continue;
            }
            let step = horner(&monic, zi) / denom;
            z[i] = zi - step;
            max_step = max_step.max(step.norm() / (1.0 + zi.norm()));
        }
        // keep going past the residual test so multiple roots tighten up
        if max_step <= 1e-15 {
            break;
        }
    }

    if !converged(&z) {
        let residual = z
            .iter()
            .map(|&zi| horner(&monic, zi).norm() / magnitude_scale(&monic, zi).max(f64::MIN_POSITIVE))
            .fold(0.0, f64::max);
        return Err(Error::NonConvergence { iterations: MAX_ITERATIONS, residual });
    }
    Ok(z)
}

/// Groups roots lying within `CLUSTER_RADIUS` of a cluster's running mean.
pub(crate) fn cluster(roots: &[Complex64]) -> Vec<ClusteredRoot> {
    let mut clusters: Vec<(Complex64, usize)> = Vec::new();
    for &r in roots {
        match clusters
            .iter_mut()
            .find(|(center, n)| (*center / *n as f64 - r).norm() <= CLUSTER_RADIUS)
        {
            Some((sum, n)) => {
                *sum += r;
                *n += 1;
            }
            None => clusters.push((r, 1)),
        }
    }
    clusters
        .into_iter()
        .map(|(sum, n)| ClusteredRoot { value: sum / n as f64, multiplicity: n })
        .collect()
}
