//! Amoeba sampling: numerically solve `g_tau = 0` along a coordinate grid
//! and push the roots through the coordinatewise log-modulus map
//! `Log_tau(x) = (1/|log tau|)(log|x_1|, ..., log|x_k|)`.

use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use super::{TropicalError, WeightedPointSet};
use crate::Q;

/// Residual bound certifying a numeric root.
const ROOT_RESIDUAL: f64 = 1e-10;

/// Sweep specification for the first coordinate (2D sampling only).
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    /// Range of the swept `Log_tau` coordinate.
    pub lo: f64,
    pub hi: f64,
    /// Number of sweep positions.
    pub steps: usize,
    /// Number of phases of the swept complex coordinate per position.
    pub phases: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec { lo: -3.0, hi: 3.0, steps: 50, phases: 4 }
    }
}

/// Log-modulus images of certified roots of `g_tau`.
#[derive(Debug, Clone, PartialEq)]
pub struct AmoebaSample {
    pub points: Vec<Vec<f64>>,
    /// Grid lines or roots dropped for failing the residual certificate.
    pub skipped: usize,
    pub tau: Q,
}

/// Sample the amoeba of `g_tau` for `tau` in (0,1); supports 1 and 2
/// variables. Roots failing the residual certificate are skipped and
/// counted.
pub fn amoeba_sample(
    w: &WeightedPointSet,
    tau: &Q,
    grid: &GridSpec,
) -> Result<AmoebaSample, TropicalError> {
    let tau_f = tau.to_f64().unwrap_or(0.0);
    assert!(tau_f > 0.0 && tau_f < 1.0, "tau must lie in (0,1)");
    let log_tau = tau_f.ln(); // negative
    match w.dim() {
        1 => sample_1d(w, tau, log_tau),
        2 => sample_2d(w, tau, log_tau, grid),
        d => Err(TropicalError::UnsupportedDimension(d)),
    }
}

fn term_weight(w: &WeightedPointSet, i: usize, log_tau: f64) -> f64 {
    let c = w.coeffs[i].to_f64().unwrap();
    let rho = w.rho[i].to_f64().unwrap();
    c * (rho * log_tau).exp()
}

fn sample_1d(w: &WeightedPointSet, tau: &Q, log_tau: f64) -> Result<AmoebaSample, TropicalError> {
    let min_e = w.points.iter().map(|p| p[0]).min().unwrap();
    let max_e = w.points.iter().map(|p| p[0]).max().unwrap();
    let deg = (max_e - min_e) as usize;
    let mut coeffs = vec![Complex64::ZERO; deg + 1];
    for i in 0..w.points.len() {
        coeffs[(w.points[i][0] - min_e) as usize] += Complex64::from(term_weight(w, i, log_tau));
    }
    let eval = |x: Complex64| -> Complex64 {
        (0..w.points.len())
            .map(|i| Complex64::from(term_weight(w, i, log_tau)) * x.powi(w.points[i][0] as i32))
            .sum()
    };
    let scale: f64 = coeffs.iter().map(Complex64::norm).sum();
    let mut points = Vec::new();
    let mut skipped = 0;
    for root in poly_roots(&coeffs) {
        if root.norm() < 1e-12 {
            continue; // the origin is outside the torus; not an amoeba point
        }
        if eval(root).norm() > ROOT_RESIDUAL * scale.max(1.0) {
            skipped += 1;
            continue;
        }
        points.push(vec![root.norm().ln() / log_tau.abs()]);
    }
    Ok(AmoebaSample { points, skipped, tau: tau.clone() })
}

fn sample_2d(
    w: &WeightedPointSet,
    tau: &Q,
    log_tau: f64,
    grid: &GridSpec,
) -> Result<AmoebaSample, TropicalError> {
    let min_e2 = w.points.iter().map(|p| p[1]).min().unwrap();
    let max_e2 = w.points.iter().map(|p| p[1]).max().unwrap();
    let deg = (max_e2 - min_e2) as usize;
    let mut points = Vec::new();
    let mut skipped = 0;
    for s in 0..grid.steps {
        let xi1 = if grid.steps <= 1 {
            grid.lo
        } else {
            grid.lo + (grid.hi - grid.lo) * s as f64 / (grid.steps - 1) as f64
        };
        for ph in 0..grid.phases.max(1) {
            let theta = std::f64::consts::TAU * ph as f64 / grid.phases.max(1) as f64;
            // Sweep coordinate with |x1| = tau^{-xi1} so that Log_tau(x1) = xi1.
            let r = (-xi1 * log_tau.abs()).exp();
            let x1 = Complex64::from_polar(r, theta);
            let mut coeffs = vec![Complex64::ZERO; deg + 1];
            for i in 0..w.points.len() {
                coeffs[(w.points[i][1] - min_e2) as usize] +=
                    Complex64::from(term_weight(w, i, log_tau)) * x1.powi(w.points[i][0] as i32);
            }
            let scale: f64 = coeffs.iter().map(Complex64::norm).sum();
            if scale < 1e-300 {
                skipped += 1;
                continue;
            }
            let eval = |x2: Complex64| -> Complex64 {
                (0..w.points.len())
                    .map(|i| {
                        Complex64::from(term_weight(w, i, log_tau))
                            * x1.powi(w.points[i][0] as i32)
                            * x2.powi(w.points[i][1] as i32)
                    })
                    .sum()
            };
            for root in poly_roots(&coeffs) {
                if root.norm() < 1e-12 {
                    continue;
                }
                if eval(root).norm() > ROOT_RESIDUAL * scale.max(1.0) {
                    skipped += 1;
                    continue;
                }
                points.push(vec![xi1, root.norm().ln() / log_tau.abs()]);
            }
        }
    }
    Ok(AmoebaSample { points, skipped, tau: tau.clone() })
}

/// All complex roots of a dense polynomial (ascending coefficients) by
/// Durand–Kerner iteration with Newton polish.
pub fn poly_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    // Trim leading (high-degree) zeros.
    let mut c = coeffs.to_vec();
    while c.len() > 1 && c.last().unwrap().norm() < 1e-300 {
        c.pop();
    }
    let deg = c.len() - 1;
    if deg == 0 {
        return Vec::new();
    }
    let lead = c[deg];
    let monic: Vec<Complex64> = c.iter().map(|x| x / lead).collect();
    let eval = |x: Complex64| -> Complex64 {
        monic.iter().rev().fold(Complex64::ZERO, |acc, &co| acc * x + co)
    };
    let deriv = |x: Complex64| -> Complex64 {
        (1..=deg)
            .rev()
            .fold(Complex64::ZERO, |acc, k| acc * x + monic[k] * k as f64)
    };
    let mut roots: Vec<Complex64> = (0..deg)
        .map(|k| Complex64::from_polar(1.0 + 0.1 * k as f64, 0.7 + 2.1 * k as f64))
        .collect();
    for _ in 0..300 {
        let mut delta: f64 = 0.0;
        for i in 0..deg {
            let mut denom = Complex64::ONE;
            for j in 0..deg {
                if i != j {
                    denom *= roots[i] - roots[j];
                }
            }
            if denom.norm() < 1e-300 {
                continue;
            }
            let step = eval(roots[i]) / denom;
            roots[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-14 {
            break;
        }
    }
    // Newton polish.
    for r in roots.iter_mut() {
        for _ in 0..4 {
            let d = deriv(*r);
            if d.norm() < 1e-300 {
                break;
            }
            *r -= eval(*r) / d;
        }
    }
    roots
}
