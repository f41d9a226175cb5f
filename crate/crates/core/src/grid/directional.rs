//! Exponentially damped distribution by integration over directions.
//!
//! With damping `e^{−ε|ξ|}` the radial integral has a closed form. Writing
//! `ξ = t u` with `|u| = 1`,
//!
//! `W_ε(a) = (2π)^{−n} ∫_{S^{n−1}} du Σ_c tr(ρ P_c(u)) (n−1)! / (ε − i(α_c(u) − u·a))^n`,
//!
//! where `α_c(u)` are the eigenvalues of `u·A`. Only `n ≤ 2` is supported;
//! the circle is sampled at equally spaced angles, which is spectrally
//! accurate for the periodic integrand.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use super::{aliasing_warnings, check_system, GridSpec, WignerGrid};
use crate::error::{Result, WignerError};
use crate::linalg::{DensityMatrix, OperatorTuple};

/// Spectral data of `u·A` for one direction: `(weight, [(α_c, tr ρP_c)])`.
type DirectionData = (f64, Vec<f64>, Vec<(f64, Complex64)>);

fn direction_table(a: &OperatorTuple, rho: &DensityMatrix, directions: usize) -> Result<Vec<DirectionData>> {
    let dirs: Vec<(f64, Vec<f64>)> = match a.n() {
        1 => vec![(1.0, vec![1.0]), (1.0, vec![-1.0])],
        2 => {
            if directions < 8 {
                return Err(WignerError::InvalidArgument("need at least 8 directions".into()));
            }
            let w = 2.0 * PI / directions as f64;
            (0..directions)
                .map(|j| {
                    let phi = w * j as f64;
                    (w, vec![phi.cos(), phi.sin()])
                })
                .collect()
        }
        n => {
            return Err(WignerError::InvalidArgument(format!(
                "directional route supports n ≤ 2, got n = {n}"
            )))
        }
    };
    dirs.into_par_iter()
        .map(|(w, u)| {
            let measure = a.pencil(&u)?.spectral_measure(rho.matrix());
            Ok((w, u, measure))
        })
        .collect()
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

fn value_at(table: &[DirectionData], n: usize, eps: f64, p: &[f64]) -> f64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for (w, u, measure) in table {
        let proj: f64 = u.iter().zip(p).map(|(x, y)| x * y).sum();
        for (alpha, weight) in measure {
            let z = Complex64::new(eps, -(alpha - proj));
            acc += weight * *w / z.powi(n as i32);
        }
    }
    factorial(n - 1) / (2.0 * PI).powi(n as i32) * acc.re
}

/// `W_ε` with damping `e^{−ε|ξ|}` evaluated at the cell centers of `spec`
/// (`spec.epsilon` is the damping rate).
pub fn compute_wigner_grid_exponential(
    a: &OperatorTuple,
    rho: &DensityMatrix,
    spec: &GridSpec,
    directions: usize,
) -> Result<WignerGrid> {
    check_system(a, rho, spec)?;
    let table = direction_table(a, rho, directions)?;
    let (n, eps) = (spec.n(), spec.epsilon);
    let values: Vec<f64> = (0..spec.len())
        .into_par_iter()
        .map(|flat| value_at(&table, n, eps, &spec.point(flat)))
        .collect();
    let warnings = aliasing_warnings(a, spec, 10.0 * eps)?;
    Ok(WignerGrid { spec: spec.clone(), values, residual_imag: 0.0, warnings })
}

/// `W_ε` with exponential damping at arbitrary points.
pub fn wigner_exponential_at(
    a: &OperatorTuple,
    rho: &DensityMatrix,
    points: &[Vec<f64>],
    epsilon: f64,
    directions: usize,
) -> Result<Vec<f64>> {
    if let Some(p) = points.iter().find(|p| p.len() != a.n()) {
        return Err(WignerError::DimensionMismatch { expected: a.n(), found: p.len() });
    }
    if !(epsilon > 0.0) {
        return Err(WignerError::InvalidArgument("epsilon must be positive".into()));
    }
    let table = direction_table(a, rho, directions)?;
    Ok(points.par_iter().map(|p| value_at(&table, a.n(), epsilon, p)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn one_dimensional_lorentzians() {
        // n = 1: W_ε is a sum of Lorentzians ε/π / (ε² + (a − α)²).
        let a = OperatorTuple::from_real(2, &[&[1.0, 0.0, 0.0, -0.5]]).unwrap();
        let rho = DensityMatrix::diagonal(&[0.3, 0.7]).unwrap();
        let eps = 0.05;
        let spec = GridSpec::cube(1, -2.0, 2.0, 64, eps).unwrap();
        let grid = compute_wigner_grid_exponential(&a, &rho, &spec, 0).unwrap();
        for (j, v) in grid.values.iter().enumerate() {
            let x = spec.coordinate(0, j);
            let lor = |c: f64| eps / PI / (eps * eps + (x - c).powi(2));
            let exact = 0.3 * lor(1.0) + 0.7 * lor(-0.5);
            assert!((v - exact).abs() < 1e-12);
        }
    }

    #[test]
    fn higher_n_rejected() {
        let ex = catalog::make("pauli3").unwrap();
        let spec = GridSpec::cube(3, -1.0, 1.0, 8, 0.1).unwrap();
        assert!(compute_wigner_grid_exponential(&ex.tuple, &ex.state, &spec, 64).is_err());
    }

    #[test]
    fn point_evaluation_matches_grid() {
        let ex = catalog::make("pauli2").unwrap();
        let spec = GridSpec::cube(2, -1.0, 1.0, 8, 0.05).unwrap();
        let grid = compute_wigner_grid_exponential(&ex.tuple, &ex.state, &spec, 256).unwrap();
        let p = spec.point(19);
        let v = wigner_exponential_at(&ex.tuple, &ex.state, &[p], 0.05, 256).unwrap();
        assert!((v[0] - grid.values[19]).abs() < 1e-12);
    }
}
