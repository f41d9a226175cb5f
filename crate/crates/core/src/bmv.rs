//! Trace positivity of Weyl-ordered mixed moments of positive operators.
//!
//! For two positive semidefinite matrices every `tr M_W^{(n,m)}(A, B)` is
//! nonnegative. Three operators do not share that property: rank-one
//! projections onto three real unit vectors at mutual angles `2π/3` give a
//! negative symmetrized triple product.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Result, WignerError};
use crate::linalg::{trace, ComplexMatrix, Hermitian, OperatorTuple};
use crate::moments::weyl_moment;

/// Eigenvalues down to `−PSD_TOLERANCE` count as nonnegative.
pub const PSD_TOLERANCE: f64 = 1e-9;

fn check_psd(m: &Hermitian) -> Result<()> {
    let min = m.eigen()?.eigenvalues()[0];
    if min < -PSD_TOLERANCE {
        return Err(WignerError::NotPsd { min_eigenvalue: min });
    }
    Ok(())
}

/// `tr M_W^{(n,m)}(A, B)` for positive semidefinite `A`, `B`.
pub fn bmv_mixed_moment(a: &Hermitian, b: &Hermitian, n: u32, m: u32) -> Result<f64> {
    check_psd(a)?;
    check_psd(b)?;
    let pair = OperatorTuple::new(vec![a.clone(), b.clone()])?;
    Ok(trace(weyl_moment(&pair, &[n, m])?.matrix()).re)
}

/// `tr(ABC + CBA)`.
pub fn bmv_triple_value(a: &ComplexMatrix, b: &ComplexMatrix, c: &ComplexMatrix) -> f64 {
    trace(&(a * b * c + c * b * a)).re
}

/// Projection onto `cos θ e_1 + sin θ e_2`.
pub fn real_line_projection(theta: f64) -> ComplexMatrix {
    let (s, c) = theta.sin_cos();
    ComplexMatrix::from_fn(2, 2, |i, j| {
        let v = [c, s];
        Complex64::new(v[i] * v[j], 0.0)
    })
}

/// The three projections onto `φ_k = cos(2πk/3) e_1 + sin(2πk/3) e_2`.
pub fn triple_projections() -> [ComplexMatrix; 3] {
    [1, 2, 3].map(|k| real_line_projection(2.0 * PI * k as f64 / 3.0))
}

/// `tr(ABC + CBA)` for the triple of [`triple_projections`]; equals `−1/4`.
pub fn bmv_triple_counterexample() -> f64 {
    let [a, b, c] = triple_projections();
    bmv_triple_value(&a, &b, &c)
}
