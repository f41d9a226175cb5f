//! Characteristic function `Ŵ_ρ(ξ) = tr ρ e^{iξ·A}`.
//!
//! Evaluated through the eigendecomposition of `ξ·A` rather than a matrix
//! exponential: `Ŵ_ρ(ξ) = Σ_μ e^{iα_μ(ξ)} tr(ρ P_μ(ξ))`. One decomposition
//! also serves every radial multiple `tξ`, `t > 0`.

use num_complex::Complex64;

use crate::error::{Result, WignerError};
use crate::linalg::{max_abs, ComplexMatrix, DensityMatrix, OperatorTuple, PencilEigen};

/// A sample `(ξ, Ŵ_ρ(ξ))`.
#[derive(Debug, Clone, PartialEq)]
pub struct CharSample {
    pub xi: Vec<f64>,
    pub value: Complex64,
}

pub fn char_function(a: &OperatorTuple, rho: &DensityMatrix, xi: &[f64]) -> Result<Complex64> {
    char_function_of(a, rho.matrix(), xi)
}

/// `tr(X e^{iξ·A})` for an arbitrary operator `X`.
pub fn char_function_of(a: &OperatorTuple, x: &ComplexMatrix, xi: &[f64]) -> Result<Complex64> {
    if x.nrows() != a.dim() || x.ncols() != a.dim() {
        return Err(WignerError::DimensionMismatch { expected: a.dim(), found: x.nrows() });
    }
    let eig = a.pencil(xi)?;
    Ok(evaluate_radial(&eig, x, 1.0))
}

/// `Σ_c e^{itα_c} tr(X P_c)` for a decomposition of `ξ·A`, i.e. the value at `tξ`.
pub fn evaluate_radial(eig: &PencilEigen, x: &ComplexMatrix, t: f64) -> Complex64 {
    eig.spectral_measure(x)
        .into_iter()
        .map(|(alpha, w)| w * Complex64::from_polar(1.0, t * alpha))
        .sum()
}

/// `Ŵ_ρ(t u)` for every `t`, from a single decomposition of `u·A`.
pub fn radial_samples(a: &OperatorTuple, rho: &DensityMatrix, u: &[f64], ts: &[f64]) -> Result<Vec<Complex64>> {
    let eig = a.pencil(u)?;
    let measure = eig.spectral_measure(rho.matrix());
    Ok(ts
        .iter()
        .map(|&t| measure.iter().map(|(alpha, w)| w * Complex64::from_polar(1.0, t * alpha)).sum())
        .collect())
}

/// Checks that the `Q_ℓ` are orthogonal projections summing to the identity
/// and commuting with every `A_k`.
pub fn check_reducing(a: &OperatorTuple, projectors: &[ComplexMatrix], tol: f64) -> Result<()> {
    let d = a.dim();
    if projectors.is_empty() {
        return Err(WignerError::InvalidArgument("no projections given".into()));
    }
    let mut sum = ComplexMatrix::zeros(d, d);
    for (l, q) in projectors.iter().enumerate() {
        if q.nrows() != d || q.ncols() != d {
            return Err(WignerError::DimensionMismatch { expected: d, found: q.nrows() });
        }
        if max_abs(&(q * q - q)) > tol || max_abs(&(q.adjoint() - q)) > tol {
            return Err(WignerError::InvalidArgument(format!("Q_{l} is not an orthogonal projection")));
        }
        for (m, other) in projectors.iter().enumerate().skip(l + 1) {
            if max_abs(&(q * other)) > tol {
                return Err(WignerError::InvalidArgument(format!("Q_{l} and Q_{m} are not orthogonal")));
            }
        }
        sum += q;
    }
    if max_abs(&(sum - ComplexMatrix::identity(d, d))) > tol {
        return Err(WignerError::InvalidArgument("projections do not sum to the identity".into()));
    }
    let mut max_commutator: f64 = 0.0;
    for q in projectors {
        for op in a.ops() {
            let c = q * op.matrix() - op.matrix() * q;
            max_commutator = max_commutator.max(max_abs(&c));
        }
    }
    if max_commutator > tol {
        return Err(WignerError::NotReducing { max_commutator });
    }
    Ok(())
}

/// `Σ_ℓ Ŵ_{Q_ℓ ρ Q_ℓ}(ξ)` for a reducing family of projections. The
/// compressions are not renormalized.
pub fn char_function_blocks(
    a: &OperatorTuple,
    rho: &DensityMatrix,
    projectors: &[ComplexMatrix],
    xi: &[f64],
) -> Result<Complex64> {
    check_reducing(a, projectors, 1e-9)?;
    let mut total = Complex64::new(0.0, 0.0);
    for q in projectors {
        let block = q * rho.matrix() * q;
        total += char_function_of(a, &block, xi)?;
    }
    Ok(total)
}
