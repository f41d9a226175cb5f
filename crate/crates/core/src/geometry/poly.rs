//! Known polynomials vanishing on singular supports.

use std::str::FromStr;

use crate::error::{Result, WignerError};

/// Polynomial of the dual variety of the 3×3 counterexample triple. Its
/// real zero set is the singular support plus the line `(a_1, 0, 0)`.
pub fn gpoly(a: &[f64]) -> f64 {
    let (a1, a2, a3) = (a[0], a[1], a[2]);
    4.0 * a3 * a3 * (a1 * a1 - 2.0 * a1 * a3 + 5.0 * a3 * a3 + 2.0 * a1 - 6.0 * a3 + 1.0)
        + 4.0 * a3 * (2.0 * a3 - a1 - 1.0) * a2 * a2
        + a2.powi(4)
}

/// Quartic curve carrying the singular support of the heart pair.
pub fn heart_quartic(a: &[f64]) -> f64 {
    let (a1, a2) = (a[0], a[1]);
    4.0 * a1.powi(3) + 4.0 * a1.powi(4) - 27.0 * a2 * a2 - 18.0 * a1 * a2 * a2 + 13.0 * a1 * a1 * a2 * a2
        + 32.0 * a2.powi(4)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NamedPolynomial {
    Gpoly,
    HeartQuartic,
}

impl NamedPolynomial {
    pub fn arity(self) -> usize {
        match self {
            Self::Gpoly => 3,
            Self::HeartQuartic => 2,
        }
    }

    pub fn evaluate(self, a: &[f64]) -> f64 {
        match self {
            Self::Gpoly => gpoly(a),
            Self::HeartQuartic => heart_quartic(a),
        }
    }
}

impl FromStr for NamedPolynomial {
    type Err = WignerError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gpoly" => Ok(Self::Gpoly),
            "heart" | "heart-quartic" | "heart_quartic" => Ok(Self::HeartQuartic),
            _ => Err(WignerError::InvalidArgument(format!("unknown polynomial {s:?} (gpoly, heart)"))),
        }
    }
}

/// `max |p(a)|` over the points.
pub fn polynomial_residual(points: &[Vec<f64>], which: NamedPolynomial) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for p in points {
        if p.len() != which.arity() {
            return Err(WignerError::DimensionMismatch { expected: which.arity(), found: p.len() });
        }
        worst = worst.max(which.evaluate(p).abs());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::geometry::singular_set;

    #[test]
    fn counterexample_samples_lie_on_gpoly() {
        let a = catalog::dual_counterexample();
        let pts: Vec<Vec<f64>> = singular_set(&a, 400, 0).unwrap().into_iter().map(|s| s.a).collect();
        assert!(polynomial_residual(&pts, NamedPolynomial::Gpoly).unwrap() < 1e-6);
    }

    #[test]
    fn extra_line_is_in_zero_set() {
        let line: Vec<Vec<f64>> = [-3.0, -1.5, 1.5, 2.0, 10.0].iter().map(|&x| vec![x, 0.0, 0.0]).collect();
        assert_eq!(polynomial_residual(&line, NamedPolynomial::Gpoly).unwrap(), 0.0);
    }

    #[test]
    fn heart_samples_lie_on_quartic() {
        let a = catalog::heart_pair();
        let pts: Vec<Vec<f64>> = singular_set(&a, 500, 0).unwrap().into_iter().map(|s| s.a).collect();
        assert!(polynomial_residual(&pts, NamedPolynomial::HeartQuartic).unwrap() < 1e-6);
    }

    #[test]
    fn arity_checked() {
        assert!(polynomial_residual(&[vec![1.0, 2.0]], NamedPolynomial::Gpoly).is_err());
        assert_eq!("heart".parse::<NamedPolynomial>().unwrap(), NamedPolynomial::HeartQuartic);
    }
}
