//! Eigenvalue curves of `C(t) = A_1 cos t + A_2 sin t`.
//!
//! For a nondegenerate branch `c_μ(t)` the eigenvector's expectation pair
//! satisfies `c = a_1 cos t + a_2 sin t` and `ċ = −a_1 sin t + a_2 cos t`, so
//! rotating `(c, ċ)` by `t` recovers the point of the singular support.

use crate::error::{Result, WignerError};
use crate::linalg::OperatorTuple;

use super::SINGULAR_GAP_REL;

/// Branches followed by continuity.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenCurves {
    pub t: Vec<f64>,
    /// `values[i][b]`: branch `b` at `t[i]`.
    pub values: Vec<Vec<f64>>,
    /// Indices `i` where the matching between `t[i−1]` and `t[i]` could not
    /// be trusted (eigenvalue gap below the step-size scale).
    pub ambiguous: Vec<usize>,
    /// Smallest eigenvalue gap seen over all samples.
    pub min_gap: f64,
}

impl EigenCurves {
    pub fn branch(&self, b: usize) -> Vec<f64> {
        self.values.iter().map(|row| row[b]).collect()
    }
}

fn pencil_at(a: &OperatorTuple, t: f64) -> Result<Vec<f64>> {
    Ok(a.pencil(&[t.cos(), t.sin()])?.eigenvalues().to_vec())
}

fn require_pair(a: &OperatorTuple) -> Result<()> {
    if a.n() != 2 {
        return Err(WignerError::InvalidArgument(format!("needs a pair, got n = {}", a.n())));
    }
    Ok(())
}

/// Eigenvalue curves on the increasing samples `ts`. Each branch is
/// continued by linear extrapolation; sorted predictions are matched to
/// sorted eigenvalues.
pub fn eigenvalue_curves(a: &OperatorTuple, ts: &[f64]) -> Result<EigenCurves> {
    require_pair(a)?;
    let d = a.dim();
    let mut values: Vec<Vec<f64>> = Vec::with_capacity(ts.len());
    let mut ambiguous = Vec::new();
    let mut min_gap = f64::INFINITY;
    for (i, &t) in ts.iter().enumerate() {
        let sorted = pencil_at(a, t)?;
        let gap = sorted.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
        min_gap = min_gap.min(gap);
        if i == 0 {
            values.push(sorted);
            continue;
        }
        let prev = &values[i - 1];
        let prediction: Vec<f64> = if i >= 2 {
            let (tm, tmm) = (ts[i - 1], ts[i - 2]);
            let ratio = (t - tm) / (tm - tmm);
            (0..d).map(|b| prev[b] + ratio * (prev[b] - values[i - 2][b])).collect()
        } else {
            prev.clone()
        };
        let mut order: Vec<usize> = (0..d).collect();
        order.sort_by(|&x, &y| prediction[x].total_cmp(&prediction[y]));
        let mut row = vec![0.0; d];
        for (rank, &b) in order.iter().enumerate() {
            row[b] = sorted[rank];
        }
        let step = (0..d).map(|b| (row[b] - prev[b]).abs()).fold(0.0, f64::max);
        let diameter = sorted[d - 1] - sorted[0];
        if d > 1 && gap < (2.0 * step).max(SINGULAR_GAP_REL * diameter) {
            ambiguous.push(i);
        }
        values.push(row);
    }
    Ok(EigenCurves { t: ts.to_vec(), values, ambiguous, min_gap })
}

/// `R(t)·(c, ċ)` with `R(t)` the rotation by `t`.
pub fn reconstruct_from_curve(c: f64, cdot: f64, t: f64) -> [f64; 2] {
    let (s, co) = t.sin_cos();
    [co * c - s * cdot, s * c + co * cdot]
}

/// Point of the singular support on the sorted branch `mu` at `t`, with `ċ`
/// from a central difference of step `h`.
pub fn curve_point(a: &OperatorTuple, mu: usize, t: f64, h: f64) -> Result<[f64; 2]> {
    require_pair(a)?;
    if mu >= a.dim() {
        return Err(WignerError::InvalidArgument(format!("branch {mu} out of range")));
    }
    let eig = a.pencil(&[t.cos(), t.sin()])?;
    let gap = eig.gap(mu);
    if gap <= SINGULAR_GAP_REL * eig.spectral_diameter() || gap == 0.0 {
        return Err(WignerError::DegenerateBranch { mu, t, gap });
    }
    let c = eig.eigenvalues()[mu];
    let plus = pencil_at(a, t + h)?[mu];
    let minus = pencil_at(a, t - h)?[mu];
    Ok(reconstruct_from_curve(c, (plus - minus) / (2.0 * h), t))
}
