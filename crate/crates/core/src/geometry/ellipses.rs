//! Ellipse predictions for nearly commuting pairs.
//!
//! Compressing `(A_1, A_2)` to `span{e_μ, e_ν}` gives a qubit pair
//! `B_k = x0_k I + x^{(k)}·σ`. Its expectation pairs over pure states form
//! the boundary of the ellipse `x0 + X S²`, where the rows of `X` are the
//! `x^{(k)}`; the boundary is `x0 + (XXᵀ)^{1/2}(cos θ, sin θ)`. When the
//! off-diagonal entries are small, the singular support of the full pair
//! stays close to the union of these ellipses.

use std::f64::consts::PI;

use nalgebra::Matrix2;

use crate::error::{Result, WignerError};
use crate::linalg::OperatorTuple;

use super::singular_set;

/// Boundary `center + shape·(cos θ, sin θ)` of the ellipse of one 2×2
/// compression.
#[derive(Debug, Clone, PartialEq)]
pub struct Ellipse {
    pub mu: usize,
    pub nu: usize,
    pub center: [f64; 2],
    /// Symmetric square root of `XXᵀ`.
    pub shape: [[f64; 2]; 2],
}

impl Ellipse {
    /// Ellipse of the compression of `a` to `span{e_mu, e_nu}`.
    pub fn from_compression(a: &OperatorTuple, mu: usize, nu: usize) -> Self {
        let mut center = [0.0; 2];
        let mut x = Matrix2x3::zeros();
        for k in 0..2 {
            let m = a.op(k).matrix();
            let (b00, b11, b01) = (m[(mu, mu)].re, m[(nu, nu)].re, m[(mu, nu)]);
            center[k] = 0.5 * (b00 + b11);
            x[(k, 0)] = b01.re;
            x[(k, 1)] = -b01.im;
            x[(k, 2)] = 0.5 * (b00 - b11);
        }
        let gram: Matrix2<f64> = x * x.transpose();
        let eig = gram.symmetric_eigen();
        let sqrt = eig.eigenvectors
            * Matrix2::from_diagonal(&eig.eigenvalues.map(|l| l.max(0.0).sqrt()))
            * eig.eigenvectors.transpose();
        Self { mu, nu, center, shape: [[sqrt[(0, 0)], sqrt[(0, 1)]], [sqrt[(1, 0)], sqrt[(1, 1)]]] }
    }

    pub fn point(&self, theta: f64) -> [f64; 2] {
        let (s, c) = theta.sin_cos();
        [
            self.center[0] + self.shape[0][0] * c + self.shape[0][1] * s,
            self.center[1] + self.shape[1][0] * c + self.shape[1][1] * s,
        ]
    }

    /// Euclidean distance from `p` to the boundary curve.
    pub fn distance(&self, p: &[f64]) -> f64 {
        let dist = |theta: f64| {
            let q = self.point(theta);
            ((q[0] - p[0]).powi(2) + (q[1] - p[1]).powi(2)).sqrt()
        };
        const COARSE: usize = 256;
        let step = 2.0 * PI / COARSE as f64;
        let (best_j, _) = (0..COARSE)
            .map(|j| (j, dist(step * j as f64)))
            .fold((0, f64::INFINITY), |acc, (j, v)| if v < acc.1 { (j, v) } else { acc });
        // Golden-section refinement in the neighboring bracket.
        let (mut lo, mut hi) = (step * (best_j as f64 - 1.0), step * (best_j as f64 + 1.0));
        let g = (5f64.sqrt() - 1.0) / 2.0;
        let mut x1 = hi - g * (hi - lo);
        let mut x2 = lo + g * (hi - lo);
        let (mut f1, mut f2) = (dist(x1), dist(x2));
        for _ in 0..60 {
            if f1 < f2 {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - g * (hi - lo);
                f1 = dist(x1);
            } else {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + g * (hi - lo);
                f2 = dist(x2);
            }
        }
        f1.min(f2).min(dist(step * best_j as f64))
    }
}

type Matrix2x3 = nalgebra::Matrix2x3<f64>;

/// Comparison of the sampled singular support with the ellipse union.
#[derive(Debug, Clone, PartialEq)]
pub struct NearlyCommutingReport {
    pub ellipses: Vec<Ellipse>,
    /// Diagonal pairs `(A_1[μμ], A_2[μμ])`.
    pub diagonal_points: Vec<[f64; 2]>,
    /// Largest off-diagonal entry of either operator.
    pub offdiag_max: f64,
    /// Number of sampled singular points.
    pub samples: usize,
    /// `max_{a ∈ S} dist(a, ellipses ∪ diagonal points)`.
    pub hausdorff: f64,
    pub worst_point: Vec<f64>,
}

/// Ellipses of every 2×2 coordinate compression and the one-sided
/// Hausdorff distance from the sampled singular support to their union.
pub fn nearly_commuting_ellipses(a: &OperatorTuple, resolution: usize) -> Result<NearlyCommutingReport> {
    if a.n() != 2 {
        return Err(WignerError::InvalidArgument(format!("needs a pair, got n = {}", a.n())));
    }
    let d = a.dim();
    let mut ellipses = Vec::new();
    for mu in 0..d {
        for nu in mu + 1..d {
            ellipses.push(Ellipse::from_compression(a, mu, nu));
        }
    }
    let diagonal_points: Vec<[f64; 2]> =
        (0..d).map(|m| [a.op(0).matrix()[(m, m)].re, a.op(1).matrix()[(m, m)].re]).collect();
    let mut offdiag_max: f64 = 0.0;
    for op in a.ops() {
        for i in 0..d {
            for j in 0..d {
                if i != j {
                    offdiag_max = offdiag_max.max(op.matrix()[(i, j)].norm());
                }
            }
        }
    }
    let samples = singular_set(a, resolution, 0)?;
    let mut hausdorff: f64 = 0.0;
    let mut worst_point = Vec::new();
    for s in &samples {
        let to_points = diagonal_points
            .iter()
            .map(|q| ((q[0] - s.a[0]).powi(2) + (q[1] - s.a[1]).powi(2)).sqrt())
            .fold(f64::INFINITY, f64::min);
        let dist = ellipses.iter().map(|e| e.distance(&s.a)).fold(to_points, f64::min);
        if dist > hausdorff {
            hausdorff = dist;
            worst_point = s.a.clone();
        }
    }
    Ok(NearlyCommutingReport { ellipses, diagonal_points, offdiag_max, samples: samples.len(), hausdorff, worst_point })
}
