//! Joint numerical range, singular support and related geometry.
//!
//! The joint numerical range `Σ` is the set of expectation tuples
//! `(tr ρA_1, …, tr ρA_n)`; its support function is
//! `m(u) = λ_max(u·A)`. The singular support `S` of the distribution is the
//! closure of the expectation tuples of eigenvectors belonging to
//! nondegenerate eigenvalues of the pencils `u·A`.

mod curves;
mod ellipses;
mod poly;

use std::f64::consts::PI;
use std::fmt::Write as _;

use rayon::prelude::*;

pub use curves::{curve_point, eigenvalue_curves, reconstruct_from_curve, EigenCurves};
pub use ellipses::{nearly_commuting_ellipses, Ellipse, NearlyCommutingReport};
pub use poly::{gpoly, heart_quartic, polynomial_residual, NamedPolynomial};

use crate::error::{Result, WignerError};
use crate::linalg::{OperatorTuple, PencilEigen};
use crate::random::{random_direction, seeded};

/// Branches whose gap is at most this fraction of the spectral diameter
/// count as degenerate.
pub const SINGULAR_GAP_REL: f64 = 1e-6;

/// `m` equally spaced angles on the half circle `[0, π)`.
pub fn half_circle(m: usize) -> Vec<Vec<f64>> {
    (0..m)
        .map(|j| {
            let phi = PI * j as f64 / m as f64;
            vec![phi.cos(), phi.sin()]
        })
        .collect()
}

/// `m` equally spaced angles on the full circle.
pub fn full_circle(m: usize) -> Vec<Vec<f64>> {
    (0..m)
        .map(|j| {
            let phi = 2.0 * PI * j as f64 / m as f64;
            vec![phi.cos(), phi.sin()]
        })
        .collect()
}

/// Fibonacci lattice with `m` points on the upper hemisphere `z > 0`.
pub fn fibonacci_hemisphere(m: usize) -> Vec<Vec<f64>> {
    let golden = PI * (3.0 - 5f64.sqrt());
    (0..m)
        .map(|i| {
            let z = (i as f64 + 0.5) / m as f64;
            let rho = (1.0 - z * z).sqrt();
            let phi = golden * i as f64;
            vec![rho * phi.cos(), rho * phi.sin(), z]
        })
        .collect()
}

/// Fibonacci lattice with `m` points on the whole sphere.
pub fn fibonacci_sphere(m: usize) -> Vec<Vec<f64>> {
    let golden = PI * (3.0 - 5f64.sqrt());
    (0..m)
        .map(|i| {
            let z = 1.0 - 2.0 * (i as f64 + 0.5) / m as f64;
            let rho = (1.0 - z * z).sqrt();
            let phi = golden * i as f64;
            vec![rho * phi.cos(), rho * phi.sin(), z]
        })
        .collect()
}

/// Quasi-uniform directions covering the sphere up to antipodes: half
/// circle for `n = 2`, Fibonacci hemisphere for `n = 3`, seeded random
/// directions (first coordinate made nonnegative) for `n ≥ 4`.
pub fn half_sphere_directions(n: usize, resolution: usize, seed: u64) -> Vec<Vec<f64>> {
    match n {
        1 => vec![vec![1.0]],
        2 => half_circle(resolution),
        3 => fibonacci_hemisphere(resolution),
        _ => {
            let mut rng = seeded(seed);
            (0..resolution)
                .map(|_| {
                    let mut u = random_direction(n, &mut rng);
                    if u[0] < 0.0 {
                        u.iter_mut().for_each(|x| *x = -*x);
                    }
                    u
                })
                .collect()
        }
    }
}

/// Directions covering the whole sphere.
pub fn sphere_directions(n: usize, resolution: usize, seed: u64) -> Vec<Vec<f64>> {
    match n {
        1 => vec![vec![1.0], vec![-1.0]],
        2 => full_circle(resolution),
        3 => fibonacci_sphere(resolution),
        _ => {
            let mut rng = seeded(seed);
            (0..resolution).map(|_| random_direction(n, &mut rng)).collect()
        }
    }
}

/// Supporting hyperplane of the joint numerical range in direction `u`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryPoint {
    pub u: Vec<f64>,
    /// `m(u) = λ_max(u·A)`.
    pub support: f64,
    /// Expectation tuple of the top eigenvector; `None` when degenerate.
    pub point: Option<Vec<f64>>,
    /// Gap between the two largest eigenvalues.
    pub top_gap: f64,
    pub degenerate: bool,
}

fn degeneracy_threshold(eig: &PencilEigen) -> f64 {
    SINGULAR_GAP_REL * eig.spectral_diameter()
}

fn expectation_of(a: &OperatorTuple, eig: &PencilEigen, mu: usize) -> Vec<f64> {
    let v = eig.eigenvector(mu);
    a.ops().iter().map(|op| op.expectation(&v)).collect()
}

pub fn jnr_boundary(a: &OperatorTuple, directions: &[Vec<f64>]) -> Result<Vec<BoundaryPoint>> {
    if directions.is_empty() {
        return Err(WignerError::InvalidArgument("no directions given".into()));
    }
    directions
        .par_iter()
        .map(|u| {
            let eig = a.pencil(u)?;
            let d = eig.dim();
            let support = eig.eigenvalues()[d - 1];
            let top_gap = if d > 1 { support - eig.eigenvalues()[d - 2] } else { f64::INFINITY };
            let degenerate = d > 1 && top_gap <= degeneracy_threshold(&eig);
            let point = (!degenerate).then(|| expectation_of(a, &eig, d - 1));
            Ok(BoundaryPoint { u: u.clone(), support, point, top_gap, degenerate })
        })
        .collect()
}

/// `max_u (u·p − m(u))`: positive values put `p` outside the sampled hull.
pub fn support_excess(point: &[f64], boundary: &[BoundaryPoint]) -> f64 {
    boundary
        .iter()
        .map(|b| {
            let norm = b.u.iter().map(|x| x * x).sum::<f64>().sqrt();
            (b.u.iter().zip(point).map(|(x, y)| x * y).sum::<f64>() - b.support) / norm
        })
        .fold(f64::NEG_INFINITY, f64::max)
}

/// A point of the sampled singular support.
#[derive(Debug, Clone, PartialEq)]
pub struct SingularSample {
    pub u: Vec<f64>,
    /// 0-based index in ascending eigenvalue order.
    pub mu: usize,
    pub a: Vec<f64>,
    /// Distance of `α_μ(u)` to the rest of the spectrum.
    pub gap: f64,
}

/// Expectation tuples of all nondegenerate eigenvectors of `u·A` for the
/// given directions, in direction order.
pub fn singular_samples(a: &OperatorTuple, directions: &[Vec<f64>]) -> Result<Vec<SingularSample>> {
    let per_direction: Vec<Vec<SingularSample>> = directions
        .par_iter()
        .map(|u| {
            let eig = a.pencil(u)?;
            let threshold = degeneracy_threshold(&eig);
            if threshold == 0.0 {
                return Ok(Vec::new());
            }
            Ok((0..eig.dim())
                .filter_map(|mu| {
                    let gap = eig.gap(mu);
                    (gap > threshold).then(|| SingularSample {
                        u: u.clone(),
                        mu,
                        a: expectation_of(a, &eig, mu),
                        gap,
                    })
                })
                .collect())
        })
        .collect::<Result<_>>()?;
    Ok(per_direction.into_iter().flatten().collect())
}

/// [`singular_samples`] over a quasi-uniform half sphere.
pub fn singular_set(a: &OperatorTuple, resolution: usize, seed: u64) -> Result<Vec<SingularSample>> {
    if a.n() < 2 {
        return Err(WignerError::InvalidArgument("singular set needs n ≥ 2".into()));
    }
    singular_samples(a, &half_sphere_directions(a.n(), resolution, seed))
}

/// Point cloud CSV: `u_1..u_n,branch,a_1..a_n,gap`.
pub fn singular_csv(samples: &[SingularSample]) -> String {
    let Some(first) = samples.first() else { return String::new() };
    let n = first.u.len();
    let mut out = String::new();
    let head: Vec<String> = (1..=n)
        .map(|k| format!("u{k}"))
        .chain(std::iter::once("branch".to_string()))
        .chain((1..=n).map(|k| format!("a{k}")))
        .chain(std::iter::once("gap".to_string()))
        .collect();
    out.push_str(&head.join(","));
    out.push('\n');
    for s in samples {
        let mut fields: Vec<String> = s.u.iter().map(|x| format!("{x:e}")).collect();
        fields.push(s.mu.to_string());
        fields.extend(s.a.iter().map(|x| format!("{x:e}")));
        fields.push(format!("{:e}", s.gap));
        let _ = writeln!(out, "{}", fields.join(","));
    }
    out
}

/// Gaps between the two largest eigenvalues over a set of directions.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexityReport {
    pub min_gap: f64,
    pub min_gap_direction: Vec<f64>,
    /// Directions whose top eigenvalue is degenerate (flat boundary piece
    /// suspected).
    pub flagged: Vec<Vec<f64>>,
}

pub fn strict_convexity_probe(a: &OperatorTuple, directions: &[Vec<f64>]) -> Result<ConvexityReport> {
    let boundary = jnr_boundary(a, directions)?;
    let mut report = ConvexityReport { min_gap: f64::INFINITY, min_gap_direction: Vec::new(), flagged: Vec::new() };
    for b in boundary {
        if b.top_gap < report.min_gap {
            report.min_gap = b.top_gap;
            report.min_gap_direction = b.u.clone();
        }
        if b.degenerate {
            report.flagged.push(b.u);
        }
    }
    Ok(report)
}
