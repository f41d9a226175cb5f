//! Informational completeness: whether `ρ ↦ W_ρ` is injective.
//!
//! `W_ρ` determines exactly the numbers `tr(ρ M_W^r)`, so the map is
//! injective iff the Weyl moments span all Hermitian matrices (real
//! dimension `d²`).

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, RngExt};

use crate::error::{Result, WignerError};
use crate::linalg::{hermitian_coordinates, trace_product, ComplexMatrix, OperatorTuple};
use crate::moments::MomentTable;

/// Relative eigenvalue threshold for Gram-matrix ranks.
pub const RANK_THRESHOLD: f64 = 1e-8;

/// Dimension of the span of the Weyl moments and the degree where the
/// search stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpanDimension {
    pub dimension: usize,
    pub degree_reached: u32,
}

/// Running Gram matrix `Σ v vᵀ` of normalized coordinate vectors.
struct RunningGram {
    g: DMatrix<f64>,
}

impl RunningGram {
    fn new(dim: usize) -> Self {
        Self { g: DMatrix::zeros(dim, dim) }
    }

    fn add(&mut self, v: &[f64]) {
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm == 0.0 {
            return;
        }
        let u = nalgebra::DVector::from_iterator(v.len(), v.iter().map(|x| x / norm));
        self.g += &u * u.transpose();
    }

    fn rank(&self) -> usize {
        let eig = self.g.clone().symmetric_eigen();
        let max = eig.eigenvalues.iter().fold(0.0_f64, |a, v| a.max(v.abs()));
        if max == 0.0 {
            return 0;
        }
        eig.eigenvalues.iter().filter(|v| v.abs() > RANK_THRESHOLD * max).count()
    }
}

/// Real dimension of `span{M_W^r : R ≤ cap}`.
///
/// With `cap = None` degrees are added until the rank reaches `d²`, or two
/// consecutive degrees add nothing, or the degree reaches `d²`.
pub fn weyl_span_dimension(a: &OperatorTuple, cap: Option<u32>) -> SpanDimension {
    let d = a.dim();
    let full = d * d;
    let hard_cap = cap.unwrap_or(full as u32);
    let mut table = MomentTable::identity(a);
    let mut gram = RunningGram::new(full);
    gram.add(&hermitian_coordinates(&ComplexMatrix::identity(d, d)));
    let mut rank = gram.rank();
    let mut stalled = 0;
    while table.max_degree() < hard_cap {
        for (_, m) in table.extend(a) {
            gram.add(&hermitian_coordinates(m.matrix()));
        }
        let next = gram.rank();
        stalled = if next == rank { stalled + 1 } else { 0 };
        rank = next;
        if cap.is_none() && (rank == full || stalled >= 2) {
            break;
        }
    }
    SpanDimension { dimension: rank, degree_reached: table.max_degree() }
}

pub fn info_complete(a: &OperatorTuple) -> bool {
    weyl_span_dimension(a, None).dimension == a.dim() * a.dim()
}

/// `|tr(A_1 P_1 A_2 P_2) − tr(A_2 P_1 A_1 P_2)|` and its natural scale
/// `‖A_1‖_F ‖A_2‖_F ‖P_1‖_F ‖P_2‖_F`.
pub fn incomp_trace_residual(a: &OperatorTuple, p1: &ComplexMatrix, p2: &ComplexMatrix) -> (f64, f64) {
    let (a1, a2) = (a.op(0).matrix(), a.op(1).matrix());
    let lhs = trace_product(&(a1 * p1), &(a2 * p2));
    let rhs = trace_product(&(a2 * p1), &(a1 * p2));
    let scale = a1.norm() * a2.norm() * p1.norm() * p2.norm();
    ((lhs - rhs).norm(), scale)
}

/// Largest relative residual of `tr(A_1 P_1 A_2 P_2) = tr(A_2 P_1 A_1 P_2)`
/// over `samples` pairs `P_1, P_2` drawn as random real combinations of the
/// Weyl moments of degree `≤ degree`.
pub fn incomp_trace_identity<R: Rng + ?Sized>(
    a: &OperatorTuple,
    samples: usize,
    degree: u32,
    rng: &mut R,
) -> Result<f64> {
    if a.n() != 2 {
        return Err(WignerError::InvalidArgument(format!("needs a pair, got n = {}", a.n())));
    }
    let table = MomentTable::build(a, degree);
    let d = a.dim();
    let draw = |rng: &mut R| {
        let mut acc = ComplexMatrix::zeros(d, d);
        for (_, m) in table.iter() {
            let norm = m.matrix().norm().max(f64::MIN_POSITIVE);
            acc += m.matrix() * Complex64::new(rng.random_range(-1.0..1.0) / norm, 0.0);
        }
        acc
    };
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let p1 = draw(rng);
        let p2 = draw(rng);
        let (res, scale) = incomp_trace_residual(a, &p1, &p2);
        worst = worst.max(res / scale);
    }
    Ok(worst)
}

/// Result of the normal-ordering completeness test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalCompleteness {
    pub complete: bool,
    /// `min_{ij} |⟨φ_i|ψ_j⟩|` over eigenvectors of `A_1` and `A_2`.
    pub min_overlap: f64,
    /// 0-based eigenvector indices (ascending eigenvalue order) of the
    /// minimizing pair.
    pub witness: (usize, usize),
}

/// Normally ordered moments determine `ρ` iff no eigenvector of `A_1` is
/// orthogonal to an eigenvector of `A_2`; both spectra must be simple.
pub fn normal_complete(a: &OperatorTuple, tol: f64) -> Result<NormalCompleteness> {
    if a.n() != 2 {
        return Err(WignerError::InvalidArgument(format!("needs a pair, got n = {}", a.n())));
    }
    let e1 = a.op(0).eigen()?;
    let e2 = a.op(1).eigen()?;
    for e in [&e1, &e2] {
        if e.clusters().len() != e.dim() {
            let gap = (0..e.dim() - 1)
                .map(|i| e.eigenvalues()[i + 1] - e.eigenvalues()[i])
                .fold(f64::INFINITY, f64::min);
            return Err(WignerError::DegenerateSpectrum { gap });
        }
    }
    let overlaps = e1.eigenvectors().adjoint() * e2.eigenvectors();
    let mut best = (f64::INFINITY, (0, 0));
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            let v = overlaps[(i, j)].norm();
            if v < best.0 {
                best = (v, (i, j));
            }
        }
    }
    Ok(NormalCompleteness { complete: best.0 > tol, min_overlap: best.0, witness: best.1 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::random::{random_hermitian, random_tuple, seeded};

    #[test]
    fn pauli_triple_is_complete() {
        let ex = catalog::make("pauli3").unwrap();
        assert_eq!(weyl_span_dimension(&ex.tuple, None).dimension, 4);
        assert!(info_complete(&ex.tuple));
    }

    #[test]
    fn generic_pair_saturates_bound() {
        let a = random_tuple(2, 4, &mut seeded(21));
        assert_eq!(weyl_span_dimension(&a, None).dimension, 10);
        assert!(!info_complete(&a));
    }

    #[test]
    fn commuting_pair_spans_diagonal() {
        let a = OperatorTuple::from_real(3, &[&[1., 0., 0., 0., 2., 0., 0., 0., 3.], &[0., 0., 0., 0., 5., 0., 0., 0., -1.]])
            .unwrap();
        assert_eq!(weyl_span_dimension(&a, None).dimension, 3);
    }

    #[test]
    fn trace_identity_holds_on_moments_only() {
        let a = random_tuple(2, 4, &mut seeded(8));
        let d = 4;
        let id = ComplexMatrix::identity(d, d);
        assert!(incomp_trace_residual(&a, &id, &id).0 < 1e-14);
        let mut rng = seeded(99);
        assert!(incomp_trace_identity(&a, 20, 4, &mut rng).unwrap() < 1e-9);
        let corrupt = random_hermitian(d, &mut rng);
        let (res, scale) = incomp_trace_residual(&a, corrupt.matrix(), &weyl_of(&a));
        assert!(res / scale > 1e-3, "relative residual {}", res / scale);
    }

    fn weyl_of(a: &OperatorTuple) -> ComplexMatrix {
        crate::moments::weyl_moment(a, &[1, 2]).unwrap().into_inner()
    }

    #[test]
    fn normal_completeness() {
        let ex = catalog::make("pauli3").unwrap();
        let xz = OperatorTuple::new(vec![ex.tuple.op(0).clone(), ex.tuple.op(2).clone()]).unwrap();
        let r = normal_complete(&xz, 1e-9).unwrap();
        assert!(r.complete);
        assert!((r.min_overlap - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);

        let diag = OperatorTuple::from_real(2, &[&[1., 0., 0., 2.], &[3., 0., 0., 4.]]).unwrap();
        let r = normal_complete(&diag, 1e-9).unwrap();
        assert!(!r.complete);
        assert_eq!(r.witness, (0, 1));

        let degenerate = OperatorTuple::from_real(2, &[&[1., 0., 0., 1.], &[3., 0., 0., 4.]]).unwrap();
        assert!(matches!(normal_complete(&degenerate, 1e-9), Err(WignerError::DegenerateSpectrum { .. })));

        let a = random_tuple(2, 4, &mut seeded(17));
        assert!(normal_complete(&a, 1e-9).unwrap().complete);
    }
}
