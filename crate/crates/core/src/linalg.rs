//! Dense complex linear algebra: validated Hermitian matrices, operator
//! tuples, density matrices and sorted eigendecompositions of pencils `ξ·A`.

use std::ops::Range;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Result, WignerError};

pub type ComplexMatrix = DMatrix<Complex64>;
pub type ComplexVector = DVector<Complex64>;

/// Absolute tolerances used when validating user input.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub hermiticity: f64,
    pub trace: f64,
    pub psd: f64,
    pub normalization: f64,
    /// Eigenvalues closer than `degeneracy_rel * spectral diameter` are
    /// grouped into one eigenprojection.
    pub degeneracy_rel: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            hermiticity: 1e-9,
            trace: 1e-9,
            psd: 1e-9,
            normalization: 1e-9,
            degeneracy_rel: 1e-8,
        }
    }
}

/// Builds a complex matrix from real entries given in row-major order.
pub fn real_matrix(d: usize, rows: &[f64]) -> ComplexMatrix {
    assert_eq!(rows.len(), d * d, "expected {} entries", d * d);
    ComplexMatrix::from_fn(d, d, |i, j| Complex64::new(rows[i * d + j], 0.0))
}

/// Largest entry of `|M - M^†|`.
pub fn hermitian_deviation(m: &ComplexMatrix) -> f64 {
    let mut dev: f64 = 0.0;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            dev = dev.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    dev
}

/// Largest absolute entry.
pub fn max_abs(m: &ComplexMatrix) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

pub fn trace(m: &ComplexMatrix) -> Complex64 {
    m.diagonal().iter().sum()
}

/// `tr(XY)` without forming the product.
pub fn trace_product(x: &ComplexMatrix, y: &ComplexMatrix) -> Complex64 {
    let d = x.nrows();
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..d {
        for k in 0..d {
            acc += x[(i, k)] * y[(k, i)];
        }
    }
    acc
}

/// A square matrix equal to its conjugate transpose.
#[derive(Debug, Clone, PartialEq)]
pub struct Hermitian(ComplexMatrix);

impl Hermitian {
    /// Checks Hermiticity up to `tol` and stores the symmetrized matrix
    /// `(M + M^†)/2`.
    pub fn new(m: ComplexMatrix, tol: f64) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(WignerError::NotSquare { rows: m.nrows(), cols: m.ncols() });
        }
        let max_deviation = hermitian_deviation(&m);
        if max_deviation > tol {
            return Err(WignerError::NotHermitian { max_deviation });
        }
        Ok(Self::symmetrized(m))
    }

    /// Projects onto the Hermitian part without checking.
    pub fn symmetrized(m: ComplexMatrix) -> Self {
        let adj = m.adjoint();
        Hermitian((m + adj) * Complex64::new(0.5, 0.0))
    }

    pub fn from_real(d: usize, rows: &[f64]) -> Result<Self> {
        Self::new(real_matrix(d, rows), Tolerances::default().hermiticity)
    }

    pub fn zeros(d: usize) -> Self {
        Hermitian(ComplexMatrix::zeros(d, d))
    }

    pub fn identity(d: usize) -> Self {
        Hermitian(ComplexMatrix::identity(d, d))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_inner(self) -> ComplexMatrix {
        self.0
    }

    pub fn eigen(&self) -> Result<PencilEigen> {
        eigendecompose(self)
    }

    /// Spectral norm (largest absolute eigenvalue).
    pub fn spectral_norm(&self) -> Result<f64> {
        let e = self.eigen()?;
        Ok(e.eigenvalues().iter().fold(0.0_f64, |acc, v| acc.max(v.abs())))
    }

    /// `⟨ψ|M|ψ⟩`, real part.
    pub fn expectation(&self, psi: &ComplexVector) -> f64 {
        psi.dotc(&(&self.0 * psi)).re
    }
}

/// The tuple `(A_1, ..., A_n)` of Hermitian `d×d` matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorTuple {
    ops: Vec<Hermitian>,
    d: usize,
}

/// Validates raw matrices as an operator tuple.
pub fn validate_tuple(raw: Vec<ComplexMatrix>, tol: &Tolerances) -> Result<OperatorTuple> {
    let first = raw.first().ok_or(WignerError::EmptyInput)?;
    let d = first.nrows();
    let mut ops = Vec::with_capacity(raw.len());
    for m in raw {
        if m.nrows() != m.ncols() {
            return Err(WignerError::NotSquare { rows: m.nrows(), cols: m.ncols() });
        }
        if m.nrows() != d {
            return Err(WignerError::DimensionMismatch { expected: d, found: m.nrows() });
        }
        ops.push(Hermitian::new(m, tol.hermiticity)?);
    }
    Ok(OperatorTuple { ops, d })
}

impl OperatorTuple {
    pub fn new(ops: Vec<Hermitian>) -> Result<Self> {
        let d = ops.first().ok_or(WignerError::EmptyInput)?.dim();
        if let Some(bad) = ops.iter().find(|h| h.dim() != d) {
            return Err(WignerError::DimensionMismatch { expected: d, found: bad.dim() });
        }
        Ok(Self { ops, d })
    }

    pub fn from_real(d: usize, mats: &[&[f64]]) -> Result<Self> {
        let raw = mats.iter().map(|m| real_matrix(d, m)).collect();
        validate_tuple(raw, &Tolerances::default())
    }

    /// Number of operators `n`.
    pub fn n(&self) -> usize {
        self.ops.len()
    }

    /// Hilbert-space dimension `d`.
    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn ops(&self) -> &[Hermitian] {
        &self.ops
    }

    pub fn op(&self, k: usize) -> &Hermitian {
        &self.ops[k]
    }

    /// `ξ·A = Σ_k ξ_k A_k`.
    pub fn combine(&self, xi: &[f64]) -> Result<Hermitian> {
        if xi.len() != self.n() {
            return Err(WignerError::DimensionMismatch { expected: self.n(), found: xi.len() });
        }
        let mut acc = ComplexMatrix::zeros(self.d, self.d);
        for (x, a) in xi.iter().zip(&self.ops) {
            if *x != 0.0 {
                acc += a.matrix() * Complex64::new(*x, 0.0);
            }
        }
        Ok(Hermitian(acc))
    }

    /// Eigendecomposition of `ξ·A`, remembering `ξ`.
    pub fn pencil(&self, xi: &[f64]) -> Result<PencilEigen> {
        let mut eig = eigendecompose(&self.combine(xi)?)?;
        eig.xi = xi.to_vec();
        Ok(eig)
    }

    /// Conjugates every operator: `A_k ↦ U^† A_k U`.
    pub fn conjugated(&self, u: &ComplexMatrix) -> Self {
        let ops = self
            .ops
            .iter()
            .map(|a| Hermitian::symmetrized(u.adjoint() * a.matrix() * u))
            .collect();
        Self { ops, d: self.d }
    }

    /// Whether all pairs commute up to `tol` (max entry of the commutator).
    pub fn is_commuting(&self, tol: f64) -> bool {
        for (i, a) in self.ops.iter().enumerate() {
            for b in &self.ops[i + 1..] {
                let c = a.matrix() * b.matrix() - b.matrix() * a.matrix();
                if max_abs(&c) > tol {
                    return false;
                }
            }
        }
        true
    }
}

/// Positive semidefinite, unit-trace Hermitian matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix(Hermitian);

impl DensityMatrix {
    pub fn new(m: ComplexMatrix, tol: &Tolerances) -> Result<Self> {
        let h = Hermitian::new(m, tol.hermiticity)?;
        let tr = trace(h.matrix()).re;
        if (tr - 1.0).abs() > tol.trace {
            return Err(WignerError::BadTrace { trace: tr });
        }
        let min_eigenvalue = h.eigen()?.eigenvalues()[0];
        if min_eigenvalue < -tol.psd {
            return Err(WignerError::NotPsd { min_eigenvalue });
        }
        Ok(Self(h))
    }

    /// `I/d`.
    pub fn maximally_mixed(d: usize) -> Self {
        let m = ComplexMatrix::identity(d, d) * Complex64::new(1.0 / d as f64, 0.0);
        Self(Hermitian(m))
    }

    /// `|ψ⟩⟨ψ|` after normalizing `ψ`.
    pub fn pure(psi: &ComplexVector) -> Result<Self> {
        let norm = psi.norm();
        if norm == 0.0 {
            return Err(WignerError::NotNormalized { norm });
        }
        let v = psi / Complex64::new(norm, 0.0);
        Ok(Self(Hermitian::symmetrized(&v * v.adjoint())))
    }

    /// Diagonal state with the given probabilities.
    pub fn diagonal(probs: &[f64]) -> Result<Self> {
        let d = probs.len();
        let m = ComplexMatrix::from_fn(d, d, |i, j| {
            if i == j { Complex64::new(probs[i], 0.0) } else { Complex64::new(0.0, 0.0) }
        });
        Self::new(m, &Tolerances::default())
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        self.0.matrix()
    }

    pub fn hermitian(&self) -> &Hermitian {
        &self.0
    }

    /// `U ρ U^†`.
    pub fn transformed(&self, u: &ComplexMatrix) -> Self {
        Self(Hermitian::symmetrized(u * self.matrix() * u.adjoint()))
    }

    /// `tr(ρ X)`.
    pub fn expect(&self, x: &ComplexMatrix) -> Complex64 {
        trace_product(self.matrix(), x)
    }
}

/// Sorted eigendecomposition of a Hermitian matrix (typically `ξ·A`).
///
/// Eigenvalues are ascending; the branch index `μ` refers to that order.
/// Eigenvalues within `degeneracy_rel × spectral diameter` of their neighbour
/// are grouped into clusters, each cluster representing one eigenprojection.
#[derive(Debug, Clone)]
pub struct PencilEigen {
    xi: Vec<f64>,
    eigenvalues: Vec<f64>,
    eigenvectors: ComplexMatrix,
    clusters: Vec<Range<usize>>,
}

pub fn eigendecompose(m: &Hermitian) -> Result<PencilEigen> {
    eigendecompose_with(m, Tolerances::default().degeneracy_rel)
}

pub fn eigendecompose_with(m: &Hermitian, degeneracy_rel: f64) -> Result<PencilEigen> {
    let d = m.dim();
    let eig = m
        .matrix()
        .clone()
        .try_symmetric_eigen(f64::EPSILON, 0)
        .ok_or(WignerError::ConvergenceFailure)?;
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    if eigenvalues.iter().any(|v| !v.is_finite()) {
        return Err(WignerError::ConvergenceFailure);
    }
    let eigenvectors = ComplexMatrix::from_fn(d, d, |r, c| eig.eigenvectors[(r, order[c])]);

    let diameter = eigenvalues[d - 1] - eigenvalues[0];
    let threshold = degeneracy_rel * diameter;
    let mut clusters = Vec::new();
    let mut start = 0;
    for mu in 1..=d {
        if mu == d || eigenvalues[mu] - eigenvalues[mu - 1] > threshold {
            clusters.push(start..mu);
            start = mu;
        }
    }
    Ok(PencilEigen { xi: Vec::new(), eigenvalues, eigenvectors, clusters })
}

impl PencilEigen {
    pub fn xi(&self) -> &[f64] {
        &self.xi
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Column matrix of orthonormal eigenvectors, in eigenvalue order.
    pub fn eigenvectors(&self) -> &ComplexMatrix {
        &self.eigenvectors
    }

    pub fn eigenvector(&self, mu: usize) -> ComplexVector {
        self.eigenvectors.column(mu).into_owned()
    }

    pub fn clusters(&self) -> &[Range<usize>] {
        &self.clusters
    }

    pub fn spectral_diameter(&self) -> f64 {
        self.eigenvalues[self.dim() - 1] - self.eigenvalues[0]
    }

    /// Distance from `α_μ` to the nearest other eigenvalue (`∞` when d = 1).
    pub fn gap(&self, mu: usize) -> f64 {
        let v = self.eigenvalues[mu];
        let mut gap = f64::INFINITY;
        if mu > 0 {
            gap = gap.min(v - self.eigenvalues[mu - 1]);
        }
        if mu + 1 < self.dim() {
            gap = gap.min(self.eigenvalues[mu + 1] - v);
        }
        gap
    }

    /// Mean eigenvalue of a cluster.
    pub fn cluster_value(&self, c: usize) -> f64 {
        let r = self.clusters[c].clone();
        let len = r.len() as f64;
        self.eigenvalues[r].iter().sum::<f64>() / len
    }

    /// Eigenprojection of cluster `c`.
    pub fn projector(&self, c: usize) -> ComplexMatrix {
        let d = self.dim();
        let mut p = ComplexMatrix::zeros(d, d);
        for mu in self.clusters[c].clone() {
            let v = self.eigenvectors.column(mu);
            p += v * v.adjoint();
        }
        p
    }

    /// `tr(X P_c)` for every cluster, as sums of sandwiches `⟨v|X|v⟩`.
    pub fn cluster_weights(&self, x: &ComplexMatrix) -> Vec<Complex64> {
        let xv = x * &self.eigenvectors;
        let per_vector: Vec<Complex64> = (0..self.dim())
            .map(|mu| self.eigenvectors.column(mu).dotc(&xv.column(mu)))
            .collect();
        self.clusters
            .iter()
            .map(|r| per_vector[r.clone()].iter().sum())
            .collect()
    }

    /// `(α_c, tr(X P_c))` pairs.
    pub fn spectral_measure(&self, x: &ComplexMatrix) -> Vec<(f64, Complex64)> {
        self.cluster_weights(x)
            .into_iter()
            .enumerate()
            .map(|(c, w)| (self.cluster_value(c), w))
            .collect()
    }

    /// Largest `‖M v_μ − α_μ v_μ‖` over the eigenpairs.
    pub fn residual(&self, m: &Hermitian) -> f64 {
        (0..self.dim())
            .map(|mu| {
                let v = self.eigenvectors.column(mu);
                (m.matrix() * v - v * Complex64::new(self.eigenvalues[mu], 0.0)).norm()
            })
            .fold(0.0, f64::max)
    }
}

/// `(⟨ψ|A_1|ψ⟩, …, ⟨ψ|A_n|ψ⟩)` for a unit vector `ψ`.
pub fn expectation_tuple(a: &OperatorTuple, psi: &ComplexVector, tol: &Tolerances) -> Result<Vec<f64>> {
    if psi.len() != a.dim() {
        return Err(WignerError::DimensionMismatch { expected: a.dim(), found: psi.len() });
    }
    let norm = psi.norm();
    if (norm - 1.0).abs() > tol.normalization {
        return Err(WignerError::NotNormalized { norm });
    }
    Ok(a.ops().iter().map(|op| op.expectation(psi)).collect())
}

/// Coordinates of a Hermitian matrix in an orthonormal basis of the real
/// space of Hermitian matrices with inner product `tr(XY)`: the diagonal,
/// then `√2·Re` and `√2·Im` of each upper-triangular entry. Length `d²`.
pub fn hermitian_coordinates(m: &ComplexMatrix) -> Vec<f64> {
    let d = m.nrows();
    let mut out = Vec::with_capacity(d * d);
    for i in 0..d {
        out.push(m[(i, i)].re);
    }
    let s = std::f64::consts::SQRT_2;
    for i in 0..d {
        for j in i + 1..d {
            let z = (m[(i, j)] + m[(j, i)].conj()) * 0.5;
            out.push(s * z.re);
            out.push(s * z.im);
        }
    }
    out
}

/// Numerical rank of a set of real vectors: eigenvalues of the Gram matrix
/// below `rel_threshold × largest` count as zero. Each vector is normalized
/// first so that scale differences between vectors do not matter.
pub fn gram_rank(vectors: &[Vec<f64>], rel_threshold: f64) -> usize {
    let Some(first) = vectors.first() else { return 0 };
    let dim = first.len();
    // Gram of the small side: C Cᵀ with C = dim × m has the same nonzero
    // spectrum as the m × m Gram matrix.
    let mut g = DMatrix::<f64>::zeros(dim, dim);
    for v in vectors {
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        for i in 0..dim {
            let vi = v[i] / norm;
            if vi == 0.0 {
                continue;
            }
            for j in 0..dim {
                g[(i, j)] += vi * v[j] / norm;
            }
        }
    }
    let eig = g.symmetric_eigen();
    let max = eig.eigenvalues.iter().fold(0.0_f64, |a, v| a.max(v.abs()));
    if max == 0.0 {
        return 0;
    }
    eig.eigenvalues.iter().filter(|v| v.abs() > rel_threshold * max).count()
}
