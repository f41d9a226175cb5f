//! Weyl-ordered moments and the quantization map.
//!
//! `M_W^r` is the average over all orderings of a product containing `r_k`
//! factors `A_k`. Grouping the orderings by their first factor gives the
//! recursion `M_W^r = (1/R) Σ_k r_k A_k M_W^{r−e_k}` with `M_W^0 = I`, which
//! is what the table uses; the permutation average only serves as a test
//! oracle.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::{Result, WignerError};
use crate::linalg::{max_abs, trace_product, ComplexMatrix, Hermitian, OperatorTuple};

/// Default bound on the total degree for moment queries.
pub const DEFAULT_MAX_DEGREE: u32 = 10;

/// Exponent vector `r ∈ ℕⁿ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn zero(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn unit(n: usize, k: usize) -> Self {
        let mut r = vec![0; n];
        r[k] = 1;
        Self(r)
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// All multi-indices in `n` variables of total degree `degree`, in
    /// lexicographically decreasing order.
    pub fn of_degree(n: usize, degree: u32) -> Vec<MultiIndex> {
        fn rec(n: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
            if prefix.len() + 1 == n {
                prefix.push(left);
                out.push(MultiIndex(prefix.clone()));
                prefix.pop();
                return;
            }
            for first in (0..=left).rev() {
                prefix.push(first);
                rec(n, left - first, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if n > 0 {
            rec(n, degree, &mut Vec::with_capacity(n), &mut out);
        }
        out
    }

    /// Multinomial coefficient `R! / Π r_k!`.
    pub fn multinomial(&self) -> f64 {
        // Product of binomials avoids overflowing factorials.
        let mut acc = 1.0;
        let mut total = 0u32;
        for &rk in &self.0 {
            for j in 1..=rk {
                total += 1;
                acc *= total as f64 / j as f64;
            }
        }
        acc
    }

    /// `Π ξ_k^{r_k}`.
    pub fn monomial(&self, x: &[f64]) -> f64 {
        self.0.iter().zip(x).map(|(&e, v)| v.powi(e as i32)).product()
    }

    fn lowered(&self, k: usize) -> Option<MultiIndex> {
        (self.0[k] > 0).then(|| {
            let mut r = self.0.clone();
            r[k] -= 1;
            MultiIndex(r)
        })
    }
}

impl From<&[u32]> for MultiIndex {
    fn from(r: &[u32]) -> Self {
        Self(r.to_vec())
    }
}

/// All Weyl-ordered moments up to a total degree.
#[derive(Debug, Clone)]
pub struct MomentTable {
    n: usize,
    max_degree: u32,
    entries: BTreeMap<MultiIndex, Hermitian>,
}

impl MomentTable {
    /// Moments of every degree `≤ max_degree`. No degree cap is applied here.
    pub fn build(a: &OperatorTuple, max_degree: u32) -> Self {
        let mut table = Self::identity(a);
        for degree in 1..=max_degree {
            table.extend(a);
            debug_assert_eq!(table.max_degree, degree);
        }
        table
    }

    /// Table holding only `M_W^0 = I`.
    pub fn identity(a: &OperatorTuple) -> Self {
        let mut entries = BTreeMap::new();
        entries.insert(MultiIndex::zero(a.n()), Hermitian::identity(a.dim()));
        Self { n: a.n(), max_degree: 0, entries }
    }

    /// Adds the moments of the next degree and returns them.
    pub fn extend(&mut self, a: &OperatorTuple) -> Vec<(MultiIndex, Hermitian)> {
        let degree = self.max_degree + 1;
        let d = a.dim();
        let mut fresh = Vec::new();
        for r in MultiIndex::of_degree(self.n, degree) {
            let mut acc = ComplexMatrix::zeros(d, d);
            for k in 0..self.n {
                if let Some(lower) = r.lowered(k) {
                    let prev = self.entries[&lower].matrix();
                    acc += a.op(k).matrix() * prev * Complex64::new(r.0[k] as f64, 0.0);
                }
            }
            acc *= Complex64::new(1.0 / degree as f64, 0.0);
            fresh.push((r, Hermitian::symmetrized(acc)));
        }
        for (r, m) in &fresh {
            self.entries.insert(r.clone(), m.clone());
        }
        self.max_degree = degree;
        fresh
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn get(&self, r: &MultiIndex) -> Option<&Hermitian> {
        self.entries.get(r)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&MultiIndex, &Hermitian)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

fn check_degree(degree: u32, max: u32) -> Result<()> {
    if degree > max {
        return Err(WignerError::DegreeTooHigh { degree, max });
    }
    Ok(())
}

/// `M_W^r`, for total degree up to [`DEFAULT_MAX_DEGREE`].
pub fn weyl_moment(a: &OperatorTuple, r: &[u32]) -> Result<Hermitian> {
    weyl_moment_capped(a, r, DEFAULT_MAX_DEGREE)
}

pub fn weyl_moment_capped(a: &OperatorTuple, r: &[u32], max_degree: u32) -> Result<Hermitian> {
    if r.len() != a.n() {
        return Err(WignerError::DimensionMismatch { expected: a.n(), found: r.len() });
    }
    let r = MultiIndex::from(r);
    check_degree(r.degree(), max_degree)?;
    let table = MomentTable::build(a, r.degree());
    Ok(table.get(&r).cloned().expect("table covers the requested degree"))
}

/// Outcome of the multinomial identity check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MultinomialCheck {
    /// `‖Σ_r C(R, r) ξ^r M_W^r − (ξ·A)^R‖_max`.
    pub residual: f64,
    /// `‖ξ·A‖^R` (spectral norm).
    pub scale: f64,
}

pub fn check_multinomial(a: &OperatorTuple, xi: &[f64], degree: u32) -> Result<MultinomialCheck> {
    check_degree(degree, DEFAULT_MAX_DEGREE)?;
    let combined = a.combine(xi)?;
    let table = MomentTable::build(a, degree);
    let d = a.dim();
    let mut lhs = ComplexMatrix::zeros(d, d);
    for r in MultiIndex::of_degree(a.n(), degree) {
        let coeff = r.multinomial() * r.monomial(xi);
        lhs += table.get(&r).expect("degree in table").matrix() * Complex64::new(coeff, 0.0);
    }
    let mut power = ComplexMatrix::identity(d, d);
    for _ in 0..degree {
        power = combined.matrix() * power;
    }
    Ok(MultinomialCheck {
        residual: max_abs(&(lhs - power)),
        scale: combined.spectral_norm()?.powi(degree as i32),
    })
}

/// Real polynomial `Σ c_r a^r` in `n` variables.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    pub n: usize,
    pub terms: Vec<(MultiIndex, f64)>,
}

impl Polynomial {
    pub fn constant(n: usize, c: f64) -> Self {
        Self { n, terms: vec![(MultiIndex::zero(n), c)] }
    }

    pub fn monomial(r: &[u32], c: f64) -> Self {
        Self { n: r.len(), terms: vec![(MultiIndex::from(r), c)] }
    }

    /// `(ξ·a)^R` expanded into monomials.
    pub fn linear_power(xi: &[f64], degree: u32) -> Self {
        let terms = MultiIndex::of_degree(xi.len(), degree)
            .into_iter()
            .map(|r| {
                let c = r.multinomial() * r.monomial(xi);
                (r, c)
            })
            .collect();
        Self { n: xi.len(), terms }
    }

    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|(r, _)| r.degree()).max().unwrap_or(0)
    }

    pub fn evaluate(&self, x: &[f64]) -> f64 {
        self.terms.iter().map(|(r, c)| c * r.monomial(x)).sum()
    }
}

/// The quantization map `a^r ↦ M_W^r`, extended linearly.
pub fn quantize(a: &OperatorTuple, poly: &Polynomial) -> Result<Hermitian> {
    if poly.n != a.n() || poly.terms.iter().any(|(r, _)| r.n() != a.n()) {
        return Err(WignerError::DimensionMismatch { expected: a.n(), found: poly.n });
    }
    let degree = poly.degree();
    check_degree(degree, DEFAULT_MAX_DEGREE)?;
    let table = MomentTable::build(a, degree);
    let d = a.dim();
    let mut acc = ComplexMatrix::zeros(d, d);
    for (r, c) in &poly.terms {
        acc += table.get(r).expect("degree in table").matrix() * Complex64::new(*c, 0.0);
    }
    Ok(Hermitian::symmetrized(acc))
}

/// Largest `|tr(i[A_1, A_2] M_W^r)|` over `R ≤ max_degree`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrthogonalityCheck {
    pub max_trace: f64,
    /// `‖A_1‖ ‖A_2‖ max_r ‖M_W^r‖` (spectral norms).
    pub scale: f64,
}

pub fn commutator_orthogonality(a: &OperatorTuple, max_degree: u32) -> Result<OrthogonalityCheck> {
    if a.n() != 2 {
        return Err(WignerError::InvalidArgument(format!("needs a pair, got n = {}", a.n())));
    }
    let (a1, a2) = (a.op(0).matrix(), a.op(1).matrix());
    let comm = (a1 * a2 - a2 * a1) * Complex64::new(0.0, 1.0);
    let table = MomentTable::build(a, max_degree);
    let mut max_trace: f64 = 0.0;
    let mut max_norm: f64 = 0.0;
    for (_, m) in table.iter() {
        max_trace = max_trace.max(trace_product(&comm, m.matrix()).norm());
        max_norm = max_norm.max(m.spectral_norm()?);
    }
    let scale = a.op(0).spectral_norm()? * a.op(1).spectral_norm()? * max_norm;
    Ok(OrthogonalityCheck { max_trace, scale })
}
