//! Regularized distributions on rectangular grids.
//!
//! The distribution itself is generally not a function, so grids hold the
//! convolution `W_ρ ∗ G_ε` with the Gaussian whose Fourier transform is
//! `e^{−ε|ξ|²}`, i.e. `G_ε(a) = (4πε)^{−n/2} e^{−|a|²/4ε}`. It is computed by
//! sampling `Ŵ_ρ(ξ) e^{−ε|ξ|²}` on the dual grid and applying an
//! n-dimensional DFT, with the Fourier convention
//! `W(a) = (2π)^{−n} ∫ dξ Ŵ(ξ) e^{−iξ·a}`.
//!
//! [`directional`] offers a second route with exponential damping
//! `e^{−ε|ξ|}` that integrates over directions instead of using an FFT.

mod analysis;
pub mod directional;
mod emit;
mod fft;

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

pub use analysis::{
    grid_moment, l1_distance, marginal, mass_outside_halfspaces, negativity_report, pushforward, smeared_spectral_density,
    Direction, GridMoment, Marginal, NegativityReport,
};
pub use emit::{parse_csv, to_csv_string, write_csv, write_pgm_slice, PgmScaling};

use crate::error::{Result, WignerError};
use crate::linalg::{DensityMatrix, OperatorTuple};

/// Largest number of axes accepted for grid computations.
pub const MAX_GRID_AXES: usize = 4;
/// Required damping `e^{−ε|ξ_max|²}` at the dual-grid corner.
pub const DAMPING_TARGET: f64 = 1e-12;

/// Sampling box and regularization.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
    pub samples: Vec<usize>,
    pub epsilon: f64,
}

impl GridSpec {
    pub fn new(lo: Vec<f64>, hi: Vec<f64>, samples: Vec<usize>, epsilon: f64) -> Result<Self> {
        let n = lo.len();
        if n == 0 || hi.len() != n || samples.len() != n {
            return Err(WignerError::InvalidGrid("lo, hi and samples must have the same nonzero length".into()));
        }
        if n > MAX_GRID_AXES {
            return Err(WignerError::InvalidGrid(format!("at most {MAX_GRID_AXES} axes supported, got {n}")));
        }
        for k in 0..n {
            if !(lo[k] < hi[k]) {
                return Err(WignerError::InvalidGrid(format!("axis {k}: lo must be below hi")));
            }
            if samples[k] < 8 || !samples[k].is_power_of_two() {
                return Err(WignerError::InvalidGrid(format!(
                    "axis {k}: sample count {} must be a power of two ≥ 8",
                    samples[k]
                )));
            }
        }
        if !(epsilon > 0.0) || !epsilon.is_finite() {
            return Err(WignerError::InvalidGrid("epsilon must be positive".into()));
        }
        Ok(Self { lo, hi, samples, epsilon })
    }

    /// Same interval and sample count on every axis.
    pub fn cube(n: usize, lo: f64, hi: f64, samples: usize, epsilon: f64) -> Result<Self> {
        Self::new(vec![lo; n], vec![hi; n], vec![samples; n], epsilon)
    }

    /// `1e−2 · (diameter/4)²` for the box `[lo, hi]`.
    pub fn default_epsilon(lo: &[f64], hi: &[f64]) -> f64 {
        let diam2: f64 = lo.iter().zip(hi).map(|(l, h)| (h - l).powi(2)).sum();
        1e-2 * diam2 / 16.0
    }

    /// Equal-length box around the operator ranges with `samples` points per
    /// axis and the smallest ε that meets [`DAMPING_TARGET`]. Each side
    /// keeps a margin of at least six smearing widths `√(2ε)`.
    pub fn fitted(a: &OperatorTuple, samples: usize) -> Result<Self> {
        let n = a.n();
        let mut ranges = Vec::with_capacity(n);
        for op in a.ops() {
            let e = op.eigen()?;
            ranges.push((e.eigenvalues()[0], e.eigenvalues()[a.dim() - 1]));
        }
        let width = ranges.iter().map(|(l, h)| h - l).fold(0.0, f64::max).max(1.0);
        let mut margin = 0.5 * width;
        let mut eps = 0.0;
        for _ in 0..20 {
            let h = (width + 2.0 * margin) / samples as f64;
            eps = -DAMPING_TARGET.ln() * h * h / (n as f64 * PI * PI);
            let need = 6.0 * (2.0 * eps).sqrt();
            if need <= margin {
                break;
            }
            margin = need;
        }
        let half = 0.5 * width + margin;
        let lo = ranges.iter().map(|(l, h)| 0.5 * (l + h) - half).collect();
        let hi = ranges.iter().map(|(l, h)| 0.5 * (l + h) + half).collect();
        Self::new(lo, hi, vec![samples; n], eps)
    }

    pub fn n(&self) -> usize {
        self.lo.len()
    }

    pub fn len(&self) -> usize {
        self.samples.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn length(&self, k: usize) -> f64 {
        self.hi[k] - self.lo[k]
    }

    pub fn spacing(&self, k: usize) -> f64 {
        self.length(k) / self.samples[k] as f64
    }

    pub fn cell_volume(&self) -> f64 {
        (0..self.n()).map(|k| self.spacing(k)).product()
    }

    /// Cell-center coordinate of index `j` on axis `k`.
    pub fn coordinate(&self, k: usize, j: usize) -> f64 {
        self.lo[k] + (j as f64 + 0.5) * self.spacing(k)
    }

    pub fn axis_coordinates(&self, k: usize) -> Vec<f64> {
        (0..self.samples[k]).map(|j| self.coordinate(k, j)).collect()
    }

    /// Row-major flat index (last axis fastest).
    pub fn flat_index(&self, idx: &[usize]) -> usize {
        idx.iter().zip(&self.samples).fold(0, |acc, (i, n)| acc * n + i)
    }

    pub fn multi_index(&self, mut flat: usize) -> Vec<usize> {
        let mut idx = vec![0; self.n()];
        for k in (0..self.n()).rev() {
            idx[k] = flat % self.samples[k];
            flat /= self.samples[k];
        }
        idx
    }

    pub fn point(&self, flat: usize) -> Vec<f64> {
        self.multi_index(flat)
            .iter()
            .enumerate()
            .map(|(k, &j)| self.coordinate(k, j))
            .collect()
    }

    /// `e^{−ε|ξ|²}` at the corner of the dual grid.
    pub fn corner_damping(&self) -> f64 {
        let xi2: f64 = (0..self.n()).map(|k| (PI / self.spacing(k)).powi(2)).sum();
        (-self.epsilon * xi2).exp()
    }
}

/// Non-fatal findings reported with a grid.
#[derive(Debug, Clone, PartialEq)]
pub enum GridWarning {
    /// The operator range on `axis`, widened by `3√(2ε)`, leaves the box.
    AliasingRisk { axis: usize, needed: (f64, f64) },
    /// The damping at the dual-grid corner exceeds [`DAMPING_TARGET`].
    WeakDamping { achieved: f64 },
}

/// Regularized distribution sampled at cell centers.
#[derive(Debug, Clone, PartialEq)]
pub struct WignerGrid {
    pub spec: GridSpec,
    pub values: Vec<f64>,
    /// Largest discarded imaginary part.
    pub residual_imag: f64,
    pub warnings: Vec<GridWarning>,
}

impl WignerGrid {
    pub fn from_values(spec: GridSpec, values: Vec<f64>) -> Result<Self> {
        if values.len() != spec.len() {
            return Err(WignerError::InvalidGrid(format!(
                "expected {} values, got {}",
                spec.len(),
                values.len()
            )));
        }
        Ok(Self { spec, values, residual_imag: 0.0, warnings: Vec::new() })
    }

    pub fn value(&self, idx: &[usize]) -> f64 {
        self.values[self.spec.flat_index(idx)]
    }

    /// Riemann sum `Σ values × cell volume`.
    pub fn mass(&self) -> f64 {
        self.values.iter().sum::<f64>() * self.spec.cell_volume()
    }

    /// Largest absolute value.
    pub fn peak(&self) -> f64 {
        self.values.iter().fold(0.0, |acc, v| acc.max(v.abs()))
    }

    /// Multilinear interpolation between cell centers; zero outside the
    /// hull of the centers.
    pub fn interpolate(&self, point: &[f64]) -> f64 {
        let n = self.spec.n();
        let mut base = vec![0usize; n];
        let mut frac = vec![0.0; n];
        for k in 0..n {
            let pos = (point[k] - self.spec.lo[k]) / self.spec.spacing(k) - 0.5;
            let last = (self.spec.samples[k] - 1) as f64;
            if !(0.0..=last).contains(&pos) {
                return 0.0;
            }
            let i = (pos.floor() as usize).min(self.spec.samples[k] - 2);
            base[k] = i;
            frac[k] = pos - i as f64;
        }
        let mut acc = 0.0;
        let mut idx = vec![0usize; n];
        for corner in 0..(1usize << n) {
            let mut w = 1.0;
            for k in 0..n {
                let up = (corner >> k) & 1 == 1;
                idx[k] = base[k] + up as usize;
                w *= if up { frac[k] } else { 1.0 - frac[k] };
            }
            if w != 0.0 {
                acc += w * self.value(&idx);
            }
        }
        acc
    }
}

fn check_system(a: &OperatorTuple, rho: &DensityMatrix, spec: &GridSpec) -> Result<()> {
    if spec.n() != a.n() {
        return Err(WignerError::DimensionMismatch { expected: a.n(), found: spec.n() });
    }
    if rho.dim() != a.dim() {
        return Err(WignerError::DimensionMismatch { expected: a.dim(), found: rho.dim() });
    }
    Ok(())
}

/// Warns when the operator ranges (widened by `margin`) leave the box.
pub(crate) fn aliasing_warnings(a: &OperatorTuple, spec: &GridSpec, margin: f64) -> Result<Vec<GridWarning>> {
    let mut out = Vec::new();
    for (k, op) in a.ops().iter().enumerate() {
        let e = op.eigen()?;
        let lo = e.eigenvalues()[0] - margin;
        let hi = e.eigenvalues()[a.dim() - 1] + margin;
        if lo < spec.lo[k] || hi > spec.hi[k] {
            out.push(GridWarning::AliasingRisk { axis: k, needed: (lo, hi) });
        }
    }
    Ok(out)
}

fn gcd(mut a: i64, mut b: i64) -> i64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.abs()
}

/// Signed dual index of array position `i` on an axis of length `len`.
fn dual_index(i: usize, len: usize) -> i64 {
    if i < len / 2 { i as i64 } else { i as i64 - len as i64 }
}

/// Damped, phase-shifted transform sample at the signed dual index `m`.
fn dual_sample(a: &OperatorTuple, rho: &DensityMatrix, spec: &GridSpec, m: &[i64]) -> Result<Complex64> {
    let xi: Vec<f64> = m.iter().enumerate().map(|(k, &mk)| mk as f64 * 2.0 * PI / spec.length(k)).collect();
    let xi_sq: f64 = xi.iter().map(|x| x * x).sum();
    let xi_dot_c: f64 = xi.iter().enumerate().map(|(k, x)| x * spec.coordinate(k, 0)).sum();
    let w = crate::charfn::char_function(a, rho, &xi)?;
    Ok(w * (-spec.epsilon * xi_sq).exp() * Complex64::from_polar(1.0, -xi_dot_c))
}

/// Replaces every sample with a Nyquist component by the average over both
/// signs of those components. On the grid the two signs give the same
/// phase, and the averaged spectrum is Hermitian, so the transform is real.
fn symmetrize_nyquist(a: &OperatorTuple, rho: &DensityMatrix, spec: &GridSpec, data: &mut [Complex64]) -> Result<()> {
    let shape = &spec.samples;
    let targets: Vec<(usize, Vec<i64>)> = (0..spec.len())
        .filter_map(|flat| {
            let m: Vec<i64> = spec.multi_index(flat).iter().zip(shape).map(|(&i, &len)| dual_index(i, len)).collect();
            m.iter().zip(shape).any(|(&mk, &len)| mk == -((len / 2) as i64)).then_some((flat, m))
        })
        .collect();
    let averaged: Vec<(usize, Complex64)> = targets
        .par_iter()
        .map(|(flat, m)| {
            let nyquist: Vec<usize> =
                (0..m.len()).filter(|&k| m[k] == -((shape[k] / 2) as i64)).collect();
            let mut sum = Complex64::new(0.0, 0.0);
            for mask in 0..(1usize << nyquist.len()) {
                let mut mm = m.clone();
                for (bit, &k) in nyquist.iter().enumerate() {
                    if mask >> bit & 1 == 1 {
                        mm[k] = -mm[k];
                    }
                }
                sum += dual_sample(a, rho, spec, &mm)?;
            }
            Ok((*flat, sum / (1usize << nyquist.len()) as f64))
        })
        .collect::<Result<_>>()?;
    for (flat, v) in averaged {
        data[flat] = v;
    }
    Ok(())
}

/// `W_ρ ∗ G_ε` on the grid of `spec`.
///
/// `Ŵ_ρ` is evaluated once per primitive integer direction of the dual
/// grid; all integer multiples along that ray reuse the same
/// eigendecomposition.
pub fn compute_wigner_grid(a: &OperatorTuple, rho: &DensityMatrix, spec: &GridSpec) -> Result<WignerGrid> {
    check_system(a, rho, spec)?;
    let n = spec.n();
    let shape = spec.samples.clone();
    let step: Vec<f64> = (0..n).map(|k| 2.0 * PI / spec.length(k)).collect();
    let first_center: Vec<f64> = (0..n).map(|k| spec.coordinate(k, 0)).collect();
    let eps = spec.epsilon;

    let in_range = |m: &[i64]| {
        m.iter().zip(&shape).all(|(&mk, &len)| {
            let half = (len / 2) as i64;
            (-half..half).contains(&mk)
        })
    };
    let flat_of = |m: &[i64]| {
        m.iter()
            .zip(&shape)
            .fold(0usize, |acc, (&mk, &len)| acc * len + mk.rem_euclid(len as i64) as usize)
    };

    let primitives: Vec<Vec<i64>> = (0..spec.len())
        .filter_map(|flat| {
            let m: Vec<i64> = spec
                .multi_index(flat)
                .iter()
                .zip(&shape)
                .map(|(&i, &len)| dual_index(i, len))
                .collect();
            let g = m.iter().fold(0, |acc, &x| gcd(acc, x));
            (g == 1).then_some(m)
        })
        .collect();

    let rays: Vec<Vec<(usize, Complex64)>> = primitives
        .par_iter()
        .map(|m0| {
            let xi0: Vec<f64> = m0.iter().zip(&step).map(|(&m, s)| m as f64 * s).collect();
            let measure = a.pencil(&xi0)?.spectral_measure(rho.matrix());
            let xi0_sq: f64 = xi0.iter().map(|x| x * x).sum();
            let xi0_dot_c: f64 = xi0.iter().zip(&first_center).map(|(x, c)| x * c).sum();
            let mut out = Vec::new();
            let mut t = 1i64;
            loop {
                let m: Vec<i64> = m0.iter().map(|&x| x * t).collect();
                if !in_range(&m) {
                    break;
                }
                let tf = t as f64;
                let w: Complex64 = measure
                    .iter()
                    .map(|(alpha, weight)| weight * Complex64::from_polar(1.0, tf * alpha))
                    .sum();
                let damp = (-eps * tf * tf * xi0_sq).exp();
                out.push((flat_of(&m), w * damp * Complex64::from_polar(1.0, -tf * xi0_dot_c)));
                t += 1;
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;

    let mut data = vec![Complex64::new(0.0, 0.0); spec.len()];
    data[0] = crate::linalg::trace(rho.matrix());
    for ray in rays {
        for (flat, v) in ray {
            data[flat] = v;
        }
    }
    symmetrize_nyquist(a, rho, spec, &mut data)?;
    fft::forward_nd(&mut data, &shape);

    let volume: f64 = (0..n).map(|k| spec.length(k)).product();
    let values: Vec<f64> = data.iter().map(|z| z.re / volume).collect();
    let residual_imag = data.iter().fold(0.0_f64, |acc, z| acc.max(z.im.abs())) / volume;

    let mut warnings = aliasing_warnings(a, spec, 3.0 * (2.0 * eps).sqrt())?;
    let achieved = spec.corner_damping();
    if achieved > DAMPING_TARGET * (1.0 + 1e-9) {
        warnings.push(GridWarning::WeakDamping { achieved });
    }
    Ok(WignerGrid { spec: spec.clone(), values, residual_imag, warnings })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::linalg::Hermitian;

    #[test]
    fn spec_validation() {
        assert!(GridSpec::cube(2, -1.0, 1.0, 12, 0.1).is_err());
        assert!(GridSpec::cube(2, -1.0, 1.0, 4, 0.1).is_err());
        assert!(GridSpec::cube(2, 1.0, -1.0, 16, 0.1).is_err());
        assert!(GridSpec::cube(2, -1.0, 1.0, 16, 0.0).is_err());
        assert!(GridSpec::cube(5, -1.0, 1.0, 8, 0.1).is_err());
        let s = GridSpec::cube(3, -2.0, 2.0, 16, 0.1).unwrap();
        for flat in [0, 17, 4095] {
            assert_eq!(s.flat_index(&s.multi_index(flat)), flat);
        }
        assert!((s.coordinate(0, 0) + 1.875).abs() < 1e-15);
    }

    #[test]
    fn scalar_tuple_is_a_gaussian() {
        // 1×1 matrices: W is a point mass at (c1, c2), smeared into a
        // Gaussian of variance 2ε per axis.
        let (c1, c2) = (0.3, -0.4);
        let a = OperatorTuple::from_real(1, &[&[c1], &[c2]]).unwrap();
        let rho = DensityMatrix::maximally_mixed(1);
        let eps = 0.05;
        let spec = GridSpec::cube(2, -4.0, 4.0, 128, eps).unwrap();
        let grid = compute_wigner_grid(&a, &rho, &spec).unwrap();
        assert!(grid.warnings.is_empty(), "{:?}", grid.warnings);
        let mut worst: f64 = 0.0;
        for flat in 0..spec.len() {
            let p = spec.point(flat);
            let r2 = (p[0] - c1).powi(2) + (p[1] - c2).powi(2);
            let exact = (-r2 / (4.0 * eps)).exp() / (4.0 * PI * eps);
            worst = worst.max((grid.values[flat] - exact).abs());
        }
        assert!(worst < 1e-10, "max deviation {worst}");
        assert!((grid.mass() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn aliasing_and_damping_warnings() {
        let ex = catalog::make("pauli2").unwrap();
        let spec = GridSpec::cube(2, -0.5, 0.5, 8, 0.001).unwrap();
        let grid = compute_wigner_grid(&ex.tuple, &ex.state, &spec).unwrap();
        assert!(grid.warnings.iter().any(|w| matches!(w, GridWarning::AliasingRisk { .. })));
        assert!(grid.warnings.iter().any(|w| matches!(w, GridWarning::WeakDamping { .. })));
    }

    #[test]
    fn dimension_checked() {
        let ex = catalog::make("pauli3").unwrap();
        let spec = GridSpec::cube(2, -2.0, 2.0, 16, 0.1).unwrap();
        assert!(compute_wigner_grid(&ex.tuple, &ex.state, &spec).is_err());
    }

    #[test]
    fn interpolation_reproduces_linear_functions() {
        let spec = GridSpec::new(vec![0.0, -1.0], vec![1.0, 1.0], vec![8, 16], 0.1).unwrap();
        let values = (0..spec.len())
            .map(|f| {
                let p = spec.point(f);
                2.0 * p[0] - p[1] + 0.5
            })
            .collect();
        let grid = WignerGrid::from_values(spec, values).unwrap();
        let v = grid.interpolate(&[0.4, 0.33]);
        assert!((v - (0.8 - 0.33 + 0.5)).abs() < 1e-12);
        assert_eq!(grid.interpolate(&[5.0, 0.0]), 0.0);
    }

    #[test]
    fn box_need_not_be_centered() {
        let a = OperatorTuple::new(vec![Hermitian::from_real(1, &[3.0]).unwrap()]).unwrap();
        let rho = DensityMatrix::maximally_mixed(1);
        let spec = GridSpec::new(vec![1.0], vec![5.0], vec![128], 0.02).unwrap();
        let grid = compute_wigner_grid(&a, &rho, &spec).unwrap();
        let peak_at = (0..spec.len()).max_by(|&i, &j| grid.values[i].total_cmp(&grid.values[j])).unwrap();
        assert!((spec.point(peak_at)[0] - 3.0).abs() <= spec.spacing(0));
    }
}
