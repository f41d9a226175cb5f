//! Marginals, moments and sign structure of a computed grid.

use std::f64::consts::PI;

use nalgebra::DMatrix;

use super::{GridSpec, WignerGrid};
use crate::error::{Result, WignerError};
use crate::linalg::{DensityMatrix, OperatorTuple};

/// Largest total degree accepted by [`grid_moment`].
pub const MAX_GRID_MOMENT_DEGREE: u32 = 8;

/// Projection direction for a marginal.
#[derive(Debug, Clone, PartialEq)]
pub enum Direction {
    Axis(usize),
    General(Vec<f64>),
}

/// Density of `u·a` on equally spaced bins.
#[derive(Debug, Clone, PartialEq)]
pub struct Marginal {
    /// Bin centers.
    pub t: Vec<f64>,
    pub density: Vec<f64>,
    pub bin_width: f64,
}

impl Marginal {
    pub fn mass(&self) -> f64 {
        self.density.iter().sum::<f64>() * self.bin_width
    }

    pub fn mean(&self) -> f64 {
        self.t.iter().zip(&self.density).map(|(t, p)| t * p).sum::<f64>() * self.bin_width / self.mass()
    }
}

/// Marginal of the grid along a direction.
///
/// Axis marginals sum out the other axes exactly. For a general `u` each
/// cell is treated as uniform over its box and its projected footprint is
/// integrated over bins of width `|u| · min_k h_k`. Linear deposition of
/// the cell centers instead would alias: along rational directions the
/// centers project onto a regular comb whose spacing beats against the
/// bins.
pub fn marginal(grid: &WignerGrid, direction: &Direction) -> Result<Marginal> {
    let spec = &grid.spec;
    let n = spec.n();
    let cell = spec.cell_volume();
    match direction {
        Direction::Axis(k) => {
            let k = *k;
            if k >= n {
                return Err(WignerError::InvalidArgument(format!("axis {k} out of range for n = {n}")));
            }
            let h = spec.spacing(k);
            let mut density = vec![0.0; spec.samples[k]];
            for (flat, v) in grid.values.iter().enumerate() {
                density[spec.multi_index(flat)[k]] += v * cell / h;
            }
            Ok(Marginal { t: spec.axis_coordinates(k), density, bin_width: h })
        }
        Direction::General(u) => {
            if u.len() != n {
                return Err(WignerError::DimensionMismatch { expected: n, found: u.len() });
            }
            let norm = u.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm == 0.0 {
                return Err(WignerError::InvalidArgument("zero direction".into()));
            }
            let h_min = (0..n).map(|k| spec.spacing(k)).fold(f64::INFINITY, f64::min);
            let w = norm * h_min;
            let (mut t_lo, mut t_hi) = (0.0, 0.0);
            for (k, uk) in u.iter().enumerate() {
                let (a, b) = (uk * spec.lo[k], uk * spec.hi[k]);
                t_lo += a.min(b);
                t_hi += a.max(b);
            }
            let bins = ((t_hi - t_lo) / w).ceil() as usize + 1;
            let t: Vec<f64> = (0..bins).map(|b| t_lo + (b as f64 + 0.5) * w).collect();
            let footprint = Footprint::new((0..n).map(|k| (u[k] * spec.spacing(k)).abs()), w);
            let mut density = vec![0.0; bins];
            for (flat, v) in grid.values.iter().enumerate() {
                let p = spec.point(flat);
                let proj: f64 = u.iter().zip(&p).map(|(x, y)| x * y).sum();
                let start = proj - 0.5 * footprint.total;
                let first = ((start - t_lo) / w).floor().max(0.0) as usize;
                let last = (((start + footprint.total - t_lo) / w).floor().max(0.0) as usize).min(bins - 1);
                let m = v * cell / w;
                for (b, slot) in density.iter_mut().enumerate().take(last + 1).skip(first) {
                    let lo = t_lo + b as f64 * w - start;
                    *slot += m * (footprint.cdf(lo + w) - footprint.cdf(lo));
                }
            }
            Ok(Marginal { t, density, bin_width: w })
        }
    }
}

/// Distribution of `Σ_k U_k` with `U_k` uniform on `[0, a_k]`: the
/// projection of a uniform cell onto a direction.
struct Footprint {
    widths: Vec<f64>,
    total: f64,
    norm: f64,
}

impl Footprint {
    /// Widths below `1e-12 · scale` are dropped (axes orthogonal to `u`).
    fn new(widths: impl Iterator<Item = f64>, scale: f64) -> Self {
        let widths: Vec<f64> = widths.filter(|&a| a > 1e-12 * scale).collect();
        let total = widths.iter().sum();
        let factorial: f64 = (1..=widths.len()).map(|k| k as f64).product();
        let norm = 1.0 / (factorial * widths.iter().product::<f64>());
        Self { widths, total, norm }
    }

    /// `P(Σ U_k ≤ x)` by inclusion-exclusion over the corners of the box.
    fn cdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        if x >= self.total {
            return 1.0;
        }
        let q = self.widths.len();
        let mut acc = 0.0;
        for mask in 0..(1usize << q) {
            let shift: f64 = (0..q).filter(|&k| mask >> k & 1 == 1).map(|k| self.widths[k]).sum();
            let r = x - shift;
            if r > 0.0 {
                let sign = if mask.count_ones() % 2 == 0 { 1.0 } else { -1.0 };
                acc += sign * r.powi(q as i32);
            }
        }
        (acc * self.norm).clamp(0.0, 1.0)
    }
}

/// `Σ_c tr(ρP_c(u)) N(α_c(u), 2ε|u|²)` at each `t`: the exact marginal of
/// the Gaussian-regularized distribution.
pub fn smeared_spectral_density(
    a: &OperatorTuple,
    rho: &DensityMatrix,
    u: &[f64],
    epsilon: f64,
    t: &[f64],
) -> Result<Vec<f64>> {
    let measure = a.pencil(u)?.spectral_measure(rho.matrix());
    let var = 2.0 * epsilon * u.iter().map(|x| x * x).sum::<f64>();
    let norm = 1.0 / (2.0 * PI * var).sqrt();
    Ok(t.iter()
        .map(|&x| {
            measure
                .iter()
                .map(|(alpha, w)| w.re * norm * (-(x - alpha).powi(2) / (2.0 * var)).exp())
                .sum()
        })
        .collect())
}

/// `Σ_b |density_b − target_b| · bin_width`.
pub fn l1_distance(m: &Marginal, target: &[f64]) -> f64 {
    m.density.iter().zip(target).map(|(p, q)| (p - q).abs()).sum::<f64>() * m.bin_width
}

/// Moment of the grid and its Gaussian-corrected value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridMoment {
    /// `Σ a^r values · cell volume`.
    pub raw: f64,
    /// Raw value with the smearing contribution removed (exact for degree ≤ 2).
    pub corrected: f64,
    /// Set when the degree exceeds 2 and `corrected` still carries ε terms.
    pub eps_biased: bool,
}

pub fn grid_moment(grid: &WignerGrid, r: &[u32]) -> Result<GridMoment> {
    let spec = &grid.spec;
    if r.len() != spec.n() {
        return Err(WignerError::DimensionMismatch { expected: spec.n(), found: r.len() });
    }
    let degree: u32 = r.iter().sum();
    if degree > MAX_GRID_MOMENT_DEGREE {
        return Err(WignerError::DegreeTooHigh { degree, max: MAX_GRID_MOMENT_DEGREE });
    }
    let cell = spec.cell_volume();
    let raw: f64 = grid
        .values
        .iter()
        .enumerate()
        .map(|(flat, v)| {
            let p = spec.point(flat);
            let mono: f64 = p.iter().zip(r).map(|(x, &e)| x.powi(e as i32)).product();
            mono * v
        })
        .sum::<f64>()
        * cell;
    // Smearing adds an independent N(0, 2ε) to each axis; only squares shift.
    let corrected = if degree == 2 && r.contains(&2) { raw - 2.0 * spec.epsilon * grid.mass() } else { raw };
    Ok(GridMoment { raw, corrected, eps_biased: degree > 2 })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NegativityReport {
    pub min_value: f64,
    /// `Σ max(−v, 0) · cell volume`.
    pub negative_mass: f64,
    pub peak: f64,
}

pub fn negativity_report(grid: &WignerGrid) -> NegativityReport {
    let min_value = grid.values.iter().copied().fold(f64::INFINITY, f64::min);
    let negative_mass = grid.values.iter().map(|v| (-v).max(0.0)).sum::<f64>() * grid.spec.cell_volume();
    NegativityReport { min_value, negative_mass, peak: grid.peak() }
}

/// Grid of `a ↦ W(R^{−1}(a − α)) / |det R|` on the same box, by
/// multilinear interpolation.
///
/// If `U^* A_k U = Σ_ℓ R_{kℓ} A_ℓ + α_k`, this is the distribution of
/// `UρU^*` predicted from the distribution of `ρ`.
pub fn pushforward(grid: &WignerGrid, linear: &[Vec<f64>], shift: &[f64]) -> Result<WignerGrid> {
    let n = grid.spec.n();
    if linear.len() != n || linear.iter().any(|row| row.len() != n) || shift.len() != n {
        return Err(WignerError::DimensionMismatch { expected: n, found: linear.len() });
    }
    let r = DMatrix::from_fn(n, n, |i, j| linear[i][j]);
    let det = r.determinant();
    let inv = r
        .try_inverse()
        .ok_or_else(|| WignerError::InvalidArgument("linear part is singular".into()))?;
    let spec: GridSpec = grid.spec.clone();
    let values = (0..spec.len())
        .map(|flat| {
            let p = spec.point(flat);
            let q: Vec<f64> = (0..n)
                .map(|i| (0..n).map(|j| inv[(i, j)] * (p[j] - shift[j])).sum())
                .collect();
            grid.interpolate(&q) / det.abs()
        })
        .collect();
    WignerGrid::from_values(spec, values)
}

/// Fraction of `Σ|values|` lying more than `margin` outside the
/// intersection of the half-spaces `u·a ≤ h`.
pub fn mass_outside_halfspaces(grid: &WignerGrid, halfspaces: &[(Vec<f64>, f64)], margin: f64) -> f64 {
    let spec = &grid.spec;
    let total: f64 = grid.values.iter().map(|v| v.abs()).sum();
    let outside: f64 = grid
        .values
        .iter()
        .enumerate()
        .filter(|(flat, _)| {
            let p = spec.point(*flat);
            halfspaces.iter().any(|(u, h)| {
                let norm = u.iter().map(|x| x * x).sum::<f64>().sqrt();
                let proj: f64 = u.iter().zip(&p).map(|(x, y)| x * y).sum();
                proj > h + margin * norm
            })
        })
        .map(|(_, v)| v.abs())
        .sum();
    outside / total
}
