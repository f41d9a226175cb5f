//! Closed-form references for Pauli tuples.
//!
//! Trace conventions are stated per function: the `n = 3` radial profile is
//! for `ρ = I` (total mass 2), the `n = 2` profile for `ρ = I/2`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Result, WignerError};
use crate::quad::{extrapolate_to_zero, simpson};

/// Below this radius the `n = 3` profile uses its limit at the origin.
const ORIGIN_CUTOFF: f64 = 1e-6;

fn check_eps(epsilon: f64) -> Result<()> {
    if !(epsilon > 0.0) || !epsilon.is_finite() {
        return Err(WignerError::InvalidArgument(format!("epsilon must be positive, got {epsilon}")));
    }
    Ok(())
}

/// Radial profile `W_ε(s)` of `W_I ∗ G_ε` for the Pauli triple and `ρ = I`:
///
/// `[(s+1) e^{−(s+1)²/4ε} + (s−1) e^{−(s−1)²/4ε}] / (8 π^{3/2} s ε^{3/2})`.
///
/// The singularity at `s = 0` is removable; there the limit
/// `2 e^{−1/4ε} (1 − 1/2ε) / (8 π^{3/2} ε^{3/2})` is used.
pub fn qubit3_radial(s: f64, epsilon: f64) -> Result<f64> {
    check_eps(epsilon)?;
    if !(s >= 0.0) {
        return Err(WignerError::InvalidArgument(format!("radius must be nonnegative, got {s}")));
    }
    let norm = 8.0 * PI.powf(1.5) * epsilon.powf(1.5);
    if s < ORIGIN_CUTOFF {
        let g0 = (-1.0 / (4.0 * epsilon)).exp() * (1.0 - 1.0 / (2.0 * epsilon));
        return Ok(2.0 * g0 / norm);
    }
    let bump = |x: f64| x * (-x * x / (4.0 * epsilon)).exp();
    Ok((bump(s + 1.0) + bump(s - 1.0)) / (s * norm))
}

/// `4π ∫ s^{2+k} W_ε(s) ds` for `ρ = I`.
pub fn qubit3_radial_moment(k: i32, epsilon: f64) -> Result<f64> {
    check_eps(epsilon)?;
    let upper = 1.0 + 40.0 * epsilon.sqrt() + 1.0;
    let intervals = 40_000;
    let f = |s: f64| s.powi(2 + k) * qubit3_radial(s, epsilon).expect("valid arguments");
    Ok(4.0 * PI * simpson(f, 0.0, upper, intervals))
}

/// Moments of the normalized (`ρ = I/2`) distribution of `|a|`,
/// extrapolated to `ε → 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialParadox {
    /// `⟨|a|⟩`, tends to 2.
    pub mean: f64,
    /// `⟨|a|²⟩`, tends to 3.
    pub second: f64,
    /// `⟨|a|²⟩ − ⟨|a|⟩²`, tends to −1.
    pub variance: f64,
}

/// Richardson extrapolation of the radial moments over the given `ε`
/// values. The regularized distribution has positive variance only because
/// of the smearing; the limit is negative.
pub fn radial_paradox(epsilons: &[f64]) -> Result<RadialParadox> {
    if epsilons.len() < 2 {
        return Err(WignerError::InvalidArgument("need at least two epsilon values".into()));
    }
    let mut means = Vec::new();
    let mut seconds = Vec::new();
    for &eps in epsilons {
        means.push(0.5 * qubit3_radial_moment(1, eps)?);
        seconds.push(0.5 * qubit3_radial_moment(2, eps)?);
    }
    let mean = extrapolate_to_zero(epsilons, &means);
    let second = extrapolate_to_zero(epsilons, &seconds);
    Ok(RadialParadox { mean, second, variance: second - mean * mean })
}

/// `W_{I/2,ε}(r)` for the Pauli pair with exponential damping `e^{−ε|ξ|}`:
///
/// `(1/2π) ∂_λ Im[((ε − iλ)² + r²)^{−1/2}]` at `λ = 1`, which is
/// `(1/2π) Im[i(ε − i) z^{−3/2}]` with `z = (ε − i)² + r²` on the principal
/// branch.
pub fn qubit2_reference(r: f64, epsilon: f64) -> Result<f64> {
    check_eps(epsilon)?;
    if !(r >= 0.0) {
        return Err(WignerError::InvalidArgument(format!("radius must be nonnegative, got {r}")));
    }
    let w = Complex64::new(epsilon, -1.0);
    let z = w * w + r * r;
    // Im z = −2ε < 0 keeps z off the branch cut; guard anyway.
    if z.im == 0.0 && z.re <= 0.0 {
        return Err(WignerError::BranchAmbiguity);
    }
    let value = Complex64::new(0.0, 1.0) * w * z.powf(-1.5);
    Ok(value.im / (2.0 * PI))
}

/// Non-singular part `−1/(2π(1 − r²)^{3/2})` of the `ρ = I/2` distribution
/// inside the unit disc.
pub fn regular_part(r: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&r) {
        return Err(WignerError::InvalidArgument(format!("regular part defined for 0 ≤ r < 1, got {r}")));
    }
    Ok(-1.0 / (2.0 * PI * (1.0 - r * r).powf(1.5)))
}

/// `½(1 + r·a)`: multiplies the `ρ = I` distribution to give the one of
/// the state with Bloch vector `r`.
pub fn qubit_wigner_state_factor(a: &[f64], bloch_r: &[f64]) -> Result<f64> {
    if a.len() != bloch_r.len() {
        return Err(WignerError::DimensionMismatch { expected: bloch_r.len(), found: a.len() });
    }
    let norm2: f64 = bloch_r.iter().map(|x| x * x).sum();
    if norm2 > 1.0 + 1e-12 {
        return Err(WignerError::InvalidArgument("Bloch vector outside the unit ball".into()));
    }
    Ok(0.5 * (1.0 + a.iter().zip(bloch_r).map(|(x, y)| x * y).sum::<f64>()))
}
