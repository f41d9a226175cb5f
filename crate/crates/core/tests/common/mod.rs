//! Independent oracles shared by the integration tests and the acceptance
//! harness. None of them call into the production algorithms they check.

#![allow(dead_code)]

use num_complex::Complex64;
use qwigner_core::{ComplexMatrix, DensityMatrix, OperatorTuple};

/// `e^M` by scaling and squaring with a degree-24 Taylor polynomial.
pub fn expm(m: &ComplexMatrix) -> ComplexMatrix {
    let d = m.nrows();
    let norm: f64 = m.iter().map(|z| z.norm()).sum::<f64>().max(f64::MIN_POSITIVE);
    let squarings = norm.log2().ceil().max(0.0) as u32 + 1;
    let scaled = m * Complex64::new(0.5f64.powi(squarings as i32), 0.0);
    let mut term = ComplexMatrix::identity(d, d);
    let mut sum = term.clone();
    for k in 1..=24 {
        term = &term * &scaled * Complex64::new(1.0 / k as f64, 0.0);
        sum += &term;
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

/// `tr ρ e^{iξ·A}` through [`expm`].
pub fn char_function_oracle(a: &OperatorTuple, rho: &DensityMatrix, xi: &[f64]) -> Complex64 {
    let d = a.dim();
    let mut gen = ComplexMatrix::zeros(d, d);
    for (x, op) in xi.iter().zip(a.ops()) {
        gen += op.matrix() * Complex64::new(0.0, *x);
    }
    (rho.matrix() * expm(&gen)).trace()
}

/// Weyl-ordered moment as the average of the products over all distinct
/// orderings of the word with `r_k` letters `k`.
pub fn weyl_moment_oracle(a: &OperatorTuple, r: &[u32]) -> ComplexMatrix {
    fn walk(
        a: &OperatorTuple,
        left: &mut Vec<u32>,
        prefix: ComplexMatrix,
        sum: &mut ComplexMatrix,
        count: &mut u64,
    ) {
        if left.iter().all(|&x| x == 0) {
            *sum += prefix;
            *count += 1;
            return;
        }
        for k in 0..left.len() {
            if left[k] > 0 {
                left[k] -= 1;
                walk(a, left, &prefix * a.op(k).matrix(), sum, count);
                left[k] += 1;
            }
        }
    }
    let d = a.dim();
    let mut sum = ComplexMatrix::zeros(d, d);
    let mut count = 0;
    walk(a, &mut r.to_vec(), ComplexMatrix::identity(d, d), &mut sum, &mut count);
    sum / Complex64::new(count as f64, 0.0)
}

/// Coefficients `c_0..c_d` of `det(λI − M) = Σ c_k λ^k` by the
/// Faddeev–LeVerrier recursion.
pub fn characteristic_polynomial(m: &ComplexMatrix) -> Vec<Complex64> {
    let d = m.nrows();
    let mut coeffs = vec![Complex64::new(0.0, 0.0); d + 1];
    coeffs[d] = Complex64::new(1.0, 0.0);
    let mut mk = ComplexMatrix::zeros(d, d);
    for k in 1..=d {
        mk = m * &mk + ComplexMatrix::identity(d, d) * coeffs[d + 1 - k];
        let am = m * &mk;
        coeffs[d - k] = -am.trace() / Complex64::new(k as f64, 0.0);
    }
    coeffs
}

/// Real parts of the roots of the characteristic polynomial, ascending, by
/// Durand–Kerner iteration.
pub fn eigenvalues_oracle(m: &ComplexMatrix) -> Vec<f64> {
    let c = characteristic_polynomial(m);
    let d = m.nrows();
    let eval = |z: Complex64| c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &ck| acc * z + ck);
    let radius = 1.0 + c[..d].iter().map(|z| z.norm()).fold(0.0, f64::max);
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..d).map(|k| seed.powu(k as u32) * radius).collect();
    for _ in 0..2000 {
        let mut delta: f64 = 0.0;
        for i in 0..d {
            let denom = (0..d).filter(|&j| j != i).fold(Complex64::new(1.0, 0.0), |acc, j| acc * (roots[i] - roots[j]));
            let step = eval(roots[i]) / denom;
            roots[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 * radius {
            break;
        }
    }
    let mut out: Vec<f64> = roots.iter().map(|z| z.re).collect();
    out.sort_by(f64::total_cmp);
    out
}

/// Central-difference gradient of `f` at `x`.
pub fn gradient(f: impl Fn(&[f64]) -> f64, x: &[f64], h: f64) -> Vec<f64> {
    (0..x.len())
        .map(|k| {
            let mut p = x.to_vec();
            let mut m = x.to_vec();
            p[k] += h;
            m[k] -= h;
            (f(&p) - f(&m)) / (2.0 * h)
        })
        .collect()
}

/// Largest absolute entry of `x − y`.
pub fn max_diff(x: &ComplexMatrix, y: &ComplexMatrix) -> f64 {
    (x - y).iter().map(|z| z.norm()).fold(0.0, f64::max)
}
