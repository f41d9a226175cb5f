//! Invariant suite for a tuple and state, reported as TSV.

use std::fmt::Write as _;

use num_complex::Complex64;

use crate::catalog::NamedExample;
use crate::charfn::char_function;
use crate::error::Result;
use crate::geometry::{jnr_boundary, singular_set, sphere_directions, support_excess};
use crate::grid::{compute_wigner_grid, grid_moment, mass_outside_halfspaces, GridSpec};
use crate::infocomp::weyl_span_dimension;
use crate::linalg::{hermitian_deviation, DensityMatrix, OperatorTuple};
use crate::moments::{check_multinomial, commutator_orthogonality, MomentTable};
use crate::random::{random_direction, seeded};

/// One line of a report.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: String,
    pub value: f64,
    pub threshold: f64,
    pub pass: bool,
}

impl CheckResult {
    /// Passes when `value ≤ threshold`.
    pub fn at_most(name: impl Into<String>, value: f64, threshold: f64) -> Self {
        Self { name: name.into(), value, threshold, pass: value <= threshold }
    }

    /// Passes when `value ≥ threshold`.
    pub fn at_least(name: impl Into<String>, value: f64, threshold: f64) -> Self {
        Self { name: name.into(), value, threshold, pass: value >= threshold }
    }
}

/// TSV with header `check value threshold status` and a final `PASS` or
/// `FAIL` line.
pub fn to_tsv(results: &[CheckResult]) -> String {
    let mut out = String::from("check\tvalue\tthreshold\tstatus\n");
    for r in results {
        let status = if r.pass { "pass" } else { "fail" };
        let _ = writeln!(out, "{}\t{:e}\t{:e}\t{status}", r.name, r.value, r.threshold);
    }
    out.push_str(if all_pass(results) { "PASS\n" } else { "FAIL\n" });
    out
}

pub fn all_pass(results: &[CheckResult]) -> bool {
    results.iter().all(|r| r.pass)
}

/// Grid resolution used by the suite for each number of axes.
fn suite_samples(n: usize) -> Option<usize> {
    match n {
        1 => Some(512),
        2 => Some(128),
        3 => Some(64),
        _ => None,
    }
}

/// Runs every structural check that applies to the system.
pub fn check_system(a: &OperatorTuple, rho: &DensityMatrix, seed: u64) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    let n = a.n();
    let mut rng = seeded(seed);
    let xis: Vec<Vec<f64>> = (0..20)
        .map(|i| random_direction(n, &mut rng).into_iter().map(|x| x * (0.5 + i as f64)).collect())
        .collect();

    let w0 = char_function(a, rho, &vec![0.0; n])?;
    out.push(CheckResult::at_most("charfn_origin", (w0 - Complex64::new(1.0, 0.0)).norm(), 1e-12));
    let (mut bound, mut reality): (f64, f64) = (0.0, 0.0);
    for xi in &xis {
        let w = char_function(a, rho, xi)?;
        let minus: Vec<f64> = xi.iter().map(|x| -x).collect();
        let wm = char_function(a, rho, &minus)?;
        bound = bound.max(w.norm() - 1.0);
        reality = reality.max((wm - w.conj()).norm());
    }
    out.push(CheckResult::at_most("charfn_bound", bound, 1e-9));
    out.push(CheckResult::at_most("charfn_reality", reality, 1e-10));

    let mut homogeneity: f64 = 0.0;
    for xi in xis.iter().take(5) {
        let base = a.pencil(xi)?;
        for lambda in [2.0, 10.0] {
            let scaled: Vec<f64> = xi.iter().map(|x| x * lambda).collect();
            let e = a.pencil(&scaled)?;
            for (x, y) in base.eigenvalues().iter().zip(e.eigenvalues()) {
                homogeneity = homogeneity.max((lambda * x - y).abs() / lambda);
            }
        }
    }
    out.push(CheckResult::at_most("pencil_homogeneity", homogeneity, 1e-10));

    let mut multinomial: f64 = 0.0;
    for (degree, xi) in (1..=5).zip(&xis) {
        let c = check_multinomial(a, xi, degree)?;
        multinomial = multinomial.max(c.residual / c.scale.max(f64::MIN_POSITIVE));
    }
    out.push(CheckResult::at_most("multinomial_relative", multinomial, 1e-9));

    let table = MomentTable::build(a, 6);
    let herm = table.iter().map(|(_, m)| hermitian_deviation(m.matrix())).fold(0.0, f64::max);
    out.push(CheckResult::at_most("weyl_hermiticity", herm, 1e-10));

    if n == 2 {
        let c = commutator_orthogonality(a, 6)?;
        out.push(CheckResult::at_most("commutator_orthogonality", c.max_trace, 1e-9 * c.scale.max(1.0)));
        let span = weyl_span_dimension(a, None).dimension as f64;
        let d = a.dim() as f64;
        out.push(CheckResult::at_most("span_dimension_pair_bound", span, d * (d + 1.0) / 2.0));
    }

    let boundary = jnr_boundary(a, &sphere_directions(n, if n == 3 { 400 } else { 180 }, seed))?;
    if n >= 2 {
        let samples = singular_set(a, if n == 3 { 400 } else { 180 }, seed)?;
        let mut consistency: f64 = 0.0;
        let mut excess: f64 = f64::NEG_INFINITY;
        for s in &samples {
            let eig = a.pencil(&s.u)?;
            let ua: f64 = s.u.iter().zip(&s.a).map(|(x, y)| x * y).sum();
            consistency = consistency.max((ua - eig.eigenvalues()[s.mu]).abs());
            excess = excess.max(support_excess(&s.a, &boundary));
        }
        out.push(CheckResult::at_most("singular_eigen_consistency", consistency, 1e-9));
        if !samples.is_empty() {
            out.push(CheckResult::at_most("singular_inside_jnr", excess, 1e-8));
        }
    }

    if let Some(samples) = suite_samples(n) {
        let spec = GridSpec::fitted(a, samples)?;
        let grid = compute_wigner_grid(a, rho, &spec)?;
        out.push(CheckResult::at_most("grid_mass", (grid.mass() - 1.0).abs(), 1e-3));
        out.push(CheckResult::at_most("grid_reality", grid.residual_imag, 1e-9 * grid.peak()));
        let mut mean_err: f64 = 0.0;
        for k in 0..n {
            let mut r = vec![0; n];
            r[k] = 1;
            let m = grid_moment(&grid, &r)?;
            mean_err = mean_err.max((m.raw - rho.expect(a.op(k).matrix()).re).abs());
        }
        out.push(CheckResult::at_most("grid_means", mean_err, 1e-2));
        let halfspaces: Vec<(Vec<f64>, f64)> = boundary.iter().map(|b| (b.u.clone(), b.support)).collect();
        let margin = 4.0 * (2.0 * spec.epsilon).sqrt();
        out.push(CheckResult::at_most("grid_support", mass_outside_halfspaces(&grid, &halfspaces, margin), 1e-3));
    }
    Ok(out)
}

pub fn check_example(ex: &NamedExample, seed: u64) -> Result<Vec<CheckResult>> {
    check_system(&ex.tuple, &ex.state, seed)
}
