//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Run with `cargo test -p qwigner-core --test acceptance`.

mod common;

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use num_complex::Complex64;
use qwigner_core::bmv::{bmv_mixed_moment, bmv_triple_counterexample};
use qwigner_core::catalog::{self, block_projectors, heart_pair, nearly_commuting, CATALOG};
use qwigner_core::charfn::{char_function, char_function_blocks};
use qwigner_core::geometry::{nearly_commuting_ellipses, polynomial_residual, singular_set, NamedPolynomial};
use qwigner_core::grid::directional::compute_wigner_grid_exponential;
use qwigner_core::grid::{
    compute_wigner_grid, grid_moment, l1_distance, marginal, negativity_report, pushforward,
    smeared_spectral_density, Direction, GridSpec, WignerGrid,
};
use qwigner_core::infocomp::weyl_span_dimension;
use qwigner_core::moments::{check_multinomial, commutator_orthogonality, weyl_moment};
use qwigner_core::qubit::{qubit2_reference, qubit3_radial, regular_part};
use qwigner_core::random::{
    random_direction, random_psd, random_real_tuple, random_state, random_tuple, seeded, DEFAULT_SEED,
};
use qwigner_core::symmetry::{covariance_residual, dihedral_multiplet, dihedral_symmetries, twirl_rank};
use qwigner_core::{expectation_tuple, DensityMatrix, Hermitian, OperatorTuple, Result, Tolerances};

type Outcome = Result<(bool, String)>;

fn radius(p: &[f64]) -> f64 {
    p.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn dist(p: &[f64], q: &[f64]) -> f64 {
    p.iter().zip(q).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt()
}

/// Smoothing about five cells wide, for grid-to-grid comparisons.
fn comparison_spec(a: &OperatorTuple, samples: usize) -> Result<GridSpec> {
    let s = GridSpec::fitted(a, samples)?;
    let h = (0..s.n()).map(|k| s.spacing(k)).fold(0.0, f64::max);
    let eps = s.epsilon.max(12.0 * h * h);
    GridSpec::new(s.lo, s.hi, s.samples, eps)
}

fn qubit3_radial_match() -> Outcome {
    let ex = catalog::make("pauli3")?;
    let eps = 0.02;
    let spec = GridSpec::cube(3, -2.0, 2.0, 64, eps)?;
    let grid = compute_wigner_grid(&ex.tuple, &ex.state, &spec)?;
    let h = spec.spacing(0);
    let bins = ((1.5 - 0.5) / h).ceil() as usize;
    let mut acc = vec![(0.0, 0.0, 0usize); bins];
    for flat in 0..spec.len() {
        let s = radius(&spec.point(flat));
        if (0.5..1.5).contains(&s) {
            let b = (((s - 0.5) / h) as usize).min(bins - 1);
            acc[b].0 += grid.values[flat];
            acc[b].1 += 0.5 * qubit3_radial(s, eps)?;
            acc[b].2 += 1;
        }
    }
    let peak = (0..=4000).map(|i| 0.5 * qubit3_radial(i as f64 * 5e-4, eps).unwrap().abs()).fold(0.0, f64::max);
    let err = acc
        .iter()
        .filter(|b| b.2 > 0)
        .map(|b| ((b.0 - b.1) / b.2 as f64).abs())
        .fold(0.0, f64::max);
    Ok((err <= 0.02 * peak, format!("max radial error {:.3e} = {:.3}% of peak", err, 100.0 * err / peak)))
}

fn qubit2_closed_form() -> Outcome {
    let ex = catalog::make("pauli2")?;
    let directions = 1440;
    let spec = GridSpec::cube(2, -2.0, 2.0, 256, 0.01)?;
    let grid = compute_wigner_grid_exponential(&ex.tuple, &ex.state, &spec, directions)?;
    let (mut err, mut peak): (f64, f64) = (0.0, 0.0);
    for flat in 0..spec.len() {
        let r = radius(&spec.point(flat));
        if r <= 0.9 {
            let reference = qubit2_reference(r, 0.01)?;
            peak = peak.max(reference.abs());
            err = err.max((grid.values[flat] - reference).abs());
        }
    }
    let first = err <= 0.02 * peak;

    let fine = GridSpec::cube(2, -2.0, 2.0, 256, 1e-3)?;
    let exp_grid = compute_wigner_grid_exponential(&ex.tuple, &ex.state, &fine, directions)?;
    let fft_grid = compute_wigner_grid(&ex.tuple, &ex.state, &fine)?;
    let (mut rel_exp, mut rel_fft): (f64, f64) = (0.0, 0.0);
    for flat in 0..fine.len() {
        let r = radius(&fine.point(flat));
        if r <= 0.7 {
            let reg = regular_part(r)?;
            rel_exp = rel_exp.max(((exp_grid.values[flat] - reg) / reg).abs());
            rel_fft = rel_fft.max(((fft_grid.values[flat] - reg) / reg).abs());
        }
    }
    let second = rel_exp <= 0.05 && rel_fft <= 0.05;
    Ok((
        first && second,
        format!(
            "eps=0.01: {:.3}% of peak; eps=1e-3 regular part: exponential {:.3}%, gaussian {:.3}%",
            100.0 * err / peak,
            100.0 * rel_exp,
            100.0 * rel_fft
        ),
    ))
}

fn marginal_property() -> Outcome {
    let mut rng = seeded(DEFAULT_SEED);
    let a = random_tuple(2, 4, &mut rng);
    let rho = random_state(4, &mut rng);
    let spec = comparison_spec(&a, 128)?;
    let grid = compute_wigner_grid(&a, &rho, &spec)?;
    let mut worst: f64 = 0.0;
    for j in 0..8 {
        let phi = PI * j as f64 / 8.0;
        let u = vec![phi.cos(), phi.sin()];
        let dir = match j {
            0 => Direction::Axis(0),
            4 => Direction::Axis(1),
            _ => Direction::General(u.clone()),
        };
        let m = marginal(&grid, &dir)?;
        let target = smeared_spectral_density(&a, &rho, &u, spec.epsilon, &m.t)?;
        worst = worst.max(l1_distance(&m, &target));
    }
    Ok((worst <= 1e-2, format!("max L1 over 8 directions {worst:.3e}")))
}

fn suite_grid(a: &OperatorTuple, rho: &DensityMatrix) -> Result<WignerGrid> {
    let samples = match a.n() {
        1 => 512,
        2 => 128,
        _ => 64,
    };
    compute_wigner_grid(a, rho, &GridSpec::fitted(a, samples)?)
}

fn normalization_and_means() -> Outcome {
    let (mut mass_err, mut mean_err): (f64, f64) = (0.0, 0.0);
    for name in CATALOG {
        let ex = catalog::make(name)?;
        let grid = suite_grid(&ex.tuple, &ex.state)?;
        mass_err = mass_err.max((grid.mass() - 1.0).abs());
        for k in 0..ex.tuple.n() {
            let mut r = vec![0; ex.tuple.n()];
            r[k] = 1;
            let expected = ex.state.expect(ex.tuple.op(k).matrix()).re;
            mean_err = mean_err.max((grid_moment(&grid, &r)?.raw - expected).abs());
        }
    }
    Ok((
        mass_err <= 1e-3 && mean_err <= 1e-2,
        format!("{} examples: mass error {mass_err:.2e}, mean error {mean_err:.2e}", CATALOG.len()),
    ))
}

fn multinomial_identity() -> Outcome {
    let mut rng = seeded(DEFAULT_SEED);
    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let a = random_tuple(3, 3, &mut rng);
        for degree in 1..=5 {
            let xi: Vec<f64> = random_direction(3, &mut rng).iter().map(|x| 1.7 * x).collect();
            let c = check_multinomial(&a, &xi, degree)?;
            worst = worst.max(c.residual / c.scale);
        }
    }
    Ok((worst <= 1e-9, format!("max residual / ‖ξ·A‖^R = {worst:.2e}")))
}

fn commutator_orthogonality_check() -> Outcome {
    let mut rng = seeded(DEFAULT_SEED);
    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let a = random_tuple(2, 4, &mut rng);
        let c = commutator_orthogonality(&a, 6)?;
        worst = worst.max(c.max_trace / c.scale.max(1.0));
    }
    Ok((worst <= 1e-9, format!("max |tr(i[A1,A2] M)| / scale = {worst:.2e}")))
}

fn dimension_claims() -> Outcome {
    let mut rng = seeded(DEFAULT_SEED);
    let generic = (0..20).filter(|_| weyl_span_dimension(&random_tuple(2, 4, &mut rng), None).dimension == 10).count();
    let pauli = weyl_span_dimension(&catalog::make("pauli3")?.tuple, None).dimension;
    let real_max = (0..10)
        .map(|_| weyl_span_dimension(&random_real_tuple(3, 3, &mut rng), None).dimension)
        .max()
        .unwrap_or(0);
    Ok((
        generic >= 19 && pauli == 4 && real_max <= 6,
        format!("pairs with dimension 10: {generic}/20; Pauli triple {pauli}; real triples max {real_max}"),
    ))
}

fn singular_residuals() -> Outcome {
    let dual = catalog::make("dual-counterexample")?;
    let s3 = singular_set(&dual.tuple, 400, DEFAULT_SEED)?;
    let p3: Vec<Vec<f64>> = s3.iter().map(|s| s.a.clone()).collect();
    let g = polynomial_residual(&p3, NamedPolynomial::Gpoly)?;
    let to_line = p3
        .iter()
        .map(|p| dist(p, &[2.0, 0.0, 0.0]).min(dist(p, &[-2.0, 0.0, 0.0])))
        .fold(f64::INFINITY, f64::min);
    let s2 = singular_set(&heart_pair(), 2000, DEFAULT_SEED)?;
    let p2: Vec<Vec<f64>> = s2.iter().map(|s| s.a.clone()).collect();
    let q = polynomial_residual(&p2, NamedPolynomial::HeartQuartic)?;
    Ok((
        g <= 1e-6 && q <= 1e-6 && to_line >= 0.1,
        format!("gpoly {g:.2e} ({} pts), heart {q:.2e} ({} pts), distance to (±2,0,0) {to_line:.3}", p3.len(), p2.len()),
    ))
}

/// Scales a positive semidefinite matrix to unit trace so that high-order
/// moments stay comparable to the tolerance.
fn unit_trace(m: Hermitian) -> Hermitian {
    let tr: f64 = m.matrix().diagonal().iter().map(|z| z.re).sum();
    Hermitian::symmetrized(m.into_inner() / Complex64::new(tr, 0.0))
}

fn bmv() -> Outcome {
    let triple = bmv_triple_counterexample();
    let mut rng = seeded(DEFAULT_SEED);
    let mut worst = f64::INFINITY;
    for _ in 0..50 {
        let a = unit_trace(random_psd(3, &mut rng));
        let b = unit_trace(random_psd(3, &mut rng));
        for total in 1..=10u32 {
            for n in 0..=total {
                worst = worst.min(bmv_mixed_moment(&a, &b, n, total - n)?);
            }
        }
    }
    Ok((
        (triple + 0.25).abs() <= 1e-12 && worst >= -1e-10,
        format!("triple value {triple:.15}; min mixed moment {worst:.3e}"),
    ))
}

fn covariance() -> Outcome {
    let p = 5;
    let ex = dihedral_multiplet(p, DEFAULT_SEED)?;
    let syms = dihedral_symmetries(p);
    let rho = random_state(p, &mut seeded(DEFAULT_SEED));
    let spec = comparison_spec(&ex.tuple, 128)?;
    let base = compute_wigner_grid(&ex.tuple, &rho, &spec)?;
    let mut worst: f64 = 0.0;
    for sym in &syms {
        let rotated = compute_wigner_grid(&ex.tuple, &rho.transformed(&sym.unitary), &spec)?;
        let moved = pushforward(&base, &sym.linear, &sym.shift)?;
        let err = rotated.values.iter().zip(&moved.values).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
        worst = worst.max(err / rotated.peak());
    }
    let rank = twirl_rank(p);
    let residual = covariance_residual(&ex.tuple, &syms);
    Ok((
        worst <= 0.02 && rank == 2 * p && residual <= 1e-10,
        format!("max grid deviation {:.3}% of peak over {} elements; twirl rank {rank}", 100.0 * worst, syms.len()),
    ))
}

fn positivity() -> Outcome {
    let commuting = catalog::make("commuting-demo")?;
    let pos = negativity_report(&suite_grid(&commuting.tuple, &commuting.state)?);
    let pauli = catalog::make("pauli2")?;
    let neg = negativity_report(&suite_grid(&pauli.tuple, &pauli.state)?);
    Ok((
        pos.min_value >= -1e-3 * pos.peak && neg.min_value <= -0.1 * neg.peak,
        format!(
            "commuting min/peak {:.2e}; Pauli pair min/peak {:.3}",
            pos.min_value / pos.peak,
            neg.min_value / neg.peak
        ),
    ))
}

fn reducibility() -> Outcome {
    let ex = catalog::make("block-2+2")?;
    let q = block_projectors();
    let mut rng = seeded(DEFAULT_SEED);
    let rho = random_state(4, &mut rng);
    let offdiag = (&q[0] * rho.matrix() * &q[1]).iter().map(|z| z.norm()).fold(0.0, f64::max);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let xi: Vec<f64> = random_direction(2, &mut rng).iter().map(|x| 5.0 * x).collect();
        let full = char_function(&ex.tuple, &rho, &xi)?;
        let blocks = char_function_blocks(&ex.tuple, &rho, &q, &xi)?;
        worst = worst.max((full - blocks).norm());
    }
    Ok((
        worst <= 1e-12 && offdiag > 1e-3,
        format!("max |Ŵ − Σ blocks| {worst:.2e} (off-diagonal block size {offdiag:.2e})"),
    ))
}

fn nearly_commuting_check() -> Outcome {
    let coarse = nearly_commuting_ellipses(&nearly_commuting(0.05, DEFAULT_SEED).tuple, 2000)?.hausdorff;
    let fine = nearly_commuting_ellipses(&nearly_commuting(0.025, DEFAULT_SEED).tuple, 2000)?.hausdorff;
    Ok((
        coarse <= 0.15 && fine <= 0.5 * coarse,
        format!("Hausdorff {coarse:.3e} at 0.05, {fine:.3e} at 0.025 (ratio {:.2})", coarse / fine),
    ))
}

fn oracle_equivalences() -> Outcome {
    let mut rng = seeded(DEFAULT_SEED);
    let a = random_tuple(3, 3, &mut rng);
    let mut moment_err: f64 = 0.0;
    for r0 in 0..=5u32 {
        for r1 in 0..=5 - r0 {
            for r2 in 0..=5 - r0 - r1 {
                let r = [r0, r1, r2];
                let fast = weyl_moment(&a, &r)?;
                moment_err = moment_err.max(common::max_diff(fast.matrix(), &common::weyl_moment_oracle(&a, &r)));
            }
        }
    }

    let b = random_tuple(2, 5, &mut rng);
    let rho = random_state(5, &mut rng);
    let mut char_err: f64 = 0.0;
    for _ in 0..50 {
        let xi: Vec<f64> = random_direction(2, &mut rng).iter().map(|x| 4.0 * x).collect();
        let diff: Complex64 = char_function(&b, &rho, &xi)? - common::char_function_oracle(&b, &rho, &xi);
        char_err = char_err.max(diff.norm());
    }

    let mut fd_err: f64 = 0.0;
    for _ in 0..20 {
        let xi = random_direction(2, &mut rng);
        let eig = b.pencil(&xi)?;
        for mu in 0..b.dim() {
            let exp = expectation_tuple(&b, &eig.eigenvector(mu), &Tolerances::default())?;
            let grad = common::gradient(|x| b.pencil(x).unwrap().eigenvalues()[mu], &xi, 1e-5);
            fd_err = fd_err.max(exp.iter().zip(&grad).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max));
        }
    }
    Ok((
        moment_err <= 1e-12 && char_err <= 1e-10 && fd_err <= 1e-6,
        format!("Weyl moments {moment_err:.1e}, char function {char_err:.1e}, gradient {fd_err:.1e}"),
    ))
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 14] = [
        ("qubit triple radial profile", qubit3_radial_match),
        ("qubit pair closed form", qubit2_closed_form),
        ("marginal property", marginal_property),
        ("normalization and means", normalization_and_means),
        ("multinomial identity", multinomial_identity),
        ("commutator orthogonality", commutator_orthogonality_check),
        ("span dimensions", dimension_claims),
        ("singular support polynomials", singular_residuals),
        ("mixed-moment positivity", bmv),
        ("dihedral covariance", covariance),
        ("positivity and negativity", positivity),
        ("reducibility", reducibility),
        ("nearly commuting ellipses", nearly_commuting_check),
        ("oracle equivalences", oracle_equivalences),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (pass, detail) = match run() {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        failures += usize::from(!pass);
        let status = if pass { "PASS" } else { "FAIL" };
        println!("{status} {:>2} {name}: {detail} [{:.1}s]", i + 1, start.elapsed().as_secs_f64());
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
