//! Subcommand bodies.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use qwigner_core::bmv::{bmv_mixed_moment, bmv_triple_counterexample};
use qwigner_core::catalog::{self, CATALOG};
use qwigner_core::charfn::char_function;
use qwigner_core::checks::{all_pass, check_system, to_tsv, CheckResult};
use qwigner_core::geometry::{
    curve_point, eigenvalue_curves, jnr_boundary, nearly_commuting_ellipses, polynomial_residual, singular_csv,
    singular_set, sphere_directions, NamedPolynomial,
};
use qwigner_core::grid::directional::compute_wigner_grid_exponential;
use qwigner_core::grid::{
    compute_wigner_grid, l1_distance, marginal, negativity_report, pushforward, smeared_spectral_density,
    to_csv_string, write_pgm_slice, Direction, GridSpec, WignerGrid,
};
use qwigner_core::infocomp::{incomp_trace_identity, normal_complete, weyl_span_dimension};
use qwigner_core::io::{load_tuple_file, to_json};
use qwigner_core::moments::{check_multinomial, commutator_orthogonality, weyl_moment};
use qwigner_core::random::{random_direction, random_psd, random_state, seeded};
use qwigner_core::symmetry::{covariance_residual, dihedral_multiplet, dihedral_symmetries, twirl_rank};
use num_complex::Complex64;
use qwigner_core::{DensityMatrix, Hermitian, OperatorTuple, WignerError};

use crate::{Cli, Command, ExampleAction, GridArgs, Residual, Route, Source, Suite};

pub enum Outcome {
    Pass,
    Fail,
}

impl From<bool> for Outcome {
    fn from(pass: bool) -> Self {
        if pass { Outcome::Pass } else { Outcome::Fail }
    }
}

/// Marks an error as caused by the command line rather than the input data.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow!(UsageError(msg.into()))
}

/// 2 for usage errors (bad flags, unknown names, malformed files), 1 for
/// inputs that fail validation or computations that fail.
pub fn exit_code(e: &anyhow::Error) -> u8 {
    if e.downcast_ref::<UsageError>().is_some() {
        return 2;
    }
    match e.downcast_ref::<WignerError>() {
        Some(
            WignerError::UnknownExample(_)
            | WignerError::InvalidArgument(_)
            | WignerError::InvalidGrid(_)
            | WignerError::Parse(_)
            | WignerError::Io(_),
        ) => 2,
        _ => 1,
    }
}

struct System {
    name: String,
    tuple: OperatorTuple,
    state: DensityMatrix,
}

fn load(cli: &Cli, source: &Source) -> Result<System> {
    match (&source.input, &source.example) {
        (Some(path), None) => {
            let (tuple, state) = load_tuple_file(path, &cli.tolerances())?;
            Ok(System { name: path.display().to_string(), tuple, state })
        }
        (None, Some(name)) => {
            let ex = catalog::make_seeded(name, cli.seed)?;
            Ok(System { name: ex.name, tuple: ex.tuple, state: ex.state })
        }
        _ => Err(usage("give exactly one of --input or --example")),
    }
}

fn grid_spec(a: &OperatorTuple, args: &GridArgs) -> Result<GridSpec> {
    let n = a.n();
    let spec = match &args.bounds {
        Some(b) => {
            let (lo, hi) = (vec![b[0]; n], vec![b[1]; n]);
            let eps = args.epsilon.unwrap_or_else(|| GridSpec::default_epsilon(&lo, &hi));
            GridSpec::new(lo, hi, vec![args.samples; n], eps)?
        }
        None => {
            let fitted = GridSpec::fitted(a, args.samples)?;
            match args.epsilon {
                Some(eps) => GridSpec::new(fitted.lo, fitted.hi, fitted.samples, eps)?,
                None => fitted,
            }
        }
    };
    Ok(spec)
}

/// Regularization used when a grid is compared with another quantity:
/// smoothing about five cells wide so discretization does not dominate.
fn comparison_epsilon(spec: &GridSpec) -> f64 {
    let h = (0..spec.n()).map(|k| spec.spacing(k)).fold(0.0, f64::max);
    spec.epsilon.max(12.0 * h * h)
}

fn with_epsilon(spec: GridSpec, eps: f64) -> Result<GridSpec> {
    Ok(GridSpec::new(spec.lo, spec.hi, spec.samples, eps)?)
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn report(results: &[CheckResult]) -> Outcome {
    print!("{}", to_tsv(results));
    all_pass(results).into()
}

fn fmt_vec(v: &[f64]) -> String {
    v.iter().map(|x| format!("{x:e}")).collect::<Vec<_>>().join(",")
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Validate(source) => validate(cli, source),
        Command::Charfn { source, xi, ray } => charfn(cli, source, xi, ray.as_deref()),
        Command::Wigner { source, grid, route, directions, out, image } => {
            wigner(cli, source, grid, *route, *directions, out.as_deref(), image.as_deref())
        }
        Command::Marginal { source, grid, direction, tol, out } => {
            marginal_cmd(cli, source, grid, direction.as_deref(), *tol, out.as_deref())
        }
        Command::Jnr { source, resolution, out } => jnr(cli, source, *resolution, out.as_deref()),
        Command::Sing { source, resolution, residual, tol, out } => {
            sing(cli, source, *resolution, *residual, *tol, out.as_deref())
        }
        Command::Curves { source, samples, out } => curves(cli, source, *samples, out.as_deref()),
        Command::Ellipses { source, resolution, tol } => ellipses(cli, source, *resolution, *tol),
        Command::Moments { source, degree, index } => moments(cli, source, *degree, index.as_deref()),
        Command::Infocomp { source, expect } => infocomp(cli, source, *expect),
        Command::NormalComplete { source, tol } => normal(cli, source, *tol),
        Command::Bmv { pairs, dim, max_order } => bmv(cli, *pairs, *dim, *max_order),
        Command::Symmetry { p, grid, epsilon } => symmetry(cli, *p, *grid, *epsilon),
        Command::Example { action } => example(cli, action),
        Command::Check { suite, source } => check(cli, *suite, source),
    }
}

fn validate(cli: &Cli, source: &Source) -> Result<Outcome> {
    let sys = load(cli, source)?;
    let a = &sys.tuple;
    println!("name\t{}", sys.name);
    println!("n\t{}", a.n());
    println!("d\t{}", a.dim());
    println!("commuting\t{}", a.is_commuting(1e-9));
    for (k, op) in a.ops().iter().enumerate() {
        let ev = op.eigen()?;
        let (lo, hi) = (ev.eigenvalues()[0], ev.eigenvalues()[a.dim() - 1]);
        println!("range_{k}\t{lo:e}\t{hi:e}");
    }
    println!("PASS");
    Ok(Outcome::Pass)
}

fn charfn(cli: &Cli, source: &Source, xi: &[f64], ray: Option<&[f64]>) -> Result<Outcome> {
    let sys = load(cli, source)?;
    let ts = ray.map(<[f64]>::to_vec).unwrap_or_else(|| vec![1.0]);
    println!("t,re,im");
    for t in ts {
        let point: Vec<f64> = xi.iter().map(|x| x * t).collect();
        let w = char_function(&sys.tuple, &sys.state, &point)?;
        println!("{t:e},{:e},{:e}", w.re, w.im);
    }
    Ok(Outcome::Pass)
}

fn compute_grid(sys: &System, args: &GridArgs, route: Route, directions: usize) -> Result<WignerGrid> {
    let spec = grid_spec(&sys.tuple, args)?;
    let grid = match route {
        Route::Gaussian => compute_wigner_grid(&sys.tuple, &sys.state, &spec)?,
        Route::Exponential => compute_wigner_grid_exponential(&sys.tuple, &sys.state, &spec, directions)?,
    };
    for w in &grid.warnings {
        eprintln!("warning: {w:?}");
    }
    Ok(grid)
}

fn wigner(
    cli: &Cli,
    source: &Source,
    args: &GridArgs,
    route: Route,
    directions: usize,
    out: Option<&Path>,
    image: Option<&Path>,
) -> Result<Outcome> {
    let sys = load(cli, source)?;
    let grid = compute_grid(&sys, args, route, directions)?;
    if let Some(path) = out {
        emit(&to_csv_string(&grid), Some(path))?;
    }
    if let Some(path) = image {
        let slice = (grid.spec.n() == 3).then(|| (2, grid.spec.samples[2] / 2));
        let scaling = write_pgm_slice(&grid, path, slice)?;
        eprintln!("image {}x{} gray 0 = {:e}, gray 255 = {:e}", scaling.width, scaling.height, scaling.min, scaling.max);
    }
    let neg = negativity_report(&grid);
    println!("epsilon\t{:e}", grid.spec.epsilon);
    println!("mass\t{:e}", grid.mass());
    println!("residual_imag\t{:e}", grid.residual_imag);
    println!("min\t{:e}", neg.min_value);
    println!("peak\t{:e}", neg.peak);
    println!("negative_mass\t{:e}", neg.negative_mass);
    println!("warnings\t{}", grid.warnings.len());
    Ok(Outcome::Pass)
}

fn marginal_cmd(
    cli: &Cli,
    source: &Source,
    args: &GridArgs,
    direction: Option<&[f64]>,
    tol: f64,
    out: Option<&Path>,
) -> Result<Outcome> {
    let sys = load(cli, source)?;
    let n = sys.tuple.n();
    let u = match direction {
        Some(u) if u.len() != n => return Err(usage(format!("direction needs {n} components"))),
        Some(u) => u.to_vec(),
        None => {
            let mut e = vec![0.0; n];
            e[0] = 1.0;
            e
        }
    };
    let mut spec = grid_spec(&sys.tuple, args)?;
    if args.epsilon.is_none() {
        let eps = comparison_epsilon(&spec);
        spec = with_epsilon(spec, eps)?;
    }
    let grid = compute_wigner_grid(&sys.tuple, &sys.state, &spec)?;
    let axis = u.iter().position(|&x| x == 1.0).filter(|_| u.iter().filter(|&&x| x != 0.0).count() == 1);
    let dir = match axis {
        Some(k) => Direction::Axis(k),
        None => Direction::General(u.clone()),
    };
    let m = marginal(&grid, &dir)?;
    let target = smeared_spectral_density(&sys.tuple, &sys.state, &u, grid.spec.epsilon, &m.t)?;
    if out.is_some() {
        let mut csv = String::from("t,grid,spectral\n");
        for ((t, p), q) in m.t.iter().zip(&m.density).zip(&target) {
            let _ = writeln!(csv, "{t:e},{p:e},{q:e}");
        }
        emit(&csv, out)?;
    }
    Ok(report(&[CheckResult::at_most("marginal_l1", l1_distance(&m, &target), tol)]))
}

fn jnr(cli: &Cli, source: &Source, resolution: usize, out: Option<&Path>) -> Result<Outcome> {
    let sys = load(cli, source)?;
    let n = sys.tuple.n();
    let boundary = jnr_boundary(&sys.tuple, &sphere_directions(n, resolution, cli.seed))?;
    let mut csv = String::new();
    let header: Vec<String> = (1..=n)
        .map(|k| format!("u{k}"))
        .chain(std::iter::once("support".to_string()))
        .chain((1..=n).map(|k| format!("a{k}")))
        .chain(["top_gap".to_string()])
        .collect();
    let _ = writeln!(csv, "{}", header.join(","));
    for b in &boundary {
        let point = b.point.clone().unwrap_or_else(|| vec![f64::NAN; n]);
        let _ = writeln!(csv, "{},{:e},{},{:e}", fmt_vec(&b.u), b.support, fmt_vec(&point), b.top_gap);
    }
    emit(&csv, out)?;
    Ok(Outcome::Pass)
}

fn sing(
    cli: &Cli,
    source: &Source,
    resolution: usize,
    residual: Option<Residual>,
    tol: f64,
    out: Option<&Path>,
) -> Result<Outcome> {
    let sys = load(cli, source)?;
    let samples = singular_set(&sys.tuple, resolution, cli.seed)?;
    emit(&singular_csv(&samples), out)?;
    let Some(which) = residual else { return Ok(Outcome::Pass) };
    let poly = match which {
        Residual::Gpoly => NamedPolynomial::Gpoly,
        Residual::Heart => NamedPolynomial::HeartQuartic,
    };
    if poly.arity() != sys.tuple.n() {
        return Err(usage(format!("polynomial takes {} coordinates, tuple has n = {}", poly.arity(), sys.tuple.n())));
    }
    let points: Vec<Vec<f64>> = samples.iter().map(|s| s.a.clone()).collect();
    let value = polynomial_residual(&points, poly)?;
    let line = CheckResult::at_most("max_residual", value, tol);
    if out.is_some() {
        Ok(report(&[line]))
    } else {
        // stdout carries the point cloud.
        eprint!("{}", to_tsv(std::slice::from_ref(&line)));
        Ok(line.pass.into())
    }
}

fn curves(cli: &Cli, source: &Source, samples: usize, out: Option<&Path>) -> Result<Outcome> {
    let sys = load(cli, source)?;
    if samples < 3 {
        return Err(usage("need at least 3 samples"));
    }
    let ts: Vec<f64> = (0..samples).map(|i| 2.0 * std::f64::consts::PI * i as f64 / samples as f64).collect();
    let curves = eigenvalue_curves(&sys.tuple, &ts)?;
    let d = sys.tuple.dim();
    let mut csv = String::from("t");
    for b in 0..d {
        let _ = write!(csv, ",c{b}");
    }
    csv.push('\n');
    for (t, row) in curves.t.iter().zip(&curves.values) {
        let _ = writeln!(csv, "{t:e},{}", fmt_vec(row));
    }
    emit(&csv, out)?;
    let mut reconstructed = 0;
    for &t in &ts {
        for mu in 0..d {
            if curve_point(&sys.tuple, mu, t, 1e-5).is_ok() {
                reconstructed += 1;
            }
        }
    }
    eprintln!("min_gap\t{:e}", curves.min_gap);
    eprintln!("ambiguous\t{}", curves.ambiguous.len());
    eprintln!("reconstructed_points\t{reconstructed}");
    Ok(Outcome::Pass)
}

fn ellipses(cli: &Cli, source: &Source, resolution: usize, tol: f64) -> Result<Outcome> {
    let sys = load(cli, source)?;
    let r = nearly_commuting_ellipses(&sys.tuple, resolution)?;
    println!("# ellipses: mu,nu,center,shape");
    for e in &r.ellipses {
        println!(
            "# {},{},{:e},{:e},{:e},{:e},{:e},{:e}",
            e.mu, e.nu, e.center[0], e.center[1], e.shape[0][0], e.shape[0][1], e.shape[1][0], e.shape[1][1]
        );
    }
    println!("# offdiag_max {:e}, samples {}", r.offdiag_max, r.samples);
    Ok(report(&[CheckResult::at_most("hausdorff", r.hausdorff, tol)]))
}

fn moments(cli: &Cli, source: &Source, degree: u32, index: Option<&[u32]>) -> Result<Outcome> {
    let sys = load(cli, source)?;
    let a = &sys.tuple;
    let mut rng = seeded(cli.seed);
    let mut results = Vec::new();
    let mut worst: f64 = 0.0;
    for r in 1..=degree {
        for _ in 0..5 {
            let xi: Vec<f64> = random_direction(a.n(), &mut rng).iter().map(|x| 2.0 * x).collect();
            let c = check_multinomial(a, &xi, r)?;
            worst = worst.max(c.residual / c.scale.max(f64::MIN_POSITIVE));
        }
    }
    results.push(CheckResult::at_most("multinomial_relative", worst, 1e-9));
    if a.n() == 2 {
        let c = commutator_orthogonality(a, degree.min(6))?;
        results.push(CheckResult::at_most("commutator_orthogonality", c.max_trace, 1e-9 * c.scale.max(1.0)));
    }
    if let Some(r) = index {
        let m = weyl_moment(a, r)?;
        println!("# weyl moment {r:?} (re im pairs, row major)");
        for i in 0..a.dim() {
            let row: Vec<String> = (0..a.dim()).map(|j| format!("{:e} {:e}", m.matrix()[(i, j)].re, m.matrix()[(i, j)].im)).collect();
            println!("# {}", row.join("\t"));
        }
    }
    Ok(report(&results))
}

fn infocomp(cli: &Cli, source: &Source, expect: Option<usize>) -> Result<Outcome> {
    let sys = load(cli, source)?;
    let a = &sys.tuple;
    let d = a.dim();
    let span = weyl_span_dimension(a, None);
    println!("# span dimension {} of {} (degree {})", span.dimension, d * d, span.degree_reached);
    println!("# informationally complete {}", span.dimension == d * d);
    let mut results = Vec::new();
    if let Some(e) = expect {
        results.push(CheckResult::at_most("span_dimension_error", span.dimension.abs_diff(e) as f64, 0.0));
    }
    if a.n() == 2 {
        let rel = incomp_trace_identity(a, 10, 4, &mut seeded(cli.seed))?;
        results.push(CheckResult::at_most("commutator_trace_identity", rel, 1e-9));
    }
    Ok(report(&results))
}

fn normal(cli: &Cli, source: &Source, tol: f64) -> Result<Outcome> {
    let sys = load(cli, source)?;
    let r = normal_complete(&sys.tuple, tol)?;
    println!("# complete {}", r.complete);
    println!("# witness {:?}", r.witness);
    Ok(report(&[CheckResult::at_least("min_overlap", r.min_overlap, tol)]))
}

/// Scales a positive semidefinite matrix to unit trace so that high-order
/// moments stay comparable to the tolerance.
fn unit_trace(m: Hermitian) -> Hermitian {
    let tr: f64 = m.matrix().diagonal().iter().map(|z| z.re).sum();
    Hermitian::symmetrized(m.into_inner() / Complex64::new(tr, 0.0))
}

fn bmv(cli: &Cli, pairs: usize, dim: usize, max_order: u32) -> Result<Outcome> {
    if dim == 0 {
        return Err(usage("dimension must be positive"));
    }
    let mut rng = seeded(cli.seed);
    let mut worst = f64::INFINITY;
    for _ in 0..pairs {
        let a = unit_trace(random_psd(dim, &mut rng));
        let b = unit_trace(random_psd(dim, &mut rng));
        for total in 1..=max_order {
            for n in 0..=total {
                worst = worst.min(bmv_mixed_moment(&a, &b, n, total - n)?);
            }
        }
    }
    let triple = bmv_triple_counterexample();
    Ok(report(&[
        CheckResult::at_least("min_mixed_moment", worst, -1e-10),
        CheckResult::at_most("triple_counterexample_error", (triple + 0.25).abs(), 1e-12),
    ]))
}

fn symmetry(cli: &Cli, p: usize, grid: Option<usize>, epsilon: Option<f64>) -> Result<Outcome> {
    let ex = dihedral_multiplet(p, cli.seed)?;
    let syms = dihedral_symmetries(p);
    let mut results = vec![
        CheckResult::at_most("twirl_rank_error", twirl_rank(p).abs_diff(2 * p) as f64, 0.0),
        CheckResult::at_most("covariance_residual", covariance_residual(&ex.tuple, &syms), 1e-10),
    ];
    if let Some(samples) = grid {
        let rho = random_state(p, &mut seeded(cli.seed));
        let (value, _) = rotated_grid_error(&ex.tuple, &rho, &syms[2], samples, epsilon)?;
        results.push(CheckResult::at_most("grid_covariance", value, 0.02));
    }
    Ok(report(&results))
}

/// Largest deviation, relative to the peak, between the grid of `UρU†` and
/// the pushforward of the grid of `ρ`.
fn rotated_grid_error(
    a: &OperatorTuple,
    rho: &DensityMatrix,
    sym: &qwigner_core::symmetry::Symmetry,
    samples: usize,
    epsilon: Option<f64>,
) -> Result<(f64, f64)> {
    let fitted = GridSpec::fitted(a, samples)?;
    let eps = epsilon.unwrap_or_else(|| comparison_epsilon(&fitted));
    let spec = with_epsilon(fitted, eps)?;
    let base = compute_wigner_grid(a, rho, &spec)?;
    let rotated = compute_wigner_grid(a, &rho.transformed(&sym.unitary), &spec)?;
    let moved = pushforward(&base, &sym.linear, &sym.shift)?;
    let err = rotated.values.iter().zip(&moved.values).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    Ok((err / rotated.peak(), rotated.peak()))
}

fn example(cli: &Cli, action: &ExampleAction) -> Result<Outcome> {
    match action {
        ExampleAction::List => {
            for name in CATALOG {
                let ex = catalog::make_seeded(name, cli.seed)?;
                println!("{name}\tn={}\td={}\t{}", ex.tuple.n(), ex.tuple.dim(), ex.notes);
            }
        }
        ExampleAction::Dump { name } => {
            let ex = catalog::make_seeded(name, cli.seed)?;
            println!("{}", to_json(&ex.tuple, Some(&ex.state))?);
        }
    }
    Ok(Outcome::Pass)
}

fn in_suite(suite: Suite, name: &str) -> bool {
    let prefixes: &[&str] = match suite {
        Suite::All => return true,
        Suite::Charfn => &["charfn_", "pencil_"],
        Suite::Moments => &["multinomial", "weyl_", "commutator", "span_"],
        Suite::Geometry => &["singular_"],
        Suite::Grid => &["grid_"],
    };
    prefixes.iter().any(|p| name.starts_with(p))
}

fn check(cli: &Cli, suite: Suite, source: &Source) -> Result<Outcome> {
    let systems: Vec<System> = if source.input.is_none() && source.example.is_none() {
        CATALOG
            .iter()
            .map(|name| {
                let ex = catalog::make_seeded(name, cli.seed)?;
                Ok(System { name: ex.name, tuple: ex.tuple, state: ex.state })
            })
            .collect::<Result<_>>()?
    } else {
        vec![load(cli, source)?]
    };
    let mut results = Vec::new();
    for sys in &systems {
        for mut r in check_system(&sys.tuple, &sys.state, cli.seed)? {
            if in_suite(suite, &r.name) {
                if systems.len() > 1 {
                    r.name = format!("{}:{}", sys.name, r.name);
                }
                results.push(r);
            }
        }
    }
    if results.is_empty() {
        bail!(UsageError("no check of this suite applies".into()));
    }
    Ok(report(&results))
}
