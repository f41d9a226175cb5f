//! Grid-level consistency: refinement, covariance and moments.

use qwigner_core::catalog;
use qwigner_core::grid::{compute_wigner_grid, grid_moment, pushforward, GridSpec};
use qwigner_core::moments::{quantize, Polynomial};
use qwigner_core::random::{random_state, random_tuple, seeded, DEFAULT_SEED};
use qwigner_core::symmetry::dihedral_symmetries;

#[test]
fn doubling_resolution_keeps_values() {
    // With centers lo + (j + ½)h, shifting the fine box by −h/4 makes fine
    // center 2j + 1 coincide with coarse center j.
    let ex = catalog::make("pauli2").unwrap();
    let coarse = GridSpec::fitted(&ex.tuple, 64).unwrap();
    let h = coarse.spacing(0);
    let shift = |v: &[f64]| v.iter().map(|x| x - 0.25 * h).collect::<Vec<_>>();
    let fine = GridSpec::new(shift(&coarse.lo), shift(&coarse.hi), vec![128, 128], coarse.epsilon).unwrap();
    let g1 = compute_wigner_grid(&ex.tuple, &ex.state, &coarse).unwrap();
    let g2 = compute_wigner_grid(&ex.tuple, &ex.state, &fine).unwrap();
    let mut worst: f64 = 0.0;
    for i in 0..64 {
        for j in 0..64 {
            worst = worst.max((g1.value(&[i, j]) - g2.value(&[2 * i + 1, 2 * j + 1])).abs());
        }
    }
    assert!(worst <= 1e-6 * g1.peak(), "{worst:e} vs peak {}", g1.peak());
}

#[test]
fn cyclic_shift_rotates_the_heptagon_grid() {
    let ex = catalog::make("dihedral-7").unwrap();
    let rho = random_state(7, &mut seeded(DEFAULT_SEED));
    let fitted = GridSpec::fitted(&ex.tuple, 128).unwrap();
    let h = fitted.spacing(0);
    let spec = GridSpec::new(fitted.lo, fitted.hi, fitted.samples, 12.0 * h * h).unwrap();
    let base = compute_wigner_grid(&ex.tuple, &rho, &spec).unwrap();
    let rotation = &dihedral_symmetries(7)[2];
    let rotated = compute_wigner_grid(&ex.tuple, &rho.transformed(&rotation.unitary), &spec).unwrap();
    let moved = pushforward(&base, &rotation.linear, &rotation.shift).unwrap();
    let worst = rotated.values.iter().zip(&moved.values).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    assert!(worst <= 0.02 * rotated.peak(), "{}", worst / rotated.peak());
    let angle = rotation.linear[1][0].atan2(rotation.linear[0][0]);
    assert!((angle.abs() - 2.0 * std::f64::consts::PI / 7.0).abs() < 1e-12);
}

#[test]
fn quantized_polynomials_match_grid_moments() {
    let mut rng = seeded(DEFAULT_SEED);
    let a = random_tuple(2, 3, &mut rng);
    let rho = random_state(3, &mut rng);
    let grid = compute_wigner_grid(&a, &rho, &GridSpec::fitted(&a, 128).unwrap()).unwrap();
    for r in [[1, 0], [0, 1], [2, 0], [1, 1], [0, 2]] {
        let exact = rho.expect(quantize(&a, &Polynomial::monomial(&r, 1.0)).unwrap().matrix()).re;
        let m = grid_moment(&grid, &r).unwrap();
        assert!(!m.eps_biased);
        assert!((m.corrected - exact).abs() <= 1e-2, "{r:?}: {} vs {exact}", m.corrected);
    }
}

#[test]
fn smearing_bias_is_removed_for_second_moments() {
    let ex = catalog::make("pauli2").unwrap();
    let spec = GridSpec::new(vec![-4.0; 2], vec![4.0; 2], vec![256, 256], 0.05).unwrap();
    let grid = compute_wigner_grid(&ex.tuple, &ex.state, &spec).unwrap();
    let m = grid_moment(&grid, &[2, 0]).unwrap();
    // tr(ρ σx²) = 1; smearing adds 2ε.
    assert!((m.raw - 1.1).abs() < 1e-6 && (m.corrected - 1.0).abs() < 1e-6, "{} {}", m.raw, m.corrected);
}
