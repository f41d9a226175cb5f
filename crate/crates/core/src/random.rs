//! Seeded generators for the random matrices used throughout the checks.
//!
//! Every random artifact goes through a [`ChaCha8Rng`] built from an explicit
//! seed so runs are reproducible.

use num_complex::Complex64;
use rand::{Rng, RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::{ComplexMatrix, ComplexVector, DensityMatrix, Hermitian, OperatorTuple};

pub const DEFAULT_SEED: u64 = 0x57160;

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn uniform<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.random_range(-1.0..1.0)
}

fn random_complex_matrix<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| Complex64::new(uniform(rng), uniform(rng)))
}

/// Hermitian matrix with entries uniform in the unit square.
pub fn random_hermitian<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Hermitian {
    Hermitian::symmetrized(random_complex_matrix(d, d, rng))
}

pub fn random_real_symmetric<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Hermitian {
    let m = ComplexMatrix::from_fn(d, d, |_, _| Complex64::new(uniform(rng), 0.0));
    Hermitian::symmetrized(m)
}

pub fn random_tuple<R: Rng + ?Sized>(n: usize, d: usize, rng: &mut R) -> OperatorTuple {
    OperatorTuple::new((0..n).map(|_| random_hermitian(d, rng)).collect())
        .expect("all members share the dimension")
}

pub fn random_real_tuple<R: Rng + ?Sized>(n: usize, d: usize, rng: &mut R) -> OperatorTuple {
    OperatorTuple::new((0..n).map(|_| random_real_symmetric(d, rng)).collect())
        .expect("all members share the dimension")
}

/// `B B^†` for a random `B`; positive semidefinite, generically full rank.
pub fn random_psd<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Hermitian {
    let b = random_complex_matrix(d, d, rng);
    Hermitian::symmetrized(&b * b.adjoint())
}

/// Full-rank mixed state `B B^† / tr(B B^†)`.
pub fn random_state<R: Rng + ?Sized>(d: usize, rng: &mut R) -> DensityMatrix {
    let p = random_psd(d, rng).into_inner();
    let tr: f64 = p.diagonal().iter().map(|z| z.re).sum();
    let m = p / Complex64::new(tr, 0.0);
    DensityMatrix::new(m, &Default::default()).expect("normalized psd matrix")
}

pub fn random_unit_vector<R: Rng + ?Sized>(d: usize, rng: &mut R) -> ComplexVector {
    let v = ComplexVector::from_fn(d, |_, _| Complex64::new(uniform(rng), uniform(rng)));
    let n = v.norm();
    v / Complex64::new(n, 0.0)
}

/// Unitary `Q` factor of a random complex matrix.
pub fn random_unitary<R: Rng + ?Sized>(d: usize, rng: &mut R) -> ComplexMatrix {
    random_complex_matrix(d, d, rng).qr().q()
}

/// Random real unit vector in `n` dimensions.
pub fn random_direction<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| uniform(rng)).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-3 && norm <= 1.0 {
            return v.into_iter().map(|x| x / norm).collect();
        }
    }
}
