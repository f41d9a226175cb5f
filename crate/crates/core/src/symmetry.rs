//! Dihedral symmetry: permutation representation of `D_p`, the character
//! twirl onto its two-dimensional irrep, and multiplets `(A_1, A_2)` that
//! transform as a plane vector.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::catalog::NamedExample;
use crate::error::{Result, WignerError};
use crate::linalg::{gram_rank, hermitian_coordinates, max_abs, ComplexMatrix, DensityMatrix, Hermitian, OperatorTuple};
use crate::random::{random_hermitian, seeded};

/// Group element `r^rotation · s^reflected` of `D_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DihedralElement {
    pub rotation: usize,
    pub reflected: bool,
}

/// A symmetry `U` together with its action `U^† A_k U = Σ_ℓ R_{kℓ} A_ℓ + α_k`.
#[derive(Debug, Clone)]
pub struct Symmetry {
    pub unitary: ComplexMatrix,
    pub linear: Vec<Vec<f64>>,
    pub shift: Vec<f64>,
}

pub fn dihedral_elements(p: usize) -> Vec<DihedralElement> {
    (0..p)
        .flat_map(|rotation| {
            [false, true].into_iter().map(move |reflected| DihedralElement { rotation, reflected })
        })
        .collect()
}

/// Permutation unitary: `e_j ↦ e_{k+j}` for rotations, `e_j ↦ e_{k−j}` for
/// reflections (indices mod `p`).
pub fn permutation_unitary(p: usize, g: DihedralElement) -> ComplexMatrix {
    let mut u = ComplexMatrix::zeros(p, p);
    for j in 0..p {
        let image = if g.reflected { (g.rotation + p - j) % p } else { (g.rotation + j) % p };
        u[(image, j)] = Complex64::new(1.0, 0.0);
    }
    u
}

/// Two-dimensional representation: rotation by `2πk/p`, reflection about
/// the vertical axis.
pub fn plane_representation(p: usize, g: DihedralElement) -> [[f64; 2]; 2] {
    let theta = 2.0 * PI * g.rotation as f64 / p as f64;
    let (s, c) = theta.sin_cos();
    if g.reflected {
        // rot(θ) · diag(−1, 1)
        [[-c, -s], [-s, c]]
    } else {
        [[c, -s], [s, c]]
    }
}

/// Character projection `𝒯(X) = (2/2p) Σ_g tr(R_g) U_g X U_g^†`.
pub fn twirl(p: usize, x: &ComplexMatrix) -> ComplexMatrix {
    let mut acc = ComplexMatrix::zeros(p, p);
    for g in dihedral_elements(p) {
        let r = plane_representation(p, g);
        let chi = r[0][0] + r[1][1];
        if chi.abs() < 1e-15 {
            continue;
        }
        let u = permutation_unitary(p, g);
        acc += (&u * x * u.adjoint()) * Complex64::new(chi, 0.0);
    }
    acc * Complex64::new(2.0 / (2 * p) as f64, 0.0)
}

/// Rank of the twirl as a real-linear map on Hermitian `p×p` matrices.
pub fn twirl_rank(p: usize) -> usize {
    let images: Vec<Vec<f64>> = hermitian_basis(p)
        .iter()
        .map(|b| hermitian_coordinates(&twirl(p, b)))
        .collect();
    gram_rank(&images, 1e-8)
}

/// Orthonormal basis of the Hermitian matrices under `tr(XY)`.
pub fn hermitian_basis(d: usize) -> Vec<ComplexMatrix> {
    let mut basis = Vec::with_capacity(d * d);
    let s = std::f64::consts::FRAC_1_SQRT_2;
    for i in 0..d {
        let mut m = ComplexMatrix::zeros(d, d);
        m[(i, i)] = Complex64::new(1.0, 0.0);
        basis.push(m);
    }
    for i in 0..d {
        for j in i + 1..d {
            let mut re = ComplexMatrix::zeros(d, d);
            re[(i, j)] = Complex64::new(s, 0.0);
            re[(j, i)] = Complex64::new(s, 0.0);
            basis.push(re);
            let mut im = ComplexMatrix::zeros(d, d);
            im[(i, j)] = Complex64::new(0.0, -s);
            im[(j, i)] = Complex64::new(0.0, s);
            basis.push(im);
        }
    }
    basis
}

/// Symmetries of a dihedral multiplet, one per group element.
pub fn dihedral_symmetries(p: usize) -> Vec<Symmetry> {
    dihedral_elements(p)
        .into_iter()
        .map(|g| {
            let r = plane_representation(p, g);
            Symmetry {
                unitary: permutation_unitary(p, g),
                linear: vec![r[0].to_vec(), r[1].to_vec()],
                shift: vec![0.0, 0.0],
            }
        })
        .collect()
}

/// Largest `‖U^† A_k U − Σ_ℓ R_{kℓ} A_ℓ − α_k I‖_max` over the given symmetries.
pub fn covariance_residual(tuple: &OperatorTuple, symmetries: &[Symmetry]) -> f64 {
    let d = tuple.dim();
    let mut worst: f64 = 0.0;
    for sym in symmetries {
        let u = &sym.unitary;
        for k in 0..tuple.n() {
            let lhs = u.adjoint() * tuple.op(k).matrix() * u;
            let mut rhs = ComplexMatrix::identity(d, d) * Complex64::new(sym.shift[k], 0.0);
            for (l, coeff) in sym.linear[k].iter().enumerate() {
                rhs += tuple.op(l).matrix() * Complex64::new(*coeff, 0.0);
            }
            worst = worst.max(max_abs(&(lhs - rhs)));
        }
    }
    worst
}

/// A `D_p`-covariant pair on `ℂ^p` built from a seeded Hermitian matrix:
/// twirl onto the plane irrep, symmetrize under the vertical reflection to
/// get `A_2`, and obtain `A_1` from the rotated copy of `A_2`.
pub fn dihedral_multiplet(p: usize, seed: u64) -> Result<NamedExample> {
    if p <= 2 {
        return Err(WignerError::InvalidArgument(format!("dihedral group needs p > 2, got {p}")));
    }
    let x = random_hermitian(p, &mut seeded(seed));
    let y = twirl(p, x.matrix());
    let s = permutation_unitary(p, DihedralElement { rotation: 0, reflected: true });
    let a2 = (&y + &s * &y * s.adjoint()) * Complex64::new(0.5, 0.0);
    let r = permutation_unitary(p, DihedralElement { rotation: 1, reflected: false });
    let theta = 2.0 * PI / p as f64;
    let rotated = r.adjoint() * &a2 * &r;
    let a1 = (rotated - &a2 * Complex64::new(theta.cos(), 0.0)) * Complex64::new(1.0 / theta.sin(), 0.0);
    let tuple = OperatorTuple::new(vec![Hermitian::symmetrized(a1), Hermitian::symmetrized(a2)])?;
    Ok(NamedExample {
        name: format!("dihedral-{p}"),
        tuple,
        state: DensityMatrix::maximally_mixed(p),
        notes: format!("D_{p}-covariant multiplet from seed {seed:#x}"),
    })
}
