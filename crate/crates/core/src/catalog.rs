//! Built-in operator tuples and states.

use num_complex::Complex64;
use rand::RngExt;

use crate::error::{Result, WignerError};
use crate::linalg::{real_matrix, ComplexMatrix, DensityMatrix, OperatorTuple};
use crate::random::{seeded, DEFAULT_SEED};
use crate::symmetry::dihedral_multiplet;

/// A named system: tuple, state and a short provenance note.
#[derive(Debug, Clone)]
pub struct NamedExample {
    pub name: String,
    pub tuple: OperatorTuple,
    pub state: DensityMatrix,
    pub notes: String,
}

/// Catalog names accepted by [`make`]. `dihedral-<p>` works for any `p > 2`.
pub const CATALOG: &[&str] = &[
    "pauli3",
    "pauli2",
    "heart",
    "dual-counterexample",
    "dihedral-5",
    "dihedral-7",
    "nearly-commuting",
    "commuting-demo",
    "block-2+2",
];

/// Default off-diagonal strength of the nearly commuting example.
pub const NEARLY_COMMUTING_STRENGTH: f64 = 0.05;

/// `[σ_x, σ_y, σ_z]`.
pub fn pauli() -> [ComplexMatrix; 3] {
    let c = |re: f64, im: f64| Complex64::new(re, im);
    [
        ComplexMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]),
        ComplexMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)]),
        ComplexMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)]),
    ]
}

/// Qubit state `(I + r·σ)/2`; `r` may have two or three components.
pub fn bloch_state(r: &[f64]) -> Result<DensityMatrix> {
    let [x, y, z] = pauli();
    let mut m = ComplexMatrix::identity(2, 2);
    for (rk, s) in r.iter().zip([x, y, z]) {
        m += s * Complex64::new(*rk, 0.0);
    }
    DensityMatrix::new(m * Complex64::new(0.5, 0.0), &Default::default())
}

pub fn make(name: &str) -> Result<NamedExample> {
    make_seeded(name, DEFAULT_SEED)
}

pub fn make_seeded(name: &str, seed: u64) -> Result<NamedExample> {
    if let Some(p) = name.strip_prefix("dihedral-") {
        let p: usize = p.parse().map_err(|_| WignerError::UnknownExample(name.to_string()))?;
        return dihedral_multiplet(p, seed);
    }
    let [sx, sy, sz] = pauli();
    let ex = match name {
        "pauli3" => NamedExample {
            name: name.into(),
            tuple: OperatorTuple::new(vec![
                crate::linalg::Hermitian::symmetrized(sx),
                crate::linalg::Hermitian::symmetrized(sy),
                crate::linalg::Hermitian::symmetrized(sz),
            ])?,
            state: DensityMatrix::maximally_mixed(2),
            notes: "Pauli matrices (σx, σy, σz), maximally mixed qubit".into(),
        },
        "pauli2" => pauli2(&[0.0, 0.0, 0.0])?,
        "heart" => NamedExample {
            name: name.into(),
            tuple: heart_pair(),
            state: DensityMatrix::maximally_mixed(3),
            notes: "3x3 pair whose first member has a double top eigenvalue; flat boundary piece".into(),
        },
        "dual-counterexample" => NamedExample {
            name: name.into(),
            tuple: dual_counterexample(),
            state: DensityMatrix::maximally_mixed(3),
            notes: "3x3 triple whose real dual variety contains a spurious line (a1, 0, 0)".into(),
        },
        "nearly-commuting" => nearly_commuting(NEARLY_COMMUTING_STRENGTH, seed),
        "commuting-demo" => NamedExample {
            name: name.into(),
            tuple: OperatorTuple::from_real(2, &[&[0.0, 0.0, 0.0, 1.0], &[0.0, 0.0, 0.0, 2.0]])?,
            state: DensityMatrix::diagonal(&[0.25, 0.75])?,
            notes: "commuting diagonal pair diag(0,1), diag(0,2) with weights 1/4, 3/4".into(),
        },
        "block-2+2" => block_pair(),
        _ => return Err(WignerError::UnknownExample(name.to_string())),
    };
    Ok(ex)
}

/// `(σ_x, σ_y)` with state of Bloch vector `r`.
pub fn pauli2(r: &[f64]) -> Result<NamedExample> {
    let [sx, sy, _] = pauli();
    Ok(NamedExample {
        name: "pauli2".into(),
        tuple: OperatorTuple::new(vec![
            crate::linalg::Hermitian::symmetrized(sx),
            crate::linalg::Hermitian::symmetrized(sy),
        ])?,
        state: bloch_state(r)?,
        notes: format!("Pauli pair (σx, σy), Bloch vector {r:?}"),
    })
}

pub fn heart_pair() -> OperatorTuple {
    OperatorTuple::from_real(
        3,
        &[&[0.0, 0.0, 1.0, 0.0, 1.0, 0.0, 1.0, 0.0, 0.0], &[0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 1.0, 0.0]],
    )
    .expect("real symmetric")
}

pub fn dual_counterexample() -> OperatorTuple {
    OperatorTuple::from_real(
        3,
        &[
            &[1.0, 0.0, 0.0, 0.0, -1.0, 1.0, 0.0, 1.0, 0.0],
            &[0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0],
            &[0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0],
        ],
    )
    .expect("real symmetric")
}

/// Corners of the five-point "house": square plus roof apex.
pub const HOUSE_POINTS: [[f64; 2]; 5] = [[-1.0, -1.0], [1.0, -1.0], [-1.0, 1.0], [1.0, 1.0], [0.0, 2.0]];

/// Diagonal pair with the house corners as joint eigenvalues, plus real
/// off-diagonal couplings `strength · s_{μν} · e⊥` between connected corners,
/// where `e⊥` is the unit normal of the segment and `s_{μν} ∈ [0.8, 1.2]` is
/// drawn from the seed. The apex is not coupled to the two bottom corners.
pub fn nearly_commuting(strength: f64, seed: u64) -> NamedExample {
    let d = HOUSE_POINTS.len();
    let mut rng = seeded(seed);
    let mut a1 = vec![0.0; d * d];
    let mut a2 = vec![0.0; d * d];
    for (mu, p) in HOUSE_POINTS.iter().enumerate() {
        a1[mu * d + mu] = p[0];
        a2[mu * d + mu] = p[1];
    }
    for mu in 0..d {
        for nu in mu + 1..d {
            let scale: f64 = rng.random_range(0.8..1.2);
            if nu == 4 && mu < 2 {
                continue;
            }
            let (p, q) = (HOUSE_POINTS[mu], HOUSE_POINTS[nu]);
            let (dx, dy) = (q[0] - p[0], q[1] - p[1]);
            let len = dx.hypot(dy);
            let normal = [-dy / len, dx / len];
            let c1 = strength * scale * normal[0];
            let c2 = strength * scale * normal[1];
            a1[mu * d + nu] = c1;
            a1[nu * d + mu] = c1;
            a2[mu * d + nu] = c2;
            a2[nu * d + mu] = c2;
        }
    }
    NamedExample {
        name: "nearly-commuting".into(),
        tuple: OperatorTuple::from_real(d, &[&a1, &a2]).expect("real symmetric"),
        state: DensityMatrix::maximally_mixed(d),
        notes: format!("house corners (±1,±1),(0,2) with off-diagonal strength {strength}, seed {seed:#x}"),
    }
}

/// `diag(B_1, B_2)`-type 4×4 pair with two 2×2 blocks.
pub fn block_pair() -> NamedExample {
    let a1 = [
        1.0, 0.5, 0.0, 0.0, //
        0.5, -1.0, 0.0, 0.0, //
        0.0, 0.0, 3.0, 0.3, //
        0.0, 0.0, 0.3, 2.0,
    ];
    let a2 = [
        0.0, 1.0, 0.0, 0.0, //
        1.0, 0.5, 0.0, 0.0, //
        0.0, 0.0, -0.5, 0.7, //
        0.0, 0.0, 0.7, 1.0,
    ];
    NamedExample {
        name: "block-2+2".into(),
        tuple: OperatorTuple::from_real(4, &[&a1, &a2]).expect("real symmetric"),
        state: DensityMatrix::maximally_mixed(4),
        notes: "reducible pair: two 2x2 blocks".into(),
    }
}

/// Projections onto the two blocks of [`block_pair`].
pub fn block_projectors() -> [ComplexMatrix; 2] {
    let mut q1 = [0.0; 16];
    let mut q2 = [0.0; 16];
    q1[0] = 1.0;
    q1[5] = 1.0;
    q2[10] = 1.0;
    q2[15] = 1.0;
    [real_matrix(4, &q1), real_matrix(4, &q2)]
}
