//! JSON matrix-tuple files.
//!
//! ```json
//! {"n": 2, "d": 2,
//!  "operators": [[[[0,0],[1,0]],[[1,0],[0,0]]], [[[0,0],[0,-1]],[[0,1],[0,0]]]],
//!  "state": [[[0.5,0],[0,0]],[[0,0],[0.5,0]]]}
//! ```
//!
//! Each matrix is a `d×d` array of `[re, im]` pairs. `state` is optional and
//! defaults to `I/d`.

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Result, WignerError};
use crate::linalg::{validate_tuple, ComplexMatrix, DensityMatrix, OperatorTuple, Tolerances};

type JsonMatrix = Vec<Vec<[f64; 2]>>;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct TupleFile {
    pub n: usize,
    pub d: usize,
    pub operators: Vec<JsonMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub state: Option<JsonMatrix>,
}

fn to_matrix(m: &JsonMatrix, d: usize) -> Result<ComplexMatrix> {
    if m.len() != d || m.iter().any(|row| row.len() != d) {
        return Err(WignerError::Parse(format!("expected a {d}x{d} matrix")));
    }
    Ok(ComplexMatrix::from_fn(d, d, |i, j| Complex64::new(m[i][j][0], m[i][j][1])))
}

fn from_matrix(m: &ComplexMatrix) -> JsonMatrix {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
        .collect()
}

impl TupleFile {
    pub fn from_system(tuple: &OperatorTuple, state: Option<&DensityMatrix>) -> Self {
        Self {
            n: tuple.n(),
            d: tuple.dim(),
            operators: tuple.ops().iter().map(|h| from_matrix(h.matrix())).collect(),
            state: state.map(|s| from_matrix(s.matrix())),
        }
    }

    /// Validates into a tuple and a state (`I/d` when absent).
    pub fn into_system(self, tol: &Tolerances) -> Result<(OperatorTuple, DensityMatrix)> {
        if self.operators.len() != self.n {
            return Err(WignerError::Parse(format!(
                "n = {} but {} operators given",
                self.n,
                self.operators.len()
            )));
        }
        let raw = self
            .operators
            .iter()
            .map(|m| to_matrix(m, self.d))
            .collect::<Result<Vec<_>>>()?;
        let tuple = validate_tuple(raw, tol)?;
        let state = match &self.state {
            Some(s) => DensityMatrix::new(to_matrix(s, self.d)?, tol)?,
            None => DensityMatrix::maximally_mixed(self.d),
        };
        Ok((tuple, state))
    }
}

pub fn parse_tuple_json(text: &str, tol: &Tolerances) -> Result<(OperatorTuple, DensityMatrix)> {
    let file: TupleFile = serde_json::from_str(text)?;
    file.into_system(tol)
}

pub fn load_tuple_file(path: &Path, tol: &Tolerances) -> Result<(OperatorTuple, DensityMatrix)> {
    parse_tuple_json(&std::fs::read_to_string(path)?, tol)
}

pub fn to_json(tuple: &OperatorTuple, state: Option<&DensityMatrix>) -> Result<String> {
    Ok(serde_json::to_string_pretty(&TupleFile::from_system(tuple, state))?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn round_trip_pauli3() {
        let ex = catalog::make("pauli3").unwrap();
        let text = to_json(&ex.tuple, Some(&ex.state)).unwrap();
        let (t, s) = parse_tuple_json(&text, &Tolerances::default()).unwrap();
        assert_eq!(t, ex.tuple);
        assert_eq!(s, ex.state);
    }

    #[test]
    fn state_defaults_to_maximally_mixed() {
        let text = r#"{"n":1,"d":2,"operators":[[[[1,0],[0,0]],[[0,0],[-1,0]]]]}"#;
        let (_, s) = parse_tuple_json(text, &Tolerances::default()).unwrap();
        assert_eq!(s, DensityMatrix::maximally_mixed(2));
    }

    #[test]
    fn non_hermitian_file_rejected() {
        let text = r#"{"n":1,"d":2,"operators":[[[[0,0],[1,0]],[[0,0],[0,0]]]]}"#;
        assert!(matches!(
            parse_tuple_json(text, &Tolerances::default()),
            Err(WignerError::NotHermitian { .. })
        ));
    }

    #[test]
    fn wrong_count_rejected() {
        let text = r#"{"n":2,"d":1,"operators":[[[[1,0]]]]}"#;
        assert!(matches!(parse_tuple_json(text, &Tolerances::default()), Err(WignerError::Parse(_))));
    }
}
