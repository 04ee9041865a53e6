//! Textual state files: a JSON record with a `kind` tag, the subsystem
//! dimension list and row-major `[re, im]` entries. The writer emits 17
//! significant digits so values round-trip bit-exactly.

use std::fs;
use std::path::Path;

use num_complex::Complex64;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::state::{DensityMatrix, StateVector};

/// Either kind of state a file can hold.
#[derive(Debug, Clone)]
pub enum StateFile {
    Vector(StateVector),
    Matrix(DensityMatrix),
}

impl StateFile {
    /// View the contents as a density matrix (pure states are projected up).
    pub fn to_density_matrix(&self) -> DensityMatrix {
        match self {
            StateFile::Vector(psi) => psi.density(),
            StateFile::Matrix(rho) => rho.clone(),
        }
    }

    pub fn dims(&self) -> &[usize] {
        match self {
            StateFile::Vector(psi) => psi.dims(),
            StateFile::Matrix(rho) => rho.dims(),
        }
    }
}

fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

/// Serialize a state to the textual format.
pub fn to_string(state: &StateFile) -> String {
    let (kind, dims, entries): (&str, &[usize], Vec<Complex64>) = match state {
        StateFile::Vector(psi) => ("state_vector", psi.dims(), psi.amplitudes().to_vec()),
        StateFile::Matrix(rho) => (
            "density_matrix",
            rho.dims(),
            rho.entries().row_iter().flat_map(|r| r.iter().copied().collect::<Vec<_>>()).collect(),
        ),
    };
    let dims_text =
        dims.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(", ");
    let entries_text = entries
        .iter()
        .map(|z| format!("[{}, {}]", fmt17(z.re), fmt17(z.im)))
        .collect::<Vec<_>>()
        .join(",\n    ");
    format!(
        "{{\n  \"kind\": \"{kind}\",\n  \"dims\": [{dims_text}],\n  \"entries\": [\n    {entries_text}\n  ]\n}}\n"
    )
}

#[derive(Deserialize)]
struct RawStateFile {
    kind: String,
    dims: Vec<usize>,
    entries: Vec<[f64; 2]>,
}

/// Parse the textual format, validating the state invariants.
pub fn from_str(text: &str) -> Result<StateFile> {
    let raw: RawStateFile =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("state file: {e}")))?;
    let entries: Vec<Complex64> =
        raw.entries.iter().map(|[re, im]| Complex64::new(*re, *im)).collect();
    match raw.kind.as_str() {
        "state_vector" => Ok(StateFile::Vector(StateVector::new(raw.dims, entries)?)),
        "density_matrix" => {
            let d: usize = raw.dims.iter().product();
            if entries.len() != d * d {
                return Err(Error::Parse(format!(
                    "state file: expected {} entries for a {d}x{d} matrix, got {}",
                    d * d,
                    entries.len()
                )));
            }
            let m = nalgebra::DMatrix::from_row_slice(d, d, &entries);
            Ok(StateFile::Matrix(DensityMatrix::new(raw.dims, m)?))
        }
        other => Err(Error::Parse(format!("state file: unknown kind {other:?}"))),
    }
}

pub fn save_state<P: AsRef<Path>>(path: P, state: &StateFile) -> Result<()> {
    fs::write(path, to_string(state))?;
    Ok(())
}

pub fn load_state<P: AsRef<Path>>(path: P) -> Result<StateFile> {
    from_str(&fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{haar_state, mixed_state};
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    #[test]
    fn vector_round_trip_is_exact() {
        let mut rng = ChaCha12Rng::seed_from_u64(41);
        let psi = haar_state(3, &mut rng);
        let text = to_string(&StateFile::Vector(psi.clone()));
        match from_str(&text).unwrap() {
            StateFile::Vector(back) => {
                for (a, b) in psi.amplitudes().iter().zip(back.amplitudes()) {
                    assert_eq!(a, b, "17-digit output must round-trip bit-exactly");
                }
            }
            _ => panic!("kind changed in round trip"),
        }
    }

    #[test]
    fn matrix_round_trip_is_exact() {
        let mut rng = ChaCha12Rng::seed_from_u64(42);
        let rho = mixed_state(2, &mut rng);
        let text = to_string(&StateFile::Matrix(rho.clone()));
        match from_str(&text).unwrap() {
            StateFile::Matrix(back) => {
                assert_eq!(rho.entries(), back.entries());
            }
            _ => panic!("kind changed in round trip"),
        }
    }

    #[test]
    fn rejects_malformed_and_invalid_input() {
        assert!(from_str("not json").is_err());
        assert!(from_str(r#"{"kind": "widget", "dims": [2], "entries": [[1.0, 0.0]]}"#).is_err());
        // Unnormalized vector fails state validation.
        assert!(from_str(
            r#"{"kind": "state_vector", "dims": [2], "entries": [[1.0, 0.0], [1.0, 0.0]]}"#
        )
        .is_err());
    }
}
