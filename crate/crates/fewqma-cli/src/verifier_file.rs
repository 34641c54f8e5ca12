//! Verifier file format: a JSON object `{"k": int, "m": int, "v": [[re, im], …]}`
//! with the circuit unitary row-major. Unitarity is validated on load.

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::ConfigError;
use fewqma_core::linalg::ComplexMatrix;
use fewqma_core::verifier::VerifierSpec;

#[derive(Serialize, Deserialize)]
struct VerifierFile {
    k: usize,
    m: usize,
    v: Vec<[f64; 2]>,
}

/// Serialize a verifier to the file format.
pub fn to_json(spec: &VerifierSpec) -> Result<String, ConfigError> {
    let file = VerifierFile {
        k: spec.witness_qubits(),
        m: spec.aux_qubits(),
        v: spec
            .circuit()
            .entries()
            .iter()
            .map(|z| [z.re, z.im])
            .collect(),
    };
    let mut out = serde_json::to_string(&file)?;
    out.push('\n');
    Ok(out)
}

/// Write a verifier file.
pub fn save(path: &Path, spec: &VerifierSpec) -> Result<(), ConfigError> {
    std::fs::write(path, to_json(spec)?)?;
    Ok(())
}

/// Read and validate a verifier file.
pub fn load(path: &Path) -> Result<VerifierSpec, ConfigError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| ConfigError(format!("cannot read {}: {e}", path.display())))?;
    let file: VerifierFile = serde_json::from_str(&text)
        .map_err(|e| ConfigError(format!("malformed verifier file {}: {e}", path.display())))?;
    if file.k == 0 {
        return Err(ConfigError(format!(
            "malformed verifier file {}: k must be positive",
            path.display()
        )));
    }
    let total = 1usize
        .checked_shl((file.k + file.m) as u32)
        .filter(|&d| d <= fewqma_core::AMBIENT_CAP)
        .ok_or_else(|| {
            ConfigError(format!(
                "verifier file {}: dimension 2^{} above the cap",
                path.display(),
                file.k + file.m
            ))
        })?;
    if file.v.len() != total * total {
        return Err(ConfigError(format!(
            "malformed verifier file {}: expected {} entries, found {}",
            path.display(),
            total * total,
            file.v.len()
        )));
    }
    let entries: Vec<Complex64> = file.v.iter().map(|[re, im]| Complex64::new(*re, *im)).collect();
    let matrix = ComplexMatrix::from_entries(total, total, entries)
        .map_err(|e| ConfigError(e.to_string()))?;
    VerifierSpec::new(file.k, file.m, matrix).map_err(|e| {
        ConfigError(format!(
            "verifier file {} rejected: {e}",
            path.display()
        ))
    })
}
