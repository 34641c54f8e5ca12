//! Majorization between a Hermitian matrix's eigenvalues and its diagonal,
//! and the eigenvalue bounds it yields for vector-based witness definitions.

use alloc::vec::Vec;

use crate::error::{Error, Result};

/// A sorted eigenvalue sequence paired with a sorted diagonal sequence.
#[derive(Debug, Clone)]
pub struct MajorizationInput {
    eigenvalues: Vec<f64>,
    diagonal: Vec<f64>,
}

fn is_sorted_descending(xs: &[f64]) -> bool {
    xs.windows(2).all(|w| w[0] >= w[1])
}

impl MajorizationInput {
    /// Both sequences must be sorted descending and of equal length.
    pub fn new(eigenvalues: Vec<f64>, diagonal: Vec<f64>) -> Result<Self> {
        if eigenvalues.len() != diagonal.len() {
            return Err(Error::DimensionMismatch {
                context: "majorization sequences",
                expected: eigenvalues.len(),
                actual: diagonal.len(),
            });
        }
        if !is_sorted_descending(&eigenvalues) || !is_sorted_descending(&diagonal) {
            return Err(Error::ShapeViolation {
                context: "majorization sequences must be sorted descending",
            });
        }
        Ok(MajorizationInput {
            eigenvalues,
            diagonal,
        })
    }

    /// Eigenvalue sequence.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Diagonal sequence.
    pub fn diagonal(&self) -> &[f64] {
        &self.diagonal
    }
}

/// Result of a majorization check: per-prefix slacks and the verdict.
#[derive(Debug, Clone)]
pub struct MajorizationCheck {
    /// `true` when every prefix slack is ≥ −tol and the total is within tol
    /// of zero.
    pub ok: bool,
    /// Prefix sums `Σ_{i≤t}(λ_i − μ_i)`.
    pub partial_slacks: Vec<f64>,
}

/// Check that the eigenvalues majorize the diagonal: all prefix sums of
/// `λ_i − μ_i` nonnegative, with the full sum zero (trace equality).
pub fn check_majorization(input: &MajorizationInput, tol: f64) -> MajorizationCheck {
    let mut partial_slacks = Vec::with_capacity(input.eigenvalues.len());
    let mut acc = 0.0f64;
    for (l, m) in input.eigenvalues.iter().zip(&input.diagonal) {
        acc += l - m;
        partial_slacks.push(acc);
    }
    let ok = partial_slacks.iter().all(|&s| s >= -tol)
        && partial_slacks.last().map_or(true, |&s| s.abs() <= tol);
    MajorizationCheck { ok, partial_slacks }
}

/// Eigenvalue bounds certified from a vector-based witness diagonal.
#[derive(Debug, Clone, Copy)]
pub struct WitnessValueBounds {
    /// Lower bound on the `d`-th largest eigenvalue:
    /// `−(d−1) + Σ_{i≤d} μ_i`.
    pub lower_bound: f64,
    /// Upper bound on the `(d+1)`-th eigenvalue: `Σ_{i>d} μ_i`.
    pub upper_bound: f64,
    /// Both bounds clear the promise thresholds 2/3 and 1/3.
    pub certified: bool,
}

/// Slack admitted when checking the diagonal shape; absorbs the rounding of
/// exactly-at-the-bound planted values.
const SHAPE_SLACK: f64 = 1e-12;

/// Bounds on `λ_d` and `λ_{d+1}` from a sorted witness-basis diagonal whose
/// first `d` entries are at least `1 − 1/(3q)` and whose remaining entries
/// are at most `1/(3·2^k)`.
///
/// Shape violations are reported as errors, never patched around.
pub fn vfqma_bounds(
    diagonal: &[f64],
    witness_dim: usize,
    witness_bound: usize,
    witness_qubits: usize,
) -> Result<WitnessValueBounds> {
    let space = 1usize << witness_qubits;
    if witness_bound == 0 || witness_bound > space {
        return Err(Error::InvalidArgument {
            context: "witness bound must lie in 1..=2^k",
        });
    }
    if witness_dim == 0 || witness_dim > witness_bound {
        return Err(Error::InvalidArgument {
            context: "witness dimension must lie in 1..=witness bound",
        });
    }
    if diagonal.len() != space {
        return Err(Error::DimensionMismatch {
            context: "witness-basis diagonal length",
            expected: space,
            actual: diagonal.len(),
        });
    }
    if !is_sorted_descending(diagonal) {
        return Err(Error::ShapeViolation {
            context: "diagonal must be sorted descending",
        });
    }
    let high_floor = 1.0 - 1.0 / (3.0 * witness_bound as f64);
    let low_ceiling = 1.0 / (3.0 * space as f64);
    if diagonal[..witness_dim]
        .iter()
        .any(|&m| m < high_floor - SHAPE_SLACK)
    {
        return Err(Error::ShapeViolation {
            context: "leading diagonal entries below the completeness floor",
        });
    }
    if diagonal[witness_dim..]
        .iter()
        .any(|&m| m > low_ceiling + SHAPE_SLACK)
    {
        return Err(Error::ShapeViolation {
            context: "trailing diagonal entries above the background ceiling",
        });
    }
    let head: f64 = diagonal[..witness_dim].iter().sum();
    let tail: f64 = diagonal[witness_dim..].iter().sum();
    let lower_bound = head - (witness_dim as f64 - 1.0);
    let upper_bound = tail;
    // At witness_dim = witness_bound the lower bound sits exactly at 2/3, so
    // the certification comparison needs the same rounding slack as the
    // shape check.
    Ok(WitnessValueBounds {
        lower_bound,
        upper_bound,
        certified: lower_bound >= 2.0 / 3.0 - SHAPE_SLACK
            && upper_bound <= 1.0 / 3.0 + SHAPE_SLACK,
    })
}
