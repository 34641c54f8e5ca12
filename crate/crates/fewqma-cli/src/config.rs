//! Per-command configuration structs, validated against the ambient
//! dimension cap and the promise-parameter constraints.

use serde::Serialize;

use crate::ConfigError;
use fewqma_core::AMBIENT_CAP;

/// Which kind of instance to plant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    /// Planted witness subspace accepted with high probability.
    Yes,
    /// All acceptance probabilities below the soundness threshold.
    No,
}

/// Report output format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum OutputFormat {
    /// Structured JSON report (schema 1).
    #[default]
    Json,
    /// Flat CSV table of the report rows.
    Csv,
}

fn checked_power(base: usize, exp: usize, what: &str) -> Result<usize, ConfigError> {
    let mut dim = 1usize;
    for _ in 0..exp {
        dim = dim
            .checked_mul(base)
            .filter(|&d| d <= AMBIENT_CAP)
            .ok_or_else(|| {
                ConfigError(format!(
                    "{what} needs dimension {base}^{exp}, above the cap {AMBIENT_CAP}"
                ))
            })?;
    }
    Ok(dim)
}

/// Configuration for the subspace claim suite.
#[derive(Debug, Clone, Serialize)]
pub struct ClaimsConfig {
    /// Local dimension of each register.
    pub local_dim: usize,
    /// Witness subspace dimension.
    pub witness_dim: usize,
    /// Tensor copies.
    pub copies: usize,
    /// Master seed.
    pub seed: u64,
    /// Random subspaces drawn per configuration.
    pub trials: usize,
    /// Residual tolerance for the derived checks.
    pub tolerance: f64,
    /// Corrupt one projector before checking (negative control).
    pub corrupt: bool,
}

impl ClaimsConfig {
    /// Validate dimension products and ranges.
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.local_dim < 2 {
            return Err(ConfigError("local dimension must be at least 2".into()));
        }
        if self.copies == 0 || self.witness_dim == 0 {
            return Err(ConfigError("copies and witness dimension must be positive".into()));
        }
        if self.trials == 0 {
            return Err(ConfigError("trials must be positive".into()));
        }
        if self.copies > 6 {
            return Err(ConfigError("more than 6 copies overflows the control register".into()));
        }
        checked_power(
            self.local_dim,
            self.copies.max(self.witness_dim),
            "claim suite",
        )?;
        Ok(())
    }

    /// Whether the witness-subspace claims are runnable (they need
    /// `2 ≤ copies ≤ witness_dim ≤ local_dim`); the dimension-trace checks
    /// run regardless.
    pub fn claims_runnable(&self) -> bool {
        2 <= self.copies && self.copies <= self.witness_dim && self.witness_dim <= self.local_dim
    }
}

/// Configuration shared by instance-driven commands (reduce, spectrum, gen).
#[derive(Debug, Clone, Serialize)]
pub struct InstanceConfig {
    /// Witness qubits.
    pub witness_qubits: usize,
    /// Auxiliary qubits.
    pub aux_qubits: usize,
    /// Planted witness dimension (yes instances).
    pub witness_dim: usize,
    /// Witness-count bound `q`.
    pub witness_bound: usize,
    /// Amplification exponent `r` (thresholds `1−2^{−r}`, `2^{−r}`).
    pub amplification_exponent: u32,
    /// Instance kind.
    pub kind: Kind,
    /// Master seed.
    pub seed: u64,
}

impl InstanceConfig {
    /// Validate the promise-parameter constraints and dimension caps.
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.witness_qubits == 0 {
            return Err(ConfigError("need at least one witness qubit".into()));
        }
        if self.aux_qubits == 0 {
            return Err(ConfigError("need at least one auxiliary qubit".into()));
        }
        checked_power(
            2,
            self.witness_qubits + self.aux_qubits,
            "verifier circuit",
        )?;
        let space = 1usize << self.witness_qubits;
        if self.witness_bound == 0 || self.witness_bound > space {
            return Err(ConfigError(format!(
                "witness bound must lie in 1..={space}"
            )));
        }
        checked_power(space, self.witness_bound, "reduction loop")?;
        if self.kind == Kind::Yes
            && (self.witness_dim == 0 || self.witness_dim > self.witness_bound)
        {
            return Err(ConfigError(
                "planted dimension must lie in 1..=witness bound".into(),
            ));
        }
        if self.amplification_exponent == 0 || self.amplification_exponent > 52 {
            return Err(ConfigError("amplification exponent must lie in 1..=52".into()));
        }
        Ok(())
    }
}

/// Configuration for the majorization suite.
#[derive(Debug, Clone, Serialize)]
pub struct HornConfig {
    /// Random Hermitian trials.
    pub trials: usize,
    /// Master seed.
    pub seed: u64,
    /// Residual tolerance.
    pub tolerance: f64,
}

impl HornConfig {
    /// Validate ranges.
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.trials == 0 {
            return Err(ConfigError("trials must be positive".into()));
        }
        Ok(())
    }
}

/// Default residual tolerance for derived checks.
pub const DEFAULT_TOLERANCE: f64 = 1e-8;
