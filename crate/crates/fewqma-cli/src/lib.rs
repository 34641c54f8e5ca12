//! Experiment driver around `fewqma-core`: seeded instance generation, the
//! claim/bound suites, the oracle reduction, and machine-readable reports.

pub mod commands;
pub mod config;
pub mod report;
pub mod verifier_file;

use std::fmt;

/// Configuration-class failure: bad flags, malformed input files, or
/// impossible dimension requests. Maps to exit code 2.
#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for ConfigError {}

impl From<fewqma_core::Error> for ConfigError {
    fn from(err: fewqma_core::Error) -> Self {
        ConfigError(err.to_string())
    }
}

impl From<std::io::Error> for ConfigError {
    fn from(err: std::io::Error) -> Self {
        ConfigError(err.to_string())
    }
}

impl From<serde_json::Error> for ConfigError {
    fn from(err: serde_json::Error) -> Self {
        ConfigError(err.to_string())
    }
}

/// Per-trial sub-seed: an independent stream hashed from the master seed and
/// the trial index, so changing the trial count never reshuffles earlier
/// trials.
pub fn subseed(master: u64, trial: u64) -> u64 {
    fewqma_core::rng::CounterRng::derive(master, trial).next_u64()
}
