//! Command implementations: each returns a [`RunReport`] whose checks decide
//! the process exit code.

use std::path::{Path, PathBuf};
use std::time::Instant;

use num_complex::Complex64;

use crate::config::{ClaimsConfig, HornConfig, InstanceConfig, Kind};
use crate::report::{
    bound_check, flag_check, residual_check, CheckRecord, RunReport, SpectraSection, TraceRecord,
};
use crate::verifier_file;
use crate::{subseed, ConfigError};

use fewqma_core::linalg::{
    eigh, gram_schmidt, intersect, orth_complement, ComplexMatrix, SubspaceBasis,
};
use fewqma_core::majorization::{check_majorization, vfqma_bounds, MajorizationInput};
use fewqma_core::protocol::{
    algorithm_a, combined_operator, uqma_oracle, OracleVerdict, ACCEPT_THRESHOLD, REJECT_THRESHOLD,
};
use fewqma_core::rng::CounterRng;
use fewqma_core::subspace::{
    random_subspace, random_unitary, rotate_basis, slater, verify_claims, AltSymContext,
    ClaimReport,
};
use fewqma_core::verifier::{
    acceptance_operator, pi_x, plant_verifier, PlantedInstance, VerifierSpec,
};
use fewqma_core::{TOL_RANK, TOL_STRUCTURAL};

// Audit anchors: descriptive names for the facts each check verifies.
const ANCHOR_PLUMBING: &str = "plumbing";
const ANCHOR_ALT_DIM: &str = "dim:alternating-trace";
const ANCHOR_SYM_DIM: &str = "dim:symmetric-trace";
const ANCHOR_SPLIT: &str = "dim:two-register-split";
const ANCHOR_RESTRICTED_DIM: &str = "dim:restricted-alternating-trace";
const ANCHOR_DECOMP: &str = "claim:alt-complement-decomposition";
const ANCHOR_UNIQUE: &str = "claim:slater-spans-alternating";
const ANCHOR_COMMUTE: &str = "claim:projector-commutation";
const ANCHOR_ORTHO: &str = "claim:alt-projection-stays-orthogonal";
const ANCHOR_FACT_INTERSECT: &str = "fact:complement-of-intersection";
const ANCHOR_FACT_TENSOR: &str = "fact:tensor-complement-split";
const ANCHOR_COMPOSITE_PSD: &str = "fact:composite-operator-psd";
const ANCHOR_COMPRESSION: &str = "fact:witness-compression";
const ANCHOR_COMBINED_TOP: &str = "lemma:combined-operator-completeness";
const ANCHOR_COMBINED_SECOND: &str = "lemma:combined-operator-soundness";
const ANCHOR_WITNESS_OVERLAP: &str = "lemma:unique-witness-overlap";
const ANCHOR_ORACLE: &str = "oracle:unique-witness-promise";
const ANCHOR_REDUCTION: &str = "thm:oracle-reduction";
const ANCHOR_HORN: &str = "thm:eigenvalue-diagonal-majorization";
const ANCHOR_VFQMA: &str = "thm:vector-witness-bounds";

fn elapsed_ms(start: Instant) -> u64 {
    start.elapsed().as_millis() as u64
}

fn plant(cfg: &InstanceConfig, seed: u64) -> Result<PlantedInstance, ConfigError> {
    let inst = match cfg.kind {
        Kind::Yes => PlantedInstance::yes(
            cfg.witness_qubits,
            cfg.aux_qubits,
            cfg.witness_dim,
            cfg.witness_bound,
            cfg.amplification_exponent,
            seed,
        )?,
        Kind::No => PlantedInstance::no(
            cfg.witness_qubits,
            cfg.aux_qubits,
            cfg.witness_bound,
            cfg.amplification_exponent,
            seed,
        )?,
    };
    Ok(inst)
}

/// Residual of the complement-of-intersection identity on random subspaces
/// of a 12-dimensional space.
fn fact_intersection_residual(rng: &mut CounterRng) -> Result<f64, ConfigError> {
    let dim = 12;
    let s1 = random_subspace(dim, 7, rng);
    let s2 = random_subspace(dim, 8, rng);
    let cap = intersect(&s1, &s2, TOL_RANK)?;
    let lhs = ComplexMatrix::identity(dim).sub(&cap.projector());
    let mut stacked: Vec<Vec<Complex64>> = Vec::new();
    for v in orth_complement(&s1)
        .vectors()
        .iter()
        .chain(orth_complement(&s2).vectors())
    {
        stacked.push(v.amplitudes().to_vec());
    }
    let rhs = gram_schmidt(dim, &stacked, TOL_RANK).projector();
    Ok(lhs.distance(&rhs))
}

/// Residual of the tensor-complement split on random subspaces of a 3×4
/// product space.
fn fact_tensor_residual(rng: &mut CounterRng) -> Result<f64, ConfigError> {
    let (n1, n2) = (3usize, 4usize);
    let s1 = random_subspace(n1, 2, rng);
    let s2 = random_subspace(n2, 2, rng);
    let full2 = SubspaceBasis::new(
        n2,
        (0..n2)
            .map(|i| fewqma_core::linalg::PureState::basis_state(vec![n2], i))
            .collect(),
    )?;
    let tensor = |a: &SubspaceBasis, b: &SubspaceBasis| -> Result<SubspaceBasis, ConfigError> {
        let mut vectors = Vec::new();
        for va in a.vectors() {
            for vb in b.vectors() {
                vectors.push(va.tensor(vb));
            }
        }
        Ok(SubspaceBasis::new(a.ambient_dim() * b.ambient_dim(), vectors)?)
    };
    let product = tensor(&s1, &s2)?;
    let lhs = ComplexMatrix::identity(n1 * n2).sub(&product.projector());
    let rhs = tensor(&orth_complement(&s1), &full2)?
        .projector()
        .add(&tensor(&s1, &orth_complement(&s2))?.projector());
    Ok(lhs.distance(&rhs))
}

fn claim_records(trial: usize, report: &ClaimReport, tol: f64) -> Vec<CheckRecord> {
    vec![
        residual_check(
            format!("trial {trial}: restricted alternating trace vs C(d,t)"),
            ANCHOR_RESTRICTED_DIM,
            report.restricted_trace_error,
            1e-6,
        ),
        residual_check(
            format!("trial {trial}: alternating-complement decomposition residual"),
            ANCHOR_DECOMP,
            report.decomposition_residual,
            tol,
        ),
        flag_check(
            format!("trial {trial}: antisymmetrizer restricted to the witness power has rank 1"),
            ANCHOR_UNIQUE,
            report.restricted_rank == 1,
        ),
        residual_check(
            format!("trial {trial}: restricted antisymmetrizer trace vs 1"),
            ANCHOR_UNIQUE,
            report.slater_trace_error,
            1e-6,
        ),
        residual_check(
            format!("trial {trial}: slater state basis independence"),
            ANCHOR_UNIQUE,
            report.basis_independence_error,
            1e-9,
        ),
        residual_check(
            format!("trial {trial}: slater state lies in the alternating subspace"),
            ANCHOR_UNIQUE,
            report.slater_membership_residual,
            1e-9,
        ),
        residual_check(
            format!("trial {trial}: antisymmetrizer commutes with the witness-power projector"),
            ANCHOR_COMMUTE,
            report.commutator_residual,
            tol,
        ),
        residual_check(
            format!("trial {trial}: alternating projection of orthogonal states stays orthogonal"),
            ANCHOR_ORTHO,
            report.orthogonal_projection_residual,
            tol,
        ),
    ]
}

/// Claim suite: dimension traces, the standard subspace identities, and the
/// witness-subspace claims on seeded random subspaces.
pub fn cmd_claims(cfg: &ClaimsConfig) -> Result<RunReport, ConfigError> {
    cfg.validate()?;
    let start = Instant::now();
    let mut checks = Vec::new();

    let ctx = AltSymContext::new(cfg.copies, cfg.local_dim)?;
    checks.push(residual_check(
        "alternating projector trace vs C(K,t)",
        ANCHOR_ALT_DIM,
        ctx.alt_trace_error(),
        1e-6,
    ));
    checks.push(residual_check(
        "symmetric projector trace vs C(K+t-1,t)",
        ANCHOR_SYM_DIM,
        ctx.sym_trace_error(),
        1e-6,
    ));
    checks.push(residual_check(
        "alternating projector idempotence",
        ANCHOR_PLUMBING,
        ctx.antisymmetrizer.projector_residual(),
        TOL_STRUCTURAL,
    ));
    if cfg.copies == 2 {
        let total = ctx.antisymmetrizer.add(&ctx.symmetrizer);
        checks.push(residual_check(
            "two-register alternating/symmetric split sums to the identity",
            ANCHOR_SPLIT,
            total.distance(&ComplexMatrix::identity(total.rows())),
            1e-12,
        ));
    }
    if cfg.corrupt {
        let mut corrupted = ctx.antisymmetrizer.clone();
        let bumped = corrupted.get(0, 0) + Complex64::new(1e-3, 0.0);
        corrupted.set(0, 0, bumped);
        checks.push(residual_check(
            "corrupted projector fixture (negative control)",
            ANCHOR_PLUMBING,
            corrupted.projector_residual(),
            TOL_STRUCTURAL,
        ));
    }

    for trial in 0..cfg.trials {
        let mut rng = CounterRng::derive(subseed(cfg.seed, trial as u64), 0xFAC7);
        checks.push(residual_check(
            format!("trial {trial}: complement of intersection equals sum of complements"),
            ANCHOR_FACT_INTERSECT,
            fact_intersection_residual(&mut rng)?,
            cfg.tolerance,
        ));
        checks.push(residual_check(
            format!("trial {trial}: tensor complement splits orthogonally"),
            ANCHOR_FACT_TENSOR,
            fact_tensor_residual(&mut rng)?,
            cfg.tolerance,
        ));
    }

    if cfg.claims_runnable() {
        for trial in 0..cfg.trials {
            let report = verify_claims(
                cfg.witness_dim,
                cfg.copies,
                cfg.local_dim,
                subseed(cfg.seed, trial as u64),
            )?;
            checks.extend(claim_records(trial, &report, cfg.tolerance));
        }
    }

    Ok(RunReport::new(
        "claims",
        serde_json::to_value(cfg)?,
        checks,
        Vec::new(),
        None,
        elapsed_ms(start),
    ))
}

/// Reduce command configuration.
#[derive(Debug, Clone, serde::Serialize)]
pub struct ReduceConfig {
    /// Instance parameters.
    #[serde(flatten)]
    pub instance: InstanceConfig,
    /// Number of planted instances.
    pub trials: usize,
    /// Residual tolerance for derived checks.
    pub tolerance: f64,
}

/// Generate planted instances, run the oracle reduction, and record the
/// per-copies oracle trace.
pub fn cmd_reduce(cfg: &ReduceConfig) -> Result<RunReport, ConfigError> {
    cfg.instance.validate()?;
    if cfg.trials == 0 {
        return Err(ConfigError("trials must be positive".into()));
    }
    let start = Instant::now();
    let mut checks = Vec::new();
    let mut trace = Vec::new();
    let kind_label = match cfg.instance.kind {
        Kind::Yes => "yes",
        Kind::No => "no",
    };

    for trial in 0..cfg.trials {
        let seed = subseed(cfg.instance.seed, trial as u64);
        let inst = plant(&cfg.instance, seed)?;
        let q = cfg.instance.witness_bound;
        let outcome = algorithm_a(&inst, q)?;

        // The reduction halts at its first yes; complete the sweep so the
        // trace shows every copies count.
        let mut calls = outcome.trace.clone();
        for copies in (calls.len() + 1)..=q {
            let g = combined_operator(&inst.spec, copies)?;
            calls.push(uqma_oracle(&g, ACCEPT_THRESHOLD, REJECT_THRESHOLD)?);
        }

        for call in &calls {
            let verdict = match call.verdict {
                OracleVerdict::Yes => "yes",
                OracleVerdict::No => "no",
                OracleVerdict::PromiseViolation => "violation",
            };
            let observational =
                cfg.instance.kind == Kind::Yes && call.copies != cfg.instance.witness_dim;
            trace.push(TraceRecord {
                trial,
                kind: kind_label,
                copies: call.copies,
                lambda1: call.lambda1,
                lambda2: call.lambda2,
                verdict,
                observational,
            });
        }

        match cfg.instance.kind {
            Kind::Yes => {
                checks.push(flag_check(
                    format!("trial {trial}: reduction accepts the planted yes instance"),
                    ANCHOR_REDUCTION,
                    outcome.accepted,
                ));
                let d = cfg.instance.witness_dim;
                let at_d = &calls[d - 1];
                checks.push(bound_check(
                    format!("trial {trial}: top eigenvalue at the planted dimension"),
                    ANCHOR_COMBINED_TOP,
                    at_d.lambda1,
                    ACCEPT_THRESHOLD,
                ));
                checks.push(residual_check(
                    format!("trial {trial}: second eigenvalue at the planted dimension"),
                    ANCHOR_COMBINED_SECOND,
                    at_d.lambda2,
                    REJECT_THRESHOLD,
                ));
                checks.push(flag_check(
                    format!("trial {trial}: oracle answers yes at the planted dimension"),
                    ANCHOR_ORACLE,
                    at_d.verdict == OracleVerdict::Yes,
                ));
                let g = combined_operator(&inst.spec, d)?;
                let eig = eigh(&g.operator)?;
                let witness = slater(&inst.planted_basis)?
                    .with_layout(vec![g.operator.rows()])?;
                let overlap = eig.eigenvectors.vectors()[0].overlap_sq(&witness);
                checks.push(bound_check(
                    format!("trial {trial}: top eigenvector overlap with the witness state"),
                    ANCHOR_WITNESS_OVERLAP,
                    overlap,
                    0.999,
                ));
            }
            Kind::No => {
                checks.push(flag_check(
                    format!("trial {trial}: reduction rejects the planted no instance"),
                    ANCHOR_REDUCTION,
                    !outcome.accepted,
                ));
                checks.push(flag_check(
                    format!("trial {trial}: every oracle call answers no"),
                    ANCHOR_ORACLE,
                    calls.iter().all(|c| c.verdict == OracleVerdict::No),
                ));
            }
        }
    }

    Ok(RunReport::new(
        "reduce",
        serde_json::to_value(cfg)?,
        checks,
        trace,
        None,
        elapsed_ms(start),
    ))
}

/// Spectrum command configuration.
#[derive(Debug, Clone, serde::Serialize)]
pub struct SpectrumConfig {
    /// Verifier file to load; planted instance parameters are used when
    /// absent.
    pub source: Option<PathBuf>,
    /// Instance parameters (ignored when `source` is given).
    #[serde(flatten)]
    pub instance: InstanceConfig,
    /// Copies count for the combined-operator spectrum.
    pub copies: Option<usize>,
    /// Residual tolerance for derived checks.
    pub tolerance: f64,
}

/// Print the spectra of the composite operator, its witness compression, and
/// optionally the combined operator.
pub fn cmd_spectrum(cfg: &SpectrumConfig) -> Result<RunReport, ConfigError> {
    let start = Instant::now();
    let (spec, planted): (VerifierSpec, Option<PlantedInstance>) = match &cfg.source {
        Some(path) => (verifier_file::load(path)?, None),
        None => {
            cfg.instance.validate()?;
            let inst = plant(&cfg.instance, cfg.instance.seed)?;
            (inst.spec.clone(), Some(inst))
        }
    };
    let mut checks = Vec::new();

    checks.push(residual_check(
        "circuit unitarity",
        ANCHOR_PLUMBING,
        spec.circuit().unitarity_residual(),
        TOL_STRUCTURAL,
    ));

    let composite = eigh(&pi_x(&spec))?;
    let compressed = eigh(&acceptance_operator(&spec))?;

    let min_eig = composite.eigenvalues.last().copied().unwrap_or(0.0);
    checks.push(residual_check(
        "composite operator is positive semi-definite",
        ANCHOR_COMPOSITE_PSD,
        (-min_eig).max(0.0),
        TOL_STRUCTURAL,
    ));
    let nonzero = composite
        .eigenvalues
        .iter()
        .filter(|&&l| l > TOL_RANK)
        .count();
    checks.push(flag_check(
        "composite operator rank is at most the witness dimension",
        ANCHOR_COMPRESSION,
        nonzero <= spec.witness_dim(),
    ));
    let mut multiset_gap = 0.0f64;
    for (i, &l) in compressed.eigenvalues.iter().enumerate() {
        multiset_gap = multiset_gap.max((composite.eigenvalues[i] - l).abs());
    }
    for &l in &composite.eigenvalues[compressed.eigenvalues.len()..] {
        multiset_gap = multiset_gap.max(l.abs());
    }
    checks.push(residual_check(
        "composite and compressed spectra agree on the nonzero part",
        ANCHOR_COMPRESSION,
        multiset_gap,
        cfg.tolerance,
    ));

    if let Some(inst) = &planted {
        let mut profile_gap = 0.0f64;
        for (got, want) in compressed
            .eigenvalues
            .iter()
            .zip(&inst.profile.eigenvalues)
        {
            profile_gap = profile_gap.max((got - want).abs());
        }
        checks.push(residual_check(
            "planted profile recovered from the compressed spectrum",
            ANCHOR_PLUMBING,
            profile_gap,
            cfg.tolerance,
        ));
    }

    let mut combined_copies = None;
    let mut combined = None;
    if let Some(copies) = cfg.copies {
        let g = combined_operator(&spec, copies)?;
        let eig = eigh(&g.operator)?;
        combined_copies = Some(copies);
        combined = Some(eig.eigenvalues);
    }

    let spectra = SpectraSection {
        composite: composite.eigenvalues,
        witness_compressed: compressed.eigenvalues,
        combined_copies,
        combined,
    };

    Ok(RunReport::new(
        "spectrum",
        serde_json::to_value(cfg)?,
        checks,
        Vec::new(),
        Some(spectra),
        elapsed_ms(start),
    ))
}

const HORN_DIMS: [usize; 8] = [4, 8, 12, 16, 24, 32, 48, 64];
const SHAPED_TRIALS: usize = 10;
const TRACE_BOUND_TRIALS: usize = 3;

/// Majorization of random Hermitian spectra over their diagonals, plus the
/// witness eigenvalue bounds on shaped planted verifiers.
pub fn cmd_horn(cfg: &HornConfig) -> Result<RunReport, ConfigError> {
    cfg.validate()?;
    let start = Instant::now();
    let mut checks = Vec::new();

    for trial in 0..cfg.trials {
        let dim = HORN_DIMS[trial % HORN_DIMS.len()];
        let mut rng = CounterRng::derive(subseed(cfg.seed, trial as u64), 0x0407);
        let g = ComplexMatrix::from_fn(dim, dim, |_, _| rng.gaussian_complex());
        let h = g.add(&g.dagger()).scale(Complex64::new(0.5, 0.0));
        let eig = eigh(&h)?;
        let mut diag: Vec<f64> = (0..dim).map(|i| h.get(i, i).re).collect();
        diag.sort_by(|a, b| b.total_cmp(a));
        let input = MajorizationInput::new(eig.eigenvalues, diag)?;
        let result = check_majorization(&input, cfg.tolerance);
        let min_slack = result
            .partial_slacks
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min);
        let total = result.partial_slacks.last().copied().unwrap_or(0.0);
        checks.push(CheckRecord {
            name: format!("trial {trial}: eigenvalues majorize the diagonal (dim {dim})"),
            anchor: ANCHOR_HORN,
            value: min_slack.min(-total.abs()),
            tolerance: -cfg.tolerance,
            pass: result.ok,
        });
    }

    // Shaped planted verifiers: the rotated-basis diagonal certifies bounds
    // on the true eigenvalues.
    let (k, q) = (2usize, 3usize);
    let space = 1usize << k;
    for trial in 0..SHAPED_TRIALS {
        let d = 1 + trial % 3;
        let mut rng = CounterRng::derive(subseed(cfg.seed, 1000 + trial as u64), 0x0408);
        let high = 1.0 - 1.0 / (3.0 * q as f64);
        let low = 1.0 / (3.0 * space as f64);
        let accepted = vec![high; d];
        let background: Vec<f64> = (0..space - d).map(|_| rng.uniform_in(low)).collect();
        let basis = random_subspace(space, d, &mut rng);
        let seed = rng.next_u64();
        let spec = plant_verifier(k, 1, &basis, &accepted, &background, seed)?;
        let e = acceptance_operator(&spec);
        let eig = eigh(&e)?;

        let top = SubspaceBasis::new(space, eig.eigenvectors.vectors()[..d].to_vec())?;
        let bottom = SubspaceBasis::new(space, eig.eigenvectors.vectors()[d..].to_vec())?;
        let rotated_top = rotate_basis(&top, &random_unitary(d, &mut rng))?;
        let rotated_bottom = rotate_basis(&bottom, &random_unitary(space - d, &mut rng))?;
        let mut head: Vec<f64> = rotated_top
            .vectors()
            .iter()
            .map(|v| e.quadratic_form(v.amplitudes()))
            .collect();
        let mut tail: Vec<f64> = rotated_bottom
            .vectors()
            .iter()
            .map(|v| e.quadratic_form(v.amplitudes()))
            .collect();
        head.sort_by(|a, b| b.total_cmp(a));
        tail.sort_by(|a, b| b.total_cmp(a));
        let diagonal: Vec<f64> = head.into_iter().chain(tail).collect();

        let bounds = vfqma_bounds(&diagonal, d, q, k)?;
        checks.push(flag_check(
            format!("shaped trial {trial}: diagonal bounds certified (d={d})"),
            ANCHOR_VFQMA,
            bounds.certified,
        ));
        checks.push(bound_check(
            format!("shaped trial {trial}: witness eigenvalue meets the acceptance bound"),
            ANCHOR_VFQMA,
            eig.eigenvalues[d - 1],
            2.0 / 3.0 - cfg.tolerance,
        ));
        checks.push(residual_check(
            format!("shaped trial {trial}: next eigenvalue under the rejection bound"),
            ANCHOR_VFQMA,
            eig.eigenvalues.get(d).copied().unwrap_or(0.0),
            1.0 / 3.0 + cfg.tolerance,
        ));
    }

    // No-direction trace bound: every diagonal entry at most 1/(3N) caps the
    // top eigenvalue at 1/3.
    for trial in 0..TRACE_BOUND_TRIALS {
        let mut rng = CounterRng::derive(subseed(cfg.seed, 2000 + trial as u64), 0x0409);
        let low = 1.0 / (3.0 * space as f64);
        let eigenvalues: Vec<f64> = (0..space).map(|_| rng.uniform_in(low)).collect();
        let seed = rng.next_u64();
        let spec = plant_verifier(
            k,
            1,
            &SubspaceBasis::empty(space),
            &[],
            &eigenvalues,
            seed,
        )?;
        let eig = eigh(&acceptance_operator(&spec))?;
        checks.push(residual_check(
            format!("trace-bound trial {trial}: top eigenvalue under the rejection bound"),
            ANCHOR_VFQMA,
            eig.eigenvalues[0],
            1.0 / 3.0 + cfg.tolerance,
        ));
    }

    Ok(RunReport::new(
        "horn",
        serde_json::to_value(cfg)?,
        checks,
        Vec::new(),
        None,
        elapsed_ms(start),
    ))
}

/// Generate a planted verifier and write it in the verifier file format.
pub fn cmd_gen(cfg: &InstanceConfig, out: &Path) -> Result<RunReport, ConfigError> {
    cfg.validate()?;
    let start = Instant::now();
    let inst = plant(cfg, cfg.seed)?;
    verifier_file::save(out, &inst.spec)?;

    let mut checks = Vec::new();
    checks.push(residual_check(
        "generated circuit unitarity",
        ANCHOR_PLUMBING,
        inst.spec.circuit().unitarity_residual(),
        TOL_STRUCTURAL,
    ));
    let reloaded = verifier_file::load(out)?;
    checks.push(flag_check(
        "file round-trip restores the circuit exactly",
        ANCHOR_PLUMBING,
        reloaded.circuit().entries() == inst.spec.circuit().entries(),
    ));

    Ok(RunReport::new(
        "gen",
        serde_json::to_value(cfg)?,
        checks,
        Vec::new(),
        None,
        elapsed_ms(start),
    ))
}
