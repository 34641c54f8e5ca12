//! The verification-procedure model: acceptance and initialization
//! projectors, the composite acceptance operator and its compression to the
//! witness space, planting verifiers with a prescribed acceptance spectrum,
//! promise classification, and spectrally modeled error amplification.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
// Inherent f64 methods shadow the trait once std is in the crate graph.
#[allow(unused_imports)]
use num_traits::Float;

use crate::comb::binomial;
use crate::error::{Error, Result};
use crate::linalg::{
    complete_unitary, eigh, random_state_in, random_state_orthogonal_to, reconstruct,
    ComplexMatrix, Eigendecomposition, PureState, SubspaceBasis, ONE, ZERO,
};
use crate::rng::CounterRng;
use crate::subspace::random_subspace;
use crate::{AMBIENT_CAP, TOL_DERIVED, TOL_STRUCTURAL};

/// A verification procedure: a unitary on `k` witness qubits followed by `m`
/// auxiliary qubits, accepting when the first qubit measures 1.
#[derive(Debug, Clone)]
pub struct VerifierSpec {
    witness_qubits: usize,
    aux_qubits: usize,
    circuit: ComplexMatrix,
}

impl VerifierSpec {
    /// Wrap a circuit unitary acting on `witness_qubits + aux_qubits` qubits.
    pub fn new(witness_qubits: usize, aux_qubits: usize, circuit: ComplexMatrix) -> Result<Self> {
        if witness_qubits == 0 {
            return Err(Error::InvalidArgument {
                context: "verifier needs at least one witness qubit",
            });
        }
        let total = checked_qubit_dim(witness_qubits + aux_qubits)?;
        if circuit.rows() != total || circuit.cols() != total {
            return Err(Error::DimensionMismatch {
                context: "verifier circuit",
                expected: total,
                actual: circuit.rows(),
            });
        }
        let residual = circuit.unitarity_residual();
        if residual > TOL_STRUCTURAL {
            return Err(Error::NotUnitary { residual });
        }
        Ok(VerifierSpec {
            witness_qubits,
            aux_qubits,
            circuit,
        })
    }

    /// Number of witness qubits `k`.
    pub fn witness_qubits(&self) -> usize {
        self.witness_qubits
    }

    /// Number of auxiliary qubits `m`.
    pub fn aux_qubits(&self) -> usize {
        self.aux_qubits
    }

    /// The circuit unitary.
    pub fn circuit(&self) -> &ComplexMatrix {
        &self.circuit
    }

    /// Witness-space dimension `2^k`.
    pub fn witness_dim(&self) -> usize {
        1 << self.witness_qubits
    }

    /// Total dimension `2^{k+m}`.
    pub fn total_dim(&self) -> usize {
        1 << (self.witness_qubits + self.aux_qubits)
    }
}

fn checked_qubit_dim(qubits: usize) -> Result<usize> {
    let dim = 1usize
        .checked_shl(qubits as u32)
        .ok_or(Error::DimensionOverflow {
            required: usize::MAX,
            cap: AMBIENT_CAP,
        })?;
    if dim > AMBIENT_CAP {
        return Err(Error::DimensionOverflow {
            required: dim,
            cap: AMBIENT_CAP,
        });
    }
    Ok(dim)
}

/// Projector selecting "first qubit = 1" on a `total_dim`-dimensional space.
pub fn acceptance_projector(total_dim: usize) -> ComplexMatrix {
    let half = total_dim / 2;
    ComplexMatrix::from_fn(total_dim, total_dim, |r, c| {
        if r == c && r >= half {
            ONE
        } else {
            ZERO
        }
    })
}

/// Projector selecting "auxiliary register = |0^m⟩".
pub fn init_projector(witness_qubits: usize, aux_qubits: usize) -> ComplexMatrix {
    let total = 1usize << (witness_qubits + aux_qubits);
    let aux = 1usize << aux_qubits;
    ComplexMatrix::from_fn(total, total, |r, c| {
        if r == c && r % aux == 0 {
            ONE
        } else {
            ZERO
        }
    })
}

/// The composite acceptance operator on the full `2^{k+m}` space:
/// initialization projector, circuit, acceptance measurement, and back.
pub fn pi_x(v: &VerifierSpec) -> ComplexMatrix {
    let init = init_projector(v.witness_qubits, v.aux_qubits);
    let acc = acceptance_projector(v.total_dim());
    let step = acc.mul(&v.circuit).mul(&init);
    step.dagger().mul(&step)
}

/// Compression of the acceptance operator to the witness space: the `2^k`
/// Hermitian matrix `E` with `⟨ψ|E|ψ⟩ = ‖Π_acc·V(|ψ⟩⊗|0^m⟩)‖²`.
pub fn acceptance_operator(v: &VerifierSpec) -> ComplexMatrix {
    let acc = acceptance_projector(v.total_dim());
    let av = acc.mul(&v.circuit);
    let aux = 1usize << v.aux_qubits;
    let n = v.witness_dim();
    let total = v.total_dim();
    ComplexMatrix::from_fn(n, n, |i, j| {
        let mut sum = ZERO;
        for r in 0..total {
            sum += av.get(r, i * aux).conj() * av.get(r, j * aux);
        }
        sum
    })
}

/// Acceptance probability of a witness state: `‖Π_acc·V(|ψ⟩⊗|0^m⟩)‖²`,
/// computed by direct state evolution.
pub fn accept_probability(v: &VerifierSpec, witness: &PureState) -> Result<f64> {
    if witness.dim() != v.witness_dim() {
        return Err(Error::DimensionMismatch {
            context: "witness state dimension",
            expected: v.witness_dim(),
            actual: witness.dim(),
        });
    }
    let aux = 1usize << v.aux_qubits;
    let mut full = vec![ZERO; v.total_dim()];
    for (w, &amp) in witness.amplitudes().iter().enumerate() {
        full[w * aux] = amp;
    }
    let evolved = v.circuit.matvec(&full);
    let half = v.total_dim() / 2;
    Ok(evolved[half..].iter().map(|z| z.norm_sqr()).sum())
}

/// Requested or measured acceptance spectrum with its promise thresholds.
#[derive(Debug, Clone)]
pub struct SpectralProfile {
    /// Eigenvalues sorted descending, length `2^k`.
    pub eigenvalues: Vec<f64>,
    /// Completeness threshold `c`.
    pub completeness: f64,
    /// Orthogonal-witness threshold `w`.
    pub orthogonal: f64,
    /// Soundness threshold `s`.
    pub soundness: f64,
    /// Witness-count bound `q`.
    pub witness_bound: usize,
}

impl SpectralProfile {
    /// Profile from eigenvalues (sorted internally) and thresholds; requires
    /// `c > max(w, s)` and eigenvalues within `[−1e−9, 1+1e−9]`.
    pub fn new(
        mut eigenvalues: Vec<f64>,
        completeness: f64,
        orthogonal: f64,
        soundness: f64,
        witness_bound: usize,
    ) -> Result<Self> {
        if completeness <= orthogonal.max(soundness) {
            return Err(Error::InvalidArgument {
                context: "completeness threshold must exceed both error thresholds",
            });
        }
        if witness_bound == 0 {
            return Err(Error::InvalidArgument {
                context: "witness bound must be positive",
            });
        }
        for &l in &eigenvalues {
            if !(-TOL_STRUCTURAL..=1.0 + TOL_STRUCTURAL).contains(&l) {
                return Err(Error::InvalidArgument {
                    context: "profile eigenvalues must lie in [0, 1]",
                });
            }
        }
        eigenvalues.sort_by(|a, b| b.total_cmp(a));
        Ok(SpectralProfile {
            eigenvalues,
            completeness,
            orthogonal,
            soundness,
            witness_bound,
        })
    }
}

/// Exact acceptance map of `n`-fold repetition with an accept threshold:
/// `λ ↦ P[Bin(n, λ) ≥ threshold]`.
///
/// Maps 0 to 0 and 1 to 1 (for `1 ≤ threshold ≤ n`) and is strictly
/// increasing on `(0, 1)`.
pub fn binomial_tail(lambda: f64, n: usize, threshold: usize) -> f64 {
    let mut acc = 0.0f64;
    for j in threshold..=n {
        let coeff = binomial(n, j) as f64;
        acc += coeff * lambda.powi(j as i32) * (1.0 - lambda).powi((n - j) as i32);
    }
    acc.clamp(0.0, 1.0)
}

fn validate_repetition(n: usize, threshold: usize) -> Result<()> {
    if n == 0 || threshold > n {
        return Err(Error::InvalidArgument {
            context: "repetition count must be positive and threshold ≤ n",
        });
    }
    Ok(())
}

/// Majority threshold `(n+1)/2` for odd `n`.
pub fn majority_threshold(n: usize) -> Result<usize> {
    if n % 2 == 0 {
        return Err(Error::InvalidArgument {
            context: "majority amplification needs an odd repetition count",
        });
    }
    Ok((n + 1) / 2)
}

/// Amplify a profile: eigenvalues and thresholds mapped through the exact
/// binomial tail; eigenvector-free, order-preserving.
pub fn amplify_profile(p: &SpectralProfile, n: usize, threshold: usize) -> Result<SpectralProfile> {
    validate_repetition(n, threshold)?;
    let eigenvalues = p
        .eigenvalues
        .iter()
        .map(|&l| binomial_tail(l.clamp(0.0, 1.0), n, threshold))
        .collect();
    SpectralProfile::new(
        eigenvalues,
        binomial_tail(p.completeness, n, threshold),
        binomial_tail(p.orthogonal, n, threshold),
        binomial_tail(p.soundness, n, threshold),
        p.witness_bound,
    )
}

/// Amplify a Hermitian acceptance operator: eigenvalues mapped through the
/// binomial tail, eigenvectors unchanged.
pub fn amplify_operator(e: &ComplexMatrix, n: usize, threshold: usize) -> Result<ComplexMatrix> {
    validate_repetition(n, threshold)?;
    let eig = eigh(e)?;
    let mapped = Eigendecomposition {
        eigenvalues: eig
            .eigenvalues
            .iter()
            .map(|&l| binomial_tail(l.clamp(0.0, 1.0), n, threshold))
            .collect(),
        eigenvectors: eig.eigenvectors,
    };
    Ok(reconstruct(&mapped))
}

/// Build a verifier whose witness-space acceptance operator has the given
/// basis as eigenvectors with the requested eigenvalues.
///
/// Each eigendirection `|v_i⟩⊗|0^m⟩` is mapped to
/// `√λ_i |1⟩|i⟩ + √(1−λ_i) |0⟩|i⟩`, with `|i⟩` a distinct computational
/// basis state of the trailing `k+m−1` qubits, so the images are orthonormal
/// by construction whenever `m ≥ 1`. The rest of the circuit is an arbitrary
/// deterministic completion.
pub fn plant_verifier(
    witness_qubits: usize,
    aux_qubits: usize,
    basis: &SubspaceBasis,
    accepted_eigs: &[f64],
    background_eigs: &[f64],
    seed: u64,
) -> Result<VerifierSpec> {
    if aux_qubits == 0 {
        return Err(Error::InvalidArgument {
            context: "planting needs at least one auxiliary qubit",
        });
    }
    let witness_dim = checked_qubit_dim(witness_qubits)?;
    let total = checked_qubit_dim(witness_qubits + aux_qubits)?;
    if basis.ambient_dim() != witness_dim {
        return Err(Error::DimensionMismatch {
            context: "planted basis ambient space",
            expected: witness_dim,
            actual: basis.ambient_dim(),
        });
    }
    if accepted_eigs.len() != basis.dim() {
        return Err(Error::DimensionMismatch {
            context: "accepted eigenvalue count",
            expected: basis.dim(),
            actual: accepted_eigs.len(),
        });
    }
    if background_eigs.len() != witness_dim - basis.dim() {
        return Err(Error::DimensionMismatch {
            context: "background eigenvalue count",
            expected: witness_dim - basis.dim(),
            actual: background_eigs.len(),
        });
    }
    for &l in accepted_eigs.iter().chain(background_eigs) {
        if !(0.0..=1.0).contains(&l) {
            return Err(Error::InvalidArgument {
                context: "planted eigenvalues must lie in [0, 1]",
            });
        }
    }

    // Extend the planted directions to a full eigenbasis of the witness
    // space with a seeded random completion.
    let mut rng = CounterRng::derive(seed, 0x7A91);
    let mut directions: Vec<PureState> = basis.vectors().to_vec();
    while directions.len() < witness_dim {
        let raw = rng.gaussian_vector(witness_dim);
        let mut w = raw;
        for _pass in 0..2 {
            for b in &directions {
                let c: Complex64 = b
                    .amplitudes()
                    .iter()
                    .zip(&w)
                    .map(|(x, y)| x.conj() * y)
                    .sum();
                for (wi, bi) in w.iter_mut().zip(b.amplitudes()) {
                    *wi -= c * bi;
                }
            }
        }
        let norm = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-6 {
            continue;
        }
        directions.push(PureState::normalized(w, vec![witness_dim])?);
    }

    let lambdas: Vec<f64> = accepted_eigs
        .iter()
        .chain(background_eigs)
        .copied()
        .collect();

    let aux = 1usize << aux_qubits;
    let half = total / 2;
    let mut inputs = Vec::with_capacity(witness_dim);
    let mut outputs = Vec::with_capacity(witness_dim);
    for (i, (dir, &lambda)) in directions.iter().zip(&lambdas).enumerate() {
        let mut input = vec![ZERO; total];
        for (w, &amp) in dir.amplitudes().iter().enumerate() {
            input[w * aux] = amp;
        }
        inputs.push(PureState::new(input, vec![total])?);

        let mut output = vec![ZERO; total];
        output[half + i] = Complex64::new(lambda.sqrt(), 0.0);
        output[i] = Complex64::new((1.0 - lambda).sqrt(), 0.0);
        outputs.push(PureState::new(output, vec![total])?);
    }
    // Orthonormality of the image set is structural; SubspaceBasis::new
    // asserts it anyway.
    let input_basis = SubspaceBasis::new(total, inputs)?;
    let output_basis = SubspaceBasis::new(total, outputs)?;
    let positions: Vec<usize> = (0..witness_dim).collect();
    let p = complete_unitary(&input_basis, &positions, total)?;
    let q = complete_unitary(&output_basis, &positions, total)?;
    let circuit = q.mul(&p.dagger());
    VerifierSpec::new(witness_qubits, aux_qubits, circuit)
}

/// Promise-problem verdict for one verifier instance.
#[derive(Debug, Clone, PartialEq)]
pub enum Verdict {
    /// The acceptance spectrum matches a yes instance with the given number
    /// of high eigenvalues.
    Yes {
        /// Count of eigenvalues at or above the completeness threshold.
        witness_dim: usize,
    },
    /// All eigenvalues at or below the soundness threshold.
    No,
    /// The spectrum is outside the promise; never decided, only surfaced.
    Violation {
        /// What went wrong.
        reason: String,
        /// The eigenvalues that offend.
        offending: Vec<f64>,
    },
}

/// Verdict plus the subspace-semantics cross-check data for yes verdicts.
#[derive(Debug, Clone)]
pub struct Classification {
    /// Spectral verdict.
    pub verdict: Verdict,
    /// Present on yes verdicts: evidence that the two witness-subspace
    /// readings coincide.
    pub subspace_check: Option<SubspaceCrossCheck>,
}

/// Evidence that the threshold-`c` and threshold-`w` eigenspaces agree and
/// that sampled states obey the subspace acceptance bounds.
#[derive(Debug, Clone)]
pub struct SubspaceCrossCheck {
    /// `‖Π_{W_c} − Π_{W_w}‖_F`.
    pub projector_distance: f64,
    /// Minimum sampled acceptance probability inside the witness subspace.
    pub min_inside: f64,
    /// Maximum sampled acceptance probability orthogonal to it.
    pub max_orthogonal: f64,
    /// Samples drawn on each side.
    pub samples: usize,
}

const CROSS_CHECK_SAMPLES: usize = 8;
const CROSS_CHECK_STREAM: u64 = 0xC1A5;

/// Slack admitted when comparing computed eigenvalues against the promise
/// thresholds: planted spectra sit exactly at the thresholds, so the
/// comparisons must absorb eigensolver rounding.
pub const CLASSIFY_SLACK: f64 = 1e-9;

/// Classify a verifier against profile thresholds using the spectrum of its
/// witness-space acceptance operator, cross-checking yes verdicts against
/// the subspace semantics by sampling.
pub fn classify(v: &VerifierSpec, profile: &SpectralProfile) -> Result<Classification> {
    let e = acceptance_operator(v);
    let eig = eigh(&e)?;
    let c = profile.completeness;
    let w = profile.orthogonal;
    let s = profile.soundness;
    let q = profile.witness_bound;

    let accepted: Vec<usize> = (0..eig.eigenvalues.len())
        .filter(|&i| eig.eigenvalues[i] >= c - CLASSIFY_SLACK)
        .collect();
    let in_gap: Vec<f64> = eig
        .eigenvalues
        .iter()
        .copied()
        .filter(|&l| l > w + CLASSIFY_SLACK && l < c - CLASSIFY_SLACK)
        .collect();

    if !accepted.is_empty() {
        if accepted.len() > q {
            return Ok(Classification {
                verdict: Verdict::Violation {
                    reason: String::from("more high eigenvalues than the witness bound"),
                    offending: accepted.iter().map(|&i| eig.eigenvalues[i]).collect(),
                },
                subspace_check: None,
            });
        }
        if !in_gap.is_empty() {
            return Ok(Classification {
                verdict: Verdict::Violation {
                    reason: String::from("eigenvalue strictly inside the promise gap"),
                    offending: in_gap,
                },
                subspace_check: None,
            });
        }
        // W_c (λ ≥ c) and W_w (λ > w) must span the same subspace.
        let n = eig.eigenvectors.ambient_dim();
        let above_c: Vec<PureState> = accepted
            .iter()
            .map(|&i| eig.eigenvectors.vectors()[i].clone())
            .collect();
        let above_w: Vec<PureState> = (0..eig.eigenvalues.len())
            .filter(|&i| eig.eigenvalues[i] > w + CLASSIFY_SLACK)
            .map(|i| eig.eigenvectors.vectors()[i].clone())
            .collect();
        let w_c = SubspaceBasis::from_orthonormal_unchecked(n, above_c);
        let w_w = SubspaceBasis::from_orthonormal_unchecked(n, above_w);
        let projector_distance = w_c.projector().distance(&w_w.projector());
        if projector_distance > TOL_DERIVED {
            return Ok(Classification {
                verdict: Verdict::Violation {
                    reason: String::from("threshold subspaces differ"),
                    offending: eig.eigenvalues.clone(),
                },
                subspace_check: None,
            });
        }
        let mut rng = CounterRng::derive(CROSS_CHECK_STREAM, eig.eigenvalues.len() as u64);
        let mut min_inside = f64::INFINITY;
        let mut max_orthogonal: f64 = 0.0;
        for _ in 0..CROSS_CHECK_SAMPLES {
            let inside = random_state_in(&w_c, &mut rng)?;
            min_inside = min_inside.min(e.quadratic_form(inside.amplitudes()));
            if w_c.dim() < n {
                let outside = random_state_orthogonal_to(&w_c, &mut rng)?;
                max_orthogonal = max_orthogonal.max(e.quadratic_form(outside.amplitudes()));
            }
        }
        if min_inside < c - TOL_DERIVED || max_orthogonal > w + TOL_DERIVED {
            return Ok(Classification {
                verdict: Verdict::Violation {
                    reason: String::from("sampled acceptance probabilities break the bounds"),
                    offending: vec![min_inside, max_orthogonal],
                },
                subspace_check: None,
            });
        }
        return Ok(Classification {
            verdict: Verdict::Yes {
                witness_dim: accepted.len(),
            },
            subspace_check: Some(SubspaceCrossCheck {
                projector_distance,
                min_inside,
                max_orthogonal,
                samples: CROSS_CHECK_SAMPLES,
            }),
        });
    }

    if eig.eigenvalues.iter().all(|&l| l <= s + CLASSIFY_SLACK) {
        return Ok(Classification {
            verdict: Verdict::No,
            subspace_check: None,
        });
    }
    Ok(Classification {
        verdict: Verdict::Violation {
            reason: String::from("no high eigenvalue, yet some exceed the soundness threshold"),
            offending: eig
                .eigenvalues
                .iter()
                .copied()
                .filter(|&l| l > s + CLASSIFY_SLACK)
                .collect(),
        },
        subspace_check: None,
    })
}

/// Classify by the subspace semantics directly: sampled acceptance
/// probabilities inside a candidate witness subspace, orthogonal to it, and
/// over the whole space.
pub fn classify_sampled(
    v: &VerifierSpec,
    candidate: &SubspaceBasis,
    profile: &SpectralProfile,
    seed: u64,
) -> Result<Verdict> {
    let e = acceptance_operator(v);
    let mut rng = CounterRng::derive(seed, 0x5A3D);
    let c = profile.completeness;
    let w = profile.orthogonal;
    let s = profile.soundness;

    if candidate.dim() == 0 {
        let mut max_any: f64 = 0.0;
        for _ in 0..CROSS_CHECK_SAMPLES {
            let state = crate::linalg::random_unit_state(vec![v.witness_dim()], &mut rng);
            max_any = max_any.max(e.quadratic_form(state.amplitudes()));
        }
        if max_any <= s + TOL_DERIVED {
            return Ok(Verdict::No);
        }
        return Ok(Verdict::Violation {
            reason: String::from("sampled state above the soundness threshold"),
            offending: vec![max_any],
        });
    }

    if candidate.dim() > profile.witness_bound {
        return Ok(Verdict::Violation {
            reason: String::from("candidate subspace larger than the witness bound"),
            offending: Vec::new(),
        });
    }
    let mut min_inside = f64::INFINITY;
    let mut max_orthogonal: f64 = 0.0;
    for _ in 0..CROSS_CHECK_SAMPLES {
        let inside = random_state_in(candidate, &mut rng)?;
        min_inside = min_inside.min(e.quadratic_form(inside.amplitudes()));
        if candidate.dim() < v.witness_dim() {
            let outside = random_state_orthogonal_to(candidate, &mut rng)?;
            max_orthogonal = max_orthogonal.max(e.quadratic_form(outside.amplitudes()));
        }
    }
    if min_inside >= c - TOL_DERIVED && max_orthogonal <= w + TOL_DERIVED {
        return Ok(Verdict::Yes {
            witness_dim: candidate.dim(),
        });
    }
    Ok(Verdict::Violation {
        reason: String::from("sampled acceptance probabilities break the subspace bounds"),
        offending: vec![min_inside, max_orthogonal],
    })
}

/// Whether an instance was planted as a yes or a no instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InstanceKind {
    /// Planted witness subspace accepted with high probability.
    Yes,
    /// Every eigenvalue at or below the soundness threshold.
    No,
}

/// A verifier with known planted structure, for end-to-end experiments.
#[derive(Debug, Clone)]
pub struct PlantedInstance {
    /// The verification circuit.
    pub spec: VerifierSpec,
    /// The planted witness subspace (empty for no instances).
    pub planted_basis: SubspaceBasis,
    /// Planted kind.
    pub kind: InstanceKind,
    /// Requested acceptance spectrum and thresholds.
    pub profile: SpectralProfile,
}

impl PlantedInstance {
    /// Planted yes instance: `d` random witness directions accepted with
    /// probability exactly `1 − 2^{−r}`, background uniform in `[0, 2^{−r}]`.
    pub fn yes(
        witness_qubits: usize,
        aux_qubits: usize,
        witness_dim: usize,
        witness_bound: usize,
        amplification_exponent: u32,
        seed: u64,
    ) -> Result<Self> {
        if witness_dim == 0 || witness_dim > witness_bound {
            return Err(Error::InvalidArgument {
                context: "planted dimension must lie in 1..=witness bound",
            });
        }
        let space = checked_qubit_dim(witness_qubits)?;
        if witness_dim > space {
            return Err(Error::InvalidArgument {
                context: "planted dimension exceeds the witness space",
            });
        }
        let eps = 0.5f64.powi(amplification_exponent as i32);
        let accepted = vec![1.0 - eps; witness_dim];
        let mut rng = CounterRng::derive(seed, 0xBA5E);
        let basis = random_subspace(space, witness_dim, &mut rng);
        let background: Vec<f64> = (0..space - witness_dim)
            .map(|_| rng.uniform_in(eps))
            .collect();
        Self::with_eigenvalues(
            witness_qubits,
            aux_qubits,
            basis,
            &accepted,
            &background,
            1.0 - eps,
            eps,
            eps,
            witness_bound,
            InstanceKind::Yes,
            seed,
        )
    }

    /// Planted no instance: every eigenvalue uniform in `[0, 2^{−r}]`.
    pub fn no(
        witness_qubits: usize,
        aux_qubits: usize,
        witness_bound: usize,
        amplification_exponent: u32,
        seed: u64,
    ) -> Result<Self> {
        let space = checked_qubit_dim(witness_qubits)?;
        let eps = 0.5f64.powi(amplification_exponent as i32);
        let mut rng = CounterRng::derive(seed, 0xBA5E);
        let background: Vec<f64> = (0..space).map(|_| rng.uniform_in(eps)).collect();
        Self::with_eigenvalues(
            witness_qubits,
            aux_qubits,
            SubspaceBasis::empty(space),
            &[],
            &background,
            1.0 - eps,
            eps,
            eps,
            witness_bound,
            InstanceKind::No,
            seed,
        )
    }

    /// Planted instance with explicit eigenvalues and thresholds.
    #[allow(clippy::too_many_arguments)]
    pub fn with_eigenvalues(
        witness_qubits: usize,
        aux_qubits: usize,
        basis: SubspaceBasis,
        accepted: &[f64],
        background: &[f64],
        completeness: f64,
        orthogonal: f64,
        soundness: f64,
        witness_bound: usize,
        kind: InstanceKind,
        seed: u64,
    ) -> Result<Self> {
        let spec = plant_verifier(witness_qubits, aux_qubits, &basis, accepted, background, seed)?;
        let eigenvalues: Vec<f64> = accepted.iter().chain(background).copied().collect();
        let profile = SpectralProfile::new(
            eigenvalues,
            completeness,
            orthogonal,
            soundness,
            witness_bound,
        )?;
        Ok(PlantedInstance {
            spec,
            planted_basis: basis,
            kind,
            profile,
        })
    }

    /// Constructive amplification: re-plant a verifier realizing the
    /// binomial-tail-amplified profile on the same witness subspace.
    pub fn amplify_constructive(&self, n: usize, threshold: usize, seed: u64) -> Result<Self> {
        validate_repetition(n, threshold)?;
        let d = self.planted_basis.dim();
        let map = |l: &f64| binomial_tail(l.clamp(0.0, 1.0), n, threshold);
        let accepted: Vec<f64> = self.profile.eigenvalues[..d].iter().map(map).collect();
        let background: Vec<f64> = self.profile.eigenvalues[d..].iter().map(map).collect();
        Self::with_eigenvalues(
            self.spec.witness_qubits(),
            self.spec.aux_qubits(),
            self.planted_basis.clone(),
            &accepted,
            &background,
            binomial_tail(self.profile.completeness, n, threshold),
            binomial_tail(self.profile.orthogonal, n, threshold),
            binomial_tail(self.profile.soundness, n, threshold),
            self.profile.witness_bound,
            self.kind,
            seed,
        )
    }
}
