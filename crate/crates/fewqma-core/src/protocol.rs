//! The reduction procedures: the alternating-subspace test (exact projector
//! form and explicit control-register circuit form), the parallel witness
//! test, their sequential combination as one Hermitian operator, the
//! unique-witness promise oracle, and the top-level reduction loop.

use alloc::vec;
use alloc::vec::Vec;

// Inherent f64 methods shadow the trait once std is in the crate graph.
#[allow(unused_imports)]
use num_traits::Float;

use crate::comb::factorial;
use crate::error::{Error, Result};
use crate::linalg::{
    apply_on_factors, eigh, kron_power, ComplexMatrix, PureState, ZERO,
};
use crate::permgroup::{apply_perm, enumerate};
use crate::subspace::antisymmetrizer;
use crate::verifier::{acceptance_operator, acceptance_projector, PlantedInstance, VerifierSpec};
use crate::AMBIENT_CAP;

/// Probability below which a post-measurement state is not reported.
const POST_STATE_FLOOR: f64 = 1e-12;

/// Maximum control-register size: `t! · dim ≤ AMBIENT_CAP · 6`.
const CONTROL_CAP: usize = AMBIENT_CAP * 6;

/// Outcome of a projective test: acceptance probability and, when the
/// probability is not negligible, the normalized post-measurement state.
#[derive(Debug, Clone)]
pub struct TestOutcome {
    /// Acceptance probability.
    pub accept_probability: f64,
    /// Normalized state of the data register on accept.
    pub post_state: Option<PureState>,
}

fn uniform_registers(state: &PureState, copies: usize) -> Result<usize> {
    if state.layout().len() != copies {
        return Err(Error::DimensionMismatch {
            context: "register count",
            expected: copies,
            actual: state.layout().len(),
        });
    }
    let local = state.layout()[0];
    if state.layout().iter().any(|&d| d != local) {
        return Err(Error::InvalidArgument {
            context: "registers must share one local dimension",
        });
    }
    Ok(local)
}

/// Alternating-subspace test evaluated as the exact projector average
/// `(1/t!)·Σ_π sgn(π)·U_π` applied to the input.
pub fn alt_test_exact(state: &PureState, copies: usize) -> Result<TestOutcome> {
    let local = uniform_registers(state, copies)?;
    let scale = 1.0 / factorial(copies) as f64;
    let mut projected = vec![ZERO; state.dim()];
    for p in enumerate(copies)? {
        let moved = apply_perm(&p, local, state.amplitudes());
        let sign = p.sign() as f64;
        for (acc, m) in projected.iter_mut().zip(&moved) {
            *acc += m * (sign * scale);
        }
    }
    let probability: f64 = projected.iter().map(|z| z.norm_sqr()).sum();
    let post_state = if probability > POST_STATE_FLOOR {
        Some(PureState::normalized(
            projected,
            state.layout().to_vec(),
        )?)
    } else {
        None
    };
    Ok(TestOutcome {
        accept_probability: probability,
        post_state,
    })
}

/// Alternating-subspace test simulated at circuit level: prepare the uniform
/// permutation superposition in a `t!`-dimensional control register, apply
/// the controlled register permutation, and measure the control against the
/// signed superposition.
pub fn alt_test_circuit(state: &PureState, copies: usize) -> Result<TestOutcome> {
    let local = uniform_registers(state, copies)?;
    let perms = enumerate(copies)?;
    let control = perms.len();
    let dim = state.dim();
    if control * dim > CONTROL_CAP {
        return Err(Error::DimensionOverflow {
            required: control * dim,
            cap: CONTROL_CAP,
        });
    }
    let amp = 1.0 / (control as f64).sqrt();

    // Composite state on [t!] ⧺ layout after the controlled permutation:
    // block π holds U_π|ψ⟩/√t!.
    let mut composite = vec![ZERO; control * dim];
    for (block, p) in perms.iter().enumerate() {
        let moved = apply_perm(p, local, state.amplitudes());
        for (offset, z) in moved.iter().enumerate() {
            composite[block * dim + offset] = z * amp;
        }
    }

    // Measurement against (signed-superposition ⊗ I): the surviving data
    // register content is the signed block average.
    let mut data = vec![ZERO; dim];
    for (block, p) in perms.iter().enumerate() {
        let weight = p.sign() as f64 * amp;
        for offset in 0..dim {
            data[offset] += composite[block * dim + offset] * weight;
        }
    }
    let probability: f64 = data.iter().map(|z| z.norm_sqr()).sum();
    let post_state = if probability > POST_STATE_FLOOR {
        Some(PureState::normalized(data, state.layout().to_vec())?)
    } else {
        None
    };
    Ok(TestOutcome {
        accept_probability: probability,
        post_state,
    })
}

/// Parallel witness test: run the verifier on each of `t` registers with
/// fresh auxiliary qubits and accept only if all accept. Returns the
/// acceptance probability, computed by direct state evolution.
pub fn wit_test(v: &VerifierSpec, state: &PureState, copies: usize) -> Result<f64> {
    let local = uniform_registers(state, copies)?;
    if local != v.witness_dim() {
        return Err(Error::DimensionMismatch {
            context: "witness register dimension",
            expected: v.witness_dim(),
            actual: local,
        });
    }
    let aux = 1usize << v.aux_qubits();
    let pair = v.total_dim();
    let full_dim = checked_pow(pair, copies)?;

    // Interleave auxiliary registers: layout (witness, aux) × t, auxiliary
    // registers initialized to |0…0⟩.
    let mut layout = Vec::with_capacity(2 * copies);
    for _ in 0..copies {
        layout.push(local);
        layout.push(aux);
    }
    let mut amplitudes = vec![ZERO; full_dim];
    for (source, &amp) in state.amplitudes().iter().enumerate() {
        // Expand base-local digits into base-(local·aux) digits with the
        // auxiliary digit zero.
        let mut digits = vec![0usize; copies];
        let mut rem = source;
        for slot in (0..copies).rev() {
            digits[slot] = rem % local;
            rem /= local;
        }
        let target = digits.iter().fold(0usize, |acc, &d| acc * pair + d * aux);
        amplitudes[target] = amp;
    }

    let filtered = acceptance_projector(pair).mul(v.circuit());
    for i in 0..copies {
        amplitudes = apply_on_factors(&amplitudes, &layout, 2 * i..2 * i + 2, &filtered)?;
    }
    Ok(amplitudes.iter().map(|z| z.norm_sqr()).sum())
}

fn checked_pow(base: usize, exp: usize) -> Result<usize> {
    let mut dim = 1usize;
    for _ in 0..exp {
        dim = dim
            .checked_mul(base)
            .filter(|&d| d <= AMBIENT_CAP)
            .ok_or(Error::DimensionOverflow {
                required: usize::MAX,
                cap: AMBIENT_CAP,
            })?;
    }
    Ok(dim)
}

/// The combined test as one Hermitian operator on `(2^k)^t`: alternating
/// projection, parallel witness test, alternating projection.
#[derive(Debug, Clone)]
pub struct CombinedOperator {
    /// Number of parallel registers.
    pub copies: usize,
    /// `A_t · E^{⊗t} · A_t`.
    pub operator: ComplexMatrix,
    /// The verifier the operator was built from.
    pub source: VerifierSpec,
}

/// Build the combined operator for `t` copies of the verifier's witness
/// space.
pub fn combined_operator(v: &VerifierSpec, copies: usize) -> Result<CombinedOperator> {
    checked_pow(v.witness_dim(), copies)?;
    let alt = antisymmetrizer(copies, v.witness_dim())?;
    let e_power = kron_power(&acceptance_operator(v), copies);
    let operator = alt.mul(&e_power).mul(&alt);
    Ok(CombinedOperator {
        copies,
        operator,
        source: v.clone(),
    })
}

/// Verdict of the unique-witness promise oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleVerdict {
    /// Top eigenvalue above the accept threshold and the rest below the
    /// reject threshold: a unique high-probability witness exists.
    Yes,
    /// Every state accepted with probability below the reject threshold.
    No,
    /// The spectrum sits outside the promise; surfaced, never decided.
    PromiseViolation,
}

/// One oracle invocation: the two leading eigenvalues and the verdict.
#[derive(Debug, Clone, Copy)]
pub struct OracleCall {
    /// Number of parallel registers the call was made with.
    pub copies: usize,
    /// Leading eigenvalue.
    pub lambda1: f64,
    /// Second eigenvalue.
    pub lambda2: f64,
    /// Promise verdict.
    pub verdict: OracleVerdict,
}

/// Decide the unique-witness promise by exact diagonalization of the
/// combined operator.
pub fn uqma_oracle(
    g: &CombinedOperator,
    accept_threshold: f64,
    reject_threshold: f64,
) -> Result<OracleCall> {
    let eig = eigh(&g.operator)?;
    let lambda1 = eig.eigenvalues[0];
    let lambda2 = eig.eigenvalues.get(1).copied().unwrap_or(0.0);
    let verdict = if lambda1 >= accept_threshold && lambda2 <= reject_threshold {
        OracleVerdict::Yes
    } else if lambda1 <= reject_threshold {
        OracleVerdict::No
    } else {
        OracleVerdict::PromiseViolation
    };
    Ok(OracleCall {
        copies: g.copies,
        lambda1,
        lambda2,
        verdict,
    })
}

/// Accept threshold of the standard promise.
pub const ACCEPT_THRESHOLD: f64 = 2.0 / 3.0;
/// Reject threshold of the standard promise.
pub const REJECT_THRESHOLD: f64 = 1.0 / 3.0;

/// Result of the reduction loop with its per-call trace.
#[derive(Debug, Clone)]
pub struct ReductionOutcome {
    /// Whether any oracle call answered yes.
    pub accepted: bool,
    /// The copy count of the first yes, if any.
    pub accept_at: Option<usize>,
    /// Oracle calls actually made, in order.
    pub trace: Vec<OracleCall>,
}

/// The reduction loop: for `t = 1..=q`, submit the combined operator to the
/// oracle; accept at the first yes, reject if none answers yes.
pub fn algorithm_a(inst: &PlantedInstance, witness_bound: usize) -> Result<ReductionOutcome> {
    if witness_bound == 0 {
        return Err(Error::InvalidArgument {
            context: "witness bound must be positive",
        });
    }
    checked_pow(inst.spec.witness_dim(), witness_bound)?;
    let mut trace = Vec::with_capacity(witness_bound);
    for copies in 1..=witness_bound {
        let g = combined_operator(&inst.spec, copies)?;
        let call = uqma_oracle(&g, ACCEPT_THRESHOLD, REJECT_THRESHOLD)?;
        let verdict = call.verdict;
        trace.push(call);
        if verdict == OracleVerdict::Yes {
            return Ok(ReductionOutcome {
                accepted: true,
                accept_at: Some(copies),
                trace,
            });
        }
    }
    Ok(ReductionOutcome {
        accepted: false,
        accept_at: None,
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{random_state_in, random_unit_state, SubspaceBasis};
    use num_complex::Complex64;
    use crate::rng::CounterRng;
    use crate::subspace::{random_subspace, slater, tensor_power_basis};
    use crate::verifier::plant_verifier;

    fn singlet() -> PureState {
        let r = core::f64::consts::FRAC_1_SQRT_2;
        PureState::new(
            vec![
                ZERO,
                Complex64::new(r, 0.0),
                Complex64::new(-r, 0.0),
                ZERO,
            ],
            vec![2, 2],
        )
        .unwrap()
    }

    #[test]
    fn alternating_input_accepted_with_certainty() {
        let s = singlet();
        for outcome in [
            alt_test_exact(&s, 2).unwrap(),
            alt_test_circuit(&s, 2).unwrap(),
        ] {
            assert!((outcome.accept_probability - 1.0).abs() <= 1e-9);
            let post = outcome.post_state.unwrap();
            assert!(post.distance_up_to_phase(&s) <= 1e-9);
        }
    }

    #[test]
    fn symmetric_inputs_rejected() {
        // |ψ⟩⊗|ψ⟩ is symmetric; the test accepts with probability 0.
        let mut rng = CounterRng::new(31);
        let psi = random_unit_state(vec![2], &mut rng);
        let product = psi.tensor(&psi);
        let exact = alt_test_exact(&product, 2).unwrap();
        assert!(exact.accept_probability <= 1e-9);
        assert!(exact.post_state.is_none());

        let basis00 = PureState::basis_state(vec![2, 2], 0);
        let circuit = alt_test_circuit(&basis00, 2).unwrap();
        assert!(circuit.accept_probability <= 1e-9);
    }

    #[test]
    fn product_of_distinct_basis_states_halves() {
        // |01⟩ has probability ½ and projects onto the singlet. Oracle: the
        // group-averaged antisymmetrizer applied as an explicit matrix.
        let state = PureState::basis_state(vec![2, 2], 1);
        let outcome = alt_test_exact(&state, 2).unwrap();
        assert!((outcome.accept_probability - 0.5).abs() <= 1e-12);
        let post = outcome.post_state.unwrap();
        assert!(post.distance_up_to_phase(&singlet()) <= 1e-9);

        let a = antisymmetrizer(2, 2).unwrap();
        let direct = a.matvec(state.amplitudes());
        let p: f64 = direct.iter().map(|z| z.norm_sqr()).sum();
        assert!((outcome.accept_probability - p).abs() <= 1e-12);
    }

    #[test]
    fn circuit_and_exact_agree_on_random_states() {
        let mut rng = CounterRng::new(6);
        for copies in [2usize, 3] {
            for k in [1usize, 2] {
                let local = 1usize << k;
                for _ in 0..30 {
                    let state = random_unit_state(vec![local; copies], &mut rng);
                    let exact = alt_test_exact(&state, copies).unwrap();
                    let circuit = alt_test_circuit(&state, copies).unwrap();
                    assert!(
                        (exact.accept_probability - circuit.accept_probability).abs() <= 1e-9
                    );
                    match (exact.post_state, circuit.post_state) {
                        (Some(a), Some(b)) => assert!(a.distance_up_to_phase(&b) <= 1e-9),
                        (None, None) => {}
                        _ => panic!("post-state presence must agree"),
                    }
                }
            }
        }
    }

    #[test]
    fn wit_test_matches_tensor_power_quadratic_form() {
        // Direct state evolution equals ⟨ψ|E^{⊗t}|ψ⟩ via the Kronecker oracle.
        let mut rng = CounterRng::new(12);
        let basis = random_subspace(4, 2, &mut rng);
        let spec = plant_verifier(2, 1, &basis, &[0.9, 0.7], &[0.2, 0.1], 15).unwrap();
        let e2 = kron_power(&acceptance_operator(&spec), 2);
        for _ in 0..20 {
            let state = random_unit_state(vec![4, 4], &mut rng);
            let direct = wit_test(&spec, &state, 2).unwrap();
            let oracle = e2.quadratic_form(state.amplitudes());
            assert!((direct - oracle).abs() <= 1e-9, "{direct} vs {oracle}");
        }
    }

    #[test]
    fn wit_test_bounds_on_planted_instances() {
        let r = 8u32;
        let eps = 0.5f64.powi(r as i32);
        let inst = PlantedInstance::yes(2, 1, 2, 3, r, 123).unwrap();
        let mut rng = CounterRng::new(77);
        for copies in [1usize, 2, 3] {
            let w_pow = tensor_power_basis(&inst.planted_basis, copies).unwrap();
            for _ in 0..10 {
                let inside = random_state_in(&w_pow, &mut rng)
                    .unwrap()
                    .with_layout(vec![4; copies])
                    .unwrap();
                let p = wit_test(&inst.spec, &inside, copies).unwrap();
                assert!(p >= 1.0 - copies as f64 * eps - 1e-8, "copies {copies}: {p}");

                let outside = crate::linalg::random_state_orthogonal_to(&w_pow, &mut rng)
                    .unwrap()
                    .with_layout(vec![4; copies])
                    .unwrap();
                let p = wit_test(&inst.spec, &outside, copies).unwrap();
                assert!(p <= copies as f64 * eps + 1e-8, "copies {copies}: {p}");
            }
        }

        let no_inst = PlantedInstance::no(2, 1, 3, r, 321).unwrap();
        for copies in [1usize, 2, 3] {
            for _ in 0..10 {
                let state = random_unit_state(vec![4; copies], &mut rng);
                let p = wit_test(&no_inst.spec, &state, copies).unwrap();
                assert!(p <= eps + 1e-8, "copies {copies}: {p}");
            }
        }
    }

    #[test]
    fn combined_operator_trivial_verifier_is_antisymmetrizer() {
        // A verifier accepting everything has E = I, so the combined operator
        // collapses to the alternating projector.
        let basis = SubspaceBasis::new(
            2,
            vec![
                PureState::basis_state(vec![2], 0),
                PureState::basis_state(vec![2], 1),
            ],
        )
        .unwrap();
        let spec = plant_verifier(1, 1, &basis, &[1.0, 1.0], &[], 9).unwrap();
        let g = combined_operator(&spec, 2).unwrap();
        let a = antisymmetrizer(2, 2).unwrap();
        assert!(g.operator.distance(&a) <= 1e-9);
    }

    #[test]
    fn combined_operator_sequential_identity() {
        // ⟨ψ|G|ψ⟩ = Pr[alt test accepts] · Pr[wit test accepts | post state].
        let mut rng = CounterRng::new(44);
        let basis = random_subspace(4, 2, &mut rng);
        let spec = plant_verifier(2, 1, &basis, &[0.95, 0.9], &[0.05, 0.01], 77).unwrap();
        let g = combined_operator(&spec, 2).unwrap();
        for _ in 0..30 {
            let state = random_unit_state(vec![4, 4], &mut rng);
            let quad = g.operator.quadratic_form(state.amplitudes());
            let alt = alt_test_exact(&state, 2).unwrap();
            let sequential = match alt.post_state {
                Some(post) => {
                    alt.accept_probability * wit_test(&spec, &post, 2).unwrap()
                }
                None => 0.0,
            };
            assert!((quad - sequential).abs() <= 1e-9, "{quad} vs {sequential}");
        }
    }

    #[test]
    fn combined_operator_top_eigenvector_is_slater_state() {
        let inst = PlantedInstance::yes(2, 1, 2, 3, 8, 2024).unwrap();
        let g = combined_operator(&inst.spec, 2).unwrap();
        let eig = eigh(&g.operator).unwrap();
        let witness = slater(&inst.planted_basis).unwrap();
        let overlap = eig.eigenvectors.vectors()[0]
            .overlap_sq(&witness.clone().with_layout(vec![16]).unwrap());
        assert!(overlap >= 0.999, "overlap {overlap}");
        assert!(eig.eigenvalues[0] >= ACCEPT_THRESHOLD);
        assert!(eig.eigenvalues[1] <= REJECT_THRESHOLD);
    }

    #[test]
    fn oracle_interval_semantics() {
        let mk = |eigs: &[f64]| {
            // Diagonal stand-in combined operator.
            let n = eigs.len();
            let mut m = ComplexMatrix::zeros(n, n);
            for (i, &l) in eigs.iter().enumerate() {
                m.set(i, i, Complex64::new(l, 0.0));
            }
            let basis = SubspaceBasis::new(2, vec![PureState::basis_state(vec![2], 0)]).unwrap();
            let spec = plant_verifier(1, 1, &basis, &[1.0], &[0.0], 4).unwrap();
            CombinedOperator {
                copies: 1,
                operator: m,
                source: spec,
            }
        };
        let call = uqma_oracle(&mk(&[0.9, 0.1, 0.0, 0.0]), 2.0 / 3.0, 1.0 / 3.0).unwrap();
        assert_eq!(call.verdict, OracleVerdict::Yes);
        let call = uqma_oracle(&mk(&[0.2, 0.1, 0.0, 0.0]), 2.0 / 3.0, 1.0 / 3.0).unwrap();
        assert_eq!(call.verdict, OracleVerdict::No);
        let call = uqma_oracle(&mk(&[0.9, 0.5, 0.0, 0.0]), 2.0 / 3.0, 1.0 / 3.0).unwrap();
        assert_eq!(call.verdict, OracleVerdict::PromiseViolation);
        assert!((call.lambda1 - 0.9).abs() < 1e-12);
        assert!((call.lambda2 - 0.5).abs() < 1e-12);
    }

    #[test]
    fn reduction_accepts_planted_yes_at_witness_dimension() {
        let inst = PlantedInstance::yes(2, 1, 2, 3, 8, 5).unwrap();
        let outcome = algorithm_a(&inst, 3).unwrap();
        assert!(outcome.accepted);
        assert_eq!(outcome.accept_at, Some(2));
        let at_d = &outcome.trace[1];
        assert!(at_d.lambda1 >= ACCEPT_THRESHOLD);
        assert!(at_d.lambda2 <= REJECT_THRESHOLD);
    }

    #[test]
    fn reduction_rejects_planted_no_everywhere() {
        let inst = PlantedInstance::no(2, 1, 3, 8, 6).unwrap();
        let outcome = algorithm_a(&inst, 3).unwrap();
        assert!(!outcome.accepted);
        assert_eq!(outcome.trace.len(), 3);
        for call in &outcome.trace {
            assert_eq!(call.verdict, OracleVerdict::No);
        }
    }

    #[test]
    fn reduction_accepts_one_dimensional_witness_immediately() {
        let inst = PlantedInstance::yes(2, 1, 1, 3, 8, 7).unwrap();
        let outcome = algorithm_a(&inst, 3).unwrap();
        assert!(outcome.accepted);
        assert_eq!(outcome.accept_at, Some(1));
    }

    #[test]
    fn soundness_never_grows_with_copies() {
        let inst = PlantedInstance::no(2, 1, 3, 8, 8).unwrap();
        let e_top = eigh(&acceptance_operator(&inst.spec))
            .unwrap()
            .eigenvalues[0];
        for copies in 1..=3 {
            let g = combined_operator(&inst.spec, copies).unwrap();
            let top = eigh(&g.operator).unwrap().eigenvalues[0];
            assert!(top <= e_top + 1e-9, "copies {copies}: {top} vs {e_top}");
        }
    }
}
