//! Cross-module properties of the planted verifiers and the reduction:
//! amplification against an exact rational oracle, spectral vs sampled
//! classification agreement, and end-to-end reduction verdicts.

use fewqma_core::linalg::eigh;
use fewqma_core::protocol::{
    algorithm_a, combined_operator, uqma_oracle, OracleVerdict, ACCEPT_THRESHOLD, REJECT_THRESHOLD,
};
use fewqma_core::subspace::slater;
use fewqma_core::verifier::{
    acceptance_operator, amplify_operator, amplify_profile, binomial_tail, classify,
    classify_sampled, InstanceKind, PlantedInstance, Verdict,
};

/// Exact rational binomial tail for λ = num/den: Σ_{j≥thr} C(n,j)·num^j·(den−num)^{n−j} / den^n,
/// evaluated in u128 via Pascal's triangle. Independent of the library path.
fn rational_tail(num: u128, den: u128, n: usize, threshold: usize) -> (u128, u128) {
    let mut pascal = vec![1u128];
    for _ in 0..n {
        let mut next = vec![1u128];
        for w in pascal.windows(2) {
            next.push(w[0] + w[1]);
        }
        next.push(1);
        pascal = next;
    }
    let mut numerator = 0u128;
    for (j, &coeff) in pascal.iter().enumerate().take(n + 1).skip(threshold) {
        numerator += coeff * num.pow(j as u32) * (den - num).pow((n - j) as u32);
    }
    (numerator, den.pow(n as u32))
}

#[test]
fn amplification_matches_exact_rational_oracle() {
    // λ = 2/3, n = 15, threshold = 8.
    let (num, den) = rational_tail(2, 3, 15, 8);
    assert_eq!(num, 13_082_880);
    assert_eq!(den, 14_348_907);
    let expected = num as f64 / den as f64;
    let got = binomial_tail(2.0 / 3.0, 15, 8);
    assert!((got - expected).abs() <= 1e-12, "{got} vs {expected}");
    assert!(got > 0.85);

    // A few more rational points.
    for (a, b) in [(1u128, 2u128), (1, 4), (3, 4), (9, 10)] {
        let (num, den) = rational_tail(a, b, 15, 8);
        let expected = num as f64 / den as f64;
        let got = binomial_tail(a as f64 / b as f64, 15, 8);
        assert!((got - expected).abs() <= 1e-12, "{a}/{b}: {got} vs {expected}");
    }
}

#[test]
fn amplified_profile_separates_planted_spectra() {
    for seed in 0..6u64 {
        let inst = PlantedInstance::yes(2, 1, 2, 3, 8, seed).unwrap();
        let amplified = amplify_profile(&inst.profile, 15, 8).unwrap();
        for (i, &l) in amplified.eigenvalues.iter().enumerate() {
            if i < 2 {
                assert!(l >= 0.85, "seed {seed}: accepted {l}");
            } else {
                assert!(l <= 0.15, "seed {seed}: background {l}");
            }
        }
        // Argsort invariance: amplified spectrum is still sorted the same way.
        let mut resorted = amplified.eigenvalues.clone();
        resorted.sort_by(|a, b| b.total_cmp(a));
        assert_eq!(resorted, amplified.eigenvalues);
    }
}

#[test]
fn constructive_amplification_realizes_the_profile() {
    let inst = PlantedInstance::yes(2, 1, 2, 3, 4, 77).unwrap();
    let amplified = inst.amplify_constructive(15, 8, 78).unwrap();
    let eig = eigh(&acceptance_operator(&amplified.spec)).unwrap();
    for (got, want) in eig.eigenvalues.iter().zip(&amplified.profile.eigenvalues) {
        assert!((got - want).abs() <= 1e-8, "{got} vs {want}");
    }
    // Same witness subspace.
    let dist = amplified
        .planted_basis
        .projector()
        .distance(&inst.planted_basis.projector());
    assert!(dist <= 1e-12);
}

#[test]
fn spectral_and_sampled_classification_agree() {
    for seed in 0..8u64 {
        let (inst, expect_dim) = if seed % 2 == 0 {
            let d = 1 + (seed as usize / 2) % 3;
            (PlantedInstance::yes(2, 1, d, 3, 8, seed).unwrap(), Some(d))
        } else {
            (PlantedInstance::no(2, 1, 3, 8, seed).unwrap(), None)
        };
        let spectral = classify(&inst.spec, &inst.profile).unwrap();
        let sampled =
            classify_sampled(&inst.spec, &inst.planted_basis, &inst.profile, seed).unwrap();
        match expect_dim {
            Some(d) => {
                assert_eq!(spectral.verdict, Verdict::Yes { witness_dim: d }, "seed {seed}");
                assert_eq!(sampled, Verdict::Yes { witness_dim: d }, "seed {seed}");
                let check = spectral.subspace_check.unwrap();
                assert!(check.projector_distance <= 1e-8, "seed {seed}");
            }
            None => {
                assert_eq!(spectral.verdict, Verdict::No, "seed {seed}");
                assert_eq!(sampled, Verdict::No, "seed {seed}");
            }
        }
    }
}

#[test]
fn reduction_trace_matches_planted_kind() {
    for seed in 100..110u64 {
        let d = 1 + (seed as usize) % 3;
        let inst = PlantedInstance::yes(2, 1, d, 3, 8, seed).unwrap();
        let outcome = algorithm_a(&inst, 3).unwrap();
        assert!(outcome.accepted, "seed {seed}");
        assert_eq!(outcome.accept_at, Some(d), "seed {seed}");
        assert_eq!(inst.kind, InstanceKind::Yes);

        let no_inst = PlantedInstance::no(2, 1, 3, 8, seed).unwrap();
        let outcome = algorithm_a(&no_inst, 3).unwrap();
        assert!(!outcome.accepted, "seed {seed}");
        assert!(outcome
            .trace
            .iter()
            .all(|call| call.verdict == OracleVerdict::No));
    }
}

#[test]
fn combined_top_eigenvector_tracks_the_witness_state() {
    for seed in [3u64, 14, 159] {
        for d in 1..=3usize {
            let inst = PlantedInstance::yes(2, 1, d, 3, 8, seed).unwrap();
            let g = combined_operator(&inst.spec, d).unwrap();
            let call = uqma_oracle(&g, ACCEPT_THRESHOLD, REJECT_THRESHOLD).unwrap();
            assert_eq!(call.verdict, OracleVerdict::Yes, "seed {seed} d {d}");

            let eig = eigh(&g.operator).unwrap();
            let witness = slater(&inst.planted_basis)
                .unwrap()
                .with_layout(vec![g.operator.rows()])
                .unwrap();
            let overlap = eig.eigenvectors.vectors()[0].overlap_sq(&witness);
            assert!(overlap >= 0.999, "seed {seed} d {d}: overlap {overlap}");
        }
    }
}

#[test]
fn amplified_operator_agrees_with_profile_map() {
    let inst = PlantedInstance::yes(2, 1, 2, 3, 4, 9).unwrap();
    let e = acceptance_operator(&inst.spec);
    let amp_op = amplify_operator(&e, 15, 8).unwrap();
    let amp_profile = amplify_profile(&inst.profile, 15, 8).unwrap();
    let eig = eigh(&amp_op).unwrap();
    for (got, want) in eig.eigenvalues.iter().zip(&amp_profile.eigenvalues) {
        assert!((got - want).abs() <= 1e-8, "{got} vs {want}");
    }
}
