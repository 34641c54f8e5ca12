//! Property-level checks for the dense linear algebra layer: spectral
//! reconstruction at size, the standard subspace identities, and unitary
//! completion.

use fewqma_core::linalg::{
    complete_unitary, eigh, gram_schmidt, intersect, kron, orth_complement, reconstruct,
    ComplexMatrix, PureState, SubspaceBasis,
};
use fewqma_core::rng::CounterRng;
use fewqma_core::subspace::random_subspace;
use fewqma_core::{TOL_DERIVED, TOL_RANK, TOL_STRUCTURAL};
use num_complex::Complex64;
use proptest::prelude::*;

fn random_hermitian(dim: usize, rng: &mut CounterRng) -> ComplexMatrix {
    let g = ComplexMatrix::from_fn(dim, dim, |_, _| rng.gaussian_complex());
    g.add(&g.dagger()).scale(Complex64::new(0.5, 0.0))
}

#[test]
fn eigh_reconstruction_up_to_dim_256() {
    for (dim, seed) in [(4usize, 10u64), (16, 11), (64, 12), (256, 13)] {
        let mut rng = CounterRng::new(seed);
        let h = random_hermitian(dim, &mut rng);
        let eig = eigh(&h).unwrap();
        let residual = reconstruct(&eig).distance(&h);
        assert!(residual <= TOL_DERIVED, "dim {dim}: residual {residual:e}");
        let orthogonality = eig.eigenvectors.column_matrix().unitarity_residual();
        assert!(orthogonality <= TOL_STRUCTURAL, "dim {dim}: {orthogonality:e}");
        for pair in eig.eigenvalues.windows(2) {
            assert!(pair[0] >= pair[1]);
        }
    }
}

#[test]
fn complement_of_intersection_is_sum_of_complements() {
    // Two routes to the same projector: the identity
    // (S₁ ∩ S₂)⊥ = S₁⊥ + S₂⊥ evaluated with independent constructions.
    let dim = 12;
    for seed in 0..5u64 {
        let mut rng = CounterRng::derive(100, seed);
        let s1 = random_subspace(dim, 7, &mut rng);
        let s2 = random_subspace(dim, 8, &mut rng);

        let cap = intersect(&s1, &s2, TOL_RANK).unwrap();
        // Generic 7+8-dimensional pair in dim 12 intersects in dimension 3.
        assert_eq!(cap.dim(), 3, "seed {seed}");
        let lhs = ComplexMatrix::identity(dim).sub(&cap.projector());

        let c1 = orth_complement(&s1);
        let c2 = orth_complement(&s2);
        let mut stacked: Vec<Vec<Complex64>> = Vec::new();
        for v in c1.vectors().iter().chain(c2.vectors()) {
            stacked.push(v.amplitudes().to_vec());
        }
        let rhs = gram_schmidt(dim, &stacked, TOL_RANK).projector();

        let residual = lhs.distance(&rhs);
        assert!(residual <= TOL_DERIVED, "seed {seed}: {residual:e}");
    }
}

fn tensor_bases(a: &SubspaceBasis, b: &SubspaceBasis) -> SubspaceBasis {
    let mut vectors = Vec::new();
    for va in a.vectors() {
        for vb in b.vectors() {
            vectors.push(va.tensor(vb));
        }
    }
    SubspaceBasis::new(a.ambient_dim() * b.ambient_dim(), vectors).unwrap()
}

#[test]
fn tensor_complement_splits_orthogonally() {
    // (S₁ ⊗ S₂)⊥ = (S₁⊥ ⊗ H₂) ⊕ (S₁ ⊗ S₂⊥), checked as projectors.
    let (n1, n2) = (3usize, 4usize);
    for seed in 0..5u64 {
        let mut rng = CounterRng::derive(200, seed);
        let s1 = random_subspace(n1, 2, &mut rng);
        let s2 = random_subspace(n2, 2, &mut rng);
        let h2 = SubspaceBasis::new(
            n2,
            (0..n2).map(|i| PureState::basis_state(vec![n2], i)).collect(),
        )
        .unwrap();

        let product = tensor_bases(&s1, &s2);
        let lhs = ComplexMatrix::identity(n1 * n2).sub(&product.projector());

        let part1 = tensor_bases(&orth_complement(&s1), &h2).projector();
        let part2 = tensor_bases(&s1, &orth_complement(&s2)).projector();
        let rhs = part1.add(&part2);

        let residual = lhs.distance(&rhs);
        assert!(residual <= TOL_DERIVED, "seed {seed}: {residual:e}");
    }
}

#[test]
fn complement_dimension_counts() {
    let mut rng = CounterRng::new(300);
    for dim in [2usize, 5, 9] {
        for sub in 1..dim {
            let s = random_subspace(dim, sub, &mut rng);
            let c = orth_complement(&s);
            assert_eq!(c.dim(), dim - sub);
            // Complement projectors sum to the identity.
            let total = s.projector().add(&c.projector());
            assert!(total.distance(&ComplexMatrix::identity(dim)) <= 1e-12);
        }
    }
}

#[test]
fn completion_of_random_columns_is_unitary() {
    let mut rng = CounterRng::new(400);
    for seed in 0..10u64 {
        let _ = seed;
        let cols = random_subspace(8, 2, &mut rng);
        let u = complete_unitary(&cols, &[1, 6], 8).unwrap();
        assert!(u.unitarity_residual() <= TOL_STRUCTURAL);
        for (j, pos) in [1usize, 6].iter().enumerate() {
            for r in 0..8 {
                assert_eq!(u.get(r, *pos), cols.vectors()[j].amplitudes()[r]);
            }
        }
    }
}

#[test]
fn kron_mixed_product_identity() {
    // (A⊗B)(C⊗D) = (AC)⊗(BD) on random small matrices.
    let mut rng = CounterRng::new(500);
    let a = ComplexMatrix::from_fn(2, 2, |_, _| rng.gaussian_complex());
    let b = ComplexMatrix::from_fn(3, 3, |_, _| rng.gaussian_complex());
    let c = ComplexMatrix::from_fn(2, 2, |_, _| rng.gaussian_complex());
    let d = ComplexMatrix::from_fn(3, 3, |_, _| rng.gaussian_complex());
    let left = kron(&a, &b).mul(&kron(&c, &d));
    let right = kron(&a.mul(&c), &b.mul(&d));
    assert!(left.distance(&right) <= 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn prop_eigh_reconstructs_small_hermitians(dim in 2usize..10, seed in 0u64..1000) {
        let mut rng = CounterRng::derive(600, seed);
        let h = random_hermitian(dim, &mut rng);
        let eig = eigh(&h).unwrap();
        prop_assert!(reconstruct(&eig).distance(&h) <= 1e-10);
    }

    #[test]
    fn prop_gram_schmidt_projector_idempotent(
        dim in 2usize..8,
        count in 1usize..10,
        seed in 0u64..1000,
    ) {
        let mut rng = CounterRng::derive(700, seed);
        let vs: Vec<Vec<Complex64>> = (0..count).map(|_| rng.gaussian_vector(dim)).collect();
        let basis = gram_schmidt(dim, &vs, TOL_RANK);
        prop_assert!(basis.dim() <= dim.min(count));
        let p = basis.projector();
        prop_assert!(p.projector_residual() <= TOL_STRUCTURAL);
        // Every input vector lies in the span.
        for v in &vs {
            let projected = p.matvec(v);
            let diff: f64 = projected
                .iter()
                .zip(v)
                .map(|(x, y)| (x - y).norm_sqr())
                .sum::<f64>()
                .sqrt();
            prop_assert!(diff <= 1e-8);
        }
    }
}
