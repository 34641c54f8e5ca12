//! Symmetric and antisymmetric subspaces of tensor powers: group-averaged
//! projectors, pairwise swap projectors, antisymmetrized (Slater) witness
//! states, and a numeric verification report for the subspace identities the
//! reduction relies on.

use alloc::vec::Vec;

use num_complex::Complex64;
// Inherent f64 methods shadow the trait once std is in the crate graph.
#[allow(unused_imports)]
use num_traits::Float;

use crate::comb::{binomial, factorial};
use crate::error::{Error, Result};
use crate::linalg::{gram_schmidt, intersect, ComplexMatrix, PureState, SubspaceBasis, ZERO};
use crate::permgroup::{apply_perm, enumerate, perm_unitary, Permutation};
use crate::rng::CounterRng;
use crate::{AMBIENT_CAP, TOL_RANK};

fn checked_power(base: usize, exp: usize) -> Result<usize> {
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

/// Which pairwise eigenspace of a register swap to project onto.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairKind {
    /// `+1` eigenspace: `(I + U_{π_ij})/2`.
    Symmetric,
    /// `−1` eigenspace: `(I − U_{π_ij})/2`.
    Antisymmetric,
}

/// Projector onto the full antisymmetric subspace of `t` registers of local
/// dimension `local_dim`, built by signed group averaging.
pub fn antisymmetrizer(t: usize, local_dim: usize) -> Result<ComplexMatrix> {
    group_average(t, local_dim, true)
}

/// Projector onto the full symmetric subspace, built by group averaging.
pub fn symmetrizer(t: usize, local_dim: usize) -> Result<ComplexMatrix> {
    group_average(t, local_dim, false)
}

fn group_average(t: usize, local_dim: usize, signed: bool) -> Result<ComplexMatrix> {
    let dim = checked_power(local_dim, t)?;
    let mut acc = ComplexMatrix::zeros(dim, dim);
    for p in enumerate(t)? {
        let u = perm_unitary(&p, local_dim)?;
        let weight = if signed { p.sign() as f64 } else { 1.0 };
        acc = acc.add(&u.scale(Complex64::new(weight, 0.0)));
    }
    Ok(acc.scale(Complex64::new(1.0 / factorial(t) as f64, 0.0)))
}

/// Projector onto the symmetric or antisymmetric eigenspace of the swap of
/// registers `i` and `j` (zero-based) among `t` registers.
pub fn pair_projector(
    kind: PairKind,
    i: usize,
    j: usize,
    t: usize,
    local_dim: usize,
) -> Result<ComplexMatrix> {
    let swap = Permutation::transposition(t, i, j)?;
    let u = perm_unitary(&swap, local_dim)?;
    let eye = ComplexMatrix::identity(u.rows());
    let combined = match kind {
        PairKind::Symmetric => eye.add(&u),
        PairKind::Antisymmetric => eye.sub(&u),
    };
    Ok(combined.scale(Complex64::new(0.5, 0.0)))
}

/// Antisymmetrizer and symmetrizer for a fixed `(t, local_dim)`, cached
/// together with their defining parameters.
#[derive(Debug, Clone)]
pub struct AltSymContext {
    /// Number of registers.
    pub t: usize,
    /// Local dimension of each register.
    pub local_dim: usize,
    /// Projector onto the alternating subspace; trace `C(local_dim, t)`.
    pub antisymmetrizer: ComplexMatrix,
    /// Projector onto the symmetric subspace; trace `C(local_dim+t−1, t)`.
    pub symmetrizer: ComplexMatrix,
}

impl AltSymContext {
    /// Build both projectors by explicit group averaging.
    pub fn new(t: usize, local_dim: usize) -> Result<Self> {
        Ok(AltSymContext {
            t,
            local_dim,
            antisymmetrizer: antisymmetrizer(t, local_dim)?,
            symmetrizer: symmetrizer(t, local_dim)?,
        })
    }

    /// Trace deviation of the antisymmetrizer from `C(local_dim, t)`.
    pub fn alt_trace_error(&self) -> f64 {
        (self.antisymmetrizer.trace().re - binomial(self.local_dim, self.t) as f64).abs()
    }

    /// Trace deviation of the symmetrizer from `C(local_dim+t−1, t)`.
    pub fn sym_trace_error(&self) -> f64 {
        (self.symmetrizer.trace().re - binomial(self.local_dim + self.t - 1, self.t) as f64).abs()
    }
}

/// The antisymmetrized product of an orthonormal set: the unique (up to
/// phase) alternating state inside `W^{⊗d}` for `W = span(w)`.
pub fn slater(w: &SubspaceBasis) -> Result<PureState> {
    let d = w.dim();
    if d == 0 {
        return Err(Error::InvalidArgument {
            context: "slater state needs at least one column",
        });
    }
    if d > 4 {
        return Err(Error::InvalidArgument {
            context: "slater state supports at most 4 columns",
        });
    }
    let local_dim = w.ambient_dim();
    let dim = checked_power(local_dim, d)?;
    let mut product = w.vectors()[0].clone();
    for v in &w.vectors()[1..] {
        product = product.tensor(v);
    }
    let mut acc = alloc::vec![ZERO; dim];
    for p in enumerate(d)? {
        let moved = apply_perm(&p, local_dim, product.amplitudes());
        let sign = p.sign() as f64;
        for (a, m) in acc.iter_mut().zip(&moved) {
            *a += m * sign;
        }
    }
    let scale = 1.0 / (factorial(d) as f64);
    // Norm of the signed sum is √(d!)·‖result‖; dividing by d! and
    // renormalizing absorbs rounding.
    let acc: Vec<Complex64> = acc.iter().map(|z| z * scale).collect();
    PureState::normalized(acc, alloc::vec![local_dim; d])
}

/// Orthonormal basis of `W^{⊗t}`: tensor products of the columns of `w` over
/// all index tuples, lexicographic.
pub fn tensor_power_basis(w: &SubspaceBasis, t: usize) -> Result<SubspaceBasis> {
    let d = w.dim();
    let ambient = checked_power(w.ambient_dim(), t)?;
    let count = checked_power(d, t)?;
    let mut vectors = Vec::with_capacity(count);
    for mut tuple_index in 0..count {
        let mut digits = alloc::vec![0usize; t];
        for slot in (0..t).rev() {
            digits[slot] = tuple_index % d;
            tuple_index /= d;
        }
        let mut state = w.vectors()[digits[0]].clone();
        for &digit in &digits[1..] {
            state = state.tensor(&w.vectors()[digit]);
        }
        vectors.push(state);
    }
    // Tensor products of orthonormal columns are orthonormal by construction.
    Ok(SubspaceBasis::from_orthonormal_unchecked(ambient, vectors))
}

/// Residuals of the subspace identities for one random witness subspace.
///
/// Built by [`verify_claims`]; every field is a residual or count a caller
/// can threshold, so a report can be rendered without recomputing anything.
#[derive(Debug, Clone)]
pub struct ClaimReport {
    /// Local dimension `K`.
    pub local_dim: usize,
    /// Witness subspace dimension `d`.
    pub witness_dim: usize,
    /// Tensor copies `t`.
    pub copies: usize,
    /// Seed the random subspace was drawn from.
    pub seed: u64,
    /// `|trace(A_t) − C(K, t)|`.
    pub alt_trace_error: f64,
    /// `|trace(S_t) − C(K+t−1, t)|`.
    pub sym_trace_error: f64,
    /// `|trace(A_t·Π_{W^{⊗t}}) − C(d, t)|`.
    pub restricted_trace_error: f64,
    /// Distance between the projector onto the orthocomplement of the
    /// alternating part inside `W^{⊗t}` and the projector onto the span of
    /// the pairwise-symmetric ranges.
    pub decomposition_residual: f64,
    /// Rank of the antisymmetrizer restricted to `W^{⊗d}` (must be 1).
    pub restricted_rank: usize,
    /// `|trace(A_d·Π_{W^{⊗d}}) − 1|`.
    pub slater_trace_error: f64,
    /// `|1 − |⟨s₁|s₂⟩||` for Slater states from two bases of the same `W`.
    pub basis_independence_error: f64,
    /// `‖A_d|W_alt⟩ − |W_alt⟩‖`.
    pub slater_membership_residual: f64,
    /// `‖A_t·Π_{W^{⊗t}} − Π_{W^{⊗t}}·A_t‖_F`.
    pub commutator_residual: f64,
    /// Max over sampled `|φ⟩ ⟂ |W_alt⟩` of `‖Π_{W^{⊗d}}·A_d|φ⟩‖`.
    pub orthogonal_projection_residual: f64,
}

impl ClaimReport {
    /// All residuals within the given derived tolerance (structural checks
    /// use the tighter built-in tolerances).
    pub fn passes(&self, derived_tol: f64) -> bool {
        self.alt_trace_error <= 1e-6
            && self.sym_trace_error <= 1e-6
            && self.restricted_trace_error <= 1e-6
            && self.decomposition_residual <= derived_tol
            && self.restricted_rank == 1
            && self.slater_trace_error <= 1e-6
            && self.basis_independence_error <= 1e-9
            && self.slater_membership_residual <= 1e-9
            && self.commutator_residual <= derived_tol
            && self.orthogonal_projection_residual <= derived_tol
    }
}

const ORTHOGONAL_SAMPLES: usize = 20;

/// Draw a random `d`-dimensional subspace of dimension-`local_dim` space.
pub fn random_subspace(local_dim: usize, d: usize, rng: &mut CounterRng) -> SubspaceBasis {
    loop {
        let vs: Vec<Vec<Complex64>> = (0..d).map(|_| rng.gaussian_vector(local_dim)).collect();
        let basis = gram_schmidt(local_dim, &vs, TOL_RANK);
        if basis.dim() == d {
            return basis;
        }
    }
}

/// Random `d×d` unitary (orthonormalized Gaussian columns).
pub fn random_unitary(d: usize, rng: &mut CounterRng) -> ComplexMatrix {
    random_subspace(d, d, rng).column_matrix()
}

/// Numerically verify the subspace identities on a seeded random witness
/// subspace of dimension `witness_dim` inside local dimension `local_dim`,
/// with `copies` tensor copies.
pub fn verify_claims(
    witness_dim: usize,
    copies: usize,
    local_dim: usize,
    seed: u64,
) -> Result<ClaimReport> {
    if !(2 <= copies && copies <= witness_dim && witness_dim <= local_dim) {
        return Err(Error::InvalidArgument {
            context: "need 2 ≤ copies ≤ witness dim ≤ local dim",
        });
    }
    checked_power(local_dim, copies.max(witness_dim))?;
    let mut rng = CounterRng::new(seed);
    let w = random_subspace(local_dim, witness_dim, &mut rng);

    let ctx = AltSymContext::new(copies, local_dim)?;
    let alt_t = &ctx.antisymmetrizer;
    let dim_t = alt_t.rows();

    let w_pow_t = tensor_power_basis(&w, copies)?;
    let proj_wt = w_pow_t.projector();

    let restricted_trace_error = (product_trace(alt_t, &proj_wt).re
        - binomial(witness_dim, copies) as f64)
        .abs();

    let commutator_residual = alt_t.mul(&proj_wt).distance(&proj_wt.mul(alt_t));

    // Alternating part of W^{⊗t} as the intersection of the alternating
    // subspace with W^{⊗t}; its complement inside W^{⊗t} is the difference of
    // nested projectors.
    let alt_range = gram_schmidt(dim_t, &matrix_columns(alt_t), TOL_RANK);
    let alt_wt = intersect(&alt_range, &w_pow_t, TOL_RANK)?;
    let lhs_projector = proj_wt.sub(&alt_wt.projector());

    // Span of the pairwise-symmetric ranges restricted to W^{⊗t}.
    let mut range_vectors: Vec<Vec<Complex64>> = Vec::new();
    for i in 0..copies {
        for j in (i + 1)..copies {
            let swap = Permutation::transposition(copies, i, j)?;
            for col in w_pow_t.vectors() {
                let moved = apply_perm(&swap, local_dim, col.amplitudes());
                let symmetrized: Vec<Complex64> = col
                    .amplitudes()
                    .iter()
                    .zip(&moved)
                    .map(|(a, b)| (a + b) * 0.5)
                    .collect();
                range_vectors.push(symmetrized);
            }
        }
    }
    let rhs_basis = gram_schmidt(dim_t, &range_vectors, TOL_RANK);
    let decomposition_residual = lhs_projector.distance(&rhs_basis.projector());

    // Copies = witness dimension: the alternating part is a single state.
    let (alt_d, w_pow_d) = if copies == witness_dim {
        (alt_t.clone(), w_pow_t)
    } else {
        (
            antisymmetrizer(witness_dim, local_dim)?,
            tensor_power_basis(&w, witness_dim)?,
        )
    };
    let proj_wd = if copies == witness_dim {
        proj_wt
    } else {
        w_pow_d.projector()
    };

    let restricted_images: Vec<Vec<Complex64>> = w_pow_d
        .vectors()
        .iter()
        .map(|col| alt_d.matvec(col.amplitudes()))
        .collect();
    let restricted_rank = gram_schmidt(alt_d.rows(), &restricted_images, TOL_RANK).dim();
    let slater_trace_error = (product_trace(&alt_d, &proj_wd).re - 1.0).abs();

    let witness_state = slater(&w)?;
    let rotation = random_unitary(witness_dim, &mut rng);
    let rotated = rotate_basis(&w, &rotation)?;
    let witness_state_again = slater(&rotated)?;
    let basis_independence_error = (1.0 - witness_state.inner(&witness_state_again).norm()).abs();

    let projected = alt_d.matvec(witness_state.amplitudes());
    let slater_membership_residual = projected
        .iter()
        .zip(witness_state.amplitudes())
        .map(|(a, b)| (a - b).norm_sqr())
        .sum::<f64>()
        .sqrt();

    let slater_span =
        SubspaceBasis::from_orthonormal_unchecked(alt_d.rows(), alloc::vec![witness_state]);
    let mut orthogonal_projection_residual = 0.0f64;
    for _ in 0..ORTHOGONAL_SAMPLES {
        let phi = crate::linalg::random_state_orthogonal_to(&slater_span, &mut rng)?;
        let through = proj_wd.matvec(&alt_d.matvec(phi.amplitudes()));
        let r = through.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        orthogonal_projection_residual = orthogonal_projection_residual.max(r);
    }

    Ok(ClaimReport {
        local_dim,
        witness_dim,
        copies,
        seed,
        alt_trace_error: ctx.alt_trace_error(),
        sym_trace_error: ctx.sym_trace_error(),
        restricted_trace_error,
        decomposition_residual,
        restricted_rank,
        slater_trace_error,
        basis_independence_error,
        slater_membership_residual,
        commutator_residual,
        orthogonal_projection_residual,
    })
}

/// Columns of a matrix as amplitude vectors.
fn matrix_columns(m: &ComplexMatrix) -> Vec<Vec<Complex64>> {
    (0..m.cols())
        .map(|c| (0..m.rows()).map(|r| m.get(r, c)).collect())
        .collect()
}

/// `trace(a·b)` without forming the product.
fn product_trace(a: &ComplexMatrix, b: &ComplexMatrix) -> Complex64 {
    let mut acc = ZERO;
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            acc += a.get(i, j) * b.get(j, i);
        }
    }
    acc
}

/// New orthonormal basis of the same subspace: columns mixed by a unitary.
pub fn rotate_basis(w: &SubspaceBasis, q: &ComplexMatrix) -> Result<SubspaceBasis> {
    if q.rows() != w.dim() || q.cols() != w.dim() {
        return Err(Error::DimensionMismatch {
            context: "basis rotation",
            expected: w.dim(),
            actual: q.rows(),
        });
    }
    let mixed = w.column_matrix().mul(q);
    let vectors: Result<Vec<PureState>> = (0..w.dim())
        .map(|c| {
            let col: Vec<Complex64> = (0..w.ambient_dim()).map(|r| mixed.get(r, c)).collect();
            PureState::normalized(col, alloc::vec![w.ambient_dim()])
        })
        .collect();
    SubspaceBasis::new(w.ambient_dim(), vectors?)
}
