//! Symmetric-group machinery: enumeration of `S_t`, signs, composition, the
//! index bijection `[t!] ↔ S_t`, and the register-permutation unitaries on
//! `H^{⊗t}`.
//!
//! The unitaries satisfy the homomorphism `U_{a∘b} = U_a · U_b` exactly as
//! 0/1 matrices, with composition `(a∘b)(i) = a(b(i))`. To make that hold,
//! `U_π` moves the content of register `i` to register `π(i)` (the inverse of
//! the naive index substitution, which composes in the wrong order).

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::comb::factorial;
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, ONE};
use crate::AMBIENT_CAP;

/// Largest register count; `t!` control registers blow up beyond this.
pub const MAX_T: usize = 6;

/// A permutation of `[t]` with its sign cached.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    /// Zero-based images: register `i` maps to `images[i]`.
    images: Vec<usize>,
    sign: i8,
}

fn sign_by_inversions(images: &[usize]) -> i8 {
    let mut inversions = 0usize;
    for i in 0..images.len() {
        for j in (i + 1)..images.len() {
            if images[i] > images[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

impl Permutation {
    /// Permutation from zero-based images; must be a bijection of `0..t`.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let t = images.len();
        let mut seen = vec![false; t];
        for &img in &images {
            if img >= t || seen[img] {
                return Err(Error::InvalidArgument {
                    context: "permutation images must be a bijection",
                });
            }
            seen[img] = true;
        }
        let sign = sign_by_inversions(&images);
        Ok(Permutation { images, sign })
    }

    /// Identity on `[t]`.
    pub fn identity(t: usize) -> Self {
        Permutation {
            images: (0..t).collect(),
            sign: 1,
        }
    }

    /// Transposition of two distinct points.
    pub fn transposition(t: usize, i: usize, j: usize) -> Result<Self> {
        if i >= t || j >= t || i == j {
            return Err(Error::InvalidArgument {
                context: "transposition needs two distinct points in range",
            });
        }
        let mut images: Vec<usize> = (0..t).collect();
        images.swap(i, j);
        Ok(Permutation { images, sign: -1 })
    }

    /// Number of points.
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of point `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    /// Zero-based image sequence.
    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Cached sign (parity of the inversion count).
    pub fn sign(&self) -> i8 {
        self.sign
    }

    /// Inverse permutation.
    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.images.len()];
        for (i, &img) in self.images.iter().enumerate() {
            images[img] = i;
        }
        Permutation {
            images,
            sign: self.sign,
        }
    }

    /// Composition `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Self> {
        if self.degree() != other.degree() {
            return Err(Error::DimensionMismatch {
                context: "permutation composition degree",
                expected: self.degree(),
                actual: other.degree(),
            });
        }
        let images: Vec<usize> = (0..self.degree())
            .map(|i| self.apply(other.apply(i)))
            .collect();
        Ok(Permutation {
            images,
            sign: self.sign * other.sign,
        })
    }
}

/// Index into the lexicographic enumeration of `S_t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PermIndex {
    /// Number of points.
    pub t: usize,
    /// Rank in `0..t!`.
    pub index: usize,
}

impl PermIndex {
    /// The permutation at this index (lexicographic by image sequence).
    pub fn to_permutation(self) -> Result<Permutation> {
        let total = factorial(self.t) as usize;
        if self.index >= total {
            return Err(Error::InvalidArgument {
                context: "permutation index out of range",
            });
        }
        let mut available: Vec<usize> = (0..self.t).collect();
        let mut rem = self.index;
        let mut images = Vec::with_capacity(self.t);
        for pos in (0..self.t).rev() {
            let block = factorial(pos) as usize;
            let pick = rem / block;
            rem %= block;
            images.push(available.remove(pick));
        }
        Permutation::from_images(images)
    }
}

/// Lexicographic rank of a permutation (inverse of [`PermIndex::to_permutation`]).
pub fn index_of(p: &Permutation) -> PermIndex {
    let t = p.degree();
    let mut available: Vec<usize> = (0..t).collect();
    let mut index = 0usize;
    for (pos, &img) in p.images().iter().enumerate() {
        let rank = available.iter().position(|&x| x == img).unwrap();
        index += rank * factorial(t - 1 - pos) as usize;
        available.remove(rank);
    }
    PermIndex { t, index }
}

/// All of `S_t` in lexicographic order of image sequences.
pub fn enumerate(t: usize) -> Result<Vec<Permutation>> {
    if t == 0 || t > MAX_T {
        return Err(Error::InvalidArgument {
            context: "register count must be between 1 and 6",
        });
    }
    let total = factorial(t) as usize;
    (0..total)
        .map(|index| PermIndex { t, index }.to_permutation())
        .collect()
}

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

/// Destination index of a product basis state under `U_π`.
///
/// Digits are big-endian: register 1 is the most significant factor.
fn permuted_index(p: &Permutation, local_dim: usize, t: usize, source: usize) -> usize {
    // Decompose the source into register digits.
    let mut digits = vec![0usize; t];
    let mut rem = source;
    for reg in (0..t).rev() {
        digits[reg] = rem % local_dim;
        rem /= local_dim;
    }
    // Register i's digit lands in register π(i).
    let mut out_digits = vec![0usize; t];
    for (reg, &digit) in digits.iter().enumerate() {
        out_digits[p.apply(reg)] = digit;
    }
    out_digits.iter().fold(0, |acc, &d| acc * local_dim + d)
}

/// The register-permutation unitary `U_π` on `(local_dim)^t` as a 0/1 matrix.
pub fn perm_unitary(p: &Permutation, local_dim: usize) -> Result<ComplexMatrix> {
    let t = p.degree();
    let dim = checked_power(local_dim, t)?;
    let mut u = ComplexMatrix::zeros(dim, dim);
    for source in 0..dim {
        u.set(permuted_index(p, local_dim, t, source), source, ONE);
    }
    Ok(u)
}

/// Apply `U_π` to an amplitude vector over `t` registers of `local_dim`
/// without materialising the matrix.
pub fn apply_perm(p: &Permutation, local_dim: usize, amplitudes: &[Complex64]) -> Vec<Complex64> {
    let t = p.degree();
    let dim = amplitudes.len();
    let mut out = vec![Complex64::new(0.0, 0.0); dim];
    for (source, &amp) in amplitudes.iter().enumerate() {
        out[permuted_index(p, local_dim, t, source)] = amp;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::CounterRng;
    use proptest::prelude::*;

    #[test]
    fn enumerate_t1_is_identity() {
        let perms = enumerate(1).unwrap();
        assert_eq!(perms, vec![Permutation::identity(1)]);
    }

    #[test]
    fn enumerate_t2_order_and_signs() {
        let perms = enumerate(2).unwrap();
        assert_eq!(perms[0].images(), &[0, 1]);
        assert_eq!(perms[1].images(), &[1, 0]);
        assert_eq!(perms[0].sign(), 1);
        assert_eq!(perms[1].sign(), -1);
    }

    #[test]
    fn enumerate_t3_balanced_signs() {
        let perms = enumerate(3).unwrap();
        assert_eq!(perms.len(), 6);
        let plus = perms.iter().filter(|p| p.sign() == 1).count();
        assert_eq!(plus, 3);
        // Lexicographic order is strictly increasing.
        for w in perms.windows(2) {
            assert!(w[0].images() < w[1].images());
        }
        // Independent sign oracle: inversion count recomputed inline.
        for p in &perms {
            let mut inv = 0;
            for i in 0..3 {
                for j in (i + 1)..3 {
                    if p.images()[i] > p.images()[j] {
                        inv += 1;
                    }
                }
            }
            assert_eq!(p.sign(), if inv % 2 == 0 { 1 } else { -1 });
        }
    }

    #[test]
    fn transposition_composition() {
        let swap = Permutation::transposition(3, 0, 1).unwrap();
        let square = swap.compose(&swap).unwrap();
        assert_eq!(square, Permutation::identity(3));
        assert_eq!(square.sign(), 1);
        assert_eq!(swap.sign(), -1);
    }

    #[test]
    fn sign_multiplicative_over_s4() {
        let perms = enumerate(4).unwrap();
        let mut rng = CounterRng::new(17);
        for _ in 0..50 {
            let a = &perms[(rng.next_u64() % 24) as usize];
            let b = &perms[(rng.next_u64() % 24) as usize];
            let ab = a.compose(b).unwrap();
            assert_eq!(ab.sign(), a.sign() * b.sign());
            assert_eq!(ab.sign(), sign_by_inversions(ab.images()));
        }
    }

    #[test]
    fn sign_of_inverse_matches() {
        for t in 1..=5 {
            for p in enumerate(t).unwrap() {
                assert_eq!(p.sign(), p.inverse().sign());
            }
        }
    }

    #[test]
    fn index_bijection_round_trips() {
        for t in 1..=5 {
            let total = factorial(t) as usize;
            for index in 0..total {
                let p = PermIndex { t, index }.to_permutation().unwrap();
                assert_eq!(index_of(&p).index, index);
            }
        }
    }

    #[test]
    fn identity_unitary_is_identity() {
        let u = perm_unitary(&Permutation::identity(2), 3).unwrap();
        assert_eq!(u, ComplexMatrix::identity(9));
    }

    #[test]
    fn swap_maps_01_to_10() {
        let swap = Permutation::transposition(2, 0, 1).unwrap();
        let u = perm_unitary(&swap, 2).unwrap();
        // |01⟩ is index 1, |10⟩ is index 2.
        let out = u.matvec(&[
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
        ]);
        assert_eq!(out[2], Complex64::new(1.0, 0.0));
        assert_eq!(out[1], Complex64::new(0.0, 0.0));
    }

    #[test]
    fn homomorphism_exact_for_all_pairs() {
        for (t, local_dim) in [(2usize, 2usize), (3, 2), (4, 2), (3, 4)] {
            let perms = enumerate(t).unwrap();
            for a in &perms {
                for b in &perms {
                    let ua = perm_unitary(a, local_dim).unwrap();
                    let ub = perm_unitary(b, local_dim).unwrap();
                    let uab = perm_unitary(&a.compose(b).unwrap(), local_dim).unwrap();
                    assert_eq!(ua.mul(&ub), uab, "t={t} a={:?} b={:?}", a, b);
                }
            }
        }
    }

    #[test]
    fn unitarity_exact() {
        for p in enumerate(3).unwrap() {
            let u = perm_unitary(&p, 2).unwrap();
            assert_eq!(u.dagger().mul(&u), ComplexMatrix::identity(8));
        }
    }

    #[test]
    fn vector_application_matches_matrix() {
        let mut rng = CounterRng::new(33);
        for p in enumerate(3).unwrap() {
            let u = perm_unitary(&p, 2).unwrap();
            let v = rng.gaussian_vector(8);
            let by_matrix = u.matvec(&v);
            let by_action = apply_perm(&p, 2, &v);
            assert_eq!(by_matrix, by_action);
        }
    }

    #[test]
    fn dimension_overflow_rejected() {
        let p = Permutation::identity(6);
        assert!(matches!(
            perm_unitary(&p, 8),
            Err(Error::DimensionOverflow { .. })
        ));
    }

    proptest! {
        #[test]
        fn prop_compose_associative(xs in proptest::collection::vec(0u64..24, 3)) {
            let perms = enumerate(4).unwrap();
            let a = &perms[xs[0] as usize];
            let b = &perms[xs[1] as usize];
            let c = &perms[xs[2] as usize];
            let left = a.compose(b).unwrap().compose(c).unwrap();
            let right = a.compose(&b.compose(c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn prop_index_round_trip(t in 1usize..=5, raw in 0usize..120) {
            let index = raw % factorial(t) as usize;
            let p = PermIndex { t, index }.to_permutation().unwrap();
            prop_assert_eq!(index_of(&p), PermIndex { t, index });
        }
    }
}
