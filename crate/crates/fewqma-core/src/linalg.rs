//! Dense complex linear algebra: matrices, pure states, orthonormal bases,
//! Hermitian eigendecomposition, and the subspace calculus (complements,
//! intersections, projectors) the rest of the crate is built on.
//!
//! Everything is double precision and dense; the practical ceiling is
//! [`AMBIENT_CAP`](crate::AMBIENT_CAP)-dimensional spaces.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use num_complex::Complex64;
// Inherent f64 methods shadow the trait once std is in the crate graph.
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::rng::CounterRng;
use crate::{TOL_RANK, TOL_STRUCTURAL};

/// Complex `1`.
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
/// Complex `0`.
pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);

fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Dense square or rectangular complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Zero matrix.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix {
            rows,
            cols,
            entries: vec![ZERO; rows * cols],
        }
    }

    /// Identity matrix.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, ONE);
        }
        m
    }

    /// Matrix from a row-major entry vector.
    pub fn from_entries(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                context: "matrix entries",
                expected: rows * cols,
                actual: entries.len(),
            });
        }
        Ok(ComplexMatrix {
            rows,
            cols,
            entries,
        })
    }

    /// Matrix whose entry at `(r, c)` is `f(r, c)`.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        ComplexMatrix {
            rows,
            cols,
            entries,
        }
    }

    /// Number of rows.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of columns.
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Entry at `(r, c)`.
    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.entries[r * self.cols + c]
    }

    /// Overwrite entry at `(r, c)`.
    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Complex64) {
        self.entries[r * self.cols + c] = v;
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).conj())
    }

    /// Matrix product `self · rhs`.
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == ZERO {
                    continue;
                }
                let row = k * rhs.cols;
                let out_row = i * rhs.cols;
                for j in 0..rhs.cols {
                    out.entries[out_row + j] += a * rhs.entries[row + j];
                }
            }
        }
        out
    }

    /// Matrix-vector product.
    pub fn matvec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.cols, v.len(), "matvec dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let row = &self.entries[i * self.cols..(i + 1) * self.cols];
                row.iter().zip(v).map(|(a, x)| a * x).sum()
            })
            .collect()
    }

    /// Entry-wise sum.
    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a + b)
            .collect();
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    /// Entry-wise difference.
    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a - b)
            .collect();
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    /// Scalar multiple.
    pub fn scale(&self, s: Complex64) -> Self {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|z| z * s).collect(),
        }
    }

    /// Trace.
    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    /// Frobenius norm.
    pub fn frobenius_norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Frobenius norm of `self − rhs`.
    pub fn distance(&self, rhs: &Self) -> f64 {
        self.sub(rhs).frobenius_norm()
    }

    /// Frobenius norm of the anti-Hermitian part `self − self†`.
    pub fn hermiticity_residual(&self) -> f64 {
        if self.rows != self.cols {
            return f64::INFINITY;
        }
        self.distance(&self.dagger())
    }

    /// Frobenius norm of `self†·self − I`.
    pub fn unitarity_residual(&self) -> f64 {
        if self.rows != self.cols {
            return f64::INFINITY;
        }
        self.dagger()
            .mul(self)
            .distance(&ComplexMatrix::identity(self.rows))
    }

    /// Frobenius norm of `self² − self` plus the hermiticity residual;
    /// near zero exactly for orthogonal projectors.
    pub fn projector_residual(&self) -> f64 {
        if self.rows != self.cols {
            return f64::INFINITY;
        }
        self.mul(self).distance(self) + self.hermiticity_residual()
    }

    /// `true` when the matrix is Hermitian within `tol`.
    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_residual() <= tol
    }

    /// `true` when the matrix is unitary within `tol`.
    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_residual() <= tol
    }

    /// `true` when the matrix is an orthogonal projector within `tol`.
    pub fn is_projector(&self, tol: f64) -> bool {
        self.projector_residual() <= tol
    }

    /// Quadratic form `⟨v| self |v⟩`, returned as its real part.
    ///
    /// Meaningful for Hermitian matrices, where the form is real.
    pub fn quadratic_form(&self, v: &[Complex64]) -> f64 {
        inner(v, &self.matvec(v)).re
    }
}

/// Kronecker (tensor) product.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let rows = a.rows() * b.rows();
    let cols = a.cols() * b.cols();
    let mut out = ComplexMatrix::zeros(rows, cols);
    for i1 in 0..a.rows() {
        for j1 in 0..a.cols() {
            let scale = a.get(i1, j1);
            if scale == ZERO {
                continue;
            }
            for i2 in 0..b.rows() {
                for j2 in 0..b.cols() {
                    out.set(
                        i1 * b.rows() + i2,
                        j1 * b.cols() + j2,
                        scale * b.get(i2, j2),
                    );
                }
            }
        }
    }
    out
}

/// Kronecker power `m^{⊗t}` (with `m^{⊗0} = [1]`).
pub fn kron_power(m: &ComplexMatrix, t: usize) -> ComplexMatrix {
    let mut out = ComplexMatrix::identity(1);
    for _ in 0..t {
        out = kron(&out, m);
    }
    out
}

/// Unit-norm state vector over an explicit tensor-factor layout.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: Vec<Complex64>,
    layout: Vec<usize>,
}

impl PureState {
    /// State from amplitudes that must already be unit norm (within the
    /// structural tolerance).
    pub fn new(amplitudes: Vec<Complex64>, layout: Vec<usize>) -> Result<Self> {
        let dim: usize = layout.iter().product();
        if dim != amplitudes.len() {
            return Err(Error::DimensionMismatch {
                context: "state layout",
                expected: dim,
                actual: amplitudes.len(),
            });
        }
        let n = norm(&amplitudes);
        if (n - 1.0).abs() > TOL_STRUCTURAL {
            return Err(Error::NotNormalized { norm: n });
        }
        Ok(PureState { amplitudes, layout })
    }

    /// State from arbitrary nonzero amplitudes, normalized.
    pub fn normalized(amplitudes: Vec<Complex64>, layout: Vec<usize>) -> Result<Self> {
        let dim: usize = layout.iter().product();
        if dim != amplitudes.len() {
            return Err(Error::DimensionMismatch {
                context: "state layout",
                expected: dim,
                actual: amplitudes.len(),
            });
        }
        let n = norm(&amplitudes);
        if n < 1e-300 {
            return Err(Error::NotNormalized { norm: n });
        }
        let amplitudes = amplitudes.iter().map(|z| z / n).collect();
        Ok(PureState { amplitudes, layout })
    }

    /// Computational basis state `|index⟩` over the given layout.
    pub fn basis_state(layout: Vec<usize>, index: usize) -> Self {
        let dim: usize = layout.iter().product();
        assert!(index < dim, "basis index out of range");
        let mut amplitudes = vec![ZERO; dim];
        amplitudes[index] = ONE;
        PureState { amplitudes, layout }
    }

    /// Total dimension.
    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    /// Factor dimensions.
    pub fn layout(&self) -> &[usize] {
        &self.layout
    }

    /// Amplitude vector.
    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// Inner product `⟨self|other⟩`.
    pub fn inner(&self, other: &PureState) -> Complex64 {
        inner(&self.amplitudes, &other.amplitudes)
    }

    /// Squared overlap `|⟨self|other⟩|²`.
    pub fn overlap_sq(&self, other: &PureState) -> f64 {
        self.inner(other).norm_sqr()
    }

    /// Tensor product, concatenating layouts.
    pub fn tensor(&self, other: &PureState) -> PureState {
        let mut amplitudes = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.amplitudes {
            for b in &other.amplitudes {
                amplitudes.push(a * b);
            }
        }
        let mut layout = self.layout.clone();
        layout.extend_from_slice(&other.layout);
        PureState { amplitudes, layout }
    }

    /// Reinterpret the factor structure without touching amplitudes.
    pub fn with_layout(self, layout: Vec<usize>) -> Result<PureState> {
        let dim: usize = layout.iter().product();
        if dim != self.amplitudes.len() {
            return Err(Error::DimensionMismatch {
                context: "state relayout",
                expected: self.amplitudes.len(),
                actual: dim,
            });
        }
        Ok(PureState {
            amplitudes: self.amplitudes,
            layout,
        })
    }

    /// Apply a unitary acting on the contiguous factor range `factors`,
    /// identity elsewhere.
    pub fn apply_unitary_on_factors(
        &self,
        op: &ComplexMatrix,
        factors: Range<usize>,
    ) -> Result<PureState> {
        let amplitudes = apply_on_factors(&self.amplitudes, &self.layout, factors, op)?;
        Ok(PureState {
            amplitudes,
            layout: self.layout.clone(),
        })
    }

    /// Distance `min_φ ‖self − e^{iφ}·other‖`, i.e. up to a global phase.
    pub fn distance_up_to_phase(&self, other: &PureState) -> f64 {
        let ov = self.inner(other);
        // The minimizing phase aligns the overlap with the positive real
        // axis; forming the aligned difference explicitly avoids the
        // cancellation of √(2−2|⟨a|b⟩|) near zero distance.
        let phase = if ov.norm() > 1e-300 {
            ov.conj() / ov.norm()
        } else {
            ONE
        };
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - phase * b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

/// Apply `op` to the contiguous factor range `factors` of a raw amplitude
/// vector with the given layout. `op` need not be unitary.
pub fn apply_on_factors(
    amplitudes: &[Complex64],
    layout: &[usize],
    factors: Range<usize>,
    op: &ComplexMatrix,
) -> Result<Vec<Complex64>> {
    let dim: usize = layout.iter().product();
    if dim != amplitudes.len() {
        return Err(Error::DimensionMismatch {
            context: "factor application layout",
            expected: dim,
            actual: amplitudes.len(),
        });
    }
    if factors.end > layout.len() || factors.start > factors.end {
        return Err(Error::InvalidArgument {
            context: "factor range out of bounds",
        });
    }
    let mid: usize = layout[factors.clone()].iter().product();
    if op.rows() != mid || op.cols() != mid {
        return Err(Error::DimensionMismatch {
            context: "factor operator dimension",
            expected: mid,
            actual: op.rows(),
        });
    }
    let right: usize = layout[factors.end..].iter().product();
    let left = dim / (mid * right);
    let mut out = vec![ZERO; dim];
    let mut block = vec![ZERO; mid];
    for l in 0..left {
        for r in 0..right {
            for m in 0..mid {
                block[m] = amplitudes[(l * mid + m) * right + r];
            }
            let mapped = op.matvec(&block);
            for m in 0..mid {
                out[(l * mid + m) * right + r] = mapped[m];
            }
        }
    }
    Ok(out)
}

/// Orthonormal column set spanning a subspace of an ambient space.
#[derive(Debug, Clone)]
pub struct SubspaceBasis {
    ambient_dim: usize,
    vectors: Vec<PureState>,
}

impl SubspaceBasis {
    /// Basis from vectors that must be pairwise orthonormal within the
    /// structural tolerance. Vectors are stored exactly as given.
    pub fn new(ambient_dim: usize, vectors: Vec<PureState>) -> Result<Self> {
        let mut worst = 0.0f64;
        for (i, v) in vectors.iter().enumerate() {
            if v.dim() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    context: "basis vector dimension",
                    expected: ambient_dim,
                    actual: v.dim(),
                });
            }
            for w in &vectors[i + 1..] {
                worst = worst.max(v.inner(w).norm());
            }
        }
        if worst > TOL_STRUCTURAL {
            return Err(Error::NotOrthonormal { residual: worst });
        }
        Ok(SubspaceBasis {
            ambient_dim,
            vectors,
        })
    }

    /// Empty basis (the zero subspace).
    pub fn empty(ambient_dim: usize) -> Self {
        SubspaceBasis {
            ambient_dim,
            vectors: Vec::new(),
        }
    }

    /// Basis from vectors known orthonormal by construction; skips the Gram
    /// validation pass.
    pub(crate) fn from_orthonormal_unchecked(ambient_dim: usize, vectors: Vec<PureState>) -> Self {
        SubspaceBasis {
            ambient_dim,
            vectors,
        }
    }

    /// Ambient dimension.
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Subspace dimension.
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    /// Basis vectors (columns).
    pub fn vectors(&self) -> &[PureState] {
        &self.vectors
    }

    /// Column matrix whose `j`-th column is the `j`-th basis vector.
    pub fn column_matrix(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.ambient_dim, self.vectors.len(), |r, c| {
            self.vectors[c].amplitudes()[r]
        })
    }

    /// Orthogonal projector onto the spanned subspace.
    pub fn projector(&self) -> ComplexMatrix {
        let mut p = ComplexMatrix::zeros(self.ambient_dim, self.ambient_dim);
        for v in &self.vectors {
            let a = v.amplitudes();
            for r in 0..self.ambient_dim {
                if a[r] == ZERO {
                    continue;
                }
                for c in 0..self.ambient_dim {
                    let add = a[r] * a[c].conj();
                    let cur = p.get(r, c);
                    p.set(r, c, cur + add);
                }
            }
        }
        p
    }

    /// Component of `v` orthogonal to the spanned subspace.
    pub fn reject(&self, v: &[Complex64]) -> Vec<Complex64> {
        let mut w = v.to_vec();
        for b in &self.vectors {
            let c = inner(b.amplitudes(), &w);
            for (wi, bi) in w.iter_mut().zip(b.amplitudes()) {
                *wi -= c * bi;
            }
        }
        w
    }
}

/// Orthonormalize `vectors` (arbitrary, possibly dependent) into a basis of
/// their span; vectors whose residual norm falls below `tol` are dropped.
pub fn gram_schmidt(ambient_dim: usize, vectors: &[Vec<Complex64>], tol: f64) -> SubspaceBasis {
    let mut kept: Vec<Vec<Complex64>> = Vec::new();
    for v in vectors {
        assert_eq!(v.len(), ambient_dim, "gram_schmidt vector dimension");
        let mut w = v.clone();
        for b in &kept {
            let c = inner(b, &w);
            for (wi, bi) in w.iter_mut().zip(b) {
                *wi -= c * bi;
            }
        }
        if norm(&w) < tol {
            continue;
        }
        // Second pass scrubs the rounding left by the first.
        for b in &kept {
            let c = inner(b, &w);
            for (wi, bi) in w.iter_mut().zip(b) {
                *wi -= c * bi;
            }
        }
        let n = norm(&w);
        if n < tol {
            continue;
        }
        for wi in w.iter_mut() {
            *wi /= n;
        }
        kept.push(w);
    }
    let vectors = kept
        .into_iter()
        .map(|w| PureState {
            amplitudes: w,
            layout: vec![ambient_dim],
        })
        .collect();
    SubspaceBasis {
        ambient_dim,
        vectors,
    }
}

/// Orthonormal vectors extending `existing` using standard-basis candidates;
/// returns exactly `ambient_dim − existing.len()` fill vectors.
fn orthonormal_fill(existing: &[&[Complex64]], ambient_dim: usize) -> Vec<Vec<Complex64>> {
    let needed = ambient_dim - existing.len();
    let mut fills: Vec<Vec<Complex64>> = Vec::with_capacity(needed);
    for cand in 0..ambient_dim {
        if fills.len() == needed {
            break;
        }
        let mut w = vec![ZERO; ambient_dim];
        w[cand] = ONE;
        for _pass in 0..2 {
            for b in existing {
                let c = inner(b, &w);
                for (wi, bi) in w.iter_mut().zip(*b) {
                    *wi -= c * bi;
                }
            }
            for b in &fills {
                let c = inner(b, &w);
                for (wi, bi) in w.iter_mut().zip(b) {
                    *wi -= c * bi;
                }
            }
        }
        let n = norm(&w);
        if n < TOL_RANK {
            continue;
        }
        for wi in w.iter_mut() {
            *wi /= n;
        }
        fills.push(w);
    }
    assert_eq!(
        fills.len(),
        needed,
        "standard basis always completes an orthonormal set"
    );
    fills
}

/// Orthonormal basis of the orthogonal complement of `b`.
pub fn orth_complement(b: &SubspaceBasis) -> SubspaceBasis {
    let existing: Vec<&[Complex64]> = b.vectors.iter().map(|v| v.amplitudes()).collect();
    let fills = orthonormal_fill(&existing, b.ambient_dim);
    let vectors = fills
        .into_iter()
        .map(|w| PureState {
            amplitudes: w,
            layout: vec![b.ambient_dim],
        })
        .collect();
    SubspaceBasis {
        ambient_dim: b.ambient_dim,
        vectors,
    }
}

/// Basis of the intersection `A ∩ B`.
///
/// Directions are the right singular vectors of the cross-Gram matrix `A†B`
/// whose singular values lie within `tol` of 1.
pub fn intersect(a: &SubspaceBasis, b: &SubspaceBasis, tol: f64) -> Result<SubspaceBasis> {
    if a.ambient_dim != b.ambient_dim {
        return Err(Error::DimensionMismatch {
            context: "intersection ambient space",
            expected: a.ambient_dim,
            actual: b.ambient_dim,
        });
    }
    if a.dim() == 0 || b.dim() == 0 {
        return Ok(SubspaceBasis::empty(a.ambient_dim));
    }
    let cross = a.column_matrix().dagger().mul(&b.column_matrix());
    let gram = cross.dagger().mul(&cross);
    let eig = eigh(&gram)?;
    let b_cols = b.column_matrix();
    let mut vectors = Vec::new();
    for (idx, &lambda) in eig.eigenvalues.iter().enumerate() {
        let sigma = lambda.max(0.0).sqrt();
        if sigma < 1.0 - tol {
            continue;
        }
        let y = eig.eigenvectors.vectors()[idx].amplitudes();
        let dir = b_cols.matvec(y);
        let n = norm(&dir);
        let dir = dir.iter().map(|z| z / n).collect();
        vectors.push(PureState {
            amplitudes: dir,
            layout: vec![a.ambient_dim],
        });
    }
    Ok(SubspaceBasis {
        ambient_dim: a.ambient_dim,
        vectors,
    })
}

/// Unitary completion: a unitary whose column at `positions[j]` equals the
/// `j`-th column of `columns` bit-for-bit, remaining columns an arbitrary
/// orthonormal completion.
///
/// Non-orthonormal partial sets are rejected when constructing the
/// [`SubspaceBasis`] argument.
pub fn complete_unitary(
    columns: &SubspaceBasis,
    positions: &[usize],
    dim: usize,
) -> Result<ComplexMatrix> {
    if columns.ambient_dim() != dim {
        return Err(Error::DimensionMismatch {
            context: "unitary completion ambient space",
            expected: dim,
            actual: columns.ambient_dim(),
        });
    }
    if positions.len() != columns.dim() {
        return Err(Error::DimensionMismatch {
            context: "unitary completion positions",
            expected: columns.dim(),
            actual: positions.len(),
        });
    }
    let mut seen = vec![false; dim];
    for &p in positions {
        if p >= dim || seen[p] {
            return Err(Error::InvalidArgument {
                context: "completion positions must be distinct and in range",
            });
        }
        seen[p] = true;
    }
    let existing: Vec<&[Complex64]> = columns.vectors().iter().map(|v| v.amplitudes()).collect();
    let fills = orthonormal_fill(&existing, dim);
    let mut u = ComplexMatrix::zeros(dim, dim);
    for (j, &p) in positions.iter().enumerate() {
        for r in 0..dim {
            u.set(r, p, existing[j][r]);
        }
    }
    let mut fill_iter = fills.into_iter();
    for p in 0..dim {
        if seen[p] {
            continue;
        }
        let w = fill_iter.next().expect("fill count matches free positions");
        for r in 0..dim {
            u.set(r, p, w[r]);
        }
    }
    Ok(u)
}

/// Eigendecomposition of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct Eigendecomposition {
    /// Eigenvalues sorted descending.
    pub eigenvalues: Vec<f64>,
    /// Matching eigenvectors, orthonormal.
    pub eigenvectors: SubspaceBasis,
}

const JACOBI_MAX_SWEEPS: usize = 64;

fn off_diagonal_mass(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a.get(i, j).norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// Hermitian eigendecomposition by cyclic Jacobi rotations.
///
/// Sweeps run until the off-diagonal Frobenius mass drops below
/// `1e−12·max(1, ‖H‖_F)`. Degenerate eigenvalues get an arbitrary
/// orthonormal basis of their eigenspace; downstream code compares
/// subspaces, never individual vectors.
pub fn eigh(h: &ComplexMatrix) -> Result<Eigendecomposition> {
    if h.rows() != h.cols() {
        return Err(Error::DimensionMismatch {
            context: "eigh input must be square",
            expected: h.rows(),
            actual: h.cols(),
        });
    }
    let residual = h.hermiticity_residual();
    if residual > TOL_STRUCTURAL {
        return Err(Error::NotHermitian { residual });
    }
    let n = h.rows();
    // Work on the exactly Hermitian average; the residual above is noise.
    let mut a = ComplexMatrix::from_fn(n, n, |r, c| (h.get(r, c) + h.get(c, r).conj()) * 0.5);
    let mut v = ComplexMatrix::identity(n);
    let threshold = 1e-12 * a.frobenius_norm().max(1.0);

    let mut converged = off_diagonal_mass(&a) <= threshold;
    let mut sweeps = 0;
    while !converged && sweeps < JACOBI_MAX_SWEEPS {
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a.get(p, q);
                let r = apq.norm();
                if r < 1e-300 {
                    continue;
                }
                let phase = apq / r;
                let alpha = a.get(p, p).re;
                let gamma = a.get(q, q).re;
                let tau = (gamma - alpha) / (2.0 * r);
                // Smaller-magnitude root of t² − 2τt − 1 = 0.
                let t = if tau >= 0.0 {
                    -1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let s_phase = phase * s;
                // Columns: A ← A·U with U = [[c, −s·e^{iφ}], [s·e^{−iφ}, c]]
                for i in 0..n {
                    let aip = a.get(i, p);
                    let aiq = a.get(i, q);
                    a.set(i, p, aip * c + aiq * s_phase.conj());
                    a.set(i, q, aiq * c - aip * s_phase);
                }
                // Rows: A ← U†·A
                for j in 0..n {
                    let apj = a.get(p, j);
                    let aqj = a.get(q, j);
                    a.set(p, j, apj * c + aqj * s_phase);
                    a.set(q, j, aqj * c - apj * s_phase.conj());
                }
                // Pin the exact zeros and real diagonal.
                a.set(p, q, ZERO);
                a.set(q, p, ZERO);
                let app = a.get(p, p);
                let aqq = a.get(q, q);
                a.set(p, p, Complex64::new(app.re, 0.0));
                a.set(q, q, Complex64::new(aqq.re, 0.0));
                // Accumulate eigenvectors: V ← V·U
                for i in 0..n {
                    let vip = v.get(i, p);
                    let viq = v.get(i, q);
                    v.set(i, p, vip * c + viq * s_phase.conj());
                    v.set(i, q, viq * c - vip * s_phase);
                }
            }
        }
        sweeps += 1;
        converged = off_diagonal_mass(&a) <= threshold;
    }
    if !converged {
        return Err(Error::NoConvergence {
            sweeps,
            off_diagonal: off_diagonal_mass(&a),
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a.get(j, j).re.total_cmp(&a.get(i, i).re).then(i.cmp(&j)));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| a.get(i, i).re).collect();
    let vectors = order
        .iter()
        .map(|&col| PureState {
            amplitudes: (0..n).map(|r| v.get(r, col)).collect(),
            layout: vec![n],
        })
        .collect();
    Ok(Eigendecomposition {
        eigenvalues,
        eigenvectors: SubspaceBasis {
            ambient_dim: n,
            vectors,
        },
    })
}

/// Reconstruct `Σ λᵢ vᵢvᵢ†` from a decomposition.
pub fn reconstruct(eig: &Eigendecomposition) -> ComplexMatrix {
    let n = eig.eigenvectors.ambient_dim();
    let mut out = ComplexMatrix::zeros(n, n);
    for (lambda, v) in eig.eigenvalues.iter().zip(eig.eigenvectors.vectors()) {
        let a = v.amplitudes();
        for r in 0..n {
            for c in 0..n {
                let cur = out.get(r, c);
                out.set(r, c, cur + a[r] * a[c].conj() * *lambda);
            }
        }
    }
    out
}

/// Random unit state with Gaussian amplitudes.
pub fn random_unit_state(layout: Vec<usize>, rng: &mut CounterRng) -> PureState {
    let dim: usize = layout.iter().product();
    loop {
        let v = rng.gaussian_vector(dim);
        if norm(&v) > 1e-6 {
            return PureState::normalized(v, layout.clone()).expect("nonzero Gaussian vector");
        }
    }
}

/// Random unit state inside the span of `basis` (Gaussian coefficients).
pub fn random_state_in(basis: &SubspaceBasis, rng: &mut CounterRng) -> Result<PureState> {
    if basis.dim() == 0 {
        return Err(Error::InvalidArgument {
            context: "cannot sample from the zero subspace",
        });
    }
    loop {
        let coeffs = rng.gaussian_vector(basis.dim());
        let mut v = vec![ZERO; basis.ambient_dim()];
        for (c, b) in coeffs.iter().zip(basis.vectors()) {
            for (vi, bi) in v.iter_mut().zip(b.amplitudes()) {
                *vi += c * bi;
            }
        }
        if norm(&v) > 1e-6 {
            return PureState::normalized(v, vec![basis.ambient_dim()]);
        }
    }
}

/// Random unit state orthogonal to the span of `basis`.
pub fn random_state_orthogonal_to(
    basis: &SubspaceBasis,
    rng: &mut CounterRng,
) -> Result<PureState> {
    if basis.dim() >= basis.ambient_dim() {
        return Err(Error::InvalidArgument {
            context: "orthogonal complement is the zero subspace",
        });
    }
    loop {
        let v = rng.gaussian_vector(basis.ambient_dim());
        let w = basis.reject(&basis.reject(&v));
        if norm(&w) > 1e-6 {
            return PureState::normalized(w, vec![basis.ambient_dim()]);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::TOL_DERIVED;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn pauli_x() -> ComplexMatrix {
        ComplexMatrix::from_entries(2, 2, vec![ZERO, ONE, ONE, ZERO]).unwrap()
    }

    #[test]
    fn kron_identities() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(kron(&i2, &i2), ComplexMatrix::identity(4));

        // |1⟩⟨1| ⊗ I₂ = diag(0, 0, 1, 1)
        let p1 = ComplexMatrix::from_entries(2, 2, vec![ZERO, ZERO, ZERO, ONE]).unwrap();
        let acc = kron(&p1, &i2);
        for r in 0..4 {
            for col in 0..4 {
                let expect = if r == col && r >= 2 { ONE } else { ZERO };
                assert_eq!(acc.get(r, col), expect);
            }
        }
    }

    #[test]
    fn kron_applies_by_index_arithmetic() {
        // X⊗X|00⟩ = |11⟩
        let xx = kron(&pauli_x(), &pauli_x());
        let out = xx.matvec(&[ONE, ZERO, ZERO, ZERO]);
        assert_eq!(out, vec![ZERO, ZERO, ZERO, ONE]);

        // Oracle: kron entry (i1·n2+i2, j1·m2+j2) = a[i1,j1]·b[i2,j2].
        let mut rng = CounterRng::new(5);
        let a = ComplexMatrix::from_fn(3, 2, |_, _| rng.gaussian_complex());
        let b = ComplexMatrix::from_fn(2, 4, |_, _| rng.gaussian_complex());
        let k = kron(&a, &b);
        for i1 in 0..3 {
            for j1 in 0..2 {
                for i2 in 0..2 {
                    for j2 in 0..4 {
                        let got = k.get(i1 * 2 + i2, j1 * 4 + j2);
                        let expect = a.get(i1, j1) * b.get(i2, j2);
                        assert!((got - expect).norm() == 0.0);
                    }
                }
            }
        }
    }

    #[test]
    fn eigh_identity_and_pauli() {
        let eig = eigh(&ComplexMatrix::identity(3)).unwrap();
        assert_eq!(eig.eigenvalues, vec![1.0, 1.0, 1.0]);

        let eig = eigh(&pauli_x()).unwrap();
        assert!((eig.eigenvalues[0] - 1.0).abs() < 1e-14);
        assert!((eig.eigenvalues[1] + 1.0).abs() < 1e-14);
    }

    #[test]
    fn eigh_rejects_non_hermitian() {
        let m = ComplexMatrix::from_entries(2, 2, vec![ONE, ONE, ZERO, ONE]).unwrap();
        assert!(matches!(eigh(&m), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn eigh_reconstructs_random_hermitian() {
        for (dim, seed) in [(4usize, 1u64), (16, 2), (64, 3)] {
            let mut rng = CounterRng::new(seed);
            let g = ComplexMatrix::from_fn(dim, dim, |_, _| rng.gaussian_complex());
            let h = g.add(&g.dagger()).scale(c(0.5, 0.0));
            let eig = eigh(&h).unwrap();
            let back = reconstruct(&eig);
            assert!(
                back.distance(&h) <= TOL_DERIVED,
                "dim {dim}: residual {}",
                back.distance(&h)
            );
            // Eigenvectors orthonormal.
            let vmat = eig.eigenvectors.column_matrix();
            assert!(vmat.unitarity_residual() <= 1e-12);
        }
    }

    #[test]
    fn gram_schmidt_collapses_dependent_vectors() {
        let vs = vec![vec![ONE, ZERO], vec![c(2.0, 0.0), ZERO]];
        let basis = gram_schmidt(2, &vs, TOL_RANK);
        assert_eq!(basis.dim(), 1);
        assert_eq!(basis.vectors()[0].amplitudes(), &[ONE, ZERO]);
    }

    #[test]
    fn gram_schmidt_keeps_orthonormal_input() {
        let s = core::f64::consts::FRAC_1_SQRT_2;
        let vs = vec![vec![c(s, 0.0), c(s, 0.0)], vec![c(s, 0.0), c(-s, 0.0)]];
        let basis = gram_schmidt(2, &vs, TOL_RANK);
        assert_eq!(basis.dim(), 2);
        for (b, v) in basis.vectors().iter().zip(&vs) {
            let diff: f64 = b
                .amplitudes()
                .iter()
                .zip(v)
                .map(|(x, y)| (x - y).norm_sqr())
                .sum();
            assert!(diff.sqrt() < 1e-12);
        }
    }

    #[test]
    fn gram_schmidt_rank_matches_elimination_oracle() {
        // Independent rank oracle: Gaussian elimination with partial pivoting.
        fn rank_oracle(mut rows: Vec<Vec<Complex64>>, tol: f64) -> usize {
            let ncols = rows[0].len();
            let mut rank = 0;
            for col in 0..ncols {
                let Some(pivot) = (rank..rows.len())
                    .max_by(|&a, &b| rows[a][col].norm().total_cmp(&rows[b][col].norm()))
                else {
                    break;
                };
                if rows[pivot][col].norm() < tol {
                    continue;
                }
                rows.swap(rank, pivot);
                let inv = rows[rank][col];
                for r in (rank + 1)..rows.len() {
                    let factor = rows[r][col] / inv;
                    for cidx in col..ncols {
                        let sub = factor * rows[rank][cidx];
                        rows[r][cidx] -= sub;
                    }
                }
                rank += 1;
            }
            rank
        }

        let mut rng = CounterRng::new(9);
        for trial in 0..20 {
            let dim = 4;
            let count = 5;
            let vs: Vec<Vec<Complex64>> = (0..count).map(|_| rng.gaussian_vector(dim)).collect();
            let basis = gram_schmidt(dim, &vs, TOL_RANK);
            let oracle = rank_oracle(vs, TOL_RANK);
            assert!(basis.dim() <= dim);
            assert_eq!(basis.dim(), oracle, "trial {trial}");
        }
    }

    #[test]
    fn complete_unitary_from_one_column() {
        let e0 = PureState::basis_state(vec![4], 0);
        let basis = SubspaceBasis::new(4, vec![e0]).unwrap();
        let u = complete_unitary(&basis, &[0], 4).unwrap();
        assert!(u.unitarity_residual() <= TOL_STRUCTURAL);
        assert_eq!(u.get(0, 0), ONE);
        for r in 1..4 {
            assert_eq!(u.get(r, 0), ZERO);
        }
    }

    #[test]
    fn complete_unitary_full_permutation() {
        // Full assignment: basis states permuted → that permutation matrix.
        let perm = [2usize, 0, 1];
        let cols: Vec<PureState> = perm
            .iter()
            .map(|&i| PureState::basis_state(vec![3], i))
            .collect();
        let basis = SubspaceBasis::new(3, cols).unwrap();
        let u = complete_unitary(&basis, &[0, 1, 2], 3).unwrap();
        for (j, &i) in perm.iter().enumerate() {
            assert_eq!(u.get(i, j), ONE);
        }
        assert!(u.unitarity_residual() == 0.0);
    }

    #[test]
    fn complete_unitary_random_columns_bit_for_bit() {
        let mut rng = CounterRng::new(21);
        let v1 = PureState::normalized(rng.gaussian_vector(8), vec![8]).unwrap();
        let b1 = SubspaceBasis::new(8, vec![v1.clone()]).unwrap();
        let rej = b1.reject(&b1.reject(&rng.gaussian_vector(8)));
        let v2 = PureState::normalized(rej, vec![8]).unwrap();
        let basis = SubspaceBasis::new(8, vec![v1.clone(), v2.clone()]).unwrap();
        let u = complete_unitary(&basis, &[3, 5], 8).unwrap();
        assert!(u.unitarity_residual() <= TOL_STRUCTURAL);
        for r in 0..8 {
            assert_eq!(u.get(r, 3), v1.amplitudes()[r]);
            assert_eq!(u.get(r, 5), v2.amplitudes()[r]);
        }
    }

    #[test]
    fn complete_unitary_rejects_bad_positions() {
        let e0 = PureState::basis_state(vec![2], 0);
        let basis = SubspaceBasis::new(2, vec![e0]).unwrap();
        assert!(complete_unitary(&basis, &[2], 2).is_err());
        assert!(complete_unitary(&basis, &[0, 0], 2).is_err());
    }

    #[test]
    fn subspace_basis_rejects_non_orthonormal() {
        let v = PureState::basis_state(vec![2], 0);
        let res = SubspaceBasis::new(2, vec![v.clone(), v]);
        assert!(matches!(res, Err(Error::NotOrthonormal { .. })));
    }

    #[test]
    fn complement_of_e0_is_e1() {
        let e0 = PureState::basis_state(vec![2], 0);
        let basis = SubspaceBasis::new(2, vec![e0]).unwrap();
        let comp = orth_complement(&basis);
        assert_eq!(comp.dim(), 1);
        assert_eq!(comp.vectors()[0].amplitudes(), &[ZERO, ONE]);
    }

    #[test]
    fn intersection_of_coordinate_planes() {
        let e = |i: usize| PureState::basis_state(vec![3], i);
        let a = SubspaceBasis::new(3, vec![e(0), e(1)]).unwrap();
        let b = SubspaceBasis::new(3, vec![e(1), e(2)]).unwrap();
        let cap = intersect(&a, &b, TOL_RANK).unwrap();
        assert_eq!(cap.dim(), 1);
        assert!(cap.vectors()[0].overlap_sq(&e(1)) > 1.0 - 1e-12);
    }

    #[test]
    fn projector_is_idempotent_hermitian() {
        let mut rng = CounterRng::new(4);
        let vs: Vec<Vec<Complex64>> = (0..3).map(|_| rng.gaussian_vector(6)).collect();
        let basis = gram_schmidt(6, &vs, TOL_RANK);
        let p = basis.projector();
        assert!(p.projector_residual() <= TOL_STRUCTURAL);
        assert!((p.trace().re - basis.dim() as f64).abs() < 1e-12);
    }

    #[test]
    fn apply_on_factors_matches_full_kron() {
        let mut rng = CounterRng::new(8);
        let layout = vec![2usize, 3, 2];
        let dim: usize = layout.iter().product();
        let state = random_unit_state(layout.clone(), &mut rng);
        let g = ComplexMatrix::from_fn(3, 3, |_, _| rng.gaussian_complex());

        let blocked = apply_on_factors(state.amplitudes(), &layout, 1..2, &g).unwrap();
        let full = kron(&kron(&ComplexMatrix::identity(2), &g), &ComplexMatrix::identity(2));
        let direct = full.matvec(state.amplitudes());
        let diff: f64 = blocked
            .iter()
            .zip(&direct)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt();
        assert!(diff < 1e-13, "blocked vs kron application: {diff}");
        assert_eq!(dim, blocked.len());
    }

    #[test]
    fn pure_state_norm_validation() {
        assert!(PureState::new(vec![ONE, ONE], vec![2]).is_err());
        assert!(PureState::new(vec![ONE, ZERO], vec![2]).is_ok());
        let s = PureState::normalized(vec![ONE, ONE], vec![2]).unwrap();
        assert!((s.amplitudes()[0].re - core::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
    }
}
