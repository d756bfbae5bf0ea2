//! Algebras presented by structure constants.
//!
//! An algebra here is a bilinear product on ℚⁿ given by a rank-3 tensor:
//! `e_i · e_j = Σ_k γ[i][j][k] e_k`.  Construction does *not* require
//! associativity — the checker has to be able to run on bad input, and the
//! invariant solvers' linear systems are formally meaningful for any
//! bilinear product — but it does record the first violating basis triple
//! so callers can refuse or report it.

use crate::linmap::LinearMap;
use crate::matrix::MatrixQ;
use crate::rational::Rational;
use crate::subspace::SubspaceQ;
use num::{One, Zero};
use thiserror::Error;

/// Default upper bound on the dimension accepted by [`Algebra::new`].
///
/// The solvers are dense and exact; beyond a few dozen basis vectors the
/// n³×n² systems stop being interactive.  The cap is a guard rail, not a
/// hard algorithmic limit.
pub const DEFAULT_DIM_CAP: usize = 16;

/// Coordinates of an algebra element over the basis `e_1, …, e_n`.
pub type AlgebraElement = Vec<Rational>;

/// Errors from constructing algebras and ideals.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("dimension {dim} outside supported range 1..={cap}")]
    DimensionOutOfRange { dim: usize, cap: usize },
    #[error("subspace is not a two-sided ideal")]
    NotAnIdeal,
}

/// The rank-3 tensor γ with `e_i · e_j = Σ_k γ[i][j][k] e_k`.
///
/// Indices are 0-based internally; user-facing layers (catalog, CLI,
/// reports) speak 1-based like the published tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstants {
    n: usize,
    /// Flat layout `γ[i][j][k]` at `(i*n + j)*n + k`.
    gamma: Vec<Rational>,
}

impl StructureConstants {
    /// The zero product in dimension `n`.
    pub fn zero(n: usize) -> Self {
        StructureConstants {
            n,
            gamma: vec![Rational::zero(); n * n * n],
        }
    }

    /// Builds from a flat tensor laid out `(i*n + j)*n + k`.
    ///
    /// # Panics
    /// If `gamma.len() != n³`.
    pub fn from_flat(n: usize, gamma: Vec<Rational>) -> Self {
        assert_eq!(gamma.len(), n * n * n, "structure tensor has wrong length");
        StructureConstants { n, gamma }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn gamma(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.gamma[(i * self.n + j) * self.n + k]
    }

    /// Sets the coefficient of `e_k` in `e_i · e_j` (0-based).
    ///
    /// # Panics
    /// If an index is out of range.
    pub fn set(&mut self, i: usize, j: usize, k: usize, c: Rational) {
        assert!(
            i < self.n && j < self.n && k < self.n,
            "structure constant index out of range"
        );
        self.gamma[(i * self.n + j) * self.n + k] = c;
    }

    /// All constants scaled by `f` (the product `x ∗ y = f·(x·y)`).
    pub fn scale(&self, f: &Rational) -> StructureConstants {
        StructureConstants {
            n: self.n,
            gamma: self.gamma.iter().map(|g| g * f).collect(),
        }
    }

    /// Structure constants in the basis `f_i = Σ_j p[j][i] e_j` (columns of
    /// `p` are the new basis vectors in old coordinates).  Returns `None`
    /// when `p` is singular.
    pub fn change_basis(&self, p: &MatrixQ) -> Option<StructureConstants> {
        assert_eq!(p.rows(), self.n, "transition matrix has wrong size");
        assert_eq!(p.cols(), self.n, "transition matrix has wrong size");
        let p_inv = p.inverse()?;
        let n = self.n;
        let mut out = StructureConstants::zero(n);
        for i in 0..n {
            let fi: Vec<Rational> = (0..n).map(|r| p.at(r, i).clone()).collect();
            for j in 0..n {
                let fj: Vec<Rational> = (0..n).map(|r| p.at(r, j).clone()).collect();
                let prod_old = multiply_raw(self, &fi, &fj);
                let prod_new = p_inv.apply(&prod_old);
                for (k, c) in prod_new.into_iter().enumerate() {
                    out.set(i, j, k, c);
                }
            }
        }
        Some(out)
    }
}

/// Product of two coordinate vectors under a structure tensor.
fn multiply_raw(sc: &StructureConstants, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
    let n = sc.dim();
    let mut out = vec![Rational::zero(); n];
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            if yj.is_zero() {
                continue;
            }
            let f = xi * yj;
            for (k, slot) in out.iter_mut().enumerate() {
                let g = sc.gamma(i, j, k);
                if !g.is_zero() {
                    *slot += g * &f;
                }
            }
        }
    }
    out
}

/// A finite-dimensional algebra: structure constants plus the cached result
/// of the associativity scan.  Immutable after construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    sc: StructureConstants,
    /// Lexicographically first basis triple (1-based) where
    /// `(e_i e_j) e_k ≠ e_i (e_j e_k)`, if any.
    first_violation: Option<(usize, usize, usize)>,
}

impl Algebra {
    /// Bundles structure constants into an algebra, dimension-checked
    /// against [`DEFAULT_DIM_CAP`].  Associativity is scanned once here and
    /// cached; non-associative input is accepted.
    pub fn new(sc: StructureConstants) -> Result<Algebra, AlgebraError> {
        Algebra::with_dim_cap(sc, DEFAULT_DIM_CAP)
    }

    /// As [`Algebra::new`] with a caller-chosen dimension cap.
    pub fn with_dim_cap(sc: StructureConstants, cap: usize) -> Result<Algebra, AlgebraError> {
        let n = sc.dim();
        if n == 0 || n > cap {
            return Err(AlgebraError::DimensionOutOfRange { dim: n, cap });
        }
        let first_violation = find_associativity_violation(&sc);
        Ok(Algebra {
            sc,
            first_violation,
        })
    }

    pub fn dim(&self) -> usize {
        self.sc.dim()
    }

    pub fn structure_constants(&self) -> &StructureConstants {
        &self.sc
    }

    /// Coordinates of the basis vector `e_{i+1}` (0-based index).
    pub fn basis_element(&self, i: usize) -> AlgebraElement {
        let mut v = vec![Rational::zero(); self.dim()];
        v[i] = Rational::one();
        v
    }

    /// The product `x · y`.
    ///
    /// # Panics
    /// If either vector's length differs from the dimension.
    pub fn multiply(&self, x: &[Rational], y: &[Rational]) -> AlgebraElement {
        assert_eq!(x.len(), self.dim(), "element length mismatch");
        assert_eq!(y.len(), self.dim(), "element length mismatch");
        multiply_raw(&self.sc, x, y)
    }

    pub fn is_associative(&self) -> bool {
        self.first_violation.is_none()
    }

    /// Lexicographically first basis triple `(i, j, k)` (1-based) violating
    /// `(e_i e_j) e_k = e_i (e_j e_k)`, or `None` for associative algebras.
    pub fn first_nonassociative_triple(&self) -> Option<(usize, usize, usize)> {
        self.first_violation
    }

    /// Left multiplication operator `L_x : y ↦ x·y` as a matrix (column
    /// `j` holds the coordinates of `x·e_j`).
    pub fn left_mult(&self, x: &[Rational]) -> LinearMap {
        let n = self.dim();
        let mut m = MatrixQ::zeros(n, n);
        for j in 0..n {
            let col = self.multiply(x, &self.basis_element(j));
            for (k, c) in col.into_iter().enumerate() {
                m.set(k, j, c);
            }
        }
        LinearMap::new(m)
    }

    /// Right multiplication operator `R_x : y ↦ y·x`.
    pub fn right_mult(&self, x: &[Rational]) -> LinearMap {
        let n = self.dim();
        let mut m = MatrixQ::zeros(n, n);
        for j in 0..n {
            let col = self.multiply(&self.basis_element(j), x);
            for (k, c) in col.into_iter().enumerate() {
                m.set(k, j, c);
            }
        }
        LinearMap::new(m)
    }

    /// Two-sided annihilator of a subspace: `{x : x·v = v·x = 0 for all v
    /// in s}`, computed as the nullspace of the stacked left/right
    /// multiplication conditions against a basis of `s`.
    ///
    /// # Panics
    /// If `s` does not live in the coefficient space.
    pub fn centralizer(&self, s: &SubspaceQ) -> SubspaceQ {
        let n = self.dim();
        assert_eq!(s.ambient_dim(), n, "subspace not in coefficient space");
        // Unknown x has n coordinates; each basis vector v of s contributes
        // the 2n conditions (x·v)_q = 0 and (v·x)_q = 0.
        let mut rows = Vec::with_capacity(2 * n * s.dim());
        for v in s.basis() {
            for q in 0..n {
                let mut left = vec![Rational::zero(); n];
                let mut right = vec![Rational::zero(); n];
                for p in 0..n {
                    for (j, vj) in v.iter().enumerate() {
                        if vj.is_zero() {
                            continue;
                        }
                        // (x·v)_q = Σ_{p,j} x_p v_j γ_{pj}^q
                        left[p] += self.sc.gamma(p, j, q) * vj;
                        // (v·x)_q = Σ_{j,p} v_j x_p γ_{jp}^q
                        right[p] += self.sc.gamma(j, p, q) * vj;
                    }
                }
                rows.push(left);
                rows.push(right);
            }
        }
        if rows.is_empty() {
            return SubspaceQ::full(n);
        }
        MatrixQ::from_rows(n, rows).nullspace_basis()
    }

    /// The center `Z(A)`: the two-sided annihilator of the whole algebra.
    pub fn center(&self) -> SubspaceQ {
        self.centralizer(&SubspaceQ::full(self.dim()))
    }

    /// Whether `s` is a two-sided ideal: `e_i·v` and `v·e_i` stay in
    /// `span(s)` for every basis vector `v` of `s` and every `i`.
    pub fn is_ideal(&self, s: &SubspaceQ) -> bool {
        assert_eq!(s.ambient_dim(), self.dim(), "subspace not in coefficient space");
        let n = self.dim();
        s.basis().iter().all(|v| {
            (0..n).all(|i| {
                let e = self.basis_element(i);
                s.contains(&self.multiply(&e, v)) && s.contains(&self.multiply(v, &e))
            })
        })
    }
}

/// A validated two-sided ideal of a specific algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    subspace: SubspaceQ,
}

impl Ideal {
    /// Checks the ideal property at construction.
    pub fn new(a: &Algebra, subspace: SubspaceQ) -> Result<Ideal, AlgebraError> {
        if !a.is_ideal(&subspace) {
            return Err(AlgebraError::NotAnIdeal);
        }
        Ok(Ideal { subspace })
    }

    pub fn subspace(&self) -> &SubspaceQ {
        &self.subspace
    }

    pub fn dim(&self) -> usize {
        self.subspace.dim()
    }
}

/// The quotient algebra `A/I` together with the data relating it to `A`.
#[derive(Clone, Debug)]
pub struct Quotient {
    /// `A/I` with its induced product.
    pub algebra: Algebra,
    /// 0-based indices of the basis vectors of `A` chosen as coset
    /// representatives: the complement of the ideal's pivot columns.
    pub rep_indices: Vec<usize>,
    /// The projection `A → A/I` as a `q×n` matrix acting on coordinates.
    pub projection: MatrixQ,
}

impl Quotient {
    /// Coordinates in `A/I` of the coset of `x`.
    pub fn project(&self, x: &[Rational]) -> Vec<Rational> {
        self.projection.apply(x)
    }
}

/// Forms `A/I` using the complement of the ideal's pivot coordinates as the
/// quotient basis — a deterministic choice that is trivially reconstructible
/// from the canonical ideal basis.
///
/// The induced product is well-defined because `I` absorbs products on both
/// sides; construction asserts this on all representative pairs as a guard
/// against a corrupted `Ideal`.
pub fn quotient(a: &Algebra, ideal: &Ideal) -> Quotient {
    let n = a.dim();
    let s = ideal.subspace();
    let mut is_pivot = vec![false; n];
    for &p in s.pivot_cols() {
        is_pivot[p] = true;
    }
    let rep_indices: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
    let q = rep_indices.len();
    assert!(q > 0, "quotient by the whole algebra has dimension zero");

    // Projection: reduce modulo the ideal basis, then read off the
    // coordinates at the representative (free) positions.  Reduction is
    // linear, so applying it to e_1..e_n columns gives the matrix.
    let mut projection = MatrixQ::zeros(q, n);
    for col in 0..n {
        let reduced = s.reduce(&a.basis_element(col));
        for (row, &rep) in rep_indices.iter().enumerate() {
            projection.set(row, col, reduced[rep].clone());
        }
    }

    let mut sc = StructureConstants::zero(q);
    for (qi, &ri) in rep_indices.iter().enumerate() {
        for (qj, &rj) in rep_indices.iter().enumerate() {
            let prod = a.multiply(&a.basis_element(ri), &a.basis_element(rj));
            let reduced = s.reduce(&prod);
            debug_assert!(
                s.pivot_cols().iter().all(|&p| reduced[p].is_zero()),
                "reduction must clear ideal coordinates"
            );
            for (qk, &rk) in rep_indices.iter().enumerate() {
                sc.set(qi, qj, qk, reduced[rk].clone());
            }
        }
    }
    // Well-definedness guard: products of representatives with ideal basis
    // vectors must vanish in the quotient (they do for a genuine ideal).
    for &ri in &rep_indices {
        let e = a.basis_element(ri);
        for v in s.basis() {
            assert!(
                s.contains(&a.multiply(&e, v)) && s.contains(&a.multiply(v, &e)),
                "quotient product is not well-defined: input is not an ideal"
            );
        }
    }
    let algebra = Algebra::new(sc).expect("quotient dimension is within the cap");
    Quotient {
        algebra,
        rep_indices,
        projection,
    }
}

/// Lexicographically first (1-based) triple violating associativity.
fn find_associativity_violation(sc: &StructureConstants) -> Option<(usize, usize, usize)> {
    let n = sc.dim();
    let basis = |i: usize| {
        let mut v = vec![Rational::zero(); n];
        v[i] = Rational::one();
        v
    };
    for i in 0..n {
        for j in 0..n {
            let ij = multiply_raw(sc, &basis(i), &basis(j));
            for k in 0..n {
                let left = multiply_raw(sc, &ij, &basis(k));
                let jk = multiply_raw(sc, &basis(j), &basis(k));
                let right = multiply_raw(sc, &basis(i), &jk);
                if left != right {
                    return Some((i + 1, j + 1, k + 1));
                }
            }
        }
    }
    None
}
