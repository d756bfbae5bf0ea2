//! Canonical subspaces of ℚⁿ.
//!
//! A [`SubspaceQ`] stores a basis in reduced row-echelon form (pivot entries
//! one, pivot columns strictly increasing, zeros above and below every
//! pivot).  Because the RREF of a row space is unique, equal subspaces have
//! *identical* representations — structural equality is subspace equality,
//! and every report built from these bases is reproducible byte for byte.

use crate::matrix::{MatrixQ, Rref};
use crate::rational::Rational;
use num::Zero;

/// A linear subspace of ℚⁿ with a canonical basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceQ {
    ambient_dim: usize,
    /// RREF rows, no zero rows; `pivots[i]` is the pivot column of row `i`.
    basis: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl SubspaceQ {
    /// The zero subspace of ℚⁿ.
    pub fn zero(ambient_dim: usize) -> Self {
        SubspaceQ {
            ambient_dim,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    /// All of ℚⁿ.
    pub fn full(ambient_dim: usize) -> Self {
        SubspaceQ::from_vectors(
            ambient_dim,
            (0..ambient_dim)
                .map(|i| {
                    let mut v = vec![Rational::zero(); ambient_dim];
                    v[i] = num::One::one();
                    v
                })
                .collect::<Vec<_>>(),
        )
    }

    /// Span of arbitrary vectors, canonicalized by row reduction.
    ///
    /// # Panics
    /// If any vector's length differs from `ambient_dim`.
    pub fn from_vectors(ambient_dim: usize, vectors: Vec<Vec<Rational>>) -> Self {
        for v in &vectors {
            assert_eq!(v.len(), ambient_dim, "vector length mismatch");
        }
        if vectors.is_empty() {
            return SubspaceQ::zero(ambient_dim);
        }
        let Rref {
            matrix,
            pivot_cols,
            rank,
        } = MatrixQ::from_rows(ambient_dim, vectors).rref();
        let basis = (0..rank).map(|r| matrix.row(r).to_vec()).collect();
        SubspaceQ {
            ambient_dim,
            basis,
            pivots: pivot_cols,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// The canonical basis rows.
    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    /// Pivot column of each basis row.
    pub fn pivot_cols(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` against the basis: the returned vector is zero exactly
    /// when `v` lies in the subspace, and is otherwise the canonical
    /// representative of `v` modulo the subspace (all pivot coordinates
    /// cleared).
    ///
    /// # Panics
    /// If `v.len() != ambient_dim`.
    pub fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.ambient_dim, "vector length mismatch");
        let mut work = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if work[p].is_zero() {
                continue;
            }
            let f = work[p].clone();
            for (w, r) in work.iter_mut().zip(row) {
                if !r.is_zero() {
                    *w -= r * &f;
                }
            }
        }
        work
    }

    /// Exact membership test.
    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(Rational::is_zero)
    }

    /// `other ⊆ self`, decided by reducing every basis vector.
    pub fn contains_subspace(&self, other: &SubspaceQ) -> bool {
        assert_eq!(self.ambient_dim, other.ambient_dim, "ambient dim mismatch");
        other.basis.iter().all(|v| self.contains(v))
    }

    /// Span of the union of the two subspaces.
    ///
    /// # Panics
    /// If the ambient dimensions differ.
    pub fn sum(&self, other: &SubspaceQ) -> SubspaceQ {
        assert_eq!(self.ambient_dim, other.ambient_dim, "ambient dim mismatch");
        let mut vectors = self.basis.clone();
        vectors.extend(other.basis.iter().cloned());
        SubspaceQ::from_vectors(self.ambient_dim, vectors)
    }

    /// Intersection, computed from the kernel of the stacked bases: a
    /// vector lies in both spans exactly when some coefficient pair `(s, t)`
    /// satisfies `sum_i s_i a_i - sum_j t_j b_j = 0`.
    ///
    /// # Panics
    /// If the ambient dimensions differ.
    pub fn intersection(&self, other: &SubspaceQ) -> SubspaceQ {
        assert_eq!(self.ambient_dim, other.ambient_dim, "ambient dim mismatch");
        let (ka, kb) = (self.dim(), other.dim());
        if ka == 0 || kb == 0 {
            return SubspaceQ::zero(self.ambient_dim);
        }
        // Columns of the system: first the s-coefficients, then the t's.
        let mut system = MatrixQ::zeros(self.ambient_dim, ka + kb);
        for (col, v) in self.basis.iter().enumerate() {
            for (r, x) in v.iter().enumerate() {
                system.set(r, col, x.clone());
            }
        }
        for (col, v) in other.basis.iter().enumerate() {
            for (r, x) in v.iter().enumerate() {
                system.set(r, ka + col, -x.clone());
            }
        }
        let kernel = system.nullspace_basis();
        let vectors: Vec<Vec<Rational>> = kernel
            .basis()
            .iter()
            .map(|coeffs| {
                let mut v = vec![Rational::zero(); self.ambient_dim];
                for (s, bvec) in coeffs[..ka].iter().zip(&self.basis) {
                    if s.is_zero() {
                        continue;
                    }
                    for (slot, x) in v.iter_mut().zip(bvec) {
                        *slot += x * s;
                    }
                }
                v
            })
            .collect();
        SubspaceQ::from_vectors(self.ambient_dim, vectors)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn vecs(vals: &[&[i64]]) -> Vec<Vec<Rational>> {
        vals.iter()
            .map(|r| r.iter().map(|&v| int(v)).collect())
            .collect()
    }

    #[test]
    fn canonical_representation_is_basis_independent() {
        let a = SubspaceQ::from_vectors(3, vecs(&[&[1, 1, 0], &[0, 0, 1]]));
        let b = SubspaceQ::from_vectors(3, vecs(&[&[2, 2, 2], &[1, 1, 3], &[3, 3, 5]]));
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
    }

    #[test]
    fn membership() {
        let s = SubspaceQ::from_vectors(2, vecs(&[&[1, 0]]));
        assert!(s.contains(&[int(2), int(0)]));
        assert!(!s.contains(&[int(0), int(1)]));
        assert!(s.contains(&[int(0), int(0)]));
    }

    #[test]
    fn sum_and_intersection_of_axes() {
        let x = SubspaceQ::from_vectors(2, vecs(&[&[1, 0]]));
        let y = SubspaceQ::from_vectors(2, vecs(&[&[0, 1]]));
        assert_eq!(x.sum(&y), SubspaceQ::full(2));
        assert_eq!(x.intersection(&y).dim(), 0);
    }

    #[test]
    fn sum_is_idempotent() {
        let s = SubspaceQ::from_vectors(3, vecs(&[&[1, 2, 3], &[0, 1, 1]]));
        assert_eq!(s.sum(&s), s);
    }

    #[test]
    fn intersection_of_plane_and_line() {
        let plane = SubspaceQ::full(2);
        let line = SubspaceQ::from_vectors(2, vecs(&[&[1, 1]]));
        assert_eq!(plane.intersection(&line), line);
    }

    #[test]
    fn grassmann_identity_small_example() {
        let a = SubspaceQ::from_vectors(3, vecs(&[&[1, 0, 0], &[0, 1, 0]]));
        let b = SubspaceQ::from_vectors(3, vecs(&[&[0, 1, 0], &[0, 0, 1]]));
        let sum = a.sum(&b);
        let inter = a.intersection(&b);
        assert_eq!(a.dim() + b.dim(), sum.dim() + inter.dim());
        assert!(inter.contains(&[int(0), int(1), int(0)]));
    }

    #[test]
    fn zero_and_full() {
        let z = SubspaceQ::zero(4);
        assert_eq!(z.dim(), 0);
        assert!(z.contains(&vec![int(0); 4]));
        assert!(!z.contains(&[int(1), int(0), int(0), int(0)]));
        assert_eq!(SubspaceQ::full(4).dim(), 4);
    }
}
