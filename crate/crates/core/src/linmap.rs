//! Linear endomorphisms of the algebra's coefficient space.
//!
//! Maps use the column convention: entry `(j, i)` of the matrix is the
//! coefficient of `e_j` in the image of `e_i`, so coordinates transform by
//! plain matrix-vector multiplication.  Flattening is row-major, which
//! places entry `(p, k)` at index `p*n + k` — the same ordering every
//! solver in this crate uses for its unknowns, so solution vectors reshape
//! into maps without any index shuffling.

use crate::matrix::MatrixQ;
use crate::rational::Rational;

/// An n×n rational matrix acting on coefficient vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    matrix: MatrixQ,
}

impl LinearMap {
    /// Wraps a square matrix.
    ///
    /// # Panics
    /// If the matrix is not square.
    pub fn new(matrix: MatrixQ) -> Self {
        assert_eq!(matrix.rows(), matrix.cols(), "linear map must be square");
        LinearMap { matrix }
    }

    pub fn identity(n: usize) -> Self {
        LinearMap::new(MatrixQ::identity(n))
    }

    pub fn zero(n: usize) -> Self {
        LinearMap::new(MatrixQ::zeros(n, n))
    }

    /// Rebuilds a map from its row-major flattening.
    ///
    /// # Panics
    /// If `flat.len() != n*n`.
    pub fn from_flat(n: usize, flat: &[Rational]) -> Self {
        assert_eq!(flat.len(), n * n, "flattened map has wrong length");
        LinearMap::new(MatrixQ::new(n, n, flat.to_vec()))
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &MatrixQ {
        &self.matrix
    }

    /// Row-major flattening (entry `(p, k)` at index `p*n + k`).
    pub fn to_flat(&self) -> Vec<Rational> {
        self.matrix.to_flat()
    }

    /// Coefficient of `e_r` in the image of `e_c` (0-based).
    pub fn entry(&self, r: usize, c: usize) -> &Rational {
        self.matrix.at(r, c)
    }

    /// Image coordinates of `x`.
    pub fn apply(&self, x: &[Rational]) -> Vec<Rational> {
        self.matrix.apply(x)
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &LinearMap) -> LinearMap {
        LinearMap::new(self.matrix.mul(&other.matrix))
    }

    /// `[self, other] = self∘other − other∘self`.
    pub fn commutator(&self, other: &LinearMap) -> LinearMap {
        LinearMap::new(self.matrix.commutator(&other.matrix))
    }

    pub fn add(&self, other: &LinearMap) -> LinearMap {
        LinearMap::new(self.matrix.add(&other.matrix))
    }

    pub fn sub(&self, other: &LinearMap) -> LinearMap {
        LinearMap::new(self.matrix.sub(&other.matrix))
    }

    pub fn scale(&self, f: &Rational) -> LinearMap {
        LinearMap::new(self.matrix.scale(f))
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// `p⁻¹ ∘ self ∘ p` — how a map's matrix changes under the basis change
    /// with transition matrix `p` (columns of `p` are the new basis vectors
    /// in old coordinates).
    ///
    /// # Panics
    /// If shapes disagree; returns `None` when `p` is singular.
    pub fn conjugate(&self, p: &MatrixQ) -> Option<LinearMap> {
        let p_inv = p.inverse()?;
        Some(LinearMap::new(p_inv.mul(&self.matrix).mul(p)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn flatten_round_trip_in_row_major_order() {
        let flat: Vec<Rational> = (1..=4).map(int).collect();
        let m = LinearMap::from_flat(2, &flat);
        // Entry (p, k) sits at p*n + k.
        assert_eq!(m.entry(0, 1), &int(2));
        assert_eq!(m.entry(1, 0), &int(3));
        assert_eq!(m.to_flat(), flat);
    }

    #[test]
    fn apply_uses_column_convention() {
        // Column 0 = image of e1, column 1 = image of e2.
        let m = LinearMap::from_flat(2, &[int(0), int(0), int(1), int(0)]);
        assert_eq!(m.apply(&[int(1), int(0)]), vec![int(0), int(1)]);
        assert_eq!(m.apply(&[int(0), int(1)]), vec![int(0), int(0)]);
    }

    #[test]
    fn compose_applies_right_argument_first() {
        let a = LinearMap::from_flat(2, &[int(0), int(1), int(0), int(0)]);
        let b = LinearMap::from_flat(2, &[int(0), int(0), int(1), int(0)]);
        let ab = a.compose(&b);
        // b: e1 ↦ e2, then a: e2 ↦ e1.
        assert_eq!(ab.apply(&[int(1), int(0)]), vec![int(1), int(0)]);
    }

    #[test]
    fn conjugation_by_identity_is_identity() {
        let m = LinearMap::from_flat(2, &[int(1), int(2), int(3), int(4)]);
        assert_eq!(m.conjugate(&MatrixQ::identity(2)).unwrap(), m);
    }
}
