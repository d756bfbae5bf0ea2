//! Naive-elimination reference implementation ("oracle") for invariant
//! dimensions of a finite-dimensional algebra given by structure constants.
//!
//! The production kernel assembles coefficient matrices directly from closed
//! formulas in the structure constants and row-reduces them with a
//! first-nonzero pivot scan.  This crate deliberately shares none of that
//! code: systems are assembled *symbolically* — each defining identity is
//! evaluated on all basis pairs with the unknown map's entries treated as
//! formal symbols — and eliminated with a plain Gauss–Jordan sweep that picks
//! pivots bottom-up.  Agreement between the two routes is therefore evidence
//! that both the formulas and the reduction are right, not that the same bug
//! was executed twice.
//!
//! Only dimensions (and a projection rank for quasi-derivation pairs) are
//! exposed; this crate is a test dependency, not a user-facing API.

use num::BigRational;
use num::{One, Zero};

/// Exact scalar used throughout the oracle.
pub type Q = BigRational;

/// A linear expression `sum(coeffs[s] * symbol_s)` over a fixed symbol pool.
///
/// Dense representation: the pools here are at most `2n^2` symbols for the
/// dimensions the oracle is asked about, so sparsity is not worth the code.
#[derive(Clone, Debug)]
struct LinExpr {
    coeffs: Vec<Q>,
}

impl LinExpr {
    fn zero(symbols: usize) -> Self {
        LinExpr {
            coeffs: vec![Q::zero(); symbols],
        }
    }

    fn add_scaled(&mut self, other: &LinExpr, factor: &Q) {
        if factor.is_zero() {
            return;
        }
        for (lhs, rhs) in self.coeffs.iter_mut().zip(&other.coeffs) {
            if !rhs.is_zero() {
                *lhs += rhs * factor;
            }
        }
    }

    fn sub(&mut self, other: &LinExpr) {
        for (lhs, rhs) in self.coeffs.iter_mut().zip(&other.coeffs) {
            if !rhs.is_zero() {
                *lhs -= rhs;
            }
        }
    }
}

/// A "vector of linear expressions": the coordinates of an algebra element
/// whose entries depend linearly on the unknown symbols.
type SymVec = Vec<LinExpr>;

/// An algebra presented by its structure constants, for oracle use only.
///
/// `gamma[(i*n + j)*n + k]` is the coefficient of `e_k` in `e_i * e_j`
/// (0-based indices).
pub struct NaiveAlgebra {
    n: usize,
    gamma: Vec<Q>,
}

impl NaiveAlgebra {
    /// Zero algebra of dimension `n` (all products vanish).
    pub fn new(n: usize) -> Self {
        assert!(n > 0, "oracle algebra needs dimension >= 1");
        NaiveAlgebra {
            n,
            gamma: vec![Q::zero(); n * n * n],
        }
    }

    /// Sets the coefficient of `e_k` in `e_i * e_j` (0-based indices).
    pub fn set_product(&mut self, i: usize, j: usize, k: usize, c: Q) {
        let n = self.n;
        assert!(i < n && j < n && k < n, "index out of range");
        self.gamma[(i * n + j) * n + k] = c;
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    fn gamma(&self, i: usize, j: usize, k: usize) -> &Q {
        &self.gamma[(i * self.n + j) * self.n + k]
    }

    /// Coordinates of the numeric product `e_i * e_j`.
    fn basis_product(&self, i: usize, j: usize) -> Vec<Q> {
        (0..self.n).map(|k| self.gamma(i, j, k).clone()).collect()
    }

    /// Applies the symbolic map whose entry `(k, i)` (coefficient of `e_k` in
    /// the image of `e_i`) is symbol `base + k*n + i` to a numeric element.
    fn apply_symbolic(&self, symbols: usize, base: usize, x: &[Q]) -> SymVec {
        let n = self.n;
        (0..n)
            .map(|k| {
                let mut e = LinExpr::zero(symbols);
                for (i, xi) in x.iter().enumerate() {
                    if !xi.is_zero() {
                        e.coeffs[base + k * n + i] += xi;
                    }
                }
                e
            })
            .collect()
    }

    /// Product of a symbolic element with the numeric element `y`.
    fn mul_sym_num(&self, xs: &SymVec, y: &[Q]) -> SymVec {
        let n = self.n;
        let symbols = xs[0].coeffs.len();
        let mut out = vec![LinExpr::zero(symbols); n];
        for (i, xi) in xs.iter().enumerate() {
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                for (k, slot) in out.iter_mut().enumerate() {
                    let c = self.gamma(i, j, k) * yj;
                    slot.add_scaled(xi, &c);
                }
            }
        }
        out
    }

    /// Product of the numeric element `x` with a symbolic element.
    fn mul_num_sym(&self, x: &[Q], ys: &SymVec) -> SymVec {
        let n = self.n;
        let symbols = ys[0].coeffs.len();
        let mut out = vec![LinExpr::zero(symbols); n];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in ys.iter().enumerate() {
                for (k, slot) in out.iter_mut().enumerate() {
                    let c = self.gamma(i, j, k) * xi;
                    slot.add_scaled(yj, &c);
                }
            }
        }
        out
    }

    fn basis_vector(&self, i: usize) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.n];
        v[i] = Q::one();
        v
    }

    /// Rows of the derivation system: `d(e_i e_j) - d(e_i) e_j - e_i d(e_j)`.
    fn derivation_rows(&self) -> Vec<Vec<Q>> {
        let n = self.n;
        let symbols = n * n;
        let mut rows = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let ei = self.basis_vector(i);
                let ej = self.basis_vector(j);
                let mut lhs = self.apply_symbolic(symbols, 0, &self.basis_product(i, j));
                let dei = self.apply_symbolic(symbols, 0, &ei);
                let dej = self.apply_symbolic(symbols, 0, &ej);
                let t1 = self.mul_sym_num(&dei, &ej);
                let t2 = self.mul_num_sym(&ei, &dej);
                for k in 0..n {
                    lhs[k].sub(&t1[k]);
                    lhs[k].sub(&t2[k]);
                }
                rows.extend(lhs.into_iter().map(|e| e.coeffs));
            }
        }
        rows
    }

    /// Rows of the centroid system: `f(e_i e_j) = f(e_i) e_j = e_i f(e_j)`.
    fn centroid_rows(&self) -> Vec<Vec<Q>> {
        let n = self.n;
        let symbols = n * n;
        let mut rows = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let ei = self.basis_vector(i);
                let ej = self.basis_vector(j);
                let fij = self.apply_symbolic(symbols, 0, &self.basis_product(i, j));
                let left = self.mul_sym_num(&self.apply_symbolic(symbols, 0, &ei), &ej);
                let right = self.mul_num_sym(&ei, &self.apply_symbolic(symbols, 0, &ej));
                for k in 0..n {
                    let mut a = fij[k].clone();
                    a.sub(&left[k]);
                    rows.push(a.coeffs);
                    let mut b = fij[k].clone();
                    b.sub(&right[k]);
                    rows.push(b.coeffs);
                }
            }
        }
        rows
    }

    /// Rows of the quasi-centroid system: `f(e_i) e_j - e_i f(e_j)`.
    fn quasi_centroid_rows(&self) -> Vec<Vec<Q>> {
        let n = self.n;
        let symbols = n * n;
        let mut rows = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let ei = self.basis_vector(i);
                let ej = self.basis_vector(j);
                let left = self.mul_sym_num(&self.apply_symbolic(symbols, 0, &ei), &ej);
                let right = self.mul_num_sym(&ei, &self.apply_symbolic(symbols, 0, &ej));
                for k in 0..n {
                    let mut a = left[k].clone();
                    a.sub(&right[k]);
                    rows.push(a.coeffs);
                }
            }
        }
        rows
    }

    /// Rows of the central-derivation system: `f(e_i) e_j = 0` and
    /// `e_i f(e_j) = 0` separately.
    fn central_derivation_rows(&self) -> Vec<Vec<Q>> {
        let n = self.n;
        let symbols = n * n;
        let mut rows = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let ei = self.basis_vector(i);
                let ej = self.basis_vector(j);
                let left = self.mul_sym_num(&self.apply_symbolic(symbols, 0, &ei), &ej);
                let right = self.mul_num_sym(&ei, &self.apply_symbolic(symbols, 0, &ej));
                for k in 0..n {
                    rows.push(left[k].coeffs.clone());
                    rows.push(right[k].coeffs.clone());
                }
            }
        }
        rows
    }

    /// Rows of the quasi-derivation pair system over `2n^2` symbols
    /// (first the entries of `D`, then of `D'`):
    /// `D(e_i) e_j + e_i D(e_j) - D'(e_i e_j)`.
    fn quasi_derivation_rows(&self) -> Vec<Vec<Q>> {
        let n = self.n;
        let symbols = 2 * n * n;
        let d_base = 0;
        let dp_base = n * n;
        let mut rows = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let ei = self.basis_vector(i);
                let ej = self.basis_vector(j);
                let t1 = self.mul_sym_num(&self.apply_symbolic(symbols, d_base, &ei), &ej);
                let t2 = self.mul_num_sym(&ei, &self.apply_symbolic(symbols, d_base, &ej));
                let rhs = self.apply_symbolic(symbols, dp_base, &self.basis_product(i, j));
                for k in 0..n {
                    let mut e = t1[k].clone();
                    let mut t = t2[k].clone();
                    t.sub(&rhs[k]);
                    e.coeffs
                        .iter_mut()
                        .zip(&t.coeffs)
                        .for_each(|(a, b)| *a += b);
                    rows.push(e.coeffs);
                }
            }
        }
        rows
    }

    pub fn derivation_dim(&self) -> usize {
        let n2 = self.n * self.n;
        n2 - gauss_jordan_rank(self.derivation_rows())
    }

    pub fn centroid_dim(&self) -> usize {
        let n2 = self.n * self.n;
        n2 - gauss_jordan_rank(self.centroid_rows())
    }

    pub fn quasi_centroid_dim(&self) -> usize {
        let n2 = self.n * self.n;
        n2 - gauss_jordan_rank(self.quasi_centroid_rows())
    }

    pub fn central_derivation_dim(&self) -> usize {
        let n2 = self.n * self.n;
        n2 - gauss_jordan_rank(self.central_derivation_rows())
    }

    pub fn quasi_derivation_pair_dim(&self) -> usize {
        let m = 2 * self.n * self.n;
        m - gauss_jordan_rank(self.quasi_derivation_rows())
    }

    /// Dimension of the projection of the quasi-derivation pair space onto
    /// its first component `D`.
    pub fn quasi_derivation_d_dim(&self) -> usize {
        let n2 = self.n * self.n;
        let kernel = kernel_basis(self.quasi_derivation_rows(), 2 * n2);
        let projected: Vec<Vec<Q>> = kernel.into_iter().map(|v| v[..n2].to_vec()).collect();
        gauss_jordan_rank(projected)
    }
}

/// Rank by Gauss–Jordan elimination with a bottom-up pivot scan (the
/// production kernel scans top-down; disagreement would surface as a rank
/// mismatch in the cross-check tests).
fn gauss_jordan_rank(rows: Vec<Vec<Q>>) -> usize {
    gauss_jordan(rows).0
}

/// Runs the elimination and returns `(rank, reduced_rows, pivot_cols)` where
/// `reduced_rows[r]` has its pivot (value one) in column `pivot_cols[r]` and
/// zeros in every other pivot column.
fn gauss_jordan(mut rows: Vec<Vec<Q>>) -> (usize, Vec<Vec<Q>>, Vec<usize>) {
    rows.retain(|r| r.iter().any(|c| !c.is_zero()));
    if rows.is_empty() {
        return (0, rows, Vec::new());
    }
    let cols = rows[0].len();
    let mut pivot_cols = Vec::new();
    let mut next = 0; // rows above `next` are finished pivot rows
    for col in 0..cols {
        // Bottom-up scan for a usable pivot row.
        let found = (next..rows.len()).rev().find(|&r| !rows[r][col].is_zero());
        let Some(r) = found else { continue };
        rows.swap(next, r);
        let inv = {
            let p = &rows[next][col];
            Q::one() / p.clone()
        };
        for c in rows[next].iter_mut() {
            if !c.is_zero() {
                *c *= &inv;
            }
        }
        let pivot_row = rows[next].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == next || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (c, entry) in row.iter_mut().enumerate() {
                let delta = &pivot_row[c] * &f;
                if !delta.is_zero() {
                    *entry -= delta;
                }
            }
        }
        pivot_cols.push(col);
        next += 1;
        if next == rows.len() {
            break;
        }
    }
    rows.truncate(next);
    (next, rows, pivot_cols)
}

/// Basis of the solution space of `rows * v = 0` over `cols` unknowns,
/// parametrized by the free (non-pivot) columns.
fn kernel_basis(rows: Vec<Vec<Q>>, cols: usize) -> Vec<Vec<Q>> {
    let (_, reduced, pivot_cols) = gauss_jordan(rows);
    let is_pivot: Vec<bool> = {
        let mut v = vec![false; cols];
        for &c in &pivot_cols {
            v[c] = true;
        }
        v
    };
    let mut basis = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Q::zero(); cols];
        v[free] = Q::one();
        for (row, &pc) in reduced.iter().zip(&pivot_cols) {
            v[pc] = -row[free].clone();
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::FromPrimitive;

    fn q(v: i64) -> Q {
        Q::from_i64(v).unwrap()
    }

    #[test]
    fn rank_of_proportional_rows_is_one() {
        let rows = vec![vec![q(1), q(2)], vec![q(2), q(4)]];
        assert_eq!(gauss_jordan_rank(rows), 1);
    }

    #[test]
    fn rank_of_identity_is_full() {
        let rows = vec![
            vec![q(1), q(0), q(0)],
            vec![q(0), q(1), q(0)],
            vec![q(0), q(0), q(1)],
        ];
        assert_eq!(gauss_jordan_rank(rows), 3);
    }

    #[test]
    fn kernel_of_single_constraint() {
        // x - y = 0 over two unknowns: kernel is the diagonal line.
        let rows = vec![vec![q(1), q(-1)]];
        let basis = kernel_basis(rows, 2);
        assert_eq!(basis.len(), 1);
        assert_eq!(basis[0][0], basis[0][1]);
        assert!(!basis[0][0].is_zero());
    }

    #[test]
    fn kernel_vectors_satisfy_the_system() {
        let rows = vec![vec![q(1), q(2), q(3)], vec![q(0), q(1), q(1)]];
        let basis = kernel_basis(rows.clone(), 3);
        assert_eq!(basis.len(), 1);
        for row in &rows {
            let dot: Q = row
                .iter()
                .zip(&basis[0])
                .map(|(a, b)| a * b)
                .fold(Q::zero(), |acc, t| acc + t);
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn zero_algebra_everything_is_everything() {
        let a = NaiveAlgebra::new(2);
        assert_eq!(a.derivation_dim(), 4);
        assert_eq!(a.centroid_dim(), 4);
        assert_eq!(a.quasi_centroid_dim(), 4);
        assert_eq!(a.central_derivation_dim(), 4);
        assert_eq!(a.quasi_derivation_pair_dim(), 8);
        assert_eq!(a.quasi_derivation_d_dim(), 4);
    }

    #[test]
    fn one_dimensional_idempotent() {
        let mut a = NaiveAlgebra::new(1);
        a.set_product(0, 0, 0, q(1));
        assert_eq!(a.derivation_dim(), 0);
        assert_eq!(a.centroid_dim(), 1);
        assert_eq!(a.quasi_centroid_dim(), 1);
        assert_eq!(a.central_derivation_dim(), 0);
        assert_eq!(a.quasi_derivation_pair_dim(), 1);
        assert_eq!(a.quasi_derivation_d_dim(), 1);
    }
}
