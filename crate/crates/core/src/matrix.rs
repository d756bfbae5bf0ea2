//! Dense matrices over the rationals with canonical row reduction.
//!
//! Everything downstream — solvers, subspace arithmetic, catalog checks —
//! reduces to [`MatrixQ::rref`] and [`MatrixQ::nullspace_basis`].  Reduction
//! is plain Gauss–Jordan with eager normalization; the pivot in each column
//! is the *first* nonzero entry scanning top to bottom, which makes every
//! output deterministic and the reduced form canonical (the unique RREF of
//! the row space).

use crate::rational::Rational;
use crate::subspace::SubspaceQ;
use num::{One, Zero};
use std::fmt;

/// Dense row-major matrix over `Rational`.
#[derive(Clone, PartialEq, Eq)]
pub struct MatrixQ {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

/// Result of [`MatrixQ::rref`].
pub struct Rref {
    /// The reduced row-echelon form, same shape as the input.
    pub matrix: MatrixQ,
    /// Columns containing a pivot, in increasing order.
    pub pivot_cols: Vec<usize>,
    /// Number of pivots.
    pub rank: usize,
}

impl MatrixQ {
    /// Builds a matrix from row-major entries.
    ///
    /// # Panics
    /// If `entries.len() != rows * cols`.
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Self {
        assert_eq!(
            entries.len(),
            rows * cols,
            "matrix shape {rows}x{cols} needs {} entries, got {}",
            rows * cols,
            entries.len()
        );
        MatrixQ {
            rows,
            cols,
            entries,
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        MatrixQ::new(rows, cols, vec![Rational::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = MatrixQ::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Stacks equal-width rows into a matrix.
    ///
    /// # Panics
    /// If row lengths differ from `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Rational>>) -> Self {
        let n_rows = rows.len();
        let mut entries = Vec::with_capacity(n_rows * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "row length mismatch");
            entries.extend(row);
        }
        MatrixQ::new(n_rows, cols, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    /// Row-major copy of all entries.
    pub fn to_flat(&self) -> Vec<Rational> {
        self.entries.clone()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Rational::is_zero)
    }

    pub fn transpose(&self) -> MatrixQ {
        let mut out = MatrixQ::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.at(r, c).clone());
            }
        }
        out
    }

    /// Matrix product `self * other`.
    ///
    /// # Panics
    /// If the inner dimensions disagree.
    pub fn mul(&self, other: &MatrixQ) -> MatrixQ {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        let mut out = MatrixQ::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.at(k, c);
                    if !b.is_zero() {
                        let cur = out.at(r, c) + a * b;
                        out.set(r, c, cur);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &MatrixQ) -> MatrixQ {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        MatrixQ::new(self.rows, self.cols, entries)
    }

    pub fn sub(&self, other: &MatrixQ) -> MatrixQ {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        MatrixQ::new(self.rows, self.cols, entries)
    }

    pub fn scale(&self, f: &Rational) -> MatrixQ {
        let entries = self.entries.iter().map(|a| a * f).collect();
        MatrixQ::new(self.rows, self.cols, entries)
    }

    /// Matrix-vector product `self * v`.
    ///
    /// # Panics
    /// If `v.len() != cols`.
    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .fold(Rational::zero(), |acc, t| acc + t)
            })
            .collect()
    }

    /// Commutator `self*other - other*self` of square matrices.
    pub fn commutator(&self, other: &MatrixQ) -> MatrixQ {
        self.mul(other).sub(&other.mul(self))
    }

    /// Canonical reduced row-echelon form.
    ///
    /// Deterministic by construction: columns are processed left to right
    /// and the pivot is the first nonzero candidate top to bottom.  Zero
    /// rows end up at the bottom; the shape is preserved.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivot_cols = Vec::new();
        let mut next_row = 0;
        for col in 0..m.cols {
            let Some(found) = (next_row..m.rows).find(|&r| !m.at(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(next_row, found);
            let inv = m.at(next_row, col).recip();
            m.scale_row(next_row, &inv);
            let pivot_row: Vec<Rational> = m.row(next_row).to_vec();
            for r in 0..m.rows {
                if r == next_row || m.at(r, col).is_zero() {
                    continue;
                }
                let factor = m.at(r, col).clone();
                m.row_sub_scaled(r, &pivot_row, &factor);
            }
            pivot_cols.push(col);
            next_row += 1;
            if next_row == m.rows {
                break;
            }
        }
        Rref {
            matrix: m,
            pivot_cols,
            rank: next_row,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Canonical basis of `{v : self * v = 0}`.
    ///
    /// The raw free-column parametrization of the kernel is not itself in
    /// reduced form, so the vectors are run through a second reduction —
    /// equal kernels always come back with identical bases.
    pub fn nullspace_basis(&self) -> SubspaceQ {
        let Rref {
            matrix, pivot_cols, ..
        } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivot_cols {
            is_pivot[c] = true;
        }
        let mut vectors = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Rational::zero(); self.cols];
            v[free] = Rational::one();
            for (row, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = -matrix.at(row, free).clone();
            }
            vectors.push(v);
        }
        SubspaceQ::from_vectors(self.cols, vectors)
    }

    /// Inverse of a square matrix, or `None` when singular.
    pub fn inverse(&self) -> Option<MatrixQ> {
        assert_eq!(self.rows, self.cols, "inverse needs a square matrix");
        let n = self.rows;
        let mut aug = MatrixQ::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.at(r, c).clone());
            }
            aug.set(r, n + r, Rational::one());
        }
        let red = aug.rref();
        // Invertible iff the left block reduces to the identity, i.e. the
        // first n pivots are exactly columns 0..n.  (The augmented matrix
        // always has full row rank — a singular left block just pushes
        // pivots into the identity half, so checking `rank` alone would be
        // wrong.)
        if red.pivot_cols.iter().filter(|&&c| c < n).count() < n {
            return None;
        }
        let mut inv = MatrixQ::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, red.matrix.at(r, n + c).clone());
            }
        }
        Some(inv)
    }

    /// Rows rendered as strings of reduced rationals, e.g. `"[1, -1/2]"`.
    pub fn to_row_strings(&self) -> Vec<String> {
        (0..self.rows)
            .map(|r| {
                let cells: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, f: &Rational) {
        for c in 0..self.cols {
            let idx = r * self.cols + c;
            if !self.entries[idx].is_zero() {
                self.entries[idx] *= f;
            }
        }
    }

    /// `row[r] -= factor * other` where `other` is a detached row copy.
    fn row_sub_scaled(&mut self, r: usize, other: &[Rational], factor: &Rational) {
        for (c, o) in other.iter().enumerate() {
            if !o.is_zero() {
                let idx = r * self.cols + c;
                self.entries[idx] -= o * factor;
            }
        }
    }
}

impl fmt::Debug for MatrixQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "MatrixQ {}x{} [", self.rows, self.cols)?;
        for line in self.to_row_strings() {
            writeln!(f, "  {line}")?;
        }
        write!(f, "]")
    }
}
