//! Named sample algebras used across tests, documentation, and the demo.
//!
//! The names follow the classification convention `As_n^k` for the
//! associative classes of dimension `n`; the remaining fixtures are standard
//! desk examples (zero algebras, the 1-dimensional idempotent line, and the
//! full 2×2 matrix algebra over matrix units).

use crate::algebra::{Algebra, StructureConstants};
use crate::rational::int;

/// `As_2^1`: two-dimensional, `e1·e1 = e2`, all other products zero.
pub fn as21() -> Algebra {
    let mut sc = StructureConstants::zero(2);
    sc.set(0, 0, 1, int(1));
    Algebra::new(sc).expect("fixture dimension is valid")
}

/// `As_3^1`: three-dimensional, `e1·e3 = e3·e1 = e2`.
pub fn as31() -> Algebra {
    let mut sc = StructureConstants::zero(3);
    sc.set(0, 2, 1, int(1));
    sc.set(2, 0, 1, int(1));
    Algebra::new(sc).expect("fixture dimension is valid")
}

/// The zero algebra of dimension `n` (every product vanishes).
pub fn zero(n: usize) -> Algebra {
    Algebra::new(StructureConstants::zero(n)).expect("fixture dimension is valid")
}

/// `K_1`: the one-dimensional idempotent line, `e1·e1 = e1`.
pub fn k1() -> Algebra {
    let mut sc = StructureConstants::zero(1);
    sc.set(0, 0, 0, int(1));
    Algebra::new(sc).expect("fixture dimension is valid")
}

/// `M_2`: the full 2×2 matrix algebra with basis of matrix units
/// `e1 = E11, e2 = E12, e3 = E21, e4 = E22` (`E_ij E_kl = δ_jk E_il`).
pub fn m2() -> Algebra {
    let mut sc = StructureConstants::zero(4);
    for (i, j, k) in [
        (0, 0, 0),
        (0, 1, 1),
        (1, 2, 0),
        (1, 3, 1),
        (2, 0, 2),
        (2, 1, 3),
        (3, 2, 2),
        (3, 3, 3),
    ] {
        sc.set(i, j, k, int(1));
    }
    Algebra::new(sc).expect("fixture dimension is valid")
}

/// A deliberately non-associative 3-dimensional product: `e1·e1 = e2`,
/// `e2·e1 = e3`, so `(e1·e1)·e1 = e3` but `e1·(e1·e1) = 0`.  The first
/// violating basis triple is `(1, 1, 1)`.
pub fn nonassociative3() -> Algebra {
    let mut sc = StructureConstants::zero(3);
    sc.set(0, 0, 1, int(1));
    sc.set(1, 0, 2, int(1));
    Algebra::new(sc).expect("fixture dimension is valid")
}

/// All associative fixtures with their catalog names, in a stable order.
pub fn all_associative() -> Vec<(&'static str, Algebra)> {
    vec![
        ("As_2^1", as21()),
        ("As_3^1", as31()),
        ("Zero_2", zero(2)),
        ("Zero_3", zero(3)),
        ("K_1", k1()),
        ("M_2", m2()),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_associative_fixtures_really_are() {
        for (name, a) in all_associative() {
            assert!(a.is_associative(), "{name} should be associative");
        }
    }

    #[test]
    fn m2_is_unital_matrix_multiplication() {
        let a = m2();
        // E12·E21 = E11 and E21·E12 = E22.
        assert_eq!(
            a.multiply(&a.basis_element(1), &a.basis_element(2)),
            a.basis_element(0)
        );
        assert_eq!(
            a.multiply(&a.basis_element(2), &a.basis_element(1)),
            a.basis_element(3)
        );
        // The identity matrix E11 + E22 is a two-sided unit.
        let one: Vec<_> = vec![int(1), int(0), int(0), int(1)];
        for i in 0..4 {
            let e = a.basis_element(i);
            assert_eq!(a.multiply(&one, &e), e);
            assert_eq!(a.multiply(&e, &one), e);
        }
    }
}
