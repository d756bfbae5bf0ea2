//! Prints the oracle's invariant dimensions for the fixture algebras.
//!
//! Run with `cargo run -p qcentroid-oracle --example dims`.  The numbers
//! printed here are the reference values frozen into the fixture catalog and
//! the acceptance tests.

use num::{BigRational, FromPrimitive};
use qcentroid_oracle::NaiveAlgebra;

fn q(v: i64) -> BigRational {
    BigRational::from_i64(v).unwrap()
}

fn report(name: &str, a: &NaiveAlgebra) {
    println!(
        "{name}: dim {} | der {} centroid {} qc {} zder {} qder_pair {} qder_D {}",
        a.dim(),
        a.derivation_dim(),
        a.centroid_dim(),
        a.quasi_centroid_dim(),
        a.central_derivation_dim(),
        a.quasi_derivation_pair_dim(),
        a.quasi_derivation_d_dim(),
    );
}

fn main() {
    // e1*e1 = e2, everything else zero.
    let mut as21 = NaiveAlgebra::new(2);
    as21.set_product(0, 0, 1, q(1));
    report("As_2^1", &as21);

    // e1*e3 = e3*e1 = e2.
    let mut as31 = NaiveAlgebra::new(3);
    as31.set_product(0, 2, 1, q(1));
    as31.set_product(2, 0, 1, q(1));
    report("As_3^1", &as31);

    report("Zero_2", &NaiveAlgebra::new(2));
    report("Zero_3", &NaiveAlgebra::new(3));

    // One-dimensional idempotent: e1*e1 = e1.
    let mut k1 = NaiveAlgebra::new(1);
    k1.set_product(0, 0, 0, q(1));
    report("K_1", &k1);

    // 2x2 matrix units e1=E11, e2=E12, e3=E21, e4=E22.
    let mut m2 = NaiveAlgebra::new(4);
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
        m2.set_product(i, j, k, q(1));
    }
    report("M_2", &m2);
}
