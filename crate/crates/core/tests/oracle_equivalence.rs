//! Cross-checks the production solvers against an independently written
//! naive-elimination oracle.  The oracle assembles each defining identity
//! symbolically (evaluating products of symbolic images rather than
//! instantiating coefficient formulas) and reduces with a different pivot
//! strategy, so agreement on every space and fixture is strong evidence
//! against a shared assembly or elimination bug.

use qcentroid::solvers::{self, Nonassociative};
use qcentroid::{fixtures, Algebra};
use qcentroid_oracle::NaiveAlgebra;

fn oracle_of(a: &Algebra) -> NaiveAlgebra {
    let n = a.dim();
    let mut o = NaiveAlgebra::new(n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let g = a.structure_constants().gamma(i, j, k);
                o.set_product(i, j, k, g.clone());
            }
        }
    }
    o
}

#[test]
fn production_dimensions_match_the_oracle_on_all_fixtures() {
    for (name, a) in fixtures::all_associative() {
        let o = oracle_of(&a);
        let der = solvers::derivations(&a, Nonassociative::Reject).unwrap();
        let c = solvers::centroid(&a, Nonassociative::Reject).unwrap();
        let qc = solvers::quasi_centroid(&a, Nonassociative::Reject).unwrap();
        let zder = solvers::central_derivations(&a, Nonassociative::Reject).unwrap();
        let qder = solvers::quasi_derivations(&a, Nonassociative::Reject).unwrap();

        assert_eq!(der.dim(), o.derivation_dim(), "{name}: Der");
        assert_eq!(c.dim(), o.centroid_dim(), "{name}: C");
        assert_eq!(qc.dim(), o.quasi_centroid_dim(), "{name}: QC");
        assert_eq!(zder.dim(), o.central_derivation_dim(), "{name}: ZDer");
        assert_eq!(
            qder.pair_dim(),
            o.quasi_derivation_pair_dim(),
            "{name}: QDer pairs"
        );
        assert_eq!(
            qder.d_projection().dim(),
            o.quasi_derivation_d_dim(),
            "{name}: QDer D-projection"
        );
    }
}

#[test]
fn oracle_agrees_on_scaled_and_conjugated_tables() {
    // A couple of hand-picked basis changes of the 2- and 3-dimensional
    // fixtures; the oracle sees only the transformed structure constants.
    use qcentroid::rational::{int, rat};
    use qcentroid::MatrixQ;

    let transforms: Vec<(Algebra, MatrixQ)> = vec![
        (
            fixtures::as21(),
            MatrixQ::from_rows(2, vec![vec![int(1), int(1)], vec![int(0), int(1)]]),
        ),
        (
            fixtures::as31(),
            MatrixQ::from_rows(
                3,
                vec![
                    vec![int(2), int(0), int(1)],
                    vec![int(0), int(1), int(0)],
                    vec![int(1), int(0), int(1)],
                ],
            ),
        ),
    ];

    for (a, p) in transforms {
        let sc = a
            .structure_constants()
            .change_basis(&p)
            .expect("transform matrices are invertible")
            .scale(&rat(3, 2));
        let b = Algebra::new(sc).unwrap();
        assert!(b.is_associative());
        let o = oracle_of(&b);
        let qc = solvers::quasi_centroid(&b, Nonassociative::Reject).unwrap();
        let qder = solvers::quasi_derivations(&b, Nonassociative::Reject).unwrap();
        assert_eq!(qc.dim(), o.quasi_centroid_dim());
        assert_eq!(qder.pair_dim(), o.quasi_derivation_pair_dim());
    }
}
