//! Acceptance suite: one test per published criterion, each asserting the
//! exact expected values (tolerance zero everywhere) and, where stated,
//! a wall-clock bound.  Run with `--nocapture` to see the per-criterion
//! detail lines; the harness result line per test is the pass/fail record.

use std::time::{Duration, Instant};

use qcentroid::properties;
use qcentroid::rational::{int, rat};
use qcentroid::solvers::{self, Nonassociative};
use qcentroid::{catalog, fixtures, Algebra, Ideal, LinearMap, MatrixQ, SubspaceQ};

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

#[test]
fn criterion_01_qc_of_as21_dim_3_with_a12_zero() {
    let a = fixtures::as21();
    let (qc, elapsed) = timed(|| solvers::quasi_centroid(&a, Nonassociative::Reject).unwrap());
    assert_eq!(qc.dim(), 3);
    for m in qc.maps() {
        assert_eq!(*m.entry(0, 1), int(0), "a12 must vanish");
    }
    assert!(elapsed < Duration::from_millis(10), "took {elapsed:?}");
    println!("[PASS] criterion 1: QC(As_2^1) dim 3, all basis maps have a12 = 0 ({elapsed:?})");
}

#[test]
fn criterion_02_qc_of_as31_dim_6_with_pattern() {
    let a = fixtures::as31();
    let (qc, elapsed) = timed(|| solvers::quasi_centroid(&a, Nonassociative::Reject).unwrap());
    assert_eq!(qc.dim(), 6);
    for m in qc.maps() {
        assert_eq!(*m.entry(0, 1), int(0), "a12 must vanish");
        assert_eq!(*m.entry(2, 1), int(0), "a32 must vanish");
        assert_eq!(*m.entry(2, 2), *m.entry(0, 0), "a33 must equal a11");
    }
    assert!(elapsed < Duration::from_millis(10), "took {elapsed:?}");
    println!(
        "[PASS] criterion 2: QC(As_3^1) dim 6 with a12 = 0, a32 = 0, a33 = a11 ({elapsed:?})"
    );
}

#[test]
fn criterion_03_qder_of_as21_projection_and_pair_constraints() {
    let a = fixtures::as21();
    let (qder, elapsed) = timed(|| solvers::quasi_derivations(&a, Nonassociative::Reject).unwrap());
    let d_proj = qder.d_projection();
    assert_eq!(d_proj.dim(), 3);
    for m in d_proj.maps() {
        assert_eq!(*m.entry(0, 1), int(0), "d12 must vanish");
    }
    for (d, dp) in qder.pairs() {
        assert_eq!(*dp.entry(0, 1), int(0), "d'12 must vanish");
        assert_eq!(
            dp.entry(1, 1).clone(),
            d.entry(0, 0).clone() * int(2),
            "d'22 must equal 2·d11"
        );
    }
    assert!(elapsed < Duration::from_millis(10), "took {elapsed:?}");
    println!(
        "[PASS] criterion 3: QDer(As_2^1) D-projection dim 3 with d12 = 0; pairs satisfy \
         d'12 = 0 and d'22 = 2·d11 ({elapsed:?})"
    );
}

#[test]
fn criterion_04_one_dim_idempotent_reproduces_the_d_2d_shape() {
    let a = fixtures::k1();
    let qder = solvers::quasi_derivations(&a, Nonassociative::Reject).unwrap();
    assert_eq!(qder.pair_dim(), 1);
    let pairs = qder.pairs();
    let (d, dp) = &pairs[0];
    // Dimension 1: D = d11·id and D' = 2·d11·id.
    assert_eq!(dp.entry(0, 0).clone(), d.entry(0, 0).clone() * int(2));
    assert!(!d.is_zero());
    println!("[PASS] criterion 4: 1-dim idempotent has QDer pairs (d, 2d), dim 1");
}

#[test]
fn criterion_05_property_suite_passes_on_every_associative_fixture() {
    let (_, elapsed) = timed(|| {
        for (name, a) in fixtures::all_associative() {
            let report = properties::run_all_checks(&a).unwrap();
            assert!(
                report.all_hold(),
                "{name}: {:?}",
                report
                    .checks
                    .iter()
                    .filter(|c| !c.holds)
                    .collect::<Vec<_>>()
            );
        }
        // The decomposition criterion names As_2^1 with I = span{e2}
        // explicitly; run it directly as well.
        let a = fixtures::as21();
        let ideal = Ideal::new(&a, SubspaceQ::from_vectors(2, vec![a.basis_element(1)])).unwrap();
        let report = properties::verify_centroid_ideal_decomposition(&a, &ideal).unwrap();
        assert!(report.all_hold());
        assert!(report
            .checks
            .iter()
            .any(|c| c.name == "centroid_decomposes_along_ideal" && c.holds));
    });
    assert!(elapsed < Duration::from_secs(2), "took {elapsed:?}");
    println!(
        "[PASS] criterion 5: property suite (containments, center bracket, operator \
         identities, centroid decomposition) holds on every associative fixture ({elapsed:?})"
    );
}

#[test]
fn criterion_06_oracle_equivalence_on_low_dimensional_fixtures() {
    use qcentroid_oracle::NaiveAlgebra;
    let mut checked = 0;
    for (name, a) in fixtures::all_associative() {
        if a.dim() > 3 {
            continue;
        }
        let n = a.dim();
        let mut o = NaiveAlgebra::new(n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    o.set_product(i, j, k, a.structure_constants().gamma(i, j, k).clone());
                }
            }
        }
        let policy = Nonassociative::Reject;
        assert_eq!(
            solvers::derivations(&a, policy).unwrap().dim(),
            o.derivation_dim(),
            "{name}: Der"
        );
        assert_eq!(
            solvers::centroid(&a, policy).unwrap().dim(),
            o.centroid_dim(),
            "{name}: C"
        );
        assert_eq!(
            solvers::quasi_centroid(&a, policy).unwrap().dim(),
            o.quasi_centroid_dim(),
            "{name}: QC"
        );
        assert_eq!(
            solvers::central_derivations(&a, policy).unwrap().dim(),
            o.central_derivation_dim(),
            "{name}: ZDer"
        );
        assert_eq!(
            solvers::quasi_derivations(&a, policy).unwrap().pair_dim(),
            o.quasi_derivation_pair_dim(),
            "{name}: QDer"
        );
        checked += 1;
    }
    assert!(checked >= 5, "expected at least five low-dimensional fixtures");
    println!(
        "[PASS] criterion 6: production dimensions equal the independent oracle on all \
         {checked} fixtures of dimension <= 3"
    );
}

/// Deterministic generator for the randomized trials (fixed seeds keep the
/// acceptance run reproducible).
struct SplitMix64(u64);

impl SplitMix64 {
    fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        lo + (self.next_u64() % ((hi - lo + 1) as u64)) as i64
    }
}

fn random_invertible(n: usize, rng: &mut SplitMix64) -> MatrixQ {
    // Unit lower-triangular times unit upper-triangular: always invertible.
    let mut l = MatrixQ::identity(n);
    let mut u = MatrixQ::identity(n);
    for r in 0..n {
        for c in 0..n {
            if r > c {
                l.set(r, c, int(rng.int_in(-3, 3)));
            } else if r < c {
                u.set(r, c, int(rng.int_in(-3, 3)));
            }
        }
    }
    l.mul(&u)
}

#[test]
fn criterion_07_equivariance_and_scaling_over_100_trials_per_fixture() {
    let mut rng = SplitMix64(0xACCE_5507);
    let policy = Nonassociative::Reject;
    for (name, a) in fixtures::all_associative() {
        let n = a.dim();
        let der_a = solvers::derivations(&a, policy).unwrap();
        let qc_a = solvers::quasi_centroid(&a, policy).unwrap();
        let qd_a = solvers::quasi_derivations(&a, policy).unwrap();

        for trial in 0..100 {
            // Scaling invariance: a nonzero rational leaves every space
            // untouched.
            let lambda = loop {
                let p = rng.int_in(-9, 9);
                if p != 0 {
                    break rat(p, rng.int_in(1, 4));
                }
            };
            let scaled =
                Algebra::new(a.structure_constants().clone().scale(&lambda)).unwrap();
            assert_eq!(
                solvers::quasi_centroid(&scaled, policy).unwrap().space(),
                qc_a.space(),
                "{name} trial {trial}: QC changed under scaling by {lambda}"
            );
            assert_eq!(
                solvers::quasi_derivations(&scaled, policy).unwrap().space(),
                qd_a.space(),
                "{name} trial {trial}: QDer changed under scaling"
            );

            // Basis-change equivariance: a map m in the new basis
            // corresponds to P·m·P^{-1} in the old one.
            let p = random_invertible(n, &mut rng);
            let p_inv = p.inverse().expect("triangular product is invertible");
            let transformed = Algebra::new(
                a.structure_constants()
                    .change_basis(&p)
                    .expect("p is invertible"),
            )
            .unwrap();
            let der_t = solvers::derivations(&transformed, policy).unwrap();
            assert_eq!(der_t.dim(), der_a.dim(), "{name} trial {trial}: Der dim");
            for m in der_t.maps() {
                let back = LinearMap::new(p.mul(m.matrix()).mul(&p_inv));
                assert!(
                    der_a.contains(&back),
                    "{name} trial {trial}: conjugated derivation escaped Der"
                );
            }
            let qc_t = solvers::quasi_centroid(&transformed, policy).unwrap();
            assert_eq!(qc_t.dim(), qc_a.dim(), "{name} trial {trial}: QC dim");
            for m in qc_t.maps() {
                let back = LinearMap::new(p.mul(m.matrix()).mul(&p_inv));
                assert!(
                    qc_a.contains(&back),
                    "{name} trial {trial}: conjugated QC map escaped QC"
                );
            }
            let qd_t = solvers::quasi_derivations(&transformed, policy).unwrap();
            assert_eq!(
                qd_t.pair_dim(),
                qd_a.pair_dim(),
                "{name} trial {trial}: QDer pair dim"
            );
            for (d, dp) in qd_t.pairs() {
                let d_back = LinearMap::new(p.mul(d.matrix()).mul(&p_inv));
                let dp_back = LinearMap::new(p.mul(dp.matrix()).mul(&p_inv));
                assert!(
                    qd_a.contains_pair(&d_back, &dp_back),
                    "{name} trial {trial}: conjugated pair escaped QDer"
                );
            }
        }
    }
    println!(
        "[PASS] criterion 7: equivariance and scaling invariance held on 100 randomized \
         trials for each fixture"
    );
}

#[test]
fn criterion_08_conditional_drop_in_catalog() {
    let path = std::env::var("QCENTROID_RRB_CATALOG").unwrap_or_else(|_| {
        format!("{}/../../data/rrb.cat", env!("CARGO_MANIFEST_DIR"))
    });
    let text = match std::fs::read_to_string(&path) {
        Ok(t) => t,
        Err(_) => {
            println!(
                "[SKIP] criterion 8: no drop-in catalog at {path} (set QCENTROID_RRB_CATALOG \
                 to supply one); conditional table reproduction not exercised"
            );
            return;
        }
    };
    let entries = catalog::parse_catalog(&text).unwrap_or_else(|e| {
        panic!("drop-in catalog {path} failed to parse: {e}");
    });
    let mut four_dim = 0;
    for entry in &entries {
        match catalog::verify_entry_outcome(entry) {
            catalog::EntryOutcome::Verified {
                result,
                qc_dim,
                small,
            } => {
                if entry.dim == 4 {
                    four_dim += 1;
                    assert!(
                        (1..=10).contains(&qc_dim),
                        "{}: QC dim {qc_dim} outside [1, 10]",
                        entry.name
                    );
                }
                // Entries the catalog marks small must test small.
                for exp in &entry.expectations {
                    if exp.expected == catalog::Expected::Small(true) {
                        assert!(small, "{}: expected small quasi-centroid", entry.name);
                    }
                }
                assert!(result.pass(), "{}: expectations failed", entry.name);
            }
            catalog::EntryOutcome::SkippedNonAssociative { name, triple } => {
                panic!("drop-in entry {name} is non-associative at {triple:?}");
            }
        }
    }
    println!(
        "[PASS] criterion 8: drop-in catalog verified ({} entries, {four_dim} four-dimensional, \
         all QC dims within [1, 10])",
        entries.len()
    );
}

#[test]
fn criterion_09_timing_single_qder_solve_and_full_pipeline() {
    // One 4-dimensional quasi-derivation solve: 64 equations, 32 unknowns.
    let m2 = fixtures::m2();
    let (qder, single) = timed(|| solvers::quasi_derivations(&m2, Nonassociative::Reject).unwrap());
    assert_eq!(qder.pair_dim(), 4);
    assert!(single < Duration::from_secs(1), "single solve took {single:?}");

    // Full fixture verification pipeline: parse the shipped catalog and
    // verify every expectation of every entry.
    let path = format!("{}/../../data/fixtures.cat", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(path).unwrap();
    let (report, pipeline) = timed(|| {
        let entries = catalog::parse_catalog(&text).unwrap();
        catalog::batch_verify(&entries)
    });
    assert!(report.all_pass());
    assert_eq!(report.summary.failed, 0);
    assert!(pipeline < Duration::from_secs(10), "pipeline took {pipeline:?}");
    println!(
        "[PASS] criterion 9: 4-dim QDer solve in {single:?} (< 1 s); fixture pipeline in \
         {pipeline:?} (< 10 s)"
    );
}
