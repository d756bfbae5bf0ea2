//! The shipped catalog data must load and verify cleanly: every
//! expectation in `data/fixtures.cat` passes, and the non-associative
//! sample is skipped with its violating triple.

use qcentroid::catalog::{self, EntryOutcome};

fn data_file(name: &str) -> String {
    let path = format!("{}/../../data/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("reading {path}: {e}"))
}

#[test]
fn fixture_catalog_passes_completely() {
    let entries = catalog::parse_catalog(&data_file("fixtures.cat")).unwrap();
    assert_eq!(entries.len(), 6);
    let report = catalog::batch_verify(&entries);
    assert!(report.summary.skipped.is_empty());
    for result in &report.results {
        for e in &result.expectations {
            assert!(
                e.pass(),
                "{} {}: computed {:?} expected {:?} (dims_match={}, constraints_satisfied={}, \
                 free_count_match={}) {:?}",
                result.name,
                e.kind.token(),
                e.computed,
                e.expected,
                e.dims_match,
                e.constraints_satisfied,
                e.free_count_match,
                e.constraint_failures
            );
        }
    }
    assert!(report.all_pass());
    assert_eq!(report.summary.passed, 6);

    // Aggregates: the only 4-dimensional entry is the full matrix algebra
    // with QC = span{id}; it and everything except As_3^1 is small.
    assert_eq!(report.summary.qc_dim_range_4d, Some((1, 1)));
    let small = &report.summary.small_entries;
    assert_eq!(
        small,
        &["As_2^1", "Zero_2", "Zero_3", "K_1", "M_2"]
            .map(String::from)
            .to_vec()
    );
}

#[test]
fn nonassociative_catalog_is_skipped_not_failed() {
    let entries = catalog::parse_catalog(&data_file("nonassoc.cat")).unwrap();
    assert_eq!(entries.len(), 1);
    match catalog::verify_entry_outcome(&entries[0]) {
        EntryOutcome::SkippedNonAssociative { name, triple } => {
            assert_eq!(name, "NonAssoc_3");
            assert_eq!(triple, (1, 1, 1));
        }
        other => panic!("expected a skip, got {other:?}"),
    }
    let report = catalog::batch_verify(&entries);
    assert_eq!(report.summary.entries, 1);
    assert_eq!(report.summary.passed, 0);
    assert_eq!(report.summary.failed, 0);
    assert!(report.all_pass(), "skips are not failures");
}

#[test]
fn shipped_catalog_round_trips() {
    let text = data_file("fixtures.cat");
    let parsed = catalog::parse_catalog(&text).unwrap();
    let reparsed = catalog::parse_catalog(&catalog::serialize_catalog(&parsed)).unwrap();
    assert_eq!(parsed, reparsed);
}
