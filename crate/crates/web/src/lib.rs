//! WebAssembly bindings for the invariant solvers: paste a catalog into the
//! demo page, get exact answers back as JSON.
//!
//! Every exported function takes the catalog text as a string and returns a
//! JSON string; parse and precondition problems come back as a document with
//! a single `error` key instead of an exception, so the page script needs no
//! try/catch plumbing.  The crate also builds as a plain Rust library, which
//! is how its tests run.

use wasm_bindgen::prelude::wasm_bindgen;

use qcentroid::catalog::{self, CatalogEntry};
use qcentroid::properties;
use qcentroid::rational::format_rational;
use qcentroid::solvers::{self, Nonassociative};
use qcentroid::LinearMap;

fn error_doc(message: impl std::fmt::Display) -> String {
    serde_json::json!({ "error": message.to_string() }).to_string()
}

fn parse(text: &str) -> Result<Vec<CatalogEntry>, String> {
    catalog::parse_catalog(text).map_err(error_doc)
}

fn matrix_rows(m: &LinearMap) -> Vec<Vec<String>> {
    let n = m.dim();
    (0..n)
        .map(|r| (0..n).map(|c| format_rational(m.entry(r, c))).collect())
        .collect()
}

/// Computes all five invariant spaces of every algebra in `text`.
///
/// Returns `{"algebras": [{name, dim, associative, der_dim, centroid_dim,
/// qc_dim, qc_small, zder_dim, qder_pair_dim, qder_d_projection_dim,
/// qder_dprime_projection_dim, qc_basis}]}`.  Non-associative entries are
/// still listed (the systems are solved verbatim) but flagged, with the
/// violating basis triple.
#[wasm_bindgen]
pub fn compute_invariants(text: &str) -> String {
    let entries = match parse(text) {
        Ok(e) => e,
        Err(doc) => return doc,
    };
    let mut algebras = Vec::new();
    for entry in &entries {
        let a = entry.to_algebra().expect("parser enforces the dimension cap");
        let policy = Nonassociative::Allow;
        let der = solvers::derivations(&a, policy).expect("policy allows");
        let c = solvers::centroid(&a, policy).expect("policy allows");
        let qc = solvers::quasi_centroid(&a, policy).expect("policy allows");
        let zder = solvers::central_derivations(&a, policy).expect("policy allows");
        let qder = solvers::quasi_derivations(&a, policy).expect("policy allows");
        let small = solvers::is_small_quasi_centroid(&a, policy).expect("policy allows");
        algebras.push(serde_json::json!({
            "name": entry.name,
            "dim": entry.dim,
            "associative": a.first_nonassociative_triple().is_none(),
            "nonassociative_triple": a.first_nonassociative_triple(),
            "der_dim": der.dim(),
            "centroid_dim": c.dim(),
            "qc_dim": qc.dim(),
            "qc_small": small.is_small,
            "zder_dim": zder.dim(),
            "qder_pair_dim": qder.pair_dim(),
            "qder_d_projection_dim": qder.d_projection().dim(),
            "qder_dprime_projection_dim": qder.dprime_projection().dim(),
            "qc_basis": qc.maps().iter().map(matrix_rows).collect::<Vec<_>>(),
        }));
    }
    serde_json::json!({ "algebras": algebras }).to_string()
}

/// Verifies every entry of the catalog against its `expect` lines and
/// returns the machine-format batch report (same schema as the CLI).
#[wasm_bindgen]
pub fn verify_catalog(text: &str) -> String {
    let entries = match parse(text) {
        Ok(e) => e,
        Err(doc) => return doc,
    };
    let outcomes = entries
        .iter()
        .map(|e| (e.dim, catalog::verify_entry_outcome(e)))
        .collect();
    catalog::machine_report(&catalog::assemble_batch(outcomes)).to_string()
}

/// Runs the structural property suite on every associative entry.
///
/// Returns `{"reports": [{name, skipped, checks, notes, pass}]}`; entries
/// with a non-associative table are marked `skipped` with the violating
/// triple instead of a check list.
#[wasm_bindgen]
pub fn run_property_checks(text: &str) -> String {
    let entries = match parse(text) {
        Ok(e) => e,
        Err(doc) => return doc,
    };
    let mut reports = Vec::new();
    for entry in &entries {
        let a = entry.to_algebra().expect("parser enforces the dimension cap");
        if let Some(triple) = a.first_nonassociative_triple() {
            reports.push(serde_json::json!({
                "name": entry.name,
                "skipped": true,
                "nonassociative_triple": triple,
            }));
            continue;
        }
        let report = properties::run_all_checks(&a).expect("associativity just established");
        let mut doc = report.to_json();
        let obj = doc.as_object_mut().expect("report is an object");
        obj.insert("name".into(), serde_json::json!(entry.name));
        obj.insert("skipped".into(), serde_json::json!(false));
        reports.push(doc);
    }
    serde_json::json!({ "reports": reports }).to_string()
}
