//! Structural property checks relating the invariant spaces.
//!
//! Each check verifies a finite, exactly decidable consequence of the
//! theory on the *computed* bases — membership of compositions and brackets,
//! operator identities, and the decomposition of the centroid along an
//! ideal.  A check that fails carries a witness describing the offending
//! maps; informational observations that are not assertions (inclusion of
//! the multiplication operators in `Der(A)`, degenerate-input skips) are
//! collected as notes.
//!
//! All randomness is a fixed-seed in-crate generator, so reports are
//! byte-identical across runs and platforms.

use crate::algebra::{Algebra, Ideal, StructureConstants};
use crate::linmap::LinearMap;
use crate::matrix::MatrixQ;
use crate::rational::{int, Rational};
use crate::solvers::{self, MapSpace, Nonassociative, SolverError};
use crate::subspace::SubspaceQ;
use num::Zero;
use serde_json::{json, Value};

/// One verified (or refuted) assertion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyCheck {
    /// Stable identifier, e.g. `"qc_bracket_qc_in_qderD"`.
    pub name: String,
    pub holds: bool,
    /// Counterexample description; present exactly when `holds` is false.
    pub witness: Option<String>,
}

/// Outcome of a group of property checks on one algebra.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PropertyReport {
    pub checks: Vec<PropertyCheck>,
    /// Observations that are reported but not asserted.
    pub notes: Vec<String>,
}

impl PropertyReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    fn push(&mut self, name: &str, witness: Option<String>) {
        self.checks.push(PropertyCheck {
            name: name.to_string(),
            holds: witness.is_none(),
            witness,
        });
    }

    fn merge(&mut self, other: PropertyReport) {
        self.checks.extend(other.checks);
        self.notes.extend(other.notes);
    }

    /// Machine-readable form with stable keys.
    pub fn to_json(&self) -> Value {
        json!({
            "checks": self.checks.iter().map(|c| {
                json!({
                    "name": c.name,
                    "holds": c.holds,
                    "witness": c.witness,
                })
            }).collect::<Vec<_>>(),
            "notes": self.notes,
            "pass": self.all_hold(),
        })
    }
}

/// Deterministic split-mix generator for the probe maps; fixed seeds keep
/// every report reproducible.
struct SplitMix64(u64);

impl SplitMix64 {
    fn new(seed: u64) -> Self {
        SplitMix64(seed)
    }

    fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform-ish integer in `lo..=hi` (small ranges only).
    fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        let span = (hi - lo + 1) as u64;
        lo + (self.next_u64() % span) as i64
    }
}

/// The four containment laws tying the spaces together:
/// (i) `[Der(A), C(A)] ⊆ C(A)`, (ii) `[QDer-D, QC] ⊆ QC`,
/// (iii) `[QC, QC] ⊆ QDer-D`, (iv) `C(A) ⊆ QDer-D`,
/// where `QDer-D` is the projection of the pair space onto its first
/// component (brackets of endomorphisms need single maps, and a
/// quasi-derivation is a map admitting *some* partner).
///
/// All four are verified by exact membership of every pairwise bracket of
/// basis maps.  Note that (i) is the *bracket*, not the composition: plain
/// composition `d ∘ φ` can leave the centroid (take `d = diag(1, 2)` and
/// `φ = id` on the algebra with `e₁e₁ = e₂`), whereas `[d, φ]` always lands
/// back in it.
pub fn check_lemma_containments(a: &Algebra) -> Result<PropertyReport, SolverError> {
    let der = solvers::derivations(a, Nonassociative::Reject)?;
    let c = solvers::centroid(a, Nonassociative::Reject)?;
    let qc = solvers::quasi_centroid(a, Nonassociative::Reject)?;
    let qder = solvers::quasi_derivations(a, Nonassociative::Reject)?;
    let qder_d = qder.d_projection();

    let mut report = PropertyReport::default();

    report.push(
        "der_bracket_centroid_in_centroid",
        first_failure(der.maps().iter().enumerate(), |(di, d)| {
            c.maps().iter().enumerate().find_map(|(ci, phi)| {
                (!c.contains(&d.commutator(phi)))
                    .then(|| format!("[der #{di}, centroid #{ci}] is not a centroid map"))
            })
        }),
    );

    report.push(
        "qderD_bracket_qc_in_qc",
        first_failure(qder_d.maps().iter().enumerate(), |(qi, q)| {
            qc.maps().iter().enumerate().find_map(|(ci, phi)| {
                (!qc.contains(&q.commutator(phi)))
                    .then(|| format!("[qder_D #{qi}, qc #{ci}] is not in the quasi-centroid"))
            })
        }),
    );

    report.push(
        "qc_bracket_qc_in_qderD",
        first_failure(qc.maps().iter().enumerate(), |(i, phi1)| {
            qc.maps().iter().enumerate().find_map(|(j, phi2)| {
                (!qder_d.contains(&phi1.commutator(phi2)))
                    .then(|| format!("[qc #{i}, qc #{j}] admits no quasi-derivation partner"))
            })
        }),
    );

    report.push(
        "centroid_in_qderD",
        first_failure(c.maps().iter().enumerate(), |(ci, phi)| {
            (!qder_d.contains(phi))
                .then(|| format!("centroid #{ci} admits no quasi-derivation partner"))
        }),
    );

    Ok(report)
}

/// Finds the first witness produced by `f` over `iter`, if any.
fn first_failure<I, T, F>(iter: I, f: F) -> Option<String>
where
    I: IntoIterator<Item = T>,
    F: Fn(T) -> Option<String>,
{
    iter.into_iter().find_map(f)
}

/// Brackets of centroid maps against quasi-centroid maps land in the
/// center: `[φ₁, φ₂](x) ∈ Z(A)` for all `x`; when `Z(A) = 0` the bracket
/// vanishes identically.
pub fn check_centroid_qc_bracket(a: &Algebra) -> Result<PropertyReport, SolverError> {
    let c = solvers::centroid(a, Nonassociative::Reject)?;
    let qc = solvers::quasi_centroid(a, Nonassociative::Reject)?;
    let center = a.center();
    let n = a.dim();

    let mut report = PropertyReport::default();

    report.push(
        "centroid_qc_bracket_image_in_center",
        first_failure(c.maps().iter().enumerate(), |(i, phi1)| {
            qc.maps().iter().enumerate().find_map(|(j, phi2)| {
                let bracket = phi1.commutator(phi2);
                (0..n).find_map(|col| {
                    let image = bracket.apply(&a.basis_element(col));
                    (!center.contains(&image)).then(|| {
                        format!(
                            "[centroid #{i}, qc #{j}] maps e{} outside the center",
                            col + 1
                        )
                    })
                })
            })
        }),
    );

    if center.dim() == 0 {
        report.push(
            "centroid_qc_bracket_vanishes",
            first_failure(c.maps().iter().enumerate(), |(i, phi1)| {
                qc.maps().iter().enumerate().find_map(|(j, phi2)| {
                    (!phi1.commutator(phi2).is_zero())
                        .then(|| format!("[centroid #{i}, qc #{j}] is nonzero but Z(A) = 0"))
                })
            }),
        );
    } else {
        report.notes.push(format!(
            "center has dimension {}; bracket-vanishing clause applies only when Z(A) = 0",
            center.dim()
        ));
    }

    Ok(report)
}

/// Operator identities for derivations: `[d, L_x] = L_{d(x)}` and
/// `[d, R_x] = R_{d(x)}` for every basis `x`; the commutator-bracket rule
/// `d([x, y]) = [d(x), y] + [x, d(y)]` (so each `d` also derives the
/// associated Lie structure); and the converse direction — satisfying the
/// left-multiplication identity for all `x` characterizes membership in
/// `Der(A)` — probed on deterministic random maps, including maps built to
/// lie outside `Der(A)` whenever that is possible.
pub fn check_derivation_operator_identities(a: &Algebra) -> Result<PropertyReport, SolverError> {
    let der = solvers::derivations(a, Nonassociative::Reject)?;
    let n = a.dim();
    let mut report = PropertyReport::default();

    report.push(
        "derivation_commutes_with_left_mult",
        first_failure(der.maps().iter().enumerate(), |(di, d)| {
            (0..n).find_map(|x| {
                let lx = a.left_mult(&a.basis_element(x));
                let ldx = a.left_mult(&d.apply(&a.basis_element(x)));
                (d.commutator(&lx) != ldx)
                    .then(|| format!("[der #{di}, L_e{}] ≠ L_(d e{})", x + 1, x + 1))
            })
        }),
    );

    report.push(
        "derivation_commutes_with_right_mult",
        first_failure(der.maps().iter().enumerate(), |(di, d)| {
            (0..n).find_map(|x| {
                let rx = a.right_mult(&a.basis_element(x));
                let rdx = a.right_mult(&d.apply(&a.basis_element(x)));
                (d.commutator(&rx) != rdx)
                    .then(|| format!("[der #{di}, R_e{}] ≠ R_(d e{})", x + 1, x + 1))
            })
        }),
    );

    report.push(
        "derivation_of_commutator_bracket",
        first_failure(der.maps().iter().enumerate(), |(di, d)| {
            (0..n).find_map(|i| {
                (0..n).find_map(|j| {
                    let ei = a.basis_element(i);
                    let ej = a.basis_element(j);
                    let bracket = sub(&a.multiply(&ei, &ej), &a.multiply(&ej, &ei));
                    let lhs = d.apply(&bracket);
                    let rhs = add(
                        &sub(
                            &a.multiply(&d.apply(&ei), &ej),
                            &a.multiply(&ej, &d.apply(&ei)),
                        ),
                        &sub(
                            &a.multiply(&ei, &d.apply(&ej)),
                            &a.multiply(&d.apply(&ej), &ei),
                        ),
                    );
                    (lhs != rhs).then(|| {
                        format!("der #{di} fails the bracket rule on (e{}, e{})", i + 1, j + 1)
                    })
                })
            })
        }),
    );

    report.push(
        "left_mult_identity_characterizes_derivations",
        converse_probe_witness(a, &der),
    );

    // Observations, not assertions: whether the multiplication operators
    // themselves happen to be derivations (they usually are not).
    let l_in_der = (0..n).all(|i| der.contains(&a.left_mult(&a.basis_element(i))));
    let r_in_der = (0..n).all(|i| der.contains(&a.right_mult(&a.basis_element(i))));
    report
        .notes
        .push(format!("L(A) ⊆ Der(A): {}", if l_in_der { "yes" } else { "no" }));
    report
        .notes
        .push(format!("R(A) ⊆ Der(A): {}", if r_in_der { "yes" } else { "no" }));

    Ok(report)
}

fn add(x: &[Rational], y: &[Rational]) -> Vec<Rational> {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

fn sub(x: &[Rational], y: &[Rational]) -> Vec<Rational> {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

/// Probes the equivalence "`[φ, L_x] = L_{φ(x)}` for all basis `x` ⟺
/// `φ ∈ Der(A)`" on deterministic pseudo-random maps: combinations of the
/// derivation basis, perturbed combinations, and (when `Der(A)` is a proper
/// subspace) one map chosen outside `Der(A)` so the negative direction is
/// always exercised.  Returns a witness on the first inconsistency.
fn converse_probe_witness(a: &Algebra, der: &MapSpace) -> Option<String> {
    let n = a.dim();
    let mut rng = SplitMix64::new(0x5EED_0001);
    let mut probes: Vec<(String, LinearMap)> = Vec::new();

    for t in 0..4 {
        let mut m = LinearMap::zero(n);
        for b in der.maps() {
            m = m.add(&b.scale(&int(rng.int_in(-3, 3))));
        }
        probes.push((format!("combination #{t}"), m));
    }
    for t in 0..4 {
        let mut m = LinearMap::zero(n);
        for b in der.maps() {
            m = m.add(&b.scale(&int(rng.int_in(-3, 3))));
        }
        let r = rng.int_in(0, (n - 1) as i64) as usize;
        let c = rng.int_in(0, (n - 1) as i64) as usize;
        let mut unit = LinearMap::zero(n);
        let flat_idx = r * n + c;
        let mut flat = unit.to_flat();
        flat[flat_idx] = int(1);
        unit = LinearMap::from_flat(n, &flat);
        probes.push((format!("perturbed combination #{t}"), m.add(&unit)));
    }
    if der.dim() < n * n {
        // First standard unit map outside Der(A); exists because the space
        // is proper.
        let outside = (0..n * n).find_map(|idx| {
            let mut flat = vec![Rational::zero(); n * n];
            flat[idx] = int(1);
            let m = LinearMap::from_flat(n, &flat);
            (!der.contains(&m)).then_some(m)
        });
        if let Some(m) = outside {
            probes.push(("unit map outside Der".to_string(), m));
        }
    }

    probes.into_iter().find_map(|(label, m)| {
        let satisfies = (0..n).all(|x| {
            let lx = a.left_mult(&a.basis_element(x));
            let lmx = a.left_mult(&m.apply(&a.basis_element(x)));
            m.commutator(&lx) == lmx
        });
        let member = der.contains(&m);
        (satisfies != member).then(|| {
            format!(
                "probe {label}: identity satisfied = {satisfies}, membership = {member}"
            )
        })
    })
}

/// Decomposition of the centroid along an ideal `I`:
///
/// * `V(I) = {φ ∈ C(A) : φ(I) = 0}` is computed inside the centroid;
/// * the restriction map `α` (sending `φ ∈ V(I)` to the induced map on
///   coset representatives) is checked to be well defined and injective;
/// * when the centroid of `I` (as an algebra in its own right) is exactly
///   the scalar line, the direct-sum decomposition
///   `C(A) = span{id} ⊕ V(I)` is checked by dimension count and
///   zero-intersection.  When that hypothesis fails, the decomposition is
///   skipped with a note rather than asserted.
///
/// Invariance of the ideal under the centroid (`φ(I) ⊆ I` for every basis
/// φ) is itself reported as a check: it is a hypothesis of the
/// decomposition, and on degenerate inputs (a line inside a zero algebra,
/// say, where the centroid is all of `End(A)`) it genuinely fails — the
/// remaining computations are still well defined subspace arithmetic, so
/// the report carries the refutation instead of aborting.  Degenerate
/// ideals (zero, or the whole algebra) skip everything with a note.
pub fn verify_centroid_ideal_decomposition(
    a: &Algebra,
    ideal: &Ideal,
) -> Result<PropertyReport, SolverError> {
    let c = solvers::centroid(a, Nonassociative::Reject)?;
    let n = a.dim();
    let n2 = n * n;
    let mut report = PropertyReport::default();

    if ideal.dim() == 0 || ideal.dim() == n {
        report.notes.push(format!(
            "degenerate ideal (dim {} of {}): centroid decomposition checks skipped",
            ideal.dim(),
            n
        ));
        return Ok(report);
    }

    // Hypothesis: every centroid map keeps I inside I.
    let invariance_witness = first_failure(c.maps().iter().enumerate(), |(idx, phi)| {
        ideal.subspace().basis().iter().find_map(|v| {
            (!ideal.subspace().contains(&phi.apply(v)))
                .then(|| format!("centroid basis #{idx} moves the ideal outside itself"))
        })
    });
    if invariance_witness.is_some() {
        report.notes.push(
            "ideal is not invariant under the centroid: the decomposition hypotheses are not \
             met, remaining checks report raw subspace arithmetic"
                .to_string(),
        );
    }
    report.push("centroid_ideal_invariant_under_centroid", invariance_witness);

    // V(I): combinations of the centroid basis killing the ideal.  The
    // unknowns are coordinates in the centroid basis; each ideal basis
    // vector contributes n equations.
    let c_maps = c.maps();
    let mut rows = Vec::new();
    for v in ideal.subspace().basis() {
        for q in 0..n {
            let row: Vec<Rational> = c_maps
                .iter()
                .map(|phi| phi.apply(v)[q].clone())
                .collect();
            rows.push(row);
        }
    }
    let coeff_kernel = MatrixQ::from_rows(c_maps.len(), rows).nullspace_basis();
    let v_of_i = SubspaceQ::from_vectors(
        n2,
        coeff_kernel
            .basis()
            .iter()
            .map(|t| {
                let mut flat = vec![Rational::zero(); n2];
                for (coef, phi) in t.iter().zip(&c_maps) {
                    if coef.is_zero() {
                        continue;
                    }
                    for (slot, x) in flat.iter_mut().zip(phi.to_flat()) {
                        *slot += &x * coef;
                    }
                }
                flat
            })
            .collect(),
    );
    report
        .notes
        .push(format!("dim V(I) = {}, dim C(A) = {}", v_of_i.dim(), c.dim()));

    // α is well defined on cosets exactly when every φ ∈ V(I) kills I —
    // the restriction to representatives then does not depend on the
    // choice of representative.
    let v_maps: Vec<LinearMap> = v_of_i
        .basis()
        .iter()
        .map(|f| LinearMap::from_flat(n, f))
        .collect();
    report.push(
        "centroid_ideal_alpha_well_defined",
        first_failure(v_maps.iter().enumerate(), |(i, phi)| {
            ideal.subspace().basis().iter().find_map(|v| {
                (!phi.apply(v).iter().all(Rational::is_zero))
                    .then(|| format!("V(I) basis #{i} does not annihilate the ideal"))
            })
        }),
    );

    // α injective: φ ∈ V(I) is determined by its values on the coset
    // representatives, so the stacked-values map must have full rank.
    let quotient = crate::algebra::quotient(a, ideal);
    let reps = &quotient.rep_indices;
    let mut alpha_cols: Vec<Vec<Rational>> = Vec::new();
    for phi in &v_maps {
        let mut col = Vec::with_capacity(reps.len() * n);
        for &r in reps {
            col.extend(phi.apply(&a.basis_element(r)));
        }
        alpha_cols.push(col);
    }
    let alpha_rank = if alpha_cols.is_empty() {
        0
    } else {
        MatrixQ::from_rows(reps.len() * n, alpha_cols).rank()
    };
    report.push(
        "centroid_ideal_alpha_injective",
        (alpha_rank != v_of_i.dim()).then(|| {
            format!(
                "restriction map has rank {alpha_rank} on a {}-dimensional V(I)",
                v_of_i.dim()
            )
        }),
    );

    // Centroid of I as an algebra in its own right.  The ideal basis is in
    // reduced form, so coordinates of products are read off the pivots.
    let ideal_algebra = ideal_as_algebra(a, ideal);
    let c_of_i = solvers::centroid(&ideal_algebra, Nonassociative::Reject)?;
    if c_of_i.dim() == 1 {
        // C(I) = span{id_I} (id is always a centroid map), so the
        // decomposition hypothesis holds.
        let id_flat = LinearMap::identity(n).to_flat();
        let scalars = SubspaceQ::from_vectors(n2, vec![id_flat.clone()]);
        let direct = !v_of_i.contains(&id_flat);
        let span = scalars.sum(&v_of_i);
        report.push(
            "centroid_decomposes_along_ideal",
            (!(direct && span.dim() == c.dim() && c.space().contains_subspace(&span))).then(
                || {
                    format!(
                        "span{{id}} ⊕ V(I) has dim {} (id ∈ V(I): {}) against dim C(A) = {}",
                        span.dim(),
                        !direct,
                        c.dim()
                    )
                },
            ),
        );
    } else {
        report.notes.push(format!(
            "C(I) has dimension {} ≠ 1: decomposition hypothesis not met, check skipped",
            c_of_i.dim()
        ));
    }

    Ok(report)
}

/// The ideal with its induced product, as a standalone algebra over the
/// ideal's canonical basis.
fn ideal_as_algebra(a: &Algebra, ideal: &Ideal) -> Algebra {
    let s = ideal.subspace();
    let q = s.dim();
    let pivots = s.pivot_cols();
    let mut sc = StructureConstants::zero(q);
    for (bi, vi) in s.basis().iter().enumerate() {
        for (bj, vj) in s.basis().iter().enumerate() {
            let prod = a.multiply(vi, vj);
            debug_assert!(s.contains(&prod), "ideal is closed under its product");
            // In an RREF basis the coefficient along row r is the product's
            // coordinate at that row's pivot column.
            for (bk, &p) in pivots.iter().enumerate() {
                sc.set(bi, bj, bk, prod[p].clone());
            }
        }
    }
    Algebra::new(sc).expect("ideal dimension fits any cap the parent fit")
}

/// Runs every property check that applies to `a` and merges the reports.
///
/// The centroid-decomposition check needs an ideal; the center `Z(A)` is
/// used whenever it is proper (`0 < dim Z(A) < n`) — the center is always
/// a centroid-invariant ideal — and skipped with a note otherwise, so
/// degenerate inputs (zero algebras, centerless algebras) still produce a
/// clean all-hold report.
pub fn run_all_checks(a: &Algebra) -> Result<PropertyReport, SolverError> {
    let mut report = check_lemma_containments(a)?;
    report.merge(check_centroid_qc_bracket(a)?);
    report.merge(check_derivation_operator_identities(a)?);

    let z = a.center();
    if z.dim() > 0 && z.dim() < a.dim() {
        let ideal = Ideal::new(a, z).expect("the center is always a two-sided ideal");
        report.merge(verify_centroid_ideal_decomposition(a, &ideal)?);
    } else {
        report.notes.push(format!(
            "center has dimension {} of {}: centroid decomposition along Z(A) skipped",
            z.dim(),
            a.dim()
        ));
    }
    Ok(report)
}
