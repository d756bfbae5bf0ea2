//! Solvers for the derivation-type invariant spaces.
//!
//! Every invariant here is the solution space of a homogeneous linear
//! system in the entries of an unknown map (or pair of maps), with
//! coefficients read off the structure constants:
//!
//! * derivations `Der(A)`:            `d(xy) = d(x)y + x d(y)`
//! * centroid `C(A)`:                 `φ(xy) = φ(x)y = x φ(y)`
//! * quasi-centroid `QC(A)`:          `φ(x)y = x φ(y)`
//! * central derivations `ZDer(A)`:   `φ(x)y = x φ(y) = 0`
//! * quasi-derivations `QDer(A)`:     `D(x)y + x D(y) = D′(xy)` for some `D′`
//!
//! Unknown entries `d_{pk}` are flattened row-major (`p` outer); equations
//! are emitted in lexicographic `(i, j, p)` order.  Together with the
//! deterministic row reduction this makes every basis reproducible, so the
//! constraint patterns of published tables can be checked literally.
//!
//! Solvers refuse non-associative input unless the caller passes
//! [`Nonassociative::Allow`]: the systems are formally meaningful for any
//! bilinear product, but their dimensions only mean what classification
//! tables mean when the product is associative.

use crate::algebra::Algebra;
use crate::linmap::LinearMap;
use crate::matrix::MatrixQ;
use crate::rational::Rational;
use crate::subspace::SubspaceQ;
use num::Zero;
use thiserror::Error;

/// Policy for structure constants that fail the associativity scan.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Nonassociative {
    /// Refuse with [`SolverError::NonAssociative`] (the default stance).
    Reject,
    /// Solve anyway; the caller takes responsibility for interpretation.
    Allow,
}

/// Errors produced by the invariant solvers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error(
        "product is not associative: first violating basis triple is ({i}, {j}, {k}); \
         pass the override to solve anyway"
    )]
    NonAssociative { i: usize, j: usize, k: usize },
}

fn require_associative(a: &Algebra, policy: Nonassociative) -> Result<(), SolverError> {
    match (policy, a.first_nonassociative_triple()) {
        (Nonassociative::Reject, Some((i, j, k))) => {
            Err(SolverError::NonAssociative { i, j, k })
        }
        _ => Ok(()),
    }
}

/// Which defining identity a [`MapSpace`] solves.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapKind {
    Derivations,
    Centroid,
    QuasiCentroid,
    CentralDerivations,
    QDerProjectionD,
    QDerProjectionDPrime,
}

impl MapKind {
    /// Stable short name used in reports.
    pub fn as_str(self) -> &'static str {
        match self {
            MapKind::Derivations => "der",
            MapKind::Centroid => "centroid",
            MapKind::QuasiCentroid => "qc",
            MapKind::CentralDerivations => "zder",
            MapKind::QDerProjectionD => "qder_D",
            MapKind::QDerProjectionDPrime => "qder_Dprime",
        }
    }
}

/// A canonical basis of a space of linear maps, flattened to ℚ^(n²).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapSpace {
    n: usize,
    kind: MapKind,
    space: SubspaceQ,
}

impl MapSpace {
    fn new(n: usize, kind: MapKind, space: SubspaceQ) -> Self {
        assert_eq!(space.ambient_dim(), n * n, "map space ambient mismatch");
        MapSpace { n, kind, space }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> MapKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// The underlying canonical subspace of ℚ^(n²).
    pub fn space(&self) -> &SubspaceQ {
        &self.space
    }

    /// Basis vectors reshaped into maps.
    pub fn maps(&self) -> Vec<LinearMap> {
        self.space
            .basis()
            .iter()
            .map(|v| LinearMap::from_flat(self.n, v))
            .collect()
    }

    /// Exact membership of a map in the space.
    pub fn contains(&self, m: &LinearMap) -> bool {
        self.space.contains(&m.to_flat())
    }
}

/// Solution space of the quasi-derivation pair system over ℚ^(2n²):
/// coordinates `0..n²` are the flattened `D`, coordinates `n²..2n²` the
/// flattened `D′`.  The projections onto each half are solved out at
/// construction (the raw half-slices of a canonical pair basis are not
/// themselves canonical, so each is re-reduced).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QDerPairSpace {
    n: usize,
    space: SubspaceQ,
    d_projection: MapSpace,
    dprime_projection: MapSpace,
}

impl QDerPairSpace {
    fn new(n: usize, space: SubspaceQ) -> Self {
        assert_eq!(space.ambient_dim(), 2 * n * n, "pair space ambient mismatch");
        let halves = |lo: usize, hi: usize| -> Vec<Vec<Rational>> {
            space.basis().iter().map(|v| v[lo..hi].to_vec()).collect()
        };
        let n2 = n * n;
        let d_projection = MapSpace::new(
            n,
            MapKind::QDerProjectionD,
            SubspaceQ::from_vectors(n2, halves(0, n2)),
        );
        let dprime_projection = MapSpace::new(
            n,
            MapKind::QDerProjectionDPrime,
            SubspaceQ::from_vectors(n2, halves(n2, 2 * n2)),
        );
        QDerPairSpace {
            n,
            space,
            d_projection,
            dprime_projection,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Dimension of the space of pairs `(D, D′)`.
    pub fn pair_dim(&self) -> usize {
        self.space.dim()
    }

    /// The underlying canonical subspace of ℚ^(2n²).
    pub fn space(&self) -> &SubspaceQ {
        &self.space
    }

    /// Basis pairs `(D, D′)`.
    pub fn pairs(&self) -> Vec<(LinearMap, LinearMap)> {
        let n2 = self.n * self.n;
        self.space
            .basis()
            .iter()
            .map(|v| {
                (
                    LinearMap::from_flat(self.n, &v[..n2]),
                    LinearMap::from_flat(self.n, &v[n2..]),
                )
            })
            .collect()
    }

    pub fn contains_pair(&self, d: &LinearMap, dprime: &LinearMap) -> bool {
        let mut flat = d.to_flat();
        flat.extend(dprime.to_flat());
        self.space.contains(&flat)
    }

    /// Projection onto the first component `D`.
    pub fn d_projection(&self) -> &MapSpace {
        &self.d_projection
    }

    /// Projection onto the second component `D′`.
    pub fn dprime_projection(&self) -> &MapSpace {
        &self.dprime_projection
    }
}

// --- direct identity evaluation -------------------------------------------
//
// These predicates check the defining identities by actually multiplying
// elements, independently of the coefficient formulas used to assemble the
// systems below.  The solvers debug-assert their output against them, and
// the property tests use them as ground truth.

/// `m(xy) = m(x)y + x m(y)` on all basis pairs.
pub fn is_derivation(a: &Algebra, m: &LinearMap) -> bool {
    let n = a.dim();
    (0..n).all(|i| {
        (0..n).all(|j| {
            let ei = a.basis_element(i);
            let ej = a.basis_element(j);
            let lhs = m.apply(&a.multiply(&ei, &ej));
            let mut rhs = a.multiply(&m.apply(&ei), &ej);
            for (r, t) in rhs.iter_mut().zip(a.multiply(&ei, &m.apply(&ej))) {
                *r += t;
            }
            lhs == rhs
        })
    })
}

/// `m(xy) = m(x)y = x m(y)` on all basis pairs.
pub fn is_centroid_map(a: &Algebra, m: &LinearMap) -> bool {
    let n = a.dim();
    (0..n).all(|i| {
        (0..n).all(|j| {
            let ei = a.basis_element(i);
            let ej = a.basis_element(j);
            let fxy = m.apply(&a.multiply(&ei, &ej));
            let fx_y = a.multiply(&m.apply(&ei), &ej);
            let x_fy = a.multiply(&ei, &m.apply(&ej));
            fxy == fx_y && fxy == x_fy
        })
    })
}

/// `m(x)y = x m(y)` on all basis pairs.
pub fn is_quasi_centroid_map(a: &Algebra, m: &LinearMap) -> bool {
    let n = a.dim();
    (0..n).all(|i| {
        (0..n).all(|j| {
            let ei = a.basis_element(i);
            let ej = a.basis_element(j);
            a.multiply(&m.apply(&ei), &ej) == a.multiply(&ei, &m.apply(&ej))
        })
    })
}

/// `m(x)y = x m(y) = 0` on all basis pairs.
pub fn is_central_derivation_map(a: &Algebra, m: &LinearMap) -> bool {
    let n = a.dim();
    (0..n).all(|i| {
        (0..n).all(|j| {
            let ei = a.basis_element(i);
            let ej = a.basis_element(j);
            a.multiply(&m.apply(&ei), &ej).iter().all(Rational::is_zero)
                && a.multiply(&ei, &m.apply(&ej)).iter().all(Rational::is_zero)
        })
    })
}

/// `d(x)y + x d(y) = dprime(xy)` on all basis pairs.
pub fn is_qder_pair(a: &Algebra, d: &LinearMap, dprime: &LinearMap) -> bool {
    let n = a.dim();
    (0..n).all(|i| {
        (0..n).all(|j| {
            let ei = a.basis_element(i);
            let ej = a.basis_element(j);
            let mut lhs = a.multiply(&d.apply(&ei), &ej);
            for (l, t) in lhs.iter_mut().zip(a.multiply(&ei, &d.apply(&ej))) {
                *l += t;
            }
            lhs == dprime.apply(&a.multiply(&ei, &ej))
        })
    })
}

// --- system assembly -------------------------------------------------------

/// Coefficient matrix of the derivation system: one row per `(i, j, p)` in
/// lexicographic order, `Σ_k ( d_{ki}γ_{kj}^p + d_{kj}γ_{ik}^p − γ_{ij}^k d_{pk} ) = 0`,
/// over the n² unknowns `d_{pk}` at flat index `p·n + k`.
fn derivation_system(a: &Algebra) -> MatrixQ {
    let sc = a.structure_constants();
    let n = a.dim();
    let mut rows = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            for p in 0..n {
                let mut row = vec![Rational::zero(); n * n];
                for k in 0..n {
                    row[k * n + i] += sc.gamma(k, j, p);
                    row[k * n + j] += sc.gamma(i, k, p);
                    row[p * n + k] -= sc.gamma(i, j, k);
                }
                rows.push(row);
            }
        }
    }
    MatrixQ::from_rows(n * n, rows)
}

/// Coefficient matrix of the centroid system: for each `(i, j, q)` the two
/// rows `Σ_k γ_{ij}^k a_{qk} − Σ_p a_{pi}γ_{pj}^q = 0` and
/// `Σ_k γ_{ij}^k a_{qk} − Σ_p a_{pj}γ_{ip}^q = 0`.
fn centroid_system(a: &Algebra) -> MatrixQ {
    let sc = a.structure_constants();
    let n = a.dim();
    let mut rows = Vec::with_capacity(2 * n * n * n);
    for i in 0..n {
        for j in 0..n {
            for q in 0..n {
                let mut left = vec![Rational::zero(); n * n];
                let mut right = vec![Rational::zero(); n * n];
                for k in 0..n {
                    left[q * n + k] += sc.gamma(i, j, k);
                    right[q * n + k] += sc.gamma(i, j, k);
                }
                for p in 0..n {
                    left[p * n + i] -= sc.gamma(p, j, q);
                    right[p * n + j] -= sc.gamma(i, p, q);
                }
                rows.push(left);
                rows.push(right);
            }
        }
    }
    MatrixQ::from_rows(n * n, rows)
}

/// Coefficient matrix of the quasi-centroid system: one row per `(i, j, q)`,
/// `Σ_p ( a_{pi}γ_{pj}^q − a_{pj}γ_{ip}^q ) = 0`.
fn quasi_centroid_system(a: &Algebra) -> MatrixQ {
    let sc = a.structure_constants();
    let n = a.dim();
    let mut rows = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            for q in 0..n {
                let mut row = vec![Rational::zero(); n * n];
                for p in 0..n {
                    row[p * n + i] += sc.gamma(p, j, q);
                    row[p * n + j] -= sc.gamma(i, p, q);
                }
                rows.push(row);
            }
        }
    }
    MatrixQ::from_rows(n * n, rows)
}

/// Coefficient matrix of the central-derivation system: for each
/// `(i, j, q)` the two rows `Σ_p a_{pi}γ_{pj}^q = 0` and
/// `Σ_p a_{pj}γ_{ip}^q = 0`.
fn central_derivation_system(a: &Algebra) -> MatrixQ {
    let sc = a.structure_constants();
    let n = a.dim();
    let mut rows = Vec::with_capacity(2 * n * n * n);
    for i in 0..n {
        for j in 0..n {
            for q in 0..n {
                let mut left = vec![Rational::zero(); n * n];
                let mut right = vec![Rational::zero(); n * n];
                for p in 0..n {
                    left[p * n + i] += sc.gamma(p, j, q);
                    right[p * n + j] += sc.gamma(i, p, q);
                }
                rows.push(left);
                rows.push(right);
            }
        }
    }
    MatrixQ::from_rows(n * n, rows)
}

/// Coefficient matrix of the quasi-derivation pair system over the 2n²
/// unknowns `[D; D′]` (entry `d′_{pk}` at flat index `n² + p·n + k`): one
/// row per `(i, j, p)`,
/// `Σ_k ( d_{ki}γ_{kj}^p + d_{kj}γ_{ik}^p ) − Σ_k γ_{ij}^k d′_{pk} = 0`.
fn quasi_derivation_system(a: &Algebra) -> MatrixQ {
    let sc = a.structure_constants();
    let n = a.dim();
    let n2 = n * n;
    let mut rows = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            for p in 0..n {
                let mut row = vec![Rational::zero(); 2 * n2];
                for k in 0..n {
                    row[k * n + i] += sc.gamma(k, j, p);
                    row[k * n + j] += sc.gamma(i, k, p);
                    row[n2 + p * n + k] -= sc.gamma(i, j, k);
                }
                rows.push(row);
            }
        }
    }
    MatrixQ::from_rows(2 * n2, rows)
}

// --- public solvers ---------------------------------------------------------

/// The derivation algebra `Der(A)`.
pub fn derivations(a: &Algebra, policy: Nonassociative) -> Result<MapSpace, SolverError> {
    require_associative(a, policy)?;
    let space = derivation_system(a).nullspace_basis();
    let out = MapSpace::new(a.dim(), MapKind::Derivations, space);
    debug_assert!(out.maps().iter().all(|m| is_derivation(a, m)));
    Ok(out)
}

/// The centroid `C(A)` (also written `Λ(A)`).
pub fn centroid(a: &Algebra, policy: Nonassociative) -> Result<MapSpace, SolverError> {
    require_associative(a, policy)?;
    let space = centroid_system(a).nullspace_basis();
    let out = MapSpace::new(a.dim(), MapKind::Centroid, space);
    debug_assert!(out.maps().iter().all(|m| is_centroid_map(a, m)));
    Ok(out)
}

/// The quasi-centroid `QC(A)`.
pub fn quasi_centroid(a: &Algebra, policy: Nonassociative) -> Result<MapSpace, SolverError> {
    require_associative(a, policy)?;
    let space = quasi_centroid_system(a).nullspace_basis();
    let out = MapSpace::new(a.dim(), MapKind::QuasiCentroid, space);
    debug_assert!(out.maps().iter().all(|m| is_quasi_centroid_map(a, m)));
    Ok(out)
}

/// The central derivations `ZDer(A)` — maps whose image annihilates the
/// algebra on both sides.
pub fn central_derivations(
    a: &Algebra,
    policy: Nonassociative,
) -> Result<MapSpace, SolverError> {
    require_associative(a, policy)?;
    let space = central_derivation_system(a).nullspace_basis();
    let out = MapSpace::new(a.dim(), MapKind::CentralDerivations, space);
    debug_assert!(out.maps().iter().all(|m| is_central_derivation_map(a, m)));
    Ok(out)
}

/// The quasi-derivations `QDer(A)` as a space of pairs `(D, D′)` with both
/// projections.
pub fn quasi_derivations(
    a: &Algebra,
    policy: Nonassociative,
) -> Result<QDerPairSpace, SolverError> {
    require_associative(a, policy)?;
    let space = quasi_derivation_system(a).nullspace_basis();
    let out = QDerPairSpace::new(a.dim(), space);
    debug_assert!(out.pairs().iter().all(|(d, dp)| is_qder_pair(a, d, dp)));
    Ok(out)
}

/// Dimensions involved in the smallness test for the quasi-centroid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmallnessReport {
    /// `QC(A) = ZDer(A) + span{id}` as subspaces.
    pub is_small: bool,
    pub qc_dim: usize,
    pub zder_dim: usize,
    /// Dimension of the linear span `ZDer(A) + span{id}` (≤ `zder_dim + 1`).
    pub zder_plus_scalars_dim: usize,
}

/// Whether the quasi-centroid is *small*: spanned by the central
/// derivations together with the scalar maps.  The containment
/// `ZDer(A) + span{id} ⊆ QC(A)` always holds, so equality is decided by
/// comparing dimensions; both are reported.  "Spanned" is linear span —
/// the report carries the dimensions either way, so a reader who prefers
/// subalgebra generation can see exactly what was compared.
pub fn is_small_quasi_centroid(
    a: &Algebra,
    policy: Nonassociative,
) -> Result<SmallnessReport, SolverError> {
    let qc = quasi_centroid(a, policy)?;
    let zder = central_derivations(a, policy)?;
    let id = LinearMap::identity(a.dim()).to_flat();
    let scalars = SubspaceQ::from_vectors(a.dim() * a.dim(), vec![id]);
    let span = zder.space().sum(&scalars);
    debug_assert!(qc.space().contains_subspace(&span));
    Ok(SmallnessReport {
        is_small: span.dim() == qc.dim(),
        qc_dim: qc.dim(),
        zder_dim: zder.dim(),
        zder_plus_scalars_dim: span.dim(),
    })
}
