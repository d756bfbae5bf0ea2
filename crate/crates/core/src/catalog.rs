//! Catalog of named algebras with expected invariants, and batch
//! verification of computed results against those expectations.
//!
//! A catalog is a line-oriented UTF-8 text (`#` starts a comment):
//!
//! ```text
//! algebra As_2^1 dim 2
//! product 1 1 = 1*e2          # e1·e1 = e2; unspecified products are zero
//! expect qc dim 3 constraints a(1,2)=0
//! expect small yes
//! end
//! ```
//!
//! Expectation kinds are `der`, `centroid`, `qc`, `zder`, `qder_pair`,
//! `qder_D`, `center`, and `small`.  Constraints are linear equations over
//! matrix-entry symbols `a(r,c)` with rational coefficients; for
//! `qder_pair` they address the stacked `(2n)×n` matrix whose rows `1..n`
//! are the map `D` and rows `n+1..2n` its partner `D′`.  Constraints carry
//! no meaning for `center` (a subspace of the algebra, not of `End(A)`)
//! or `small` (a boolean) and are rejected there.
//!
//! Verification of one expectation reports three booleans: the computed
//! dimension matches, every computed basis map satisfies every constraint,
//! and the constraint count is honest (expected dim = number of unknowns −
//! rank of the constraint set).  Inconsistent constraint sets are rejected
//! at load time by the same rank test.

use crate::algebra::{Algebra, AlgebraError, StructureConstants, DEFAULT_DIM_CAP};
use crate::matrix::MatrixQ;
use crate::rational::{format_rational, parse_rational, Rational};
use crate::solvers::{self, Nonassociative, SolverError};
use num::{One, Signed, Zero};
use serde_json::{json, Value};
use thiserror::Error;

/// Catalog load failure, pointing at the offending line.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct CatalogError {
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, CatalogError> {
    Err(CatalogError {
        line,
        message: message.into(),
    })
}

/// Which invariant an expectation targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExpectKind {
    Der,
    Centroid,
    QuasiCentroid,
    CentralDerivations,
    QDerPair,
    QDerD,
    Center,
    Small,
}

impl ExpectKind {
    pub fn token(self) -> &'static str {
        match self {
            ExpectKind::Der => "der",
            ExpectKind::Centroid => "centroid",
            ExpectKind::QuasiCentroid => "qc",
            ExpectKind::CentralDerivations => "zder",
            ExpectKind::QDerPair => "qder_pair",
            ExpectKind::QDerD => "qder_D",
            ExpectKind::Center => "center",
            ExpectKind::Small => "small",
        }
    }

    fn from_token(s: &str) -> Option<Self> {
        Some(match s {
            "der" => ExpectKind::Der,
            "centroid" => ExpectKind::Centroid,
            "qc" => ExpectKind::QuasiCentroid,
            "zder" => ExpectKind::CentralDerivations,
            "qder_pair" => ExpectKind::QDerPair,
            "qder_D" => ExpectKind::QDerD,
            "center" => ExpectKind::Center,
            "small" => ExpectKind::Small,
            _ => return None,
        })
    }

    /// Whether `a(r,c)` constraints make sense for this kind.
    fn supports_constraints(self) -> bool {
        !matches!(self, ExpectKind::Center | ExpectKind::Small)
    }

    /// Rows × cols of the matrices the constraints address, given the
    /// algebra dimension (`qder_pair` stacks `D` over `D′`).
    fn symbol_shape(self, n: usize) -> (usize, usize) {
        match self {
            ExpectKind::QDerPair => (2 * n, n),
            _ => (n, n),
        }
    }
}

/// One linear equation `Σ coeff·a(row,col) = rhs` over matrix entries;
/// rows and columns are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub terms: Vec<(Rational, usize, usize)>,
    pub rhs: Rational,
}

impl Constraint {
    /// Coefficient row over `rows*cols` flattened (row-major) unknowns.
    fn coeff_row(&self, cols: usize, len: usize) -> Vec<Rational> {
        let mut row = vec![Rational::zero(); len];
        for (c, r, col) in &self.terms {
            row[(r - 1) * cols + (col - 1)] += c;
        }
        row
    }

    /// Evaluates the left side on a flattened matrix.
    fn eval(&self, flat: &[Rational], cols: usize) -> Rational {
        self.terms
            .iter()
            .map(|(c, r, col)| c * &flat[(r - 1) * cols + (col - 1)])
            .sum()
    }

    fn render(&self) -> String {
        let mut out = String::new();
        for (idx, (c, r, col)) in self.terms.iter().enumerate() {
            let sym = format!("a({r},{col})");
            if c.is_one() {
                if idx > 0 {
                    out.push('+');
                }
                out.push_str(&sym);
            } else if (-c.clone()).is_one() {
                out.push('-');
                out.push_str(&sym);
            } else if idx > 0 && !c.is_negative() {
                out.push('+');
                out.push_str(&format!("{}*{sym}", format_rational(c)));
            } else {
                out.push_str(&format!("{}*{sym}", format_rational(c)));
            }
        }
        format!("{out}={}", format_rational(&self.rhs))
    }
}

/// Expected value of one invariant: a dimension, or the smallness flag.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expected {
    Dim(usize),
    Small(bool),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expectation {
    pub kind: ExpectKind,
    pub expected: Expected,
    pub constraints: Vec<Constraint>,
}

/// `e_i · e_j = Σ coeff·e_k`, all indices 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductLine {
    pub i: usize,
    pub j: usize,
    pub terms: Vec<(Rational, usize)>,
}

/// One named algebra with its multiplication table and expectations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub dim: usize,
    pub products: Vec<ProductLine>,
    pub expectations: Vec<Expectation>,
}

impl CatalogEntry {
    /// Builds the algebra; unspecified products are zero.  Fails only if
    /// the dimension exceeds the construction cap (the parser already
    /// enforces it for parsed entries).
    pub fn to_algebra(&self) -> Result<Algebra, AlgebraError> {
        let mut sc = StructureConstants::zero(self.dim);
        for p in &self.products {
            for (c, k) in &p.terms {
                let prev = sc.gamma(p.i - 1, p.j - 1, k - 1).clone();
                sc.set(p.i - 1, p.j - 1, k - 1, prev + c);
            }
        }
        Algebra::new(sc)
    }
}

/// Parses a catalog text into entries, in file order.
///
/// Errors carry the 1-based line number.  Rejected inputs include syntax
/// errors, indices out of range, duplicate `(i,j)` product lines,
/// non-rational coefficient literals, constraints on `center`/`small`
/// expectations, and constraint sets that are inconsistent (the rank test
/// on the augmented matrix).
pub fn parse_catalog(text: &str) -> Result<Vec<CatalogEntry>, CatalogError> {
    let mut entries = Vec::new();
    let mut current: Option<(CatalogEntry, Vec<usize>)> = None;
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        last_line = lineno;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();

        match (tokens[0], &mut current) {
            ("algebra", Some(_)) => return err(lineno, "nested 'algebra' (missing 'end'?)"),
            ("algebra", None) => {
                if tokens.len() != 4 || tokens[2] != "dim" {
                    return err(lineno, "expected: algebra NAME dim INT");
                }
                let dim: usize = tokens[3]
                    .parse()
                    .map_err(|_| CatalogError {
                        line: lineno,
                        message: format!("invalid dimension '{}'", tokens[3]),
                    })?;
                if dim == 0 || dim > DEFAULT_DIM_CAP {
                    return err(
                        lineno,
                        format!("dim must be between 1 and {DEFAULT_DIM_CAP}, got {dim}"),
                    );
                }
                current = Some((
                    CatalogEntry {
                        name: tokens[1].to_string(),
                        dim,
                        products: Vec::new(),
                        expectations: Vec::new(),
                    },
                    Vec::new(),
                ));
            }
            ("product", Some((entry, _))) => {
                let p = parse_product_line(line, entry.dim, lineno)?;
                if entry.products.iter().any(|q| q.i == p.i && q.j == p.j) {
                    return err(lineno, format!("duplicate product line for ({}, {})", p.i, p.j));
                }
                entry.products.push(p);
            }
            ("expect", Some((entry, expect_lines))) => {
                entry.expectations.push(parse_expect_line(line, lineno)?);
                expect_lines.push(lineno);
            }
            ("end", Some(_)) => {
                if tokens.len() != 1 {
                    return err(lineno, "unexpected tokens after 'end'");
                }
                let (entry, expect_lines) = current.take().unwrap();
                validate_entry(&entry, &expect_lines)?;
                entries.push(entry);
            }
            (word, None) => return err(lineno, format!("unexpected '{word}' outside an entry")),
            (word, Some(_)) => return err(lineno, format!("unexpected keyword '{word}'")),
        }
    }

    if current.is_some() {
        return err(last_line, "unterminated entry: missing 'end'");
    }
    Ok(entries)
}

fn parse_product_line(line: &str, dim: usize, lineno: usize) -> Result<ProductLine, CatalogError> {
    let (head, rhs) = match line.split_once('=') {
        Some(pair) => pair,
        None => return err(lineno, "expected: product I J = RATIONAL*eK (+ ...)")?,
    };
    let head_tokens: Vec<&str> = head.split_whitespace().collect();
    if head_tokens.len() != 3 {
        return err(lineno, "expected: product I J = RATIONAL*eK (+ ...)");
    }
    let i = parse_index(head_tokens[1], dim, lineno)?;
    let j = parse_index(head_tokens[2], dim, lineno)?;

    let mut terms = Vec::new();
    for piece in rhs.split('+') {
        let piece = piece.trim();
        let (coeff_str, basis_str) = match piece.split_once('*') {
            Some(pair) => pair,
            None => {
                return err(
                    lineno,
                    format!("term '{piece}' must have the form RATIONAL*eK"),
                )
            }
        };
        let coeff = parse_rational(coeff_str.trim()).map_err(|e| CatalogError {
            line: lineno,
            message: format!("bad coefficient '{}': {e}", coeff_str.trim()),
        })?;
        let basis_str = basis_str.trim();
        let k = match basis_str.strip_prefix('e') {
            Some(num) => parse_index(num, dim, lineno)?,
            None => return err(lineno, format!("expected basis symbol eK, got '{basis_str}'"))?,
        };
        terms.push((coeff, k));
    }
    Ok(ProductLine { i, j, terms })
}

fn parse_index(s: &str, dim: usize, lineno: usize) -> Result<usize, CatalogError> {
    let v: usize = s.parse().map_err(|_| CatalogError {
        line: lineno,
        message: format!("invalid index '{s}'"),
    })?;
    if v == 0 || v > dim {
        return err(lineno, format!("index {v} out of range 1..{dim}"));
    }
    Ok(v)
}

fn parse_expect_line(line: &str, lineno: usize) -> Result<Expectation, CatalogError> {
    let rest = line["expect".len()..].trim();
    let (kind_str, rest) = match rest.split_once(char::is_whitespace) {
        Some(pair) => pair,
        None => return err(lineno, "expected: expect KIND dim INT | expect small yes|no"),
    };
    let kind = match ExpectKind::from_token(kind_str) {
        Some(k) => k,
        None => return err(lineno, format!("unknown expectation kind '{kind_str}'"))?,
    };
    let rest = rest.trim();

    if kind == ExpectKind::Small {
        let expected = match rest {
            "yes" => Expected::Small(true),
            "no" => Expected::Small(false),
            other => return err(lineno, format!("expected yes|no after 'small', got '{other}'"))?,
        };
        return Ok(Expectation {
            kind,
            expected,
            constraints: Vec::new(),
        });
    }

    let rest = match rest.strip_prefix("dim") {
        Some(r) => r.trim(),
        None => return err(lineno, format!("expected 'dim' after '{kind_str}'"))?,
    };
    let (dim_str, constraint_str) = match rest.split_once(char::is_whitespace) {
        Some((d, r)) => (d, Some(r.trim())),
        None => (rest, None),
    };
    let expected_dim: usize = dim_str.parse().map_err(|_| CatalogError {
        line: lineno,
        message: format!("invalid expected dimension '{dim_str}'"),
    })?;

    let mut constraints = Vec::new();
    if let Some(cs) = constraint_str {
        let cs = match cs.strip_prefix("constraints") {
            Some(r) => r.trim(),
            None => return err(lineno, format!("expected 'constraints', got '{cs}'"))?,
        };
        if !kind.supports_constraints() {
            return err(
                lineno,
                format!("constraints are not supported for kind '{kind_str}'"),
            );
        }
        for c in split_top_level_commas(cs) {
            constraints.push(parse_constraint(c.trim(), lineno)?);
        }
    }
    Ok(Expectation {
        kind,
        expected: Expected::Dim(expected_dim),
        constraints,
    })
}

/// Splits a constraint list on commas that are not inside parentheses —
/// the separators between constraints, not the one inside `a(r,c)`.
fn split_top_level_commas(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut start = 0;
    for (pos, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                parts.push(&s[start..pos]);
                start = pos + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

/// Parses `a(2,2)-2*a(1,1)=0` style equations.  Signs split top-level
/// terms; each term is `[RATIONAL *] a(INT,INT)`.
fn parse_constraint(s: &str, lineno: usize) -> Result<Constraint, CatalogError> {
    let (lhs, rhs_str) = match s.split_once('=') {
        Some(pair) => pair,
        None => return err(lineno, format!("constraint '{s}' is missing '='"))?,
    };
    let rhs = parse_rational(rhs_str.trim()).map_err(|e| CatalogError {
        line: lineno,
        message: format!("bad constraint right side '{}': {e}", rhs_str.trim()),
    })?;

    // Split the left side at top-level '+'/'-' (sign starts a new term;
    // a leading sign belongs to the first term).
    let lhs = lhs.trim();
    let mut term_strs: Vec<String> = Vec::new();
    let mut cur = String::new();
    for (pos, ch) in lhs.char_indices() {
        if (ch == '+' || ch == '-') && pos != 0 {
            term_strs.push(cur.clone());
            cur.clear();
        }
        if !(ch == '+' && pos != 0) {
            cur.push(ch);
        }
    }
    if !cur.trim().is_empty() {
        term_strs.push(cur);
    }
    if term_strs.is_empty() {
        return err(lineno, format!("constraint '{s}' has an empty left side"));
    }

    let mut terms = Vec::new();
    for t in &term_strs {
        let t = t.trim();
        let (coeff, sym) = match t.split_once('*') {
            Some((c, sym)) => (
                parse_rational(c.trim()).map_err(|e| CatalogError {
                    line: lineno,
                    message: format!("bad coefficient '{}': {e}", c.trim()),
                })?,
                sym.trim(),
            ),
            None => {
                let (sign, sym) = match t.strip_prefix('-') {
                    Some(rest) => (-Rational::one(), rest.trim()),
                    None => (Rational::one(), t.strip_prefix('+').unwrap_or(t).trim()),
                };
                (sign, sym)
            }
        };
        let inner = sym
            .strip_prefix("a(")
            .and_then(|x| x.strip_suffix(')'))
            .ok_or_else(|| CatalogError {
                line: lineno,
                message: format!("expected symbol a(R,C), got '{sym}'"),
            })?;
        let (r_str, c_str) = inner.split_once(',').ok_or_else(|| CatalogError {
            line: lineno,
            message: format!("expected symbol a(R,C), got '{sym}'"),
        })?;
        let parse_pos = |x: &str| -> Result<usize, CatalogError> {
            x.trim().parse::<usize>().map_err(|_| CatalogError {
                line: lineno,
                message: format!("invalid symbol index '{}'", x.trim()),
            })
        };
        terms.push((coeff, parse_pos(r_str)?, parse_pos(c_str)?));
    }
    Ok(Constraint { terms, rhs })
}

/// Entry-level validation once `end` is reached: constraint symbol ranges
/// and consistency of each constraint set (rank of the coefficient matrix
/// must equal rank of the augmented matrix).
fn validate_entry(entry: &CatalogEntry, expect_lines: &[usize]) -> Result<(), CatalogError> {
    for (exp, &lineno) in entry.expectations.iter().zip(expect_lines) {
        let (rows, cols) = exp.kind.symbol_shape(entry.dim);
        for c in &exp.constraints {
            for &(_, r, col) in &c.terms {
                if r == 0 || r > rows || col == 0 || col > cols {
                    return err(
                        lineno,
                        format!(
                            "symbol a({r},{col}) out of range for kind '{}' of a dim-{} algebra \
                             (rows 1..{rows}, cols 1..{cols})",
                            exp.kind.token(),
                            entry.dim
                        ),
                    );
                }
            }
        }
        if !exp.constraints.is_empty() {
            let len = rows * cols;
            let coeff = MatrixQ::from_rows(
                len,
                exp.constraints.iter().map(|c| c.coeff_row(cols, len)).collect(),
            );
            let augmented = MatrixQ::from_rows(
                len + 1,
                exp.constraints
                    .iter()
                    .map(|c| {
                        let mut row = c.coeff_row(cols, len);
                        row.push(c.rhs.clone());
                        row
                    })
                    .collect(),
            );
            if coeff.rank() != augmented.rank() {
                return err(
                    lineno,
                    format!(
                        "inconsistent constraint set for kind '{}'",
                        exp.kind.token()
                    ),
                );
            }
        }
    }
    Ok(())
}

/// Renders entries back into the catalog grammar; `parse_catalog` of the
/// output yields an equal catalog.
pub fn serialize_catalog(entries: &[CatalogEntry]) -> String {
    let mut out = String::new();
    for entry in entries {
        out.push_str(&format!("algebra {} dim {}\n", entry.name, entry.dim));
        for p in &entry.products {
            let terms: Vec<String> = p
                .terms
                .iter()
                .map(|(c, k)| format!("{}*e{k}", format_rational(c)))
                .collect();
            out.push_str(&format!(
                "product {} {} = {}\n",
                p.i,
                p.j,
                terms.join(" + ")
            ));
        }
        for e in &entry.expectations {
            match e.expected {
                Expected::Small(flag) => {
                    out.push_str(&format!(
                        "expect small {}\n",
                        if flag { "yes" } else { "no" }
                    ));
                }
                Expected::Dim(d) => {
                    out.push_str(&format!("expect {} dim {d}", e.kind.token()));
                    if !e.constraints.is_empty() {
                        let cs: Vec<String> =
                            e.constraints.iter().map(Constraint::render).collect();
                        out.push_str(&format!(" constraints {}", cs.join(", ")));
                    }
                    out.push('\n');
                }
            }
        }
        out.push_str("end\n");
    }
    out
}

/// Verification outcome for one expectation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpectationResult {
    pub kind: ExpectKind,
    pub computed: Expected,
    pub expected: Expected,
    /// Computed value equals the expected value.
    pub dims_match: bool,
    /// Every computed basis map satisfies every constraint.
    pub constraints_satisfied: bool,
    /// `expected_dim == unknown count − rank(constraints)` (vacuously true
    /// without constraints).
    pub free_count_match: bool,
    /// Human-readable descriptions of constraint violations.
    pub constraint_failures: Vec<String>,
}

impl ExpectationResult {
    pub fn pass(&self) -> bool {
        self.dims_match && self.constraints_satisfied && self.free_count_match
    }
}

/// Verification outcome for one entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationResult {
    pub name: String,
    pub dim: usize,
    pub expectations: Vec<ExpectationResult>,
}

impl VerificationResult {
    pub fn pass(&self) -> bool {
        self.expectations.iter().all(ExpectationResult::pass)
    }
}

/// Outcome of one catalog entry in a batch: verified, or skipped because
/// its multiplication table is not associative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EntryOutcome {
    Verified {
        result: VerificationResult,
        /// Computed regardless of expectations, for the batch aggregates.
        qc_dim: usize,
        small: bool,
    },
    SkippedNonAssociative {
        name: String,
        triple: (usize, usize, usize),
    },
}

/// Verifies one entry against its expectations.  Never mutates the entry;
/// a non-associative table is an error here (batch callers convert it to a
/// skip).
pub fn verify_entry(entry: &CatalogEntry) -> Result<VerificationResult, SolverError> {
    match verify_entry_outcome(entry) {
        EntryOutcome::Verified { result, .. } => Ok(result),
        EntryOutcome::SkippedNonAssociative { triple: (i, j, k), .. } => {
            Err(SolverError::NonAssociative { i, j, k })
        }
    }
}

/// Verifies one entry, classifying non-associative tables as skips.
pub fn verify_entry_outcome(entry: &CatalogEntry) -> EntryOutcome {
    let algebra = entry
        .to_algebra()
        .expect("parser enforces the dimension cap");
    if let Some((i, j, k)) = algebra.first_nonassociative_triple() {
        return EntryOutcome::SkippedNonAssociative {
            name: entry.name.clone(),
            triple: (i, j, k),
        };
    }

    let n = entry.dim;
    // Solve each needed system at most once; smallness is always computed
    // because the batch aggregates report it for every entry.
    let smallness = solvers::is_small_quasi_centroid(&algebra, Nonassociative::Reject)
        .expect("associativity was just established");
    let mut qder = None;
    let mut expectations = Vec::new();

    for exp in &entry.expectations {
        let (computed, basis): (Expected, Vec<Vec<Rational>>) = match exp.kind {
            ExpectKind::Der => space_result(solvers::derivations(&algebra, Nonassociative::Reject)),
            ExpectKind::Centroid => {
                space_result(solvers::centroid(&algebra, Nonassociative::Reject))
            }
            ExpectKind::QuasiCentroid => {
                space_result(solvers::quasi_centroid(&algebra, Nonassociative::Reject))
            }
            ExpectKind::CentralDerivations => {
                space_result(solvers::central_derivations(&algebra, Nonassociative::Reject))
            }
            ExpectKind::QDerPair => {
                let q = qder.get_or_insert_with(|| {
                    solvers::quasi_derivations(&algebra, Nonassociative::Reject)
                        .expect("associativity was just established")
                });
                (Expected::Dim(q.pair_dim()), q.space().basis().to_vec())
            }
            ExpectKind::QDerD => {
                let q = qder.get_or_insert_with(|| {
                    solvers::quasi_derivations(&algebra, Nonassociative::Reject)
                        .expect("associativity was just established")
                });
                (
                    Expected::Dim(q.d_projection().dim()),
                    q.d_projection().space().basis().to_vec(),
                )
            }
            ExpectKind::Center => {
                let z = algebra.center();
                (Expected::Dim(z.dim()), Vec::new())
            }
            ExpectKind::Small => (Expected::Small(smallness.is_small), Vec::new()),
        };

        let dims_match = computed == exp.expected;
        let (_, cols) = exp.kind.symbol_shape(n);
        let mut constraint_failures = Vec::new();
        for (ci, c) in exp.constraints.iter().enumerate() {
            for (bi, flat) in basis.iter().enumerate() {
                let got = c.eval(flat, cols);
                if got != c.rhs {
                    constraint_failures.push(format!(
                        "basis map #{} violates constraint #{} ({}): got {}",
                        bi + 1,
                        ci + 1,
                        c.render(),
                        format_rational(&got)
                    ));
                }
            }
        }

        let free_count_match = if exp.constraints.is_empty() {
            true
        } else {
            let (rows, cols) = exp.kind.symbol_shape(n);
            let len = rows * cols;
            let rank = MatrixQ::from_rows(
                len,
                exp.constraints.iter().map(|c| c.coeff_row(cols, len)).collect(),
            )
            .rank();
            exp.expected == Expected::Dim(len - rank)
        };

        expectations.push(ExpectationResult {
            kind: exp.kind,
            computed,
            expected: exp.expected,
            dims_match,
            constraints_satisfied: constraint_failures.is_empty(),
            free_count_match,
            constraint_failures,
        });
    }

    EntryOutcome::Verified {
        result: VerificationResult {
            name: entry.name.clone(),
            dim: n,
            expectations,
        },
        qc_dim: smallness.qc_dim,
        small: smallness.is_small,
    }
}

fn space_result(
    solved: Result<solvers::MapSpace, SolverError>,
) -> (Expected, Vec<Vec<Rational>>) {
    let space = solved.expect("associativity was just established");
    (
        Expected::Dim(space.dim()),
        space.space().basis().to_vec(),
    )
}

/// Batch aggregates across a catalog.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BatchSummary {
    pub entries: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: Vec<(String, (usize, usize, usize))>,
    /// (min, max) of computed QC dimension over the 4-dimensional entries,
    /// when any exist.
    pub qc_dim_range_4d: Option<(usize, usize)>,
    /// Names of entries whose quasi-centroid is small.
    pub small_entries: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BatchReport {
    /// Verified entries, in input order.
    pub results: Vec<VerificationResult>,
    pub summary: BatchSummary,
}

impl BatchReport {
    pub fn all_pass(&self) -> bool {
        self.summary.failed == 0
    }
}

/// Assembles per-entry outcomes (in input order) into a batch report.
/// Split out from [`batch_verify`] so callers may produce the outcomes
/// concurrently.
pub fn assemble_batch(outcomes: Vec<(usize, EntryOutcome)>) -> BatchReport {
    let mut results = Vec::new();
    let mut skipped = Vec::new();
    let mut passed = 0;
    let mut failed = 0;
    let mut qc_4d: Option<(usize, usize)> = None;
    let mut small_entries = Vec::new();
    let entries = outcomes.len();

    for (dim, outcome) in outcomes {
        match outcome {
            EntryOutcome::Verified {
                result,
                qc_dim,
                small,
            } => {
                if result.pass() {
                    passed += 1;
                } else {
                    failed += 1;
                }
                if dim == 4 {
                    qc_4d = Some(match qc_4d {
                        None => (qc_dim, qc_dim),
                        Some((lo, hi)) => (lo.min(qc_dim), hi.max(qc_dim)),
                    });
                }
                if small {
                    small_entries.push(result.name.clone());
                }
                results.push(result);
            }
            EntryOutcome::SkippedNonAssociative { name, triple } => {
                skipped.push((name, triple));
            }
        }
    }

    BatchReport {
        results,
        summary: BatchSummary {
            entries,
            passed,
            failed,
            skipped,
            qc_dim_range_4d: qc_4d,
            small_entries,
        },
    }
}

/// Verifies every entry sequentially and assembles the report.
pub fn batch_verify(entries: &[CatalogEntry]) -> BatchReport {
    assemble_batch(
        entries
            .iter()
            .map(|e| (e.dim, verify_entry_outcome(e)))
            .collect(),
    )
}

fn expected_str(e: Expected) -> String {
    match e {
        Expected::Dim(d) => d.to_string(),
        Expected::Small(b) => if b { "yes" } else { "no" }.to_string(),
    }
}

fn expected_json(e: Expected) -> Value {
    match e {
        Expected::Dim(d) => json!(d),
        Expected::Small(b) => json!(b),
    }
}

/// Human-readable batch report, one line per expectation.
pub fn text_report(report: &BatchReport) -> String {
    let mut out = String::new();
    let s = &report.summary;
    out.push_str(&format!(
        "catalog: {} entries, {} passed, {} failed, {} skipped\n",
        s.entries,
        s.passed,
        s.failed,
        s.skipped.len()
    ));
    for r in &report.results {
        for e in &r.expectations {
            out.push_str(&format!(
                "[{}] {} {}: computed {} expected {}",
                if e.pass() { "PASS" } else { "FAIL" },
                r.name,
                e.kind.token(),
                expected_str(e.computed),
                expected_str(e.expected),
            ));
            if !e.constraints_satisfied {
                out.push_str("; constraint violations:");
                for f in &e.constraint_failures {
                    out.push_str(&format!("\n    {f}"));
                }
            } else if !e.free_count_match {
                out.push_str("; free-count mismatch (expected dim ≠ unknowns − rank)");
            }
            out.push('\n');
        }
    }
    for (name, (i, j, k)) in &s.skipped {
        out.push_str(&format!(
            "[SKIP] {name}: non-associative at basis triple ({i}, {j}, {k})\n"
        ));
    }
    if let Some((lo, hi)) = s.qc_dim_range_4d {
        out.push_str(&format!(
            "QC dimension over 4-dimensional entries: min {lo}, max {hi}\n"
        ));
    }
    if !s.small_entries.is_empty() {
        out.push_str(&format!(
            "small quasi-centroid: {}\n",
            s.small_entries.join(", ")
        ));
    }
    out
}

/// Machine-readable batch report; key names are stable.  Dimension
/// expectations report under `computed_dim`/`expected_dim` (integers);
/// smallness expectations under `computed_small`/`expected_small`
/// (booleans), so every key always carries one type.
pub fn machine_report(report: &BatchReport) -> Value {
    let results: Vec<Value> = report
        .results
        .iter()
        .flat_map(|r| {
            r.expectations.iter().map(move |e| {
                let mut record = json!({
                    "name": r.name,
                    "kind": e.kind.token(),
                    "pass": e.pass(),
                    "constraint_failures": e.constraint_failures,
                });
                let (ck, ek) = match e.computed {
                    Expected::Dim(_) => ("computed_dim", "expected_dim"),
                    Expected::Small(_) => ("computed_small", "expected_small"),
                };
                let obj = record.as_object_mut().expect("record is an object");
                obj.insert(ck.to_string(), expected_json(e.computed));
                obj.insert(ek.to_string(), expected_json(e.expected));
                record
            })
        })
        .collect();
    let s = &report.summary;
    json!({
        "results": results,
        "skipped": s.skipped.iter().map(|(name, (i, j, k))| {
            json!({"name": name, "reason": "non-associative", "triple": [i, j, k]})
        }).collect::<Vec<_>>(),
        "summary": {
            "entries": s.entries,
            "passed": s.passed,
            "failed": s.failed,
            "skipped": s.skipped.len(),
            "qc_dim_min_4d": s.qc_dim_range_4d.map(|(lo, _)| lo),
            "qc_dim_max_4d": s.qc_dim_range_4d.map(|(_, hi)| hi),
            "small_entries": s.small_entries,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    const AS21: &str = "\
algebra As_2^1 dim 2
product 1 1 = 1*e2
expect qc dim 3 constraints a(1,2)=0
expect small yes
end
";

    #[test]
    fn parses_the_basic_entry() {
        let entries = parse_catalog(AS21).unwrap();
        assert_eq!(entries.len(), 1);
        let e = &entries[0];
        assert_eq!(e.name, "As_2^1");
        assert_eq!(e.dim, 2);
        assert_eq!(e.products.len(), 1);
        assert_eq!(e.expectations.len(), 2);
        assert_eq!(e.expectations[0].constraints.len(), 1);
    }

    #[test]
    fn empty_products_mean_zero_algebra() {
        let entries =
            parse_catalog("algebra Z dim 3\nexpect der dim 9\nend\n").unwrap();
        let a = entries[0].to_algebra().unwrap();
        assert!(a.structure_constants().gamma(0, 0, 0).is_zero());
        let r = verify_entry(&entries[0]).unwrap();
        assert!(r.pass());
    }

    #[test]
    fn as31_from_two_product_lines() {
        let text = "\
algebra As_3^1 dim 3
product 1 3 = 1*e2
product 3 1 = 1*e2
expect qc dim 6 constraints a(1,2)=0, a(3,2)=0, a(3,3)-a(1,1)=0
end
";
        let entries = parse_catalog(text).unwrap();
        let r = verify_entry(&entries[0]).unwrap();
        assert!(r.pass(), "{:?}", r.expectations[0]);
        assert!(r.expectations[0].free_count_match);
    }

    #[test]
    fn wrong_dimension_is_a_clean_failure() {
        let text = "algebra X dim 2\nproduct 1 1 = 1*e2\nexpect qc dim 4\nend\n";
        let entries = parse_catalog(text).unwrap();
        let r = verify_entry(&entries[0]).unwrap();
        assert!(!r.pass());
        let e = &r.expectations[0];
        assert_eq!(e.computed, Expected::Dim(3));
        assert!(!e.dims_match);
        assert!(e.constraints_satisfied);
    }

    #[test]
    fn violated_constraint_is_reported_with_witness() {
        let text = "algebra X dim 2\nproduct 1 1 = 1*e2\nexpect qc dim 3 constraints a(1,1)=0\nend\n";
        let entries = parse_catalog(text).unwrap();
        let r = verify_entry(&entries[0]).unwrap();
        let e = &r.expectations[0];
        assert!(!e.constraints_satisfied);
        assert!(!e.constraint_failures.is_empty());
        // The count 4 − 1 = 3 is arithmetically consistent; the wrong
        // constraint is caught by the satisfaction test, not the rank test.
        assert!(e.free_count_match);
        assert!(!r.pass());
    }

    #[test]
    fn qder_pair_constraints_address_the_stacked_matrix() {
        let text = "\
algebra X dim 2
product 1 1 = 1*e2
expect qder_pair dim 5 constraints a(1,2)=0, a(3,2)=0, a(4,2)-2*a(1,1)=0
expect qder_D dim 3 constraints a(1,2)=0
end
";
        let entries = parse_catalog(text).unwrap();
        let r = verify_entry(&entries[0]).unwrap();
        assert!(r.pass(), "{:#?}", r.expectations);
    }

    #[test]
    fn round_trip_is_identity() {
        let text = "\
algebra A dim 2
product 1 1 = 1*e2
product 1 2 = -1/2*e1 + 3*e2
expect der dim 2 constraints a(1,2)=0, a(2,2)-2*a(1,1)=0
expect center dim 1
expect small yes
end
algebra B dim 1
expect qc dim 1
end
";
        let parsed = parse_catalog(text).unwrap();
        let reparsed = parse_catalog(&serialize_catalog(&parsed)).unwrap();
        assert_eq!(parsed, reparsed);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let cases: &[(&str, usize, &str)] = &[
            ("product 1 1 = 1*e1\n", 1, "outside an entry"),
            ("algebra A dim 2\nproduct 1 3 = 1*e1\nend\n", 2, "out of range"),
            ("algebra A dim 2\nproduct 1 1 = 1.5*e1\nend\n", 2, "bad coefficient"),
            ("algebra A dim 2\nproduct 1 1 = 1/0*e1\nend\n", 2, "bad coefficient"),
            (
                "algebra A dim 2\nproduct 1 1 = 1*e1\nproduct 1 1 = 1*e2\nend\n",
                3,
                "duplicate product",
            ),
            ("algebra A dim 2\nexpect qc dim x\nend\n", 2, "invalid expected dimension"),
            ("algebra A dim 2\nexpect foo dim 1\nend\n", 2, "unknown expectation kind"),
            (
                "algebra A dim 2\nexpect center dim 1 constraints a(1,1)=0\nend\n",
                2,
                "not supported",
            ),
            (
                "algebra A dim 2\nexpect qc dim 3 constraints a(1,3)=0\nend\n",
                2,
                "out of range",
            ),
            (
                "algebra A dim 2\nexpect qc dim 3 constraints a(1,1)=0, a(1,1)=1\nend\n",
                2,
                "inconsistent",
            ),
            ("algebra A dim 2\nproduct 1 1 = 1*e1\n", 2, "missing 'end'"),
            ("algebra A dim 0\nend\n", 1, "dim must be between"),
        ];
        for (text, line, needle) in cases {
            let e = parse_catalog(text).unwrap_err();
            assert_eq!(e.line, *line, "{text:?} → {e}");
            assert!(e.message.contains(needle), "{text:?} → {e}");
        }
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let text = "# header\n\nalgebra A dim 2   # trailing\n\nproduct 1 1 = 1*e2\nend\n";
        let entries = parse_catalog(text).unwrap();
        assert_eq!(entries[0].name, "A");
        assert_eq!(entries[0].products.len(), 1);
    }

    #[test]
    fn repeated_basis_terms_accumulate() {
        let entries =
            parse_catalog("algebra A dim 2\nproduct 1 1 = 1/2*e2 + 1/2*e2\nend\n").unwrap();
        let a = entries[0].to_algebra().unwrap();
        assert_eq!(*a.structure_constants().gamma(0, 0, 1), rat(1, 1));
    }

    #[test]
    fn batch_collects_skips_and_aggregates() {
        let text = "\
algebra Good dim 2
product 1 1 = 1*e2
expect qc dim 3
end
algebra Bad dim 3
product 1 1 = 1*e2
product 2 1 = 1*e3
end
algebra Wrong dim 2
product 1 1 = 1*e2
expect qc dim 4
end
algebra Four dim 4
expect der dim 16
end
";
        let entries = parse_catalog(text).unwrap();
        let report = batch_verify(&entries);
        assert_eq!(report.summary.entries, 4);
        assert_eq!(report.summary.passed, 2);
        assert_eq!(report.summary.failed, 1);
        assert_eq!(report.summary.skipped, vec![("Bad".to_string(), (1, 1, 1))]);
        // The 4-dim zero algebra has QC = End, dim 16.
        assert_eq!(report.summary.qc_dim_range_4d, Some((16, 16)));
        assert!(report
            .summary
            .small_entries
            .contains(&"Good".to_string()));
        assert!(!report.all_pass());

        let text_out = text_report(&report);
        assert!(text_out.contains("[PASS] Good qc: computed 3 expected 3"));
        assert!(text_out.contains("[FAIL] Wrong qc: computed 3 expected 4"));
        assert!(text_out.contains("[SKIP] Bad: non-associative at basis triple (1, 1, 1)"));

        let machine = machine_report(&report);
        assert_eq!(machine["summary"]["passed"], 2);
        assert_eq!(machine["results"][0]["name"], "Good");
        assert_eq!(machine["results"][0]["pass"], true);
        assert_eq!(machine["skipped"][0]["reason"], "non-associative");
    }

    #[test]
    fn verification_is_deterministic() {
        let entries = parse_catalog(AS21).unwrap();
        let r1 = machine_report(&batch_verify(&entries)).to_string();
        let r2 = machine_report(&batch_verify(&entries)).to_string();
        assert_eq!(r1, r2);
    }

    #[test]
    fn small_expectation_mismatch_fails() {
        // As_3^1 is not small (QC dim 6 vs ZDer+scalars dim 4).
        let text = "\
algebra As_3^1 dim 3
product 1 3 = 1*e2
product 3 1 = 1*e2
expect small yes
end
";
        let entries = parse_catalog(text).unwrap();
        let r = verify_entry(&entries[0]).unwrap();
        assert!(!r.pass());
        assert_eq!(r.expectations[0].computed, Expected::Small(false));
    }

    #[test]
    fn constraint_rendering_round_trips() {
        let c = Constraint {
            terms: vec![
                (rat(1, 1), 2, 2),
                (rat(-2, 1), 1, 1),
                (rat(-1, 2), 1, 2),
            ],
            rhs: rat(0, 1),
        };
        let rendered = c.render();
        assert_eq!(rendered, "a(2,2)-2*a(1,1)-1/2*a(1,2)=0");
        let reparsed = parse_constraint(&rendered, 1).unwrap();
        assert_eq!(c, reparsed);
    }
}
