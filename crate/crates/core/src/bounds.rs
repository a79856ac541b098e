//! Matrix energy and the inequalities that bracket it.
//!
//! Every bound is evaluated into a [`BoundReport`]: a bound whose hypotheses
//! fail is reported as inapplicable together with the measured quantities,
//! never raised as an error. [`certify`] evaluates all of them against the
//! computed energy and lists any that are violated.

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::graphs::Graph;
use crate::linalg::{singular_values, singular_values_symmetric, DenseMatrix, LinalgError, SingularSpectrum};

/// Default absolute slack used by [`certify`].
pub const DEFAULT_TOLERANCE: f64 = 1e-7;
/// Relative threshold below which `sigma_2` counts as zero.
pub const SIGMA2_THRESHOLD: f64 = 1e-9;
/// Relative slack for a negative radicand to be treated as roundoff.
pub const RADICAND_SLACK: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EnergyError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("{bound}: radicand {radicand:e} is negative beyond roundoff")]
    Inconsistent { bound: BoundName, radicand: f64 },
}

/// Identifies one inequality. Serialized under the names shown on each variant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum BoundName {
    /// `KM_FIRST`: `2e/n + sqrt((n-1)(2e - (2e/n)^2))` for a graph with `e >= n/2` edges.
    #[serde(rename = "KM_FIRST")]
    EdgeCountUpper,
    /// `KM_ABSOLUTE`: `(n/2)(1 + sqrt(n))` for any graph of order `n`.
    #[serde(rename = "KM_ABSOLUTE")]
    OrderAbsoluteUpper,
    /// `THM1_UPPER`: `s/sqrt(mn) + sqrt((m-1)(tr - s^2/(mn)))` for nonnegative
    /// `A` with `m <= n` and entry sum `s >= n * max_entry`.
    #[serde(rename = "THM1_UPPER")]
    NonnegativeUpper,
    /// `THM2_ABSOLUTE`: `max_entry * (m + sqrt(m)) * sqrt(n) / 2`.
    #[serde(rename = "THM2_ABSOLUTE")]
    NonnegativeAbsoluteUpper,
    /// `WEAK_UPPER`: `sqrt(min(m, n) * tr(A Aᵀ))`.
    #[serde(rename = "WEAK_UPPER")]
    GramUpper,
    /// `LOWB_LOWER`: `sigma_1 + (tr - sigma_1^2) / sigma_2`.
    #[serde(rename = "LOWB_LOWER")]
    SpectralLower,
    /// `SIGMA1_RAYLEIGH`: `s / sqrt(mn)`, a lower bound on `sigma_1` and
    /// hence on the energy.
    #[serde(rename = "SIGMA1_RAYLEIGH")]
    RayleighLower,
}

impl BoundName {
    pub const ALL: [BoundName; 7] = [
        BoundName::EdgeCountUpper,
        BoundName::OrderAbsoluteUpper,
        BoundName::NonnegativeUpper,
        BoundName::NonnegativeAbsoluteUpper,
        BoundName::GramUpper,
        BoundName::SpectralLower,
        BoundName::RayleighLower,
    ];

    /// The reports produced by [`certify`], in order.
    pub const CERTIFIED: [BoundName; 6] = [
        BoundName::EdgeCountUpper,
        BoundName::OrderAbsoluteUpper,
        BoundName::NonnegativeUpper,
        BoundName::NonnegativeAbsoluteUpper,
        BoundName::SpectralLower,
        BoundName::RayleighLower,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            BoundName::EdgeCountUpper => "KM_FIRST",
            BoundName::OrderAbsoluteUpper => "KM_ABSOLUTE",
            BoundName::NonnegativeUpper => "THM1_UPPER",
            BoundName::NonnegativeAbsoluteUpper => "THM2_ABSOLUTE",
            BoundName::GramUpper => "WEAK_UPPER",
            BoundName::SpectralLower => "LOWB_LOWER",
            BoundName::RayleighLower => "SIGMA1_RAYLEIGH",
        }
    }

    pub fn is_upper(self) -> bool {
        !matches!(self, BoundName::SpectralLower | BoundName::RayleighLower)
    }
}

impl std::fmt::Display for BoundName {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One checked hypothesis (or, for informational entries, one observed case)
/// with the quantities it was decided on.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Diagnostic {
    pub label: &'static str,
    pub held: bool,
    #[serde(serialize_with = "serialize_measured")]
    pub measured: Vec<(&'static str, f64)>,
}

fn serialize_measured<S: Serializer>(m: &[(&'static str, f64)], s: S) -> Result<S::Ok, S::Error> {
    let mut map = s.serialize_map(Some(m.len()))?;
    for (k, v) in m {
        map.serialize_entry(k, v)?;
    }
    map.end()
}

impl Diagnostic {
    fn new(label: &'static str, held: bool, measured: Vec<(&'static str, f64)>) -> Self {
        Self {
            label,
            held,
            measured,
        }
    }
}

/// Value of one inequality's bounding side, or the reason it does not apply.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub name: BoundName,
    pub applicable: bool,
    pub value: Option<f64>,
    pub diagnostics: Vec<Diagnostic>,
}

impl BoundReport {
    /// Applicable iff every diagnostic in `preconditions` held; `value` is only
    /// evaluated in that case. `notes` are recorded but do not gate.
    fn gated(
        name: BoundName,
        preconditions: Vec<Diagnostic>,
        notes: Vec<Diagnostic>,
        value: impl FnOnce() -> Result<f64, EnergyError>,
    ) -> Result<Self, EnergyError> {
        let applicable = preconditions.iter().all(|d| d.held);
        let value = if applicable { Some(value()?) } else { None };
        let mut diagnostics = preconditions;
        diagnostics.extend(notes);
        Ok(Self {
            name,
            applicable,
            value,
            diagnostics,
        })
    }

    fn infallible(
        name: BoundName,
        preconditions: Vec<Diagnostic>,
        value: impl FnOnce() -> f64,
    ) -> Self {
        Self::gated(name, preconditions, vec![], || Ok(value())).expect("infallible bound")
    }
}

/// A bound that the computed energy crossed by more than the tolerance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub bound: BoundName,
    pub value: f64,
    pub energy: f64,
    /// How far past the bound the energy lies (always positive).
    pub excess: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertificationReport {
    pub energy: f64,
    pub bounds: Vec<BoundReport>,
    pub violations: Vec<Violation>,
    pub tolerance: f64,
}

impl CertificationReport {
    pub fn is_certified(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn bound(&self, name: BoundName) -> &BoundReport {
        self.bounds
            .iter()
            .find(|b| b.name == name)
            .expect("certify evaluates every bound")
    }
}

/// Singular spectrum, through the eigenvalue moduli when `a` is exactly
/// symmetric and through the Gram matrix otherwise.
pub fn spectrum(a: &DenseMatrix) -> Result<SingularSpectrum, LinalgError> {
    if a.is_symmetric() {
        singular_values_symmetric(a)
    } else {
        singular_values(a)
    }
}

/// Sum of the singular values of `a`.
pub fn energy(a: &DenseMatrix) -> Result<f64, LinalgError> {
    Ok(spectrum(a)?.energy())
}

/// Energy of the adjacency matrix: the sum of absolute eigenvalues.
pub fn graph_energy(g: &Graph) -> Result<f64, LinalgError> {
    Ok(singular_values_symmetric(&g.adjacency())?.energy())
}

fn nonnegative(a: &DenseMatrix) -> Diagnostic {
    let min = a.min_entry();
    Diagnostic::new("entrywise_nonnegative", min >= 0.0, vec![("min_entry", min)])
}

fn rows_at_most_cols(a: &DenseMatrix) -> Diagnostic {
    Diagnostic::new(
        "rows_at_most_cols",
        a.rows() <= a.cols(),
        vec![("rows", a.rows() as f64), ("cols", a.cols() as f64)],
    )
}

fn entry_sum_dominates(label: &'static str, a: &DenseMatrix) -> Diagnostic {
    let sum = a.entry_sum();
    let threshold = a.cols() as f64 * a.max_entry();
    Diagnostic::new(
        label,
        sum >= threshold,
        vec![("entry_sum", sum), ("cols_times_max_entry", threshold)],
    )
}

/// `sigma_1(A) >= s/sqrt(mn)` for nonnegative `A`, `s` the entry sum.
pub fn sigma1_rayleigh_lower(a: &DenseMatrix) -> BoundReport {
    BoundReport::infallible(BoundName::RayleighLower, vec![nonnegative(a)], || {
        a.entry_sum() / ((a.rows() * a.cols()) as f64).sqrt()
    })
}

/// Edge-count upper bound for a graph of order `n_vertices` with `n_edges`
/// edges. Requires `n_edges >= n_vertices / 2`.
pub fn km_upper(n_vertices: usize, n_edges: usize) -> BoundReport {
    let n = n_vertices as f64;
    let e = n_edges as f64;
    let max_edges = n_vertices * n_vertices.saturating_sub(1) / 2;
    let preconditions = vec![
        Diagnostic::new("order_positive", n_vertices > 0, vec![("order", n)]),
        Diagnostic::new(
            "edges_at_least_half_order",
            2 * n_edges >= n_vertices,
            vec![("edges", e), ("half_order", n / 2.0)],
        ),
        Diagnostic::new(
            "edges_at_most_pairs",
            n_edges <= max_edges,
            vec![("edges", e), ("max_edges", max_edges as f64)],
        ),
    ];
    BoundReport::infallible(BoundName::EdgeCountUpper, preconditions, || {
        let avg = 2.0 * e / n;
        avg + ((n - 1.0) * (2.0 * e - avg * avg)).max(0.0).sqrt()
    })
}

/// `(n/2)(1 + sqrt(n))`, valid for every graph of order `n`.
pub fn km_absolute(n_vertices: usize) -> BoundReport {
    let n = n_vertices as f64;
    let preconditions = vec![Diagnostic::new("order_positive", n_vertices > 0, vec![("order", n)])];
    BoundReport::infallible(BoundName::OrderAbsoluteUpper, preconditions, || {
        n / 2.0 * (1.0 + n.sqrt())
    })
}

/// Upper bound for a nonnegative `m x n` matrix with `m <= n` and entry sum at
/// least `n` times its largest entry.
///
/// The radicand `tr(AAᵀ) - s^2/(mn)` is nonnegative by Cauchy-Schwarz; values
/// down to `-1e-12 * max(1, tr)` are clamped to zero, anything more negative
/// is an [`EnergyError::Inconsistent`].
pub fn thm1_upper(a: &DenseMatrix) -> Result<BoundReport, EnergyError> {
    let preconditions = vec![
        rows_at_most_cols(a),
        nonnegative(a),
        entry_sum_dominates("entry_sum_at_least_cols_times_max", a),
    ];
    BoundReport::gated(BoundName::NonnegativeUpper, preconditions, vec![], || {
        let (m, n) = (a.rows() as f64, a.cols() as f64);
        let sum = a.entry_sum();
        let tr = a.gram_trace();
        let radicand = tr - sum * sum / (m * n);
        let radicand = if radicand >= 0.0 {
            radicand
        } else if radicand >= -RADICAND_SLACK * tr.max(1.0) {
            0.0
        } else {
            return Err(EnergyError::Inconsistent {
                bound: BoundName::NonnegativeUpper,
                radicand,
            });
        };
        Ok(sum / (m * n).sqrt() + ((m - 1.0) * radicand).sqrt())
    })
}

/// `max_entry * (m + sqrt(m)) * sqrt(n) / 2` for nonnegative `A`, `m <= n`.
///
/// A note records which case of the argument applies: the entry sum
/// reaching `n * max_entry` (through [`thm1_upper`]) or falling short of it
/// (through [`weak_upper`]).
pub fn thm2_upper(a: &DenseMatrix) -> BoundReport {
    let preconditions = vec![rows_at_most_cols(a), nonnegative(a)];
    let notes = vec![entry_sum_dominates("case_entry_sum_at_least_cols_times_max", a)];
    BoundReport::gated(BoundName::NonnegativeAbsoluteUpper, preconditions, notes, || {
        let (m, n) = (a.rows() as f64, a.cols() as f64);
        Ok(a.max_entry() * (m + m.sqrt()) * n.sqrt() / 2.0)
    })
    .expect("infallible bound")
}

/// Cauchy-Schwarz: `E(A) <= sqrt(min(m, n) * tr(AAᵀ))`. Always applicable.
pub fn weak_upper(a: &DenseMatrix) -> BoundReport {
    BoundReport::infallible(BoundName::GramUpper, vec![], || {
        (a.rows().min(a.cols()) as f64 * a.gram_trace()).sqrt()
    })
}

/// `E(A) >= sigma_1 + (tr - sigma_1^2) / sigma_2`, applicable when `sigma_2`
/// exceeds `1e-9 * max(1, sigma_1)`.
pub fn lowb_lower(a: &DenseMatrix) -> Result<BoundReport, LinalgError> {
    Ok(lowb_from_spectrum(&spectrum(a)?, a.gram_trace()))
}

fn lowb_from_spectrum(sv: &SingularSpectrum, trace: f64) -> BoundReport {
    let sigma1 = sv.sigma1();
    let sigma2 = sv.sigma2().unwrap_or(0.0);
    let threshold = SIGMA2_THRESHOLD * sigma1.max(1.0);
    let preconditions = vec![Diagnostic::new(
        "sigma2_above_threshold",
        sigma2 > threshold,
        vec![("sigma1", sigma1), ("sigma2", sigma2), ("threshold", threshold)],
    )];
    BoundReport::infallible(BoundName::SpectralLower, preconditions, || {
        sigma1 + (trace - sigma1 * sigma1) / sigma2
    })
}

/// Evaluates every bound on `a` and checks each against the energy.
///
/// The edge-count bounds only apply when `a` is the adjacency matrix of a
/// simple graph (symmetric, 0/1, zero diagonal); otherwise they are reported
/// inapplicable. The report covers [`BoundName::CERTIFIED`]; evaluate
/// [`weak_upper`] directly for the Gram bound.
pub fn certify(a: &DenseMatrix, tolerance: f64) -> Result<CertificationReport, EnergyError> {
    let sv = spectrum(a)?;
    let energy = sv.energy();

    let (km_first, km_abs) = if a.is_adjacency() {
        let edges = (a.entry_sum() / 2.0).round() as usize;
        (km_upper(a.rows(), edges), km_absolute(a.rows()))
    } else {
        let not_graph = || {
            Diagnostic::new(
                "adjacency_matrix",
                false,
                vec![("rows", a.rows() as f64), ("cols", a.cols() as f64)],
            )
        };
        let skip = |name| BoundReport {
            name,
            applicable: false,
            value: None,
            diagnostics: vec![not_graph()],
        };
        (skip(BoundName::EdgeCountUpper), skip(BoundName::OrderAbsoluteUpper))
    };

    let bounds = vec![
        km_first,
        km_abs,
        thm1_upper(a)?,
        thm2_upper(a),
        lowb_from_spectrum(&sv, a.gram_trace()),
        sigma1_rayleigh_lower(a),
    ];

    let violations = bounds
        .iter()
        .filter_map(|b| {
            let value = b.value?;
            let excess = if b.name.is_upper() {
                energy - value
            } else {
                value - energy
            };
            (excess > tolerance).then_some(Violation {
                bound: b.name,
                value,
                energy,
                excess,
            })
        })
        .collect();

    Ok(CertificationReport {
        energy,
        bounds,
        violations,
        tolerance,
    })
}
