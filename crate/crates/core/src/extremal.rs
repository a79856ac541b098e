//! Maximum-energy graph search, measured against `(n/2)(1 + sqrt(n))`.

use serde::{Serialize, Serializer};

use crate::bounds::graph_energy;
use crate::ensemble::{derive_seed, sample_gnp_half};
use crate::graphs::{canonical_pairs, enumerate_graphs, serialize_edge_list, Family, Graph, GraphError};
use crate::linalg::LinalgError;

/// Minimum gain for a flip to count as an improvement.
pub const IMPROVEMENT_THRESHOLD: f64 = 1e-9;

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum SearchError {
    #[error("{0}")]
    Precondition(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMethod {
    Exhaustive,
    Local,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchResult {
    pub n: usize,
    pub method: SearchMethod,
    pub best_energy: f64,
    pub km_absolute: f64,
    pub ratio: f64,
    pub evaluations: u64,
    pub seed: Option<u64>,
    #[serde(serialize_with = "serialize_graph")]
    pub best_graph: Graph,
}

fn serialize_graph<S: Serializer>(g: &Graph, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&serialize_edge_list(g))
}

/// `(n/2)(1 + sqrt(n))`.
pub fn km_absolute_value(n: usize) -> f64 {
    let n = n as f64;
    n / 2.0 * (1.0 + n.sqrt())
}

impl SearchResult {
    fn new(
        method: SearchMethod,
        best_graph: Graph,
        best_energy: f64,
        evaluations: u64,
        seed: Option<u64>,
    ) -> Self {
        let n = best_graph.order();
        let km_absolute = km_absolute_value(n);
        Self {
            n,
            method,
            best_energy,
            km_absolute,
            ratio: best_energy / km_absolute,
            evaluations,
            seed,
            best_graph,
        }
    }
}

/// Scans every labeled graph on `n` vertices (`2 <= n <= 6`). On ties, within
/// [`IMPROVEMENT_THRESHOLD`], the first graph in enumeration order wins.
pub fn exhaustive_max_energy(n: usize) -> Result<SearchResult, SearchError> {
    if n < 2 {
        return Err(SearchError::Precondition(format!(
            "exhaustive search needs n >= 2, got {n}"
        )));
    }
    let mut best: Option<(Graph, f64)> = None;
    let mut evaluations = 0;
    for g in enumerate_graphs(n)? {
        let e = graph_energy(&g)?;
        evaluations += 1;
        if best.as_ref().map_or(true, |(_, b)| e > b + IMPROVEMENT_THRESHOLD) {
            best = Some((g, e));
        }
    }
    let (graph, energy) = best.expect("enumeration yields at least one graph");
    Ok(SearchResult::new(SearchMethod::Exhaustive, graph, energy, evaluations, None))
}

/// Steepest-ascent edge-flip hill climbing with restarts.
///
/// `iterations` is the budget of energy evaluations. The first climb starts
/// from `K_n`; restart `r >= 1` starts from `sample_gnp_half(n,
/// derive_seed(seed, r))`. Each step evaluates every single-edge flip in
/// canonical pair order and applies the best one (lowest index on ties); a
/// climb ends when no flip gains more than [`IMPROVEMENT_THRESHOLD`]. The
/// search stops when the budget is spent, possibly mid-scan.
pub fn local_search_max_energy(
    n: usize,
    seed: u64,
    iterations: u64,
) -> Result<SearchResult, SearchError> {
    if n < 2 {
        return Err(SearchError::Precondition(format!("local search needs n >= 2, got {n}")));
    }
    if iterations == 0 {
        return Err(SearchError::Precondition("iterations must be at least 1".into()));
    }
    let pairs = canonical_pairs(n);
    let mut evaluations = 0u64;
    let mut best: Option<(Graph, f64)> = None;
    let mut restart = 0u64;

    while evaluations < iterations {
        let mut current = if restart == 0 {
            Family::Complete(n).build()?
        } else {
            sample_gnp_half(n, derive_seed(seed, restart))
        };
        restart += 1;
        let mut current_energy = graph_energy(&current)?;
        evaluations += 1;
        consider(&mut best, &current, current_energy);

        'climb: loop {
            let mut best_flip: Option<(usize, f64)> = None;
            for (k, &(u, v)) in pairs.iter().enumerate() {
                if evaluations == iterations {
                    break 'climb;
                }
                current.toggle_edge(u, v);
                let e = graph_energy(&current)?;
                current.toggle_edge(u, v);
                evaluations += 1;
                if best_flip.map_or(true, |(_, b)| e > b) {
                    best_flip = Some((k, e));
                }
            }
            match best_flip {
                Some((k, e)) if e > current_energy + IMPROVEMENT_THRESHOLD => {
                    let (u, v) = pairs[k];
                    current.toggle_edge(u, v);
                    current_energy = e;
                    consider(&mut best, &current, current_energy);
                }
                _ => break,
            }
        }
    }

    let (graph, energy) = best.expect("at least one evaluation was made");
    Ok(SearchResult::new(SearchMethod::Local, graph, energy, evaluations, Some(seed)))
}

fn consider(best: &mut Option<(Graph, f64)>, g: &Graph, e: f64) {
    if best.as_ref().map_or(true, |(_, b)| e > b + IMPROVEMENT_THRESHOLD) {
        *best = Some((g.clone(), e));
    }
}
