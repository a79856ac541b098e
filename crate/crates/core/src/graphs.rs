//! Simple undirected graphs on vertices `0..order`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::linalg::DenseMatrix;

/// Largest order accepted by [`enumerate_graphs`].
pub const MAX_ENUMERATION_ORDER: usize = 6;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph order must be positive")]
    EmptyOrder,
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} out of range for order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("enumeration is limited to n <= {MAX_ENUMERATION_ORDER}, got n = {0}")]
    EnumerationLimit(usize),
    #[error("invalid family `{spec}`: {reason}")]
    Family { spec: String, reason: String },
    #[error("line {line}: {kind}")]
    Parse { line: usize, kind: EdgeListError },
}

/// Why a line of an edge list was rejected.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EdgeListError {
    #[error("missing vertex count")]
    MissingHeader,
    #[error("malformed line `{0}`")]
    Malformed(String),
    #[error("endpoint {endpoint} out of range for order {order}")]
    EndpointOutOfRange { endpoint: usize, order: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
}

/// A simple undirected graph. Edges are stored canonically as `(u, v)` with
/// `u < v`, in sorted order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    order: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    /// Graph with `order` vertices and no edges.
    pub fn empty(order: usize) -> Result<Self, GraphError> {
        if order == 0 {
            return Err(GraphError::EmptyOrder);
        }
        Ok(Self {
            order,
            edges: BTreeSet::new(),
        })
    }

    pub fn from_edges(
        order: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let mut g = Self::empty(order)?;
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        for vertex in [u, v] {
            if vertex >= self.order {
                return Err(GraphError::VertexOutOfRange {
                    vertex,
                    order: self.order,
                });
            }
        }
        let e = (u.min(v), u.max(v));
        if !self.edges.insert(e) {
            return Err(GraphError::DuplicateEdge(e.0, e.1));
        }
        Ok(())
    }

    /// Adds the edge if absent, removes it if present. Panics on a loop or
    /// out-of-range vertex.
    pub fn toggle_edge(&mut self, u: usize, v: usize) {
        assert!(u != v && u < self.order && v < self.order, "invalid edge {u}-{v}");
        let e = (u.min(v), u.max(v));
        if !self.edges.remove(&e) {
            self.edges.insert(e);
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    /// Edges in canonical sorted order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    /// Symmetric 0/1 adjacency matrix with zero diagonal.
    pub fn adjacency(&self) -> DenseMatrix {
        let n = self.order;
        let mut data = vec![0.0; n * n];
        for &(u, v) in &self.edges {
            data[u * n + v] = 1.0;
            data[v * n + u] = 1.0;
        }
        DenseMatrix::new(n, n, data).expect("order is positive and entries are finite")
    }

    /// Same graph with vertex `v` renamed to `perm[v]`.
    pub fn relabeled(&self, perm: &[usize]) -> Result<Self, GraphError> {
        Self::from_edges(self.order, self.edges().map(|(u, v)| (perm[u], perm[v])))
    }
}

/// All `n(n-1)/2` vertex pairs `(i, j)`, `i < j`, in row-major order. This is
/// the canonical edge ordering used by enumeration, sampling and search.
pub fn canonical_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

/// The named graph families with closed-form spectra.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Complete(usize),
    CompleteBipartite(usize, usize),
    Cycle(usize),
    Path(usize),
    Star(usize),
    Petersen,
}

impl Family {
    /// Builds the labeled graph.
    ///
    /// Labeling:
    /// - `Complete(n)`: every pair of `0..n`.
    /// - `CompleteBipartite(a, b)`: parts `0..a` and `a..a+b`.
    /// - `Cycle(n)`: `i ~ i+1 (mod n)`.
    /// - `Path(n)`: `i ~ i+1` for `i < n-1`.
    /// - `Star(n)`: center `0` joined to `1..n`, so `n + 1` vertices.
    /// - `Petersen`: outer cycle `0..5`, spokes `i ~ i+5`, inner pentagram
    ///   `5+i ~ 5+(i+2) mod 5`.
    pub fn build(self) -> Result<Graph, GraphError> {
        let bad = |reason: &str| GraphError::Family {
            spec: self.to_string(),
            reason: reason.to_string(),
        };
        match self {
            Family::Complete(n) => {
                if n == 0 {
                    return Err(bad("n must be at least 1"));
                }
                Graph::from_edges(n, canonical_pairs(n))
            }
            Family::CompleteBipartite(a, b) => {
                if a == 0 || b == 0 {
                    return Err(bad("both parts must be nonempty"));
                }
                Graph::from_edges(a + b, (0..a).flat_map(|i| (a..a + b).map(move |j| (i, j))))
            }
            Family::Cycle(n) => {
                if n < 3 {
                    return Err(bad("a cycle needs at least 3 vertices"));
                }
                Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
            }
            Family::Path(n) => {
                if n == 0 {
                    return Err(bad("n must be at least 1"));
                }
                Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))
            }
            Family::Star(n) => {
                if n == 0 {
                    return Err(bad("a star needs at least one leaf"));
                }
                Graph::from_edges(n + 1, (1..=n).map(|i| (0, i)))
            }
            Family::Petersen => {
                let outer = (0..5).map(|i| (i, (i + 1) % 5));
                let spokes = (0..5).map(|i| (i, i + 5));
                let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
                Graph::from_edges(10, outer.chain(spokes).chain(inner))
            }
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Family::Complete(n) => write!(f, "complete:{n}"),
            Family::CompleteBipartite(a, b) => write!(f, "complete_bipartite:{a}:{b}"),
            Family::Cycle(n) => write!(f, "cycle:{n}"),
            Family::Path(n) => write!(f, "path:{n}"),
            Family::Star(n) => write!(f, "star:{n}"),
            Family::Petersen => write!(f, "petersen"),
        }
    }
}

/// Accepts `name`, `name:p`, `name:p:q`, with `:`, `,` or whitespace as
/// separators, e.g. `complete:4`, `complete_bipartite 2 3`, `petersen`.
impl FromStr for Family {
    type Err = GraphError;

    fn from_str(spec: &str) -> Result<Self, GraphError> {
        let bad = |reason: String| GraphError::Family {
            spec: spec.to_string(),
            reason,
        };
        let tokens: Vec<&str> = spec
            .split(|c: char| c == ':' || c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .collect();
        let (name, params) = tokens
            .split_first()
            .ok_or_else(|| bad("empty family spec".into()))?;
        let params: Vec<usize> = params
            .iter()
            .map(|t| t.parse().map_err(|_| bad(format!("invalid parameter `{t}`"))))
            .collect::<Result<_, _>>()?;
        let arity = |k: usize| {
            if params.len() == k {
                Ok(())
            } else {
                Err(bad(format!("`{name}` takes {k} parameter(s), got {}", params.len())))
            }
        };
        let family = match name.to_ascii_lowercase().as_str() {
            "complete" | "k" => {
                arity(1)?;
                Family::Complete(params[0])
            }
            "complete_bipartite" | "bipartite" => {
                arity(2)?;
                Family::CompleteBipartite(params[0], params[1])
            }
            "cycle" | "c" => {
                arity(1)?;
                Family::Cycle(params[0])
            }
            "path" | "p" => {
                arity(1)?;
                Family::Path(params[0])
            }
            "star" => {
                arity(1)?;
                Family::Star(params[0])
            }
            "petersen" => {
                arity(0)?;
                Family::Petersen
            }
            other => return Err(bad(format!("unknown family `{other}`"))),
        };
        Ok(family)
    }
}

/// Every labeled graph on `n` vertices, each exactly once.
///
/// Graph number `k` contains the pair with canonical index `b` (see
/// [`canonical_pairs`]) iff bit `b` of `k` is set. Since canonical index is
/// increasing in `i*n + j`, counting `k` upward visits the edge-indicator
/// bitmasks in lexicographic order.
pub fn enumerate_graphs(n: usize) -> Result<GraphEnumerator, GraphError> {
    if n == 0 {
        return Err(GraphError::EmptyOrder);
    }
    if n > MAX_ENUMERATION_ORDER {
        return Err(GraphError::EnumerationLimit(n));
    }
    let pairs = canonical_pairs(n);
    Ok(GraphEnumerator {
        n,
        total: 1u64 << pairs.len(),
        pairs,
        next: 0,
    })
}

#[derive(Debug, Clone)]
pub struct GraphEnumerator {
    n: usize,
    pairs: Vec<(usize, usize)>,
    next: u64,
    total: u64,
}

impl GraphEnumerator {
    /// Number of graphs the enumeration yields in total.
    pub fn total(&self) -> u64 {
        self.total
    }
}

impl Iterator for GraphEnumerator {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        if self.next == self.total {
            return None;
        }
        let mask = self.next;
        self.next += 1;
        let edges = self
            .pairs
            .iter()
            .enumerate()
            .filter(|(b, _)| mask >> b & 1 == 1)
            .map(|(_, &e)| e);
        Some(Graph::from_edges(self.n, edges).expect("canonical pairs are valid edges"))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.total - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for GraphEnumerator {}

/// Parses the edge-list format: the first non-comment line is the vertex
/// count, then one `u v` pair per line. `#` starts a comment line and blank
/// lines are skipped. Pairs may be given in either orientation.
pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let err = |line: usize, kind: EdgeListError| GraphError::Parse { line, kind };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = lines
        .next()
        .ok_or_else(|| err(1, EdgeListError::MissingHeader))?;
    let order: usize = header
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| err(header_line, EdgeListError::Malformed(header.to_string())))?;

    let mut g = Graph::empty(order)?;
    for (line_no, line) in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        let parsed = match toks[..] {
            [a, b] => a.parse::<usize>().ok().zip(b.parse::<usize>().ok()),
            _ => None,
        };
        let (u, v) = parsed.ok_or_else(|| err(line_no, EdgeListError::Malformed(line.to_string())))?;
        g.add_edge(u, v).map_err(|e| {
            let kind = match e {
                GraphError::SelfLoop(v) => EdgeListError::SelfLoop(v),
                GraphError::VertexOutOfRange { vertex, order } => {
                    EdgeListError::EndpointOutOfRange {
                        endpoint: vertex,
                        order,
                    }
                }
                GraphError::DuplicateEdge(a, b) => EdgeListError::DuplicateEdge(a, b),
                other => unreachable!("add_edge does not return {other:?}"),
            };
            err(line_no, kind)
        })?;
    }
    Ok(g)
}

/// Canonical edge-list text: order, then sorted `u v` lines with `u < v`.
pub fn serialize_edge_list(g: &Graph) -> String {
    let mut out = format!("{}\n", g.order);
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn family_sizes() {
        assert_eq!(Family::Complete(4).build().unwrap().size(), 6);
        let c5 = Family::Cycle(5).build().unwrap();
        assert_eq!(c5.size(), 5);
        assert!((0..5).all(|v| c5.degree(v) == 2));
        assert_eq!(Family::CompleteBipartite(2, 3).build().unwrap().size(), 6);
        assert_eq!(Family::Path(1).build().unwrap().size(), 0);
        let star = Family::Star(4).build().unwrap();
        assert_eq!((star.order(), star.size(), star.degree(0)), (5, 4, 4));
        let p = Family::Petersen.build().unwrap();
        assert_eq!((p.order(), p.size()), (10, 15));
        assert!((0..10).all(|v| p.degree(v) == 3));
    }

    #[test]
    fn family_parameter_errors() {
        assert!(Family::Cycle(2).build().is_err());
        assert!(Family::Complete(0).build().is_err());
        assert!(Family::CompleteBipartite(0, 3).build().is_err());
        assert!(Family::Star(0).build().is_err());
    }

    #[test]
    fn family_spec_parsing() {
        assert_eq!("complete:4".parse::<Family>().unwrap(), Family::Complete(4));
        assert_eq!(
            "complete_bipartite 2 3".parse::<Family>().unwrap(),
            Family::CompleteBipartite(2, 3)
        );
        assert_eq!("petersen".parse::<Family>().unwrap(), Family::Petersen);
        assert_eq!("cycle,7".parse::<Family>().unwrap(), Family::Cycle(7));
        for f in [Family::Star(3), Family::CompleteBipartite(4, 1), Family::Path(2)] {
            assert_eq!(f.to_string().parse::<Family>().unwrap(), f);
        }
        assert!("petersen:3".parse::<Family>().is_err());
        assert!("cube:3".parse::<Family>().is_err());
        assert!("cycle:x".parse::<Family>().is_err());
        assert!("".parse::<Family>().is_err());
    }

    #[test]
    fn adjacency_shape() {
        let k2 = Family::Complete(2).build().unwrap().adjacency();
        assert_eq!(k2.as_slice(), &[0.0, 1.0, 1.0, 0.0]);
        let e3 = Graph::empty(3).unwrap().adjacency();
        assert_eq!(e3, DenseMatrix::zeros(3, 3).unwrap());
        let c4 = Family::Cycle(4).build().unwrap().adjacency();
        assert!((0..4).all(|i| c4.row(i).iter().sum::<f64>() == 2.0));
    }

    #[test]
    fn edge_errors() {
        let mut g = Graph::empty(3).unwrap();
        assert_eq!(g.add_edge(1, 1), Err(GraphError::SelfLoop(1)));
        assert!(matches!(g.add_edge(0, 3), Err(GraphError::VertexOutOfRange { .. })));
        g.add_edge(2, 0).unwrap();
        assert_eq!(g.add_edge(0, 2), Err(GraphError::DuplicateEdge(0, 2)));
        assert!(Graph::empty(0).is_err());
        g.toggle_edge(0, 2);
        assert_eq!(g.size(), 0);
        g.toggle_edge(1, 0);
        assert!(g.has_edge(0, 1));
    }

    #[test]
    fn enumeration_counts_and_guard() {
        assert_eq!(enumerate_graphs(3).unwrap().count(), 8);
        assert_eq!(enumerate_graphs(4).unwrap().count(), 64);
        assert_eq!(enumerate_graphs(1).unwrap().count(), 1);
        assert_eq!(enumerate_graphs(6).unwrap().total(), 32768);
        assert_eq!(enumerate_graphs(7).unwrap_err(), GraphError::EnumerationLimit(7));
    }

    #[test]
    fn enumeration_is_exhaustive_without_duplicates() {
        for n in 1..=5 {
            let graphs: Vec<Graph> = enumerate_graphs(n).unwrap().collect();
            let expected = 1usize << (n * (n - 1) / 2);
            assert_eq!(graphs.len(), expected);
            let distinct: HashSet<&Graph> = graphs.iter().collect();
            assert_eq!(distinct.len(), expected);
        }
    }

    #[test]
    fn enumeration_order_is_lexicographic_in_sparse_mask() {
        let n = 4;
        let masks: Vec<u64> = enumerate_graphs(n)
            .unwrap()
            .map(|g| g.edges().map(|(i, j)| 1u64 << (i * n + j)).sum())
            .collect();
        assert!(masks.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(masks[0], 0);
    }

    #[test]
    fn edge_list_parsing() {
        let g = parse_edge_list("3\n0 1\n1 2\n").unwrap();
        assert_eq!(g, Family::Path(3).build().unwrap());
        let g = parse_edge_list("# triangle\n3\n\n1 0\n2 1 \n# tail\n0 2\n").unwrap();
        assert_eq!(g, Family::Complete(3).build().unwrap());
    }

    #[test]
    fn edge_list_errors_carry_line_numbers() {
        let cases = [
            ("2\n0 0\n", 2, EdgeListError::SelfLoop(0)),
            (
                "2\n0 2\n",
                2,
                EdgeListError::EndpointOutOfRange {
                    endpoint: 2,
                    order: 2,
                },
            ),
            ("3\n0 1\n\n1 0\n", 4, EdgeListError::DuplicateEdge(0, 1)),
            ("3\n0 1 2\n", 2, EdgeListError::Malformed("0 1 2".into())),
            ("3\n0 -1\n", 2, EdgeListError::Malformed("0 -1".into())),
            ("x\n", 1, EdgeListError::Malformed("x".into())),
            ("# only a comment\n", 1, EdgeListError::MissingHeader),
        ];
        for (text, line, kind) in cases {
            assert_eq!(parse_edge_list(text), Err(GraphError::Parse { line, kind }), "{text:?}");
        }
    }

    #[test]
    fn serialize_is_canonical() {
        let g = parse_edge_list("4\n3 1\n0 2\n2 1\n").unwrap();
        assert_eq!(serialize_edge_list(&g), "4\n0 2\n1 2\n1 3\n");
    }
}
