//! Energy of matrices and graphs.
//!
//! The energy of a real matrix is the sum of its singular values; the energy
//! of a graph is the energy of its adjacency matrix. This crate computes both
//! with a self-contained Jacobi eigensolver, evaluates the classical upper and
//! lower energy bounds with their hypotheses checked, and checks the
//! `(4/(3 pi)) n^{3/2}` asymptotics of random graphs by Monte Carlo.
//!
//! - [`linalg`]: dense matrices, symmetric eigendecomposition, singular values.
//! - [`bounds`]: energy and every bound, plus [`bounds::certify`].
//! - [`graphs`]: simple graphs, named families, enumeration, edge lists.
//! - [`ensemble`]: seeded `G(n, 1/2)` sampling, Monte Carlo, spectral histograms.
//! - [`extremal`]: maximum-energy graph search.
//! - [`cli`]: the `graph-energy` command line.

pub mod bounds;
pub mod cli;
pub mod ensemble;
pub mod extremal;
pub mod graphs;
pub mod linalg;

pub use bounds::{certify, energy, graph_energy, BoundName, BoundReport, CertificationReport};
pub use ensemble::{montecarlo, sample_gnp_half, semicircle_energy_constant, spectral_histogram, EnsembleStats, Histogram};
pub use extremal::{exhaustive_max_energy, local_search_max_energy, SearchResult};
pub use graphs::{enumerate_graphs, parse_edge_list, serialize_edge_list, Family, Graph};
pub use linalg::{jacobi_eigh, singular_values, singular_values_symmetric, DenseMatrix, SingularSpectrum, SymmetricEigen};

/// Any error raised by this crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Linalg(#[from] linalg::LinalgError),
    #[error(transparent)]
    Energy(#[from] bounds::EnergyError),
    #[error(transparent)]
    Graph(#[from] graphs::GraphError),
    #[error(transparent)]
    Ensemble(#[from] ensemble::EnsembleError),
    #[error(transparent)]
    Search(#[from] extremal::SearchError),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
