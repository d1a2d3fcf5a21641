//! Exact analysis of linear dependence in hypergraphs.
//!
//! The incidence matrix of a hypergraph ties its combinatorics to linear
//! algebra: dependent rows and columns show up as units, equal partitions,
//! zero eigenvalues of the incidence-graph adjacency, symmetric hitting times
//! and unit-constant centralities. This crate detects those structures with
//! exact rational arithmetic and cross-checks them against the spectra,
//! random walks and centralities they predict.

// Matrix kernels read clearer with explicit row/column indices.
#![allow(clippy::needless_range_loop)]

pub mod centrality;
pub mod error;
pub mod fixtures;
pub mod hypergraph;
pub mod linalg;
pub mod randwalk;
pub mod spectra;
pub mod structures;

pub use error::{Error, Result};
pub use centrality::{CentralityKind, CentralityReport, GraphProjection};
pub use hypergraph::{Axis, Format, Hypergraph, IncidenceGraph};
pub use linalg::{NullspaceBasis, Rational, RationalMatrix, Rref};
pub use randwalk::{ReturnConvention, TransitionMatrix, WalkPolicy};
pub use spectra::{MatrixKind, Preset, Spectrum, WeightScheme};
pub use structures::{Certificate, CertificateKind, ContractionMap, Unit, UnitDecomposition};
