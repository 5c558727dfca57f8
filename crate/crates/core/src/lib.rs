//! Jordan-basis graph Fourier transform for directed graphs with
//! non-diagonalizable adjacency matrices.
//!
//! Every numerical routine is generic over [`Scalar`], with an exact Gaussian
//! rational backend and a `Complex64` floating-point backend.

pub mod config;
pub mod error;
pub mod filters;
pub mod gft;
pub mod graph;
pub mod io;
pub mod jordan;
pub mod matrix;
pub mod pipeline;
pub mod report;
pub mod scalar;
pub mod spectral;
pub mod tv;

pub use config::{AnalysisConfig, Backend, OutputFormat};
pub use error::{Error, Result};
pub use graph::{Graph, GraphSignal};
pub use matrix::{Matrix, Tolerances};
pub use pipeline::{run_pipeline, Analysis, Stage};
pub use report::DecompositionReport;
pub use scalar::{Complex64, GaussRational, Scalar};
