//! Triangle censuses and clustering coefficients for weighted directed
//! multilayer networks, plus the edge-list ingestion and reporting toolkit
//! built on top of them.
//!
//! The model is a node-aligned multilayer network held as one dense
//! supra-adjacency matrix ([`network`]). On top of it sit degree and
//! strength statistics ([`degrees`]), an exact triangle census with an
//! independent brute-force oracle ([`triangles`]), three families of local
//! clustering coefficients with node/layer/network aggregations
//! ([`clustering`]), canonical CSV ingestion and serialization ([`ingest`]),
//! and ranking/density/strength summaries ([`report`]).

pub mod clustering;
pub mod degrees;
pub mod error;
pub mod ingest;
mod linalg;
pub mod network;
pub mod report;
pub mod synth;
pub mod text;
pub mod triangles;

pub use error::{Error, Result};
pub use network::{MultilayerNetwork, NetworkBuilder, NodeLayerIndex, NormalizationScheme};
