//! Staged pipeline plumbing: parse → build → prune, stage-tagged errors and
//! the ingest summary printed on standard output.

use std::fmt;
use std::path::Path;

use supraclust_core::ingest::{self, IngestReport, MergePolicy, RejectedRow};
use supraclust_core::{Error as CoreError, MultilayerNetwork};

/// Where in the pipeline an error happened; decides the exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    /// Flag validation before any file is touched.
    Options,
    Parse,
    Build,
    Prune,
    Analyze,
    Write,
}

impl Stage {
    pub fn name(self) -> &'static str {
        match self {
            Stage::Options => "options",
            Stage::Parse => "parse",
            Stage::Build => "build",
            Stage::Prune => "prune",
            Stage::Analyze => "analyze",
            Stage::Write => "write",
        }
    }

    /// Input/format problems exit 1, computation/output problems exit 2.
    pub fn exit_code(self) -> u8 {
        match self {
            Stage::Options | Stage::Parse | Stage::Build | Stage::Prune => 1,
            Stage::Analyze | Stage::Write => 2,
        }
    }
}

/// A core error tagged with the pipeline stage it came from.
#[derive(Debug)]
pub struct StageError {
    pub stage: Stage,
    pub source: CoreError,
}

impl StageError {
    pub fn options(message: impl Into<String>) -> Self {
        StageError {
            stage: Stage::Options,
            source: CoreError::Validation(message.into()),
        }
    }

    pub fn exit_code(&self) -> u8 {
        self.stage.exit_code()
    }
}

impl fmt::Display for StageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "error[{}]: {}", self.stage.name(), self.source)
    }
}

pub trait StageResultExt<T> {
    fn at(self, stage: Stage) -> Result<T, StageError>;
}

impl<T> StageResultExt<T> for Result<T, CoreError> {
    fn at(self, stage: Stage) -> Result<T, StageError> {
        self.map_err(|source| StageError { stage, source })
    }
}

/// A parsed, built and pruned network together with its ingest report.
pub struct LoadedNetwork {
    pub net: MultilayerNetwork,
    pub report: IngestReport,
    pub rejects: Vec<RejectedRow>,
}

/// Runs the ingest stages on the canonical CSV at `path`.
pub fn load_network(path: &Path) -> Result<LoadedNetwork, StageError> {
    let outcome = ingest::parse_edges(path).at(Stage::Parse)?;
    let (net, mut report) =
        ingest::build_network(&outcome.records, MergePolicy::Sum).at(Stage::Build)?;
    let (net, pruned) = ingest::prune_isolated_layers(&net).at(Stage::Prune)?;
    report.layers_pruned = pruned;
    report.final_n = net.n_nodes();
    report.final_l = net.n_layers();
    Ok(LoadedNetwork {
        net,
        report,
        rejects: outcome.rejects,
    })
}

/// Prints the ingest summary.
pub fn print_summary(loaded: &LoadedNetwork) {
    let r = &loaded.report;
    println!("edges read:         {}", r.edges_read);
    println!("rows rejected:      {}", loaded.rejects.len());
    for reject in loaded.rejects.iter().take(10) {
        println!("  line {}: {}", reject.line, reject.reason);
    }
    if loaded.rejects.len() > 10 {
        println!("  ... and {} more", loaded.rejects.len() - 10);
    }
    println!("self-loops dropped: {}", r.self_loops_dropped);
    println!("duplicates merged:  {}", r.duplicates_merged);
    if r.layers_pruned.is_empty() {
        println!("layers pruned:      0");
    } else {
        println!(
            "layers pruned:      {} ({})",
            r.layers_pruned.len(),
            r.layers_pruned.join(", ")
        );
    }
    println!(
        "network:            {} nodes x {} layers (supra order {}, {} arcs)",
        r.final_n,
        r.final_l,
        loaded.net.order(),
        loaded.net.arc_count()
    );
}
