//! Canonical edge-list ingestion: CSV parsing, network assembly with
//! self-loop exclusion and duplicate merging, isolated-layer pruning, and
//! the inverse serialization.
//!
//! The canonical format is a long-format CSV with the exact header
//! `origin_node,origin_layer,dest_node,dest_layer,weight`, UTF-8, comma
//! separated, decimal point, no thousands separators. Malformed rows are
//! collected as rejects (with line numbers) instead of aborting the parse;
//! only a missing file or a wrong header is fatal.

use std::collections::{BTreeMap, BTreeSet};
use std::io::{Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::network::{MultilayerNetwork, NodeLayerIndex};
use crate::text::full_precision;

/// Header of the canonical edge-list CSV.
pub const CSV_HEADER: [&str; 5] = [
    "origin_node",
    "origin_layer",
    "dest_node",
    "dest_layer",
    "weight",
];

/// One directed weighted arc of the edge list.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeRecord {
    pub origin_node: String,
    pub origin_layer: String,
    pub dest_node: String,
    pub dest_layer: String,
    pub weight: f64,
}

/// A row the parser refused, with its 1-based line number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RejectedRow {
    pub line: u64,
    pub reason: String,
}

/// Accepted records plus the rejects encountered along the way.
#[derive(Debug, Clone, Default)]
pub struct ParseOutcome {
    pub records: Vec<EdgeRecord>,
    pub rejects: Vec<RejectedRow>,
}

/// What happened while turning an edge list into a network.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IngestReport {
    pub edges_read: usize,
    pub self_loops_dropped: usize,
    /// Records folded into an already-seen cell (two records for the same
    /// arc count as one merge).
    pub duplicates_merged: usize,
    pub layers_pruned: Vec<String>,
    pub final_n: usize,
    pub final_l: usize,
}

/// How duplicate (origin, dest) cells are resolved.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MergePolicy {
    /// Add the weights together (trade tables aggregate flows).
    Sum,
    /// Refuse input containing duplicates.
    Error,
}

/// Parses the canonical CSV at `path`.
pub fn parse_edges(path: impl AsRef<Path>) -> Result<ParseOutcome> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|source| Error::InputFile {
        path: path.display().to_string(),
        source,
    })?;
    parse_edges_from_reader(file)
}

/// Parses the canonical CSV from any reader.
pub fn parse_edges_from_reader<R: Read>(reader: R) -> Result<ParseOutcome> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(false)
        .from_reader(reader);

    let headers = rdr.headers()?;
    if headers.iter().ne(CSV_HEADER.iter().copied()) {
        return Err(Error::HeaderMismatch {
            expected: CSV_HEADER.join(","),
            found: headers.iter().collect::<Vec<_>>().join(","),
        });
    }

    let mut outcome = ParseOutcome::default();
    for (i, row) in rdr.records().enumerate() {
        // Data rows start on line 2, after the header.
        let fallback_line = i as u64 + 2;
        match row {
            Err(e) => {
                let line = e
                    .position()
                    .map(csv::Position::line)
                    .unwrap_or(fallback_line);
                let reason = match e.kind() {
                    csv::ErrorKind::UnequalLengths { .. } => "expected 5 fields".to_string(),
                    _ => format!("unreadable row: {e}"),
                };
                outcome.rejects.push(RejectedRow { line, reason });
            }
            Ok(record) => {
                let line = record
                    .position()
                    .map(csv::Position::line)
                    .unwrap_or(fallback_line);
                match record_to_edge(&record) {
                    Ok(edge) => outcome.records.push(edge),
                    Err(reason) => outcome.rejects.push(RejectedRow { line, reason }),
                }
            }
        }
    }
    Ok(outcome)
}

fn record_to_edge(record: &csv::StringRecord) -> std::result::Result<EdgeRecord, String> {
    let labels = [&record[0], &record[1], &record[2], &record[3]];
    if labels.iter().any(|l| l.is_empty()) {
        return Err("empty label".to_string());
    }
    let weight: f64 = record[4]
        .parse()
        .map_err(|_| "non-numeric weight".to_string())?;
    if !weight.is_finite() {
        return Err("non-finite weight".to_string());
    }
    if weight <= 0.0 {
        return Err("nonpositive weight".to_string());
    }
    Ok(EdgeRecord {
        origin_node: record[0].to_string(),
        origin_layer: record[1].to_string(),
        dest_node: record[2].to_string(),
        dest_layer: record[3].to_string(),
        weight,
    })
}

/// Builds the node-aligned network spanned by `records`.
///
/// Intra-layer self-loops are dropped and counted first; node and layer
/// label sets are the sorted unions over the surviving arcs, so the result
/// does not depend on input order and every label survives a serialization
/// round trip. Per-cell weights are likewise summed in a fixed order.
pub fn build_network(
    records: &[EdgeRecord],
    merge: MergePolicy,
) -> Result<(MultilayerNetwork, IngestReport)> {
    if records.is_empty() {
        return Err(Error::EmptyNetwork("no edge records to build from".into()));
    }

    let mut report = IngestReport {
        edges_read: records.len(),
        ..IngestReport::default()
    };

    let surviving: Vec<&EdgeRecord> = records
        .iter()
        .filter(|r| {
            let keep = r.origin_node != r.dest_node || r.origin_layer != r.dest_layer;
            if !keep {
                report.self_loops_dropped += 1;
            }
            keep
        })
        .collect();
    if surviving.is_empty() {
        return Err(Error::EmptyNetwork(
            "every record is an intra-layer self-loop".into(),
        ));
    }

    let mut nodes = BTreeSet::new();
    let mut layers = BTreeSet::new();
    for r in &surviving {
        nodes.insert(r.origin_node.as_str());
        nodes.insert(r.dest_node.as_str());
        layers.insert(r.origin_layer.as_str());
        layers.insert(r.dest_layer.as_str());
    }
    let node_labels: Vec<&str> = nodes.into_iter().collect();
    let layer_labels: Vec<&str> = layers.into_iter().collect();
    let node_of: BTreeMap<&str, usize> =
        node_labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
    let layer_of: BTreeMap<&str, usize> =
        layer_labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();

    report.final_n = node_labels.len();
    report.final_l = layer_labels.len();

    let mut cells: BTreeMap<(usize, usize), Vec<f64>> = BTreeMap::new();
    let n = node_labels.len();
    for r in surviving {
        let origin = NodeLayerIndex::new(
            node_of[r.origin_node.as_str()],
            layer_of[r.origin_layer.as_str()],
        );
        let dest = NodeLayerIndex::new(
            node_of[r.dest_node.as_str()],
            layer_of[r.dest_layer.as_str()],
        );
        cells
            .entry((origin.flat(n), dest.flat(n)))
            .or_default()
            .push(r.weight);
    }

    let mut duplicate_keys = Vec::new();
    let mut builder = MultilayerNetwork::builder(node_labels.clone(), layer_labels.clone())?;
    for (&(h, k), weights) in &mut cells {
        let origin = NodeLayerIndex::from_flat(h, n);
        let dest = NodeLayerIndex::from_flat(k, n);
        if weights.len() > 1 {
            report.duplicates_merged += weights.len() - 1;
            if merge == MergePolicy::Error {
                duplicate_keys.push(format!(
                    "({},{})->({},{})",
                    node_labels[origin.node],
                    layer_labels[origin.layer],
                    node_labels[dest.node],
                    layer_labels[dest.layer]
                ));
                continue;
            }
        }
        // Summing in sorted weight order keeps the result independent of the
        // order records arrived in.
        weights.sort_by(f64::total_cmp);
        builder.add_arc(origin, dest, weights.iter().sum())?;
    }
    if !duplicate_keys.is_empty() {
        return Err(Error::DuplicateArcs(duplicate_keys.join("; ")));
    }

    Ok((builder.build(), report))
}

/// Drops every layer with no intra-layer arcs and no inter-layer arcs in
/// either direction, preserving the order of the survivors. Returns the new
/// network and the labels of the pruned layers.
pub fn prune_isolated_layers(
    net: &MultilayerNetwork,
) -> Result<(MultilayerNetwork, Vec<String>)> {
    let n = net.n_nodes();
    let l = net.n_layers();
    let mut live = vec![false; l];
    for (origin, dest, _) in net.arcs() {
        live[origin.layer] = true;
        live[dest.layer] = true;
    }

    let survivors: Vec<usize> = (0..l).filter(|&a| live[a]).collect();
    if survivors.is_empty() {
        return Err(Error::EmptyNetwork(
            "every layer is isolated; pruning would remove the whole network".into(),
        ));
    }
    let pruned: Vec<String> = (0..l)
        .filter(|&a| !live[a])
        .map(|a| net.layer_labels()[a].clone())
        .collect();
    if pruned.is_empty() {
        return Ok((net.clone(), pruned));
    }

    let order = n * survivors.len();
    let mut supra = ndarray::Array2::zeros((order, order));
    for (ai, &alpha) in survivors.iter().enumerate() {
        for (bi, &beta) in survivors.iter().enumerate() {
            supra
                .slice_mut(ndarray::s![ai * n..(ai + 1) * n, bi * n..(bi + 1) * n])
                .assign(&net.block(alpha, beta)?);
        }
    }
    let layer_labels: Vec<String> = survivors
        .iter()
        .map(|&a| net.layer_labels()[a].clone())
        .collect();
    let new_net = MultilayerNetwork::from_supra(net.node_labels().to_vec(), layer_labels, supra)?;
    Ok((new_net, pruned))
}

/// Serializes a network back into the canonical CSV, rows sorted by
/// `(origin_layer, origin_node, dest_layer, dest_node)`, weights written
/// with enough digits to re-parse exactly.
pub fn write_edges<W: Write>(net: &MultilayerNetwork, out: W) -> Result<()> {
    let nodes = net.node_labels();
    let layers = net.layer_labels();
    let mut rows: Vec<(&str, &str, &str, &str, f64)> = net
        .arcs()
        .map(|(origin, dest, w)| {
            (
                layers[origin.layer].as_str(),
                nodes[origin.node].as_str(),
                layers[dest.layer].as_str(),
                nodes[dest.node].as_str(),
                w,
            )
        })
        .collect();
    rows.sort_by(|a, b| (a.0, a.1, a.2, a.3).cmp(&(b.0, b.1, b.2, b.3)));

    let mut wtr = csv::Writer::from_writer(out);
    wtr.write_record(CSV_HEADER)?;
    for (ol, on, dl, dn, w) in rows {
        wtr.write_record([on, ol, dn, dl, full_precision(w).as_str()])?;
    }
    wtr.flush()?;
    Ok(())
}

/// [`write_edges`] straight to a file path.
pub fn write_edges_to_path(net: &MultilayerNetwork, path: impl AsRef<Path>) -> Result<()> {
    let file = std::fs::File::create(path)?;
    write_edges(net, file)
}
