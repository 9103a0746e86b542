//! Network summaries behind the reporting surface: per-layer densities,
//! intra/inter strength breakdowns, rankings with average-rank ties, and
//! Spearman rank correlation.

use std::collections::{BTreeSet, HashMap};

use crate::degrees::{node_strength, StrengthVariant};
use crate::error::{Error, Result};
use crate::network::MultilayerNetwork;

/// Densities of one layer: the filled fraction of its intra-layer block and
/// the average filled fraction of its inter-layer block pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityRow {
    pub layer: String,
    /// Nonzero intra-layer arcs over the `N(N−1)` admissible positions
    /// (self-loops are excluded by the model).
    pub intra_density: f64,
    /// Mean over the other layers β of the arcs in blocks (α,β) and (β,α)
    /// over their `2N²` positions (diagonal couplings are admissible).
    pub avg_inter_density: f64,
}

/// Strength of one node or layer split by direction and by whether the arcs
/// stay inside a layer. Ratios are absent rather than infinite when their
/// denominator is zero.
#[derive(Debug, Clone, PartialEq)]
pub struct StrengthBreakdownRow {
    pub entity: String,
    pub in_intra: f64,
    pub in_inter: f64,
    pub out_intra: f64,
    pub out_inter: f64,
    /// (in_intra + out_intra) / (in_inter + out_inter).
    pub intra_inter_ratio: Option<f64>,
    /// (in_intra + in_inter) / (out_intra + out_inter).
    pub in_out_ratio: Option<f64>,
}

/// Whether a breakdown aggregates per node or per layer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BreakdownBy {
    Node,
    Layer,
}

/// One ranked entity.
#[derive(Debug, Clone, PartialEq)]
pub struct RankEntry {
    pub entity: String,
    pub value: f64,
    pub rank: f64,
}

/// Entities ordered best-first, ties sharing the average of their ranks.
#[derive(Debug, Clone, PartialEq)]
pub struct Ranking {
    entries: Vec<RankEntry>,
}

impl Ranking {
    pub fn entries(&self) -> &[RankEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn rank_of(&self, entity: &str) -> Option<f64> {
        self.entries
            .iter()
            .find(|e| e.entity == entity)
            .map(|e| e.rank)
    }
}

/// Per-layer intra- and inter-layer densities.
pub fn densities(net: &MultilayerNetwork) -> Result<Vec<DensityRow>> {
    let n = net.n_nodes();
    if n < 2 {
        return Err(Error::DegenerateInput(
            "densities need at least two nodes".into(),
        ));
    }
    let l = net.n_layers();
    let nnz = |a: usize, b: usize| -> Result<usize> {
        Ok(net.block(a, b)?.iter().filter(|&&w| w > 0.0).count())
    };

    let intra_positions = (n * (n - 1)) as f64;
    let inter_positions = (2 * n * n) as f64;
    let mut rows = Vec::with_capacity(l);
    for alpha in 0..l {
        let intra_density = nnz(alpha, alpha)? as f64 / intra_positions;
        let avg_inter_density = if l == 1 {
            0.0
        } else {
            let mut acc = 0.0;
            for beta in 0..l {
                if beta == alpha {
                    continue;
                }
                acc += (nnz(alpha, beta)? + nnz(beta, alpha)?) as f64 / inter_positions;
            }
            acc / (l - 1) as f64
        };
        rows.push(DensityRow {
            layer: net.layer_labels()[alpha].clone(),
            intra_density,
            avg_inter_density,
        });
    }
    Ok(rows)
}

/// Strength split by direction and intra/inter, per node or per layer.
pub fn strength_breakdown(net: &MultilayerNetwork, by: BreakdownBy) -> Vec<StrengthBreakdownRow> {
    let labels = match by {
        BreakdownBy::Node => net.node_labels(),
        BreakdownBy::Layer => net.layer_labels(),
    };
    // (in_intra, in_inter, out_intra, out_inter) per entity.
    let mut sums = vec![(0.0, 0.0, 0.0, 0.0); labels.len()];
    for (origin, dest, w) in net.arcs() {
        let intra = origin.layer == dest.layer;
        let (o, d) = match by {
            BreakdownBy::Node => (origin.node, dest.node),
            BreakdownBy::Layer => (origin.layer, dest.layer),
        };
        if intra {
            sums[o].2 += w;
            sums[d].0 += w;
        } else {
            sums[o].3 += w;
            sums[d].1 += w;
        }
    }

    let ratio = |num: f64, den: f64| if den > 0.0 { Some(num / den) } else { None };
    labels
        .iter()
        .zip(&sums)
        .map(
            |(label, &(in_intra, in_inter, out_intra, out_inter))| StrengthBreakdownRow {
                entity: label.clone(),
                in_intra,
                in_inter,
                out_intra,
                out_inter,
                intra_inter_ratio: ratio(in_intra + out_intra, in_inter + out_inter),
                in_out_ratio: ratio(in_intra + in_inter, out_intra + out_inter),
            },
        )
        .collect()
}

/// Convenience: total node strengths as rankable `(entity, value)` pairs.
pub fn node_strength_values(net: &MultilayerNetwork) -> Result<Vec<(String, f64)>> {
    (0..net.n_nodes())
        .map(|i| {
            Ok((
                net.node_labels()[i].clone(),
                node_strength(net, i, StrengthVariant::Total)?,
            ))
        })
        .collect()
}

/// Ranks entities by value, best first. Ties share the average of the ranks
/// they span; output order (and therefore emitted bytes) is deterministic:
/// by value, then by entity label.
pub fn rank(values: &[(String, f64)], descending: bool) -> Result<Ranking> {
    if values.is_empty() {
        return Err(Error::Validation("cannot rank an empty map".into()));
    }
    let mut seen = BTreeSet::new();
    for (entity, value) in values {
        if !value.is_finite() {
            return Err(Error::Validation(format!(
                "non-finite value {value} for entity `{entity}`"
            )));
        }
        if !seen.insert(entity.as_str()) {
            return Err(Error::Validation(format!("duplicate entity `{entity}`")));
        }
    }

    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| {
        let by_value = if descending {
            values[b].1.partial_cmp(&values[a].1).unwrap()
        } else {
            values[a].1.partial_cmp(&values[b].1).unwrap()
        };
        by_value.then_with(|| values[a].0.cmp(&values[b].0))
    });

    let mut entries: Vec<RankEntry> = order
        .iter()
        .map(|&i| RankEntry {
            entity: values[i].0.clone(),
            value: values[i].1,
            rank: 0.0,
        })
        .collect();

    // Average-rank tie handling over runs of equal values.
    let mut start = 0;
    while start < entries.len() {
        let mut end = start;
        while end + 1 < entries.len() && entries[end + 1].value == entries[start].value {
            end += 1;
        }
        let shared = (start + end + 2) as f64 / 2.0;
        for entry in &mut entries[start..=end] {
            entry.rank = shared;
        }
        start = end + 1;
    }

    Ok(Ranking { entries })
}

/// Spearman rank correlation of two rankings over the same entity set:
/// the Pearson correlation of the tie-adjusted rank vectors.
pub fn spearman(a: &Ranking, b: &Ranking) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::Validation(format!(
            "entity sets differ: {} vs {} entities",
            a.len(),
            b.len()
        )));
    }
    if a.len() < 2 {
        return Err(Error::DegenerateInput(
            "rank correlation needs at least two entities".into(),
        ));
    }
    let rank_b: HashMap<&str, f64> = b
        .entries()
        .iter()
        .map(|e| (e.entity.as_str(), e.rank))
        .collect();
    let mut pairs = Vec::with_capacity(a.len());
    for entry in a.entries() {
        let rb = rank_b.get(entry.entity.as_str()).ok_or_else(|| {
            Error::Validation(format!("entity `{}` missing from second ranking", entry.entity))
        })?;
        pairs.push((entry.rank, *rb));
    }

    let n = pairs.len() as f64;
    let mean_a: f64 = pairs.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_b: f64 = pairs.iter().map(|p| p.1).sum::<f64>() / n;
    let (mut cov, mut var_a, mut var_b) = (0.0, 0.0, 0.0);
    for (ra, rb) in pairs {
        let da = ra - mean_a;
        let db = rb - mean_b;
        cov += da * db;
        var_a += da * da;
        var_b += db * db;
    }
    if var_a == 0.0 || var_b == 0.0 {
        return Err(Error::DegenerateInput(
            "zero rank variance (all values tied)".into(),
        ));
    }
    Ok((cov / (var_a * var_b).sqrt()).clamp(-1.0, 1.0))
}
