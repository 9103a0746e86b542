//! Exact directed-triangle census on the supra-graph.
//!
//! A triangle through a node-layer pair is a closed triad whose corners may
//! sit on up to three different layers, counted irrespective of arc
//! orientation: the count at supra index `h` is half the `h`-th diagonal
//! entry of the cube of the symmetrized binary supra matrix. Reciprocated
//! arcs contribute entries of 2 to the symmetrized matrix, so a pair of
//! opposite arcs closing a triad is counted through both orientations; the
//! clustering denominators, not the census, carry the bilateral correction.
//!
//! Everything here is exact: the symmetrized entries are the integers
//! {0, 1, 2} and at any realistic order all intermediate values stay far
//! below 2^53, so the floating-point matrix products round nothing.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg;
use crate::network::MultilayerNetwork;

/// Largest supra order the brute-force oracle accepts.
pub const ORACLE_MAX_ORDER: usize = 60;

/// Triangle counts for every node-layer pair, with the layer, node and
/// whole-network aggregations.
///
/// The cube of the symmetrized structure is computed once per census; all
/// queries read the cached diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct TriangleCensus {
    per_node_layer: Vec<f64>,
    per_node: Vec<f64>,
    per_layer: Vec<f64>,
    total: f64,
    n_nodes: usize,
    n_layers: usize,
}

impl TriangleCensus {
    /// Triangle count of node `node` on layer `layer`.
    pub fn node_layer(&self, node: usize, layer: usize) -> Result<f64> {
        check_index("node", node, self.n_nodes)?;
        check_index("layer", layer, self.n_layers)?;
        Ok(self.per_node_layer[layer * self.n_nodes + node])
    }

    /// Triangle count of node `node` over all layers.
    pub fn node(&self, node: usize) -> Result<f64> {
        check_index("node", node, self.n_nodes)?;
        Ok(self.per_node[node])
    }

    /// Triangle count of all nodes within layer `layer`.
    pub fn layer(&self, layer: usize) -> Result<f64> {
        check_index("layer", layer, self.n_layers)?;
        Ok(self.per_layer[layer])
    }

    /// Total number of (node, layer)-rooted triangles in the network.
    pub fn total(&self) -> f64 {
        self.total
    }

    /// Counts indexed by flat supra index.
    pub fn per_node_layer(&self) -> &[f64] {
        &self.per_node_layer
    }

    pub fn per_node(&self) -> &[f64] {
        &self.per_node
    }

    pub fn per_layer(&self) -> &[f64] {
        &self.per_layer
    }
}

fn check_index(what: &'static str, index: usize, len: usize) -> Result<()> {
    if index >= len {
        return Err(Error::IndexOutOfRange { what, index, len });
    }
    Ok(())
}

/// Computes the full triangle census of a network.
pub fn triangle_census(net: &MultilayerNetwork) -> TriangleCensus {
    let n = net.n_nodes();
    let l = net.n_layers();
    let sym = linalg::symmetrize(linalg::binarized(net.supra()).view());
    let per_node_layer: Vec<f64> = linalg::triple_product_diagonal(&sym, &sym)
        .into_par_iter()
        .map(|d| 0.5 * d)
        .collect();

    let mut per_node = vec![0.0; n];
    let mut per_layer = vec![0.0; l];
    let mut total = 0.0;
    for (h, &t) in per_node_layer.iter().enumerate() {
        per_node[h % n] += t;
        per_layer[h / n] += t;
        total += t;
    }

    TriangleCensus {
        per_node_layer,
        per_node,
        per_layer,
        total,
        n_nodes: n,
        n_layers: l,
    }
}

/// Triangle count of a single node-layer pair, without building the whole
/// census: one matrix-vector product on the symmetrized binary structure.
pub fn triangle_count(net: &MultilayerNetwork, node: usize, layer: usize) -> Result<f64> {
    let h = net.flat_index(node, layer)?;
    let sym = linalg::symmetrize(linalg::binarized(net.supra()).view());
    Ok(0.5 * linalg::triple_product_entry(&sym, &sym, h))
}

/// Brute-force triangle count by explicit enumeration of closed triads.
///
/// Deliberately avoids the matrix-power code path so it can serve as an
/// independent check of [`triangle_count`] and [`triangle_census`]. Guarded
/// to supra orders of at most [`ORACLE_MAX_ORDER`].
pub fn triangle_oracle(net: &MultilayerNetwork, node: usize, layer: usize) -> Result<f64> {
    let order = net.order();
    if order > ORACLE_MAX_ORDER {
        return Err(Error::OversizeForOracle {
            order,
            limit: ORACLE_MAX_ORDER,
        });
    }
    let h = net.flat_index(node, layer)?;
    let arc = |x: usize, y: usize| u64::from(net.weight(x, y) > 0.0);
    let sym = |x: usize, y: usize| arc(x, y) + arc(y, x);

    let mut walks: u64 = 0;
    for k1 in 0..order {
        if k1 == h {
            continue;
        }
        let leg1 = sym(h, k1);
        if leg1 == 0 {
            continue;
        }
        for k2 in 0..order {
            if k2 == h || k2 == k1 {
                continue;
            }
            walks += leg1 * sym(k1, k2) * sym(k2, h);
        }
    }
    Ok(walks as f64 / 2.0)
}
