//! The multilayer network data model: construction, indexing, weight
//! normalization and block access.
//!
//! A node-aligned multilayer network with `N` nodes and `L` layers is stored
//! as a single dense supra-adjacency matrix of order `N·L`: an `L × L` grid
//! of `N × N` blocks, where block `(α, β)` holds the directed weighted arcs
//! from nodes on layer `α` to nodes on layer `β`. A zero entry means "no
//! arc". Intra-layer self-loops — the main diagonal of the supra matrix —
//! are excluded from the model. Inter-layer arcs may couple a node to any
//! node of another layer, including its own counterpart.

use ndarray::{s, Array2, ArrayView2};

use crate::error::{Error, Result};

/// Rescaling applied to supra-adjacency weights before they enter a
/// clustering numerator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormalizationScheme {
    /// Keep raw weights.
    None,
    /// Divide every entry by the largest weight of the whole supra matrix.
    GlobalMax,
    /// Divide by the global maximum, then take the cube root of every entry.
    GlobalMaxCubeRoot,
}

/// Position of a node-layer pair inside the supra-adjacency matrix.
///
/// Supra row/column `h` addresses node `i` on layer `α` through the
/// layer-major layout `h = α·N + i` (all indices zero-based), i.e. layer
/// blocks are stacked in layer order and node order is preserved inside
/// each block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NodeLayerIndex {
    pub node: usize,
    pub layer: usize,
}

impl NodeLayerIndex {
    pub fn new(node: usize, layer: usize) -> Self {
        NodeLayerIndex { node, layer }
    }

    /// Flat supra index of this pair: `h = layer·N + node`.
    pub fn flat(self, n_nodes: usize) -> usize {
        self.layer * n_nodes + self.node
    }

    /// Inverse of [`NodeLayerIndex::flat`].
    pub fn from_flat(h: usize, n_nodes: usize) -> Self {
        NodeLayerIndex {
            node: h % n_nodes,
            layer: h / n_nodes,
        }
    }
}

/// A weighted directed node-aligned multilayer network.
///
/// Immutable after construction; all read accessors are safe to call
/// concurrently. Use [`MultilayerNetwork::builder`] or
/// [`MultilayerNetwork::from_supra`] to create one.
#[derive(Debug, Clone, PartialEq)]
pub struct MultilayerNetwork {
    node_labels: Vec<String>,
    layer_labels: Vec<String>,
    supra: Array2<f64>,
}

impl MultilayerNetwork {
    /// Wraps an existing supra matrix, validating every model invariant:
    /// label lists nonempty and duplicate-free, matrix square of order
    /// `N·L`, weights finite and nonnegative, main diagonal zero.
    pub fn from_supra<N, L>(nodes: N, layers: L, supra: Array2<f64>) -> Result<Self>
    where
        N: IntoIterator,
        N::Item: Into<String>,
        L: IntoIterator,
        L::Item: Into<String>,
    {
        let node_labels: Vec<String> = nodes.into_iter().map(Into::into).collect();
        let layer_labels: Vec<String> = layers.into_iter().map(Into::into).collect();
        validate_labels(&node_labels, "node")?;
        validate_labels(&layer_labels, "layer")?;

        let order = node_labels.len() * layer_labels.len();
        if supra.nrows() != order || supra.ncols() != order {
            return Err(Error::InvalidNetwork(format!(
                "supra matrix is {}x{}, expected order {} (= {} nodes x {} layers)",
                supra.nrows(),
                supra.ncols(),
                order,
                node_labels.len(),
                layer_labels.len()
            )));
        }
        for ((h, k), &w) in supra.indexed_iter() {
            if !w.is_finite() || w < 0.0 {
                return Err(Error::InvalidNetwork(format!(
                    "weight at ({h}, {k}) is {w}; weights must be finite and nonnegative"
                )));
            }
            if h == k && w != 0.0 {
                return Err(Error::InvalidNetwork(format!(
                    "intra-layer self-loop at supra index {h} (weight {w}); self-loops are excluded"
                )));
            }
        }

        Ok(MultilayerNetwork {
            node_labels,
            layer_labels,
            supra,
        })
    }

    /// Starts an incremental build over the given label sets.
    pub fn builder<N, L>(nodes: N, layers: L) -> Result<NetworkBuilder>
    where
        N: IntoIterator,
        N::Item: Into<String>,
        L: IntoIterator,
        L::Item: Into<String>,
    {
        NetworkBuilder::new(nodes, layers)
    }

    /// Builds a network from `(origin_node, origin_layer, dest_node,
    /// dest_layer, weight)` tuples, accumulating repeated arcs.
    pub fn from_arcs<N, L>(
        nodes: N,
        layers: L,
        arcs: &[(usize, usize, usize, usize, f64)],
    ) -> Result<Self>
    where
        N: IntoIterator,
        N::Item: Into<String>,
        L: IntoIterator,
        L::Item: Into<String>,
    {
        let mut b = NetworkBuilder::new(nodes, layers)?;
        for &(i, alpha, j, beta, w) in arcs {
            b.add_arc(
                NodeLayerIndex::new(i, alpha),
                NodeLayerIndex::new(j, beta),
                w,
            )?;
        }
        Ok(b.build())
    }

    pub fn n_nodes(&self) -> usize {
        self.node_labels.len()
    }

    pub fn n_layers(&self) -> usize {
        self.layer_labels.len()
    }

    /// Order of the supra matrix, `N·L`.
    pub fn order(&self) -> usize {
        self.supra.nrows()
    }

    pub fn node_labels(&self) -> &[String] {
        &self.node_labels
    }

    pub fn layer_labels(&self) -> &[String] {
        &self.layer_labels
    }

    /// The full supra-adjacency matrix.
    pub fn supra(&self) -> ArrayView2<'_, f64> {
        self.supra.view()
    }

    /// Weight of the arc from supra index `h` to supra index `k`.
    pub fn weight(&self, h: usize, k: usize) -> f64 {
        self.supra[[h, k]]
    }

    /// Checked flat index of `(node, layer)`.
    pub fn flat_index(&self, node: usize, layer: usize) -> Result<usize> {
        if node >= self.n_nodes() {
            return Err(Error::IndexOutOfRange {
                what: "node",
                index: node,
                len: self.n_nodes(),
            });
        }
        if layer >= self.n_layers() {
            return Err(Error::IndexOutOfRange {
                what: "layer",
                index: layer,
                len: self.n_layers(),
            });
        }
        Ok(NodeLayerIndex::new(node, layer).flat(self.n_nodes()))
    }

    /// Checked inverse of [`MultilayerNetwork::flat_index`].
    pub fn unflatten(&self, h: usize) -> Result<NodeLayerIndex> {
        if h >= self.order() {
            return Err(Error::IndexOutOfRange {
                what: "supra",
                index: h,
                len: self.order(),
            });
        }
        Ok(NodeLayerIndex::from_flat(h, self.n_nodes()))
    }

    /// The `(α, β)` block of the supra matrix: arcs from nodes on layer
    /// `alpha` to nodes on layer `beta`.
    pub fn block(&self, alpha: usize, beta: usize) -> Result<ArrayView2<'_, f64>> {
        let l = self.n_layers();
        for (what, idx) in [("layer", alpha), ("layer", beta)] {
            if idx >= l {
                return Err(Error::IndexOutOfRange {
                    what,
                    index: idx,
                    len: l,
                });
            }
        }
        let n = self.n_nodes();
        Ok(self
            .supra
            .slice(s![alpha * n..(alpha + 1) * n, beta * n..(beta + 1) * n]))
    }

    /// The unweighted version of the network: every positive weight becomes
    /// 1, zeros stay 0. Idempotent.
    pub fn binarize(&self) -> Self {
        MultilayerNetwork {
            node_labels: self.node_labels.clone(),
            layer_labels: self.layer_labels.clone(),
            supra: self.supra.mapv(|w| f64::from(w > 0.0)),
        }
    }

    /// Rescales all weights under the given scheme. The zero pattern is
    /// preserved exactly and the largest entry of the result is 1.
    ///
    /// Fails with a degenerate-input error when a max-based scheme is asked
    /// for on an all-zero network.
    pub fn normalize(&self, scheme: NormalizationScheme) -> Result<Self> {
        let supra = match scheme {
            NormalizationScheme::None => self.supra.clone(),
            NormalizationScheme::GlobalMax | NormalizationScheme::GlobalMaxCubeRoot => {
                let max = self.max_weight();
                if max <= 0.0 {
                    return Err(Error::DegenerateInput(
                        "cannot normalize an all-zero network".into(),
                    ));
                }
                match scheme {
                    NormalizationScheme::GlobalMax => self.supra.mapv(|w| w / max),
                    _ => self.supra.mapv(|w| (w / max).cbrt()),
                }
            }
        };
        Ok(MultilayerNetwork {
            node_labels: self.node_labels.clone(),
            layer_labels: self.layer_labels.clone(),
            supra,
        })
    }

    /// Largest weight over all supra entries.
    pub fn max_weight(&self) -> f64 {
        self.supra.iter().copied().fold(0.0, f64::max)
    }

    /// Number of arcs (nonzero supra entries).
    pub fn arc_count(&self) -> usize {
        self.supra.iter().filter(|&&w| w > 0.0).count()
    }

    /// Iterates all arcs as `(origin, dest, weight)` in row-major supra
    /// order.
    pub fn arcs(&self) -> impl Iterator<Item = (NodeLayerIndex, NodeLayerIndex, f64)> + '_ {
        let n = self.n_nodes();
        self.supra
            .indexed_iter()
            .filter(|(_, &w)| w > 0.0)
            .map(move |((h, k), &w)| {
                (
                    NodeLayerIndex::from_flat(h, n),
                    NodeLayerIndex::from_flat(k, n),
                    w,
                )
            })
    }

    /// Lifts the intra-layer block of `layer` into a standalone single-layer
    /// network, discarding every inter-layer arc.
    pub fn extract_layer(&self, layer: usize) -> Result<Self> {
        let block = self.block(layer, layer)?.to_owned();
        Ok(MultilayerNetwork {
            node_labels: self.node_labels.clone(),
            layer_labels: vec![self.layer_labels[layer].clone()],
            supra: block,
        })
    }
}

fn validate_labels(labels: &[String], what: &str) -> Result<()> {
    if labels.is_empty() {
        return Err(Error::InvalidNetwork(format!("no {what} labels")));
    }
    let mut seen = std::collections::BTreeSet::new();
    for label in labels {
        if !seen.insert(label.as_str()) {
            return Err(Error::InvalidNetwork(format!(
                "duplicate {what} label `{label}`"
            )));
        }
    }
    Ok(())
}

/// Accumulating single-threaded builder for [`MultilayerNetwork`].
///
/// Arcs landing on the intra-layer diagonal are zeroed out instead of
/// stored; [`NetworkBuilder::self_loops_zeroed`] reports how many were
/// dropped that way.
#[derive(Debug, Clone)]
pub struct NetworkBuilder {
    node_labels: Vec<String>,
    layer_labels: Vec<String>,
    supra: Array2<f64>,
    self_loops_zeroed: usize,
}

impl NetworkBuilder {
    fn new<N, L>(nodes: N, layers: L) -> Result<Self>
    where
        N: IntoIterator,
        N::Item: Into<String>,
        L: IntoIterator,
        L::Item: Into<String>,
    {
        let node_labels: Vec<String> = nodes.into_iter().map(Into::into).collect();
        let layer_labels: Vec<String> = layers.into_iter().map(Into::into).collect();
        validate_labels(&node_labels, "node")?;
        validate_labels(&layer_labels, "layer")?;
        let order = node_labels.len() * layer_labels.len();
        Ok(NetworkBuilder {
            node_labels,
            layer_labels,
            supra: Array2::zeros((order, order)),
            self_loops_zeroed: 0,
        })
    }

    /// Adds `weight` to the arc `origin → dest`. Weights accumulate when the
    /// same arc is added twice.
    pub fn add_arc(
        &mut self,
        origin: NodeLayerIndex,
        dest: NodeLayerIndex,
        weight: f64,
    ) -> Result<&mut Self> {
        if !weight.is_finite() || weight < 0.0 {
            return Err(Error::InvalidNetwork(format!(
                "arc weight {weight} must be finite and nonnegative"
            )));
        }
        let n = self.node_labels.len();
        let l = self.layer_labels.len();
        for (what, index, len) in [
            ("node", origin.node, n),
            ("layer", origin.layer, l),
            ("node", dest.node, n),
            ("layer", dest.layer, l),
        ] {
            if index >= len {
                return Err(Error::IndexOutOfRange { what, index, len });
            }
        }
        if origin == dest {
            self.self_loops_zeroed += 1;
            return Ok(self);
        }
        self.supra[[origin.flat(n), dest.flat(n)]] += weight;
        Ok(self)
    }

    /// How many intra-layer self-loop insertions were dropped so far.
    pub fn self_loops_zeroed(&self) -> usize {
        self.self_loops_zeroed
    }

    pub fn build(self) -> MultilayerNetwork {
        MultilayerNetwork {
            node_labels: self.node_labels,
            layer_labels: self.layer_labels,
            supra: self.supra,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    fn two_by_two() -> MultilayerNetwork {
        // 2 nodes, 2 layers, single arc (node 0, layer 0) -> (node 1, layer 1), w = 3.
        MultilayerNetwork::from_arcs(["a", "b"], ["x", "y"], &[(0, 0, 1, 1, 3.0)]).unwrap()
    }

    #[test]
    fn flat_index_layer_major() {
        // One-based published convention h1 = N(α1 − 1) + i1 shifted down by one.
        let net = MultilayerNetwork::from_arcs(
            ["a", "b", "c", "d"],
            ["x", "y"],
            &[(0, 0, 1, 0, 1.0)],
        )
        .unwrap();
        assert_eq!(net.flat_index(2, 0).unwrap(), 2);
        assert_eq!(net.flat_index(0, 1).unwrap(), 4);
        assert_eq!(net.flat_index(3, 1).unwrap(), 7);
        // Equivalence with the one-based formula for every pair.
        let n = 4;
        for alpha in 0..2 {
            for i in 0..n {
                let one_based = n * ((alpha + 1) - 1) + (i + 1);
                assert_eq!(net.flat_index(i, alpha).unwrap() + 1, one_based);
            }
        }
    }

    #[test]
    fn flat_unflatten_roundtrip() {
        for (n, l) in [(1, 1), (3, 2), (5, 7)] {
            for h in 0..n * l {
                let idx = NodeLayerIndex::from_flat(h, n);
                assert!(idx.node < n && idx.layer < l);
                assert_eq!(idx.flat(n), h);
            }
        }
    }

    #[test]
    fn out_of_range_indices_error() {
        let net = two_by_two();
        assert!(matches!(
            net.flat_index(2, 0),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            net.flat_index(0, 2),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(matches!(net.unflatten(4), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(net.block(0, 2), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn builder_zeroes_self_loops() {
        let mut b = MultilayerNetwork::builder(["a", "b"], ["x", "y"]).unwrap();
        b.add_arc(NodeLayerIndex::new(0, 0), NodeLayerIndex::new(0, 0), 5.0)
            .unwrap();
        b.add_arc(NodeLayerIndex::new(0, 0), NodeLayerIndex::new(0, 1), 2.0)
            .unwrap();
        assert_eq!(b.self_loops_zeroed(), 1);
        let net = b.build();
        // The inter-layer self-pair (same node, different layer) is kept.
        assert_eq!(net.weight(0, 2), 2.0);
        assert_eq!(net.weight(0, 0), 0.0);
    }

    #[test]
    fn from_supra_rejects_invalid() {
        let bad_diag = array![[1.0, 0.0], [0.0, 0.0]];
        assert!(MultilayerNetwork::from_supra(["a", "b"], ["x"], bad_diag).is_err());

        let negative = array![[0.0, -1.0], [0.0, 0.0]];
        assert!(MultilayerNetwork::from_supra(["a", "b"], ["x"], negative).is_err());

        let nan = array![[0.0, f64::NAN], [0.0, 0.0]];
        assert!(MultilayerNetwork::from_supra(["a", "b"], ["x"], nan).is_err());

        let wrong_shape = Array2::<f64>::zeros((3, 3));
        assert!(MultilayerNetwork::from_supra(["a", "b"], ["x"], wrong_shape).is_err());

        let dup = Array2::<f64>::zeros((2, 2));
        assert!(MultilayerNetwork::from_supra(["a", "a"], ["x"], dup).is_err());
    }

    #[test]
    fn binarize_maps_positive_to_one() {
        let net =
            MultilayerNetwork::from_arcs(["a", "b"], ["x"], &[(0, 0, 1, 0, 17.5)]).unwrap();
        let bin = net.binarize();
        assert_eq!(bin.weight(0, 1), 1.0);
        assert_eq!(bin.weight(1, 0), 0.0);
        assert_eq!(bin.binarize(), bin);
    }

    #[test]
    fn normalize_global_max() {
        let net = MultilayerNetwork::from_arcs(
            ["a", "b", "c"],
            ["x"],
            &[(0, 0, 1, 0, 2.0), (1, 0, 2, 0, 8.0)],
        )
        .unwrap();
        let norm = net.normalize(NormalizationScheme::GlobalMax).unwrap();
        assert_eq!(norm.weight(0, 1), 0.25);
        assert_eq!(norm.weight(1, 2), 1.0);
        assert_eq!(norm.weight(1, 0), 0.0);
    }

    #[test]
    fn normalize_cube_root() {
        let net = MultilayerNetwork::from_arcs(
            ["a", "b", "c"],
            ["x"],
            &[(0, 0, 1, 0, 1.0), (1, 0, 2, 0, 8.0)],
        )
        .unwrap();
        let norm = net
            .normalize(NormalizationScheme::GlobalMaxCubeRoot)
            .unwrap();
        assert_eq!(norm.weight(0, 1), 0.5);
        assert_eq!(norm.weight(1, 2), 1.0);
    }

    #[test]
    fn normalize_constant_weights_saturates() {
        let net = MultilayerNetwork::from_arcs(
            ["a", "b"],
            ["x"],
            &[(0, 0, 1, 0, 4.0), (1, 0, 0, 0, 4.0)],
        )
        .unwrap();
        for scheme in [
            NormalizationScheme::GlobalMax,
            NormalizationScheme::GlobalMaxCubeRoot,
        ] {
            let norm = net.normalize(scheme).unwrap();
            assert_eq!(norm.weight(0, 1), 1.0);
            assert_eq!(norm.weight(1, 0), 1.0);
        }
    }

    #[test]
    fn normalize_zero_network_errors() {
        let net = MultilayerNetwork::from_supra(["a", "b"], ["x"], Array2::zeros((2, 2))).unwrap();
        assert!(matches!(
            net.normalize(NormalizationScheme::GlobalMax),
            Err(Error::DegenerateInput(_))
        ));
        assert!(net.normalize(NormalizationScheme::None).is_ok());
    }

    #[test]
    fn block_placement_and_direction() {
        let net = two_by_two();
        let b01 = net.block(0, 1).unwrap();
        assert_eq!(b01[[0, 1]], 3.0);
        assert_eq!(b01.sum(), 3.0);
        let b10 = net.block(1, 0).unwrap();
        assert_eq!(b10.sum(), 0.0);
        // Block access agrees with flat indexing everywhere.
        for alpha in 0..2 {
            for beta in 0..2 {
                let block = net.block(alpha, beta).unwrap();
                for i in 0..2 {
                    for j in 0..2 {
                        let h = net.flat_index(i, alpha).unwrap();
                        let k = net.flat_index(j, beta).unwrap();
                        assert_eq!(block[[i, j]], net.weight(h, k));
                    }
                }
            }
        }
    }

    #[test]
    fn extract_layer_reads_only_intra_block() {
        let net = MultilayerNetwork::from_arcs(
            ["a", "b"],
            ["x", "y"],
            &[(0, 0, 1, 0, 2.0), (0, 0, 1, 1, 9.0)],
        )
        .unwrap();
        let sub = net.extract_layer(0).unwrap();
        assert_eq!(sub.n_layers(), 1);
        assert_eq!(sub.weight(0, 1), 2.0);
        assert_eq!(sub.arc_count(), 1);
    }
}
