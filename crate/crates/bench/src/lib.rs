//! Shared fixtures for the criterion benches.

use supraclust_core::synth::random_network;
use supraclust_core::MultilayerNetwork;

/// Benchmark sizes as (nodes, layers), increasing supra order.
pub const SIZES: [(usize, usize); 3] = [(20, 5), (40, 6), (44, 12)];

/// One fixed-seed network per size so runs stay comparable.
pub fn network(n_nodes: usize, n_layers: usize) -> MultilayerNetwork {
    random_network(n_nodes, n_layers, 0.2, 0xBEEF)
}
