//! Seeded synthetic networks for stress tests and benchmarks.

use ndarray::Array2;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::network::MultilayerNetwork;

/// A random node-aligned multilayer network: every admissible supra cell
/// (anything off the main diagonal) carries an arc with probability
/// `arc_prob`, weighted uniformly in `(0, 1]`. Identical seeds give
/// identical networks.
pub fn random_network(
    n_nodes: usize,
    n_layers: usize,
    arc_prob: f64,
    seed: u64,
) -> MultilayerNetwork {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let order = n_nodes * n_layers;
    let mut supra = Array2::zeros((order, order));
    for h in 0..order {
        for k in 0..order {
            if h == k {
                continue;
            }
            if rng.random_bool(arc_prob) {
                supra[[h, k]] = 1.0 - rng.random::<f64>();
            }
        }
    }
    let nodes = (0..n_nodes).map(|i| format!("n{i:03}"));
    let layers = (0..n_layers).map(|a| format!("l{a:03}"));
    MultilayerNetwork::from_supra(nodes, layers, supra)
        .expect("generated supra matrix satisfies the model invariants")
}
