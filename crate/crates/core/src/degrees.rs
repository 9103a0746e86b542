//! Degree and strength statistics of node-layer pairs and of nodes across
//! layers, in the in/out/total/bilateral variants.
//!
//! Degrees count arcs on the binary supra structure; strengths are the
//! weighted analogues. The bilateral degree counts partners joined to the
//! focal pair by arcs in both directions; the bilateral strength gives each
//! reciprocated pair the arithmetic mean of its two weights. Sums run in
//! fixed supra-index order so results are reproducible bit for bit.

use ndarray::ArrayView2;

use crate::error::Result;
use crate::network::MultilayerNetwork;

/// Which incident arcs a degree query counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegreeVariant {
    In,
    Out,
    /// In plus out.
    Total,
    /// Reciprocated partners, counted once per partner.
    Bilateral,
}

/// Which incident arc weights a strength query accumulates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StrengthVariant {
    In,
    Out,
    /// In plus out.
    Total,
    /// Mean of the two weights of each reciprocated pair.
    Bilateral,
}

/// Degree of node `node` on layer `layer`, counting arcs from and to every
/// layer of the network.
pub fn node_layer_degree(
    net: &MultilayerNetwork,
    node: usize,
    layer: usize,
    variant: DegreeVariant,
) -> Result<u64> {
    let h = net.flat_index(node, layer)?;
    Ok(degree_at(net.supra(), h, variant))
}

/// Degree of node `node` summed over all layers it lies on.
pub fn node_degree(net: &MultilayerNetwork, node: usize, variant: DegreeVariant) -> Result<u64> {
    let mut total = 0;
    for layer in 0..net.n_layers() {
        total += node_layer_degree(net, node, layer, variant)?;
    }
    Ok(total)
}

/// Strength of node `node` on layer `layer`.
pub fn node_layer_strength(
    net: &MultilayerNetwork,
    node: usize,
    layer: usize,
    variant: StrengthVariant,
) -> Result<f64> {
    let h = net.flat_index(node, layer)?;
    Ok(strength_at(net.supra(), h, variant))
}

/// Strength of node `node` summed over all layers it lies on.
pub fn node_strength(
    net: &MultilayerNetwork,
    node: usize,
    variant: StrengthVariant,
) -> Result<f64> {
    let mut total = 0.0;
    for layer in 0..net.n_layers() {
        total += node_layer_strength(net, node, layer, variant)?;
    }
    Ok(total)
}

/// Degree at supra index `h` of an arbitrary weight view (arcs are the
/// strictly positive entries).
pub(crate) fn degree_at(w: ArrayView2<'_, f64>, h: usize, variant: DegreeVariant) -> u64 {
    match variant {
        DegreeVariant::In => w.column(h).iter().filter(|&&x| x > 0.0).count() as u64,
        DegreeVariant::Out => w.row(h).iter().filter(|&&x| x > 0.0).count() as u64,
        DegreeVariant::Total => {
            degree_at(w, h, DegreeVariant::In) + degree_at(w, h, DegreeVariant::Out)
        }
        DegreeVariant::Bilateral => (0..w.nrows())
            .filter(|&k| w[[h, k]] > 0.0 && w[[k, h]] > 0.0)
            .count() as u64,
    }
}

/// Strength at supra index `h` of an arbitrary weight view.
pub(crate) fn strength_at(w: ArrayView2<'_, f64>, h: usize, variant: StrengthVariant) -> f64 {
    match variant {
        StrengthVariant::In => w.column(h).iter().sum(),
        StrengthVariant::Out => w.row(h).iter().sum(),
        StrengthVariant::Total => {
            strength_at(w, h, StrengthVariant::In) + strength_at(w, h, StrengthVariant::Out)
        }
        StrengthVariant::Bilateral => {
            // Half the h-th diagonal entry of WA + AW: each reciprocated
            // pair contributes the mean of its two weights.
            let mut acc = 0.0;
            for k in 0..w.nrows() {
                let whk = w[[h, k]];
                let wkh = w[[k, h]];
                if whk > 0.0 && wkh > 0.0 {
                    acc += 0.5 * (whk + wkh);
                }
            }
            acc
        }
    }
}
