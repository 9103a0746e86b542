//! Local clustering coefficients for the weighted directed multilayer model,
//! in three families, with node, layer and network-wide aggregations and a
//! per-layer monoplex baseline.
//!
//! Every family is a ratio "weight of closed triads through the focal pair"
//! over "weight of all triads the pair could close". The families differ in
//! how a triad is weighted:
//!
//! * `Arith` — the closed triads are weighted by the raw arcs touching the
//!   focal pair (numerator `(W+Wᵀ)(A+Aᵀ)²`); the denominator discounts
//!   reciprocated pairs by their bilateral strength.
//! * `Geom` — arcs are globally rescaled and cube-rooted, so a closed triad
//!   carries the geometric mean of its three weights (numerator
//!   `(Ŵ+Ŵᵀ)³`); the denominator is purely structural (degrees).
//! * `Prod` — arcs are globally rescaled and a triad carries the plain
//!   product of its symmetrized weights (numerator `(W̃+W̃ᵀ)³`); the
//!   denominator compares the squared total strength against the within-pair
//!   concentration. Unlike the other two families this ratio may exceed 1
//!   on strongly reciprocated neighborhoods.
//!
//! A vanishing (or, after rounding, nonpositive) denominator marks the value
//! as degenerate: it is reported as 0 with a flag instead of NaN so that
//! rankings over all pairs stay total.
//!
//! Aggregations never average the local ratios; they sum numerators and
//! denominators separately and divide once, which makes each aggregate the
//! denominator-weighted mean of its unflagged locals.

use ndarray::Array2;
use rayon::prelude::*;

use crate::degrees::{degree_at, strength_at, DegreeVariant, StrengthVariant};
use crate::error::{Error, Result};
use crate::linalg;
use crate::network::{MultilayerNetwork, NormalizationScheme};

/// The three ways of weighting a triad.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoefficientFamily {
    /// Arithmetic-mean weighting over raw weights.
    Arith,
    /// Geometric-mean weighting over cube-rooted normalized weights.
    Geom,
    /// Product weighting over normalized weights.
    Prod,
}

impl CoefficientFamily {
    pub const ALL: [CoefficientFamily; 3] = [
        CoefficientFamily::Arith,
        CoefficientFamily::Geom,
        CoefficientFamily::Prod,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CoefficientFamily::Arith => "arith",
            CoefficientFamily::Geom => "geom",
            CoefficientFamily::Prod => "prod",
        }
    }
}

/// A coefficient together with its degeneracy flag. Flagged values are
/// always 0 and mean "the denominator vanished", not "no clustering".
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoefficientValue {
    pub value: f64,
    pub flagged: bool,
}

fn from_pair(numer: f64, denom: f64) -> CoefficientValue {
    if denom <= 0.0 {
        CoefficientValue {
            value: 0.0,
            flagged: true,
        }
    } else {
        CoefficientValue {
            value: numer / denom,
            flagged: false,
        }
    }
}

enum NumeratorKind {
    /// diag(m · s · s) with a weighted left factor and a binary structural
    /// factor (the `Arith` family).
    Weighted { m: Array2<f64>, s: Array2<f64> },
    /// diag(m³) of one symmetrized matrix (the `Geom` and `Prod` families).
    Power { m: Array2<f64> },
}

/// Shared per-family state: the symmetrized matrices entering the numerator
/// and whatever the denominator needs beyond the raw network.
struct LocalEngine<'n> {
    net: &'n MultilayerNetwork,
    family: CoefficientFamily,
    kind: NumeratorKind,
    /// Globally normalized weights, kept for the `Prod` denominator.
    norm_supra: Option<Array2<f64>>,
}

impl<'n> LocalEngine<'n> {
    fn new(net: &'n MultilayerNetwork, family: CoefficientFamily) -> Self {
        let order = net.order();
        // An all-zero network cannot be normalized; every coefficient on it
        // is degenerate anyway, so fall back to a zero matrix instead of
        // propagating the error.
        let normalized = |scheme: NormalizationScheme| -> Array2<f64> {
            net.normalize(scheme)
                .map(|n| n.supra().to_owned())
                .unwrap_or_else(|_| Array2::zeros((order, order)))
        };
        let (kind, norm_supra) = match family {
            CoefficientFamily::Arith => (
                NumeratorKind::Weighted {
                    m: linalg::symmetrize(net.supra()),
                    s: linalg::symmetrize(linalg::binarized(net.supra()).view()),
                },
                None,
            ),
            CoefficientFamily::Geom => {
                let w = normalized(NormalizationScheme::GlobalMaxCubeRoot);
                (
                    NumeratorKind::Power {
                        m: linalg::symmetrize(w.view()),
                    },
                    None,
                )
            }
            CoefficientFamily::Prod => {
                let w = normalized(NormalizationScheme::GlobalMax);
                let m = linalg::symmetrize(w.view());
                (NumeratorKind::Power { m }, Some(w))
            }
        };
        LocalEngine {
            net,
            family,
            kind,
            norm_supra,
        }
    }

    fn numerator(&self, h: usize) -> f64 {
        match &self.kind {
            NumeratorKind::Weighted { m, s } => linalg::triple_product_entry(m, s, h),
            NumeratorKind::Power { m } => linalg::triple_product_entry(m, m, h),
        }
    }

    /// All numerators at once through the cached-square route.
    fn numerators(&self) -> Vec<f64> {
        match &self.kind {
            NumeratorKind::Weighted { m, s } => linalg::triple_product_diagonal(m, s),
            NumeratorKind::Power { m } => linalg::triple_product_diagonal(m, m),
        }
    }

    fn denominator(&self, h: usize) -> f64 {
        let w = self.net.supra();
        match self.family {
            CoefficientFamily::Arith => {
                let s = strength_at(w, h, StrengthVariant::Total);
                let d = degree_at(w, h, DegreeVariant::Total) as f64;
                let s_bil = strength_at(w, h, StrengthVariant::Bilateral);
                2.0 * (s * (d - 1.0) - 2.0 * s_bil)
            }
            CoefficientFamily::Geom => {
                let d = degree_at(w, h, DegreeVariant::Total) as i64;
                let d_bil = degree_at(w, h, DegreeVariant::Bilateral) as i64;
                (2 * (d * (d - 1) - 2 * d_bil)) as f64
            }
            CoefficientFamily::Prod => {
                // Strength taken on the normalized weights so numerator and
                // denominator share one scale.
                let wn = self
                    .norm_supra
                    .as_ref()
                    .expect("prod engine keeps the normalized weights")
                    .view();
                let s = strength_at(wn, h, StrengthVariant::Total);
                let mut concentration = 0.0;
                for k in 0..wn.nrows() {
                    if k == h {
                        continue;
                    }
                    let c = wn[[h, k]] + wn[[k, h]];
                    concentration += c * c;
                }
                s * s - concentration
            }
        }
    }

    fn pair(&self, h: usize) -> (f64, f64) {
        (self.numerator(h), self.denominator(h))
    }
}

/// Local coefficient of node `node` on layer `layer` for one family.
pub fn local_coefficient(
    net: &MultilayerNetwork,
    node: usize,
    layer: usize,
    family: CoefficientFamily,
) -> Result<CoefficientValue> {
    let h = net.flat_index(node, layer)?;
    let engine = LocalEngine::new(net, family);
    let (n, d) = engine.pair(h);
    Ok(from_pair(n, d))
}

/// Coefficient of one node pooled over all its layers: layer numerators and
/// denominators are summed separately before dividing.
pub fn node_coefficient(
    net: &MultilayerNetwork,
    node: usize,
    family: CoefficientFamily,
) -> Result<CoefficientValue> {
    if node >= net.n_nodes() {
        return Err(Error::IndexOutOfRange {
            what: "node",
            index: node,
            len: net.n_nodes(),
        });
    }
    let engine = LocalEngine::new(net, family);
    let (mut ns, mut ds) = (0.0, 0.0);
    for layer in 0..net.n_layers() {
        let (n, d) = engine.pair(net.flat_index(node, layer)?);
        ns += n;
        ds += d;
    }
    Ok(from_pair(ns, ds))
}

/// Coefficient of one layer pooled over all its nodes.
pub fn layer_coefficient(
    net: &MultilayerNetwork,
    layer: usize,
    family: CoefficientFamily,
) -> Result<CoefficientValue> {
    if layer >= net.n_layers() {
        return Err(Error::IndexOutOfRange {
            what: "layer",
            index: layer,
            len: net.n_layers(),
        });
    }
    let engine = LocalEngine::new(net, family);
    let (mut ns, mut ds) = (0.0, 0.0);
    for node in 0..net.n_nodes() {
        let (n, d) = engine.pair(net.flat_index(node, layer)?);
        ns += n;
        ds += d;
    }
    Ok(from_pair(ns, ds))
}

/// Network-wide transitivity: all numerators over all denominators.
pub fn global_coefficient(net: &MultilayerNetwork, family: CoefficientFamily) -> CoefficientValue {
    let engine = LocalEngine::new(net, family);
    let (mut ns, mut ds) = (0.0, 0.0);
    for h in 0..net.order() {
        let (n, d) = engine.pair(h);
        ns += n;
        ds += d;
    }
    from_pair(ns, ds)
}

/// All levels of one family computed off a single cached matrix square.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilyReport {
    pub n_nodes: usize,
    pub n_layers: usize,
    /// Local values indexed by flat supra index (`layer·N + node`).
    pub locals: Vec<CoefficientValue>,
    pub per_node: Vec<CoefficientValue>,
    pub per_layer: Vec<CoefficientValue>,
    pub global: CoefficientValue,
}

impl FamilyReport {
    pub fn local(&self, node: usize, layer: usize) -> CoefficientValue {
        self.locals[layer * self.n_nodes + node]
    }
}

/// Computes every aggregation level of one family.
pub fn family_report(net: &MultilayerNetwork, family: CoefficientFamily) -> FamilyReport {
    let n = net.n_nodes();
    let l = net.n_layers();
    let engine = LocalEngine::new(net, family);
    let numer = engine.numerators();
    let denom: Vec<f64> = (0..net.order())
        .into_par_iter()
        .map(|h| engine.denominator(h))
        .collect();

    let locals: Vec<CoefficientValue> = numer
        .iter()
        .zip(&denom)
        .map(|(&nu, &de)| from_pair(nu, de))
        .collect();

    let mut node_sums = vec![(0.0, 0.0); n];
    let mut layer_sums = vec![(0.0, 0.0); l];
    let (mut ns, mut ds) = (0.0, 0.0);
    for h in 0..net.order() {
        let (nu, de) = (numer[h], denom[h]);
        node_sums[h % n].0 += nu;
        node_sums[h % n].1 += de;
        layer_sums[h / n].0 += nu;
        layer_sums[h / n].1 += de;
        ns += nu;
        ds += de;
    }

    FamilyReport {
        n_nodes: n,
        n_layers: l,
        locals,
        per_node: node_sums.iter().map(|&(nu, de)| from_pair(nu, de)).collect(),
        per_layer: layer_sums.iter().map(|&(nu, de)| from_pair(nu, de)).collect(),
        global: from_pair(ns, ds),
    }
}

/// The three family reports side by side.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusteringReport {
    pub arith: FamilyReport,
    pub geom: FamilyReport,
    pub prod: FamilyReport,
}

impl ClusteringReport {
    pub fn compute(net: &MultilayerNetwork) -> Self {
        ClusteringReport {
            arith: family_report(net, CoefficientFamily::Arith),
            geom: family_report(net, CoefficientFamily::Geom),
            prod: family_report(net, CoefficientFamily::Prod),
        }
    }

    pub fn family(&self, family: CoefficientFamily) -> &FamilyReport {
        match family {
            CoefficientFamily::Arith => &self.arith,
            CoefficientFamily::Geom => &self.geom,
            CoefficientFamily::Prod => &self.prod,
        }
    }
}

/// Per-node local coefficients of one layer taken in isolation: the
/// intra-layer block becomes a standalone single-layer network and the
/// family is evaluated on it, so inter-layer arcs never contribute.
///
/// Defined for `Arith` and `Geom` only.
pub fn monoplex_baseline(
    net: &MultilayerNetwork,
    layer: usize,
    family: CoefficientFamily,
) -> Result<Vec<CoefficientValue>> {
    if family == CoefficientFamily::Prod {
        return Err(Error::UnsupportedFamily(
            "prod has no monoplex baseline; use arith or geom",
        ));
    }
    let sub = net.extract_layer(layer)?;
    Ok(family_report(&sub, family).locals)
}

/// Cross-layer average of the monoplex baseline, one value per node.
/// Flagged layer values enter the mean as 0, keeping the table total.
pub fn monoplex_average(net: &MultilayerNetwork, family: CoefficientFamily) -> Result<Vec<f64>> {
    let n = net.n_nodes();
    let l = net.n_layers();
    let mut acc = vec![0.0; n];
    for layer in 0..l {
        let base = monoplex_baseline(net, layer, family)?;
        for (node, value) in base.iter().enumerate() {
            acc[node] += value.value;
        }
    }
    for v in &mut acc {
        *v /= l as f64;
    }
    Ok(acc)
}
