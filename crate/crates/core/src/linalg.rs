//! Dense helpers shared by the triangle and clustering kernels.
//!
//! All quantities of interest are diagonal entries of triple products
//! `M·S·S` with `S` symmetric, so the expensive step is a single `S·S`
//! multiplication; each diagonal entry then costs one row dot product.

use ndarray::{Array2, ArrayView2};
use rayon::prelude::*;

/// `m + mᵀ`.
pub(crate) fn symmetrize(m: ArrayView2<'_, f64>) -> Array2<f64> {
    &m + &m.t()
}

/// Binary (0/1) copy of a weight view.
pub(crate) fn binarized(w: ArrayView2<'_, f64>) -> Array2<f64> {
    w.mapv(|x| f64::from(x > 0.0))
}

/// Diagonal of `m · s · s` for symmetric `s`, one value per supra index.
///
/// `s²` is formed once; entry `h` is then the dot product of row `h` of `m`
/// with row `h` of `s²` (valid because `s²` is symmetric).
pub(crate) fn triple_product_diagonal(m: &Array2<f64>, s: &Array2<f64>) -> Vec<f64> {
    let p = s.dot(s);
    (0..m.nrows())
        .into_par_iter()
        .map(|h| m.row(h).dot(&p.row(h)))
        .collect()
}

/// Single diagonal entry of `m · s · s` for symmetric `s`, via one
/// matrix-vector product instead of a full multiplication.
pub(crate) fn triple_product_entry(m: &Array2<f64>, s: &Array2<f64>, h: usize) -> f64 {
    let u = s.dot(&s.column(h));
    m.row(h).dot(&u)
}
