//! Full-precision numeric formatting for emitted tables.

/// Formats a value with 17 significant digits in scientific notation, which
/// is enough for the printed text to parse back to the identical `f64`.
pub fn full_precision(v: f64) -> String {
    format!("{v:.16e}")
}
