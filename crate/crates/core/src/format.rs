//! Locale-independent number formatting for emitted files.

use std::fmt::Write as _;

/// Formats `x` with 17 significant digits in scientific notation
/// (`-1.2345678901234567e-3`), which round-trips every `f64`.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

/// Joins formatted numbers with commas, no trailing separator.
pub fn row(values: &[f64]) -> String {
    let mut out = String::with_capacity(values.len() * 24);
    for (i, v) in values.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        let _ = write!(out, "{v:.16e}");
    }
    out
}
