//! Small numeric formatting helpers shared by the table/CSV renderers.

/// Formats `v` in positional notation with the given number of significant
/// digits (the CLI uses 15, which is lossless enough to eyeball against the
/// exact column).
pub fn significant(v: f64, digits: usize) -> String {
    if !v.is_finite() {
        return v.to_string();
    }
    if v == 0.0 {
        return format!("{:.*}", digits - 1, 0.0);
    }
    let exponent = v.abs().log10().floor() as i64;
    let decimals = (digits as i64 - 1 - exponent).clamp(0, 30) as usize;
    format!("{v:.decimals$}")
}
