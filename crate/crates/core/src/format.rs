//! Fixed numeric formatting shared by the text outputs.

/// `x` with 12 significant digits in positional notation.
pub fn significant(x: f64) -> String {
    const DIGITS: i32 = 12;
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (DIGITS - 1 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

/// `x` with three decimals, as in evaluation tables.
pub fn three_decimals(x: f64) -> String {
    format!("{x:.3}")
}
