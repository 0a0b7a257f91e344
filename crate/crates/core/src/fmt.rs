//! Fixed-precision float output: 12 significant digits, so that repeated
//! runs print byte-identical text.

pub const SIGNIFICANT_DIGITS: usize = 12;

/// `x` rounded to 12 significant digits. Non-finite values pass through and
/// negative zero becomes zero.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    let y: f64 = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x).parse().expect("scientific notation parses");
    if y == 0.0 {
        0.0
    } else {
        y
    }
}

/// Shortest text that round-trips the 12-digit rounding of `x`.
pub fn format_real(x: f64) -> String {
    let y = round_sig(x);
    if y.is_nan() {
        "nan".into()
    } else if y.is_infinite() {
        if y > 0.0 { "inf" } else { "-inf" }.into()
    } else if y != 0.0 && !(1e-5..1e16).contains(&y.abs()) {
        format!("{y:e}")
    } else {
        format!("{y}")
    }
}
