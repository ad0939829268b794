//! Small formatting helpers shared by the CSV and JSON exports.

/// Formats with `sig` significant digits, trimming trailing zeros, switching
/// to scientific notation only for very large or very small magnitudes.
pub fn format_sig(x: f64, sig: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sig = sig.max(1);
    let formatted = format!("{:.*e}", sig - 1, x);
    let (mantissa, exponent) = formatted
        .split_once('e')
        .expect("exponential format always contains 'e'");
    let exp: i32 = exponent.parse().expect("valid exponent");
    let trim = |s: &str| -> String {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s.to_string()
        }
    };
    if exp < -4 || exp >= sig as i32 + 4 {
        return format!("{}e{}", trim(mantissa), exp);
    }
    // positional rendering
    let negative = mantissa.starts_with('-');
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    let point = exp + 1; // digits before the decimal point
    let body = if point <= 0 {
        format!("0.{}{}", "0".repeat(-point as usize), digits)
    } else if (point as usize) >= digits.len() {
        format!("{}{}", digits, "0".repeat(point as usize - digits.len()))
    } else {
        format!("{}.{}", &digits[..point as usize], &digits[point as usize..])
    };
    let body = trim(&body);
    if negative {
        format!("-{body}")
    } else {
        body
    }
}

/// Rounds to `sig` significant digits; used before serializing reports so the
/// emitted JSON carries exactly the documented precision.
pub fn round_sig(x: f64, sig: usize) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{:.*e}", sig.max(1) - 1, x)
        .parse()
        .unwrap_or(x)
}
