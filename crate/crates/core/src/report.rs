//! Number formatting for tables.

/// `v` with 15 significant digits in scientific notation; non-finite values
/// print as `nan`, `inf` or `-inf`.
pub fn sig15(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else if v.is_infinite() {
        if v > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{v:.14e}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fifteen_digits() {
        assert_eq!(sig15(std::f64::consts::PI), "3.14159265358979e0");
        assert_eq!(sig15(-0.000_123_456_789_012_345_67), "-1.23456789012346e-4");
        assert_eq!(sig15(0.0), "0.00000000000000e0");
        assert_eq!(sig15(f64::NAN), "nan");
    }

    #[test]
    fn round_trips_to_fifteen_digits() {
        for v in [1.0 / 3.0, 12_345.678_901_234_5, 6.02e23] {
            let back: f64 = sig15(v).parse().unwrap();
            assert!((back - v).abs() <= 5e-15 * v.abs());
        }
    }
}
