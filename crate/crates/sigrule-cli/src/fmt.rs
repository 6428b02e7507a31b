//! Nine-significant-digit numeric formatting shared by the record-emitting
//! commands.
//!
//! Values destined for rule records are snapped onto the nine-digit grid
//! once, at construction, with [`q9`]. After that, printing with [`sig9`]
//! and re-parsing is lossless, and the TSV and JSON forms of a run carry
//! identical numbers.

/// Renders with exactly nine significant digits (mantissa-exponent form,
/// half-to-even rounding, as the standard formatter does).
pub fn sig9(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.8e}")
    } else {
        x.to_string()
    }
}

/// Snaps a value to the nearest nine-significant-digit decimal.
///
/// The result is a fixed point: `q9(q9(x)) == q9(x)`, and
/// `sig9(q9(x)).parse()` returns `q9(x)` exactly. A nine-digit decimal is
/// separated from its neighbors by far more than one floating-point ulp,
/// so the nearest double re-rounds to the same decimal.
pub fn q9(x: f64) -> f64 {
    if x.is_finite() {
        sig9(x).parse().expect("sig9 emits valid float syntax")
    } else {
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn sig9_has_nine_significant_digits() {
        let s = sig9(std::f64::consts::PI);
        let digits: String = s.chars().take_while(|c| *c != 'e').filter(|c| c.is_ascii_digit()).collect();
        assert_eq!(digits.len(), 9, "got {s}");
        assert_eq!(s, "3.14159265e0");
    }

    #[test]
    fn q9_is_idempotent_and_roundtrips() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20_000 {
            let exp = rng.random_range(-12.0..12.0);
            let x: f64 = rng.random_range(-1.0..1.0) * 10f64.powf(exp);
            let q = q9(x);
            assert_eq!(q9(q).to_bits(), q.to_bits(), "not a fixed point: {x}");
            let back: f64 = sig9(q).parse().unwrap();
            assert_eq!(back.to_bits(), q.to_bits(), "print/parse drift: {x}");
            // Quantization error stays under half an ulp of the 9th digit.
            if x != 0.0 {
                assert!(((q - x) / x).abs() <= 5.1e-9, "x={x} q={q}");
            }
        }
    }

    #[test]
    fn zero_and_signs_survive() {
        assert_eq!(sig9(0.0), "0.00000000e0");
        assert_eq!(q9(0.0), 0.0);
        assert_eq!(sig9(-2.5e-7), "-2.50000000e-7");
        assert_eq!(q9(-2.5e-7), -2.5e-7);
    }
}
