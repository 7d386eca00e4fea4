//! Trigonometric evaluation at rational multiples of π.
//!
//! Angles are passed as an integer fraction `num/den` of π and reduced modulo
//! 2π before the library call, so equal angles always produce identical bits.

use std::f64::consts::PI;

fn reduce(num: i128, den: i128) -> (i128, i128) {
    assert!(den != 0, "zero denominator in angle");
    let (num, den) = if den < 0 { (-num, -den) } else { (num, den) };
    (num.rem_euclid(2 * den), den)
}

/// `cos(num·π/den)`.
pub fn cos_pi(num: i128, den: i128) -> f64 {
    let (num, den) = reduce(num, den);
    (num as f64 * PI / den as f64).cos()
}

/// `sin(num·π/den)`.
pub fn sin_pi(num: i128, den: i128) -> f64 {
    let (num, den) = reduce(num, den);
    (num as f64 * PI / den as f64).sin()
}

/// `cos(x·π)` for a floating multiple, reduced modulo 2 first.
pub fn cos_pi_f(x: f64) -> f64 {
    (x.rem_euclid(2.0) * PI).cos()
}

/// `sin(x·π)` for a floating multiple, reduced modulo 2 first.
pub fn sin_pi_f(x: f64) -> f64 {
    (x.rem_euclid(2.0) * PI).sin()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_gives_identical_bits() {
        assert_eq!(cos_pi(1, 7).to_bits(), cos_pi(15, 7).to_bits());
        assert_eq!(sin_pi(-1, 3).to_bits(), sin_pi(5, 3).to_bits());
        assert_eq!(cos_pi(1, -4).to_bits(), cos_pi(-1, 4).to_bits());
    }

    #[test]
    fn known_values() {
        assert!((cos_pi(1, 3) - 0.5).abs() < 1e-15);
        assert!((sin_pi(1, 2) - 1.0).abs() < 1e-15);
        assert!((cos_pi_f(2.5)).abs() < 1e-15);
    }
}
