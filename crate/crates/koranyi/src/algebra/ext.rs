//! The extended complex plane ℂ ∪ {∞} with the chordal metric.

use crate::{Complex, Real};
use serde::{Deserialize, Serialize};

/// A value on the Riemann sphere: either finite or the point at infinity.
///
/// Limits are compared chordally throughout the crate so that `L = ∞` needs
/// no special-casing anywhere downstream.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum ExtComplex<R> {
    Finite(Complex<R>),
    Infinity,
}

impl<R: Real> ExtComplex<R> {
    pub fn finite(re: R, im: R) -> Self {
        ExtComplex::Finite(Complex::new(re, im))
    }

    pub fn zero() -> Self {
        ExtComplex::Finite(Complex::new(R::zero(), R::zero()))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtComplex::Infinity)
    }

    pub fn as_finite(&self) -> Option<Complex<R>> {
        match self {
            ExtComplex::Finite(z) => Some(*z),
            ExtComplex::Infinity => None,
        }
    }

    /// Inversion z ↦ 1/z on the sphere (0 ↦ ∞, ∞ ↦ 0). Scaled so that
    /// moduli near the overflow threshold invert cleanly.
    pub fn recip(&self) -> Self {
        match self {
            ExtComplex::Infinity => Self::zero(),
            ExtComplex::Finite(z) => {
                if z.re == R::zero() && z.im == R::zero() {
                    ExtComplex::Infinity
                } else {
                    let m = z.re.abs().max(z.im.abs());
                    let a = z.re / m;
                    let b = z.im / m;
                    let den = m * (a * a + b * b);
                    ExtComplex::Finite(Complex::new(a / den, -b / den))
                }
            }
        }
    }
}

impl<R: Real> From<Complex<R>> for ExtComplex<R> {
    fn from(z: Complex<R>) -> Self {
        ExtComplex::Finite(z)
    }
}

impl<R: Real> std::fmt::Display for ExtComplex<R> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ExtComplex::Finite(z) => write!(f, "{}", z),
            ExtComplex::Infinity => write!(f, "inf"),
        }
    }
}

/// Chordal distance on the Riemann sphere, normalized to maximum 1:
/// `|a − b| / √((1+|a|²)(1+|b|²))`, with the one-point-compactification
/// extension `d(z, ∞) = 1/√(1+|z|²)` and `d(∞, ∞) = 0`.
pub fn chordal_distance<R: Real>(a: ExtComplex<R>, b: ExtComplex<R>) -> R {
    // Huge finite moduli are pushed through the exact sphere identity
    // d(a, b) = d(1/a, 1/b) to dodge overflow in |a|².
    let big = R::of(1e100);
    let too_big = |z: &ExtComplex<R>| match z {
        ExtComplex::Finite(w) => w.re.abs() > big || w.im.abs() > big,
        ExtComplex::Infinity => false,
    };
    if too_big(&a) || too_big(&b) {
        return chordal_distance(a.recip(), b.recip());
    }
    match (a, b) {
        (ExtComplex::Infinity, ExtComplex::Infinity) => R::zero(),
        (ExtComplex::Finite(z), ExtComplex::Infinity)
        | (ExtComplex::Infinity, ExtComplex::Finite(z)) => {
            R::one() / (R::one() + z.norm_sqr()).sqrt()
        }
        (ExtComplex::Finite(z), ExtComplex::Finite(w)) => {
            let num = (z - w).norm();
            let sa = (R::one() + z.norm_sqr()).sqrt();
            let sb = (R::one() + w.norm_sqr()).sqrt();
            num / sa / sb
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    type E = ExtComplex<f64>;

    #[test]
    fn antipodal_points() {
        assert_eq!(chordal_distance(E::zero(), E::Infinity), 1.0);
    }

    #[test]
    fn identity_is_zero() {
        let c = E::finite(0.3, -0.7);
        assert_eq!(chordal_distance(c, c), 0.0);
        assert_eq!(chordal_distance(E::Infinity, E::Infinity), 0.0);
    }

    #[test]
    fn plus_minus_one() {
        // 2 / sqrt(2 * 2) = 1
        let d = chordal_distance(E::finite(1.0, 0.0), E::finite(-1.0, 0.0));
        assert!((d - 1.0).abs() < 1e-15);
    }

    #[test]
    fn huge_values_do_not_overflow() {
        let d = chordal_distance(E::finite(1e200, 0.0), E::Infinity);
        assert!(d > 0.0 && d < 1e-150);
        let s = chordal_distance(E::finite(1e200, 0.0), E::finite(-1e200, 0.0));
        assert!(s.is_finite() && s <= 1.0);
    }

    #[test]
    fn recip_on_sphere() {
        assert_eq!(E::zero().recip(), E::Infinity);
        assert_eq!(E::Infinity.recip(), E::zero());
        assert_eq!(E::finite(2.0, 0.0).recip(), E::finite(0.5, 0.0));
    }
}
