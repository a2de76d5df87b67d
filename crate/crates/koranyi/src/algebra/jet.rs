//! First-order jets: a function value together with its full complex
//! gradient, propagated by forward-mode differentiation.
//!
//! Jets are first-order only; nothing in the criteria needs Hessians.
//! Division by a zero value raises an explicit [`PoleSignal`] instead of
//! producing non-finite components, so callers can move to the Riemann
//! sphere (or to the reciprocal function) at poles.

use crate::{CVec, Complex, Real};

/// Raised when jet arithmetic divides by a zero value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("pole: division by zero value in jet arithmetic")]
pub struct PoleSignal;

/// Value of a holomorphic function together with (∂/∂z₁, …, ∂/∂zₙ).
#[derive(Debug, Clone, PartialEq)]
pub struct Jet<R> {
    pub value: Complex<R>,
    pub grad: CVec<R>,
}

impl<R: Real> Jet<R> {
    /// Jet of the constant `c` in `n` variables (zero gradient).
    pub fn constant(c: Complex<R>, n: usize) -> Self {
        Jet {
            value: c,
            grad: CVec::zeros(n),
        }
    }

    /// Jet of the coordinate function z_{index} at the value `v`.
    pub fn variable(v: Complex<R>, index: usize, n: usize) -> Self {
        Jet {
            value: v,
            grad: CVec::basis(n, index),
        }
    }

    pub fn dim(&self) -> usize {
        self.grad.dim()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Jet {
            value: self.value + rhs.value,
            grad: self.grad.add(&rhs.grad),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Jet {
            value: self.value - rhs.value,
            grad: self.grad.sub(&rhs.grad),
        }
    }

    pub fn neg(&self) -> Self {
        let m1 = Complex::new(-R::one(), R::zero());
        Jet {
            value: -self.value,
            grad: self.grad.scale(m1),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        // (fg)' = f'g + fg'
        Jet {
            value: self.value * rhs.value,
            grad: self.grad.scale(rhs.value).add(&rhs.grad.scale(self.value)),
        }
    }

    pub fn div(&self, rhs: &Self) -> Result<Self, PoleSignal> {
        if rhs.value.re == R::zero() && rhs.value.im == R::zero() {
            return Err(PoleSignal);
        }
        // (f/g)' = (f'g - fg') / g²
        let g2 = rhs.value * rhs.value;
        let num = self.grad.scale(rhs.value).sub(&rhs.grad.scale(self.value));
        Ok(Jet {
            value: self.value / rhs.value,
            grad: num.scale(Complex::new(R::one(), R::zero()) / g2),
        })
    }

    /// Integer power by repeated squaring; negative exponents go through
    /// the reciprocal and can signal a pole at zero.
    pub fn powi(&self, k: i32) -> Result<Self, PoleSignal> {
        if k == 0 {
            return Ok(Jet::constant(
                Complex::new(R::one(), R::zero()),
                self.dim(),
            ));
        }
        if k < 0 {
            let one = Jet::constant(Complex::new(R::one(), R::zero()), self.dim());
            return one.div(self)?.powi(-k);
        }
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.mul(self);
        }
        Ok(acc)
    }

    fn chain(&self, value: Complex<R>, dvalue: Complex<R>) -> Self {
        Jet {
            value,
            grad: self.grad.scale(dvalue),
        }
    }

    pub fn exp(&self) -> Self {
        let e = self.value.exp();
        self.chain(e, e)
    }

    pub fn sin(&self) -> Self {
        self.chain(self.value.sin(), self.value.cos())
    }

    pub fn cos(&self) -> Self {
        self.chain(self.value.cos(), -self.value.sin())
    }

    pub fn is_finite(&self) -> bool {
        self.value.re.is_finite() && self.value.im.is_finite() && self.grad.is_finite()
    }
}
