//! Vectors in ℂⁿ with the canonical Hermitian product.

use crate::{Complex, Real};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("dimension mismatch: {left} vs {right}")]
pub struct DimensionError {
    pub left: usize,
    pub right: usize,
}

/// A point or vector of ℂⁿ, n ≥ 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CVec<R>(Vec<Complex<R>>);

impl<R: Real> CVec<R> {
    pub fn new(entries: Vec<Complex<R>>) -> Self {
        assert!(!entries.is_empty(), "CVec must have length >= 1");
        CVec(entries)
    }

    /// All-zero vector of dimension `n`.
    pub fn zeros(n: usize) -> Self {
        Self::new(vec![Complex::new(R::zero(), R::zero()); n])
    }

    /// Standard basis vector `e_k` of dimension `n`.
    pub fn basis(n: usize, k: usize) -> Self {
        let mut v = Self::zeros(n);
        v.0[k] = Complex::new(R::one(), R::zero());
        v
    }

    /// Build from real parts only (imaginary parts zero).
    pub fn from_reals(xs: &[R]) -> Self {
        Self::new(xs.iter().map(|&x| Complex::new(x, R::zero())).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[Complex<R>] {
        &self.0
    }

    pub fn entries_mut(&mut self) -> &mut [Complex<R>] {
        &mut self.0
    }

    pub fn into_entries(self) -> Vec<Complex<R>> {
        self.0
    }

    /// Canonical Hermitian product Σ uⱼ · conj(vⱼ).
    ///
    /// Conjugate-symmetric: `inner(u, v) = conj(inner(v, u))`.
    pub fn hermitian_inner(&self, other: &Self) -> Result<Complex<R>, DimensionError> {
        if self.dim() != other.dim() {
            return Err(DimensionError {
                left: self.dim(),
                right: other.dim(),
            });
        }
        let mut acc = Complex::new(R::zero(), R::zero());
        for (u, v) in self.0.iter().zip(other.0.iter()) {
            acc = acc + u * v.conj();
        }
        Ok(acc)
    }

    /// |z|² = (z, z); real and non-negative.
    pub fn norm_sqr(&self) -> R {
        self.0
            .iter()
            .fold(R::zero(), |acc, z| acc + z.norm_sqr())
    }

    pub fn norm(&self) -> R {
        self.norm_sqr().sqrt()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim());
        Self::new(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim());
        Self::new(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn scale(&self, s: Complex<R>) -> Self {
        Self::new(self.0.iter().map(|a| a * s).collect())
    }

    pub fn scale_real(&self, s: R) -> Self {
        self.scale(Complex::new(s, R::zero()))
    }

    pub fn dist(&self, other: &Self) -> R {
        self.sub(other).norm()
    }

    /// Unit vector in the same direction; `None` for the zero vector.
    pub fn normalized(&self) -> Option<Self> {
        let n = self.norm();
        if n == R::zero() {
            None
        } else {
            Some(self.scale_real(R::one() / n))
        }
    }

    /// Interleaved real coordinates (x₁, y₁, x₂, y₂, …).
    pub fn to_real_flat(&self) -> Vec<R> {
        let mut out = Vec::with_capacity(2 * self.dim());
        for z in &self.0 {
            out.push(z.re);
            out.push(z.im);
        }
        out
    }

    pub fn from_real_flat(xs: &[R]) -> Self {
        assert!(xs.len().is_multiple_of(2) && !xs.is_empty());
        Self::new(
            xs.chunks_exact(2)
                .map(|c| Complex::new(c[0], c[1]))
                .collect(),
        )
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

impl<R: Real> std::ops::Index<usize> for CVec<R> {
    type Output = Complex<R>;
    fn index(&self, i: usize) -> &Complex<R> {
        &self.0[i]
    }
}

impl<R: Real> From<Vec<Complex<R>>> for CVec<R> {
    fn from(v: Vec<Complex<R>>) -> Self {
        Self::new(v)
    }
}

impl<R: Real> std::fmt::Display for CVec<R> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, z) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", z)?;
        }
        write!(f, ")")
    }
}
