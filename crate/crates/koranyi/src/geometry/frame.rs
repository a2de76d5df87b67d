//! Adapted unitary frames at boundary points.

use crate::{CVec, Complex, Real};

/// Unitary coordinates adapted to a boundary point: the first column spans
/// the complex normal N^c_ξ, the remaining columns span T^c_ξ.
///
/// Built by a Householder-style reflection mapping e₁ to the unit outward
/// normal, with tangent-column phases fixed so the diagonal is
/// real-nonnegative — the frame is a deterministic function of ξ.
#[derive(Debug, Clone)]
pub struct BoundaryFrame<R> {
    vertex: CVec<R>,
    cols: Vec<CVec<R>>,
}

impl<R: Real> BoundaryFrame<R> {
    pub fn from_normal(vertex: CVec<R>, nu: CVec<R>) -> Self {
        let n = nu.dim();
        debug_assert!((nu.norm() - R::one()).abs() < R::of(1e-9));
        let one = Complex::new(R::one(), R::zero());
        if n == 1 {
            return BoundaryFrame {
                vertex,
                cols: vec![nu],
            };
        }
        // Phase so that the pivot entry is real non-negative.
        let nu1 = nu[0];
        let phase = if nu1.norm() < R::of(1e-14) {
            one
        } else {
            nu1 / Complex::new(nu1.norm(), R::zero())
        };
        let nu_prime = nu.scale(one / phase);
        // Householder H = I - 2 u u* / |u|² with u = nu' - e1 maps e1 to nu'.
        let e1 = CVec::basis(n, 0);
        let u = nu_prime.sub(&e1);
        let unorm2 = u.norm_sqr();
        let mut cols: Vec<CVec<R>> = Vec::with_capacity(n);
        if unorm2 < R::of(1e-28) {
            for j in 0..n {
                cols.push(CVec::basis(n, j));
            }
        } else {
            let scale = R::of(2.0) / unorm2;
            for j in 0..n {
                // H e_j = e_j - 2 u conj(u_j) / |u|²
                let coeff = u[j].conj() * Complex::new(scale, R::zero());
                let col = CVec::basis(n, j).sub(&u.scale(coeff));
                cols.push(col);
            }
        }
        // Restore the phase on the normal column only.
        cols[0] = cols[0].scale(phase);
        // Deterministic tie-break: rotate each tangent column so its own
        // diagonal entry is real non-negative.
        for (j, col) in cols.iter_mut().enumerate().skip(1) {
            let d = col[j];
            if d.norm() > R::of(1e-14) {
                let ph = d / Complex::new(d.norm(), R::zero());
                *col = col.scale(one / ph);
            }
        }
        BoundaryFrame { vertex, cols }
    }

    pub fn dim(&self) -> usize {
        self.cols.len()
    }

    pub fn vertex(&self) -> &CVec<R> {
        &self.vertex
    }

    /// Unit outward complex normal (first column).
    pub fn normal(&self) -> &CVec<R> {
        &self.cols[0]
    }

    pub fn column(&self, j: usize) -> &CVec<R> {
        &self.cols[j]
    }

    /// U v — frame coordinates to ambient directions.
    pub fn apply(&self, v: &CVec<R>) -> CVec<R> {
        let mut acc = CVec::zeros(self.dim());
        for (j, col) in self.cols.iter().enumerate() {
            acc = acc.add(&col.scale(v[j]));
        }
        acc
    }

    /// U* v — ambient vector in frame coordinates.
    pub fn apply_adjoint(&self, v: &CVec<R>) -> CVec<R> {
        CVec::new(
            self.cols
                .iter()
                .map(|col| v.hermitian_inner(col).expect("frame dims"))
                .collect(),
        )
    }

    /// Uᵀ v — how holomorphic gradients transform under z = ξ + U w.
    pub fn apply_transpose(&self, v: &CVec<R>) -> CVec<R> {
        CVec::new(
            self.cols
                .iter()
                .map(|col| {
                    col.entries()
                        .iter()
                        .zip(v.entries())
                        .fold(Complex::new(R::zero(), R::zero()), |acc, (a, b)| {
                            acc + *a * *b
                        })
                })
                .collect(),
        )
    }

    /// Same frame with each tangent column rotated by a unit-modulus
    /// scalar. Directional magnitudes must not see the difference.
    pub fn rephased(&self, phases: &[R]) -> Self {
        assert_eq!(phases.len(), self.dim() - 1);
        let mut cols = self.cols.clone();
        for (k, phi) in phases.iter().enumerate() {
            let unit = Complex::new(phi.cos(), phi.sin());
            cols[k + 1] = cols[k + 1].scale(unit);
        }
        BoundaryFrame {
            vertex: self.vertex.clone(),
            cols,
        }
    }

    /// max |U·U* − I| entrywise; ~1e−16 for healthy frames.
    pub fn unitarity_defect(&self) -> R {
        let n = self.dim();
        let mut worst = R::zero();
        for r in 0..n {
            for c in 0..n {
                let mut s = Complex::new(R::zero(), R::zero());
                for col in &self.cols {
                    s = s + col[r] * col[c].conj();
                }
                let target = if r == c { R::one() } else { R::zero() };
                let defect = (s - Complex::new(target, R::zero())).norm();
                worst = worst.max(defect);
            }
        }
        worst
    }
}
