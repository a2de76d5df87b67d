//! Polydiscs with anisotropic radii (c·d(b), c·√d(b), …, c·√d(b)) and the
//! affine rescaling maps between them and the unit polydisc.
//!
//! Everything here lives in vertex-chart coordinates. The forward map is
//!
//! ```text
//! w₁ = (z₁ − b₁) / (c·d(b)),   w_μ = (z_μ − b_μ) / (c·√d(b))
//! ```
//!
//! normalized so that forward(P(b,c)) is exactly the unit polydisc Uⁿ.

use super::ChainError;
use crate::{CVec, Complex, Real};

#[derive(Debug, Clone)]
pub struct Polydisc<R> {
    center: CVec<R>,
    c: R,
    d_center: R,
}

impl<R: Real> Polydisc<R> {
    /// `center` in chart coordinates; `d_center` = d(center) must be > 0.
    pub fn new(center: CVec<R>, c: R, d_center: R) -> Result<Self, ChainError> {
        if d_center <= R::zero() {
            return Err(ChainError::NonPositiveDepth(d_center.to_f64_lossy()));
        }
        Ok(Polydisc {
            center,
            c,
            d_center,
        })
    }

    pub fn center(&self) -> &CVec<R> {
        &self.center
    }

    pub fn c(&self) -> R {
        self.c
    }

    pub fn d_center(&self) -> R {
        self.d_center
    }

    /// (c·d, c·√d, …, c·√d)
    pub fn radii(&self) -> Vec<R> {
        let mut out = vec![self.c * self.d_center];
        out.extend(
            std::iter::repeat_n(self.c * self.d_center.sqrt(), self.center.dim() - 1),
        );
        out
    }

    /// Per-coordinate modulus comparison.
    pub fn contains(&self, w: &CVec<R>) -> bool {
        let radii = self.radii();
        w.entries()
            .iter()
            .zip(self.center.entries())
            .zip(radii.iter())
            .all(|((wj, bj), rj)| (*wj - *bj).norm() < *rj)
    }

    /// Same center, half the parameter.
    pub fn half(&self) -> Polydisc<R> {
        Polydisc {
            center: self.center.clone(),
            c: self.c * R::of(0.5),
            d_center: self.d_center,
        }
    }

    /// Chart point → unit polydisc coordinates.
    pub fn forward(&self, z: &CVec<R>) -> CVec<R> {
        let radii = self.radii();
        CVec::new(
            z.entries()
                .iter()
                .zip(self.center.entries())
                .zip(radii.iter())
                .map(|((zj, bj), rj)| (*zj - *bj) / Complex::new(*rj, R::zero()))
                .collect(),
        )
    }

    /// Unit polydisc coordinates → chart point.
    pub fn inverse(&self, w: &CVec<R>) -> CVec<R> {
        let radii = self.radii();
        CVec::new(
            w.entries()
                .iter()
                .zip(self.center.entries())
                .zip(radii.iter())
                .map(|((wj, bj), rj)| *wj * Complex::new(*rj, R::zero()) + *bj)
                .collect(),
        )
    }

    /// Deterministic sample of the distinguished torus at fraction `rho`
    /// of the radii, `per_angle` points per angle coordinate.
    #[allow(clippy::needless_range_loop)]
    pub fn torus_points(&self, rho: R, per_angle: usize) -> Vec<CVec<R>> {
        let n = self.center.dim();
        let radii = self.radii();
        let total = per_angle.pow(n as u32);
        let two_pi = R::PI() * R::of(2.0);
        let per = R::from_usize(per_angle).expect("grid");
        let mut out = Vec::with_capacity(total);
        for idx in 0..total {
            let mut rest = idx;
            let mut w = self.center.clone();
            for j in 0..n {
                let step = rest % per_angle;
                rest /= per_angle;
                let angle = two_pi * R::from_usize(step).expect("step") / per;
                let r = radii[j] * rho;
                w.entries_mut()[j] = self.center[j]
                    + Complex::new(r * angle.cos(), r * angle.sin());
            }
            out.push(w);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::C64;

    fn pt(entries: &[(f64, f64)]) -> CVec<f64> {
        CVec::new(entries.iter().map(|&(re, im)| C64::new(re, im)).collect())
    }

    #[test]
    fn center_maps_to_origin() {
        let b = pt(&[(0.1, 0.0), (0.0, 0.0)]);
        let p = Polydisc::new(b.clone(), 0.5, 0.1).unwrap();
        let w = p.forward(&b);
        assert!(w.norm() < 1e-15);
    }

    #[test]
    fn boundary_point_maps_to_unit() {
        // Paper-style: d(b) = 0.1, c = 0.5 -> radii (0.05, ~0.158).
        let b = pt(&[(0.1, 0.0), (0.0, 0.0)]);
        let p = Polydisc::new(b.clone(), 0.5, 0.1).unwrap();
        let radii = p.radii();
        assert!((radii[0] - 0.05).abs() < 1e-15);
        assert!((radii[1] - 0.5 * 0.1f64.sqrt()).abs() < 1e-15);
        let z = pt(&[(0.1 + 0.05, 0.0), (0.0, 0.0)]);
        let w = p.forward(&z);
        assert!((w[0] - C64::new(1.0, 0.0)).norm() < 1e-14);
        assert!(w[1].norm() < 1e-15);
    }

    #[test]
    fn round_trips_are_tight() {
        let b = pt(&[(0.05, 0.01), (-0.02, 0.03)]);
        let p = Polydisc::new(b, 0.25, 0.04).unwrap();
        let z = pt(&[(0.052, 0.012), (-0.01, 0.02)]);
        let back = p.inverse(&p.forward(&z));
        assert!(back.dist(&z) < 1e-14);
        let w = pt(&[(0.3, -0.4), (0.9, 0.1)]);
        let fwd = p.forward(&p.inverse(&w));
        assert!(fwd.dist(&w) < 1e-14);
    }

    #[test]
    fn membership_is_per_coordinate() {
        let b = pt(&[(0.1, 0.0), (0.0, 0.0)]);
        let p = Polydisc::new(b, 0.5, 0.1).unwrap();
        assert!(p.contains(&pt(&[(0.14, 0.0), (0.1, 0.0)])));
        assert!(!p.contains(&pt(&[(0.16, 0.0), (0.0, 0.0)])));
        assert!(!p.contains(&pt(&[(0.1, 0.0), (0.2, 0.0)])));
    }

    #[test]
    fn nonpositive_depth_rejected() {
        let b = pt(&[(0.1, 0.0), (0.0, 0.0)]);
        assert!(Polydisc::new(b, 0.5, 0.0).is_err());
    }
}
