//! Region families and membership predicates.

use super::RegionError;
use crate::geometry::{delta_xi, DomainModel, RealCoords};
use crate::geometry::VertexChart;
use crate::{CVec, Complex, Real};

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum RegionFamily {
    /// Γ_α in the disc: |1 − z·conj(ξ)| < (α/2)(1 − |z|²), α > 1.
    DiscStolz,
    /// A_θ in the disc: angle between z−ξ and the inward direction < θ,
    /// θ ∈ (0, π/2).
    DiscAngular,
    /// D_α in the ball: |1 − (z, ξ)| < (α/2)(1 − |z|²), α > 1.
    BallKoranyi,
    /// 𝒜_α: |(z−ξ, ν_ξ)| < (1+α)·δ_ξ(z) and |z−ξ|² < α·δ_ξ(z), α > 0.
    Stein,
    /// A_α in vertex coordinates: |z|² < α·d(z) and |y₁| < α·x₁, α > 0.
    RealAdapted,
}

impl RegionFamily {
    pub fn name(self) -> &'static str {
        match self {
            RegionFamily::DiscStolz => "stolz",
            RegionFamily::DiscAngular => "angular",
            RegionFamily::BallKoranyi => "koranyi",
            RegionFamily::Stein => "stein",
            RegionFamily::RealAdapted => "adapted",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Some(match s {
            "stolz" => RegionFamily::DiscStolz,
            "angular" => RegionFamily::DiscAngular,
            "koranyi" => RegionFamily::BallKoranyi,
            "stein" => RegionFamily::Stein,
            "adapted" => RegionFamily::RealAdapted,
            _ => return None,
        })
    }

    pub fn aperture_key(self) -> &'static str {
        match self {
            RegionFamily::DiscAngular => "theta",
            _ => "alpha",
        }
    }
}

/// One approach region: a family, an aperture, a vertex and the domain it
/// lives in.
#[derive(Debug, Clone)]
pub struct RegionSpec<R> {
    family: RegionFamily,
    aperture: R,
    vertex: CVec<R>,
    domain: DomainModel<R>,
    chart: VertexChart<R>,
}

impl<R: Real> RegionSpec<R> {
    pub fn new(
        family: RegionFamily,
        aperture: R,
        vertex: CVec<R>,
        domain: DomainModel<R>,
    ) -> Result<Self, RegionError> {
        let a = aperture.to_f64_lossy();
        let bad = |constraint: &'static str| RegionError::InvalidAperture {
            family: family.name(),
            aperture: a,
            constraint,
        };
        match family {
            RegionFamily::DiscStolz | RegionFamily::BallKoranyi => {
                if a.is_nan() || a <= 1.0 {
                    return Err(bad("alpha > 1"));
                }
            }
            RegionFamily::DiscAngular => {
                if a.is_nan() || a <= 0.0 || a >= std::f64::consts::FRAC_PI_2 {
                    return Err(bad("theta in (0, pi/2)"));
                }
            }
            RegionFamily::Stein | RegionFamily::RealAdapted => {
                if a.is_nan() || a <= 0.0 {
                    return Err(bad("alpha > 0"));
                }
            }
        }
        match family {
            RegionFamily::DiscStolz | RegionFamily::DiscAngular => {
                if !matches!(domain, DomainModel::UnitBall { dim: 1 }) {
                    return Err(RegionError::WrongDomain {
                        family: family.name(),
                        requirement: "the unit disc (ball of dimension 1)",
                    });
                }
            }
            RegionFamily::BallKoranyi => {
                if !matches!(domain, DomainModel::UnitBall { .. }) {
                    return Err(RegionError::WrongDomain {
                        family: family.name(),
                        requirement: "a unit ball domain",
                    });
                }
            }
            RegionFamily::Stein | RegionFamily::RealAdapted => {}
        }
        let chart = domain.vertex_chart(&vertex)?;
        Ok(RegionSpec {
            family,
            aperture,
            vertex,
            domain,
            chart,
        })
    }

    pub fn family(&self) -> RegionFamily {
        self.family
    }

    pub fn aperture(&self) -> R {
        self.aperture
    }

    pub fn vertex(&self) -> &CVec<R> {
        &self.vertex
    }

    pub fn domain(&self) -> &DomainModel<R> {
        &self.domain
    }

    pub fn chart(&self) -> &VertexChart<R> {
        &self.chart
    }

    /// Same region with a different aperture.
    pub fn with_aperture(&self, aperture: R) -> Result<Self, RegionError> {
        Self::new(
            self.family,
            aperture,
            self.vertex.clone(),
            self.domain.clone(),
        )
    }

    /// Exact evaluation of the family's defining inequalities.
    ///
    /// Points outside the domain (or outside the vertex chart, for the
    /// chart-based family) are not members.
    pub fn contains(&self, z: &CVec<R>) -> bool {
        if z.dim() != self.domain.dim() || !self.domain.contains(z) {
            return false;
        }
        let alpha = self.aperture;
        match self.family {
            RegionFamily::DiscStolz => {
                let z0 = z[0];
                let xi0 = self.vertex[0];
                let lhs = (Complex::new(R::one(), R::zero()) - z0 * xi0.conj()).norm();
                let rhs = alpha * R::of(0.5) * (R::one() - z0.norm_sqr());
                lhs < rhs
            }
            RegionFamily::DiscAngular => {
                let diff = z[0] - self.vertex[0];
                if diff.norm() == R::zero() {
                    return false;
                }
                // angle between z - xi and the inward direction -xi
                let a = diff * (-self.vertex[0]).conj();
                let phi = a.im.atan2(a.re).abs();
                phi < alpha
            }
            RegionFamily::BallKoranyi => {
                let inner = z
                    .hermitian_inner(&self.vertex)
                    .expect("dimensions checked");
                let lhs = (Complex::new(R::one(), R::zero()) - inner).norm();
                let rhs = alpha * R::of(0.5) * (R::one() - z.norm_sqr());
                lhs < rhs
            }
            RegionFamily::Stein => {
                let Ok(dxi) = delta_xi(&self.domain, &self.vertex, z) else {
                    return false;
                };
                let diff = z.sub(&self.vertex);
                let pairing = diff
                    .hermitian_inner(self.chart.frame().normal())
                    .expect("dimensions checked")
                    .norm();
                pairing < (R::one() + alpha) * dxi && diff.norm_sqr() < alpha * dxi
            }
            RegionFamily::RealAdapted => {
                let w = self.chart.to_chart(z);
                if !self.chart.in_chart(&w) {
                    return false;
                }
                let Ok(d) = self.chart.d_of_chart(&w) else {
                    return false;
                };
                if d <= R::zero() {
                    return false;
                }
                let rc = RealCoords::of(&w);
                w.norm_sqr() < alpha * d && rc.zeta[0].abs() < alpha * rc.x1
            }
        }
    }

    /// CLI flag form, e.g. `koranyi:alpha=2@xi=(1,0)`.
    pub fn to_flag(&self) -> String {
        let xi = self
            .vertex
            .entries()
            .iter()
            .map(|c| {
                if c.im == R::zero() {
                    format!("{}", c.re)
                } else {
                    format!("{}+{}i", c.re, c.im)
                }
            })
            .collect::<Vec<_>>()
            .join(",");
        format!(
            "{}:{}={}@xi=({})",
            self.family.name(),
            self.family.aperture_key(),
            self.aperture,
            xi
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::C64;

    fn disc() -> DomainModel<f64> {
        DomainModel::unit_ball(1)
    }

    fn ball() -> DomainModel<f64> {
        DomainModel::unit_ball(2)
    }

    fn pt1(re: f64, im: f64) -> CVec<f64> {
        CVec::new(vec![C64::new(re, im)])
    }

    fn pt2(a: (f64, f64), b: (f64, f64)) -> CVec<f64> {
        CVec::new(vec![C64::new(a.0, a.1), C64::new(b.0, b.1)])
    }

    #[test]
    fn stolz_examples() {
        let r = RegionSpec::new(RegionFamily::DiscStolz, 2.0, pt1(1.0, 0.0), disc()).unwrap();
        // 0.1 < 0.19
        assert!(r.contains(&pt1(0.9, 0.0)));
        // |1-z| ≈ 0.316 >= (alpha/2)(1-|z|^2) = 0.1
        assert!(!r.contains(&pt1(0.9, 0.3)));
    }

    #[test]
    fn koranyi_d3_example() {
        let r = RegionSpec::new(
            RegionFamily::BallKoranyi,
            3.0,
            pt2((1.0, 0.0), (0.0, 0.0)),
            ball(),
        )
        .unwrap();
        // |1 - 8/9| = 1/9 < (3/2)(1 - (64/81 + 1/9)) = (3/2)(8/81)
        assert!(r.contains(&pt2((8.0 / 9.0, 0.0), (1.0 / 3.0, 0.0))));
    }

    #[test]
    fn aperture_validation() {
        assert!(RegionSpec::new(RegionFamily::DiscStolz, 1.0, pt1(1.0, 0.0), disc()).is_err());
        assert!(RegionSpec::new(RegionFamily::DiscAngular, 1.6, pt1(1.0, 0.0), disc()).is_err());
        assert!(RegionSpec::new(RegionFamily::Stein, 0.0, pt1(1.0, 0.0), disc()).is_err());
        assert!(RegionSpec::new(
            RegionFamily::DiscStolz,
            2.0,
            pt2((1.0, 0.0), (0.0, 0.0)),
            ball()
        )
        .is_err());
    }

    #[test]
    fn stein_and_adapted_accept_on_the_normal() {
        for family in [RegionFamily::Stein, RegionFamily::RealAdapted] {
            let r = RegionSpec::new(family, 1.0, pt2((1.0, 0.0), (0.0, 0.0)), ball()).unwrap();
            assert!(
                r.contains(&pt2((0.95, 0.0), (0.0, 0.0))),
                "{family:?} should contain a near normal point"
            );
            assert!(!r.contains(&pt2((0.5, 0.5), (0.5, 0.0))));
        }
    }

    #[test]
    fn angular_measures_the_angle() {
        let r = RegionSpec::new(RegionFamily::DiscAngular, 0.5, pt1(1.0, 0.0), disc()).unwrap();
        assert!(r.contains(&pt1(0.9, 0.0)));
        // 45° off the inward direction is outside θ = 0.5 rad
        assert!(!r.contains(&pt1(0.9, 0.1)));
        let wide = RegionSpec::new(RegionFamily::DiscAngular, 1.0, pt1(1.0, 0.0), disc()).unwrap();
        assert!(wide.contains(&pt1(0.9, 0.1)));
    }

    #[test]
    fn flag_round_trip_text() {
        let r = RegionSpec::new(
            RegionFamily::BallKoranyi,
            2.0,
            pt2((1.0, 0.0), (0.0, 0.0)),
            ball(),
        )
        .unwrap();
        assert_eq!(r.to_flag(), "koranyi:alpha=2@xi=(1,0)");
    }
}
