//! Functions rescaled to the unit polydisc: g_b(w) = f(Ψ_b⁻¹(w)),
//! well defined and holomorphic on Uⁿ whenever P(b,c) sits inside the
//! domain of f.

use super::polydisc::Polydisc;
use super::ChainError;
use crate::expr::{EvalError, FnHandle};
use crate::geometry::VertexChart;
use crate::{CVec, Complex, Jet, Real};

/// f pulled back through the polydisc rescaling at base point b.
///
/// Gradients obey the exact chain-rule scalings ∂g/∂w₁ = c·d(b)·∂f/∂z̃₁ and
/// ∂g/∂w_μ = c·√d(b)·∂f/∂z̃_μ, with z̃ the vertex-chart coordinates.
#[derive(Debug, Clone)]
pub struct RescaledFn<R> {
    f: FnHandle<R>,
    chart: VertexChart<R>,
    polydisc: Polydisc<R>,
}

impl<R: Real> RescaledFn<R> {
    pub fn new(
        f: FnHandle<R>,
        chart: VertexChart<R>,
        polydisc: Polydisc<R>,
    ) -> Result<Self, ChainError> {
        if f.arity() != chart.dim() {
            return Err(ChainError::Eval(EvalError::Arity {
                arity: f.arity(),
                got: chart.dim(),
            }));
        }
        Ok(RescaledFn { f, chart, polydisc })
    }

    pub fn polydisc(&self) -> &Polydisc<R> {
        &self.polydisc
    }

    pub fn base(&self) -> &CVec<R> {
        self.polydisc.center()
    }

    /// 1/f with the same rescaling data.
    pub fn reciprocal(&self) -> Self {
        RescaledFn {
            f: self.f.reciprocal(),
            chart: self.chart.clone(),
            polydisc: self.polydisc.clone(),
        }
    }

    /// Ambient-space point under w ↦ chart⁻¹(b + S·w).
    pub fn ambient_point(&self, w: &CVec<R>) -> CVec<R> {
        self.chart.from_chart(&self.polydisc.inverse(w))
    }

    /// Value and w-gradient of g_b at a unit-polydisc point.
    pub fn eval_jet(&self, w: &CVec<R>) -> Result<Jet<R>, EvalError> {
        let z = self.ambient_point(w);
        let jet = self.f.eval_jet(&z)?;
        let grad_chart = self.chart.grad_to_chart(&jet.grad);
        let radii = self.polydisc.radii();
        let grad = CVec::new(
            grad_chart
                .entries()
                .iter()
                .zip(radii.iter())
                .map(|(g, r)| *g * Complex::new(*r, R::zero()))
                .collect(),
        );
        Ok(Jet {
            value: jet.value,
            grad,
        })
    }

    pub fn eval_value(&self, w: &CVec<R>) -> Result<Complex<R>, EvalError> {
        self.f.eval_value(&self.ambient_point(w))
    }

    /// g(0) = f(b).
    pub fn value_at_base(&self) -> Result<Complex<R>, EvalError> {
        self.eval_value(&CVec::zeros(self.chart.dim()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::catalog;
    use crate::geometry::DomainModel;
    use crate::C64;

    fn pt(entries: &[(f64, f64)]) -> CVec<f64> {
        CVec::new(entries.iter().map(|&(re, im)| C64::new(re, im)).collect())
    }

    fn setup(c: f64) -> (RescaledFn<f64>, CVec<f64>, f64) {
        let ball = DomainModel::unit_ball(2);
        let xi = pt(&[(1.0, 0.0), (0.0, 0.0)]);
        let chart = ball.vertex_chart(&xi).unwrap();
        // Base point on the parabola, chart coords (0.01, 0.1).
        let b_ambient = crate::regions::paper_parabola::<f64>(100).unwrap();
        let b = chart.to_chart(&b_ambient);
        let d = chart.d_of_chart(&b).unwrap();
        let polydisc = Polydisc::new(b.clone(), c, d).unwrap();
        let f = catalog("paper_counterexample").unwrap();
        (RescaledFn::new(f, chart, polydisc).unwrap(), b_ambient, d)
    }

    #[test]
    fn base_value_matches_f() {
        let (g, b_ambient, _) = setup(0.25);
        let f = catalog::<f64>("paper_counterexample").unwrap();
        let got = g.value_at_base().unwrap();
        let expect = f.eval_value(&b_ambient).unwrap();
        assert!((got - expect).norm() < 1e-14);
    }

    #[test]
    fn chain_rule_scalings_are_exact() {
        let (g, b_ambient, d) = setup(0.25);
        let f = catalog::<f64>("paper_counterexample").unwrap();
        let jet_g = g.eval_jet(&CVec::zeros(2)).unwrap();
        let jet_f = f.eval_jet(&b_ambient).unwrap();
        // Chart at (1,0): z1 = 1 - w1, z2 = w2, so ∂/∂w1 = -∂/∂z1.
        let expect_1 = jet_f.grad[0] * C64::new(-(0.25 * d), 0.0);
        let expect_2 = jet_f.grad[1] * C64::new(0.25 * d.sqrt(), 0.0);
        assert!(
            (jet_g.grad[0] - expect_1).norm() <= 1e-12 * expect_1.norm().max(1.0),
            "normal scaling: {} vs {}",
            jet_g.grad[0],
            expect_1
        );
        assert!(
            (jet_g.grad[1] - expect_2).norm() <= 1e-12 * expect_2.norm().max(1.0),
            "tangential scaling: {} vs {}",
            jet_g.grad[1],
            expect_2
        );
    }

    #[test]
    fn reciprocal_shares_base() {
        let (g, _, _) = setup(0.2);
        let r = g.reciprocal();
        let v = g.value_at_base().unwrap();
        let w = r.value_at_base().unwrap();
        assert!((v * w - C64::new(1.0, 0.0)).norm() < 1e-12);
    }
}
