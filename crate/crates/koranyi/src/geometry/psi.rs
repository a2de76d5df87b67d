//! Graph functions ψ: ℝ^{2n−1} → ℝ with analytic gradients.

use super::GeometryError;
use crate::expr::{parse, Expr, FnHandle};
use crate::{CVec, Complex, Real};
use std::sync::Arc;

type ValueFn<R> = Arc<dyn Fn(&[R]) -> R + Send + Sync>;
type GradFn<R> = Arc<dyn Fn(&[R]) -> Vec<R> + Send + Sync>;

/// A real-valued C² map on ℝ^{2n−1}, given either as real polynomial text in
/// the expression DSL (variables z1..z_{2n−1} read as real coordinates) or as
/// a named built-in with closed-form value and gradient.
#[derive(Clone)]
pub enum PsiMap<R> {
    Poly { handle: FnHandle<R>, vars: usize },
    Builtin {
        name: String,
        vars: usize,
        value: ValueFn<R>,
        grad: GradFn<R>,
    },
}

impl<R: Real> PsiMap<R> {
    /// Parse polynomial text; rejects `i`, transcendental calls and
    /// non-constant denominators.
    pub fn poly(src: &str, vars: usize) -> Result<Self, GeometryError> {
        let expr: Expr<R> =
            parse(src, vars).map_err(|e| GeometryError::InvalidPsi(e.to_string()))?;
        if !expr.is_real_polynomial() {
            return Err(GeometryError::InvalidPsi(format!(
                "{src:?} is not real polynomial text"
            )));
        }
        let handle = FnHandle::new(expr, vars)
            .map_err(|e| GeometryError::InvalidPsi(e.to_string()))?;
        Ok(PsiMap::Poly { handle, vars })
    }

    pub fn vars(&self) -> usize {
        match self {
            PsiMap::Poly { vars, .. } | PsiMap::Builtin { vars, .. } => *vars,
        }
    }

    pub fn value(&self, zeta: &[R]) -> R {
        match self {
            PsiMap::Poly { handle, .. } => {
                let z = CVec::from_reals(zeta);
                handle
                    .eval_value(&z)
                    .expect("polynomials are entire")
                    .re
            }
            PsiMap::Builtin { value, .. } => value(zeta),
        }
    }

    pub fn gradient(&self, zeta: &[R]) -> Vec<R> {
        match self {
            PsiMap::Poly { handle, .. } => {
                let z = CVec::from_reals(zeta);
                let jet = handle.eval_jet(&z).expect("polynomials are entire");
                // Real-coefficient polynomial at a real point: the complex
                // partials are the real partials.
                jet.grad.entries().iter().map(|g| g.re).collect()
            }
            PsiMap::Builtin { grad, .. } => grad(zeta),
        }
    }

    /// Central-difference Hessian of ψ (used only to steer Newton steps).
    pub fn hessian_fd(&self, zeta: &[R]) -> Vec<Vec<R>> {
        let m = self.vars();
        let h = R::of(1e-5);
        let mut out = vec![vec![R::zero(); m]; m];
        let mut plus = zeta.to_vec();
        let mut minus = zeta.to_vec();
        for k in 0..m {
            plus[k] = zeta[k] + h;
            minus[k] = zeta[k] - h;
            let gp = self.gradient(&plus);
            let gm = self.gradient(&minus);
            for j in 0..m {
                out[j][k] = (gp[j] - gm[j]) / (h + h);
            }
            plus[k] = zeta[k];
            minus[k] = zeta[k];
        }
        out
    }
}

impl<R> std::fmt::Debug for PsiMap<R> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PsiMap::Poly { vars, .. } => f
                .debug_struct("PsiMap::Poly")
                .field("vars", vars)
                .finish(),
            PsiMap::Builtin { name, vars, .. } => f
                .debug_struct("PsiMap::Builtin")
                .field("name", name)
                .field("vars", vars)
                .finish(),
        }
    }
}

/// Named graph functions: `flat`, `paraboloid` (|ζ|²/4) and
/// `ellipsoid:a1,a2,...` (boundary of Σ|z_j|²/a_j² = 1 graphed at the vertex
/// (a₁, 0, …, 0)). Returns the map together with a curvature bound.
pub fn builtin_psi<R: Real>(name: &str, vars: usize) -> Result<(PsiMap<R>, R), GeometryError> {
    if name == "flat" {
        let psi = PsiMap::Builtin {
            name: "flat".into(),
            vars,
            value: Arc::new(|_: &[R]| R::zero()),
            grad: Arc::new(move |_: &[R]| vec![R::zero(); vars]),
        };
        // Flat boundary has zero curvature; keep a token bound so the chart
        // radius stays finite.
        return Ok((psi, R::of(0.5)));
    }
    if name == "paraboloid" {
        let quarter = R::of(0.25);
        let half = R::of(0.5);
        let psi = PsiMap::Builtin {
            name: "paraboloid".into(),
            vars,
            value: Arc::new(move |zeta: &[R]| {
                zeta.iter().fold(R::zero(), |a, &x| a + x * x) * quarter
            }),
            grad: Arc::new(move |zeta: &[R]| zeta.iter().map(|&x| x * half).collect()),
        };
        return Ok((psi, R::of(0.5)));
    }
    if let Some(list) = name.strip_prefix("ellipsoid:") {
        let axes: Vec<R> = list
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<f64>()
                    .ok()
                    .filter(|a| *a > 0.0)
                    .map(R::of)
                    .ok_or_else(|| GeometryError::InvalidPsi(format!("bad axis {s:?}")))
            })
            .collect::<Result<_, _>>()?;
        let n = axes.len();
        if n < 1 || vars != 2 * n - 1 {
            return Err(GeometryError::InvalidPsi(format!(
                "ellipsoid with {n} axes needs {} real variables, got {vars}",
                2 * n - 1
            )));
        }
        // Coefficients for (y1, x2, y2, ..., xn, yn).
        let mut coeff = Vec::with_capacity(vars);
        coeff.push(R::one() / (axes[0] * axes[0]));
        for a in &axes[1..] {
            let c = R::one() / (*a * *a);
            coeff.push(c);
            coeff.push(c);
        }
        let a1 = axes[0];
        let cv = coeff.clone();
        let value = move |zeta: &[R]| {
            let s = zeta
                .iter()
                .zip(cv.iter())
                .fold(R::zero(), |acc, (&x, &c)| acc + c * x * x);
            a1 * (R::one() - (R::one() - s).max(R::zero()).sqrt())
        };
        let cg = coeff.clone();
        let grad = move |zeta: &[R]| {
            let s = zeta
                .iter()
                .zip(cg.iter())
                .fold(R::zero(), |acc, (&x, &c)| acc + c * x * x);
            let root = (R::one() - s).max(R::of(1e-12)).sqrt();
            zeta.iter()
                .zip(cg.iter())
                .map(|(&x, &c)| a1 * c * x / root)
                .collect()
        };
        let kmax = coeff.iter().cloned().fold(R::zero(), R::max) * a1;
        let psi = PsiMap::Builtin {
            name: format!("ellipsoid:{list}"),
            vars,
            value: Arc::new(value),
            grad: Arc::new(grad),
        };
        // Hessian at the vertex is a1·diag(coeff); double it as a bound over
        // the chart.
        return Ok((psi, kmax * R::of(2.0)));
    }
    Err(GeometryError::InvalidPsi(format!(
        "unknown builtin graph function {name:?}"
    )))
}

/// Convert a complex vector to the real identification (x₁, ζ),
/// ζ = (y₁, x₂, y₂, …, xₙ, yₙ).
pub(crate) fn split_real<R: Real>(z: &CVec<R>) -> (R, Vec<R>) {
    let mut zeta = Vec::with_capacity(2 * z.dim() - 1);
    zeta.push(z[0].im);
    for k in 1..z.dim() {
        zeta.push(z[k].re);
        zeta.push(z[k].im);
    }
    (z[0].re, zeta)
}

pub(crate) fn join_real<R: Real>(x1: R, zeta: &[R]) -> CVec<R> {
    assert!(zeta.len() % 2 == 1);
    let n = zeta.len().div_ceil(2);
    let mut entries = Vec::with_capacity(n);
    entries.push(Complex::new(x1, zeta[0]));
    for k in 0..n - 1 {
        entries.push(Complex::new(zeta[1 + 2 * k], zeta[2 + 2 * k]));
    }
    CVec::new(entries)
}
