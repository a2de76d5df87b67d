//! Jet evaluation of expressions and validated function handles.

use super::ast::{Expr, Func};
use crate::{CVec, Complex, Jet, Real};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EvalError {
    /// Division by a zero value; carries the evaluation point.
    #[error("pole encountered at {point}")]
    Pole { point: String },
    /// A value or derivative overflowed to a non-finite number.
    #[error("non-finite value at {point}")]
    NonFinite { point: String },
    #[error("arity mismatch: function of {arity} variables evaluated at a point of dimension {got}")]
    Arity { arity: usize, got: usize },
}

/// A parsed expression together with its declared arity.
///
/// Evaluation at any non-pole point yields a finite jet; hitting a zero
/// denominator surfaces as [`EvalError::Pole`].
#[derive(Debug, Clone, PartialEq)]
pub struct FnHandle<R> {
    expr: Expr<R>,
    arity: usize,
}

impl<R: Real> FnHandle<R> {
    pub fn new(expr: Expr<R>, arity: usize) -> Result<Self, EvalError> {
        if let Some(k) = expr.max_var() {
            if k >= arity {
                return Err(EvalError::Arity {
                    arity,
                    got: k + 1,
                });
            }
        }
        assert!(arity >= 1, "arity must be >= 1");
        Ok(FnHandle { expr, arity })
    }

    pub fn expr(&self) -> &Expr<R> {
        &self.expr
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Same expression viewed as a function of `n` variables. Widening is
    /// always sound; narrowing requires that no dropped variable is used.
    pub fn with_arity(&self, n: usize) -> Result<Self, EvalError> {
        Self::new(self.expr.clone(), n)
    }

    /// Handle for 1/f.
    pub fn reciprocal(&self) -> Self {
        FnHandle {
            expr: self.expr.reciprocal(),
            arity: self.arity,
        }
    }

    /// Value and full complex gradient at `z`.
    pub fn eval_jet(&self, z: &CVec<R>) -> Result<Jet<R>, EvalError> {
        if z.dim() != self.arity {
            return Err(EvalError::Arity {
                arity: self.arity,
                got: z.dim(),
            });
        }
        let jet = eval_node(&self.expr, z)?;
        if !jet.is_finite() {
            return Err(EvalError::NonFinite {
                point: z.to_string(),
            });
        }
        Ok(jet)
    }

    /// Value only.
    pub fn eval_value(&self, z: &CVec<R>) -> Result<Complex<R>, EvalError> {
        Ok(self.eval_jet(z)?.value)
    }

    /// Value on the Riemann sphere: poles and overflow to ±∞ become the
    /// point at infinity; NaN (a genuinely indeterminate evaluation) stays
    /// an error.
    pub fn eval_value_ext(&self, z: &CVec<R>) -> Result<crate::ExtComplex<R>, EvalError> {
        if z.dim() != self.arity {
            return Err(EvalError::Arity {
                arity: self.arity,
                got: z.dim(),
            });
        }
        match eval_node(&self.expr, z) {
            Err(EvalError::Pole { .. }) => Ok(crate::ExtComplex::Infinity),
            Err(e) => Err(e),
            Ok(jet) => {
                let v = jet.value;
                // Overflow reads as the point at infinity even when the
                // other component degraded to NaN (inf·0 in complex exp);
                // a NaN without any infinity is genuinely indeterminate.
                if v.re.is_infinite() || v.im.is_infinite() {
                    Ok(crate::ExtComplex::Infinity)
                } else if v.re.is_nan() || v.im.is_nan() {
                    Err(EvalError::NonFinite {
                        point: z.to_string(),
                    })
                } else {
                    Ok(crate::ExtComplex::Finite(v))
                }
            }
        }
    }
}

fn eval_node<R: Real>(e: &Expr<R>, z: &CVec<R>) -> Result<Jet<R>, EvalError> {
    let n = z.dim();
    let pole = || EvalError::Pole {
        point: z.to_string(),
    };
    Ok(match e {
        Expr::Num(x) => Jet::constant(Complex::new(*x, R::zero()), n),
        Expr::I => Jet::constant(Complex::new(R::zero(), R::one()), n),
        Expr::Var(k) => Jet::variable(z[*k], *k, n),
        Expr::Neg(a) => eval_node(a, z)?.neg(),
        Expr::Add(a, b) => eval_node(a, z)?.add(&eval_node(b, z)?),
        Expr::Sub(a, b) => eval_node(a, z)?.sub(&eval_node(b, z)?),
        Expr::Mul(a, b) => eval_node(a, z)?.mul(&eval_node(b, z)?),
        Expr::Div(a, b) => {
            let den = eval_node(b, z)?;
            eval_node(a, z)?.div(&den).map_err(|_| pole())?
        }
        Expr::Pow(a, k) => eval_node(a, z)?.powi(*k).map_err(|_| pole())?,
        Expr::Call(Func::Exp, a) => eval_node(a, z)?.exp(),
        Expr::Call(Func::Sin, a) => eval_node(a, z)?.sin(),
        Expr::Call(Func::Cos, a) => eval_node(a, z)?.cos(),
    })
}

#[cfg(test)]
mod tests {
    use super::super::parse;
    use super::*;
    type C = crate::C64;

    fn handle(src: &str, n: usize) -> FnHandle<f64> {
        FnHandle::new(parse(src, n).unwrap(), n).unwrap()
    }

    fn pt(entries: &[(f64, f64)]) -> CVec<f64> {
        CVec::new(entries.iter().map(|&(re, im)| C::new(re, im)).collect())
    }

    #[test]
    fn counterexample_at_half_half() {
        let f = handle("z2^2/(1-z1)", 2);
        let j = f.eval_jet(&pt(&[(0.5, 0.0), (0.5, 0.0)])).unwrap();
        assert!((j.value - C::new(0.5, 0.0)).norm() < 1e-15);
        assert!((j.grad[0] - C::new(1.0, 0.0)).norm() < 1e-15);
        assert!((j.grad[1] - C::new(2.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn counterexample_on_normal_ray() {
        // f(t, 0) = 0; both partials carry a z2 factor and vanish there.
        let f = handle("z2^2/(1-z1)", 2);
        for t in [0.1, 0.5, 0.9, 0.99] {
            let j = f.eval_jet(&pt(&[(t, 0.0), (0.0, 0.0)])).unwrap();
            assert_eq!(j.value, C::new(0.0, 0.0));
            assert_eq!(j.grad[0], C::new(0.0, 0.0));
            assert_eq!(j.grad[1], C::new(0.0, 0.0));
        }
    }

    #[test]
    fn counterexample_off_axis_tangential_gradient() {
        // At (t, s) with s != 0 the tangential partial is 2s/(1-t).
        let f = handle("z2^2/(1-z1)", 2);
        let (t, s) = (0.9, 0.05);
        let j = f.eval_jet(&pt(&[(t, 0.0), (s, 0.0)])).unwrap();
        assert!((j.grad[1] - C::new(2.0 * s / (1.0 - t), 0.0)).norm() < 1e-12);
        assert!((j.grad[0] - C::new(s * s / ((1.0 - t) * (1.0 - t)), 0.0)).norm() < 1e-12);
    }

    #[test]
    fn identity_map() {
        let f = handle("z1", 1);
        let j = f.eval_jet(&pt(&[(0.3, 0.4)])).unwrap();
        assert_eq!(j.value, C::new(0.3, 0.4));
        assert_eq!(j.grad[0], C::new(1.0, 0.0));
    }

    #[test]
    fn pole_carries_point() {
        let f = handle("1/(1-z1)", 1);
        let err = f.eval_jet(&pt(&[(1.0, 0.0)])).unwrap_err();
        match err {
            EvalError::Pole { point } => assert!(point.contains('1')),
            other => panic!("expected pole, got {other:?}"),
        }
    }

    #[test]
    fn reciprocal_of_quotient_evaluates_at_the_pole() {
        let f = handle("1/(1-z1)", 1);
        let g = f.reciprocal();
        let j = g.eval_jet(&pt(&[(1.0, 0.0)])).unwrap();
        assert_eq!(j.value, C::new(0.0, 0.0));
    }

    #[test]
    fn arity_widening_and_narrowing() {
        let f = handle("z1", 1);
        let wide = f.with_arity(3).unwrap();
        assert_eq!(wide.arity(), 3);
        let g = handle("z2", 2);
        assert!(g.with_arity(1).is_err());
    }
}
