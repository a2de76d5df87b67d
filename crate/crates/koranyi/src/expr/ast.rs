//! Abstract syntax tree and printing.

use crate::Real;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Func {
    Exp,
    Sin,
    Cos,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Sin => "sin",
            Func::Cos => "cos",
        }
    }
}

/// Expression over complex literals, `i`, variables `z1..zn`, unary minus,
/// the four arithmetic operators, integer powers and entire calls.
///
/// Printing is fully parenthesized, so `format!("{e}")` reparses to a
/// structurally identical tree.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Expr<R> {
    /// Real literal (complex literals are spelled like `1+2*i`).
    Num(R),
    /// The imaginary unit.
    I,
    /// Variable z_{index+1}; `index < arity` is checked at parse/eval time.
    Var(usize),
    Neg(Box<Expr<R>>),
    Add(Box<Expr<R>>, Box<Expr<R>>),
    Sub(Box<Expr<R>>, Box<Expr<R>>),
    Mul(Box<Expr<R>>, Box<Expr<R>>),
    Div(Box<Expr<R>>, Box<Expr<R>>),
    Pow(Box<Expr<R>>, i32),
    Call(Func, Box<Expr<R>>),
}

impl<R: Real> Expr<R> {
    /// Largest variable index used, if any (0-based).
    pub fn max_var(&self) -> Option<usize> {
        match self {
            Expr::Num(_) | Expr::I => None,
            Expr::Var(k) => Some(*k),
            Expr::Neg(a) | Expr::Pow(a, _) | Expr::Call(_, a) => a.max_var(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                match (a.max_var(), b.max_var()) {
                    (None, m) | (m, None) => m,
                    (Some(x), Some(y)) => Some(x.max(y)),
                }
            }
        }
    }

    /// True when the tree contains no variables.
    pub fn is_constant(&self) -> bool {
        self.max_var().is_none()
    }

    /// True when the tree contains neither `i` nor transcendental calls and
    /// every division has a constant denominator: the fragment accepted for
    /// real-valued graph functions ψ.
    pub fn is_real_polynomial(&self) -> bool {
        match self {
            Expr::Num(_) | Expr::Var(_) => true,
            Expr::I => false,
            Expr::Call(_, _) => false,
            Expr::Neg(a) => a.is_real_polynomial(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                a.is_real_polynomial() && b.is_real_polynomial()
            }
            Expr::Div(a, b) => a.is_real_polynomial() && b.is_real_polynomial() && b.is_constant(),
            Expr::Pow(a, k) => a.is_real_polynomial() && *k >= 0,
        }
    }

    /// 1/self, with the structural rewrites `1/(a/b) = b/a` and
    /// `1/exp(u) = exp(-u)` so that the reciprocal of a simple quotient
    /// evaluates cleanly at poles and overflow points.
    pub fn reciprocal(&self) -> Expr<R> {
        match self {
            Expr::Div(a, b) => Expr::Div(b.clone(), a.clone()),
            Expr::Call(Func::Exp, a) => Expr::Call(Func::Exp, Box::new(Expr::Neg(a.clone()))),
            other => Expr::Div(Box::new(Expr::Num(R::one())), Box::new(other.clone())),
        }
    }
}

impl<R: Real> std::fmt::Display for Expr<R> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Expr::Num(x) => write!(f, "{}", x),
            Expr::I => write!(f, "i"),
            Expr::Var(k) => write!(f, "z{}", k + 1),
            Expr::Neg(a) => write!(f, "(-{})", a),
            Expr::Add(a, b) => write!(f, "({}+{})", a, b),
            Expr::Sub(a, b) => write!(f, "({}-{})", a, b),
            Expr::Mul(a, b) => write!(f, "({}*{})", a, b),
            Expr::Div(a, b) => write!(f, "({}/{})", a, b),
            Expr::Pow(a, k) => {
                if *k < 0 {
                    write!(f, "({}^({}))", a, k)
                } else {
                    write!(f, "({}^{})", a, k)
                }
            }
            Expr::Call(func, a) => write!(f, "{}({})", func.name(), a),
        }
    }
}
