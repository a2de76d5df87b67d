//! Built-in function catalog.

use super::eval::FnHandle;
use super::parse::parse;
use crate::{CVec, Real};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CatalogError {
    #[error("unknown catalog function {0:?}")]
    Unknown(String),
    #[error("bad constant argument in {0:?}")]
    BadConstant(String),
}

/// Names accepted by [`catalog`]; `constant(c)` additionally takes a literal.
pub fn catalog_names() -> &'static [&'static str] {
    &[
        "paper_counterexample",
        "tangential_cubed",
        "inv_normal",
        "coordinate",
        "disc_linear",
        "constant(c)",
    ]
}

/// Look up a named catalog function.
///
/// * `paper_counterexample` — z₂²/(1−z₁) on B², bounded by 2, with a normal
///   limit 0 at (1,0) but no admissible limit there,
/// * `tangential_cubed` — z₂³/(1−z₁), the positive companion,
/// * `inv_normal` — 1/(1−z₁), normal limit ∞,
/// * `coordinate` — z₁ (arity 1),
/// * `disc_linear` — 1−z₁ (arity 1),
/// * `constant(c)` — the constant c, e.g. `constant(0)` or `constant(1+2*i)`.
///
/// Use [`FnHandle::with_arity`] to view a handle in a different dimension.
pub fn catalog<R: Real>(name: &str) -> Result<FnHandle<R>, CatalogError> {
    let trimmed = name.trim();
    if let Some(rest) = trimmed.strip_prefix("constant(") {
        let inner = rest
            .strip_suffix(')')
            .ok_or_else(|| CatalogError::BadConstant(trimmed.to_string()))?;
        let expr = parse::<R>(inner, 1).map_err(|_| CatalogError::BadConstant(trimmed.to_string()))?;
        if !expr.is_constant() {
            return Err(CatalogError::BadConstant(trimmed.to_string()));
        }
        // Fold to a literal value so the handle is trivially constant.
        let h = FnHandle::new(expr, 1).expect("constant handle");
        let value = h
            .eval_value(&CVec::zeros(1))
            .map_err(|_| CatalogError::BadConstant(trimmed.to_string()))?;
        let folded = crate::Expr::Add(
            Box::new(crate::Expr::Num(value.re)),
            Box::new(crate::Expr::Mul(
                Box::new(crate::Expr::Num(value.im)),
                Box::new(crate::Expr::I),
            )),
        );
        return Ok(FnHandle::new(folded, 1).expect("constant handle"));
    }
    let (src, arity) = match trimmed {
        "paper_counterexample" => ("z2^2/(1-z1)", 2),
        "tangential_cubed" => ("z2^3/(1-z1)", 2),
        "inv_normal" => ("1/(1-z1)", 2),
        "coordinate" => ("z1", 1),
        "disc_linear" => ("1-z1", 1),
        other => return Err(CatalogError::Unknown(other.to_string())),
    };
    let expr = parse::<R>(src, arity).expect("catalog sources parse");
    Ok(FnHandle::new(expr, arity).expect("catalog handles validate"))
}

#[cfg(test)]
mod tests {
    use super::*;
    type C = crate::C64;

    #[test]
    fn counterexample_entry() {
        let f: FnHandle<f64> = catalog("paper_counterexample").unwrap();
        assert_eq!(f.arity(), 2);
        assert_eq!(format!("{}", f.expr()), "((z2^2)/(1-z1))");
    }

    #[test]
    fn constant_zero() {
        let f: FnHandle<f64> = catalog("constant(0)").unwrap();
        let z = CVec::new(vec![C::new(0.3, 0.2)]);
        assert_eq!(f.eval_value(&z).unwrap(), C::new(0.0, 0.0));
    }

    #[test]
    fn complex_constant() {
        let f: FnHandle<f64> = catalog("constant(1+2*i)").unwrap();
        let z = CVec::new(vec![C::new(0.0, 0.0)]);
        assert_eq!(f.eval_value(&z).unwrap(), C::new(1.0, 2.0));
    }

    #[test]
    fn inv_normal_value() {
        let f: FnHandle<f64> = catalog("inv_normal").unwrap();
        let z = CVec::new(vec![C::new(0.9, 0.0), C::new(0.0, 0.0)]);
        assert!((f.eval_value(&z).unwrap() - C::new(10.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn unknown_name() {
        assert!(matches!(
            catalog::<f64>("nope"),
            Err(CatalogError::Unknown(_))
        ));
    }

    #[test]
    fn non_constant_argument_rejected() {
        assert!(catalog::<f64>("constant(z1)").is_err());
    }
}
