//! Flag-grammar parsing: domains, vertices, functions, regions.

use koranyi::expr::{catalog, parse, FnHandle};
use koranyi::geometry::{builtin_psi, PsiMap};
use koranyi::regions::{RegionFamily, RegionSpec};
use koranyi::{CVec, Domain64, C64};

#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("bad domain spec {0:?}: expected ball:<n> or graph:<n>:<psi>")]
    Domain(String),
    #[error("bad vertex {0:?}: expected (c1,...,cn) with constant components")]
    Vertex(String),
    #[error("vertex has dimension {got}, domain needs {expected}")]
    VertexDimension { expected: usize, got: usize },
    #[error("vertex is not on the boundary: {0}")]
    VertexOffBoundary(String),
    #[error("need exactly one of --function or --catalog")]
    NoFunction,
    #[error("bad aperture list {0:?}")]
    Alphas(String),
    #[error("bad region spec {0:?}: expected family:alpha=<a>@xi=(...)")]
    Region(String),
    #[error("bad sample spec {0:?}: expected d_target,count")]
    Sample(String),
    #[error("unsupported format {0:?} for this command")]
    Format(String),
    #[error(transparent)]
    Lib(#[from] koranyi::Error),
}

// thiserror's transparent forwarding needs the concrete sub-errors mapped in.
impl From<koranyi::expr::ParseError> for InputError {
    fn from(e: koranyi::expr::ParseError) -> Self {
        InputError::Lib(e.into())
    }
}
impl From<koranyi::expr::CatalogError> for InputError {
    fn from(e: koranyi::expr::CatalogError) -> Self {
        InputError::Lib(e.into())
    }
}
impl From<koranyi::expr::EvalError> for InputError {
    fn from(e: koranyi::expr::EvalError) -> Self {
        InputError::Lib(e.into())
    }
}
impl From<koranyi::geometry::GeometryError> for InputError {
    fn from(e: koranyi::geometry::GeometryError) -> Self {
        InputError::Lib(e.into())
    }
}
impl From<koranyi::regions::RegionError> for InputError {
    fn from(e: koranyi::regions::RegionError) -> Self {
        InputError::Lib(e.into())
    }
}

pub fn parse_domain(spec: &str, curvature: f64) -> Result<Domain64, InputError> {
    let bad = || InputError::Domain(spec.to_string());
    if let Some(rest) = spec.strip_prefix("ball:") {
        let n: usize = rest.parse().map_err(|_| bad())?;
        if n == 0 {
            return Err(bad());
        }
        return Ok(Domain64::unit_ball(n));
    }
    if let Some(rest) = spec.strip_prefix("graph:") {
        let (n, psi_src) = match rest.split_once(':') {
            Some((dim, psi)) => (dim.parse::<usize>().map_err(|_| bad())?, psi),
            None => return Err(bad()),
        };
        if n == 0 {
            return Err(bad());
        }
        let vars = 2 * n - 1;
        // Builtin names first, then the polynomial DSL.
        if let Ok((psi, k)) = builtin_psi::<f64>(psi_src, vars) {
            return Ok(Domain64::graph(n, psi, k)?);
        }
        let psi = PsiMap::poly(psi_src, vars)?;
        return Ok(Domain64::graph(n, psi, curvature)?);
    }
    Err(bad())
}

/// Parse "(1,0)" / "(0.5+0.5*i, 0.1)" into a constant complex vector.
pub fn parse_vertex(text: &str, domain: &Domain64) -> Result<CVec<f64>, InputError> {
    let bad = || InputError::Vertex(text.to_string());
    let inner = text
        .trim()
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .unwrap_or(text.trim());
    let mut components = Vec::new();
    for part in inner.split(',') {
        let expr = parse::<f64>(part.trim(), 1).map_err(|_| bad())?;
        if !expr.is_constant() {
            return Err(bad());
        }
        let handle = FnHandle::new(expr, 1).map_err(|_| bad())?;
        let value = handle
            .eval_value(&CVec::new(vec![C64::new(0.0, 0.0)]))
            .map_err(|_| bad())?;
        components.push(value);
    }
    if components.is_empty() {
        return Err(bad());
    }
    let xi = CVec::new(components);
    if xi.dim() != domain.dim() {
        return Err(InputError::VertexDimension {
            expected: domain.dim(),
            got: xi.dim(),
        });
    }
    if !domain.on_boundary(&xi) {
        return Err(InputError::VertexOffBoundary(xi.to_string()));
    }
    Ok(xi)
}

pub fn parse_function(
    function: &Option<String>,
    catalog_name: &Option<String>,
    arity: usize,
) -> Result<FnHandle<f64>, InputError> {
    match (function, catalog_name) {
        (Some(src), None) => {
            let expr = parse::<f64>(src, arity)?;
            Ok(FnHandle::new(expr, arity)?)
        }
        (None, Some(name)) => {
            let handle = catalog::<f64>(name)?;
            Ok(handle.with_arity(arity)?)
        }
        _ => Err(InputError::NoFunction),
    }
}

pub fn parse_alphas(text: &str) -> Result<Vec<f64>, InputError> {
    let alphas: Result<Vec<f64>, _> = text.split(',').map(|s| s.trim().parse::<f64>()).collect();
    let alphas = alphas.map_err(|_| InputError::Alphas(text.to_string()))?;
    if alphas.is_empty() || alphas.iter().any(|a| !a.is_finite() || *a <= 0.0) {
        return Err(InputError::Alphas(text.to_string()));
    }
    Ok(alphas)
}

/// `family:alpha=<a>@xi=(...)` (theta= for the angular family).
pub fn parse_region(spec: &str, domain: &Domain64) -> Result<RegionSpec<f64>, InputError> {
    let bad = || InputError::Region(spec.to_string());
    let (family_txt, rest) = spec.split_once(':').ok_or_else(bad)?;
    let family = RegionFamily::from_name(family_txt.trim()).ok_or_else(bad)?;
    let (aperture_txt, xi_txt) = rest.split_once('@').ok_or_else(bad)?;
    let (key, value) = aperture_txt.split_once('=').ok_or_else(bad)?;
    if key.trim() != family.aperture_key() {
        return Err(bad());
    }
    let aperture: f64 = value.trim().parse().map_err(|_| bad())?;
    let xi_txt = xi_txt.trim().strip_prefix("xi=").ok_or_else(bad)?;
    let xi = parse_vertex(xi_txt, domain)?;
    Ok(RegionSpec::new(family, aperture, xi, domain.clone())?)
}

pub fn parse_sample_spec(text: &str) -> Result<(f64, usize), InputError> {
    let bad = || InputError::Sample(text.to_string());
    let (d, n) = text.split_once(',').ok_or_else(bad)?;
    let d: f64 = d.trim().parse().map_err(|_| bad())?;
    let n: usize = n.trim().parse().map_err(|_| bad())?;
    if d.is_nan() || d <= 0.0 || n == 0 {
        return Err(bad());
    }
    Ok((d, n))
}
