//! Log-log growth fitting and the empirical o/O trend test.

use crate::Real;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FitError {
    #[error("growth fit needs at least 8 samples, got {0}")]
    TooFewSamples(usize),
    #[error("growth fit needs >= 2 decades of d, got {0:.3}")]
    SpanTooNarrow(f64),
    #[error("growth fit needs positive values ({positive} of {total} usable)")]
    DegenerateValues { positive: usize, total: usize },
}

/// Least-squares fit of log(value) against log(d).
///
/// `exponent` is the power p in value ∝ d^p, so a 1/√d blow-up fits to
/// p = −0.5. Reproducible: the fit is a pure function of the samples.
#[derive(Debug, Clone, Serialize)]
pub struct GrowthFit<R> {
    pub exponent: R,
    pub intercept: R,
    pub residual: R,
    pub window: (R, R),
    pub n_points: usize,
}

pub fn growth_fit<R: Real>(samples: &[(R, R)]) -> Result<GrowthFit<R>, FitError> {
    if samples.len() < 8 {
        return Err(FitError::TooFewSamples(samples.len()));
    }
    let usable: Vec<(R, R)> = samples
        .iter()
        .copied()
        .filter(|&(d, v)| d > R::zero() && v > R::zero() && d.is_finite() && v.is_finite())
        .collect();
    if usable.len() < 8 {
        return Err(FitError::DegenerateValues {
            positive: usable.len(),
            total: samples.len(),
        });
    }
    let dmin = usable.iter().map(|&(d, _)| d).fold(R::infinity(), R::min);
    let dmax = usable
        .iter()
        .map(|&(d, _)| d)
        .fold(R::neg_infinity(), R::max);
    let decades = (dmax / dmin).log10();
    if decades < R::of(2.0) {
        return Err(FitError::SpanTooNarrow(decades.to_f64_lossy()));
    }
    let n = R::from_usize(usable.len()).expect("count fits scalar");
    let mut sx = R::zero();
    let mut sy = R::zero();
    let mut sxx = R::zero();
    let mut sxy = R::zero();
    for &(d, v) in &usable {
        let x = d.ln();
        let y = v.ln();
        sx = sx + x;
        sy = sy + y;
        sxx = sxx + x * x;
        sxy = sxy + x * y;
    }
    let denom = n * sxx - sx * sx;
    let slope = (n * sxy - sx * sy) / denom;
    let intercept = (sy - slope * sx) / n;
    let mut rss = R::zero();
    for &(d, v) in &usable {
        let pred = intercept + slope * d.ln();
        let res = v.ln() - pred;
        rss = rss + res * res;
    }
    let residual = (rss / n).sqrt();
    Ok(GrowthFit {
        exponent: slope,
        intercept,
        residual,
        window: (dmin, dmax),
        n_points: usable.len(),
    })
}

/// Empirical classification of value·d^p as d → 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TrendClass {
    /// value·d^p tends to 0: the o(1/d^p) case.
    LittleO,
    /// value·d^p stays bounded away from 0 and ∞: O but not o.
    BigO,
    /// value·d^p grows.
    Diverges,
}

/// Trend test comparing the medians of the first and last third of the
/// window (ordered by decreasing d). Finite samples cannot prove
/// asymptotics; reports label this verdict "empirical".
pub fn trend_class<R: Real>(samples: &[(R, R)], p: R) -> TrendClass {
    let mut scaled: Vec<(R, R)> = samples
        .iter()
        .map(|&(d, v)| (d, v * d.powf(p)))
        .collect();
    scaled.sort_by(|a, b| b.0.partial_cmp(&a.0).expect("finite distances"));
    let third = (scaled.len() / 3).max(1);
    let lead = median(scaled[..third].iter().map(|&(_, v)| v));
    let trail = median(scaled[scaled.len() - third..].iter().map(|&(_, v)| v));
    let tiny = R::of(1e-12) * (lead + R::of(1e-300));
    if trail <= tiny {
        return TrendClass::LittleO;
    }
    if lead <= tiny {
        return TrendClass::Diverges;
    }
    let ratio = trail / lead;
    if ratio < R::of(0.5) {
        TrendClass::LittleO
    } else if ratio <= R::of(2.0) {
        TrendClass::BigO
    } else {
        TrendClass::Diverges
    }
}

fn median<R: Real>(values: impl Iterator<Item = R>) -> R {
    let mut v: Vec<R> = values.collect();
    v.sort_by(|a, b| a.partial_cmp(b).expect("finite values"));
    if v.is_empty() {
        return R::zero();
    }
    let mid = v.len() / 2;
    if v.len() % 2 == 1 {
        v[mid]
    } else {
        (v[mid - 1] + v[mid]) * R::of(0.5)
    }
}

/// Log-spaced probe distances, largest first.
pub fn log_spaced<R: Real>(lo: R, hi: R, count: usize) -> Vec<R> {
    assert!(count >= 2 && lo > R::zero() && hi > lo);
    let llo = lo.ln();
    let lhi = hi.ln();
    let step = (lhi - llo) / R::from_usize(count - 1).expect("count");
    (0..count)
        .map(|k| (lhi - step * R::from_usize(k).expect("index")).exp())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn synthetic(p: f64, noise: f64, seed: u64, f: impl Fn(f64) -> f64) -> Vec<(f64, f64)> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        log_spaced(1e-8f64, 1e-2, 24)
            .into_iter()
            .map(|d: f64| {
                let bump = 1.0 + noise * (rng.gen::<f64>() * 2.0 - 1.0);
                (d, d.powf(p) * f(d) * bump)
            })
            .collect()
    }

    #[test]
    fn recovers_planted_exponents() {
        for p in [-1.0, -0.5, 0.0] {
            let data = synthetic(p, 0.01, 7, |_| 1.0);
            let fit = growth_fit(&data).unwrap();
            assert!(
                (fit.exponent - p).abs() < 0.02,
                "planted {p}, got {}",
                fit.exponent
            );
        }
    }

    #[test]
    fn inverse_sqrt_is_big_o_not_little_o() {
        let data = synthetic(-0.5, 0.01, 8, |_| 1.0);
        assert_eq!(trend_class(&data, 0.5), TrendClass::BigO);
        let fit = growth_fit(&data).unwrap();
        assert!((fit.exponent + 0.5).abs() < 0.01);
    }

    #[test]
    fn log_damped_inverse_sqrt_is_little_o() {
        let data = synthetic(-0.5, 0.01, 9, |d| 1.0 / (1.0 / d).ln());
        assert_eq!(trend_class(&data, 0.5), TrendClass::LittleO);
    }

    #[test]
    fn growing_quantity_diverges() {
        let data = synthetic(-1.0, 0.0, 10, |_| 1.0);
        assert_eq!(trend_class(&data, 0.5), TrendClass::Diverges);
    }

    #[test]
    fn constant_samples_fit_zero_exponent() {
        let data: Vec<(f64, f64)> = log_spaced(1e-8, 1e-2, 12)
            .into_iter()
            .map(|d| (d, 3.7))
            .collect();
        let fit = growth_fit(&data).unwrap();
        assert!(fit.exponent.abs() < 0.01);
        assert!(fit.residual < 1e-12);
    }

    #[test]
    fn preconditions_are_enforced() {
        let short: Vec<(f64, f64)> = (0..5).map(|k| (1e-3 * (k + 1) as f64, 1.0)).collect();
        assert!(matches!(
            growth_fit(&short),
            Err(FitError::TooFewSamples(5))
        ));
        let narrow: Vec<(f64, f64)> = (0..10)
            .map(|k| (1e-3 + 1e-5 * k as f64, 1.0))
            .collect();
        assert!(matches!(growth_fit(&narrow), Err(FitError::SpanTooNarrow(_))));
        let zeros: Vec<(f64, f64)> = log_spaced(1e-8, 1e-2, 12)
            .into_iter()
            .map(|d| (d, 0.0))
            .collect();
        assert!(matches!(
            growth_fit(&zeros),
            Err(FitError::DegenerateValues { .. })
        ));
    }

    #[test]
    fn log_spaced_is_decreasing_and_spans() {
        let d = log_spaced(1e-8f64, 1e-2, 12);
        assert_eq!(d.len(), 12);
        assert!((d[0] - 1e-2).abs() < 1e-12);
        assert!((d[11] - 1e-8).abs() < 1e-14);
        assert!(d.windows(2).all(|w| w[0] > w[1]));
    }
}
