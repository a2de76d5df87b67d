//! Chain coverings of the segment [π(z), z] by overlapping polydiscs.

use super::polydisc::Polydisc;
use super::ChainError;
use crate::geometry::DomainModel;
use crate::regions::{RegionFamily, RegionSpec};
use crate::{CVec, Real};

/// An ordered polydisc chain in chart coordinates: the first anchor is
/// π(z) = (z₁, 0, …, 0), the last is z, consecutive half-radius polydiscs
/// overlap (the midpoint of the center segment is the witness), and every
/// anchor passes the A_{2α} membership test. Sampled polydisc containment
/// in A_{2α} is recorded, not asserted: it constrains the choice of c.
#[derive(Debug, Clone)]
pub struct Chain<R> {
    polydiscs: Vec<Polydisc<R>>,
    overlap_midpoints: Vec<CVec<R>>,
    alpha: R,
    c: R,
    containment_fraction: f64,
}

impl<R: Real> Chain<R> {
    pub fn len(&self) -> usize {
        self.polydiscs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polydiscs.is_empty()
    }

    pub fn polydiscs(&self) -> &[Polydisc<R>] {
        &self.polydiscs
    }

    pub fn anchors(&self) -> impl Iterator<Item = &CVec<R>> {
        self.polydiscs.iter().map(|p| p.center())
    }

    pub fn overlap_midpoints(&self) -> &[CVec<R>] {
        &self.overlap_midpoints
    }

    pub fn aperture(&self) -> R {
        self.alpha
    }

    pub fn c(&self) -> R {
        self.c
    }

    /// Fraction of sampled polydisc points inside A_{2α}.
    pub fn containment_fraction(&self) -> f64 {
        self.containment_fraction
    }

    /// ⌈2α/c⌉ + 1.
    pub fn length_bound(alpha: R, c: R) -> usize {
        let n = (R::of(2.0) * alpha / c).ceil().to_f64_lossy() as usize;
        n + 1
    }
}

/// Cover [z, π(z)] by polydiscs anchored on the segment.
///
/// Anchors are spaced uniformly with step (c/2)·√(min d), then greedily
/// merged while the half-radius overlap persists; the result respects the
/// k ≤ ⌈2α/c⌉ + 1 bound.
pub fn build_chain<R: Real>(
    domain: &DomainModel<R>,
    xi: &CVec<R>,
    z: &CVec<R>,
    c: R,
    alpha: R,
) -> Result<Chain<R>, ChainError> {
    let region = RegionSpec::new(RegionFamily::RealAdapted, alpha, xi.clone(), domain.clone())?;
    if !region.contains(z) {
        return Err(ChainError::OutsideRegion(z.to_string()));
    }
    let wide = region.with_aperture(alpha * R::of(2.0))?;
    let chart = region.chart();

    let w_z = chart.to_chart(z);
    let w_pi = chart.project_normal_chart(&w_z);
    let length = w_z.dist(&w_pi);
    let d_z = chart.d_of_chart(&w_z)?;
    let d_pi = chart.d_of_chart(&w_pi)?;
    let d_min = d_z.min(d_pi);
    if d_min <= R::zero() {
        return Err(ChainError::NonPositiveDepth(d_min.to_f64_lossy()));
    }

    // Dense uniform anchors from π(z) to z.
    let step = R::of(0.5) * c * d_min.sqrt();
    let segments = if length <= R::of(1e-15) {
        0
    } else {
        (length / step).ceil().to_f64_lossy() as usize
    };
    let mut dense: Vec<CVec<R>> = Vec::with_capacity(segments + 1);
    for k in 0..=segments {
        let t = if segments == 0 {
            R::zero()
        } else {
            R::from_usize(k).expect("index") / R::from_usize(segments).expect("count")
        };
        let anchor = w_pi.add(&w_z.sub(&w_pi).scale_real(t));
        dense.push(anchor);
    }
    if segments == 0 {
        dense = vec![w_z.clone()];
    }

    let depth = |w: &CVec<R>| -> Result<R, ChainError> {
        let d = chart.d_of_chart(w)?;
        if d <= R::zero() {
            return Err(ChainError::NonPositiveDepth(d.to_f64_lossy()));
        }
        Ok(d)
    };
    let half_overlap = |a: &CVec<R>, b: &CVec<R>| -> Result<Option<CVec<R>>, ChainError> {
        let mid = a.add(b).scale_real(R::of(0.5));
        let pa = Polydisc::new(a.clone(), c, depth(a)?)?.half();
        let pb = Polydisc::new(b.clone(), c, depth(b)?)?.half();
        Ok((pa.contains(&mid) && pb.contains(&mid)).then_some(mid))
    };

    // Greedy merge: keep an anchor, jump to the farthest dense anchor whose
    // half polydisc still overlaps.
    let mut kept: Vec<CVec<R>> = vec![dense[0].clone()];
    let mut midpoints: Vec<CVec<R>> = Vec::new();
    let mut i = 0usize;
    while i + 1 < dense.len() {
        let mut next = i + 1;
        let mut witness = None;
        for j in (i + 1..dense.len()).rev() {
            if let Some(mid) = half_overlap(&dense[i], &dense[j])? {
                next = j;
                witness = Some(mid);
                break;
            }
        }
        let Some(mid) = witness else {
            return Err(ChainError::OverlapFailed { index: i });
        };
        kept.push(dense[next].clone());
        midpoints.push(mid);
        i = next;
    }

    let bound = Chain::length_bound(alpha, c);
    if kept.len() > bound {
        return Err(ChainError::TooLong {
            len: kept.len(),
            bound,
        });
    }

    // Hard anchor membership in A_{2α}; sampled polydisc containment.
    let mut polydiscs = Vec::with_capacity(kept.len());
    let mut inside = 0usize;
    let mut sampled = 0usize;
    for anchor in &kept {
        let ambient = chart.from_chart(anchor);
        if !wide.contains(&ambient) {
            return Err(ChainError::AnchorOutsideRegion(ambient.to_string()));
        }
        let p = Polydisc::new(anchor.clone(), c, depth(anchor)?)?;
        for probe in p.torus_points(R::of(0.9), 3) {
            sampled += 1;
            if wide.contains(&chart.from_chart(&probe)) {
                inside += 1;
            }
        }
        polydiscs.push(p);
    }

    Ok(Chain {
        polydiscs,
        overlap_midpoints: midpoints,
        alpha,
        c,
        containment_fraction: inside as f64 / sampled.max(1) as f64,
    })
}
