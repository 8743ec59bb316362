//! The four comparable Beurling-Carleson quantities of a closed set with
//! respect to a gauge, plus the diffuse and local integral criteria for
//! measures.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::circle::{Angle, AtomicMeasure, ClosedSet};
use crate::error::{Error, Result};
use crate::gauge::Gauge;
use crate::quad::{adaptive_simpson, integrate_edge_singular, tree_sum, Edge};
use crate::report::{DecadeProbe, Estimate, SeriesProbe};

/// Arc sum over the enumerated complementary arcs. Residual arcs contribute
/// an interval `[value, value + tail]`, the tail being what they would add if
/// each resolved to a single gap.
pub fn arc_sum(e: &ClosedSet, gauge: &Gauge) -> Estimate {
    let mut probe = SeriesProbe::new();
    for gap in e.gaps() {
        probe.add(SeriesProbe::bucket_of_length(gap.length()), gauge.phi(gap.length()));
    }
    let mut est = probe.finish();
    if !e.residual().is_empty() {
        est.unresolved = true;
        let res: f64 = e.residual().iter().map(|a| gauge.phi(a.length())).sum();
        if !est.diverging {
            est.tail += res;
        }
    }
    est
}

/// Distance integral `int phi1(dist(x, E)) dx` over the complement, evaluated
/// gap by gap: the distance to the set inside a gap is the distance to the
/// nearer endpoint, so each gap contributes `2 int_0^{|J|/2} phi1(s) ds`.
pub fn distance_integral(e: &ClosedSet, gauge: &Gauge) -> Estimate {
    let contributions: Vec<(f64, f64)> = e
        .gaps()
        .par_iter()
        .map(|gap| (gap.length(), gap_distance_integral(gauge, gap.length())))
        .collect();
    let mut probe = SeriesProbe::new();
    for (len, v) in contributions {
        probe.add(SeriesProbe::bucket_of_length(len), v);
    }
    let mut est = probe.finish();
    if !e.residual().is_empty() {
        est.unresolved = true;
        if !est.diverging {
            let res: f64 =
                e.residual().iter().map(|a| gap_distance_integral(gauge, a.length())).sum();
            est.tail += res;
        }
    }
    est
}

/// `2 int_0^{len/2} phi1(s) ds`, with the integrable singularity of `phi1`
/// at 0 handled by geometric refinement.
fn gap_distance_integral(gauge: &Gauge, len: f64) -> f64 {
    let half = 0.5 * len;
    let q = integrate_edge_singular(&|s| gauge.phi1(s), 0.0, half, Edge::Left, 70, 1e-12);
    2.0 * q.value
}

/// Dyadic arc sum `sum |I|^2 / lambda(|I|)` over dyadic arcs meeting the set,
/// truncated at `depth` generations.
pub fn dyadic_arc_sum(e: &ClosedSet, gauge: &Gauge, depth: u32) -> Result<Estimate> {
    let counts = e.meeting_counts(depth)?;
    let mut probe = SeriesProbe::new();
    for (n, &count) in counts.iter().enumerate() {
        let len = (0.5f64).powi(n as i32);
        probe.add(n as i64, count as f64 * gauge.dyadic_weight(len));
    }
    let mut est = probe.finish();
    est.unresolved = !e.residual().is_empty();
    Ok(est)
}

/// Privalov star integral realized over the dyadic region: each dyadic arc
/// meeting the set contributes the (flat-convention) integral of
/// `1/lambda(1-|z|)` over the top half of its Carleson box.
pub fn privalov_integral(e: &ClosedSet, gauge: &Gauge, depth: u32) -> Result<Estimate> {
    let counts = e.meeting_counts(depth)?;
    let mut probe = SeriesProbe::new();
    for (n, &count) in counts.iter().enumerate() {
        let len = (0.5f64).powi(n as i32);
        probe.add(n as i64, count as f64 * gauge.top_box_weight(len));
    }
    let mut est = probe.finish();
    est.unresolved = !e.residual().is_empty();
    Ok(est)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComparabilityReport {
    pub arc_sum: Estimate,
    pub distance_integral: Estimate,
    pub dyadic_arc_sum: Estimate,
    pub privalov_integral: Estimate,
    pub depth: u32,
    /// Largest pairwise ratio among the four partial values.
    pub max_ratio: Option<f64>,
}

pub fn comparability_report(e: &ClosedSet, gauge: &Gauge, depth: u32) -> Result<ComparabilityReport> {
    let a = arc_sum(e, gauge);
    let b = distance_integral(e, gauge);
    let c = dyadic_arc_sum(e, gauge, depth)?;
    let d = privalov_integral(e, gauge, depth)?;
    let vals = [a.value, b.value, c.value, d.value];
    let max_ratio = if vals.iter().all(|v| *v > 0.0) {
        let mut worst: f64 = 1.0;
        for &x in &vals {
            for &y in &vals {
                worst = worst.max(x / y);
            }
        }
        Some(worst)
    } else {
        None
    };
    Ok(ComparabilityReport {
        arc_sum: a,
        distance_integral: b,
        dyadic_arc_sum: c,
        privalov_integral: d,
        depth,
        max_ratio,
    })
}

/// Smallest scale probed by the integral criteria.
pub const CRITERION_EPS_MIN_LOG2: i32 = 40;

/// Diffuse criterion: classifies `int_0^1 eps / (lambda(eps) w(eps)) deps`
/// for a modulus of continuity `w`. Requires `w(eps)/eps` strictly decreasing.
pub fn diffuse_criterion(gauge: &Gauge, w: &dyn Fn(f64) -> f64) -> Result<Estimate> {
    for k in 0..CRITERION_EPS_MIN_LOG2 {
        let hi = (0.5f64).powi(k);
        let lo = 0.5 * hi;
        if w(lo) / lo <= w(hi) / hi {
            return Err(Error::MonotonicityViolation(hi));
        }
    }
    let mut probe = DecadeProbe::new();
    for k in 0..=CRITERION_EPS_MIN_LOG2 {
        let hi = (0.5f64).powi(k);
        let lo = 0.5 * hi;
        let piece = adaptive_simpson(
            &|eps| eps / (gauge.lambda(eps) * w(eps)),
            lo,
            hi,
            1e-12,
            24,
        );
        probe.push(piece.value);
    }
    Ok(probe.finish())
}

/// Local criterion at a point: `int_0^1 eps / (lambda(eps) mu(x, eps)) deps`
/// where `mu(x, eps)` is the mass of the arc of length `2 eps` centred at
/// `x`. For an atomic measure this is a step function of `eps`, so the
/// integral is evaluated piecewise between consecutive atom distances.
pub fn local_criterion(mu: &AtomicMeasure, x: Angle, gauge: &Gauge) -> Estimate {
    if mu.is_empty() {
        return Estimate::diverging(0.0);
    }
    let mut dist_mass: Vec<(f64, f64)> = mu
        .atoms()
        .map(|(pos, mass)| (x.distance(Angle::new(pos)), mass))
        .collect();
    dist_mass.sort_by(|a, b| a.0.total_cmp(&b.0));
    // breakpoints with cumulative masses
    let mut breaks: Vec<(f64, f64)> = Vec::new();
    let mut acc = 0.0;
    for (d, m) in dist_mass {
        acc += m;
        match breaks.last_mut() {
            Some((last_d, last_m)) if *last_d == d => *last_m = acc,
            _ => breaks.push((d, acc)),
        }
    }
    let diverging_at_zero = breaks[0].0 > 0.0;
    let mut pieces = Vec::new();
    for (i, &(d, m)) in breaks.iter().enumerate() {
        let hi = if i + 1 < breaks.len() { breaks[i + 1].0 } else { 1.0 };
        if hi > d {
            pieces.push(phi2_increment(gauge, d.max(f64::MIN_POSITIVE), hi) / m);
        }
    }
    let value = tree_sum(&pieces);
    if diverging_at_zero {
        let mut e = Estimate::diverging(value);
        e.value = value;
        e
    } else {
        Estimate::finite(value)
    }
}

/// `int_lo^hi eps / lambda(eps) deps`, closed-form for the standard gauges.
fn phi2_increment(gauge: &Gauge, lo: f64, hi: f64) -> f64 {
    match gauge {
        Gauge::EntropyLog => hi - lo,
        Gauge::PowerAlpha { alpha, .. } => {
            (1.0 - alpha) / alpha * (hi.powf(*alpha) - lo.powf(*alpha))
        }
        Gauge::Custom(_) => {
            adaptive_simpson(&|eps| eps / gauge.lambda(eps), lo, hi, 1e-12, 30).value
        }
    }
}
