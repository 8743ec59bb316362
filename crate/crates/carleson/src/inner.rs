//! The singular inner function of an atomic measure: Poisson extension,
//! boundary derivative, Hardy/Nevanlinna/Besov diagnostics and the Hoelder
//! bound machinery.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::circle::{whitney_decompose, Angle, Arc, AtomicMeasure, ClosedSet};
use crate::error::{Error, Result};
use crate::quad::{adaptive_simpson, tree_sum};
use crate::report::{Estimate, SeriesProbe};

const TAU: f64 = std::f64::consts::TAU;

/// A point strictly inside the unit disk.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiskPoint {
    re: f64,
    im: f64,
}

impl DiskPoint {
    pub fn new(re: f64, im: f64) -> Result<Self> {
        if re * re + im * im >= 1.0 {
            return Err(Error::InvalidParameter(format!("({re}, {im}) is not inside the disk")));
        }
        Ok(DiskPoint { re, im })
    }

    pub fn polar(r: f64, turns: f64) -> Result<Self> {
        let z = Complex64::from_polar(r, TAU * turns);
        DiskPoint::new(z.re, z.im)
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

/// Poisson integral `P_mu(z) = sum mass (1-|z|^2) / |zeta - z|^2`.
pub fn poisson(mu: &AtomicMeasure, z: Complex64) -> f64 {
    let one_minus = 1.0 - z.norm_sqr();
    let terms: Vec<f64> = mu
        .atoms()
        .map(|(pos, mass)| {
            let zeta = Angle::new(pos).to_complex();
            mass * one_minus / (zeta - z).norm_sqr()
        })
        .collect();
    tree_sum(&terms)
}

/// Exponent of the singular inner function:
/// `sum mass (zeta + z)/(zeta - z)`.
fn herglotz(mu: &AtomicMeasure, z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for (pos, mass) in mu.atoms() {
        let zeta = Angle::new(pos).to_complex();
        acc += mass * (zeta + z) / (zeta - z);
    }
    acc
}

/// `S_mu(z) = exp(-int (zeta+z)/(zeta-z) dmu)`.
pub fn s_mu(mu: &AtomicMeasure, z: Complex64) -> Complex64 {
    (-herglotz(mu, z)).exp()
}

/// `-ln |S_mu(z)|`, which equals the Poisson integral exactly.
pub fn neg_log_abs_s_mu(mu: &AtomicMeasure, z: Complex64) -> f64 {
    herglotz(mu, z).re
}

/// Logarithmic derivative `h(z) = S'_mu(z) / S_mu(z) = -2 sum mass zeta/(zeta-z)^2`.
pub fn s_mu_log_deriv(mu: &AtomicMeasure, z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for (pos, mass) in mu.atoms() {
        let zeta = Angle::new(pos).to_complex();
        let d = zeta - z;
        acc -= mass * 2.0 * zeta / (d * d);
    }
    acc
}

/// `|S'_mu(z)|` at an interior point, evaluated as `|h(z)| e^{-P_mu(z)}`.
pub fn s_mu_deriv_abs(mu: &AtomicMeasure, z: Complex64) -> f64 {
    let p = neg_log_abs_s_mu(mu, z);
    s_mu_log_deriv(mu, z).norm() * (-p).exp()
}

/// Boundary modulus of the derivative: `2 sum mass / |zeta - e^{i theta}|^2`,
/// infinite exactly when an atom sits at `theta`.
pub fn s_mu_deriv_boundary(mu: &AtomicMeasure, theta: Angle) -> f64 {
    let t = theta.turns();
    let terms: Vec<f64> = mu
        .atoms()
        .map(|(pos, mass)| {
            if pos == t {
                return f64::INFINITY;
            }
            // |zeta - z|^2 = 4 sin^2(pi (pos - t)) on the circle
            let s = (std::f64::consts::PI * (pos - t)).sin();
            2.0 * mass / (4.0 * s * s)
        })
        .collect();
    tree_sum(&terms)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum NormMethod {
    ClosedForm,
    WhitneyQuadrature,
    DyadicTop,
    GapSum,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NormReport {
    pub value: f64,
    pub tail: f64,
    pub diverging: bool,
    pub method: NormMethod,
    pub depth: u32,
}

impl NormReport {
    fn from_estimate(est: Estimate, method: NormMethod, depth: u32) -> Self {
        NormReport { value: est.value, tail: est.tail, diverging: est.diverging, method, depth }
    }

    pub fn classify(&self) -> crate::report::Class {
        if self.diverging {
            crate::report::Class::Diverging
        } else {
            crate::report::Class::Finite
        }
    }
}

/// Whitney refinement depth used for boundary integrals over gaps.
pub const WHITNEY_DEPTH: u32 = 40;

fn check_hp_exponent(p: f64) -> Result<()> {
    if !(p > 0.0 && p < 0.5) {
        return Err(Error::InvalidParameter(format!(
            "Hardy exponent p = {p} must lie in (0, 1/2)"
        )));
    }
    Ok(())
}

fn check_support(mu: &AtomicMeasure, e: &ClosedSet) -> Result<()> {
    for (pos, _) in mu.atoms() {
        if !e.contains(Angle::new(pos)) {
            return Err(Error::SupportNotContained(pos));
        }
    }
    Ok(())
}

/// Integrates `f(theta)` over a gap with Whitney refinement towards both
/// endpoints. The integrand may blow up at the gap endpoints, so the two
/// unresolved edge slivers are not sampled; their contribution is
/// extrapolated from the decay of the deepest resolved levels (for
/// `|S'|^p ~ dist^{-2p}` the per-level sums decay geometrically).
fn gap_integral(f: &(dyn Fn(f64) -> f64 + Sync), gap: &Arc, tol: f64) -> (f64, f64) {
    // tiles narrower than ~1000 ulps would collapse onto the singular gap
    // endpoints, so the refinement depth is capped by the gap's length
    let depth = ((gap.length() / 1e-13).log2().floor() as i64)
        .clamp(4, WHITNEY_DEPTH as i64) as u32;
    let tiles = match whitney_decompose(gap, depth) {
        Ok(t) => t,
        Err(_) => {
            // gap below resolution: midpoint value times length
            let v = f(gap.midpoint().turns());
            return (v * gap.length(), v * gap.length());
        }
    };
    let mut per_level: Vec<f64> = vec![0.0; depth as usize + 1];
    let mut interior = 0.0;
    for tile in tiles.iter().filter(|t| !t.remainder) {
        let a = tile.arc.left().turns();
        let b = a + tile.arc.length();
        let piece = adaptive_simpson(&|t| f(t), a, b, tol * tile.arc.length(), 16).value;
        interior += piece;
        per_level[tile.level as usize] += piece;
    }
    let deep: Vec<f64> = per_level.iter().rev().filter(|v| **v > 0.0).take(2).copied().collect();
    let tail = if deep.len() == 2 && deep[1] > 0.0 {
        let ratio = (deep[0] / deep[1]).min(0.9);
        deep[0] * ratio / (1.0 - ratio)
    } else {
        0.0
    };
    (interior + tail, tail)
}

/// Boundary Hardy norm `int |S'_mu|^p` over the complementary arcs of `e`.
pub fn hp_norm_boundary(mu: &AtomicMeasure, e: &ClosedSet, p: f64) -> Result<NormReport> {
    check_hp_exponent(p)?;
    if mu.is_empty() {
        return Ok(NormReport {
            value: 0.0,
            tail: 0.0,
            diverging: false,
            method: NormMethod::WhitneyQuadrature,
            depth: WHITNEY_DEPTH,
        });
    }
    let f = move |t: f64| s_mu_deriv_boundary(mu, Angle::new(t)).powf(p);
    let contributions: Vec<(f64, f64, f64)> = e
        .gaps()
        .par_iter()
        .map(|gap| {
            let (v, tail) = gap_integral(&f, gap, 1e-9);
            (gap.length(), v, tail)
        })
        .collect();
    let mut probe = SeriesProbe::new();
    let mut tail = 0.0;
    for &(len, v, t) in &contributions {
        probe.add(SeriesProbe::bucket_of_length(len), v);
        tail += t;
    }
    let mut est = probe.finish();
    est.tail += tail;
    est.unresolved = !e.residual().is_empty();
    Ok(NormReport::from_estimate(est, NormMethod::WhitneyQuadrature, WHITNEY_DEPTH))
}

/// The gap-sum test `sum u(z_J)^p |J|^{1-p}` with `z_J = (1-|J|/2) e^{i theta_J}`.
pub fn hp_test_sum(mu: &AtomicMeasure, e: &ClosedSet, p: f64) -> Result<NormReport> {
    check_hp_exponent(p)?;
    check_support(mu, e)?;
    let terms: Vec<(f64, f64)> = e
        .gaps()
        .par_iter()
        .map(|gap| {
            let u = poisson(mu, gap.anchor_point());
            (gap.length(), u.powf(p) * gap.length().powf(1.0 - p))
        })
        .collect();
    let mut probe = SeriesProbe::new();
    for &(len, v) in &terms {
        probe.add(SeriesProbe::bucket_of_length(len), v);
    }
    let mut est = probe.finish();
    est.unresolved = !e.residual().is_empty();
    Ok(NormReport::from_estimate(est, NormMethod::GapSum, 0))
}

/// Nevanlinna characteristic of the boundary derivative:
/// `int log+ |S'_mu|` over the complementary arcs.
pub fn nevanlinna_norm(mu: &AtomicMeasure, e: &ClosedSet) -> NormReport {
    if mu.is_empty() {
        return NormReport {
            value: 0.0,
            tail: 0.0,
            diverging: false,
            method: NormMethod::WhitneyQuadrature,
            depth: WHITNEY_DEPTH,
        };
    }
    let f = move |t: f64| s_mu_deriv_boundary(mu, Angle::new(t)).ln().max(0.0);
    let contributions: Vec<(f64, f64, f64)> = e
        .gaps()
        .par_iter()
        .map(|gap| {
            let (v, tail) = gap_integral(&f, gap, 1e-9);
            (gap.length(), v, tail)
        })
        .collect();
    let mut probe = SeriesProbe::new();
    let mut tail = 0.0;
    for &(len, v, t) in &contributions {
        probe.add(SeriesProbe::bucket_of_length(len), v);
        tail += t;
    }
    let mut est = probe.finish();
    est.tail += tail;
    est.unresolved = !e.residual().is_empty();
    NormReport::from_estimate(est, NormMethod::WhitneyQuadrature, WHITNEY_DEPTH)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HoelderFactors {
    /// `(sum u(z_J)^delta |J|)^{p/delta}`
    pub factor_a: f64,
    /// `(sum |J|^{1-q})^{(delta-p)/delta}`
    pub factor_b: f64,
    pub delta: f64,
    /// `factor_a * factor_b`, an upper bound for the gap-sum test.
    pub bound: f64,
    pub test_sum: f64,
}

/// The Hoelder split of the gap-sum test with exponents `delta/p` and
/// `delta/(delta-p)`, where `delta` solves `delta p / (delta - p) = q`.
pub fn cullen_hoelder_factors(
    mu: &AtomicMeasure,
    e: &ClosedSet,
    p: f64,
    q: f64,
) -> Result<HoelderFactors> {
    check_hp_exponent(p)?;
    if !(q > p / (1.0 - p)) {
        return Err(Error::InvalidParameter(format!(
            "q = {q} must exceed p/(1-p) = {}",
            p / (1.0 - p)
        )));
    }
    check_support(mu, e)?;
    let delta = q * p / (q - p);
    debug_assert!(delta > p && delta < 1.0);
    let parts: Vec<(f64, f64, f64)> = e
        .gaps()
        .par_iter()
        .map(|gap| {
            let len = gap.length();
            let u = poisson(mu, gap.anchor_point());
            (
                u.powf(delta) * len,
                len.powf(1.0 - q),
                u.powf(p) * len.powf(1.0 - p),
            )
        })
        .collect();
    let sum_a = tree_sum(&parts.iter().map(|t| t.0).collect::<Vec<_>>());
    let sum_b = tree_sum(&parts.iter().map(|t| t.1).collect::<Vec<_>>());
    let test_sum = tree_sum(&parts.iter().map(|t| t.2).collect::<Vec<_>>());
    let factor_a = sum_a.powf(p / delta);
    let factor_b = sum_b.powf((delta - p) / delta);
    Ok(HoelderFactors { factor_a, factor_b, delta, bound: factor_a * factor_b, test_sum })
}

/// Besov-type disk integral
/// `int |S'_mu(z)|^q (1-|z|^2)^{-p+(q-1)} dA(z)` by dyadic top-box midpoint
/// quadrature with pruning of boxes whose whole subtree is negligible.
pub fn besov_integral(mu: &AtomicMeasure, p: f64, q: f64, depth: u32) -> Result<NormReport> {
    check_hp_exponent(p)?;
    if !(1.0..=2.0).contains(&q) {
        return Err(Error::InvalidParameter(format!("Besov exponent q = {q} must lie in [1,2]")));
    }
    if depth > crate::circle::MAX_GENERATION {
        return Err(Error::GenerationCap(depth));
    }
    if mu.is_empty() {
        return Ok(NormReport {
            value: 0.0,
            tail: 0.0,
            diverging: false,
            method: NormMethod::DyadicTop,
            depth,
        });
    }
    let exponent = -p + (q - 1.0);
    let weight = move |len: f64| -> f64 {
        // flat convention: area of the top box with midpoint weight
        let t = 0.75 * len;
        (1.0 - (1.0 - t) * (1.0 - t)).powf(exponent) * len * 0.5 * len
    };
    // Subtree bound: |S'| <= |h| and |S| <= 1; if even the box-wide bound on
    // |h|^q integrated over the full Carleson box is negligible, prune.
    let mut per_generation = vec![0.0f64; depth as usize + 1];
    let tol_slice = 1e-14;
    let mut stack: Vec<(u32, u64)> = vec![(0, 0)];
    while let Some((generation, index)) = stack.pop() {
        let len = (0.5f64).powi(generation as i32);
        let arc = crate::circle::DyadicArc::new(generation, index).expect("valid arc");
        let h_bound = h_upper_bound(mu, &arc.to_arc());
        if h_bound.is_finite() {
            // whole Carleson box integral of bound^q (1-|z|^2)^exponent dA
            let box_mass = h_bound.powf(q) * len * (2.0 * len).powf(exponent + 1.0)
                / (exponent + 1.0).max(1e-9);
            if box_mass < tol_slice {
                continue;
            }
        }
        let mid = arc.to_arc().midpoint().turns();
        let z = Complex64::from_polar(1.0 - 0.75 * len, TAU * mid);
        let v = s_mu_deriv_abs(mu, z).powf(q) * weight(len);
        per_generation[generation as usize] += v;
        if generation < depth {
            stack.push((generation + 1, 2 * index));
            stack.push((generation + 1, 2 * index + 1));
        }
    }
    let mut probe = SeriesProbe::new();
    for (g, &v) in per_generation.iter().enumerate() {
        probe.add(g as i64, v);
    }
    Ok(NormReport::from_estimate(probe.finish(), NormMethod::DyadicTop, depth))
}

/// Upper bound for `|h|` over the Carleson box of `arc`; infinite when the
/// tripled arc carries mass.
fn h_upper_bound(mu: &AtomicMeasure, arc: &Arc) -> f64 {
    let tripled = arc.concentric(3.0);
    if mu.measure_of_arc(&tripled) > 0.0 {
        return f64::INFINITY;
    }
    let mut acc = 0.0;
    for (pos, mass) in mu.atoms() {
        let gap = tripled.distance_to(Angle::new(pos)) + tripled.length() / 3.0;
        let s = (std::f64::consts::PI * gap).sin();
        // |zeta - z| >= sin(pi g) / something comparable; the constant is
        // irrelevant for pruning
        acc += 2.0 * mass / (s * s).max(1e-300);
    }
    acc
}
