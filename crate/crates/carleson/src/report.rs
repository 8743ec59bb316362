//! Truncated sums and integrals are reported as an `Estimate`: the partial
//! value, an estimated tail and a divergence flag backed by growth evidence.

use serde::{Deserialize, Serialize};

use crate::quad::{fit_slope, tree_sum};

/// Divergence evidence threshold: a series whose total exceeds this multiple
/// of its first term while its increments keep growing is flagged.
pub const BLOWUP_FACTOR: f64 = 1e6;

/// Geometric-decay threshold: bucketed increments whose consecutive ratio
/// stays at or above this are treated as non-summable.
pub const GEOMETRIC_DIVERGENCE_RATIO: f64 = 0.97;

/// Decade-fit threshold: increments over dyadic decades decaying like
/// `k^{-sigma}` with `sigma` below this are treated as divergent.
pub const DECADE_SLOPE_THRESHOLD: f64 = 1.2;

/// A bucketed series shorter than this is taken at face value: there is no
/// scale trend to extrapolate from.
pub const MIN_BUCKETS_FOR_DIVERGENCE: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    /// Partial value accumulated up to the truncation.
    pub value: f64,
    /// Estimated contribution of the unresolved remainder (infinite when the
    /// evidence points at divergence).
    pub tail: f64,
    /// Growth evidence triggered one of the divergence rules.
    pub diverging: bool,
    /// Residual arcs (or similar unresolved structure) contribute an unknown
    /// amount beyond `tail`.
    pub unresolved: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Class {
    Finite,
    Diverging,
}

impl Estimate {
    pub fn finite(value: f64) -> Self {
        Estimate { value, tail: 0.0, diverging: false, unresolved: false }
    }

    pub fn diverging(partial: f64) -> Self {
        Estimate { value: partial, tail: f64::INFINITY, diverging: true, unresolved: false }
    }

    pub fn with_tail(value: f64, tail: f64) -> Self {
        Estimate { value, tail, diverging: false, unresolved: false }
    }

    pub fn classify(&self) -> Class {
        if self.diverging {
            Class::Diverging
        } else {
            Class::Finite
        }
    }

    pub fn upper(&self) -> f64 {
        self.value + self.tail
    }
}

/// Collects positive increments bucketed by a dyadic scale (finer scales get
/// larger bucket indices) and classifies the series by the decay of the
/// bucket sums.
#[derive(Debug, Default, Clone)]
pub struct SeriesProbe {
    buckets: Vec<(i64, f64)>,
}

impl SeriesProbe {
    pub fn new() -> Self {
        SeriesProbe::default()
    }

    pub fn add(&mut self, bucket: i64, term: f64) {
        if term == 0.0 {
            return;
        }
        match self.buckets.iter_mut().find(|(b, _)| *b == bucket) {
            Some((_, sum)) => *sum += term,
            None => self.buckets.push((bucket, term)),
        }
    }

    /// Bucket for a length scale: `floor(-log2 len)`.
    pub fn bucket_of_length(len: f64) -> i64 {
        (-len.log2()).floor() as i64
    }

    pub fn bucket_sums(&self) -> Vec<(i64, f64)> {
        let mut b = self.buckets.clone();
        b.sort_by_key(|&(k, _)| k);
        b
    }

    /// Geometric classification: least-squares fit of the decay of the
    /// bucket sums, extrapolating the tail if they decay and flagging
    /// divergence otherwise. Too few buckets means there is nothing to
    /// extrapolate, so short series are reported finite. The finest bucket is
    /// left out of the fit: for truncated constructions it is typically only
    /// partially filled.
    pub fn finish(&self) -> Estimate {
        let sums = self.bucket_sums();
        let terms: Vec<f64> = sums.iter().map(|&(_, v)| v).collect();
        let value = tree_sum(&terms);
        if terms.len() < MIN_BUCKETS_FOR_DIVERGENCE {
            return Estimate::finite(value);
        }
        let fit_end = terms.len() - 1;
        // fit over the trailing run of near-consecutive buckets: isolated
        // coarse buckets (for instance one O(1) complementary arc) carry no
        // scale trend
        let mut start = fit_end - 1;
        while start > 0 && fit_end - start < 8 && sums[start].0 - sums[start - 1].0 <= 2 {
            start -= 1;
        }
        if fit_end - start < 3 {
            return Estimate::finite(value);
        }
        let xs: Vec<f64> = sums[start..fit_end].iter().map(|&(b, _)| b as f64).collect();
        let ys: Vec<f64> =
            terms[start..fit_end].iter().map(|t| t.abs().max(1e-300).ln()).collect();
        // decay ratio per bucket index
        let ratio = fit_slope(&xs, &ys).exp();
        let first = terms[0];
        let blowup = value.abs() > BLOWUP_FACTOR * first.abs() && ratio >= 1.0;
        if ratio >= GEOMETRIC_DIVERGENCE_RATIO || blowup {
            return Estimate::diverging(value);
        }
        let r = ratio.clamp(0.0, 0.95);
        let tail = terms[fit_end].abs() * r / (1.0 - r);
        Estimate::with_tail(value, tail)
    }
}

/// Increments of an improper integral accumulated over dyadic decades
/// (`eps` in `[2^{-k-1}, 2^{-k}]` goes into decade `k`). Divergence shows up
/// as decade sums decaying slower than `k^{-1.2}` or not at all.
#[derive(Debug, Default, Clone)]
pub struct DecadeProbe {
    decades: Vec<f64>,
}

impl DecadeProbe {
    pub fn new() -> Self {
        DecadeProbe::default()
    }

    pub fn push(&mut self, decade_sum: f64) {
        self.decades.push(decade_sum);
    }

    pub fn finish(&self) -> Estimate {
        let value = tree_sum(&self.decades);
        let n = self.decades.len();
        if n < 6 {
            return Estimate::finite(value);
        }
        let first = self.decades.iter().find(|v| **v != 0.0).copied().unwrap_or(0.0);
        if first != 0.0 && value.abs() > BLOWUP_FACTOR * first.abs() {
            return Estimate::diverging(value);
        }
        // Fit T_k ~ k^{-sigma} over the second half of the decades.
        let start = n / 2;
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        for (k, &t) in self.decades.iter().enumerate().skip(start) {
            if t > 0.0 {
                xs.push(((k + 1) as f64).ln());
                ys.push(t.ln());
            }
        }
        if xs.len() < 3 {
            // increments died out entirely
            return Estimate::finite(value);
        }
        let sigma = -fit_slope(&xs, &ys);
        let last = *self.decades.last().unwrap();
        if sigma <= DECADE_SLOPE_THRESHOLD {
            return Estimate::diverging(value);
        }
        let tail = last.abs() * (n as f64) / (sigma - 1.0);
        Estimate::with_tail(value, tail)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_decay_converges() {
        let mut p = SeriesProbe::new();
        for k in 0..20 {
            p.add(k, (0.5f64).powi(k as i32));
        }
        let e = p.finish();
        assert!(!e.diverging);
        assert!((e.value - 2.0).abs() < 1e-4);
        assert!(e.tail < 1e-4);
    }

    #[test]
    fn constant_terms_diverge() {
        let mut p = SeriesProbe::new();
        for k in 0..20 {
            p.add(k, 1.0);
        }
        assert!(p.finish().diverging);
    }

    #[test]
    fn growing_terms_diverge() {
        let mut p = SeriesProbe::new();
        for k in 0..20 {
            p.add(k, (1.2f64).powi(k as i32));
        }
        assert!(p.finish().diverging);
    }

    #[test]
    fn decade_harmonic_diverges() {
        let mut p = DecadeProbe::new();
        for k in 1..=40 {
            p.push(1.0 / k as f64);
        }
        assert!(p.finish().diverging);
    }

    #[test]
    fn decade_square_converges() {
        let mut p = DecadeProbe::new();
        for k in 1..=40 {
            p.push(1.0 / (k as f64 * k as f64));
        }
        let e = p.finish();
        assert!(!e.diverging);
    }

    #[test]
    fn scaling_does_not_change_classification() {
        for scale in [1e-3, 1.0, 1e3] {
            let mut div = DecadeProbe::new();
            let mut conv = DecadeProbe::new();
            for k in 1..=40 {
                div.push(scale / k as f64);
                conv.push(scale / (k as f64).powi(2));
            }
            assert!(div.finish().diverging);
            assert!(!conv.finish().diverging);
        }
    }
}
