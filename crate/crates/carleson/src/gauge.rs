//! Regular gauge functions: `phi(t) = t * phi1(t)` with
//! `phi1(t) = integral_t^1 ds / lambda(s)`, their doubling and summability
//! constants, and dyadic grids adapted to a gauge.

use serde::{Deserialize, Serialize};

use crate::circle::MAX_GENERATION;
use crate::error::{Error, Result};
use crate::quad::adaptive_simpson;

/// For the power gauge the identity `phi(t) = t * phi1(t)` holds exactly only
/// for `phi(t) = t^alpha - t`; the paper-facing normalization is `t^alpha`.
/// Both are supported; `Nominal` is the default.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
pub enum PhiVariant {
    /// `phi(t) = t^alpha`, `phi1(t) = t^{alpha-1}`.
    #[default]
    Nominal,
    /// `phi(t) = t^alpha - t`, `phi1(t) = t^{alpha-1} - 1` (exact (G1) identity).
    Exact,
}

/// Tabulated `lambda` on log-spaced knots with cached `phi1` values.
#[derive(Debug, Clone)]
pub struct LambdaTable {
    /// Knots in decreasing order, starting at 1.
    ts: Vec<f64>,
    lambdas: Vec<f64>,
    /// `phi1(ts[i]) = integral_{ts[i]}^1 ds/lambda(s)`.
    phi1: Vec<f64>,
}

const KNOTS_PER_DECADE: f64 = 64.0;
const PHI1_ABS_TOL: f64 = 1e-10;

impl LambdaTable {
    /// Builds a table from sample points `(t, lambda)`. Knots are re-laid on
    /// a log grid with 64 knots per decade from 1 down to the smallest input.
    pub fn from_samples(samples: &[(f64, f64)]) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::InvalidParameter("lambda table needs at least 2 samples".into()));
        }
        let mut pts: Vec<(f64, f64)> = samples.to_vec();
        for &(t, l) in &pts {
            if !(t > 0.0 && t <= 1.0) || !(l > 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "lambda sample (t={t}, lambda={l}) out of range"
                )));
            }
        }
        pts.sort_by(|a, b| b.0.total_cmp(&a.0));
        let t_min = pts.last().unwrap().0;
        let interp = move |t: f64| -> f64 {
            // log-linear interpolation in the user samples
            let lt = t.ln();
            if t >= pts[0].0 {
                return pts[0].1;
            }
            for w in pts.windows(2) {
                if t >= w[1].0 {
                    let (t0, l0) = w[0];
                    let (t1, l1) = w[1];
                    let s = (lt - t0.ln()) / (t1.ln() - t0.ln());
                    return (l0.ln() * (1.0 - s) + l1.ln() * s).exp();
                }
            }
            // power-law continuation below the table
            let n = pts.len();
            let (t0, l0) = pts[n - 2];
            let (t1, l1) = pts[n - 1];
            let slope = (l1.ln() - l0.ln()) / (t1.ln() - t0.ln());
            (l1.ln() + slope * (lt - t1.ln())).exp()
        };
        Self::from_fn(&interp, t_min)
    }

    /// Samples `lambda` on the standard knot grid down to `t_min` and caches
    /// the `phi1` quadrature.
    pub fn from_fn(lambda: &dyn Fn(f64) -> f64, t_min: f64) -> Result<Self> {
        if !(t_min > 0.0 && t_min < 1.0) {
            return Err(Error::InvalidParameter(format!("t_min {t_min} out of (0,1)")));
        }
        let decades = (1.0 / t_min).log10();
        let n = (decades * KNOTS_PER_DECADE).ceil() as usize + 1;
        let mut ts = Vec::with_capacity(n);
        for i in 0..n {
            let frac = i as f64 / (n - 1) as f64;
            ts.push((frac * t_min.ln()).exp());
        }
        ts[0] = 1.0;
        *ts.last_mut().unwrap() = t_min;
        let lambdas: Vec<f64> = ts.iter().map(|&t| lambda(t)).collect();
        for (&t, &l) in ts.iter().zip(&lambdas) {
            if !(l > 0.0) || !l.is_finite() {
                return Err(Error::InvalidParameter(format!("lambda({t}) = {l} is not positive")));
            }
        }
        let mut table = LambdaTable { ts, lambdas, phi1: Vec::new() };
        table.build_phi1_cache();
        Ok(table)
    }

    fn build_phi1_cache(&mut self) {
        let mut acc = 0.0;
        let mut phi1 = Vec::with_capacity(self.ts.len());
        phi1.push(0.0);
        for i in 1..self.ts.len() {
            let (hi, lo) = (self.ts[i - 1], self.ts[i]);
            let piece =
                adaptive_simpson(&|s| 1.0 / self.lambda(s), lo, hi, PHI1_ABS_TOL / 8.0, 20);
            acc += piece.value;
            phi1.push(acc);
        }
        self.phi1 = phi1;
    }

    pub fn t_min(&self) -> f64 {
        *self.ts.last().unwrap()
    }

    /// Log-linear interpolation of the tabulated `lambda` (power-law
    /// continuation below the bottom knot).
    pub fn lambda(&self, t: f64) -> f64 {
        if t >= 1.0 {
            return self.lambdas[0];
        }
        let n = self.ts.len();
        if t <= self.ts[n - 1] {
            let (t0, l0) = (self.ts[n - 2], self.lambdas[n - 2]);
            let (t1, l1) = (self.ts[n - 1], self.lambdas[n - 1]);
            let slope = (l1.ln() - l0.ln()) / (t1.ln() - t0.ln());
            return (l1.ln() + slope * (t.ln() - t1.ln())).exp();
        }
        // binary search: ts is decreasing
        let idx = self.ts.partition_point(|&knot| knot > t);
        let (t0, l0) = (self.ts[idx - 1], self.lambdas[idx - 1]);
        let (t1, l1) = (self.ts[idx], self.lambdas[idx]);
        let s = (t.ln() - t0.ln()) / (t1.ln() - t0.ln());
        (l0.ln() * (1.0 - s) + l1.ln() * s).exp()
    }

    pub fn phi1(&self, t: f64) -> f64 {
        if t >= 1.0 {
            return 0.0;
        }
        let n = self.ts.len();
        if t < self.ts[n - 1] {
            let piece =
                adaptive_simpson(&|s| 1.0 / self.lambda(s), t, self.ts[n - 1], PHI1_ABS_TOL, 30);
            return self.phi1[n - 1] + piece.value;
        }
        let idx = self.ts.partition_point(|&knot| knot > t);
        let piece = adaptive_simpson(&|s| 1.0 / self.lambda(s), t, self.ts[idx - 1], PHI1_ABS_TOL, 24);
        self.phi1[idx - 1] + piece.value
    }
}

/// A regular gauge function.
#[derive(Debug, Clone)]
pub enum Gauge {
    /// `phi(t) = t log(1/t)`, `lambda(t) = t`.
    EntropyLog,
    /// `phi(t) = t^alpha` (or `t^alpha - t`), `lambda(t) = t^{2-alpha}/(1-alpha)`.
    PowerAlpha { alpha: f64, variant: PhiVariant },
    /// `lambda` tabulated; `phi1` by quadrature.
    Custom(LambdaTable),
}

impl Gauge {
    pub fn entropy() -> Self {
        Gauge::EntropyLog
    }

    pub fn power(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::InvalidParameter(format!("alpha {alpha} must lie in (0,1)")));
        }
        Ok(Gauge::PowerAlpha { alpha, variant: PhiVariant::Nominal })
    }

    pub fn power_exact(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::InvalidParameter(format!("alpha {alpha} must lie in (0,1)")));
        }
        Ok(Gauge::PowerAlpha { alpha, variant: PhiVariant::Exact })
    }

    pub fn custom(table: LambdaTable) -> Self {
        Gauge::Custom(table)
    }

    pub fn name(&self) -> String {
        match self {
            Gauge::EntropyLog => "entropy".into(),
            Gauge::PowerAlpha { alpha, variant } => match variant {
                PhiVariant::Nominal => format!("power({alpha})"),
                PhiVariant::Exact => format!("power-exact({alpha})"),
            },
            Gauge::Custom(_) => "custom".into(),
        }
    }

    /// `phi(t)` for `t` in `[0, 1]`.
    pub fn phi(&self, t: f64) -> f64 {
        debug_assert!((0.0..=1.0).contains(&t));
        if t == 0.0 {
            return 0.0;
        }
        match self {
            Gauge::EntropyLog => -t * t.ln(),
            Gauge::PowerAlpha { alpha, variant } => match variant {
                PhiVariant::Nominal => t.powf(*alpha),
                PhiVariant::Exact => t.powf(*alpha) - t,
            },
            Gauge::Custom(table) => t * table.phi1(t),
        }
    }

    /// `phi1(t) = integral_t^1 ds/lambda(s)` for `t` in `(0, 1]`.
    pub fn phi1(&self, t: f64) -> f64 {
        debug_assert!(t > 0.0 && t <= 1.0);
        match self {
            Gauge::EntropyLog => -t.ln(),
            Gauge::PowerAlpha { alpha, variant } => match variant {
                PhiVariant::Nominal => t.powf(alpha - 1.0),
                PhiVariant::Exact => t.powf(alpha - 1.0) - 1.0,
            },
            Gauge::Custom(table) => table.phi1(t),
        }
    }

    /// `lambda(t)` for `t` in `(0, 1]`.
    pub fn lambda(&self, t: f64) -> f64 {
        debug_assert!(t > 0.0);
        match self {
            Gauge::EntropyLog => t,
            Gauge::PowerAlpha { alpha, .. } => t.powf(2.0 - alpha) / (1.0 - alpha),
            Gauge::Custom(table) => table.lambda(t),
        }
    }

    /// Weight of one dyadic arc in the dyadic arc sum: `|I|^2 / lambda(|I|)`.
    pub fn dyadic_weight(&self, len: f64) -> f64 {
        len * len / self.lambda(len)
    }

    /// Flat-convention integral of `1/lambda(1-|z|)` over the top half of the
    /// Carleson box on an arc of length `len`.
    pub fn top_box_weight(&self, len: f64) -> f64 {
        len * (self.phi1(0.5 * len) - self.phi1(len))
    }
}

/// Subsequence of dyadic generations along which `phi1` grows by a bounded
/// factor, together with the certified two-sided constants.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PhiDyadicGrid {
    pub generations: Vec<u32>,
    pub c_lo: f64,
    pub c_hi: f64,
}

impl PhiDyadicGrid {
    pub fn len(&self) -> usize {
        self.generations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generations.is_empty()
    }
}

/// Builds the gauge-adapted grid: `n_j = 2^j` for the entropy gauge,
/// `n_j = j` for power gauges, and a greedy subdivision for custom tables.
/// The scaling constants are certified by evaluating the defining integrals.
pub fn build_grid(gauge: &Gauge, depth: u32) -> Result<PhiDyadicGrid> {
    if depth < 1 {
        return Err(Error::InvalidParameter("grid depth must be at least 1".into()));
    }
    let generations: Vec<u32> = match gauge {
        Gauge::EntropyLog => {
            let mut gens = Vec::new();
            for j in 1..=depth {
                let g = 1u64 << j;
                if g > MAX_GENERATION as u64 {
                    return Err(Error::GenerationCap(g.min(u32::MAX as u64) as u32));
                }
                gens.push(g as u32);
            }
            gens
        }
        Gauge::PowerAlpha { .. } => {
            if depth > MAX_GENERATION {
                return Err(Error::GenerationCap(depth));
            }
            (1..=depth).collect()
        }
        Gauge::Custom(table) => {
            let mut gens = vec![1u32];
            while gens.len() < depth as usize {
                let cur = *gens.last().unwrap();
                let target = gauge.phi1((0.5f64).powi(cur as i32));
                let mut chosen = None;
                for m in (cur + 1)..=MAX_GENERATION {
                    let step = gauge.phi1((0.5f64).powi(m as i32)) - target;
                    if step >= target {
                        chosen = Some(m);
                        break;
                    }
                }
                match chosen {
                    Some(m) => gens.push(m),
                    None => {
                        return Err(Error::GridExhausted(format!(
                            "phi1 gains less than phi1(2^-{cur}) by generation {MAX_GENERATION} \
                             (table floor {:.3e})",
                            table.t_min()
                        )))
                    }
                }
            }
            gens
        }
    };
    let mut c_lo = f64::INFINITY;
    let mut c_hi: f64 = 0.0;
    for w in generations.windows(2) {
        let coarse = (0.5f64).powi(w[0] as i32);
        let fine = (0.5f64).powi(w[1] as i32);
        let denom = gauge.phi1(coarse);
        let ratio = (gauge.phi1(fine) - denom) / denom;
        c_lo = c_lo.min(ratio);
        c_hi = c_hi.max(ratio);
    }
    if generations.len() < 2 {
        c_lo = 1.0;
        c_hi = 1.0;
    }
    Ok(PhiDyadicGrid { generations, c_lo, c_hi })
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct RegularityCeilings {
    pub g2: f64,
    pub g3: f64,
}

impl Default for RegularityCeilings {
    fn default() -> Self {
        RegularityCeilings { g2: 64.0, g3: 1e4 }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RegularityReport {
    /// Extremes of `lambda(theta t) / lambda(t)` over `theta` in `[1,2]`.
    pub g2_min: f64,
    pub g2_max: f64,
    /// Smallest empirical constant with `sum_k phi(2^-k t) <= C phi(t)`.
    pub g3_constant: f64,
    /// `phi` is increasing on `[0, t*]` for this sampled `t*`.
    pub increasing_up_to: f64,
    pub violations: Vec<String>,
}

/// Samples the doubling and geometric-sum conditions on a log grid.
pub fn check_regularity(gauge: &Gauge, ceilings: RegularityCeilings) -> RegularityReport {
    let mut g2_min = f64::INFINITY;
    let mut g2_max: f64 = 0.0;
    for k in 1..=40 {
        let t = (0.5f64).powi(k);
        for i in 0..=16 {
            let theta = (2.0f64).powf(i as f64 / 16.0);
            if theta * t > 1.0 {
                continue;
            }
            let ratio = gauge.lambda(theta * t) / gauge.lambda(t);
            g2_min = g2_min.min(ratio);
            g2_max = g2_max.max(ratio);
        }
    }
    let mut g3: f64 = 0.0;
    for k in 1..=40 {
        let t = (0.5f64).powi(k);
        let phi_t = gauge.phi(t);
        if phi_t == 0.0 {
            continue;
        }
        let mut sum = 0.0;
        for j in 0..=300 {
            sum += gauge.phi(t * (0.5f64).powi(j));
        }
        g3 = g3.max(sum / phi_t);
    }
    let mut increasing_up_to = 1.0;
    let mut prev = 0.0;
    for i in 1..=1000 {
        let t = i as f64 / 1000.0;
        let v = gauge.phi(t);
        if v < prev {
            increasing_up_to = (i - 1) as f64 / 1000.0;
            break;
        }
        prev = v;
    }
    let mut violations = Vec::new();
    if g2_max > ceilings.g2 || g2_min < 1.0 / ceilings.g2 {
        violations.push(format!("doubling constants ({g2_min:.3}, {g2_max:.3}) exceed ceiling"));
    }
    if g3 > ceilings.g3 {
        violations.push(format!("geometric sum constant {g3:.3} exceeds ceiling"));
    }
    RegularityReport { g2_min, g2_max, g3_constant: g3, increasing_up_to, violations }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_entropy_values() {
        let g = Gauge::entropy();
        assert_eq!(g.phi(1.0), 0.0);
        assert_eq!(g.phi(0.0), 0.0);
        assert!((g.phi(0.5) - 0.5 * (2.0f64).ln()).abs() < 1e-15);
    }

    #[test]
    fn phi_power_nominal() {
        let g = Gauge::power(0.5).unwrap();
        assert!((g.phi(0.25) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn lambda_values() {
        let g = Gauge::entropy();
        assert_eq!(g.lambda(0.25), 0.25);
        let g = Gauge::power(0.5).unwrap();
        assert!((g.lambda(0.25) - 0.25f64.powf(1.5) / 0.5).abs() < 1e-15);
        assert!((g.lambda(0.25) - 0.25).abs() < 1e-15);
    }

    #[test]
    fn power_exact_phi1_identity() {
        // (G1) as an identity: phi1(t) = integral of 1/lambda, phi = t*phi1
        let g = Gauge::power_exact(0.5).unwrap();
        for &t in &[0.5, 0.1, 1e-4] {
            let phi1 = g.phi1(t);
            assert!((g.phi(t) - t * phi1).abs() <= 1e-12 * g.phi(t).abs().max(1e-12));
        }
    }

    #[test]
    fn entropy_grid_generations() {
        let g = Gauge::entropy();
        let grid = build_grid(&g, 4).unwrap();
        assert_eq!(grid.generations, vec![2, 4, 8, 16]);
        // scaling holds with constant exactly 1 for lambda(t)=t
        assert!((grid.c_lo - 1.0).abs() < 1e-12);
        assert!((grid.c_hi - 1.0).abs() < 1e-12);
        assert!(build_grid(&g, 6).is_err());
    }

    #[test]
    fn power_grid_generations() {
        let g = Gauge::power(0.7).unwrap();
        let grid = build_grid(&g, 5).unwrap();
        assert_eq!(grid.generations, vec![1, 2, 3, 4, 5]);
        assert!(grid.c_lo > 0.0);
        assert!(grid.c_hi / grid.c_lo <= 8.0);
    }

    #[test]
    fn power_grid_constant_ratio_bound() {
        for alpha in [0.3, 0.5, 0.7] {
            let g = Gauge::power(alpha).unwrap();
            let grid = build_grid(&g, 20).unwrap();
            assert!(grid.c_lo > 0.0, "alpha={alpha}");
            assert!(grid.c_hi / grid.c_lo <= 8.0, "alpha={alpha}: {:?}", (grid.c_lo, grid.c_hi));
        }
    }

    #[test]
    fn regularity_entropy() {
        let rep = check_regularity(&Gauge::entropy(), RegularityCeilings::default());
        assert!((rep.g2_min - 1.0).abs() < 1e-12);
        assert!((rep.g2_max - 2.0).abs() < 1e-12);
        assert!(rep.g3_constant.is_finite());
        // direct summation oracle at t = 1/2: 2 + 2 ln2/ln2 = 4
        assert!((rep.g3_constant - 4.0).abs() < 1e-6, "got {}", rep.g3_constant);
        assert!(rep.violations.is_empty());
        // phi = t log(1/t) increases up to 1/e
        assert!((rep.increasing_up_to - (-1.0f64).exp()).abs() < 2e-3);
    }

    #[test]
    fn regularity_power_geometric_series() {
        for alpha in [0.3, 0.5, 0.7] {
            let rep =
                check_regularity(&Gauge::power(alpha).unwrap(), RegularityCeilings::default());
            let exact = 1.0 / (1.0 - (2.0f64).powf(-alpha));
            assert!(
                (rep.g3_constant - exact).abs() < 1e-9 * exact,
                "alpha={alpha}: {} vs {}",
                rep.g3_constant,
                exact
            );
        }
    }

    #[test]
    fn custom_table_matches_entropy_closed_form() {
        let table = LambdaTable::from_fn(&|t| t, (0.5f64).powi(40)).unwrap();
        let g = Gauge::custom(table);
        for k in 1..=40 {
            let t = (0.5f64).powi(k);
            let expect = -(t.ln());
            let got = g.phi1(t);
            assert!(
                (got - expect).abs() <= 1e-6 * expect.abs(),
                "k={k}: {got} vs {expect}"
            );
        }
    }

    #[test]
    fn custom_table_matches_power_closed_form() {
        let alpha = 0.5;
        let table =
            LambdaTable::from_fn(&|t: f64| t.powf(2.0 - alpha) / (1.0 - alpha), (0.5f64).powi(40))
                .unwrap();
        let g = Gauge::custom(table);
        for k in 1..=40 {
            let t = (0.5f64).powi(k);
            let expect = t.powf(alpha - 1.0) - 1.0;
            assert!(
                (g.phi1(t) - expect).abs() <= 1e-6 * expect.abs().max(1.0),
                "k={k}"
            );
        }
    }

    #[test]
    fn custom_grid_greedy_tracks_entropy() {
        let table = LambdaTable::from_fn(&|t| t, (0.5f64).powi(46)).unwrap();
        let g = Gauge::custom(table);
        let grid = build_grid(&g, 5).unwrap();
        // greedy doubling of phi1 gives n_{j+1} = 2 n_j for lambda(t) = t, up
        // to one generation of quadrature slack at the exact-equality boundary
        assert_eq!(grid.generations[0], 1);
        for w in grid.generations.windows(2) {
            assert!(w[1] == 2 * w[0] || w[1] == 2 * w[0] + 1, "{:?}", grid.generations);
        }
        assert!(grid.c_lo > 0.9 && grid.c_hi < 1.6, "{:?}", (grid.c_lo, grid.c_hi));
    }

    #[test]
    fn phi1_decreasing() {
        // phi1 decreases in t, so it grows along t = 2^{-k}
        for g in [Gauge::entropy(), Gauge::power(0.4).unwrap()] {
            let mut prev = 0.0;
            for k in 1..=40 {
                let v = g.phi1((0.5f64).powi(k));
                assert!(v >= prev, "{} at k={k}", g.name());
                prev = v;
            }
        }
    }

    #[test]
    fn lambda_doubling_on_log_grid() {
        for g in [Gauge::entropy(), Gauge::power(0.5).unwrap()] {
            for k in 1..=30 {
                let t = (0.5f64).powi(k);
                let ratio = g.lambda(2.0 * t) / g.lambda(t);
                assert!(ratio >= 1.0 && ratio <= 4.0);
            }
        }
    }
}
