//! Radial machinery for the semilinear equation `Delta u = u^p (u > 0)`:
//! half-plane blow-up constants, the maximal solution on the disk by
//! shooting, the scalar restoring map of the dampened maximal solution, and
//! the tent-height sums of the sawtooth construction.

use serde::{Deserialize, Serialize};

use crate::circle::{Angle, Arc, AtomicMeasure, ClosedSet};
use crate::error::{Error, Result};
use crate::inner::poisson;
use crate::quad::tree_sum;

/// Blow-up exponents and coefficient for `Delta u = u^p`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct PdeParams {
    pub p: f64,
    /// `alpha = (p-3)/(p-1)`; in `(0,1)` for `p > 3`.
    pub alpha: f64,
    /// Coefficient of the half-plane solution `C (1-|z|)^{alpha-1}`, from
    /// `C^{p-1} = 2(p+1)/(p-1)^2`.
    pub c_alpha: f64,
}

pub fn params_of_p(p: f64) -> Result<PdeParams> {
    if !(p > 1.0) {
        return Err(Error::InvalidParameter(format!("p = {p} must exceed 1")));
    }
    let alpha = (p - 3.0) / (p - 1.0);
    let c_alpha = (2.0 * (p + 1.0) / ((p - 1.0) * (p - 1.0))).powf(1.0 / (p - 1.0));
    let params = PdeParams { p, alpha, c_alpha };
    // substitution oracle: u(y) = C y^{alpha-1} must satisfy u'' = u^p
    for k in 0..=24 {
        let y = (10.0f64).powf(-6.0 + 6.0 * k as f64 / 24.0);
        let r = params.halfplane_residual(y);
        if r.abs() > 1e-10 {
            return Err(Error::InvalidParameter(format!(
                "half-plane residual {r:.3e} at y={y:.3e} for p={p}"
            )));
        }
    }
    Ok(params)
}

impl PdeParams {
    /// Relative residual of `u'' - u^p` for `u(y) = C y^{alpha-1}`.
    pub fn halfplane_residual(&self, y: f64) -> f64 {
        let u = self.c_alpha * y.powf(self.alpha - 1.0);
        let upp = self.c_alpha * (self.alpha - 1.0) * (self.alpha - 2.0) * y.powf(self.alpha - 3.0);
        (upp - u.powf(self.p)) / u.powf(self.p)
    }
}

/// Radial samples of the maximal solution together with the normalized
/// boundary trace `u(r) (1-r)^{1-alpha}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RadialSolution {
    pub u0: f64,
    pub samples: Vec<(f64, f64)>,
    pub normalized: Vec<(f64, f64)>,
    /// Shooting bracket for the central value.
    pub u0_bracket: (f64, f64),
}

const BLOWUP_VALUE: f64 = 1e9;
const STEP_FLOOR: f64 = 1e-14;

/// Integrates `u'' + u'/r = u^p`, `u(0) = u0`, `u'(0) = 0`, reporting the
/// radius where `u` crosses `BLOWUP_VALUE` (or `None` if it stays below
/// through `r_end`), and recording samples at the requested radii.
fn integrate_radial(
    p: f64,
    u0: f64,
    r_end: f64,
    record: &[f64],
    samples: &mut Vec<(f64, f64)>,
) -> Option<f64> {
    // series start away from the coordinate singularity:
    // u ~ u0 + u0^p r^2/4
    let mut r = 1e-8;
    let mut u = u0 + u0.powf(p) * r * r / 4.0;
    let mut v = u0.powf(p) * r / 2.0;
    let mut h = 1e-6f64;
    let mut next_record = 0usize;
    let f = |r: f64, u: f64, v: f64| -> (f64, f64) {
        let upos = if u > 0.0 { u.powf(p) } else { 0.0 };
        (v, upos - v / r)
    };
    while r < r_end {
        if u > BLOWUP_VALUE {
            return Some(r);
        }
        while next_record < record.len() && record[next_record] <= r {
            samples.push((record[next_record], u));
            next_record += 1;
        }
        let h_eff = h.min(r_end - r).max(STEP_FLOOR);
        // classic RK4 with an embedded half-step error estimate
        let step = |r0: f64, u0: f64, v0: f64, h: f64| -> (f64, f64) {
            let (k1u, k1v) = f(r0, u0, v0);
            let (k2u, k2v) = f(r0 + 0.5 * h, u0 + 0.5 * h * k1u, v0 + 0.5 * h * k1v);
            let (k3u, k3v) = f(r0 + 0.5 * h, u0 + 0.5 * h * k2u, v0 + 0.5 * h * k2v);
            let (k4u, k4v) = f(r0 + h, u0 + h * k3u, v0 + h * k3v);
            (
                u0 + h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u),
                v0 + h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v),
            )
        };
        let (u_full, v_full) = step(r, u, v, h_eff);
        let (u_half, v_half) = step(r, u, v, 0.5 * h_eff);
        let (u_two, v_two) = step(r + 0.5 * h_eff, u_half, v_half, 0.5 * h_eff);
        if !u_two.is_finite() || !v_two.is_finite() {
            return Some(r);
        }
        let err = ((u_full - u_two).abs() / u.abs().max(1.0))
            .max((v_full - v_two).abs() / v.abs().max(1.0));
        let tol = 1e-12;
        if err > tol && h_eff > STEP_FLOOR {
            h = (h_eff * 0.5).max(STEP_FLOOR);
            continue;
        }
        r += h_eff;
        u = u_two;
        v = v_two;
        if err < 0.03 * tol {
            h = h_eff * 2.0;
        }
        if u > BLOWUP_VALUE {
            return Some(r);
        }
        if h_eff <= STEP_FLOOR && u > 1e6 {
            // stalled against the step floor while growing fast
            return Some(r);
        }
    }
    while next_record < record.len() {
        samples.push((record[next_record], u));
        next_record += 1;
    }
    None
}

/// Maximal solution on the unit disk by bisection on the central value: the
/// blow-up radius is decreasing in `u(0)`, so bisect until it lands within
/// `1e-8` of 1.
pub fn maximal_solution_radial(p: f64, r_grid: &[f64]) -> Result<RadialSolution> {
    if !(p > 1.0) {
        return Err(Error::InvalidParameter(format!("p = {p} must exceed 1")));
    }
    let params = params_of_p(p)?;
    let r_target = 1.0 - 1e-8;
    let blows_early = |u0: f64| -> bool {
        let mut sink = Vec::new();
        matches!(integrate_radial(p, u0, r_target, &[], &mut sink), Some(r) if r < r_target)
    };
    // bracket the central value
    let mut lo = 1.0;
    while blows_early(lo) {
        lo *= 0.5;
        if lo < 1e-12 {
            return Err(Error::ShootingFailure("no lower bracket for u(0)".into()));
        }
    }
    let mut hi = lo.max(1.0);
    while !blows_early(hi) {
        hi *= 2.0;
        if hi > 1e12 {
            return Err(Error::ShootingFailure("no upper bracket for u(0)".into()));
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        if blows_early(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let u0 = lo; // largest central value that survives to r_target
    let mut samples = Vec::new();
    let mut grid: Vec<f64> = r_grid.to_vec();
    grid.sort_by(f64::total_cmp);
    integrate_radial(p, u0, r_target, &grid, &mut samples);
    let normalized = samples
        .iter()
        .map(|&(r, u)| (r, u * (1.0 - r).powf(1.0 - params.alpha)))
        .collect();
    Ok(RadialSolution { u0, samples, normalized, u0_bracket: (lo, hi) })
}

/// One-step recovery factor of the dampened maximal solution across a dyadic
/// shell: `b(a) = ((1 + a^{1/(alpha-1)}) / 2)^{alpha-1}`.
pub fn restoring_constant(a: f64, alpha: f64) -> Result<f64> {
    if !(a > 0.0 && a <= 1.0) {
        return Err(Error::InvalidParameter(format!("a = {a} must lie in (0, 1]")));
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidParameter(format!("alpha = {alpha} must lie in (0,1)")));
    }
    Ok(((1.0 + a.powf(1.0 / (alpha - 1.0))) / 2.0).powf(alpha - 1.0))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RestoringTrajectory {
    pub values: Vec<f64>,
    pub converged: bool,
    pub iterations: usize,
}

/// Iterates the restoring map from `a0` until `1 - tol` (or `max_iter`).
pub fn restoring_iteration(
    a0: f64,
    alpha: f64,
    max_iter: usize,
    tol: f64,
) -> Result<RestoringTrajectory> {
    let mut values = vec![a0];
    let mut a = a0;
    for i in 0..max_iter {
        a = restoring_constant(a, alpha)?;
        values.push(a);
        if a >= 1.0 - tol {
            return Ok(RestoringTrajectory { values, converged: true, iterations: i + 1 });
        }
    }
    Ok(RestoringTrajectory { iterations: values.len() - 1, values, converged: false })
}

/// Tent heights over the complementary arcs:
/// `h(I) = psi * min(|I|, |I|^alpha / u(z_I))` with `u` the Poisson integral.
pub fn tent_heights(
    e: &ClosedSet,
    mu: &AtomicMeasure,
    params: &PdeParams,
    psi: f64,
) -> Result<Vec<(Arc, f64)>> {
    if !(psi > 0.0 && psi <= 1.0) {
        return Err(Error::InvalidParameter(format!("psi = {psi} must lie in (0,1]")));
    }
    check_support(mu, e)?;
    let mut out = Vec::with_capacity(e.gaps().len());
    for gap in e.gaps() {
        let u = poisson(mu, gap.anchor_point());
        let len = gap.length();
        let h = len.min(len.powf(params.alpha) / u);
        out.push((*gap, psi * h));
    }
    Ok(out)
}

fn check_support(mu: &AtomicMeasure, e: &ClosedSet) -> Result<()> {
    for (pos, _) in mu.atoms() {
        if !e.contains(Angle::new(pos)) {
            return Err(Error::SupportNotContained(pos));
        }
    }
    Ok(())
}

/// The boundary-mass sum of the sawtooth domain and its Hoelder split with
/// exponents `1/lambda`, `1/(1-lambda)` where
/// `lambda = alpha (1-alpha)/(1-beta)`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Condition1Sum {
    /// `sum |I|^{alpha^2 - alpha + 1} u(z_I)^{1-alpha}`
    pub raw_sum: f64,
    /// `(sum |I|^beta)^lambda`
    pub holder_factor_1: f64,
    /// `(sum |I| u(z_I)^{(1-alpha)/(1-lambda)})^{1-lambda}`
    pub holder_factor_2: f64,
    pub lambda: f64,
    /// `(1-alpha)/(1-lambda) < 1`
    pub delta: f64,
}

pub fn condition1_sum(
    e: &ClosedSet,
    mu: &AtomicMeasure,
    params: &PdeParams,
    beta: f64,
) -> Result<Condition1Sum> {
    let alpha = params.alpha;
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "tent sums need alpha in (0,1); got alpha = {alpha} (p = {})",
            params.p
        )));
    }
    if !(beta < alpha) {
        return Err(Error::InvalidParameter(format!("beta = {beta} must be below alpha = {alpha}")));
    }
    check_support(mu, e)?;
    let lambda = alpha * (1.0 - alpha) / (1.0 - beta);
    let delta = (1.0 - alpha) / (1.0 - lambda);
    // the inner exponent of the first factor collapses to beta
    debug_assert!(((alpha * (alpha - 1.0) + lambda) / lambda - beta).abs() < 1e-9);
    let mut raw = Vec::new();
    let mut f1 = Vec::new();
    let mut f2 = Vec::new();
    for gap in e.gaps() {
        let len = gap.length();
        let u = poisson(mu, gap.anchor_point());
        raw.push(len.powf(alpha * alpha - alpha + 1.0) * u.powf(1.0 - alpha));
        f1.push(len.powf(beta));
        f2.push(len * u.powf(delta));
    }
    Ok(Condition1Sum {
        raw_sum: tree_sum(&raw),
        holder_factor_1: tree_sum(&f1).powf(lambda),
        holder_factor_2: tree_sum(&f2).powf(1.0 - lambda),
        lambda,
        delta,
    })
}

/// Pointwise angular-derivative sum at `x` (which must belong to the set):
/// `sum_I h(I) |I| / dist(x, I/2)^2`.
pub fn condition2_sum(
    e: &ClosedSet,
    mu: &AtomicMeasure,
    params: &PdeParams,
    psi: f64,
    x: Angle,
) -> Result<f64> {
    if !e.contains(x) {
        return Err(Error::InvalidParameter(format!(
            "x = {} turns lies inside a complementary arc",
            x.turns()
        )));
    }
    let heights = tent_heights(e, mu, params, psi)?;
    let terms: Vec<f64> = heights
        .iter()
        .map(|(gap, h)| {
            let half = gap.concentric(0.5);
            let d = half.distance_to(x).max(0.25 * gap.length());
            h * gap.length() / (d * d)
        })
        .collect();
    Ok(tree_sum(&terms))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MuAverageCondition2 {
    /// `sum_I |I|^alpha * bracket_I`
    pub total: f64,
    /// Largest bracket `(1/u(z_I)) int |I| / dist(x, I/2)^2 dmu(x)`.
    pub max_bracket: f64,
}

/// The mu-average of the pointwise sum, rearranged over arcs: each arc
/// contributes `|I|^alpha` times an explicitly computed bounded bracket.
pub fn mu_average_condition2(
    e: &ClosedSet,
    mu: &AtomicMeasure,
    params: &PdeParams,
) -> Result<MuAverageCondition2> {
    check_support(mu, e)?;
    let alpha = params.alpha;
    let mut terms = Vec::new();
    let mut max_bracket: f64 = 0.0;
    for gap in e.gaps() {
        let len = gap.length();
        let u = poisson(mu, gap.anchor_point());
        let half = gap.concentric(0.5);
        let mut integral = 0.0;
        for (pos, mass) in mu.atoms() {
            let d = half.distance_to(Angle::new(pos)).max(0.25 * len);
            integral += mass * len / (d * d);
        }
        let bracket = integral / u;
        max_bracket = max_bracket.max(bracket);
        terms.push(len.powf(alpha) * bracket);
    }
    Ok(MuAverageCondition2 { total: tree_sum(&terms), max_bracket })
}

/// Tent profile used for documentation rasters: the bump
/// `4^gamma t^gamma (1-t)^gamma`, normalized so the apex value is 1. Only
/// the endpoint exponents matter for the implemented sums.
pub fn tent_profile(t: f64, gamma: f64) -> f64 {
    if !(0.0..=1.0).contains(&t) {
        return 0.0;
    }
    (4.0f64).powf(gamma) * (t * (1.0 - t)).powf(gamma)
}

/// Validated parameters of the sawtooth construction.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct TentConfig {
    pub gamma: f64,
    pub psi: f64,
    pub beta: f64,
}

impl TentConfig {
    pub fn new(gamma: f64, psi: f64, beta: f64, params: &PdeParams) -> Result<Self> {
        let alpha = params.alpha;
        if !(gamma > 1.0 && gamma < 1.0 / (1.0 - alpha)) {
            return Err(Error::InvalidParameter(format!(
                "gamma = {gamma} must lie in (1, {})",
                1.0 / (1.0 - alpha)
            )));
        }
        if !(psi > 0.0 && psi <= 1.0) {
            return Err(Error::InvalidParameter(format!("psi = {psi} must lie in (0,1]")));
        }
        if !(beta < alpha) {
            return Err(Error::InvalidParameter(format!(
                "beta = {beta} must be below alpha = {alpha}"
            )));
        }
        Ok(TentConfig { gamma, psi, beta })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{cantor_measure, cantor_set, CantorSpec};

    #[test]
    fn params_formula() {
        assert!((params_of_p(3.0).unwrap().alpha - 0.0).abs() < 1e-15);
        let p5 = params_of_p(5.0).unwrap();
        assert!((p5.alpha - 0.5).abs() < 1e-15);
        // C^4 = 0.75
        assert!((p5.c_alpha.powi(4) - 0.75).abs() < 1e-12);
        assert!(params_of_p(1.0).is_err());
    }

    #[test]
    fn halfplane_residual_small() {
        for p in [2.0, 3.5, 5.0, 7.0] {
            let params = params_of_p(p).unwrap();
            for k in 0..=12 {
                let y = (10.0f64).powf(-6.0 + 0.5 * k as f64);
                assert!(params.halfplane_residual(y).abs() < 1e-10, "p={p}, y={y}");
            }
        }
    }

    #[test]
    fn restoring_closed_form() {
        // alpha = 1/2, a = 1/2: b = sqrt(2 a^2/(a^2+1)) = sqrt(0.4)
        let b = restoring_constant(0.5, 0.5).unwrap();
        assert!((b - (0.4f64).sqrt()).abs() < 1e-14);
        assert!((b - 0.632456).abs() < 1e-6);
        // fixed point at 1, exactly
        assert_eq!(restoring_constant(1.0, 0.5).unwrap(), 1.0);
        assert_eq!(restoring_constant(1.0, 0.137).unwrap(), 1.0);
    }

    #[test]
    fn restoring_exceeds_identity() {
        for ai in 1..=99 {
            let a = ai as f64 / 100.0;
            for &alpha in &[0.1, 0.3, 0.5, 0.7, 0.9] {
                let b = restoring_constant(a, alpha).unwrap();
                assert!(b > a, "b({a}) = {b} <= a at alpha={alpha}");
            }
        }
    }

    #[test]
    fn restoring_increasing_in_a() {
        for &alpha in &[0.2, 0.5, 0.8] {
            let mut prev = 0.0;
            for ai in 1..=99 {
                let b = restoring_constant(ai as f64 / 100.0, alpha).unwrap();
                assert!(b > prev);
                prev = b;
            }
        }
    }

    #[test]
    fn restoring_iteration_monotone() {
        let traj = restoring_iteration(0.5, 0.5, 100_000, 1e-6).unwrap();
        assert!(traj.converged);
        for w in traj.values.windows(2) {
            assert!(w[1] > w[0] - 1e-15);
        }
        // near-converged start returns immediately
        let quick = restoring_iteration(1.0 - 1e-9, 0.5, 10, 1e-6).unwrap();
        assert!(quick.converged);
        assert_eq!(quick.iterations, 1);
    }

    #[test]
    fn maximal_solution_p5_asymptotics() {
        let p = 5.0;
        let params = params_of_p(p).unwrap();
        let grid = [0.5, 0.9, 1.0 - 1e-3, 1.0 - 1e-5];
        let sol = maximal_solution_radial(p, &grid).unwrap();
        let (_, norm) = sol
            .normalized
            .iter()
            .find(|(r, _)| (*r - (1.0 - 1e-5)).abs() < 1e-12)
            .copied()
            .unwrap();
        assert!(
            (norm / params.c_alpha - 1.0).abs() < 0.05,
            "normalized trace {norm} vs C_alpha {}",
            params.c_alpha
        );
    }

    #[test]
    fn shooting_bracket_monotone() {
        // larger central value blows up earlier
        let p = 5.0;
        let mut radii = Vec::new();
        for u0 in [1.0, 2.0, 4.0, 8.0] {
            let mut sink = Vec::new();
            let r = integrate_radial(p, u0, 1.0, &[], &mut sink);
            radii.push(r.unwrap_or(f64::INFINITY));
        }
        for w in radii.windows(2) {
            assert!(w[1] < w[0], "{radii:?}");
        }
    }

    #[test]
    fn sub_maximal_stays_below() {
        let p = 5.0;
        let grid = [0.3, 0.6, 0.9, 0.99];
        let sol = maximal_solution_radial(p, &grid).unwrap();
        let mut smaller = Vec::new();
        integrate_radial(p, 0.5 * sol.u0, 1.0 - 1e-8, &grid, &mut smaller);
        for ((r1, umax), (r2, u)) in sol.samples.iter().zip(&smaller) {
            assert_eq!(r1, r2);
            assert!(u <= umax, "constant-data solution exceeds the maximal one at r={r1}");
        }
    }

    #[test]
    fn low_p_dominates_harnack_rate() {
        // for 1 < p <= 3 the maximal solution grows at least like the
        // Poisson bound 2 mass/(1-r)
        let p = 2.0;
        let grid = [0.9, 0.99, 0.999];
        let sol = maximal_solution_radial(p, &grid).unwrap();
        for &(r, u) in &sol.samples {
            let poisson_bound = 2.0 / (1.0 - r);
            if r >= 0.99 {
                assert!(u > poisson_bound, "u({r}) = {u} below {poisson_bound}");
            }
        }
    }

    #[test]
    fn tent_heights_single_atom() {
        let params = params_of_p(5.0).unwrap();
        let mu = AtomicMeasure::delta(0.0, 1.0);
        let e = mu.support_set().unwrap();
        let heights = tent_heights(&e, &mu, &params, 1.0).unwrap();
        assert_eq!(heights.len(), 1);
        // u(z_J) = 1/3 at the antipodal anchor: min(1, 3) = 1
        assert!((heights[0].1 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn tent_heights_bounded_and_monotone_in_psi() {
        let params = params_of_p(5.0).unwrap();
        let mu = cantor_measure(&CantorSpec { ratio: 6.0, generations: 7 }).unwrap();
        let e = mu.support_set().unwrap();
        let full = tent_heights(&e, &mu, &params, 1.0).unwrap();
        let half = tent_heights(&e, &mu, &params, 0.5).unwrap();
        for ((gap, h1), (_, h2)) in full.iter().zip(&half) {
            assert!(*h1 <= gap.length() + 1e-15);
            assert!(*h2 <= *h1);
        }
    }

    #[test]
    fn condition1_holder_inequality() {
        let params = params_of_p(5.0).unwrap();
        // beta = 0.4 < alpha = 0.5; carrier A = 6 is a 0.4-set (6^0.4 > 2)
        let spec = CantorSpec { ratio: 6.0, generations: 8 };
        let mu = cantor_measure(&spec).unwrap();
        let (set, _) = cantor_set(&spec).unwrap();
        let s = condition1_sum(&set, &mu, &params, 0.4).unwrap();
        assert!(
            s.raw_sum <= s.holder_factor_1 * s.holder_factor_2 * (1.0 + 1e-12),
            "{s:?}"
        );
        assert!(s.lambda < params.alpha);
        assert!(s.delta < 1.0);
    }

    #[test]
    fn condition1_partial_sums_stabilize() {
        // per-generation increments scale by sqrt(2) A^{-1/4} at alpha = 1/2,
        // so a thin carrier (large A) makes the partial sums settle quickly
        let params = params_of_p(5.0).unwrap();
        let mut values = Vec::new();
        for generations in [7u32, 8, 9] {
            let spec = CantorSpec { ratio: 30.0, generations };
            let mu = cantor_measure(&spec).unwrap();
            let (set, _) = cantor_set(&spec).unwrap();
            let s = condition1_sum(&set, &mu, &params, 0.4).unwrap();
            values.push(s.raw_sum);
        }
        assert!(values[1] >= values[0] && values[2] >= values[1], "{values:?}");
        let last_jump = (values[2] - values[1]).abs() / values[2];
        assert!(last_jump < 0.01, "raw sums {values:?}");
    }

    #[test]
    fn condition2_pointwise_and_average() {
        let params = params_of_p(5.0).unwrap();
        let mu = AtomicMeasure::delta(0.0, 1.0);
        let e = mu.support_set().unwrap();
        let s = condition2_sum(&e, &mu, &params, 1.0, Angle::new(0.0)).unwrap();
        assert!(s.is_finite() && s > 0.0);
        // x inside a gap is rejected
        assert!(condition2_sum(&e, &mu, &params, 1.0, Angle::new(0.5)).is_err());

        let spec = CantorSpec { ratio: 6.0, generations: 8 };
        let mu = cantor_measure(&spec).unwrap();
        let (set, _) = cantor_set(&spec).unwrap();
        let avg = mu_average_condition2(&set, &mu, &params).unwrap();
        assert!(avg.total.is_finite());
        assert!(avg.max_bracket < 200.0, "bracket {}", avg.max_bracket);
        // cross-check with the alpha-arc-sum: both converge for this carrier
        let alpha_sum = crate::bcnorm::arc_sum(&set, &crate::gauge::Gauge::power(0.5).unwrap());
        assert!(!alpha_sum.diverging);
    }

    #[test]
    fn tent_profile_shape() {
        for gamma in [1.2, 1.8] {
            assert_eq!(tent_profile(0.0, gamma), 0.0);
            assert_eq!(tent_profile(1.0, gamma), 0.0);
            assert!((tent_profile(0.5, gamma) - 1.0).abs() < 1e-12);
            // endpoint exponent: profile(t)/t^gamma tends to 4^gamma
            let small = 1e-6;
            let ratio = tent_profile(small, gamma) / small.powf(gamma);
            assert!((ratio - (4.0f64).powf(gamma)).abs() < 1e-3 * (4.0f64).powf(gamma));
        }
    }

    #[test]
    fn tent_config_validation() {
        let params = params_of_p(5.0).unwrap(); // alpha = 1/2, gamma in (1,2)
        assert!(TentConfig::new(1.5, 1.0, 0.4, &params).is_ok());
        assert!(TentConfig::new(2.5, 1.0, 0.4, &params).is_err());
        assert!(TentConfig::new(1.5, 0.0, 0.4, &params).is_err());
        assert!(TentConfig::new(1.5, 1.0, 0.6, &params).is_err());
    }
}
