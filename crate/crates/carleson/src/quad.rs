//! Quadrature and reduction helpers: adaptive Simpson, geometric refinement
//! towards integrable endpoint singularities, and deterministic pairwise
//! summation.

/// Pairwise (tree) summation. Deterministic for a fixed input order and much
/// better conditioned than a running sum on long series.
pub fn tree_sum(values: &[f64]) -> f64 {
    match values.len() {
        0 => 0.0,
        1 => values[0],
        2 => values[0] + values[1],
        n => {
            let mid = n / 2;
            tree_sum(&values[..mid]) + tree_sum(&values[mid..])
        }
    }
}

pub fn tree_sum_iter(values: impl Iterator<Item = f64>) -> f64 {
    let collected: Vec<f64> = values.collect();
    tree_sum(&collected)
}

#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: f64,
    /// Estimated magnitude of the truncation / discretization error.
    pub error: f64,
    pub converged: bool,
}

/// Adaptive Simpson integration of a smooth integrand on `[a, b]`.
pub fn adaptive_simpson(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    abs_tol: f64,
    max_depth: u32,
) -> QuadResult {
    if a == b {
        return QuadResult { value: 0.0, error: 0.0, converged: true };
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = simpson(a, b, fa, fm, fb);
    let mut out = QuadResult { value: 0.0, error: 0.0, converged: true };
    simpson_rec(f, a, b, fa, fm, fb, whole, abs_tol, max_depth, &mut out);
    out
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn simpson_rec(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
    out: &mut QuadResult,
) {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if delta.abs() <= 15.0 * tol || depth == 0 {
        out.value += left + right + delta / 15.0;
        out.error += delta.abs() / 15.0;
        if depth == 0 && delta.abs() > 15.0 * tol {
            out.converged = false;
        }
        return;
    }
    simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, out);
    simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, out);
}

/// Which endpoint carries an integrable singularity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Edge {
    Left,
    Right,
}

/// Integrates `f` on `[a, b]` when `f` has an integrable singularity at one
/// endpoint. The interval is split geometrically towards the singular end;
/// the unreachable sliver next to the endpoint is extrapolated from the decay
/// of the last pieces.
pub fn integrate_edge_singular(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    edge: Edge,
    levels: u32,
    abs_tol: f64,
) -> QuadResult {
    assert!(b > a);
    let h = b - a;
    let mut total = 0.0;
    let mut err = 0.0;
    let mut prev_piece = f64::NAN;
    let mut last_piece = f64::NAN;
    // Piece k spans [h 2^{-k-1}, h 2^{-k}] measured from the singular end.
    let mut offset = h;
    for level in 0..levels {
        let (lo, hi) = match edge {
            Edge::Left => (a + 0.5 * offset, a + offset),
            Edge::Right => (b - offset, b - 0.5 * offset),
        };
        let piece = adaptive_simpson(f, lo, hi, abs_tol / (level as f64 + 2.0).powi(2), 24);
        total += piece.value;
        err += piece.error;
        prev_piece = last_piece;
        last_piece = piece.value;
        offset *= 0.5;
        if last_piece.abs() < abs_tol && level > 4 {
            break;
        }
    }
    // Geometric tail estimate from the decay ratio of the final pieces.
    let mut converged = true;
    if last_piece.is_finite() && prev_piece.is_finite() && prev_piece != 0.0 {
        let ratio = (last_piece / prev_piece).abs();
        if ratio < 0.95 {
            let tail = last_piece.abs() * ratio / (1.0 - ratio);
            total += tail.copysign(last_piece);
            err += tail;
        } else {
            converged = false;
            err += last_piece.abs() * 20.0;
        }
    }
    QuadResult { value: total, error: err, converged }
}

/// Least-squares slope of `y` against `x`.
pub fn fit_slope(x: &[f64], y: &[f64]) -> f64 {
    assert_eq!(x.len(), y.len());
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let mut num = 0.0;
    let mut den = 0.0;
    for (xi, yi) in x.iter().zip(y) {
        num += (xi - mx) * (yi - my);
        den += (xi - mx) * (xi - mx);
    }
    num / den
}
