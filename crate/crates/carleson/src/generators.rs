//! Deterministic generators for the concrete test constructions: Cantor sets
//! and measures, the pruned Cantor set with endpoint masses, equally spaced
//! atom families and affine copies of measures into disjoint arcs.

use serde::{Deserialize, Serialize};

use crate::circle::{Angle, Arc, AtomicMeasure, ClosedSet};
use crate::error::{Error, Result};

pub const MAX_CANTOR_GENERATIONS: u32 = 30;

/// Standard Cantor construction: at generation `n` the set consists of `2^n`
/// arcs of length `ratio^{-n}`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct CantorSpec {
    pub ratio: f64,
    pub generations: u32,
}

impl CantorSpec {
    fn validate(&self) -> Result<()> {
        if !(self.ratio > 2.0) {
            return Err(Error::InvalidParameter(format!(
                "cantor ratio {} must exceed 2",
                self.ratio
            )));
        }
        if self.generations > MAX_CANTOR_GENERATIONS {
            return Err(Error::InvalidParameter(format!(
                "cantor generations {} exceed cap {}",
                self.generations, MAX_CANTOR_GENERATIONS
            )));
        }
        if self.ratio.powi(-(self.generations as i32)) < crate::circle::MIN_RESOLUTION {
            return Err(Error::InvalidParameter(format!(
                "defining arcs of generation {} at ratio {} fall below the resolution floor",
                self.generations, self.ratio
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GenCensus {
    pub generation: u32,
    pub new_gaps: u64,
    pub gap_length: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CantorCensus {
    pub per_generation: Vec<GenCensus>,
    pub residual_count: u64,
    pub residual_length: f64,
}

/// Enumerates the complementary arcs down to `spec.generations`; the
/// remaining defining arcs are returned as residual.
pub fn cantor_set(spec: &CantorSpec) -> Result<(ClosedSet, CantorCensus)> {
    spec.validate()?;
    let a = spec.ratio;
    let mut lefts = vec![0.0f64];
    let mut arc_len = 1.0;
    let mut gaps = Vec::new();
    let mut census = Vec::new();
    for n in 1..=spec.generations {
        let child_len = arc_len / a;
        let mut next = Vec::with_capacity(2 * lefts.len());
        let mut gap_len = arc_len - 2.0 * child_len;
        for &x in &lefts {
            let gap_left = x + child_len;
            let right_child = x + (arc_len - child_len);
            next.push(x);
            next.push(right_child);
            // gap length taken as the exact difference of the stored
            // endpoints, so measure atoms at `right_child` sit bit-exactly
            // on the gap boundary
            gap_len = right_child - gap_left;
            gaps.push(Arc::new(Angle::new(gap_left), gap_len)?);
        }
        census.push(GenCensus { generation: n, new_gaps: lefts.len() as u64, gap_length: gap_len });
        lefts = next;
        arc_len = child_len;
    }
    let residual: Vec<Arc> = lefts
        .iter()
        .map(|&x| Arc::new(Angle::new(x), arc_len))
        .collect::<Result<_>>()?;
    let residual_count = residual.len() as u64;
    let set = ClosedSet::new(gaps, residual)?;
    Ok((set, CantorCensus { per_generation: census, residual_count, residual_length: arc_len }))
}

/// The balanced Cantor measure at resolution `spec.generations`: one atom of
/// mass `2^{-G}` at the left endpoint of each residual arc.
pub fn cantor_measure(spec: &CantorSpec) -> Result<AtomicMeasure> {
    spec.validate()?;
    let a = spec.ratio;
    let mut lefts = vec![0.0f64];
    let mut arc_len = 1.0;
    for _ in 0..spec.generations {
        let child_len = arc_len / a;
        let mut next = Vec::with_capacity(2 * lefts.len());
        for &x in &lefts {
            next.push(x);
            // same expression as in cantor_set, for bit-identical endpoints
            next.push(x + (arc_len - child_len));
        }
        lefts = next;
        arc_len = child_len;
    }
    let mass = (0.5f64).powi(spec.generations as i32);
    AtomicMeasure::new(lefts.into_iter().map(|x| (x, mass)).collect())
}

/// Pruned Cantor construction. The base ratio satisfies
/// `1/log2(ratio) = (1-2p)/(1-p)`; a generation is bad when doubling the arc
/// count would push the census above `j^{-alpha} 2^{j (1-2p)/(1-p)}` at the
/// matching dyadic size `j`, and bad generations keep only the left child.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct PrunedSpec {
    pub p: f64,
    pub alpha_exp: f64,
    pub generations: u32,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PrunedGen {
    pub generation: u32,
    pub bad: bool,
    pub arcs: u64,
    pub census_cap: f64,
    pub new_gaps: u64,
    pub gap_length: f64,
    /// Added sum of |J|^{(1-2p)/(1-p)} over this generation's gaps.
    pub weight_increment: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PrunedBuild {
    pub set: ClosedSet,
    pub measure: AtomicMeasure,
    pub census: Vec<PrunedGen>,
    pub ratio: f64,
    /// Concentric expansion for which `beta J` covers the defining arc of the
    /// previous generation: `A/(A-2)`.
    pub beta: f64,
}

pub fn pruned_cantor(spec: &PrunedSpec) -> Result<PrunedBuild> {
    let PrunedSpec { p, alpha_exp, generations } = *spec;
    if !(p > 0.0 && p < 0.5) {
        return Err(Error::InvalidParameter(format!("p {p} must lie in (0, 1/2)")));
    }
    if !(alpha_exp > 1.0 && alpha_exp < 1.0 + p) {
        return Err(Error::InvalidParameter(format!(
            "alpha_exp {alpha_exp} must lie in (1, 1+p) = (1, {})",
            1.0 + p
        )));
    }
    if generations == 0 || generations > MAX_CANTOR_GENERATIONS {
        return Err(Error::InvalidParameter(format!(
            "generations {generations} out of range 1..={MAX_CANTOR_GENERATIONS}"
        )));
    }
    let exponent = (1.0 - 2.0 * p) / (1.0 - p);
    let ratio = (2.0f64).powf(1.0 / exponent); // log2 A = (1-p)/(1-2p)
    let log2_a = 1.0 / exponent;
    let beta = ratio / (ratio - 2.0);
    // arcs tracked as (left, canonical right endpoint); inheriting the right
    // endpoint keeps every gap boundary bit-identical with the atom placed on
    // it, even through single-descendant generations
    let mut arcs: Vec<(f64, f64)> = vec![(0.0, 1.0)];
    let mut arc_len = 1.0f64;
    let mut gaps: Vec<Arc> = Vec::new();
    let mut atoms: Vec<(f64, f64)> = Vec::new();
    let mut census = Vec::new();
    for n in 1..=generations {
        let child_len = arc_len / ratio;
        let dyadic_j = n as f64 * log2_a;
        let cap = dyadic_j.powf(-alpha_exp) * (2.0f64).powi(n as i32);
        let bad = 2.0 * arcs.len() as f64 > cap;
        let mut next = Vec::with_capacity(if bad { arcs.len() } else { 2 * arcs.len() });
        let mut gap_len = 0.0;
        let mut weight_inc = 0.0;
        for &(x, right_pt) in &arcs {
            let gap_left = x + child_len;
            let gap_right = if bad { right_pt } else { x + (arc_len - child_len) };
            gap_len = gap_right - gap_left;
            let weight = gap_len.powf(exponent);
            gaps.push(Arc::new(Angle::new(gap_left), gap_len)?);
            atoms.push((gap_left, weight));
            atoms.push((Angle::new(gap_right).turns(), weight));
            weight_inc += weight;
            next.push((x, gap_left));
            if !bad {
                next.push((gap_right, right_pt));
            }
        }
        census.push(PrunedGen {
            generation: n,
            bad,
            arcs: next.len() as u64,
            census_cap: cap,
            new_gaps: arcs.len() as u64,
            gap_length: gap_len,
            weight_increment: weight_inc,
        });
        arcs = next;
        arc_len = child_len;
    }
    let residual: Vec<Arc> = arcs
        .iter()
        .map(|&(x, right_pt)| {
            let wrapped = if right_pt > x { right_pt - x } else { right_pt + 1.0 - x };
            Arc::new(Angle::new(x), wrapped)
        })
        .collect::<Result<_>>()?;
    let set = ClosedSet::new(gaps, residual)?;
    let measure = AtomicMeasure::new(atoms)?;
    Ok(PrunedBuild { set, measure, census, ratio, beta })
}

impl PrunedBuild {
    /// Cumulative sums of `|J|^{(1-2p)/(1-p)}` per generation.
    pub fn weight_partial_sums(&self) -> Vec<f64> {
        let mut acc = 0.0;
        self.census
            .iter()
            .map(|g| {
                acc += g.weight_increment;
                acc
            })
            .collect()
    }

    /// Gaps of one construction generation, matched by their recorded length
    /// (lengths are distinct across generations).
    pub fn gaps_of_generation(&self, generation: u32) -> Vec<&Arc> {
        let nominal = self.census[generation as usize - 1].gap_length;
        self.set
            .gaps()
            .iter()
            .filter(|g| (g.length() / nominal - 1.0).abs() < 1e-9)
            .collect()
    }

    /// Cumulative per-generation sums of the divergent surrogate
    /// `sum_J mu(beta J)^p |J|^{1-2p}`.
    pub fn divergent_partial_sums(&self, p: f64) -> Vec<f64> {
        let mut acc = 0.0;
        let mut out = Vec::with_capacity(self.census.len());
        for gen in &self.census {
            let mut inc = 0.0;
            for gap in self.gaps_of_generation(gen.generation) {
                let beta_arc = gap.concentric(self.beta);
                let m = self.measure.measure_of_arc(&beta_arc);
                inc += m.powf(p) * gap.length().powf(1.0 - 2.0 * p);
            }
            acc += inc;
            out.push(acc);
        }
        out
    }
}

/// `n` equally spaced atoms of mass `n^{-(2-eps)}`.
pub fn equally_spaced_atoms(n: u32, eps: f64) -> Result<AtomicMeasure> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be positive".into()));
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::InvalidParameter(format!("eps {eps} must lie in (0,1)")));
    }
    let mass = (n as f64).powf(-(2.0 - eps));
    AtomicMeasure::new((0..n).map(|k| (k as f64 / n as f64, mass)).collect())
}

/// Affinely rescales each measure into its target arc and scales its masses
/// by the supplied weight. Target arcs must be pairwise disjoint.
pub fn independent_copies(copies: &[(AtomicMeasure, Arc, f64)]) -> Result<AtomicMeasure> {
    let mut arcs: Vec<&Arc> = copies.iter().map(|(_, a, _)| a).collect();
    arcs.sort_by(|a, b| a.left().turns().total_cmp(&b.left().turns()));
    for w in arcs.windows(2) {
        if w[0].left().turns() + w[0].length() > w[1].left().turns() + 1e-15 {
            return Err(Error::TargetsOverlap);
        }
    }
    if arcs.len() >= 2 {
        let last = arcs[arcs.len() - 1];
        if last.left().turns() + last.length() > 1.0 + arcs[0].left().turns() + 1e-15 {
            return Err(Error::TargetsOverlap);
        }
    }
    let mut atoms = Vec::new();
    for (mu, arc, weight) in copies {
        if !(*weight >= 0.0) {
            return Err(Error::InvalidParameter(format!("weight {weight} must be non-negative")));
        }
        if *weight == 0.0 {
            continue;
        }
        for (pos, mass) in mu.atoms() {
            atoms.push((arc.left().turns() + pos * arc.length(), mass * weight));
        }
    }
    AtomicMeasure::new(atoms)
}

/// Deterministic battery of measures used by the acceptance experiments:
/// single atoms, sparse atom sets, equally spaced families, Cantor measures
/// (including sub-threshold ratios), pruned Cantor measures and affine
/// mixtures. Exactly the same list on every call.
pub fn standard_battery() -> Vec<(String, AtomicMeasure)> {
    let mut battery: Vec<(String, AtomicMeasure)> = Vec::new();
    let mut push = |name: String, mu: AtomicMeasure| battery.push((name, mu));

    for (pos, mass) in [
        (0.0, 1.0),
        (0.1, 0.5),
        (1.0 / 3.0, 2.0),
        (0.5, 1.0),
        (0.7251, 0.25),
        (1.0 / 7.0, 1.5),
        (0.9, 3.0),
        ((0.5f64).powi(10), 1.0),
    ] {
        push(format!("atom@{pos:.4}m{mass}"), AtomicMeasure::delta(pos, mass));
    }

    push(
        "atoms-2".into(),
        AtomicMeasure::new(vec![(0.0, 1.0), (0.5, 0.5)]).unwrap(),
    );
    push(
        "atoms-3".into(),
        AtomicMeasure::new(vec![(0.1, 0.2), (0.4, 1.0), (0.8, 0.6)]).unwrap(),
    );
    push(
        "atoms-5".into(),
        AtomicMeasure::new(vec![
            (0.05, 0.1),
            (0.2, 0.4),
            (0.55, 0.9),
            (0.6, 0.3),
            (0.95, 0.2),
        ])
        .unwrap(),
    );
    push(
        "atoms-8-dyadic".into(),
        AtomicMeasure::new((0..8).map(|k| (k as f64 / 8.0, 1.0 / (k + 1) as f64)).collect())
            .unwrap(),
    );

    for n in [16u32, 64, 256, 1024] {
        for eps in [0.25, 0.5, 0.75] {
            push(format!("spread-n{n}-eps{eps}"), equally_spaced_atoms(n, eps).unwrap());
        }
    }

    for ratio in [3.0, 4.0, 6.0] {
        for generations in [4u32, 6, 8, 10] {
            let spec = CantorSpec { ratio, generations };
            push(format!("cantor-A{ratio}-G{generations}"), cantor_measure(&spec).unwrap());
        }
    }
    for ratio in [2.4, 2.6] {
        for generations in [8u32, 10] {
            let spec = CantorSpec { ratio, generations };
            push(format!("cantor-A{ratio}-G{generations}"), cantor_measure(&spec).unwrap());
        }
    }

    for (p, alpha_exp, generations) in [(0.2, 1.1, 10), (0.3, 1.15, 12), (0.4, 1.3, 10)] {
        let build = pruned_cantor(&PrunedSpec { p, alpha_exp, generations }).unwrap();
        push(format!("pruned-p{p}-a{alpha_exp}-G{generations}"), build.measure);
    }

    // affine mixtures
    let halves = [
        Arc::new(Angle::new(0.0), 0.5).unwrap(),
        Arc::new(Angle::new(0.5), 0.5).unwrap(),
    ];
    let cantor6 = cantor_measure(&CantorSpec { ratio: 6.0, generations: 6 }).unwrap();
    let spread = equally_spaced_atoms(64, 0.5).unwrap();
    push(
        "mix-cantor6-spread".into(),
        independent_copies(&[
            (cantor6.clone(), halves[0], 1.0),
            (spread.clone(), halves[1], 1.0),
        ])
        .unwrap(),
    );
    let quarter = Arc::new(Angle::new(0.25), 0.25).unwrap();
    push(
        "mix-cantor4-in-quarter".into(),
        independent_copies(&[(
            cantor_measure(&CantorSpec { ratio: 4.0, generations: 8 }).unwrap(),
            quarter,
            0.5,
        )])
        .unwrap(),
    );
    push(
        "mix-two-spreads".into(),
        independent_copies(&[
            (equally_spaced_atoms(32, 0.5).unwrap(), halves[0], 0.5),
            (equally_spaced_atoms(128, 0.5).unwrap(), halves[1], 0.25),
        ])
        .unwrap(),
    );
    push(
        "mix-atom-cantor".into(),
        independent_copies(&[
            (AtomicMeasure::delta(0.5, 1.0), halves[0], 1.0),
            (cantor_measure(&CantorSpec { ratio: 3.0, generations: 7 }).unwrap(), halves[1], 0.5),
        ])
        .unwrap(),
    );

    push(
        "harmonic-squares".into(),
        AtomicMeasure::new((1..=30).map(|k| (1.0 / k as f64, 1.0 / (k * k) as f64)).collect())
            .unwrap(),
    );
    push(
        "geometric-positions".into(),
        AtomicMeasure::new((1..=24).map(|k| ((0.5f64).powi(k), (0.7f64).powi(k))).collect())
            .unwrap(),
    );
    push("cantor-A3.25-G8".into(), cantor_measure(&CantorSpec { ratio: 3.25, generations: 8 }).unwrap());
    push("cantor-A3.25-G6".into(), cantor_measure(&CantorSpec { ratio: 3.25, generations: 6 }).unwrap());

    battery
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::tree_sum;

    #[test]
    fn cantor_a4_g2_structure() {
        let (set, census) = cantor_set(&CantorSpec { ratio: 4.0, generations: 2 }).unwrap();
        let mut lens: Vec<f64> = set.gaps().iter().map(|g| g.length()).collect();
        lens.sort_by(f64::total_cmp);
        assert_eq!(lens, vec![0.125, 0.125, 0.5]);
        assert_eq!(set.residual().len(), 4);
        for arc in set.residual() {
            assert!((arc.length() - 1.0 / 16.0).abs() < 1e-15);
        }
        assert_eq!(census.per_generation[0].new_gaps, 1);
        assert_eq!(census.per_generation[1].new_gaps, 2);
        // gap positions: [1/4,3/4), [1/16,3/16), [13/16,15/16)
        let mut lefts: Vec<f64> = set.gaps().iter().map(|g| g.left().turns()).collect();
        lefts.sort_by(f64::total_cmp);
        assert_eq!(lefts, vec![1.0 / 16.0, 0.25, 13.0 / 16.0]);
    }

    #[test]
    fn cantor_g0_is_full_circle() {
        let (set, census) = cantor_set(&CantorSpec { ratio: 3.0, generations: 0 }).unwrap();
        assert!(set.gaps().is_empty());
        assert_eq!(set.residual().len(), 1);
        assert_eq!(census.residual_length, 1.0);
    }

    #[test]
    fn cantor_length_bookkeeping() {
        for ratio in [3.0, 4.0, 6.0, 3.25, std::f64::consts::PI] {
            for generations in [1u32, 5, 10] {
                let (set, _) = cantor_set(&CantorSpec { ratio, generations }).unwrap();
                let total = set.gap_length() + set.residual_length();
                assert!((total - 1.0).abs() < 1e-12, "A={ratio} G={generations}");
            }
        }
    }

    #[test]
    fn cantor_measure_masses() {
        let spec = CantorSpec { ratio: 4.0, generations: 10 };
        let mu = cantor_measure(&spec).unwrap();
        assert_eq!(mu.len(), 1024);
        assert!((mu.total_mass() - 1.0).abs() < 1e-12);
        // defining arcs of generation k carry mass 2^{-k}
        for k in [1u32, 3, 5] {
            let arc = Arc::new(Angle::new(0.0), 4.0f64.powi(-(k as i32))).unwrap();
            assert!(((mu.measure_of_arc(&arc)) - (0.5f64).powi(k as i32)).abs() < 1e-15);
        }
    }

    #[test]
    fn cantor_measure_local_dimension() {
        let spec = CantorSpec { ratio: 4.0, generations: 12 };
        let mu = cantor_measure(&spec).unwrap();
        // mu(0, A^{-n}) = 2 * 2^{-n}: mass 2^{-n} on each side of 0
        for n in 1..=8u32 {
            let eps = 4.0f64.powi(-(n as i32));
            let m = mu.mass_near(Angle::new(0.0), eps);
            let expect = 2.0 * (0.5f64).powi(n as i32);
            assert!((m - expect).abs() < 1e-15, "n={n}: {m} vs {expect}");
        }
    }

    #[test]
    fn pruned_census_respects_cap() {
        let build = pruned_cantor(&PrunedSpec { p: 0.3, alpha_exp: 1.15, generations: 14 }).unwrap();
        let mut below_half = 0;
        for gen in &build.census {
            assert!(gen.arcs as f64 <= gen.census_cap.max(1.0), "generation {}", gen.generation);
            if (gen.arcs as f64) < 0.5 * gen.census_cap && gen.census_cap > 2.0 {
                below_half += 1;
            }
        }
        // the count tracks the cap within a factor two for all but a few
        // early generations
        assert!(below_half <= 4, "{below_half} generations fell below half the cap");
    }

    #[test]
    fn pruned_total_mass_bounded() {
        let build = pruned_cantor(&PrunedSpec { p: 0.3, alpha_exp: 1.15, generations: 14 }).unwrap();
        let sums = build.weight_partial_sums();
        assert!(sums.last().unwrap().is_finite());
        // measure mass = 2 * weight sum (two endpoint atoms per gap)
        assert!(
            (build.measure.total_mass() - 2.0 * sums.last().unwrap()).abs()
                < 1e-9 * build.measure.total_mass()
        );
    }

    #[test]
    fn pruned_beta_covers_parent_arc() {
        let build = pruned_cantor(&PrunedSpec { p: 0.3, alpha_exp: 1.15, generations: 8 }).unwrap();
        // the leftmost gap of each generation sits inside the defining arc
        // [0, ratio^{-(n-1)}]; beta J must cover that arc (up to rounding;
        // the covering is exact for split gaps and strict for pruned ones)
        let mut parent_len = 1.0;
        for gen in &build.census {
            let gaps = build.gaps_of_generation(gen.generation);
            let gap = gaps
                .iter()
                .min_by(|a, b| a.left().turns().total_cmp(&b.left().turns()))
                .unwrap();
            let beta_arc = gap.concentric(build.beta);
            let tol = 1e-9 * parent_len;
            for frac in [tol, 0.5 * parent_len, parent_len - tol] {
                let s = (frac - beta_arc.left().turns()).rem_euclid(1.0);
                assert!(
                    s < beta_arc.length() || beta_arc.length() == 1.0,
                    "generation {}: point {frac} uncovered",
                    gen.generation
                );
            }
            assert!(
                beta_arc.length() >= parent_len * (1.0 - 1e-12) || beta_arc.length() == 1.0,
                "generation {}: beta arc too short",
                gen.generation
            );
            parent_len /= build.ratio;
        }
    }

    #[test]
    fn pruned_rejects_infeasible() {
        assert!(pruned_cantor(&PrunedSpec { p: 0.3, alpha_exp: 1.4, generations: 8 }).is_err());
        assert!(pruned_cantor(&PrunedSpec { p: 0.6, alpha_exp: 1.1, generations: 8 }).is_err());
    }

    #[test]
    fn equally_spaced_total_mass() {
        for n in [1u32, 16, 256] {
            let eps = 0.5;
            let mu = equally_spaced_atoms(n, eps).unwrap();
            let expect = (n as f64).powf(eps - 1.0);
            assert!((mu.total_mass() - expect).abs() < 1e-12 * expect);
        }
    }

    #[test]
    fn independent_copies_identity_and_additivity() {
        let mu = equally_spaced_atoms(8, 0.5).unwrap();
        let id = independent_copies(&[(mu.clone(), Arc::full_circle(), 1.0)]).unwrap();
        assert_eq!(id, mu);

        let a = Arc::new(Angle::new(0.0), 0.5).unwrap();
        let b = Arc::new(Angle::new(0.5), 0.5).unwrap();
        let two = independent_copies(&[(mu.clone(), a, 1.0), (mu.clone(), b, 2.0)]).unwrap();
        assert!((two.total_mass() - 3.0 * mu.total_mass()).abs() < 1e-12);
    }

    #[test]
    fn independent_copies_rejects_overlap() {
        let mu = AtomicMeasure::delta(0.0, 1.0);
        let a = Arc::new(Angle::new(0.0), 0.6).unwrap();
        let b = Arc::new(Angle::new(0.5), 0.2).unwrap();
        assert!(matches!(
            independent_copies(&[(mu.clone(), a, 1.0), (mu, b, 1.0)]),
            Err(Error::TargetsOverlap)
        ));
    }

    #[test]
    fn battery_is_deterministic_and_large() {
        let b1 = standard_battery();
        let b2 = standard_battery();
        assert!(b1.len() >= 50, "battery has {}", b1.len());
        assert_eq!(b1.len(), b2.len());
        for ((n1, m1), (n2, m2)) in b1.iter().zip(&b2) {
            assert_eq!(n1, n2);
            assert_eq!(m1, m2);
        }
    }

    #[test]
    fn generators_bit_identical() {
        let s1 = cantor_set(&CantorSpec { ratio: 3.25, generations: 9 }).unwrap().0;
        let s2 = cantor_set(&CantorSpec { ratio: 3.25, generations: 9 }).unwrap().0;
        for (a, b) in s1.gaps().iter().zip(s2.gaps()) {
            assert_eq!(a.left().turns(), b.left().turns());
            assert_eq!(a.length(), b.length());
        }
        let m1 = tree_sum(
            &pruned_cantor(&PrunedSpec { p: 0.25, alpha_exp: 1.2, generations: 10 })
                .unwrap()
                .measure
                .masses()
                .to_vec(),
        );
        let m2 = tree_sum(
            &pruned_cantor(&PrunedSpec { p: 0.25, alpha_exp: 1.2, generations: 10 })
                .unwrap()
                .measure
                .masses()
                .to_vec(),
        );
        assert_eq!(m1, m2);
    }
}
