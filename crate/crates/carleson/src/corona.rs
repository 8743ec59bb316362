//! Corona-type decomposition of a singular measure into alternating maximal
//! heavy and light dyadic arcs, extraction of the carrier sets, sublevel-set
//! area integrals and the implication pipelines built on them.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bcnorm::arc_sum;
use crate::circle::{Angle, Arc, AtomicMeasure, ClosedSet, DyadicArc, MAX_GENERATION};
use crate::error::{Error, Result};
use crate::gauge::Gauge;
use crate::inner::{hp_test_sum, nevanlinna_norm, poisson};
use crate::report::{Class, Estimate, SeriesProbe};

const TAU: f64 = std::f64::consts::TAU;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum NodeKind {
    Heavy,
    Light,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoronaNode {
    pub arc: DyadicArc,
    pub kind: NodeKind,
    pub children: Vec<CoronaNode>,
    /// Arcs at the depth cap whose status stayed undecided.
    pub unresolved: Vec<DyadicArc>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoronaDecomposition {
    /// Maximal heavy arcs (density `>= m`).
    pub roots: Vec<CoronaNode>,
    pub m: f64,
    /// Light arcs have density `<= m / light_divisor`.
    pub light_divisor: f64,
    pub depth: u32,
    /// Arcs at the cap that never became heavy during the root search.
    pub unresolved_top: Vec<DyadicArc>,
}

/// Builds the alternating maximal heavy/light forest down to `depth`.
pub fn corona_decompose(
    mu: &AtomicMeasure,
    m: f64,
    depth: u32,
    light_divisor: f64,
) -> Result<CoronaDecomposition> {
    if !(m > 0.0) {
        return Err(Error::InvalidParameter(format!("density threshold {m} must be positive")));
    }
    if !(light_divisor > 1.0) {
        return Err(Error::InvalidParameter(format!(
            "light divisor {light_divisor} must exceed 1"
        )));
    }
    if depth > MAX_GENERATION {
        return Err(Error::GenerationCap(depth));
    }
    let mut roots = Vec::new();
    let mut unresolved_top = Vec::new();
    find_heavy(
        mu,
        DyadicArc::root(),
        m,
        light_divisor,
        depth,
        &mut roots,
        &mut unresolved_top,
    );
    Ok(CoronaDecomposition { roots, m, light_divisor, depth, unresolved_top })
}

fn density(mu: &AtomicMeasure, arc: &DyadicArc) -> f64 {
    mu.measure_of_arc(&arc.to_arc()) / arc.length()
}

/// Maximal dyadic arcs below `arc` (inclusive) with density `>= m`.
fn find_heavy(
    mu: &AtomicMeasure,
    arc: DyadicArc,
    m: f64,
    light_divisor: f64,
    depth: u32,
    out: &mut Vec<CoronaNode>,
    unresolved: &mut Vec<DyadicArc>,
) {
    let mass = mu.measure_of_arc(&arc.to_arc());
    if mass == 0.0 {
        return; // no descendant can be heavy
    }
    if mass / arc.length() >= m {
        let mut node =
            CoronaNode { arc, kind: NodeKind::Heavy, children: Vec::new(), unresolved: Vec::new() };
        if arc.generation() < depth {
            for child in arc.children() {
                let mut kids = Vec::new();
                let mut undecided = Vec::new();
                find_light(mu, child, m, light_divisor, depth, &mut kids, &mut undecided);
                node.children.extend(kids);
                node.unresolved.extend(undecided);
            }
        } else {
            node.unresolved.push(arc);
        }
        out.push(node);
        return;
    }
    if arc.generation() >= depth {
        unresolved.push(arc);
        return;
    }
    for child in arc.children() {
        find_heavy(mu, child, m, light_divisor, depth, out, unresolved);
    }
}

/// Maximal dyadic arcs below `arc` (inclusive) with density `<= m / divisor`.
fn find_light(
    mu: &AtomicMeasure,
    arc: DyadicArc,
    m: f64,
    light_divisor: f64,
    depth: u32,
    out: &mut Vec<CoronaNode>,
    unresolved: &mut Vec<DyadicArc>,
) {
    if density(mu, &arc) <= m / light_divisor {
        let mut node =
            CoronaNode { arc, kind: NodeKind::Light, children: Vec::new(), unresolved: Vec::new() };
        if arc.generation() < depth {
            for child in arc.children() {
                let mut kids = Vec::new();
                let mut undecided = Vec::new();
                find_heavy(mu, child, m, light_divisor, depth, &mut kids, &mut undecided);
                node.children.extend(kids);
                node.unresolved.extend(undecided);
            }
        }
        out.push(node);
        return;
    }
    if arc.generation() >= depth {
        unresolved.push(arc);
        return;
    }
    for child in arc.children() {
        find_light(mu, child, m, light_divisor, depth, out, unresolved);
    }
}

impl CoronaDecomposition {
    pub fn heavy_count(&self) -> usize {
        let mut count = 0;
        let mut stack: Vec<&CoronaNode> = self.roots.iter().collect();
        while let Some(node) = stack.pop() {
            if node.kind == NodeKind::Heavy {
                count += 1;
            }
            stack.extend(node.children.iter());
        }
        count
    }
}

/// Per heavy node, the carrier set `I \ union(interior of maximal light
/// children)`: the light children become gaps, undecided arcs at the cap
/// stay as residual, and the complement of `I` is one more gap.
pub fn extract_bc_sets(d: &CoronaDecomposition) -> Result<Vec<ClosedSet>> {
    let mut sets = Vec::new();
    let mut stack: Vec<&CoronaNode> = d.roots.iter().collect();
    while let Some(node) = stack.pop() {
        if node.kind == NodeKind::Heavy {
            let mut gaps: Vec<Arc> = node
                .children
                .iter()
                .filter(|c| c.kind == NodeKind::Light)
                .map(|c| c.arc.to_arc())
                .collect();
            let residual: Vec<Arc> = node.unresolved.iter().map(|a| a.to_arc()).collect();
            let own = node.arc.to_arc();
            if own.length() < 1.0 {
                gaps.push(Arc::new(own.right(), 1.0 - own.length())?);
            }
            sets.push(ClosedSet::new(gaps, residual)?);
        }
        stack.extend(node.children.iter());
    }
    Ok(sets)
}

/// Two-sided bracket for a sublevel-set area integral.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AreaIntegral {
    /// Midpoint classification: boxes with `P_mu(z_I) > threshold`.
    pub value: f64,
    /// Boxes whose Poisson value clears the threshold even after dividing by
    /// the Harnack factor of the box.
    pub lower: f64,
    /// Boxes that may meet the sublevel set (threshold divided by the factor).
    pub upper: f64,
    pub diverging: bool,
    pub depth: u32,
    pub threshold: f64,
}

/// Harnack-type oscillation factor of the Poisson integral over one top box,
/// from `1-|z|` varying by a factor 2 and `|zeta - z|` varying by at most
/// `1 + 2 pi` across the box.
pub const TOP_BOX_HARNACK: f64 = 2.0 * (1.0 + TAU) * (1.0 + TAU);

/// Area integral of `dA / (1-|z|)^sigma` over the sublevel set
/// `{|S_mu| < c} = {P_mu > log(1/c)}`, by dyadic top boxes classified at
/// their midpoints.
pub fn sublevel_area_integral(
    mu: &AtomicMeasure,
    c: f64,
    sigma: f64,
    depth: u32,
) -> Result<AreaIntegral> {
    if !(c > 0.0 && c < 1.0) {
        return Err(Error::InvalidParameter(format!("level {c} must lie in (0,1)")));
    }
    if depth > MAX_GENERATION {
        return Err(Error::GenerationCap(depth));
    }
    let threshold = (1.0 / c).ln();
    // flat-convention integral of (1-|z|)^{-sigma} over one top box
    let box_weight = |len: f64| -> f64 {
        if (sigma - 1.0).abs() < 1e-12 {
            len * (2.0f64).ln()
        } else {
            len * (len.powf(1.0 - sigma) * ((2.0f64).powf(sigma - 1.0) - 1.0)) / (sigma - 1.0)
        }
    };
    let mut mid = vec![0.0f64; depth as usize + 1];
    let mut lower = vec![0.0f64; depth as usize + 1];
    let mut upper = vec![0.0f64; depth as usize + 1];
    let mut stack: Vec<(u32, u64)> = vec![(0, 0)];
    while let Some((generation, index)) = stack.pop() {
        let arc = DyadicArc::new(generation, index)?;
        let len = arc.length();
        // bound on P_mu over the whole Carleson box; prune subtrees that can
        // never clear the outer threshold
        let p_bound = poisson_box_bound(mu, &arc.to_arc());
        if p_bound <= threshold / TOP_BOX_HARNACK {
            continue;
        }
        let z = Complex64::from_polar(1.0 - 0.75 * len, TAU * arc.to_arc().midpoint().turns());
        let p = poisson(mu, z);
        let w = box_weight(len);
        if p > threshold {
            mid[generation as usize] += w;
        }
        if p > threshold * TOP_BOX_HARNACK {
            lower[generation as usize] += w;
        }
        if p > threshold / TOP_BOX_HARNACK {
            upper[generation as usize] += w;
        }
        if generation < depth {
            stack.push((generation + 1, 2 * index));
            stack.push((generation + 1, 2 * index + 1));
        }
    }
    let mut probe = SeriesProbe::new();
    for (g, &v) in mid.iter().enumerate() {
        probe.add(g as i64, v);
    }
    let est = probe.finish();
    // divergence evidence also from the outer bracket
    let mut outer_probe = SeriesProbe::new();
    for (g, &v) in upper.iter().enumerate() {
        outer_probe.add(g as i64, v);
    }
    let outer = outer_probe.finish();
    Ok(AreaIntegral {
        value: est.value,
        lower: crate::quad::tree_sum(&lower),
        upper: outer.value,
        diverging: est.diverging,
        depth,
        threshold,
    })
}

/// Upper bound for `P_mu` over the Carleson box of `arc`; infinite when the
/// tripled arc carries mass.
fn poisson_box_bound(mu: &AtomicMeasure, arc: &Arc) -> f64 {
    let tripled = arc.concentric(3.0);
    if mu.measure_of_arc(&tripled) > 0.0 {
        return f64::INFINITY;
    }
    let len = arc.length();
    let mut acc = 0.0;
    for (pos, mass) in mu.atoms() {
        let g = tripled.distance_to(Angle::new(pos)) + len;
        let s = (std::f64::consts::PI * g).sin();
        acc += 2.0 * len * mass / (2.0 * s * s).max(1e-300);
    }
    acc
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConditionReport {
    pub label: String,
    pub class: Class,
    pub value: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ImplicationReport {
    pub conditions: Vec<ConditionReport>,
    /// No later condition in the chain is divergence-flagged while an
    /// earlier one is finite.
    pub consistent: bool,
    pub violations: Vec<String>,
}

fn chain_consistency(conditions: &[ConditionReport]) -> (bool, Vec<String>) {
    let mut violations = Vec::new();
    for i in 0..conditions.len() {
        for j in (i + 1)..conditions.len() {
            if conditions[i].class == Class::Finite && conditions[j].class == Class::Diverging {
                violations.push(format!(
                    "{} is finite but {} diverges",
                    conditions[i].label, conditions[j].label
                ));
            }
        }
    }
    (violations.is_empty(), violations)
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct PipelineParams {
    pub level: f64,
    pub m: f64,
    pub light_divisor: f64,
    pub depth: u32,
}

impl Default for PipelineParams {
    fn default() -> Self {
        PipelineParams { level: (-1.0f64).exp(), m: 2.0, light_divisor: 100.0, depth: 16 }
    }
}

/// Probing below the finest support gap measures the atomization rather
/// than the family, so pipeline depths are capped at the resolution of the
/// support set.
fn effective_depth(e: &ClosedSet, cap: u32) -> u32 {
    let min_gap = e.gaps().iter().map(|g| g.length()).fold(1.0f64, f64::min);
    let resolution = (1.0 / min_gap).log2().ceil().max(0.0) as u32;
    resolution.clamp(8, cap.max(8))
}

/// Nevanlinna chain: (1) Nevanlinna norm of the boundary derivative, (2) area
/// condition with `sigma = 1`, (3) entropy arc sums of the corona carrier
/// sets. The numeric surrogate of the implication chain is that no later
/// condition diverges while an earlier one is finite.
pub fn thm_nevanlinna_pipeline(
    mu: &AtomicMeasure,
    params: &PipelineParams,
) -> Result<ImplicationReport> {
    if mu.is_empty() {
        return Ok(ImplicationReport { conditions: Vec::new(), consistent: true, violations: Vec::new() });
    }
    let e = mu.support_set()?;
    let depth = effective_depth(&e, params.depth);
    let nev = nevanlinna_norm(mu, &e);
    let area = sublevel_area_integral(mu, params.level, 1.0, depth)?;
    let corona = corona_decompose(mu, params.m, depth, params.light_divisor)?;
    let sets = extract_bc_sets(&corona)?;
    let gauge = Gauge::entropy();
    let worst = worst_arc_sum(&sets, &gauge);
    let conditions = vec![
        ConditionReport { label: "nevanlinna-norm".into(), class: nev.classify(), value: nev.value },
        ConditionReport {
            label: "area-sigma-1".into(),
            class: if area.diverging { Class::Diverging } else { Class::Finite },
            value: area.value,
        },
        ConditionReport {
            label: "carrier-entropy".into(),
            class: worst.classify(),
            value: worst.value,
        },
    ];
    let (consistent, violations) = chain_consistency(&conditions);
    Ok(ImplicationReport { conditions, consistent, violations })
}

/// Hardy chain at exponent `p`: (1) the gap-sum test, (2) the `(1+p)`-area
/// condition, (3) `(1-p)`-exponent arc sums of the corona carrier sets.
pub fn thm_hardy_pipeline(
    mu: &AtomicMeasure,
    p: f64,
    params: &PipelineParams,
) -> Result<ImplicationReport> {
    if mu.is_empty() {
        return Ok(ImplicationReport { conditions: Vec::new(), consistent: true, violations: Vec::new() });
    }
    let e = mu.support_set()?;
    let depth = effective_depth(&e, params.depth);
    let hp = hp_test_sum(mu, &e, p)?;
    let area = sublevel_area_integral(mu, params.level, 1.0 + p, depth)?;
    let corona = corona_decompose(mu, params.m, depth, params.light_divisor)?;
    let sets = extract_bc_sets(&corona)?;
    let gauge = Gauge::power(1.0 - p)?;
    let worst = worst_arc_sum(&sets, &gauge);
    let conditions = vec![
        ConditionReport { label: "hp-test".into(), class: hp.classify(), value: hp.value },
        ConditionReport {
            label: "area-sigma-1p".into(),
            class: if area.diverging { Class::Diverging } else { Class::Finite },
            value: area.value,
        },
        ConditionReport {
            label: "carrier-power".into(),
            class: worst.classify(),
            value: worst.value,
        },
    ];
    let (consistent, violations) = chain_consistency(&conditions);
    Ok(ImplicationReport { conditions, consistent, violations })
}

fn worst_arc_sum(sets: &[ClosedSet], gauge: &Gauge) -> Estimate {
    let mut worst = Estimate::finite(0.0);
    for set in sets {
        let est = arc_sum(set, gauge);
        if est.diverging && !worst.diverging {
            worst = est;
        } else if est.diverging == worst.diverging && est.value > worst.value {
            worst = est;
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{cantor_measure, equally_spaced_atoms, CantorSpec};

    #[test]
    fn corona_unit_atom() {
        let mu = AtomicMeasure::delta(0.0, 1.0);
        let d = corona_decompose(&mu, 2.0, 10, 100.0).unwrap();
        assert_eq!(d.roots.len(), 1);
        let root = &d.roots[0];
        assert_eq!(root.arc.generation(), 1);
        assert_eq!(root.arc.index(), 0);
        // light children form the geometric chain accumulating at the atom
        let mut lights: Vec<(u32, u64)> = root
            .children
            .iter()
            .filter(|c| c.kind == NodeKind::Light)
            .map(|c| (c.arc.generation(), c.arc.index()))
            .collect();
        lights.sort();
        let expect: Vec<(u32, u64)> = (2..=10).map(|g| (g, 1)).collect();
        assert_eq!(lights, expect);
        // the spine arc at the cap stays unresolved
        assert_eq!(root.unresolved.len(), 1);
        assert_eq!(root.unresolved[0].generation(), 10);
        assert_eq!(root.unresolved[0].index(), 0);
    }

    #[test]
    fn corona_zero_measure() {
        let d = corona_decompose(&AtomicMeasure::empty(), 1.0, 8, 100.0).unwrap();
        assert!(d.roots.is_empty());
        assert!(d.unresolved_top.is_empty());
    }

    #[test]
    fn corona_cantor_root_is_circle() {
        let mu = cantor_measure(&CantorSpec { ratio: 4.0, generations: 8 }).unwrap();
        let d = corona_decompose(&mu, 1.0, 12, 100.0).unwrap();
        assert_eq!(d.roots.len(), 1);
        assert_eq!(d.roots[0].arc.generation(), 0);
        // light children sit inside the complementary gaps with zero mass
        for child in &d.roots[0].children {
            assert_eq!(child.kind, NodeKind::Light);
            let arc = child.arc.to_arc();
            assert!(mu.measure_of_arc(&arc) / arc.length() <= 1.0 / 100.0);
        }
    }

    #[test]
    fn corona_alternation_and_maximality() {
        let mu = cantor_measure(&CantorSpec { ratio: 4.0, generations: 8 }).unwrap();
        let m = 1.0;
        let d = corona_decompose(&mu, m, 12, 100.0).unwrap();
        let mut stack: Vec<&CoronaNode> = d.roots.iter().collect();
        while let Some(node) = stack.pop() {
            let dens = density(&mu, &node.arc);
            match node.kind {
                NodeKind::Heavy => {
                    assert!(dens >= m);
                    // maximality: the dyadic parent is either below the heavy
                    // threshold or the light node that hosted the search
                    if let Some(parent) = node.arc.parent() {
                        assert!(density(&mu, &parent) < m);
                    }
                    for c in &node.children {
                        assert_eq!(c.kind, NodeKind::Light);
                    }
                }
                NodeKind::Light => {
                    assert!(dens <= m / 100.0);
                    if let Some(parent) = node.arc.parent() {
                        assert!(density(&mu, &parent) > m / 100.0);
                    }
                    for c in &node.children {
                        assert_eq!(c.kind, NodeKind::Heavy);
                    }
                }
            }
            stack.extend(node.children.iter());
        }
    }

    #[test]
    fn corona_packing_inequality() {
        // sum over heavy children of a light node of |I| <= |J| / 100
        let mu = cantor_measure(&CantorSpec { ratio: 3.0, generations: 9 }).unwrap();
        let d = corona_decompose(&mu, 4.0, 14, 100.0).unwrap();
        let mut stack: Vec<&CoronaNode> = d.roots.iter().collect();
        while let Some(node) = stack.pop() {
            if node.kind == NodeKind::Light {
                let heavy_len: f64 = node
                    .children
                    .iter()
                    .filter(|c| c.kind == NodeKind::Heavy)
                    .map(|c| c.arc.length())
                    .sum();
                assert!(
                    heavy_len <= node.arc.length() / 100.0 + 1e-15,
                    "packing fails on {:?}",
                    node.arc
                );
            }
            stack.extend(node.children.iter());
        }
    }

    #[test]
    fn corona_coverage() {
        // mass on carriers plus unresolved arcs equals the total mass
        let mu = cantor_measure(&CantorSpec { ratio: 4.0, generations: 6 }).unwrap();
        let d = corona_decompose(&mu, 1.0, 10, 100.0).unwrap();
        let sets = extract_bc_sets(&d).unwrap();
        // every atom lies in at least one carrier set or unresolved arc
        'atom: for (pos, _) in mu.atoms() {
            for set in &sets {
                if set.contains(Angle::new(pos)) {
                    continue 'atom;
                }
            }
            let a = Angle::new(pos);
            let covered = d.unresolved_top.iter().any(|u| u.to_arc().contains(a));
            assert!(covered, "atom at {pos} not covered");
        }
    }

    #[test]
    fn extract_unit_atom_carrier() {
        let mu = AtomicMeasure::delta(0.0, 1.0);
        let d = corona_decompose(&mu, 2.0, 10, 100.0).unwrap();
        let sets = extract_bc_sets(&d).unwrap();
        assert_eq!(sets.len(), 1);
        let e = &sets[0];
        // gaps + residual tile the circle; the carrier contains the atom
        assert!(e.contains(Angle::new(0.0)));
        let gap_total = e.gap_length() + e.residual_length();
        assert!((gap_total - 1.0).abs() < 1e-12);
        // no gap carries mass
        for gap in e.gaps() {
            assert_eq!(mu.measure_of_arc(&gap.concentric(0.999)), 0.0);
        }
    }

    #[test]
    fn extract_empty() {
        let d = corona_decompose(&AtomicMeasure::empty(), 1.0, 8, 100.0).unwrap();
        assert!(extract_bc_sets(&d).unwrap().is_empty());
    }

    #[test]
    fn lemma_41_density_check() {
        // every dyadic arc meeting an extracted carrier has density > m/100
        let mu = cantor_measure(&CantorSpec { ratio: 4.0, generations: 6 }).unwrap();
        let m = 1.0;
        let depth = 10;
        let d = corona_decompose(&mu, m, depth, 100.0).unwrap();
        for set in extract_bc_sets(&d).unwrap() {
            // restrict attention to arcs inside the heavy root
            for generation in 1..=depth {
                for arc in set.dyadic_arcs_meeting(generation).unwrap() {
                    let a = arc.to_arc();
                    // skip arcs outside the carrier's heavy interval (the
                    // complement gap also "meets" the set at its endpoints)
                    if mu.measure_of_arc(&a) == 0.0 {
                        continue;
                    }
                    let dens = mu.measure_of_arc(&a) / a.length();
                    assert!(
                        dens > m / 100.0,
                        "gen {generation} arc {} has density {dens}",
                        arc.index()
                    );
                }
            }
        }
    }

    #[test]
    fn area_integral_zero_measure() {
        let est = sublevel_area_integral(&AtomicMeasure::empty(), 0.5, 1.0, 12).unwrap();
        assert_eq!(est.value, 0.0);
        assert!(!est.diverging);
    }

    #[test]
    fn area_integral_single_atom_converges() {
        let mu = AtomicMeasure::delta(0.0, 1.0);
        let mut prev = 0.0;
        for depth in [10u32, 14, 18] {
            let est = sublevel_area_integral(&mu, 0.5, 1.0, depth).unwrap();
            assert!(!est.diverging, "depth {depth}");
            assert!(est.value >= prev - 1e-12);
            prev = est.value;
        }
        // partial sums stabilize: doubling the depth changes little
        let a = sublevel_area_integral(&mu, 0.5, 1.0, 14).unwrap();
        let b = sublevel_area_integral(&mu, 0.5, 1.0, 20).unwrap();
        assert!((b.value - a.value).abs() < 0.05 * b.value.max(1e-9));
        assert!(a.lower <= a.value + 1e-15 && a.value <= a.upper + 1e-15);
    }

    #[test]
    fn pipelines_single_atom_consistent() {
        let mu = AtomicMeasure::delta(0.25, 1.0);
        let params = PipelineParams::default();
        let nev = thm_nevanlinna_pipeline(&mu, &params).unwrap();
        assert!(nev.consistent, "{:?}", nev.violations);
        for c in &nev.conditions {
            assert_eq!(c.class, Class::Finite);
        }
        let hardy = thm_hardy_pipeline(&mu, 0.3, &params).unwrap();
        assert!(hardy.consistent, "{:?}", hardy.violations);
    }

    #[test]
    fn pipelines_empty_measure_vacuous() {
        let params = PipelineParams::default();
        assert!(thm_nevanlinna_pipeline(&AtomicMeasure::empty(), &params).unwrap().consistent);
        assert!(thm_hardy_pipeline(&AtomicMeasure::empty(), 0.3, &params).unwrap().consistent);
    }

    #[test]
    fn hardy_pipeline_flags_subthreshold_cantor() {
        // log A < log 2 / (1 - q) with q = 1 - p = 0.7 exponent: A^{0.7} < 2
        let mu = cantor_measure(&CantorSpec { ratio: 2.4, generations: 10 }).unwrap();
        let params = PipelineParams { depth: 18, ..Default::default() };
        let rep = thm_hardy_pipeline(&mu, 0.3, &params).unwrap();
        assert!(rep.consistent, "{:?}", rep.violations);
        let carrier = rep.conditions.iter().find(|c| c.label == "carrier-power").unwrap();
        assert_eq!(carrier.class, Class::Diverging);
        let hp = rep.conditions.iter().find(|c| c.label == "hp-test").unwrap();
        assert_eq!(hp.class, Class::Diverging);
    }

    #[test]
    fn spread_family_area_decreases_with_n() {
        // total ~ n^{1-(2-eps)(1-p)} with eps = 0.5, p = 0.3: exponent -0.05
        let mut prev = f64::INFINITY;
        for n in [64u32, 256] {
            let mu = equally_spaced_atoms(n, 0.5).unwrap();
            let est = sublevel_area_integral(&mu, (-1.0f64).exp(), 1.3, 18).unwrap();
            assert!(est.value > 0.0);
            assert!(est.value <= prev * 1.25, "n={n}: {} vs prev {}", est.value, prev);
            prev = est.value;
        }
    }
}
