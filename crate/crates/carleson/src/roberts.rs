//! Grating decomposition of a measure against a gauge-adapted sequence of
//! dyadic partitions, with the light-arc entropy bound and the non-charging
//! decay table.

use serde::{Deserialize, Serialize};

use crate::circle::{Angle, Arc, AtomicMeasure, ClosedSet, DyadicArc};
use crate::error::{Error, Result};
use crate::gauge::{Gauge, PhiDyadicGrid};
use crate::quad::tree_sum;

/// Result of grating a measure against one partition.
#[derive(Debug, Clone)]
pub struct GrateOutcome {
    pub grated: AtomicMeasure,
    pub remainder: AtomicMeasure,
    pub heavy: Vec<Arc>,
}

/// Grates `mu` against an explicit partition of the circle: on light arcs
/// (`mu(I) <= C phi(|I|)`) the grated measure keeps all of `mu`, on heavy
/// arcs it is scaled down to mass exactly `C phi(|I|)`.
pub fn grate(mu: &AtomicMeasure, partition: &[Arc], c: f64, gauge: &Gauge) -> Result<GrateOutcome> {
    let total: f64 = partition.iter().map(|a| a.length()).sum();
    if (total - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidParameter(format!(
            "partition covers length {total}, expected 1"
        )));
    }
    if !(c > 0.0) {
        return Err(Error::InvalidParameter(format!("grating constant {c} must be positive")));
    }
    let mut grated = Vec::new();
    let mut remainder = Vec::new();
    let mut heavy = Vec::new();
    for arc in partition {
        let mass = mu.measure_of_arc(arc);
        let cap = c * gauge.phi(arc.length());
        if mass <= cap {
            for (pos, m) in mu.atoms() {
                if arc.contains(Angle::new(pos)) {
                    grated.push((pos, m));
                }
            }
        } else {
            heavy.push(*arc);
            let scale = cap / mass;
            for (pos, m) in mu.atoms() {
                if arc.contains(Angle::new(pos)) {
                    if scale > 0.0 {
                        grated.push((pos, m * scale));
                    }
                    remainder.push((pos, m * (1.0 - scale)));
                }
            }
        }
    }
    Ok(GrateOutcome {
        grated: AtomicMeasure::new(grated)?,
        remainder: AtomicMeasure::new(remainder)?,
        heavy,
    })
}

/// Grates against the full dyadic partition of one generation without
/// enumerating empty arcs.
fn grate_dyadic(
    mu: &AtomicMeasure,
    generation: u32,
    c: f64,
    gauge: &Gauge,
) -> Result<(AtomicMeasure, AtomicMeasure, Vec<DyadicArc>)> {
    let cap = c * gauge.phi((0.5f64).powi(generation as i32));
    let mut grated = Vec::with_capacity(mu.len());
    let mut remainder = Vec::new();
    let mut heavy = Vec::new();
    let positions = mu.positions();
    let masses = mu.masses();
    let mut start = 0usize;
    while start < positions.len() {
        let arc = DyadicArc::containing(Angle::new(positions[start]), generation)?;
        let mut end = start + 1;
        while end < positions.len()
            && DyadicArc::containing(Angle::new(positions[end]), generation)?.index() == arc.index()
        {
            end += 1;
        }
        let mass = tree_sum(&masses[start..end]);
        if mass <= cap {
            for i in start..end {
                grated.push((positions[i], masses[i]));
            }
        } else {
            heavy.push(arc);
            let scale = cap / mass;
            for i in start..end {
                grated.push((positions[i], masses[i] * scale));
                remainder.push((positions[i], masses[i] * (1.0 - scale)));
            }
        }
        start = end;
    }
    Ok((AtomicMeasure::new(grated)?, AtomicMeasure::new(remainder)?, heavy))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RobertsLayer {
    pub generation: u32,
    pub measure: AtomicMeasure,
    pub heavy: Vec<DyadicArc>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RobertsParams {
    pub c: f64,
    pub j0: usize,
    pub max_layers: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RobertsDecomposition {
    pub layers: Vec<RobertsLayer>,
    pub residual: AtomicMeasure,
    pub grid: PhiDyadicGrid,
    pub params: RobertsParams,
}

/// Iterated grating against the partitions `D_{n_{j + j0}}`, `j = 1..=max_layers`.
pub fn roberts_decompose(
    mu: &AtomicMeasure,
    gauge: &Gauge,
    grid: &PhiDyadicGrid,
    c: f64,
    j0: usize,
    max_layers: usize,
) -> Result<RobertsDecomposition> {
    if grid.len() < j0 + max_layers {
        return Err(Error::GridTooShallow { have: grid.len(), need: j0 + max_layers });
    }
    if !(c > 0.0) {
        return Err(Error::InvalidParameter(format!("grating constant {c} must be positive")));
    }
    let mut current = mu.clone();
    let mut layers = Vec::with_capacity(max_layers);
    for j in 0..max_layers {
        let generation = grid.generations[j0 + j];
        let (grated, remainder, heavy) = grate_dyadic(&current, generation, c, gauge)?;
        layers.push(RobertsLayer { generation, measure: grated, heavy });
        current = remainder;
        if current.is_empty() {
            break;
        }
    }
    Ok(RobertsDecomposition {
        layers,
        residual: current,
        grid: grid.clone(),
        params: RobertsParams { c, j0, max_layers },
    })
}

impl RobertsDecomposition {
    pub fn layer_masses(&self) -> Vec<f64> {
        self.layers.iter().map(|l| l.measure.total_mass()).collect()
    }

    pub fn residual_mass(&self) -> f64 {
        self.residual.total_mass()
    }

    /// A closed set carrying the residual: the final layer's heavy arcs are
    /// kept as residual arcs, everything else becomes gaps.
    pub fn residual_support_set(&self) -> Result<Option<ClosedSet>> {
        if self.residual.is_empty() {
            return Ok(None);
        }
        let last = match self.layers.last() {
            Some(layer) if !layer.heavy.is_empty() => layer,
            _ => return Ok(None),
        };
        let arcs: Vec<Arc> = last.heavy.iter().map(|d| d.to_arc()).collect();
        let mut gaps = Vec::new();
        for i in 0..arcs.len() {
            let end = arcs[i].left().turns() + arcs[i].length();
            let next = if i + 1 < arcs.len() {
                arcs[i + 1].left().turns()
            } else {
                arcs[0].left().turns() + 1.0
            };
            if next - end > 1e-15 {
                gaps.push(Arc::new(Angle::new(end), next - end)?);
            }
        }
        Ok(Some(ClosedSet::new(gaps, arcs)?))
    }

    /// Re-checks the defining invariants against the original measure.
    /// Returns human-readable violation descriptions (empty when clean).
    pub fn verify(&self, original: &AtomicMeasure, gauge: &Gauge) -> Vec<String> {
        let mut violations = Vec::new();
        // exact mass bookkeeping, atom by atom
        let mut reconstructed = self.residual.clone();
        for layer in &self.layers {
            reconstructed = reconstructed.merged_with(&layer.measure);
        }
        if reconstructed.len() != original.len() {
            violations.push(format!(
                "reconstruction has {} atoms, original {}",
                reconstructed.len(),
                original.len()
            ));
        } else {
            for ((p1, m1), (p2, m2)) in reconstructed.atoms().zip(original.atoms()) {
                if p1 != p2 || (m1 - m2).abs() > 1e-12 * m2.max(1e-300) {
                    violations.push(format!("atom at {p2} has mass {m1}, expected {m2}"));
                    break;
                }
            }
        }
        // layer caps, exhaustively over occupied arcs
        for (j, layer) in self.layers.iter().enumerate() {
            let cap = self.params.c * gauge.phi((0.5f64).powi(layer.generation as i32));
            let positions = layer.measure.positions();
            let masses = layer.measure.masses();
            let mut start = 0usize;
            while start < positions.len() {
                let arc = DyadicArc::containing(Angle::new(positions[start]), layer.generation)
                    .expect("generation within cap");
                let mut end = start + 1;
                while end < positions.len()
                    && DyadicArc::containing(Angle::new(positions[end]), layer.generation)
                        .expect("generation within cap")
                        .index()
                        == arc.index()
                {
                    end += 1;
                }
                let mass = tree_sum(&masses[start..end]);
                if mass > cap * (1.0 + 1e-12) {
                    violations.push(format!(
                        "layer {} arc {} carries {mass:.3e} > cap {cap:.3e}",
                        j + 1,
                        arc.index()
                    ));
                }
                start = end;
            }
        }
        // nesting: whatever is left after layer j lives on layer-j heavy arcs
        for (j, layer) in self.layers.iter().enumerate() {
            let mut rest = self.residual.clone();
            for later in &self.layers[j + 1..] {
                rest = rest.merged_with(&later.measure);
            }
            for (pos, _) in rest.atoms() {
                let inside = layer
                    .heavy
                    .iter()
                    .any(|arc| arc.to_arc().contains(Angle::new(pos)));
                if !inside {
                    violations.push(format!(
                        "atom at {pos} survives layer {} outside its heavy arcs",
                        j + 1
                    ));
                    break;
                }
            }
        }
        violations
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LightEntropy {
    /// Sum of `phi(|I|)` over all light arcs swept by the decomposition
    /// (light arcs of layer `j >= 2` are counted inside the previous layer's
    /// heavy arcs, where the remaining mass lives).
    pub value: f64,
    /// `2^{n_1} phi(2^{-n_1}) + (1 + c_hi) mu_total / C`.
    pub bound: f64,
}

pub fn light_arc_entropy(
    d: &RobertsDecomposition,
    gauge: &Gauge,
    mu_total: f64,
) -> LightEntropy {
    let mut value = 0.0;
    let mut prev_heavy: Option<(u32, usize)> = None;
    for layer in &d.layers {
        let len = (0.5f64).powi(layer.generation as i32);
        let parents = match prev_heavy {
            None => (2.0f64).powi(layer.generation as i32),
            Some((gen_prev, heavy_prev)) => {
                heavy_prev as f64 * (2.0f64).powi((layer.generation - gen_prev) as i32)
            }
        };
        let light = parents - layer.heavy.len() as f64;
        value += light * gauge.phi(len);
        prev_heavy = Some((layer.generation, layer.heavy.len()));
    }
    let bound = match d.layers.first() {
        Some(first) => {
            let len = (0.5f64).powi(first.generation as i32);
            (2.0f64).powi(first.generation as i32) * gauge.phi(len)
                + (1.0 + d.grid.c_hi) * mu_total / d.params.c
        }
        None => 0.0,
    };
    LightEntropy { value, bound }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ChargesRow {
    pub j0: usize,
    pub layers_used: usize,
    /// Total mass the layers place on the test set.
    pub layer_mass_on_set: f64,
    pub residual_mass: f64,
}

/// Decomposes at increasing offsets and reports how much mass the layers put
/// on the test set versus what survives into the residual. A measure that
/// charges the set keeps residual mass bounded below as the offset grows.
pub fn charges_bc_test(
    mu: &AtomicMeasure,
    gauge: &Gauge,
    grid: &PhiDyadicGrid,
    c: f64,
    offsets: &[usize],
    e: &ClosedSet,
) -> Result<Vec<ChargesRow>> {
    let mut rows = Vec::with_capacity(offsets.len());
    for &j0 in offsets {
        if grid.len() <= j0 {
            return Err(Error::GridTooShallow { have: grid.len(), need: j0 + 1 });
        }
        let layers = grid.len() - j0;
        let d = roberts_decompose(mu, gauge, grid, c, j0, layers)?;
        let mut on_set = 0.0;
        for layer in &d.layers {
            for (pos, mass) in layer.measure.atoms() {
                if e.contains(Angle::new(pos)) {
                    on_set += mass;
                }
            }
        }
        rows.push(ChargesRow {
            j0,
            layers_used: d.layers.len(),
            layer_mass_on_set: on_set,
            residual_mass: d.residual_mass(),
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauge::build_grid;
    use proptest::prelude::*;

    fn quarters() -> Vec<Arc> {
        (0..4)
            .map(|k| Arc::new(Angle::new(k as f64 / 4.0), 0.25).unwrap())
            .collect()
    }

    #[test]
    fn grate_empty_measure() {
        let out = grate(&AtomicMeasure::empty(), &quarters(), 1.0, &Gauge::entropy()).unwrap();
        assert!(out.grated.is_empty());
        assert!(out.remainder.is_empty());
        assert!(out.heavy.is_empty());
    }

    #[test]
    fn grate_unit_atom_against_quarters() {
        let mu = AtomicMeasure::delta(0.0, 1.0);
        let out = grate(&mu, &quarters(), 1.0, &Gauge::entropy()).unwrap();
        let cap = 0.25 * (4.0f64).ln();
        assert_eq!(out.heavy.len(), 1);
        assert!((out.grated.total_mass() - cap).abs() < 1e-15);
        assert!((out.remainder.total_mass() - (1.0 - cap)).abs() < 1e-15);
        assert!((out.grated.total_mass() - 0.346574).abs() < 1e-6);
        assert!((out.remainder.total_mass() - 0.653426).abs() < 1e-6);
    }

    #[test]
    fn grate_all_light_is_identity() {
        let mu = AtomicMeasure::new(vec![(0.1, 0.01), (0.6, 0.02)]).unwrap();
        let out = grate(&mu, &quarters(), 1.0, &Gauge::entropy()).unwrap();
        assert_eq!(out.grated, mu);
        assert!(out.remainder.is_empty());
        assert!(out.heavy.is_empty());
    }

    #[test]
    fn decompose_unit_atom_entropy_grid() {
        // the atom is always heavy while the remaining mass exceeds the cap,
        // so the layer masses are exactly the caps C phi(2^{-n_j})
        let mu = AtomicMeasure::delta(0.0, 1.0);
        let g = Gauge::entropy();
        let grid = build_grid(&g, 5).unwrap();
        let d = roberts_decompose(&mu, &g, &grid, 1.0, 0, 5).unwrap();
        let mut remaining = 1.0;
        for layer in &d.layers {
            let cap = g.phi((0.5f64).powi(layer.generation as i32));
            assert!(remaining > cap);
            let mass = layer.measure.total_mass();
            assert!((mass - cap).abs() < 1e-12, "gen {}: {mass} vs {cap}", layer.generation);
            remaining -= cap;
        }
        assert!((d.residual_mass() - remaining).abs() < 1e-12);
        assert!(d.residual_mass() > 0.45);
        let total: f64 = d.layer_masses().iter().sum::<f64>() + d.residual_mass();
        assert!((total - 1.0).abs() < 1e-12);
        assert!(d.verify(&mu, &g).is_empty());
    }

    #[test]
    fn decompose_zero_layers() {
        let mu = AtomicMeasure::delta(0.3, 2.0);
        let g = Gauge::power(0.5).unwrap();
        let grid = build_grid(&g, 4).unwrap();
        let d = roberts_decompose(&mu, &g, &grid, 1.0, 0, 0).unwrap();
        assert!(d.layers.is_empty());
        assert_eq!(d.residual, mu);
    }

    #[test]
    fn decompose_spread_measure_terminates() {
        let sigma = 1e-3;
        let atoms: Vec<(f64, f64)> =
            (0..4096).map(|k| (k as f64 / 4096.0, sigma / 4096.0)).collect();
        let mu = AtomicMeasure::new(atoms).unwrap();
        let g = Gauge::entropy();
        let grid = build_grid(&g, 5).unwrap();
        let d = roberts_decompose(&mu, &g, &grid, 1.0, 0, 5).unwrap();
        assert_eq!(d.layers.len(), 1, "all arcs are light on the first pass");
        assert_eq!(d.residual_mass(), 0.0);
        assert!(d.verify(&mu, &g).is_empty());
    }

    #[test]
    fn grid_too_shallow() {
        let g = Gauge::entropy();
        let grid = build_grid(&g, 3).unwrap();
        let mu = AtomicMeasure::delta(0.0, 1.0);
        assert!(matches!(
            roberts_decompose(&mu, &g, &grid, 1.0, 2, 4),
            Err(Error::GridTooShallow { .. })
        ));
    }

    #[test]
    fn light_entropy_zero_measure() {
        let g = Gauge::entropy();
        let grid = build_grid(&g, 4).unwrap();
        let d = roberts_decompose(&AtomicMeasure::empty(), &g, &grid, 1.0, 0, 4).unwrap();
        let le = light_arc_entropy(&d, &g, 0.0);
        // all 2^{n_1} arcs of the first layer are light; later layers have no
        // heavy parents to sweep
        let expect = 4.0 * g.phi(0.25);
        assert!((le.value - expect).abs() < 1e-12);
        assert!(le.value <= le.bound * (1.0 + 1e-12));
    }

    #[test]
    fn light_entropy_bound_unit_atom() {
        let g = Gauge::entropy();
        let grid = build_grid(&g, 5).unwrap();
        let mu = AtomicMeasure::delta(0.0, 1.0);
        for c in [0.5, 1.0, 2.0, 4.0] {
            let d = roberts_decompose(&mu, &g, &grid, c, 0, 5).unwrap();
            let le = light_arc_entropy(&d, &g, 1.0);
            assert!(le.value <= le.bound, "c={c}: {} > {}", le.value, le.bound);
        }
    }

    #[test]
    fn charges_test_atom_vs_spread() {
        // entropy gauge: the caps phi(2^{-n_j}) over the super-dyadic grid
        // sum to about 0.542 from j0 = 0, so the unit atom keeps residual
        // mass >= 0.45 at every offset, growing with the offset
        let g = Gauge::entropy();
        let grid = build_grid(&g, 5).unwrap();
        let point = ClosedSet::from_points(&[0.0]).unwrap();

        let atom = AtomicMeasure::delta(0.0, 1.0);
        let rows = charges_bc_test(&atom, &g, &grid, 1.0, &[0, 1, 2, 3], &point).unwrap();
        for row in &rows {
            // the caps the layers can skim off the atom
            let caps: f64 = grid.generations[row.j0..]
                .iter()
                .map(|&gen| g.phi((0.5f64).powi(gen as i32)))
                .sum();
            assert!(row.residual_mass >= 1.0 - caps - 1e-12);
            assert!(row.residual_mass > 0.45, "j0={}: residual {}", row.j0, row.residual_mass);
            // every grated layer lands on the test set (all atoms sit at 0)
            assert!((row.layer_mass_on_set + row.residual_mass - 1.0).abs() < 1e-12);
        }
        assert!(rows.last().unwrap().residual_mass >= rows[0].residual_mass - 1e-12);

        let spread = AtomicMeasure::new(
            (0..4096).map(|k| (k as f64 / 4096.0, 1e-3 / 4096.0)).collect(),
        )
        .unwrap();
        let rows = charges_bc_test(&spread, &g, &grid, 1.0, &[0, 1, 2], &point).unwrap();
        for row in &rows {
            assert_eq!(row.residual_mass, 0.0);
        }

        let rows = charges_bc_test(&AtomicMeasure::empty(), &g, &grid, 1.0, &[0], &point).unwrap();
        assert_eq!(rows[0].residual_mass, 0.0);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn conservation_and_caps(
            atoms in proptest::collection::vec((0.0f64..1.0, 1e-4f64..1.0), 1..20),
            c in 0.2f64..4.0,
            j0 in 0usize..2,
        ) {
            let mu = AtomicMeasure::new(atoms).unwrap();
            let g = Gauge::power(0.5).unwrap();
            let grid = build_grid(&g, 10).unwrap();
            let d = roberts_decompose(&mu, &g, &grid, c, j0, 8).unwrap();
            let violations = d.verify(&mu, &g);
            prop_assert!(violations.is_empty(), "{violations:?}");
        }
    }
}
