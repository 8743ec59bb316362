//! Geometry and measure primitives on the unit circle.
//!
//! The circle is normalized to total length 1; positions and arc lengths are
//! measured in turns. Arcs are half-open and contain their left endpoint, so
//! every partition of the circle assigns each point to exactly one arc.

use std::fmt::Write as _;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Deepest dyadic generation. `k / 2^n` stays exactly representable well past
/// this, but sums over `2^n` arcs have to stay countable in `f64`.
pub const MAX_GENERATION: u32 = 48;

/// Minimum arc length that operations like the Whitney decomposition accept.
pub const MIN_RESOLUTION: f64 = 1.0 / (1u64 << MAX_GENERATION) as f64;

const TAU: f64 = std::f64::consts::TAU;

/// A point on the unit circle, stored as a fraction of a full revolution.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct Angle {
    turns: f64,
}

impl Angle {
    pub fn new(turns: f64) -> Self {
        assert!(turns.is_finite(), "angle must be finite");
        let mut t = turns.rem_euclid(1.0);
        if t >= 1.0 {
            t = 0.0; // rem_euclid can return 1.0 for tiny negatives
        }
        Angle { turns: t }
    }

    pub fn turns(self) -> f64 {
        self.turns
    }

    /// Circle distance in turns, always in [0, 1/2].
    pub fn distance(self, other: Angle) -> f64 {
        let d = (self.turns - other.turns).abs();
        d.min(1.0 - d)
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::from_polar(1.0, TAU * self.turns)
    }
}

/// Half-open arc `[left, left + length)`, wrapping around 0 when needed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Arc {
    left: Angle,
    length: f64,
}

impl Arc {
    pub fn new(left: Angle, length: f64) -> Result<Self> {
        if !(length > 0.0 && length <= 1.0) || !length.is_finite() {
            return Err(Error::BadArcLength(length));
        }
        Ok(Arc { left, length })
    }

    pub fn full_circle() -> Self {
        Arc { left: Angle::new(0.0), length: 1.0 }
    }

    pub fn left(&self) -> Angle {
        self.left
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    /// Right endpoint (not contained in the arc).
    pub fn right(&self) -> Angle {
        Angle::new(self.left.turns + self.length)
    }

    pub fn midpoint(&self) -> Angle {
        Angle::new(self.left.turns + 0.5 * self.length)
    }

    /// Offset of `a` from the left endpoint, wrapped into [0, 1).
    fn offset(&self, a: Angle) -> f64 {
        let mut s = a.turns - self.left.turns;
        if s < 0.0 {
            s += 1.0;
        }
        s
    }

    /// Half-open membership.
    pub fn contains(&self, a: Angle) -> bool {
        self.length >= 1.0 || self.offset(a) < self.length
    }

    /// Whether `a` lies strictly inside the arc (excluding both endpoints).
    pub fn interior_contains(&self, a: Angle) -> bool {
        let s = self.offset(a);
        s > 0.0 && s < self.length
    }

    /// Whether the closed arc `[left2, left2 + len2]` lies inside the open
    /// interior of `self`.
    pub fn interior_contains_closed(&self, left2: Angle, len2: f64) -> bool {
        let s = self.offset(left2);
        s > 0.0 && s + len2 < self.length
    }

    /// Circle distance from `a` to the closed arc; 0 on the closure.
    pub fn distance_to(&self, a: Angle) -> f64 {
        let s = self.offset(a);
        if s <= self.length {
            0.0
        } else {
            (s - self.length).min(1.0 - s)
        }
    }

    /// Concentric rescaling: same midpoint, length `factor * |I|` clamped to 1.
    pub fn concentric(&self, factor: f64) -> Arc {
        let len = (self.length * factor).min(1.0);
        let mid = self.left.turns + 0.5 * self.length;
        Arc { left: Angle::new(mid - 0.5 * len), length: len }
    }

    /// Point `z_J = (1 - |J|/2) e^{i theta_J}` over the arc midpoint.
    pub fn anchor_point(&self) -> Complex64 {
        Complex64::from_polar(1.0 - 0.5 * self.length, TAU * self.midpoint().turns())
    }
}

/// Dyadic arc of a given generation: `[k/2^n, (k+1)/2^n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DyadicArc {
    generation: u32,
    index: u64,
}

impl DyadicArc {
    pub fn new(generation: u32, index: u64) -> Result<Self> {
        if generation > MAX_GENERATION {
            return Err(Error::GenerationCap(generation));
        }
        if index >= 1u64 << generation {
            return Err(Error::InvalidParameter(format!(
                "dyadic index {index} out of range for generation {generation}"
            )));
        }
        Ok(DyadicArc { generation, index })
    }

    pub fn root() -> Self {
        DyadicArc { generation: 0, index: 0 }
    }

    pub fn generation(&self) -> u32 {
        self.generation
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    pub fn length(&self) -> f64 {
        // Exact: powers of two are representable.
        (0.5f64).powi(self.generation as i32)
    }

    pub fn left_turns(&self) -> f64 {
        self.index as f64 * self.length()
    }

    pub fn to_arc(&self) -> Arc {
        Arc { left: Angle::new(self.left_turns()), length: self.length() }
    }

    pub fn children(&self) -> [DyadicArc; 2] {
        debug_assert!(self.generation < MAX_GENERATION);
        [
            DyadicArc { generation: self.generation + 1, index: 2 * self.index },
            DyadicArc { generation: self.generation + 1, index: 2 * self.index + 1 },
        ]
    }

    pub fn parent(&self) -> Option<DyadicArc> {
        (self.generation > 0)
            .then(|| DyadicArc { generation: self.generation - 1, index: self.index / 2 })
    }

    /// The unique generation-`n` dyadic arc containing `a` (half-open).
    pub fn containing(a: Angle, generation: u32) -> Result<Self> {
        if generation > MAX_GENERATION {
            return Err(Error::GenerationCap(generation));
        }
        // Multiplying by a power of two is exact, so boundary atoms land in
        // the arc to their right.
        let scaled = a.turns() * (1u64 << generation) as f64;
        let index = (scaled.floor() as u64).min((1u64 << generation) - 1);
        Ok(DyadicArc { generation, index })
    }
}

/// Finite positive measure given by weighted atoms. Atoms are kept sorted by
/// position and duplicates are merged on construction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AtomicMeasure {
    positions: Vec<f64>,
    masses: Vec<f64>,
}

impl AtomicMeasure {
    pub fn new(atoms: Vec<(f64, f64)>) -> Result<Self> {
        let mut cleaned: Vec<(f64, f64)> = Vec::with_capacity(atoms.len());
        for (pos, mass) in atoms {
            if !(mass > 0.0) || !mass.is_finite() {
                return Err(Error::InvalidParameter(format!("atom mass {mass} must be positive")));
            }
            cleaned.push((Angle::new(pos).turns(), mass));
        }
        cleaned.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut positions = Vec::with_capacity(cleaned.len());
        let mut masses = Vec::with_capacity(cleaned.len());
        for (pos, mass) in cleaned {
            if positions.last() == Some(&pos) {
                *masses.last_mut().unwrap() += mass;
            } else {
                positions.push(pos);
                masses.push(mass);
            }
        }
        Ok(AtomicMeasure { positions, masses })
    }

    pub fn empty() -> Self {
        AtomicMeasure { positions: Vec::new(), masses: Vec::new() }
    }

    pub fn delta(pos: f64, mass: f64) -> Self {
        AtomicMeasure::new(vec![(pos, mass)]).expect("positive mass")
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn atoms(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.positions.iter().copied().zip(self.masses.iter().copied())
    }

    pub fn positions(&self) -> &[f64] {
        &self.positions
    }

    pub fn masses(&self) -> &[f64] {
        &self.masses
    }

    pub fn total_mass(&self) -> f64 {
        crate::quad::tree_sum_iter(self.masses.iter().copied())
    }

    /// Mass carried by `arc` under the half-open convention.
    pub fn measure_of_arc(&self, arc: &Arc) -> f64 {
        if self.positions.is_empty() {
            return 0.0;
        }
        if arc.length() >= 1.0 {
            return self.total_mass();
        }
        let lo = arc.left().turns();
        let hi = lo + arc.length();
        let from = self.positions.partition_point(|&p| p < lo);
        if hi <= 1.0 {
            let to = self.positions.partition_point(|&p| p < hi);
            crate::quad::tree_sum(&self.masses[from..to])
        } else {
            // wraps past 0
            let to = self.positions.partition_point(|&p| p < hi - 1.0);
            crate::quad::tree_sum(&self.masses[from..])
                + crate::quad::tree_sum(&self.masses[..to])
        }
    }

    /// Restriction to `arc` with all masses multiplied by `c`.
    pub fn restrict_and_scale(&self, arc: &Arc, c: f64) -> Result<AtomicMeasure> {
        if !(c >= 0.0) {
            return Err(Error::InvalidParameter(format!("scale {c} must be non-negative")));
        }
        if c == 0.0 {
            return Ok(AtomicMeasure::empty());
        }
        let mut atoms = Vec::new();
        for (pos, mass) in self.atoms() {
            if arc.contains(Angle::new(pos)) {
                atoms.push((pos, mass * c));
            }
        }
        AtomicMeasure::new(atoms)
    }

    /// Adds another measure (atomwise, merging coincident positions).
    pub fn merged_with(&self, other: &AtomicMeasure) -> AtomicMeasure {
        let atoms = self.atoms().chain(other.atoms()).collect();
        AtomicMeasure::new(atoms).expect("merging positive measures")
    }

    /// Mass of the arc of length `2 eps` centred at `x` (clamped to the whole
    /// circle for `eps >= 1/2`).
    pub fn mass_near(&self, x: Angle, eps: f64) -> f64 {
        if eps >= 0.5 {
            return self.total_mass();
        }
        if eps <= 0.0 {
            return 0.0;
        }
        let arc = Arc::new(Angle::new(x.turns() - eps), 2.0 * eps).expect("positive length");
        self.measure_of_arc(&arc)
    }

    /// Closed support as a `ClosedSet`: the gaps are the open arcs between
    /// consecutive atoms.
    pub fn support_set(&self) -> Result<ClosedSet> {
        if self.positions.is_empty() {
            return Err(Error::InvalidParameter("empty measure has no support set".into()));
        }
        if self.positions.len() == 1 {
            let gap = Arc::new(Angle::new(self.positions[0]), 1.0)?;
            return ClosedSet::new(vec![gap], Vec::new());
        }
        let mut gaps = Vec::with_capacity(self.positions.len());
        for i in 0..self.positions.len() {
            let a = self.positions[i];
            let b = if i + 1 < self.positions.len() {
                self.positions[i + 1]
            } else {
                self.positions[0] + 1.0
            };
            let len = b - a;
            if len > 0.0 {
                gaps.push(Arc::new(Angle::new(a), len)?);
            }
        }
        ClosedSet::new(gaps, Vec::new())
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from("# atomic-measure v1\n");
        for (pos, mass) in self.atoms() {
            let _ = writeln!(out, "{:.17e} {:.17e}", pos, mass);
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut atoms = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut parts = line.split_whitespace();
            let pos = parse_f64(parts.next(), lineno)?;
            let mass = parse_f64(parts.next(), lineno)?;
            atoms.push((pos, mass));
        }
        AtomicMeasure::new(atoms)
    }
}

fn parse_f64(field: Option<&str>, lineno: usize) -> Result<f64> {
    field
        .ok_or_else(|| Error::Parse(format!("line {}: missing field", lineno + 1)))?
        .parse::<f64>()
        .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))
}

/// A closed subset of the circle described by its enumerated complementary
/// arcs (`gaps`) plus closed arcs that have not been subdivided yet
/// (`residual`). Gaps and residual arcs together tile the circle; the set is
/// the complement of the open gaps.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClosedSet {
    gaps: Vec<Arc>,
    residual: Vec<Arc>,
}

impl ClosedSet {
    pub fn new(mut gaps: Vec<Arc>, mut residual: Vec<Arc>) -> Result<Self> {
        gaps.sort_by(|a, b| a.left().turns().total_cmp(&b.left().turns()));
        residual.sort_by(|a, b| a.left().turns().total_cmp(&b.left().turns()));
        let mut all: Vec<&Arc> = gaps.iter().chain(residual.iter()).collect();
        all.sort_by(|a, b| a.left().turns().total_cmp(&b.left().turns()));
        let total: f64 = all.iter().map(|a| a.length()).sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::BadClosedSet(format!(
                "gaps plus residual cover length {total}, expected 1"
            )));
        }
        for window in all.windows(2) {
            let end = window[0].left().turns() + window[0].length();
            let next = window[1].left().turns();
            if next < end - 1e-12 {
                return Err(Error::BadClosedSet(format!(
                    "arcs overlap near {next} turns"
                )));
            }
        }
        Ok(ClosedSet { gaps, residual })
    }

    /// Set with empty residual; the complement of the gaps is computed and
    /// kept as residual arcs so the tiling invariant holds.
    pub fn from_gaps(gaps: Vec<Arc>) -> Result<Self> {
        let mut sorted = gaps.clone();
        sorted.sort_by(|a, b| a.left().turns().total_cmp(&b.left().turns()));
        let mut residual = Vec::new();
        if sorted.is_empty() {
            residual.push(Arc::full_circle());
        } else {
            for i in 0..sorted.len() {
                let end = sorted[i].left().turns() + sorted[i].length();
                let next = if i + 1 < sorted.len() {
                    sorted[i + 1].left().turns()
                } else {
                    sorted[0].left().turns() + 1.0
                };
                let len = next - end;
                if len > 1e-15 {
                    residual.push(Arc::new(Angle::new(end), len)?);
                }
            }
        }
        ClosedSet::new(sorted, residual)
    }

    /// The set consisting of finitely many points.
    pub fn from_points(points: &[f64]) -> Result<Self> {
        let mut uniq: Vec<f64> = points.iter().map(|&p| Angle::new(p).turns()).collect();
        uniq.sort_by(|a, b| a.total_cmp(b));
        uniq.dedup();
        if uniq.is_empty() {
            return Err(Error::BadClosedSet("a closed set needs at least one point".into()));
        }
        let mut gaps = Vec::with_capacity(uniq.len());
        for i in 0..uniq.len() {
            let a = uniq[i];
            let b = if i + 1 < uniq.len() { uniq[i + 1] } else { uniq[0] + 1.0 };
            gaps.push(Arc::new(Angle::new(a), b - a)?);
        }
        ClosedSet::new(gaps, Vec::new())
    }

    pub fn gaps(&self) -> &[Arc] {
        &self.gaps
    }

    pub fn residual(&self) -> &[Arc] {
        &self.residual
    }

    pub fn gap_length(&self) -> f64 {
        self.gaps.iter().map(|a| a.length()).sum()
    }

    pub fn residual_length(&self) -> f64 {
        self.residual.iter().map(|a| a.length()).sum()
    }

    /// The gap whose interior contains `a`, if any. Gaps are sorted and
    /// disjoint, so only the gap starting at or before `a` (or the final,
    /// possibly wrapping gap) can qualify.
    fn gap_interior_index(&self, a: Angle) -> Option<usize> {
        if self.gaps.is_empty() {
            return None;
        }
        let t = a.turns();
        let idx = self.gaps.partition_point(|g| g.left().turns() <= t);
        let last = self.gaps.len() - 1;
        for i in [idx.wrapping_sub(1).min(last), last] {
            if self.gaps[i].interior_contains(a) {
                return Some(i);
            }
        }
        None
    }

    /// Membership: a point belongs to the set unless it lies strictly inside
    /// one of the open gaps.
    pub fn contains(&self, a: Angle) -> bool {
        self.gap_interior_index(a).is_none()
    }

    /// Circle distance to the set, i.e. distance to the nearer endpoint of
    /// the gap containing the point (0 outside all gaps).
    pub fn distance(&self, a: Angle) -> f64 {
        match self.gap_interior_index(a) {
            Some(i) => {
                let gap = &self.gaps[i];
                let s = gap.offset(a);
                s.min(gap.length() - s)
            }
            None => 0.0,
        }
    }

    fn closure_meets(&self, left: f64, len: f64) -> bool {
        // The closed arc misses the set iff it sits inside a single open
        // gap; only the gap owning the left endpoint can contain it.
        if self.gaps.is_empty() {
            return true;
        }
        let a = Angle::new(left);
        let idx = self.gaps.partition_point(|g| g.left().turns() <= left);
        let last = self.gaps.len() - 1;
        for i in [idx.wrapping_sub(1).min(last), last] {
            if self.gaps[i].interior_contains_closed(a, len) {
                return false;
            }
        }
        true
    }

    /// All generation-`n` dyadic arcs whose closure intersects the set.
    pub fn dyadic_arcs_meeting(&self, generation: u32) -> Result<Vec<DyadicArc>> {
        if generation > MAX_GENERATION {
            return Err(Error::GenerationCap(generation));
        }
        let mut level = vec![DyadicArc::root()];
        if !self.closure_meets(0.0, 1.0) {
            level.clear();
        }
        for _ in 0..generation {
            let mut next = Vec::with_capacity(2 * level.len());
            for arc in &level {
                for child in arc.children() {
                    if self.closure_meets(child.left_turns(), child.length()) {
                        next.push(child);
                    }
                }
            }
            level = next;
        }
        Ok(level)
    }

    /// Number of dyadic arcs meeting the set per generation `0..=depth`.
    pub fn meeting_counts(&self, depth: u32) -> Result<Vec<u64>> {
        if depth > MAX_GENERATION {
            return Err(Error::GenerationCap(depth));
        }
        let mut counts = Vec::with_capacity(depth as usize + 1);
        let mut level = vec![DyadicArc::root()];
        if !self.closure_meets(0.0, 1.0) {
            level.clear();
        }
        counts.push(level.len() as u64);
        for _ in 0..depth {
            let mut next = Vec::with_capacity(2 * level.len());
            for arc in &level {
                for child in arc.children() {
                    if self.closure_meets(child.left_turns(), child.length()) {
                        next.push(child);
                    }
                }
            }
            counts.push(next.len() as u64);
            level = next;
        }
        Ok(counts)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from("# closed-set v1\n");
        for gap in &self.gaps {
            let _ = writeln!(out, "gap {:.17e} {:.17e}", gap.left().turns(), gap.length());
        }
        for arc in &self.residual {
            let _ = writeln!(out, "residual {:.17e} {:.17e}", arc.left().turns(), arc.length());
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut gaps = Vec::new();
        let mut residual = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut parts = line.split_whitespace();
            let kind = parts
                .next()
                .ok_or_else(|| Error::Parse(format!("line {}: empty record", lineno + 1)))?;
            let left = parse_f64(parts.next(), lineno)?;
            let len = parse_f64(parts.next(), lineno)?;
            let arc = Arc::new(Angle::new(left), len)?;
            match kind {
                "gap" => gaps.push(arc),
                "residual" => residual.push(arc),
                other => {
                    return Err(Error::Parse(format!(
                        "line {}: unknown record '{other}'",
                        lineno + 1
                    )))
                }
            }
        }
        ClosedSet::new(gaps, residual)
    }
}

/// One tile of a Whitney decomposition.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct WhitneyArc {
    pub arc: Arc,
    /// Level 0 is the central tile; level k sits at distance about
    /// `2^{-k-1} |J|` from the nearer endpoint of `J`.
    pub level: u32,
    /// Edge tiles left over when the decomposition is truncated.
    pub remainder: bool,
}

/// Tiles `j` with Whitney arcs: a central arc of length `|J|/2`, then arcs
/// halving towards both endpoints, truncated after `depth` levels. The two
/// outstanding edge pieces are returned flagged as remainders, so the output
/// is an exact tiling of `j` at every depth.
pub fn whitney_decompose(j: &Arc, depth: u32) -> Result<Vec<WhitneyArc>> {
    let len = j.length();
    if len < MIN_RESOLUTION {
        return Err(Error::DegenerateArc(len, MIN_RESOLUTION));
    }
    if depth == 0 {
        return Ok(vec![WhitneyArc { arc: *j, level: 0, remainder: true }]);
    }
    let base = j.left().turns();
    let mut tiles = Vec::with_capacity(2 * depth as usize + 1);
    // Cumulative edge widths: after the central tile, level k >= 1 tiles span
    // [len/2^{k+2}, len/2^{k+1}) from each endpoint.
    let central = Arc::new(Angle::new(base + 0.25 * len), 0.5 * len)?;
    tiles.push(WhitneyArc { arc: central, level: 0, remainder: false });
    let mut inner = 0.25 * len; // current distance of the tiled region from each endpoint
    for level in 1..depth {
        let width = inner * 0.5;
        let lo = Arc::new(Angle::new(base + inner - width), width)?;
        let hi = Arc::new(Angle::new(base + len - inner), width)?;
        tiles.push(WhitneyArc { arc: lo, level, remainder: false });
        tiles.push(WhitneyArc { arc: hi, level, remainder: false });
        inner = width;
    }
    let lo_rem = Arc::new(Angle::new(base), inner)?;
    let hi_rem = Arc::new(Angle::new(base + len - inner), inner)?;
    tiles.push(WhitneyArc { arc: lo_rem, level: depth, remainder: true });
    tiles.push(WhitneyArc { arc: hi_rem, level: depth, remainder: true });
    Ok(tiles)
}
