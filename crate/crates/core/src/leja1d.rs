//! One-dimensional Leja sequences.
//!
//! A Leja sequence for a compact `K` starts on the boundary and picks each new
//! point `eta_k` as a maximizer of `prod_{i<k} |z - eta_i|` over `K`. For the closed
//! unit disk with `eta_0 = 1` every such sequence is explicit: writing
//! `k = sum_l j_l 2^l` in binary, `eta_k = exp(i*pi*sum_l j_l 2^-l)`, i.e. the angle
//! is the bit-reversal of `k` across the binary point. Those angles are kept exactly
//! as [`DyadicAngle`]s and only realized as floating-point numbers on demand.

use std::cmp::Ordering;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{LejaError, Result};
use crate::grid::torus_grid;
use crate::lebesgue::EllipseMap;

/// Distinctness tolerance for floating-point node sequences.
pub const DISTINCT_TOL: f64 = 1e-12;

/// Default number of boundary samples for 1-D sweeps.
pub const DEFAULT_GRID: usize = 1 << 14;

/// Default relative tolerance of the Leja verifier.
pub const DEFAULT_TOL: f64 = 1e-6;

/// The angle `pi * numerator / 2^level`, canonicalized so that the numerator is
/// odd unless the angle is zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DyadicAngle {
    numerator: u64,
    level: u32,
}

const MAX_LEVEL: u32 = 62;

impl DyadicAngle {
    pub const ZERO: DyadicAngle = DyadicAngle {
        numerator: 0,
        level: 0,
    };

    /// `pi * numerator / 2^level`, reduced modulo `2*pi`.
    pub fn new(numerator: u64, level: u32) -> Result<Self> {
        if level > MAX_LEVEL {
            return Err(LejaError::InvalidArgument(format!(
                "dyadic level {level} exceeds {MAX_LEVEL}"
            )));
        }
        let modulus = 1u64 << (level + 1);
        Ok(Self::canonical(numerator % modulus, level))
    }

    fn canonical(mut numerator: u64, mut level: u32) -> Self {
        if numerator == 0 {
            return DyadicAngle::ZERO;
        }
        while numerator % 2 == 0 && level > 0 {
            numerator /= 2;
            level -= 1;
        }
        DyadicAngle { numerator, level }
    }

    pub fn numerator(&self) -> u64 {
        self.numerator
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// Angle divided by pi, in `[0, 2)`.
    pub fn over_pi(&self) -> f64 {
        self.numerator as f64 / (1u64 << self.level) as f64
    }

    pub fn radians(&self) -> f64 {
        PI * self.over_pi()
    }

    /// `exp(i * angle)`; exact at multiples of `pi/2`.
    pub fn to_complex(&self) -> Complex64 {
        match (self.level, self.numerator) {
            (0, 0) => Complex64::new(1.0, 0.0),
            (0, 1) => Complex64::new(-1.0, 0.0),
            (1, 1) => Complex64::new(0.0, 1.0),
            (1, 3) => Complex64::new(0.0, -1.0),
            _ => Complex64::from_polar(1.0, self.radians()),
        }
    }

    /// Sum of two angles modulo `2*pi`.
    pub fn add(&self, other: &DyadicAngle) -> DyadicAngle {
        let level = self.level.max(other.level);
        let modulus = 1u128 << (level + 1);
        let a = (self.numerator as u128) << (level - self.level);
        let b = (other.numerator as u128) << (level - other.level);
        Self::canonical(((a + b) % modulus) as u64, level)
    }
}

/// The angle of the `k`-th point (0-based) of the explicit disk Leja sequence
/// starting at `eta_0 = 1`.
pub fn disk_leja_point(k: u64) -> DyadicAngle {
    if k == 0 {
        return DyadicAngle::ZERO;
    }
    let top = 63 - k.leading_zeros();
    // bit l of k contributes 2^-l, i.e. 2^(top - l) over 2^top
    let mut numerator = 0u64;
    for l in 0..=top {
        if (k >> l) & 1 == 1 {
            numerator |= 1 << (top - l);
        }
    }
    DyadicAngle::canonical(numerator, top)
}

/// A planar compact set, described through its boundary.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CompactDescriptor {
    UnitDisk,
    /// The image of the unit circle under `u -> (R u + 1/(R u)) / 2`.
    Ellipse { r: f64 },
    /// A closed polygon through the listed boundary samples.
    SampledBoundary {
        #[serde(with = "crate::report::cplx_vec")]
        samples: Vec<Complex64>,
    },
}

impl CompactDescriptor {
    pub fn ellipse(r: f64) -> Result<Self> {
        EllipseMap::new(r)?;
        Ok(CompactDescriptor::Ellipse { r })
    }

    pub fn sampled(samples: Vec<Complex64>) -> Result<Self> {
        let c = CompactDescriptor::SampledBoundary { samples };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            CompactDescriptor::UnitDisk => Ok(()),
            CompactDescriptor::Ellipse { r } => EllipseMap::new(*r).map(|_| ()),
            CompactDescriptor::SampledBoundary { samples } => {
                let distinct = samples
                    .iter()
                    .any(|z| (z - samples[0]).norm() > DISTINCT_TOL);
                if samples.len() < 2 || !distinct {
                    Err(LejaError::InvalidCompact(
                        "a sampled boundary needs at least 2 distinct samples".into(),
                    ))
                } else {
                    Ok(())
                }
            }
        }
    }

    /// Boundary samples; `grid_size` is ignored for sampled boundaries.
    pub fn boundary_samples(&self, grid_size: usize) -> Vec<Complex64> {
        match self {
            CompactDescriptor::UnitDisk => torus_grid(grid_size),
            CompactDescriptor::Ellipse { r } => {
                let map = EllipseMap { r: *r };
                torus_grid(grid_size).into_iter().map(|u| map.apply(u)).collect()
            }
            CompactDescriptor::SampledBoundary { samples } => samples.clone(),
        }
    }

    pub fn on_boundary(&self, z: Complex64, tol: f64) -> bool {
        match self {
            CompactDescriptor::UnitDisk => (z.norm() - 1.0).abs() <= tol,
            CompactDescriptor::Ellipse { r } => (ellipse_level(*r, z) - 1.0).abs() <= tol,
            CompactDescriptor::SampledBoundary { samples } => polygon_distance(samples, z) <= tol,
        }
    }

    pub fn contains(&self, z: Complex64, tol: f64) -> bool {
        match self {
            CompactDescriptor::UnitDisk => z.norm() <= 1.0 + tol,
            CompactDescriptor::Ellipse { r } => ellipse_level(*r, z) <= 1.0 + tol,
            CompactDescriptor::SampledBoundary { samples } => {
                polygon_distance(samples, z) <= tol || winding_number(samples, z) != 0
            }
        }
    }
}

fn ellipse_level(r: f64, z: Complex64) -> f64 {
    let a = (r + 1.0 / r) / 2.0;
    let b = (r - 1.0 / r) / 2.0;
    (z.re / a).powi(2) + (z.im / b).powi(2)
}

fn segment_distance(a: Complex64, b: Complex64, z: Complex64) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (z - a).norm();
    }
    let t = ((z - a) * ab.conj()).re / len2;
    (z - (a + ab * t.clamp(0.0, 1.0))).norm()
}

fn polygon_distance(samples: &[Complex64], z: Complex64) -> f64 {
    let n = samples.len();
    (0..n)
        .map(|i| segment_distance(samples[i], samples[(i + 1) % n], z))
        .fold(f64::INFINITY, f64::min)
}

fn winding_number(samples: &[Complex64], z: Complex64) -> i32 {
    let n = samples.len();
    let mut wn = 0;
    for i in 0..n {
        let a = samples[i] - z;
        let b = samples[(i + 1) % n] - z;
        let cross = a.re * b.im - a.im * b.re;
        if a.im <= 0.0 {
            if b.im > 0.0 && cross > 0.0 {
                wn += 1;
            }
        } else if b.im <= 0.0 && cross < 0.0 {
            wn -= 1;
        }
    }
    wn
}

/// An ordered list of pairwise-distinct nodes in a compact set.
#[derive(Clone, Debug, PartialEq)]
pub struct NodeSequence1D {
    points: Vec<Complex64>,
    angles: Option<Vec<DyadicAngle>>,
    compact: CompactDescriptor,
}

impl NodeSequence1D {
    /// Floating-point nodes, distinct to [`DISTINCT_TOL`].
    pub fn new(points: Vec<Complex64>, compact: CompactDescriptor) -> Result<Self> {
        compact.validate()?;
        for i in 0..points.len() {
            for j in 0..i {
                if (points[i] - points[j]).norm() <= DISTINCT_TOL {
                    return Err(LejaError::CoincidentNodes {
                        axis: 0,
                        first: j,
                        second: i,
                    });
                }
            }
        }
        Ok(NodeSequence1D {
            points,
            angles: None,
            compact,
        })
    }

    /// Unimodular nodes at exact angles on the unit disk; distinctness is exact.
    pub fn from_angles(angles: Vec<DyadicAngle>) -> Result<Self> {
        let mut seen = std::collections::HashMap::new();
        for (i, a) in angles.iter().enumerate() {
            if let Some(j) = seen.insert(*a, i) {
                return Err(LejaError::CoincidentNodes {
                    axis: 0,
                    first: j,
                    second: i,
                });
            }
        }
        Ok(NodeSequence1D {
            points: angles.iter().map(DyadicAngle::to_complex).collect(),
            angles: Some(angles),
            compact: CompactDescriptor::UnitDisk,
        })
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn angles(&self) -> Option<&[DyadicAngle]> {
        self.angles.as_deref()
    }

    pub fn compact(&self) -> &CompactDescriptor {
        &self.compact
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// The first `n` nodes.
    pub fn prefix(&self, n: usize) -> NodeSequence1D {
        let n = n.min(self.len());
        NodeSequence1D {
            points: self.points[..n].to_vec(),
            angles: self.angles.as_ref().map(|a| a[..n].to_vec()),
            compact: self.compact.clone(),
        }
    }

    /// Every node multiplied by `exp(i * rotation)`.
    pub fn rotated(&self, rotation: &DyadicAngle) -> NodeSequence1D {
        match &self.angles {
            Some(angles) => {
                let angles: Vec<_> = angles.iter().map(|a| a.add(rotation)).collect();
                NodeSequence1D {
                    points: angles.iter().map(DyadicAngle::to_complex).collect(),
                    angles: Some(angles),
                    compact: self.compact.clone(),
                }
            }
            None => {
                let factor = rotation.to_complex();
                NodeSequence1D {
                    points: self.points.iter().map(|z| z * factor).collect(),
                    angles: None,
                    compact: self.compact.clone(),
                }
            }
        }
    }

    /// Replace node `index` with `value`, dropping exact angle metadata.
    pub fn with_replaced(&self, index: usize, value: Complex64) -> Result<NodeSequence1D> {
        let mut points = self.points.clone();
        if index >= points.len() {
            return Err(LejaError::InvalidArgument(format!(
                "node index {index} out of range for {} nodes",
                points.len()
            )));
        }
        points[index] = value;
        NodeSequence1D::new(points, self.compact.clone())
    }
}

/// The first `n` points of the explicit disk Leja sequence, rotated by `rotation`.
pub fn disk_leja_section(n: usize, rotation: DyadicAngle) -> Result<NodeSequence1D> {
    if n == 0 {
        return Err(LejaError::Empty("a Leja section needs N >= 1"));
    }
    let angles = (0..n as u64)
        .map(|k| disk_leja_point(k).add(&rotation))
        .collect();
    NodeSequence1D::from_angles(angles)
}

/// `log prod |z - root|`, robust against overflow for long products.
pub(crate) fn log_abs_prod(z: Complex64, roots: &[Complex64]) -> f64 {
    let mut acc = 0.0;
    for chunk in roots.chunks(8) {
        let prod: f64 = chunk.iter().map(|r| (z - r).norm_sqr()).product();
        acc += prod.ln();
    }
    0.5 * acc
}

// Relative slack under which two candidate products count as tied.
const TIE_RTOL: f64 = 1e-12;

/// The candidate maximizing `prod_i |z - eta_i|` over the current nodes. Candidates
/// whose products agree to a relative `1e-12` are treated as tied and the lowest
/// candidate index wins.
pub fn greedy_extend(nodes: &NodeSequence1D, candidates: &[Complex64]) -> Result<Complex64> {
    if nodes.is_empty() {
        return Err(LejaError::Empty("greedy_extend needs at least one node"));
    }
    if candidates.is_empty() {
        return Err(LejaError::Empty("greedy_extend needs candidates"));
    }
    let mut best: Option<(usize, f64)> = None;
    for (i, z) in candidates.iter().enumerate() {
        let v = log_abs_prod(*z, nodes.points());
        if v == f64::NEG_INFINITY || v.is_nan() {
            continue;
        }
        match best {
            Some((_, b)) if v <= b + TIE_RTOL => {}
            _ => best = Some((i, v)),
        }
    }
    best.map(|(i, _)| candidates[i])
        .ok_or(LejaError::DegenerateCandidates)
}

/// Grow a Leja section greedily over a fixed candidate set.
pub fn greedy_section(
    start: Complex64,
    n: usize,
    candidates: &[Complex64],
    compact: CompactDescriptor,
) -> Result<NodeSequence1D> {
    let mut seq = NodeSequence1D::new(vec![start], compact.clone())?;
    while seq.len() < n {
        let next = greedy_extend(&seq, candidates)?;
        let mut pts = seq.points().to_vec();
        pts.push(next);
        seq = NodeSequence1D::new(pts, compact.clone())?;
    }
    Ok(seq)
}

/// Outcome of the Leja condition for one prefix.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PrefixCheck {
    /// 0-based index of the node being checked.
    pub k: usize,
    /// `prod_{i<k} |eta_k - eta_i|`.
    pub value: f64,
    /// Grid maximum of `prod_{i<k} |z - eta_i|` over the boundary.
    pub grid_max: f64,
    #[serde(with = "crate::report::cplx")]
    pub argmax: Complex64,
    pub inside_compact: bool,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LejaVerification {
    pub accepted: bool,
    pub start_on_boundary: bool,
    /// First failing node index (0 when the start is off the boundary).
    pub first_failure: Option<usize>,
    pub grid_size: usize,
    pub tol: f64,
    pub checks: Vec<PrefixCheck>,
}

/// Check the Leja condition for every prefix of `nodes` against a boundary grid:
/// node `k` passes when its product is at least `(1 - tol)` times the grid maximum.
pub fn verify_leja_section(
    nodes: &NodeSequence1D,
    grid_size: usize,
    tol: f64,
) -> Result<LejaVerification> {
    if grid_size < 64 {
        return Err(LejaError::InvalidArgument(format!(
            "grid_size must be >= 64, got {grid_size}"
        )));
    }
    if !(tol > 0.0) {
        return Err(LejaError::InvalidArgument(format!("tol must be > 0, got {tol}")));
    }
    if nodes.is_empty() {
        return Err(LejaError::Empty("nothing to verify"));
    }
    let compact = nodes.compact();
    let boundary = compact.boundary_samples(grid_size);
    let pts = nodes.points();
    let start_on_boundary = compact.on_boundary(pts[0], 1e-9);
    let mut first_failure = (!start_on_boundary).then_some(0);
    let mut checks = Vec::with_capacity(pts.len().saturating_sub(1));
    for k in 1..pts.len() {
        let prev = &pts[..k];
        let best = crate::grid::par_argmax(boundary.len(), |i| log_abs_prod(boundary[i], prev))
            .expect("boundary grid is non-empty");
        let log_value = log_abs_prod(pts[k], prev);
        let inside = compact.contains(pts[k], 1e-9);
        let passed = inside && log_value >= best.value + (1.0 - tol).ln();
        if !passed && first_failure.is_none() {
            first_failure = Some(k);
        }
        checks.push(PrefixCheck {
            k,
            value: log_value.exp(),
            grid_max: best.value.exp(),
            argmax: boundary[best.index],
            inside_compact: inside,
            passed,
        });
    }
    Ok(LejaVerification {
        accepted: first_failure.is_none(),
        start_on_boundary,
        first_failure,
        grid_size,
        tol,
        checks,
    })
}

/// Order used for reproducible listings of angles.
pub fn compare_angles(a: &DyadicAngle, b: &DyadicAngle) -> Ordering {
    a.over_pi().total_cmp(&b.over_pi())
}
