//! Intertwining sequences and generalized Vandermonde determinants.
//!
//! For `s` one-dimensional node sequences `eta^(1), ..., eta^(s)` the intertwining
//! sequence is `H_n = (eta^(1)_{k_1(n)}, ..., eta^(s)_{k_s(n)})` with `k(n)` the
//! graded-lex numeration. The generalized Vandermonde determinant of `N` points is
//! `det[e_i(H_j)]`, rows indexed by the graded-lex monomials `e_i = z^{k(i)}`.
//!
//! Appending a point `z` to `H_1, ..., H_N` multiplies the determinant by a product
//! of linear factors `P_N(z)` (see [`factor_polynomial`]); telescoping that identity
//! gives a second, elimination-free route to the same determinant.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{LejaError, Result};
use crate::grid::{par_argmax, torus_grid};
use crate::leja1d::{log_abs_prod, NodeSequence1D};
use crate::numeration::{enumerate, index_to_multi, MultiIndex};

/// A point of `C^s`.
pub type Point = Vec<Complex64>;

/// A complex number stored as `exp(log_magnitude + i*phase)`, with an explicit zero.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LogComplex {
    log_magnitude: f64,
    phase: f64,
    zero: bool,
}

/// Raw complex values are only exposed while `|log_magnitude|` stays below this.
pub const RAW_LOG_LIMIT: f64 = 300.0;

fn wrap_phase(x: f64) -> f64 {
    let mut y = x - 2.0 * PI * (x / (2.0 * PI)).round();
    if y <= -PI {
        y += 2.0 * PI;
    }
    if y > PI {
        y -= 2.0 * PI;
    }
    y
}

impl LogComplex {
    pub const ONE: LogComplex = LogComplex {
        log_magnitude: 0.0,
        phase: 0.0,
        zero: false,
    };
    pub const ZERO: LogComplex = LogComplex {
        log_magnitude: f64::NEG_INFINITY,
        phase: 0.0,
        zero: true,
    };

    pub fn new(log_magnitude: f64, phase: f64) -> Self {
        LogComplex {
            log_magnitude,
            phase: wrap_phase(phase),
            zero: false,
        }
    }

    pub fn from_complex(z: Complex64) -> Self {
        if z == Complex64::new(0.0, 0.0) {
            LogComplex::ZERO
        } else {
            LogComplex::new(z.norm().ln(), z.arg())
        }
    }

    pub fn is_zero(&self) -> bool {
        self.zero
    }

    /// Natural log of the modulus (`-inf` for zero).
    pub fn log_magnitude(&self) -> f64 {
        self.log_magnitude
    }

    /// Argument in `(-pi, pi]` (0 for zero).
    pub fn phase(&self) -> f64 {
        self.phase
    }

    pub fn mul(self, other: LogComplex) -> LogComplex {
        if self.zero || other.zero {
            return LogComplex::ZERO;
        }
        LogComplex::new(
            self.log_magnitude + other.log_magnitude,
            self.phase + other.phase,
        )
    }

    pub fn mul_complex(self, z: Complex64) -> LogComplex {
        self.mul(LogComplex::from_complex(z))
    }

    pub fn div(self, other: LogComplex) -> Result<LogComplex> {
        if other.zero {
            return Err(LejaError::Singular);
        }
        if self.zero {
            return Ok(LogComplex::ZERO);
        }
        Ok(LogComplex::new(
            self.log_magnitude - other.log_magnitude,
            self.phase - other.phase,
        ))
    }

    pub fn neg(self) -> LogComplex {
        if self.zero {
            self
        } else {
            LogComplex::new(self.log_magnitude, self.phase + PI)
        }
    }

    /// The raw value, when its magnitude is representable without overflow risk.
    pub fn to_complex(&self) -> Option<Complex64> {
        if self.zero {
            Some(Complex64::new(0.0, 0.0))
        } else if self.log_magnitude.abs() < RAW_LOG_LIMIT {
            Some(self.to_complex_unchecked())
        } else {
            None
        }
    }

    pub fn to_complex_unchecked(&self) -> Complex64 {
        if self.zero {
            Complex64::new(0.0, 0.0)
        } else {
            Complex64::from_polar(self.log_magnitude.exp(), self.phase)
        }
    }

    /// `|log|a| - log|b||` (0 when both are zero, infinite when only one is).
    pub fn log_magnitude_gap(&self, other: &LogComplex) -> f64 {
        match (self.zero, other.zero) {
            (true, true) => 0.0,
            (false, false) => (self.log_magnitude - other.log_magnitude).abs(),
            _ => f64::INFINITY,
        }
    }

    /// Absolute phase difference, wrapped to `[0, pi]`.
    pub fn phase_gap(&self, other: &LogComplex) -> f64 {
        wrap_phase(self.phase - other.phase).abs()
    }

    /// Agreement test: relative `log_rtol` on the log-magnitude (absolute when the
    /// log-magnitude is below 1) and absolute `phase_tol` on the argument.
    pub fn close_to(&self, other: &LogComplex, log_rtol: f64, phase_tol: f64) -> bool {
        if self.zero || other.zero {
            return self.zero == other.zero;
        }
        let scale = other.log_magnitude.abs().max(1.0);
        self.log_magnitude_gap(other) <= log_rtol * scale && self.phase_gap(other) <= phase_tol
    }
}

/// Determinant of a row-major `n x n` matrix by partial-pivoting elimination. A pivot
/// below `n * eps * max|a_ij|` is treated as an exact zero.
pub fn determinant(mut a: Vec<Complex64>, n: usize) -> LogComplex {
    assert_eq!(a.len(), n * n, "matrix is not square");
    if n == 0 {
        return LogComplex::ONE;
    }
    let scale = a.iter().map(|x| x.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return LogComplex::ZERO;
    }
    let threshold = n as f64 * f64::EPSILON * scale;
    let mut acc = LogComplex::ONE;
    let mut swaps = 0usize;
    for col in 0..n {
        let (piv_row, piv_abs) = (col..n)
            .map(|r| (r, a[r * n + col].norm()))
            .fold((col, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        if piv_abs <= threshold {
            return LogComplex::ZERO;
        }
        if piv_row != col {
            for c in 0..n {
                a.swap(col * n + c, piv_row * n + c);
            }
            swaps += 1;
        }
        let pivot = a[col * n + col];
        acc = acc.mul_complex(pivot);
        for r in col + 1..n {
            let factor = a[r * n + col] / pivot;
            if factor == Complex64::new(0.0, 0.0) {
                continue;
            }
            for c in col + 1..n {
                let v = a[col * n + c];
                a[r * n + c] -= factor * v;
            }
        }
    }
    if swaps % 2 == 1 {
        acc.neg()
    } else {
        acc
    }
}

fn check_points(points: &[Point]) -> Result<usize> {
    let s = points.first().ok_or(LejaError::Empty("no points"))?.len();
    if s == 0 {
        return Err(LejaError::ZeroDimension);
    }
    for p in points {
        if p.len() != s {
            return Err(LejaError::DimensionMismatch {
                expected: s,
                found: p.len(),
            });
        }
    }
    Ok(s)
}

/// The matrix `[e_i(H_j)]` in row-major order (row `i` = `i`-th graded-lex monomial).
pub fn vandermonde_matrix(points: &[Point]) -> Result<Vec<Complex64>> {
    let s = check_points(points)?;
    let n = points.len();
    let exponents: Vec<MultiIndex> = enumerate(s)?.take(n).collect();
    let max_deg = exponents.last().map(|k| k.degree()).unwrap_or(0);
    // powers[j][c][e] = points[j][c]^e
    let powers: Vec<Vec<Vec<Complex64>>> = points
        .iter()
        .map(|p| {
            p.iter()
                .map(|&x| {
                    let mut v = Vec::with_capacity(max_deg + 1);
                    let mut acc = Complex64::new(1.0, 0.0);
                    for _ in 0..=max_deg {
                        v.push(acc);
                        acc *= x;
                    }
                    v
                })
                .collect()
        })
        .collect();
    let mut m = Vec::with_capacity(n * n);
    for k in &exponents {
        for pw in &powers {
            let mut e = Complex64::new(1.0, 0.0);
            for (c, &kc) in k.components().iter().enumerate() {
                e *= pw[c][kc];
            }
            m.push(e);
        }
    }
    Ok(m)
}

/// `det[e_i(H_j)]` by direct elimination.
pub fn vdm_direct(points: &[Point]) -> Result<LogComplex> {
    let m = vandermonde_matrix(points)?;
    Ok(determinant(m, points.len()))
}

/// Fundamental Lagrange polynomials as ratios of Vandermonde determinants,
/// `l_n(z) = vdm(H_1, .., z, .., H_N) / vdm(H_1, .., H_N)`, for any dimension.
#[derive(Clone, Debug)]
pub struct DeterminantRatio {
    points: Vec<Point>,
    denominator: LogComplex,
}

impl DeterminantRatio {
    pub fn new(points: Vec<Point>) -> Result<Self> {
        let denominator = vdm_direct(&points)?;
        if denominator.is_zero() {
            return Err(LejaError::Singular);
        }
        Ok(DeterminantRatio {
            points,
            denominator,
        })
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn denominator(&self) -> LogComplex {
        self.denominator
    }

    /// The FLIP of node `index` (0-based) evaluated at `z`.
    pub fn flip(&self, index: usize, z: &[Complex64]) -> Result<Complex64> {
        if index >= self.points.len() {
            return Err(LejaError::InvalidArgument(format!(
                "node {index} out of range for {} nodes",
                self.points.len()
            )));
        }
        if z.len() != self.points[0].len() {
            return Err(LejaError::DimensionMismatch {
                expected: self.points[0].len(),
                found: z.len(),
            });
        }
        let mut pts = self.points.clone();
        pts[index] = z.to_vec();
        let num = vdm_direct(&pts)?;
        Ok(num.div(self.denominator)?.to_complex_unchecked())
    }
}

/// `s` one-dimensional sequences combined through the graded-lex numeration.
#[derive(Clone, Debug)]
pub struct IntertwinedSequence {
    components: Vec<NodeSequence1D>,
}

impl IntertwinedSequence {
    pub fn new(components: Vec<NodeSequence1D>) -> Result<Self> {
        if components.is_empty() {
            return Err(LejaError::ZeroDimension);
        }
        Ok(IntertwinedSequence { components })
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[NodeSequence1D] {
        &self.components
    }

    /// `H_1, ..., H_n`.
    pub fn points(&self, n: usize) -> Result<Vec<Point>> {
        intertwine(&self.components, n)
    }

    /// `H_n` (1-based).
    pub fn point(&self, n: u64) -> Result<Point> {
        let k = index_to_multi(self.dim(), n)?;
        point_for(&self.components, &k)
    }
}

/// Number of points each component needs so that `H_1..H_n` exist.
pub fn required_lengths(s: usize, n: usize) -> Result<Vec<usize>> {
    let mut req = vec![0; s];
    for k in enumerate(s)?.take(n) {
        for (r, &kc) in req.iter_mut().zip(k.components()) {
            *r = (*r).max(kc + 1);
        }
    }
    Ok(req)
}

fn check_lengths(components: &[NodeSequence1D], n: usize) -> Result<()> {
    let req = required_lengths(components.len(), n)?;
    for (j, (c, &r)) in components.iter().zip(&req).enumerate() {
        if c.len() < r {
            return Err(LejaError::ComponentTooShort {
                component: j,
                available: c.len(),
                required: r,
            });
        }
    }
    Ok(())
}

fn point_for(components: &[NodeSequence1D], k: &MultiIndex) -> Result<Point> {
    components
        .iter()
        .zip(k.components())
        .enumerate()
        .map(|(j, (c, &kc))| {
            c.points()
                .get(kc)
                .copied()
                .ok_or(LejaError::ComponentTooShort {
                    component: j,
                    available: c.len(),
                    required: kc + 1,
                })
        })
        .collect()
}

/// The first `n` points of the intertwining sequence of `components`.
pub fn intertwine(components: &[NodeSequence1D], n: usize) -> Result<Vec<Point>> {
    if components.is_empty() {
        return Err(LejaError::ZeroDimension);
    }
    check_lengths(components, n)?;
    enumerate(components.len())?
        .take(n)
        .map(|k| point_for(components, &k))
        .collect()
}

/// `prod (z_slot - root)` over a list of linear factors; the empty product is 1.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FactorPolynomial {
    pub s: usize,
    /// `(slot, root)` pairs, slots 0-based.
    #[serde(serialize_with = "ser_factors")]
    pub factors: Vec<(usize, Complex64)>,
}

fn ser_factors<S: serde::Serializer>(
    f: &[(usize, Complex64)],
    ser: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = ser.serialize_seq(Some(f.len()))?;
    for (slot, root) in f {
        seq.serialize_element(&(slot, crate::report::CplxRepr::from(*root)))?;
    }
    seq.end()
}

impl FactorPolynomial {
    pub fn eval(&self, z: &[Complex64]) -> Complex64 {
        self.factors
            .iter()
            .fold(Complex64::new(1.0, 0.0), |acc, (j, r)| acc * (z[*j] - r))
    }

    pub fn eval_log(&self, z: &[Complex64]) -> LogComplex {
        self.factors
            .iter()
            .fold(LogComplex::ONE, |acc, (j, r)| acc.mul_complex(z[*j] - r))
    }

    pub fn slot_roots(&self, slot: usize) -> Vec<Complex64> {
        self.factors
            .iter()
            .filter(|(j, _)| *j == slot)
            .map(|(_, r)| *r)
            .collect()
    }

    pub fn degree(&self) -> usize {
        self.factors.len()
    }
}

// P_N for k = k(N).
fn factor_for(components: &[NodeSequence1D], k: &MultiIndex) -> Result<FactorPolynomial> {
    let s = k.dim();
    let kc = k.components();
    let mut factors = Vec::new();
    let mut push = |slot: usize, count: usize| -> Result<()> {
        let c = &components[slot];
        if c.len() < count {
            return Err(LejaError::ComponentTooShort {
                component: slot,
                available: c.len(),
                required: count,
            });
        }
        factors.extend(c.points()[..count].iter().map(|&r| (slot, r)));
        Ok(())
    };
    match kc.iter().rposition(|&c| c > 0) {
        // k(N) = (d, 0, ..., 0): prod_{i=0}^{d} (z_s - eta^(s)_i)
        None | Some(0) => push(s - 1, k.degree() + 1)?,
        // k(N) = (k_1, .., k_m, 0, .., 0) with m >= 2 (0-based m here)
        Some(m) => {
            for (j, &kj) in kc.iter().enumerate().take(m - 1) {
                push(j, kj)?;
            }
            push(m - 1, kc[m - 1] + 1)?;
            push(s - 1, kc[m] - 1)?;
        }
    }
    Ok(FactorPolynomial { s, factors })
}

/// `P_N` with `vdm(H_1, .., H_N, z) = P_N(z) * vdm(H_1, .., H_N)`.
pub fn factor_polynomial(
    s: usize,
    n: u64,
    components: &[NodeSequence1D],
) -> Result<FactorPolynomial> {
    if components.len() != s {
        return Err(LejaError::DimensionMismatch {
            expected: s,
            found: components.len(),
        });
    }
    let k = index_to_multi(s, n)?;
    factor_for(components, &k)
}

/// `vdm(H_1, .., H_n) = prod_{m=1}^{n-1} P_m(H_{m+1})`, accumulated in log form.
pub fn vdm_telescoped(components: &[NodeSequence1D], n: usize) -> Result<LogComplex> {
    if n == 0 {
        return Err(LejaError::ZeroIndex);
    }
    let points = intertwine(components, n)?;
    let mut acc = LogComplex::ONE;
    for (k, next) in enumerate(components.len())?.zip(&points[1..]) {
        acc = acc.mul(factor_for(components, &k)?.eval_log(next));
    }
    Ok(acc)
}

/// Classical `prod_{a<b} (x_b - x_a)`.
pub fn vdm_1d(xs: &[Complex64]) -> LogComplex {
    let mut acc = LogComplex::ONE;
    for b in 1..xs.len() {
        for a in 0..b {
            acc = acc.mul_complex(xs[b] - xs[a]);
        }
    }
    acc
}

/// `prod_{j=1}^{d} vdm(eta_0..eta_j) * vdm(theta_0..theta_j)`, the determinant of the
/// full degree-`d` bidimensional block.
pub fn schiffer_siciak(etas: &[Complex64], thetas: &[Complex64], d: usize) -> Result<LogComplex> {
    for (axis, xs) in [etas, thetas].into_iter().enumerate() {
        if xs.len() < d + 1 {
            return Err(LejaError::ComponentTooShort {
                component: axis,
                available: xs.len(),
                required: d + 1,
            });
        }
    }
    let mut acc = LogComplex::ONE;
    for j in 1..=d {
        acc = acc.mul(vdm_1d(&etas[..=j])).mul(vdm_1d(&thetas[..=j]));
    }
    Ok(acc)
}

/// One step of the multidimensional Leja condition.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StepCheck {
    /// The check compares `H_{n+1}` against the sup over `z` of `|vdm(H_1..H_n, z)|`.
    pub n: usize,
    /// `log |P_n(H_{n+1})|`.
    pub log_value: f64,
    /// `log sup |P_n|` on the product boundary grid.
    pub log_grid_max: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MultiLejaVerification {
    pub accepted: bool,
    pub start_on_boundary: bool,
    /// 1-based index of the first point violating the Leja condition.
    pub first_failure: Option<usize>,
    pub grid_size: usize,
    pub tol: f64,
    pub checks: Vec<StepCheck>,
}

/// Check that `H_1, .., H_n` is an `n`-Leja section for the product of the component
/// compacts. The sup of `|P_n|` over the product splits into one 1-D maximization per
/// slot, each taken on that slot's boundary grid.
pub fn verify_multidim_leja(
    components: &[NodeSequence1D],
    n: usize,
    grid_size: usize,
    tol: f64,
) -> Result<MultiLejaVerification> {
    if grid_size < 64 {
        return Err(LejaError::InvalidArgument(format!(
            "grid_size must be >= 64, got {grid_size}"
        )));
    }
    if !(tol > 0.0) {
        return Err(LejaError::InvalidArgument(format!("tol must be > 0, got {tol}")));
    }
    let points = intertwine(components, n)?;
    let s = components.len();
    let grids: Vec<Vec<Complex64>> = components
        .iter()
        .map(|c| c.compact().boundary_samples(grid_size))
        .collect();
    let start_on_boundary = components
        .iter()
        .zip(&points[0])
        .all(|(c, &z)| c.compact().on_boundary(z, 1e-9));
    let mut first_failure = (!start_on_boundary).then_some(1);
    let mut checks = Vec::with_capacity(n.saturating_sub(1));
    for (step, k) in enumerate(s)?.take(n.saturating_sub(1)).enumerate() {
        let p = factor_for(components, &k)?;
        let next = &points[step + 1];
        let mut log_grid_max = 0.0;
        for (slot, grid) in grids.iter().enumerate() {
            let roots = p.slot_roots(slot);
            if roots.is_empty() {
                continue;
            }
            let best = par_argmax(grid.len(), |i| log_abs_prod(grid[i], &roots))
                .expect("boundary grid is non-empty");
            log_grid_max += best.value;
        }
        let log_value = p.eval_log(next).log_magnitude();
        let inside = components
            .iter()
            .zip(next)
            .all(|(c, &z)| c.compact().contains(z, 1e-9));
        let passed = inside && log_value >= log_grid_max + (1.0 - tol).ln();
        if !passed && first_failure.is_none() {
            first_failure = Some(step + 2);
        }
        checks.push(StepCheck {
            n: step + 1,
            log_value,
            log_grid_max,
            passed,
        });
    }
    Ok(MultiLejaVerification {
        accepted: first_failure.is_none(),
        start_on_boundary,
        first_failure,
        grid_size,
        tol,
        checks,
    })
}

/// A clash found while reading a point list as an intertwining sequence.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IntertwiningConflict {
    /// 0-based coordinate slot.
    pub slot: usize,
    /// Index `i` of the 1-D node `eta^(slot)_i` that would need two values.
    pub node_index: usize,
    /// 1-based positions of the two points that disagree.
    pub first_point: usize,
    pub second_point: usize,
    #[serde(with = "crate::report::cplx")]
    pub first_value: Complex64,
    #[serde(with = "crate::report::cplx")]
    pub second_value: Complex64,
}

/// Recover the 1-D components of a point list, or the first contradiction showing
/// the list is not an intertwining sequence.
pub fn decompose_intertwining(
    points: &[Point],
    tol: f64,
) -> Result<std::result::Result<Vec<Vec<Complex64>>, IntertwiningConflict>> {
    let s = check_points(points)?;
    let mut comps: Vec<Vec<(Complex64, usize)>> = vec![Vec::new(); s];
    for (pos, (k, p)) in enumerate(s)?.zip(points).enumerate() {
        for slot in 0..s {
            let idx = k.get(slot);
            let comp = &mut comps[slot];
            if idx < comp.len() {
                let (known, at) = comp[idx];
                if (known - p[slot]).norm() > tol {
                    return Ok(Err(IntertwiningConflict {
                        slot,
                        node_index: idx,
                        first_point: at + 1,
                        second_point: pos + 1,
                        first_value: known,
                        second_value: p[slot],
                    }));
                }
            } else {
                // graded-lex order introduces component indices one at a time
                debug_assert_eq!(idx, comp.len());
                comp.push((p[slot], pos));
            }
        }
    }
    Ok(Ok(comps
        .into_iter()
        .map(|c| c.into_iter().map(|(z, _)| z).collect())
        .collect()))
}

/// One step of the bidisc counterexample check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CounterexampleStep {
    /// 1-based index of the point being accepted.
    pub point: usize,
    /// `|vdm(H_1, .., H_point)|`.
    pub value: f64,
    /// Grid sup over the torus of `|vdm(H_1, .., H_{point-1}, (z, w))|`.
    pub grid_max: f64,
    #[serde(with = "crate::report::cplx_vec")]
    pub argmax: Vec<Complex64>,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CounterexampleReport {
    #[serde(serialize_with = "ser_points")]
    pub points: Vec<Point>,
    pub grid_per_axis: usize,
    pub start_on_boundary: bool,
    pub steps: Vec<CounterexampleStep>,
    pub is_leja_section: bool,
    pub conflict: Option<IntertwiningConflict>,
    pub not_intertwining: bool,
}

pub(crate) fn ser_points<S: serde::Serializer>(
    pts: &[Point],
    ser: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = ser.serialize_seq(Some(pts.len()))?;
    for p in pts {
        let v: Vec<crate::report::CplxRepr> = p.iter().map(|&z| z.into()).collect();
        seq.serialize_element(&v)?;
    }
    seq.end()
}

/// `H_1 = (1, 1)`, `H_2 = (-1, -1)`, `H_3 = (e^{i pi/4}, -e^{i pi/4})`: a 3-Leja section
/// for the closed unit bidisc that no intertwining sequence can start with.
pub fn counterexample_points() -> Vec<Point> {
    let r = Complex64::from_polar(1.0, PI / 4.0);
    vec![
        vec![Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)],
        vec![Complex64::new(-1.0, 0.0), Complex64::new(-1.0, 0.0)],
        vec![r, -r],
    ]
}

/// Verify the counterexample on a `grid_per_axis^2` torus grid with direct determinants.
pub fn counterexample_section(grid_per_axis: usize) -> Result<CounterexampleReport> {
    if grid_per_axis < 64 {
        return Err(LejaError::InvalidArgument(format!(
            "grid_per_axis must be >= 64, got {grid_per_axis}"
        )));
    }
    let points = counterexample_points();
    let torus = torus_grid(grid_per_axis);
    let g = grid_per_axis;
    let start_on_boundary = points[0].iter().all(|z| (z.norm() - 1.0).abs() <= 1e-12);
    let mut steps = Vec::new();
    for count in 1..points.len() {
        let prefix = &points[..count];
        let eval = |cell: usize| {
            let mut pts = prefix.to_vec();
            pts.push(vec![torus[cell / g], torus[cell % g]]);
            vdm_direct(&pts)
                .map(|v| v.to_complex_unchecked().norm())
                .unwrap_or(f64::NAN)
        };
        let best = par_argmax(g * g, eval).expect("grid is non-empty");
        let value = vdm_direct(&points[..=count])?.to_complex_unchecked().norm();
        steps.push(CounterexampleStep {
            point: count + 1,
            value,
            grid_max: best.value,
            argmax: vec![torus[best.index / g], torus[best.index % g]],
            passed: value >= best.value * (1.0 - 1e-12),
        });
    }
    let conflict = decompose_intertwining(&points, 1e-12)?.err();
    Ok(CounterexampleReport {
        is_leja_section: start_on_boundary && steps.iter().all(|s| s.passed),
        not_intertwining: conflict.is_some(),
        points,
        grid_per_axis,
        start_on_boundary,
        steps,
        conflict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::leja1d::{disk_leja_section, CompactDescriptor, DyadicAngle};
    use crate::numeration::block_size;
    use crate::random::{random_polydisc_point, random_unimodular_nodes, seeded_rng, DEFAULT_SEED};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn disk(n: usize) -> NodeSequence1D {
        disk_leja_section(n, DyadicAngle::ZERO).unwrap()
    }

    // Oracle: Leibniz expansion of a small determinant, independent of elimination.
    fn leibniz(m: &[Complex64], n: usize) -> Complex64 {
        fn perms(n: usize) -> Vec<(Vec<usize>, i32)> {
            if n == 1 {
                return vec![(vec![0], 1)];
            }
            let mut out = Vec::new();
            for (p, sign) in perms(n - 1) {
                for pos in 0..n {
                    let mut q = p.clone();
                    q.insert(pos, n - 1);
                    let flips = (n - 1 - pos) as i32;
                    out.push((q, if flips % 2 == 0 { sign } else { -sign }));
                }
            }
            out
        }
        perms(n)
            .into_iter()
            .map(|(p, sign)| {
                let prod = (0..n).fold(c(1.0, 0.0), |acc, i| acc * m[i * n + p[i]]);
                prod * sign as f64
            })
            .sum()
    }

    #[test]
    fn determinant_matches_leibniz() {
        let mut rng = seeded_rng(DEFAULT_SEED);
        for n in 1..=6 {
            let pts: Vec<Point> = (0..n).map(|_| random_polydisc_point(&mut rng, 2)).collect();
            let m = vandermonde_matrix(&pts).unwrap();
            let expect = leibniz(&m, n);
            let got = determinant(m, n).to_complex().unwrap();
            assert!((got - expect).norm() <= 1e-12 * expect.norm().max(1.0), "n={n}");
        }
    }

    #[test]
    fn vdm_direct_examples() {
        let one = vdm_direct(&[vec![c(0.3, 0.1), c(-0.2, 0.5)]]).unwrap();
        assert_eq!(one.to_complex().unwrap(), c(1.0, 0.0));
        let v = vdm_direct(&[
            vec![c(1.0, 0.0), c(1.0, 0.0)],
            vec![c(-1.0, 0.0), c(-1.0, 0.0)],
            vec![c(0.0, 0.0), c(1.0, 0.0)],
        ])
        .unwrap();
        assert!((v.to_complex().unwrap() - c(2.0, 0.0)).norm() < 1e-14);
        let z = vdm_direct(&[vec![c(1.0, 0.0), c(1.0, 0.0)], vec![c(1.0, 0.0), c(1.0, 0.0)]])
            .unwrap();
        assert!(z.is_zero());
        assert!(vdm_direct(&[vec![c(1.0, 0.0)], vec![c(1.0, 0.0), c(0.0, 0.0)]]).is_err());
    }

    #[test]
    fn intertwine_examples() {
        let comps = vec![disk(4), disk(4)];
        let h = intertwine(&comps, 3).unwrap();
        assert_eq!(
            h,
            vec![
                vec![c(1.0, 0.0), c(1.0, 0.0)],
                vec![c(1.0, 0.0), c(-1.0, 0.0)],
                vec![c(-1.0, 0.0), c(1.0, 0.0)],
            ]
        );
        let three = vec![disk(1), disk(1), disk(1)];
        assert_eq!(intertwine(&three, 1).unwrap(), vec![vec![c(1.0, 0.0); 3]]);
        let h = intertwine(&comps, 6).unwrap();
        assert_eq!(h[5], vec![comps[0].points()[2], comps[1].points()[0]]);
        match intertwine(&[disk(2), disk(4)], 6) {
            Err(LejaError::ComponentTooShort {
                component,
                required,
                ..
            }) => assert_eq!((component, required), (0, 3)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn factor_polynomial_examples() {
        let mut rng = seeded_rng(7);
        let comps = vec![
            random_unimodular_nodes(&mut rng, 5),
            random_unimodular_nodes(&mut rng, 5),
        ];
        let (eta, theta) = (comps[0].points(), comps[1].points());
        let p1 = factor_polynomial(2, 1, &comps).unwrap();
        assert_eq!(p1.factors, vec![(1, theta[0])]);
        let p3 = factor_polynomial(2, 3, &comps).unwrap();
        assert_eq!(p3.factors, vec![(1, theta[0]), (1, theta[1])]);
        let p2 = factor_polynomial(2, 2, &comps).unwrap();
        assert_eq!(p2.factors, vec![(0, eta[0])]);

        // P_2(H_3) * vdm(H_1, H_2) = vdm(H_1, H_2, H_3)
        let h = intertwine(&comps, 3).unwrap();
        let lhs = vdm_direct(&h[..2]).unwrap().mul_complex(p2.eval(&h[2]));
        assert!(lhs.close_to(&vdm_direct(&h).unwrap(), 1e-12, 1e-12));

        // P_3 on random z
        let h3 = intertwine(&comps, 3).unwrap();
        let base = vdm_direct(&h3).unwrap();
        for _ in 0..20 {
            let z = random_polydisc_point(&mut rng, 2);
            let mut pts = h3.clone();
            pts.push(z.clone());
            let direct = vdm_direct(&pts).unwrap();
            assert!(base.mul_complex(p3.eval(&z)).close_to(&direct, 1e-10, 1e-8));
        }
    }

    #[test]
    fn telescoped_examples() {
        let mut rng = seeded_rng(11);
        let comps = vec![
            random_unimodular_nodes(&mut rng, 4),
            random_unimodular_nodes(&mut rng, 4),
        ];
        assert_eq!(vdm_telescoped(&comps, 1).unwrap(), LogComplex::ONE);
        let two = vdm_telescoped(&comps, 2).unwrap().to_complex().unwrap();
        let theta = comps[1].points();
        assert!((two - (theta[1] - theta[0])).norm() < 1e-14);
        let t = vdm_telescoped(&comps, 6).unwrap();
        let d = vdm_direct(&intertwine(&comps, 6).unwrap()).unwrap();
        assert!(t.close_to(&d, 1e-10, 1e-8));
    }

    #[test]
    fn schiffer_siciak_examples() {
        assert_eq!(
            schiffer_siciak(&[c(1.0, 0.0)], &[c(1.0, 0.0)], 0).unwrap(),
            LogComplex::ONE
        );
        let v = schiffer_siciak(&[c(0.0, 0.0), c(1.0, 0.0)], &[c(0.0, 0.0), c(2.0, 0.0)], 1)
            .unwrap();
        assert!((v.to_complex().unwrap() - c(2.0, 0.0)).norm() < 1e-14);
        let m = [
            c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0),
            c(0.0, 0.0), c(2.0, 0.0), c(0.0, 0.0),
            c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0),
        ];
        assert!((leibniz(&m, 3) - c(2.0, 0.0)).norm() < 1e-14);

        let mut rng = seeded_rng(3);
        let comps = vec![
            random_unimodular_nodes(&mut rng, 4),
            random_unimodular_nodes(&mut rng, 4),
        ];
        let ss = schiffer_siciak(comps[0].points(), comps[1].points(), 3).unwrap();
        let n = block_size(2, 3).unwrap() as usize;
        let d = vdm_direct(&intertwine(&comps, n).unwrap()).unwrap();
        assert!(ss.close_to(&d, 1e-9, 1e-7));
    }

    #[test]
    fn unisolvence_on_random_families() {
        let mut rng = seeded_rng(DEFAULT_SEED);
        for s in [2, 3] {
            let req = required_lengths(s, 30).unwrap();
            let comps: Vec<_> = req
                .iter()
                .map(|&r| random_unimodular_nodes(&mut rng, r))
                .collect();
            for n in 1..=30 {
                let h = intertwine(&comps, n).unwrap();
                assert!(!vdm_direct(&h).unwrap().is_zero(), "s={s} n={n}");
            }
        }
    }

    #[test]
    fn multidim_verification_examples() {
        let comps = vec![disk(4), disk(4)];
        assert!(verify_multidim_leja(&comps, 10, 4096, 1e-6).unwrap().accepted);

        let bad = NodeSequence1D::new(
            vec![c(1.0, 0.0), c(-1.0, 0.0), Complex64::from_polar(1.0, PI / 4.0), c(0.0, -1.0)],
            CompactDescriptor::UnitDisk,
        )
        .unwrap();
        let r = verify_multidim_leja(&[bad.clone(), disk(4)], 10, 4096, 1e-6).unwrap();
        assert!(!r.accepted);
        let r = verify_multidim_leja(&[disk(4), bad], 10, 4096, 1e-6).unwrap();
        assert!(!r.accepted);

        let r = verify_multidim_leja(&[disk(1), disk(1)], 1, 4096, 1e-6).unwrap();
        assert!(r.accepted && r.checks.is_empty());
    }

    #[test]
    fn counterexample_examples() {
        let r = counterexample_section(256).unwrap();
        assert!(r.is_leja_section);
        assert!((r.steps[0].grid_max - 2.0).abs() < 1e-12);
        assert!((r.steps[0].argmax[1] - c(-1.0, 0.0)).norm() < 1e-12);
        assert!((r.steps[1].grid_max - 4.0).abs() < 1e-12);
        assert!((r.steps[1].value - 4.0).abs() < 1e-12);
        let conflict = r.conflict.unwrap();
        assert_eq!((conflict.slot, conflict.node_index), (0, 0));
        assert_eq!(conflict.first_value, c(1.0, 0.0));
        assert_eq!(conflict.second_value, c(-1.0, 0.0));
        assert!(r.not_intertwining);
    }

    #[test]
    fn decompose_recovers_components() {
        let comps = vec![disk(5), disk(5)];
        let h = intertwine(&comps, 15).unwrap();
        let back = decompose_intertwining(&h, 1e-12).unwrap().unwrap();
        assert_eq!(back[0], comps[0].points());
        assert_eq!(back[1], comps[1].points());
    }

    #[test]
    fn log_complex_basics() {
        let a = LogComplex::from_complex(c(0.0, 2.0));
        let b = LogComplex::from_complex(c(-3.0, 0.0));
        let p = a.mul(b).to_complex().unwrap();
        assert!((p - c(0.0, -6.0)).norm() < 1e-14);
        assert!(b.div(LogComplex::ZERO).is_err());
        assert!(LogComplex::new(400.0, 0.0).to_complex().is_none());
        assert!(LogComplex::ZERO.mul(a).is_zero());
    }
}
