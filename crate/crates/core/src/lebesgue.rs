//! Lebesgue functions and constants in one and two variables, ellipse images of the
//! disk, and convergence studies of Lagrange interpolation.
//!
//! Sups over the closed unit bidisc are sampled on the torus `|z| = |w| = 1`, where
//! polynomial moduli attain their maxima; for products of ellipses the torus grid is
//! pushed through the two ellipse maps.

use std::f64::consts::PI;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{LejaError, Result};
use crate::flip2d::{decompose, FlipContext, IndexDecomposition};
use crate::grid::{grid_angle_over_pi, torus_grid, ArgMax};
use crate::leja1d::{disk_leja_section, CompactDescriptor, DyadicAngle, NodeSequence1D};
use crate::numeration::block_size;

/// Environment variable capping the number of sweep threads.
pub const THREADS_ENV: &str = "LEJA_LAB_THREADS";

/// Default samples per axis for 2-D sweeps.
pub const DEFAULT_GRID_2D: usize = 512;

/// Size the global rayon pool from [`THREADS_ENV`], if set. Only the first call in a
/// process has any effect.
pub fn configure_threads_from_env() -> Result<()> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| LejaError::InvalidArgument(format!("{THREADS_ENV}={raw:?}")))?;
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global();
    Ok(())
}

/// `u -> (R u + 1/(R u)) / 2`, mapping the unit circle onto the ellipse with foci
/// `+-1` and semi-axes `(R +- 1/R) / 2`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EllipseMap {
    pub r: f64,
}

impl EllipseMap {
    pub fn new(r: f64) -> Result<Self> {
        if !(r.is_finite() && r > 1.0) {
            return Err(LejaError::InvalidCompact(format!(
                "ellipse parameter must satisfy R > 1, got {r}"
            )));
        }
        Ok(EllipseMap { r })
    }

    pub fn apply(&self, u: Complex64) -> Complex64 {
        let ru = u * self.r;
        (ru + ru.inv()) / 2.0
    }

    pub fn semi_axes(&self) -> (f64, f64) {
        ((self.r + 1.0 / self.r) / 2.0, (self.r - 1.0 / self.r) / 2.0)
    }
}

/// Images of the unit-circle points at `angles`.
pub fn mapped_nodes(map: EllipseMap, angles: &[DyadicAngle]) -> Result<NodeSequence1D> {
    let map = EllipseMap::new(map.r)?;
    let points = angles.iter().map(|a| map.apply(a.to_complex())).collect();
    NodeSequence1D::new(points, CompactDescriptor::Ellipse { r: map.r })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct NodeSup {
    pub p: usize,
    pub q: usize,
    pub sup: f64,
}

/// Grid sup of the Lebesgue function. In one variable `d = N - 1`, `m = 0`, and the
/// per-node entries have `q = 0`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LebesgueReport {
    pub n: usize,
    pub d: usize,
    pub m: usize,
    pub grid_per_axis: usize,
    pub lambda: f64,
    /// A maximizing grid point, one coordinate per axis.
    #[serde(with = "crate::report::cplx_vec")]
    pub argmax: Vec<Complex64>,
    /// Grid parameter angles of `argmax`, in units of pi.
    pub argmax_angles: Vec<f64>,
    pub per_node_sup: Vec<NodeSup>,
}

impl LebesgueReport {
    pub fn lambda_over_n_1_5(&self) -> f64 {
        self.lambda / (self.n as f64).powf(1.5)
    }
}

/// `2 (d - p - q + 1) pi^2 exp(6 pi)`, a uniform bound on the FLIP of `(eta_p, theta_q)`
/// for disk Leja nodes.
pub fn flip_uniform_bound(d: usize, p: usize, q: usize) -> f64 {
    2.0 * (d + 1 - p - q) as f64 * PI * PI * (6.0 * PI).exp()
}

#[derive(Clone, Debug)]
struct Sweep {
    best: Option<ArgMax>,
    per_node: Vec<f64>,
}

impl Sweep {
    fn new(nodes: usize) -> Self {
        Sweep {
            best: None,
            per_node: vec![0.0; nodes],
        }
    }

    fn offer(&mut self, index: usize, value: f64) {
        if value.is_nan() {
            return;
        }
        let cand = ArgMax { index, value };
        self.best = Some(match self.best {
            Some(b) => b.better(cand),
            None => cand,
        });
    }

    fn merge(mut self, other: Sweep) -> Sweep {
        self.best = match (self.best, other.best) {
            (Some(a), Some(b)) => Some(a.better(b)),
            (a, b) => a.or(b),
        };
        for (a, b) in self.per_node.iter_mut().zip(other.per_node) {
            *a = a.max(b);
        }
        self
    }
}

/// Lebesgue constant of 1-D nodes on the boundary of their compact.
pub fn lebesgue_1d(nodes: &NodeSequence1D, grid_size: usize) -> Result<LebesgueReport> {
    if grid_size < 256 {
        return Err(LejaError::InvalidArgument(format!(
            "grid_size must be >= 256, got {grid_size}"
        )));
    }
    if nodes.is_empty() {
        return Err(LejaError::Empty("node sequence"));
    }
    let pts = nodes.points();
    let n = pts.len();
    let grid = nodes.compact().boundary_samples(grid_size);
    // log |1 / prod_{j != k} (eta_k - eta_j)|
    let log_w: Vec<f64> = (0..n)
        .map(|k| {
            -(0..n)
                .filter(|&j| j != k)
                .map(|j| (pts[k] - pts[j]).norm().ln())
                .sum::<f64>()
        })
        .collect();
    let sweep = (0..grid.len())
        .into_par_iter()
        .fold(
            || Sweep::new(n),
            |mut acc, i| {
                let z = grid[i];
                let dist: Vec<f64> = pts.iter().map(|p| (z - p).norm()).collect();
                let near = dist.iter().any(|&r| r < 1e-8);
                let log_omega: f64 = if near { 0.0 } else { dist.iter().map(|r| r.ln()).sum() };
                let mut total = 0.0;
                for k in 0..n {
                    let l = if near {
                        (0..n)
                            .filter(|&j| j != k)
                            .map(|j| dist[j] / (pts[k] - pts[j]).norm())
                            .product()
                    } else {
                        (log_omega - dist[k].ln() + log_w[k]).exp()
                    };
                    acc.per_node[k] = acc.per_node[k].max(l);
                    total += l;
                }
                acc.offer(i, total);
                acc
            },
        )
        .reduce(|| Sweep::new(n), Sweep::merge);
    let best = sweep.best.ok_or(LejaError::Empty("boundary grid"))?;
    let angle = match nodes.compact() {
        CompactDescriptor::SampledBoundary { .. } => f64::NAN,
        _ => grid_angle_over_pi(best.index, grid_size),
    };
    Ok(LebesgueReport {
        n,
        d: n - 1,
        m: 0,
        grid_per_axis: grid.len(),
        lambda: best.value,
        argmax: vec![grid[best.index]],
        argmax_angles: vec![angle],
        per_node_sup: sweep
            .per_node
            .into_iter()
            .enumerate()
            .map(|(p, sup)| NodeSup { p, q: 0, sup })
            .collect(),
    })
}

// Sweep `value(flips, f_at_cell)` over the product grid `zs x ws`, tracking per-node
// sups of |flip| when `track` is set.
fn sweep_2d<F>(ctx: &FlipContext, zs: &[Complex64], ws: &[Complex64], track: bool, value: F) -> Sweep
where
    F: Fn(&[Complex64], usize, usize) -> f64 + Sync,
{
    let n = ctx.n();
    let zt: Vec<_> = zs.par_iter().map(|&z| ctx.z_table(z)).collect();
    let wt: Vec<_> = ws.par_iter().map(|&w| ctx.w_table(w)).collect();
    let cols = ws.len();
    (0..zs.len())
        .into_par_iter()
        .map(|i| {
            let mut acc = Sweep::new(if track { n } else { 0 });
            let mut buf = vec![Complex64::new(0.0, 0.0); n];
            for (j, w) in wt.iter().enumerate() {
                ctx.eval_all_with(&zt[i], w, &mut buf);
                if track {
                    for (s, l) in acc.per_node.iter_mut().zip(&buf) {
                        *s = s.max(l.norm());
                    }
                }
                acc.offer(i * cols + j, value(&buf, i, j));
            }
            acc
        })
        .reduce(|| Sweep::new(if track { n } else { 0 }), Sweep::merge)
}

fn report_2d(ctx: &FlipContext, zs: &[Complex64], ws: &[Complex64]) -> Result<LebesgueReport> {
    let IndexDecomposition { n, d, m } = ctx.decomposition();
    let sweep = sweep_2d(ctx, zs, ws, true, |flips, _, _| {
        flips.iter().map(|l| l.norm()).sum()
    });
    let best = sweep.best.ok_or(LejaError::Empty("boundary grid"))?;
    let (i, j) = (best.index / ws.len(), best.index % ws.len());
    Ok(LebesgueReport {
        n,
        d,
        m,
        grid_per_axis: zs.len(),
        lambda: best.value,
        argmax: vec![zs[i], ws[j]],
        argmax_angles: vec![
            grid_angle_over_pi(i, zs.len()),
            grid_angle_over_pi(j, ws.len()),
        ],
        per_node_sup: ctx
            .nodes()
            .iter()
            .zip(sweep.per_node)
            .map(|(node, sup)| NodeSup {
                p: node.p,
                q: node.q,
                sup,
            })
            .collect(),
    })
}

fn check_grid_2d(grid_per_axis: usize) -> Result<()> {
    if grid_per_axis < 64 {
        return Err(LejaError::InvalidArgument(format!(
            "grid_per_axis must be >= 64, got {grid_per_axis}"
        )));
    }
    Ok(())
}

/// Lebesgue constant of `Omega_N` over the closed unit bidisc, sampled on the torus.
/// Ties go to the lexicographically first grid cell.
pub fn lebesgue_2d(ctx: &FlipContext, grid_per_axis: usize) -> Result<LebesgueReport> {
    check_grid_2d(grid_per_axis)?;
    let torus = torus_grid(grid_per_axis);
    report_2d(ctx, &torus, &torus)
}

/// The disk Leja context of `N` nodes on the bidisc.
pub fn disk_leja_context(n: usize) -> Result<FlipContext> {
    let d = decompose(n)?.d;
    let axis = disk_leja_section(d + 1, DyadicAngle::ZERO)?;
    FlipContext::new(axis.points(), axis.points(), n)
}

/// The context of `N` disk Leja nodes mapped onto the ellipses of parameters `r1, r2`.
pub fn mapped_context(r1: f64, r2: f64, n: usize) -> Result<FlipContext> {
    let (m1, m2) = (EllipseMap::new(r1)?, EllipseMap::new(r2)?);
    let d = decompose(n)?.d;
    let section = disk_leja_section(d + 1, DyadicAngle::ZERO)?;
    let angles = section.angles().expect("disk Leja sections carry exact angles");
    let etas = mapped_nodes(m1, angles)?;
    let thetas = mapped_nodes(m2, angles)?;
    FlipContext::new(etas.points(), thetas.points(), n)
}

/// Lebesgue constant of mapped disk Leja nodes on a product of two ellipses.
pub fn lebesgue_2d_mapped(r1: f64, r2: f64, n: usize, grid_per_axis: usize) -> Result<LebesgueReport> {
    check_grid_2d(grid_per_axis)?;
    let ctx = mapped_context(r1, r2, n)?;
    let torus = torus_grid(grid_per_axis);
    let (m1, m2) = (EllipseMap::new(r1)?, EllipseMap::new(r2)?);
    let zs: Vec<Complex64> = torus.iter().map(|&u| m1.apply(u)).collect();
    let ws: Vec<Complex64> = torus.iter().map(|&u| m2.apply(u)).collect();
    report_2d(&ctx, &zs, &ws)
}

/// Lebesgue reports of full blocks `N = N_d` for `d = 1..=d_max`.
pub fn growth_sweep(d_max: usize, grid_per_axis: usize) -> Result<Vec<LebesgueReport>> {
    (1..=d_max)
        .map(|d| {
            let n = block_size(2, d)? as usize;
            lebesgue_2d(&disk_leja_context(n)?, grid_per_axis)
        })
        .collect()
}

/// Built-in functions on the bidisc.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum TestFunction {
    /// `z^a w^b`.
    Monomial { a: u32, b: u32 },
    /// `exp(z + w)`.
    Exp,
    /// `1 / (c - z - w)`, analytic on the closed bidisc when `|c| > 2`.
    Pole { c: f64 },
}

impl TestFunction {
    pub fn eval(&self, z: Complex64, w: Complex64) -> Complex64 {
        match *self {
            TestFunction::Monomial { a, b } => z.powu(a) * w.powu(b),
            TestFunction::Exp => (z + w).exp(),
            TestFunction::Pole { c } => (Complex64::new(c, 0.0) - z - w).inv(),
        }
    }
}

impl std::fmt::Display for TestFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TestFunction::Monomial { a, b } => {
                write!(f, "poly:")?;
                if *a == 0 && *b == 0 {
                    return write!(f, "1");
                }
                for (var, e) in [("z", a), ("w", b)] {
                    match e {
                        0 => {}
                        1 => write!(f, "{var}")?,
                        _ => write!(f, "{var}{e}")?,
                    }
                }
                Ok(())
            }
            TestFunction::Exp => write!(f, "exp"),
            TestFunction::Pole { c } => write!(f, "pole:{c}"),
        }
    }
}

fn parse_monomial(spec: &str) -> Option<(u32, u32)> {
    if spec == "1" {
        return Some((0, 0));
    }
    let mut exps = [0u32; 2];
    let mut rest = spec;
    for (slot, var) in ['z', 'w'].into_iter().enumerate() {
        if let Some(tail) = rest.strip_prefix(var) {
            let digits = tail.chars().take_while(char::is_ascii_digit).count();
            exps[slot] = if digits == 0 { 1 } else { tail[..digits].parse().ok()? };
            rest = &tail[digits..];
        }
    }
    (rest.is_empty() && !spec.is_empty()).then_some((exps[0], exps[1]))
}

impl FromStr for TestFunction {
    type Err = LejaError;

    /// `poly:z2w`, `poly:zw3`, `poly:1`, `exp`, `pole:3`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || LejaError::InvalidArgument(format!("unknown function spec {s:?}"));
        if s == "exp" {
            return Ok(TestFunction::Exp);
        }
        if let Some(m) = s.strip_prefix("poly:") {
            let (a, b) = parse_monomial(m).ok_or_else(bad)?;
            return Ok(TestFunction::Monomial { a, b });
        }
        if let Some(c) = s.strip_prefix("pole:") {
            let c: f64 = c.parse().map_err(|_| bad())?;
            if !(c.is_finite() && c.abs() > 2.0) {
                return Err(LejaError::InvalidArgument(format!(
                    "pole:{c} is singular on the closed bidisc; need |c| > 2"
                )));
            }
            return Ok(TestFunction::Pole { c });
        }
        Err(bad())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub d: usize,
    pub n: usize,
    pub sup_error: f64,
    /// Least-squares slope of `ln sup_error` against `ln N` over the last
    /// [`RATE_WINDOW`] rows; absent until enough positive errors are available.
    pub fitted_rate: Option<f64>,
}

pub const RATE_WINDOW: usize = 3;

fn log_log_slope(rows: &[ConvergenceRow]) -> Option<f64> {
    if rows.len() < 2 || rows.iter().any(|r| !(r.sup_error > 0.0)) {
        return None;
    }
    let xs: Vec<f64> = rows.iter().map(|r| (r.n as f64).ln()).collect();
    let ys: Vec<f64> = rows.iter().map(|r| r.sup_error.ln()).collect();
    let k = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / k, ys.iter().sum::<f64>() / k);
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    Some(sxy / sxx)
}

/// Sup over the torus grid of `|f - L[f]|` for the interpolant on `Omega_{N_d}`
/// (disk Leja nodes), `d = 1..=d_max`.
pub fn jackson_study<F>(f: F, d_max: usize, grid_per_axis: usize) -> Result<Vec<ConvergenceRow>>
where
    F: Fn(Complex64, Complex64) -> Complex64 + Sync,
{
    if !(1..=20).contains(&d_max) {
        return Err(LejaError::InvalidArgument(format!(
            "d_max must be in 1..=20, got {d_max}"
        )));
    }
    check_grid_2d(grid_per_axis)?;
    let torus = torus_grid(grid_per_axis);
    let exact: Vec<Complex64> = (0..grid_per_axis * grid_per_axis)
        .into_par_iter()
        .map(|c| f(torus[c / grid_per_axis], torus[c % grid_per_axis]))
        .collect();
    let mut rows: Vec<ConvergenceRow> = Vec::with_capacity(d_max);
    for d in 1..=d_max {
        let n = block_size(2, d)? as usize;
        let ctx = disk_leja_context(n)?;
        let samples: Vec<Complex64> = ctx.points().iter().map(|p| f(p[0], p[1])).collect();
        let sweep = sweep_2d(&ctx, &torus, &torus, false, |flips, i, j| {
            let interp: Complex64 = flips.iter().zip(&samples).map(|(l, s)| l * s).sum();
            (exact[i * grid_per_axis + j] - interp).norm()
        });
        let sup_error = sweep.best.map_or(f64::NAN, |b| b.value);
        let mut row = ConvergenceRow {
            d,
            n,
            sup_error,
            fitted_rate: None,
        };
        let start = rows.len().saturating_sub(RATE_WINDOW - 1);
        let mut window = rows[start..].to_vec();
        window.push(row);
        row.fitted_rate = log_log_slope(&window);
        rows.push(row);
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_disk_point, seeded_rng};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn ellipse_map_examples() {
        let map = EllipseMap::new(2.0).unwrap();
        assert_eq!(map.apply(c(1.0, 0.0)), c(1.25, 0.0));
        assert_eq!(map.apply(c(-1.0, 0.0)), c(-1.25, 0.0));
        assert_eq!(map.semi_axes(), (1.25, 0.75));
        assert!(EllipseMap::new(1.0).is_err());
        assert!(EllipseMap::new(f64::NAN).is_err());
        let angles = disk_leja_section(4, DyadicAngle::ZERO).unwrap();
        let nodes = mapped_nodes(map, angles.angles().unwrap()).unwrap();
        assert_eq!(nodes.len(), 4);
        for z in nodes.points() {
            assert!(nodes.compact().on_boundary(*z, 1e-12));
        }
        assert!(mapped_nodes(EllipseMap { r: 0.5 }, angles.angles().unwrap()).is_err());
    }

    #[test]
    fn lebesgue_1d_examples() {
        let one = disk_leja_section(1, DyadicAngle::ZERO).unwrap();
        assert_eq!(lebesgue_1d(&one, 256).unwrap().lambda, 1.0);
        let two = disk_leja_section(2, DyadicAngle::ZERO).unwrap();
        let r = lebesgue_1d(&two, 1024).unwrap();
        assert!((r.lambda - 2f64.sqrt()).abs() < 1e-4);
        assert!((r.argmax[0].re).abs() < 1e-12);
        assert!(lebesgue_1d(&two, 100).is_err());
        for n in [3, 5, 8, 13] {
            let s = disk_leja_section(n, DyadicAngle::ZERO).unwrap();
            let r = lebesgue_1d(&s, 4096).unwrap();
            assert!(r.lambda >= 1.0 && r.lambda <= n as f64);
            let top = r.per_node_sup.iter().map(|s| s.sup).fold(0.0, f64::max);
            assert!(r.lambda >= top);
        }
    }

    #[test]
    fn lebesgue_2d_small() {
        let r = lebesgue_2d(&disk_leja_context(1).unwrap(), 64).unwrap();
        assert_eq!(r.lambda, 1.0);
        assert_eq!(r.argmax_angles, vec![0.0, 0.0]);
        let ctx = disk_leja_context(3).unwrap();
        let r = lebesgue_2d(&ctx, 128).unwrap();
        assert!(r.lambda >= 1.0);
        let oracle = ctx.oracle().unwrap();
        let (z, w) = (r.argmax[0], r.argmax[1]);
        let sum: f64 = ctx
            .nodes()
            .iter()
            .map(|n| oracle.eval(n.p, n.q, z, w).unwrap().norm())
            .sum();
        assert!((sum - r.lambda).abs() < 1e-10 * r.lambda);
        assert!(lebesgue_2d(&ctx, 32).is_err());
    }

    #[test]
    fn mapped_matches_oracle() {
        let ctx = mapped_context(2.0, 2.0, 3).unwrap();
        let oracle = ctx.oracle().unwrap();
        let mut rng = seeded_rng(3);
        for _ in 0..10 {
            let (z, w) = (random_disk_point(&mut rng) * 1.25, random_disk_point(&mut rng) * 1.25);
            for (node, l) in ctx.nodes().iter().zip(ctx.eval_all(z, w)) {
                let o = oracle.eval(node.p, node.q, z, w).unwrap();
                assert!((l - o).norm() <= 1e-8 * o.norm().max(1.0));
            }
        }
        assert_eq!(lebesgue_2d_mapped(2.0, 2.0, 1, 64).unwrap().lambda, 1.0);
        assert!(lebesgue_2d_mapped(1.0, 2.0, 3, 64).is_err());
    }

    #[test]
    fn function_specs() {
        assert_eq!("poly:z2w".parse::<TestFunction>().unwrap(), TestFunction::Monomial { a: 2, b: 1 });
        assert_eq!("poly:w3".parse::<TestFunction>().unwrap(), TestFunction::Monomial { a: 0, b: 3 });
        assert_eq!("poly:1".parse::<TestFunction>().unwrap(), TestFunction::Monomial { a: 0, b: 0 });
        assert_eq!("pole:3".parse::<TestFunction>().unwrap(), TestFunction::Pole { c: 3.0 });
        assert_eq!("exp".parse::<TestFunction>().unwrap(), TestFunction::Exp);
        for bad in ["poly:", "poly:wz", "poly:x", "pole:1", "pole:abc", "sin", ""] {
            assert!(bad.parse::<TestFunction>().is_err(), "{bad}");
        }
        for spec in ["poly:z2w", "poly:zw", "poly:1", "exp", "pole:3"] {
            assert_eq!(spec.parse::<TestFunction>().unwrap().to_string(), spec);
        }
    }

    #[test]
    fn jackson_reproduces_polynomials() {
        let f = TestFunction::Monomial { a: 2, b: 1 };
        let rows = jackson_study(|z, w| f.eval(z, w), 5, 64).unwrap();
        assert_eq!(rows.len(), 5);
        for row in &rows[2..] {
            assert!(row.sup_error < 1e-9, "{row:?}");
        }
        assert!(rows[0].sup_error > 0.1);
        assert!(jackson_study(|z, _| z, 0, 64).is_err());
    }

    #[test]
    fn slope_of_exact_power_law() {
        let rows: Vec<ConvergenceRow> = [2usize, 4, 8]
            .iter()
            .map(|&n| ConvergenceRow {
                d: n,
                n,
                sup_error: (n as f64).powi(-3),
                fitted_rate: None,
            })
            .collect();
        assert!((log_log_slope(&rows).unwrap() + 3.0).abs() < 1e-12);
    }
}
