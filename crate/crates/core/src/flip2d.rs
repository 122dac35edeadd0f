//! Closed-form bidimensional fundamental Lagrange polynomials (FLIPs).
//!
//! Given two sequences `eta_0, eta_1, ..` and `theta_0, theta_1, ..` of pairwise
//! distinct numbers and `N >= 1`, write `N_{d-1} < N <= N_d` and
//! `m = N - N_{d-1} - 1`. The interpolation set is
//!
//! ```text
//! Omega_N = {(eta_p, theta_q) : p + q < d}  U  {(eta_p, theta_{d-p}) : p <= m}
//! ```
//!
//! and the FLIP of `(eta_p, theta_q)` is the polynomial of the span of the first `N`
//! graded-lex monomials equal to 1 there and 0 on the rest of `Omega_N`. Each FLIP
//! is a short signed sum of products of the partial 1-D Lagrange factors
//!
//! ```text
//! Z_p(b) = prod_{i=0, i!=p}^{b} (z - eta_i) / (eta_p - eta_i)
//! W_q(b) = prod_{j=0, j!=q}^{b} (w - theta_j) / (theta_q - theta_j)
//! ```
//!
//! (empty products are 1), and which sum applies depends only on `(p, q, d, m)`; see
//! [`FlipCase`]. Nothing here requires the sequences to be Leja sequences.
//!
//! For dimension `s >= 3` no closed form is provided; use
//! [`crate::vdm::DeterminantRatio`].

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{LejaError, Result};
use crate::leja1d::DISTINCT_TOL;
use crate::numeration::{block_size, degree_of_index, enumerate, multi_to_index, MultiIndex};
use crate::vdm::{DeterminantRatio, Point};

/// `N = N_{d-1} + m + 1` with `0 <= m <= d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct IndexDecomposition {
    pub n: usize,
    pub d: usize,
    pub m: usize,
}

pub fn decompose(n: usize) -> Result<IndexDecomposition> {
    let d = degree_of_index(2, n as u64)?;
    let below = if d == 0 { 0 } else { block_size(2, d - 1)? as usize };
    Ok(IndexDecomposition {
        n,
        d,
        m: n - below - 1,
    })
}

/// Which closed form applies to the FLIP of `(eta_p, theta_q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum FlipCase {
    /// `p + q = d`, or `p + q = d - 1` with `p >= m + 1`: `Z_p(p-1) W_q(q-1)`.
    TopDiag,
    /// `p + q = d - 1`, `p = m`.
    SubDiagAtM,
    /// `p + q = d - 1`, `p <= m - 1`.
    SubDiagLow,
    /// `p + q <= d - 2`, `p <= m - 1`, `q <= d - m - 1`.
    InteriorLowPLowQ,
    /// `p + q <= d - 2`, `p <= m - 1`, `q >= d - m`.
    InteriorLowPHighQ,
    /// `p + q <= d - 2`, `p = m`.
    InteriorAtM,
    /// `p + q <= d - 2`, `p >= m + 1`.
    InteriorHighP,
}

impl FlipCase {
    pub const ALL: [FlipCase; 7] = [
        FlipCase::TopDiag,
        FlipCase::SubDiagAtM,
        FlipCase::SubDiagLow,
        FlipCase::InteriorLowPLowQ,
        FlipCase::InteriorLowPHighQ,
        FlipCase::InteriorAtM,
        FlipCase::InteriorHighP,
    ];
}

/// Whether `(eta_p, theta_q)` belongs to `Omega_N` for the given `(d, m)`.
pub fn in_interpolation_set(p: usize, q: usize, d: usize, m: usize) -> bool {
    p + q < d || (p + q == d && p <= m)
}

pub fn classify(p: usize, q: usize, d: usize, m: usize) -> Result<FlipCase> {
    if m > d || !in_interpolation_set(p, q, d, m) {
        return Err(LejaError::NotANode {
            p,
            q,
            n: d * (d + 1) / 2 + m + 1,
        });
    }
    let sum = p + q;
    Ok(if sum == d || (sum + 1 == d && p > m) {
        FlipCase::TopDiag
    } else if sum + 1 == d {
        if p == m {
            FlipCase::SubDiagAtM
        } else {
            FlipCase::SubDiagLow
        }
    } else if p < m {
        if q + m < d {
            FlipCase::InteriorLowPLowQ
        } else {
            FlipCase::InteriorLowPHighQ
        }
    } else if p == m {
        FlipCase::InteriorAtM
    } else {
        FlipCase::InteriorHighP
    })
}

/// Evaluate the closed form of `case` from the partial products `z(b) = Z_p(b)` and
/// `w(b) = W_q(b)`. Products follow the written factor order and sums accumulate
/// left to right; a sum whose upper limit is below its lower limit is empty.
fn eval_case<Z, W>(case: FlipCase, p: usize, q: usize, d: usize, m: usize, z: Z, w: W) -> Complex64
where
    Z: Fn(isize) -> Complex64,
    W: Fn(isize) -> Complex64,
{
    let (p, q, d, m) = (p as isize, q as isize, d as isize, m as isize);
    match case {
        FlipCase::TopDiag => z(p - 1) * w(q - 1),
        FlipCase::SubDiagAtM => z(m - 1) * w(d - m),
        FlipCase::SubDiagLow => {
            z(p + 1) * w(q - 1) - z(p - 1) * w(q - 1) + z(p - 1) * w(q + 1)
        }
        FlipCase::InteriorLowPLowQ => {
            let mut acc = z(p - 1) * w(d - p) - z(p - 1) * w(d - p - 1) + z(p + 1) * w(d - p - 1);
            for r in 1..=(m - p - 1) {
                acc += z(p + r + 1) * w(d - p - r - 1) - z(p + r) * w(d - p - r - 1);
            }
            for r in (m - p)..=(d - p - q - 2) {
                acc += z(p + r + 1) * w(d - p - r - 2) - z(p + r) * w(d - p - r - 2);
            }
            acc
        }
        FlipCase::InteriorLowPHighQ => {
            let mut acc = z(p - 1) * w(d - p) - z(p - 1) * w(d - p - 1) + z(p + 1) * w(d - p - 1);
            for r in 1..=(d - p - q - 1) {
                acc += z(p + r + 1) * w(d - p - r - 1) - z(p + r) * w(d - p - r - 1);
            }
            acc
        }
        FlipCase::InteriorAtM => {
            let mut acc = z(m - 1) * w(d - m) - z(m - 1) * w(d - m - 2) + z(m + 1) * w(d - m - 2);
            for r in 1..=(d - m - q - 2) {
                acc += z(m + r + 1) * w(d - m - r - 2) - z(m + r) * w(d - m - r - 2);
            }
            acc
        }
        FlipCase::InteriorHighP => {
            let mut acc =
                z(p - 1) * w(d - p - 1) - z(p - 1) * w(d - p - 2) + z(p + 1) * w(d - p - 2);
            for r in 1..=(d - p - q - 2) {
                acc += z(p + r + 1) * w(d - p - r - 2) - z(p + r) * w(d - p - r - 2);
            }
            acc
        }
    }
}

/// One axis of a FLIP context: nodes and reciprocal differences.
#[derive(Clone, Debug)]
struct Axis {
    nodes: Vec<Complex64>,
    // inv[p * len + i] = 1 / (x_p - x_i), unused on the diagonal
    inv: Vec<Complex64>,
}

impl Axis {
    fn new(nodes: &[Complex64], len: usize, axis: usize) -> Result<Self> {
        if nodes.len() < len {
            return Err(LejaError::ComponentTooShort {
                component: axis,
                available: nodes.len(),
                required: len,
            });
        }
        let nodes = nodes[..len].to_vec();
        let mut inv = vec![Complex64::new(0.0, 0.0); len * len];
        for p in 0..len {
            for i in 0..len {
                if i == p {
                    continue;
                }
                let diff = nodes[p] - nodes[i];
                if diff.norm() <= DISTINCT_TOL {
                    return Err(LejaError::CoincidentNodes {
                        axis,
                        first: i.min(p),
                        second: i.max(p),
                    });
                }
                inv[p * len + i] = diff.inv();
            }
        }
        Ok(Axis { nodes, inv })
    }

    fn len(&self) -> usize {
        self.nodes.len()
    }

    // Z_p(b) for b = -1..=len-1, stored at offset b + 1.
    fn fill_row(&self, diffs: &[Complex64], p: usize, out: &mut [Complex64]) {
        let len = self.len();
        let inv = &self.inv[p * len..(p + 1) * len];
        let mut acc = Complex64::new(1.0, 0.0);
        out[0] = acc;
        for i in 0..len {
            if i != p {
                acc *= diffs[i] * inv[i];
            }
            out[i + 1] = acc;
        }
    }
}

/// Every partial product `Z_p(b)` of one axis at one evaluation point.
#[derive(Clone, Debug)]
pub struct AxisTable {
    stride: usize,
    data: Vec<Complex64>,
}

impl AxisTable {
    fn build(axis: &Axis, x: Complex64) -> Self {
        let len = axis.len();
        let stride = len + 1;
        let diffs: Vec<Complex64> = axis.nodes.iter().map(|n| x - n).collect();
        let mut data = vec![Complex64::new(0.0, 0.0); len * stride];
        for p in 0..len {
            axis.fill_row(&diffs, p, &mut data[p * stride..(p + 1) * stride]);
        }
        AxisTable { stride, data }
    }

    #[inline]
    fn get(&self, p: usize, b: isize) -> Complex64 {
        self.data[p * self.stride + (b + 1) as usize]
    }
}

/// The nodes `(eta_p, theta_q)` of `Omega_N` in numeration order, with their cases.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FlipNode {
    pub p: usize,
    pub q: usize,
    pub case: FlipCase,
}

/// Nodes and precomputed reciprocal differences for evaluating the FLIPs of
/// `Omega_N`. Immutable after construction.
#[derive(Clone, Debug)]
pub struct FlipContext {
    decomposition: IndexDecomposition,
    etas: Axis,
    thetas: Axis,
    nodes: Vec<FlipNode>,
}

impl FlipContext {
    /// Uses the first `d + 1` entries of each sequence; they must be pairwise distinct.
    pub fn new(etas: &[Complex64], thetas: &[Complex64], n: usize) -> Result<Self> {
        if n == 0 {
            return Err(LejaError::ZeroIndex);
        }
        let decomposition = decompose(n)?;
        let IndexDecomposition { d, m, .. } = decomposition;
        let etas = Axis::new(etas, d + 1, 0)?;
        let thetas = Axis::new(thetas, d + 1, 1)?;
        let nodes = enumerate(2)?
            .take(n)
            .map(|k| {
                let (p, q) = (k.get(0), k.get(1));
                classify(p, q, d, m).map(|case| FlipNode { p, q, case })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FlipContext {
            decomposition,
            etas,
            thetas,
            nodes,
        })
    }

    pub fn decomposition(&self) -> IndexDecomposition {
        self.decomposition
    }

    pub fn n(&self) -> usize {
        self.decomposition.n
    }

    pub fn etas(&self) -> &[Complex64] {
        &self.etas.nodes
    }

    pub fn thetas(&self) -> &[Complex64] {
        &self.thetas.nodes
    }

    /// `(p, q)` of every node, in the order `H_1, .., H_N`.
    pub fn nodes(&self) -> &[FlipNode] {
        &self.nodes
    }

    /// `H_1, .., H_N` as points of `C^2`.
    pub fn points(&self) -> Vec<Point> {
        self.nodes
            .iter()
            .map(|n| vec![self.etas.nodes[n.p], self.thetas.nodes[n.q]])
            .collect()
    }

    /// 0-based position of `(eta_p, theta_q)` in `Omega_N`.
    pub fn position(&self, p: usize, q: usize) -> Result<usize> {
        let IndexDecomposition { n, d, m } = self.decomposition;
        if !in_interpolation_set(p, q, d, m) {
            return Err(LejaError::NotANode { p, q, n });
        }
        Ok(multi_to_index(&MultiIndex::new(vec![p, q])?)? as usize - 1)
    }

    pub fn z_table(&self, z: Complex64) -> AxisTable {
        AxisTable::build(&self.etas, z)
    }

    pub fn w_table(&self, w: Complex64) -> AxisTable {
        AxisTable::build(&self.thetas, w)
    }

    /// The FLIP of `(eta_p, theta_q)` at `(z, w)`.
    pub fn flip_eval(&self, p: usize, q: usize, z: Complex64, w: Complex64) -> Result<Complex64> {
        let IndexDecomposition { n, d, m } = self.decomposition;
        if !in_interpolation_set(p, q, d, m) {
            return Err(LejaError::NotANode { p, q, n });
        }
        let case = classify(p, q, d, m)?;
        let mut zrow = vec![Complex64::new(0.0, 0.0); d + 2];
        let mut wrow = vec![Complex64::new(0.0, 0.0); d + 2];
        let zd: Vec<Complex64> = self.etas.nodes.iter().map(|e| z - e).collect();
        let wd: Vec<Complex64> = self.thetas.nodes.iter().map(|t| w - t).collect();
        self.etas.fill_row(&zd, p, &mut zrow);
        self.thetas.fill_row(&wd, q, &mut wrow);
        Ok(eval_case(
            case,
            p,
            q,
            d,
            m,
            |b| zrow[(b + 1) as usize],
            |b| wrow[(b + 1) as usize],
        ))
    }

    /// All FLIPs from precomputed axis tables, in node order.
    pub fn eval_all_with(&self, zt: &AxisTable, wt: &AxisTable, out: &mut [Complex64]) {
        let IndexDecomposition { d, m, .. } = self.decomposition;
        for (slot, node) in out.iter_mut().zip(&self.nodes) {
            *slot = eval_case(
                node.case,
                node.p,
                node.q,
                d,
                m,
                |b| zt.get(node.p, b),
                |b| wt.get(node.q, b),
            );
        }
    }

    /// All FLIPs at `(z, w)`, in node order.
    pub fn eval_all(&self, z: Complex64, w: Complex64) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); self.nodes.len()];
        self.eval_all_with(&self.z_table(z), &self.w_table(w), &mut out);
        out
    }

    /// `L[f](z, w) = sum_n f(H_n) l_n(z, w)`, samples ordered as `H_1, .., H_N`.
    pub fn lagrange_interpolate(
        &self,
        samples: &[Complex64],
        z: Complex64,
        w: Complex64,
    ) -> Result<Complex64> {
        if samples.len() != self.n() {
            return Err(LejaError::SampleCount {
                expected: self.n(),
                found: samples.len(),
            });
        }
        Ok(self
            .eval_all(z, w)
            .iter()
            .zip(samples)
            .map(|(l, f)| l * f)
            .sum())
    }

    /// The determinant-ratio reference for the same FLIPs.
    pub fn oracle(&self) -> Result<FlipOracle> {
        Ok(FlipOracle {
            ratio: DeterminantRatio::new(self.points())?,
            ctx: self.clone(),
        })
    }
}

/// FLIPs as ratios of generalized Vandermonde determinants: the node is replaced by
/// `(z, w)` in the numerator. Independent of the closed forms.
#[derive(Clone, Debug)]
pub struct FlipOracle {
    ratio: DeterminantRatio,
    ctx: FlipContext,
}

impl FlipOracle {
    pub fn eval(&self, p: usize, q: usize, z: Complex64, w: Complex64) -> Result<Complex64> {
        let pos = self.ctx.position(p, q)?;
        self.ratio.flip(pos, &[z, w])
    }
}

/// One-shot determinant-ratio evaluation.
pub fn flip_eval_oracle(
    ctx: &FlipContext,
    p: usize,
    q: usize,
    z: Complex64,
    w: Complex64,
) -> Result<Complex64> {
    ctx.oracle()?.eval(p, q, z, w)
}
