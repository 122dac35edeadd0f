//! Python bindings.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use leja_lab::flip2d;
use leja_lab::lebesgue::{self, TestFunction};
use leja_lab::leja1d::{self, DyadicAngle};
use leja_lab::numeration::{self, MultiIndex};
use leja_lab::vdm;
use leja_lab::{Complex64, LejaError};

fn err(e: LejaError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn leja_section(n: usize) -> PyResult<leja1d::NodeSequence1D> {
    leja1d::disk_leja_section(n, DyadicAngle::ZERO).map_err(err)
}

/// The first `n` explicit Leja points of the closed unit disk.
#[pyfunction]
fn disk_leja_points(n: usize) -> PyResult<Vec<Complex64>> {
    Ok(leja_section(n)?.points().to_vec())
}

/// `(p, l)` such that the `k`-th disk Leja point is `exp(i * pi * p / 2^l)`.
#[pyfunction]
fn disk_leja_angle(k: u64) -> (u64, u32) {
    let a = leja1d::disk_leja_point(k);
    (a.numerator(), a.level())
}

/// The graded-lex multi-index of the 1-based index `n` in dimension `s`.
#[pyfunction]
fn index_to_multi(s: usize, n: u64) -> PyResult<Vec<usize>> {
    Ok(numeration::index_to_multi(s, n).map_err(err)?.components().to_vec())
}

#[pyfunction]
fn multi_to_index(k: Vec<usize>) -> PyResult<u64> {
    numeration::multi_to_index(&MultiIndex::new(k).map_err(err)?).map_err(err)
}

/// The first `n` points of the intertwined disk Leja sequence in dimension `s`.
#[pyfunction]
fn intertwined_points(s: usize, n: usize) -> PyResult<Vec<Vec<Complex64>>> {
    let comps = vdm::required_lengths(s, n)
        .map_err(err)?
        .into_iter()
        .map(leja_section)
        .collect::<PyResult<Vec<_>>>()?;
    vdm::intertwine(&comps, n).map_err(err)
}

/// `(log|det|, arg det)` of the generalized Vandermonde matrix of `points`.
#[pyfunction]
fn vandermonde(points: Vec<Vec<Complex64>>) -> PyResult<(f64, f64)> {
    let v = vdm::vdm_direct(&points).map_err(err)?;
    Ok((v.log_magnitude(), v.phase()))
}

/// `(log|det|, arg det)` from the closed-form block factorization.
#[pyfunction]
fn schiffer_siciak(etas: Vec<Complex64>, thetas: Vec<Complex64>, d: usize) -> PyResult<(f64, f64)> {
    let v = vdm::schiffer_siciak(&etas, &thetas, d).map_err(err)?;
    Ok((v.log_magnitude(), v.phase()))
}

/// `(is_leja_section, not_intertwining)` for the bidisc counterexample.
#[pyfunction]
#[pyo3(signature = (grid_per_axis = 1024))]
fn counterexample(grid_per_axis: usize) -> PyResult<(bool, bool)> {
    let r = vdm::counterexample_section(grid_per_axis).map_err(err)?;
    Ok((r.is_leja_section, r.not_intertwining))
}

/// Whether `points` pass the Leja condition on a boundary grid.
#[pyfunction]
#[pyo3(signature = (points, grid_size = 16384, tol = 1e-6))]
fn verify_leja_section(points: Vec<Complex64>, grid_size: usize, tol: f64) -> PyResult<bool> {
    let seq = leja1d::NodeSequence1D::new(points, leja1d::CompactDescriptor::UnitDisk).map_err(err)?;
    Ok(leja1d::verify_leja_section(&seq, grid_size, tol).map_err(err)?.accepted)
}

/// Lebesgue constant of the first `n` disk Leja points.
#[pyfunction]
#[pyo3(signature = (n, grid_size = 16384))]
fn lebesgue_1d(n: usize, grid_size: usize) -> PyResult<f64> {
    Ok(lebesgue::lebesgue_1d(&leja_section(n)?, grid_size).map_err(err)?.lambda)
}

/// Lebesgue constant of `n` intertwined disk Leja points on the bidisc, or on a
/// product of ellipses when `r` is given.
#[pyfunction]
#[pyo3(signature = (n, grid_per_axis = 512, r = None))]
fn lebesgue_2d(n: usize, grid_per_axis: usize, r: Option<(f64, f64)>) -> PyResult<f64> {
    let report = match r {
        None => lebesgue::lebesgue_2d(&lebesgue::disk_leja_context(n).map_err(err)?, grid_per_axis),
        Some((r1, r2)) => lebesgue::lebesgue_2d_mapped(r1, r2, n, grid_per_axis),
    };
    Ok(report.map_err(err)?.lambda)
}

/// `[(d, N, sup_error)]` for a built-in function spec such as `"exp"` or `"pole:3"`.
#[pyfunction]
#[pyo3(signature = (function, max_degree, grid_per_axis = 256))]
fn interpolation_errors(function: &str, max_degree: usize, grid_per_axis: usize) -> PyResult<Vec<(usize, usize, f64)>> {
    let f: TestFunction = function.parse().map_err(err)?;
    let rows = lebesgue::jackson_study(|z, w| f.eval(z, w), max_degree, grid_per_axis).map_err(err)?;
    Ok(rows.into_iter().map(|r| (r.d, r.n, r.sup_error)).collect())
}

/// Closed-form bidimensional fundamental Lagrange polynomials of `Omega_N`.
#[pyclass(name = "FlipContext", frozen)]
struct PyFlipContext {
    inner: flip2d::FlipContext,
}

#[pymethods]
impl PyFlipContext {
    #[new]
    fn new(etas: Vec<Complex64>, thetas: Vec<Complex64>, n: usize) -> PyResult<Self> {
        Ok(PyFlipContext {
            inner: flip2d::FlipContext::new(&etas, &thetas, n).map_err(err)?,
        })
    }

    /// Context for `n` intertwined disk Leja points.
    #[staticmethod]
    fn disk_leja(n: usize) -> PyResult<Self> {
        Ok(PyFlipContext {
            inner: lebesgue::disk_leja_context(n).map_err(err)?,
        })
    }

    /// `(N, d, m)`.
    fn decomposition(&self) -> (usize, usize, usize) {
        let d = self.inner.decomposition();
        (d.n, d.d, d.m)
    }

    /// `(p, q)` of each node, in interpolation order.
    fn nodes(&self) -> Vec<(usize, usize)> {
        self.inner.nodes().iter().map(|n| (n.p, n.q)).collect()
    }

    fn points(&self) -> Vec<(Complex64, Complex64)> {
        self.inner.points().into_iter().map(|p| (p[0], p[1])).collect()
    }

    fn flip_eval(&self, p: usize, q: usize, z: Complex64, w: Complex64) -> PyResult<Complex64> {
        self.inner.flip_eval(p, q, z, w).map_err(err)
    }

    fn flip_eval_oracle(&self, p: usize, q: usize, z: Complex64, w: Complex64) -> PyResult<Complex64> {
        flip2d::flip_eval_oracle(&self.inner, p, q, z, w).map_err(err)
    }

    fn eval_all(&self, z: Complex64, w: Complex64) -> Vec<Complex64> {
        self.inner.eval_all(z, w)
    }

    fn lagrange_interpolate(&self, samples: Vec<Complex64>, z: Complex64, w: Complex64) -> PyResult<Complex64> {
        self.inner.lagrange_interpolate(&samples, z, w).map_err(err)
    }

    fn lebesgue_constant(&self, grid_per_axis: usize) -> PyResult<f64> {
        Ok(lebesgue::lebesgue_2d(&self.inner, grid_per_axis).map_err(err)?.lambda)
    }

    fn __len__(&self) -> usize {
        self.inner.n()
    }

    fn __repr__(&self) -> String {
        let d = self.inner.decomposition();
        format!("FlipContext(N={}, d={}, m={})", d.n, d.d, d.m)
    }
}

#[pymodule]
#[pyo3(name = "leja_lab")]
fn leja_lab_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(disk_leja_points, m)?)?;
    m.add_function(wrap_pyfunction!(disk_leja_angle, m)?)?;
    m.add_function(wrap_pyfunction!(index_to_multi, m)?)?;
    m.add_function(wrap_pyfunction!(multi_to_index, m)?)?;
    m.add_function(wrap_pyfunction!(intertwined_points, m)?)?;
    m.add_function(wrap_pyfunction!(vandermonde, m)?)?;
    m.add_function(wrap_pyfunction!(schiffer_siciak, m)?)?;
    m.add_function(wrap_pyfunction!(counterexample, m)?)?;
    m.add_function(wrap_pyfunction!(verify_leja_section, m)?)?;
    m.add_function(wrap_pyfunction!(lebesgue_1d, m)?)?;
    m.add_function(wrap_pyfunction!(lebesgue_2d, m)?)?;
    m.add_function(wrap_pyfunction!(interpolation_errors, m)?)?;
    m.add_class::<PyFlipContext>()?;
    Ok(())
}
