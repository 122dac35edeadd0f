//! Explicit multidimensional Leja sequences built by intertwining one-dimensional
//! ones, generalized Vandermonde determinants, closed-form bidimensional
//! fundamental Lagrange polynomials (FLIPs) and Lebesgue-constant studies on the
//! unit polydisc and on products of ellipses.
//!
//! Node indices follow two conventions throughout the crate:
//!
//! * intertwined points `H_n` and graded-lex multi-indices `k(n)` are numbered
//!   from **1** (`n >= 1`), so that `N_d = binom(s + d, s)` is the index of the
//!   last point of total degree `d`;
//! * one-dimensional nodes `eta_i` are numbered from **0**.
//!
//! The main entry points are [`leja1d::disk_leja_section`],
//! [`vdm::intertwine`], [`flip2d::FlipContext`] and the sweeps in [`lebesgue`].

pub mod cli;
pub mod error;
pub mod flip2d;
pub mod grid;
pub mod lebesgue;
pub mod leja1d;
pub mod numeration;
pub mod random;
pub mod report;
pub mod vdm;

pub use error::{LejaError, Result};
pub use num_complex::Complex64;
