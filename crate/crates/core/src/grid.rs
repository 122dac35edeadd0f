//! Boundary sampling grids and a deterministic grid argmax.

use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

/// `exp(2*pi*i*j/m)`, exact at multiples of a quarter turn.
pub fn circle_point(j: usize, m: usize) -> Complex64 {
    let j = j % m;
    if (4 * j) % m == 0 {
        return match 4 * j / m {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    let (s, c) = (2.0 * PI * j as f64 / m as f64).sin_cos();
    Complex64::new(c, s)
}

/// `m` equispaced points on the unit circle, starting at 1.
pub fn torus_grid(m: usize) -> Vec<Complex64> {
    (0..m).map(|j| circle_point(j, m)).collect()
}

/// Angle of the `j`-th sample of an `m`-point circle grid, in units of pi.
pub fn grid_angle_over_pi(j: usize, m: usize) -> f64 {
    2.0 * j as f64 / m as f64
}

/// Location and value of a maximum.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ArgMax {
    pub index: usize,
    pub value: f64,
}

impl ArgMax {
    // Larger value wins; equal values resolve to the lower index, which keeps the
    // reduction associative and commutative.
    pub(crate) fn better(self, other: ArgMax) -> ArgMax {
        if other.value > self.value || (other.value == self.value && other.index < self.index) {
            other
        } else {
            self
        }
    }
}

/// Maximum of `f(i)` over `0..len`; NaN values are ignored. Returns `None` for an
/// empty range or when every value is NaN. Runs in parallel; the result matches the
/// sequential lowest-index tie-break.
pub fn par_argmax<F>(len: usize, f: F) -> Option<ArgMax>
where
    F: Fn(usize) -> f64 + Sync,
{
    (0..len)
        .into_par_iter()
        .filter_map(|i| {
            let value = f(i);
            (!value.is_nan()).then_some(ArgMax { index: i, value })
        })
        .reduce_with(ArgMax::better)
}

/// Sequential variant of [`par_argmax`].
pub fn argmax<F>(len: usize, f: F) -> Option<ArgMax>
where
    F: Fn(usize) -> f64,
{
    (0..len)
        .filter_map(|i| {
            let value = f(i);
            (!value.is_nan()).then_some(ArgMax { index: i, value })
        })
        .reduce(ArgMax::better)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quarter_points_are_exact() {
        assert_eq!(circle_point(0, 8), Complex64::new(1.0, 0.0));
        assert_eq!(circle_point(2, 8), Complex64::new(0.0, 1.0));
        assert_eq!(circle_point(4, 8), Complex64::new(-1.0, 0.0));
        assert_eq!(circle_point(6, 8), Complex64::new(0.0, -1.0));
        assert!((circle_point(1, 8).norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn argmax_tie_break_is_lowest_index() {
        let vals = [1.0, 3.0, 2.0, 3.0, f64::NAN];
        let seq = argmax(vals.len(), |i| vals[i]).unwrap();
        let par = par_argmax(vals.len(), |i| vals[i]).unwrap();
        assert_eq!(seq, ArgMax { index: 1, value: 3.0 });
        assert_eq!(par, seq);
        assert!(argmax(0, |_| 0.0).is_none());
    }
}
