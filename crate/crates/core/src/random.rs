//! Seeded random inputs for property checks and studies.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

use crate::leja1d::{CompactDescriptor, NodeSequence1D, DISTINCT_TOL};

pub const DEFAULT_SEED: u64 = 0x1e7a_2024;

pub type TestRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `n` pairwise-distinct points with uniformly random angles on the unit circle.
pub fn random_unimodular_nodes(rng: &mut TestRng, n: usize) -> NodeSequence1D {
    let mut pts: Vec<Complex64> = Vec::with_capacity(n);
    while pts.len() < n {
        let z = Complex64::from_polar(1.0, rng.random_range(0.0..2.0 * PI));
        if pts.iter().all(|p| (p - z).norm() > DISTINCT_TOL) {
            pts.push(z);
        }
    }
    NodeSequence1D::new(pts, CompactDescriptor::UnitDisk).expect("distinct by construction")
}

/// A point of the closed unit disk, uniform with respect to area.
pub fn random_disk_point(rng: &mut TestRng) -> Complex64 {
    let r = rng.random_range(0.0f64..=1.0).sqrt();
    Complex64::from_polar(r, rng.random_range(0.0..2.0 * PI))
}

/// A point of the closed unit polydisc of dimension `s`.
pub fn random_polydisc_point(rng: &mut TestRng, s: usize) -> Vec<Complex64> {
    (0..s).map(|_| random_disk_point(rng)).collect()
}
