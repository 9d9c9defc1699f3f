#![allow(dead_code)]

use nalgebra::DMatrix;
use qent_core::{Boundary, CorrelationMatrix, LatticeSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Haar-ish orthogonal matrix from the QR factor of a Gaussian-ish matrix.
pub fn random_orthogonal(n: usize, rng: &mut impl Rng) -> DMatrix<f64> {
    let a = DMatrix::from_fn(n, n, |_, _| rng.random_range(-1.0..1.0));
    a.qr().q()
}

/// Mixed Gaussian state with occupations drawn from `(lo, 1 - lo)`.
pub fn random_mixed_state(n: usize, lo: f64, rng: &mut impl Rng) -> CorrelationMatrix {
    let u = random_orthogonal(n, rng);
    let p: Vec<f64> = (0..n).map(|_| rng.random_range(lo..1.0 - lo)).collect();
    CorrelationMatrix::from_modes((0..n).collect(), &u, &p).unwrap()
}

/// Pure Gaussian state with `nf` filled random orbitals.
pub fn random_pure_state(n: usize, nf: usize, rng: &mut impl Rng) -> CorrelationMatrix {
    let u = random_orthogonal(n, rng);
    let p: Vec<f64> = (0..n).map(|k| if k < nf { 1.0 } else { 0.0 }).collect();
    CorrelationMatrix::from_modes((0..n).collect(), &u, &p).unwrap()
}

pub fn random_symmetric(n: usize, rng: &mut impl Rng) -> DMatrix<f64> {
    let a = DMatrix::from_fn(n, n, |_, _| rng.random_range(-1.0..1.0));
    (&a + a.transpose()) * 0.5
}

pub fn open_chain(n: usize, nf: usize) -> LatticeSpec {
    LatticeSpec::new(n, 1.0, 0.0, Boundary::Open).unwrap().with_particles(nf).unwrap()
}

pub fn ring(n: usize) -> LatticeSpec {
    LatticeSpec::new(n, 1.0, 0.0, Boundary::Antiperiodic).unwrap()
}
