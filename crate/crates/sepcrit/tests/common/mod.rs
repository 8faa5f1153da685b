//! Shared test helpers, most importantly an independent trace-norm oracle.
//!
//! Each test target compiles its own copy, so not every helper is used
//! everywhere.
#![allow(dead_code)]

use nalgebra::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sepcrit::linalg::CMatrix;

/// Trace norm computed along a route independent of the library's SVD: the
/// square-rooted spectrum of `a^H a` from the tridiagonalization-based
/// Hermitian eigensolver.
pub fn trace_norm_oracle(a: &CMatrix) -> f64 {
    let gram = a.adjoint() * a;
    gram.symmetric_eigen()
        .eigenvalues
        .iter()
        .map(|&l| l.max(0.0).sqrt())
        .sum()
}

/// Singular values by the same eigensolve route, sorted descending.
pub fn singular_values_oracle(a: &CMatrix) -> Vec<f64> {
    let gram = a.adjoint() * a;
    let mut vals: Vec<f64> = gram
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .map(|&l| l.max(0.0).sqrt())
        .collect();
    vals.sort_unstable_by(|x, y| y.total_cmp(x));
    vals
}

/// Seeded dense matrix with uniform entries in the complex unit square.
pub fn random_cmatrix(rows: usize, cols: usize, seed: u64) -> CMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let entries: Vec<Complex<f64>> = (0..rows * cols)
        .map(|_| Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    CMatrix::from_row_slice(rows, cols, &entries)
}

/// Seeded random Hermitian matrix.
pub fn random_hermitian(n: usize, seed: u64) -> CMatrix {
    let g = random_cmatrix(n, n, seed);
    (&g + g.adjoint()) * Complex::new(0.5, 0.0)
}
