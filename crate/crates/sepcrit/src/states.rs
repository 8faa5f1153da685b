//! Validated density matrices and the concrete states and random ensembles
//! used by the criteria and their tests.

use nalgebra::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Exp1, StandardNormal};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{self, CMatrix, LinalgError, Scalar};

/// Entrywise tolerance for `|rho - rho^H|`.
pub const HERMITICITY_TOL: f64 = 1e-12;
/// Tolerance for `|Tr rho - 1|`.
pub const TRACE_TOL: f64 = 1e-12;
/// Floor for the smallest eigenvalue; the slack absorbs eigensolver noise at
/// the largest supported sizes.
pub const MIN_EIGENVALUE: f64 = -1e-10;

#[derive(Debug, Error)]
pub enum StateError {
    #[error("parameter {name} = {value} out of range ({expected})")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },
    #[error("matrix size {size} does not match subsystem dimensions {dims:?}")]
    DimsMismatch { size: usize, dims: Vec<usize> },
    #[error("matrix is not Hermitian (max deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },
    #[error("trace is {trace:.12} instead of 1")]
    TraceNotOne { trace: f64 },
    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:.3e})")]
    NotPositive { min_eigenvalue: f64 },
    #[error("malformed matrix data: {0}")]
    BadData(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A validated quantum state: Hermitian, unit-trace, positive semidefinite
/// complex matrix together with the subsystem dimensions it lives on.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    mat: CMatrix,
    dims: Vec<usize>,
}

impl DensityMatrix {
    /// Validate `mat` as a density matrix on subsystems of sizes `dims`.
    ///
    /// Constructors reject instead of repairing; callers with noisy external
    /// data can apply [`symmetrize`] first.
    pub fn new(mat: CMatrix, dims: Vec<usize>) -> Result<Self, StateError> {
        let expected: usize = dims.iter().product();
        if dims.is_empty() || dims.contains(&0) || mat.nrows() != expected || mat.ncols() != expected
        {
            return Err(StateError::DimsMismatch {
                size: mat.nrows(),
                dims,
            });
        }
        if !mat.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Err(StateError::BadData("non-finite entry".into()));
        }
        let deviation = (&mat - mat.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max);
        if deviation > HERMITICITY_TOL {
            return Err(StateError::NotHermitian { deviation });
        }
        let trace = mat.trace().re;
        if (trace - 1.0).abs() > TRACE_TOL {
            return Err(StateError::TraceNotOne { trace });
        }
        let eigs = linalg::hermitian_eigenvalues(&mat)?;
        let min_eigenvalue = eigs.first().copied().unwrap_or(0.0);
        if min_eigenvalue < MIN_EIGENVALUE {
            return Err(StateError::NotPositive { min_eigenvalue });
        }
        Ok(Self { mat, dims })
    }

    /// Internal constructor for matrices that are valid by construction
    /// (partial traces, convex mixtures of validated states, ...).
    pub(crate) fn trusted(mat: CMatrix, dims: Vec<usize>) -> Self {
        debug_assert_eq!(mat.nrows(), dims.iter().product::<usize>());
        Self { mat, dims }
    }

    pub fn mat(&self) -> &CMatrix {
        &self.mat
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn parties(&self) -> usize {
        self.dims.len()
    }

    pub fn size(&self) -> usize {
        self.mat.nrows()
    }

    /// Reduced state on the given parties (0-based), in original party order.
    pub fn reduced(&self, keep: &[usize]) -> Result<DensityMatrix, StateError> {
        let mat = linalg::partial_trace(&self.mat, &self.dims, keep)?;
        let mut keep = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let dims = keep.iter().map(|&k| self.dims[k]).collect();
        Ok(DensityMatrix::trusted(mat, dims))
    }

    /// Purity `Tr(rho^2)`; equals the squared Frobenius norm for Hermitian
    /// matrices.
    pub fn purity(&self) -> f64 {
        self.mat.norm_squared()
    }

    /// Parse the JSON interchange format
    /// `{"dims": [..], "re": [[..]], "im": [[..]]}` (row-major arrays; `im`
    /// may be omitted for real matrices) and run full validation.
    pub fn from_json(text: &str) -> Result<Self, StateError> {
        let raw: MatrixFile = serde_json::from_str(text)?;
        raw.into_density_matrix()
    }

    /// Serialize to the JSON interchange format accepted by [`from_json`].
    pub fn to_json(&self) -> String {
        let n = self.size();
        let grab = |f: fn(&Scalar) -> f64| -> Vec<Vec<f64>> {
            (0..n)
                .map(|i| (0..n).map(|j| f(&self.mat[(i, j)])).collect())
                .collect()
        };
        let file = MatrixFile {
            dims: self.dims.clone(),
            re: grab(|z| z.re),
            im: grab(|z| z.im),
        };
        serde_json::to_string_pretty(&file).expect("density matrix serializes")
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixFile {
    dims: Vec<usize>,
    re: Vec<Vec<f64>>,
    #[serde(default)]
    im: Vec<Vec<f64>>,
}

impl MatrixFile {
    fn into_density_matrix(self) -> Result<DensityMatrix, StateError> {
        let n: usize = self.dims.iter().product();
        let shape_ok = |rows: &[Vec<f64>]| rows.len() == n && rows.iter().all(|r| r.len() == n);
        if !shape_ok(&self.re) {
            return Err(StateError::BadData(format!(
                "'re' must be a {n}x{n} row-major array"
            )));
        }
        if !self.im.is_empty() && !shape_ok(&self.im) {
            return Err(StateError::BadData(format!(
                "'im' must be a {n}x{n} row-major array or omitted"
            )));
        }
        let mat = CMatrix::from_fn(n, n, |i, j| {
            let im = if self.im.is_empty() { 0.0 } else { self.im[i][j] };
            Complex::new(self.re[i][j], im)
        });
        DensityMatrix::new(mat, self.dims)
    }
}

/// Hermitian part `(m + m^H)/2`, for cleaning up external inputs before
/// validation.
pub fn symmetrize(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()) * Complex::new(0.5, 0.0)
}

/// The real symmetric 9x9 two-qutrit state family, parametrized by
/// `0 < a < 1` with overall normalization `1/(8a+1)`.
pub fn horodecki_3x3(a: f64) -> Result<DensityMatrix, StateError> {
    if !(a > 0.0 && a < 1.0) {
        return Err(StateError::InvalidParameter {
            name: "a",
            value: a,
            expected: "0 < a < 1",
        });
    }
    let norm = 1.0 / (8.0 * a + 1.0);
    let cross = (1.0 - a * a).sqrt() / 2.0;
    let mut m = CMatrix::zeros(9, 9);
    for k in 0..6 {
        m[(k, k)] = Complex::from(a);
    }
    m[(6, 6)] = Complex::from((1.0 + a) / 2.0);
    m[(7, 7)] = Complex::from(a);
    m[(8, 8)] = Complex::from((1.0 + a) / 2.0);
    for &(i, j) in &[(0, 4), (0, 8), (4, 8)] {
        m[(i, j)] = Complex::from(a);
        m[(j, i)] = Complex::from(a);
    }
    m[(6, 8)] = Complex::from(cross);
    m[(8, 6)] = Complex::from(cross);
    DensityMatrix::new(m * Complex::from(norm), vec![3, 3])
}

/// Mix `rho` with white noise: `p*rho + (1-p)*I/size`.
pub fn with_white_noise(rho: &DensityMatrix, p: f64) -> Result<DensityMatrix, StateError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(StateError::InvalidParameter {
            name: "p",
            value: p,
            expected: "0 <= p <= 1",
        });
    }
    let n = rho.size();
    let mixed = rho.mat() * Complex::from(p)
        + CMatrix::identity(n, n) * Complex::from((1.0 - p) / n as f64);
    Ok(DensityMatrix::trusted(mixed, rho.dims().to_vec()))
}

/// Two-qubit singlet mixed with a fixed diagonal separable background:
/// `p*|s><s| + (1-p)*(2/3 |00><00| + 1/3 |01><01|)` with
/// `|s> = (|01> - |10>)/sqrt(2)`.
pub fn noisy_singlet(p: f64) -> Result<DensityMatrix, StateError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(StateError::InvalidParameter {
            name: "p",
            value: p,
            expected: "0 <= p <= 1",
        });
    }
    let mut m = CMatrix::zeros(4, 4);
    m[(1, 1)] = Complex::from(p / 2.0 + (1.0 - p) / 3.0);
    m[(2, 2)] = Complex::from(p / 2.0);
    m[(1, 2)] = Complex::from(-p / 2.0);
    m[(2, 1)] = Complex::from(-p / 2.0);
    m[(0, 0)] = Complex::from(2.0 * (1.0 - p) / 3.0);
    Ok(DensityMatrix::trusted(m, vec![2, 2]))
}

/// Projector onto the maximally entangled state `(1/sqrt(d)) sum_i |ii>`.
pub fn max_entangled(d: usize) -> Result<DensityMatrix, StateError> {
    if d < 2 {
        return Err(StateError::InvalidParameter {
            name: "d",
            value: d as f64,
            expected: "d >= 2",
        });
    }
    let mut m = CMatrix::zeros(d * d, d * d);
    let w = Complex::from(1.0 / d as f64);
    for i in 0..d {
        for j in 0..d {
            m[(i * d + i, j * d + j)] = w;
        }
    }
    Ok(DensityMatrix::trusted(m, vec![d, d]))
}

fn complex_gaussian<R: Rng>(rng: &mut R) -> Scalar {
    // Standard complex normal: unit-variance complex entries.
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Haar-random pure state vector of dimension `d`, as a column matrix.
fn random_pure<R: Rng>(rng: &mut R, d: usize) -> CMatrix {
    loop {
        let v = CMatrix::from_fn(d, 1, |_, _| complex_gaussian(rng));
        let norm = v.norm();
        if norm > 1e-12 {
            return v * Complex::from(1.0 / norm);
        }
    }
}

/// Ginibre-induced random state `G G^H / Tr(G G^H)` with independent
/// standard complex Gaussian entries from a deterministic seeded generator.
/// The same seed yields a bit-identical state.
pub fn random_density(dims: &[usize], seed: u64) -> DensityMatrix {
    assert!(
        !dims.is_empty() && !dims.contains(&0),
        "subsystem dimensions must be positive"
    );
    let n: usize = dims.iter().product();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // Fill in explicit row-major order so the stream layout is pinned.
    let entries: Vec<Scalar> = (0..n * n).map(|_| complex_gaussian(&mut rng)).collect();
    let g = CMatrix::from_row_slice(n, n, &entries);
    let gram = &g * g.adjoint();
    let mat = &gram * Complex::from(1.0 / gram.trace().re);
    DensityMatrix::new(mat, dims.to_vec()).expect("Ginibre construction is a valid state")
}

/// Convex mixture of `terms` random pure product states with uniform
/// Dirichlet weights; separable across every cut by construction.
pub fn random_separable(dims: &[usize], terms: usize, seed: u64) -> Result<DensityMatrix, StateError> {
    if terms == 0 {
        return Err(StateError::InvalidParameter {
            name: "terms",
            value: 0.0,
            expected: "terms >= 1",
        });
    }
    assert!(
        !dims.is_empty() && !dims.contains(&0),
        "subsystem dimensions must be positive"
    );
    let n: usize = dims.iter().product();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut weights: Vec<f64> = (0..terms).map(|_| rng.sample::<f64, _>(Exp1)).collect();
    let total: f64 = weights.iter().sum();
    weights.iter_mut().for_each(|w| *w /= total);

    let mut mat = CMatrix::zeros(n, n);
    for w in weights {
        let mut v = CMatrix::from_element(1, 1, Complex::from(1.0));
        for &d in dims {
            v = linalg::kron(&v, &random_pure(&mut rng, d));
        }
        mat += &v * v.adjoint() * Complex::from(w);
    }
    DensityMatrix::new(mat, dims.to_vec())
}
