//! Local orthogonal observable bases and SU(d) generators.

use nalgebra::Complex;

use super::CriterionError;
use crate::linalg::{CMatrix, Scalar};

/// Orthonormality tolerance for local orthogonal bases.
const ORTHONORMALITY_TOL: f64 = 1e-12;

/// Generalized Gell-Mann generators of SU(d), normalized to
/// `Tr(lambda_i lambda_j) = 2 delta_ij`, in a fixed enumeration: the
/// symmetric family `E_jk + E_kj` (j < k, lexicographic), then the
/// antisymmetric family `-i E_jk + i E_kj`, then the d-1 diagonal
/// generators. There are `d^2 - 1` in total.
pub fn su_generators(d: usize) -> Vec<CMatrix> {
    let mut ops = Vec::with_capacity(d * d - 1);
    for j in 0..d {
        for k in j + 1..d {
            let mut m = CMatrix::zeros(d, d);
            m[(j, k)] = Complex::from(1.0);
            m[(k, j)] = Complex::from(1.0);
            ops.push(m);
        }
    }
    for j in 0..d {
        for k in j + 1..d {
            let mut m = CMatrix::zeros(d, d);
            m[(j, k)] = Complex::new(0.0, -1.0);
            m[(k, j)] = Complex::new(0.0, 1.0);
            ops.push(m);
        }
    }
    for l in 1..d {
        let mut m = CMatrix::zeros(d, d);
        let scale = (2.0 / (l as f64 * (l + 1) as f64)).sqrt();
        for q in 0..l {
            m[(q, q)] = Complex::from(scale);
        }
        m[(l, l)] = Complex::from(-(l as f64) * scale);
        ops.push(m);
    }
    ops
}

/// A complete set of `d^2` Hermitian operators, orthonormal in the
/// Hilbert-Schmidt inner product `Tr(G_k G_l) = delta_kl`. Completeness
/// follows from orthonormality plus the count, so the set spans all
/// Hermitian `d x d` matrices.
#[derive(Debug, Clone)]
pub struct LocalOrthogonalBasis {
    dim: usize,
    ops: Vec<CMatrix>,
}

impl LocalOrthogonalBasis {
    pub fn new(ops: Vec<CMatrix>) -> Result<Self, CriterionError> {
        let dim = match ops.first() {
            Some(op) if op.is_square() => op.nrows(),
            _ => {
                return Err(CriterionError::InvalidBasis(
                    "need at least one square operator".into(),
                ))
            }
        };
        if ops.len() != dim * dim {
            return Err(CriterionError::InvalidBasis(format!(
                "a complete basis on dimension {dim} needs {} operators, got {}",
                dim * dim,
                ops.len()
            )));
        }
        if ops.iter().any(|op| op.nrows() != dim || op.ncols() != dim) {
            return Err(CriterionError::InvalidBasis(
                "operators have inconsistent sizes".into(),
            ));
        }
        let mut worst_herm = 0.0f64;
        for op in &ops {
            let dev = (op - op.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max);
            worst_herm = worst_herm.max(dev);
        }
        if worst_herm > ORTHONORMALITY_TOL {
            return Err(CriterionError::InvalidBasis(format!(
                "operators are not Hermitian (max deviation {worst_herm:.3e})"
            )));
        }
        let mut worst = 0.0f64;
        for (k, a) in ops.iter().enumerate() {
            for (l, b) in ops.iter().enumerate() {
                let inner = hs_inner(a, b);
                let target = if k == l { 1.0 } else { 0.0 };
                worst = worst.max((inner - target).abs());
            }
        }
        if worst > ORTHONORMALITY_TOL {
            return Err(CriterionError::InvalidBasis(format!(
                "operators are not Hilbert-Schmidt orthonormal (max deviation {worst:.3e})"
            )));
        }
        Ok(Self { dim, ops })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ops(&self) -> &[CMatrix] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }
}

/// Real Hilbert-Schmidt inner product `Tr(a^H b)` of Hermitian operators.
fn hs_inner(a: &CMatrix, b: &CMatrix) -> f64 {
    let mut acc = Scalar::from(0.0);
    for (x, y) in a.iter().zip(b.iter()) {
        acc += x.conj() * y;
    }
    acc.re
}

/// The default complete basis on dimension `d >= 2`: the identity scaled to
/// `I/sqrt(d)` followed by the SU(d) generators scaled to unit
/// Hilbert-Schmidt norm. For d = 2 this is `{I, sigma_x, sigma_y, sigma_z} /
/// sqrt(2)`.
pub fn default_basis(d: usize) -> LocalOrthogonalBasis {
    assert!(d >= 1, "basis dimension must be positive");
    let mut ops = vec![CMatrix::identity(d, d) * Complex::from(1.0 / (d as f64).sqrt())];
    let half_sqrt2 = Complex::from(std::f64::consts::FRAC_1_SQRT_2);
    ops.extend(su_generators(d).into_iter().map(|g| g * half_sqrt2));
    LocalOrthogonalBasis::new(ops).expect("default basis is orthonormal by construction")
}
