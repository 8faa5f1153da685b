//! Dense complex linear algebra and the index reshuffles (realignment,
//! partial transpose, partial trace, subsystem permutation) that every
//! separability criterion is built from.
//!
//! Matrices are `nalgebra::DMatrix<Complex<f64>>`. Subsystem ("party")
//! indices are 0-based. A state on parties of dimensions `dims = [d0, ..,
//! d(N-1)]` lives on a square matrix of size `d0*..*d(N-1)` whose row index
//! flattens the per-party indices in party order, party 0 slowest:
//! `row = i0*(d1*..*d(N-1)) + i1*(d2*..) + .. + i(N-1)`.
//!
//! All operations are pure functions of their inputs; there is no shared
//! state and values can move freely across threads.

use nalgebra::{Complex, DMatrix, DVector};
use thiserror::Error;

/// Complex scalar used throughout.
pub type Scalar = Complex<f64>;
/// Dense dynamically-sized complex matrix.
pub type CMatrix = DMatrix<Scalar>;
/// Dense dynamically-sized complex column vector.
pub type CVector = DVector<Scalar>;

/// Iteration cap for the SVD and Hermitian eigensolver. Generous for the
/// matrix sizes supported here (up to a few hundred); hitting it is reported
/// as non-convergence, never silently ignored.
const MAX_DECOMP_ITER: usize = 10_000;

#[derive(Debug, Error)]
pub enum LinalgError {
    #[error("matrix is {rows}x{cols} but the subsystem dimensions require a {expected}x{expected} matrix")]
    SizeMismatch {
        rows: usize,
        cols: usize,
        expected: usize,
    },
    #[error("matrix contains a non-finite entry")]
    NonFinite,
    #[error("singular value decomposition did not converge")]
    SvdDidNotConverge,
    #[error("Hermitian eigendecomposition did not converge")]
    EigenDidNotConverge,
    #[error("keep set must be a nonempty subset of the {parties} subsystem indices")]
    InvalidKeepSet { parties: usize },
    #[error("{perm:?} is not a permutation of 0..{parties}")]
    InvalidPermutation { perm: Vec<usize>, parties: usize },
    #[error("pair ({m}, {n}) must consist of two distinct subsystem indices below {parties}")]
    InvalidPair { m: usize, n: usize, parties: usize },
    #[error("pairing must be a perfect matching of the {parties} subsystems")]
    InvalidPairing { parties: usize },
}

fn ensure_finite(a: &CMatrix) -> Result<(), LinalgError> {
    if a.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        Ok(())
    } else {
        Err(LinalgError::NonFinite)
    }
}

fn ensure_square_size(a: &CMatrix, dims: &[usize]) -> Result<usize, LinalgError> {
    let expected: usize = dims.iter().product();
    if a.nrows() != expected || a.ncols() != expected {
        return Err(LinalgError::SizeMismatch {
            rows: a.nrows(),
            cols: a.ncols(),
            expected,
        });
    }
    Ok(expected)
}

/// Row-major strides for a multi-index: `strides[k] = dims[k+1] * .. * dims[N-1]`.
fn strides(dims: &[usize]) -> Vec<usize> {
    let mut s = vec![1usize; dims.len()];
    for k in (0..dims.len().saturating_sub(1)).rev() {
        s[k] = s[k + 1] * dims[k + 1];
    }
    s
}

/// Decompose every flat index `0..total` into per-party digits, row-major.
fn digit_table(dims: &[usize]) -> Vec<Vec<usize>> {
    let total: usize = dims.iter().product();
    let st = strides(dims);
    (0..total)
        .map(|flat| {
            dims.iter()
                .enumerate()
                .map(|(k, &d)| flat / st[k] % d)
                .collect()
        })
        .collect()
}

fn flatten(digits: &[usize], st: &[usize]) -> usize {
    digits.iter().zip(st).map(|(&i, &s)| i * s).sum()
}

/// Kronecker (tensor) product `a ⊗ b`.
///
/// Block `(i, j)` of the result equals `a[(i, j)] * b`. Panics if the result
/// dimension overflows `usize`.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.nrows()
        .checked_mul(b.nrows())
        .and_then(|r| r.checked_mul(a.ncols()))
        .and_then(|r| r.checked_mul(b.ncols()))
        .expect("kron: result dimension overflows usize");
    a.kronecker(b)
}

/// Column-stacking vectorization: for an m x n matrix `a`,
/// `vectorize(a)[i + m*j] = a[(i, j)]`, i.e. the columns of `a` concatenated
/// top to bottom.
pub fn vectorize(a: &CMatrix) -> CVector {
    // nalgebra stores column-major, so the raw slice is already vec(a).
    CVector::from_column_slice(a.as_slice())
}

/// Singular values of `a`, sorted descending.
///
/// Values-only contract: no singular vectors are computed anywhere in this
/// crate. Non-convergence of the underlying bidiagonal iteration is reported
/// as an error.
pub fn singular_values(a: &CMatrix) -> Result<Vec<f64>, LinalgError> {
    ensure_finite(a)?;
    let svd = a
        .clone()
        .try_svd(false, false, f64::EPSILON, MAX_DECOMP_ITER)
        .ok_or(LinalgError::SvdDidNotConverge)?;
    let mut vals: Vec<f64> = svd.singular_values.iter().copied().collect();
    vals.sort_unstable_by(|x, y| y.total_cmp(x));
    Ok(vals)
}

/// Trace norm (nuclear norm): the sum of the singular values.
pub fn trace_norm(a: &CMatrix) -> Result<f64, LinalgError> {
    Ok(singular_values(a)?.iter().sum())
}

/// Eigenvalues of a Hermitian matrix, sorted ascending.
///
/// The input is assumed Hermitian; only its Hermitian part influences the
/// result of the tridiagonalization-based solver.
pub fn hermitian_eigenvalues(a: &CMatrix) -> Result<Vec<f64>, LinalgError> {
    ensure_finite(a)?;
    ensure_square_size(a, &[a.nrows()])?;
    let eig = a
        .clone()
        .try_symmetric_eigen(f64::EPSILON, MAX_DECOMP_ITER)
        .ok_or(LinalgError::EigenDidNotConverge)?;
    let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    vals.sort_unstable_by(f64::total_cmp);
    Ok(vals)
}

/// Partial trace onto the parties listed in `keep` (0-based, any order,
/// duplicates ignored). The kept parties remain in their original relative
/// order; the trace over the discarded parties preserves the total trace.
pub fn partial_trace(rho: &CMatrix, dims: &[usize], keep: &[usize]) -> Result<CMatrix, LinalgError> {
    let total = ensure_square_size(rho, dims)?;
    let mut keep: Vec<usize> = keep.to_vec();
    keep.sort_unstable();
    keep.dedup();
    if keep.is_empty() || keep.iter().any(|&k| k >= dims.len()) {
        return Err(LinalgError::InvalidKeepSet {
            parties: dims.len(),
        });
    }
    let drop: Vec<usize> = (0..dims.len()).filter(|k| !keep.contains(k)).collect();
    let keep_dims: Vec<usize> = keep.iter().map(|&k| dims[k]).collect();
    let out_size: usize = keep_dims.iter().product();
    let out_strides = strides(&keep_dims);
    let digits = digit_table(dims);

    let mut out = CMatrix::zeros(out_size, out_size);
    for r in 0..total {
        for c in 0..total {
            if drop.iter().any(|&k| digits[r][k] != digits[c][k]) {
                continue;
            }
            let ro: usize = keep
                .iter()
                .zip(&out_strides)
                .map(|(&k, &s)| digits[r][k] * s)
                .sum();
            let co: usize = keep
                .iter()
                .zip(&out_strides)
                .map(|(&k, &s)| digits[c][k] * s)
                .sum();
            out[(ro, co)] += rho[(r, c)];
        }
    }
    Ok(out)
}

/// The bipartite party selector for [`partial_transpose`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Party {
    A,
    B,
}

/// Transpose the indices of one party of a bipartite operator, leaving the
/// other untouched. Applying the same partial transpose twice is the
/// identity.
pub fn partial_transpose(
    rho: &CMatrix,
    da: usize,
    db: usize,
    party: Party,
) -> Result<CMatrix, LinalgError> {
    ensure_square_size(rho, &[da, db])?;
    let mut out = CMatrix::zeros(da * db, da * db);
    for a in 0..da {
        for b in 0..da {
            for i in 0..db {
                for j in 0..db {
                    let v = rho[(a * db + i, b * db + j)];
                    match party {
                        Party::B => out[(a * db + j, b * db + i)] = v,
                        Party::A => out[(b * db + i, a * db + j)] = v,
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Realignment of a bipartite operator, viewed as a `da x da` block matrix
/// with `db x db` blocks `Z[a][b]`.
///
/// The result is `da^2 x db^2`; row `(a, b)` (with `a` varying fastest,
/// i.e. row index `a + da*b`) holds `vec(Z[a][b])` transposed:
///
/// ```text
/// realign(rho)[(a + da*b, i + db*j)] = rho[(a*db + i, b*db + j)]
/// ```
///
/// Consequently `realign(x ⊗ y) = vectorize(x) * vectorize(y)^T`, and the
/// reshuffle is an isometry of the Hilbert-Schmidt norm.
pub fn realign(rho: &CMatrix, da: usize, db: usize) -> Result<CMatrix, LinalgError> {
    ensure_square_size(rho, &[da, db])?;
    let mut out = CMatrix::zeros(da * da, db * db);
    for a in 0..da {
        for b in 0..da {
            for i in 0..db {
                for j in 0..db {
                    out[(a + da * b, i + db * j)] = rho[(a * db + i, b * db + j)];
                }
            }
        }
    }
    Ok(out)
}

/// Reorder tensor factors: party `k` of the input moves to position
/// `perm[k]` of the output, so for product inputs
/// `permute(⊗_k σ_k) = ⊗_i σ_{perm⁻¹(i)}`.
///
/// This is conjugation by a permutation unitary: spectrum, trace and
/// Hermiticity are preserved.
pub fn permute_subsystems(
    rho: &CMatrix,
    dims: &[usize],
    perm: &[usize],
) -> Result<CMatrix, LinalgError> {
    let total = ensure_square_size(rho, dims)?;
    let parties = dims.len();
    let mut seen = vec![false; parties];
    let valid = perm.len() == parties
        && perm
            .iter()
            .all(|&p| p < parties && !std::mem::replace(&mut seen[p], true));
    if !valid {
        return Err(LinalgError::InvalidPermutation {
            perm: perm.to_vec(),
            parties,
        });
    }
    let mut out_dims = vec![0usize; parties];
    for k in 0..parties {
        out_dims[perm[k]] = dims[k];
    }
    let out_strides = strides(&out_dims);
    let digits = digit_table(dims);
    let mut out = CMatrix::zeros(total, total);
    let map = |flat: usize| -> usize {
        (0..parties).map(|k| digits[flat][k] * out_strides[perm[k]]).sum()
    };
    for r in 0..total {
        let ro = map(r);
        for c in 0..total {
            out[(ro, map(c))] = rho[(r, c)];
        }
    }
    Ok(out)
}

fn pair_exchange_dims(
    dims: &[usize],
    pairing: &[(usize, usize)],
) -> (Vec<usize>, Vec<usize>) {
    let mut row_dims = dims.to_vec();
    let mut col_dims = dims.to_vec();
    for &(m, n) in pairing {
        row_dims[n] = dims[m];
        col_dims[m] = dims[n];
    }
    (row_dims, col_dims)
}

fn pair_realign_impl(
    rho: &CMatrix,
    dims: &[usize],
    pairing: &[(usize, usize)],
) -> Result<CMatrix, LinalgError> {
    let total = ensure_square_size(rho, dims)?;
    let parties = dims.len();
    let (row_dims, col_dims) = pair_exchange_dims(dims, pairing);
    let row_strides = strides(&row_dims);
    let col_strides = strides(&col_dims);
    let digits = digit_table(dims);
    let mut out = CMatrix::zeros(
        row_dims.iter().product(),
        col_dims.iter().product(),
    );
    let mut u = vec![0usize; parties];
    let mut v = vec![0usize; parties];
    for r in 0..total {
        for c in 0..total {
            u.copy_from_slice(&digits[r]);
            v.copy_from_slice(&digits[c]);
            // Move each pair's column-side index of party m into the
            // row-side slot of party n and vice versa.
            for &(m, n) in pairing {
                u[n] = digits[c][m];
                v[m] = digits[r][n];
            }
            out[(flatten(&u, &row_strides), flatten(&v, &col_strides))] = rho[(r, c)];
        }
    }
    Ok(out)
}

/// Realignment acting on parties `m` and `n` of an N-party operator while
/// leaving the remaining parties untouched.
///
/// In the index tensor `rho[i_0 j_0 .. i_(N-1) j_(N-1)]` the column-side
/// slot `j_m` is exchanged with the row-side slot `i_n`; the result is then
/// flattened with rows running over all row-side slots in party order and
/// columns over all column-side slots in party order. For N = 2 and
/// `(m, n) = (0, 1)` the singular values coincide with those of [`realign`]
/// (the two layouts differ only by row and column permutations).
pub fn pair_realign(
    rho: &CMatrix,
    dims: &[usize],
    m: usize,
    n: usize,
) -> Result<CMatrix, LinalgError> {
    let parties = dims.len();
    if m == n || m >= parties || n >= parties {
        return Err(LinalgError::InvalidPair { m, n, parties });
    }
    pair_realign_impl(rho, dims, &[(m, n)])
}

/// Apply the exchange of [`pair_realign`] simultaneously for every pair of a
/// perfect matching of the parties, with the same flattening convention.
/// With a single pair on a bipartite operator this reduces to
/// [`pair_realign`].
pub fn multi_pair_realign(
    rho: &CMatrix,
    dims: &[usize],
    pairing: &[(usize, usize)],
) -> Result<CMatrix, LinalgError> {
    let parties = dims.len();
    let mut seen = vec![false; parties];
    let mut covered = 0usize;
    for &(m, n) in pairing {
        if m == n || m >= parties || n >= parties || seen[m] || seen[n] {
            return Err(LinalgError::InvalidPairing { parties });
        }
        seen[m] = true;
        seen[n] = true;
        covered += 2;
    }
    if covered != parties {
        return Err(LinalgError::InvalidPairing { parties });
    }
    pair_realign_impl(rho, dims, pairing)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Scalar {
        Complex::new(re, im)
    }

    fn cm(rows: usize, cols: usize, re: &[f64]) -> CMatrix {
        CMatrix::from_row_slice(rows, cols, &re.iter().map(|&x| c(x, 0.0)).collect::<Vec<_>>())
    }

    fn pauli_z() -> CMatrix {
        cm(2, 2, &[1.0, 0.0, 0.0, -1.0])
    }

    fn singlet() -> CMatrix {
        // (|01> - |10>)/sqrt(2); projector has 1/2 entries on the middle block.
        cm(
            4,
            4,
            &[
                0.0, 0.0, 0.0, 0.0, //
                0.0, 0.5, -0.5, 0.0, //
                0.0, -0.5, 0.5, 0.0, //
                0.0, 0.0, 0.0, 0.0,
            ],
        )
    }

    #[test]
    fn kron_identities() {
        let i2 = CMatrix::identity(2, 2);
        assert_eq!(kron(&i2, &i2), CMatrix::identity(4, 4));

        let a = cm(2, 2, &[1.0, 0.0, 0.0, 2.0]);
        let b = cm(2, 2, &[3.0, 0.0, 0.0, 4.0]);
        let k = kron(&a, &b);
        let expected = cm(
            4,
            4,
            &[
                3.0, 0.0, 0.0, 0.0, //
                0.0, 4.0, 0.0, 0.0, //
                0.0, 0.0, 6.0, 0.0, //
                0.0, 0.0, 0.0, 8.0,
            ],
        );
        assert_eq!(k, expected);

        // sigma_z ⊗ sigma_z has the 4x4 block structure diag(1, -1, -1, 1).
        let zz = kron(&pauli_z(), &pauli_z());
        let expected = cm(
            4,
            4,
            &[
                1.0, 0.0, 0.0, 0.0, //
                0.0, -1.0, 0.0, 0.0, //
                0.0, 0.0, -1.0, 0.0, //
                0.0, 0.0, 0.0, 1.0,
            ],
        );
        assert_eq!(zz, expected);
    }

    #[test]
    fn vectorize_stacks_columns() {
        let a = cm(2, 2, &[1.0, 2.0, 3.0, 4.0]);
        let v = vectorize(&a);
        assert_eq!(
            v.iter().map(|z| z.re).collect::<Vec<_>>(),
            vec![1.0, 3.0, 2.0, 4.0]
        );

        // vec(I_n) has ones at 0-based positions 0, n+1, 2n+2, ...
        let n = 4;
        let v = vectorize(&CMatrix::identity(n, n));
        for (k, z) in v.iter().enumerate() {
            let expected = if k % (n + 1) == 0 { 1.0 } else { 0.0 };
            assert_eq!(z.re, expected);
        }

        // A 1 x n row vectorizes to its transpose.
        let row = cm(1, 3, &[5.0, 6.0, 7.0]);
        assert_eq!(vectorize(&row), row.transpose().column(0).into_owned());
    }

    #[test]
    fn singular_values_basics() {
        let vals = singular_values(&CMatrix::identity(3, 3)).unwrap();
        assert_eq!(vals, vec![1.0, 1.0, 1.0]);

        // Signs do not affect singular values; order is descending.
        let d = cm(2, 2, &[3.0, 0.0, 0.0, -4.0]);
        let vals = singular_values(&d).unwrap();
        assert_relative_eq!(vals[0], 4.0, max_relative = 1e-12);
        assert_relative_eq!(vals[1], 3.0, max_relative = 1e-12);

        assert!(matches!(
            singular_values(&cm(1, 1, &[f64::NAN])),
            Err(LinalgError::NonFinite)
        ));
    }

    #[test]
    fn trace_norm_basics() {
        assert_eq!(trace_norm(&CMatrix::zeros(3, 2)).unwrap(), 0.0);

        // Any unitary of size d has trace norm d; use a phase-decorated swap.
        let u = CMatrix::from_row_slice(
            2,
            2,
            &[c(0.0, 0.0), c(0.0, 1.0), c(1.0, 0.0), c(0.0, 0.0)],
        );
        assert_relative_eq!(trace_norm(&u).unwrap(), 2.0, max_relative = 1e-12);
    }

    #[test]
    fn partial_trace_product_and_full() {
        let sigma = cm(2, 2, &[0.25, 0.0, 0.0, 0.75]);
        let tau = cm(3, 3, &[0.5, 0.1, 0.0, 0.1, 0.3, 0.0, 0.0, 0.0, 0.2]);
        let prod = kron(&sigma, &tau);

        // Tracing out B recovers sigma * Tr(tau) = sigma.
        let ra = partial_trace(&prod, &[2, 3], &[0]).unwrap();
        assert_relative_eq!((ra - &sigma).norm(), 0.0, epsilon = 1e-14);
        let rb = partial_trace(&prod, &[2, 3], &[1]).unwrap();
        assert_relative_eq!((rb - &tau).norm(), 0.0, epsilon = 1e-14);

        // Keeping all parties is the identity.
        let full = partial_trace(&prod, &[2, 3], &[0, 1]).unwrap();
        assert_eq!(full, prod);

        // The singlet has maximally mixed marginals.
        let ra = partial_trace(&singlet(), &[2, 2], &[0]).unwrap();
        let half = CMatrix::identity(2, 2) * c(0.5, 0.0);
        assert_relative_eq!((ra - half).norm(), 0.0, epsilon = 1e-14);

        assert!(partial_trace(&prod, &[2, 3], &[]).is_err());
        assert!(partial_trace(&prod, &[2, 2], &[0]).is_err());
    }

    #[test]
    fn partial_transpose_product_involution_singlet() {
        let sigma = cm(2, 2, &[1.0, 2.0, 3.0, 4.0]);
        let tau = CMatrix::from_row_slice(
            2,
            2,
            &[c(1.0, 0.0), c(0.0, 1.0), c(0.0, -1.0), c(2.0, 0.0)],
        );
        let prod = kron(&sigma, &tau);
        let ptb = partial_transpose(&prod, 2, 2, Party::B).unwrap();
        assert_relative_eq!((ptb - kron(&sigma, &tau.transpose())).norm(), 0.0, epsilon = 1e-14);

        let pta = partial_transpose(&prod, 2, 2, Party::A).unwrap();
        assert_relative_eq!((pta - kron(&sigma.transpose(), &tau)).norm(), 0.0, epsilon = 1e-14);

        let twice = partial_transpose(
            &partial_transpose(&prod, 2, 2, Party::B).unwrap(),
            2,
            2,
            Party::B,
        )
        .unwrap();
        assert_eq!(twice, prod);

        // The partially transposed singlet picks up eigenvalue -1/2.
        let pt = partial_transpose(&singlet(), 2, 2, Party::B).unwrap();
        let eigs = hermitian_eigenvalues(&pt).unwrap();
        assert_relative_eq!(eigs[0], -0.5, max_relative = 1e-12);
    }

    #[test]
    fn realign_product_rule_and_identity() {
        let sigma = CMatrix::from_row_slice(
            2,
            2,
            &[c(0.3, 0.1), c(-0.2, 0.4), c(0.9, -0.5), c(0.0, 0.7)],
        );
        let tau = CMatrix::from_row_slice(
            2,
            2,
            &[c(1.0, -0.3), c(0.6, 0.0), c(-0.1, 0.2), c(0.5, 0.5)],
        );
        let r = realign(&kron(&sigma, &tau), 2, 2).unwrap();
        let expected =
            CMatrix::from_column_slice(4, 1, vectorize(&sigma).as_slice())
                * CMatrix::from_column_slice(4, 1, vectorize(&tau).as_slice()).transpose();
        assert_relative_eq!((r - expected).norm(), 0.0, epsilon = 1e-14);

        // R(I4/4) is rank one with trace norm 1/2.
        let r = realign(&(CMatrix::identity(4, 4) * c(0.25, 0.0)), 2, 2).unwrap();
        let vals = singular_values(&r).unwrap();
        assert_relative_eq!(vals[0], 0.5, max_relative = 1e-12);
        assert!(vals[1] < 1e-14);

        // The singlet realigns to trace norm 2.
        assert_relative_eq!(
            trace_norm(&realign(&singlet(), 2, 2).unwrap()).unwrap(),
            2.0,
            max_relative = 1e-12
        );

        assert!(realign(&CMatrix::zeros(4, 4), 2, 3).is_err());
    }

    #[test]
    fn permute_subsystems_products_and_involution() {
        let sigma = cm(2, 2, &[0.7, 0.0, 0.0, 0.3]);
        let tau = cm(3, 3, &[0.1, 0.2, 0.0, 0.2, 0.5, 0.0, 0.0, 0.0, 0.4]);
        let prod = kron(&sigma, &tau);

        let id = permute_subsystems(&prod, &[2, 3], &[0, 1]).unwrap();
        assert_eq!(id, prod);

        let swapped = permute_subsystems(&prod, &[2, 3], &[1, 0]).unwrap();
        assert_relative_eq!((swapped - kron(&tau, &sigma)).norm(), 0.0, epsilon = 1e-14);

        // Trace and Hermiticity survive, and swap ∘ swap is the identity.
        let g = CMatrix::from_fn(6, 6, |i, j| c((i * 7 + j) as f64, (i as f64) - (j as f64)));
        let h = (&g + g.adjoint()) * c(0.5, 0.0);
        let once = permute_subsystems(&h, &[2, 3], &[1, 0]).unwrap();
        assert_relative_eq!((once.adjoint() - &once).norm(), 0.0, epsilon = 1e-12);
        assert_relative_eq!(once.trace().re, h.trace().re, max_relative = 1e-12);
        let back = permute_subsystems(&once, &[3, 2], &[1, 0]).unwrap();
        assert_eq!(back, h);

        assert!(permute_subsystems(&prod, &[2, 3], &[0, 0]).is_err());
        assert!(permute_subsystems(&prod, &[2, 3], &[0, 2]).is_err());
    }

    #[test]
    fn pair_realign_rejects_bad_pairs() {
        let m = CMatrix::identity(4, 4);
        assert!(pair_realign(&m, &[2, 2], 1, 1).is_err());
        assert!(pair_realign(&m, &[2, 2], 0, 2).is_err());
    }

    #[test]
    fn multi_pair_realign_single_pair_matches_pair_realign() {
        let g = CMatrix::from_fn(4, 4, |i, j| c((i + 2 * j) as f64, (i * j) as f64));
        let lhs = multi_pair_realign(&g, &[2, 2], &[(0, 1)]).unwrap();
        let rhs = pair_realign(&g, &[2, 2], 0, 1).unwrap();
        assert_eq!(lhs, rhs);

        assert!(multi_pair_realign(&g, &[2, 2], &[]).is_err());
        let g4 = CMatrix::identity(16, 16);
        let dims = [2usize, 2, 2, 2];
        assert!(multi_pair_realign(&g4, &dims, &[(0, 1), (1, 2)]).is_err());
        assert!(multi_pair_realign(&g4, &dims, &[(0, 1)]).is_err());
        assert!(multi_pair_realign(&g4, &dims, &[(0, 1), (2, 3)]).is_ok());
    }
}
