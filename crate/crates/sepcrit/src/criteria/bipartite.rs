//! Bipartite criteria: the realignment test, its nonlinear witnesses, and
//! the realignment / partial-transpose tests on the correlation part
//! `rho - rho_A ⊗ rho_B`.

use nalgebra::Complex;

use super::basis::LocalOrthogonalBasis;
use super::{default_basis, expectation, CriterionError, CriterionResult};
use crate::linalg::{self, CMatrix, Party};
use crate::states::DensityMatrix;

/// Reduced states and purities of a two-party input.
pub(crate) struct Split {
    pub da: usize,
    pub db: usize,
    pub ra: CMatrix,
    pub rb: CMatrix,
    pub purity_a: f64,
    pub purity_b: f64,
}

pub(crate) fn split(rho: &DensityMatrix) -> Result<Split, CriterionError> {
    if rho.parties() != 2 {
        return Err(CriterionError::NotBipartite {
            parties: rho.parties(),
        });
    }
    let ra = linalg::partial_trace(rho.mat(), rho.dims(), &[0])?;
    let rb = linalg::partial_trace(rho.mat(), rho.dims(), &[1])?;
    Ok(Split {
        da: rho.dims()[0],
        db: rho.dims()[1],
        // Purity of a Hermitian matrix is its squared Frobenius norm.
        purity_a: ra.norm_squared(),
        purity_b: rb.norm_squared(),
        ra,
        rb,
    })
}

/// `rho - rho_A ⊗ rho_B`: the part of the state left after removing the
/// product of its marginals. Zero exactly on product states.
pub(crate) fn correlation_part(rho: &DensityMatrix, parts: &Split) -> CMatrix {
    rho.mat() - linalg::kron(&parts.ra, &parts.rb)
}

/// `sqrt((1 - Tr rho_A^2)(1 - Tr rho_B^2))`, clamped against rounding of
/// purities slightly above one.
pub(crate) fn purity_bound(parts: &Split) -> f64 {
    let qa = (1.0 - parts.purity_a).max(0.0);
    let qb = (1.0 - parts.purity_b).max(0.0);
    (qa * qb).sqrt()
}

/// Realignment criterion: separable states satisfy `||R(rho)|| <= 1`.
pub fn ccnr(rho: &DensityMatrix) -> Result<CriterionResult, CriterionError> {
    let parts = split(rho)?;
    let lhs = linalg::trace_norm(&linalg::realign(rho.mat(), parts.da, parts.db)?)?;
    Ok(CriterionResult::from_bound("ccnr", lhs, 1.0))
}

/// Covariance matrix of two local orthogonal bases:
/// `tau[l][m] = <G_l ⊗ G_m> - <G_l ⊗ I><I ⊗ G_m>`. Real for Hermitian
/// operators; its trace norm equals `||R(rho - rho_A ⊗ rho_B)||`.
pub fn covariance_tau(
    rho: &DensityMatrix,
    basis_a: &LocalOrthogonalBasis,
    basis_b: &LocalOrthogonalBasis,
) -> Result<CMatrix, CriterionError> {
    let parts = split(rho)?;
    check_basis_dim(basis_a, parts.da)?;
    check_basis_dim(basis_b, parts.db)?;
    let ea: Vec<f64> = basis_a.ops().iter().map(|g| expectation(&parts.ra, g)).collect();
    let eb: Vec<f64> = basis_b.ops().iter().map(|g| expectation(&parts.rb, g)).collect();
    let mut tau = CMatrix::zeros(basis_a.len(), basis_b.len());
    for (l, ga) in basis_a.ops().iter().enumerate() {
        for (m, gb) in basis_b.ops().iter().enumerate() {
            let joint = expectation(rho.mat(), &linalg::kron(ga, gb));
            tau[(l, m)] = Complex::from(joint - ea[l] * eb[m]);
        }
    }
    Ok(tau)
}

fn check_basis_dim(basis: &LocalOrthogonalBasis, d: usize) -> Result<(), CriterionError> {
    if basis.dim() != d {
        return Err(CriterionError::BasisDimMismatch {
            basis: basis.dim(),
            subsystem: d,
        });
    }
    Ok(())
}

/// Nonlinear realignment witness for a positional pairing of two local
/// orthogonal bases:
///
/// ```text
/// F(rho) = 1 - sum_k <G_k^A ⊗ G_k^B> - 1/2 sum_k <G_k^A ⊗ I - I ⊗ G_k^B>^2
/// ```
///
/// Separable states satisfy `F >= 0`, so the result reports `lhs = -F`
/// against `rhs = 0`. When the local dimensions differ the shorter basis
/// list is padded with zero operators, which only weakens the witness.
pub fn nonlinear_witness(
    rho: &DensityMatrix,
    basis_a: &LocalOrthogonalBasis,
    basis_b: &LocalOrthogonalBasis,
) -> Result<CriterionResult, CriterionError> {
    let parts = split(rho)?;
    check_basis_dim(basis_a, parts.da)?;
    check_basis_dim(basis_b, parts.db)?;
    let pairs = basis_a.len().max(basis_b.len());
    let mut f = 1.0;
    for k in 0..pairs {
        let ga = basis_a.ops().get(k);
        let gb = basis_b.ops().get(k);
        let joint = match (ga, gb) {
            (Some(ga), Some(gb)) => expectation(rho.mat(), &linalg::kron(ga, gb)),
            _ => 0.0, // zero-padded slot
        };
        let ea = ga.map_or(0.0, |g| expectation(&parts.ra, g));
        let eb = gb.map_or(0.0, |g| expectation(&parts.rb, g));
        f -= joint + 0.5 * (ea - eb) * (ea - eb);
    }
    Ok(CriterionResult::from_bound("witness", -f, 0.0))
}

/// [`nonlinear_witness`] with the default basis on each subsystem.
pub fn nonlinear_witness_default(rho: &DensityMatrix) -> Result<CriterionResult, CriterionError> {
    let parts = split(rho)?;
    nonlinear_witness(rho, &default_basis(parts.da), &default_basis(parts.db))
}

/// Optimal nonlinear realignment witness,
/// `F_opt(rho) = 1 - ||tau|| - (Tr rho_A^2 + Tr rho_B^2)/2`, evaluated
/// basis-free through `||tau|| = ||R(rho - rho_A ⊗ rho_B)||`. Reported as
/// `lhs = ||tau|| + (purities)/2` against `rhs = 1`.
pub fn optimal_witness(rho: &DensityMatrix) -> Result<CriterionResult, CriterionError> {
    let parts = split(rho)?;
    let delta = correlation_part(rho, &parts);
    let tau_norm = linalg::trace_norm(&linalg::realign(&delta, parts.da, parts.db)?)?;
    let lhs = tau_norm + 0.5 * (parts.purity_a + parts.purity_b);
    Ok(CriterionResult::from_bound("opt-witness", lhs, 1.0))
}

/// Realignment test on the correlation part: separable states satisfy
/// `||R(rho - rho_A ⊗ rho_B)|| <= sqrt((1 - Tr rho_A^2)(1 - Tr rho_B^2))`.
pub fn centered_ccnr(rho: &DensityMatrix) -> Result<CriterionResult, CriterionError> {
    let parts = split(rho)?;
    let delta = correlation_part(rho, &parts);
    let lhs = linalg::trace_norm(&linalg::realign(&delta, parts.da, parts.db)?)?;
    Ok(CriterionResult::from_bound("thm1", lhs, purity_bound(&parts)))
}

/// Partial-transpose test on the correlation part: separable states satisfy
/// `||(rho - rho_A ⊗ rho_B)^T_B|| <= 2 sqrt((1 - Tr rho_A^2)(1 - Tr rho_B^2))`,
/// and the factor two is tight.
pub fn centered_ppt(rho: &DensityMatrix) -> Result<CriterionResult, CriterionError> {
    let parts = split(rho)?;
    let delta = correlation_part(rho, &parts);
    let lhs = linalg::trace_norm(&linalg::partial_transpose(
        &delta, parts.da, parts.db, Party::B,
    )?)?;
    Ok(CriterionResult::from_bound(
        "prop3",
        lhs,
        2.0 * purity_bound(&parts),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{self, DensityMatrix};
    use approx::assert_relative_eq;
    use nalgebra::Complex;

    fn singlet() -> DensityMatrix {
        states::noisy_singlet(1.0).unwrap()
    }

    fn product_state() -> DensityMatrix {
        let mut m = CMatrix::zeros(4, 4);
        m[(0, 0)] = Complex::from(1.0);
        DensityMatrix::new(m, vec![2, 2]).unwrap()
    }

    fn maximally_mixed(da: usize, db: usize) -> DensityMatrix {
        let n = da * db;
        DensityMatrix::new(
            CMatrix::identity(n, n) * Complex::from(1.0 / n as f64),
            vec![da, db],
        )
        .unwrap()
    }

    #[test]
    fn ccnr_known_values() {
        let r = ccnr(&states::max_entangled(2).unwrap()).unwrap();
        assert_relative_eq!(r.lhs, 2.0, max_relative = 1e-12);
        assert!(r.detected);

        for d in [2usize, 3] {
            let r = ccnr(&maximally_mixed(d, d)).unwrap();
            assert_relative_eq!(r.lhs, 1.0 / d as f64, max_relative = 1e-12);
            assert!(!r.detected);
        }

        // Near the detection boundary of the noisy singlet family, and
        // safely detected a bit above it.
        let r = ccnr(&states::noisy_singlet(0.292).unwrap()).unwrap();
        assert!(r.margin.abs() < 1e-3, "margin {} should be ~0", r.margin);
        assert!(ccnr(&states::noisy_singlet(0.3).unwrap()).unwrap().detected);

        // The noisy bound-entangled point quoted for this test.
        let noisy = states::with_white_noise(&states::horodecki_3x3(0.236).unwrap(), 0.9955).unwrap();
        assert!(ccnr(&noisy).unwrap().detected);

        assert!(ccnr(&states::random_density(&[2, 2, 2, 2], 0)).is_err());
    }

    #[test]
    fn tau_vanishes_on_products_and_matches_singlet() {
        let basis2 = default_basis(2);
        let tau = covariance_tau(&product_state(), &basis2, &basis2).unwrap();
        assert!(tau.norm() < 1e-12);

        let tau = covariance_tau(&singlet(), &basis2, &basis2).unwrap();
        assert_relative_eq!(
            linalg::trace_norm(&tau).unwrap(),
            1.5,
            max_relative = 1e-12
        );

        let basis3 = default_basis(3);
        assert!(covariance_tau(&singlet(), &basis2, &basis3).is_err());
    }

    #[test]
    fn witness_values() {
        // Default bases on the maximally mixed state: F = 1/2, no detection.
        let r = nonlinear_witness_default(&maximally_mixed(2, 2)).unwrap();
        assert_relative_eq!(-r.lhs, 0.5, max_relative = 1e-12);
        assert!(!r.detected);

        // The sign-flipped Pauli basis on B detects the singlet with F = -1.
        let basis_a = default_basis(2);
        let flipped = LocalOrthogonalBasis::new(
            basis_a
                .ops()
                .iter()
                .enumerate()
                .map(|(k, g)| if k == 0 { g.clone() } else { -g })
                .collect(),
        )
        .unwrap();
        let r = nonlinear_witness(&singlet(), &basis_a, &flipped).unwrap();
        assert_relative_eq!(-r.lhs, -1.0, max_relative = 1e-12);
        assert!(r.detected);

        // With identical bases the witness stays blind to the singlet family.
        let r = nonlinear_witness_default(&states::noisy_singlet(0.26).unwrap()).unwrap();
        assert!(!r.detected);
        // ... where the optimal witness already detects.
        assert!(optimal_witness(&states::noisy_singlet(0.26).unwrap())
            .unwrap()
            .detected);
    }

    #[test]
    fn optimal_witness_values() {
        let r = optimal_witness(&singlet()).unwrap();
        assert_relative_eq!(r.lhs, 2.0, max_relative = 1e-12);
        assert!(r.detected);

        let r = optimal_witness(&product_state()).unwrap();
        assert_relative_eq!(r.lhs, 1.0, max_relative = 1e-12);
        assert!(!r.detected);

        let r = optimal_witness(&states::noisy_singlet(0.25).unwrap()).unwrap();
        assert!(r.margin.abs() < 1e-12, "p = 1/4 sits exactly on the boundary");
        assert!(!r.detected);
    }

    #[test]
    fn centered_ccnr_values() {
        let r = centered_ccnr(&singlet()).unwrap();
        assert_relative_eq!(r.lhs, 1.5, max_relative = 1e-12);
        assert_relative_eq!(r.rhs, 0.5, max_relative = 1e-12);
        assert!(r.detected);

        let r = centered_ccnr(&product_state()).unwrap();
        assert!(r.lhs < 1e-12 && r.rhs < 1e-12);
        assert!(!r.detected);

        let r = centered_ccnr(&states::noisy_singlet(0.221).unwrap()).unwrap();
        assert!(r.margin.abs() < 1e-3, "margin {} should be ~0", r.margin);
    }

    #[test]
    fn centered_ppt_values() {
        // Equal mixture of |00> and |11>: the bound is attained exactly.
        let mut m = CMatrix::zeros(4, 4);
        m[(0, 0)] = Complex::from(0.5);
        m[(3, 3)] = Complex::from(0.5);
        let rho = DensityMatrix::new(m, vec![2, 2]).unwrap();
        let r = centered_ppt(&rho).unwrap();
        assert_relative_eq!(r.lhs, 1.0, epsilon = 1e-10);
        assert_relative_eq!(r.rhs, 1.0, epsilon = 1e-10);
        assert!(!r.detected);

        let r = centered_ppt(&product_state()).unwrap();
        assert!(!r.detected);

        // Detection threshold of the noisy singlet family sits near 0.644,
        // so p = 0.65 is detected and p = 0.64 is not.
        assert!(centered_ppt(&states::noisy_singlet(0.65).unwrap())
            .unwrap()
            .detected);
        assert!(!centered_ppt(&states::noisy_singlet(0.64).unwrap())
            .unwrap()
            .detected);
    }
}
