//! Separability criteria with a uniform verdict record and a by-name
//! registry.
//!
//! Every criterion computes a left-hand side (a norm or witness value), a
//! right-hand side bound that separable states cannot exceed, and reports
//! detection when the bound is strictly violated. Each criterion lives
//! behind the [`Criterion`] trait so callers (bisection, sweeps, the CLI)
//! can select one at runtime by name.

mod basis;
mod bipartite;
mod bloch;
mod multipartite;

pub use basis::{default_basis, su_generators, LocalOrthogonalBasis};
pub use bipartite::{
    ccnr, centered_ccnr, centered_ppt, covariance_tau, nonlinear_witness, optimal_witness,
};
pub use bloch::{bloch_decompose, centered_ccnr_bloch, dv_criterion, BlochDecomposition};
pub use multipartite::{
    matching_criterion, pair_criterion, partition_classes, partition_delta, party_pairs,
    perfect_matchings, PartitionClasses,
};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{CMatrix, LinalgError, Scalar};
use crate::states::{DensityMatrix, StateError};

/// Strict-violation guard: a state counts as detected only when the bound is
/// exceeded by more than this. Equality is consistent with separability, so
/// boundary states report not-detected.
pub const DETECTION_GUARD: f64 = 1e-9;

/// A bound whose right-hand side is this small is flagged in the result name,
/// since a vanishing bound detects any nonzero left-hand side.
const DEGENERATE_RHS: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum CriterionError {
    #[error("criterion requires a bipartite state, got {parties} parties")]
    NotBipartite { parties: usize },
    #[error("criterion requires an even number of parties, got {parties}")]
    OddPartyCount { parties: usize },
    #[error("basis acts on dimension {basis} but the subsystem has dimension {subsystem}")]
    BasisDimMismatch { basis: usize, subsystem: usize },
    #[error("invalid local orthogonal basis: {0}")]
    InvalidBasis(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    State(#[from] StateError),
}

/// Outcome of evaluating one criterion on one state.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CriterionResult {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub detected: bool,
}

impl CriterionResult {
    pub(crate) fn from_bound(name: impl Into<String>, lhs: f64, rhs: f64) -> Self {
        let margin = lhs - rhs;
        Self {
            name: name.into(),
            lhs,
            rhs,
            margin,
            detected: margin > DETECTION_GUARD,
        }
    }

    /// Like [`from_bound`], but annotates the name when the bound degenerates
    /// to zero (e.g. a pure single-party reduction), since detection is then
    /// automatic for any nonzero left-hand side.
    pub(crate) fn from_bound_flagging_degenerate(
        name: impl Into<String>,
        lhs: f64,
        rhs: f64,
    ) -> Self {
        let mut name = name.into();
        if rhs < DEGENERATE_RHS {
            name.push_str(" [rhs=0]");
        }
        Self::from_bound(name, lhs, rhs)
    }
}

/// A separability test selectable at runtime.
pub trait Criterion: Send + Sync {
    /// Registry name, e.g. `"ccnr"`.
    fn name(&self) -> String;
    /// Evaluate the criterion on a state.
    fn evaluate(&self, rho: &DensityMatrix) -> Result<CriterionResult, CriterionError>;
}

macro_rules! unit_criterion {
    ($(#[$doc:meta])* $struct_name:ident, $name:literal, $func:path) => {
        $(#[$doc])*
        #[derive(Debug, Clone, Copy, Default)]
        pub struct $struct_name;

        impl Criterion for $struct_name {
            fn name(&self) -> String {
                $name.into()
            }
            fn evaluate(&self, rho: &DensityMatrix) -> Result<CriterionResult, CriterionError> {
                $func(rho)
            }
        }
    };
}

unit_criterion!(
    /// Realignment criterion: `||R(rho)|| <= 1` for separable states.
    Ccnr, "ccnr", bipartite::ccnr
);
unit_criterion!(
    /// Nonlinear realignment witness with the default local orthogonal bases.
    DefaultNonlinearWitness, "witness", bipartite::nonlinear_witness_default
);
unit_criterion!(
    /// Optimal nonlinear realignment witness (basis-free form).
    OptimalWitness, "opt-witness", bipartite::optimal_witness
);
unit_criterion!(
    /// Realignment of the correlation part against the purity bound.
    CenteredCcnr, "thm1", bipartite::centered_ccnr
);
unit_criterion!(
    /// Bloch-representation bound on the correlation matrix T.
    DvCriterion, "dv", bloch::dv_criterion
);
unit_criterion!(
    /// Partial transpose of the correlation part against twice the purity bound.
    CenteredPpt, "prop3", bipartite::centered_ppt
);

/// Pair realignment test on the partition combination of an even-partite
/// state. `pair = None` defaults to the first two parties.
#[derive(Debug, Clone, Default)]
pub struct PairCriterion {
    pub pair: Option<(usize, usize)>,
}

impl Criterion for PairCriterion {
    fn name(&self) -> String {
        match self.pair {
            Some((m, n)) => format!("thm2-pair({},{})", m + 1, n + 1),
            None => "thm2-pair".into(),
        }
    }
    fn evaluate(&self, rho: &DensityMatrix) -> Result<CriterionResult, CriterionError> {
        let (m, n) = self.pair.unwrap_or((0, 1));
        multipartite::pair_criterion(rho, m, n)
    }
}

/// Simultaneous pair realignment over a perfect matching of the parties.
/// `pairing = None` defaults to consecutive pairs `(0,1), (2,3), ...`.
#[derive(Debug, Clone, Default)]
pub struct MatchingCriterion {
    pub pairing: Option<Vec<(usize, usize)>>,
}

impl Criterion for MatchingCriterion {
    fn name(&self) -> String {
        match &self.pairing {
            Some(pairing) => multipartite::matching_name(pairing),
            None => "thm2-full".into(),
        }
    }
    fn evaluate(&self, rho: &DensityMatrix) -> Result<CriterionResult, CriterionError> {
        match &self.pairing {
            Some(pairing) => multipartite::matching_criterion(rho, pairing),
            None => {
                let pairing: Vec<(usize, usize)> =
                    (0..rho.parties() / 2).map(|k| (2 * k, 2 * k + 1)).collect();
                multipartite::matching_criterion(rho, &pairing)
            }
        }
    }
}

/// Registry names, in the order used by [`evaluate_all`] for bipartite input.
pub const CRITERION_NAMES: &[&str] = &[
    "ccnr",
    "witness",
    "opt-witness",
    "thm1",
    "dv",
    "prop3",
    "thm2-pair",
    "thm2-full",
];

/// Look a criterion up by registry name, with default parameters for the
/// multipartite entries.
pub fn by_name(name: &str) -> Option<Box<dyn Criterion>> {
    match name {
        "ccnr" => Some(Box::new(Ccnr)),
        "witness" => Some(Box::new(DefaultNonlinearWitness)),
        "opt-witness" => Some(Box::new(OptimalWitness)),
        "thm1" => Some(Box::new(CenteredCcnr)),
        "dv" => Some(Box::new(DvCriterion)),
        "prop3" => Some(Box::new(CenteredPpt)),
        "thm2-pair" => Some(Box::new(PairCriterion::default())),
        "thm2-full" => Some(Box::new(MatchingCriterion::default())),
        _ => None,
    }
}

/// The six bipartite criteria in deterministic evaluation order.
pub fn bipartite_suite() -> Vec<Box<dyn Criterion>> {
    vec![
        Box::new(Ccnr),
        Box::new(DefaultNonlinearWitness),
        Box::new(OptimalWitness),
        Box::new(CenteredCcnr),
        Box::new(DvCriterion),
        Box::new(CenteredPpt),
    ]
}

/// Evaluate every applicable criterion: the six bipartite tests for
/// two-party states, or the pair and matching realignment tests over all
/// pairs and perfect matchings for even-partite states. Output order is
/// deterministic.
pub fn evaluate_all(rho: &DensityMatrix) -> Result<Vec<CriterionResult>, CriterionError> {
    let parties = rho.parties();
    if parties == 2 {
        return bipartite_suite().iter().map(|c| c.evaluate(rho)).collect();
    }
    if !parties.is_multiple_of(2) || parties == 0 {
        return Err(CriterionError::OddPartyCount { parties });
    }
    let mut out = Vec::new();
    for (m, n) in multipartite::party_pairs(parties) {
        out.push(multipartite::pair_criterion(rho, m, n)?);
    }
    for pairing in multipartite::perfect_matchings(parties) {
        out.push(multipartite::matching_criterion(rho, &pairing)?);
    }
    Ok(out)
}

/// Real expectation value `Re Tr(rho * op)` without forming the product
/// matrix.
pub(crate) fn expectation(rho: &CMatrix, op: &CMatrix) -> f64 {
    debug_assert_eq!(rho.shape(), op.shape());
    let n = rho.nrows();
    let mut acc = Scalar::from(0.0);
    for i in 0..n {
        for j in 0..n {
            acc += rho[(i, j)] * op[(j, i)];
        }
    }
    acc.re
}
