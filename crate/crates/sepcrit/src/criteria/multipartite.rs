//! Even-partite criteria built on the signed bipartition combination of a
//! state and pair realignments.

use nalgebra::Complex;

use super::{CriterionError, CriterionResult};
use crate::linalg::{self, CMatrix};
use crate::states::DensityMatrix;

/// All unordered bipartitions of an even number of parties, classified by
/// the parity of the side sizes. With `n` parties there are `2^(n-1)`
/// bipartitions; for even `n` both sides always share a parity.
#[derive(Debug, Clone)]
pub struct PartitionClasses {
    /// Both sides odd.
    pub odd_splits: Vec<(Vec<usize>, Vec<usize>)>,
    /// Both sides even, including the trivial split `(∅, all)`.
    pub even_splits: Vec<(Vec<usize>, Vec<usize>)>,
}

/// Enumerate the bipartition classes of `n` parties (0-based indices,
/// `n` even). Party 0 always sits in the second side, which makes each
/// unordered bipartition appear exactly once; enumeration order is by the
/// subset bitmask over parties `1..n`, so the trivial split comes first.
pub fn partition_classes(n: usize) -> Result<PartitionClasses, CriterionError> {
    if !n.is_multiple_of(2) || n == 0 {
        return Err(CriterionError::OddPartyCount { parties: n });
    }
    let mut odd_splits = Vec::new();
    let mut even_splits = Vec::new();
    for mask in 0u64..(1u64 << (n - 1)) {
        let side: Vec<usize> = (1..n).filter(|&k| mask >> (k - 1) & 1 == 1).collect();
        let rest: Vec<usize> = (0..n).filter(|k| !side.contains(k)).collect();
        if side.len() % 2 == 1 {
            odd_splits.push((side, rest));
        } else {
            even_splits.push((side, rest));
        }
    }
    Ok(PartitionClasses {
        odd_splits,
        even_splits,
    })
}

/// The signed combination `(1/2^(n-2)) * (sum of even-class terms - sum of
/// odd-class terms)`, where each bipartition contributes the product of its
/// two reduced states re-embedded in original party order and the trivial
/// split contributes the state itself.
///
/// For two parties this is `rho - rho_A ⊗ rho_B`; it is Hermitian,
/// traceless, and vanishes on pure product states.
pub fn partition_delta(rho: &DensityMatrix) -> Result<CMatrix, CriterionError> {
    let n = rho.parties();
    let classes = partition_classes(n)?;
    let size = rho.size();
    let mut acc = CMatrix::zeros(size, size);
    for (sign, splits) in [(1.0, &classes.even_splits), (-1.0, &classes.odd_splits)] {
        for (side, rest) in splits {
            let term = if side.is_empty() {
                rho.mat().clone()
            } else {
                embedded_product(rho, side, rest)?
            };
            acc += term * Complex::from(sign);
        }
    }
    Ok(acc * Complex::from(1.0 / 2f64.powi(n as i32 - 2)))
}

/// `(reduced state on `side`) ⊗ (reduced state on `rest`)`, permuted back so
/// every party sits in its original slot.
fn embedded_product(
    rho: &DensityMatrix,
    side: &[usize],
    rest: &[usize],
) -> Result<CMatrix, CriterionError> {
    let a = linalg::partial_trace(rho.mat(), rho.dims(), side)?;
    let b = linalg::partial_trace(rho.mat(), rho.dims(), rest)?;
    let prod = linalg::kron(&a, &b);
    // Party order of `prod` is side ++ rest; factor at position k must move
    // back to slot order[k].
    let order: Vec<usize> = side.iter().chain(rest.iter()).copied().collect();
    let prod_dims: Vec<usize> = order.iter().map(|&k| rho.dims()[k]).collect();
    Ok(linalg::permute_subsystems(&prod, &prod_dims, &order)?)
}

/// `min over k != l of sqrt((1 - Tr rho_k^2)(1 - Tr rho_l^2))` across the
/// single-party reductions, clamped at zero.
fn marginal_bound(rho: &DensityMatrix) -> Result<f64, CriterionError> {
    let n = rho.parties();
    let mut gaps = Vec::with_capacity(n);
    for k in 0..n {
        let reduced = linalg::partial_trace(rho.mat(), rho.dims(), &[k])?;
        gaps.push((1.0 - reduced.norm_squared()).max(0.0));
    }
    let mut best = f64::INFINITY;
    for k in 0..n {
        for l in 0..n {
            if k != l {
                best = best.min((gaps[k] * gaps[l]).sqrt());
            }
        }
    }
    Ok(best)
}

/// Pair realignment test: for a separable even-partite state,
/// `||R_(mn) ⊗ 1 applied to the partition combination||` stays below the
/// minimal marginal bound. Party indices are 0-based; the reported name uses
/// 1-based labels. A vanishing bound (some reduction pure) is flagged in the
/// name.
pub fn pair_criterion(
    rho: &DensityMatrix,
    m: usize,
    n: usize,
) -> Result<CriterionResult, CriterionError> {
    let delta = partition_delta(rho)?;
    let lhs = linalg::trace_norm(&linalg::pair_realign(&delta, rho.dims(), m, n)?)?;
    let rhs = marginal_bound(rho)?;
    Ok(CriterionResult::from_bound_flagging_degenerate(
        format!("thm2-pair({},{})", m + 1, n + 1),
        lhs,
        rhs,
    ))
}

pub(crate) fn matching_name(pairing: &[(usize, usize)]) -> String {
    let pairs: Vec<String> = pairing
        .iter()
        .map(|&(m, n)| format!("({},{})", m + 1, n + 1))
        .collect();
    format!("thm2-full({})", pairs.join(","))
}

/// Simultaneous pair realignment over a perfect matching: the bound of
/// [`pair_criterion`] shrinks by `2^(N/2 - 1)`.
pub fn matching_criterion(
    rho: &DensityMatrix,
    pairing: &[(usize, usize)],
) -> Result<CriterionResult, CriterionError> {
    let delta = partition_delta(rho)?;
    let lhs = linalg::trace_norm(&linalg::multi_pair_realign(&delta, rho.dims(), pairing)?)?;
    let shrink = 2f64.powi(rho.parties() as i32 / 2 - 1);
    let rhs = marginal_bound(rho)? / shrink;
    Ok(CriterionResult::from_bound_flagging_degenerate(
        matching_name(pairing),
        lhs,
        rhs,
    ))
}

/// Unordered party pairs `(m, n)`, `m < n`, in lexicographic order.
pub fn party_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for m in 0..n {
        for k in m + 1..n {
            pairs.push((m, k));
        }
    }
    pairs
}

/// All perfect matchings of `n` parties (n even), enumerated
/// deterministically: the smallest unmatched party is paired with each
/// larger unmatched party in ascending order.
pub fn perfect_matchings(n: usize) -> Vec<Vec<(usize, usize)>> {
    fn go(free: &[usize], current: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        if free.is_empty() {
            out.push(current.clone());
            return;
        }
        let first = free[0];
        for (pos, &partner) in free.iter().enumerate().skip(1) {
            let rest: Vec<usize> = free
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != 0 && i != pos)
                .map(|(_, &p)| p)
                .collect();
            current.push((first, partner));
            go(&rest, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    if n.is_multiple_of(2) && n > 0 {
        go(&(0..n).collect::<Vec<_>>(), &mut Vec::new(), &mut out);
    }
    out
}
