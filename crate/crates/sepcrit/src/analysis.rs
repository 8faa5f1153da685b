//! Detection-threshold location, noise-robustness sweeps, and randomized
//! consistency scans over the criteria.

use serde::Serialize;
use thiserror::Error;

use crate::criteria::{self, Criterion, CriterionError};
use crate::states::{self, DensityMatrix, StateError};

/// Number of uniform pre-scan points used to certify that the verdict flips
/// exactly once across the bracket before bisecting.
const PRESCAN_POINTS: usize = 32;

#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error("criterion verdict does not change across [{lo}, {hi}]")]
    NoVerdictChange { lo: f64, hi: f64 },
    #[error("criterion verdict is not monotone across the bracket (extra flip near {at})")]
    NonMonotoneVerdict { at: f64 },
    #[error("tolerance must be positive, got {0}")]
    BadTolerance(f64),
    #[error("sweep grid must be strictly increasing inside (0, 1)")]
    BadGrid,
    #[error("no grid point has a detection boundary")]
    EmptyBoundary,
    #[error(transparent)]
    State(#[from] StateError),
    #[error(transparent)]
    Criterion(#[from] CriterionError),
}

/// Output of a verdict bisection.
#[derive(Debug, Clone, Serialize)]
pub struct ThresholdResult {
    pub criterion: String,
    pub parameter: String,
    pub critical_value: f64,
    pub bracket: (f64, f64),
    pub iterations: usize,
}

/// Boundary curve of one criterion over a parameter grid. `boundary[i]` is
/// the critical noise parameter at `parameter_grid[i]`, absent when nothing
/// is detected anywhere in `[0, 1]`.
#[derive(Debug, Clone, Serialize)]
pub struct SweepCurve {
    pub parameter_grid: Vec<f64>,
    pub boundary: Vec<Option<f64>>,
}

/// Locate the verdict boundary of `criterion` along a one-parameter family
/// of states by bisection.
///
/// The criterion must be undetected at `lo` and detected at `hi`; a 32-point
/// pre-scan certifies that the verdict flips exactly once before the
/// bisection starts. Deterministic: identical inputs give identical results.
pub fn detection_threshold<F>(
    family: F,
    criterion: &dyn Criterion,
    parameter: &str,
    lo: f64,
    hi: f64,
    tol: f64,
) -> Result<ThresholdResult, AnalysisError>
where
    F: Fn(f64) -> Result<DensityMatrix, StateError>,
{
    if !tol.is_finite() || tol <= 0.0 {
        return Err(AnalysisError::BadTolerance(tol));
    }
    let verdict = |x: f64| -> Result<bool, AnalysisError> {
        Ok(criterion.evaluate(&family(x)?)?.detected)
    };

    // Pre-scan: exactly one false -> true transition and no flip back.
    let mut transition: Option<(f64, f64)> = None;
    let mut prev_x = lo;
    let mut prev_v = verdict(lo)?;
    if prev_v {
        return Err(AnalysisError::NoVerdictChange { lo, hi });
    }
    for k in 1..PRESCAN_POINTS {
        let x = lo + (hi - lo) * k as f64 / (PRESCAN_POINTS - 1) as f64;
        let v = verdict(x)?;
        match (prev_v, v) {
            (false, true) => {
                if transition.is_some() {
                    return Err(AnalysisError::NonMonotoneVerdict { at: x });
                }
                transition = Some((prev_x, x));
            }
            (true, false) => return Err(AnalysisError::NonMonotoneVerdict { at: x }),
            _ => {}
        }
        prev_x = x;
        prev_v = v;
    }
    let (mut blo, mut bhi) = transition.ok_or(AnalysisError::NoVerdictChange { lo, hi })?;

    let mut iterations = 0;
    while bhi - blo > tol {
        let mid = 0.5 * (blo + bhi);
        if verdict(mid)? {
            bhi = mid;
        } else {
            blo = mid;
        }
        iterations += 1;
    }
    Ok(ThresholdResult {
        criterion: criterion.name(),
        parameter: parameter.into(),
        critical_value: 0.5 * (blo + bhi),
        bracket: (blo, bhi),
        iterations,
    })
}

/// The grid used for the standard noise-robustness sweep:
/// `a = 0.01, 0.012, ..., 0.99`.
pub fn default_a_grid() -> Vec<f64> {
    (0..=490).map(|k| 0.01 + 0.002 * k as f64).collect()
}

fn check_grid(a_grid: &[f64]) -> Result<(), AnalysisError> {
    let increasing = a_grid.windows(2).all(|w| w[0] < w[1]);
    if a_grid.is_empty() || !increasing || a_grid.iter().any(|&a| a <= 0.0 || a >= 1.0) {
        return Err(AnalysisError::BadGrid);
    }
    Ok(())
}

/// For each `a` in the grid, the critical white-noise weight `p` at which
/// `criterion` starts detecting `p * horodecki_3x3(a) + (1-p) * I/9`.
/// Grid points without a boundary in `[0, 1]` are recorded as absent.
pub fn sweep_curve(
    criterion: &dyn Criterion,
    a_grid: &[f64],
    p_tol: f64,
) -> Result<SweepCurve, AnalysisError> {
    check_grid(a_grid)?;
    let mut boundary = Vec::with_capacity(a_grid.len());
    for &a in a_grid {
        let base = states::horodecki_3x3(a)?;
        let family = |p: f64| states::with_white_noise(&base, p);
        match detection_threshold(family, criterion, "p", 0.0, 1.0, p_tol) {
            Ok(res) => boundary.push(Some(res.critical_value)),
            Err(AnalysisError::NoVerdictChange { .. }) => boundary.push(None),
            Err(e) => return Err(e),
        }
    }
    Ok(SweepCurve {
        parameter_grid: a_grid.to_vec(),
        boundary,
    })
}

/// The grid point with the smallest critical noise weight; ties break toward
/// smaller `a`.
pub fn min_detection_point(
    criterion: &dyn Criterion,
    a_grid: &[f64],
    p_tol: f64,
) -> Result<(f64, f64), AnalysisError> {
    let curve = sweep_curve(criterion, a_grid, p_tol)?;
    let mut best: Option<(f64, f64)> = None;
    for (&a, p) in curve.parameter_grid.iter().zip(&curve.boundary) {
        if let Some(p) = *p {
            if best.is_none_or(|(_, bp)| p < bp) {
                best = Some((a, p));
            }
        }
    }
    best.ok_or(AnalysisError::EmptyBoundary)
}

/// The three standard boundary curves as CSV with header
/// `a,p_ccnr,p_opt,p_thm1`; a grid point without a boundary leaves its field
/// empty.
pub fn boundary_sweep_csv(a_grid: &[f64], p_tol: f64) -> Result<String, AnalysisError> {
    let curves: Vec<SweepCurve> = ["ccnr", "opt-witness", "thm1"]
        .iter()
        .map(|name| {
            let criterion = criteria::by_name(name).expect("registry name");
            sweep_curve(criterion.as_ref(), a_grid, p_tol)
        })
        .collect::<Result<_, _>>()?;
    Ok(curves_to_csv(a_grid, &curves))
}

fn curves_to_csv(a_grid: &[f64], curves: &[SweepCurve]) -> String {
    let mut csv = String::from("a,p_ccnr,p_opt,p_thm1\n");
    for (i, &a) in a_grid.iter().enumerate() {
        let field = |c: &SweepCurve| c.boundary[i].map_or(String::new(), |p| format!("{p:.6}"));
        csv.push_str(&format!(
            "{a:.3},{},{},{}\n",
            field(&curves[0]),
            field(&curves[1]),
            field(&curves[2])
        ));
    }
    csv
}

/// One verdict-pattern bucket of a [`HierarchyReport`].
#[derive(Debug, Clone, Serialize)]
pub struct PatternCount {
    /// Pattern over `ccnr, witness, opt-witness, dv, thm1` as a bit string,
    /// e.g. `"00001"` for states only the correlation-part test catches.
    pub pattern: String,
    pub count: usize,
}

/// Result of a randomized hierarchy scan: the weaker tests must never fire
/// without the correlation-part realignment test firing as well.
#[derive(Debug, Clone, Serialize)]
pub struct HierarchyReport {
    pub samples: usize,
    pub dims: Vec<usize>,
    pub seed: u64,
    /// States where ccnr, the witness, the optimal witness or dv detected
    /// but thm1 did not. Must stay zero.
    pub violations: usize,
    /// States detected by thm1 but missed by ccnr: evidence the test is
    /// strictly stronger.
    pub thm1_only: usize,
    pub pattern_counts: Vec<PatternCount>,
}

/// Evaluate the five bipartite tests on seeded random states and tally the
/// verdict patterns.
pub fn hierarchy_check(samples: usize, dims: &[usize], seed: u64) -> Result<HierarchyReport, AnalysisError> {
    let suite: Vec<Box<dyn Criterion>> = ["ccnr", "witness", "opt-witness", "dv", "thm1"]
        .iter()
        .map(|name| criteria::by_name(name).expect("registry name"))
        .collect();
    let mut counts = std::collections::BTreeMap::<String, usize>::new();
    let mut violations = 0;
    let mut thm1_only = 0;
    for k in 0..samples {
        let rho = states::random_density(dims, seed.wrapping_add(k as u64));
        let verdicts: Vec<bool> = suite
            .iter()
            .map(|c| c.evaluate(&rho).map(|r| r.detected))
            .collect::<Result<_, _>>()?;
        let (weak, thm1) = (
            verdicts[0] || verdicts[1] || verdicts[2] || verdicts[3],
            verdicts[4],
        );
        if weak && !thm1 {
            violations += 1;
        }
        if thm1 && !verdicts[0] {
            thm1_only += 1;
        }
        let pattern: String = verdicts.iter().map(|&v| if v { '1' } else { '0' }).collect();
        *counts.entry(pattern).or_insert(0) += 1;
    }
    Ok(HierarchyReport {
        samples,
        dims: dims.to_vec(),
        seed,
        violations,
        thm1_only,
        pattern_counts: counts
            .into_iter()
            .map(|(pattern, count)| PatternCount { pattern, count })
            .collect(),
    })
}

/// A criterion firing on a state that is separable by construction.
#[derive(Debug, Clone, Serialize)]
pub struct FalseDetection {
    pub sample: usize,
    pub criterion: String,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
}

/// Result of running every applicable criterion on random separable states.
/// Any entry in `detections` is a failure.
#[derive(Debug, Clone, Serialize)]
pub struct FalsePositiveReport {
    pub samples: usize,
    pub dims: Vec<usize>,
    pub terms: usize,
    pub seed: u64,
    pub evaluations: usize,
    pub detections: Vec<FalseDetection>,
}

/// Draw seeded random separable states and confirm that no criterion
/// detects any of them.
pub fn false_positive_scan(
    samples: usize,
    dims: &[usize],
    terms: usize,
    seed: u64,
) -> Result<FalsePositiveReport, AnalysisError> {
    let mut detections = Vec::new();
    let mut evaluations = 0;
    for k in 0..samples {
        let rho = states::random_separable(dims, terms, seed.wrapping_add(k as u64))?;
        for result in criteria::evaluate_all(&rho)? {
            evaluations += 1;
            if result.detected {
                detections.push(FalseDetection {
                    sample: k,
                    criterion: result.name,
                    lhs: result.lhs,
                    rhs: result.rhs,
                    margin: result.margin,
                });
            }
        }
    }
    Ok(FalsePositiveReport {
        samples,
        dims: dims.to_vec(),
        terms,
        seed,
        evaluations,
        detections,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn criterion(name: &str) -> Box<dyn Criterion> {
        criteria::by_name(name).unwrap()
    }

    #[test]
    fn threshold_is_deterministic_and_bracketed() {
        let c = criterion("ccnr");
        let run = || {
            detection_threshold(
                states::noisy_singlet,
                c.as_ref(),
                "p",
                0.0,
                1.0,
                1e-4,
            )
            .unwrap()
        };
        let a = run();
        let b = run();
        assert_eq!(a.critical_value, b.critical_value);
        assert_eq!(a.iterations, b.iterations);
        assert!(a.bracket.1 - a.bracket.0 <= 1e-4);
        assert!(a.bracket.0 <= a.critical_value && a.critical_value <= a.bracket.1);
        // Verdicts at the final bracket ends disagree.
        let at = |p: f64| c.evaluate(&states::noisy_singlet(p).unwrap()).unwrap().detected;
        assert!(!at(a.bracket.0) && at(a.bracket.1));
    }

    #[test]
    fn threshold_errors() {
        let c = criterion("ccnr");
        // Maximally mixed family never detects anything.
        let flat = |_p: f64| {
            states::with_white_noise(&states::noisy_singlet(1.0).unwrap(), 0.0)
        };
        assert!(matches!(
            detection_threshold(flat, c.as_ref(), "p", 0.0, 1.0, 1e-4),
            Err(AnalysisError::NoVerdictChange { .. })
        ));
        assert!(matches!(
            detection_threshold(states::noisy_singlet, c.as_ref(), "p", 0.0, 1.0, 0.0),
            Err(AnalysisError::BadTolerance(_))
        ));
    }

    #[test]
    fn sweep_records_absent_boundaries() {
        let c = criterion("ccnr");
        let curve = sweep_curve(c.as_ref(), &[0.236], 1e-4).unwrap();
        let p = curve.boundary[0].expect("boundary at a = 0.236");
        assert_relative_eq!(p, 0.9955, epsilon = 5e-4);

        // The positionally-paired witness never fires on this family, so its
        // curve has no boundary anywhere.
        let blind = criterion("witness");
        let curve = sweep_curve(blind.as_ref(), &[0.236], 1e-3).unwrap();
        assert!(curve.boundary[0].is_none());

        assert!(sweep_curve(c.as_ref(), &[0.3, 0.2], 1e-4).is_err());
        assert!(sweep_curve(c.as_ref(), &[], 1e-4).is_err());
        assert!(matches!(
            min_detection_point(blind.as_ref(), &[0.2, 0.3], 1e-3),
            Err(AnalysisError::EmptyBoundary)
        ));
    }

    #[test]
    fn csv_rendering_and_empty_fields() {
        let csv = boundary_sweep_csv(&[0.236], 1e-3).unwrap();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("a,p_ccnr,p_opt,p_thm1"));
        let row = lines.next().unwrap();
        assert!(row.starts_with("0.236,0.99"), "row was {row}");

        // Absent boundaries render as empty fields.
        let present = SweepCurve {
            parameter_grid: vec![0.1],
            boundary: vec![Some(0.5)],
        };
        let absent = SweepCurve {
            parameter_grid: vec![0.1],
            boundary: vec![None],
        };
        let csv = curves_to_csv(&[0.1], &[present, absent.clone(), absent]);
        assert_eq!(csv.lines().nth(1), Some("0.100,0.500000,,"));
    }

    #[test]
    fn small_randomized_scans_are_clean() {
        let report = hierarchy_check(25, &[2, 2], 7).unwrap();
        assert_eq!(report.violations, 0);
        assert_eq!(report.samples, 25);
        let total: usize = report.pattern_counts.iter().map(|p| p.count).sum();
        assert_eq!(total, 25);

        let report = false_positive_scan(10, &[2, 2], 4, 7).unwrap();
        assert!(report.detections.is_empty());
        assert_eq!(report.evaluations, 10 * 6);
    }
}
