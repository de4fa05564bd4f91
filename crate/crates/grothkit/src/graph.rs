//! Graph-restricted quadratic maximization: the relaxation over unit
//! vectors, hyperplane spin rounding with greedy single-flip polish, and
//! oracle ratio reporting.
//!
//! Worst-case theory ties the relaxation/spin-optimum gap of a graph to
//! its clique number and theta function (logarithmically), and certified
//! roundings matching those bounds exist; neither parameter is computed
//! here. The rounding that ships is an uncertified heuristic and reports
//! honest oracle ratios on instances small enough to enumerate.

use crate::error::Result;
use crate::oracles;
use crate::rounding;
use crate::sdp::{self, FactorPair, SolveReport, SolverParams};
use crate::types::{DenseMatrix, EdgeMask, SignVector};

#[derive(Debug, Clone)]
pub struct SpinResult {
    pub spins: SignVector,
    /// Σ_{(i,j) in mask} a_ij ε_i ε_j, recomputed from the returned spins.
    pub energy_value: f64,
    pub sdp_value: f64,
    pub sdp_upper: f64,
    /// energy / exact optimum, when the instance is small enough to
    /// enumerate.
    pub ratio_vs_oracle: Option<f64>,
    pub trials: usize,
    pub seed: u64,
}

/// The graph relaxation: delegates to the symmetric solver on the masked
/// support with a certified upper bound attached.
pub fn graph_sdp(
    a: &DenseMatrix,
    mask: &EdgeMask,
    params: SolverParams,
) -> Result<(FactorPair, SolveReport)> {
    a.require_zero_diagonal()?;
    for i in 0..mask.n() {
        if mask.contains(i, i) {
            return Err(crate::error::Error::Invalid(
                "graph mask must not contain self loops".into(),
            ));
        }
    }
    sdp::solve_symmetric(a, mask, params)
}

/// Hyperplane rounding of relaxation vectors, best of `trials`, with
/// optional greedy single-spin polish (each flip strictly increases the
/// energy, so the polish terminates).
pub fn spin_round(
    factor: &FactorPair,
    a: &DenseMatrix,
    mask: &EdgeMask,
    trials: usize,
    seed: u64,
    polish: bool,
) -> SpinResult {
    let n = a.rows();
    let x = &factor.left;
    let mut best: Option<(f64, SignVector)> = None;
    for trial in 0..trials.max(1) {
        let mut r = crate::rng::stream(seed, trial as u64);
        let mut g = vec![0.0; x.cols()];
        crate::rng::fill_normal(&mut r, &mut g);
        let mut spins = SignVector::new(
            (0..n)
                .map(|i| {
                    if crate::linalg::dot(x.row(i), &g) >= 0.0 {
                        1
                    } else {
                        -1
                    }
                })
                .collect(),
        )
        .unwrap();
        let energy = if polish {
            sdp::greedy_spin_polish(a, mask, &mut spins)
        } else {
            mask.spin_energy(a, &spins)
        };
        if best.as_ref().map_or(true, |(bv, _)| energy > *bv) {
            best = Some((energy, spins));
        }
    }
    let (energy_value, spins) = best.unwrap();
    SpinResult {
        spins,
        energy_value,
        sdp_value: factor.value,
        sdp_upper: f64::NAN,
        ratio_vs_oracle: None,
        trials: trials.max(1),
        seed,
    }
}

#[derive(Debug, Clone)]
pub struct GraphAnswer {
    pub result: SpinResult,
    pub report: SolveReport,
    pub oracle_value: Option<f64>,
}

/// Relaxation + rounding + (for n ≤ 20) exact oracle comparison.
pub fn graph_pipeline(
    a: &DenseMatrix,
    mask: &EdgeMask,
    trials: usize,
    seed: u64,
) -> Result<GraphAnswer> {
    let (factor, report) = graph_sdp(a, mask, SolverParams::with_seed(seed))?;
    let mut result = spin_round(&factor, a, mask, trials, seed, true);
    result.sdp_upper = report.upper_bound.unwrap_or(f64::NAN);
    let oracle_value = if a.rows() <= 20 {
        let r = oracles::exact_ground_state(a, mask)?;
        if r.value.abs() > 1e-12 {
            result.ratio_vs_oracle = Some(result.energy_value / r.value);
        }
        Some(r.value)
    } else {
        None
    };
    Ok(GraphAnswer {
        result,
        report,
        oracle_value,
    })
}

/// Agreements minus disagreements of a two-cluster partition against ±1
/// similarity judgements; the bipartition objective that the masked
/// quadratic form doubles.
pub fn correlation_count(a: &DenseMatrix, mask: &EdgeMask, spins: &SignVector) -> f64 {
    let n = a.rows();
    let mut agreements = 0.0;
    let mut disagreements = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            if mask.contains(i, j) {
                let same = spins.get(i) == spins.get(j);
                let similar = a.get(i, j) > 0.0;
                if same == similar {
                    agreements += 1.0;
                } else {
                    disagreements += 1.0;
                }
            }
        }
    }
    agreements - disagreements
}

/// Plain symmetric hyperplane rounding re-exported for PSD instances
/// (kernel-style objectives with the diagonal included).
pub use rounding::round_signs_symmetric;
