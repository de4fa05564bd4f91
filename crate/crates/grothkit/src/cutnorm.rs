//! Cut-norm estimation: zero-margin augmentation, the bilinear relaxation,
//! sign rounding, quadrant extraction and the map back to subsets of the
//! original matrix. Produces a certified upper bound together with a
//! concrete witness lower bound.

use crate::error::Result;
use crate::rounding::{self, RoundingScheme};
use crate::sdp::{self, SolverParams};
use crate::types::{DenseMatrix, SignVector, SubsetPair};

/// Bracket on the cut norm with an attaining witness on the original
/// matrix. `lower` is the recomputed block sum of `witness`; `upper` is the
/// dual-certified relaxation value of the augmented matrix divided by 4.
#[derive(Debug, Clone)]
pub struct CutNormAnswer {
    pub lower: f64,
    pub upper: f64,
    pub witness: SubsetPair,
    pub seed: u64,
    pub trials: usize,
    /// Monte-Carlo mean of the per-trial witness values.
    pub mean_rounded: f64,
}

/// Append negated row/column sums and the total sum, producing an
/// (m+1)×(n+1) matrix whose every row and column sums to zero (exactly so
/// on integer input). The cut norm is unchanged by this augmentation.
pub fn augment(a: &DenseMatrix) -> DenseMatrix {
    let (m, n) = (a.rows(), a.cols());
    let mut b = DenseMatrix::zeros(m + 1, n + 1);
    for i in 0..m {
        let mut row_sum = 0.0;
        for j in 0..n {
            let v = a.get(i, j);
            b.set(i, j, v);
            row_sum += v;
        }
        b.set(i, n, -row_sum);
    }
    for j in 0..n {
        let mut col_sum = 0.0;
        for i in 0..m {
            col_sum += a.get(i, j);
        }
        b.set(m, j, -col_sum);
    }
    b.set(m, n, a.total_sum());
    b
}

/// Evaluate the four quadrants S± × T± induced by the sign vectors and
/// return the pair with the largest absolute block sum; that sum is at
/// least a quarter of the bilinear value of the signs. Ties break towards
/// the smaller (|S|, |T|, indices) key.
pub fn quadrant_extract(b: &DenseMatrix, eps: &SignVector, del: &SignVector) -> SubsetPair {
    assert_eq!(eps.len(), b.rows());
    assert_eq!(del.len(), b.cols());
    let (s_plus, s_minus) = eps.split();
    let (t_plus, t_minus) = del.split();
    let mut best: Option<(f64, SubsetPair)> = None;
    for rows in [&s_plus, &s_minus] {
        for cols in [&t_plus, &t_minus] {
            let v = b.block_sum(rows, cols).abs();
            let pair = SubsetPair::new(rows.clone(), cols.clone());
            let better = match &best {
                None => true,
                Some((bv, bp)) => {
                    v > *bv || (v == *bv && pair.tie_break_key() < bp.tie_break_key())
                }
            };
            if better {
                best = Some((v, pair));
            }
        }
    }
    best.unwrap().1
}

/// Map a subset pair on the augmented (m+1)×(n+1) matrix back to the
/// original indices: a side containing the appended index is replaced by
/// the complement of its other members. Block sums are preserved in
/// absolute value because every augmented row and column sums to zero.
pub fn map_back(s: &SubsetPair, m: usize, n: usize) -> SubsetPair {
    let rows = fold_side(&s.row_set, m);
    let cols = fold_side(&s.col_set, n);
    SubsetPair::new(rows, cols)
}

fn fold_side(side: &[usize], bound: usize) -> Vec<usize> {
    if side.contains(&bound) {
        (0..bound).filter(|i| !side.contains(i)).collect()
    } else {
        side.to_vec()
    }
}

/// Full pipeline: augment → bilinear relaxation → preprocessing → sign
/// rounding (best of `trials`) → quadrant extraction → map back.
pub fn approx_cutnorm(
    a: &DenseMatrix,
    trials: usize,
    restarts: usize,
    seed: u64,
) -> Result<CutNormAnswer> {
    let params = SolverParams {
        restarts,
        seed,
        ..SolverParams::default()
    };
    approx_cutnorm_with_params(a, trials, params)
}

/// [`approx_cutnorm`] with explicit solver parameters (rank, tolerance).
pub fn approx_cutnorm_with_params(
    a: &DenseMatrix,
    trials: usize,
    params: SolverParams,
) -> Result<CutNormAnswer> {
    let seed = params.seed;
    let (m, n) = (a.rows(), a.cols());
    let b = augment(a);
    let (factor, report) = sdp::solve_bilinear(&b, params);
    let upper = report.upper_bound.expect("bilinear solve always certifies") / 4.0;
    let pre = rounding::preprocess(&factor.left, &factor.right, &RoundingScheme::sign_1d())?;

    let trials = trials.max(1);
    let mut best: Option<(f64, SubsetPair)> = None;
    let mut sum = 0.0;
    for trial in 0..trials {
        let one = rounding::round_signs(&b, &pre, 1, seed.wrapping_add(trial as u64));
        let quadrant = quadrant_extract(&b, &one.best_rows, &one.best_cols);
        let pair = map_back(&quadrant, m, n);
        let value = a.block_sum(&pair.row_set, &pair.col_set).abs();
        sum += value;
        let better = match &best {
            None => true,
            Some((bv, bp)) => {
                value > *bv || (value == *bv && pair.tie_break_key() < bp.tie_break_key())
            }
        };
        if better {
            best = Some((value, pair));
        }
    }
    let (lower, witness) = best.unwrap();
    Ok(CutNormAnswer {
        lower,
        upper,
        witness,
        seed,
        trials,
        mean_rounded: sum / trials as f64,
    })
}
