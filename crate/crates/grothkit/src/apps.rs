//! Applications of the cut-norm pipeline: regular-pair testing, matrix cut
//! decomposition, maximum acyclic subgraph ordering, and estimation of
//! 3-variable parity systems.

use crate::cutnorm::{self, augment, map_back, quadrant_extract};
use crate::error::{Error, Result};
use crate::rounding::{self, RoundingScheme};
use crate::sdp::{self, SolverParams};
use crate::types::{DenseMatrix, Digraph, SparseTensor3, SubsetPair};

/// Distinct stream per decomposition step / inner stage.
fn step_seed(seed: u64, step: u64) -> u64 {
    seed ^ step.wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

// ---------------------------------------------------------------------------
// regular-pair testing
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct RegularityWitness {
    pub pair: SubsetPair,
    /// |e(S,T)/(|S||T|) − e(X,Y)/(|X||Y|)| recomputed from the adjacency.
    pub density_gap: f64,
}

#[derive(Debug, Clone)]
pub struct RegularityVerdict {
    pub regular: bool,
    /// true when "regular" is proven by the certified upper bound; false
    /// when it only reflects `confidence_trials` failed rounding attempts.
    pub certified: bool,
    pub witness: Option<RegularityWitness>,
    pub eps: f64,
    pub delta: f64,
    pub confidence_trials: usize,
}

/// Decide whether the bipartite pair behind a 0/1 adjacency matrix is
/// (ε,δ)-regular, or produce subsets S, T with |S|,|T| ≥ ½εδ²n and density
/// gap ≥ ½εδ².
///
/// The centered matrix a_xy = adj_xy − density has cut norm ≥ εδ²n² for
/// every irregular pair, so a certified upper bound below that threshold
/// proves regularity outright.
pub fn regularity_check(
    adj: &DenseMatrix,
    eps: f64,
    delta: f64,
    trials: usize,
    restarts: usize,
    seed: u64,
) -> Result<RegularityVerdict> {
    let n = adj.rows();
    if !adj.is_square() {
        return Err(Error::Invalid("regularity check needs |X| = |Y|".into()));
    }
    if adj.entries().iter().any(|&v| v != 0.0 && v != 1.0) {
        return Err(Error::Invalid("adjacency matrix must be 0/1".into()));
    }
    if !(0.0..1.0).contains(&eps) || eps == 0.0 || !(0.0..1.0).contains(&delta) || delta == 0.0 {
        return Err(Error::Invalid("eps and delta must lie in (0,1)".into()));
    }
    let nf = n as f64;
    let density = adj.total_sum() / (nf * nf);
    let mut centered = DenseMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            centered.set(i, j, adj.get(i, j) - density);
        }
    }

    let threshold = eps * delta * delta * nf * nf;
    let answer = cutnorm::approx_cutnorm(&centered, trials, restarts, seed)?;
    if answer.upper < threshold {
        return Ok(RegularityVerdict {
            regular: true,
            certified: true,
            witness: None,
            eps,
            delta,
            confidence_trials: trials,
        });
    }
    if answer.lower >= threshold / 2.0 {
        let pair = answer.witness;
        let s = pair.row_set.len() as f64;
        let t = pair.col_set.len() as f64;
        let edges = adj.block_sum(&pair.row_set, &pair.col_set);
        let density_gap = (edges / (s * t) - density).abs();
        return Ok(RegularityVerdict {
            regular: false,
            certified: true,
            witness: Some(RegularityWitness { pair, density_gap }),
            eps,
            delta,
            confidence_trials: trials,
        });
    }
    Ok(RegularityVerdict {
        regular: true,
        certified: false,
        witness: None,
        eps,
        delta,
        confidence_trials: trials,
    })
}

// ---------------------------------------------------------------------------
// cut decomposition
// ---------------------------------------------------------------------------

/// Rank-one 0/d block matrix CUT(S, T, d), the decomposition atom.
#[derive(Debug, Clone)]
pub struct CutMatrix {
    pub row_set: Vec<usize>,
    pub col_set: Vec<usize>,
    pub d: f64,
}

#[derive(Debug, Clone)]
pub struct FkDecomposition {
    pub atoms: Vec<CutMatrix>,
    /// Certified upper bound on the cut norm of the final residual.
    pub residual_upper: f64,
    /// Σ a_ij(r)² after 0, 1, 2, … atoms.
    pub frobenius_trace: Vec<f64>,
    /// Realized per-step constant |Σ_{S×T} a(r)| / certified-upper(r).
    pub realized_constants: Vec<f64>,
    /// False when the rounding failed to make progress before the residual
    /// bound reached ε·mn.
    pub completed: bool,
}

/// Iterated cut-norm extraction: peel CUT(S, T, block-average) atoms off
/// the residual until its certified cut-norm bound drops to ε·mn. Each
/// step decreases the squared Frobenius norm by (Σ_{S×T} a(r))²/(|S||T|),
/// which caps the atom count at 1/(c²ε²) for realized constant c.
pub fn fk_decompose(
    a: &DenseMatrix,
    eps: f64,
    trials: usize,
    restarts: usize,
    seed: u64,
) -> Result<FkDecomposition> {
    if a.entries().iter().any(|v| v.abs() > 1.0) {
        return Err(Error::Invalid(
            "cut decomposition needs entries in [-1, 1]".into(),
        ));
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::Invalid("eps must lie in (0,1)".into()));
    }
    let (m, n) = (a.rows(), a.cols());
    let target = eps * m as f64 * n as f64;
    let max_atoms = (64.0 / (eps * eps)).ceil() as usize + 4;

    let mut residual = a.clone();
    let mut atoms = Vec::new();
    let mut frobenius_trace = vec![residual.frobenius_sq()];
    let mut realized_constants = Vec::new();
    loop {
        let answer = cutnorm::approx_cutnorm(
            &residual,
            trials,
            restarts,
            step_seed(seed, atoms.len() as u64),
        )?;
        if answer.upper <= target {
            return Ok(FkDecomposition {
                atoms,
                residual_upper: answer.upper,
                frobenius_trace,
                realized_constants,
                completed: true,
            });
        }
        let pair = answer.witness;
        let block = residual.block_sum(&pair.row_set, &pair.col_set);
        let cells = (pair.row_set.len() * pair.col_set.len()) as f64;
        if block == 0.0 || cells == 0.0 || atoms.len() >= max_atoms {
            return Ok(FkDecomposition {
                atoms,
                residual_upper: answer.upper,
                frobenius_trace,
                realized_constants,
                completed: false,
            });
        }
        realized_constants.push(block.abs() / answer.upper);
        let d = block / cells;
        for &i in &pair.row_set {
            for &j in &pair.col_set {
                residual.set(i, j, residual.get(i, j) - d);
            }
        }
        frobenius_trace.push(residual.frobenius_sq());
        atoms.push(CutMatrix {
            row_set: pair.row_set,
            col_set: pair.col_set,
            d,
        });
    }
}

// ---------------------------------------------------------------------------
// maximum acyclic subgraph
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct AcyclicResult {
    /// Vertex visited at each position of the ordering.
    pub order: Vec<usize>,
    /// W(σ) = Σ_{u<v} `W(order[u], order[v])`; forward minus backward weight.
    pub value: f64,
    /// 2·Σ_{S×T} W for the disjoint pair that generated the ordering.
    pub certificate: f64,
    pub pair: SubsetPair,
}

/// Sum of the skew matrix above the diagonal after permuting by `order`.
pub fn permutation_value(w: &DenseMatrix, order: &[usize]) -> f64 {
    let n = order.len();
    let mut total = 0.0;
    for u in 0..n {
        for v in (u + 1)..n {
            total += w.get(order[u], order[v]);
        }
    }
    total
}

/// The two candidate orderings induced by disjoint subsets S, T:
/// σ¹ = S↑ T↑ R↑ and σ² = R↓ S↓ T↓. Their values sum to 2·Σ_{S×T} W by
/// skew symmetry.
pub fn orders_from_disjoint_pair(n: usize, s: &[usize], t: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let in_s: Vec<bool> = membership(n, s);
    let in_t: Vec<bool> = membership(n, t);
    let rest: Vec<usize> = (0..n).filter(|&v| !in_s[v] && !in_t[v]).collect();
    let mut first = Vec::with_capacity(n);
    first.extend_from_slice(s);
    first.extend_from_slice(t);
    first.extend_from_slice(&rest);
    let mut second = Vec::with_capacity(n);
    second.extend(rest.iter().rev());
    second.extend(s.iter().rev());
    second.extend(t.iter().rev());
    (first, second)
}

fn membership(n: usize, set: &[usize]) -> Vec<bool> {
    let mut b = vec![false; n];
    for &v in set {
        b[v] = true;
    }
    b
}

/// Ordering heuristic with the cut-norm guarantee: find a high-value block
/// (S, T) of the skew matrix, disjointify it, and keep the better of the
/// two induced orderings — searched over every rounding trial and all
/// three disjointification candidates.
pub fn max_acyclic_order(
    g: &Digraph,
    trials: usize,
    restarts: usize,
    seed: u64,
) -> Result<AcyclicResult> {
    let n = g.n();
    let w = g.skew_matrix();
    let identity: Vec<usize> = (0..n).collect();
    if n <= 1 {
        return Ok(AcyclicResult {
            order: identity,
            value: 0.0,
            certificate: 0.0,
            pair: SubsetPair::new(vec![], vec![]),
        });
    }

    let b = augment(&w);
    let params = SolverParams {
        restarts,
        seed,
        ..SolverParams::default()
    };
    let (factor, _) = sdp::solve_bilinear(&b, params);
    let pre = rounding::preprocess(&factor.left, &factor.right, &RoundingScheme::sign_1d())?;

    let mut best = AcyclicResult {
        order: identity.clone(),
        value: permutation_value(&w, &identity),
        certificate: 0.0,
        pair: SubsetPair::new(vec![], vec![]),
    };
    for trial in 0..trials.max(1) {
        let one = rounding::round_signs(&b, &pre, 1, seed.wrapping_add(trial as u64));
        let quadrant = quadrant_extract(&b, &one.best_rows, &one.best_cols);
        let mapped = map_back(&quadrant, n, n);
        // orient so the block sum is nonnegative (swapping S and T negates
        // it by skew symmetry)
        let (s, t) = if w.block_sum(&mapped.row_set, &mapped.col_set) >= 0.0 {
            (mapped.row_set, mapped.col_set)
        } else {
            (mapped.col_set, mapped.row_set)
        };
        let in_s = membership(n, &s);
        let in_t = membership(n, &t);
        let s_only: Vec<usize> = s.iter().copied().filter(|&v| !in_t[v]).collect();
        let t_only: Vec<usize> = t.iter().copied().filter(|&v| !in_s[v]).collect();
        let both: Vec<usize> = s.iter().copied().filter(|&v| in_t[v]).collect();
        for (cs, ct) in [(&s_only, &t_only), (&s_only, &both), (&both, &t_only)] {
            let block = w.block_sum(cs, ct);
            let (first, second) = orders_from_disjoint_pair(n, cs, ct);
            for order in [first, second] {
                let value = permutation_value(&w, &order);
                if value > best.value {
                    best = AcyclicResult {
                        order,
                        value,
                        certificate: 2.0 * block,
                        pair: SubsetPair::new(cs.clone(), ct.clone()),
                    };
                }
            }
        }
    }
    Ok(best)
}

// ---------------------------------------------------------------------------
// 3-variable parity systems
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct Lin3Estimate {
    /// Sound lower-machinery estimate: never exceeds the true advantage
    /// max Σ a_ijk ε_i ε_j ε_k.
    pub alpha: f64,
    /// Scaled relaxation value per sampled sign vector.
    pub per_trial: Vec<f64>,
    pub sign_samples: usize,
}

/// Randomized estimator for the maximum advantage of a 3-variable parity
/// system over a coin flip: sample ⌈n^{1/4}⌉ sign vectors, contract the
/// tensor along the first index, solve the bilinear relaxation of each
/// slice and scale the best by 1/(10·K) with K the proven rounding
/// constant. The scaling keeps α ≤ M unconditionally.
pub fn lin3_estimate(t: &SparseTensor3, restarts: usize, seed: u64) -> Result<Lin3Estimate> {
    let n = t.n();
    if n == 0 || t.is_empty() {
        return Ok(Lin3Estimate {
            alpha: 0.0,
            per_trial: vec![],
            sign_samples: 0,
        });
    }
    let samples = (n as f64).powf(0.25).ceil() as usize;
    let scale = 1.0 / (10.0 * crate::constants::KRIVINE_UPPER);
    let mut per_trial = Vec::with_capacity(samples);
    for ell in 0..samples {
        let mut r = crate::rng::stream(seed, ell as u64);
        let eps = crate::rng::random_signs(&mut r, n);
        let mut slice = DenseMatrix::zeros(n, n);
        for &(i, j, k, c) in t.entries() {
            slice.set(j, k, slice.get(j, k) + f64::from(c) * f64::from(eps[i]));
        }
        let params = SolverParams {
            restarts,
            seed: step_seed(seed, ell as u64),
            ..SolverParams::default()
        };
        let (factor, _) = sdp::solve_bilinear(&slice, params);
        per_trial.push(scale * factor.value);
    }
    let alpha = per_trial.iter().fold(0.0f64, |a, &b| a.max(b));
    Ok(Lin3Estimate {
        alpha,
        per_trial,
        sign_samples: samples,
    })
}
