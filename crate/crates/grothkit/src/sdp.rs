//! Low-rank factorized ascent for the vector relaxations used throughout
//! the crate: the bilinear sphere program, the symmetric (graph-masked)
//! program, the lp-ball programs for p ≥ 2, and fixed-rank sphere products.
//!
//! The factor rows are kept feasible at every step (unit norm, or inside
//! the lp ball); projected gradient ascent with Armijo backtracking makes
//! the objective non-decreasing, so the returned value is always a valid
//! lower bound on the program. Upper bounds come from an eigenvalue-shifted
//! dual certificate: for nonnegative multipliers λ, μ the block matrix
//! [[diag λ, −A/2], [−Aᵀ/2, diag μ]] bounds the objective by
//! Σλ + Σμ − min(0, λ_min)·(m+n), which is sound for any feasible point
//! and tight at stationarity.

use crate::error::{Error, Result};
use crate::linalg;
use crate::rng;
use crate::types::{DenseMatrix, EdgeMask, SignVector};

const ARMIJO: f64 = 1e-4;
const MAX_ITERS: usize = 50_000;
const WINDOW: usize = 20;
const MIN_STEP: f64 = 1e-18;

/// Unit-row factor matrices representing a relaxation solution in low-rank
/// form. For symmetric programs `left` and `right` coincide.
#[derive(Debug, Clone)]
pub struct FactorPair {
    pub left: DenseMatrix,
    pub right: DenseMatrix,
    pub rank: usize,
    pub value: f64,
}

#[derive(Debug, Clone)]
pub struct SolveReport {
    pub value: f64,
    pub upper_bound: Option<f64>,
    pub restarts_used: usize,
    /// Iterations spent by the winning restart.
    pub iterations: usize,
    pub converged: bool,
    pub seed: u64,
}

/// Solution of an lp-ball program in direction/magnitude form:
/// x_i = `magnitudes[i]` · `directions.row(i)`.
#[derive(Debug, Clone)]
pub struct LpFactor {
    pub directions: DenseMatrix,
    pub magnitudes: Vec<f64>,
    pub value: f64,
}

#[derive(Debug, Clone, Copy)]
pub struct SolverParams {
    /// None picks ⌈√(2(m+n))⌉ + 1, above the spurious-local-optimum
    /// threshold for these programs.
    pub rank: Option<usize>,
    pub restarts: usize,
    pub tol: f64,
    pub seed: u64,
}

impl Default for SolverParams {
    fn default() -> Self {
        Self {
            rank: None,
            restarts: 8,
            tol: 1e-9,
            seed: 0,
        }
    }
}

impl SolverParams {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }

    fn resolve_rank(&self, total_rows: usize) -> usize {
        self.rank
            .unwrap_or(((2.0 * total_rows as f64).sqrt().ceil() as usize) + 1)
            .max(1)
    }
}

pub fn default_rank(total_rows: usize) -> usize {
    ((2.0 * total_rows as f64).sqrt().ceil() as usize) + 1
}

fn random_unit_rows<R: rand::Rng>(rng: &mut R, rows: usize, rank: usize) -> DenseMatrix {
    let mut m = DenseMatrix::zeros(rows, rank);
    for i in 0..rows {
        let mut row = vec![0.0; rank];
        loop {
            rng::fill_normal(rng, &mut row);
            if linalg::norm2(&row) > 1e-12 {
                break;
            }
        }
        linalg::normalize(&mut row);
        for (k, &v) in row.iter().enumerate() {
            m.set(i, k, v);
        }
    }
    m
}

fn renormalize_rows(m: &mut DenseMatrix) {
    let (rows, cols) = (m.rows(), m.cols());
    for i in 0..rows {
        let norm = linalg::norm2(m.row(i));
        if norm > 0.0 {
            for k in 0..cols {
                m.set(i, k, m.get(i, k) / norm);
            }
        } else {
            m.set(i, 0, 1.0);
        }
    }
}

/// Σ_ij a_ij ⟨x_i, y_j⟩.
pub fn bilinear_objective(a: &DenseMatrix, x: &DenseMatrix, y: &DenseMatrix) -> f64 {
    let (m, n) = (a.rows(), a.cols());
    let r = x.cols();
    let mut total = 0.0;
    for i in 0..m {
        let ar = a.row(i);
        let xi = x.row(i);
        let mut acc = vec![0.0; r];
        for j in 0..n {
            let yj = y.row(j);
            let aij = ar[j];
            if aij != 0.0 {
                for k in 0..r {
                    acc[k] += aij * yj[k];
                }
            }
        }
        total += linalg::dot(xi, &acc);
    }
    total
}

/// Σ_{(i,j) in mask} a_ij ⟨x_i, x_j⟩ over ordered pairs.
pub fn masked_objective(a: &DenseMatrix, mask: &EdgeMask, x: &DenseMatrix) -> f64 {
    let n = a.rows();
    let mut total = 0.0;
    for i in 0..n {
        let ar = a.row(i);
        let xi = x.row(i);
        for j in 0..n {
            if mask.contains(i, j) {
                total += ar[j] * linalg::dot(xi, x.row(j));
            }
        }
    }
    total
}

fn riemannian_grad_norm_sq(grad: &DenseMatrix, x: &DenseMatrix) -> f64 {
    let mut total = 0.0;
    for i in 0..x.rows() {
        let g = grad.row(i);
        let xi = x.row(i);
        let radial = linalg::dot(g, xi);
        for k in 0..x.cols() {
            let t = g[k] - radial * xi[k];
            total += t * t;
        }
    }
    total
}

fn step_rows(x: &DenseMatrix, grad: &DenseMatrix, step: f64) -> DenseMatrix {
    let mut out = x.clone();
    for i in 0..x.rows() {
        for k in 0..x.cols() {
            out.set(i, k, x.get(i, k) + step * grad.get(i, k));
        }
    }
    renormalize_rows(&mut out);
    out
}

struct AscentOutcome {
    iterations: usize,
    converged: bool,
}

/// Projected gradient ascent on unit rows for a generic smooth objective.
/// `eval` returns the objective; `grad` fills the Euclidean gradient.
fn ascend<F, G>(vars: &mut Vec<DenseMatrix>, eval: F, grad: G, tol: f64) -> AscentOutcome
where
    F: Fn(&[DenseMatrix]) -> f64,
    G: Fn(&[DenseMatrix]) -> Vec<DenseMatrix>,
{
    let mut value = eval(vars);
    let mut history = std::collections::VecDeque::with_capacity(WINDOW + 1);
    history.push_back(value);
    for iter in 0..MAX_ITERS {
        let gradients = grad(vars);
        let gnorm_sq: f64 = gradients
            .iter()
            .zip(vars.iter())
            .map(|(g, x)| riemannian_grad_norm_sq(g, x))
            .sum();
        let mut step = 1.0;
        let mut accepted = false;
        while step >= MIN_STEP {
            let trial: Vec<DenseMatrix> = vars
                .iter()
                .zip(gradients.iter())
                .map(|(x, g)| step_rows(x, g, step))
                .collect();
            let trial_value = eval(&trial);
            if trial_value >= value + ARMIJO * step * gnorm_sq {
                *vars = trial;
                value = trial_value;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            return AscentOutcome {
                iterations: iter + 1,
                converged: true,
            };
        }
        history.push_back(value);
        if history.len() > WINDOW {
            let old = history.pop_front().unwrap();
            if value - old < tol * value.abs().max(1.0) {
                return AscentOutcome {
                    iterations: iter + 1,
                    converged: true,
                };
            }
        }
    }
    AscentOutcome {
        iterations: MAX_ITERS,
        converged: false,
    }
}

/// Maximize Σ a_ij ⟨x_i, y_j⟩ over unit vectors (the bilinear sphere
/// relaxation). Returns the best restart with a dual-certified upper bound.
pub fn solve_bilinear(a: &DenseMatrix, params: SolverParams) -> (FactorPair, SolveReport) {
    let (m, n) = (a.rows(), a.cols());
    let rank = params.resolve_rank(m + n);
    let at = a.transpose();

    let eval = |vars: &[DenseMatrix]| bilinear_objective(a, &vars[0], &vars[1]);
    let grad = |vars: &[DenseMatrix]| {
        let (x, y) = (&vars[0], &vars[1]);
        let mut gx = DenseMatrix::zeros(m, rank);
        for i in 0..m {
            let ar = a.row(i);
            for j in 0..n {
                let aij = ar[j];
                if aij != 0.0 {
                    for k in 0..rank {
                        gx.set(i, k, gx.get(i, k) + aij * y.get(j, k));
                    }
                }
            }
        }
        let mut gy = DenseMatrix::zeros(n, rank);
        for j in 0..n {
            let atr = at.row(j);
            for i in 0..m {
                let aij = atr[i];
                if aij != 0.0 {
                    for k in 0..rank {
                        gy.set(j, k, gy.get(j, k) + aij * x.get(i, k));
                    }
                }
            }
        }
        vec![gx, gy]
    };

    let mut best: Option<(f64, usize, Vec<DenseMatrix>, AscentOutcome)> = None;
    for restart in 0..params.restarts.max(1) {
        let mut r = rng::stream(params.seed, restart as u64);
        let mut vars = vec![
            random_unit_rows(&mut r, m, rank),
            random_unit_rows(&mut r, n, rank),
        ];
        let outcome = ascend(&mut vars, eval, grad, params.tol);
        let value = eval(&vars);
        if best.as_ref().map_or(true, |(bv, _, _, _)| value > *bv) {
            best = Some((value, restart, vars, outcome));
        }
    }
    let (value, _, vars, outcome) = best.unwrap();
    let factor = FactorPair {
        left: vars[0].clone(),
        right: vars[1].clone(),
        rank,
        value,
    };
    let upper = dual_gap(a, &factor);
    let report = SolveReport {
        value,
        upper_bound: Some(upper),
        restarts_used: params.restarts.max(1),
        iterations: outcome.iterations,
        converged: outcome.converged,
        seed: params.seed,
    };
    (factor, report)
}

/// Certified upper bound on the bilinear sphere program at the multipliers
/// induced by a feasible factor pair:
/// λ_i = ½‖Σ_j a_ij y_j‖, μ_j = ½‖Σ_i a_ij x_i‖, then
/// bound = Σλ + Σμ + max(0, −λ_min)·(m+n) for the block matrix above.
pub fn dual_gap(a: &DenseMatrix, f: &FactorPair) -> f64 {
    let (m, n) = (a.rows(), a.cols());
    let rank = f.rank;
    let mut lambda = vec![0.0; m];
    for i in 0..m {
        let mut acc = vec![0.0; rank];
        for j in 0..n {
            let aij = a.get(i, j);
            for k in 0..rank {
                acc[k] += aij * f.right.get(j, k);
            }
        }
        lambda[i] = 0.5 * linalg::norm2(&acc);
    }
    let mut mu = vec![0.0; n];
    for j in 0..n {
        let mut acc = vec![0.0; rank];
        for i in 0..m {
            let aij = a.get(i, j);
            for k in 0..rank {
                acc[k] += aij * f.left.get(i, k);
            }
        }
        mu[j] = 0.5 * linalg::norm2(&acc);
    }
    let mut block = DenseMatrix::zeros(m + n, m + n);
    for i in 0..m {
        block.set(i, i, lambda[i]);
    }
    for j in 0..n {
        block.set(m + j, m + j, mu[j]);
    }
    for i in 0..m {
        for j in 0..n {
            block.set(i, m + j, -0.5 * a.get(i, j));
            block.set(m + j, i, -0.5 * a.get(i, j));
        }
    }
    let lam_min = linalg::min_eigenvalue(&block);
    lambda.iter().sum::<f64>() + mu.iter().sum::<f64>() + (0.0f64).max(-lam_min) * (m + n) as f64
}

/// Maximize Σ_{(i,j) in mask} a_ij ⟨x_i, x_j⟩ over a single set of unit
/// vectors. The matrix must be symmetric on the masked support.
pub fn solve_symmetric(
    a: &DenseMatrix,
    mask: &EdgeMask,
    params: SolverParams,
) -> Result<(FactorPair, SolveReport)> {
    let n = a.rows();
    if !a.is_square() || mask.n() != n {
        return Err(Error::Invalid(
            "symmetric solver needs a square matrix and matching mask".into(),
        ));
    }
    for i in 0..n {
        for j in 0..n {
            if mask.contains(i, j) && (a.get(i, j) - a.get(j, i)).abs() > 1e-9 * (1.0 + a.max_abs())
            {
                return Err(Error::Invalid(
                    "matrix must be symmetric on the masked support".into(),
                ));
            }
        }
    }
    let rank = params.resolve_rank(n);
    Ok(solve_symmetric_at_rank(a, mask, rank, params))
}

fn solve_symmetric_at_rank(
    a: &DenseMatrix,
    mask: &EdgeMask,
    rank: usize,
    params: SolverParams,
) -> (FactorPair, SolveReport) {
    let n = a.rows();
    // masked symmetric coefficient matrix
    let mut s = DenseMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            if mask.contains(i, j) {
                s.set(i, j, a.get(i, j));
            }
        }
    }

    let eval = |vars: &[DenseMatrix]| {
        let x = &vars[0];
        let mut total = 0.0;
        for i in 0..n {
            let sr = s.row(i);
            let xi = x.row(i);
            for j in 0..n {
                if sr[j] != 0.0 {
                    total += sr[j] * linalg::dot(xi, x.row(j));
                }
            }
        }
        total
    };
    let grad = |vars: &[DenseMatrix]| {
        let x = &vars[0];
        let mut g = DenseMatrix::zeros(n, rank);
        for i in 0..n {
            let sr = s.row(i);
            for j in 0..n {
                let sij = sr[j];
                if sij != 0.0 {
                    for k in 0..rank {
                        g.set(i, k, g.get(i, k) + 2.0 * sij * x.get(j, k));
                    }
                }
            }
        }
        vec![g]
    };

    let mut best: Option<(f64, Vec<DenseMatrix>, AscentOutcome)> = None;
    for restart in 0..params.restarts.max(1) {
        let mut r = rng::stream(params.seed, restart as u64);
        let mut vars = vec![random_unit_rows(&mut r, n, rank)];
        let outcome = ascend(&mut vars, eval, grad, params.tol);
        let value = eval(&vars);
        if best.as_ref().map_or(true, |(bv, _, _)| value > *bv) {
            best = Some((value, vars, outcome));
        }
    }
    let (value, vars, outcome) = best.unwrap();
    let upper = dual_bound_symmetric(&s, &vars[0]);
    let factor = FactorPair {
        left: vars[0].clone(),
        right: vars[0].clone(),
        rank,
        value,
    };
    let report = SolveReport {
        value,
        upper_bound: Some(upper),
        restarts_used: params.restarts.max(1),
        iterations: outcome.iterations,
        converged: outcome.converged,
        seed: params.seed,
    };
    (factor, report)
}

/// Upper bound for the symmetric program with multipliers λ_i = ‖(S·X)_i‖:
/// Σλ + max(0, −λ_min(diag λ − S))·n.
pub fn dual_bound_symmetric(s: &DenseMatrix, x: &DenseMatrix) -> f64 {
    let n = s.rows();
    let rank = x.cols();
    let mut lambda = vec![0.0; n];
    for i in 0..n {
        let mut acc = vec![0.0; rank];
        let sr = s.row(i);
        for j in 0..n {
            if sr[j] != 0.0 {
                for k in 0..rank {
                    acc[k] += sr[j] * x.get(j, k);
                }
            }
        }
        lambda[i] = linalg::norm2(&acc);
    }
    let mut block = DenseMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            block.set(
                i,
                j,
                if i == j {
                    lambda[i] - s.get(i, j)
                } else {
                    -s.get(i, j)
                },
            );
        }
    }
    let lam_min = linalg::min_eigenvalue(&block);
    lambda.iter().sum::<f64>() + (0.0f64).max(-lam_min) * n as f64
}

fn lp_norm(t: &[f64], p: f64) -> f64 {
    if p.is_infinite() {
        return t.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    }
    let sum: f64 = if p.fract() == 0.0 && p <= 64.0 {
        let ip = p as i32;
        t.iter().map(|v| v.abs().powi(ip)).sum()
    } else {
        t.iter().map(|v| v.abs().powf(p)).sum()
    };
    sum.powf(1.0 / p)
}

/// Maximize Σ a_ij ⟨x_i, x_j⟩ subject to Σ ‖x_i‖₂^p ≤ 1, p ≥ 2
/// (convex constraint regime). Alternating projected ascent over unit
/// directions and lp-ball magnitudes.
pub fn solve_lp_ball(
    a: &DenseMatrix,
    p: f64,
    params: SolverParams,
) -> Result<(LpFactor, SolveReport)> {
    if p < 2.0 {
        return Err(Error::Regime(format!(
            "lp-ball relaxation requires p >= 2 (the constraint is non-convex below); got {p}"
        )));
    }
    a.require_zero_diagonal()?;
    Ok(solve_lp_ball_unchecked(a, p, params))
}

/// The lp-ball ascent without the zero-diagonal precondition; valid for
/// positive semidefinite inputs too (for those the ball and sphere maxima
/// agree by convexity).
pub(crate) fn solve_lp_ball_unchecked(
    a: &DenseMatrix,
    p: f64,
    params: SolverParams,
) -> (LpFactor, SolveReport) {
    let n = a.rows();
    let rank = params.resolve_rank(n).min(n.max(2));
    let sym = a.symmetric_part();

    // objective in (directions, magnitudes): Σ 2·sym_ij t_i t_j ⟨d_i, d_j⟩
    let eval = |d: &DenseMatrix, t: &[f64]| {
        let mut total = 0.0;
        for i in 0..n {
            let sr = sym.row(i);
            let di = d.row(i);
            for j in 0..n {
                if sr[j] != 0.0 {
                    total += sr[j] * t[i] * t[j] * linalg::dot(di, d.row(j));
                }
            }
        }
        total
    };

    let mut best: Option<(f64, DenseMatrix, Vec<f64>, AscentOutcome)> = None;
    for restart in 0..params.restarts.max(1) {
        let mut r = rng::stream(params.seed, restart as u64);
        let mut dirs = random_unit_rows(&mut r, n, rank);
        let mut mags: Vec<f64> = (0..n)
            .map(|_| rng::standard_normal(&mut r).abs() + 1e-3)
            .collect();
        let norm = lp_norm(&mags, p);
        for v in mags.iter_mut() {
            *v /= norm;
        }

        let mut value = eval(&dirs, &mags);
        let mut history = std::collections::VecDeque::with_capacity(WINDOW + 1);
        history.push_back(value);
        let mut iterations = 0;
        let mut converged = false;
        for iter in 0..MAX_ITERS {
            iterations = iter + 1;
            // direction phase: sphere-projected gradient step
            let mut gd = DenseMatrix::zeros(n, rank);
            for i in 0..n {
                let sr = sym.row(i);
                for j in 0..n {
                    let c = 2.0 * sr[j] * mags[i] * mags[j];
                    if c != 0.0 {
                        for k in 0..rank {
                            gd.set(i, k, gd.get(i, k) + c * dirs.get(j, k));
                        }
                    }
                }
            }
            let gd_norm_sq = riemannian_grad_norm_sq(&gd, &dirs);
            let mut step = 1.0;
            while step >= MIN_STEP {
                let trial = step_rows(&dirs, &gd, step);
                let tv = eval(&trial, &mags);
                if tv >= value + ARMIJO * step * gd_norm_sq {
                    dirs = trial;
                    value = tv;
                    break;
                }
                step *= 0.5;
            }

            // magnitude phase: gradient step then radial projection onto
            // the lp ball (signs folded into the directions at the end)
            let mut gt = vec![0.0; n];
            for i in 0..n {
                let sr = sym.row(i);
                let di = dirs.row(i);
                for j in 0..n {
                    if sr[j] != 0.0 {
                        gt[i] += 2.0 * sr[j] * mags[j] * linalg::dot(di, dirs.row(j));
                    }
                }
            }
            let gt_norm_sq = linalg::dot(&gt, &gt);
            let mut step = 1.0;
            while step >= MIN_STEP {
                let mut trial: Vec<f64> = mags.iter().zip(&gt).map(|(t, g)| t + step * g).collect();
                let norm = lp_norm(&trial, p);
                if norm > 1.0 {
                    for v in trial.iter_mut() {
                        *v /= norm;
                    }
                }
                let tv = eval(&dirs, &trial);
                if tv >= value + ARMIJO * step * gt_norm_sq {
                    mags = trial;
                    value = tv;
                    break;
                }
                step *= 0.5;
            }

            history.push_back(value);
            if history.len() > WINDOW {
                let old = history.pop_front().unwrap();
                if value - old < params.tol * value.abs().max(1.0) {
                    converged = true;
                    break;
                }
            }
        }

        if best.as_ref().map_or(true, |(bv, _, _, _)| value > *bv) {
            best = Some((
                value,
                dirs,
                mags,
                AscentOutcome {
                    iterations,
                    converged,
                },
            ));
        }
    }

    let (_, mut dirs, mut mags, outcome) = best.unwrap();
    // fold negative magnitudes into the directions, clamp tiny ball excess
    for i in 0..n {
        if mags[i] < 0.0 {
            mags[i] = -mags[i];
            for k in 0..dirs.cols() {
                dirs.set(i, k, -dirs.get(i, k));
            }
        }
    }
    let norm = lp_norm(&mags, p);
    if norm > 1.0 {
        for v in mags.iter_mut() {
            *v /= norm;
        }
    }
    let value = eval(&dirs, &mags);
    let upper = certify_lp_ball(&sym, p, &mags);
    let factor = LpFactor {
        directions: dirs,
        magnitudes: mags,
        value,
    };
    let report = SolveReport {
        value,
        upper_bound: Some(upper),
        restarts_used: params.restarts.max(1),
        iterations: outcome.iterations,
        converged: outcome.converged,
        seed: params.seed,
    };
    (factor, report)
}

/// Certified upper bound on the lp-ball program (p ≥ 2): any nonnegative
/// diagonal d with diag(d) ⪰ A_sym gives value ≤ ‖d‖_{p/(p−2)} by Hölder.
/// The candidate diagonals d_i = c·max(t_i, floor)^{p−2} are repaired by a
/// uniform eigenvalue shift and the scale c is optimized by golden search.
pub fn certify_lp_ball(sym: &DenseMatrix, p: f64, magnitudes: &[f64]) -> f64 {
    let n = sym.rows();
    let qexp = if p == 2.0 {
        f64::INFINITY
    } else {
        p / (p - 2.0)
    };
    let tmax = magnitudes.iter().fold(0.0f64, |a, &b| a.max(b)).max(1e-9);
    let floor = 1e-6 * tmax;
    let shape: Vec<f64> = magnitudes
        .iter()
        .map(|&t| t.max(floor).powf(p - 2.0))
        .collect();

    let evaluate = |c: f64| -> f64 {
        let mut block = DenseMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                block.set(
                    i,
                    j,
                    if i == j {
                        c * shape[i] - sym.get(i, j)
                    } else {
                        -sym.get(i, j)
                    },
                );
            }
        }
        let shift = (0.0f64).max(-linalg::min_eigenvalue(&block));
        let d: Vec<f64> = shape.iter().map(|&s| c * s + shift).collect();
        lp_norm(&d, qexp)
    };

    let scale = linalg::largest_eigenvalue(sym, 1e-10)
        .abs()
        .max(sym.max_abs())
        .max(1e-9);
    let (mut lo, mut hi) = (scale * 1e-3, scale * 1e3);
    // golden-section over log c
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a_log, mut b_log) = (lo.ln(), hi.ln());
    let mut c1 = b_log - phi * (b_log - a_log);
    let mut c2 = a_log + phi * (b_log - a_log);
    let mut f1 = evaluate(c1.exp());
    let mut f2 = evaluate(c2.exp());
    for _ in 0..60 {
        if f1 <= f2 {
            b_log = c2;
            c2 = c1;
            f2 = f1;
            c1 = b_log - phi * (b_log - a_log);
            f1 = evaluate(c1.exp());
        } else {
            a_log = c1;
            c1 = c2;
            f1 = f2;
            c2 = a_log + phi * (b_log - a_log);
            f2 = evaluate(c2.exp());
        }
    }
    lo = a_log.exp();
    hi = b_log.exp();
    evaluate(0.5 * (lo + hi)).min(f1).min(f2)
}

/// Row-norm constraint of one side of a bilinear lp program.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SideConstraint {
    /// Σ ‖x_i‖₂^p ≤ 1 with p ≥ 2.
    SumLp(f64),
    /// ‖x_i‖₂ ≤ 1 for every row (the p = ∞ case).
    PerRow,
}

impl SideConstraint {
    pub fn from_exponent(p: f64) -> Result<Self> {
        if p.is_infinite() {
            Ok(SideConstraint::PerRow)
        } else if p >= 2.0 {
            Ok(SideConstraint::SumLp(p))
        } else {
            Err(Error::Regime(format!(
                "bilinear lp side requires p >= 2, got {p}"
            )))
        }
    }

    fn project(&self, rows: &mut DenseMatrix) {
        match *self {
            SideConstraint::PerRow => {
                for i in 0..rows.rows() {
                    let norm = linalg::norm2(rows.row(i));
                    if norm > 1.0 {
                        for k in 0..rows.cols() {
                            rows.set(i, k, rows.get(i, k) / norm);
                        }
                    }
                }
            }
            SideConstraint::SumLp(p) => {
                let norms: Vec<f64> = (0..rows.rows())
                    .map(|i| linalg::norm2(rows.row(i)))
                    .collect();
                let total = lp_norm(&norms, p);
                if total > 1.0 {
                    for i in 0..rows.rows() {
                        for k in 0..rows.cols() {
                            rows.set(i, k, rows.get(i, k) / total);
                        }
                    }
                }
            }
        }
    }
}

/// Maximize Σ a_ij ⟨x_i, y_j⟩ with each side constrained by `cx` / `cy`.
/// Joint projected gradient ascent on the stacked vectors with radial
/// retraction onto the constraint set.
pub fn solve_bilinear_lp(
    a: &DenseMatrix,
    cx: SideConstraint,
    cy: SideConstraint,
    params: SolverParams,
) -> (LpFactor, LpFactor, SolveReport) {
    let (m, n) = (a.rows(), a.cols());
    let rank = params.resolve_rank(m + n);
    let at = a.transpose();

    let eval = |x: &DenseMatrix, y: &DenseMatrix| bilinear_objective(a, x, y);
    let mut best: Option<(f64, DenseMatrix, DenseMatrix, AscentOutcome)> = None;
    for restart in 0..params.restarts.max(1) {
        let mut r = rng::stream(params.seed, restart as u64);
        let mut x = random_unit_rows(&mut r, m, rank);
        let mut y = random_unit_rows(&mut r, n, rank);
        // feasible start
        scale_rows(&mut x, 1.0 / (m as f64).max(1.0));
        scale_rows(&mut y, 1.0 / (n as f64).max(1.0));
        cx.project(&mut x);
        cy.project(&mut y);

        let mut value = eval(&x, &y);
        let mut history = std::collections::VecDeque::with_capacity(WINDOW + 1);
        history.push_back(value);
        let mut iterations = 0;
        let mut converged = false;
        for iter in 0..MAX_ITERS {
            iterations = iter + 1;
            let mut gx = DenseMatrix::zeros(m, rank);
            for i in 0..m {
                let ar = a.row(i);
                for j in 0..n {
                    if ar[j] != 0.0 {
                        for k in 0..rank {
                            gx.set(i, k, gx.get(i, k) + ar[j] * y.get(j, k));
                        }
                    }
                }
            }
            let mut gy = DenseMatrix::zeros(n, rank);
            for j in 0..n {
                let atr = at.row(j);
                for i in 0..m {
                    if atr[i] != 0.0 {
                        for k in 0..rank {
                            gy.set(j, k, gy.get(j, k) + atr[i] * x.get(i, k));
                        }
                    }
                }
            }
            let mut step = 1.0;
            let mut accepted = false;
            while step >= MIN_STEP {
                let mut tx = x.clone();
                let mut ty = y.clone();
                for i in 0..m {
                    for k in 0..rank {
                        tx.set(i, k, x.get(i, k) + step * gx.get(i, k));
                    }
                }
                for j in 0..n {
                    for k in 0..rank {
                        ty.set(j, k, y.get(j, k) + step * gy.get(j, k));
                    }
                }
                cx.project(&mut tx);
                cy.project(&mut ty);
                // proximal-gradient Armijo: measure progress against the
                // realized (projected) displacement, not the raw gradient
                let mut moved = 0.0;
                for i in 0..m {
                    for k in 0..rank {
                        let d = tx.get(i, k) - x.get(i, k);
                        moved += d * d;
                    }
                }
                for j in 0..n {
                    for k in 0..rank {
                        let d = ty.get(j, k) - y.get(j, k);
                        moved += d * d;
                    }
                }
                let tv = eval(&tx, &ty);
                if tv >= value + ARMIJO * moved / step {
                    x = tx;
                    y = ty;
                    value = tv;
                    accepted = true;
                    break;
                }
                step *= 0.5;
            }
            if !accepted {
                converged = true;
                break;
            }
            history.push_back(value);
            if history.len() > WINDOW {
                let old = history.pop_front().unwrap();
                if value - old < params.tol * value.abs().max(1.0) {
                    converged = true;
                    break;
                }
            }
        }
        if best.as_ref().map_or(true, |(bv, _, _, _)| value > *bv) {
            best = Some((
                value,
                x,
                y,
                AscentOutcome {
                    iterations,
                    converged,
                },
            ));
        }
    }

    let (value, x, y, outcome) = best.unwrap();
    let fx = split_factor(&x);
    let fy = split_factor(&y);
    let upper = certify_bilinear_lp(a, cx, cy, &fx.magnitudes, &fy.magnitudes);
    let report = SolveReport {
        value,
        upper_bound: Some(upper),
        restarts_used: params.restarts.max(1),
        iterations: outcome.iterations,
        converged: outcome.converged,
        seed: params.seed,
    };
    (LpFactor { value, ..fx }, LpFactor { value, ..fy }, report)
}

fn scale_rows(m: &mut DenseMatrix, factor: f64) {
    for i in 0..m.rows() {
        for k in 0..m.cols() {
            m.set(i, k, m.get(i, k) * factor);
        }
    }
}

fn split_factor(rows: &DenseMatrix) -> LpFactor {
    let mut directions = rows.clone();
    let magnitudes: Vec<f64> = (0..rows.rows())
        .map(|i| linalg::norm2(rows.row(i)))
        .collect();
    renormalize_rows(&mut directions);
    LpFactor {
        directions,
        magnitudes,
        value: 0.0,
    }
}

/// Dual certificate for the bilinear lp program: diagonal multipliers
/// shaped as c·t_i^{p−2} (uniform for per-row sides), made feasible by an
/// eigenvalue shift of the block matrix and balanced between the two
/// sides; the scale c is optimized by golden search.
pub fn certify_bilinear_lp(
    a: &DenseMatrix,
    cx: SideConstraint,
    cy: SideConstraint,
    tx: &[f64],
    ty: &[f64],
) -> f64 {
    let (m, n) = (a.rows(), a.cols());
    let shape = |c: SideConstraint, t: &[f64]| -> (Vec<f64>, f64) {
        match c {
            SideConstraint::PerRow => (vec![1.0; t.len()], 1.0),
            SideConstraint::SumLp(p) => {
                if p == 2.0 {
                    (vec![1.0; t.len()], f64::INFINITY)
                } else {
                    let tmax = t.iter().fold(0.0f64, |acc, &v| acc.max(v)).max(1e-9);
                    let floor = 1e-6 * tmax;
                    (
                        t.iter().map(|&v| v.max(floor).powf(p - 2.0)).collect(),
                        p / (p - 2.0),
                    )
                }
            }
        }
    };
    let (ux, qx) = shape(cx, tx);
    let (uy, qy) = shape(cy, ty);

    let evaluate = |c: f64| -> f64 {
        let mut block = DenseMatrix::zeros(m + n, m + n);
        for i in 0..m {
            block.set(i, i, c * ux[i]);
        }
        for j in 0..n {
            block.set(m + j, m + j, c * uy[j]);
        }
        for i in 0..m {
            for j in 0..n {
                block.set(i, m + j, -0.5 * a.get(i, j));
                block.set(m + j, i, -0.5 * a.get(i, j));
            }
        }
        let shift = (0.0f64).max(-linalg::min_eigenvalue(&block));
        let d1: Vec<f64> = ux.iter().map(|&u| c * u + shift).collect();
        let d2: Vec<f64> = uy.iter().map(|&u| c * u + shift).collect();
        // rescaling (αλ, μ/α) preserves feasibility; the balanced bound is
        // 2√(‖d1‖·‖d2‖)
        2.0 * (lp_norm(&d1, qx) * lp_norm(&d2, qy)).sqrt()
    };

    let scale = a.max_abs().max(1e-9) * ((m + n) as f64);
    let (lo, hi) = (scale * 1e-4, scale * 1e2);
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a_log, mut b_log) = (lo.ln(), hi.ln());
    let mut c1 = b_log - phi * (b_log - a_log);
    let mut c2 = a_log + phi * (b_log - a_log);
    let mut f1 = evaluate(c1.exp());
    let mut f2 = evaluate(c2.exp());
    for _ in 0..60 {
        if f1 <= f2 {
            b_log = c2;
            c2 = c1;
            f2 = f1;
            c1 = b_log - phi * (b_log - a_log);
            f1 = evaluate(c1.exp());
        } else {
            a_log = c1;
            c1 = c2;
            f1 = f2;
            c2 = a_log + phi * (b_log - a_log);
            f2 = evaluate(c2.exp());
        }
    }
    evaluate((0.5 * (a_log + b_log)).exp()).min(f1).min(f2)
}

/// Best local optimum over products of S^{r−1} at fixed small rank.
/// r = 1 runs greedy ±1 local search; this is a heuristic lower bound.
pub fn solve_rank_r(
    a: &DenseMatrix,
    mask: &EdgeMask,
    r: usize,
    restarts: usize,
    seed: u64,
) -> Result<(FactorPair, SolveReport)> {
    if r == 0 {
        return Err(Error::Invalid("rank must be at least 1".into()));
    }
    let n = a.rows();
    if !a.is_square() || mask.n() != n {
        return Err(Error::Invalid(
            "rank-r solver needs a square matrix and matching mask".into(),
        ));
    }
    if r == 1 {
        let mut best: Option<(f64, SignVector)> = None;
        for restart in 0..restarts.max(1) {
            let mut rngs = rng::stream(seed, restart as u64);
            let mut spins = SignVector::new(rng::random_signs(&mut rngs, n)).unwrap();
            let value = greedy_spin_polish(a, mask, &mut spins);
            if best.as_ref().map_or(true, |(bv, _)| value > *bv) {
                best = Some((value, spins));
            }
        }
        let (value, spins) = best.unwrap();
        let mut x = DenseMatrix::zeros(n, 1);
        for i in 0..n {
            x.set(i, 0, spins.get_f64(i));
        }
        let factor = FactorPair {
            left: x.clone(),
            right: x,
            rank: 1,
            value,
        };
        let report = SolveReport {
            value,
            upper_bound: None,
            restarts_used: restarts.max(1),
            iterations: 0,
            converged: true,
            seed,
        };
        return Ok((factor, report));
    }
    let params = SolverParams {
        rank: Some(r),
        restarts,
        tol: 1e-10,
        seed,
    };
    // the attached dual certificate bounds the full-rank program, which
    // dominates the rank-r one, so it stays sound
    Ok(solve_symmetric_at_rank(a, mask, r, params))
}

/// Greedy best-improvement single-spin flips until local optimality.
/// Every accepted flip strictly increases the energy. Returns the energy.
pub fn greedy_spin_polish(a: &DenseMatrix, mask: &EdgeMask, spins: &mut SignVector) -> f64 {
    let n = a.rows();
    let mut local = vec![0.0f64; n];
    for i in 0..n {
        for j in 0..n {
            if mask.contains(i, j) {
                local[i] += a.get(i, j) * spins.get_f64(j);
            }
        }
    }
    let mut energy: f64 = (0..n).map(|i| spins.get_f64(i) * local[i]).sum();
    loop {
        let mut best_gain = 0.0;
        let mut best_idx = None;
        for i in 0..n {
            let gain = -4.0 * spins.get_f64(i) * local[i];
            if gain > best_gain {
                best_gain = gain;
                best_idx = Some(i);
            }
        }
        let Some(flip) = best_idx else { break };
        energy += best_gain;
        let old = spins.get_f64(flip);
        for i in 0..n {
            if mask.contains(i, flip) {
                local[i] -= 2.0 * a.get(i, flip) * old;
            }
        }
        spins.flip(flip);
    }
    energy
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles;
    use rand::Rng;

    #[test]
    fn bilinear_one_by_one() {
        let a = DenseMatrix::new(1, 1, vec![1.0]).unwrap();
        let (f, rep) = solve_bilinear(&a, SolverParams::with_seed(1));
        assert!((f.value - 1.0).abs() < 1e-8);
        assert!(rep.upper_bound.unwrap() <= 1.0 + 1e-7);
    }

    #[test]
    fn bilinear_checkerboard_is_four() {
        let a = DenseMatrix::new(2, 2, vec![1.0, -1.0, -1.0, 1.0]).unwrap();
        let (f, rep) = solve_bilinear(&a, SolverParams::with_seed(3));
        assert!((f.value - 4.0).abs() < 1e-6, "{}", f.value);
        let ub = rep.upper_bound.unwrap();
        assert!(ub >= f.value - 1e-9 && ub <= 4.0 + 1e-6, "{ub}");
    }

    #[test]
    fn sandwich_with_oracle_on_random_integers() {
        let mut rng = crate::rng::stream(99, 0);
        for trial in 0..6 {
            let (m, n) = (rng.gen_range(2..=5), rng.gen_range(2..=5));
            let entries = (0..m * n).map(|_| rng.gen_range(-3..=3) as f64).collect();
            let a = DenseMatrix::new(m, n, entries).unwrap();
            let inf = oracles::exact_infty1(&a).unwrap().value;
            let (f, rep) = solve_bilinear(&a, SolverParams::with_seed(trial));
            let ub = rep.upper_bound.unwrap();
            assert!(
                f.value >= inf - 1e-6,
                "primal {} below sign optimum {inf}",
                f.value
            );
            assert!(f.value <= ub + 1e-9);
            assert!(
                ub <= crate::constants::KRIVINE_UPPER * inf + 1e-4,
                "ub {ub} inf {inf}"
            );
        }
    }

    #[test]
    fn feasibility_of_returned_rows() {
        let a = DenseMatrix::new(3, 4, vec![1.0; 12]).unwrap();
        let (f, _) = solve_bilinear(&a, SolverParams::with_seed(7));
        for i in 0..3 {
            assert!((linalg::norm2(f.left.row(i)) - 1.0).abs() < 1e-9);
        }
        for j in 0..4 {
            assert!((linalg::norm2(f.right.row(j)) - 1.0).abs() < 1e-9);
        }
        let recomputed = bilinear_objective(&a, &f.left, &f.right);
        assert!((recomputed - f.value).abs() < 1e-9);
    }

    #[test]
    fn symmetric_two_vertices() {
        let a = DenseMatrix::new(2, 2, vec![0.0, 1.0, 1.0, 0.0]).unwrap();
        let (f, rep) =
            solve_symmetric(&a, &EdgeMask::complete(2), SolverParams::with_seed(2)).unwrap();
        assert!((f.value - 2.0).abs() < 1e-7);
        assert!(rep.upper_bound.unwrap() <= 2.0 + 1e-6);
    }

    #[test]
    fn symmetric_frustrated_triangle() {
        // all-(−1) triangle: optimum spreads the vectors at 120°, giving
        // −2·3·(−1/2) = 3 for the ordered-pair objective
        let t = DenseMatrix::new(
            3,
            3,
            vec![0.0, -1.0, -1.0, -1.0, 0.0, -1.0, -1.0, -1.0, 0.0],
        )
        .unwrap();
        let (f, rep) =
            solve_symmetric(&t, &EdgeMask::complete(3), SolverParams::with_seed(5)).unwrap();
        assert!((f.value - 3.0).abs() < 1e-6, "{}", f.value);
        assert!(rep.upper_bound.unwrap() <= 3.0 + 1e-6);
    }

    #[test]
    fn rank_monotone_and_full_rank_agrees() {
        let t = DenseMatrix::new(
            3,
            3,
            vec![0.0, -1.0, -1.0, -1.0, 0.0, -1.0, -1.0, -1.0, 0.0],
        )
        .unwrap();
        let mask = EdgeMask::complete(3);
        let mut prev = f64::NEG_INFINITY;
        for r in 1..=3 {
            let (f, _) = solve_rank_r(&t, &mask, r, 16, 11).unwrap();
            assert!(f.value >= prev - 1e-7, "rank {r}: {} < {prev}", f.value);
            prev = f.value;
        }
        // r = 1 equals the spin oracle; r = 3 reaches the full optimum
        let gs = oracles::exact_ground_state(&t, &mask).unwrap().value;
        let (f1, _) = solve_rank_r(&t, &mask, 1, 16, 11).unwrap();
        assert_eq!(f1.value, gs);
        let (f3, _) = solve_rank_r(&t, &mask, 3, 16, 11).unwrap();
        assert!((f3.value - 3.0).abs() < 1e-6);
    }

    #[test]
    fn lp_ball_p2_matches_top_eigenvalue() {
        let a = DenseMatrix::new(2, 2, vec![0.0, 1.0, 1.0, 0.0]).unwrap();
        let (f, rep) = solve_lp_ball(&a, 2.0, SolverParams::with_seed(4)).unwrap();
        assert!((f.value - 1.0).abs() < 1e-6, "{}", f.value);
        assert!(rep.upper_bound.unwrap() <= 1.0 + 1e-6);
        assert!(solve_lp_ball(&a, 1.5, SolverParams::with_seed(4)).is_err());
    }

    #[test]
    fn lp_ball_large_p_approaches_two() {
        let a = DenseMatrix::new(2, 2, vec![0.0, 1.0, 1.0, 0.0]).unwrap();
        let (f, _) = solve_lp_ball(&a, 64.0, SolverParams::with_seed(4)).unwrap();
        // analytic optimum t₁ = t₂ = 2^{−1/p}
        let expected = 2.0 * (0.5f64).powf(2.0 / 64.0);
        assert!(
            (f.value - expected).abs() < 1e-5,
            "{} vs {expected}",
            f.value
        );
        // ball feasibility of the returned factor
        let norm: f64 = f.magnitudes.iter().map(|t| t.powf(64.0)).sum::<f64>();
        assert!(norm <= 1.0 + 1e-9);
        assert!(f.magnitudes.iter().all(|&t| t >= 0.0));
    }

    #[test]
    fn bilinear_lp_p2_both_sides_is_sigma_max() {
        let a = DenseMatrix::new(2, 3, vec![1.0, 2.0, 0.0, -1.0, 1.0, 3.0]).unwrap();
        let (fx, _fy, rep) = solve_bilinear_lp(
            &a,
            SideConstraint::SumLp(2.0),
            SideConstraint::SumLp(2.0),
            SolverParams::with_seed(6),
        );
        let smax = linalg::largest_singular_value(&a, 1e-12);
        assert!((fx.value - smax).abs() < 1e-6, "{} vs {smax}", fx.value);
        let ub = rep.upper_bound.unwrap();
        assert!(ub >= smax - 1e-8 && ub <= smax + 1e-4, "{ub} vs {smax}");
    }

    #[test]
    fn bilinear_lp_per_row_matches_sphere_program() {
        let a = DenseMatrix::new(2, 2, vec![1.0, -1.0, -1.0, 1.0]).unwrap();
        let (fx, fy, _) = solve_bilinear_lp(
            &a,
            SideConstraint::PerRow,
            SideConstraint::PerRow,
            SolverParams::with_seed(9),
        );
        assert!((fx.value - 4.0).abs() < 1e-6, "{}", fx.value);
        assert!(fx.magnitudes.iter().all(|&t| t <= 1.0 + 1e-9));
        assert!(fy.magnitudes.iter().all(|&t| t <= 1.0 + 1e-9));
    }

    #[test]
    fn ascent_is_deterministic() {
        let a =
            DenseMatrix::new(3, 3, vec![1.0, 2.0, -1.0, 0.0, 1.0, 3.0, -2.0, 1.0, 1.0]).unwrap();
        let (f1, r1) = solve_bilinear(&a, SolverParams::with_seed(42));
        let (f2, r2) = solve_bilinear(&a, SolverParams::with_seed(42));
        assert_eq!(f1.value.to_bits(), f2.value.to_bits());
        assert_eq!(
            r1.upper_bound.unwrap().to_bits(),
            r2.upper_bound.unwrap().to_bits()
        );
    }
}
