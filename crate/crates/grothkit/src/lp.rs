//! lp quadratic maximization: the Gaussian moment constants γ_p, the
//! convex relaxation bracket for p ≥ 2, exhaustive grid search for p = 1,
//! and the bilinear p→r operator norm bracket.
//!
//! The interval p ∈ (1, 2) is deliberately unsupported beyond the exact
//! oracle: the ball-sum constraint stops being convex there and no
//! constant-factor method is known.

use crate::constants;
use crate::error::{Error, Result};
use crate::linalg;
use crate::rng;
use crate::sdp::{self, SideConstraint, SolveReport, SolverParams};
use crate::types::DenseMatrix;

/// γ_p = (E|G|^p)^{1/p} for a standard Gaussian G, with its square — the
/// sharp approximation ratio of the lp relaxation for p ≥ 2.
#[derive(Debug, Clone, Copy)]
pub struct GammaTable {
    pub p: f64,
    pub gamma_p: f64,
    pub gamma_p_squared: f64,
}

/// γ_p = √2·(Γ((p+1)/2)/√π)^{1/p} via the Lanczos log-gamma.
pub fn gamma(p: f64) -> Result<GammaTable> {
    if !(p >= 1.0) {
        return Err(Error::Regime(format!("gamma table needs p >= 1, got {p}")));
    }
    // the second moment is exactly 1
    let gamma_p = if p == 2.0 {
        1.0
    } else {
        let ln = 0.5 * std::f64::consts::LN_2
            + (ln_gamma((p + 1.0) / 2.0) - 0.5 * std::f64::consts::PI.ln()) / p;
        ln.exp()
    };
    Ok(GammaTable {
        p,
        gamma_p,
        gamma_p_squared: gamma_p * gamma_p,
    })
}

/// Lanczos approximation (g = 7, 9 coefficients), relative error below
/// 1e−13 on the positive axis.
pub fn ln_gamma(x: f64) -> f64 {
    const COEFFS: [f64; 9] = [
        0.999_999_999_999_809_93,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_13,
        -176.615_029_162_140_6,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_572e-6,
        1.505_632_735_149_311_6e-7,
    ];
    if x < 0.5 {
        // reflection
        return std::f64::consts::PI.ln()
            - (std::f64::consts::PI * x).sin().ln()
            - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut acc = COEFFS[0];
    for (i, &c) in COEFFS.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + 7.5;
    0.5 * (2.0 * std::f64::consts::PI).ln() + (x + 0.5) * t.ln() - t + acc.ln()
}

/// Independent check of γ_p: composite Simpson quadrature of
/// E|G|^p = 2∫₀^∞ x^p φ(x) dx, then the p-th root.
pub fn gamma_by_quadrature(p: f64) -> f64 {
    let integrand = |x: f64| x.powf(p) * (-x * x / 2.0).exp();
    let n = 400_000;
    let (a, b) = (0.0, 16.0);
    let h = (b - a) / n as f64;
    let mut total = integrand(a) + integrand(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        total += w * integrand(a + h * i as f64);
    }
    let moment = total * h / 3.0 * 2.0 / (2.0 * std::f64::consts::PI).sqrt();
    moment.powf(1.0 / p)
}

#[derive(Debug, Clone)]
pub struct MpBracket {
    /// Value of the rounded feasible point (best of trials).
    pub value_lower: f64,
    /// Certified upper bound on the relaxation, hence on γ_p²·M_p slack.
    pub value_upper: f64,
    /// Relaxation value reached by the solver (lower bound on the
    /// relaxation itself).
    pub relaxation: f64,
    pub t_witness: Vec<f64>,
    pub report: SolveReport,
}

/// Bracket M_p(A) for p ≥ 2: the convex relaxation gives the upper side;
/// Gaussian projection of the relaxation vectors, renormalized to the lp
/// sphere, gives a feasible witness for the lower side.
pub fn mp_approx(
    a: &DenseMatrix,
    p: f64,
    trials: usize,
    restarts: usize,
    seed: u64,
) -> Result<MpBracket> {
    if p < 2.0 {
        return Err(Error::Regime(
            "mp_approx requires p >= 2; p = 1 has the grid search (mp_alon_p1) and p in (1,2) is an open regime".into(),
        ));
    }
    a.require_zero_diagonal()?;
    let n = a.rows();
    let params = SolverParams {
        restarts,
        seed,
        ..SolverParams::default()
    };
    let (factor, report) = sdp::solve_lp_ball(a, p, params)?;
    let value_upper = report.upper_bound.expect("lp-ball solve always certifies");

    // x_i = t_i·d_i; rounding draws g, sets t_i = ⟨g, x_i⟩ and renormalizes
    let rank = factor.directions.cols();
    let mut g = vec![0.0; rank];
    let mut best_value = f64::NEG_INFINITY;
    let mut best_t = vec![0.0; n];
    for trial in 0..trials.max(1) {
        let mut r = rng::stream(seed, trial as u64);
        rng::fill_normal(&mut r, &mut g);
        let mut t: Vec<f64> = (0..n)
            .map(|i| factor.magnitudes[i] * linalg::dot(factor.directions.row(i), &g))
            .collect();
        let norm = lp_norm(&t, p);
        if norm < 1e-100 {
            continue;
        }
        for v in t.iter_mut() {
            *v /= norm;
        }
        let value = a.quadratic(&t);
        if value > best_value {
            best_value = value;
            best_t = t;
        }
    }
    if best_value == f64::NEG_INFINITY {
        // degenerate relaxation (all magnitudes vanished): any basis
        // vector is a feasible witness worth its diagonal entry, i.e. 0
        best_value = 0.0;
        best_t = vec![0.0; n];
        best_t[0] = 1.0;
    }
    Ok(MpBracket {
        value_lower: best_value,
        value_upper,
        relaxation: factor.value,
        t_witness: best_t,
        report,
    })
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

#[derive(Debug, Clone)]
pub struct GridSearchResult {
    pub value: f64,
    /// Witness on the (1/m)-grid inside the ℓ₁ ball.
    pub t_witness: Vec<f64>,
    pub m: usize,
}

/// Exhaustive search over vectors with entries in (1/m)·Z and ℓ₁ norm at
/// most 1; the best such vector is within a factor 1 − 1/m of M₁(A).
pub fn mp_alon_p1(a: &DenseMatrix, m: usize) -> Result<GridSearchResult> {
    a.require_zero_diagonal()?;
    if m == 0 {
        return Err(Error::Invalid("grid parameter m must be positive".into()));
    }
    let n = a.rows();
    let budget = (n as f64).powi(m as i32);
    if budget > 1e7 {
        return Err(Error::Budget(format!(
            "grid search needs n^m <= 1e7, got {budget:.3e}"
        )));
    }

    // depth-first over integer vectors z with Σ|z_i| ≤ m, maintaining the
    // quadratic form incrementally through the field of already-assigned
    // coordinates
    struct Dfs<'a> {
        a: &'a DenseMatrix,
        n: usize,
        m: i64,
        z: Vec<i64>,
        field: Vec<f64>, // Σ_assigned z_i·(a_ij + a_ji)
        acc: f64,
        best: f64,
        best_z: Vec<i64>,
    }
    impl Dfs<'_> {
        fn run(&mut self, idx: usize, remaining: i64) {
            if idx == self.n {
                if self.acc > self.best {
                    self.best = self.acc;
                    self.best_z = self.z.clone();
                }
                return;
            }
            for v in -remaining..=remaining {
                self.z[idx] = v;
                if v == 0 {
                    self.run(idx + 1, remaining);
                } else {
                    let vf = v as f64;
                    let acc_save = self.acc;
                    self.acc += vf * self.field[idx];
                    let mut deltas = Vec::with_capacity(self.n);
                    for j in 0..self.n {
                        let d = vf * (self.a.get(idx, j) + self.a.get(j, idx));
                        deltas.push(d);
                        self.field[j] += d;
                    }
                    self.run(idx + 1, remaining - v.abs());
                    for (j, d) in deltas.into_iter().enumerate() {
                        self.field[j] -= d;
                    }
                    self.acc = acc_save;
                }
            }
            self.z[idx] = 0;
        }
    }
    let mut dfs = Dfs {
        a,
        n,
        m: m as i64,
        z: vec![0; n],
        field: vec![0.0; n],
        acc: 0.0,
        best: 0.0,
        best_z: vec![0; n],
    };
    let budget_m = dfs.m;
    dfs.run(0, budget_m);
    // the form is even; canonicalize the witness sign
    if dfs.best_z.iter().find(|&&z| z != 0).is_some_and(|&z| z < 0) {
        for z in dfs.best_z.iter_mut() {
            *z = -*z;
        }
    }
    let mf = m as f64;
    let t_witness: Vec<f64> = dfs.best_z.iter().map(|&z| z as f64 / mf).collect();
    Ok(GridSearchResult {
        value: dfs.best / (mf * mf),
        t_witness,
        m,
    })
}

#[derive(Debug, Clone)]
pub struct OpNormBracket {
    /// Sound bracket on the p→r operator norm.
    pub lower: f64,
    pub upper: f64,
    /// Relaxation value (feasible point) and its certificate.
    pub relaxation: f64,
    pub relaxation_upper: f64,
    pub q: f64,
    pub report: SolveReport,
}

/// Bracket the operator norm of A from ℓ_p to ℓ_r for p ≥ 2 ≥ r ≥ 1: the
/// vector relaxation with side exponents (p, q = r/(r−1)) dominates the
/// norm and exceeds it by at most the proven rounding constant K, so the
/// norm lies in [relaxation/K, relaxation].
pub fn opnorm_p_to_r(
    a: &DenseMatrix,
    p: f64,
    r: f64,
    restarts: usize,
    seed: u64,
) -> Result<OpNormBracket> {
    if !(p >= 2.0) {
        return Err(Error::Regime(format!(
            "operator norm bracket needs p >= 2, got {p}"
        )));
    }
    if !(1.0..=2.0).contains(&r) {
        return Err(Error::Regime(format!(
            "operator norm bracket needs 1 <= r <= 2, got {r}"
        )));
    }
    let q = if r == 1.0 {
        f64::INFINITY
    } else {
        r / (r - 1.0)
    };
    let cx = SideConstraint::from_exponent(p)?;
    let cy = SideConstraint::from_exponent(q)?;
    let params = SolverParams {
        restarts,
        seed,
        ..SolverParams::default()
    };
    let (fx, _fy, report) = sdp::solve_bilinear_lp(a, cx, cy, params);
    let relaxation = fx.value;
    let relaxation_upper = report
        .upper_bound
        .expect("bilinear lp solve always certifies");
    Ok(OpNormBracket {
        lower: relaxation / constants::KRIVINE_UPPER,
        upper: relaxation_upper,
        relaxation,
        relaxation_upper,
        q,
        report,
    })
}

#[derive(Debug, Clone)]
#[allow(clippy::large_enum_variant)]
pub enum LpAnswer {
    Bracket(MpBracket),
    Grid(GridSearchResult),
}

/// Route an lp request by exponent: p = 1 → grid search, p ≥ 2 → convex
/// bracket, p ∈ (1, 2) → unsupported-regime error.
pub fn lp_dispatch(
    a: &DenseMatrix,
    p: f64,
    m: usize,
    trials: usize,
    restarts: usize,
    seed: u64,
) -> Result<LpAnswer> {
    if p == 1.0 {
        return Ok(LpAnswer::Grid(mp_alon_p1(a, m)?));
    }
    if p < 2.0 {
        return Err(Error::Regime(format!(
            "p in (1,2) is unsupported: the ball constraint is non-convex and no constant-factor method is known (got p = {p})"
        )));
    }
    Ok(LpAnswer::Bracket(mp_approx(a, p, trials, restarts, seed)?))
}
