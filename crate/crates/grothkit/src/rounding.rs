//! Sign rounding of relaxation solutions.
//!
//! The two-step scheme: first transform the solution vectors so that the
//! cross inner products become sin(β⟨x_i, y_j⟩) (diagonal blocks take
//! sinh), which is a positive semidefinite Gram matrix realized through a
//! Cholesky factor; then round with a single Gaussian hyperplane. The sign
//! product then has expectation (2/π)·arcsin(sin(β⟨x,y⟩)) = c·⟨x,y⟩, so
//! the rounded bilinear value equals c times the relaxation value in
//! expectation, with c = 2·ln(1+√2)/π.

use crate::constants;
use crate::error::{Error, Result};
use crate::linalg;
use crate::rng;
use crate::types::{DenseMatrix, SignVector};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SchemeKind {
    /// Half-line partition of the reals; the scheme behind the proven
    /// constant.
    Sign1d,
    /// Planar partition under/over the degree-5 polynomial
    /// y = c(x⁵ − 10x³ + 15x). Experimental: the constant c is a free
    /// parameter and no guarantee is attached.
    Poly5 { c: f64 },
}

#[derive(Debug, Clone, Copy)]
pub struct RoundingScheme {
    pub kind: SchemeKind,
    pub beta: f64,
    pub c: f64,
    pub dimension: usize,
}

impl RoundingScheme {
    pub fn sign_1d() -> Self {
        Self {
            kind: SchemeKind::Sign1d,
            beta: constants::BETA,
            c: constants::KRIVINE_C,
            dimension: 1,
        }
    }

    /// Experimental planar scheme with a caller-supplied constant.
    pub fn poly5(c: f64) -> Self {
        Self {
            kind: SchemeKind::Poly5 { c },
            beta: f64::NAN,
            c: f64::NAN,
            dimension: 2,
        }
    }

    /// Partition sign at a point (the odd ±1-valued function of the scheme).
    pub fn sign_at(&self, point: &[f64]) -> f64 {
        match self.kind {
            SchemeKind::Sign1d => {
                if point[0] >= 0.0 {
                    1.0
                } else {
                    -1.0
                }
            }
            SchemeKind::Poly5 { c } => {
                let x = point[0];
                let curve = c * (x.powi(5) - 10.0 * x.powi(3) + 15.0 * x);
                if point[1] >= curve {
                    1.0
                } else {
                    -1.0
                }
            }
        }
    }
}

/// Unit vectors produced by the preprocessing step; rows of a Cholesky
/// factor of the sinh/sin Gram matrix.
#[derive(Debug, Clone)]
pub struct PreprocessedVectors {
    pub u: DenseMatrix,
    pub v: DenseMatrix,
}

/// Build the (m+n)×(m+n) Gram matrix with blocks sinh(β⟨x,x'⟩),
/// sin(β⟨x,y⟩), sinh(β⟨y,y'⟩), verify it is positive semidefinite up to
/// −1e−8, repair rounding with a diagonal shift, and return Cholesky rows.
pub fn preprocess(
    x: &DenseMatrix,
    y: &DenseMatrix,
    scheme: &RoundingScheme,
) -> Result<PreprocessedVectors> {
    if scheme.kind != SchemeKind::Sign1d {
        return Err(Error::Regime(
            "preprocessing is only defined for the sign scheme; experimental schemes are exposed through estimate_h only".into(),
        ));
    }
    if x.cols() != y.cols() {
        return Err(Error::Invalid("factor ranks differ".into()));
    }
    let beta = scheme.beta;
    let (m, n) = (x.rows(), y.rows());
    let d = m + n;
    let mut gram = DenseMatrix::zeros(d, d);
    let entry =
        |a: &DenseMatrix, i: usize, b: &DenseMatrix, j: usize| linalg::dot(a.row(i), b.row(j));
    for i in 0..m {
        for j in 0..m {
            gram.set(i, j, (beta * entry(x, i, x, j)).sinh());
        }
    }
    for i in 0..n {
        for j in 0..n {
            gram.set(m + i, m + j, (beta * entry(y, i, y, j)).sinh());
        }
    }
    for i in 0..m {
        for j in 0..n {
            let s = (beta * entry(x, i, y, j)).sin();
            gram.set(i, m + j, s);
            gram.set(m + j, i, s);
        }
    }

    let lam_min = linalg::min_eigenvalue(&gram);
    if lam_min < -1e-8 {
        return Err(Error::NotPsd(format!(
            "preprocessing Gram matrix has eigenvalue {lam_min}"
        )));
    }
    let mut shift = (0.0f64).max(-lam_min) + 1e-12;
    let factor = loop {
        let mut shifted = gram.clone();
        for i in 0..d {
            shifted.set(i, i, gram.get(i, i) + shift);
        }
        match linalg::cholesky(&shifted) {
            Ok(l) => break l,
            Err(_) if shift < 1e-4 => shift *= 10.0,
            Err(e) => return Err(e),
        }
    };

    let mut u = DenseMatrix::zeros(m, d);
    let mut v = DenseMatrix::zeros(n, d);
    for i in 0..m {
        let mut row: Vec<f64> = factor.row(i).to_vec();
        linalg::normalize(&mut row);
        for (k, &val) in row.iter().enumerate() {
            u.set(i, k, val);
        }
    }
    for j in 0..n {
        let mut row: Vec<f64> = factor.row(m + j).to_vec();
        linalg::normalize(&mut row);
        for (k, &val) in row.iter().enumerate() {
            v.set(j, k, val);
        }
    }
    Ok(PreprocessedVectors { u, v })
}

#[derive(Debug, Clone)]
pub struct RoundOutcome {
    pub best_rows: SignVector,
    pub best_cols: SignVector,
    pub best_value: f64,
    pub mean_value: f64,
    pub stderr: f64,
}

/// Hyperplane rounding of preprocessed vectors: one standard Gaussian
/// vector per trial, ε_i = sign⟨g, u_i⟩, δ_j = sign⟨g, v_j⟩. Returns the
/// best trial together with the Monte-Carlo mean and standard error of the
/// objective. Zero inner products resolve to +1.
pub fn round_signs(
    a: &DenseMatrix,
    pre: &PreprocessedVectors,
    trials: usize,
    seed: u64,
) -> RoundOutcome {
    assert!(trials >= 1, "at least one trial required");
    assert_eq!(a.rows(), pre.u.rows());
    assert_eq!(a.cols(), pre.v.rows());
    let d = pre.u.cols();
    let mut g = vec![0.0; d];
    let mut best: Option<(f64, SignVector, SignVector)> = None;
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for trial in 0..trials {
        let mut r = rng::stream(seed, trial as u64);
        rng::fill_normal(&mut r, &mut g);
        let eps = project_signs(&pre.u, &g);
        let del = project_signs(&pre.v, &g);
        let value = a.bilinear(&eps, &del);
        sum += value;
        sum_sq += value * value;
        if best.as_ref().map_or(true, |(bv, _, _)| value > *bv) {
            best = Some((value, eps, del));
        }
    }
    let (best_value, best_rows, best_cols) = best.unwrap();
    let (mean_value, stderr) = mean_stderr(sum, sum_sq, trials);
    RoundOutcome {
        best_rows,
        best_cols,
        best_value,
        mean_value,
        stderr,
    }
}

#[derive(Debug, Clone)]
pub struct SymmetricRoundOutcome {
    pub spins: SignVector,
    pub value: f64,
    pub mean_value: f64,
    pub stderr: f64,
}

/// Plain hyperplane rounding of a single vector set (no preprocessing);
/// the mean objective is (2/π)·Σ a_ij arcsin⟨x_i, x_j⟩.
pub fn round_signs_symmetric(
    x: &DenseMatrix,
    a: &DenseMatrix,
    trials: usize,
    seed: u64,
) -> SymmetricRoundOutcome {
    assert!(trials >= 1);
    assert_eq!(a.rows(), x.rows());
    let d = x.cols();
    let mut g = vec![0.0; d];
    let mut best: Option<(f64, SignVector)> = None;
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for trial in 0..trials {
        let mut r = rng::stream(seed, trial as u64);
        rng::fill_normal(&mut r, &mut g);
        let eps = project_signs(x, &g);
        let value = a.bilinear(&eps, &eps);
        sum += value;
        sum_sq += value * value;
        if best.as_ref().map_or(true, |(bv, _)| value > *bv) {
            best = Some((value, eps));
        }
    }
    let (value, spins) = best.unwrap();
    let (mean_value, stderr) = mean_stderr(sum, sum_sq, trials);
    SymmetricRoundOutcome {
        spins,
        value,
        mean_value,
        stderr,
    }
}

fn project_signs(rows: &DenseMatrix, g: &[f64]) -> SignVector {
    let values: Vec<i8> = (0..rows.rows())
        .map(|i| {
            if linalg::dot(rows.row(i), g) >= 0.0 {
                1
            } else {
                -1
            }
        })
        .collect();
    SignVector::new(values).unwrap()
}

fn mean_stderr(sum: f64, sum_sq: f64, n: usize) -> (f64, f64) {
    let mean = sum / n as f64;
    if n < 2 {
        return (mean, 0.0);
    }
    let var = ((sum_sq - sum * sum / n as f64) / (n as f64 - 1.0)).max(0.0);
    (mean, (var / n as f64).sqrt())
}

/// Monte-Carlo estimate of the scheme correlation function
/// H(t) = E[f(G₁/√2)·g((tG₁ + √(1−t²)G₂)/√2)] with its standard error.
/// Research hook; for the sign scheme H(t) = (2/π)·arcsin t.
pub fn estimate_h(scheme: &RoundingScheme, t: f64, samples: usize, seed: u64) -> (f64, f64) {
    assert!(t > -1.0 && t < 1.0, "t must lie in (-1, 1)");
    assert!(samples >= 1);
    let k = scheme.dimension;
    let comp = (1.0 - t * t).sqrt();
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    let mut g1 = vec![0.0; k];
    let mut g2 = vec![0.0; k];
    let mut p1 = vec![0.0; k];
    let mut p2 = vec![0.0; k];
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    let mut r = rng::stream(seed, 0);
    for _ in 0..samples {
        rng::fill_normal(&mut r, &mut g1);
        rng::fill_normal(&mut r, &mut g2);
        for i in 0..k {
            p1[i] = inv_sqrt2 * g1[i];
            p2[i] = inv_sqrt2 * (t * g1[i] + comp * g2[i]);
        }
        let prod = scheme.sign_at(&p1) * scheme.sign_at(&p2);
        sum += prod;
        sum_sq += prod * prod;
    }
    mean_stderr(sum, sum_sq, samples)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles;
    use crate::sdp::{self, SolverParams};
    use rand::Rng;

    fn unit_rows_from(entries: Vec<Vec<f64>>) -> DenseMatrix {
        let rows = entries.len();
        let cols = entries[0].len();
        let mut m = DenseMatrix::zeros(rows, cols);
        for (i, mut row) in entries.into_iter().enumerate() {
            linalg::normalize(&mut row);
            for (k, v) in row.into_iter().enumerate() {
                m.set(i, k, v);
            }
        }
        m
    }

    #[test]
    fn taylor_coefficient_identity() {
        // Σ |a_{2j+1}| c^{2j+1} for the inverse-series coefficients of
        // sin(πz/2) equals sinh(πc/2), which is 1 at the scheme constant
        let c = constants::KRIVINE_C;
        let half_pi = std::f64::consts::FRAC_PI_2;
        let mut total = 0.0;
        let mut term = half_pi * c; // (π/2 · c)^{2j+1} / (2j+1)!
        let mut j = 0u32;
        while term > 1e-18 {
            total += term;
            let k = (2 * j + 2) as f64;
            term *= (half_pi * c) * (half_pi * c) / (k * (k + 1.0));
            j += 1;
        }
        assert!((total - 1.0).abs() < 1e-10, "{total}");
    }

    #[test]
    fn preprocess_hits_the_sin_identity() {
        // aligned pair: ⟨u, v⟩ = sin(β) ≈ 0.771...
        let x = unit_rows_from(vec![vec![1.0, 0.0]]);
        let y_aligned = unit_rows_from(vec![vec![1.0, 0.0]]);
        let pre = preprocess(&x, &y_aligned, &RoundingScheme::sign_1d()).unwrap();
        let inner = linalg::dot(pre.u.row(0), pre.v.row(0));
        assert!((inner - constants::BETA.sin()).abs() < 1e-7);
        assert!((constants::BETA.sin() - 0.7716).abs() < 1e-4);

        // orthogonal pair: ⟨u, v⟩ = sin(0) = 0
        let y_orth = unit_rows_from(vec![vec![0.0, 1.0]]);
        let pre = preprocess(&x, &y_orth, &RoundingScheme::sign_1d()).unwrap();
        assert!(linalg::dot(pre.u.row(0), pre.v.row(0)).abs() < 1e-7);

        // diagonal normalization: ⟨u_i, u_i⟩ = sinh(β) = 1
        assert!((linalg::norm2(pre.u.row(0)) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn preprocess_gram_psd_on_random_configurations() {
        let mut rng = crate::rng::stream(2024, 0);
        for _ in 0..100 {
            let m = rng.gen_range(1..=5);
            let n = rng.gen_range(1..=5);
            let r = rng.gen_range(1..=4);
            let rand_rows = |rng: &mut rand_chacha::ChaCha8Rng, rows: usize| {
                let mut mat = DenseMatrix::zeros(rows, r);
                for i in 0..rows {
                    let mut row = vec![0.0; r];
                    rng::fill_normal(rng, &mut row);
                    linalg::normalize(&mut row);
                    for (k, v) in row.into_iter().enumerate() {
                        mat.set(i, k, v);
                    }
                }
                mat
            };
            let x = rand_rows(&mut rng, m);
            let y = rand_rows(&mut rng, n);
            let pre = preprocess(&x, &y, &RoundingScheme::sign_1d()).unwrap();
            for i in 0..m {
                for j in 0..n {
                    let want = (constants::BETA * linalg::dot(x.row(i), y.row(j))).sin();
                    let got = linalg::dot(pre.u.row(i), pre.v.row(j));
                    assert!((want - got).abs() < 1e-7, "{want} vs {got}");
                }
            }
        }
    }

    #[test]
    fn grothendieck_identity_monte_carlo() {
        // E[sign⟨g,u⟩·sign⟨g,v⟩] = (2/π)·arcsin⟨u,v⟩
        for &target in &[0.5f64, -0.9] {
            let u = unit_rows_from(vec![vec![1.0, 0.0]]);
            let v = unit_rows_from(vec![vec![target, (1.0 - target * target).sqrt()]]);
            let mut sum = 0.0;
            let trials = 100_000;
            let mut sum_sq = 0.0;
            for trial in 0..trials {
                let mut r = crate::rng::stream(31, trial);
                let g = [rng::standard_normal(&mut r), rng::standard_normal(&mut r)];
                let e = if linalg::dot(u.row(0), &g) >= 0.0 {
                    1.0
                } else {
                    -1.0
                };
                let d = if linalg::dot(v.row(0), &g) >= 0.0 {
                    1.0
                } else {
                    -1.0
                };
                sum += e * d;
                sum_sq += 1.0;
            }
            let (mean, se) = mean_stderr(sum, sum_sq, trials as usize);
            let want = 2.0 / std::f64::consts::PI * target.asin();
            assert!((mean - want).abs() < 4.0 * se, "{mean} vs {want} (se {se})");
        }
    }

    #[test]
    fn rounding_mean_matches_scheme_constant() {
        // full pipeline on the checkerboard: E[rounded] = c · SDP = c·4
        let a = DenseMatrix::new(2, 2, vec![1.0, -1.0, -1.0, 1.0]).unwrap();
        let (f, _) = sdp::solve_bilinear(&a, SolverParams::with_seed(8));
        let pre = preprocess(&f.left, &f.right, &RoundingScheme::sign_1d()).unwrap();
        let out = round_signs(&a, &pre, 40_000, 17);
        let want = constants::KRIVINE_C * f.value;
        assert!(
            (out.mean_value - want).abs() < 4.0 * out.stderr.max(1e-9),
            "{} vs {want} (se {})",
            out.mean_value,
            out.stderr
        );
        assert!(out.best_value >= out.mean_value);
    }

    #[test]
    fn antipodal_pair_rounds_deterministically() {
        let a = DenseMatrix::new(2, 2, vec![1.0, -1.0, -1.0, 1.0]).unwrap();
        let x = unit_rows_from(vec![vec![1.0], vec![-1.0]]);
        let out = round_signs_symmetric(&x, &a, 64, 3);
        assert_eq!(out.value, 4.0);
        assert_eq!(out.mean_value, 4.0);
        // all-equal vectors collapse to a single cluster of signs
        let same = unit_rows_from(vec![vec![1.0], vec![1.0]]);
        let out = round_signs_symmetric(&same, &a, 16, 3);
        assert_eq!(out.value, a.total_sum());
    }

    #[test]
    fn symmetric_mean_matches_arcsin_formula() {
        let mut rng = crate::rng::stream(5150, 0);
        let n = 4;
        let entries: Vec<f64> = (0..n * n).map(|_| rng.gen_range(-2..=2) as f64).collect();
        let mut a = DenseMatrix::new(n, n, entries).unwrap();
        a = a.symmetric_part();
        let mut x = DenseMatrix::zeros(n, 3);
        for i in 0..n {
            let mut row = vec![0.0; 3];
            rng::fill_normal(&mut rng, &mut row);
            linalg::normalize(&mut row);
            for (k, v) in row.into_iter().enumerate() {
                x.set(i, k, v);
            }
        }
        let out = round_signs_symmetric(&x, &a, 200_000, 23);
        let mut want = 0.0;
        for i in 0..n {
            for j in 0..n {
                let ip = linalg::dot(x.row(i), x.row(j)).clamp(-1.0, 1.0);
                want += a.get(i, j) * 2.0 / std::f64::consts::PI * ip.asin();
            }
        }
        assert!(
            (out.mean_value - want).abs() < 4.0 * out.stderr.max(1e-9),
            "{} vs {want} (se {})",
            out.mean_value,
            out.stderr
        );
    }

    #[test]
    fn estimate_h_sign_scheme() {
        let scheme = RoundingScheme::sign_1d();
        let (at_zero, se0) = estimate_h(&scheme, 0.0, 50_000, 9);
        assert!(at_zero.abs() <= 4.0 * se0.max(1e-9));
        let (at_half, se) = estimate_h(&scheme, 0.5, 100_000, 9);
        assert!(
            (at_half - 1.0 / 3.0).abs() <= 4.0 * se,
            "{at_half} (se {se})"
        );
        let (near_one, se1) = estimate_h(&scheme, 0.999, 100_000, 9);
        let want = 2.0 / std::f64::consts::PI * 0.999f64.asin();
        assert!(
            (near_one - want).abs() <= 4.0 * se1.max(1e-4),
            "{near_one} vs {want}"
        );
    }

    #[test]
    fn estimate_h_poly5_is_odd_and_bounded() {
        let scheme = RoundingScheme::poly5(0.1);
        let (v, _) = estimate_h(&scheme, 0.5, 20_000, 4);
        assert!(v.abs() <= 1.0);
        let (z, se) = estimate_h(&scheme, 0.0, 50_000, 4);
        assert!(z.abs() <= 4.0 * se.max(1e-9));
    }

    #[test]
    fn end_to_end_constant_on_integer_matrices() {
        // best-of-256 rounded value is at least infty1/K − 1e−6
        let mut rng = crate::rng::stream(314, 0);
        for case in 0..5 {
            let (m, n) = (rng.gen_range(2..=5), rng.gen_range(2..=5));
            let entries = (0..m * n).map(|_| rng.gen_range(-3..=3) as f64).collect();
            let a = DenseMatrix::new(m, n, entries).unwrap();
            let inf = oracles::exact_infty1(&a).unwrap().value;
            let (f, _) = sdp::solve_bilinear(&a, SolverParams::with_seed(case));
            let pre = preprocess(&f.left, &f.right, &RoundingScheme::sign_1d()).unwrap();
            let out = round_signs(&a, &pre, 256, case);
            assert!(
                out.best_value >= inf / constants::KRIVINE_UPPER - 1e-6,
                "best {} infty1 {inf}",
                out.best_value
            );
        }
    }
}
