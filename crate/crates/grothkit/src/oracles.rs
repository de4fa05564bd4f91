//! Exact brute-force computation of every objective the approximation
//! pipelines estimate. These are the ground truth for all ratio tests and
//! deliberately do nothing clever beyond Gray-code incremental updates and
//! closed-form inner maximizations.
//!
//! Enumeration order is fixed and ties between equal-value witnesses are
//! broken towards the lexicographically smallest witness, so results are
//! fully deterministic. On integer-valued inputs the cut-norm and ∞→1
//! oracles accumulate in `i64`, making their values exact.

use crate::error::{Error, Result};
use crate::linalg;
use crate::types::{DenseMatrix, EdgeMask, SignVector, SparseTensor3, SubsetPair};

/// Attaining witness, one variant per problem shape.
#[derive(Debug, Clone)]
pub enum Witness {
    /// Row and column sign vectors (∞→1 norm).
    Signs { rows: SignVector, cols: SignVector },
    /// Row/column subsets (cut norm).
    Subsets(SubsetPair),
    /// Single spin vector (ground states, parity systems).
    Spins(SignVector),
    /// Cluster label per item.
    Assignment(Vec<usize>),
    /// Real vector (lp-ball problems).
    Point(Vec<f64>),
}

#[derive(Debug, Clone)]
pub struct OracleResult {
    pub value: f64,
    pub witness: Witness,
}

const SUBSET_BUDGET_BITS: usize = 26;
const SPIN_BUDGET_BITS: usize = 24;

/// max over S ⊆ rows, T ⊆ cols of |Σ_{S×T} a_ij|.
///
/// The subsets of the smaller dimension are enumerated in Gray-code order;
/// the opposite side is solved in closed form (take all columns whose
/// partial sum is positive, or all whose partial sum is negative).
pub fn exact_cut_norm(a: &DenseMatrix) -> Result<OracleResult> {
    // only the smaller side is enumerated, so that is the budgeted one
    if a.rows().min(a.cols()) > SUBSET_BUDGET_BITS {
        return Err(Error::Budget(format!(
            "cut norm oracle needs min(rows, cols) <= {SUBSET_BUDGET_BITS}, got {}",
            a.rows().min(a.cols())
        )));
    }
    let transposed = a.rows() > a.cols();
    let work = if transposed { a.transpose() } else { a.clone() };
    let (value, pair) = if work.is_integral() {
        let (v, p) = cut_norm_enumerate_int(&work);
        (v as f64, p)
    } else {
        cut_norm_enumerate_f64(&work)
    };
    let pair = if transposed {
        SubsetPair::new(pair.col_set, pair.row_set)
    } else {
        pair
    };
    Ok(OracleResult {
        value,
        witness: Witness::Subsets(pair),
    })
}

fn cut_norm_enumerate_f64(a: &DenseMatrix) -> (f64, SubsetPair) {
    let (m, n) = (a.rows(), a.cols());
    let mut col_sums = vec![0.0f64; n];
    let mut best = 0.0f64;
    let mut best_pair = SubsetPair::new(vec![], vec![]);
    let mut mask: u64 = 0;
    let total: u64 = 1u64 << m;
    for k in 0..total {
        if k > 0 {
            let bit = k.trailing_zeros() as usize;
            mask ^= 1 << bit;
            let sign = if mask >> bit & 1 == 1 { 1.0 } else { -1.0 };
            for (j, c) in col_sums.iter_mut().enumerate() {
                *c += sign * a.get(bit, j);
            }
        }
        let pos: f64 = col_sums.iter().filter(|&&c| c > 0.0).sum();
        let neg: f64 = -col_sums.iter().filter(|&&c| c < 0.0).sum::<f64>();
        for (v, keep_positive) in [(pos, true), (neg, false)] {
            if v > best || (v == best && k > 0) {
                let rows: Vec<usize> = (0..m).filter(|&i| mask >> i & 1 == 1).collect();
                let cols: Vec<usize> = (0..n)
                    .filter(|&j| {
                        if keep_positive {
                            col_sums[j] > 0.0
                        } else {
                            col_sums[j] < 0.0
                        }
                    })
                    .collect();
                let pair = SubsetPair::new(rows, cols);
                if v > best || pair.tie_break_key() < best_pair.tie_break_key() {
                    best = v;
                    best_pair = pair;
                }
            }
        }
    }
    (best, best_pair)
}

fn cut_norm_enumerate_int(a: &DenseMatrix) -> (i64, SubsetPair) {
    let (m, n) = (a.rows(), a.cols());
    let ai: Vec<i64> = a.entries().iter().map(|&v| v as i64).collect();
    let mut col_sums = vec![0i64; n];
    let mut best = 0i64;
    let mut best_pair = SubsetPair::new(vec![], vec![]);
    let mut mask: u64 = 0;
    let total: u64 = 1u64 << m;
    for k in 0..total {
        if k > 0 {
            let bit = k.trailing_zeros() as usize;
            mask ^= 1 << bit;
            let sign: i64 = if mask >> bit & 1 == 1 { 1 } else { -1 };
            for (j, c) in col_sums.iter_mut().enumerate() {
                *c += sign * ai[bit * n + j];
            }
        }
        let pos: i64 = col_sums.iter().filter(|&&c| c > 0).sum();
        let neg: i64 = -col_sums.iter().filter(|&&c| c < 0).sum::<i64>();
        for (v, keep_positive) in [(pos, true), (neg, false)] {
            if v >= best {
                let rows: Vec<usize> = (0..m).filter(|&i| mask >> i & 1 == 1).collect();
                let cols: Vec<usize> = (0..n)
                    .filter(|&j| {
                        if keep_positive {
                            col_sums[j] > 0
                        } else {
                            col_sums[j] < 0
                        }
                    })
                    .collect();
                let pair = SubsetPair::new(rows, cols);
                if v > best || pair.tie_break_key() < best_pair.tie_break_key() {
                    best = v;
                    best_pair = pair;
                }
            }
        }
    }
    (best, best_pair)
}

/// max over ε ∈ {−1,1}^m of Σ_j |Σ_i a_ij ε_i|.
///
/// Only the row signs are enumerated (2^m states); the column signs are
/// δ_j = sign of the running column sum, which is optimal in closed form.
pub fn exact_infty1(a: &DenseMatrix) -> Result<OracleResult> {
    if a.rows() > SUBSET_BUDGET_BITS {
        return Err(Error::Budget(format!(
            "infty->1 oracle needs rows <= {SUBSET_BUDGET_BITS}, got {}",
            a.rows()
        )));
    }
    let (m, n) = (a.rows(), a.cols());
    let integral = a.is_integral();
    let ai: Vec<i64> = if integral {
        a.entries().iter().map(|&v| v as i64).collect()
    } else {
        vec![]
    };

    let mut best = f64::NEG_INFINITY;
    let mut best_key: Option<(Vec<i8>, Vec<i8>)> = None;
    let mut mask: u64 = 0; // bit set => ε_i = +1, start all −1

    if integral {
        let mut col_sums = vec![0i64; n];
        for j in 0..n {
            col_sums[j] = -(0..m).map(|i| ai[i * n + j]).sum::<i64>();
        }
        let total: u64 = 1u64 << m;
        for k in 0..total {
            if k > 0 {
                let bit = k.trailing_zeros() as usize;
                mask ^= 1 << bit;
                let sign: i64 = if mask >> bit & 1 == 1 { 2 } else { -2 };
                for (j, c) in col_sums.iter_mut().enumerate() {
                    *c += sign * ai[bit * n + j];
                }
            }
            let v: i64 = col_sums.iter().map(|c| c.abs()).sum();
            consider_signs(
                v as f64,
                mask,
                &col_sums.iter().map(|&c| c as f64).collect::<Vec<_>>(),
                m,
                &mut best,
                &mut best_key,
            );
        }
    } else {
        let mut col_sums = vec![0.0f64; n];
        for j in 0..n {
            col_sums[j] = -(0..m).map(|i| a.get(i, j)).sum::<f64>();
        }
        let total: u64 = 1u64 << m;
        for k in 0..total {
            if k > 0 {
                let bit = k.trailing_zeros() as usize;
                mask ^= 1 << bit;
                let sign = if mask >> bit & 1 == 1 { 2.0 } else { -2.0 };
                for (j, c) in col_sums.iter_mut().enumerate() {
                    *c += sign * a.get(bit, j);
                }
            }
            let v: f64 = col_sums.iter().map(|c| c.abs()).sum();
            consider_signs(v, mask, &col_sums, m, &mut best, &mut best_key);
        }
    }

    let (rows, cols) = best_key.expect("at least one sign vector enumerated");
    Ok(OracleResult {
        value: best,
        witness: Witness::Signs {
            rows: SignVector::new(rows).unwrap(),
            cols: SignVector::new(cols).unwrap(),
        },
    })
}

fn consider_signs(
    v: f64,
    mask: u64,
    col_sums: &[f64],
    m: usize,
    best: &mut f64,
    best_key: &mut Option<(Vec<i8>, Vec<i8>)>,
) {
    if v < *best {
        return;
    }
    let eps: Vec<i8> = (0..m)
        .map(|i| if mask >> i & 1 == 1 { 1 } else { -1 })
        .collect();
    let del: Vec<i8> = col_sums
        .iter()
        .map(|&c| if c >= 0.0 { 1 } else { -1 })
        .collect();
    let replace = v > *best
        || match best_key {
            None => true,
            Some(k) => (&eps, &del) < (&k.0, &k.1),
        };
    if replace {
        *best = v;
        *best_key = Some((eps, del));
    }
}

/// max over ε ∈ {−1,1}^n of Σ_{(i,j) in mask} a_ij ε_i ε_j (ordered pairs,
/// so each undirected edge contributes twice, matching the bilinear form
/// convention used everywhere in this crate).
pub fn exact_ground_state(a: &DenseMatrix, mask: &EdgeMask) -> Result<OracleResult> {
    let n = a.rows();
    if !a.is_square() || mask.n() != n {
        return Err(Error::Invalid(
            "ground state oracle needs square matrix and matching mask".into(),
        ));
    }
    if n > SPIN_BUDGET_BITS {
        return Err(Error::Budget(format!(
            "ground state oracle needs n <= {SPIN_BUDGET_BITS}, got {n}"
        )));
    }
    for i in 0..n {
        if mask.contains(i, i) {
            return Err(Error::Invalid(
                "edge mask must not contain self loops".into(),
            ));
        }
    }

    // local fields L_i = Σ_j m_ij a_ij ε_j; flipping k changes the energy
    // by −4·ε_k·L_k and shifts every other local field.
    let mut spins = SignVector::from_bitmask(0, n); // all −1
    let mut local = vec![0.0f64; n];
    for i in 0..n {
        for j in 0..n {
            if mask.contains(i, j) {
                local[i] += a.get(i, j) * spins.get_f64(j);
            }
        }
    }
    let mut energy: f64 = (0..n).map(|i| spins.get_f64(i) * local[i]).sum();

    let mut best = energy;
    let mut best_spins = spins.clone();
    let total: u64 = 1u64 << n;
    for k in 1..total {
        let bit = k.trailing_zeros() as usize;
        energy -= 4.0 * spins.get_f64(bit) * local[bit];
        let old = spins.get_f64(bit);
        for i in 0..n {
            if mask.contains(i, bit) {
                local[i] -= 2.0 * a.get(i, bit) * old;
            }
        }
        spins.flip(bit);
        if energy > best || (energy == best && spins.values() < best_spins.values()) {
            best = energy;
            best_spins = spins.clone();
        }
    }
    Ok(OracleResult {
        value: best,
        witness: Witness::Spins(best_spins),
    })
}

/// max over σ: {0..n−1} → {0..k−1} of Σ_ij a_ij b_{σ(i)σ(j)}.
pub fn exact_clust(a: &DenseMatrix, b: &DenseMatrix) -> Result<OracleResult> {
    let n = a.rows();
    let k = b.rows();
    if !a.is_square() || !b.is_square() {
        return Err(Error::Invalid(
            "clustering oracle needs square matrices".into(),
        ));
    }
    if !a.is_symmetric(1e-9 * (1.0 + a.max_abs())) {
        return Err(Error::Invalid("input matrix must be symmetric".into()));
    }
    validate_psd(a)?;
    let combos = (k as f64).powi(n as i32);
    if combos > 2e6 {
        return Err(Error::Budget(format!(
            "clustering oracle needs k^n <= 2e6, got {combos:.3e}"
        )));
    }

    let mut sigma = vec![0usize; n];
    let mut best = f64::NEG_INFINITY;
    let mut best_sigma = sigma.clone();
    loop {
        let mut v = 0.0;
        for i in 0..n {
            let r = a.row(i);
            let bi = b.row(sigma[i]);
            for j in 0..n {
                v += r[j] * bi[sigma[j]];
            }
        }
        if v > best {
            best = v;
            best_sigma = sigma.clone();
        }
        // odometer in lexicographic order (last coordinate fastest)
        let mut pos = n;
        while pos > 0 {
            pos -= 1;
            sigma[pos] += 1;
            if sigma[pos] < k {
                break;
            }
            sigma[pos] = 0;
            if pos == 0 {
                return Ok(OracleResult {
                    value: best,
                    witness: Witness::Assignment(best_sigma),
                });
            }
        }
    }
}

/// Shared PSD validation: minimum eigenvalue of the symmetric part must be
/// at least −1e−8 scaled by the trace.
pub fn validate_psd(a: &DenseMatrix) -> Result<()> {
    let sym = a.symmetric_part();
    let trace: f64 = (0..a.rows()).map(|i| a.get(i, i)).sum();
    let lam_min = linalg::min_eigenvalue(&sym);
    if lam_min < -1e-8 * trace.abs().max(1.0) {
        return Err(Error::NotPsd(format!("minimum eigenvalue {lam_min}")));
    }
    Ok(())
}

/// max over ε ∈ {−1,1}^n of Σ a_ijk ε_i ε_j ε_k, together with the implied
/// maximum number of simultaneously satisfiable parity equations
/// N/2 + value/2.
pub fn exact_maxsat3(t: &SparseTensor3) -> Result<(OracleResult, f64)> {
    let n = t.n();
    if n > SPIN_BUDGET_BITS {
        return Err(Error::Budget(format!(
            "parity oracle needs n <= {SPIN_BUDGET_BITS}, got {n}"
        )));
    }
    let entries = t.entries();
    let mut incidence: Vec<Vec<usize>> = vec![Vec::new(); n.max(1)];
    for (e, &(i, j, k, _)) in entries.iter().enumerate() {
        incidence[i].push(e);
        incidence[j].push(e);
        incidence[k].push(e);
    }

    let mut spins = SignVector::from_bitmask(0, n);
    let mut terms: Vec<f64> = entries
        .iter()
        .map(|&(i, j, k, c)| f64::from(c) * spins.get_f64(i) * spins.get_f64(j) * spins.get_f64(k))
        .collect();
    let mut value: f64 = terms.iter().sum();
    let mut best = value;
    let mut best_spins = spins.clone();

    let total: u64 = 1u64 << n;
    for step in 1..total {
        let bit = step.trailing_zeros() as usize;
        for &e in &incidence[bit] {
            value -= 2.0 * terms[e];
            terms[e] = -terms[e];
        }
        spins.flip(bit);
        if value > best || (value == best && spins.values() < best_spins.values()) {
            best = value;
            best_spins = spins.clone();
        }
    }
    let maxsat = entries.len() as f64 / 2.0 + best / 2.0;
    Ok((
        OracleResult {
            value: best,
            witness: Witness::Spins(best_spins),
        },
        maxsat,
    ))
}

/// Default angular resolution of the lp-sphere grid oracle.
pub const MP_GRID_RESOLUTION: usize = 400;

/// max of Σ a_ij t_i t_j over the unit lp ball (zero-diagonal convention).
///
/// p = 2 reduces to the top eigenvalue (shifted power iteration to 1e−10);
/// p = ∞ reduces to the complete-graph ground state; any other p ≥ 1 runs a
/// dense angular grid over the lp sphere followed by coordinate descent
/// polish. The second return value is a proven bound on how far below the
/// true maximum the grid value can sit (0 for the exact routes).
pub fn exact_mp(a: &DenseMatrix, p: f64) -> Result<(OracleResult, f64)> {
    exact_mp_with_resolution(a, p, MP_GRID_RESOLUTION)
}

pub fn exact_mp_with_resolution(
    a: &DenseMatrix,
    p: f64,
    resolution: usize,
) -> Result<(OracleResult, f64)> {
    if p < 1.0 {
        return Err(Error::Regime(format!("lp oracle needs p >= 1, got {p}")));
    }
    a.require_zero_diagonal()?;
    let n = a.rows();

    if p == 2.0 {
        let sym = a.symmetric_part();
        let (lam, vec) = largest_eigenpair(&sym);
        return Ok((
            OracleResult {
                value: lam,
                witness: Witness::Point(vec),
            },
            0.0,
        ));
    }
    if p.is_infinite() {
        let (res, _) = (exact_ground_state(a, &EdgeMask::complete(n))?, ());
        return Ok((res, 0.0));
    }
    if n > 4 {
        return Err(Error::Budget(format!(
            "lp grid oracle needs n <= 4, got {n}"
        )));
    }
    if n == 1 {
        return Ok((
            OracleResult {
                value: 0.0,
                witness: Witness::Point(vec![1.0]),
            },
            0.0,
        ));
    }
    let (value, witness, bound) = grid_sphere_max(a, p, resolution);
    Ok((
        OracleResult {
            value,
            witness: Witness::Point(witness),
        },
        bound,
    ))
}

/// Grid maximum of the quadratic form over the lp *sphere* (no diagonal
/// assumption): for zero-diagonal or positive semidefinite instances this
/// equals the ball maximum. Returns (value, witness, coverage bound).
pub(crate) fn grid_sphere_max(a: &DenseMatrix, p: f64, resolution: usize) -> (f64, Vec<f64>, f64) {
    let n = a.rows();
    // Angular grid over the Euclidean sphere, radially projected to the
    // lp sphere. The objective is even, so the last angle only needs to
    // cover [0, π) — the antipode of every skipped point is visited.
    let dims = n - 1;
    let steps_of = |d: usize| {
        if d + 1 == dims {
            resolution / 2
        } else {
            resolution
        }
    };
    let tables: Vec<(Vec<f64>, Vec<f64>)> = (0..dims)
        .map(|d| {
            let steps = steps_of(d);
            let angle = |c: usize| std::f64::consts::PI * c as f64 / steps as f64;
            let cos: Vec<f64> = (0..steps).map(|c| angle(c).cos()).collect();
            let sin: Vec<f64> = (0..steps).map(|c| angle(c).sin()).collect();
            (cos, sin)
        })
        .collect();

    let mut counters = vec![0usize; dims];
    let mut best_val = f64::NEG_INFINITY;
    let mut best_t = vec![0.0; n];
    let mut x = vec![0.0; n];
    let mut done = false;
    while !done {
        let mut sin_prod = 1.0;
        for d in 0..dims {
            x[d] = sin_prod * tables[d].0[counters[d]];
            sin_prod *= tables[d].1[counters[d]];
        }
        x[n - 1] = sin_prod;
        let norm = lp_norm(&x, p);
        if norm > 0.0 {
            let inv = 1.0 / norm;
            let mut v = 0.0;
            for i in 0..n {
                let r = a.row(i);
                let mut acc = 0.0;
                for j in 0..n {
                    acc += r[j] * x[j];
                }
                v += x[i] * acc;
            }
            let v = v * inv * inv;
            if v > best_val {
                best_val = v;
                best_t = x.iter().map(|&xi| xi * inv).collect();
            }
        }
        let mut d = dims;
        loop {
            if d == 0 {
                done = true;
                break;
            }
            d -= 1;
            counters[d] += 1;
            if counters[d] < steps_of(d) {
                break;
            }
            counters[d] = 0;
        }
    }

    // coordinate-wise polish, step shrinking to 1e−9
    let mut step = 0.1;
    while step > 1e-9 {
        let mut improved = false;
        for i in 0..n {
            for dir in [1.0, -1.0] {
                let mut trial = best_t.clone();
                trial[i] += dir * step;
                let norm = lp_norm(&trial, p);
                if norm == 0.0 {
                    continue;
                }
                for v in trial.iter_mut() {
                    *v /= norm;
                }
                let val = a.quadratic(&trial);
                if val > best_val {
                    best_val = val;
                    best_t = trial;
                    improved = true;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }

    // coverage bound: objective is L-Lipschitz on the sphere with
    // L = 2√n‖A‖_F, the angle chart has Lipschitz constant at most 2n, and
    // any sphere point has a grid angle within (h/2)√dims.
    let h = 2.0 * std::f64::consts::PI / resolution as f64;
    let lip = 2.0 * (n as f64).sqrt() * a.frobenius_sq().sqrt();
    let bound = lip * 2.0 * n as f64 * (h / 2.0) * (dims as f64).sqrt();
    (best_val, best_t, bound)
}

fn lp_norm(t: &[f64], p: f64) -> f64 {
    let sum: f64 = if p.fract() == 0.0 && p <= 64.0 {
        let ip = p as i32;
        t.iter().map(|v| v.abs().powi(ip)).sum()
    } else {
        t.iter().map(|v| v.abs().powf(p)).sum()
    };
    sum.powf(1.0 / p)
}

fn largest_eigenpair(sym: &DenseMatrix) -> (f64, Vec<f64>) {
    let n = sym.rows();
    let shift = 1.0
        + (0..n)
            .map(|i| sym.row(i).iter().map(|v| v.abs()).sum::<f64>())
            .fold(0.0f64, f64::max);
    let mut v: Vec<f64> = (0..n).map(|i| 1.0 + 1e-3 * i as f64).collect();
    linalg::normalize(&mut v);
    let mut w = vec![0.0; n];
    for _ in 0..500_000 {
        for i in 0..n {
            w[i] = linalg::dot(sym.row(i), &v) + shift * v[i];
        }
        let lambda = linalg::dot(&v, &w);
        let mut resid = 0.0;
        for i in 0..n {
            let r = w[i] - lambda * v[i];
            resid += r * r;
        }
        let nw = linalg::norm2(&w);
        if nw == 0.0 {
            break;
        }
        for i in 0..n {
            v[i] = w[i] / nw;
        }
        if resid.sqrt() <= 1e-10 * shift {
            break;
        }
    }
    // report the Rayleigh quotient of the final iterate against the
    // unshifted matrix
    let mut av = vec![0.0; n];
    for i in 0..n {
        av[i] = linalg::dot(sym.row(i), &v);
    }
    (linalg::dot(&v, &av), v)
}

/// Re-evaluate a witness against the instance it came from.
pub fn witness_value(a: &DenseMatrix, witness: &Witness) -> Option<f64> {
    match witness {
        Witness::Signs { rows, cols } => Some(a.bilinear(rows, cols)),
        Witness::Subsets(pair) => Some(a.block_sum(&pair.row_set, &pair.col_set).abs()),
        Witness::Point(t) => Some(a.quadratic(t)),
        _ => None,
    }
}
