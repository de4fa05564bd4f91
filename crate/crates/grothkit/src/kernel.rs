//! Kernel clustering: the quadratic relaxation over unit vectors, the
//! Gaussian-moment cone partitions that round it, minimum enclosing balls
//! of the hypothesis Gram vectors, and the resulting
//! [Clust, (R²/C)·Clust] guarantee bracket.

use crate::error::{Error, Result};
use crate::linalg;
use crate::oracles;
use crate::rng;
use crate::sdp::{self, FactorPair, SolveReport, SolverParams};
use crate::types::{DenseMatrix, EdgeMask};

// ---------------------------------------------------------------------------
// minimum enclosing ball
// ---------------------------------------------------------------------------

/// Smallest ball containing the points: subgradient warm start followed by
/// exact support-set refinement with a KKT check (the optimal center is the
/// circumcenter of at most d+1 support points and lies in their convex
/// hull). Points are rows of equal dimension.
pub fn min_enclosing_ball(points: &[Vec<f64>]) -> (Vec<f64>, f64) {
    assert!(!points.is_empty(), "at least one point required");
    let dim = points[0].len();
    if points.len() == 1 {
        return (points[0].clone(), 0.0);
    }

    // subgradient phase: move towards the farthest point with step 1/(t+1)
    let mut center = vec![0.0; dim];
    for p in points {
        for (c, v) in center.iter_mut().zip(p) {
            *c += v / points.len() as f64;
        }
    }
    for t in 0..1024 {
        let (far, _) = farthest(points, &center);
        let step = 1.0 / (t + 2) as f64;
        for (c, v) in center.iter_mut().zip(&points[far]) {
            *c += step * (v - *c);
        }
    }
    let (_, warm_radius) = farthest(points, &center);
    let scale = points
        .iter()
        .map(|p| linalg::norm2(p))
        .fold(1e-12, f64::max);

    // exact phase: the support set of the optimum has ≤ dim+1 points;
    // enumerate candidate supports, solve for the circumcenter, verify
    // KKT (barycentric coordinates ≥ 0) and feasibility
    let k = points.len();
    let max_support = (dim + 1).min(k);
    let mut best: Option<(f64, Vec<f64>)> = None;
    let mut subset = Vec::new();
    enumerate_subsets(k, max_support, &mut subset, &mut |support| {
        if let Some((c, r)) = circumball(points, support) {
            let feasible = points
                .iter()
                .all(|p| distance(p, &c) <= r + 1e-9 * scale.max(r));
            if feasible && best.as_ref().map_or(true, |(br, _)| r < *br) {
                best = Some((r, c));
            }
        }
    });
    match best {
        Some((r, c)) => (c, r),
        None => (center, warm_radius),
    }
}

fn farthest(points: &[Vec<f64>], center: &[f64]) -> (usize, f64) {
    let mut idx = 0;
    let mut best = -1.0;
    for (i, p) in points.iter().enumerate() {
        let d = distance(p, center);
        if d > best {
            best = d;
            idx = i;
        }
    }
    (idx, best)
}

fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

fn enumerate_subsets(
    k: usize,
    max_size: usize,
    current: &mut Vec<usize>,
    f: &mut impl FnMut(&[usize]),
) {
    fn rec(
        start: usize,
        k: usize,
        max_size: usize,
        current: &mut Vec<usize>,
        f: &mut impl FnMut(&[usize]),
    ) {
        if !current.is_empty() {
            f(current);
        }
        if current.len() == max_size {
            return;
        }
        for next in start..k {
            current.push(next);
            rec(next + 1, k, max_size, current, f);
            current.pop();
        }
    }
    rec(0, k, max_size, current, f);
}

/// Circumcenter of the support points within their affine hull, with the
/// convex-hull (KKT) requirement on the barycentric coordinates.
fn circumball(points: &[Vec<f64>], support: &[usize]) -> Option<(Vec<f64>, f64)> {
    let p0 = &points[support[0]];
    let s = support.len() - 1;
    if s == 0 {
        return Some((p0.clone(), 0.0));
    }
    let dim = p0.len();
    let qs: Vec<Vec<f64>> = support[1..]
        .iter()
        .map(|&i| points[i].iter().zip(p0).map(|(a, b)| a - b).collect())
        .collect();
    let mut gram = DenseMatrix::zeros(s, s);
    let mut rhs = vec![0.0; s];
    for i in 0..s {
        for j in 0..s {
            gram.set(i, j, 2.0 * linalg::dot(&qs[i], &qs[j]));
        }
        rhs[i] = linalg::dot(&qs[i], &qs[i]);
    }
    let lambda = linalg::solve_linear(&gram, &rhs)?;
    // KKT: center must be a convex combination of the support points
    let mu0 = 1.0 - lambda.iter().sum::<f64>();
    if mu0 < -1e-9 || lambda.iter().any(|&l| l < -1e-9) {
        return None;
    }
    let mut center = p0.clone();
    for (l, q) in lambda.iter().zip(&qs) {
        for d in 0..dim {
            center[d] += l * q[d];
        }
    }
    let radius = support
        .iter()
        .map(|&i| distance(&points[i], &center))
        .fold(0.0, f64::max);
    Some((center, radius))
}

// ---------------------------------------------------------------------------
// Gaussian-moment partitions
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PartitionKind {
    /// k = 2: positive/negative half-lines of the reals.
    HalfLine,
    /// k = 3: three planar cones of 120°.
    Propeller,
    /// k = 4: propeller × line (the fourth part is empty); proven optimal.
    PropellerLine,
    /// k ≥ 5: propeller × R^{k−3}; optimality is conjectural.
    PropellerProduct,
}

/// A measurable partition of R^{k−1} together with the Gaussian moment
/// vector of each cell.
#[derive(Debug, Clone)]
pub struct GaussianPartition {
    pub k: usize,
    pub ambient_dim: usize,
    pub kind: PartitionKind,
    pub moments: Vec<Vec<f64>>,
    pub conjectural: bool,
}

/// Planar cone moment magnitude √3/(2√(2π)); squared: 3/(8π).
fn cone_moment_magnitude() -> f64 {
    3f64.sqrt() / (2.0 * (2.0 * std::f64::consts::PI).sqrt())
}

impl GaussianPartition {
    pub fn for_parts(k: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::Invalid("partitions need at least 2 parts".into()));
        }
        let ambient_dim = k - 1;
        if k == 2 {
            let z = 1.0 / (2.0 * std::f64::consts::PI).sqrt();
            return Ok(Self {
                k,
                ambient_dim,
                kind: PartitionKind::HalfLine,
                moments: vec![vec![z], vec![-z]],
                conjectural: false,
            });
        }
        let kind = match k {
            3 => PartitionKind::Propeller,
            4 => PartitionKind::PropellerLine,
            _ => PartitionKind::PropellerProduct,
        };
        let mag = cone_moment_magnitude();
        let mut moments = Vec::with_capacity(k);
        for part in 0..k {
            let mut z = vec![0.0; ambient_dim];
            if part < 3 {
                let phi = 2.0 * std::f64::consts::PI * part as f64 / 3.0;
                z[0] = mag * phi.cos();
                z[1] = mag * phi.sin();
            }
            moments.push(z);
        }
        Ok(Self {
            k,
            ambient_dim,
            kind,
            moments,
            conjectural: k >= 5,
        })
    }

    /// Σ ‖z_i‖², the partition's value C(I_k) under its own moments.
    pub fn moment_value(&self) -> f64 {
        self.moments.iter().map(|z| linalg::dot(z, z)).sum()
    }

    /// Cell index of a point of R^{k−1}; boundary hits resolve to the
    /// lowest part index.
    pub fn assign(&self, w: &[f64]) -> usize {
        debug_assert_eq!(w.len(), self.ambient_dim);
        if self.kind == PartitionKind::HalfLine {
            return if w[0] >= 0.0 { 0 } else { 1 };
        }
        // cone of the largest bisector correlation in the first two
        // coordinates (ties pick the lowest index)
        let mut best_part = 0;
        let mut best_corr = f64::NEG_INFINITY;
        for part in 0..3 {
            let phi = 2.0 * std::f64::consts::PI * part as f64 / 3.0;
            let corr = w[0] * phi.cos() + w[1] * phi.sin();
            if corr > best_corr {
                best_corr = corr;
                best_part = part;
            }
        }
        best_part
    }
}

/// The partition value C(I_k): 1/π for two parts, 9/(8π) for k ≥ 3. The
/// flag is true where optimality of the propeller product is conjectural
/// (k ≥ 5); it is proven for k ∈ {2, 3, 4}.
pub fn partition_constant(k: usize) -> Result<(f64, bool)> {
    if k < 2 {
        return Err(Error::Invalid("partition constant needs k >= 2".into()));
    }
    let pi = std::f64::consts::PI;
    Ok(match k {
        2 => (1.0 / pi, false),
        3 | 4 => (9.0 / (8.0 * pi), false),
        _ => (9.0 / (8.0 * pi), true),
    })
}

/// Independent numerical-integration oracle for C(I_k), k ∈ {2, 3}:
/// composite Simpson quadrature of the cell moments, no closed forms.
pub fn moment_quadrature(k: usize) -> Result<f64> {
    match k {
        2 => {
            // z = ∫_0^∞ x·e^{−x²/2}/√(2π) dx, C = 2z²
            let density = |x: f64| x * (-x * x / 2.0).exp() / (2.0 * std::f64::consts::PI).sqrt();
            let z = simpson(density, 0.0, 14.0, 20_000);
            Ok(2.0 * z * z)
        }
        3 => {
            // polar quadrature of one 120° cone: radial and angular factors
            let radial = simpson(|r: f64| r * r * (-r * r / 2.0).exp(), 0.0, 14.0, 20_000);
            let third = std::f64::consts::PI / 3.0;
            let zx =
                simpson(f64::cos, -third, third, 20_000) * radial / (2.0 * std::f64::consts::PI);
            let zy =
                simpson(f64::sin, -third, third, 20_000) * radial / (2.0 * std::f64::consts::PI);
            Ok(3.0 * (zx * zx + zy * zy))
        }
        _ => Err(Error::Invalid(
            "quadrature oracle implemented for k in {2, 3}".into(),
        )),
    }
}

fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, intervals: usize) -> f64 {
    let n = intervals + intervals % 2;
    let h = (b - a) / n as f64;
    let mut total = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        total += w * f(a + h * i as f64);
    }
    total * h / 3.0
}

// ---------------------------------------------------------------------------
// hypothesis model and the clustering pipeline
// ---------------------------------------------------------------------------

/// A k×k PSD hypothesis matrix with its Gram vectors, enclosing-ball data
/// and the rounding partition for k parts.
#[derive(Debug, Clone)]
pub struct HypothesisModel {
    pub b: DenseMatrix,
    pub gram_vectors: DenseMatrix,
    pub radius: f64,
    pub center: Vec<f64>,
    pub partition: GaussianPartition,
    /// C(B); known only for identity hypotheses unless supplied by the
    /// caller.
    pub partition_constant: Option<f64>,
    pub conjectural: bool,
}

impl HypothesisModel {
    pub fn from_matrix(b: DenseMatrix) -> Result<Self> {
        if !b.is_square() {
            return Err(Error::Invalid("hypothesis matrix must be square".into()));
        }
        if !b.is_symmetric(1e-8 * (1.0 + b.max_abs())) {
            return Err(Error::Invalid("hypothesis matrix must be symmetric".into()));
        }
        let k = b.rows();
        if k < 2 {
            return Err(Error::Invalid("hypothesis needs at least 2 parts".into()));
        }
        let gram_vectors = linalg::gram_vectors(&b, 1e-8)?;
        let points: Vec<Vec<f64>> = (0..k).map(|i| gram_vectors.row(i).to_vec()).collect();
        let (center, radius) = min_enclosing_ball(&points);
        let partition = GaussianPartition::for_parts(k)?;
        let conjectural = partition.conjectural;
        let is_identity = (0..k)
            .all(|i| (0..k).all(|j| (b.get(i, j) - if i == j { 1.0 } else { 0.0 }).abs() < 1e-12));
        let partition_constant = if is_identity {
            Some(partition_constant(k)?.0)
        } else {
            None
        };
        Ok(Self {
            b,
            gram_vectors,
            radius,
            center,
            partition,
            partition_constant,
            conjectural,
        })
    }

    pub fn identity(k: usize) -> Result<Self> {
        Self::from_matrix(DenseMatrix::identity(k))
    }

    /// Attach an externally computed partition value C(B); the guarantee
    /// ratio R²/C is reported only when this is known.
    pub fn with_constant(mut self, c: f64) -> Self {
        self.partition_constant = Some(c);
        self
    }

    pub fn k(&self) -> usize {
        self.b.rows()
    }
}

/// Maximize Σ a_ij ⟨x_i, x_j⟩ over unit vectors for a symmetric PSD input
/// (on PSD matrices the ball-constrained and sphere-constrained maxima
/// agree, which is what makes this the right relaxation).
pub fn clust_sdp(a: &DenseMatrix, params: SolverParams) -> Result<(FactorPair, SolveReport)> {
    if !a.is_square() || !a.is_symmetric(1e-8 * (1.0 + a.max_abs())) {
        return Err(Error::Invalid("clustering input must be symmetric".into()));
    }
    oracles::validate_psd(a)?;
    sdp::solve_symmetric(a, &EdgeMask::complete_with_diagonal(a.rows()), params)
}

#[derive(Debug, Clone)]
pub struct AssignmentOutcome {
    pub assignment: Vec<usize>,
    pub value: f64,
    pub mean_value: f64,
    pub stderr: f64,
}

/// Round relaxation vectors to a k-clustering of the instance `a`:
/// project through a Gaussian (k−1)×r matrix and read off the partition
/// cell of each projected point. Expected clustering value is at least
/// C(B)·(relaxation value at the vectors) for identity hypotheses.
pub fn round_assignment(
    a: &DenseMatrix,
    x: &DenseMatrix,
    model: &HypothesisModel,
    trials: usize,
    seed: u64,
) -> AssignmentOutcome {
    assert!(trials >= 1);
    assert_eq!(a.rows(), x.rows());
    let n = x.rows();
    let r = x.cols();
    let dim = model.partition.ambient_dim;
    let mut gauss = vec![0.0; dim * r];
    let mut w = vec![0.0; dim];
    let mut best: Option<(f64, Vec<usize>)> = None;
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for trial in 0..trials {
        let mut rng_t = rng::stream(seed, trial as u64);
        rng::fill_normal(&mut rng_t, &mut gauss);
        let mut sigma = Vec::with_capacity(n);
        for i in 0..n {
            let xi = x.row(i);
            for (d, wd) in w.iter_mut().enumerate() {
                *wd = linalg::dot(&gauss[d * r..(d + 1) * r], xi);
            }
            sigma.push(model.partition.assign(&w));
        }
        let value = clust_value(a, &model.b, &sigma);
        sum += value;
        sum_sq += value * value;
        if best.as_ref().map_or(true, |(bv, _)| value > *bv) {
            best = Some((value, sigma));
        }
    }
    let (value, assignment) = best.unwrap();
    let mean_value = sum / trials as f64;
    let stderr = if trials < 2 {
        0.0
    } else {
        let var = ((sum_sq - sum * sum / trials as f64) / (trials as f64 - 1.0)).max(0.0);
        (var / trials as f64).sqrt()
    };
    AssignmentOutcome {
        assignment,
        value,
        mean_value,
        stderr,
    }
}

/// Σ a_ij b_{σ(i)σ(j)}.
pub fn clust_value(a: &DenseMatrix, b: &DenseMatrix, sigma: &[usize]) -> f64 {
    let n = a.rows();
    let mut total = 0.0;
    for i in 0..n {
        let ar = a.row(i);
        let bi = b.row(sigma[i]);
        for j in 0..n {
            total += ar[j] * bi[sigma[j]];
        }
    }
    total
}

#[derive(Debug, Clone)]
pub struct ClustAnswer {
    /// The algorithm's estimate R(B)²·SDP(A|B); at least Clust(A|B) and at
    /// most (R²/C)·Clust(A|B) when C is known.
    pub alpha: f64,
    pub sigma: Vec<usize>,
    /// Clustering value of `sigma`, recomputed.
    pub witness_value: f64,
    pub sdp_value: f64,
    pub sdp_upper: f64,
    pub radius_sq: f64,
    pub partition_constant: Option<f64>,
    pub conjectural: bool,
    pub report: SolveReport,
}

/// Full pipeline for centered PSD instances: relaxation, certified upper
/// bound, α = R²·(certified SDP), and a rounded assignment.
pub fn approx_clust(
    a: &DenseMatrix,
    model: &HypothesisModel,
    trials: usize,
    seed: u64,
) -> Result<ClustAnswer> {
    let total = a.total_sum();
    let scale = 1.0 + a.max_abs() * (a.rows() * a.rows()) as f64;
    if total.abs() > 1e-6 * scale {
        return Err(Error::Invalid(format!(
            "clustering guarantee needs a centered matrix (Σ a_ij = {total})"
        )));
    }
    let (factor, report) = clust_sdp(a, SolverParams::with_seed(seed))?;
    let upper = report
        .upper_bound
        .expect("symmetric solve always certifies");
    let alpha = model.radius * model.radius * upper;
    let outcome = round_assignment(a, &factor.left, model, trials.max(1), seed);
    Ok(ClustAnswer {
        alpha,
        sigma: outcome.assignment,
        witness_value: outcome.value,
        sdp_value: factor.value,
        sdp_upper: upper,
        radius_sq: model.radius * model.radius,
        partition_constant: model.partition_constant,
        conjectural: model.conjectural,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn meb_simplex_and_degenerate_cases() {
        // standard basis of R^k: center at the centroid, radius² = 1 − 1/k
        for k in 2..=6usize {
            let points: Vec<Vec<f64>> = (0..k)
                .map(|i| (0..k).map(|d| if d == i { 1.0 } else { 0.0 }).collect())
                .collect();
            let (center, radius) = min_enclosing_ball(&points);
            assert!(
                (radius * radius - (1.0 - 1.0 / k as f64)).abs() < 1e-10,
                "k={k}"
            );
            for c in &center {
                assert!((c - 1.0 / k as f64).abs() < 1e-10);
            }
        }
        let (_, r) = min_enclosing_ball(&[vec![3.0, 4.0]]);
        assert_eq!(r, 0.0);
    }

    #[test]
    fn meb_center_not_in_hull_of_all_points() {
        // collinear points: the ball is determined by the two extremes
        let points = vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![4.0, 0.0]];
        let (center, radius) = min_enclosing_ball(&points);
        assert!((center[0] - 2.0).abs() < 1e-10);
        assert!((radius - 2.0).abs() < 1e-10);
    }

    #[test]
    fn partition_constants_and_quadrature() {
        let pi = std::f64::consts::PI;
        assert_eq!(partition_constant(2).unwrap(), (1.0 / pi, false));
        assert_eq!(partition_constant(3).unwrap(), (9.0 / (8.0 * pi), false));
        assert_eq!(partition_constant(4).unwrap(), (9.0 / (8.0 * pi), false));
        assert_eq!(partition_constant(7).unwrap(), (9.0 / (8.0 * pi), true));
        assert!(partition_constant(1).is_err());

        assert!((moment_quadrature(2).unwrap() - 1.0 / pi).abs() < 1e-6);
        assert!((moment_quadrature(3).unwrap() - 9.0 / (8.0 * pi)).abs() < 1e-6);
    }

    #[test]
    fn partition_moments_sum_to_zero_and_match_constant() {
        for k in 2..=6usize {
            let p = GaussianPartition::for_parts(k).unwrap();
            let (c, conj) = partition_constant(k).unwrap();
            assert!((p.moment_value() - c).abs() < 1e-12, "k={k}");
            assert_eq!(p.conjectural, conj);
            for d in 0..p.ambient_dim {
                let s: f64 = p.moments.iter().map(|z| z[d]).sum();
                assert!(s.abs() < 1e-12);
            }
        }
    }

    #[test]
    fn assign_is_total_and_in_range() {
        let mut rng = crate::rng::stream(8, 0);
        for k in 2..=6usize {
            let p = GaussianPartition::for_parts(k).unwrap();
            for _ in 0..500 {
                let mut w = vec![0.0; p.ambient_dim];
                crate::rng::fill_normal(&mut rng, &mut w);
                let part = p.assign(&w);
                assert!(part < k);
                // only the first three parts can be nonempty for k ≥ 3
                if k >= 3 {
                    assert!(part < 3);
                }
            }
            // boundary probe: the origin goes to the lowest part
            let w = vec![0.0; p.ambient_dim];
            assert_eq!(p.assign(&w), 0);
        }
    }

    #[test]
    fn clust_sdp_examples() {
        let a = DenseMatrix::new(2, 2, vec![1.0, -1.0, -1.0, 1.0]).unwrap();
        let (f, rep) = clust_sdp(&a, SolverParams::with_seed(6)).unwrap();
        assert!((f.value - 4.0).abs() < 1e-6);
        assert!(rep.upper_bound.unwrap() <= 4.0 + 1e-6);

        let eye = DenseMatrix::identity(4);
        let (f, _) = clust_sdp(&eye, SolverParams::with_seed(6)).unwrap();
        assert!((f.value - 4.0).abs() < 1e-7);

        let indef = DenseMatrix::new(2, 2, vec![0.0, 1.0, 1.0, 0.0]).unwrap();
        assert!(clust_sdp(&indef, SolverParams::with_seed(6)).is_err());
    }

    #[test]
    fn round_assignment_antipodal_pair_always_splits() {
        let a = DenseMatrix::new(2, 2, vec![1.0, -1.0, -1.0, 1.0]).unwrap();
        let mut x = DenseMatrix::zeros(2, 1);
        x.set(0, 0, 1.0);
        x.set(1, 0, -1.0);
        let model = HypothesisModel::identity(2).unwrap();
        let out = round_assignment(&a, &x, &model, 64, 9);
        assert_eq!(out.value, 2.0);
        assert_eq!(out.mean_value, 2.0);

        // degenerate all-equal vectors: one cluster, value Σa_ij·b_ℓℓ
        let mut same = DenseMatrix::zeros(2, 1);
        same.set(0, 0, 1.0);
        same.set(1, 0, 1.0);
        let out = round_assignment(&a, &same, &model, 16, 9);
        assert_eq!(out.value, a.total_sum());
    }

    #[test]
    fn rounding_expectation_beats_partition_constant() {
        // E[Clust(σ)] ≥ C(I₃)·(relaxation value), checked by Monte Carlo
        let mut rng = crate::rng::stream(70, 0);
        let n = 5;
        let mut base = DenseMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                base.set(i, j, rng.gen_range(-2..=2) as f64);
            }
        }
        // centered PSD: P·(MMᵀ)·P with P the centering projector
        let a = centered_gram(&base);
        let model = HypothesisModel::identity(3).unwrap();
        let (factor, _) = clust_sdp(&a, SolverParams::with_seed(12)).unwrap();
        let out = round_assignment(&a, &factor.left, &model, 30_000, 12);
        let c3 = partition_constant(3).unwrap().0;
        assert!(
            out.mean_value >= c3 * factor.value - 4.0 * out.stderr,
            "mean {} vs C·SDP {} (se {})",
            out.mean_value,
            c3 * factor.value,
            out.stderr
        );
    }

    #[test]
    fn guarantee_sandwich_against_oracle() {
        let mut rng = crate::rng::stream(71, 0);
        for case in 0..4 {
            let n = 5;
            let mut base = DenseMatrix::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    base.set(i, j, rng.gen_range(-2..=2) as f64);
                }
            }
            let a = centered_gram(&base);
            for k in [2usize, 3] {
                let model = HypothesisModel::identity(k).unwrap();
                let ans = approx_clust(&a, &model, 256, case).unwrap();
                let clust = crate::oracles::exact_clust(&a, &model.b).unwrap().value;
                let c = model.partition_constant.unwrap();
                let gap = ans.radius_sq * (ans.sdp_upper - ans.sdp_value).max(0.0);
                assert!(
                    clust <= ans.alpha + 1e-6,
                    "clust {clust} alpha {}",
                    ans.alpha
                );
                assert!(
                    ans.alpha <= ans.radius_sq / c * clust + gap + 1e-6,
                    "alpha {} bound {} (k={k})",
                    ans.alpha,
                    ans.radius_sq / c * clust + gap
                );
                // the rounded witness never exceeds the oracle optimum
                assert!(ans.witness_value <= clust + 1e-9);
            }
        }
    }

    #[test]
    fn ratio_checks_for_small_k() {
        let pi = std::f64::consts::PI;
        for (k, want) in [
            (2usize, pi / 2.0),
            (3, 16.0 * pi / 27.0),
            (4, 2.0 * pi / 3.0),
        ] {
            let model = HypothesisModel::identity(k).unwrap();
            let (c, _) = partition_constant(k).unwrap();
            let ratio = model.radius * model.radius / c;
            assert!((ratio - want).abs() < 1e-8, "k={k}: {ratio} vs {want}");
        }
    }

    #[test]
    fn non_identity_hypothesis_has_no_constant() {
        let b = DenseMatrix::new(2, 2, vec![2.0, 1.0, 1.0, 2.0]).unwrap();
        let model = HypothesisModel::from_matrix(b).unwrap();
        assert!(model.partition_constant.is_none());
        let with = model.with_constant(0.3);
        assert_eq!(with.partition_constant, Some(0.3));
    }

    #[test]
    fn approx_clust_rejects_uncentered_input() {
        let a = DenseMatrix::identity(3);
        let model = HypothesisModel::identity(2).unwrap();
        assert!(approx_clust(&a, &model, 8, 1).is_err());
    }

    fn centered_gram(base: &DenseMatrix) -> DenseMatrix {
        let n = base.rows();
        // rows of P·M with P = I − J/n, then the Gram of those rows
        let mut rows: Vec<Vec<f64>> = Vec::with_capacity(n);
        for i in 0..n {
            rows.push(base.row(i).to_vec());
        }
        for d in 0..n {
            let mean: f64 = rows.iter().map(|r| r[d]).sum::<f64>() / n as f64;
            for r in rows.iter_mut() {
                r[d] -= mean;
            }
        }
        let mut a = DenseMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                a.set(i, j, crate::linalg::dot(&rows[i], &rows[j]));
            }
        }
        a
    }
}
