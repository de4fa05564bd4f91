//! Core domain types shared by every algorithm in the crate.
//!
//! All indices are 0-based, both in the APIs and in the text file formats
//! (see [`crate::parse`]). Matrix entries are stored in row-major `f64`;
//! the exact oracles switch to integer accumulation internally whenever the
//! input is integer-valued.

use crate::error::{Error, Result};

/// Dense real m×n matrix, the universal input object.
///
/// Immutable after construction; all entries are finite.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<f64>,
}

impl DenseMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Invalid("matrix dimensions must be positive".into()));
        }
        if entries.len() != rows * cols {
            return Err(Error::Invalid(format!(
                "entry count mismatch: expected {} got {}",
                rows * cols,
                entries.len()
            )));
        }
        if let Some(bad) = entries.iter().find(|v| !v.is_finite()) {
            return Err(Error::Invalid(format!("non-finite entry {bad}")));
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    /// Construct and additionally assert a vanishing diagonal, as required by
    /// the graph and lp quadratic problems.
    pub fn new_zero_diagonal(rows: usize, cols: usize, entries: Vec<f64>) -> Result<Self> {
        let m = Self::new(rows, cols, entries)?;
        m.require_zero_diagonal()?;
        Ok(m)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = 1.0;
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        debug_assert!(i < self.rows && j < self.cols);
        self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        debug_assert!(i < self.rows && j < self.cols);
        self.entries[i * self.cols + j] = v;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn transpose(&self) -> DenseMatrix {
        let mut t = DenseMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// (A + Aᵀ)/2; requires a square matrix.
    pub fn symmetric_part(&self) -> DenseMatrix {
        assert_eq!(self.rows, self.cols, "symmetric_part needs a square matrix");
        let n = self.rows;
        let mut s = DenseMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                s.set(i, j, 0.5 * (self.get(i, j) + self.get(j, i)));
            }
        }
        s
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        if !self.is_square() {
            return false;
        }
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                if (self.get(i, j) - self.get(j, i)).abs() > tol {
                    return false;
                }
            }
        }
        true
    }

    /// True when every entry is an integer representable exactly in f64.
    pub fn is_integral(&self) -> bool {
        self.entries
            .iter()
            .all(|v| v.fract() == 0.0 && v.abs() < 2f64.powi(52))
    }

    pub fn require_zero_diagonal(&self) -> Result<()> {
        if !self.is_square() {
            return Err(Error::Invalid(
                "zero-diagonal check needs a square matrix".into(),
            ));
        }
        for i in 0..self.rows {
            if self.get(i, i) != 0.0 {
                return Err(Error::Invalid(format!(
                    "nonzero diagonal entry at ({i},{i})"
                )));
            }
        }
        Ok(())
    }

    pub fn total_sum(&self) -> f64 {
        self.entries.iter().sum()
    }

    pub fn frobenius_sq(&self) -> f64 {
        self.entries.iter().map(|v| v * v).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().fold(0.0f64, |acc, v| acc.max(v.abs()))
    }

    /// Sum of the block S×T.
    pub fn block_sum(&self, rows: &[usize], cols: &[usize]) -> f64 {
        let mut s = 0.0;
        for &i in rows {
            let r = self.row(i);
            for &j in cols {
                s += r[j];
            }
        }
        s
    }

    /// Bilinear form Σ_ij a_ij ε_i δ_j.
    pub fn bilinear(&self, eps: &SignVector, del: &SignVector) -> f64 {
        assert_eq!(eps.len(), self.rows);
        assert_eq!(del.len(), self.cols);
        let mut total = 0.0;
        for i in 0..self.rows {
            let r = self.row(i);
            let mut acc = 0.0;
            for j in 0..self.cols {
                acc += r[j] * del.get_f64(j);
            }
            total += eps.get_f64(i) * acc;
        }
        total
    }

    /// Quadratic form Σ_ij a_ij t_i t_j (full double sum).
    pub fn quadratic(&self, t: &[f64]) -> f64 {
        assert!(self.is_square() && t.len() == self.rows);
        let mut total = 0.0;
        for i in 0..self.rows {
            let r = self.row(i);
            let mut acc = 0.0;
            for j in 0..self.cols {
                acc += r[j] * t[j];
            }
            total += t[i] * acc;
        }
        total
    }

    /// Serialize in the `dense` text format; parsing the output reproduces
    /// the entries bit for bit (shortest round-trip float formatting).
    pub fn to_text(&self) -> String {
        let mut out = format!("dense {} {}\n", self.rows, self.cols);
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(|v| format!("{v}")).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}

/// Vector over {−1, +1}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignVector {
    values: Vec<i8>,
}

impl SignVector {
    pub fn new(values: Vec<i8>) -> Result<Self> {
        if values.iter().any(|&v| v != 1 && v != -1) {
            return Err(Error::Invalid(
                "sign vector entries must be -1 or +1".into(),
            ));
        }
        Ok(Self { values })
    }

    pub fn all_ones(n: usize) -> Self {
        Self { values: vec![1; n] }
    }

    /// Entry i is +1 when the corresponding bit of `mask` is set.
    pub fn from_bitmask(mask: u64, n: usize) -> Self {
        let values = (0..n)
            .map(|i| if mask >> i & 1 == 1 { 1 } else { -1 })
            .collect();
        Self { values }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    #[inline]
    pub fn get(&self, i: usize) -> i8 {
        self.values[i]
    }

    #[inline]
    pub fn get_f64(&self, i: usize) -> f64 {
        f64::from(self.values[i])
    }

    pub fn values(&self) -> &[i8] {
        &self.values
    }

    pub fn flip(&mut self, i: usize) {
        self.values[i] = -self.values[i];
    }

    /// Indices carrying +1 and −1 respectively.
    pub fn split(&self) -> (Vec<usize>, Vec<usize>) {
        let mut plus = Vec::new();
        let mut minus = Vec::new();
        for (i, &v) in self.values.iter().enumerate() {
            if v == 1 {
                plus.push(i);
            } else {
                minus.push(i);
            }
        }
        (plus, minus)
    }
}

/// Row/column index pair (S, T) witnessing a cut-norm value.
///
/// Index lists are kept sorted and deduplicated; either side may be empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetPair {
    pub row_set: Vec<usize>,
    pub col_set: Vec<usize>,
}

impl SubsetPair {
    pub fn new(mut row_set: Vec<usize>, mut col_set: Vec<usize>) -> Self {
        row_set.sort_unstable();
        row_set.dedup();
        col_set.sort_unstable();
        col_set.dedup();
        Self { row_set, col_set }
    }

    pub fn validate(&self, rows: usize, cols: usize) -> Result<()> {
        if self.row_set.iter().any(|&i| i >= rows) || self.col_set.iter().any(|&j| j >= cols) {
            return Err(Error::Invalid("subset index out of range".into()));
        }
        Ok(())
    }

    /// Ordering used to break ties between equal-value witnesses:
    /// (|S|, |T|, S lexicographic, T lexicographic).
    pub fn tie_break_key(&self) -> (usize, usize, Vec<usize>, Vec<usize>) {
        (
            self.row_set.len(),
            self.col_set.len(),
            self.row_set.clone(),
            self.col_set.clone(),
        )
    }
}

/// Weighted directed graph without self loops.
///
/// Duplicate arcs are summed on ingest, which makes weighted instances easy
/// to assemble from edge lists.
#[derive(Debug, Clone, PartialEq)]
pub struct Digraph {
    n: usize,
    arcs: Vec<(usize, usize, f64)>,
}

impl Digraph {
    pub fn new(n: usize, raw_arcs: Vec<(usize, usize, f64)>) -> Result<Self> {
        let mut merged: std::collections::BTreeMap<(usize, usize), f64> =
            std::collections::BTreeMap::new();
        for (tail, head, w) in raw_arcs {
            if tail == head {
                return Err(Error::Invalid(format!("self loop at vertex {tail}")));
            }
            if tail >= n || head >= n {
                return Err(Error::Invalid(format!(
                    "arc ({tail},{head}) out of range for n={n}"
                )));
            }
            if !w.is_finite() {
                return Err(Error::Invalid("non-finite arc weight".into()));
            }
            *merged.entry((tail, head)).or_insert(0.0) += w;
        }
        let arcs = merged.into_iter().map(|((u, v), w)| (u, v, w)).collect();
        Ok(Self { n, arcs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> &[(usize, usize, f64)] {
        &self.arcs
    }

    /// The skew-symmetric matrix W(u,v) = w(u,v) − w(v,u).
    ///
    /// Each unordered pair is resolved once and its negation written to the
    /// mirror entry, so W + Wᵀ = 0 holds exactly in floating point.
    pub fn skew_matrix(&self) -> DenseMatrix {
        let mut w = DenseMatrix::zeros(self.n, self.n);
        for &(u, v, weight) in &self.arcs {
            w.set(u, v, w.get(u, v) + weight);
        }
        let mut out = DenseMatrix::zeros(self.n, self.n);
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                let net = w.get(u, v) - w.get(v, u);
                out.set(u, v, net);
                out.set(v, u, -net);
            }
        }
        out
    }

    /// Symmetric weight matrix a_uv = a_vu = w(u,v) + w(v,u) together with
    /// the boolean support mask (true where some arc exists).
    pub fn symmetric_adjacency(&self) -> (DenseMatrix, EdgeMask) {
        let mut a = DenseMatrix::zeros(self.n, self.n);
        let mut mask = EdgeMask::empty(self.n);
        for &(u, v, weight) in &self.arcs {
            a.set(u, v, a.get(u, v) + weight);
            a.set(v, u, a.get(v, u) + weight);
            mask.insert(u, v);
        }
        (a, mask)
    }
}

/// Symmetric boolean edge support for graph-restricted quadratic objectives.
///
/// The diagonal may be included (kernel-clustering programs sum it) or
/// excluded (graph ground states never do).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeMask {
    n: usize,
    bits: Vec<bool>,
}

impl EdgeMask {
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            bits: vec![false; n * n],
        }
    }

    /// All off-diagonal pairs.
    pub fn complete(n: usize) -> Self {
        let mut m = Self::empty(n);
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    m.bits[i * n + j] = true;
                }
            }
        }
        m
    }

    /// All pairs including the diagonal.
    pub fn complete_with_diagonal(n: usize) -> Self {
        Self {
            n,
            bits: vec![true; n * n],
        }
    }

    pub fn insert(&mut self, i: usize, j: usize) {
        self.bits[i * self.n + j] = true;
        self.bits[j * self.n + i] = true;
    }

    #[inline]
    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.n + j]
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Masked quadratic form Σ_{(i,j) in mask} a_ij x_i x_j over ordered pairs.
    pub fn masked_quadratic(&self, a: &DenseMatrix, x: &[f64]) -> f64 {
        let n = self.n;
        let mut total = 0.0;
        for i in 0..n {
            let r = a.row(i);
            for j in 0..n {
                if self.contains(i, j) {
                    total += r[j] * x[i] * x[j];
                }
            }
        }
        total
    }

    /// Masked spin energy Σ_{(i,j) in mask} a_ij ε_i ε_j over ordered pairs.
    pub fn spin_energy(&self, a: &DenseMatrix, spins: &SignVector) -> f64 {
        let n = self.n;
        let mut total = 0.0;
        for i in 0..n {
            let r = a.row(i);
            for j in 0..n {
                if self.contains(i, j) {
                    total += r[j] * spins.get_f64(i) * spins.get_f64(j);
                }
            }
        }
        total
    }
}

/// Sparse 3-tensor with ±1 coefficients: one entry per parity equation on
/// three distinct variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseTensor3 {
    n: usize,
    entries: Vec<(usize, usize, usize, i8)>,
}

impl SparseTensor3 {
    pub fn new(n: usize, entries: Vec<(usize, usize, usize, i8)>) -> Result<Self> {
        let mut seen = std::collections::BTreeSet::new();
        for &(i, j, k, c) in &entries {
            if i >= n || j >= n || k >= n {
                return Err(Error::Invalid(format!(
                    "tensor index ({i},{j},{k}) out of range"
                )));
            }
            if i == j || j == k || i == k {
                return Err(Error::Invalid(format!(
                    "tensor indices ({i},{j},{k}) must be distinct"
                )));
            }
            if c != 1 && c != -1 {
                return Err(Error::Invalid("tensor coefficient must be -1 or +1".into()));
            }
            if !seen.insert((i, j, k)) {
                return Err(Error::Invalid(format!(
                    "duplicate tensor triple ({i},{j},{k})"
                )));
            }
        }
        Ok(Self { n, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(usize, usize, usize, i8)] {
        &self.entries
    }

    /// Σ a_ijk ε_i ε_j ε_k.
    pub fn trilinear(&self, eps: &SignVector) -> f64 {
        self.entries
            .iter()
            .map(|&(i, j, k, c)| f64::from(c) * eps.get_f64(i) * eps.get_f64(j) * eps.get_f64(k))
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants;

    #[test]
    fn matrix_validation() {
        assert!(DenseMatrix::new(2, 1, vec![1.0, 2.0, 3.0]).is_err());
        assert!(DenseMatrix::new(0, 1, vec![]).is_err());
        assert!(DenseMatrix::new(1, 1, vec![f64::NAN]).is_err());
        let m = DenseMatrix::new(2, 2, vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        assert_eq!(m.get(1, 0), 3.0);
    }

    #[test]
    fn zero_diagonal_flag() {
        assert!(DenseMatrix::new_zero_diagonal(2, 2, vec![0.0, 1.0, 1.0, 0.0]).is_ok());
        assert!(DenseMatrix::new_zero_diagonal(2, 2, vec![1.0, 0.0, 0.0, 0.0]).is_err());
    }

    #[test]
    fn skew_matrix_is_exactly_antisymmetric() {
        let g = Digraph::new(3, vec![(0, 1, 1.0), (1, 2, 1.0), (2, 0, 1.0)]).unwrap();
        let w = g.skew_matrix();
        assert_eq!(w.get(0, 1), 1.0);
        assert_eq!(w.get(1, 2), 1.0);
        assert_eq!(w.get(2, 0), 1.0);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(w.get(i, j) + w.get(j, i), 0.0);
            }
        }
    }

    #[test]
    fn duplicate_arcs_sum_and_cancel() {
        let g = Digraph::new(2, vec![(0, 1, 1.0), (1, 0, 1.0)]).unwrap();
        let w = g.skew_matrix();
        assert_eq!(w.get(0, 1), 0.0);
        // empty arc set gives the zero matrix
        let z = Digraph::new(3, vec![]).unwrap().skew_matrix();
        assert_eq!(z.entries(), &[0.0; 9]);
    }

    #[test]
    fn digraph_rejects_self_loops() {
        assert!(Digraph::new(2, vec![(1, 1, 1.0)]).is_err());
    }

    #[test]
    fn tensor_rejects_duplicates_and_repeats() {
        assert!(SparseTensor3::new(3, vec![(0, 1, 2, 1), (0, 1, 2, -1)]).is_err());
        assert!(SparseTensor3::new(3, vec![(0, 0, 2, 1)]).is_err());
        assert!(SparseTensor3::new(3, vec![(0, 1, 2, 2)]).is_err());
    }

    #[test]
    fn constants_identities() {
        assert!((constants::KRIVINE_UPPER * constants::KRIVINE_C - 1.0).abs() < 1e-15);
        assert!((constants::BETA.sinh() - 1.0).abs() < 1e-15);
        assert!((constants::KRIVINE_UPPER - 1.782).abs() < 1e-3);
        assert!((constants::KG_LOWER - 1.676).abs() < 1e-3);
        assert!(constants::KG_COMPLEX_BOUNDS.0 < constants::KG_COMPLEX_BOUNDS.1);
    }
}
