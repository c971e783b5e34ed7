use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Dense matrix over the integers, stored row-major with arbitrary-precision entries.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        IntegerMatrix { rows, cols, data }
    }

    /// Builds a matrix from small integer rows. All rows must have equal length.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map(|r| r.as_ref().len()).unwrap_or(0);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.iter().map(|&x| BigInt::from(x)));
        }
        IntegerMatrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    /// Builds a matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> Self {
        let cols = columns.len();
        let mut m = Self::zeros(rows, cols);
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for (i, x) in c.iter().enumerate() {
                m.data[i * cols + j] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn add_at(&mut self, i: usize, j: usize, v: &BigInt) {
        self.data[i * self.cols + j] += v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Keeps the listed columns, in the given order.
    pub fn select_columns(&self, idx: &[usize]) -> Self {
        Self::from_fn(self.rows, idx.len(), |i, j| self.get(i, idx[j]).clone())
    }

    pub fn hcat(&self, other: &IntegerMatrix) -> Self {
        assert_eq!(self.rows, other.rows);
        Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        })
    }

    pub fn mul(&self, other: &IntegerMatrix) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = BigInt::zero();
                for (j, x) in v.iter().enumerate() {
                    if !x.is_zero() {
                        acc += self.get(i, j) * x;
                    }
                }
                acc
            })
            .collect()
    }

    /// Determinant by fraction-free Bareiss elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.data.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k * n + k].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[i * n + k].is_zero()) else {
                    return BigInt::zero();
                };
                for j in 0..n {
                    a.swap(k * n + j, p * n + j);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j];
                    a[i * n + j] = v / &prev;
                }
            }
            prev = a[k * n + k].clone();
        }
        sign * a[n * n - 1].clone()
    }

    pub fn rank(&self) -> usize {
        invariant_factors(self).len()
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + i, r * self.cols + j);
        }
    }

    /// row_i += c * row_j
    fn add_row_multiple(&mut self, i: usize, j: usize, c: &BigInt) {
        for col in 0..self.cols {
            let v = &self.data[j * self.cols + col];
            if !v.is_zero() {
                let t = v * c;
                self.data[i * self.cols + col] += t;
            }
        }
    }

    /// col_i += c * col_j
    fn add_col_multiple(&mut self, i: usize, j: usize, c: &BigInt) {
        for r in 0..self.rows {
            let v = &self.data[r * self.cols + j];
            if !v.is_zero() {
                let t = v * c;
                self.data[r * self.cols + i] += t;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for c in 0..self.cols {
            let v = std::mem::take(&mut self.data[i * self.cols + c]);
            self.data[i * self.cols + c] = -v;
        }
    }

    fn negate_col(&mut self, j: usize) {
        for r in 0..self.rows {
            let v = std::mem::take(&mut self.data[r * self.cols + j]);
            self.data[r * self.cols + j] = -v;
        }
    }
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntegerMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Result of a Smith normal form computation: `m = left * diagonal * right`.
///
/// `left_inverse` and `right_inverse` are the unimodular matrices with
/// `left_inverse * m * right_inverse = diagonal`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub left: IntegerMatrix,
    pub diagonal: IntegerMatrix,
    pub right: IntegerMatrix,
    pub left_inverse: IntegerMatrix,
    pub right_inverse: IntegerMatrix,
}

impl SmithForm {
    /// Nonzero diagonal entries, a divisibility chain of positive integers.
    pub fn factors(&self) -> Vec<BigInt> {
        let r = self.diagonal.rows().min(self.diagonal.cols());
        (0..r)
            .map(|i| self.diagonal.get(i, i).clone())
            .take_while(|d| !d.is_zero())
            .collect()
    }
}

#[derive(Clone, Copy)]
struct Track {
    left: bool,
    right: bool,
}

struct Reducer {
    d: IntegerMatrix,
    // p * a * q = d ; a = p_inv * d * q_inv
    p: Option<IntegerMatrix>,
    p_inv: Option<IntegerMatrix>,
    q: Option<IntegerMatrix>,
    q_inv: Option<IntegerMatrix>,
}

impl Reducer {
    fn new(a: &IntegerMatrix, track: Track) -> Self {
        let (r, c) = (a.rows(), a.cols());
        Reducer {
            d: a.clone(),
            p: track.left.then(|| IntegerMatrix::identity(r)),
            p_inv: track.left.then(|| IntegerMatrix::identity(r)),
            q: track.right.then(|| IntegerMatrix::identity(c)),
            q_inv: track.right.then(|| IntegerMatrix::identity(c)),
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.d.swap_rows(i, j);
        if let Some(p) = &mut self.p {
            p.swap_rows(i, j);
        }
        if let Some(pi) = &mut self.p_inv {
            pi.swap_cols(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.d.swap_cols(i, j);
        if let Some(q) = &mut self.q {
            q.swap_cols(i, j);
        }
        if let Some(qi) = &mut self.q_inv {
            qi.swap_rows(i, j);
        }
    }

    /// row_i += c * row_j
    fn row_add(&mut self, i: usize, j: usize, c: &BigInt) {
        self.d.add_row_multiple(i, j, c);
        if let Some(p) = &mut self.p {
            p.add_row_multiple(i, j, c);
        }
        if let Some(pi) = &mut self.p_inv {
            pi.add_col_multiple(j, i, &-c);
        }
    }

    /// col_i += c * col_j
    fn col_add(&mut self, i: usize, j: usize, c: &BigInt) {
        self.d.add_col_multiple(i, j, c);
        if let Some(q) = &mut self.q {
            q.add_col_multiple(i, j, c);
        }
        if let Some(qi) = &mut self.q_inv {
            qi.add_row_multiple(j, i, &-c);
        }
    }

    fn negate_row(&mut self, i: usize) {
        self.d.negate_row(i);
        if let Some(p) = &mut self.p {
            p.negate_row(i);
        }
        if let Some(pi) = &mut self.p_inv {
            pi.negate_col(i);
        }
    }

    #[allow(dead_code)]
    fn negate_col(&mut self, j: usize) {
        self.d.negate_col(j);
        if let Some(q) = &mut self.q {
            q.negate_col(j);
        }
        if let Some(qi) = &mut self.q_inv {
            qi.negate_row(j);
        }
    }

    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        let mut best_abs: Option<BigInt> = None;
        for i in t..self.d.rows() {
            for j in t..self.d.cols() {
                let v = self.d.get(i, j);
                if v.is_zero() {
                    continue;
                }
                let a = v.abs();
                if best_abs.as_ref().is_none_or(|b| &a < b) {
                    let is_one = a.is_one();
                    best_abs = Some(a);
                    best = Some((i, j));
                    if is_one {
                        return best;
                    }
                }
            }
        }
        best
    }

    fn run(&mut self) {
        let (rows, cols) = (self.d.rows(), self.d.cols());
        let mut t = 0;
        while t < rows.min(cols) {
            let Some((pi, pj)) = self.min_pivot(t) else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let mut dirty = false;
                let piv = self.d.get(t, t).clone();
                for i in t + 1..rows {
                    let v = self.d.get(i, t);
                    if v.is_zero() {
                        continue;
                    }
                    let qt = v.div_floor(&piv);
                    self.row_add(i, t, &-qt);
                    if !self.d.get(i, t).is_zero() {
                        dirty = true;
                    }
                }
                for j in t + 1..cols {
                    let v = self.d.get(t, j);
                    if v.is_zero() {
                        continue;
                    }
                    let qt = v.div_floor(&piv);
                    self.col_add(j, t, &-qt);
                    if !self.d.get(t, j).is_zero() {
                        dirty = true;
                    }
                }
                if dirty {
                    // a smaller remainder appeared in row or column t
                    let (bi, bj) = self.line_pivot(t);
                    self.swap_rows(t, bi);
                    self.swap_cols(t, bj);
                    continue;
                }
                // row and column clear; enforce divisibility on the rest
                let bad = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| !self.d.get(i, j).is_multiple_of(&piv));
                match bad {
                    Some((i, _)) => {
                        self.row_add(t, i, &BigInt::one());
                    }
                    None => break,
                }
            }
            if self.d.get(t, t).is_negative() {
                self.negate_row(t);
            }
            t += 1;
        }
    }

    /// Smallest nonzero entry in row t or column t.
    fn line_pivot(&self, t: usize) -> (usize, usize) {
        let mut best = (t, t);
        let mut best_abs = self.d.get(t, t).abs();
        for i in t..self.d.rows() {
            let v = self.d.get(i, t);
            if !v.is_zero() && (best_abs.is_zero() || v.abs() < best_abs) {
                best_abs = v.abs();
                best = (i, t);
            }
        }
        for j in t..self.d.cols() {
            let v = self.d.get(t, j);
            if !v.is_zero() && (best_abs.is_zero() || v.abs() < best_abs) {
                best_abs = v.abs();
                best = (t, j);
            }
        }
        best
    }
}

/// Smith normal form with both unimodular factors.
pub fn smith_normal_form(m: &IntegerMatrix) -> SmithForm {
    let mut r = Reducer::new(
        m,
        Track {
            left: true,
            right: true,
        },
    );
    r.run();
    SmithForm {
        left: r.p_inv.unwrap(),
        diagonal: r.d,
        right: r.q_inv.unwrap(),
        left_inverse: r.p.unwrap(),
        right_inverse: r.q.unwrap(),
    }
}

/// Nonzero invariant factors of `m`, without tracking transforms.
pub fn invariant_factors(m: &IntegerMatrix) -> Vec<BigInt> {
    let mut r = Reducer::new(
        m,
        Track {
            left: false,
            right: false,
        },
    );
    r.run();
    let n = m.rows().min(m.cols());
    (0..n)
        .map(|i| r.d.get(i, i).clone())
        .take_while(|d| !d.is_zero())
        .collect()
}

/// Saturated basis of the integer null space, one basis vector per column.
pub fn kernel_basis(m: &IntegerMatrix) -> IntegerMatrix {
    let mut r = Reducer::new(
        m,
        Track {
            left: false,
            right: true,
        },
    );
    r.run();
    let n = m.rows().min(m.cols());
    let rank = (0..n).take_while(|&i| !r.d.get(i, i).is_zero()).count();
    let q = r.q.unwrap();
    let idx: Vec<usize> = (rank..m.cols()).collect();
    q.select_columns(&idx)
}

/// Free rank plus invariant-factor torsion of a finitely generated abelian group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, serde::Serialize, serde::Deserialize)]
pub struct AbelianGroupSummary {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

impl AbelianGroupSummary {
    pub fn free(rank: usize) -> Self {
        AbelianGroupSummary {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for AbelianGroupSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.free_rank > 0 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// `Z^rows / span(columns of m)`.
pub fn cokernel_summary(m: &IntegerMatrix) -> AbelianGroupSummary {
    let f = invariant_factors(m);
    let torsion = f
        .iter()
        .filter(|d| !d.is_one())
        .map(|d| d.to_u64().expect("torsion fits in u64"))
        .collect();
    AbelianGroupSummary {
        free_rank: m.rows() - f.len(),
        torsion,
    }
}

/// Computes `span(cycles) / span(boundaries)`; both are given by columns in the same ambient lattice.
pub fn subquotient_summary(cycles: &IntegerMatrix, boundaries: &IntegerMatrix) -> Result<AbelianGroupSummary> {
    if cycles.rows() != boundaries.rows() {
        return Err(Error::Inconsistent(format!(
            "ambient dimensions differ: {} vs {}",
            cycles.rows(),
            boundaries.rows()
        )));
    }
    let n = cycles.rows();
    let mut r = Reducer::new(
        cycles,
        Track {
            left: true,
            right: false,
        },
    );
    r.run();
    let k = n.min(cycles.cols());
    let diag: Vec<BigInt> = (0..k)
        .map(|i| r.d.get(i, i).clone())
        .take_while(|d| !d.is_zero())
        .collect();
    let rank = diag.len();
    let pb = r.p.unwrap().mul(boundaries);
    let mut coords = IntegerMatrix::zeros(rank, boundaries.cols());
    for j in 0..boundaries.cols() {
        for i in 0..n {
            let v = pb.get(i, j);
            if i >= rank {
                if !v.is_zero() {
                    return Err(Error::Inconsistent(
                        "boundary column lies outside the cycle span".into(),
                    ));
                }
                continue;
            }
            let (qt, rem) = v.div_rem(&diag[i]);
            if !rem.is_zero() {
                return Err(Error::Inconsistent(
                    "boundary column is not an integer combination of cycles".into(),
                ));
            }
            coords.set(i, j, qt);
        }
    }
    let factors = invariant_factors(&coords);
    let torsion = factors
        .iter()
        .filter(|d| !d.is_one())
        .map(|d| u64::try_from(d).expect("torsion coefficient exceeds u64"))
        .collect();
    Ok(AbelianGroupSummary {
        free_rank: rank - factors.len(),
        torsion,
    })
}
