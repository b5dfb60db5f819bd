//! Exact dense linear algebra over the rationals.
//!
//! Every routine here is deterministic: pivots are chosen as the first
//! nonzero entry scanning columns left to right, so reduced forms are
//! reproducible bit for bit.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

/// Arbitrary-precision fraction, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Formats as `p` or `p/q`.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `p`, `-p`, or `p/q` with `q != 0`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("ambient dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("matrix data has length {len}, expected {rows}x{cols}")]
    BadShape { rows: usize, cols: usize, len: usize },
}

/// Row-major dense matrix of rationals. Zero-row matrices are allowed and
/// represent the zero subspace of a `cols`-dimensional ambient space.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(format_rational).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Result of row reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub reduced: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::BadShape { rows, cols, len: data.len() });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    /// Builds a matrix from rows of equal length `cols`.
    ///
    /// Panics if a row has the wrong length.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Rational>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "row length mismatch");
            data.extend(row);
        }
        Self { rows: n, cols, data }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(cols, rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> impl Iterator<Item = &[Rational]> + '_ {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.data[r * self.cols + c].clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix, LinalgError> {
        if self.cols != rhs.rows {
            return Err(LinalgError::DimensionMismatch { left: self.cols, right: rhs.rows });
        }
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.get(k, c);
                    if !b.is_zero() {
                        out.data[r * rhs.cols + c] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Applies the matrix to a column vector.
    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if self.cols != other.cols {
            return Err(LinalgError::DimensionMismatch { left: self.cols, right: other.cols });
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Matrix { rows: self.rows + other.rows, cols: self.cols, data })
    }

    /// Reduced row echelon form.
    pub fn rref(&self) -> Rref {
        let mut rows: Vec<Vec<Rational>> = self.row_vecs().map(<[Rational]>::to_vec).collect();
        let (rank, pivots) = reduce_rows(&mut rows, self.cols);
        let reduced = Matrix::from_rows(self.cols, rows);
        Rref { reduced, rank, pivots }
    }

    /// Computed by fraction-free forward elimination over the integers,
    /// which avoids the gcd traffic of rational row operations.
    pub fn rank(&self) -> usize {
        let rows: Vec<Vec<BigInt>> = self.row_vecs().filter_map(integer_row).collect();
        integer_rank(rows, self.cols)
    }

    /// Nonzero rows of the RREF: the canonical basis of the row space.
    pub fn row_space(&self) -> Matrix {
        let Rref { reduced, rank, .. } = self.rref();
        reduced.take_rows(rank)
    }

    fn take_rows(mut self, n: usize) -> Matrix {
        self.data.truncate(n * self.cols);
        self.rows = n;
        self
    }

    /// Basis of `{v : M v = 0}`, one vector per row, in RREF.
    pub fn kernel_basis(&self) -> Matrix {
        let Rref { reduced, pivots, .. } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Rational::zero(); self.cols];
            v[free] = Rational::one();
            for (r, &p) in pivots.iter().enumerate() {
                let a = reduced.get(r, free);
                if !a.is_zero() {
                    v[p] = -a.clone();
                }
            }
            basis.push(v);
        }
        Matrix::from_rows(self.cols, basis).row_space()
    }

    /// Inverse of a square matrix, `None` if singular.
    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut rows: Vec<Vec<Rational>> = (0..n)
            .map(|r| {
                let mut row = self.row(r).to_vec();
                row.extend((0..n).map(|c| if c == r { Rational::one() } else { Rational::zero() }));
                row
            })
            .collect();
        let (rank, pivots) = reduce_rows(&mut rows, n);
        if rank < n || pivots.iter().enumerate().any(|(i, &p)| i != p) {
            return None;
        }
        Some(Matrix::from_rows(n, rows.into_iter().map(|r| r[n..].to_vec()).collect()))
    }
}

/// In-place Gauss-Jordan on the first `cols` columns of each row (rows may
/// be longer, e.g. augmented). Returns the rank and pivot columns.
fn reduce_rows(rows: &mut [Vec<Rational>], cols: usize) -> (usize, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut next = 0;
    for c in 0..cols {
        if next == rows.len() {
            break;
        }
        let Some(found) = (next..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(next, found);
        let inv = rows[next][c].recip();
        if !inv.is_one() {
            for x in rows[next].iter_mut().skip(c) {
                if !x.is_zero() {
                    *x *= &inv;
                }
            }
        }
        let pivot_row = std::mem::take(&mut rows[next]);
        let support: Vec<usize> = (c..pivot_row.len()).filter(|&k| !pivot_row[k].is_zero()).collect();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == next || row.is_empty() || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for &k in &support {
                let delta = &factor * &pivot_row[k];
                row[k] -= delta;
            }
        }
        rows[next] = pivot_row;
        pivots.push(c);
        next += 1;
    }
    (next, pivots)
}

/// Scales a row to primitive integers; `None` for the zero row.
fn integer_row(row: &[Rational]) -> Option<Vec<BigInt>> {
    if row.iter().all(Zero::is_zero) {
        return None;
    }
    let lcm = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let mut out: Vec<BigInt> = row.iter().map(|q| q.numer() * (&lcm / q.denom())).collect();
    make_primitive(&mut out);
    Some(out)
}

fn make_primitive(row: &mut [BigInt]) {
    let g = row.iter().filter(|x| !x.is_zero()).fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut().filter(|x| !x.is_zero()) {
            *x /= &g;
        }
    }
}

/// Bareiss elimination: after step `k` every remaining entry is a
/// `(k+1)`-minor, so dividing by the previous pivot is exact.
fn integer_rank(mut rows: Vec<Vec<BigInt>>, cols: usize) -> usize {
    let mut rank = 0;
    let mut prev = BigInt::one();
    for c in 0..cols {
        let Some(found) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, found);
        let (done, rest) = rows.split_at_mut(rank + 1);
        let pivot = &done[rank];
        let p = &pivot[c];
        let support: Vec<usize> = (c + 1..cols).filter(|&k| !pivot[k].is_zero()).collect();
        for row in rest.iter_mut() {
            let f = std::mem::take(&mut row[c]);
            for x in row[c + 1..].iter_mut().filter(|x| !x.is_zero()) {
                *x *= p;
            }
            if !f.is_zero() {
                for &k in &support {
                    row[k] -= &f * &pivot[k];
                }
            }
            if !prev.is_one() {
                for x in row[c + 1..].iter_mut().filter(|x| !x.is_zero()) {
                    *x /= &prev;
                }
            }
        }
        prev = p.clone();
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

fn basis_of(m: &Matrix) -> Matrix {
    m.row_space()
}

/// RREF basis of `rowspace(a) ∩ rowspace(b)`.
pub fn intersect(a: &Matrix, b: &Matrix) -> Result<Matrix, LinalgError> {
    if a.cols != b.cols {
        return Err(LinalgError::DimensionMismatch { left: a.cols, right: b.cols });
    }
    let ba = basis_of(a);
    let bb = basis_of(b);
    let n = a.cols;
    if ba.rows == 0 || bb.rows == 0 {
        return Ok(Matrix::zeros(0, n));
    }
    // x·A = y·B  <=>  [A^T | -B^T] (x, y) = 0
    let mut system = Matrix::zeros(n, ba.rows + bb.rows);
    for c in 0..n {
        for r in 0..ba.rows {
            system.set(c, r, ba.get(r, c).clone());
        }
        for r in 0..bb.rows {
            system.set(c, ba.rows + r, -bb.get(r, c).clone());
        }
    }
    let kernel = system.kernel_basis();
    let mut vectors = Vec::with_capacity(kernel.rows);
    for coeffs in kernel.row_vecs() {
        let mut v = vec![Rational::zero(); n];
        for (r, x) in coeffs[..ba.rows].iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (c, slot) in v.iter_mut().enumerate() {
                let e = ba.get(r, c);
                if !e.is_zero() {
                    *slot += x * e;
                }
            }
        }
        vectors.push(v);
    }
    Ok(Matrix::from_rows(n, vectors).row_space())
}

/// RREF basis of `rowspace(a) + rowspace(b)`.
pub fn subspace_sum(a: &Matrix, b: &Matrix) -> Result<Matrix, LinalgError> {
    Ok(a.vstack(b)?.row_space())
}

/// Whether every row of `inner` lies in the row space of `outer`.
pub fn contains(outer: &Matrix, inner: &Matrix) -> Result<bool, LinalgError> {
    let both = subspace_sum(outer, inner)?;
    Ok(both.rows == outer.rank())
}

/// True when `m` is already in reduced row echelon form (zero rows last).
pub fn is_rref(m: &Matrix) -> bool {
    let mut last_pivot: Option<usize> = None;
    let mut seen_zero_row = false;
    for r in 0..m.rows {
        let lead = (0..m.cols).find(|&c| !m.get(r, c).is_zero());
        match lead {
            None => seen_zero_row = true,
            Some(p) => {
                if seen_zero_row || last_pivot.is_some_and(|lp| p <= lp) {
                    return false;
                }
                if !m.get(r, p).is_one() {
                    return false;
                }
                if (0..m.rows).any(|o| o != r && !m.get(o, p).is_zero()) {
                    return false;
                }
                last_pivot = Some(p);
            }
        }
    }
    true
}
