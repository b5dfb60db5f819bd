//! Lie superalgebras given by structure constants on a homogeneous basis.
//!
//! Basis convention: indices `0..m` are even, `m..m+n` are odd. Only
//! canonical pairs are stored (`i < j`, plus `i == j` for odd `i`); the
//! bracket of any other ordered pair follows from graded skew-symmetry
//! `[e_j, e_i] = -(-1)^{|i||j|} [e_i, e_j]`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{self, format_rational, LinalgError, Matrix, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn bit(self) -> usize {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn plus(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl std::fmt::Display for Parity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// Koszul sign `(-1)^{a·b}`.
pub fn koszul(a: Parity, b: Parity) -> i64 {
    if a == Parity::Odd && b == Parity::Odd {
        -1
    } else {
        1
    }
}

/// Superdimension `(even | odd)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct GradedDim {
    pub even: usize,
    pub odd: usize,
}

impl GradedDim {
    pub const fn new(even: usize, odd: usize) -> Self {
        Self { even, odd }
    }

    pub const fn total(self) -> usize {
        self.even + self.odd
    }

    pub fn parity_of(self, index: usize) -> Parity {
        if index < self.even {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn le(self, other: GradedDim) -> bool {
        self.even <= other.even && self.odd <= other.odd
    }

    pub fn checked_sub(self, other: GradedDim) -> Option<GradedDim> {
        Some(GradedDim::new(self.even.checked_sub(other.even)?, self.odd.checked_sub(other.odd)?))
    }
}

impl std::ops::Add for GradedDim {
    type Output = GradedDim;
    fn add(self, rhs: GradedDim) -> GradedDim {
        GradedDim::new(self.even + rhs.even, self.odd + rhs.odd)
    }
}

impl fmt::Display for GradedDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}|{})", self.even, self.odd)
    }
}

/// Problems with a structure-constant table that make it not even a
/// candidate superalgebra. Distinct from Jacobi failures, which are
/// reported by [`SuperAlgebra::validate`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("pair ({i},{j}) has an index outside 0..{total}")]
    IndexOutOfRange { i: usize, j: usize, total: usize },
    #[error("pair ({i},{j}) is not canonical (need i < j, or i == j odd)")]
    NonCanonicalPair { i: usize, j: usize },
    #[error("pair ({i},{j}) has {len} coefficients, expected {expected}")]
    CoefficientLength { i: usize, j: usize, len: usize, expected: usize },
    #[error("bracket of ({i},{j}) has a component on index {k} of the wrong parity")]
    GradingViolation { i: usize, j: usize, k: usize },
    #[error("pair ({i},{j}) given twice")]
    DuplicatePair { i: usize, j: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error("algebra violates the graded Jacobi identity ({count} basis triples, first {first:?})")]
    Invalid { count: usize, first: [usize; 3] },
    #[error("ambient mismatch: {left} vs {right}")]
    AmbientMismatch { left: GradedDim, right: GradedDim },
    #[error("vector of length {len} does not live in an ambient space of dimension {expected}")]
    VectorLength { len: usize, expected: usize },
    #[error("vector is not homogeneous")]
    NonHomogeneous,
    #[error("subspace is not an ideal")]
    NotIdeal,
    #[error("subspace is not central")]
    NotCentral,
    #[error("basis change block {which} is not an invertible {expected}x{expected} matrix")]
    BadBasisChange { which: Parity, expected: usize },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A graded Jacobi failure on a basis triple.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JacobiViolation {
    pub triple: [usize; 3],
    #[serde(with = "crate::format::rational_vec")]
    pub value: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<JacobiViolation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

type SparseVec = Vec<(usize, Rational)>;

pub struct SuperAlgebra {
    dim: GradedDim,
    table: BTreeMap<(usize, usize), Vec<Rational>>,
    // [e_i, e_j] for every ordered pair, sparse, row-major.
    products: Vec<SparseVec>,
    validation: OnceLock<ValidationReport>,
}

impl Clone for SuperAlgebra {
    fn clone(&self) -> Self {
        Self {
            dim: self.dim,
            table: self.table.clone(),
            products: self.products.clone(),
            validation: self.validation.clone(),
        }
    }
}

impl PartialEq for SuperAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.table == other.table
    }
}

impl Eq for SuperAlgebra {}

impl fmt::Debug for SuperAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SuperAlgebra{} {{", self.dim)?;
        for ((i, j), v) in &self.table {
            let terms: Vec<String> = v
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| format!("{}*e{}", format_rational(c), k))
                .collect();
            write!(f, " [e{i},e{j}]={}", terms.join("+"))?;
        }
        write!(f, " }}")
    }
}

impl SuperAlgebra {
    /// Builds an algebra from canonical pairs and dense coefficient vectors.
    /// Zero vectors are dropped. Grading and index rules are enforced here;
    /// the Jacobi identity is not (see [`validate`](Self::validate)).
    pub fn new<I>(dim: GradedDim, entries: I) -> Result<Self, StructureError>
    where
        I: IntoIterator<Item = ((usize, usize), Vec<Rational>)>,
    {
        let total = dim.total();
        let mut table = BTreeMap::new();
        for ((i, j), coeffs) in entries {
            if i >= total || j >= total {
                return Err(StructureError::IndexOutOfRange { i, j, total });
            }
            if i > j || (i == j && dim.parity_of(i) == Parity::Even) {
                return Err(StructureError::NonCanonicalPair { i, j });
            }
            if coeffs.len() != total {
                return Err(StructureError::CoefficientLength { i, j, len: coeffs.len(), expected: total });
            }
            let target = dim.parity_of(i).plus(dim.parity_of(j));
            if let Some(k) = (0..total).find(|&k| !coeffs[k].is_zero() && dim.parity_of(k) != target) {
                return Err(StructureError::GradingViolation { i, j, k });
            }
            if table.contains_key(&(i, j)) {
                return Err(StructureError::DuplicatePair { i, j });
            }
            if coeffs.iter().any(|c| !c.is_zero()) {
                table.insert((i, j), coeffs);
            }
        }
        let mut products = vec![SparseVec::new(); total * total];
        for (&(i, j), coeffs) in &table {
            let sparse: SparseVec =
                coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k, c.clone())).collect();
            let sign = -koszul(dim.parity_of(i), dim.parity_of(j));
            if i != j {
                products[j * total + i] = sparse.iter().map(|(k, c)| (*k, c * linalg::rat(sign))).collect();
            }
            products[i * total + j] = sparse;
        }
        Ok(Self { dim, table, products, validation: OnceLock::new() })
    }

    pub fn abelian(dim: GradedDim) -> Self {
        Self::new(dim, std::iter::empty()).expect("empty table is always well formed")
    }

    pub fn dim(&self) -> GradedDim {
        self.dim
    }

    pub fn total(&self) -> usize {
        self.dim.total()
    }

    pub fn parity(&self, index: usize) -> Parity {
        self.dim.parity_of(index)
    }

    /// Nonzero canonical structure constants.
    pub fn table(&self) -> &BTreeMap<(usize, usize), Vec<Rational>> {
        &self.table
    }

    pub fn is_abelian_table(&self) -> bool {
        self.table.is_empty()
    }

    /// `[e_i, e_j]` as a sparse list of `(index, coefficient)`.
    pub fn basis_bracket(&self, i: usize, j: usize) -> &[(usize, Rational)] {
        &self.products[i * self.total() + j]
    }

    /// Bilinear bracket of two coordinate vectors.
    pub fn bracket(&self, u: &[Rational], v: &[Rational]) -> Result<Vec<Rational>, AlgebraError> {
        let n = self.total();
        for w in [u, v] {
            if w.len() != n {
                return Err(AlgebraError::VectorLength { len: w.len(), expected: n });
            }
        }
        let mut out = vec![Rational::zero(); n];
        for (a, ua) in u.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (b, vb) in v.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                let prod = self.basis_bracket(a, b);
                if prod.is_empty() {
                    continue;
                }
                let scale = ua * vb;
                for (k, c) in prod {
                    out[*k] += &scale * c;
                }
            }
        }
        Ok(out)
    }

    /// `[e_i, w]` for a sparse `w`.
    fn bracket_basis_sparse(&self, i: usize, w: &[(usize, Rational)]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.total()];
        for (b, c) in w {
            for (k, d) in self.basis_bracket(i, *b) {
                out[*k] += c * d;
            }
        }
        out
    }

    /// Graded Jacobi expression on basis elements:
    /// `(-1)^{|x||z|}[x,[y,z]] + (-1)^{|y||x|}[y,[z,x]] + (-1)^{|z||y|}[z,[x,y]]`.
    pub fn jacobi(&self, x: usize, y: usize, z: usize) -> Vec<Rational> {
        let (px, py, pz) = (self.parity(x), self.parity(y), self.parity(z));
        let mut out = vec![Rational::zero(); self.total()];
        for (sign, a, b, c) in [(koszul(px, pz), x, y, z), (koszul(py, px), y, z, x), (koszul(pz, py), z, x, y)] {
            let term = self.bracket_basis_sparse(a, self.basis_bracket(b, c));
            for (o, t) in out.iter_mut().zip(term) {
                if !t.is_zero() {
                    if sign > 0 {
                        *o += t;
                    } else {
                        *o -= t;
                    }
                }
            }
        }
        out
    }

    /// Exhaustive graded Jacobi check over basis triples `i <= j <= k`.
    /// Cached after the first call.
    pub fn validate(&self) -> &ValidationReport {
        self.validation.get_or_init(|| {
            let n = self.total();
            let mut violations = Vec::new();
            for i in 0..n {
                for j in i..n {
                    for k in j..n {
                        let value = self.jacobi(i, j, k);
                        if value.iter().any(|c| !c.is_zero()) {
                            violations.push(JacobiViolation { triple: [i, j, k], value });
                        }
                    }
                }
            }
            ValidationReport { violations }
        })
    }

    pub fn ensure_valid(&self) -> Result<(), AlgebraError> {
        let report = self.validate();
        match report.violations.first() {
            None => Ok(()),
            Some(v) => Err(AlgebraError::Invalid { count: report.violations.len(), first: v.triple }),
        }
    }

    pub fn unit_vector(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.total()];
        v[i] = Rational::one();
        v
    }

    /// Re-expresses the algebra in the basis given by the columns of the
    /// block-diagonal matrix `diag(even_block, odd_block)`.
    pub fn change_basis(&self, even_block: &Matrix, odd_block: &Matrix) -> Result<SuperAlgebra, AlgebraError> {
        let GradedDim { even: m, odd: n } = self.dim;
        let inv_even = invertible_block(even_block, m, Parity::Even)?;
        let inv_odd = invertible_block(odd_block, n, Parity::Odd)?;
        let total = m + n;
        let column = |idx: usize| -> Vec<Rational> {
            let mut v = vec![Rational::zero(); total];
            if idx < m {
                for (r, slot) in v[..m].iter_mut().enumerate() {
                    *slot = even_block.get(r, idx).clone();
                }
            } else {
                for (r, slot) in v[m..].iter_mut().enumerate() {
                    *slot = odd_block.get(r, idx - m).clone();
                }
            }
            v
        };
        let columns: Vec<Vec<Rational>> = (0..total).map(column).collect();
        let mut entries = Vec::new();
        for i in 0..total {
            for j in i..total {
                if i == j && self.parity(i) == Parity::Even {
                    continue;
                }
                let w = self.bracket(&columns[i], &columns[j])?;
                let mut coords = inv_even.apply(&w[..m]);
                coords.extend(inv_odd.apply(&w[m..]));
                entries.push(((i, j), coords));
            }
        }
        Ok(SuperAlgebra::new(self.dim, entries)?)
    }
}

fn invertible_block(block: &Matrix, size: usize, which: Parity) -> Result<Matrix, AlgebraError> {
    if block.rows() != size || block.cols() != size {
        return Err(AlgebraError::BadBasisChange { which, expected: size });
    }
    block.inverse().ok_or(AlgebraError::BadBasisChange { which, expected: size })
}

/// Incremental construction from brackets of basis elements in any order;
/// non-canonical pairs are folded onto their canonical partner with the
/// graded skew-symmetry sign.
#[derive(Debug, Clone)]
pub struct AlgebraBuilder {
    dim: GradedDim,
    entries: BTreeMap<(usize, usize), Vec<Rational>>,
    error: Option<StructureError>,
}

impl AlgebraBuilder {
    pub fn new(dim: GradedDim) -> Self {
        Self { dim, entries: BTreeMap::new(), error: None }
    }

    /// Adds `coeff * e_k` to `[e_i, e_j]`.
    pub fn add(&mut self, i: usize, j: usize, k: usize, coeff: Rational) -> &mut Self {
        let total = self.dim.total();
        if i >= total || j >= total || k >= total {
            self.error.get_or_insert(StructureError::IndexOutOfRange { i, j, total });
            return self;
        }
        let (a, b, c) = if i <= j {
            (i, j, coeff)
        } else {
            let sign = -koszul(self.dim.parity_of(i), self.dim.parity_of(j));
            (j, i, coeff * linalg::rat(sign))
        };
        if a == b && self.dim.parity_of(a) == Parity::Even {
            self.error.get_or_insert(StructureError::NonCanonicalPair { i, j });
            return self;
        }
        let slot = self.entries.entry((a, b)).or_insert_with(|| vec![Rational::zero(); total]);
        slot[k] += c;
        self
    }

    pub fn add_i64(&mut self, i: usize, j: usize, k: usize, coeff: i64) -> &mut Self {
        self.add(i, j, k, linalg::rat(coeff))
    }

    pub fn build(&self) -> Result<SuperAlgebra, StructureError> {
        if let Some(e) = &self.error {
            return Err(e.clone());
        }
        SuperAlgebra::new(self.dim, self.entries.clone())
    }
}

/// A ℤ₂-graded subspace, stored as RREF bases of its even and odd
/// components in even and odd coordinates respectively.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GradedSubspace {
    ambient: GradedDim,
    even: Matrix,
    odd: Matrix,
}

impl GradedSubspace {
    pub fn from_parts(ambient: GradedDim, even: Matrix, odd: Matrix) -> Result<Self, AlgebraError> {
        if even.cols() != ambient.even {
            return Err(LinalgError::DimensionMismatch { left: ambient.even, right: even.cols() }.into());
        }
        if odd.cols() != ambient.odd {
            return Err(LinalgError::DimensionMismatch { left: ambient.odd, right: odd.cols() }.into());
        }
        Ok(Self { ambient, even: even.row_space(), odd: odd.row_space() })
    }

    /// Span of homogeneous full-length coordinate vectors.
    pub fn from_vectors(ambient: GradedDim, vectors: &[Vec<Rational>]) -> Result<Self, AlgebraError> {
        let m = ambient.even;
        let mut even_rows = Vec::new();
        let mut odd_rows = Vec::new();
        for v in vectors {
            if v.len() != ambient.total() {
                return Err(AlgebraError::VectorLength { len: v.len(), expected: ambient.total() });
            }
            let has_even = v[..m].iter().any(|c| !c.is_zero());
            let has_odd = v[m..].iter().any(|c| !c.is_zero());
            match (has_even, has_odd) {
                (true, true) => return Err(AlgebraError::NonHomogeneous),
                (true, false) => even_rows.push(v[..m].to_vec()),
                (false, true) => odd_rows.push(v[m..].to_vec()),
                (false, false) => {}
            }
        }
        Self::from_parts(ambient, Matrix::from_rows(ambient.even, even_rows), Matrix::from_rows(ambient.odd, odd_rows))
    }

    /// Span of the given basis indices.
    pub fn from_indices(ambient: GradedDim, indices: &[usize]) -> Result<Self, AlgebraError> {
        let vectors: Vec<Vec<Rational>> = indices
            .iter()
            .map(|&i| {
                let mut v = vec![Rational::zero(); ambient.total()];
                if i >= ambient.total() {
                    return Err(AlgebraError::VectorLength { len: i + 1, expected: ambient.total() });
                }
                v[i] = Rational::one();
                Ok(v)
            })
            .collect::<Result<_, _>>()?;
        Self::from_vectors(ambient, &vectors)
    }

    pub fn zero(ambient: GradedDim) -> Self {
        Self { ambient, even: Matrix::zeros(0, ambient.even), odd: Matrix::zeros(0, ambient.odd) }
    }

    pub fn full(ambient: GradedDim) -> Self {
        Self { ambient, even: Matrix::identity(ambient.even), odd: Matrix::identity(ambient.odd) }
    }

    pub fn ambient(&self) -> GradedDim {
        self.ambient
    }

    pub fn even_basis(&self) -> &Matrix {
        &self.even
    }

    pub fn odd_basis(&self) -> &Matrix {
        &self.odd
    }

    pub fn dim(&self) -> GradedDim {
        GradedDim::new(self.even.rows(), self.odd.rows())
    }

    pub fn is_zero(&self) -> bool {
        self.dim().total() == 0
    }

    /// Basis as full-length homogeneous vectors, even ones first.
    pub fn basis_vectors(&self) -> Vec<Vec<Rational>> {
        let m = self.ambient.even;
        let n = self.ambient.odd;
        let mut out = Vec::with_capacity(self.dim().total());
        for row in self.even.row_vecs() {
            let mut v = row.to_vec();
            v.extend(std::iter::repeat_with(Rational::zero).take(n));
            out.push(v);
        }
        for row in self.odd.row_vecs() {
            let mut v = vec![Rational::zero(); m];
            v.extend(row.iter().cloned());
            out.push(v);
        }
        out
    }

    fn check_ambient(&self, other: &GradedSubspace) -> Result<(), AlgebraError> {
        if self.ambient != other.ambient {
            return Err(AlgebraError::AmbientMismatch { left: self.ambient, right: other.ambient });
        }
        Ok(())
    }

    pub fn contains(&self, other: &GradedSubspace) -> Result<bool, AlgebraError> {
        self.check_ambient(other)?;
        Ok(linalg::contains(&self.even, &other.even)? && linalg::contains(&self.odd, &other.odd)?)
    }

    pub fn intersect(&self, other: &GradedSubspace) -> Result<GradedSubspace, AlgebraError> {
        self.check_ambient(other)?;
        Ok(Self {
            ambient: self.ambient,
            even: linalg::intersect(&self.even, &other.even)?,
            odd: linalg::intersect(&self.odd, &other.odd)?,
        })
    }

    pub fn sum(&self, other: &GradedSubspace) -> Result<GradedSubspace, AlgebraError> {
        self.check_ambient(other)?;
        Ok(Self {
            ambient: self.ambient,
            even: linalg::subspace_sum(&self.even, &other.even)?,
            odd: linalg::subspace_sum(&self.odd, &other.odd)?,
        })
    }
}

/// Span of `[u, v]` over basis vectors `u` of `i` and `v` of `j`.
pub fn bracket_span(
    algebra: &SuperAlgebra,
    i: &GradedSubspace,
    j: &GradedSubspace,
) -> Result<GradedSubspace, AlgebraError> {
    let ambient = algebra.dim();
    for s in [i, j] {
        if s.ambient() != ambient {
            return Err(AlgebraError::AmbientMismatch { left: ambient, right: s.ambient() });
        }
    }
    let left = i.basis_vectors();
    let right = j.basis_vectors();
    let mut products = Vec::with_capacity(left.len() * right.len());
    for u in &left {
        for v in &right {
            products.push(algebra.bracket(u, v)?);
        }
    }
    // brackets of homogeneous vectors are homogeneous
    GradedSubspace::from_vectors(ambient, &products)
}

/// A quotient algebra together with the data needed to project into it.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub algebra: SuperAlgebra,
    pub ideal: GradedSubspace,
    /// Indices of the ambient basis vectors kept as the quotient basis,
    /// even ones first.
    pub complement: Vec<usize>,
}

impl Quotient {
    /// Coordinates of the image of `v` in the quotient basis.
    pub fn project(&self, v: &[Rational]) -> Vec<Rational> {
        let m = self.ideal.ambient().even;
        let mut even = v[..m].to_vec();
        let mut odd = v[m..].to_vec();
        reduce_modulo(&mut even, self.ideal.even_basis());
        reduce_modulo(&mut odd, self.ideal.odd_basis());
        self.complement.iter().map(|&idx| if idx < m { even[idx].clone() } else { odd[idx - m].clone() }).collect()
    }
}

fn reduce_modulo(v: &mut [Rational], basis: &Matrix) {
    for row in basis.row_vecs() {
        let Some(p) = row.iter().position(|c| !c.is_zero()) else { continue };
        if v[p].is_zero() {
            continue;
        }
        let factor = v[p].clone();
        for (x, r) in v.iter_mut().zip(row) {
            if !r.is_zero() {
                *x -= &factor * r;
            }
        }
    }
}

fn pivot_columns(basis: &Matrix) -> Vec<usize> {
    basis.row_vecs().filter_map(|row| row.iter().position(|c| !c.is_zero())).collect()
}

/// `L / I` for a graded ideal `I`. The quotient basis is the set of standard
/// basis vectors outside the pivot columns of `I`'s RREF basis, per parity.
pub fn quotient(algebra: &SuperAlgebra, ideal: &GradedSubspace) -> Result<Quotient, AlgebraError> {
    let ambient = algebra.dim();
    if ideal.ambient() != ambient {
        return Err(AlgebraError::AmbientMismatch { left: ambient, right: ideal.ambient() });
    }
    let full = GradedSubspace::full(ambient);
    if !ideal.contains(&bracket_span(algebra, &full, ideal)?)? {
        return Err(AlgebraError::NotIdeal);
    }
    let even_pivots = pivot_columns(ideal.even_basis());
    let odd_pivots = pivot_columns(ideal.odd_basis());
    let complement: Vec<usize> = (0..ambient.even)
        .filter(|c| !even_pivots.contains(c))
        .chain((0..ambient.odd).filter(|c| !odd_pivots.contains(c)).map(|c| c + ambient.even))
        .collect();
    let qdim = ambient.checked_sub(ideal.dim()).expect("subspace dimension bounded by ambient");
    let mut partial = Quotient { algebra: SuperAlgebra::abelian(qdim), ideal: ideal.clone(), complement };
    let mut entries = Vec::new();
    for (a, &i) in partial.complement.iter().enumerate() {
        for (b, &j) in partial.complement.iter().enumerate().skip(a) {
            if a == b && algebra.parity(i) == Parity::Even {
                continue;
            }
            let w = algebra.bracket(&algebra.unit_vector(i), &algebra.unit_vector(j))?;
            entries.push(((a, b), partial.project(&w)));
        }
    }
    partial.algebra = SuperAlgebra::new(qdim, entries)?;
    Ok(partial)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    fn heisenberg_10() -> SuperAlgebra {
        let mut b = AlgebraBuilder::new(GradedDim::new(3, 0));
        b.add_i64(0, 1, 2, 1);
        b.build().unwrap()
    }

    fn heisenberg_02() -> SuperAlgebra {
        let mut b = AlgebraBuilder::new(GradedDim::new(1, 2));
        b.add_i64(1, 1, 0, 1).add_i64(2, 2, 0, 1);
        b.build().unwrap()
    }

    /// z, w even; y, eta odd; [y,y] = z + w, [y,z] = eta.
    fn broken_cover() -> SuperAlgebra {
        let mut b = AlgebraBuilder::new(GradedDim::new(2, 2));
        b.add_i64(2, 2, 0, 1).add_i64(2, 2, 1, 1).add_i64(2, 0, 3, 1);
        b.build().unwrap()
    }

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn structural_errors() {
        let d = GradedDim::new(2, 1);
        let e = SuperAlgebra::new(d, [((0, 0), v(&[1, 0, 0]))]).unwrap_err();
        assert_eq!(e, StructureError::NonCanonicalPair { i: 0, j: 0 });
        let e = SuperAlgebra::new(d, [((1, 0), v(&[1, 0, 0]))]).unwrap_err();
        assert_eq!(e, StructureError::NonCanonicalPair { i: 1, j: 0 });
        let e = SuperAlgebra::new(d, [((0, 1), v(&[0, 0, 1]))]).unwrap_err();
        assert_eq!(e, StructureError::GradingViolation { i: 0, j: 1, k: 2 });
        let e = SuperAlgebra::new(d, [((0, 2), v(&[1, 0, 0]))]).unwrap_err();
        assert_eq!(e, StructureError::GradingViolation { i: 0, j: 2, k: 0 });
        let e = SuperAlgebra::new(d, [((0, 5), v(&[0, 0, 0]))]).unwrap_err();
        assert!(matches!(e, StructureError::IndexOutOfRange { .. }));
        let e = SuperAlgebra::new(d, [((0, 1), v(&[0, 0]))]).unwrap_err();
        assert!(matches!(e, StructureError::CoefficientLength { .. }));
        // odd square is canonical
        assert!(SuperAlgebra::new(d, [((2, 2), v(&[1, 0, 0]))]).is_ok());
    }

    #[test]
    fn validate_examples() {
        assert!(SuperAlgebra::abelian(GradedDim::new(2, 2)).validate().is_ok());
        assert!(heisenberg_10().validate().is_ok());
        assert!(heisenberg_02().validate().is_ok());
        let bad = broken_cover();
        let report = bad.validate();
        assert_eq!(report.violations.len(), 1);
        assert_eq!(report.violations[0].triple, [2, 2, 2]);
        assert_eq!(report.violations[0].value, v(&[0, 0, 0, -3]));
        assert!(matches!(broken_cover().ensure_valid(), Err(AlgebraError::Invalid { .. })));
    }

    #[test]
    fn bracket_examples() {
        let h = heisenberg_10();
        assert_eq!(h.bracket(&v(&[1, 0, 0]), &v(&[0, 1, 0])).unwrap(), v(&[0, 0, 1]));
        assert_eq!(h.bracket(&v(&[0, 1, 0]), &v(&[1, 0, 0])).unwrap(), v(&[0, 0, -1]));
        let u = v(&[3, -2, 5]);
        assert_eq!(h.bracket(&u, &u).unwrap(), v(&[0, 0, 0]));
        let h02 = heisenberg_02();
        let y = v(&[0, 1, 1]);
        assert_eq!(h02.bracket(&y, &y).unwrap(), v(&[2, 0, 0]));
        assert!(matches!(h02.bracket(&y, &v(&[1])), Err(AlgebraError::VectorLength { .. })));
    }

    #[test]
    fn graded_skew_symmetry_on_basis() {
        for alg in [heisenberg_10(), heisenberg_02(), broken_cover()] {
            for i in 0..alg.total() {
                for j in 0..alg.total() {
                    let a = alg.bracket(&alg.unit_vector(i), &alg.unit_vector(j)).unwrap();
                    let b = alg.bracket(&alg.unit_vector(j), &alg.unit_vector(i)).unwrap();
                    let s = rat(-koszul(alg.parity(i), alg.parity(j)));
                    let expected: Vec<Rational> = b.iter().map(|x| x * &s).collect();
                    assert_eq!(a, expected);
                }
            }
        }
    }

    #[test]
    fn bracket_span_examples() {
        let ab = SuperAlgebra::abelian(GradedDim::new(2, 1));
        let full = GradedSubspace::full(ab.dim());
        assert!(bracket_span(&ab, &full, &full).unwrap().is_zero());

        let h = heisenberg_10();
        let i = GradedSubspace::from_indices(h.dim(), &[0]).unwrap();
        let j = GradedSubspace::from_indices(h.dim(), &[1]).unwrap();
        let s = bracket_span(&h, &i, &j).unwrap();
        assert_eq!(s, GradedSubspace::from_indices(h.dim(), &[2]).unwrap());
        assert_eq!(s, bracket_span(&h, &j, &i).unwrap());
        let other = GradedSubspace::full(GradedDim::new(2, 0));
        assert!(matches!(bracket_span(&h, &other, &j), Err(AlgebraError::AmbientMismatch { .. })));
    }

    #[test]
    fn quotient_examples() {
        let h = heisenberg_10();
        let full = GradedSubspace::full(h.dim());
        let q = quotient(&h, &full).unwrap();
        assert_eq!(q.algebra.dim(), GradedDim::new(0, 0));

        let z = GradedSubspace::from_indices(h.dim(), &[2]).unwrap();
        let q = quotient(&h, &z).unwrap();
        assert_eq!(q.algebra, SuperAlgebra::abelian(GradedDim::new(2, 0)));
        assert_eq!(q.complement, vec![0, 1]);

        let x1 = GradedSubspace::from_indices(h.dim(), &[0]).unwrap();
        assert_eq!(quotient(&h, &x1).unwrap_err(), AlgebraError::NotIdeal);
    }

    #[test]
    fn quotient_by_non_coordinate_ideal() {
        // H(1,0) ⊕ A(1|0) = span{x1,x2,z,a}; ideal span{z + a} is central.
        let mut b = AlgebraBuilder::new(GradedDim::new(4, 0));
        b.add_i64(0, 1, 2, 1);
        let l = b.build().unwrap();
        let ideal = GradedSubspace::from_vectors(l.dim(), &[v(&[0, 0, 1, 1])]).unwrap();
        let q = quotient(&l, &ideal).unwrap();
        assert_eq!(q.complement, vec![0, 1, 3]);
        // z ≡ -a modulo the ideal
        assert_eq!(q.algebra.basis_bracket(0, 1), &[(2, rat(-1))]);
        assert!(q.algebra.validate().is_ok());
    }

    #[test]
    fn non_homogeneous_rejected() {
        let d = GradedDim::new(1, 1);
        assert_eq!(GradedSubspace::from_vectors(d, &[v(&[1, 1])]).unwrap_err(), AlgebraError::NonHomogeneous);
    }

    #[test]
    fn change_basis_identity_is_noop() {
        let h = heisenberg_02();
        let same = h.change_basis(&Matrix::identity(1), &Matrix::identity(2)).unwrap();
        assert_eq!(same, h);
        let bad = h.change_basis(&Matrix::identity(1), &Matrix::zeros(2, 2));
        assert!(matches!(bad, Err(AlgebraError::BadBasisChange { which: Parity::Odd, .. })));
    }

    #[test]
    fn change_basis_scales_structure_constants() {
        let h = heisenberg_10();
        // x1 -> 2 x1: [2x1, x2] = 2z
        let p = Matrix::from_i64(&[&[2, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let h2 = h.change_basis(&p, &Matrix::identity(0)).unwrap();
        assert_eq!(h2.basis_bracket(0, 1), &[(2, rat(2))]);
    }
}
