//! Named model algebras: abelian `A(m|n)`, special Heisenberg `H(m,n)` with
//! even center, direct sums, and explicit stem covers of `H(m,n)`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::algebra::{AlgebraBuilder, AlgebraError, GradedDim, GradedSubspace, SuperAlgebra};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("H(m,n) needs m + n >= 1")]
    EmptyHeisenberg,
    #[error(
        "no stem cover is constructed for H(0,1): the two-generator cover with [y,z] = eta \
         fails the graded Jacobi identity at (y,y,y) (value -3 eta), and the multiplier of \
         H(0,1) computes to 0, not 2"
    )]
    CoverZeroOne,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Description of a named model algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModelSpec {
    Abelian(usize, usize),
    Heisenberg(usize, usize),
    DirectSum(Box<ModelSpec>, Box<ModelSpec>),
    StemCover(usize, usize),
}

impl ModelSpec {
    pub fn build(&self) -> Result<SuperAlgebra, ModelError> {
        match self {
            ModelSpec::Abelian(m, n) => Ok(abelian(*m, *n)),
            ModelSpec::Heisenberg(m, n) => heisenberg(*m, *n),
            ModelSpec::DirectSum(a, b) => Ok(direct_sum(&a.build()?, &b.build()?)?),
            ModelSpec::StemCover(m, n) => Ok(stem_cover_heisenberg(*m, *n)?.algebra),
        }
    }
}

impl fmt::Display for ModelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelSpec::Abelian(m, n) => write!(f, "A({m}|{n})"),
            ModelSpec::Heisenberg(m, n) => write!(f, "H({m},{n})"),
            ModelSpec::DirectSum(a, b) => write!(f, "{a}+{b}"),
            ModelSpec::StemCover(m, n) => write!(f, "K({m},{n})"),
        }
    }
}

/// Kind names accepted on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelKind {
    Abelian,
    Heisenberg,
}

impl FromStr for ModelKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "abelian" => Ok(ModelKind::Abelian),
            "heisenberg" => Ok(ModelKind::Heisenberg),
            other => Err(format!("unknown model kind {other:?} (expected abelian or heisenberg)")),
        }
    }
}

pub fn abelian(m: usize, n: usize) -> SuperAlgebra {
    SuperAlgebra::abelian(GradedDim::new(m, n))
}

/// `H(m,n)`: even basis `x_1..x_{2m}, z`, odd basis `y_1..y_n`, with
/// `[x_i, x_{m+i}] = z` and `[y_j, y_j] = z`.
pub fn heisenberg(m: usize, n: usize) -> Result<SuperAlgebra, ModelError> {
    if m + n == 0 {
        return Err(ModelError::EmptyHeisenberg);
    }
    let z = 2 * m;
    let mut b = AlgebraBuilder::new(GradedDim::new(2 * m + 1, n));
    for i in 0..m {
        b.add_i64(i, m + i, z, 1);
    }
    for j in 0..n {
        let y = 2 * m + 1 + j;
        b.add_i64(y, y, z, 1);
    }
    Ok(b.build().expect("Heisenberg table is well formed"))
}

/// `A ⊕ B` with basis `A_even, B_even, A_odd, B_odd`.
pub fn direct_sum(a: &SuperAlgebra, b: &SuperAlgebra) -> Result<SuperAlgebra, AlgebraError> {
    a.ensure_valid()?;
    b.ensure_valid()?;
    let (da, db) = (a.dim(), b.dim());
    let dim = da + db;
    let reindex_a = |i: usize| if i < da.even { i } else { i + db.even };
    let reindex_b = |i: usize| if i < db.even { da.even + i } else { dim.even + da.odd + (i - db.even) };
    let mut builder = AlgebraBuilder::new(dim);
    for (src, map) in [(a, &reindex_a as &dyn Fn(usize) -> usize), (b, &reindex_b)] {
        for (&(i, j), coeffs) in src.table() {
            for (k, c) in coeffs.iter().enumerate() {
                if !num_traits::Zero::is_zero(c) {
                    builder.add(map(i), map(j), map(k), c.clone());
                }
            }
        }
    }
    Ok(builder.build()?)
}

/// A stem cover `K` of `H(m,n)` with kernel `W ⊆ Z(K) ∩ K'`.
#[derive(Debug, Clone)]
pub struct StemCover {
    pub algebra: SuperAlgebra,
    pub kernel: GradedSubspace,
}

/// Explicit stem cover of `H(m,n)`.
///
/// For `m + n >= 2` the even basis is `x_1..x_{2m}, ζ, ŵ_2..ŵ_m, v̂_j,
/// w_{k,l}, v_{k',l'}` and the odd basis is `y_1..y_n, γ_{k,j}`, where
/// `[x_1,x_{m+1}] = ζ`, `[x_i,x_{m+i}] = ζ + ŵ_i`, `[y_j,y_j] = ζ + v̂_j`,
/// `[x_k,x_l] = w_{k,l}`, `[y_k,y_l] = v_{k,l}`, `[x_k,y_j] = γ_{k,j}`, and
/// every bracket with `ζ` or with the kernel vanishes. When `m = 0` the role
/// of `ζ` is played by `[y_1,y_1]` and `v̂_1` is dropped. For `(1,0)` the
/// cover is the five-dimensional algebra `[x_1,x_2] = ζ`, `[x_1,ζ] = η_1`,
/// `[x_2,ζ] = η_2` with kernel `span{η_1, η_2}`.
pub fn stem_cover_heisenberg(m: usize, n: usize) -> Result<StemCover, ModelError> {
    match (m, n) {
        (0, 0) => return Err(ModelError::EmptyHeisenberg),
        (0, 1) => return Err(ModelError::CoverZeroOne),
        (1, 0) => {
            let mut b = AlgebraBuilder::new(GradedDim::new(5, 0));
            b.add_i64(0, 1, 2, 1).add_i64(0, 2, 3, 1).add_i64(1, 2, 4, 1);
            let algebra = b.build().expect("cover table is well formed");
            let kernel = GradedSubspace::from_indices(algebra.dim(), &[3, 4])?;
            return Ok(StemCover { algebra, kernel });
        }
        _ => {}
    }

    let mut even = 0usize;
    let mut next_even = || {
        even += 1;
        even - 1
    };
    let x: Vec<usize> = (0..2 * m).map(|_| next_even()).collect();
    let zeta = next_even();
    let w_hat: Vec<usize> = (1..m).map(|_| next_even()).collect(); // ŵ_2..ŵ_m
    let v_hat_from = if m == 0 { 1 } else { 0 };
    let v_hat: Vec<Option<usize>> = (0..n).map(|j| (j >= v_hat_from).then(&mut next_even)).collect();
    let mut w_pairs = Vec::new();
    for k in 0..2 * m {
        for l in k + 1..2 * m {
            if !(k < m && l == k + m) {
                w_pairs.push((k, l, next_even()));
            }
        }
    }
    let mut v_pairs = Vec::new();
    for k in 0..n {
        for l in k + 1..n {
            v_pairs.push((k, l, next_even()));
        }
    }
    let even_total = even;
    let y: Vec<usize> = (0..n).map(|j| even_total + j).collect();
    let gamma: Vec<usize> = (0..2 * m * n).map(|g| even_total + n + g).collect();
    let dim = GradedDim::new(even_total, n + 2 * m * n);

    let mut b = AlgebraBuilder::new(dim);
    for i in 0..m {
        b.add_i64(x[i], x[m + i], zeta, 1);
        if i >= 1 {
            b.add_i64(x[i], x[m + i], w_hat[i - 1], 1);
        }
    }
    for j in 0..n {
        b.add_i64(y[j], y[j], zeta, 1);
        if let Some(v) = v_hat[j] {
            b.add_i64(y[j], y[j], v, 1);
        }
    }
    for &(k, l, w) in &w_pairs {
        b.add_i64(x[k], x[l], w, 1);
    }
    for &(k, l, v) in &v_pairs {
        b.add_i64(y[k], y[l], v, 1);
    }
    for k in 0..2 * m {
        for j in 0..n {
            b.add_i64(x[k], y[j], gamma[k * n + j], 1);
        }
    }
    let algebra = b.build().expect("cover table is well formed");

    let kernel_indices: Vec<usize> = w_hat
        .iter()
        .copied()
        .chain(v_hat.iter().flatten().copied())
        .chain(w_pairs.iter().map(|p| p.2))
        .chain(v_pairs.iter().map(|p| p.2))
        .chain(gamma.iter().copied())
        .collect();
    let kernel = GradedSubspace::from_indices(dim, &kernel_indices)?;
    Ok(StemCover { algebra, kernel })
}

/// Graded dimension of the kernel the construction above produces.
pub fn stem_cover_kernel_dim(m: usize, n: usize) -> Option<GradedDim> {
    match (m, n) {
        (0, 0) | (0, 1) => None,
        (1, 0) => Some(GradedDim::new(2, 0)),
        _ => {
            let w_hat = m.saturating_sub(1);
            let v_hat = if m == 0 { n - 1 } else { n };
            let w_pairs = (2 * m) * (2 * m).saturating_sub(1) / 2 - m;
            let v_pairs = n * n.saturating_sub(1) / 2;
            Some(GradedDim::new(w_hat + v_hat + w_pairs + v_pairs, 2 * m * n))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::quotient;
    use crate::invariants::{center, derived};

    #[test]
    fn heisenberg_shapes() {
        let h = heisenberg(2, 1).unwrap();
        assert_eq!(h.dim(), GradedDim::new(5, 1));
        assert!(h.validate().is_ok());
        assert_eq!(derived(&h).unwrap(), GradedSubspace::from_indices(h.dim(), &[4]).unwrap());
        assert_eq!(center(&h).unwrap(), derived(&h).unwrap());
        assert_eq!(heisenberg(0, 0).unwrap_err(), ModelError::EmptyHeisenberg);
    }

    #[test]
    fn direct_sum_layout() {
        let s = direct_sum(&heisenberg(1, 0).unwrap(), &heisenberg(0, 1).unwrap()).unwrap();
        // x1 x2 z | z' || y'
        assert_eq!(s.dim(), GradedDim::new(4, 1));
        assert_eq!(s.basis_bracket(0, 1), &[(2, crate::linalg::rat(1))]);
        assert_eq!(s.basis_bracket(4, 4), &[(3, crate::linalg::rat(1))]);
        let zero = abelian(0, 0);
        assert_eq!(direct_sum(&s, &zero).unwrap(), s);
    }

    #[test]
    fn cover_shapes() {
        let c = stem_cover_heisenberg(1, 0).unwrap();
        assert_eq!(c.algebra.dim(), GradedDim::new(5, 0));
        assert_eq!(c.kernel.dim(), GradedDim::new(2, 0));
        let c = stem_cover_heisenberg(1, 1).unwrap();
        assert_eq!(c.kernel.dim(), GradedDim::new(1, 2));
        let c = stem_cover_heisenberg(0, 2).unwrap();
        assert_eq!(c.kernel.dim(), GradedDim::new(2, 0));
        assert!(matches!(stem_cover_heisenberg(0, 1), Err(ModelError::CoverZeroOne)));
        assert!(matches!(stem_cover_heisenberg(0, 0), Err(ModelError::EmptyHeisenberg)));
    }

    #[test]
    fn cover_quotient_is_heisenberg() {
        for (m, n) in [(1, 0), (2, 0), (1, 1), (0, 2), (0, 3), (2, 1), (1, 2)] {
            let c = stem_cover_heisenberg(m, n).unwrap();
            assert!(c.algebra.validate().is_ok(), "K({m},{n})");
            assert_eq!(Some(c.kernel.dim()), stem_cover_kernel_dim(m, n));
            let q = quotient(&c.algebra, &c.kernel).unwrap();
            assert_eq!(q.algebra, heisenberg(m, n).unwrap(), "K({m},{n})/W");
        }
    }

    #[test]
    fn cover_20_derived_and_center() {
        let c = stem_cover_heisenberg(2, 0).unwrap();
        assert_eq!(derived(&c.algebra).unwrap().dim(), GradedDim::new(6, 0));
        assert_eq!(center(&c.algebra).unwrap().dim(), GradedDim::new(6, 0));
    }

    #[test]
    fn kind_parsing() {
        assert_eq!("abelian".parse::<ModelKind>(), Ok(ModelKind::Abelian));
        assert!("free".parse::<ModelKind>().is_err());
        assert_eq!(
            ModelSpec::DirectSum(Box::new(ModelSpec::Heisenberg(1, 0)), Box::new(ModelSpec::Abelian(1, 1))).to_string(),
            "H(1,0)+A(1|1)"
        );
    }
}
