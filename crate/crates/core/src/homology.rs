//! Second homology of the super Chevalley–Eilenberg complex with trivial
//! coefficients, which computes the Schur multiplier `M(L)`.
//!
//! Chains live in the super exterior powers: antisymmetric in even symbols,
//! symmetric in odd ones. Both differentials preserve parity, so every
//! matrix below comes as an (even, odd) pair of blocks.

use std::collections::HashMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::{koszul, AlgebraError, GradedDim, Parity, SuperAlgebra};
use crate::linalg::{rat, Matrix, Rational};

/// Canonical basis of degree-2 chains.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainBasis2 {
    /// Even pairs `i < j`, then odd pairs `i <= j`, both lexicographic.
    pub even_gens: Vec<(usize, usize)>,
    /// Mixed pairs `(even i, odd j)`, lexicographic.
    pub odd_gens: Vec<(usize, usize)>,
    index: HashMap<(usize, usize), (Parity, usize)>,
}

impl ChainBasis2 {
    pub fn new(dim: GradedDim) -> Self {
        let GradedDim { even: m, odd: n } = dim;
        let total = m + n;
        let mut even_gens = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                even_gens.push((i, j));
            }
        }
        for i in m..total {
            for j in i..total {
                even_gens.push((i, j));
            }
        }
        let mut odd_gens = Vec::new();
        for i in 0..m {
            for j in m..total {
                odd_gens.push((i, j));
            }
        }
        let index = even_gens
            .iter()
            .enumerate()
            .map(|(k, &g)| (g, (Parity::Even, k)))
            .chain(odd_gens.iter().enumerate().map(|(k, &g)| (g, (Parity::Odd, k))))
            .collect();
        Self { even_gens, odd_gens, index }
    }

    pub fn len(&self) -> usize {
        self.even_gens.len() + self.odd_gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `e_p ∧ e_q` as `sign * generator`, using `u∧v = -(-1)^{|u||v|} v∧u`.
    /// `None` when the wedge vanishes (`e_p ∧ e_p` for even `p`).
    pub fn wedge(&self, dim: GradedDim, p: usize, q: usize) -> Option<(Parity, usize, i64)> {
        let (key, sign) = if p <= q { ((p, q), 1) } else { ((q, p), -koszul(dim.parity_of(p), dim.parity_of(q))) };
        self.index.get(&key).map(|&(parity, idx)| (parity, idx, sign))
    }
}

/// Canonical basis of degree-3 chains.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainBasis3 {
    /// `i<j<k` all even, then `i` even with odd `j <= k`.
    pub even_gens: Vec<(usize, usize, usize)>,
    /// `i<j` even with odd `k`, then `i<=j<=k` all odd.
    pub odd_gens: Vec<(usize, usize, usize)>,
}

impl ChainBasis3 {
    pub fn new(dim: GradedDim) -> Self {
        let GradedDim { even: m, odd: n } = dim;
        let total = m + n;
        let mut even_gens = Vec::new();
        let mut odd_gens = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                for k in j + 1..m {
                    even_gens.push((i, j, k));
                }
            }
        }
        for i in 0..m {
            for j in m..total {
                for k in j..total {
                    even_gens.push((i, j, k));
                }
            }
        }
        for i in 0..m {
            for j in i + 1..m {
                for k in m..total {
                    odd_gens.push((i, j, k));
                }
            }
        }
        for i in m..total {
            for j in i..total {
                for k in j..total {
                    odd_gens.push((i, j, k));
                }
            }
        }
        Self { even_gens, odd_gens }
    }

    pub fn len(&self) -> usize {
        self.even_gens.len() + self.odd_gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// A parity-preserving map split into its even and odd blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockMatrix {
    pub even: Matrix,
    pub odd: Matrix,
}

/// Rows: degree-2 generators; columns: algebra coordinates of the same
/// parity. Row `(i, j)` is `[e_i, e_j]`.
pub fn d2_matrix(algebra: &SuperAlgebra) -> Result<BlockMatrix, AlgebraError> {
    algebra.ensure_valid()?;
    let dim = algebra.dim();
    let basis = ChainBasis2::new(dim);
    let m = dim.even;
    let block = |gens: &[(usize, usize)], cols: usize, offset: usize| -> Matrix {
        let mut out = Matrix::zeros(gens.len(), cols);
        for (r, &(i, j)) in gens.iter().enumerate() {
            for (k, c) in algebra.basis_bracket(i, j) {
                out.set(r, k - offset, c.clone());
            }
        }
        out
    };
    Ok(BlockMatrix { even: block(&basis.even_gens, m, 0), odd: block(&basis.odd_gens, dim.odd, m) })
}

/// Boundary of a degree-3 generator over the degree-2 basis:
/// `[a,b]∧c - (-1)^{|b||c|}[a,c]∧b + (-1)^{|a|(|b|+|c|)}[b,c]∧a`.
fn boundary3(algebra: &SuperAlgebra, chains: &ChainBasis2, (a, b, c): (usize, usize, usize)) -> Vec<(usize, Rational)> {
    let dim = algebra.dim();
    let (pa, pb, pc) = (algebra.parity(a), algebra.parity(b), algebra.parity(c));
    let terms = [(1, a, b, c), (-koszul(pb, pc), a, c, b), (koszul(pa, pb.plus(pc)), b, c, a)];
    let mut acc: HashMap<usize, Rational> = HashMap::new();
    for (sign, x, y, w) in terms {
        for (k, coeff) in algebra.basis_bracket(x, y) {
            if let Some((_, idx, s)) = chains.wedge(dim, *k, w) {
                *acc.entry(idx).or_insert_with(Rational::zero) += coeff * rat(sign * s);
            }
        }
    }
    let mut out: Vec<(usize, Rational)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    out.sort_by_key(|(i, _)| *i);
    out
}

/// Rows: degree-3 generators; columns: degree-2 generators of the same parity.
pub fn d3_matrix(algebra: &SuperAlgebra) -> Result<BlockMatrix, AlgebraError> {
    algebra.ensure_valid()?;
    let dim = algebra.dim();
    let c2 = ChainBasis2::new(dim);
    let c3 = ChainBasis3::new(dim);
    let block = |gens: &[(usize, usize, usize)], cols: usize| -> Matrix {
        let mut out = Matrix::zeros(gens.len(), cols);
        for (r, &g) in gens.iter().enumerate() {
            for (col, coeff) in boundary3(algebra, &c2, g) {
                out.set(r, col, coeff);
            }
        }
        out
    };
    Ok(BlockMatrix { even: block(&c3.even_gens, c2.even_gens.len()), odd: block(&c3.odd_gens, c2.odd_gens.len()) })
}

/// Whether `d2 ∘ d3` vanishes on both parity blocks.
pub fn boundary_squares_to_zero(algebra: &SuperAlgebra) -> Result<bool, AlgebraError> {
    let d2 = d2_matrix(algebra)?;
    let d3 = d3_matrix(algebra)?;
    let even = d3.even.mul(&d2.even)?;
    let odd = d3.odd.mul(&d2.odd)?;
    Ok(even.is_zero() && odd.is_zero())
}

/// Graded dimension of `H_2(L) ≅ M(L)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplierResult {
    pub total: usize,
    pub even: usize,
    pub odd: usize,
    pub dim_ker_d2: usize,
    pub rank_d3: usize,
}

impl MultiplierResult {
    pub fn graded(&self) -> GradedDim {
        GradedDim::new(self.even, self.odd)
    }
}

pub fn multiplier_dim(algebra: &SuperAlgebra) -> Result<MultiplierResult, AlgebraError> {
    let d2 = d2_matrix(algebra)?;
    let d3 = d3_matrix(algebra)?;
    let ker_even = d2.even.rows() - d2.even.rank();
    let ker_odd = d2.odd.rows() - d2.odd.rank();
    let (rank_even, rank_odd) = rayon::join(|| d3.even.rank(), || d3.odd.rank());
    let even = ker_even - rank_even;
    let odd = ker_odd - rank_odd;
    Ok(MultiplierResult { total: even + odd, even, odd, dim_ker_d2: ker_even + ker_odd, rank_d3: rank_even + rank_odd })
}

/// `½[(m+n)² + (n−m)]`: the dimension of the degree-2 chains, and the
/// multiplier of the abelian algebra of dimension `(m|n)`.
pub fn abelian_multiplier_formula(dim: GradedDim) -> usize {
    let (m, n) = (dim.even, dim.odd);
    ((m + n) * (m + n) + n - m) / 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraBuilder;

    fn binom(n: usize, k: usize) -> usize {
        if k > n {
            return 0;
        }
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn chain_basis_counts() {
        for m in 0..5 {
            for n in 0..5 {
                let dim = GradedDim::new(m, n);
                let c2 = ChainBasis2::new(dim);
                assert_eq!(c2.even_gens.len(), binom(m, 2) + binom(n + 1, 2));
                assert_eq!(c2.odd_gens.len(), m * n);
                assert_eq!(c2.len(), abelian_multiplier_formula(dim));
                let c3 = ChainBasis3::new(dim);
                assert_eq!(c3.even_gens.len(), binom(m, 3) + m * binom(n + 1, 2));
                assert_eq!(c3.odd_gens.len(), binom(m, 2) * n + binom(n + 2, 3));
            }
        }
    }

    #[test]
    fn wedge_rules() {
        let dim = GradedDim::new(2, 2);
        let c2 = ChainBasis2::new(dim);
        assert_eq!(c2.wedge(dim, 0, 0), None);
        assert_eq!(c2.wedge(dim, 1, 0), Some((Parity::Even, 0, -1)));
        assert_eq!(c2.wedge(dim, 3, 2), Some((Parity::Even, 2, 1)));
        assert_eq!(c2.wedge(dim, 2, 2), Some((Parity::Even, 1, 1)));
        assert_eq!(c2.wedge(dim, 2, 0), Some((Parity::Odd, 0, -1)));
    }

    #[test]
    fn heisenberg_10_differentials() {
        let mut b = AlgebraBuilder::new(GradedDim::new(3, 0));
        b.add_i64(0, 1, 2, 1);
        let h = b.build().unwrap();
        let d2 = d2_matrix(&h).unwrap();
        assert_eq!(d2.even, Matrix::from_i64(&[&[0, 0, 1], &[0, 0, 0], &[0, 0, 0]]));
        let d3 = d3_matrix(&h).unwrap();
        assert!(d3.even.is_zero());
        assert_eq!(multiplier_dim(&h).unwrap().total, 2);
        assert!(boundary_squares_to_zero(&h).unwrap());
    }

    #[test]
    fn single_odd_square() {
        // z even, y odd, [y,y] = z.
        let mut b = AlgebraBuilder::new(GradedDim::new(1, 1));
        b.add_i64(1, 1, 0, 1);
        let h = b.build().unwrap();
        let d3 = d3_matrix(&h).unwrap();
        // odd block: row (y,y,y) over the single mixed generator (z,y)
        assert_eq!(d3.odd, Matrix::from_i64(&[&[3]]));
        let d2 = d2_matrix(&h).unwrap();
        assert_eq!(d2.even, Matrix::from_i64(&[&[1]]));
        assert_eq!(d2.odd, Matrix::from_i64(&[&[0]]));
        let r = multiplier_dim(&h).unwrap();
        assert_eq!(r, MultiplierResult { total: 0, even: 0, odd: 0, dim_ker_d2: 1, rank_d3: 1 });
    }

    #[test]
    fn abelian_has_zero_differentials() {
        let a = SuperAlgebra::abelian(GradedDim::new(2, 1));
        assert!(d2_matrix(&a).unwrap().even.is_zero());
        assert!(d3_matrix(&a).unwrap().odd.is_zero());
        assert_eq!(multiplier_dim(&a).unwrap().total, 4);
    }
}
