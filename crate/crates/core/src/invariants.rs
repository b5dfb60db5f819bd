//! Derived subalgebra, center, lower central series and nilpotency.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::{bracket_span, AlgebraError, GradedDim, GradedSubspace, Parity, SuperAlgebra};
use crate::linalg::{Matrix, Rational};

/// `L' = [L, L]`.
pub fn derived(algebra: &SuperAlgebra) -> Result<GradedSubspace, AlgebraError> {
    algebra.ensure_valid()?;
    // the canonical structure constants already span [L, L]
    let vectors: Vec<Vec<Rational>> = algebra.table().values().cloned().collect();
    GradedSubspace::from_vectors(algebra.dim(), &vectors)
}

/// `Z(L)`: the kernel of `v ↦ ([v, e_k])_k`, computed per parity.
pub fn center(algebra: &SuperAlgebra) -> Result<GradedSubspace, AlgebraError> {
    algebra.ensure_valid()?;
    let dim = algebra.dim();
    let n = dim.total();
    let block = |parity: Parity| -> Matrix {
        let cols: Vec<usize> = (0..n).filter(|&c| algebra.parity(c) == parity).collect();
        let mut rows = Vec::new();
        for k in 0..n {
            let mut by_output: Vec<Vec<Rational>> = vec![vec![Rational::zero(); cols.len()]; n];
            let mut touched = vec![false; n];
            for (local, &c) in cols.iter().enumerate() {
                for (o, coeff) in algebra.basis_bracket(c, k) {
                    by_output[*o][local] = coeff.clone();
                    touched[*o] = true;
                }
            }
            rows.extend(by_output.into_iter().zip(touched).filter(|(_, t)| *t).map(|(r, _)| r));
        }
        Matrix::from_rows(cols.len(), rows).kernel_basis()
    };
    GradedSubspace::from_parts(dim, block(Parity::Even), block(Parity::Odd))
}

/// Lower central series `C^0 = L`, `C^k = [L, C^{k-1}]`, together with the
/// split sequences `C^k(L_0) = [L_0, C^{k-1}(L_0)]` and
/// `C^k(L_1) = [L_0, C^{k-1}(L_1)]`. Each list runs until the next term
/// would repeat the last one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowerCentralSeries {
    pub whole: Vec<GradedSubspace>,
    pub even_split: Vec<GradedSubspace>,
    pub odd_split: Vec<GradedSubspace>,
}

fn iterate_until_stable(
    algebra: &SuperAlgebra,
    acting: &GradedSubspace,
    start: GradedSubspace,
) -> Result<Vec<GradedSubspace>, AlgebraError> {
    let mut terms = vec![start];
    loop {
        let last = terms.last().expect("series is never empty");
        let next = bracket_span(algebra, acting, last)?;
        if next.dim() == last.dim() {
            return Ok(terms);
        }
        terms.push(next);
    }
}

fn parity_part(dim: GradedDim, parity: Parity) -> GradedSubspace {
    let (even, odd) = match parity {
        Parity::Even => (Matrix::identity(dim.even), Matrix::zeros(0, dim.odd)),
        Parity::Odd => (Matrix::zeros(0, dim.even), Matrix::identity(dim.odd)),
    };
    GradedSubspace::from_parts(dim, even, odd).expect("shapes match the ambient")
}

pub fn lower_central_series(algebra: &SuperAlgebra) -> Result<LowerCentralSeries, AlgebraError> {
    algebra.ensure_valid()?;
    let dim = algebra.dim();
    let full = GradedSubspace::full(dim);
    let even = parity_part(dim, Parity::Even);
    let odd = parity_part(dim, Parity::Odd);
    Ok(LowerCentralSeries {
        whole: iterate_until_stable(algebra, &full, full.clone())?,
        even_split: iterate_until_stable(algebra, &even, even.clone())?,
        odd_split: iterate_until_stable(algebra, &even, odd)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Nilpotency {
    pub nilpotent: bool,
    /// Least `k` with `C^k(L) = 0`.
    pub class: Option<usize>,
    /// Least `(p, q)`, both at least 1, with `C^p(L_0) = C^q(L_1) = 0`.
    pub split_indices: Option<(usize, usize)>,
    /// Whether both split sequences reach zero. Must agree with `nilpotent`.
    pub split_vanishes: bool,
}

fn first_zero_from_one(terms: &[GradedSubspace]) -> Option<usize> {
    let last = terms.last()?;
    if !last.is_zero() {
        return None;
    }
    // C^0 may already be zero; the index is still reported from 1.
    Some(terms.iter().position(GradedSubspace::is_zero).unwrap_or(0).max(1))
}

pub fn is_nilpotent(algebra: &SuperAlgebra) -> Result<Nilpotency, AlgebraError> {
    let series = lower_central_series(algebra)?;
    Ok(nilpotency_of(&series))
}

fn nilpotency_of(series: &LowerCentralSeries) -> Nilpotency {
    let last = series.whole.last().expect("series is never empty");
    let nilpotent = last.is_zero();
    let class = nilpotent.then(|| series.whole.len() - 1);
    let p = first_zero_from_one(&series.even_split);
    let q = first_zero_from_one(&series.odd_split);
    let split_vanishes = p.is_some() && q.is_some();
    let split_indices = match (nilpotent, p, q) {
        (true, Some(p), Some(q)) => Some((p, q)),
        _ => None,
    };
    Nilpotency { nilpotent, class, split_indices, split_vanishes }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureProfile {
    pub dim: GradedDim,
    pub derived_dim: GradedDim,
    pub center_dim: GradedDim,
    pub nilpotent: bool,
    pub nilpotency_class: Option<usize>,
    pub split_indices: Option<(usize, usize)>,
    pub lower_central_dims: Vec<GradedDim>,
}

pub fn profile(algebra: &SuperAlgebra) -> Result<StructureProfile, AlgebraError> {
    let series = lower_central_series(algebra)?;
    let nil = nilpotency_of(&series);
    Ok(StructureProfile {
        dim: algebra.dim(),
        derived_dim: derived(algebra)?.dim(),
        center_dim: center(algebra)?.dim(),
        nilpotent: nil.nilpotent,
        nilpotency_class: nil.class,
        split_indices: nil.split_indices,
        lower_central_dims: series.whole.iter().map(GradedSubspace::dim).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraBuilder;

    fn d(e: usize, o: usize) -> GradedDim {
        GradedDim::new(e, o)
    }

    /// x even, y odd, [x, y] = y.
    fn non_nilpotent() -> SuperAlgebra {
        let mut b = AlgebraBuilder::new(d(1, 1));
        b.add_i64(0, 1, 1, 1);
        b.build().unwrap()
    }

    #[test]
    fn abelian_invariants() {
        let a = SuperAlgebra::abelian(d(3, 2));
        assert_eq!(derived(&a).unwrap().dim(), d(0, 0));
        assert_eq!(center(&a).unwrap(), GradedSubspace::full(a.dim()));
        let s = lower_central_series(&a).unwrap();
        assert_eq!(s.whole.len(), 2);
        assert!(s.whole[1].is_zero());
        let n = is_nilpotent(&a).unwrap();
        assert_eq!(
            n,
            Nilpotency { nilpotent: true, class: Some(1), split_indices: Some((1, 1)), split_vanishes: true }
        );
    }

    #[test]
    fn zero_algebra() {
        let z = SuperAlgebra::abelian(d(0, 0));
        let n = is_nilpotent(&z).unwrap();
        assert_eq!(n.class, Some(0));
        assert_eq!(n.split_indices, Some((1, 1)));
    }

    #[test]
    fn non_nilpotent_stabilizes() {
        let l = non_nilpotent();
        assert!(l.validate().is_ok());
        let s = lower_central_series(&l).unwrap();
        assert_eq!(s.whole.last().unwrap().dim(), d(0, 1));
        let n = is_nilpotent(&l).unwrap();
        assert!(!n.nilpotent);
        assert!(!n.split_vanishes);
        assert_eq!(n.class, None);
        assert_eq!(n.split_indices, None);
    }

    #[test]
    fn heisenberg_plus_abelian_center() {
        // H(1,0) ⊕ A(2|1): x1, x2, z, a1, a2 | b
        let mut b = AlgebraBuilder::new(d(5, 1));
        b.add_i64(0, 1, 2, 1);
        let l = b.build().unwrap();
        let c = center(&l).unwrap();
        assert_eq!(c.dim(), d(3, 1));
        assert_eq!(c, GradedSubspace::from_indices(l.dim(), &[2, 3, 4, 5]).unwrap());
    }

    #[test]
    fn invalid_algebra_rejected() {
        let mut b = AlgebraBuilder::new(d(2, 2));
        b.add_i64(2, 2, 0, 1).add_i64(2, 2, 1, 1).add_i64(2, 0, 3, 1);
        let bad = b.build().unwrap();
        assert!(matches!(derived(&bad), Err(AlgebraError::Invalid { .. })));
        assert!(matches!(center(&bad), Err(AlgebraError::Invalid { .. })));
        assert!(matches!(is_nilpotent(&bad), Err(AlgebraError::Invalid { .. })));
    }
}
