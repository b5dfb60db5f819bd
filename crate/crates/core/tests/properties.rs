use proptest::prelude::*;

use superschur::linalg::{is_rref, ratio};
use superschur::verify::{random_basis_change, random_nilpotent};
use superschur::{
    abelian_multiplier_formula, boundary_squares_to_zero, center, derived, direct_sum, is_nilpotent,
    lower_central_series, multiplier_dim, AlgebraBuilder, AlgebraFile, GradedDim, Matrix, Rational, SuperAlgebra,
};

fn entry() -> impl Strategy<Value = Rational> {
    (-3i64..=3, 1i64..=3).prop_map(|(n, d)| ratio(n, d))
}

fn matrix() -> impl Strategy<Value = Matrix> {
    (0usize..6, 0usize..6).prop_flat_map(|(r, c)| {
        prop::collection::vec(entry(), r * c).prop_map(move |data| Matrix::new(r, c, data).unwrap())
    })
}

fn graded(max_even: usize, max_odd: usize) -> impl Strategy<Value = GradedDim> {
    (0..=max_even, 0..=max_odd).prop_map(|(e, o)| GradedDim::new(e, o))
}

/// Seeded two-step nilpotent algebra with a nonempty central part.
fn nilpotent() -> impl Strategy<Value = SuperAlgebra> {
    (any::<u64>(), graded(3, 3), graded(2, 2))
        .prop_filter("needs room for brackets", |(_, v, w)| v.total() >= 1 && w.total() >= 1)
        .prop_map(|(seed, v, w)| random_nilpotent(seed, v, w, &superschur::verify::default_pool()))
}

/// `x ⋉ A(m|n)` with `[x, e_k] = λ_k e_k`: nilpotent exactly when every `λ_k` is zero.
fn diagonal_extension() -> impl Strategy<Value = (SuperAlgebra, bool)> {
    graded(2, 2).prop_flat_map(|a| {
        prop::collection::vec(-2i64..=2, a.total()).prop_map(move |lambdas| {
            let dim = GradedDim::new(a.even + 1, a.odd);
            let mut b = AlgebraBuilder::new(dim);
            for (k, &l) in lambdas.iter().enumerate() {
                if l != 0 {
                    // x sits at index 0; the even part of A follows it
                    b.add_i64(0, k + 1, k + 1, l);
                }
            }
            (b.build().unwrap(), lambdas.iter().all(|&l| l == 0))
        })
    })
}

fn random_vector(algebra: &SuperAlgebra, coeffs: &[i64], odd: bool) -> Vec<Rational> {
    let dim = algebra.dim();
    (0..dim.total())
        .map(|k| {
            let in_part = (k >= dim.even) == odd;
            Rational::from_integer(if in_part { coeffs[k % coeffs.len()].into() } else { 0.into() })
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_nullity(m in matrix()) {
        let rref = m.rref();
        prop_assert_eq!(m.rank(), rref.rank);
        prop_assert!(is_rref(&rref.reduced));
        prop_assert_eq!(m.transpose().rank(), rref.rank);
        let kernel = m.kernel_basis();
        prop_assert_eq!(rref.rank + kernel.rows(), m.cols());
        if kernel.rows() > 0 && m.rows() > 0 {
            prop_assert!(m.mul(&kernel.transpose()).unwrap().is_zero());
        }
    }

    #[test]
    fn rref_is_idempotent(m in matrix()) {
        let once = m.rref().reduced;
        prop_assert_eq!(once.rref().reduced, once);
    }

    #[test]
    fn inverse_when_full_rank(m in matrix()) {
        if m.rows() == m.cols() && m.rank() == m.rows() {
            let inv = m.inverse().unwrap();
            prop_assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(m.rows()));
        }
    }

    #[test]
    fn random_algebras_are_valid_and_two_step(l in nilpotent()) {
        prop_assert!(l.validate().is_ok());
        let series = lower_central_series(&l).unwrap();
        prop_assert!(series.whole.len() <= 3);
        prop_assert!(derived(&l).unwrap().dim().le(center(&l).unwrap().dim()) || l.is_abelian_table());
    }

    #[test]
    fn bracket_is_graded_skew(l in nilpotent(), cu in prop::collection::vec(-2i64..=2, 1..4),
                              cv in prop::collection::vec(-2i64..=2, 1..4), pu: bool, pv: bool) {
        let u = random_vector(&l, &cu, pu);
        let v = random_vector(&l, &cv, pv);
        let uv = l.bracket(&u, &v).unwrap();
        let vu = l.bracket(&v, &u).unwrap();
        let sign = if pu && pv { 1 } else { -1 };
        let expected: Vec<Rational> = uv.iter().map(|x| x * Rational::from_integer(sign.into())).collect();
        prop_assert_eq!(vu, expected);
    }

    #[test]
    fn differential_squares_to_zero(l in nilpotent()) {
        prop_assert!(boundary_squares_to_zero(&l).unwrap());
    }

    #[test]
    fn invariants_survive_basis_change(l in nilpotent(), seed: u64) {
        let c = random_basis_change(seed, &l);
        prop_assert!(c.validate().is_ok());
        prop_assert_eq!(multiplier_dim(&c).unwrap(), multiplier_dim(&l).unwrap());
        prop_assert_eq!(derived(&c).unwrap().dim(), derived(&l).unwrap().dim());
        prop_assert_eq!(center(&c).unwrap().dim(), center(&l).unwrap().dim());
        prop_assert_eq!(is_nilpotent(&c).unwrap(), is_nilpotent(&l).unwrap());
    }

    #[test]
    fn bound_attained_iff_abelian(l in nilpotent()) {
        let attained = multiplier_dim(&l).unwrap().total == abelian_multiplier_formula(l.dim());
        prop_assert_eq!(attained, derived(&l).unwrap().is_zero());
    }

    #[test]
    fn direct_sum_formula(a in nilpotent(), b in nilpotent()) {
        let ab = |x: &SuperAlgebra| x.dim().total() - derived(x).unwrap().dim().total();
        let lhs = multiplier_dim(&direct_sum(&a, &b).unwrap()).unwrap().total;
        let rhs = multiplier_dim(&a).unwrap().total + multiplier_dim(&b).unwrap().total + ab(&a) * ab(&b);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn nilpotent_iff_split_series_vanish((l, expect) in diagonal_extension()) {
        prop_assert!(l.validate().is_ok());
        let n = is_nilpotent(&l).unwrap();
        prop_assert_eq!(n.nilpotent, expect);
        prop_assert_eq!(n.split_vanishes, expect);
    }

    #[test]
    fn file_round_trip(l in nilpotent()) {
        let text = AlgebraFile::from_algebra(&l, None).to_json();
        let back = AlgebraFile::parse(&text).unwrap().load().unwrap();
        prop_assert_eq!(back.algebra, l);
    }
}
