//! Mechanical checks of the multiplier bounds and equalities, each emitting a
//! structured verdict. Every side of every relation is recomputed from the
//! algebra at hand.

use std::fmt;
use std::sync::OnceLock;

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{quotient, AlgebraBuilder, AlgebraError, GradedDim, GradedSubspace, SuperAlgebra};
use crate::homology::{abelian_multiplier_formula, multiplier_dim, MultiplierResult};
use crate::invariants::{center, derived, is_nilpotent, Nilpotency};
use crate::linalg::{rat, Matrix, Rational};
use crate::models::{direct_sum, heisenberg, stem_cover_heisenberg, ModelError, ModelSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Claim {
    /// `dim L' <= ½[(m+n)² + (n−m)]` with `(m|n) = dim L/Z(L)`.
    #[serde(rename = "derived-bound")]
    DerivedBound,
    /// `dim M(L) <= ½[(m+n)² + (n−m)]` with `(m|n) = dim L`.
    #[serde(rename = "multiplier-bound")]
    MultiplierBound,
    /// The previous bound is attained iff `L` is abelian.
    #[serde(rename = "abelian-equality")]
    AbelianEquality,
    /// `dim M(L/K) <= dim M(L) + dim(K ∩ L')` for a graded ideal `K`.
    #[serde(rename = "quotient-inequality")]
    QuotientInequality,
    /// For central `K` and `H = L/K`:
    /// `dim M(L) + dim(L'∩K) <= dim M(H) + dim M(K) + dim(H/H')·dim K`.
    #[serde(rename = "central-ideal-tensor")]
    CentralIdealTensor,
    /// For central `K`: `dim M(L) + dim(L'∩K) <= ½[(m+n)² + (n−m)]`, `(m|n) = dim L`.
    #[serde(rename = "central-ideal-bound")]
    CentralIdealBound,
    /// `dim M(L) + dim L' <= ½[(m+n)² + (n−m)]`.
    #[serde(rename = "sum-bound")]
    SumBound,
    /// `dim M(A⊕B) = dim M(A) + dim M(B) + dim(A/A')·dim(B/B')`.
    #[serde(rename = "direct-sum")]
    DirectSum,
    /// Closed form for `dim M(H(m,n))`.
    #[serde(rename = "heisenberg-formula")]
    HeisenbergFormula,
    /// The explicit cover is a stem extension whose kernel has the
    /// dimension of the multiplier of the quotient.
    #[serde(rename = "stem-cover")]
    StemCover,
    /// Nilpotent `L` with `dim L' = (r|s)`, `r+s >= 1`:
    /// `dim M(L) <= ½[(m+n+r+s−2)(m+n−r−s−1)] + n + 1`.
    #[serde(rename = "main-bound")]
    MainBound,
    /// The previous bound is attained by `H(1,0) ⊕ A(m−3|n)` and
    /// `H(0,1) ⊕ A(m−1|n−1)`.
    #[serde(rename = "main-equality")]
    MainEquality,
}

impl Claim {
    pub fn id(self) -> &'static str {
        match self {
            Claim::DerivedBound => "derived-bound",
            Claim::MultiplierBound => "multiplier-bound",
            Claim::AbelianEquality => "abelian-equality",
            Claim::QuotientInequality => "quotient-inequality",
            Claim::CentralIdealTensor => "central-ideal-tensor",
            Claim::CentralIdealBound => "central-ideal-bound",
            Claim::SumBound => "sum-bound",
            Claim::DirectSum => "direct-sum",
            Claim::HeisenbergFormula => "heisenberg-formula",
            Claim::StemCover => "stem-cover",
            Claim::MainBound => "main-bound",
            Claim::MainEquality => "main-equality",
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING-KEBAB-CASE")]
pub enum Verdict {
    Pass,
    Fail,
    /// The stated value is contradicted by the computation on the documented
    /// `H(0,1)` family.
    Discrepancy,
    NotApplicable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Discrepancy => "DISCREPANCY",
            Verdict::NotApplicable => "NOT-APPLICABLE",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Relation {
    /// `lhs <= rhs`
    Le,
    /// `lhs == rhs`
    Eq,
    /// `lhs == rhs` exactly when the algebra is abelian
    EqIffAbelian,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimVerdict {
    pub claim: Claim,
    pub subject: String,
    pub relation: Relation,
    #[serde(with = "crate::format::rational_opt")]
    pub lhs: Option<Rational>,
    #[serde(with = "crate::format::rational_opt")]
    pub rhs: Option<Rational>,
    /// `rhs - lhs`.
    #[serde(with = "crate::format::rational_opt")]
    pub slack: Option<Rational>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

impl ClaimVerdict {
    fn compare(claim: Claim, subject: impl Into<String>, relation: Relation, lhs: Rational, rhs: Rational) -> Self {
        let holds = match relation {
            Relation::Le => lhs <= rhs,
            Relation::Eq | Relation::EqIffAbelian => lhs == rhs,
        };
        let slack = &rhs - &lhs;
        Self {
            claim,
            subject: subject.into(),
            relation,
            lhs: Some(lhs),
            rhs: Some(rhs),
            slack: Some(slack),
            verdict: if holds { Verdict::Pass } else { Verdict::Fail },
            note: None,
        }
    }

    fn not_applicable(claim: Claim, subject: impl Into<String>, relation: Relation, why: &str) -> Self {
        Self {
            claim,
            subject: subject.into(),
            relation,
            lhs: None,
            rhs: None,
            slack: None,
            verdict: Verdict::NotApplicable,
            note: Some(why.to_string()),
        }
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    fn failing_as_discrepancy(mut self, note: impl Into<String>) -> Self {
        if self.verdict == Verdict::Fail {
            self.verdict = Verdict::Discrepancy;
            self.note = Some(note.into());
        }
        self
    }
}

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("parameters out of range: {0}")]
    Parameters(String),
}

fn dim_r(d: GradedDim) -> Rational {
    rat(d.total() as i64)
}

fn count(n: usize) -> Rational {
    rat(n as i64)
}

fn half_square_bound(d: GradedDim) -> Rational {
    count(abelian_multiplier_formula(d))
}

/// `½[(m+n+r+s−2)(m+n−r−s−1)] + n + 1`.
pub fn main_bound_value(dim: GradedDim, derived: GradedDim) -> Rational {
    let t = dim.total() as i64;
    let d = derived.total() as i64;
    Rational::new(((t + d - 2) * (t - d - 1)).into(), 2.into()) + rat(dim.odd as i64 + 1)
}

/// Stated closed form for `dim M(H(m,n))`.
pub fn heisenberg_formula_value(m: usize, n: usize) -> Rational {
    let (m, n) = (m as i64, n as i64);
    if m + n >= 2 {
        rat(2 * m * m - m - 1 + 2 * m * n) + Rational::new((n * (n + 1)).into(), 2.into())
    } else {
        rat(2)
    }
}

/// Lazily computed invariants of one algebra, shared between checks.
struct Facts<'a> {
    name: String,
    algebra: &'a SuperAlgebra,
    derived: OnceLock<GradedSubspace>,
    center: OnceLock<GradedSubspace>,
    multiplier: OnceLock<MultiplierResult>,
    nilpotency: OnceLock<Nilpotency>,
}

impl<'a> Facts<'a> {
    fn new(name: impl Into<String>, algebra: &'a SuperAlgebra) -> Result<Self, AlgebraError> {
        algebra.ensure_valid()?;
        Ok(Self {
            name: name.into(),
            algebra,
            derived: OnceLock::new(),
            center: OnceLock::new(),
            multiplier: OnceLock::new(),
            nilpotency: OnceLock::new(),
        })
    }

    fn dim(&self) -> GradedDim {
        self.algebra.dim()
    }

    fn derived(&self) -> &GradedSubspace {
        self.derived.get_or_init(|| derived(self.algebra).expect("validated"))
    }

    fn center(&self) -> &GradedSubspace {
        self.center.get_or_init(|| center(self.algebra).expect("validated"))
    }

    fn multiplier(&self) -> usize {
        self.multiplier.get_or_init(|| multiplier_dim(self.algebra).expect("validated")).total
    }

    fn nilpotency(&self) -> &Nilpotency {
        self.nilpotency.get_or_init(|| is_nilpotent(self.algebra).expect("validated"))
    }
}

fn subject_name(algebra: &SuperAlgebra) -> String {
    format!("L{}", algebra.dim())
}

fn derived_bound(f: &Facts) -> ClaimVerdict {
    let mod_center = f.dim().checked_sub(f.center().dim()).expect("center is a subspace");
    ClaimVerdict::compare(
        Claim::DerivedBound,
        &f.name,
        Relation::Le,
        dim_r(f.derived().dim()),
        half_square_bound(mod_center),
    )
    .with_note(format!("dim L/Z(L) = {mod_center}"))
}

fn multiplier_bound(f: &Facts) -> ClaimVerdict {
    ClaimVerdict::compare(
        Claim::MultiplierBound,
        &f.name,
        Relation::Le,
        count(f.multiplier()),
        half_square_bound(f.dim()),
    )
}

fn abelian_equality(f: &Facts) -> ClaimVerdict {
    let lhs = count(f.multiplier());
    let rhs = half_square_bound(f.dim());
    let is_abelian = f.derived().is_zero();
    let attained = lhs == rhs;
    let slack = &rhs - &lhs;
    ClaimVerdict {
        claim: Claim::AbelianEquality,
        subject: f.name.clone(),
        relation: Relation::EqIffAbelian,
        lhs: Some(lhs),
        rhs: Some(rhs),
        slack: Some(slack),
        verdict: if attained == is_abelian { Verdict::Pass } else { Verdict::Fail },
        note: Some(format!("abelian = {is_abelian}")),
    }
}

fn quotient_inequality(f: &Facts, ideal: &GradedSubspace, label: &str) -> Result<ClaimVerdict, AlgebraError> {
    let q = quotient(f.algebra, ideal)?;
    let lhs = count(multiplier_dim(&q.algebra)?.total);
    let meet = ideal.intersect(f.derived())?;
    let rhs = count(f.multiplier()) + dim_r(meet.dim());
    Ok(ClaimVerdict::compare(Claim::QuotientInequality, format!("{} / {label}", f.name), Relation::Le, lhs, rhs))
}

fn central_ideal(f: &Facts, ideal: &GradedSubspace, label: &str) -> Result<[ClaimVerdict; 2], AlgebraError> {
    if !f.center().contains(ideal)? {
        return Err(AlgebraError::NotCentral);
    }
    let q = quotient(f.algebra, ideal)?;
    let h = &q.algebra;
    let h_ab = h.dim().checked_sub(derived(h)?.dim()).expect("derived is a subspace");
    let k_mult = multiplier_dim(&SuperAlgebra::abelian(ideal.dim()))?.total;
    let lhs = count(f.multiplier()) + dim_r(f.derived().intersect(ideal)?.dim());
    let tensor = count(multiplier_dim(h)?.total) + count(k_mult) + dim_r(h_ab) * dim_r(ideal.dim());
    let subject = format!("{} / {label}", f.name);
    Ok([
        ClaimVerdict::compare(Claim::CentralIdealTensor, subject.clone(), Relation::Le, lhs.clone(), tensor),
        ClaimVerdict::compare(Claim::CentralIdealBound, subject, Relation::Le, lhs, half_square_bound(f.dim())),
    ])
}

fn sum_bound(f: &Facts) -> ClaimVerdict {
    ClaimVerdict::compare(
        Claim::SumBound,
        &f.name,
        Relation::Le,
        count(f.multiplier()) + dim_r(f.derived().dim()),
        half_square_bound(f.dim()),
    )
}

fn main_bound(f: &Facts) -> ClaimVerdict {
    let derived = f.derived().dim();
    if derived.total() == 0 {
        return ClaimVerdict::not_applicable(Claim::MainBound, &f.name, Relation::Le, "abelian");
    }
    if !f.nilpotency().nilpotent {
        return ClaimVerdict::not_applicable(Claim::MainBound, &f.name, Relation::Le, "not nilpotent");
    }
    ClaimVerdict::compare(
        Claim::MainBound,
        &f.name,
        Relation::Le,
        count(f.multiplier()),
        main_bound_value(f.dim(), derived),
    )
    .with_note(format!("dim L' = {derived}"))
}

pub fn check_derived_bound(algebra: &SuperAlgebra) -> Result<ClaimVerdict, AlgebraError> {
    Ok(derived_bound(&Facts::new(subject_name(algebra), algebra)?))
}

pub fn check_multiplier_bound(algebra: &SuperAlgebra) -> Result<ClaimVerdict, AlgebraError> {
    Ok(multiplier_bound(&Facts::new(subject_name(algebra), algebra)?))
}

pub fn check_abelian_equality(algebra: &SuperAlgebra) -> Result<ClaimVerdict, AlgebraError> {
    Ok(abelian_equality(&Facts::new(subject_name(algebra), algebra)?))
}

pub fn check_quotient_inequality(algebra: &SuperAlgebra, ideal: &GradedSubspace) -> Result<ClaimVerdict, AlgebraError> {
    quotient_inequality(&Facts::new(subject_name(algebra), algebra)?, ideal, &format!("K{}", ideal.dim()))
}

/// Both central-ideal inequalities; errors if `ideal` is not central.
pub fn check_central_ideal(algebra: &SuperAlgebra, ideal: &GradedSubspace) -> Result<[ClaimVerdict; 2], AlgebraError> {
    central_ideal(&Facts::new(subject_name(algebra), algebra)?, ideal, &format!("K{}", ideal.dim()))
}

pub fn check_sum_bound(algebra: &SuperAlgebra) -> Result<ClaimVerdict, AlgebraError> {
    Ok(sum_bound(&Facts::new(subject_name(algebra), algebra)?))
}

pub fn check_main_bound(algebra: &SuperAlgebra) -> Result<ClaimVerdict, AlgebraError> {
    Ok(main_bound(&Facts::new(subject_name(algebra), algebra)?))
}

fn direct_sum_check(a: &Facts, b: &Facts) -> Result<ClaimVerdict, AlgebraError> {
    let sum = direct_sum(a.algebra, b.algebra)?;
    let lhs = count(multiplier_dim(&sum)?.total);
    let ab_a = a.dim().checked_sub(a.derived().dim()).expect("subspace");
    let ab_b = b.dim().checked_sub(b.derived().dim()).expect("subspace");
    let rhs = count(a.multiplier()) + count(b.multiplier()) + dim_r(ab_a) * dim_r(ab_b);
    Ok(ClaimVerdict::compare(Claim::DirectSum, format!("{} + {}", a.name, b.name), Relation::Eq, lhs, rhs))
}

pub fn check_direct_sum(a: &SuperAlgebra, b: &SuperAlgebra) -> Result<ClaimVerdict, AlgebraError> {
    direct_sum_check(&Facts::new(subject_name(a), a)?, &Facts::new(subject_name(b), b)?)
}

pub fn check_heisenberg_formula(m: usize, n: usize) -> Result<ClaimVerdict, VerifyError> {
    let h = heisenberg(m, n)?;
    let computed = count(multiplier_dim(&h)?.total);
    let stated = heisenberg_formula_value(m, n);
    let v = ClaimVerdict::compare(
        Claim::HeisenbergFormula,
        ModelSpec::Heisenberg(m, n).to_string(),
        Relation::Eq,
        computed,
        stated,
    );
    Ok(if (m, n) == (0, 1) {
        v.failing_as_discrepancy(
            "H(0,1) is free on one odd generator; its multiplier computes to 0 against the stated 2",
        )
    } else {
        v
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EqualityFamily {
    /// `H(1,0) ⊕ A(m−3|n)`
    H10,
    /// `H(0,1) ⊕ A(m−1|n−1)`
    H01,
}

pub fn check_equality_case(m: usize, n: usize, family: EqualityFamily) -> Result<ClaimVerdict, VerifyError> {
    let spec = match family {
        EqualityFamily::H10 if m >= 3 => {
            ModelSpec::DirectSum(Box::new(ModelSpec::Heisenberg(1, 0)), Box::new(ModelSpec::Abelian(m - 3, n)))
        }
        EqualityFamily::H01 if m >= 1 && n >= 1 => {
            ModelSpec::DirectSum(Box::new(ModelSpec::Heisenberg(0, 1)), Box::new(ModelSpec::Abelian(m - 1, n - 1)))
        }
        EqualityFamily::H10 => return Err(VerifyError::Parameters(format!("need m >= 3, got ({m},{n})"))),
        EqualityFamily::H01 => return Err(VerifyError::Parameters(format!("need m, n >= 1, got ({m},{n})"))),
    };
    let algebra = spec.build()?;
    let facts = Facts::new(spec.to_string(), &algebra)?;
    let derived_dim = facts.derived().dim();
    let v = ClaimVerdict::compare(
        Claim::MainEquality,
        spec.to_string(),
        Relation::Eq,
        count(facts.multiplier()),
        main_bound_value(facts.dim(), derived_dim),
    )
    .with_note(format!("dim L = {}, dim L' = {derived_dim}", facts.dim()));
    Ok(match family {
        EqualityFamily::H10 => v,
        EqualityFamily::H01 => v.failing_as_discrepancy(format!(
            "inherits M(H(0,1)) = 0: computed total is the bound minus 2 (dim L = {}, dim L' = {derived_dim})",
            facts.dim()
        )),
    })
}

/// Stem condition `W ⊆ Z(K) ∩ K'`, and `dim W = dim M(K/W)`. When `target`
/// is given, `K/W` must also reproduce `H(m,n)` exactly.
pub fn check_stem_cover(
    name: &str,
    cover: &SuperAlgebra,
    kernel: &GradedSubspace,
    target: Option<(usize, usize)>,
) -> Result<ClaimVerdict, VerifyError> {
    let facts = Facts::new(name, cover)?;
    let stem = facts.center().intersect(facts.derived())?;
    let q = quotient(cover, kernel)?;
    let lhs = dim_r(kernel.dim());
    let rhs = count(multiplier_dim(&q.algebra)?.total);
    let mut v = ClaimVerdict::compare(Claim::StemCover, name, Relation::Eq, lhs, rhs);
    let mut problems = Vec::new();
    if !stem.contains(kernel)? {
        problems.push("kernel not inside Z(K) ∩ K'".to_string());
    }
    if let Some((m, n)) = target {
        if q.algebra != heisenberg(m, n)? {
            problems.push(format!("K/W differs from H({m},{n})"));
        }
    }
    if problems.is_empty() {
        v.note = Some(format!("dim W = {}", kernel.dim()));
    } else {
        v.verdict = Verdict::Fail;
        v.note = Some(problems.join("; "));
    }
    Ok(v)
}

/// Every per-algebra check: the bounds, quotients by `0`, `L'` and `Z(L)`,
/// and the central-ideal pair for one central basis vector and the full center.
fn per_algebra_checks(f: &Facts) -> Result<Vec<ClaimVerdict>, AlgebraError> {
    let dim = f.dim();
    let mut out = vec![derived_bound(f), multiplier_bound(f), abelian_equality(f)];
    out.push(quotient_inequality(f, &GradedSubspace::zero(dim), "0")?);
    out.push(quotient_inequality(f, f.derived(), "L'")?);
    out.push(quotient_inequality(f, f.center(), "Z(L)")?);
    let center = f.center();
    if let Some(first) = center.basis_vectors().into_iter().next() {
        let line = GradedSubspace::from_vectors(dim, &[first])?;
        out.extend(central_ideal(f, &line, "<z>")?);
        out.extend(central_ideal(f, center, "Z(L)")?);
    }
    out.push(sum_bound(f));
    out.push(main_bound(f));
    Ok(out)
}

/// Runs [`per_algebra_checks`] on one algebra.
pub fn check_all(name: &str, algebra: &SuperAlgebra) -> Result<Vec<ClaimVerdict>, AlgebraError> {
    per_algebra_checks(&Facts::new(name, algebra)?)
}

/// Two-step nilpotent algebra on `V ⊕ W` with `W` central: every bracket of
/// two `V` basis vectors is a random combination of `W` basis vectors of the
/// right parity, coefficients drawn uniformly from `pool`.
///
/// Basis layout: `V_even, W_even | V_odd, W_odd`.
pub fn random_nilpotent(seed: u64, v: GradedDim, w: GradedDim, pool: &[Rational]) -> SuperAlgebra {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dim = v + w;
    let v_even: Vec<usize> = (0..v.even).collect();
    let w_even: Vec<usize> = (v.even..dim.even).collect();
    let v_odd: Vec<usize> = (dim.even..dim.even + v.odd).collect();
    let w_odd: Vec<usize> = (dim.even + v.odd..dim.total()).collect();
    let mut b = AlgebraBuilder::new(dim);
    let mut draw = |b: &mut AlgebraBuilder, i: usize, j: usize, targets: &[usize]| {
        for &k in targets {
            let c = &pool[rng.gen_range(0..pool.len())];
            if !c.is_zero() {
                b.add(i, j, k, c.clone());
            }
        }
    };
    for (a, &i) in v_even.iter().enumerate() {
        for &j in &v_even[a + 1..] {
            draw(&mut b, i, j, &w_even);
        }
    }
    for (a, &i) in v_odd.iter().enumerate() {
        for &j in &v_odd[a..] {
            draw(&mut b, i, j, &w_even);
        }
    }
    for &i in &v_even {
        for &j in &v_odd {
            draw(&mut b, i, j, &w_odd);
        }
    }
    b.build().expect("random table respects the grading")
}

pub fn default_pool() -> Vec<Rational> {
    (-2..=2).map(rat).collect()
}

/// Random unimodular `P·L·U` with `P` a permutation and `L`, `U` unit
/// triangular with entries in `-1..=1`. Integer with integer inverse, so
/// integral structure constants stay integral.
fn random_unimodular(rng: &mut ChaCha8Rng, size: usize) -> Matrix {
    let mut lower = Matrix::identity(size);
    let mut upper = Matrix::identity(size);
    for i in 0..size {
        for j in 0..i {
            lower.set(i, j, rat(rng.gen_range(-1..=1)));
            upper.set(j, i, rat(rng.gen_range(-1..=1)));
        }
    }
    let mut order: Vec<usize> = (0..size).collect();
    order.shuffle(rng);
    let mut perm = Matrix::zeros(size, size);
    for (i, &j) in order.iter().enumerate() {
        perm.set(i, j, rat(1));
    }
    perm.mul(&lower).and_then(|m| m.mul(&upper)).expect("square factors")
}

/// Applies a random degree-0 change of basis (unimodular on each parity
/// block) to `algebra`.
pub fn random_basis_change(seed: u64, algebra: &SuperAlgebra) -> SuperAlgebra {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dim = algebra.dim();
    let even = random_unimodular(&mut rng, dim.even);
    let odd = random_unimodular(&mut rng, dim.odd);
    algebra.change_basis(&even, &odd).expect("unimodular blocks are invertible")
}

/// A named member of the verification corpus.
#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: String,
    pub algebra: SuperAlgebra,
}

/// Shape of one random suite algebra: total dimension in
/// `2..=7`, a central part of total dimension `1..=3`.
fn random_shape(rng: &mut ChaCha8Rng) -> (GradedDim, GradedDim) {
    let total = rng.gen_range(2..=7usize);
    let w_total = rng.gen_range(1..=3.min(total - 1));
    let v_total = total - w_total;
    let v_even = rng.gen_range(0..=v_total);
    let w_even = rng.gen_range(0..=w_total);
    (GradedDim::new(v_even, v_total - v_even), GradedDim::new(w_even, w_total - w_even))
}

/// `count` seeded random non-abelian two-step nilpotent algebras of total
/// dimension at most 7. Abelian draws are discarded and redrawn.
pub fn random_corpus(seed: u64, count: usize) -> Vec<CorpusEntry> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool = default_pool();
    (0..count)
        .map(|i| loop {
            let (v, w) = random_shape(&mut rng);
            let sub_seed: u64 = rng.gen();
            let algebra = random_nilpotent(sub_seed, v, w, &pool);
            if !algebra.is_abelian_table() {
                return CorpusEntry { name: format!("random#{i}(v={v},w={w})"), algebra };
            }
        })
        .collect()
}

/// Algebras whose pairwise direct sums are checked.
pub fn direct_sum_base() -> Vec<ModelSpec> {
    let mut base = Vec::new();
    for t in 0..=3 {
        for a in (0..=t).rev() {
            base.push(ModelSpec::Abelian(a, t - a));
        }
    }
    base.extend([
        ModelSpec::Heisenberg(1, 0),
        ModelSpec::Heisenberg(0, 2),
        ModelSpec::Heisenberg(1, 1),
        ModelSpec::Heisenberg(2, 0),
    ]);
    base
}

/// Admissible `(m, n)` for the explicit cover with `m + n <= max_total`.
pub fn admissible_covers(max_total: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for t in 1..=max_total {
        for m in (0..=t).rev() {
            let n = t - m;
            if t >= 2 || (m, n) == (1, 0) {
                out.push((m, n));
            }
        }
    }
    out
}

/// Named model algebras in the default corpus.
pub fn model_corpus() -> Vec<CorpusEntry> {
    let mut specs = Vec::new();
    for t in 0..=6 {
        for a in (0..=t).rev() {
            specs.push(ModelSpec::Abelian(a, t - a));
        }
    }
    for t in 1..=6 {
        for m in (0..=t).rev() {
            specs.push(ModelSpec::Heisenberg(m, t - m));
        }
    }
    let base = direct_sum_base();
    for (i, a) in base.iter().enumerate() {
        for b in &base[i..] {
            specs.push(ModelSpec::DirectSum(Box::new(a.clone()), Box::new(b.clone())));
        }
    }
    for (m, n) in admissible_covers(2) {
        specs.push(ModelSpec::StemCover(m, n));
    }
    specs
        .into_iter()
        .map(|s| CorpusEntry { name: s.to_string(), algebra: s.build().expect("model parameters are in range") })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub seed: u64,
    pub count: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self { seed: 42, count: 200 }
    }
}

fn sort_canonical(mut verdicts: Vec<ClaimVerdict>) -> Vec<ClaimVerdict> {
    // stable: input order within a claim is preserved
    verdicts.sort_by_key(|v| v.claim);
    verdicts
}

/// Runs the applicable checks on each entry, in parallel, and returns the
/// verdicts in canonical order (claim, then input order).
pub fn run_checks(entries: &[CorpusEntry]) -> Result<Vec<ClaimVerdict>, AlgebraError> {
    let per_entry: Vec<Result<Vec<ClaimVerdict>, AlgebraError>> =
        entries.par_iter().map(|e| check_all(&e.name, &e.algebra)).collect();
    let mut all = Vec::new();
    for r in per_entry {
        all.extend(r?);
    }
    Ok(sort_canonical(all))
}

/// The default verification suite: per-algebra checks over the model and
/// random corpora, direct sums over [`direct_sum_base`], the Heisenberg
/// formula for `m + n <= 6`, explicit covers for `m + n <= 5`, and both
/// equality families for total dimension up to 7.
pub fn run_suite(config: SuiteConfig) -> Result<Vec<ClaimVerdict>, VerifyError> {
    let mut entries = model_corpus();
    entries.extend(random_corpus(config.seed, config.count));

    enum Job {
        Algebra(usize),
        Pair(usize, usize),
        Formula(usize, usize),
        Cover(usize, usize),
        Equality(usize, usize, EqualityFamily),
    }
    let mut jobs: Vec<Job> = (0..entries.len()).map(Job::Algebra).collect();
    let base: Vec<SuperAlgebra> = direct_sum_base().iter().map(|s| s.build()).collect::<Result<_, _>>()?;
    let base_names: Vec<String> = direct_sum_base().iter().map(ToString::to_string).collect();
    for i in 0..base.len() {
        for j in i..base.len() {
            jobs.push(Job::Pair(i, j));
        }
    }
    for t in 1..=6 {
        for m in (0..=t).rev() {
            jobs.push(Job::Formula(m, t - m));
        }
    }
    for (m, n) in admissible_covers(5) {
        jobs.push(Job::Cover(m, n));
    }
    for t in 3..=7 {
        for m in (3..=t).rev() {
            jobs.push(Job::Equality(m, t - m, EqualityFamily::H10));
        }
    }
    for t in 2..=7 {
        for m in (1..t).rev() {
            jobs.push(Job::Equality(m, t - m, EqualityFamily::H01));
        }
    }

    let results: Vec<Result<Vec<ClaimVerdict>, VerifyError>> = jobs
        .par_iter()
        .map(|job| -> Result<Vec<ClaimVerdict>, VerifyError> {
            Ok(match *job {
                Job::Algebra(i) => check_all(&entries[i].name, &entries[i].algebra)?,
                Job::Pair(i, j) => {
                    let a = Facts::new(base_names[i].clone(), &base[i])?;
                    let b = Facts::new(base_names[j].clone(), &base[j])?;
                    vec![direct_sum_check(&a, &b)?]
                }
                Job::Formula(m, n) => vec![check_heisenberg_formula(m, n)?],
                Job::Cover(m, n) => {
                    let c = stem_cover_heisenberg(m, n)?;
                    vec![check_stem_cover(
                        &ModelSpec::StemCover(m, n).to_string(),
                        &c.algebra,
                        &c.kernel,
                        Some((m, n)),
                    )?]
                }
                Job::Equality(m, n, family) => vec![check_equality_case(m, n, family)?],
            })
        })
        .collect();
    let mut all = Vec::new();
    for r in results {
        all.extend(r?);
    }
    Ok(sort_canonical(all))
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictSummary {
    pub pass: usize,
    pub fail: usize,
    pub discrepancy: usize,
    pub not_applicable: usize,
}

pub fn summarize(verdicts: &[ClaimVerdict]) -> VerdictSummary {
    let mut s = VerdictSummary::default();
    for v in verdicts {
        match v.verdict {
            Verdict::Pass => s.pass += 1,
            Verdict::Fail => s.fail += 1,
            Verdict::Discrepancy => s.discrepancy += 1,
            Verdict::NotApplicable => s.not_applicable += 1,
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::abelian;

    #[test]
    fn formula_values() {
        assert_eq!(heisenberg_formula_value(1, 1), rat(3));
        assert_eq!(heisenberg_formula_value(2, 1), rat(10));
        assert_eq!(heisenberg_formula_value(0, 2), rat(2));
        assert_eq!(heisenberg_formula_value(2, 0), rat(5));
        assert_eq!(heisenberg_formula_value(1, 0), rat(2));
        assert_eq!(heisenberg_formula_value(0, 1), rat(2));
        // H(1,0): (m|n) = (3|0), (r|s) = (1|0)
        assert_eq!(main_bound_value(GradedDim::new(3, 0), GradedDim::new(1, 0)), rat(2));
        assert_eq!(main_bound_value(GradedDim::new(5, 1), GradedDim::new(1, 0)), rat(12));
    }

    #[test]
    fn derived_bound_examples() {
        let v = check_derived_bound(&abelian(3, 2)).unwrap();
        assert_eq!((v.lhs.unwrap(), v.rhs.unwrap(), v.verdict), (rat(0), rat(0), Verdict::Pass));
        let v = check_derived_bound(&heisenberg(1, 1).unwrap()).unwrap();
        assert_eq!((v.lhs.unwrap(), v.rhs.unwrap(), v.verdict), (rat(1), rat(4), Verdict::Pass));
        let k = stem_cover_heisenberg(2, 0).unwrap().algebra;
        let v = check_derived_bound(&k).unwrap();
        assert_eq!((v.lhs.unwrap(), v.rhs.unwrap(), v.verdict), (rat(6), rat(6), Verdict::Pass));
    }

    #[test]
    fn multiplier_and_abelian_examples() {
        let v = check_multiplier_bound(&heisenberg(2, 0).unwrap()).unwrap();
        assert_eq!((v.lhs.unwrap(), v.rhs.unwrap()), (rat(5), rat(10)));
        let v = check_abelian_equality(&abelian(3, 2)).unwrap();
        assert_eq!(v.verdict, Verdict::Pass);
        assert_eq!(v.slack, Some(rat(0)));
        let v = check_abelian_equality(&heisenberg(1, 0).unwrap()).unwrap();
        assert_eq!(v.verdict, Verdict::Pass);
        assert!(v.slack.unwrap() > rat(0));
    }

    #[test]
    fn quotient_and_central_examples() {
        let h = heisenberg(1, 1).unwrap();
        let z = GradedSubspace::from_indices(h.dim(), &[2]).unwrap();
        // H(1,1)/<z> is A(2|1)
        let v = check_quotient_inequality(&h, &z).unwrap();
        assert_eq!((v.lhs.unwrap(), v.rhs.unwrap(), v.verdict), (rat(4), rat(4), Verdict::Pass));
        let v = check_quotient_inequality(&h, &GradedSubspace::zero(h.dim())).unwrap();
        assert_eq!(v.slack, Some(rat(0)));

        let h10 = heisenberg(1, 0).unwrap();
        let z = GradedSubspace::from_indices(h10.dim(), &[2]).unwrap();
        let [t, b] = check_central_ideal(&h10, &z).unwrap();
        assert_eq!((t.lhs.clone().unwrap(), t.verdict), (rat(3), Verdict::Pass));
        assert_eq!((b.lhs.unwrap(), b.rhs.unwrap(), b.verdict), (rat(3), rat(3), Verdict::Pass));

        let [_, b] = check_central_ideal(&h, &GradedSubspace::from_indices(h.dim(), &[2]).unwrap()).unwrap();
        assert_eq!((b.lhs.unwrap(), b.rhs.unwrap()), (rat(4), rat(7)));

        let x = GradedSubspace::from_indices(h10.dim(), &[0]).unwrap();
        assert_eq!(check_central_ideal(&h10, &x).unwrap_err(), AlgebraError::NotCentral);
    }

    #[test]
    fn sum_direct_and_main_examples() {
        let v = check_sum_bound(&heisenberg(2, 1).unwrap()).unwrap();
        assert_eq!((v.lhs.unwrap(), v.rhs.unwrap()), (rat(11), rat(16)));
        let v = check_direct_sum(&abelian(1, 0), &abelian(1, 0)).unwrap();
        assert_eq!((v.lhs.unwrap(), v.verdict), (rat(1), Verdict::Pass));
        let v = check_direct_sum(&heisenberg(1, 0).unwrap(), &abelian(1, 0)).unwrap();
        assert_eq!((v.lhs.unwrap(), v.verdict), (rat(4), Verdict::Pass));
        let v = check_direct_sum(&heisenberg(1, 1).unwrap(), &heisenberg(1, 0).unwrap()).unwrap();
        assert_eq!((v.lhs.unwrap(), v.verdict), (rat(11), Verdict::Pass));

        let v = check_main_bound(&heisenberg(1, 0).unwrap()).unwrap();
        assert_eq!((v.lhs.unwrap(), v.rhs.unwrap(), v.verdict), (rat(2), rat(2), Verdict::Pass));
        let v = check_main_bound(&heisenberg(2, 1).unwrap()).unwrap();
        assert_eq!((v.lhs.unwrap(), v.rhs.unwrap()), (rat(10), rat(12)));
        assert_eq!(check_main_bound(&abelian(2, 2)).unwrap().verdict, Verdict::NotApplicable);
    }

    #[test]
    fn heisenberg_and_equality_examples() {
        assert_eq!(check_heisenberg_formula(2, 0).unwrap().verdict, Verdict::Pass);
        assert_eq!(check_heisenberg_formula(1, 0).unwrap().verdict, Verdict::Pass);
        let v = check_heisenberg_formula(0, 1).unwrap();
        assert_eq!((v.lhs.unwrap(), v.rhs.unwrap(), v.verdict), (rat(0), rat(2), Verdict::Discrepancy));

        let v = check_equality_case(3, 0, EqualityFamily::H10).unwrap();
        assert_eq!((v.lhs.unwrap(), v.verdict), (rat(2), Verdict::Pass));
        let v = check_equality_case(4, 1, EqualityFamily::H10).unwrap();
        assert_eq!((v.lhs.unwrap(), v.rhs.unwrap(), v.verdict), (rat(8), rat(8), Verdict::Pass));
        let v = check_equality_case(1, 1, EqualityFamily::H01).unwrap();
        assert_eq!((v.lhs.unwrap(), v.rhs.unwrap(), v.verdict), (rat(0), rat(2), Verdict::Discrepancy));
        assert!(check_equality_case(2, 0, EqualityFamily::H10).is_err());
        assert!(check_equality_case(0, 1, EqualityFamily::H01).is_err());
    }

    #[test]
    fn random_nilpotent_examples() {
        let pool = default_pool();
        let a = random_nilpotent(5, GradedDim::new(3, 2), GradedDim::new(0, 0), &pool);
        assert!(a.is_abelian_table());
        let h = random_nilpotent(9, GradedDim::new(2, 0), GradedDim::new(1, 0), &[rat(1)]);
        assert_eq!(h, heisenberg(1, 0).unwrap());
        let x = random_nilpotent(11, GradedDim::new(2, 2), GradedDim::new(1, 1), &pool);
        let y = random_nilpotent(11, GradedDim::new(2, 2), GradedDim::new(1, 1), &pool);
        assert_eq!(x, y);
        assert!(x.validate().is_ok());
    }

    #[test]
    fn empty_corpus_gives_no_verdicts() {
        assert!(run_checks(&[]).unwrap().is_empty());
    }

    #[test]
    fn stem_cover_check_flags_wrong_kernel() {
        let c = stem_cover_heisenberg(1, 1).unwrap();
        let v = check_stem_cover("K(1,1)", &c.algebra, &c.kernel, Some((1, 1))).unwrap();
        assert_eq!(v.verdict, Verdict::Pass);
        // span{ζ} is central and derived but the quotient is not H(1,1)
        let zeta = GradedSubspace::from_indices(c.algebra.dim(), &[2]).unwrap();
        let v = check_stem_cover("K(1,1)", &c.algebra, &zeta, Some((1, 1))).unwrap();
        assert_eq!(v.verdict, Verdict::Fail);
    }
}
