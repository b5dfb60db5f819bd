//! Exact computations on finite-dimensional Lie superalgebras given by
//! rational structure constants.
//!
//! The crate covers graded Jacobi validation, derived subalgebra, center and
//! nilpotency, the dimension of the Schur multiplier via second homology of
//! the super Chevalley–Eilenberg complex, the Heisenberg superalgebras
//! `H(m,n)` with explicit stem covers, and a set of checks comparing
//! multiplier bounds against computed values.
//!
//! ```
//! use superschur::{heisenberg, multiplier_dim};
//!
//! let h = heisenberg(1, 1).unwrap();
//! assert_eq!(multiplier_dim(&h).unwrap().total, 3);
//! ```

pub mod algebra;
pub mod format;
pub mod homology;
pub mod invariants;
pub mod linalg;
pub mod models;
pub mod verify;

pub use algebra::{
    bracket_span, quotient, AlgebraBuilder, AlgebraError, GradedDim, GradedSubspace, JacobiViolation, Parity, Quotient,
    StructureError, SuperAlgebra, ValidationReport,
};
pub use format::{AlgebraFile, FormatError, LoadedAlgebra};
pub use homology::{
    abelian_multiplier_formula, boundary_squares_to_zero, d2_matrix, d3_matrix, multiplier_dim, BlockMatrix,
    MultiplierResult,
};
pub use invariants::{center, derived, is_nilpotent, lower_central_series, profile, Nilpotency, StructureProfile};
pub use linalg::{format_rational, parse_rational, rat, LinalgError, Matrix, Rational};
pub use models::{
    abelian, direct_sum, heisenberg, stem_cover_heisenberg, stem_cover_kernel_dim, ModelError, ModelKind, ModelSpec,
    StemCover,
};
pub use verify::{
    run_suite, summarize, Claim, ClaimVerdict, EqualityFamily, Relation, SuiteConfig, Verdict, VerdictSummary,
    VerifyError,
};
