//! Inputs shared by the benchmarks.

use superschur::{heisenberg, stem_cover_heisenberg, ModelSpec, SuperAlgebra};

/// Heisenberg algebras `H(m,n)` with `m + n = total`, even part first.
pub fn heisenberg_family(total: usize) -> Vec<(String, SuperAlgebra)> {
    (0..=total)
        .rev()
        .filter_map(|m| heisenberg(m, total - m).ok().map(|h| (ModelSpec::Heisenberg(m, total - m).to_string(), h)))
        .collect()
}

/// The explicit stem cover `K(m,n)`.
pub fn cover(m: usize, n: usize) -> SuperAlgebra {
    stem_cover_heisenberg(m, n).expect("admissible parameters").algebra
}
