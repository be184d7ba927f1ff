//! Small finite groups by multiplication table: truncations of `N ⋊ Z`,
//! normal-subgroup lattices, quotients, isomorphism tests and bounded
//! Qu-sets.

mod iso;
mod lattice;
mod qu;
mod table;

pub use iso::{abelian_invariants, find_isomorphism, fingerprint, isomorphic, QuotientFingerprint};
pub use lattice::{enumerate_normal_subgroups, enumerate_with_cap, NormalSubgroup, DEFAULT_LATTICE_CAP};
pub use qu::{
    compare_qu, compare_qu_sets, lamp_dimension_bound, maximal_divisors, truncated_qu, truncated_qu_unreduced,
    QuComparison, QuSet, QuSource, QuWitness, Side, DEFAULT_QU_BOUND, MAX_QU_BOUND,
};
pub use table::{build_group_table, FiniteGroupTable, Subset, DEFAULT_ORDER_CAP, FULL_CHECK_ORDER};

/// `G / N`; fails with `NotNormal` unless N is a normal subgroup.
pub fn quotient_table(g: &FiniteGroupTable, normal: &Subset) -> crate::Result<FiniteGroupTable> {
    g.quotient(normal)
}
