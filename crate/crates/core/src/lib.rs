//! Exact path-sum constructions for maximal intersecting families.
//!
//! A maximal intersecting family `F ⊆ P([n])` is self-dual and
//! superset-closed. Summing, over all orderings of `[n]`, the hypercube paths
//! that carry each member of the dual family `F*` to its complement gives an
//! integer flow `Λ(F*)` on the edges of the cube. When that flow is smallest on
//! the edges leaving `∅` the family is called empty-minimal, and the flow
//! yields nonnegative star coefficients `c_a` and edge slacks `λ` expressing
//! the family vector `V_F` as a convex combination of star vectors plus
//! nonnegative multiples of `e_B − e_A`.
//!
//! Everything is computed in exact integers over the denominator `n!`.
//!
//! Elements are labelled `1..=n`; element `i` is bit `i − 1` of a [`SetMask`].

pub mod constructions;
pub mod enumerate;
pub mod error;
pub mod exec;
pub mod family;
pub mod io;
pub mod kleitman;
pub mod pathsum;
pub mod perm;
pub mod set;
pub mod suite;
pub mod survey;

pub use constructions::{central_families, lift_swap, near_central, MiddleLayerChoice};
pub use enumerate::{
    canonicalize, enumerate_downsets, enumerate_maximal_intersecting, Canonicalizer,
    ComplementaryPairTable,
};
pub use error::{Error, Precondition, Result};
pub use exec::Exec;
pub use family::{Family, FamilyFlags, FamilyVector, LocalFamily};
pub use kleitman::{
    build_decomposition, chvatal_check, is_empty_minimal, verify_decomposition, ChvatalReport,
    Decomposition, Edge, Minimality, Violation, Witness,
};
pub use pathsum::{
    apply_shift, divergence, pathsum_bruteforce, pathsum_formula, pathsum_formula_edge,
    theta_trace, AxisFlow, Move, PathTrace, Shift, ShiftTag,
};
pub use perm::{factorial, Permutation, PermutationSet};
pub use set::{set_complement, Element, GroundSet, SetMask, MAX_N};
