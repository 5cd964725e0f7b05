//! Exact computations with surfaces in P^3 that carry ordinary triple
//! points: field arithmetic, local analysis, counting bounds, numerical
//! invariants, constructions and explicit families.

#[macro_use]
pub mod algebra;
pub mod bounds;
pub mod constructions;
pub mod families;
pub mod format;
pub mod invariants;
pub mod rng;
pub mod singular;
