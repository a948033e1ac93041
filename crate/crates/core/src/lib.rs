//! Computable finite-type knot theory: exact polynomial invariants,
//! iterated differences over crossing switches and over detour systems,
//! chord-diagram spaces, and Hopf-pair bracelet combinatorics.

pub mod bracelets;
pub mod chord_algebra;
pub mod diagram;
pub mod exact_math;
pub mod formal_sum;
pub mod goussarov;
pub mod invariants;
pub mod selftest;
pub mod table;
pub mod vassiliev;
