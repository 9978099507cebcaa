//! Exact combinatorics of toric arrangements: smooth fan subdivisions that
//! give every layer property (E), layer closures and their strata, building
//! and nested sets, and Betti numbers of the resulting toric varieties.

pub mod arrangement;
pub mod betti;
pub mod fan;
pub mod lattice;
pub mod lp;
pub mod strata;
pub mod subdiv;
pub mod wonderful;
