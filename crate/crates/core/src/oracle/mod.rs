//! An independent brute-force engine used to cross-check the points functor
//! and the subgroup questions asked by the structure theory.

pub mod groups;
pub mod points;

pub use groups::{subgroup_lattice, subgroups_of_order, AbstractGroup, GroupTag, SubgroupEntry};
pub use points::{enumerate_points, OraclePoints};
