//! Decompositions, fiber and locus reports, the connected–étale sequence,
//! splittings and the square-free pipeline.

pub mod etale;
pub mod fibers;
pub mod frobenius;
pub mod loci;
pub mod primary;
pub mod split;
pub mod theorem;

pub use etale::{etale_unique_subgroup, geometric_points, subgroup_from_points, UniqueSubgroup};
pub use fibers::{connected_etale_sequence, fiber_report, identity_component, separable_rank, FiberReport};
pub use frobenius::{classify, frobenius, verschiebung, Classification, FrobeniusReport};
pub use loci::{locus_report, LocusReport};
pub use primary::{multiplication_map, p_primary_decompose, PrimaryDecomposition};
pub use split::{common_refinement, hochschild_split, SplitCertificate, SplitStatus};
pub use theorem::{theorem_components, theorem_decompose, theorem_default, KernelPolicy, TheoremCertificate, TheoremFactor};
