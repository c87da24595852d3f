//! Builtin group schemes and the closed-subgroup calculus.

pub mod builtins;
pub mod subgroup;

pub use builtins::{
    alpha, catalogue, constant, mu, mu3_by_inversion, power_action, product, semidirect, tate_oort2,
    tate_oort2_unchecked,
};
pub use subgroup::{
    augmentation_generators, coinvariants, conjugation_coaction, image_of, intersect, is_normal, kernel_of, quotient, ClosedSubgroup, ExactnessRow, ExtensionWitness,
    NormalityCertificate,
};
