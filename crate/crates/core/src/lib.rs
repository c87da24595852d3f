//! Finite flat group schemes over computable commutative rings, stored as
//! finite free Hopf algebras via structure constants.
//!
//! The crate is organized bottom-up:
//! - [`rings`]: exact base rings, spectra, and ring homomorphisms;
//! - [`linalg`]: submodules in canonical form, kernels and images;
//! - [`hopf`]: the Hopf-algebra representation, verification, base change,
//!   Cartier duality, convolution powers and the points functor;
//! - [`constructions`]: builtin schemes and the closed-subgroup calculus;
//! - [`structure`]: decompositions, fiber and locus reports, the
//!   connected–étale sequence, splittings and the square-free pipeline;
//! - [`oracle`]: brute-force point enumeration and subgroup lattices used
//!   as an independent cross-check.

pub mod constructions;
pub mod error;
pub mod group;
pub mod hopf;
pub mod json;
pub mod linalg;
pub mod oracle;
pub mod rings;
pub mod structure;
pub mod testrings;

pub use error::{Error, Result};
pub use rings::{Elem, Ring, RingHom};
