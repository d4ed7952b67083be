//! Finite presentations of projective S-unit groups of the Hurwitz order.
//!
//! The crate builds presentations of `Γ̄_S`, the S-units of the Hurwitz
//! order in Hamilton's rational quaternions modulo rational scalars, for
//! finite sets `S` of odd primes. Every generator carries a quaternion
//! witness, so any relator can be checked by multiplying witnesses out and
//! confirming the product is a rational scalar.
//!
//! Modules, bottom up:
//! - [`quaternion`]: exact Hurwitz arithmetic and projective classes
//! - [`norms`]: enumeration by reduced norm, unit and prime transversals
//! - [`builder`]: the main and oracle presentation builders
//! - [`presentation`]: generators, words, and witness verification
//! - [`tietze`]: presentation simplification
//! - [`congruence`]: splittings mod `p^k`, reduction maps, tree neighbours
//! - [`analysis`]: abelianization and finite matrix-group closure
//! - [`io`] and [`fixtures`]: JSON/GAP/Magma export and tabulated presentations

pub mod analysis;
pub mod builder;
pub mod congruence;
pub mod error;
pub mod fixtures;
pub mod io;
pub mod norms;
mod parallel;
pub mod presentation;
pub mod quaternion;
pub mod tietze;

pub use analysis::{abelianization, closure_order, smith_invariants, AbelianInvariants};
pub use builder::{build_main, build_main_with, build_oracle, build_oracle_with};
pub use congruence::{congruence_image, find_splitting, neighbor_label, rho, ResidueMatrix, SplittingData};
pub use error::{Error, Result};
pub use fixtures::fixture;
pub use io::{export, parse_json, Format};
pub use parallel::Parallelism;
pub use presentation::{verify_presentation, verify_presentation_with, Presentation, VerificationReport, Word};
pub use quaternion::{canonical_class, class_in_projective_sunits, HurwitzElement, ProjectiveClass, SPrimeSet};
pub use tietze::{simplify, SimplifyBudget};
