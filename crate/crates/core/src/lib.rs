//! Exact correspondence calculus on cohomology rings of smooth projective
//! varieties: Künneth diagonals, Chow–Künneth projector construction and
//! verification, and bounded-degree equivariant models.

pub mod cli;
pub mod correspondences;
pub mod equivariant;
pub mod error;
pub mod graded_ring;
pub mod io;
pub mod kunneth;
pub mod linalg;
pub mod rational;
pub mod spaces;

pub use error::{Error, Result};
pub use correspondences::CorrespondenceClass;
pub use graded_ring::{ClassVector, GradedBasisRing};
pub use kunneth::{ProjectorSet, VerificationReport};
pub use rational::{Coefficient, Q};
pub use spaces::SpaceSpec;
