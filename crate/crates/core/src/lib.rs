//! Exact symbolic computation with monodromic motives.
//!
//! The crate models the ring of μ̂-equivariant motives over a base with the
//! primary product `⊙`, the square root `L^(1/2) = 1 - [μ2, ρ̂]`, principal
//! Z2-bundle twists `Υ(P)`, motivic zeta functions of resolved functions,
//! an arc-space oracle, stabilization, gluing over d-critical atlases and
//! torus localization.

pub mod arc;
pub mod dcrit;
pub mod error;
pub mod fixtures;
pub mod job;
pub mod json;
pub mod laurent;
pub mod localize;
pub mod motive;
pub mod par;
pub mod registry;
pub mod stabilize;
pub mod text;
pub mod zbundle;
pub mod zeta;

pub use error::{MotiveError, Result};
pub use laurent::HalfLaurent;
pub use motive::{boxdot, pi_forget, pullback, pushforward, MonSymbol, Monomial, Motive};
pub use par::Exec;
pub use registry::{Morphism, MorphismKind, Registry, SpaceId};
pub use zbundle::{BundleBits, BundleClass};
