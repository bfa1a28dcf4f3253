//! Exact arithmetic for degree-two rational self-maps of the projective line.
//!
//! The crate provides field backends with exact (or tolerance-controlled)
//! equality, projective-line geometry and binary-form algebra, fixed-point
//! and critical-point invariants of quadratic rational maps, totally marked
//! maps with their cross-ratio moduli coordinates, and the numerical
//! stability classification of weighted point configurations.

pub mod fields;
pub mod dynmap;
pub mod gitstab;
pub mod marking;
pub mod parse;
pub mod projpoly;
pub mod selftest;

pub use dynmap::{MapError, MultiplierSpectrum, RatMap2};
pub use fields::{Elem, Field, FieldError};
pub use gitstab::{Stability, StabilityVerdict, WeightedConfig};
pub use marking::{CrossRatioTriple, Equivalence, Locus, MarkingError, MarkingOrbit, TotalMarking, VPoint};
pub use projpoly::{resultant2, wronskian, BinaryForm, MobiusMap, ProjError, ProjPoint, RootList};

/// Deterministic generator used by the randomized equal-degree splitting
/// step of root extraction; always passed explicitly by the caller.
pub type CzRng = rand_chacha::ChaCha8Rng;

/// A seeded generator for reproducible runs.
pub fn seeded_rng(seed: u64) -> CzRng {
    use rand::SeedableRng;
    CzRng::seed_from_u64(seed)
}
