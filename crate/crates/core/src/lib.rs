//! Convolution of functions over finite promonoidal structures enriched in
//! small commutative quantales, with exhaustive checkers for the
//! promonoidal and cyclic-duality laws.
//!
//! * [`carriers`]: the value algebras (`bool`, `maxtimes`, `maxplus`, `nat`).
//! * [`structures`]: posets, `(p, j, S)` tables, law checkers, JSON files.
//! * [`convolution`]: upper/lower convolution, monoid and convexity tests.
//! * [`gallery`]: constructors for the example families and named fixtures.

pub mod carriers;
pub mod convolution;
pub mod gallery;
pub mod structures;

pub use carriers::{Carrier, CarrierError, Extended, Value, DEFAULT_TOLERANCE};
pub use convolution::{
    convolve, convolve_lower, convolve_upper, dualize, is_convex, is_monoid, ConvMode, ConvolutionError, Functor,
    Verdict,
};
pub use structures::{CheckReport, FinitePoset, Law, LawOutcome, PromonoidalStructure, StructureError};
