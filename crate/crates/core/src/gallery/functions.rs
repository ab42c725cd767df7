//! Standard `MaxPlus` set functions on [`powerset_structure`](super::powerset_structure)
//! objects, which are indexed by bitmask.

use crate::carriers::Value;
use crate::convolution::{ConvolutionError, Functor};
use crate::structures::PromonoidalStructure;

/// `f(a)` computed from the bitmask of `a`.
pub fn set_function(
    structure: &PromonoidalStructure,
    f: impl Fn(u32) -> f64,
) -> Result<Functor, ConvolutionError> {
    let values = (0..structure.len())
        .map(|mask| Value::real(f(mask as u32)))
        .collect::<Result<Vec<_>, _>>()?;
    Functor::new(structure, values)
}

/// `|a|`.
pub fn cardinality(structure: &PromonoidalStructure) -> Result<Functor, ConvolutionError> {
    set_function(structure, |m| f64::from(m.count_ones()))
}

/// Rank function of the uniform matroid `U_{k,n}`: `min(|a|, k)`.
pub fn uniform_matroid_rank(structure: &PromonoidalStructure, k: u32) -> Result<Functor, ConvolutionError> {
    set_function(structure, |m| f64::from(m.count_ones().min(k)))
}
