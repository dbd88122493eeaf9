//! Rectilinear tile assembly, the evaluation tile set, the 11-color pattern
//! reduction from monotone 1-in-3-SAT, an exact small-pattern solver and
//! mechanical checks of the lower-bound lemmas.

pub mod formats;
pub mod gadget;
pub mod reduction;
pub mod rtas;
pub mod solver;
pub mod teval;
pub mod verifier;
