//! Exact-rational engine for tamed almost generalized Kähler structures on
//! Lie algebras.
//!
//! Everything is computed at the level of left-invariant tensors: a Lie
//! algebra is given by its structure equations, and every form, multivector,
//! endomorphism and connection is a finite table of rationals.

pub mod algebra;
pub mod lie;
pub mod hermitian;
pub mod fixtures;
pub mod connections;
pub mod poisson;
pub mod sampling;
pub mod identities;
pub mod conventions;
