//! Exact computations for free algebras over the rationals defined by
//! multilinear identities: dimensions of multilinear components, Koszul
//! duals of quadratic presentations, normal-form bases and differential
//! polynomial embeddings.
#![no_std]

extern crate alloc;

pub mod diff;
pub mod error;
pub mod expansion;
pub mod koszul;
pub mod linalg;
pub mod normal_form;
pub mod presentation;
pub mod rational;
pub mod term;

pub use error::{Error, Result};
pub use rational::Rational;
