//! Exact arithmetic for definite quaternion algebras, Brandt matrices with
//! harmonic weights, and degree-2 Yoshida lifts with their Hecke and
//! L-function data.

pub mod arith;
pub mod brandt;
pub mod error;
pub mod factor;
pub mod fixture;
pub mod harmonic;
pub mod io;
pub mod linalg;
pub mod poly;
pub mod quat;
pub mod rational;
pub mod siegel;
pub mod upoly;
pub mod yoshida;

pub use error::{Error, Result};
pub use rational::Rational;
