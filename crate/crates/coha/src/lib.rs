//! Cohomological Hall algebra of a quiver, computed exactly.
//!
//! The algebra lives on rings of symmetric polynomials with rational
//! coefficients, one alphabet per quiver vertex, multiplied by a shuffle
//! formula. On top of that this crate provides the bigrading and sign
//! twist, Harder-Narasimhan counting over finite fields, extraction of
//! Donaldson-Thomas invariants from the generating series, and graded
//! dimensions of the cyclic modules coming from non-commutative Hilbert
//! schemes. Everything is exact: rational coefficients, rational
//! functions in the half-power variable `s` (with `q = s^2`), and
//! truncated Laurent series with tracked validity orders. No floating
//! point anywhere.

pub mod acceptance;
pub mod counting;
pub mod dt;
pub mod engine;
pub mod error;
pub mod framed;
pub mod poly;
pub mod quiver;
pub mod rational;
pub mod rng;
pub mod series;

pub use error::CohaError;
pub use quiver::{DimVector, HNType, Quiver, Stability};
pub use rational::{RatFunc, Q};

/// Result alias used across the crate.
pub type Result<T> = std::result::Result<T, CohaError>;
