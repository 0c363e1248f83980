//! Exact Krawtchouk-Fourier approximation of the sign function.
//!
//! The approximation `F_N` of `sgn` on the symmetric grid `[-N/2, N/2]` is
//! built three independent ways ([`approx`]), its slope at the origin is
//! evaluated in closed form and cross-checked against the doubled harmonic
//! tail ([`steepident`]), and its first overshoot is isolated with exact
//! dyadic bisection ([`gibbs`]). All arithmetic is exact rational except the
//! few transcendental reference constants, which use fixed-point series.

pub mod approx;
pub mod combinat;
pub mod error;
pub mod gibbs;
pub mod krawtchouk;
pub mod poly;
pub mod steepident;

pub use error::{Error, Result};
pub use num_bigint::BigInt;
pub use num_rational::BigRational;
