//! Exact conditional set theory over finite atomic Boolean algebras.

pub mod boolalg;
pub mod cli;
pub mod condfilter;
pub mod condlin;
pub mod condmap;
pub mod condnum;
pub mod condset;
pub mod condtop;
pub mod error;

pub use error::{Error, Result};

/// Exact rationals used throughout.
pub type Rational = num_rational::BigRational;

/// Parses `"p/q"` or an integer.
pub fn parse_rational(s: &str) -> Result<Rational> {
    s.trim()
        .parse::<Rational>()
        .map_err(|_| Error::Invalid(format!("not a rational: `{s}`")))
}
