//! Univariate polynomial factorization: Cantor-Zassenhaus over F_p,
//! Hensel lifting of modular factorizations, and Zassenhaus
//! recombination over Q. Degrees are capped at desk scale; there is no
//! LLL recombination here.

mod finite;
mod hensel;
mod rationals;

pub use finite::{factor_poly_mod_p, FpFactorization};
pub use hensel::{hensel_lift_factorization, zp_balanced, ZPoly};
pub use rationals::{factor_poly_rationals, QFactorization};

use thiserror::Error;

/// Hard cap on input degree for rational factorization; subset
/// recombination is exponential past this point.
pub const DEGREE_CAP: usize = 64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FactorError {
    #[error("cannot factor the zero polynomial")]
    ZeroPolynomial,
    #[error("degree {degree} exceeds the cap of {cap}")]
    DegreeCap { degree: usize, cap: usize },
    #[error("factors are not pairwise coprime modulo p")]
    NotCoprime,
    #[error("product of the given factors does not equal f modulo p")]
    NotFactorizationModP,
    #[error("expected a monic polynomial")]
    NonMonic,
    #[error("no good prime found for modular factoring")]
    NoGoodPrime,
}
