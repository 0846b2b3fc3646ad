//! Exact computational algebra for unital based rings.
//!
//! A based ring is a finite-rank ring with a distinguished basis whose
//! structure constants are nonnegative integers, together with an
//! involution on the basis. Group rings, fusion rings (Fibonacci, Ising,
//! Tambara-Yamagami, Verlinde) and Grothendieck rings of representation
//! categories are the motivating instances; the crate ships all of them
//! as fixtures in [`catalog`].
//!
//! On top of that the crate answers one question exactly, with no
//! floating point anywhere: does a ring admit nontrivial (central)
//! idempotents once coefficients are taken in Z, Q, or a localization
//! Z[S^-1]? Equivalently, is the spectrum of its center connected?
//! The engine in [`idem`] computes the center, splits the rationalized
//! center into primitive idempotents, lifts along nilpotent ideals, and
//! filters the resulting 2^c idempotents through the coefficient ring.
//!
//! The [`rep`] module builds Grothendieck rings from concrete data:
//! character tables in characteristic zero, and explicit matrix
//! representations over prime fields in characteristic p, chopped into
//! composition factors MeatAxe-style.
//!
//! All hot loops (subset scans, axiom sweeps) have `par_*` variants
//! backed by rayon behind the `parallel` feature (on by default); the
//! plain functions are always sequential.

pub mod algebra;
pub mod catalog;
pub mod coeff;
pub mod factor;
pub mod field;
pub mod idem;
pub mod matrix;
pub mod poly;
pub mod rational;
pub mod rep;
pub mod ring;

pub use coeff::CoefficientRing;
pub use field::{Field, PrimeField, Rationals};
pub use matrix::Mat;
pub use poly::Poly;
pub use rational::Rational;
pub use ring::{AxiomReport, RingElement, RingWithBasis};
