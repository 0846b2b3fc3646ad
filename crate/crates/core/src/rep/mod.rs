//! Grothendieck rings from explicit representation data: permutation
//! groups, matrix representations over prime fields, MeatAxe-style
//! chopping into composition factors, and the two ring builders
//! (modular and characteristic-zero character tables).

mod build;
mod group;
mod matrixrep;
mod meataxe;

pub use build::{
    build_character_ring_char0, build_grothendieck_modular, character_independence, find_simples,
    CharTable, CharacterIndependence, SimpleList,
};
pub use group::{Perm, PermGroup};
pub use matrixrep::{GroupJson, MatrixRep, RepJson};
pub use meataxe::{chop, chop_with_seed, iso_test, norton_irreducible, quotient, restriction, spinup, Irreducibility};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum RepError {
    #[error("permutation image is not a bijection on 1..=degree")]
    BadPermutation,
    #[error("group closure exceeded the cap of {0} elements")]
    ClosureCap(usize),
    #[error("representations belong to different groups")]
    GroupMismatch,
    #[error("representations are over different fields")]
    FieldMismatch,
    #[error("generator matrices do not define a representation: {0}")]
    InvalidRep(String),
    #[error("cannot spin up the zero vector")]
    ZeroVector,
    #[error("irreducibility test inconclusive after exhausting the element budget")]
    Inconclusive,
    #[error("isomorphism test requires irreducible inputs")]
    NonIrreducible,
    #[error("desk-scale cap exceeded: {0}")]
    DeskScale(String),
    #[error("invalid character table: {0}")]
    BadTable(String),
    #[error("ring construction failed: {0}")]
    Ring(String),
    #[error("json: {0}")]
    Json(String),
}
