//! Exact boson-operator algebra.

mod generators;
mod poly;
mod ring;
mod verify;

pub use generators::{build_generator, cg_coeff, Generator};
pub use poly::{BosonPoly, Letter, Monomial};
pub use ring::{Coeff, QSqrt2};
pub use verify::{
    relations, verify_relations, verify_relations_with, AlgebraReport, Lhs, Relation,
    RelationCheck, Status,
};

/// Normal-ordered form of a product of letters.
pub fn normal_order(modes: usize, word: &[Letter]) -> BosonPoly {
    BosonPoly::from_word(modes, word)
}

pub fn commutator(a: &BosonPoly, b: &BosonPoly) -> BosonPoly {
    a.commutator(b)
}
