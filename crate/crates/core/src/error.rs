use thiserror::Error;

use crate::modality::Letter;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty carrier: a structure needs at least one element")]
    EmptyCarrier,

    #[error("duplicate element name `{0}`")]
    DuplicateName(String),

    #[error("unknown element name `{0}`")]
    UnknownName(String),

    #[error("order has a cycle through `{0}` and `{1}`")]
    Cycle(String, String),

    #[error("relation is not a partial order: {0}")]
    NotAPartialOrder(String),

    #[error("{size} elements exceeds the cap of {cap} (set MLL_MAX_ELEMENTS to raise it)")]
    TooLarge { size: usize, cap: usize },

    #[error("not a lattice: `{0}` and `{1}` lack a {2}")]
    NotALattice(String, String, &'static str),

    #[error("meet-complement is not total; necessity and possibility are defined only on meet-complemented lattices")]
    NegNotTotal,

    #[error("necessity is not total on this algebra")]
    BoxNotTotal,

    #[error("operator {0} is not total on `{1}`")]
    OperatorMissing(Letter, String),

    #[error("not a subdirectly irreducible Heyting algebra: {0}")]
    NotSIHeyting(&'static str),

    #[error("upset algebra would have more than {cap} elements")]
    CapExceeded { cap: usize },

    #[error("unknown catalog entry `{0}`")]
    UnknownCatalogEntry(String),

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    #[error("catalog entry `{entry}` failed expected fact `{fact}` ({source_note})")]
    CatalogFact {
        entry: String,
        fact: String,
        source_note: String,
    },

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("term syntax error at byte {pos}: {msg}")]
    TermSyntax { pos: usize, msg: String },

    #[error("assignment does not cover variable x{0}")]
    UnboundVariable(usize),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("generated sublattice does not separate the terms")]
    NotSeparated,
}
