//! Finite commutative bipartite monoids.

mod enumerate;
mod iso;
mod monoid;
mod reduce;
mod word;

pub use enumerate::monoid_from_presentation;
pub use iso::{extend_homomorphism, iso_check, iso_check_with_cap, DEFAULT_ISO_CAP};
pub use monoid::{lex_least_preimages, BipartiteMonoid, Element, IDENTITY};
pub(crate) use monoid::LexTree;
pub use reduce::{is_reduced, reduce_bipartite, refine_partition};
pub use word::{extract_presentation, parse_word, render_word, tokenize_word, MonoidWord, Presentation};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("malformed monoid: {0}")]
    Malformed(String),
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("generator `{0}` listed twice")]
    DuplicateGenerator(String),
    #[error("relation `{0}` has identical sides")]
    TrivialRelation(String),
    #[error("monoid order exceeds bound {bound}")]
    OrderExceedsBound { bound: usize },
    #[error("monoid of order {order} is too large for isomorphism search (cap {cap})")]
    TooLarge { order: usize, cap: usize },
}
