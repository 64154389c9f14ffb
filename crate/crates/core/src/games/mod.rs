//! Game descriptions: octal codes, explicit game graphs, positions over a
//! generator alphabet, and the brute-force outcome and Grundy oracles.

mod dag;
mod octal;
mod oracle;
mod position;
mod rules;

pub use dag::{parse_game_expr, GameDag, NodeId};
pub use octal::{parse_octal_code, OctalCode};
pub use oracle::{generator_grundy_values, grundy_value, misere_outcome, MisereOracle, Outcome};
pub use position::Position;
pub use rules::{position_options, Alphabet, Generator, RuleSet};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GameError {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("octal digit {0} is larger than 7")]
    BadDigit(u8),
    #[error("whole-heap digit must be 0 or 4, got {0}")]
    BadWholeHeapDigit(u8),
    #[error("repeating block is empty")]
    EmptyCycle,
    #[error("generator index {index} exceeds the alphabet bound {bound}")]
    OutsideAlphabet { index: usize, bound: usize },
    #[error("option {0} is not a generator of the closed set")]
    NotAGenerator(String),
    #[error("generator {0} has an option outside the earlier generators")]
    NotTopological(String),
    #[error("{what} budget of {limit} exceeded")]
    Budget { what: &'static str, limit: usize },
}
