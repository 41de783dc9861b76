//! Extended Newick for networks, a JSON document for graphs, and DOT output.

pub mod dot;
pub mod enewick;
pub mod json;

use std::fmt;

use thiserror::Error;

use crate::error::ReebError;

pub use dot::write_dot;
pub use enewick::{
    network_to_reeb, parse_enewick, reeb_to_network, write_enewick, NetworkDocument, NetworkEdge,
    NetworkNode,
};
pub use json::{read_reeb_json, write_reeb_json};

/// One-based line and column of a character in the input.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Position {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("syntax error at {pos}: {message}")]
    Syntax { pos: Position, message: String },

    #[error("unbalanced parentheses at {pos}")]
    UnbalancedParens { pos: Position },

    #[error("hybrid '#{tag}' at {pos}: {message}")]
    HybridArity {
        tag: String,
        pos: Position,
        message: String,
    },

    #[error("time inconsistency at {pos}: {message}")]
    TimeInconsistency { pos: Position, message: String },

    #[error("schema error at '{pointer}': {message}")]
    Schema { pointer: String, message: String },

    #[error(transparent)]
    Graph(#[from] ReebError),
}

impl FormatError {
    /// Text position for Newick errors.
    pub fn position(&self) -> Option<Position> {
        match self {
            FormatError::Syntax { pos, .. }
            | FormatError::UnbalancedParens { pos }
            | FormatError::HybridArity { pos, .. }
            | FormatError::TimeInconsistency { pos, .. } => Some(*pos),
            _ => None,
        }
    }
}
