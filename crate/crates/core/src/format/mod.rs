//! Text formats: `.dfl` theories and `.game` files.
//!
//! ```text
//! fact a.                      fact INT p.
//! rule r1: a => b.             rule r2[OBL]: a, !INT c => ~q.
//! sup r1 > r2.                 # comment
//! ```
//!
//! A document using any of `BEL`, `OBL`, `INT` is an agent theory. Game files add
//! `goal l.`, `mode strong|weak.` and the section markers `@common`, `@proponent`, `@opponent`.

mod lexer;
mod parser;
mod writer;

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::game::{new_game, GameConfig, GameError, GameState};
use crate::theory::{AgentTheory, ArgTheory, Label};

pub use writer::{write_agent, write_arg, write_game};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub line: usize,
    pub column: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{}:{}: {message}", span.line, span.column)]
pub struct ParseError {
    pub span: Span,
    pub message: String,
}

impl ParseError {
    fn new(span: Span, message: impl Into<String>) -> Self {
        ParseError { span, message: message.into() }
    }
}

/// A parsed theory file in whichever dialect it was written.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Document {
    Arg(ArgTheory),
    Agent(AgentTheory),
}

impl fmt::Display for Document {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Document::Arg(t) => f.write_str(&write_arg(t)),
            Document::Agent(t) => f.write_str(&write_agent(t)),
        }
    }
}

pub fn parse_theory(text: &str) -> Result<Document, ParseError> {
    parser::parse(text, false).map(|p| p.document)
}

/// A game file: the theory, the private rule sets and the configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameDocument {
    pub theory: ArgTheory,
    pub proponent: BTreeSet<Label>,
    pub opponent: BTreeSet<Label>,
    pub config: GameConfig,
}

impl GameDocument {
    pub fn start(&self) -> Result<GameState, GameError> {
        new_game(self.theory.clone(), self.proponent.clone(), self.opponent.clone(), self.config.clone())
    }
}

pub fn parse_game(text: &str) -> Result<GameDocument, ParseError> {
    parser::parse_game(text)
}
