//! Defeasible reasoning for belief/obligation/intention agents, its flattening into
//! plain argumentation theories, and dialogue games over those theories.

pub mod bio;
pub mod engine;
pub mod flat;
pub mod format;
pub mod game;
pub mod literal;
mod net;
pub mod status;
pub mod strategy;
pub mod theory;
pub mod validate;

pub use bio::{bio_prove, compute_bio_extension, support, Conclusion, ModalExtension, ModalStatus};
pub use engine::{compute_extension, prove, CompiledTheory, Extension, LiteralStatus};
pub use flat::{flat, flat_complement, pflat, transform_theory, TransformError};
pub use game::{new_game, run_game, GameConfig, GameState, GameStatus, Move, Player, Strategy, Transcript, WinMode};
pub use literal::{Atom, Complement, Literal, ModalLiteral, Modality, Premise};
pub use status::{Answer, ProofTag, Status};
pub use theory::{AgentTheory, ArgTheory, ComplementScheme, Label, Rule, RuleKind, TheorySize};
pub use validate::{validate_agent, validate_arg, Violation};
