use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LiteralError {
    #[error("invalid atom `{0}`: expected a non-empty identifier over [A-Za-z0-9_]")]
    InvalidAtom(String),
    #[error("BEL cannot wrap a modal literal; beliefs are bare literals")]
    BeliefModal,
    #[error("unknown modality `{0}`")]
    UnknownModality(String),
}

/// Propositional atom, case-sensitive.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom(String);

impl Atom {
    pub fn new(name: impl Into<String>) -> Result<Self, LiteralError> {
        let name = name.into();
        if is_identifier(&name) {
            Ok(Atom(name))
        } else {
            Err(LiteralError::InvalidAtom(name))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

pub trait Complement {
    fn complement(&self) -> Self;
}

/// An atom or its classical negation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub atom: Atom,
    pub negated: bool,
}

impl Literal {
    pub fn pos(atom: Atom) -> Self {
        Literal { atom, negated: false }
    }

    pub fn neg(atom: Atom) -> Self {
        Literal { atom, negated: true }
    }

    /// Parses `p` or `~p`.
    pub fn parse(s: &str) -> Result<Self, LiteralError> {
        match s.strip_prefix('~') {
            Some(rest) => Ok(Literal::neg(Atom::new(rest)?)),
            None => Ok(Literal::pos(Atom::new(s)?)),
        }
    }
}

impl Complement for Literal {
    fn complement(&self) -> Self {
        Literal { atom: self.atom.clone(), negated: !self.negated }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            write!(f, "~{}", self.atom)
        } else {
            write!(f, "{}", self.atom)
        }
    }
}

impl FromStr for Literal {
    type Err = LiteralError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Literal::parse(s)
    }
}

impl Serialize for Literal {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Modality {
    #[serde(rename = "BEL")]
    Bel,
    #[serde(rename = "OBL")]
    Obl,
    #[serde(rename = "INT")]
    Int,
}

impl Modality {
    pub const ALL: [Modality; 3] = [Modality::Bel, Modality::Obl, Modality::Int];

    pub fn keyword(self) -> &'static str {
        match self {
            Modality::Bel => "BEL",
            Modality::Obl => "OBL",
            Modality::Int => "INT",
        }
    }

    pub(crate) fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Modality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

impl FromStr for Modality {
    type Err = LiteralError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "BEL" => Ok(Modality::Bel),
            "OBL" => Ok(Modality::Obl),
            "INT" => Ok(Modality::Int),
            other => Err(LiteralError::UnknownModality(other.to_string())),
        }
    }
}

/// `Xp` or, with `negated`, `¬Xp`, for X in {OBL, INT}.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ModalLiteral {
    pub negated: bool,
    modality: Modality,
    pub literal: Literal,
}

impl ModalLiteral {
    pub fn new(negated: bool, modality: Modality, literal: Literal) -> Result<Self, LiteralError> {
        if modality == Modality::Bel {
            return Err(LiteralError::BeliefModal);
        }
        Ok(ModalLiteral { negated, modality, literal })
    }

    pub fn modality(&self) -> Modality {
        self.modality
    }
}

/// Flips the inner literal and keeps modality and outer negation.
impl Complement for ModalLiteral {
    fn complement(&self) -> Self {
        ModalLiteral {
            negated: self.negated,
            modality: self.modality,
            literal: self.literal.complement(),
        }
    }
}

impl fmt::Display for ModalLiteral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            f.write_str("!")?;
        }
        write!(f, "{} {}", self.modality, self.literal)
    }
}

/// Antecedent or fact of an agent theory: a bare literal (a belief) or a modal literal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Premise {
    Plain(Literal),
    Modal(ModalLiteral),
}

impl Premise {
    pub fn literal(&self) -> &Literal {
        match self {
            Premise::Plain(l) => l,
            Premise::Modal(m) => &m.literal,
        }
    }

    pub fn as_plain(&self) -> Option<&Literal> {
        match self {
            Premise::Plain(l) => Some(l),
            Premise::Modal(_) => None,
        }
    }
}

/// `q`, `BEL q`, `OBL q`, `!INT q`.
impl FromStr for Premise {
    type Err = LiteralError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (negated, rest) = match s.strip_prefix('!') {
            Some(rest) => (true, rest.trim_start()),
            None => (false, s),
        };
        let Some((word, literal)) = rest.split_once(char::is_whitespace) else {
            return Literal::parse(s).map(Premise::Plain);
        };
        match (word.parse::<Modality>()?, negated) {
            (Modality::Bel, false) => Literal::parse(literal.trim()).map(Premise::Plain),
            (Modality::Bel, true) => Err(LiteralError::BeliefModal),
            (x, _) => Ok(Premise::Modal(ModalLiteral::new(negated, x, Literal::parse(literal.trim())?)?)),
        }
    }
}

impl Complement for Premise {
    fn complement(&self) -> Self {
        match self {
            Premise::Plain(l) => Premise::Plain(l.complement()),
            Premise::Modal(m) => Premise::Modal(m.complement()),
        }
    }
}

impl From<Literal> for Premise {
    fn from(l: Literal) -> Self {
        Premise::Plain(l)
    }
}

impl From<ModalLiteral> for Premise {
    fn from(m: ModalLiteral) -> Self {
        Premise::Modal(m)
    }
}

impl fmt::Display for Premise {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Premise::Plain(l) => l.fmt(f),
            Premise::Modal(m) => m.fmt(f),
        }
    }
}
