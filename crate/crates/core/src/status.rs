use std::fmt;

use serde::{Serialize, Serializer};

/// Three-valued outcome of a proof condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub enum Status {
    Proved,
    Rejected,
    #[default]
    Undetermined,
}

impl Status {
    pub fn symbol(self) -> char {
        match self {
            Status::Proved => '+',
            Status::Rejected => '-',
            Status::Undetermined => '?',
        }
    }

    pub fn is_proved(self) -> bool {
        self == Status::Proved
    }

    pub fn is_rejected(self) -> bool {
        self == Status::Rejected
    }

    pub fn is_determined(self) -> bool {
        self != Status::Undetermined
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

impl Serialize for Status {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut buf = [0u8; 4];
        s.serialize_str(self.symbol().encode_utf8(&mut buf))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Strength {
    /// Δ: strict chaining only.
    Definite,
    /// ∂: defeasible.
    Defeasible,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProofTag {
    pub sign: Sign,
    pub strength: Strength,
}

impl ProofTag {
    pub const PLUS_DELTA: ProofTag = ProofTag { sign: Sign::Plus, strength: Strength::Definite };
    pub const MINUS_DELTA: ProofTag = ProofTag { sign: Sign::Minus, strength: Strength::Definite };
    pub const PLUS_PARTIAL: ProofTag = ProofTag { sign: Sign::Plus, strength: Strength::Defeasible };
    pub const MINUS_PARTIAL: ProofTag = ProofTag { sign: Sign::Minus, strength: Strength::Defeasible };

    /// The status this tag asserts.
    pub fn status(self) -> Status {
        match self.sign {
            Sign::Plus => Status::Proved,
            Sign::Minus => Status::Rejected,
        }
    }
}

impl fmt::Display for ProofTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = match self.sign {
            Sign::Plus => '+',
            Sign::Minus => '-',
        };
        let strength = match self.strength {
            Strength::Definite => 'Δ',
            Strength::Defeasible => '∂',
        };
        write!(f, "{sign}{strength}")
    }
}

/// `+D`, `-D`, `+d`, `-d`, or with the symbols `Δ` and `∂`.
impl std::str::FromStr for ProofTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut chars = s.chars();
        let sign = match chars.next() {
            Some('+') => Sign::Plus,
            Some('-') => Sign::Minus,
            _ => return Err(format!("invalid proof tag `{s}`")),
        };
        let strength = match chars.as_str() {
            "D" | "Δ" => Strength::Definite,
            "d" | "∂" => Strength::Defeasible,
            _ => return Err(format!("invalid proof tag `{s}` (expected +D, -D, +d or -d)")),
        };
        Ok(ProofTag { sign, strength })
    }
}

/// Answer of a single proof query.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Answer {
    Yes,
    No,
    Undetermined,
}

impl Answer {
    /// Whether `tag` holds given the status computed for its strength.
    pub fn of(tag: ProofTag, status: Status) -> Answer {
        match status {
            Status::Undetermined => Answer::Undetermined,
            s if s == tag.status() => Answer::Yes,
            _ => Answer::No,
        }
    }
}
