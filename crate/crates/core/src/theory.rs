use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::flat;
use crate::literal::{Complement, Literal, Modality, Premise};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid rule label `{0}`: expected a non-empty identifier over [A-Za-z0-9_-]")]
pub struct LabelError(pub String);

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label(String);

impl Label {
    pub fn new(s: impl Into<String>) -> Result<Self, LabelError> {
        let s = s.into();
        if !s.is_empty() && s.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_' || b == b'-') {
            Ok(Label(s))
        } else {
            Err(LabelError(s))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Serialize for Label {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RuleKind {
    Strict,
    Defeasible,
    Defeater,
}

impl RuleKind {
    pub fn arrow(self) -> &'static str {
        match self {
            RuleKind::Strict => "->",
            RuleKind::Defeasible => "=>",
            RuleKind::Defeater => "~>",
        }
    }

    /// Member of R_sd: able to support a conclusion.
    pub fn supports(self) -> bool {
        self != RuleKind::Defeater
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rule {
    pub label: Label,
    pub kind: RuleKind,
    pub mode: Option<Modality>,
    pub antecedents: BTreeSet<Premise>,
    pub consequent: Literal,
}

impl Rule {
    /// A modeless rule over plain literals.
    pub fn plain(
        label: Label,
        kind: RuleKind,
        antecedents: impl IntoIterator<Item = Literal>,
        consequent: Literal,
    ) -> Self {
        Rule {
            label,
            kind,
            mode: None,
            antecedents: antecedents.into_iter().map(Premise::Plain).collect(),
            consequent,
        }
    }

    pub fn moded(
        label: Label,
        kind: RuleKind,
        mode: Modality,
        antecedents: impl IntoIterator<Item = Premise>,
        consequent: Literal,
    ) -> Self {
        Rule { label, kind, mode: Some(mode), antecedents: antecedents.into_iter().collect(), consequent }
    }

    /// Mode with modeless rules read as belief rules.
    pub fn mode_or_bel(&self) -> Modality {
        self.mode.unwrap_or(Modality::Bel)
    }

    /// Antecedents that are plain literals; modal ones are skipped.
    pub fn plain_antecedents(&self) -> impl Iterator<Item = &Literal> {
        self.antecedents.iter().filter_map(Premise::as_plain)
    }

    pub fn size(&self) -> usize {
        1 + self.antecedents.len()
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rule {}", self.label)?;
        if let Some(m) = self.mode {
            write!(f, "[{m}]")?;
        }
        f.write_str(":")?;
        for (i, a) in self.antecedents.iter().enumerate() {
            f.write_str(if i == 0 { " " } else { ", " })?;
            write!(f, "{a}")?;
        }
        write!(f, " {} {}.", self.kind.arrow(), self.consequent)
    }
}

/// How conflicting literals are paired in an argumentation theory.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ComplementScheme {
    /// `p` against `~p`.
    #[default]
    Classical,
    /// Flattened atoms: `p`/`not_p`, `obl_p`/`obl_not_p`, and `~obl_p` against `obl_p`.
    Flat,
}

impl ComplementScheme {
    pub fn complement(self, l: &Literal) -> Literal {
        match self {
            ComplementScheme::Classical => l.complement(),
            ComplementScheme::Flat => flat::flat_opposite(l),
        }
    }
}

pub type SupPair = (Label, Label);

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ArgTheory {
    pub facts: BTreeSet<Literal>,
    pub rules: Vec<Rule>,
    /// (winner, loser) pairs.
    pub superiority: BTreeSet<SupPair>,
    pub scheme: ComplementScheme,
}

impl ArgTheory {
    pub fn complement(&self, l: &Literal) -> Literal {
        self.scheme.complement(l)
    }

    pub fn rule(&self, label: &Label) -> Option<&Rule> {
        self.rules.iter().find(|r| &r.label == label)
    }

    /// Every literal mentioned by a fact or rule, together with its complement.
    pub fn literals(&self) -> BTreeSet<Literal> {
        let mut out = BTreeSet::new();
        let mentioned = self
            .facts
            .iter()
            .chain(self.rules.iter().flat_map(|r| r.plain_antecedents().chain(std::iter::once(&r.consequent))));
        for l in mentioned {
            out.insert(self.complement(l));
            out.insert(l.clone());
        }
        out
    }

    /// Rules sorted by label; handy for deterministic output.
    pub fn rules_by_label(&self) -> BTreeMap<&Label, &Rule> {
        self.rules.iter().map(|r| (&r.label, r)).collect()
    }
}

pub const DEFAULT_CONVERSIONS: [(Modality, Modality); 2] =
    [(Modality::Bel, Modality::Obl), (Modality::Bel, Modality::Int)];

pub const DEFAULT_CONFLICTS: [(Modality, Modality); 3] = [
    (Modality::Bel, Modality::Obl),
    (Modality::Bel, Modality::Int),
    (Modality::Obl, Modality::Int),
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AgentTheory {
    pub facts: BTreeSet<Premise>,
    pub rules: Vec<Rule>,
    pub superiority: BTreeSet<SupPair>,
    pub conversions: BTreeSet<(Modality, Modality)>,
    pub conflicts: BTreeSet<(Modality, Modality)>,
}

impl Default for AgentTheory {
    fn default() -> Self {
        AgentTheory {
            facts: BTreeSet::new(),
            rules: Vec::new(),
            superiority: BTreeSet::new(),
            conversions: DEFAULT_CONVERSIONS.into_iter().collect(),
            conflicts: DEFAULT_CONFLICTS.into_iter().collect(),
        }
    }
}

impl AgentTheory {
    pub fn converts(&self, from: Modality, to: Modality) -> bool {
        self.conversions.contains(&(from, to))
    }

    pub fn conflicts_with(&self, winner: Modality, loser: Modality) -> bool {
        self.conflicts.contains(&(winner, loser))
    }

    pub fn has_default_relations(&self) -> bool {
        self.conversions.iter().eq(DEFAULT_CONVERSIONS.iter())
            && self.conflicts.iter().eq(DEFAULT_CONFLICTS.iter())
    }

    pub fn rule(&self, label: &Label) -> Option<&Rule> {
        self.rules.iter().find(|r| &r.label == label)
    }

    /// Literals `q` with `INT q` among the facts.
    pub fn intention_facts(&self) -> BTreeSet<Literal> {
        self.facts
            .iter()
            .filter_map(|f| match f {
                Premise::Modal(m) if !m.negated && m.modality() == Modality::Int => Some(m.literal.clone()),
                _ => None,
            })
            .collect()
    }

    /// Every plain literal occurring anywhere, closed under complement.
    pub fn literals(&self) -> BTreeSet<Literal> {
        let mut out = BTreeSet::new();
        let premises = self.facts.iter().chain(self.rules.iter().flat_map(|r| r.antecedents.iter()));
        for l in premises.map(Premise::literal).chain(self.rules.iter().map(|r| &r.consequent)) {
            out.insert(l.complement());
            out.insert(l.clone());
        }
        out
    }

    /// Reads a modeless theory as an agent theory whose rules are all belief rules.
    pub fn from_arg(t: &ArgTheory) -> Self {
        AgentTheory {
            facts: t.facts.iter().cloned().map(Premise::Plain).collect(),
            rules: t
                .rules
                .iter()
                .map(|r| Rule { mode: Some(Modality::Bel), ..r.clone() })
                .collect(),
            superiority: t.superiority.clone(),
            ..AgentTheory::default()
        }
    }
}

/// |F| + Σ (1 + |A(r)|) + |>|.
pub trait TheorySize {
    fn theory_size(&self) -> usize;
}

impl TheorySize for ArgTheory {
    fn theory_size(&self) -> usize {
        self.facts.len() + self.rules.iter().map(Rule::size).sum::<usize>() + self.superiority.len()
    }
}

impl TheorySize for AgentTheory {
    fn theory_size(&self) -> usize {
        self.facts.len() + self.rules.iter().map(Rule::size).sum::<usize>() + self.superiority.len()
    }
}
