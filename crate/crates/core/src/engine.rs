//! Extensions of argumentation theories: ±Δ and ±∂ under ambiguity blocking with team defeat.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

use serde::Serialize;

use crate::literal::{Literal, Premise};
use crate::net::{Clause, Cond, Line, Net, NetRule};
use crate::status::{Answer, ProofTag, Status, Strength};
use crate::theory::{ArgTheory, Label, Rule};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct LiteralStatus {
    pub delta: Status,
    pub partial: Status,
}

impl LiteralStatus {
    /// Status of a literal the theory never mentions.
    pub const ABSENT: LiteralStatus = LiteralStatus { delta: Status::Rejected, partial: Status::Rejected };

    pub fn get(&self, strength: Strength) -> Status {
        match strength {
            Strength::Definite => self.delta,
            Strength::Defeasible => self.partial,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Extension {
    entries: BTreeMap<Literal, LiteralStatus>,
}

impl Extension {
    pub fn status(&self, l: &Literal) -> LiteralStatus {
        self.entries.get(l).copied().unwrap_or(LiteralStatus::ABSENT)
    }

    pub fn delta(&self, l: &Literal) -> Status {
        self.status(l).delta
    }

    pub fn partial(&self, l: &Literal) -> Status {
        self.status(l).partial
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Literal, &LiteralStatus)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Literals proved defeasibly together with their complement under `t`'s scheme.
    pub fn inconsistencies(&self, t: &ArgTheory) -> Vec<Literal> {
        self.entries
            .iter()
            .filter(|(l, s)| s.partial.is_proved() && self.partial(&t.complement(l)).is_proved())
            .map(|(l, _)| l.clone())
            .collect()
    }

    /// `{"lit": {"delta": "+", "partial": "-"}, ...}` sorted by literal text.
    pub fn to_json(&self) -> serde_json::Value {
        let map: serde_json::Map<String, serde_json::Value> = self
            .entries
            .iter()
            .map(|(l, s)| (l.to_string(), serde_json::to_value(s).expect("status serializes")))
            .collect();
        serde_json::Value::Object(map)
    }
}

impl fmt::Display for Extension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: BTreeMap<String, &LiteralStatus> = self.entries.iter().map(|(l, s)| (l.to_string(), s)).collect();
        let width = rows.keys().map(String::len).max().unwrap_or(0);
        for (l, s) in rows {
            writeln!(f, "{l:width$}  Δ{}  ∂{}", s.delta, s.partial)?;
        }
        Ok(())
    }
}

/// An argumentation theory compiled once and evaluated under any subset of its rules.
#[derive(Debug, Clone)]
pub struct CompiledTheory {
    net: Net,
    literals: Vec<Literal>,
    index: HashMap<Literal, usize>,
    labels: Vec<Label>,
    label_index: HashMap<Label, usize>,
    sup: HashSet<(usize, usize)>,
}

impl CompiledTheory {
    pub fn new(t: &ArgTheory) -> Self {
        Self::with_literals(t, std::iter::empty())
    }

    /// Compiles `t` so that `goal` and its complement have an index even when no rule mentions them.
    pub fn with_goal(t: &ArgTheory, goal: &Literal) -> Self {
        Self::with_literals(t, std::iter::once(goal))
    }

    fn with_literals<'a>(t: &ArgTheory, extra: impl Iterator<Item = &'a Literal>) -> Self {
        let mut all: BTreeSet<Literal> = t.literals();
        for l in extra {
            all.insert(t.complement(l));
            all.insert(l.clone());
        }
        // the flat scheme maps ~x_p to x_p but x_p to x_not_p; close under complement
        let mut frontier: Vec<Literal> = all.iter().map(|l| t.complement(l)).filter(|c| !all.contains(c)).collect();
        while let Some(l) = frontier.pop() {
            let c = t.complement(&l);
            if all.insert(l) && !all.contains(&c) {
                frontier.push(c);
            }
        }
        let literals: Vec<Literal> = all.into_iter().collect();
        let index: HashMap<Literal, usize> = literals.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect();
        let opp = literals.iter().map(|l| index[&t.complement(l)]).collect();
        let fact = literals.iter().map(|l| t.facts.contains(l)).collect();
        let rules = t
            .rules
            .iter()
            .map(|r| NetRule {
                head: index[&r.consequent],
                kind: r.kind,
                body: r.antecedents.iter().map(|a| Cond::Pos(index[a.literal()])).collect(),
            })
            .collect();
        let labels: Vec<Label> = t.rules.iter().map(|r| r.label.clone()).collect();
        let mut label_index = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            label_index.entry(l.clone()).or_insert(i);
        }
        let sup = t
            .superiority
            .iter()
            .filter_map(|(a, b)| Some((*label_index.get(a)?, *label_index.get(b)?)))
            .collect();
        CompiledTheory { net: Net::new(opp, fact, rules), literals, index, labels, label_index, sup }
    }

    pub fn rule_count(&self) -> usize {
        self.labels.len()
    }

    pub fn rule_index(&self, label: &Label) -> Option<usize> {
        self.label_index.get(label).copied()
    }

    pub fn label(&self, rule: usize) -> &Label {
        &self.labels[rule]
    }

    pub fn literal_index(&self, l: &Literal) -> Option<usize> {
        self.index.get(l).copied()
    }

    /// Fixpoint over the rules flagged in `enabled` (all rules when `None`).
    pub fn evaluate(&self, enabled: Option<&[bool]>) -> Evaluation {
        let out = self.net.run(enabled, &|t, s| self.sup.contains(&(t, s)), false);
        Evaluation { delta: out.delta, partial: out.partial }
    }

    pub fn extension(&self, enabled: Option<&[bool]>) -> Extension {
        let ev = self.evaluate(enabled);
        let entries = self
            .literals
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), LiteralStatus { delta: ev.delta[i], partial: ev.partial[i] }))
            .collect();
        Extension { entries }
    }

    fn traced(&self) -> (crate::net::Outcome, Vec<Line>) {
        let mut out = self.net.run(None, &|t, s| self.sup.contains(&(t, s)), true);
        let log = std::mem::take(&mut out.log);
        (out, log)
    }
}

/// Statuses by literal index of a [`CompiledTheory`].
#[derive(Debug, Clone)]
pub struct Evaluation {
    delta: Vec<Status>,
    partial: Vec<Status>,
}

impl Evaluation {
    pub fn delta(&self, literal: usize) -> Status {
        self.delta[literal]
    }

    pub fn partial(&self, literal: usize) -> Status {
        self.partial[literal]
    }
}

/// Δ statuses only.
pub fn compute_definite(t: &ArgTheory) -> BTreeMap<Literal, Status> {
    compute_extension(t).iter().map(|(l, s)| (l.clone(), s.delta)).collect()
}

pub fn compute_extension(t: &ArgTheory) -> Extension {
    CompiledTheory::new(t).extension(None)
}

/// Every antecedent is ∂-proved.
pub fn is_applicable(r: &Rule, ext: &Extension) -> bool {
    r.antecedents.iter().all(|a| ext.partial(a.literal()).is_proved())
}

/// Some antecedent is ∂-rejected.
pub fn is_discarded(r: &Rule, ext: &Extension) -> bool {
    r.antecedents.iter().any(|a| matches!(a, Premise::Plain(l) if ext.partial(l).is_rejected()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceLine<L> {
    pub tag: ProofTag,
    pub conclusion: L,
    pub clause: Clause,
    pub rules: Vec<Label>,
    pub premises: Vec<(ProofTag, L)>,
}

/// Proof lines in derivation order; every premise appears on an earlier line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationTrace<L> {
    pub lines: Vec<TraceLine<L>>,
}

impl<L: fmt::Display> fmt::Display for DerivationTrace<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, line) in self.lines.iter().enumerate() {
            write!(f, "{:>3}. {} {}  [{}", i + 1, line.tag, line.conclusion, line.clause.describe())?;
            if !line.rules.is_empty() {
                let rules: Vec<&str> = line.rules.iter().map(Label::as_str).collect();
                write!(f, "; {}", rules.join(", "))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Proof<L> {
    pub answer: Answer,
    pub trace: Option<DerivationTrace<L>>,
}

/// Keeps the lines the query line depends on, in their original order.
pub(crate) fn trace_for<L: Clone>(
    log: &[Line],
    tag: ProofTag,
    node: usize,
    name: &dyn Fn(usize) -> L,
    label: &dyn Fn(usize) -> Label,
) -> Option<DerivationTrace<L>> {
    let at: HashMap<(ProofTag, usize), usize> = log.iter().enumerate().map(|(i, l)| ((l.tag, l.node), i)).collect();
    let root = *at.get(&(tag, node))?;
    let mut keep = vec![false; log.len()];
    let mut stack = vec![root];
    while let Some(i) = stack.pop() {
        if std::mem::replace(&mut keep[i], true) {
            continue;
        }
        stack.extend(log[i].premises.iter().filter_map(|p| at.get(p).copied()));
    }
    let lines = log
        .iter()
        .zip(&keep)
        .filter(|(_, &k)| k)
        .map(|(l, _)| TraceLine {
            tag: l.tag,
            conclusion: name(l.node),
            clause: l.clause,
            rules: l.rules.iter().map(|&r| label(r)).collect(),
            premises: l.premises.iter().map(|&(t, n)| (t, name(n))).collect(),
        })
        .collect();
    Some(DerivationTrace { lines })
}

pub fn prove(t: &ArgTheory, tag: ProofTag, q: &Literal) -> Proof<Literal> {
    let c = CompiledTheory::with_literals(t, std::iter::once(q));
    let (out, log) = c.traced();
    let node = c.index[q];
    let status = match tag.strength {
        Strength::Definite => out.delta[node],
        Strength::Defeasible => out.partial[node],
    };
    let answer = Answer::of(tag, status);
    let trace = if answer == Answer::Yes {
        trace_for(&log, tag, node, &|n| c.literals[n].clone(), &|r| c.labels[r].clone())
    } else {
        None
    };
    Proof { answer, trace }
}
