//! Extensions of agent theories: ±Δ_X and ±∂_X for each modality, with rule
//! conversion and modal conflict, plus the support predicate Σ_X.
//!
//! Every rule is expanded into the uses it admits for each target modality and
//! the expansions are run through the same fixpoint as plain theories.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use serde::Serialize;

use crate::engine::{trace_for, Proof};
use crate::literal::{Complement, Literal, Modality, Premise};
use crate::net::{Cond, Net, NetRule};
use crate::status::{Answer, ProofTag, Sign, Status, Strength};
use crate::theory::{AgentTheory, Label, RuleKind};

/// `X l`, the node a modal proof tag is attached to.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Conclusion {
    pub modality: Modality,
    pub literal: Literal,
}

impl Conclusion {
    pub fn new(modality: Modality, literal: Literal) -> Self {
        Conclusion { modality, literal }
    }
}

impl fmt::Display for Conclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.modality.keyword(), self.literal)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct ModalStatus {
    pub delta: Status,
    pub partial: Status,
    pub support: Status,
}

impl ModalStatus {
    const ABSENT: ModalStatus =
        ModalStatus { delta: Status::Rejected, partial: Status::Rejected, support: Status::Rejected };

    pub fn get(&self, strength: Strength) -> Status {
        match strength {
            Strength::Definite => self.delta,
            Strength::Defeasible => self.partial,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ModalExtension {
    entries: BTreeMap<Conclusion, ModalStatus>,
}

impl ModalExtension {
    pub fn status(&self, x: Modality, l: &Literal) -> ModalStatus {
        self.entries.get(&Conclusion::new(x, l.clone())).copied().unwrap_or(ModalStatus::ABSENT)
    }

    pub fn delta(&self, x: Modality, l: &Literal) -> Status {
        self.status(x, l).delta
    }

    pub fn partial(&self, x: Modality, l: &Literal) -> Status {
        self.status(x, l).partial
    }

    pub fn support(&self, x: Modality, l: &Literal) -> Status {
        self.status(x, l).support
    }

    /// Status of a premise at `strength`; `¬X p` holds exactly when `X p` is rejected.
    pub fn premise(&self, p: &Premise, strength: Strength) -> Status {
        match p {
            Premise::Plain(l) => self.status(Modality::Bel, l).get(strength),
            Premise::Modal(m) => {
                let s = self.status(m.modality(), &m.literal).get(strength);
                match (m.negated, s) {
                    (false, s) => s,
                    (true, Status::Proved) => Status::Rejected,
                    (true, Status::Rejected) => Status::Proved,
                    (true, Status::Undetermined) => Status::Undetermined,
                }
            }
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Conclusion, &ModalStatus)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `{"BEL q": {"delta": "+", "partial": "+", "support": "+"}, ...}`.
    pub fn to_json(&self) -> serde_json::Value {
        let map: serde_json::Map<String, serde_json::Value> = self
            .entries
            .iter()
            .map(|(c, s)| (c.to_string(), serde_json::to_value(s).expect("status serializes")))
            .collect();
        serde_json::Value::Object(map)
    }
}

impl fmt::Display for ModalExtension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: BTreeMap<String, &ModalStatus> = self.entries.iter().map(|(c, s)| (c.to_string(), s)).collect();
        let width = rows.keys().map(String::len).max().unwrap_or(0);
        for (c, s) in rows {
            writeln!(f, "{c:width$}  Δ{}  ∂{}  Σ{}", s.delta, s.partial, s.support)?;
        }
        Ok(())
    }
}

/// How a rule of mode `Z` takes part in proofs for a target modality `X`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Usage {
    /// `Z = X`.
    Own,
    /// `Cv(Z, X)`: antecedents read as `X a`.
    Conv,
    /// `Cf(Z, X)`: attack only, antecedents as written.
    Conflict,
    /// `Cv(Z, Y)` and `Cf(Z, X)`: attack only, antecedents read as `Y a`.
    ConvConflict(Modality),
}

struct Form {
    source: usize,
    target: Modality,
    usage: Usage,
}

/// An agent theory expanded into its rule uses, ready to evaluate.
struct Compiled<'t> {
    theory: &'t AgentTheory,
    net: Net,
    literals: Vec<Literal>,
    index: HashMap<Literal, usize>,
    forms: Vec<Form>,
    explicit: HashSet<(usize, usize)>,
}

fn short(x: Modality) -> &'static str {
    match x {
        Modality::Bel => "bel",
        Modality::Obl => "obl",
        Modality::Int => "int",
    }
}

impl<'t> Compiled<'t> {
    fn new(t: &'t AgentTheory, extra: Option<&Literal>) -> Self {
        let mut all = t.literals();
        if let Some(l) = extra {
            all.insert(l.complement());
            all.insert(l.clone());
        }
        let literals: Vec<Literal> = all.into_iter().collect();
        let index: HashMap<Literal, usize> = literals.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect();
        let n = literals.len();
        let node = |x: Modality, l: &Literal| x.index() * n + index[l];

        let mut opp = vec![0; 3 * n];
        let mut fact = vec![false; 3 * n];
        for x in Modality::ALL {
            for l in &literals {
                opp[node(x, l)] = node(x, &l.complement());
            }
        }
        for f in &t.facts {
            match f {
                Premise::Plain(l) => fact[node(Modality::Bel, l)] = true,
                Premise::Modal(m) if !m.negated => fact[node(m.modality(), &m.literal)] = true,
                Premise::Modal(_) => {}
            }
        }

        let mut forms = Vec::new();
        let mut rules = Vec::new();
        for (i, r) in t.rules.iter().enumerate() {
            let z = r.mode_or_bel();
            let as_written: Vec<Cond> = r
                .antecedents
                .iter()
                .map(|a| match a {
                    Premise::Plain(l) => Cond::Pos(node(Modality::Bel, l)),
                    Premise::Modal(m) if m.negated => Cond::Neg(node(m.modality(), &m.literal)),
                    Premise::Modal(m) => Cond::Pos(node(m.modality(), &m.literal)),
                })
                .collect();
            let plain: Option<Vec<&Literal>> = r.antecedents.iter().map(Premise::as_plain).collect();
            let convertible = r.kind.supports() && !r.antecedents.is_empty() && plain.is_some();
            let read_as = |y: Modality| -> Vec<Cond> {
                plain.iter().flatten().map(|l| Cond::Pos(node(y, l))).collect()
            };
            for x in Modality::ALL {
                let head = node(x, &r.consequent);
                let mut push = |usage: Usage, kind: RuleKind, body: Vec<Cond>| {
                    forms.push(Form { source: i, target: x, usage });
                    rules.push(NetRule { head, kind, body });
                };
                if x == z {
                    push(Usage::Own, r.kind, as_written.clone());
                    continue;
                }
                if convertible && t.converts(z, x) {
                    push(Usage::Conv, r.kind, read_as(x));
                }
                if t.conflicts_with(z, x) {
                    push(Usage::Conflict, RuleKind::Defeater, as_written.clone());
                    if convertible {
                        for y in Modality::ALL.into_iter().filter(|&y| y != x && y != z && t.converts(z, y)) {
                            push(Usage::ConvConflict(y), RuleKind::Defeater, read_as(y));
                        }
                    }
                }
            }
        }

        let position: HashMap<&Label, usize> = t.rules.iter().enumerate().map(|(i, r)| (&r.label, i)).collect();
        let explicit = t
            .superiority
            .iter()
            .filter_map(|(a, b)| Some((*position.get(a)?, *position.get(b)?)))
            .collect();
        Compiled { theory: t, net: Net::new(opp, fact, rules), literals, index, forms, explicit }
    }

    fn node_name(&self, node: usize) -> Conclusion {
        let n = self.literals.len();
        Conclusion::new(Modality::ALL[node / n], self.literals[node % n].clone())
    }

    fn form_label(&self, f: usize) -> Label {
        let form = &self.forms[f];
        let r = &self.theory.rules[form.source];
        let z = r.mode_or_bel();
        let suffix = match form.usage {
            Usage::Own => return r.label.clone(),
            Usage::Conv => format!("Cv{}", short(form.target)),
            Usage::Conflict => format!("Cf{}{}", short(z), short(form.target)),
            Usage::ConvConflict(y) => format!("Cv{}Cf{}", short(y), short(form.target)),
        };
        Label::new(format!("{}_{suffix}", r.label)).expect("suffixed label is valid")
    }

    /// `t > s` between uses: explicit superiority of their sources or a conflict between their modes.
    fn beats(&self, t: usize, s: usize) -> bool {
        let (a, b) = (self.forms[t].source, self.forms[s].source);
        self.explicit.contains(&(a, b))
            || self.theory.conflicts_with(self.theory.rules[a].mode_or_bel(), self.theory.rules[b].mode_or_bel())
    }

    fn run(&self, trace: bool) -> (ModalExtension, Vec<crate::net::Line>) {
        let out = self.net.run(None, &|t, s| self.beats(t, s), trace);
        let mut support = vec![Status::Rejected; self.net.len()];
        let mut settled = vec![true; self.net.len()];
        for (f, form) in self.forms.iter().enumerate() {
            if !matches!(form.usage, Usage::Own | Usage::Conv) {
                continue;
            }
            let h = self.net.rules[f].head;
            if out.applicable[f] {
                support[h] = Status::Proved;
            } else if !out.discarded[f] {
                settled[h] = false;
            }
        }
        let entries = (0..self.net.len())
            .map(|i| {
                let sigma = if support[i].is_proved() || settled[i] { support[i] } else { Status::Undetermined };
                (self.node_name(i), ModalStatus { delta: out.delta[i], partial: out.partial[i], support: sigma })
            })
            .collect();
        (ModalExtension { entries }, out.log)
    }
}

pub fn compute_bio_extension(t: &AgentTheory) -> ModalExtension {
    Compiled::new(t, None).run(false).0
}

/// Σ_X l: some rule usable for `X` in its own mode or by conversion is applicable.
pub fn support(t: &AgentTheory, x: Modality, l: &Literal) -> Status {
    compute_bio_extension(t).support(x, l)
}

/// Answers `tag` for a premise; `¬X p` is answered through the opposite tag on `X p`.
pub fn bio_prove(t: &AgentTheory, tag: ProofTag, query: &Premise) -> Proof<Conclusion> {
    let (x, negated) = match query {
        Premise::Plain(_) => (Modality::Bel, false),
        Premise::Modal(m) => (m.modality(), m.negated),
    };
    let q = query.literal();
    let asked = if negated {
        let sign = match tag.sign {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        };
        ProofTag { sign, ..tag }
    } else {
        tag
    };
    let c = Compiled::new(t, Some(q));
    let (ext, log) = c.run(true);
    let answer = Answer::of(asked, ext.status(x, q).get(tag.strength));
    let trace = if answer == Answer::Yes {
        let node = x.index() * c.literals.len() + c.index[q];
        trace_for(&log, asked, node, &|n| c.node_name(n), &|f| c.form_label(f))
    } else {
        None
    };
    Proof { answer, trace }
}
