//! Flattening of agent theories into argumentation theories.
//!
//! Modal literals become fresh atoms (`OBL p` is `obl_p`, `INT ~p` is `int_not_p`),
//! and each agent rule is unfolded into one argumentation rule per way the agent
//! engine can use it: in its own mode, through conversion, or as a conflicting attack.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::literal::{Atom, Literal, Modality, Premise};
use crate::theory::{AgentTheory, ArgTheory, ComplementScheme, Label, Rule, RuleKind, SupPair};
use crate::validate::{validate_agent, Violation};

const NOT: &str = "not_";
const GUARD: &str = "guard_";
const RESERVED: [&str; 4] = [NOT, "obl_", "int_", GUARD];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error("atom `{0}` collides with the flattening name scheme (reserved prefixes not_, obl_, int_, guard_)")]
    Collision(Atom),
    #[error("only the default conversion and conflict relations can be flattened")]
    NonDefaultRelations,
    #[error("non-flat literal `{0}`")]
    NonFlat(Literal),
    #[error("generated label `{0}` is produced twice")]
    LabelCollision(Label),
    #[error("invalid agent theory: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
}

fn prefix(x: Modality) -> &'static str {
    match x {
        Modality::Bel => "",
        Modality::Obl => "obl_",
        Modality::Int => "int_",
    }
}

fn short(x: Modality) -> &'static str {
    match x {
        Modality::Bel => "bel",
        Modality::Obl => "obl",
        Modality::Int => "int",
    }
}

fn atom(s: String) -> Atom {
    Atom::new(s).expect("flat names are identifiers")
}

/// `p ↦ p`, `~p ↦ not_p`.
pub fn pflat(q: &Literal) -> Atom {
    if q.negated {
        atom(format!("{NOT}{}", q.atom))
    } else {
        q.atom.clone()
    }
}

/// The flat literal standing for `q` under modality `x`: `q` itself for BEL.
pub fn flat_modal(x: Modality, q: &Literal) -> Literal {
    Literal::pos(atom(format!("{}{}", prefix(x), pflat(q))))
}

/// `q ↦ pflat(q)`, `Xq ↦ x_pflat(q)`, `¬Xq ↦ ¬x_pflat(q)`.
pub fn flat(p: &Premise) -> Literal {
    match p {
        Premise::Plain(l) => flat_modal(Modality::Bel, l),
        Premise::Modal(m) => {
            let l = flat_modal(m.modality(), &m.literal);
            if m.negated {
                Literal::neg(l.atom)
            } else {
                l
            }
        }
    }
}

fn toggle_not(s: &str) -> String {
    match s.strip_prefix(NOT) {
        Some(rest) if !rest.is_empty() => rest.to_string(),
        _ => format!("{NOT}{s}"),
    }
}

/// Complement under the flat scheme, total on every literal.
pub(crate) fn flat_opposite(l: &Literal) -> Literal {
    if l.negated {
        return Literal::pos(l.atom.clone());
    }
    let a = l.atom.as_str();
    for p in ["obl_", "int_"] {
        if let Some(rest) = a.strip_prefix(p).filter(|r| !r.is_empty()) {
            return Literal::pos(atom(format!("{p}{}", toggle_not(rest))));
        }
    }
    Literal::pos(atom(toggle_not(a)))
}

fn is_source_atom(s: &str) -> bool {
    !RESERVED.iter().any(|p| s.starts_with(p))
}

fn is_flat(l: &Literal) -> bool {
    let a = l.atom.as_str();
    let modal = ["obl_", "int_"].iter().find_map(|p| a.strip_prefix(p));
    let inner_ok = |s: &str| is_source_atom(s) || s.strip_prefix(NOT).is_some_and(is_source_atom);
    match modal {
        Some(rest) => inner_ok(rest),
        None if l.negated => false,
        None => inner_ok(a) || a.strip_prefix(NOT).unwrap_or(a).starts_with(GUARD),
    }
}

/// `p ↔ not_p`, `x_p ↔ x_not_p`, and `¬x_p ↦ x_p`.
pub fn flat_complement(q: &Literal) -> Result<Literal, TransformError> {
    if is_flat(q) {
        Ok(flat_opposite(q))
    } else {
        Err(TransformError::NonFlat(q.clone()))
    }
}

/// The ways a source rule reappears in the flat theory.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Form {
    Fl,
    Cv(Modality),
    CvCf { via: Modality, target: Modality },
    CfBel(Modality),
    CfOI,
}

impl Form {
    fn suffix(self) -> String {
        match self {
            Form::Fl => "fl".into(),
            Form::Cv(x) => format!("Cv{}", short(x)),
            Form::CvCf { via, target } => format!("Cv{}Cf{}", short(via), short(target)),
            Form::CfBel(x) => format!("Cfbel{}", short(x)),
            Form::CfOI => "CfOI".into(),
        }
    }
}

struct Unfolded {
    label: Label,
    rule: Rule,
}

fn forms_of(r: &Rule) -> Vec<Unfolded> {
    let mode = r.mode_or_bel();
    let q = &r.consequent;
    let flat_body = || r.antecedents.iter().map(flat).collect::<Vec<_>>();
    let modal_body = |x: Modality| r.plain_antecedents().map(|a| flat_modal(x, a)).collect::<Vec<_>>();
    let make = |form: Form, kind: RuleKind, body: Vec<Literal>, head: Literal| Unfolded {
        label: Label::new(format!("{}_{}", r.label, form.suffix())).expect("suffixed label is valid"),
        rule: Rule::plain(Label::new(format!("{}_{}", r.label, form.suffix())).expect("valid"), kind, body, head),
    };

    let mut out = vec![make(Form::Fl, r.kind, flat_body(), flat_modal(mode, q))];
    let modal = [Modality::Obl, Modality::Int];
    if mode == Modality::Bel {
        let convertible = r.kind.supports()
            && !r.antecedents.is_empty()
            && r.antecedents.iter().all(|a| matches!(a, Premise::Plain(_)));
        if convertible {
            for x in modal {
                out.push(make(Form::Cv(x), r.kind, modal_body(x), flat_modal(x, q)));
            }
            for (via, target) in [(Modality::Obl, Modality::Int), (Modality::Int, Modality::Obl)] {
                out.push(make(Form::CvCf { via, target }, RuleKind::Defeater, modal_body(via), flat_modal(target, q)));
            }
        }
        for x in modal {
            out.push(make(Form::CfBel(x), RuleKind::Defeater, flat_body(), flat_modal(x, q)));
        }
    }
    if mode == Modality::Obl {
        out.push(make(Form::CfOI, RuleKind::Defeater, flat_body(), flat_modal(Modality::Int, q)));
    }
    out
}

/// Source label (or fact / negated modal literal) to the labels generated from it.
pub type Provenance = BTreeMap<String, Vec<Label>>;

pub fn transform_theory(t: &AgentTheory) -> Result<ArgTheory, TransformError> {
    transform_with_map(t).map(|(theory, _)| theory)
}

pub fn transform_with_map(t: &AgentTheory) -> Result<(ArgTheory, Provenance), TransformError> {
    let violations = validate_agent(t);
    if !violations.is_empty() {
        return Err(TransformError::Invalid(violations));
    }
    if !t.has_default_relations() {
        return Err(TransformError::NonDefaultRelations);
    }
    if let Some(bad) = t.literals().into_iter().find(|l| !is_source_atom(l.atom.as_str())) {
        return Err(TransformError::Collision(bad.atom));
    }

    let mut provenance = Provenance::new();
    let mut rules: Vec<Rule> = Vec::new();
    let mut forms_by_source: BTreeMap<&Label, Vec<(Label, Literal)>> = BTreeMap::new();

    let mut facts = BTreeSet::new();
    for f in &t.facts {
        match f {
            Premise::Modal(m) if m.modality() == Modality::Int => {
                let label = Label::new(format!("r_{}", pflat(&m.literal))).expect("valid");
                provenance.insert(f.to_string(), vec![label.clone()]);
                rules.push(Rule::plain(label, RuleKind::Strict, [], flat(f)));
            }
            _ => {
                facts.insert(flat(f));
            }
        }
    }

    for r in &t.rules {
        let unfolded = forms_of(r);
        provenance.insert(r.label.to_string(), unfolded.iter().map(|u| u.label.clone()).collect());
        forms_by_source.insert(
            &r.label,
            unfolded.iter().map(|u| (u.label.clone(), u.rule.consequent.clone())).collect(),
        );
        rules.extend(unfolded.into_iter().map(|u| u.rule));
    }

    // superiority over all form pairs of >soc whose heads conflict
    let mut superiority: BTreeSet<SupPair> = BTreeSet::new();
    let by_head: BTreeMap<&Literal, Vec<&Rule>> = t.rules.iter().fold(BTreeMap::new(), |mut m, r| {
        m.entry(&r.consequent).or_insert_with(Vec::new).push(r);
        m
    });
    let mut soc: BTreeSet<(&Label, &Label)> = t.superiority.iter().map(|(a, b)| (a, b)).collect();
    for r in &t.rules {
        let opposed = by_head.get(&crate::literal::Complement::complement(&r.consequent));
        for s in opposed.into_iter().flatten() {
            if t.conflicts_with(r.mode_or_bel(), s.mode_or_bel()) {
                soc.insert((&r.label, &s.label));
            }
        }
    }
    for (r, s) in soc {
        for (a, head_a) in &forms_by_source[r] {
            for (b, head_b) in &forms_by_source[s] {
                if flat_opposite(head_a) == *head_b {
                    superiority.insert((a.clone(), b.clone()));
                }
            }
        }
    }

    // negated modal antecedents: x_p ⇒ guard, ⇒ ~guard, ~guard ⇒ ¬x_p
    let negated: BTreeSet<(Modality, &Literal)> = t
        .rules
        .iter()
        .flat_map(|r| r.antecedents.iter())
        .filter_map(|a| match a {
            Premise::Modal(m) if m.negated => Some((m.modality(), &m.literal)),
            _ => None,
        })
        .collect();
    for (x, p) in negated {
        let xp = flat_modal(x, p);
        let name = format!("{}{}", short(x), pflat(p));
        let guard = Literal::pos(atom(format!("{GUARD}{name}")));
        let not_guard = flat_opposite(&guard);
        let dum = Label::new(format!("dum-{name}")).expect("valid");
        let dum_neg = Label::new(format!("dum-neg{name}")).expect("valid");
        let neg = Label::new(format!("neg-{name}")).expect("valid");
        for r in rules.iter().filter(|r| r.consequent == xp) {
            superiority.insert((neg.clone(), r.label.clone()));
        }
        superiority.insert((dum.clone(), dum_neg.clone()));
        rules.push(Rule::plain(dum.clone(), RuleKind::Defeasible, [xp.clone()], guard));
        rules.push(Rule::plain(dum_neg.clone(), RuleKind::Defeasible, [], not_guard.clone()));
        rules.push(Rule::plain(neg.clone(), RuleKind::Defeasible, [not_guard], Literal::neg(xp.atom)));
        let key = Premise::Modal(crate::literal::ModalLiteral::new(true, x, p.clone()).expect("x is modal"));
        provenance.insert(key.to_string(), vec![dum, dum_neg, neg]);
    }

    let mut seen = BTreeSet::new();
    if let Some(dup) = rules.iter().find(|r| !seen.insert(&r.label)) {
        return Err(TransformError::LabelCollision(dup.label.clone()));
    }
    let theory = ArgTheory { facts, rules, superiority, scheme: ComplementScheme::Flat };
    Ok((theory, provenance))
}
