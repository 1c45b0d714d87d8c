//! Reference semantics by repeated sweeps over the proof conditions until nothing changes.

use std::collections::{BTreeMap, BTreeSet};

use bioflat::theory::{AgentTheory, ArgTheory, Rule, RuleKind};
use bioflat::{Complement, Literal, Modality, Premise, Status};

/// Four sets of tagged conclusions grown by sweeping every condition.
#[derive(Debug, Clone)]
struct Tags<K: Ord> {
    plus_delta: BTreeSet<K>,
    minus_delta: BTreeSet<K>,
    plus_partial: BTreeSet<K>,
    minus_partial: BTreeSet<K>,
}

impl<K: Ord> Default for Tags<K> {
    fn default() -> Self {
        Tags {
            plus_delta: BTreeSet::new(),
            minus_delta: BTreeSet::new(),
            plus_partial: BTreeSet::new(),
            minus_partial: BTreeSet::new(),
        }
    }
}

fn status<K: Ord>(plus: &BTreeSet<K>, minus: &BTreeSet<K>, k: &K) -> Status {
    match (plus.contains(k), minus.contains(k)) {
        (true, false) => Status::Proved,
        (false, true) => Status::Rejected,
        (false, false) => Status::Undetermined,
        (true, true) => panic!("oracle derived both signs"),
    }
}

/// (Δ, ∂) for every literal of `t`, under `t`'s complement scheme.
pub fn arg_extension(t: &ArgTheory) -> BTreeMap<Literal, (Status, Status)> {
    let mut lits: BTreeSet<Literal> = t.literals();
    loop {
        let more: Vec<Literal> = lits.iter().map(|l| t.complement(l)).filter(|c| !lits.contains(c)).collect();
        if more.is_empty() {
            break;
        }
        lits.extend(more);
    }
    let head = |q: &Literal| t.rules.iter().filter(|r| &r.consequent == q).collect::<Vec<_>>();
    let sup = |a: &Rule, b: &Rule| t.superiority.contains(&(a.label.clone(), b.label.clone()));
    let body = |r: &Rule| r.antecedents.iter().map(|a| a.literal().clone()).collect::<Vec<_>>();

    let mut s: Tags<Literal> = Tags::default();
    loop {
        let mut changed = false;
        for q in &lits {
            let nq = t.complement(q);
            let strict = || head(q).into_iter().filter(|r| r.kind == RuleKind::Strict);
            if !s.plus_delta.contains(q)
                && (t.facts.contains(q) || strict().any(|r| body(r).iter().all(|a| s.plus_delta.contains(a))))
            {
                changed |= s.plus_delta.insert(q.clone());
            }
            if !s.minus_delta.contains(q)
                && !t.facts.contains(q)
                && strict().all(|r| body(r).iter().any(|a| s.minus_delta.contains(a)))
            {
                changed |= s.minus_delta.insert(q.clone());
            }
            let applicable = |r: &Rule| body(r).iter().all(|a| s.plus_partial.contains(a));
            let discarded = |r: &Rule| body(r).iter().any(|a| s.minus_partial.contains(a));
            let (support, attacks) = (head(q), head(&nq));
            let plus = s.plus_delta.contains(q)
                || (s.minus_delta.contains(&nq)
                    && support.iter().any(|r| r.kind != RuleKind::Defeater && applicable(r))
                    && attacks.iter().all(|a| discarded(a) || support.iter().any(|d| applicable(d) && sup(d, a))));
            let minus = s.minus_delta.contains(q)
                && (s.plus_delta.contains(&nq)
                    || support.iter().filter(|r| r.kind != RuleKind::Defeater).all(|r| discarded(r))
                    || attacks.iter().any(|a| applicable(a) && support.iter().all(|d| discarded(d) || !sup(d, a))));
            if plus {
                changed |= s.plus_partial.insert(q.clone());
            }
            if minus {
                changed |= s.minus_partial.insert(q.clone());
            }
        }
        if !changed {
            break;
        }
    }
    lits.iter()
        .map(|q| {
            let d = status(&s.plus_delta, &s.minus_delta, q);
            let p = status(&s.plus_partial, &s.minus_partial, q);
            (q.clone(), (d, p))
        })
        .collect()
}

type Node = (Modality, Literal);

/// One way a rule is read when proving conclusions of a given modality.
struct Reading<'t> {
    rule: &'t Rule,
    /// (node, must be proved) pairs; `false` encodes a `¬X a` antecedent.
    body: Vec<(Node, bool)>,
    supports: bool,
    strict: bool,
}

fn readings<'t>(t: &'t AgentTheory, x: Modality, q: &Literal) -> Vec<Reading<'t>> {
    let mut out = Vec::new();
    for r in t.rules.iter().filter(|r| &r.consequent == q) {
        let z = r.mode_or_bel();
        let written: Vec<(Node, bool)> = r
            .antecedents
            .iter()
            .map(|a| match a {
                Premise::Plain(l) => ((Modality::Bel, l.clone()), true),
                Premise::Modal(m) => ((m.modality(), m.literal.clone()), !m.negated),
            })
            .collect();
        let all_plain = !r.antecedents.is_empty() && r.antecedents.iter().all(|a| a.as_plain().is_some());
        let as_mode = |y: Modality| r.plain_antecedents().map(|l| ((y, l.clone()), true)).collect::<Vec<_>>();
        let sd = r.kind != RuleKind::Defeater;
        if z == x {
            out.push(Reading { rule: r, body: written, supports: sd, strict: r.kind == RuleKind::Strict });
            continue;
        }
        if sd && all_plain && t.converts(z, x) {
            out.push(Reading { rule: r, body: as_mode(x), supports: true, strict: r.kind == RuleKind::Strict });
        }
        if t.conflicts_with(z, x) {
            out.push(Reading { rule: r, body: written.clone(), supports: false, strict: false });
            for y in Modality::ALL {
                if y != x && y != z && sd && all_plain && t.converts(z, y) {
                    out.push(Reading { rule: r, body: as_mode(y), supports: false, strict: false });
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModalRow {
    pub delta: Status,
    pub partial: Status,
}

/// (Δ, ∂) for every modality and literal of `t`.
pub fn bio_extension(t: &AgentTheory) -> BTreeMap<Node, ModalRow> {
    let lits = t.literals();
    let nodes: Vec<Node> = Modality::ALL.iter().flat_map(|&x| lits.iter().map(move |l| (x, l.clone()))).collect();
    let is_fact = |(x, l): &Node| {
        let p = if *x == Modality::Bel {
            Premise::Plain(l.clone())
        } else {
            Premise::Modal(bioflat::ModalLiteral::new(false, *x, l.clone()).unwrap())
        };
        t.facts.contains(&p)
    };
    let reads: BTreeMap<Node, Vec<Reading>> = nodes.iter().map(|n| (n.clone(), readings(t, n.0, &n.1))).collect();
    let beats = |a: &Rule, b: &Rule| {
        t.superiority.contains(&(a.label.clone(), b.label.clone()))
            || t.conflicts_with(a.mode_or_bel(), b.mode_or_bel())
    };

    let mut s: Tags<Node> = Tags::default();
    let holds = |plus: &BTreeSet<Node>, minus: &BTreeSet<Node>, (n, pos): &(Node, bool)| {
        if *pos {
            plus.contains(n)
        } else {
            minus.contains(n)
        }
    };
    let fails = |plus: &BTreeSet<Node>, minus: &BTreeSet<Node>, (n, pos): &(Node, bool)| {
        if *pos {
            minus.contains(n)
        } else {
            plus.contains(n)
        }
    };
    loop {
        let mut changed = false;
        for q in &nodes {
            let nq = (q.0, q.1.complement());
            let own = &reads[q];
            let opp = &reads[&nq];
            let strict = || own.iter().filter(|r| r.strict);
            if !s.plus_delta.contains(q)
                && (is_fact(q)
                    || strict().any(|r| r.body.iter().all(|c| holds(&s.plus_delta, &s.minus_delta, c))))
            {
                changed |= s.plus_delta.insert(q.clone());
            }
            if !s.minus_delta.contains(q)
                && !is_fact(q)
                && strict().all(|r| r.body.iter().any(|c| fails(&s.plus_delta, &s.minus_delta, c)))
            {
                changed |= s.minus_delta.insert(q.clone());
            }
            let applicable = |r: &Reading| r.body.iter().all(|c| holds(&s.plus_partial, &s.minus_partial, c));
            let discarded = |r: &Reading| r.body.iter().any(|c| fails(&s.plus_partial, &s.minus_partial, c));
            let plus = s.plus_delta.contains(q)
                || (s.minus_delta.contains(&nq)
                    && own.iter().any(|r| r.supports && applicable(r))
                    && opp.iter().all(|a| discarded(a) || own.iter().any(|d| applicable(d) && beats(d.rule, a.rule))));
            let minus = s.minus_delta.contains(q)
                && (s.plus_delta.contains(&nq)
                    || own.iter().filter(|r| r.supports).all(&discarded)
                    || opp.iter().any(|a| applicable(a) && own.iter().all(|d| discarded(d) || !beats(d.rule, a.rule))));
            if plus {
                changed |= s.plus_partial.insert(q.clone());
            }
            if minus {
                changed |= s.minus_partial.insert(q.clone());
            }
        }
        if !changed {
            break;
        }
    }
    nodes
        .into_iter()
        .map(|q| {
            let row = ModalRow {
                delta: status(&s.plus_delta, &s.minus_delta, &q),
                partial: status(&s.plus_partial, &s.minus_partial, &q),
            };
            (q, row)
        })
        .collect()
}
