use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::literal::{Complement, Premise};
use crate::theory::{AgentTheory, ArgTheory, Label, Rule, SupPair};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    DuplicateLabel(Label),
    DanglingLabel(Label),
    /// r > r.
    Irreflexive(Label),
    /// A cycle in the superiority relation; length two is an asymmetry violation.
    Cyclic(Vec<Label>),
    ModeInArgTheory(Label),
    ModalAntecedentInArgTheory(Label),
    MissingMode(Label),
    /// Agent superiority across modes that no conflict pair accounts for.
    CrossModeSuperiority(Label, Label),
    /// Agent superiority between rules whose consequents are not complementary.
    NonConflictingSuperiority(Label, Label),
    NegatedModalFact(Premise),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateLabel(l) => write!(f, "duplicate label `{l}`"),
            Violation::DanglingLabel(l) => write!(f, "superiority names unknown rule `{l}`"),
            Violation::Irreflexive(l) => write!(f, "irreflexive: `{l} > {l}`"),
            Violation::Cyclic(ls) => {
                let path: Vec<_> = ls.iter().map(Label::as_str).collect();
                write!(f, "acyclic/asymmetric: superiority cycle {} > {}", path.join(" > "), path[0])
            }
            Violation::ModeInArgTheory(l) => write!(f, "rule `{l}` carries a mode in an argumentation theory"),
            Violation::ModalAntecedentInArgTheory(l) => {
                write!(f, "rule `{l}` has a modal antecedent in an argumentation theory")
            }
            Violation::MissingMode(l) => write!(f, "rule `{l}` has no mode in an agent theory"),
            Violation::CrossModeSuperiority(a, b) => {
                write!(f, "`{a} > {b}` relates rules of different modes without a matching conflict")
            }
            Violation::NonConflictingSuperiority(a, b) => {
                write!(f, "`{a} > {b}` relates rules without complementary consequents")
            }
            Violation::NegatedModalFact(p) => write!(f, "fact `{p}` is a negated modal literal"),
        }
    }
}

fn label_checks(rules: &[Rule], sup: &BTreeSet<SupPair>, out: &mut Vec<Violation>) {
    let mut seen = BTreeSet::new();
    for r in rules {
        if !seen.insert(&r.label) {
            out.push(Violation::DuplicateLabel(r.label.clone()));
        }
    }
    let mut dangling = BTreeSet::new();
    for (a, b) in sup {
        for l in [a, b] {
            if !seen.contains(l) && dangling.insert(l) {
                out.push(Violation::DanglingLabel(l.clone()));
            }
        }
        if a == b {
            out.push(Violation::Irreflexive(a.clone()));
        }
    }
    for cycle in cycles(sup) {
        out.push(Violation::Cyclic(cycle));
    }
}

/// One representative cycle per non-trivial strongly connected component.
fn cycles(sup: &BTreeSet<SupPair>) -> Vec<Vec<Label>> {
    let mut succ: BTreeMap<&Label, Vec<&Label>> = BTreeMap::new();
    for (a, b) in sup.iter().filter(|(a, b)| a != b) {
        succ.entry(a).or_default().push(b);
        succ.entry(b).or_default();
    }
    let nodes: Vec<&Label> = succ.keys().copied().collect();
    let index: BTreeMap<&Label, usize> = nodes.iter().enumerate().map(|(i, l)| (*l, i)).collect();
    let adj: Vec<Vec<usize>> = nodes.iter().map(|l| succ[l].iter().map(|m| index[m]).collect()).collect();

    let comp = tarjan(&adj);
    let mut members: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (v, &c) in comp.iter().enumerate() {
        members.entry(c).or_default().push(v);
    }
    let mut out = Vec::new();
    for vs in members.values().filter(|vs| vs.len() > 1) {
        // walk inside the component until a node repeats
        let start = vs[0];
        let c = comp[start];
        let mut path = vec![start];
        let mut pos: BTreeMap<usize, usize> = [(start, 0)].into();
        let mut v = start;
        loop {
            let next = *adj[v].iter().find(|&&w| comp[w] == c).expect("scc member has an inner edge");
            if let Some(&p) = pos.get(&next) {
                out.push(path[p..].iter().map(|&i| nodes[i].clone()).collect());
                break;
            }
            pos.insert(next, path.len());
            path.push(next);
            v = next;
        }
    }
    out
}

fn tarjan(adj: &[Vec<usize>]) -> Vec<usize> {
    struct St<'a> {
        adj: &'a [Vec<usize>],
        index: Vec<Option<usize>>,
        low: Vec<usize>,
        on: Vec<bool>,
        stack: Vec<usize>,
        comp: Vec<usize>,
        next: usize,
        ncomp: usize,
    }
    fn visit(s: &mut St, v: usize) {
        s.index[v] = Some(s.next);
        s.low[v] = s.next;
        s.next += 1;
        s.stack.push(v);
        s.on[v] = true;
        for i in 0..s.adj[v].len() {
            let w = s.adj[v][i];
            match s.index[w] {
                None => {
                    visit(s, w);
                    s.low[v] = s.low[v].min(s.low[w]);
                }
                Some(iw) if s.on[w] => s.low[v] = s.low[v].min(iw),
                _ => {}
            }
        }
        if Some(s.low[v]) == s.index[v] {
            while let Some(w) = s.stack.pop() {
                s.on[w] = false;
                s.comp[w] = s.ncomp;
                if w == v {
                    break;
                }
            }
            s.ncomp += 1;
        }
    }
    let n = adj.len();
    let mut s = St {
        adj,
        index: vec![None; n],
        low: vec![0; n],
        on: vec![false; n],
        stack: Vec::new(),
        comp: vec![0; n],
        next: 0,
        ncomp: 0,
    };
    for v in 0..n {
        if s.index[v].is_none() {
            visit(&mut s, v);
        }
    }
    s.comp
}

pub fn validate_arg(t: &ArgTheory) -> Vec<Violation> {
    let mut out = Vec::new();
    for r in &t.rules {
        if r.mode.is_some() {
            out.push(Violation::ModeInArgTheory(r.label.clone()));
        }
        if r.antecedents.iter().any(|a| matches!(a, Premise::Modal(_))) {
            out.push(Violation::ModalAntecedentInArgTheory(r.label.clone()));
        }
    }
    label_checks(&t.rules, &t.superiority, &mut out);
    out
}

pub fn validate_agent(t: &AgentTheory) -> Vec<Violation> {
    let mut out = Vec::new();
    for f in &t.facts {
        if matches!(f, Premise::Modal(m) if m.negated) {
            out.push(Violation::NegatedModalFact(f.clone()));
        }
    }
    for r in &t.rules {
        if r.mode.is_none() {
            out.push(Violation::MissingMode(r.label.clone()));
        }
    }
    label_checks(&t.rules, &t.superiority, &mut out);
    let by_label: BTreeMap<&Label, &Rule> = t.rules.iter().map(|r| (&r.label, r)).collect();
    for (a, b) in &t.superiority {
        let (Some(ra), Some(rb)) = (by_label.get(a), by_label.get(b)) else { continue };
        if ra.consequent.complement() != rb.consequent {
            out.push(Violation::NonConflictingSuperiority(a.clone(), b.clone()));
        }
        let (ma, mb) = (ra.mode_or_bel(), rb.mode_or_bel());
        if ma != mb && !t.conflicts_with(ma, mb) {
            out.push(Violation::CrossModeSuperiority(a.clone(), b.clone()));
        }
    }
    out
}
