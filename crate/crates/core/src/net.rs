//! Worklist fixpoint shared by the argumentation and agent engines.
//!
//! Nodes are conclusions, each with an opposing node whose rules attack it.
//! Body conditions either need a node proved (`Pos`) or rejected (`Neg`).

use std::collections::VecDeque;

use crate::status::{ProofTag, Status};
use crate::theory::RuleKind;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Cond {
    Pos(usize),
    Neg(usize),
}

impl Cond {
    fn node(self) -> usize {
        match self {
            Cond::Pos(n) | Cond::Neg(n) => n,
        }
    }

    fn holds(self, s: Status) -> Status {
        match (self, s) {
            (_, Status::Undetermined) => Status::Undetermined,
            (Cond::Pos(_), s) => s,
            (Cond::Neg(_), Status::Proved) => Status::Rejected,
            (Cond::Neg(_), Status::Rejected) => Status::Proved,
        }
    }

    /// The tag on `node()` that makes this condition hold (or fail, with `holds = false`).
    fn tag(self, strength_delta: bool, holds: bool) -> ProofTag {
        let plus = matches!(self, Cond::Pos(_)) == holds;
        match (strength_delta, plus) {
            (true, true) => ProofTag::PLUS_DELTA,
            (true, false) => ProofTag::MINUS_DELTA,
            (false, true) => ProofTag::PLUS_PARTIAL,
            (false, false) => ProofTag::MINUS_PARTIAL,
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct NetRule {
    pub head: usize,
    pub kind: RuleKind,
    pub body: Vec<Cond>,
}

/// Why a tag was added.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Clause {
    Fact,
    StrictChain,
    StrictBlocked,
    FromDefinite,
    Undefeated,
    ComplementDefinite,
    NoSupport,
    Unbeaten,
}

impl Clause {
    pub fn describe(self) -> &'static str {
        match self {
            Clause::Fact => "fact",
            Clause::StrictChain => "strict rule with proved antecedents",
            Clause::StrictBlocked => "not a fact and every strict rule has a rejected antecedent",
            Clause::FromDefinite => "definitely provable",
            Clause::Undefeated => "applicable support and every attack discarded or beaten",
            Clause::ComplementDefinite => "complement definitely provable",
            Clause::NoSupport => "every supporting rule discarded",
            Clause::Unbeaten => "an applicable attack no applicable rule beats",
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Line {
    pub tag: ProofTag,
    pub node: usize,
    pub clause: Clause,
    pub rules: Vec<usize>,
    pub premises: Vec<(ProofTag, usize)>,
}

#[derive(Debug, Clone)]
pub(crate) struct Outcome {
    pub delta: Vec<Status>,
    pub partial: Vec<Status>,
    /// Rule state after the fixpoint: applicable / discarded.
    pub applicable: Vec<bool>,
    pub discarded: Vec<bool>,
    pub log: Vec<Line>,
}

#[derive(Debug, Clone, Default)]
pub(crate) struct Net {
    pub opp: Vec<usize>,
    pub fact: Vec<bool>,
    pub rules: Vec<NetRule>,
    by_head: Vec<Vec<usize>>,
    uses: Vec<Vec<usize>>,
    attacked: Vec<Vec<usize>>,
}

impl Net {
    pub fn new(opp: Vec<usize>, fact: Vec<bool>, rules: Vec<NetRule>) -> Self {
        let n = opp.len();
        let mut by_head = vec![Vec::new(); n];
        let mut uses = vec![Vec::new(); n];
        let mut attacked = vec![Vec::new(); n];
        for (i, r) in rules.iter().enumerate() {
            by_head[r.head].push(i);
            let mut seen: Vec<usize> = r.body.iter().map(|c| c.node()).collect();
            seen.sort_unstable();
            seen.dedup();
            for m in seen {
                uses[m].push(i);
            }
        }
        for (q, &o) in opp.iter().enumerate() {
            attacked[o].push(q);
        }
        Net { opp, fact, rules, by_head, uses, attacked }
    }

    pub fn len(&self) -> usize {
        self.opp.len()
    }

    pub fn run(&self, enabled: Option<&[bool]>, sup: &dyn Fn(usize, usize) -> bool, trace: bool) -> Outcome {
        let on = |r: usize| enabled.is_none_or(|e| e[r]);
        let mut log = Vec::new();
        let delta = self.definite(&on, trace, &mut log);
        let (partial, applicable, discarded) = self.defeasible(&on, sup, &delta, trace, &mut log);
        Outcome { delta, partial, applicable, discarded, log }
    }

    fn definite(&self, on: &dyn Fn(usize) -> bool, trace: bool, log: &mut Vec<Line>) -> Vec<Status> {
        let n = self.len();
        let strict = |r: usize| on(r) && self.rules[r].kind == RuleKind::Strict;
        let mut status = vec![Status::Undetermined; n];
        let mut unmet: Vec<usize> = self.rules.iter().map(|r| r.body.len()).collect();
        let mut dead = vec![false; self.rules.len()];
        let mut alive: Vec<usize> = (0..n).map(|q| self.by_head[q].iter().filter(|&&r| strict(r)).count()).collect();
        let mut queue = VecDeque::new();

        let set = |q: usize, s: Status, clause: Clause, rules: Vec<usize>, status: &mut Vec<Status>,
                       queue: &mut VecDeque<usize>, log: &mut Vec<Line>| {
            if status[q].is_determined() {
                return;
            }
            status[q] = s;
            queue.push_back(q);
            if trace {
                let premises = match clause {
                    Clause::StrictChain => {
                        self.rules[rules[0]].body.iter().map(|&c| (c.tag(true, true), c.node())).collect()
                    }
                    Clause::StrictBlocked => rules
                        .iter()
                        .filter_map(|&r| {
                            let c = self.rules[r].body.iter().find(|c| c.holds(status[c.node()]).is_rejected())?;
                            Some((c.tag(true, false), c.node()))
                        })
                        .collect(),
                    _ => Vec::new(),
                };
                let tag = if s.is_proved() { ProofTag::PLUS_DELTA } else { ProofTag::MINUS_DELTA };
                log.push(Line { tag, node: q, clause, rules, premises });
            }
        };

        for q in 0..n {
            if self.fact[q] {
                set(q, Status::Proved, Clause::Fact, Vec::new(), &mut status, &mut queue, log);
            }
        }
        for (r, rule) in self.rules.iter().enumerate() {
            if strict(r) && rule.body.is_empty() {
                set(rule.head, Status::Proved, Clause::StrictChain, vec![r], &mut status, &mut queue, log);
            }
        }
        for q in (0..n).filter(|&q| !self.fact[q] && alive[q] == 0) {
            set(q, Status::Rejected, Clause::StrictBlocked, Vec::new(), &mut status, &mut queue, log);
        }
        while let Some(m) = queue.pop_front() {
            for &r in &self.uses[m] {
                if !strict(r) || dead[r] || unmet[r] == 0 {
                    continue;
                }
                let rule = &self.rules[r];
                let mut now_dead = false;
                for c in rule.body.iter().filter(|c| c.node() == m) {
                    match c.holds(status[m]) {
                        Status::Proved => unmet[r] -= 1,
                        Status::Rejected => now_dead = true,
                        Status::Undetermined => {}
                    }
                }
                if now_dead {
                    dead[r] = true;
                    alive[rule.head] -= 1;
                    if alive[rule.head] == 0 && !self.fact[rule.head] {
                        let rules = self.by_head[rule.head].iter().copied().filter(|&r| strict(r)).collect();
                        set(rule.head, Status::Rejected, Clause::StrictBlocked, rules, &mut status, &mut queue, log);
                    }
                } else if unmet[r] == 0 {
                    set(rule.head, Status::Proved, Clause::StrictChain, vec![r], &mut status, &mut queue, log);
                }
            }
        }
        status
    }

    fn defeasible(
        &self,
        on: &dyn Fn(usize) -> bool,
        sup: &dyn Fn(usize, usize) -> bool,
        delta: &[Status],
        trace: bool,
        log: &mut Vec<Line>,
    ) -> (Vec<Status>, Vec<bool>, Vec<bool>) {
        let n = self.len();
        let nr = self.rules.len();
        let mut status = vec![Status::Undetermined; n];
        let mut pending: Vec<usize> = self.rules.iter().map(|r| r.body.len()).collect();
        let mut discarded = vec![false; nr];
        let mut queued = vec![true; n];
        let mut queue: VecDeque<usize> = (0..n).collect();

        while let Some(q) = queue.pop_front() {
            queued[q] = false;
            if status[q].is_determined() {
                continue;
            }
            let applicable = |r: usize| pending[r] == 0 && !discarded[r];
            let Some((s, clause)) = self.evaluate(q, on, sup, delta, &applicable, &discarded) else { continue };
            status[q] = s;
            if trace {
                let line = self.explain(q, s, clause, on, sup, &status, &applicable, &discarded);
                log.push(line);
            }
            for &r in &self.uses[q] {
                if discarded[r] || pending[r] == 0 {
                    continue;
                }
                for c in self.rules[r].body.iter().filter(|c| c.node() == q) {
                    match c.holds(s) {
                        Status::Proved => pending[r] -= 1,
                        _ => discarded[r] = true,
                    }
                }
                if discarded[r] || pending[r] == 0 {
                    let h = self.rules[r].head;
                    for &w in std::iter::once(&h).chain(&self.attacked[h]) {
                        if !queued[w] && !status[w].is_determined() {
                            queued[w] = true;
                            queue.push_back(w);
                        }
                    }
                }
            }
        }
        let applicable = (0..nr).map(|r| pending[r] == 0 && !discarded[r]).collect();
        (status, applicable, discarded)
    }

    fn evaluate(
        &self,
        q: usize,
        on: &dyn Fn(usize) -> bool,
        sup: &dyn Fn(usize, usize) -> bool,
        delta: &[Status],
        applicable: &dyn Fn(usize) -> bool,
        discarded: &[bool],
    ) -> Option<(Status, Clause)> {
        let o = self.opp[q];
        let support = || self.by_head[q].iter().copied().filter(|&r| on(r));
        let attacks = || self.by_head[o].iter().copied().filter(|&r| on(r));

        if delta[q].is_proved() {
            return Some((Status::Proved, Clause::FromDefinite));
        }
        let beaten = |s: usize| support().any(|t| applicable(t) && sup(t, s));
        if delta[o].is_rejected()
            && support().any(|r| self.rules[r].kind.supports() && applicable(r))
            && attacks().all(|s| discarded[s] || beaten(s))
        {
            return Some((Status::Proved, Clause::Undefeated));
        }
        if !delta[q].is_rejected() {
            return None;
        }
        if delta[o].is_proved() {
            return Some((Status::Rejected, Clause::ComplementDefinite));
        }
        if support().filter(|&r| self.rules[r].kind.supports()).all(|r| discarded[r]) {
            return Some((Status::Rejected, Clause::NoSupport));
        }
        if attacks().any(|s| applicable(s) && support().all(|t| discarded[t] || !sup(t, s))) {
            return Some((Status::Rejected, Clause::Unbeaten));
        }
        None
    }

    #[allow(clippy::too_many_arguments)]
    fn explain(
        &self,
        q: usize,
        s: Status,
        clause: Clause,
        on: &dyn Fn(usize) -> bool,
        sup: &dyn Fn(usize, usize) -> bool,
        status: &[Status],
        applicable: &dyn Fn(usize) -> bool,
        discarded: &[bool],
    ) -> Line {
        let o = self.opp[q];
        let support: Vec<usize> = self.by_head[q].iter().copied().filter(|&r| on(r)).collect();
        let attacks: Vec<usize> = self.by_head[o].iter().copied().filter(|&r| on(r)).collect();
        let body_proved = |r: usize| -> Vec<(ProofTag, usize)> {
            self.rules[r].body.iter().map(|&c| (c.tag(false, true), c.node())).collect()
        };
        let rejected_cond = |r: usize| -> Option<(ProofTag, usize)> {
            let c = self.rules[r].body.iter().find(|c| c.holds(status[c.node()]).is_rejected())?;
            Some((c.tag(false, false), c.node()))
        };
        let mut rules = Vec::new();
        let mut premises = Vec::new();
        match clause {
            Clause::FromDefinite => premises.push((ProofTag::PLUS_DELTA, q)),
            Clause::Undefeated => {
                premises.push((ProofTag::MINUS_DELTA, o));
                let r = support.iter().copied().find(|&r| self.rules[r].kind.supports() && applicable(r));
                if let Some(r) = r {
                    rules.push(r);
                    premises.extend(body_proved(r));
                }
                for &a in &attacks {
                    rules.push(a);
                    if discarded[a] {
                        premises.extend(rejected_cond(a));
                    } else if let Some(t) = support.iter().copied().find(|&t| applicable(t) && sup(t, a)) {
                        rules.push(t);
                        premises.extend(body_proved(t));
                    }
                }
            }
            Clause::ComplementDefinite => {
                premises.push((ProofTag::MINUS_DELTA, q));
                premises.push((ProofTag::PLUS_DELTA, o));
            }
            Clause::NoSupport => {
                premises.push((ProofTag::MINUS_DELTA, q));
                for &r in support.iter().filter(|&&r| self.rules[r].kind.supports()) {
                    rules.push(r);
                    premises.extend(rejected_cond(r));
                }
            }
            Clause::Unbeaten => {
                premises.push((ProofTag::MINUS_DELTA, q));
                if let Some(a) = attacks.iter().copied().find(|&a| applicable(a) && support.iter().all(|&t| discarded[t] || !sup(t, a))) {
                    rules.push(a);
                    premises.extend(body_proved(a));
                    for &t in support.iter().filter(|&&t| discarded[t]) {
                        premises.extend(rejected_cond(t));
                    }
                }
            }
            Clause::Fact | Clause::StrictChain | Clause::StrictBlocked => {}
        }
        let tag = if s.is_proved() { ProofTag::PLUS_PARTIAL } else { ProofTag::MINUS_PARTIAL };
        Line { tag, node: q, clause, rules, premises }
    }
}
