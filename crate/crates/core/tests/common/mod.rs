//! Random theory generators and naive reference implementations shared by the
//! integration tests.

#![allow(dead_code)]

pub mod oracle;

use std::collections::BTreeSet;

use bioflat::strategy::strategy_minimal;
use bioflat::theory::{AgentTheory, ArgTheory, Label, Rule, RuleKind};
use bioflat::{
    new_game, validate_agent, validate_arg, Atom, GameConfig, GameState, Literal, ModalLiteral, Modality, Move,
    Premise, WinMode,
};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

pub fn lit(s: &str) -> Literal {
    s.parse().unwrap()
}

pub fn label(s: &str) -> Label {
    Label::new(s).unwrap()
}

fn atoms(n: usize) -> Vec<Atom> {
    (0..n).map(|i| Atom::new(((b'a' + i as u8) as char).to_string()).unwrap()).collect()
}

fn random_literal(rng: &mut impl Rng, atoms: &[Atom]) -> Literal {
    let a = atoms.choose(rng).unwrap().clone();
    if rng.gen_bool(0.4) {
        Literal::neg(a)
    } else {
        Literal::pos(a)
    }
}

fn random_kind(rng: &mut impl Rng) -> RuleKind {
    match rng.gen_range(0..10) {
        0..=1 => RuleKind::Strict,
        2..=7 => RuleKind::Defeasible,
        _ => RuleKind::Defeater,
    }
}

#[derive(Debug, Clone, Copy)]
pub struct AgentShape {
    pub max_atoms: usize,
    pub max_rules: usize,
    /// Allow `¬X p` antecedents in strict rules.
    pub negated_in_strict: bool,
}

impl Default for AgentShape {
    fn default() -> Self {
        AgentShape { max_atoms: 8, max_rules: 12, negated_in_strict: false }
    }
}

fn random_premise(rng: &mut impl Rng, atoms: &[Atom], allow_negated: bool) -> Premise {
    let l = random_literal(rng, atoms);
    let x = if rng.gen_bool(0.5) { Modality::Obl } else { Modality::Int };
    match rng.gen_range(0..20) {
        0..=11 => Premise::Plain(l),
        12..=16 => Premise::Modal(ModalLiteral::new(false, x, l).unwrap()),
        _ if allow_negated => Premise::Modal(ModalLiteral::new(true, x, l).unwrap()),
        _ => Premise::Plain(l),
    }
}

/// A valid agent theory with default conversion and conflict relations.
pub fn agent_theory(rng: &mut impl Rng, shape: AgentShape) -> AgentTheory {
    let atoms = atoms(rng.gen_range(2..=shape.max_atoms));
    let mut t = AgentTheory::default();
    for _ in 0..rng.gen_range(0..=3) {
        let l = random_literal(rng, &atoms);
        let fact = match rng.gen_range(0..3) {
            0 => Premise::Plain(l),
            1 => Premise::Modal(ModalLiteral::new(false, Modality::Obl, l).unwrap()),
            _ => Premise::Modal(ModalLiteral::new(false, Modality::Int, l).unwrap()),
        };
        t.facts.insert(fact);
    }
    for i in 0..rng.gen_range(1..=shape.max_rules) {
        let kind = random_kind(rng);
        let mode = *Modality::ALL.choose(rng).unwrap();
        let allow_negated = kind != RuleKind::Strict || shape.negated_in_strict;
        let body: Vec<Premise> =
            (0..rng.gen_range(0..=3)).map(|_| random_premise(rng, &atoms, allow_negated)).collect();
        let head = random_literal(rng, &atoms);
        t.rules.push(Rule::moded(label(&format!("r{i}")), kind, mode, body, head));
    }
    // forward-only pairs keep the relation acyclic
    for i in 0..t.rules.len() {
        for j in i + 1..t.rules.len() {
            let (a, b) = (&t.rules[i], &t.rules[j]);
            let opposed = a.consequent == bioflat::Complement::complement(&b.consequent);
            let (ma, mb) = (a.mode_or_bel(), b.mode_or_bel());
            let admissible = ma == mb || t.conflicts_with(ma, mb);
            if opposed && admissible && rng.gen_bool(0.5) {
                t.superiority.insert((a.label.clone(), b.label.clone()));
            }
        }
    }
    assert!(validate_agent(&t).is_empty(), "{:?}", validate_agent(&t));
    t
}

/// A valid argumentation theory over at most `max_atoms` atoms.
pub fn arg_theory(rng: &mut impl Rng, max_atoms: usize, max_rules: usize) -> ArgTheory {
    let atoms = atoms(rng.gen_range(1..=max_atoms));
    let mut t = ArgTheory::default();
    for _ in 0..rng.gen_range(0..=3) {
        t.facts.insert(random_literal(rng, &atoms));
    }
    for i in 0..rng.gen_range(0..=max_rules) {
        let body: Vec<Literal> = (0..rng.gen_range(0..=3)).map(|_| random_literal(rng, &atoms)).collect();
        t.rules.push(Rule::plain(label(&format!("r{i}")), random_kind(rng), body, random_literal(rng, &atoms)));
    }
    for i in 0..t.rules.len() {
        for j in i + 1..t.rules.len() {
            let opposed = t.rules[i].consequent == t.complement(&t.rules[j].consequent);
            if opposed && rng.gen_bool(0.5) {
                let pair = (t.rules[i].label.clone(), t.rules[j].label.clone());
                let pair = if rng.gen_bool(0.5) { pair } else { (pair.1, pair.0) };
                t.superiority.insert(pair.clone());
                if !validate_arg(&t).is_empty() {
                    t.superiority.remove(&pair);
                }
            }
        }
    }
    assert!(validate_arg(&t).is_empty());
    t
}

/// `a0 ⇒ a1 ⇒ … ⇒ an` with fact `a0`.
pub fn chain(n: usize) -> ArgTheory {
    let node = |i: usize| Literal::pos(Atom::new(format!("a{i}")).unwrap());
    ArgTheory {
        facts: [node(0)].into(),
        rules: (0..n)
            .map(|i| Rule::plain(label(&format!("r{i}")), RuleKind::Defeasible, [node(i)], node(i + 1)))
            .collect(),
        ..ArgTheory::default()
    }
}

/// Dense theory for games: short bodies over few atoms, many heads on the first atom.
fn game_theory(rng: &mut impl Rng, rules: usize) -> ArgTheory {
    let atoms = atoms(rng.gen_range(3..=5));
    let mut t = ArgTheory::default();
    for _ in 0..rng.gen_range(1..=3) {
        t.facts.insert(random_literal(rng, &atoms));
    }
    for i in 0..rules {
        let body: Vec<Literal> = (0..rng.gen_range(0..=2)).map(|_| random_literal(rng, &atoms)).collect();
        let kind = if rng.gen_bool(0.1) { RuleKind::Defeater } else { RuleKind::Defeasible };
        let pool = if rng.gen_bool(0.4) { &atoms[..1] } else { &atoms };
        let head = random_literal(rng, pool);
        t.rules.push(Rule::plain(label(&format!("r{i}")), kind, body, head));
    }
    for i in 0..t.rules.len() {
        for j in i + 1..t.rules.len() {
            if t.rules[i].consequent == t.complement(&t.rules[j].consequent) && rng.gen_bool(0.3) {
                let pair = (t.rules[i].label.clone(), t.rules[j].label.clone());
                t.superiority.insert(if rng.gen_bool(0.5) { pair } else { (pair.1, pair.0) });
            }
        }
    }
    t
}

/// A fresh game with up to `max_private` private rules, contesting a literal on the first atom.
pub fn new_random_game(rng: &mut impl Rng, max_private: usize) -> GameState {
    loop {
        let private = rng.gen_range(1..=max_private);
        let common = rng.gen_range(0..=3);
        let t = game_theory(rng, private + common);
        let goal = random_literal(rng, &atoms(1));
        let mut order: Vec<Label> = t.rules.iter().map(|r| r.label.clone()).collect();
        order.shuffle(rng);
        let (mut pr, mut op) = (BTreeSet::new(), BTreeSet::new());
        let lean = rng.gen_range(0.1..0.9);
        for l in order.into_iter().take(private) {
            if rng.gen_bool(lean) {
                pr.insert(l);
            } else {
                op.insert(l);
            }
        }
        let mode = if rng.gen_bool(0.5) { WinMode::Strong } else { WinMode::Weak };
        if let Ok(state) = new_game(t, pr, op, GameConfig::new(goal, mode)) {
            return state;
        }
    }
}

/// A running game, sometimes one move in.
pub fn game_state(rng: &mut impl Rng, max_private: usize) -> GameState {
    let state = new_random_game(rng, max_private);
    if rng.gen_bool(0.5) {
        if let Move::Play(w) = strategy_minimal(&state) {
            let next = state.apply_move(&Move::Play(w)).unwrap();
            if next.is_running() {
                return next;
            }
        }
    }
    state
}

/// The game's current common theory plus `extra`, as a standalone theory.
pub fn theory_with(state: &GameState, extra: &BTreeSet<Label>) -> ArgTheory {
    let mut t = state.theory().clone();
    t.rules.retain(|r| state.common().contains(&r.label) || extra.contains(&r.label));
    let kept: BTreeSet<Label> = t.rules.iter().map(|r| r.label.clone()).collect();
    t.superiority.retain(|(a, b)| kept.contains(a) && kept.contains(b));
    t
}
