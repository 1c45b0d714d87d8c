//! Shared inputs for the benchmarks.

use std::collections::BTreeSet;

use bioflat::theory::{AgentTheory, ArgTheory, Label, Rule, RuleKind};
use bioflat::{new_game, Atom, Complement, GameConfig, GameState, Literal, ModalLiteral, Modality, Premise, WinMode};

fn label(s: String) -> Label {
    Label::new(s).expect("generated labels are valid")
}

fn atom(s: String) -> Literal {
    Literal::pos(Atom::new(s).expect("generated atoms are valid"))
}

/// `a0 ⇒ a1 ⇒ … ⇒ an` with fact `a0`.
pub fn chain(n: usize) -> ArgTheory {
    ArgTheory {
        facts: [atom("a0".into())].into(),
        rules: (0..n)
            .map(|i| {
                Rule::plain(label(format!("r{i}")), RuleKind::Defeasible, [atom(format!("a{i}"))], atom(format!("a{}", i + 1)))
            })
            .collect(),
        ..ArgTheory::default()
    }
}

/// `n` layers cycling through the three modes, each layer reading the previous one both plainly
/// and as an intention, with an opposing obligation every third layer.
pub fn layered_agent(n: usize) -> AgentTheory {
    let mut t = AgentTheory { facts: [Premise::Plain(atom("b0".into()))].into(), ..AgentTheory::default() };
    for i in 0..n {
        let prev = atom(format!("b{i}"));
        let next = atom(format!("b{}", i + 1));
        let intended = ModalLiteral::new(false, Modality::Int, prev.clone()).expect("INT wraps literals");
        let mode = Modality::ALL[i % 3];
        let body = [Premise::Plain(prev), Premise::Modal(intended)];
        t.rules.push(Rule::moded(label(format!("r{i}")), RuleKind::Defeasible, mode, body, next.clone()));
        if i % 3 == 0 {
            let against = Rule::moded(label(format!("s{i}")), RuleKind::Defeasible, Modality::Obl, [], next.complement());
            t.rules.push(against);
        }
    }
    t
}

/// A game where the proponent must reveal all `n` private rules to prove the goal.
pub fn all_or_nothing_game(n: usize) -> GameState {
    let goal = atom("g".into());
    let parts: Vec<Literal> = (0..n).map(|i| atom(format!("x{i}"))).collect();
    let mut rules: Vec<Rule> = parts
        .iter()
        .enumerate()
        .map(|(i, x)| Rule::plain(label(format!("p{i}")), RuleKind::Defeasible, [atom("a".into())], x.clone()))
        .collect();
    rules.push(Rule::plain(label("join".into()), RuleKind::Defeasible, parts, goal.clone()));
    rules.push(Rule::plain(label("deny".into()), RuleKind::Defeasible, [atom("a".into())], goal.complement()));
    let theory = ArgTheory {
        facts: [atom("a".into())].into(),
        rules,
        superiority: [(label("join".into()), label("deny".into()))].into(),
        ..ArgTheory::default()
    };
    let private: BTreeSet<Label> = (0..n).map(|i| label(format!("p{i}"))).collect();
    new_game(theory, private, BTreeSet::new(), GameConfig::new(goal, WinMode::Strong)).expect("valid game")
}
