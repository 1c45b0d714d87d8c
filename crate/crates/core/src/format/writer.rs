use std::fmt::Write;

use super::GameDocument;
use crate::literal::Premise;
use crate::theory::{AgentTheory, ArgTheory, ComplementScheme, Label, SupPair};
use std::collections::BTreeSet;

fn superiority(out: &mut String, sup: &BTreeSet<SupPair>) {
    for (a, b) in sup {
        writeln!(out, "sup {a} > {b}.").unwrap();
    }
}

pub fn write_arg(t: &ArgTheory) -> String {
    let mut out = String::new();
    if t.scheme == ComplementScheme::Flat {
        out.push_str("complement flat.\n");
    }
    for f in &t.facts {
        writeln!(out, "fact {f}.").unwrap();
    }
    for r in &t.rules {
        writeln!(out, "{r}").unwrap();
    }
    superiority(&mut out, &t.superiority);
    out
}

/// Rules always carry their mode, so plain facts need `BEL` only when nothing else marks the dialect.
pub fn write_agent(t: &AgentTheory) -> String {
    let marked = !t.rules.is_empty() || t.facts.iter().any(|f| matches!(f, Premise::Modal(_)));
    let mut out = String::new();
    for f in &t.facts {
        match f {
            Premise::Plain(l) if !marked => writeln!(out, "fact BEL {l}.").unwrap(),
            _ => writeln!(out, "fact {f}.").unwrap(),
        }
    }
    for r in &t.rules {
        let mut r = r.clone();
        r.mode = Some(r.mode_or_bel());
        writeln!(out, "{r}").unwrap();
    }
    superiority(&mut out, &t.superiority);
    out
}

pub fn write_game(g: &GameDocument) -> String {
    let t = &g.theory;
    let mut out = String::new();
    writeln!(out, "goal {}.", g.config.goal).unwrap();
    writeln!(out, "mode {}.", g.config.win_mode).unwrap();
    if t.scheme == ComplementScheme::Flat {
        out.push_str("complement flat.\n");
    }
    for f in &t.facts {
        writeln!(out, "fact {f}.").unwrap();
    }
    let section = |l: &Label| {
        if g.proponent.contains(l) {
            "@proponent"
        } else if g.opponent.contains(l) {
            "@opponent"
        } else {
            "@common"
        }
    };
    for marker in ["@common", "@proponent", "@opponent"] {
        let rules: Vec<_> = t.rules.iter().filter(|r| section(&r.label) == marker).collect();
        if rules.is_empty() {
            continue;
        }
        writeln!(out, "{marker}").unwrap();
        for r in rules {
            writeln!(out, "{r}").unwrap();
        }
    }
    superiority(&mut out, &t.superiority);
    out
}
