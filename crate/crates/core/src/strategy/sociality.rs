//! Restoring sociality: drop as few primitive intentions as possible so that a blocked
//! obligation comes back while every obligation already derived survives.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use thiserror::Error;

use super::search::{search, MoveSearchResult, SearchOrder};
use crate::bio::compute_bio_extension;
use crate::flat::{flat_modal, pflat, transform_theory, TransformError};
use crate::game::{new_game, GameConfig, GameError, GameState, Player, WinMode};
use crate::literal::{Complement, Literal, Modality, Premise};
use crate::status::Status;
use crate::theory::{AgentTheory, Label};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SocialityInstance {
    pub theory: AgentTheory,
    /// Literals `q` with `INT q` among the facts.
    pub intentions: BTreeSet<Literal>,
    /// The blocked primary obligation `p`.
    pub obligation: Literal,
}

impl SocialityInstance {
    pub fn new(theory: AgentTheory, obligation: Literal) -> Self {
        let intentions = theory.intention_facts();
        SocialityInstance { theory, intentions, obligation }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceCheck {
    /// Each condition as written (e.g. `-∂_OBL ~q`) with whether it holds.
    pub conditions: Vec<(String, bool)>,
}

impl InstanceCheck {
    pub fn all_hold(&self) -> bool {
        self.conditions.iter().all(|(_, ok)| *ok)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SocialityError {
    #[error("ill-posed instance: {0}")]
    IllPosed(String),
    #[error(transparent)]
    Transform(#[from] TransformError),
    #[error(transparent)]
    Game(#[from] GameError),
}

pub fn check_sociality_instance(inst: &SocialityInstance) -> InstanceCheck {
    use Modality::*;
    let e = compute_bio_extension(&inst.theory);
    let p = &inst.obligation;
    let np = p.complement();
    let conditions = [
        ("-∂", Obl, p, e.partial(Obl, p), Status::Rejected),
        ("-Σ", Obl, &np, e.support(Obl, &np), Status::Rejected),
        ("+∂", Int, &np, e.partial(Int, &np), Status::Proved),
        ("+Σ", Obl, p, e.support(Obl, p), Status::Proved),
        ("-Σ", Bel, &np, e.support(Bel, &np), Status::Rejected),
    ];
    InstanceCheck {
        conditions: conditions
            .into_iter()
            .map(|(tag, x, l, got, want)| (format!("{tag}_{} {l}", x.keyword()), got == want))
            .collect(),
    }
}

fn ensure_well_posed(inst: &SocialityInstance) -> Result<(), SocialityError> {
    if inst.intentions.is_empty() {
        return Err(SocialityError::IllPosed("no primitive intentions, so no proper subset exists".into()));
    }
    let check = check_sociality_instance(inst);
    let failed: Vec<&str> = check.conditions.iter().filter(|(_, ok)| !ok).map(|(c, _)| c.as_str()).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(SocialityError::IllPosed(format!("conditions fail: {}", failed.join(", "))))
    }
}

/// `t` with its intention facts restricted to `keep`.
pub fn with_intentions(t: &AgentTheory, keep: &BTreeSet<Literal>) -> AgentTheory {
    let mut out = t.clone();
    out.facts.retain(|f| match f {
        Premise::Modal(m) if !m.negated && m.modality() == Modality::Int => keep.contains(&m.literal),
        _ => true,
    });
    out
}

fn proved_obligations(t: &AgentTheory) -> BTreeSet<Literal> {
    let e = compute_bio_extension(t);
    e.iter()
        .filter(|(c, s)| c.modality == Modality::Obl && s.partial.is_proved())
        .map(|(c, _)| c.literal.clone())
        .collect()
}

/// Largest proper subset of the intentions restoring the obligation; among equally large
/// ones, the one dropping the lexicographically least intentions.
pub fn solve_restoring_sociality(inst: &SocialityInstance) -> Result<Option<BTreeSet<Literal>>, SocialityError> {
    ensure_well_posed(inst)?;
    let before = proved_obligations(&inst.theory);
    let intentions: Vec<&Literal> = inst.intentions.iter().sorted_by_key(|l| pflat(l)).collect();
    let n = intentions.len();
    for dropped_count in 1..=n {
        for dropped in intentions.iter().copied().combinations(dropped_count) {
            let keep: BTreeSet<Literal> = inst.intentions.iter().filter(|l| !dropped.contains(l)).cloned().collect();
            let after = proved_obligations(&with_intentions(&inst.theory, &keep));
            if after.contains(&inst.obligation) && before.is_subset(&after) {
                return Ok(Some(keep));
            }
        }
    }
    Ok(None)
}

/// A sociality instance recast as a game whose proponent privately holds one strict
/// rule `→ int_q` per primitive intention `q`.
#[derive(Debug, Clone)]
pub struct Reduction {
    pub game: GameState,
    pub intention_rules: BTreeMap<Label, Literal>,
    /// Positive flat obligations proved with every intention in place.
    obligations: BTreeSet<Literal>,
}

pub fn reduce_sociality_to_game(inst: &SocialityInstance) -> Result<Reduction, SocialityError> {
    ensure_well_posed(inst)?;
    let flat = transform_theory(&inst.theory)?;
    let intention_rules: BTreeMap<Label, Literal> = inst
        .intentions
        .iter()
        .map(|q| (Label::new(format!("r_{}", pflat(q))).expect("valid label"), q.clone()))
        .collect();
    let full = crate::engine::compute_extension(&flat);
    let obligations = full
        .iter()
        .filter(|(l, s)| !l.negated && l.atom.as_str().starts_with("obl_") && s.partial.is_proved())
        .map(|(l, _)| l.clone())
        .collect();
    let goal = flat_modal(Modality::Obl, &inst.obligation);
    let pr = intention_rules.keys().cloned().collect();
    let game = new_game(flat, pr, BTreeSet::new(), GameConfig::new(goal, WinMode::Strong))?;
    Ok(Reduction { game, intention_rules, obligations })
}

impl Reduction {
    /// Largest set of intention rules whose publication proves the goal, optionally keeping
    /// every obligation of the full theory; the empty set is tried last.
    pub fn solve(&self, filter_obligations: bool) -> MoveSearchResult {
        let game = &self.game;
        let indices: Vec<usize> = if filter_obligations {
            let c = game.compiled();
            self.obligations.iter().filter_map(|l| c.literal_index(l)).collect()
        } else {
            Vec::new()
        };
        let keeps = |ev: &crate::engine::Evaluation| indices.iter().all(|&i| ev.partial(i).is_proved());
        let mut result = search(game, Player::Pr, SearchOrder::MaximalFirst, false, &keeps);
        if result.witness.is_none() {
            result.nodes_explored += 1;
            let ev = game.evaluate_mask(&game.mask_with(std::iter::empty()));
            if game.meets(Player::Pr, &ev) && keeps(&ev) {
                result.witness = Some(BTreeSet::new());
            }
        }
        result
    }

    /// The intentions a set of proponent rules stands for.
    pub fn intentions_of(&self, rules: &BTreeSet<Label>) -> BTreeSet<Literal> {
        rules.iter().filter_map(|r| self.intention_rules.get(r).cloned()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::literal::ModalLiteral;
    use crate::theory::{Rule, RuleKind};

    fn lit(s: &str) -> Literal {
        s.parse().unwrap()
    }

    fn label(s: &str) -> Label {
        Label::new(s).unwrap()
    }

    fn intention(q: Literal) -> Premise {
        Premise::Modal(ModalLiteral::new(false, Modality::Int, q).unwrap())
    }

    fn sociality() -> AgentTheory {
        use Modality::*;
        AgentTheory {
            facts: [intention(lit("p")), intention(lit("s"))].into(),
            rules: vec![
                Rule::moded(label("r1"), RuleKind::Defeasible, Bel, [lit("p").into(), lit("s").into()], lit("q")),
                Rule::moded(label("r2"), RuleKind::Defeasible, Obl, [], lit("~q")),
                Rule::moded(label("r3"), RuleKind::Defeasible, Bel, [], lit("s")),
            ],
            superiority: [(label("r1"), label("r2"))].into(),
            ..AgentTheory::default()
        }
    }

    #[test]
    fn example_instance_holds() {
        let inst = SocialityInstance::new(sociality(), lit("~q"));
        let check = check_sociality_instance(&inst);
        assert!(check.all_hold(), "{check:?}");
    }

    #[test]
    fn example_is_solved_by_dropping_p() {
        let inst = SocialityInstance::new(sociality(), lit("~q"));
        assert_eq!(solve_restoring_sociality(&inst).unwrap(), Some([lit("s")].into()));
    }

    #[test]
    fn reduction_finds_matching_witness() {
        let inst = SocialityInstance::new(sociality(), lit("~q"));
        let red = reduce_sociality_to_game(&inst).unwrap();
        assert_eq!(red.game.private(Player::Pr), &[label("r_p"), label("r_s")].into());
        assert_eq!(red.game.goal(), &lit("obl_not_q"));
        let found = red.solve(true);
        assert_eq!(found.witness, Some([label("r_s")].into()));
        assert_eq!(red.intentions_of(&found.witness.unwrap()), [lit("s")].into());
    }

    #[test]
    fn no_intentions_is_ill_posed() {
        let mut t = sociality();
        t.facts.clear();
        let inst = SocialityInstance::new(t, lit("~q"));
        assert!(matches!(solve_restoring_sociality(&inst), Err(SocialityError::IllPosed(_))));
    }

    #[test]
    fn derivable_obligation_fails_the_check() {
        let mut t = sociality();
        t.facts.remove(&intention(lit("p")));
        let check = check_sociality_instance(&SocialityInstance::new(t, lit("~q")));
        assert!(!check.conditions[0].1);
    }

    #[test]
    fn blocking_through_derived_intention_has_no_solution() {
        use Modality::*;
        let t = AgentTheory {
            facts: [intention(lit("z"))].into(),
            rules: vec![
                Rule::moded(label("r0"), RuleKind::Defeasible, Int, [], lit("a")),
                Rule::moded(label("r1"), RuleKind::Defeasible, Bel, [lit("a").into()], lit("q")),
                Rule::moded(label("r2"), RuleKind::Defeasible, Obl, [], lit("~q")),
            ],
            ..AgentTheory::default()
        };
        let inst = SocialityInstance::new(t, lit("~q"));
        assert!(check_sociality_instance(&inst).all_hold());
        assert_eq!(solve_restoring_sociality(&inst).unwrap(), None);
        assert_eq!(reduce_sociality_to_game(&inst).unwrap().solve(true).witness, None);
    }
}
