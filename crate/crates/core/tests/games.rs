mod common;

use bioflat::format::{parse_game, parse_theory, write_agent, write_arg, write_game, Document, GameDocument};
use bioflat::strategy::{
    check_sociality_instance, reduce_sociality_to_game, solve_restoring_sociality, strategy_maximal,
    strategy_minimal, Exhaustive, SocialityError, SocialityInstance,
};
use bioflat::theory::{AgentTheory, Rule, RuleKind};
use bioflat::game::GameError;
use bioflat::{run_game, GameStatus, Literal, ModalLiteral, Modality, Player, Premise, Strategy};
use common::{agent_theory, arg_theory, label, lit, new_random_game, rng, AgentShape};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

fn intention(q: Literal) -> Premise {
    Premise::Modal(ModalLiteral::new(false, Modality::Int, q).unwrap())
}

/// A belief rule on intended literals beating an obligation for `~q`, amid random rules.
fn sociality_candidate(rng: &mut impl Rng) -> AgentTheory {
    let n = rng.gen_range(1..=5);
    let atoms: Vec<&str> = ["a", "b", "c", "d", "e"].choose_multiple(rng, n).copied().collect();
    let intended: Vec<Literal> =
        atoms.into_iter().map(|a| if rng.gen_bool(0.5) { lit(a) } else { lit(&format!("~{a}")) }).collect();
    let mut t = AgentTheory { facts: intended.iter().cloned().map(intention).collect(), ..AgentTheory::default() };
    let k = rng.gen_range(1..=n);
    let body: Vec<Premise> = intended.choose_multiple(rng, k).cloned().map(Premise::Plain).collect();
    t.rules.push(Rule::moded(label("bel"), RuleKind::Defeasible, Modality::Bel, body, lit("q")));
    t.rules.push(Rule::moded(label("obl"), RuleKind::Defeasible, Modality::Obl, [], lit("~q")));
    t.superiority.insert((label("bel"), label("obl")));
    let extra = agent_theory(rng, AgentShape { max_atoms: 5, max_rules: 8, negated_in_strict: false });
    t.rules.extend(extra.rules);
    t.superiority.extend(extra.superiority);
    t
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn argumentation_theories_round_trip(seed in any::<u64>()) {
        let t = arg_theory(&mut rng(seed), 5, 10);
        let text = write_arg(&t);
        prop_assert_eq!(parse_theory(&text).unwrap(), Document::Arg(t), "{}", text);
    }

    #[test]
    fn agent_theories_round_trip(seed in any::<u64>()) {
        let shape = AgentShape { negated_in_strict: true, ..AgentShape::default() };
        let t = agent_theory(&mut rng(seed), shape);
        let text = write_agent(&t);
        prop_assert_eq!(parse_theory(&text).unwrap(), Document::Agent(t), "{}", text);
    }

    #[test]
    fn game_files_round_trip(seed in any::<u64>()) {
        let state = new_random_game(&mut rng(seed), 8);
        let doc = GameDocument {
            theory: state.theory().clone(),
            proponent: state.private(Player::Pr).clone(),
            opponent: state.private(Player::Op).clone(),
            config: state.config().clone(),
        };
        let text = write_game(&doc);
        let mut back = parse_game(&text).unwrap();
        prop_assert_eq!(write_game(&back), text.clone());
        back.theory.rules.sort_by(|a, b| a.label.cmp(&b.label));
        let mut want = doc;
        want.theory.rules.sort_by(|a, b| a.label.cmp(&b.label));
        prop_assert_eq!(back, want, "{}", text);
    }

    #[test]
    fn exhaustive_wins_against_any_strategy(seed in any::<u64>()) {
        let initial = new_random_game(&mut rng(seed), 7);
        let solver = Exhaustive::default();
        let (_, optimal) = run_game(&initial, &solver, &solver);
        let GameStatus::WonBy(winner) = optimal.status() else { panic!("unfinished game") };
        let others: [&dyn Strategy; 2] = [&strategy_minimal, &strategy_maximal];
        for other in others {
            let (pr, op): (&dyn Strategy, &dyn Strategy) = match winner {
                Player::Pr => (&solver, other),
                Player::Op => (other, &solver),
            };
            prop_assert_eq!(run_game(&initial, pr, op).1.status(), GameStatus::WonBy(winner));
        }
    }

    #[test]
    fn reduction_agrees_with_direct_solver(seed in any::<u64>()) {
        let t = sociality_candidate(&mut rng(seed));
        let inst = SocialityInstance::new(t, lit("~q"));
        prop_assume!(check_sociality_instance(&inst).all_hold());
        let direct = solve_restoring_sociality(&inst).unwrap();
        let reduction = match reduce_sociality_to_game(&inst) {
            Err(SocialityError::Game(GameError::Inconsistent(_))) => return Ok(()),
            other => other.unwrap(),
        };
        let found = reduction.solve(true).witness.map(|w| reduction.intentions_of(&w));
        prop_assert_eq!(found, direct);
    }
}

#[test]
fn fixtures_parse() {
    for text in [include_str!("../../../fixtures/ex1.game"), include_str!("../../../fixtures/ex2.game")] {
        parse_game(text).unwrap().start().unwrap();
    }
    parse_game(include_str!("../../../fixtures/ex3.game")).unwrap().start().unwrap();
    assert!(matches!(parse_theory(include_str!("../../../fixtures/sociality.dfl")), Ok(Document::Agent(_))));
}

#[test]
fn obligation_filter_keeps_derived_obligations() {
    let text = "fact INT a. fact INT b. rule r1[BEL]: a, b => q. rule r2[OBL]: => ~q. rule r3[OBL]: INT a => o. sup r1 > r2.";
    let Document::Agent(t) = parse_theory(text).unwrap() else { panic!("dialect") };
    let inst = SocialityInstance::new(t, lit("~q"));
    assert_eq!(solve_restoring_sociality(&inst).unwrap(), Some([lit("a")].into()));
    let reduction = reduce_sociality_to_game(&inst).unwrap();
    let intentions = |filter| reduction.intentions_of(&reduction.solve(filter).witness.unwrap());
    assert_eq!(intentions(true), [lit("a")].into());
    assert_eq!(intentions(false), [lit("b")].into());
}
