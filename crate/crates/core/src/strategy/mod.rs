//! Move selection for the dialogue game and the sociality solvers built on it.

mod search;
mod sociality;

use std::cell::RefCell;
use std::collections::{BTreeSet, HashMap};

use itertools::Itertools;

use crate::game::{GameState, Move, Player, Strategy};
use crate::theory::Label;

pub use search::{
    brute_force_winning_move, dependency_cone, find_winning_move, search, MoveSearchResult, SearchError, SearchOrder,
};
pub use sociality::{
    check_sociality_instance, reduce_sociality_to_game, solve_restoring_sociality, with_intentions, InstanceCheck,
    Reduction, SocialityError, SocialityInstance,
};

fn first_winning(state: &GameState, order: SearchOrder) -> Move {
    match find_winning_move(state, state.to_move(), order) {
        Ok(MoveSearchResult { witness: Some(w), .. }) => Move::Play(w),
        _ => Move::Pass,
    }
}

/// Smallest legal move, or pass.
pub fn strategy_minimal(state: &GameState) -> Move {
    first_winning(state, SearchOrder::MinimalFirst)
}

/// Largest legal move, or pass.
pub fn strategy_maximal(state: &GameState) -> Move {
    first_winning(state, SearchOrder::MaximalFirst)
}

/// A move from which the mover wins against every reply, if there is one.
pub fn strategy_exhaustive(state: &GameState) -> Move {
    Exhaustive::default().choose(state)
}

type Position = (BTreeSet<Label>, BTreeSet<Label>, Player);

/// Game-tree search with a table of solved positions; falls back to the first legal move when every move loses.
#[derive(Debug, Default)]
pub struct Exhaustive {
    solved: RefCell<HashMap<Position, bool>>,
}

impl Exhaustive {
    fn legal_plays(state: &GameState) -> Vec<GameState> {
        let private: Vec<&Label> = state.private(state.to_move()).iter().collect();
        (1..=private.len())
            .flat_map(|k| private.iter().copied().combinations(k))
            .filter_map(|set| state.apply_move(&Move::Play(set.into_iter().cloned().collect())).ok())
            .collect()
    }

    /// Whether the player to move can force a win.
    fn wins(&self, state: &GameState) -> bool {
        let key = (state.private(Player::Pr).clone(), state.private(Player::Op).clone(), state.to_move());
        if let Some(&w) = self.solved.borrow().get(&key) {
            return w;
        }
        let w = Self::legal_plays(state).iter().any(|next| !self.wins(next));
        self.solved.borrow_mut().insert(key, w);
        w
    }
}

impl Strategy for Exhaustive {
    fn choose(&self, state: &GameState) -> Move {
        let plays = Self::legal_plays(state);
        let pick = plays.iter().find(|next| !self.wins(next)).or(plays.first());
        match pick.and_then(|next| next.history().last()) {
            Some((_, mv)) => mv.clone(),
            None => Move::Pass,
        }
    }
}

/// The built-in strategies by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StrategyKind {
    Minimal,
    Maximal,
    Exhaustive,
}

impl std::str::FromStr for StrategyKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "minimal" => Ok(StrategyKind::Minimal),
            "maximal" => Ok(StrategyKind::Maximal),
            "exhaustive" => Ok(StrategyKind::Exhaustive),
            other => Err(format!("unknown strategy `{other}` (expected minimal, maximal or exhaustive)")),
        }
    }
}

impl Strategy for StrategyKind {
    fn choose(&self, state: &GameState) -> Move {
        match self {
            StrategyKind::Minimal => strategy_minimal(state),
            StrategyKind::Maximal => strategy_maximal(state),
            StrategyKind::Exhaustive => strategy_exhaustive(state),
        }
    }
}
