//! Exact search for a winning set of private rules.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use itertools::Itertools;
use thiserror::Error;

use crate::engine::Evaluation;
use crate::game::{GameState, Player};
use crate::literal::Literal;
use crate::theory::{ArgTheory, Label};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SearchOrder {
    /// Smallest sets first, ties by the played labels.
    #[default]
    MinimalFirst,
    /// Largest sets first, ties by the withheld labels.
    MaximalFirst,
}

impl FromStr for SearchOrder {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "minimal" => Ok(SearchOrder::MinimalFirst),
            "maximal" => Ok(SearchOrder::MaximalFirst),
            other => Err(format!("unknown order `{other}` (expected minimal or maximal)")),
        }
    }
}

impl fmt::Display for SearchOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SearchOrder::MinimalFirst => "minimal",
            SearchOrder::MaximalFirst => "maximal",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveSearchResult {
    pub witness: Option<BTreeSet<Label>>,
    /// Candidate sets evaluated.
    pub nodes_explored: usize,
    /// Private rules left after pruning.
    pub searched_rules: usize,
    pub elapsed: Duration,
}

impl MoveSearchResult {
    pub fn found(&self) -> bool {
        self.witness.is_some()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("the game is over")]
    NotRunning,
    #[error("it is {to_move}'s turn, not {player}'s")]
    WrongPlayer { player: Player, to_move: Player },
}

/// Literals whose status can influence `goal` or its complement.
///
/// Edges run from antecedents to heads and between complementary literals.
pub fn dependency_cone(t: &ArgTheory, goal: &Literal) -> BTreeSet<Literal> {
    let mut feeds: HashMap<&Literal, Vec<&Literal>> = HashMap::new();
    for r in &t.rules {
        for a in &r.antecedents {
            feeds.entry(&r.consequent).or_default().push(a.literal());
        }
    }
    let start = [goal.clone(), t.complement(goal)];
    let mut seen: BTreeSet<Literal> = start.iter().cloned().collect();
    let mut queue: VecDeque<Literal> = start.into();
    while let Some(l) = queue.pop_front() {
        let pushed = feeds.get(&l).into_iter().flatten().map(|&a| a.clone()).chain([t.complement(&l)]);
        for m in pushed.collect::<Vec<_>>() {
            if seen.insert(m.clone()) {
                queue.push_back(m);
            }
        }
    }
    seen
}

fn check(state: &GameState, player: Player) -> Result<(), SearchError> {
    if !state.is_running() {
        return Err(SearchError::NotRunning);
    }
    if state.to_move() != player {
        return Err(SearchError::WrongPlayer { player, to_move: state.to_move() });
    }
    Ok(())
}

/// First legal winning subset of the mover's private rules, restricted to the goal's dependency cone.
pub fn find_winning_move(state: &GameState, player: Player, order: SearchOrder) -> Result<MoveSearchResult, SearchError> {
    check(state, player)?;
    Ok(search(state, player, order, true, &|_| true))
}

/// Exhaustive search over every subset by binary counting, with no pruning.
pub fn brute_force_winning_move(
    state: &GameState,
    player: Player,
    order: SearchOrder,
) -> Result<MoveSearchResult, SearchError> {
    check(state, player)?;
    let started = Instant::now();
    let private: Vec<&Label> = state.private(player).iter().collect();
    let n = private.len();
    let mut winners: Vec<Vec<usize>> = Vec::new();
    for bits in 1u64..(1u64 << n) {
        let set: Vec<usize> = (0..n).filter(|i| bits >> i & 1 == 1).collect();
        let ev = state.evaluate_mask(&state.mask_with(set.iter().map(|&i| private[i])));
        if state.meets(player, &ev) {
            winners.push(set);
        }
    }
    let key = |set: &Vec<usize>| -> (usize, Vec<usize>) {
        match order {
            SearchOrder::MinimalFirst => (set.len(), set.clone()),
            SearchOrder::MaximalFirst => (n - set.len(), (0..n).filter(|i| !set.contains(i)).collect()),
        }
    };
    let best = winners.into_iter().min_by_key(key);
    Ok(MoveSearchResult {
        witness: best.map(|set| set.into_iter().map(|i| private[i].clone()).collect()),
        nodes_explored: (1usize << n) - 1,
        searched_rules: n,
        elapsed: started.elapsed(),
    })
}

/// Enumerates non-empty subsets of `player`'s private rules in `order` and returns the first
/// one meeting the player's objective and `filter`, whoever is to move.
pub fn search(
    state: &GameState,
    player: Player,
    order: SearchOrder,
    pruned: bool,
    filter: &dyn Fn(&Evaluation) -> bool,
) -> MoveSearchResult {
    let started = Instant::now();
    let (inside, outside): (Vec<&Label>, Vec<&Label>) = if pruned {
        let cone = dependency_cone(state.theory(), state.goal());
        let theory = state.theory();
        state
            .private(player)
            .iter()
            .partition(|l| theory.rule(l).is_some_and(|r| cone.contains(&r.consequent)))
    } else {
        (state.private(player).iter().collect(), Vec::new())
    };
    let n = inside.len();
    let mut nodes = 0;
    let mut accept = |played: &[&Label]| {
        nodes += 1;
        let ev = state.evaluate_mask(&state.mask_with(played.iter().copied()));
        state.meets(player, &ev) && filter(&ev)
    };

    let mut witness = None;
    match order {
        SearchOrder::MinimalFirst => {
            'sizes: for k in 1..=n {
                for played in inside.iter().copied().combinations(k) {
                    if accept(&played) {
                        witness = Some(played);
                        break 'sizes;
                    }
                }
            }
        }
        SearchOrder::MaximalFirst => {
            'sizes: for w in 0..=n {
                for withheld in (0..n).combinations(w) {
                    let played: Vec<&Label> = (0..n)
                        .filter(|i| !withheld.contains(i))
                        .map(|i| inside[i])
                        .chain(outside.iter().copied())
                        .collect();
                    if !played.is_empty() && accept(&played) {
                        witness = Some(played);
                        break 'sizes;
                    }
                }
            }
        }
    }
    MoveSearchResult {
        witness: witness.map(|w| w.into_iter().cloned().collect()),
        nodes_explored: nodes,
        searched_rules: n,
        elapsed: started.elapsed(),
    }
}
