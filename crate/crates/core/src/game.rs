//! The dialogue game: two players reveal private rules in turn, each move having to
//! leave the common theory in a state that meets the mover's objective on the goal.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::engine::{CompiledTheory, Evaluation};
use crate::literal::Literal;
use crate::status::Status;
use crate::theory::{ArgTheory, Label};
use crate::validate::{validate_arg, Violation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Player {
    Pr,
    Op,
}

impl Player {
    pub fn other(self) -> Player {
        match self {
            Player::Pr => Player::Op,
            Player::Op => Player::Pr,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Player::Pr => "Pr",
            Player::Op => "Op",
        })
    }
}

/// What the opponent has to reach: `+∂∼l` (strong) or merely `−∂l` (weak).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WinMode {
    #[default]
    Strong,
    Weak,
}

impl FromStr for WinMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "strong" => Ok(WinMode::Strong),
            "weak" => Ok(WinMode::Weak),
            other => Err(format!("unknown win mode `{other}` (expected strong or weak)")),
        }
    }
}

impl fmt::Display for WinMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WinMode::Strong => "strong",
            WinMode::Weak => "weak",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameConfig {
    pub goal: Literal,
    pub win_mode: WinMode,
    /// Defaults to one more than the number of private rules.
    pub max_turns: Option<usize>,
}

impl GameConfig {
    pub fn new(goal: Literal, win_mode: WinMode) -> Self {
        GameConfig { goal, win_mode, max_turns: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Move {
    Play(BTreeSet<Label>),
    Pass,
}

impl Serialize for Move {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Move::Play(labels) => labels.serialize(s),
            Move::Pass => s.serialize_str("pass"),
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::Play(labels) => {
                let names: Vec<&str> = labels.iter().map(Label::as_str).collect();
                write!(f, "play {{{}}}", names.join(", "))
            }
            Move::Pass => f.write_str("pass"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GameStatus {
    Running,
    WonBy(Player),
}

impl Serialize for GameStatus {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            GameStatus::Running => s.serialize_str("running"),
            GameStatus::WonBy(p) => s.serialize_str(&format!("won_by_{p}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("invalid theory: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
    #[error("private rule `{0}` is not in the theory")]
    UnknownLabel(Label),
    #[error("rule `{0}` is private to both players")]
    SharedLabel(Label),
    #[error("inconsistent theory: both `{0}` and its complement are definitely provable")]
    Inconsistent(Literal),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IllegalMove {
    #[error("the game is over")]
    NotRunning,
    #[error("a play must reveal at least one rule")]
    EmptyPlay,
    #[error("`{0}` is not a private rule of the mover")]
    NotPrivate(Label),
    #[error("after the move the {0} objective on the goal does not hold")]
    ObjectiveUnmet(Player),
}

/// `∂` status of the goal and of its complement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GoalStatus {
    pub partial: Status,
    pub complement_partial: Status,
}

#[derive(Debug)]
struct Shared {
    theory: ArgTheory,
    compiled: CompiledTheory,
    config: GameConfig,
    goal: usize,
    anti_goal: usize,
    max_turns: usize,
}

#[derive(Debug, Clone)]
pub struct GameState {
    shared: Arc<Shared>,
    common: BTreeSet<Label>,
    pr_private: BTreeSet<Label>,
    op_private: BTreeSet<Label>,
    turn: usize,
    to_move: Player,
    history: Vec<(Player, Move)>,
    status: GameStatus,
}

impl PartialEq for GameState {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.shared, &other.shared)
            || (self.shared.theory == other.shared.theory && self.shared.config == other.shared.config))
            && self.common == other.common
            && self.pr_private == other.pr_private
            && self.op_private == other.op_private
            && self.turn == other.turn
            && self.to_move == other.to_move
            && self.history == other.history
            && self.status == other.status
    }
}

impl Eq for GameState {}

/// Starts a game on `theory`; rules not listed as private are common knowledge.
pub fn new_game(
    theory: ArgTheory,
    pr_private: BTreeSet<Label>,
    op_private: BTreeSet<Label>,
    config: GameConfig,
) -> Result<GameState, GameError> {
    let violations = validate_arg(&theory);
    if !violations.is_empty() {
        return Err(GameError::Invalid(violations));
    }
    for l in pr_private.iter().chain(&op_private) {
        if theory.rule(l).is_none() {
            return Err(GameError::UnknownLabel(l.clone()));
        }
    }
    if let Some(l) = pr_private.intersection(&op_private).next() {
        return Err(GameError::SharedLabel(l.clone()));
    }
    let compiled = CompiledTheory::with_goal(&theory, &config.goal);
    let everything = compiled.evaluate(None);
    for l in &theory.literals() {
        let (Some(a), Some(b)) = (compiled.literal_index(l), compiled.literal_index(&theory.complement(l))) else {
            continue;
        };
        if everything.delta(a).is_proved() && everything.delta(b).is_proved() {
            return Err(GameError::Inconsistent(l.clone()));
        }
    }
    let common = theory
        .rules
        .iter()
        .map(|r| r.label.clone())
        .filter(|l| !pr_private.contains(l) && !op_private.contains(l))
        .collect();
    let goal = compiled.literal_index(&config.goal).expect("goal is compiled in");
    let anti_goal = compiled.literal_index(&theory.complement(&config.goal)).expect("complement is compiled in");
    let max_turns = config.max_turns.unwrap_or(pr_private.len() + op_private.len() + 1);
    let shared = Arc::new(Shared { theory, compiled, config, goal, anti_goal, max_turns });
    let mut state = GameState {
        shared,
        common,
        pr_private,
        op_private,
        turn: 0,
        to_move: Player::Pr,
        history: Vec::new(),
        status: GameStatus::Running,
    };
    if state.meets(Player::Pr, &state.evaluate_with(&BTreeSet::new())) {
        state.to_move = Player::Op;
    }
    Ok(state)
}

impl GameState {
    pub fn theory(&self) -> &ArgTheory {
        &self.shared.theory
    }

    pub fn config(&self) -> &GameConfig {
        &self.shared.config
    }

    pub fn goal(&self) -> &Literal {
        &self.shared.config.goal
    }

    pub fn common(&self) -> &BTreeSet<Label> {
        &self.common
    }

    pub fn private(&self, p: Player) -> &BTreeSet<Label> {
        match p {
            Player::Pr => &self.pr_private,
            Player::Op => &self.op_private,
        }
    }

    pub fn turn(&self) -> usize {
        self.turn
    }

    pub fn to_move(&self) -> Player {
        self.to_move
    }

    pub fn history(&self) -> &[(Player, Move)] {
        &self.history
    }

    pub fn status(&self) -> GameStatus {
        self.status
    }

    pub fn is_running(&self) -> bool {
        self.status == GameStatus::Running
    }

    pub fn max_turns(&self) -> usize {
        self.shared.max_turns
    }

    /// Whether the theory mentions the goal's atom at all.
    pub fn goal_mentioned(&self) -> bool {
        let atom = &self.goal().atom;
        self.theory().literals().iter().any(|l| &l.atom == atom)
    }

    /// Status of the goal on the common theory extended with `extra`.
    pub fn goal_status_with(&self, extra: &BTreeSet<Label>) -> GoalStatus {
        let ev = self.evaluate_with(extra);
        GoalStatus { partial: ev.partial(self.shared.goal), complement_partial: ev.partial(self.shared.anti_goal) }
    }

    pub fn goal_status(&self) -> GoalStatus {
        self.goal_status_with(&BTreeSet::new())
    }

    /// The mover's objective after revealing `extra`.
    pub fn objective_met_with(&self, player: Player, extra: &BTreeSet<Label>) -> bool {
        self.meets(player, &self.evaluate_with(extra))
    }

    pub(crate) fn compiled(&self) -> &CompiledTheory {
        &self.shared.compiled
    }

    /// Rule mask for the common rules plus `extra`.
    pub(crate) fn mask_with<'a>(&'a self, extra: impl IntoIterator<Item = &'a Label>) -> Vec<bool> {
        let c = &self.shared.compiled;
        let mut mask = vec![false; c.rule_count()];
        for l in self.common.iter().chain(extra) {
            if let Some(i) = c.rule_index(l) {
                mask[i] = true;
            }
        }
        mask
    }

    pub(crate) fn evaluate_mask(&self, mask: &[bool]) -> Evaluation {
        self.shared.compiled.evaluate(Some(mask))
    }

    fn evaluate_with(&self, extra: &BTreeSet<Label>) -> Evaluation {
        self.evaluate_mask(&self.mask_with(extra))
    }

    pub(crate) fn meets(&self, player: Player, ev: &Evaluation) -> bool {
        let (goal, anti) = (self.shared.goal, self.shared.anti_goal);
        match (player, self.shared.config.win_mode) {
            (Player::Pr, _) => ev.partial(goal).is_proved(),
            (Player::Op, WinMode::Strong) => ev.partial(anti).is_proved(),
            (Player::Op, WinMode::Weak) => ev.partial(goal).is_rejected(),
        }
    }

    pub fn legal(&self, mv: &Move) -> Result<(), IllegalMove> {
        if !self.is_running() {
            return Err(IllegalMove::NotRunning);
        }
        let Move::Play(labels) = mv else { return Ok(()) };
        if labels.is_empty() {
            return Err(IllegalMove::EmptyPlay);
        }
        let private = self.private(self.to_move);
        if let Some(l) = labels.iter().find(|l| !private.contains(*l)) {
            return Err(IllegalMove::NotPrivate(l.clone()));
        }
        if !self.objective_met_with(self.to_move, labels) {
            return Err(IllegalMove::ObjectiveUnmet(self.to_move));
        }
        Ok(())
    }

    pub fn apply_move(&self, mv: &Move) -> Result<GameState, IllegalMove> {
        self.legal(mv)?;
        let mut next = self.clone();
        let mover = self.to_move;
        match mv {
            Move::Play(labels) => {
                let private = match mover {
                    Player::Pr => &mut next.pr_private,
                    Player::Op => &mut next.op_private,
                };
                for l in labels {
                    private.remove(l);
                    next.common.insert(l.clone());
                }
                next.turn += 1;
                next.to_move = mover.other();
            }
            Move::Pass => next.status = GameStatus::WonBy(mover.other()),
        }
        next.history.push((mover, mv.clone()));
        Ok(next)
    }

    /// The mover loses without changing the theory.
    pub fn forfeit(&self) -> GameState {
        let mut next = self.clone();
        next.status = GameStatus::WonBy(self.to_move.other());
        next
    }
}

/// Chooses the next move for whoever is to move.
pub trait Strategy {
    fn choose(&self, state: &GameState) -> Move;
}

impl<F: Fn(&GameState) -> Move> Strategy for F {
    fn choose(&self, state: &GameState) -> Move {
        self(state)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Record {
    pub turn: usize,
    pub player: Player,
    #[serde(rename = "move")]
    pub mv: Move,
    pub goal_status: GoalStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub forfeit: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Transcript {
    pub goal: String,
    pub win_mode: WinMode,
    pub records: Vec<Record>,
    #[serde(serialize_with = "result_name")]
    pub result: GameStatus,
}

fn result_name<S: Serializer>(status: &GameStatus, s: S) -> Result<S::Ok, S::Error> {
    match status {
        GameStatus::Running => s.serialize_str("unfinished"),
        other => other.serialize(s),
    }
}

impl Transcript {
    /// Applies the recorded moves to `initial`.
    pub fn replay(&self, initial: &GameState) -> Result<GameState, IllegalMove> {
        self.records.iter().try_fold(initial.clone(), |state, r| match r.forfeit {
            Some(_) => Ok(state.forfeit()),
            None => state.apply_move(&r.mv),
        })
    }
}

/// Plays until someone passes, forfeits, or the turn limit is reached.
pub fn run_game(initial: &GameState, pr: &dyn Strategy, op: &dyn Strategy) -> (Transcript, GameState) {
    let mut state = initial.clone();
    let mut records = Vec::new();
    while state.is_running() && records.len() < state.max_turns() {
        let player = state.to_move();
        let strategy = match player {
            Player::Pr => pr,
            Player::Op => op,
        };
        let mv = strategy.choose(&state);
        let turn = state.turn();
        let (next, forfeit) = match state.apply_move(&mv) {
            Ok(next) => (next, None),
            Err(e) => (state.forfeit(), Some(e.to_string())),
        };
        state = next;
        records.push(Record { turn, player, mv, goal_status: state.goal_status(), forfeit });
    }
    let transcript = Transcript {
        goal: initial.goal().to_string(),
        win_mode: initial.config().win_mode,
        records,
        result: state.status(),
    };
    (transcript, state)
}
