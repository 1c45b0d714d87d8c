use std::collections::BTreeSet;
use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use bioflat::flat::transform_with_map;
use bioflat::format::{parse_game, parse_theory, write_arg, write_game, Document, GameDocument};
use bioflat::strategy::{
    brute_force_winning_move, check_sociality_instance, find_winning_move, reduce_sociality_to_game,
    solve_restoring_sociality, SearchOrder, SocialityInstance, StrategyKind,
};
use bioflat::theory::{AgentTheory, ArgTheory, Label};
use bioflat::{
    bio_prove, compute_bio_extension, compute_extension, prove, run_game, validate_agent, validate_arg, Answer,
    GameStatus, Literal, Player, Premise, ProofTag,
};
use clap::{Parser, Subcommand, ValueEnum};

/// Defeasible argumentation and BIO agent theories: extensions, flattening, dialogue games.
#[derive(Parser)]
#[command(name = "bioflat", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print every conclusion of a theory.
    Extend {
        /// Theory file, or `-` for standard input.
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Answer one proof query and print its derivation.
    Prove {
        file: PathBuf,
        /// +D, -D, +d or -d.
        tag: ProofTag,
        /// A literal, or in an agent theory `OBL q`, `!INT q` and the like.
        query: String,
    },
    /// Rewrite an agent theory as an argumentation theory.
    Flatten {
        file: PathBuf,
        /// Append which rules each source rule became, as comments.
        #[arg(long)]
        map: bool,
    },
    /// Play a game file to the end.
    Play {
        game: PathBuf,
        #[arg(long, default_value = "minimal")]
        pr: StrategyKind,
        #[arg(long, default_value = "minimal")]
        op: StrategyKind,
        /// Write the transcript as JSON to this file.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Search a winning set of private rules for the player to move.
    Move {
        game: PathBuf,
        #[arg(long, value_enum)]
        player: Side,
        #[arg(long, default_value = "minimal")]
        order: SearchOrder,
        /// Enumerate every subset instead of pruning.
        #[arg(long)]
        oracle: bool,
        /// Report the search effort on standard error.
        #[arg(long)]
        stats: bool,
        #[arg(long)]
        json: bool,
    },
    /// Check a blocked obligation and find the intentions to keep.
    Sociality {
        file: PathBuf,
        #[arg(long)]
        obligation: Literal,
    },
    /// Emit the game a sociality instance reduces to, with its solution.
    Reduce {
        file: PathBuf,
        #[arg(long)]
        obligation: Literal,
        #[arg(long, value_enum, default_value = "on")]
        filter_obligations: Switch,
    },
    /// Report structural problems in a theory or game file.
    Validate {
        file: PathBuf,
        /// Read as a game file regardless of the extension.
        #[arg(long)]
        game: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Side {
    Pr,
    Op,
}

impl From<Side> for Player {
    fn from(s: Side) -> Player {
        match s {
            Side::Pr => Player::Pr,
            Side::Op => Player::Op,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Switch {
    On,
    Off,
}

fn read(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text).context("reading standard input")?;
        Ok(text)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn load_theory(path: &Path) -> Result<Document> {
    parse_theory(&read(path)?).with_context(|| path.display().to_string())
}

fn load_valid_theory(path: &Path) -> Result<Document> {
    let doc = load_theory(path)?;
    let violations = match &doc {
        Document::Arg(t) => validate_arg(t),
        Document::Agent(t) => validate_agent(t),
    };
    if let Some(v) = violations.first() {
        bail!("{}: {v}", path.display());
    }
    Ok(doc)
}

fn load_agent(path: &Path) -> Result<AgentTheory> {
    match load_valid_theory(path)? {
        Document::Agent(t) => Ok(t),
        Document::Arg(t) => Ok(AgentTheory::from_arg(&t)),
    }
}

fn load_game(path: &Path) -> Result<GameDocument> {
    parse_game(&read(path)?).with_context(|| path.display().to_string())
}

/// `{p1: a => b, p2: b => c}`
fn show_rules(t: &ArgTheory, labels: &BTreeSet<Label>) -> String {
    let rules: Vec<String> = labels
        .iter()
        .filter_map(|l| t.rule(l))
        .map(|r| {
            let text = r.to_string();
            text.trim_start_matches("rule ").trim_end_matches('.').to_string()
        })
        .collect();
    format!("{{{}}}", rules.join(", "))
}

fn show_literals(ls: &BTreeSet<Literal>) -> String {
    let names: Vec<String> = ls.iter().map(Literal::to_string).collect();
    format!("{{{}}}", names.join(", "))
}

fn run(command: Command) -> Result<bool> {
    match command {
        Command::Extend { file, json } => {
            let doc = load_valid_theory(&file)?;
            let (text, value) = match &doc {
                Document::Arg(t) => {
                    let e = compute_extension(t);
                    (e.to_string(), e.to_json())
                }
                Document::Agent(t) => {
                    let e = compute_bio_extension(t);
                    (e.to_string(), e.to_json())
                }
            };
            if json {
                println!("{}", serde_json::to_string_pretty(&value)?);
            } else {
                print!("{text}");
            }
            Ok(true)
        }
        Command::Prove { file, tag, query } => {
            let (answer, trace) = match load_valid_theory(&file)? {
                Document::Arg(t) => {
                    let q: Literal = query.parse()?;
                    let proof = prove(&t, tag, &q);
                    (proof.answer, proof.trace.map(|t| t.to_string()))
                }
                Document::Agent(t) => {
                    let q: Premise = query.parse()?;
                    let proof = bio_prove(&t, tag, &q);
                    (proof.answer, proof.trace.map(|t| t.to_string()))
                }
            };
            println!("{tag} {query}: {answer:?}");
            if let Some(trace) = trace {
                print!("{trace}");
            }
            Ok(answer == Answer::Yes)
        }
        Command::Flatten { file, map } => {
            let t = load_agent(&file)?;
            let (flat, provenance) = transform_with_map(&t)?;
            print!("{}", write_arg(&flat));
            if map {
                for (source, labels) in provenance {
                    let names: Vec<&str> = labels.iter().map(Label::as_str).collect();
                    println!("# {source}: {}", names.join(", "));
                }
            }
            Ok(true)
        }
        Command::Play { game, pr, op, trace } => {
            let initial = load_game(&game)?.start()?;
            let (transcript, last) = run_game(&initial, &pr, &op);
            let (goal, anti) = (initial.goal(), initial.theory().complement(initial.goal()));
            for r in &transcript.records {
                let status = format!("{}∂ {goal}  {}∂ {anti}", r.goal_status.partial, r.goal_status.complement_partial);
                match &r.forfeit {
                    Some(why) => println!("{:>3} {} forfeits ({why})", r.turn + 1, r.player),
                    None => println!("{:>3} {} {}  {status}", r.turn + 1, r.player, r.mv),
                }
            }
            let result = match last.status() {
                GameStatus::WonBy(p) => format!("won by {p}"),
                GameStatus::Running => "unfinished".to_string(),
            };
            println!("{result}");
            if let Some(out) = trace {
                let json = serde_json::to_string_pretty(&transcript)?;
                fs::write(&out, json + "\n").with_context(|| format!("writing {}", out.display()))?;
            }
            Ok(last.status() == GameStatus::WonBy(Player::Pr))
        }
        Command::Move { game, player, order, oracle, stats, json } => {
            let state = load_game(&game)?.start()?;
            let player = Player::from(player);
            let result = if oracle {
                brute_force_winning_move(&state, player, order)?
            } else {
                find_winning_move(&state, player, order)?
            };
            if json {
                let value = serde_json::json!({
                    "player": player.to_string(),
                    "order": order.to_string(),
                    "witness": result.witness,
                    "nodes_explored": result.nodes_explored,
                    "searched_rules": result.searched_rules,
                    "elapsed_ms": result.elapsed.as_secs_f64() * 1000.0,
                });
                println!("{}", serde_json::to_string_pretty(&value)?);
            } else {
                match &result.witness {
                    Some(w) => println!("{}", show_rules(state.theory(), w)),
                    None => println!("no winning move"),
                }
            }
            if stats {
                eprintln!(
                    "nodes {}, rules searched {}, {:.3} ms",
                    result.nodes_explored,
                    result.searched_rules,
                    result.elapsed.as_secs_f64() * 1000.0
                );
            }
            Ok(result.found())
        }
        Command::Sociality { file, obligation } => {
            let inst = SocialityInstance::new(load_agent(&file)?, obligation.clone());
            for (condition, holds) in check_sociality_instance(&inst).conditions {
                println!("{} {condition}", if holds { "holds " } else { "fails " });
            }
            match solve_restoring_sociality(&inst)? {
                Some(keep) => {
                    println!("keep {}", show_literals(&keep));
                    Ok(true)
                }
                None => {
                    println!("no proper subset of {} restores OBL {obligation}", show_literals(&inst.intentions));
                    Ok(false)
                }
            }
        }
        Command::Reduce { file, obligation, filter_obligations } => {
            let inst = SocialityInstance::new(load_agent(&file)?, obligation);
            let reduction = reduce_sociality_to_game(&inst)?;
            let game = &reduction.game;
            let doc = GameDocument {
                theory: game.theory().clone(),
                proponent: game.private(Player::Pr).clone(),
                opponent: game.private(Player::Op).clone(),
                config: game.config().clone(),
            };
            print!("{}", write_game(&doc));
            let found = reduction.solve(filter_obligations == Switch::On);
            match &found.witness {
                Some(w) => {
                    let names: Vec<&str> = w.iter().map(Label::as_str).collect();
                    println!("# witness {{{}}}", names.join(", "));
                    println!("# keep {}", show_literals(&reduction.intentions_of(w)));
                }
                None => println!("# no witness"),
            }
            Ok(found.found())
        }
        Command::Validate { file, game } => {
            let violations = if game || file.extension().is_some_and(|e| e == "game") {
                let doc = load_game(&file)?;
                match doc.start() {
                    Ok(_) => Vec::new(),
                    Err(e) => vec![e.to_string()],
                }
            } else {
                match load_theory(&file)? {
                    Document::Arg(t) => validate_arg(&t),
                    Document::Agent(t) => validate_agent(&t),
                }
                .iter()
                .map(ToString::to_string)
                .collect()
            };
            for v in &violations {
                println!("{v}");
            }
            if violations.is_empty() {
                println!("valid");
            }
            Ok(violations.is_empty())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
