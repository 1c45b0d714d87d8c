use std::collections::BTreeSet;

use super::lexer::{tokenize, Token};
use super::{Document, GameDocument, ParseError, Span};
use crate::game::{GameConfig, WinMode};
use crate::literal::{Atom, Literal, ModalLiteral, Modality, Premise};
use crate::theory::{AgentTheory, ArgTheory, ComplementScheme, Label, Rule};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Section {
    Common,
    Proponent,
    Opponent,
}

pub(super) struct Parsed {
    pub document: Document,
    goal: Option<Literal>,
    mode: Option<WinMode>,
    sections: Vec<(Label, Section)>,
}

struct Parser {
    tokens: Vec<(Token, Span)>,
    pos: usize,
    end: Span,
    game: bool,
    modal: Option<Span>,
    flat: Option<Span>,
    goal: Option<Literal>,
    mode: Option<WinMode>,
    section: Section,
    facts: Vec<Premise>,
    rules: Vec<(Rule, Section)>,
    sup: Vec<(Label, Label)>,
}

fn modality(word: &str) -> Option<Modality> {
    word.parse().ok()
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn span(&self) -> Span {
        self.tokens.get(self.pos).map_or(self.end, |(_, s)| *s)
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::new(self.span(), message)
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        match self.peek() {
            Some(t) => self.error(format!("expected {wanted}, found {}", t.describe())),
            None => self.error(format!("expected {wanted}, found end of input")),
        }
    }

    fn eat(&mut self, t: &Token) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: Token, wanted: &str) -> Result<(), ParseError> {
        if self.eat(&t) {
            Ok(())
        } else {
            Err(self.unexpected(wanted))
        }
    }

    fn word(&mut self, wanted: &str) -> Result<(String, Span), ParseError> {
        match self.tokens.get(self.pos) {
            Some((Token::Word(w), s)) => {
                let out = (w.clone(), *s);
                self.pos += 1;
                Ok(out)
            }
            _ => Err(self.unexpected(wanted)),
        }
    }

    fn peek_modality(&self) -> Option<Modality> {
        match self.peek() {
            Some(Token::Word(w)) => modality(w),
            _ => None,
        }
    }

    fn note_modal(&mut self, span: Span) {
        self.modal.get_or_insert(span);
    }

    fn label(&mut self) -> Result<Label, ParseError> {
        let (w, s) = self.word("a rule label")?;
        Label::new(w).map_err(|e| ParseError::new(s, e.to_string()))
    }

    fn literal(&mut self) -> Result<Literal, ParseError> {
        let negated = self.eat(&Token::Tilde);
        let (w, s) = self.word("an atom")?;
        if modality(&w).is_some() {
            return Err(ParseError::new(s, format!("`{w}` is a modality, not an atom")));
        }
        let atom = Atom::new(w).map_err(|e| ParseError::new(s, e.to_string()))?;
        Ok(Literal { atom, negated })
    }

    /// `lit`, `MODE lit` or `!MODE lit`.
    fn premise(&mut self) -> Result<Premise, ParseError> {
        let start = self.span();
        let negated = self.eat(&Token::Bang);
        let Some(x) = self.peek_modality() else {
            return if negated { Err(self.unexpected("a modality after `!`")) } else { Ok(self.literal()?.into()) };
        };
        self.pos += 1;
        self.note_modal(start);
        let l = self.literal()?;
        if x == Modality::Bel {
            if negated {
                return Err(ParseError::new(start, "`!BEL` is not a literal; write the complementary belief instead"));
            }
            return Ok(Premise::Plain(l));
        }
        Ok(ModalLiteral::new(negated, x, l).expect("OBL and INT are modal").into())
    }

    fn statement(&mut self) -> Result<(), ParseError> {
        if let Some(Token::Section(name)) = self.peek() {
            let span = self.span();
            if !self.game {
                return Err(ParseError::new(span, "section markers are only allowed in game files"));
            }
            self.section = match name.as_str() {
                "common" => Section::Common,
                "proponent" => Section::Proponent,
                "opponent" => Section::Opponent,
                other => return Err(ParseError::new(span, format!("unknown section `@{other}`"))),
            };
            self.pos += 1;
            return Ok(());
        }
        let (keyword, span) = self.word("a statement (fact, rule, sup)")?;
        match keyword.as_str() {
            "fact" => {
                let p = self.premise()?;
                if matches!(&p, Premise::Modal(m) if m.negated) {
                    return Err(ParseError::new(span, "facts cannot be negated modal literals"));
                }
                self.facts.push(p);
            }
            "rule" => {
                let label = self.label()?;
                let mut mode = None;
                if self.eat(&Token::LBracket) {
                    let at = self.span();
                    let (w, s) = self.word("a modality")?;
                    mode = Some(modality(&w).ok_or_else(|| ParseError::new(s, format!("unknown modality `{w}`")))?);
                    self.note_modal(at);
                    self.expect(Token::RBracket, "`]`")?;
                }
                self.expect(Token::Colon, "`:`")?;
                let mut body = Vec::new();
                let kind = loop {
                    if let Some(&Token::Arrow(k)) = self.peek() {
                        self.pos += 1;
                        break k;
                    }
                    if !body.is_empty() {
                        self.expect(Token::Comma, "`,` or an arrow")?;
                    }
                    body.push(self.premise()?);
                };
                let head = self.literal()?;
                let rule = Rule { label, kind, mode, antecedents: body.into_iter().collect(), consequent: head };
                self.rules.push((rule, self.section));
            }
            "sup" => {
                let a = self.label()?;
                self.expect(Token::Gt, "`>`")?;
                let b = self.label()?;
                self.sup.push((a, b));
            }
            "complement" => {
                let (w, s) = self.word("a complement scheme")?;
                if w != "flat" && w != "classical" {
                    return Err(ParseError::new(s, format!("unknown complement scheme `{w}`")));
                }
                if w == "flat" {
                    self.flat = Some(span);
                }
            }
            "goal" if self.game => {
                if self.goal.is_some() {
                    return Err(ParseError::new(span, "duplicate goal"));
                }
                self.goal = Some(self.literal()?);
            }
            "mode" if self.game => {
                let (w, s) = self.word("strong or weak")?;
                self.mode = Some(w.parse().map_err(|e: String| ParseError::new(s, e))?);
            }
            "goal" | "mode" => return Err(ParseError::new(span, format!("`{keyword}` is only allowed in game files"))),
            other => return Err(ParseError::new(span, format!("unknown statement `{other}`"))),
        }
        self.expect(Token::Dot, "`.`")
    }
}

pub(super) fn parse(text: &str, game: bool) -> Result<Parsed, ParseError> {
    let tokens = tokenize(text)?;
    let lines = text.lines().count().max(1);
    let end = Span { line: lines, column: text.lines().last().map_or(1, |l| l.chars().count() + 1) };
    let mut p = Parser {
        tokens,
        pos: 0,
        end,
        game,
        modal: None,
        flat: None,
        goal: None,
        mode: None,
        section: Section::Common,
        facts: Vec::new(),
        rules: Vec::new(),
        sup: Vec::new(),
    };
    while p.pos < p.tokens.len() {
        p.statement()?;
    }
    let sections = p.rules.iter().map(|(r, s)| (r.label.clone(), *s)).collect();
    let superiority = p.sup.into_iter().collect();
    let document = match p.modal {
        Some(_) => {
            if let Some(flat) = p.flat {
                return Err(ParseError::new(flat, "`complement flat` applies to argumentation theories only"));
            }
            Document::Agent(AgentTheory {
                facts: p.facts.into_iter().collect(),
                rules: p.rules.into_iter().map(|(r, _)| r).collect(),
                superiority,
                ..AgentTheory::default()
            })
        }
        None => Document::Arg(ArgTheory {
            facts: p.facts.iter().map(|f| f.literal().clone()).collect(),
            rules: p.rules.into_iter().map(|(r, _)| r).collect(),
            superiority,
            scheme: if p.flat.is_some() { ComplementScheme::Flat } else { ComplementScheme::Classical },
        }),
    };
    Ok(Parsed { document, goal: p.goal, mode: p.mode, sections })
}

pub(super) fn parse_game(text: &str) -> Result<GameDocument, ParseError> {
    let parsed = parse(text, true)?;
    let start = Span { line: 1, column: 1 };
    let Document::Arg(theory) = parsed.document else {
        return Err(ParseError::new(start, "games are played on argumentation theories; modalities are not allowed"));
    };
    let goal = parsed.goal.ok_or_else(|| ParseError::new(start, "missing `goal` statement"))?;
    let of = |want: Section| -> BTreeSet<Label> {
        parsed.sections.iter().filter(|(_, s)| *s == want).map(|(l, _)| l.clone()).collect()
    };
    Ok(GameDocument {
        proponent: of(Section::Proponent),
        opponent: of(Section::Opponent),
        config: GameConfig::new(goal, parsed.mode.unwrap_or_default()),
        theory,
    })
}
