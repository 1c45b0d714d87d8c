use super::{ParseError, Span};
use crate::theory::RuleKind;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(super) enum Token {
    Word(String),
    Section(String),
    Arrow(RuleKind),
    Tilde,
    Bang,
    Comma,
    Colon,
    Dot,
    Gt,
    LBracket,
    RBracket,
}

impl Token {
    pub(super) fn describe(&self) -> String {
        match self {
            Token::Word(w) => format!("`{w}`"),
            Token::Section(s) => format!("`@{s}`"),
            Token::Arrow(k) => format!("`{}`", k.arrow()),
            Token::Tilde => "`~`".into(),
            Token::Bang => "`!`".into(),
            Token::Comma => "`,`".into(),
            Token::Colon => "`:`".into(),
            Token::Dot => "`.`".into(),
            Token::Gt => "`>`".into(),
            Token::LBracket => "`[`".into(),
            Token::RBracket => "`]`".into(),
        }
    }
}

fn word_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

pub(super) fn tokenize(text: &str) -> Result<Vec<(Token, Span)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let span = Span { line, column: col };
        let next = chars.get(i + 1).copied();
        let (token, len) = match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
                continue;
            }
            c if c.is_whitespace() => (None, 1),
            '#' => {
                let len = chars[i..].iter().take_while(|&&c| c != '\n').count();
                (None, len)
            }
            '-' if next == Some('>') => (Some(Token::Arrow(RuleKind::Strict)), 2),
            '=' if next == Some('>') => (Some(Token::Arrow(RuleKind::Defeasible)), 2),
            '~' if next == Some('>') => (Some(Token::Arrow(RuleKind::Defeater)), 2),
            '~' => (Some(Token::Tilde), 1),
            '!' => (Some(Token::Bang), 1),
            ',' => (Some(Token::Comma), 1),
            ':' => (Some(Token::Colon), 1),
            '.' => (Some(Token::Dot), 1),
            '>' => (Some(Token::Gt), 1),
            '[' => (Some(Token::LBracket), 1),
            ']' => (Some(Token::RBracket), 1),
            '@' | 'A'..='Z' | 'a'..='z' | '0'..='9' | '_' => {
                let start = if c == '@' { i + 1 } else { i };
                let mut j = start;
                // hyphens join words unless they start an arrow
                while j < chars.len() && (word_char(chars[j]) || (chars[j] == '-' && chars.get(j + 1).is_some_and(|&n| word_char(n)))) {
                    j += 1;
                }
                let word: String = chars[start..j].iter().collect();
                if c == '@' {
                    if word.is_empty() {
                        return Err(ParseError::new(span, "expected a section name after `@`"));
                    }
                    (Some(Token::Section(word)), j - i)
                } else {
                    (Some(Token::Word(word)), j - i)
                }
            }
            other => return Err(ParseError::new(span, format!("unexpected character `{other}`"))),
        };
        if let Some(t) = token {
            out.push((t, span));
        }
        i += len;
        col += len;
    }
    Ok(out)
}
