//! Recursive-descent parser for terms, formulas and substitutions.
//!
//! Sugar is expanded here: `~A` becomes `(A -> false)`, `s = t` becomes
//! `eq(s, t)`, and `(forall xi A)` becomes the derived quantifier. The
//! resulting trees only use the three primitive formula constructors.

use std::sync::Arc;

use thiserror::Error;

use super::ast::{Formula, Term, EQ};
use super::signature::{is_variable_name, Signature};
use crate::clone::{forall_var, neg, Substitution};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unexpected character `{ch}` at offset {pos}")]
    UnexpectedChar { pos: usize, ch: char },
    #[error("expected {expected} at offset {pos}, found {found}")]
    Unexpected { pos: usize, expected: &'static str, found: String },
    #[error("malformed variable `{0}` (variables are `x` followed by a positive integer)")]
    MalformedVariable(String),
    #[error("unknown function symbol `{0}`")]
    UnknownFunction(String),
    #[error("unknown predicate symbol `{0}`")]
    UnknownPredicate(String),
    #[error("`{name}` expects {expected} arguments, got {found}")]
    Arity { name: String, expected: usize, found: usize },
    #[error("`=` requires a signature with equality")]
    NoEquality,
    #[error("substitution offset {offset} leaves tail entries below x1 (prefix length {len})")]
    BadOffset { offset: i64, len: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Var(usize),
    Param(String),
    Int(i64),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Semi,
    Arrow,
    Tilde,
    Equals,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Var(i) => format!("`x{i}`"),
            Tok::Param(p) => format!("`${p}`"),
            Tok::Int(n) => format!("`{n:+}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::Tilde => "`~`".into(),
            Tok::Equals => "`=`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

fn word_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut k = 0;
    while k < chars.len() {
        let (pos, c) = chars[k];
        if c.is_whitespace() {
            k += 1;
            continue;
        }
        let single = match c {
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '[' => Some(Tok::LBracket),
            ']' => Some(Tok::RBracket),
            ',' => Some(Tok::Comma),
            ';' => Some(Tok::Semi),
            '~' => Some(Tok::Tilde),
            '=' => Some(Tok::Equals),
            _ => None,
        };
        if let Some(tok) = single {
            out.push((tok, pos));
            k += 1;
            continue;
        }
        if c == '-' && chars.get(k + 1).map(|p| p.1) == Some('>') {
            out.push((Tok::Arrow, pos));
            k += 2;
            continue;
        }
        if c == '+' || c == '-' || c.is_ascii_digit() {
            let start = k;
            k += 1;
            while k < chars.len() && chars[k].1.is_ascii_digit() {
                k += 1;
            }
            let s: String = chars[start..k].iter().map(|p| p.1).collect();
            let n = s.parse().map_err(|_| ParseError::UnexpectedChar { pos, ch: c })?;
            out.push((Tok::Int(n), pos));
            continue;
        }
        if c == '$' {
            let start = k + 1;
            k = start;
            while k < chars.len() && word_char(chars[k].1) {
                k += 1;
            }
            if k == start {
                return Err(ParseError::UnexpectedChar { pos, ch: c });
            }
            out.push((Tok::Param(chars[start..k].iter().map(|p| p.1).collect()), pos));
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = k;
            while k < chars.len() && word_char(chars[k].1) {
                k += 1;
            }
            let word: String = chars[start..k].iter().map(|p| p.1).collect();
            let tok = if word.starts_with('x') && word.len() > 1 && word[1..].bytes().all(|b| b.is_ascii_digit()) {
                if !is_variable_name(&word) || word.as_bytes()[1] == b'0' {
                    return Err(ParseError::MalformedVariable(word));
                }
                Tok::Var(word[1..].parse().map_err(|_| ParseError::MalformedVariable(word.clone()))?)
            } else {
                Tok::Ident(word)
            };
            out.push((tok, pos));
            continue;
        }
        return Err(ParseError::UnexpectedChar { pos, ch: c });
    }
    out.push((Tok::Eof, text.len()));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    at: usize,
    sig: &'a Signature,
}

impl<'a> Parser<'a> {
    fn new(text: &str, sig: &'a Signature) -> Result<Self, ParseError> {
        Ok(Parser { toks: lex(text)?, at: 0, sig })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn peek_at(&self, ahead: usize) -> &Tok {
        let k = (self.at + ahead).min(self.toks.len() - 1);
        &self.toks[k].0
    }

    fn bump(&mut self) -> Tok {
        let tok = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        tok
    }

    fn unexpected(&self, expected: &'static str) -> ParseError {
        let (tok, pos) = &self.toks[self.at];
        ParseError::Unexpected { pos: *pos, expected, found: tok.describe() }
    }

    fn expect(&mut self, tok: Tok, expected: &'static str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(expected))
        }
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        self.expect(Tok::Eof, "end of input")
    }

    fn args(&mut self) -> Result<Vec<Term>, ParseError> {
        self.expect(Tok::LParen, "`(`")?;
        let mut args = Vec::new();
        if *self.peek() == Tok::RParen {
            self.bump();
            return Ok(args);
        }
        loop {
            args.push(self.term()?);
            match self.peek() {
                Tok::Comma => {
                    self.bump();
                }
                Tok::RParen => {
                    self.bump();
                    return Ok(args);
                }
                _ => return Err(self.unexpected("`,` or `)`")),
            }
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        match self.peek().clone() {
            Tok::Var(i) => {
                self.bump();
                Ok(Term::Var(i))
            }
            Tok::Param(p) => {
                self.bump();
                Ok(Term::Param(Arc::from(p)))
            }
            Tok::Ident(name) => {
                let expected =
                    self.sig.function_arity(&name).ok_or_else(|| ParseError::UnknownFunction(name.clone()))?;
                self.bump();
                let args = if *self.peek() == Tok::LParen || expected > 0 { self.args()? } else { Vec::new() };
                if args.len() != expected {
                    return Err(ParseError::Arity { name, expected, found: args.len() });
                }
                Ok(Term::App(Arc::from(name), args))
            }
            _ => Err(self.unexpected("a term")),
        }
    }

    /// formula := unary ('->' formula)?
    fn formula(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.unary()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.formula()?;
            Ok(Formula::implies(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        if *self.peek() == Tok::Tilde {
            self.bump();
            let inner = self.unary()?;
            return Ok(neg(&inner));
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::LParen => {
                self.bump();
                let inner = if *self.peek() == Tok::Ident("forall".into()) {
                    self.bump();
                    match (self.peek().clone(), self.peek_at(1)) {
                        (Tok::Var(i), next) if *next != Tok::Equals => {
                            self.bump();
                            let body = self.formula()?;
                            forall_var(&body, i)
                        }
                        _ => Formula::forall(self.formula()?),
                    }
                } else {
                    self.formula()?
                };
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            Tok::Ident(name) if self.sig.predicate_arity(&name).is_some() => {
                let expected = self.sig.predicate_arity(&name).unwrap_or(0);
                self.bump();
                let args = if *self.peek() == Tok::LParen || expected > 0 { self.args()? } else { Vec::new() };
                if args.len() != expected {
                    return Err(ParseError::Arity { name, expected, found: args.len() });
                }
                Ok(Formula::Atom(Arc::from(name), args))
            }
            Tok::Ident(name) if self.sig.function_arity(&name).is_none() => Err(ParseError::UnknownPredicate(name)),
            Tok::Ident(_) | Tok::Var(_) | Tok::Param(_) => {
                let lhs = self.term()?;
                self.expect(Tok::Equals, "`=` after a term")?;
                if !self.sig.with_equality() {
                    return Err(ParseError::NoEquality);
                }
                let rhs = self.term()?;
                Ok(Formula::Atom(Arc::from(EQ), vec![lhs, rhs]))
            }
            _ => Err(self.unexpected("a formula")),
        }
    }

    fn substitution(&mut self) -> Result<Substitution, ParseError> {
        self.expect(Tok::LBracket, "`[`")?;
        let mut prefix = Vec::new();
        if *self.peek() != Tok::Semi {
            loop {
                prefix.push(self.term()?);
                if *self.peek() == Tok::Comma {
                    self.bump();
                } else {
                    break;
                }
            }
        }
        self.expect(Tok::Semi, "`;`")?;
        let offset = match *self.peek() {
            Tok::Int(n) => n,
            _ => return Err(self.unexpected("an integer offset")),
        };
        self.bump();
        self.expect(Tok::RBracket, "`]`")?;
        let len = prefix.len();
        Substitution::new(prefix, offset as isize).map_err(|_| ParseError::BadOffset { offset, len })
    }
}

pub fn parse_term(text: &str, sig: &Signature) -> Result<Term, ParseError> {
    let mut p = Parser::new(text, sig)?;
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}

pub fn parse_formula(text: &str, sig: &Signature) -> Result<Formula, ParseError> {
    let mut p = Parser::new(text, sig)?;
    let f = p.formula()?;
    p.finish()?;
    Ok(f)
}

/// Parses `[t1, ..., tn; +d]`.
pub fn parse_substitution(text: &str, sig: &Signature) -> Result<Substitution, ParseError> {
    let mut p = Parser::new(text, sig)?;
    let s = p.substitution()?;
    p.finish()?;
    Ok(s)
}
