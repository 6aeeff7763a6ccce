//! Concrete syntax. Whitespace-insensitive grammar:
//!
//! ```text
//! term   ::= "forall" IDENT ":" term "," term
//!          | "fun" "(" IDENT ":" term ")" "=>" term
//!          | "exists" IDENT ":" term "," term
//!          | arrow
//! arrow  ::= iff  ("->" term)?                      (right assoc, weakest)
//! iff    ::= or   ("<->" iff)?
//! or     ::= and  ("\/" or)?
//! and    ::= not  ("/\" and)?
//! not    ::= "~" not | eq
//! eq     ::= appl ("=" "[" term "]" appl)?
//! appl   ::= atom atom*
//! atom   ::= "Prop" | "Type" NAT | "False" | IDENT
//!          | "list" | "nil" | "cons" | "list_rec" | "list_ind"
//!          | "(" term ")"
//! ```
//!
//! The connectives and `False` are sugar: they expand to their Pi encodings
//! before anything downstream sees the term.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use alloc::format;

use crate::term::{self, Hint, ListConst, Sort, Term};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl core::fmt::Display for ParseError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.msg)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Nat(u32),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Colon,
    Comma,
    Arrow,    // ->
    FatArrow, // =>
    Iff,      // <->
    AndOp,    // /\
    OrOp,     // \/
    Tilde,    // ~
    EqOp,     // =
}

struct Lexed {
    toks: Vec<(Tok, usize, usize)>,
}

fn lex(src: &str) -> Result<Lexed, ParseError> {
    let mut toks = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let bytes: Vec<char> = src.chars().collect();
    let mut i = 0usize;
    let err = |line, col, msg: String| ParseError { line, col, msg };
    while i < bytes.len() {
        let c = bytes[i];
        let (tl, tc) = (line, col);
        let adv = |n: usize, i: &mut usize, col: &mut usize| {
            *i += n;
            *col += n;
        };
        match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => adv(1, &mut i, &mut col),
            '#' => {
                while i < bytes.len() && bytes[i] != '\n' {
                    i += 1;
                }
            }
            '(' => {
                toks.push((Tok::LParen, tl, tc));
                adv(1, &mut i, &mut col);
            }
            ')' => {
                toks.push((Tok::RParen, tl, tc));
                adv(1, &mut i, &mut col);
            }
            '[' => {
                toks.push((Tok::LBracket, tl, tc));
                adv(1, &mut i, &mut col);
            }
            ']' => {
                toks.push((Tok::RBracket, tl, tc));
                adv(1, &mut i, &mut col);
            }
            ':' => {
                toks.push((Tok::Colon, tl, tc));
                adv(1, &mut i, &mut col);
            }
            ',' => {
                toks.push((Tok::Comma, tl, tc));
                adv(1, &mut i, &mut col);
            }
            '~' => {
                toks.push((Tok::Tilde, tl, tc));
                adv(1, &mut i, &mut col);
            }
            '-' => {
                if bytes.get(i + 1) == Some(&'>') {
                    toks.push((Tok::Arrow, tl, tc));
                    adv(2, &mut i, &mut col);
                } else {
                    return Err(err(tl, tc, "expected '->'".to_string()));
                }
            }
            '=' => {
                if bytes.get(i + 1) == Some(&'>') {
                    toks.push((Tok::FatArrow, tl, tc));
                    adv(2, &mut i, &mut col);
                } else {
                    toks.push((Tok::EqOp, tl, tc));
                    adv(1, &mut i, &mut col);
                }
            }
            '<' => {
                if bytes.get(i + 1) == Some(&'-') && bytes.get(i + 2) == Some(&'>') {
                    toks.push((Tok::Iff, tl, tc));
                    adv(3, &mut i, &mut col);
                } else {
                    return Err(err(tl, tc, "expected '<->'".to_string()));
                }
            }
            '/' => {
                if bytes.get(i + 1) == Some(&'\\') {
                    toks.push((Tok::AndOp, tl, tc));
                    adv(2, &mut i, &mut col);
                } else {
                    return Err(err(tl, tc, "expected '/\\'".to_string()));
                }
            }
            '\\' => {
                if bytes.get(i + 1) == Some(&'/') {
                    toks.push((Tok::OrOp, tl, tc));
                    adv(2, &mut i, &mut col);
                } else {
                    return Err(err(tl, tc, "expected '\\/'".to_string()));
                }
            }
            c if c.is_ascii_digit() => {
                let mut n = 0u32;
                let mut len = 0usize;
                while i + len < bytes.len() && bytes[i + len].is_ascii_digit() {
                    n = n
                        .checked_mul(10)
                        .and_then(|n| n.checked_add(bytes[i + len] as u32 - '0' as u32))
                        .ok_or_else(|| err(tl, tc, "number too large".to_string()))?;
                    len += 1;
                }
                toks.push((Tok::Nat(n), tl, tc));
                adv(len, &mut i, &mut col);
            }
            c if c.is_alphabetic() || c == '_' => {
                let mut len = 0usize;
                while i + len < bytes.len() {
                    let d = bytes[i + len];
                    if d.is_alphanumeric() || d == '_' || d == '\'' {
                        len += 1;
                    } else {
                        break;
                    }
                }
                let word: String = bytes[i..i + len].iter().collect();
                toks.push((Tok::Ident(word), tl, tc));
                adv(len, &mut i, &mut col);
            }
            other => {
                return Err(err(tl, tc, format!("unexpected character '{}'", other)));
            }
        }
    }
    Ok(Lexed { toks })
}

const KEYWORDS: &[&str] = &[
    "forall", "fun", "exists", "Prop", "False", "list", "nil", "cons", "list_rec", "list_ind",
];

/// True when `name` cannot be used as a plain identifier.
pub fn is_reserved(name: &str) -> bool {
    KEYWORDS.contains(&name)
        || (name.starts_with("Type")
            && (name.len() == 4 || name[4..].chars().all(|c| c.is_ascii_digit())))
}

struct Parser {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
    /// Visible names, outermost first: context entries then binders.
    scope: Vec<String>,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _, _)| t)
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .map(|&(_, l, c)| (l, c))
            .unwrap_or_else(|| {
                self.toks
                    .last()
                    .map(|&(_, l, c)| (l, c + 1))
                    .unwrap_or((1, 1))
            })
    }

    fn fail<T>(&self, msg: String) -> Result<T, ParseError> {
        let (line, col) = self.here();
        Err(ParseError { line, col, msg })
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<(), ParseError> {
        if self.eat(&t) {
            Ok(())
        } else {
            self.fail(format!("expected {}", what))
        }
    }

    fn ident(&mut self, what: &str) -> Result<String, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Ident(s)) if !is_reserved(&s) => {
                self.pos += 1;
                Ok(s)
            }
            _ => self.fail(format!("expected {}", what)),
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        match self.peek() {
            Some(Tok::Ident(s)) if s == "forall" => {
                self.pos += 1;
                let name = self.ident("binder name after 'forall'")?;
                self.expect(Tok::Colon, "':'")?;
                let dom = self.term()?;
                self.expect(Tok::Comma, "','")?;
                self.scope.push(name.clone());
                let cod = self.term()?;
                self.scope.pop();
                Ok(term::pi(dom, cod, Hint::named(&name)))
            }
            Some(Tok::Ident(s)) if s == "fun" => {
                self.pos += 1;
                self.expect(Tok::LParen, "'('")?;
                let name = self.ident("binder name after 'fun ('")?;
                self.expect(Tok::Colon, "':'")?;
                let ann = self.term()?;
                self.expect(Tok::RParen, "')'")?;
                self.expect(Tok::FatArrow, "'=>'")?;
                self.scope.push(name.clone());
                let body = self.term()?;
                self.scope.pop();
                Ok(term::lam(ann, body, Hint::named(&name)))
            }
            Some(Tok::Ident(s)) if s == "exists" => {
                self.pos += 1;
                let name = self.ident("binder name after 'exists'")?;
                self.expect(Tok::Colon, "':'")?;
                let dom = self.term()?;
                self.expect(Tok::Comma, "','")?;
                self.scope.push(name.clone());
                let body = self.term()?;
                self.scope.pop();
                Ok(term::exists(Hint::named(&name), dom, body))
            }
            _ => self.arrow(),
        }
    }

    fn arrow(&mut self) -> Result<Term, ParseError> {
        let lhs = self.iff_level()?;
        if self.eat(&Tok::Arrow) {
            let rhs = self.term()?;
            Ok(term::arrow(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn iff_level(&mut self) -> Result<Term, ParseError> {
        let lhs = self.or_level()?;
        if self.eat(&Tok::Iff) {
            let rhs = self.iff_level()?;
            Ok(term::iff(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn or_level(&mut self) -> Result<Term, ParseError> {
        let lhs = self.and_level()?;
        if self.eat(&Tok::OrOp) {
            let rhs = self.or_level()?;
            Ok(term::or(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn and_level(&mut self) -> Result<Term, ParseError> {
        let lhs = self.not_level()?;
        if self.eat(&Tok::AndOp) {
            let rhs = self.and_level()?;
            Ok(term::and(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn not_level(&mut self) -> Result<Term, ParseError> {
        if self.eat(&Tok::Tilde) {
            let t = self.not_level()?;
            Ok(term::neg(t))
        } else {
            self.eq_level()
        }
    }

    fn eq_level(&mut self) -> Result<Term, ParseError> {
        let lhs = self.appl()?;
        if self.eat(&Tok::EqOp) {
            self.expect(Tok::LBracket, "'[' after '='")?;
            let ty = self.term()?;
            self.expect(Tok::RBracket, "']'")?;
            let rhs = self.appl()?;
            Ok(term::eq(ty, lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn appl(&mut self) -> Result<Term, ParseError> {
        let mut t = self.atom()?;
        while self.at_atom_start() {
            let arg = self.atom()?;
            t = term::app(t, arg);
        }
        Ok(t)
    }

    fn at_atom_start(&self) -> bool {
        matches!(self.peek(), Some(Tok::LParen) | Some(Tok::Ident(_)))
    }

    fn atom(&mut self) -> Result<Term, ParseError> {
        match self.peek().cloned() {
            Some(Tok::LParen) => {
                self.pos += 1;
                let t = self.term()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(t)
            }
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                match s.as_str() {
                    "Prop" => Ok(term::prop()),
                    "False" => Ok(term::falsum()),
                    "list" => Ok(Term::Const(ListConst::List)),
                    "nil" => Ok(Term::Const(ListConst::Nil)),
                    "cons" => Ok(Term::Const(ListConst::Cons)),
                    "list_rec" => Ok(Term::Const(ListConst::ListRec)),
                    "list_ind" => Ok(Term::Const(ListConst::ListInd)),
                    "Type" => match self.peek().cloned() {
                        Some(Tok::Nat(n)) => {
                            self.pos += 1;
                            Ok(Term::Sort(Sort::Type(n)))
                        }
                        _ => self.fail("expected universe level after 'Type'".to_string()),
                    },
                    _ => {
                        if let Some(rest) = s.strip_prefix("Type") {
                            if !rest.is_empty() && rest.chars().all(|c| c.is_ascii_digit()) {
                                let n: u32 = rest.parse().map_err(|_| ParseError {
                                    line: 0,
                                    col: 0,
                                    msg: "universe level too large".to_string(),
                                })?;
                                return Ok(Term::Sort(Sort::Type(n)));
                            }
                        }
                        // bound variable: innermost scope entry wins
                        match self.scope.iter().rposition(|n| n == &s) {
                            Some(p) => {
                                let index = self.scope.len() - 1 - p;
                                Ok(Term::Var(index, Hint::named(&s)))
                            }
                            None => {
                                self.pos -= 1;
                                self.fail(format!("unbound identifier '{}'", s))
                            }
                        }
                    }
                }
            }
            _ => self.fail("expected a term".to_string()),
        }
    }
}

/// Parses a term whose free variables are the given context names
/// (outermost first).
pub fn parse_term(src: &str, ctx_names: &[String]) -> Result<Term, ParseError> {
    let lexed = lex(src)?;
    let mut p = Parser {
        toks: lexed.toks,
        pos: 0,
        scope: ctx_names.to_vec(),
    };
    let t = p.term()?;
    if p.pos != p.toks.len() {
        return p.fail("trailing input after term".to_string());
    }
    Ok(t)
}

/// Parses a closed term.
pub fn parse_closed(src: &str) -> Result<Term, ParseError> {
    parse_term(src, &[])
}

/// Builds a context from `(name, type source)` pairs, each type parsed under
/// the prefix before it.
pub fn parse_context(entries: &[(&str, &str)]) -> Result<crate::term::Context, ParseError> {
    let mut ctx = crate::term::Context::empty();
    for (name, ty) in entries {
        let names = ctx.names();
        let t = parse_term(ty, &names)?;
        ctx.push(*name, t);
    }
    Ok(ctx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::{app, falsum, lam, pi, prop, var};

    #[test]
    fn identity_abstraction() {
        let t = parse_closed("fun (P : Prop) => P").unwrap();
        assert_eq!(t, lam(prop(), var(0), Hint::none()));
    }

    #[test]
    fn bottom_encoding() {
        let t = parse_closed("forall P : Prop, P").unwrap();
        assert_eq!(t, pi(prop(), var(0), Hint::none()));
        assert_eq!(parse_closed("False").unwrap(), falsum());
    }

    #[test]
    fn list_constants_are_leaves() {
        assert_eq!(
            parse_closed("list_rec").unwrap(),
            Term::Const(ListConst::ListRec)
        );
        let t = parse_closed("nil Prop").unwrap();
        assert_eq!(t, app(Term::Const(ListConst::Nil), prop()));
    }

    #[test]
    fn sorts_and_levels() {
        assert_eq!(parse_closed("Type1").unwrap(), Term::Sort(Sort::Type(1)));
        assert_eq!(parse_closed("Type 2").unwrap(), Term::Sort(Sort::Type(2)));
        assert!(parse_closed("Type").is_err());
    }

    #[test]
    fn sugar_expands_before_typing() {
        let neg0 = parse_closed("~ False").unwrap();
        assert_eq!(neg0, term::neg(falsum()));
        let conj = parse_closed("False /\\ False").unwrap();
        assert_eq!(conj, term::and(falsum(), falsum()));
        let lem = parse_closed("forall P : Prop, P \\/ ~P").unwrap();
        assert_eq!(
            lem,
            pi(
                prop(),
                term::or(var(0), term::neg(var(0))),
                Hint::none()
            )
        );
    }

    #[test]
    fn equality_sugar() {
        let names = vec!["A".to_string(), "x".to_string(), "y".to_string()];
        let t = parse_term("x =[A] y", &names).unwrap();
        assert_eq!(t, term::eq(var(2), var(1), var(0)));
    }

    #[test]
    fn arrow_is_weakest_and_right_assoc() {
        let a = parse_closed("Prop -> Prop -> Prop").unwrap();
        assert_eq!(
            a,
            term::arrow(prop(), term::arrow(prop(), prop()))
        );
        let b = parse_closed("False <-> False -> False").unwrap();
        assert_eq!(b, term::arrow(term::iff(falsum(), falsum()), falsum()));
    }

    #[test]
    fn shadowing_resolves_to_innermost() {
        let t = parse_closed("fun (P : Prop) => fun (P : Prop) => P").unwrap();
        assert_eq!(t, lam(prop(), lam(prop(), var(0), Hint::none()), Hint::none()));
    }

    #[test]
    fn errors_carry_position() {
        let e = parse_closed("forall P : Prop, Q").unwrap_err();
        assert_eq!(e.line, 1);
        assert_eq!(e.col, 18);
        assert!(e.msg.contains("unbound identifier"));
    }

    #[test]
    fn application_binds_tighter_than_equality() {
        let names = vec!["A".to_string(), "f".to_string(), "x".to_string()];
        let t = parse_term("f x =[A] x", &names).unwrap();
        assert_eq!(t, term::eq(var(2), app(var(1), var(0)), var(0)));
    }
}
