//! Recursive-descent parser for formulas and terms.
//!
//! ```text
//! formula  := disj ("->" formula)?
//! disj     := conj ("|" conj)*
//! conj     := unary ("&" unary)*
//! unary    := "~" unary | ("forall" | "exists") IDENT "." formula
//!           | "(" formula ")" | atom
//! atom     := term ("=" | "<" | ">") term | term "==" term "mod" NAT
//! term     := primary ("+" primary)*
//! primary  := NAT | IDENT | "V2" "(" term ")" | "(" term ")"
//! ```

use thiserror::Error;

use super::ast::{Formula, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at position {pos}: {message}")]
pub struct ParseError {
    /// Byte offset into the input.
    pub pos: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Nat(u64),
    LParen,
    RParen,
    Dot,
    Tilde,
    Amp,
    Bar,
    Arrow,
    Eq,
    EqEq,
    Lt,
    Gt,
    Plus,
    Forall,
    Exists,
    Mod,
    V2,
    End,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("identifier `{s}`"),
        Tok::Nat(n) => format!("number `{n}`"),
        Tok::End => "end of input".into(),
        other => format!("`{}`", symbol(other)),
    }
}

fn symbol(t: &Tok) -> &'static str {
    match t {
        Tok::LParen => "(",
        Tok::RParen => ")",
        Tok::Dot => ".",
        Tok::Tilde => "~",
        Tok::Amp => "&",
        Tok::Bar => "|",
        Tok::Arrow => "->",
        Tok::Eq => "=",
        Tok::EqEq => "==",
        Tok::Lt => "<",
        Tok::Gt => ">",
        Tok::Plus => "+",
        Tok::Forall => "forall",
        Tok::Exists => "exists",
        Tok::Mod => "mod",
        Tok::V2 => "V2",
        Tok::Ident(_) | Tok::Nat(_) | Tok::End => "?",
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        let start = i;
        if b.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let tok = match b {
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'.' => Tok::Dot,
            b'~' => Tok::Tilde,
            b'&' => Tok::Amp,
            b'|' => Tok::Bar,
            b'<' => Tok::Lt,
            b'>' => Tok::Gt,
            b'+' => Tok::Plus,
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 1;
                Tok::Arrow
            }
            b'=' if bytes.get(i + 1) == Some(&b'=') => {
                i += 1;
                Tok::EqEq
            }
            b'=' => Tok::Eq,
            b'0'..=b'9' => {
                while i + 1 < bytes.len() && bytes[i + 1].is_ascii_digit() {
                    i += 1;
                }
                let digits = &text[start..=i];
                let n = digits.parse::<u64>().map_err(|_| ParseError {
                    pos: start,
                    message: format!("numeral `{digits}` is too large"),
                })?;
                Tok::Nat(n)
            }
            b if b.is_ascii_alphabetic() || b == b'_' => {
                while i + 1 < bytes.len()
                    && (bytes[i + 1].is_ascii_alphanumeric() || matches!(bytes[i + 1], b'_' | b'\''))
                {
                    i += 1;
                }
                match &text[start..=i] {
                    "forall" => Tok::Forall,
                    "exists" => Tok::Exists,
                    "mod" => Tok::Mod,
                    "V2" => Tok::V2,
                    word => Tok::Ident(word.to_string()),
                }
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(ParseError {
                    pos: start,
                    message: format!("unexpected character `{ch}`"),
                });
            }
        };
        out.push((tok, start));
        i += 1;
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    idx: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Self, ParseError> {
        Ok(Parser { toks: lex(text)?, idx: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.idx].0
    }

    fn pos(&self) -> usize {
        self.toks[self.idx].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.idx].0.clone();
        if t != Tok::End {
            self.idx += 1;
        }
        t
    }

    fn error<T>(&self, expected: &str) -> Result<T, ParseError> {
        Err(ParseError {
            pos: self.pos(),
            message: format!("expected {expected}, found {}", describe(self.peek())),
        })
    }

    fn expect(&mut self, t: Tok) -> Result<(), ParseError> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            self.error(&format!("`{}`", symbol(&t)))
        }
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        if *self.peek() == Tok::End {
            Ok(())
        } else {
            self.error("end of input")
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disjunction()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.formula()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.conjunction()?;
        while *self.peek() == Tok::Bar {
            self.bump();
            acc = Formula::or(acc, self.conjunction()?);
        }
        Ok(acc)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.unary()?;
        while *self.peek() == Tok::Amp {
            self.bump();
            acc = Formula::and(acc, self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::Tilde => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            q @ (Tok::Forall | Tok::Exists) => {
                self.bump();
                let var = match self.bump() {
                    Tok::Ident(v) => v,
                    _ => {
                        self.idx -= 1;
                        return self.error("a variable name");
                    }
                };
                self.expect(Tok::Dot)?;
                let body = self.formula()?;
                Ok(if q == Tok::Forall {
                    Formula::forall(&var, body)
                } else {
                    Formula::exists(&var, body)
                })
            }
            Tok::LParen => {
                // Either a parenthesised formula or an atom whose left term
                // starts with a parenthesis; try the former first.
                let save = self.idx;
                self.bump();
                let nested = self.formula();
                if let Ok(f) = nested.as_ref() {
                    if *self.peek() == Tok::RParen {
                        self.bump();
                        let continues_term = matches!(
                            self.peek(),
                            Tok::Plus | Tok::Eq | Tok::EqEq | Tok::Lt | Tok::Gt
                        );
                        if !continues_term {
                            return Ok(f.clone());
                        }
                    }
                }
                let nested_reach = self.pos();
                self.idx = save;
                match self.atom() {
                    Ok(a) => Ok(a),
                    Err(atom_err) => match nested {
                        Err(e) if e.pos > atom_err.pos => Err(e),
                        Ok(_) if nested_reach > atom_err.pos => Err(ParseError {
                            pos: nested_reach,
                            message: "expected `)`".into(),
                        }),
                        _ => Err(atom_err),
                    },
                }
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.term()?;
        match self.bump() {
            Tok::Eq => Ok(Formula::Eq(lhs, self.term()?)),
            Tok::Lt => Ok(Formula::Lt(lhs, self.term()?)),
            Tok::Gt => {
                let rhs = self.term()?;
                Ok(Formula::Lt(rhs, lhs))
            }
            Tok::EqEq => {
                let rhs = self.term()?;
                self.expect(Tok::Mod)?;
                let pos = self.pos();
                match self.bump() {
                    Tok::Nat(n) if n >= 2 => Ok(Formula::CongMod(n, lhs, rhs)),
                    Tok::Nat(n) => Err(ParseError {
                        pos,
                        message: format!("modulus must be at least 2, got {n}"),
                    }),
                    _ => {
                        self.idx -= 1;
                        self.error("a modulus")
                    }
                }
            }
            Tok::End => self.error("`=`, `<`, `>` or `==`"),
            _ => {
                self.idx -= 1;
                self.error("`=`, `<`, `>` or `==`")
            }
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let mut acc = self.primary()?;
        while *self.peek() == Tok::Plus {
            self.bump();
            acc = Term::sum(acc, self.primary()?);
        }
        Ok(acc)
    }

    fn primary(&mut self) -> Result<Term, ParseError> {
        match self.peek().clone() {
            Tok::Nat(n) => {
                self.bump();
                Ok(Term::Numeral(n))
            }
            Tok::Ident(v) => {
                self.bump();
                Ok(Term::Var(v))
            }
            Tok::V2 => {
                self.bump();
                self.expect(Tok::LParen)?;
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(Term::v2(t))
            }
            Tok::LParen => {
                self.bump();
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            _ => self.error("a term"),
        }
    }
}

/// Parses a formula and renames bound variables apart.
pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let mut p = Parser::new(text)?;
    let f = p.formula()?;
    p.finish()?;
    Ok(f.rename_apart())
}

pub fn parse_term(text: &str) -> Result<Term, ParseError> {
    let mut p = Parser::new(text)?;
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}
