//! Recursive-descent parser for the hyperreal text grammar:
//!
//! ```text
//! expr     := term (('+'|'-') term)*
//! term     := factor (('*'|'/') factor)*
//! factor   := atom ('^' integer)? | '-' factor
//! atom     := rational | 'e' | '(' expr ')'
//! rational := integer ('/' positive-integer)?
//! ```
//!
//! Whitespace is insignificant; '^' binds tighter than unary minus.

use num_bigint::BigInt;
use num_traits::Zero;

use super::Hyperreal;
use crate::sequences::Rational;
use crate::{Error, Result};

pub fn parse_hyperreal(text: &str) -> Result<Hyperreal> {
    let tokens = lex(text)?;
    let mut p = Parser { tokens, pos: 0, end: text.len() };
    let value = p.expr()?;
    match p.peek() {
        None => Ok(value),
        Some(t) => Err(Error::syntax(t.pos, format!("unexpected {}", t.kind.describe()))),
    }
}

#[derive(Debug, Clone, PartialEq)]
enum TokenKind {
    Int(BigInt),
    Epsilon,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

impl TokenKind {
    fn describe(&self) -> String {
        match self {
            TokenKind::Int(n) => format!("number {n}"),
            TokenKind::Epsilon => "'e'".into(),
            TokenKind::Plus => "'+'".into(),
            TokenKind::Minus => "'-'".into(),
            TokenKind::Star => "'*'".into(),
            TokenKind::Slash => "'/'".into(),
            TokenKind::Caret => "'^'".into(),
            TokenKind::LParen => "'('".into(),
            TokenKind::RParen => "')'".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    kind: TokenKind,
    pos: usize,
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        let kind = match b {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = text[start..i].parse().expect("digits parse");
                tokens.push(Token { kind: TokenKind::Int(n), pos: start });
                continue;
            }
            b'e' => TokenKind::Epsilon,
            b'+' => TokenKind::Plus,
            b'-' => TokenKind::Minus,
            b'*' => TokenKind::Star,
            b'/' => TokenKind::Slash,
            b'^' => TokenKind::Caret,
            b'(' => TokenKind::LParen,
            b')' => TokenKind::RParen,
            other => {
                return Err(Error::syntax(i, format!("unexpected character {:?}", other as char)))
            }
        };
        tokens.push(Token { kind, pos: i });
        i += 1;
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn peek2(&self) -> Option<&Token> {
        self.tokens.get(self.pos + 1)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn here(&self) -> usize {
        self.peek().map_or(self.end, |t| t.pos)
    }

    fn eat(&mut self, kind: &TokenKind) -> bool {
        if self.peek().map(|t| &t.kind) == Some(kind) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Hyperreal> {
        let mut acc = self.term()?;
        loop {
            if self.eat(&TokenKind::Plus) {
                acc = acc.add(&self.term()?);
            } else if self.eat(&TokenKind::Minus) {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Hyperreal> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(&TokenKind::Star) {
                acc = acc.mul(&self.factor()?);
            } else if self.eat(&TokenKind::Slash) {
                acc = acc.div(&self.factor()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Hyperreal> {
        if self.eat(&TokenKind::Minus) {
            return Ok(self.factor()?.neg());
        }
        let base = self.atom()?;
        if self.eat(&TokenKind::Caret) {
            let exp = self.exponent()?;
            return base.pow(exp);
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<i64> {
        let neg = self.eat(&TokenKind::Minus);
        let pos = self.here();
        match self.bump() {
            Some(Token { kind: TokenKind::Int(n), .. }) => {
                let n: i64 = n
                    .try_into()
                    .map_err(|_| Error::syntax(pos, "exponent out of range"))?;
                Ok(if neg { -n } else { n })
            }
            _ => Err(Error::syntax(pos, "expected integer exponent")),
        }
    }

    fn atom(&mut self) -> Result<Hyperreal> {
        let pos = self.here();
        match self.bump() {
            Some(Token { kind: TokenKind::Int(n), .. }) => {
                // rational := integer ('/' positive-integer)?  (greedy)
                if self.peek().map(|t| &t.kind) == Some(&TokenKind::Slash) {
                    if let Some(Token { kind: TokenKind::Int(d), pos: dpos }) = self.peek2().cloned()
                    {
                        self.pos += 2;
                        if d.is_zero() {
                            return Err(Error::syntax(dpos, "zero denominator"));
                        }
                        return Ok(Hyperreal::from_rational(&Rational::new(n, d)));
                    }
                }
                Ok(Hyperreal::from_rational(&Rational::from_integer(n)))
            }
            Some(Token { kind: TokenKind::Epsilon, .. }) => Ok(Hyperreal::epsilon()),
            Some(Token { kind: TokenKind::LParen, .. }) => {
                let inner = self.expr()?;
                if !self.eat(&TokenKind::RParen) {
                    return Err(Error::syntax(self.here(), "expected ')'"));
                }
                Ok(inner)
            }
            Some(t) => Err(Error::syntax(t.pos, format!("unexpected {}", t.kind.describe()))),
            None => Err(Error::syntax(pos, "unexpected end of input")),
        }
    }
}
