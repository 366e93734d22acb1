//! Expression parser.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! expr     := ['-'] term (('+'|'-') term)*
//! term     := factor ('*' factor)*
//! factor   := primary ('^' nat)*
//! primary  := rational | 'a' | 'ad' | '{' polyexpr '}' '_' order | '(' expr ')'
//! order    := signed | 'N' | 'A' | 'W' | '{' signed '}'
//! polyexpr := ['-'] polyterm (('+'|'-') polyterm)*
//! polyterm := polyfactor (['*'] polyfactor)*          (juxtaposition = product)
//! polyfactor := polyprimary ('^' nat)*
//! polyprimary := rational | 'a' | 'ad' | '(' polyexpr ')'
//! rational := nat ['/' nat];  signed := ['-'] rational
//! ```
//!
//! `ad` is the ASCII spelling of the creation operator; `N`, `A`, `W` name
//! the normal, anti-normal and Weyl ordering parameters. Inside ordering
//! braces the symbols commute, so the content parses into a [`SymbolPoly`];
//! outside, products are noncommutative sequences.

use std::fmt;

use got_core::algebra::{Generator, OperatorExpr, OrderParam, OrderedBlock, SymbolPoly};
use got_core::rational::{rat, Rational};
use num_bigint::BigInt;
use num_traits::Zero;

/// A syntax error with the byte position it was found at.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at byte {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LBrace,
    RBrace,
    LParen,
    RParen,
    Under,
}

fn lex(input: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = input.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '{' => Tok::LBrace,
            '}' => Tok::RBrace,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '_' => Tok::Under,
            '0'..='9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((Tok::Num(input[start..i].to_string()), start));
                continue;
            }
            'a'..='z' | 'A'..='Z' => {
                while i < bytes.len() && (bytes[i] as char).is_ascii_alphabetic() {
                    i += 1;
                }
                out.push((Tok::Ident(input[start..i].to_string()), start));
                continue;
            }
            other => {
                return Err(ParseError {
                    position: start,
                    message: format!("unexpected character `{other}`"),
                })
            }
        };
        out.push((tok, start));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    input_len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn here(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|(_, p)| *p)
            .unwrap_or(self.input_len)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), ParseError> {
        let pos = self.here();
        match self.next() {
            Some(t) if t == want => Ok(()),
            _ => Err(ParseError {
                position: pos,
                message: format!("expected {what}"),
            }),
        }
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            position: self.here(),
            message: message.into(),
        })
    }

    fn parse_nat_u32(&mut self) -> Result<u32, ParseError> {
        let pos = self.here();
        match self.next() {
            Some(Tok::Num(d)) => d.parse::<u32>().map_err(|_| ParseError {
                position: pos,
                message: "exponent overflow".into(),
            }),
            _ => Err(ParseError {
                position: pos,
                message: "expected a non-negative integer".into(),
            }),
        }
    }

    /// `nat ['/' nat]`, already positioned on the numerator.
    fn parse_rational_tail(&mut self) -> Result<Rational, ParseError> {
        let pos = self.here();
        let num = match self.next() {
            Some(Tok::Num(d)) => d.parse::<BigInt>().expect("digits parse"),
            _ => {
                return Err(ParseError {
                    position: pos,
                    message: "expected a number".into(),
                })
            }
        };
        if self.peek() == Some(&Tok::Slash) {
            self.next();
            let dpos = self.here();
            match self.next() {
                Some(Tok::Num(d)) => {
                    let den = d.parse::<BigInt>().expect("digits parse");
                    if den.is_zero() {
                        return Err(ParseError {
                            position: dpos,
                            message: "zero denominator".into(),
                        });
                    }
                    Ok(Rational::new(num, den))
                }
                _ => Err(ParseError {
                    position: dpos,
                    message: "expected a denominator".into(),
                }),
            }
        } else {
            Ok(Rational::from_integer(num))
        }
    }

    fn parse_signed_rational(&mut self) -> Result<Rational, ParseError> {
        if self.peek() == Some(&Tok::Minus) {
            self.next();
            Ok(-self.parse_rational_tail()?)
        } else {
            self.parse_rational_tail()
        }
    }

    fn parse_order(&mut self) -> Result<OrderParam, ParseError> {
        match self.peek() {
            Some(Tok::LBrace) => {
                self.next();
                let r = self.parse_signed_rational()?;
                self.expect(Tok::RBrace, "`}` after the order value")?;
                Ok(OrderParam::new(r))
            }
            Some(Tok::Ident(name)) => {
                let name = name.clone();
                let pos = self.here();
                self.next();
                match name.as_str() {
                    "N" => Ok(OrderParam::normal()),
                    "A" => Ok(OrderParam::antinormal()),
                    "W" => Ok(OrderParam::weyl()),
                    other => Err(ParseError {
                        position: pos,
                        message: format!("unknown order name `{other}` (expected N, A, W or a rational)"),
                    }),
                }
            }
            Some(Tok::Minus | Tok::Num(_)) => Ok(OrderParam::new(self.parse_signed_rational()?)),
            _ => self.error("expected an ordering parameter"),
        }
    }

    fn parse_expr(&mut self) -> Result<OperatorExpr, ParseError> {
        let mut acc = if self.peek() == Some(&Tok::Minus) {
            self.next();
            self.parse_term()?.scale(&rat(-1))
        } else {
            self.parse_term()?
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.next();
                    acc = acc.add(&self.parse_term()?);
                }
                Some(Tok::Minus) => {
                    self.next();
                    acc = acc.sub(&self.parse_term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn parse_term(&mut self) -> Result<OperatorExpr, ParseError> {
        let mut acc = self.parse_factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.next();
            acc = acc.mul(&self.parse_factor()?);
        }
        Ok(acc)
    }

    fn parse_factor(&mut self) -> Result<OperatorExpr, ParseError> {
        let mut acc = self.parse_primary()?;
        while self.peek() == Some(&Tok::Caret) {
            self.next();
            acc = acc.pow(self.parse_nat_u32()?);
        }
        Ok(acc)
    }

    fn parse_primary(&mut self) -> Result<OperatorExpr, ParseError> {
        match self.peek() {
            Some(Tok::Num(_)) => Ok(OperatorExpr::scalar(self.parse_rational_tail()?)),
            Some(Tok::Ident(name)) => {
                let name = name.clone();
                let pos = self.here();
                self.next();
                match name.as_str() {
                    "a" => Ok(OperatorExpr::generator(Generator::A)),
                    "ad" => Ok(OperatorExpr::generator(Generator::AD)),
                    other => Err(ParseError {
                        position: pos,
                        message: format!("unknown symbol `{other}` (expected a or ad)"),
                    }),
                }
            }
            Some(Tok::LBrace) => {
                self.next();
                let poly = self.parse_polyexpr()?;
                self.expect(Tok::RBrace, "`}` closing the ordering braces")?;
                self.expect(Tok::Under, "`_` and an ordering parameter after `}`")?;
                let order = self.parse_order()?;
                Ok(OperatorExpr::block(OrderedBlock::new(poly, order)))
            }
            Some(Tok::LParen) => {
                self.next();
                let e = self.parse_expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            _ => self.error("expected a number, `a`, `ad`, `{`, or `(`"),
        }
    }

    fn parse_polyexpr(&mut self) -> Result<SymbolPoly, ParseError> {
        let mut acc = if self.peek() == Some(&Tok::Minus) {
            self.next();
            self.parse_polyterm()?.neg()
        } else {
            self.parse_polyterm()?
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.next();
                    acc = acc.add(&self.parse_polyterm()?);
                }
                Some(Tok::Minus) => {
                    self.next();
                    acc = acc.sub(&self.parse_polyterm()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn starts_polyfactor(&self) -> bool {
        matches!(
            self.peek(),
            Some(Tok::Num(_) | Tok::Ident(_) | Tok::LParen)
        )
    }

    fn parse_polyterm(&mut self) -> Result<SymbolPoly, ParseError> {
        let mut acc = self.parse_polyfactor()?;
        loop {
            if self.peek() == Some(&Tok::Star) {
                self.next();
                acc = acc.mul(&self.parse_polyfactor()?);
            } else if self.starts_polyfactor() {
                acc = acc.mul(&self.parse_polyfactor()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn parse_polyfactor(&mut self) -> Result<SymbolPoly, ParseError> {
        let mut acc = self.parse_polyprimary()?;
        while self.peek() == Some(&Tok::Caret) {
            self.next();
            acc = acc.pow(self.parse_nat_u32()?);
        }
        Ok(acc)
    }

    fn parse_polyprimary(&mut self) -> Result<SymbolPoly, ParseError> {
        match self.peek() {
            Some(Tok::Num(_)) => Ok(SymbolPoly::constant(self.parse_rational_tail()?)),
            Some(Tok::Ident(name)) => {
                let name = name.clone();
                let pos = self.here();
                self.next();
                match name.as_str() {
                    "a" => Ok(SymbolPoly::generator(Generator::A)),
                    "ad" => Ok(SymbolPoly::generator(Generator::AD)),
                    other => Err(ParseError {
                        position: pos,
                        message: format!("unknown symbol `{other}` inside ordering braces"),
                    }),
                }
            }
            Some(Tok::LParen) => {
                self.next();
                let p = self.parse_polyexpr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(p)
            }
            _ => self.error("expected a number, `a`, `ad`, or `(` inside ordering braces"),
        }
    }
}

/// Parses a full operator expression.
pub fn parse_expr(input: &str) -> Result<OperatorExpr, ParseError> {
    let mut p = Parser {
        toks: lex(input)?,
        pos: 0,
        input_len: input.len(),
    };
    let e = p.parse_expr()?;
    if p.peek().is_some() {
        return p.error("trailing input after expression");
    }
    Ok(e)
}

/// Parses a standalone ordering parameter (`N`, `A`, `W`, `p/q`, `-p/q`,
/// or `{p/q}`) — the format of the `--target` flag.
pub fn parse_order(input: &str) -> Result<OrderParam, ParseError> {
    let mut p = Parser {
        toks: lex(input)?,
        pos: 0,
        input_len: input.len(),
    };
    let o = p.parse_order()?;
    if p.peek().is_some() {
        return p.error("trailing input after the ordering parameter");
    }
    Ok(o)
}
