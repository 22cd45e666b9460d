use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use super::lexer::{tokenize, Tok};
use super::{BinOp, Expr, ExprKind, Span};
use crate::fps::Rat;

/// Syntax error with the byte offset of the offending token.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub expected: Vec<String>,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "parse error at offset {}: expected {}, found {}",
            self.offset,
            self.expected.join(" or "),
            self.found
        )
    }
}

/// Parses an expression.
pub fn parse_expr(src: &str) -> Result<Expr, ParseError> {
    let mut p = Parser {
        toks: tokenize(src)?,
        pos: 0,
    };
    let e = p.expr()?;
    p.expect(Tok::Eof, "end of input")?;
    Ok(e)
}

struct Parser {
    toks: Vec<(Tok, Span)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].0
    }

    fn span(&self) -> Span {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, Span) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        ParseError {
            offset: self.span().start,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().describe(),
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<Span, ParseError> {
        if *self.peek() == tok {
            Ok(self.bump().1)
        } else {
            Err(self.error(&[what]))
        }
    }

    fn ident(&mut self) -> Result<(String, Span), ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                let sp = self.bump().1;
                Ok((s, sp))
            }
            _ => Err(self.error(&["a name"])),
        }
    }

    fn int(&mut self) -> Result<BigInt, ParseError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(n)
            }
            _ => Err(self.error(&["an integer"])),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        if matches!(self.peek(), Tok::Ident(s) if s == "solve") {
            let start = self.bump().1;
            let (var, _) = self.ident()?;
            self.expect(Tok::Colon, "`:`")?;
            let (lhs, lhs_span) = self.ident()?;
            if lhs != var {
                return Err(ParseError {
                    offset: lhs_span.start,
                    expected: vec![format!("`{var}`")],
                    found: format!("name `{lhs}`"),
                });
            }
            self.expect(Tok::Eq, "`=`")?;
            let body = self.expr()?;
            let span = start.join(body.span);
            return Ok(Expr::new(
                ExprKind::Solve {
                    var,
                    body: Box::new(body),
                },
                span,
            ));
        }
        self.compose()
    }

    fn compose(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.sum()?;
        while *self.peek() == Tok::At {
            self.bump();
            let rhs = self.sum()?;
            lhs = binary(BinOp::Compose, lhs, rhs);
        }
        Ok(lhs)
    }

    fn sum(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.product()?;
        loop {
            let op = match self.peek() {
                Tok::Plus => BinOp::Add,
                Tok::Minus => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.product()?;
            lhs = binary(op, lhs, rhs);
        }
    }

    fn product(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Tok::Star => BinOp::Mul,
                Tok::Slash => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.unary()?;
            lhs = binary(op, lhs, rhs);
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if *self.peek() == Tok::Minus {
            let start = self.bump().1;
            let inner = self.unary()?;
            let span = start.join(inner.span);
            return Ok(Expr::new(ExprKind::Neg(Box::new(inner)), span));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.postfix()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let (e, end) = self.exponent()?;
        let span = base.span.join(end);
        Ok(Expr::new(ExprKind::Pow(Box::new(base), e), span))
    }

    fn exponent(&mut self) -> Result<(Rat, Span), ParseError> {
        match self.peek() {
            Tok::Int(_) => {
                let sp = self.span();
                Ok((Rat::from_integer(self.int()?), sp))
            }
            Tok::Minus => {
                self.bump();
                let sp = self.span();
                Ok((-Rat::from_integer(self.int()?), sp))
            }
            Tok::LParen => {
                self.bump();
                let neg = if *self.peek() == Tok::Minus {
                    self.bump();
                    true
                } else {
                    false
                };
                let num = self.int()?;
                let den = if *self.peek() == Tok::Slash {
                    self.bump();
                    let at = self.span().start;
                    let d = self.int()?;
                    if d.is_zero() {
                        return Err(ParseError {
                            offset: at,
                            expected: vec!["a nonzero denominator".into()],
                            found: "integer 0".into(),
                        });
                    }
                    d
                } else {
                    BigInt::from(1)
                };
                let close = self.expect(Tok::RParen, "`)`")?;
                let r = Rat::new(num, den);
                Ok((if neg { -r } else { r }, close))
            }
            _ => Err(self.error(&["an integer", "`-`", "`(`"])),
        }
    }

    fn postfix(&mut self) -> Result<Expr, ParseError> {
        let prim = self.primary()?;
        if *self.peek() != Tok::Dot {
            return Ok(prim);
        }
        let (name, params) = match prim.kind {
            ExprKind::Name(n) => (n, Vec::new()),
            ExprKind::Family {
                name,
                params,
                part: None,
            } => (name, params),
            _ => return Err(self.error(&["an operator"])),
        };
        self.bump();
        let (part, end) = self.ident()?;
        Ok(Expr::new(
            ExprKind::Family {
                name,
                params,
                part: Some(part),
            },
            prim.span.join(end),
        ))
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        let start = self.span();
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(Expr::new(ExprKind::Num(Rat::from_integer(n)), start))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                let end = self.expect(Tok::RParen, "`)`")?;
                Ok(Expr {
                    kind: inner.kind,
                    span: start.join(end),
                })
            }
            Tok::Ident(name) if name == "solve" => Err(self.error(&["an operand"])),
            Tok::Ident(name) => {
                self.bump();
                match self.peek() {
                    Tok::LParen => self.call(name, start),
                    Tok::LBracket => self.family(name, start),
                    _ if name == "z" => Ok(Expr::new(ExprKind::Z, start)),
                    _ => Ok(Expr::new(ExprKind::Name(name), start)),
                }
            }
            _ => Err(self.error(&["an integer", "a name", "`(`", "`-`"])),
        }
    }

    fn call(&mut self, name: String, start: Span) -> Result<Expr, ParseError> {
        self.bump();
        let mut args = Vec::new();
        if *self.peek() != Tok::RParen {
            loop {
                args.push(self.expr()?);
                if *self.peek() == Tok::Comma {
                    self.bump();
                } else {
                    break;
                }
            }
        }
        let end = self.expect(Tok::RParen, "`)` or `,`")?;
        Ok(Expr::new(ExprKind::Call { name, args }, start.join(end)))
    }

    fn family(&mut self, name: String, start: Span) -> Result<Expr, ParseError> {
        self.bump();
        let mut params = Vec::new();
        while *self.peek() != Tok::RBracket {
            let (key, _) = self.ident()?;
            self.expect(Tok::Eq, "`=`")?;
            let neg = if *self.peek() == Tok::Minus {
                self.bump();
                true
            } else {
                false
            };
            let num = self.int()?;
            let den = if *self.peek() == Tok::Slash && matches!(self.peek_at(1), Tok::Int(_)) {
                self.bump();
                let at = self.span().start;
                let d = self.int()?;
                if d.is_zero() {
                    return Err(ParseError {
                        offset: at,
                        expected: vec!["a nonzero denominator".into()],
                        found: "integer 0".into(),
                    });
                }
                d
            } else {
                BigInt::from(1)
            };
            let v = Rat::new(num, den);
            params.push((key, if neg { -v } else { v }));
            if *self.peek() == Tok::Comma {
                self.bump();
            } else {
                break;
            }
        }
        let end = self.expect(Tok::RBracket, "`]` or `,`")?;
        Ok(Expr::new(
            ExprKind::Family {
                name,
                params,
                part: None,
            },
            start.join(end),
        ))
    }
}

fn binary(op: BinOp, lhs: Expr, rhs: Expr) -> Expr {
    let span = lhs.span.join(rhs.span);
    Expr::new(ExprKind::Binary(op, Box::new(lhs), Box::new(rhs)), span)
}
