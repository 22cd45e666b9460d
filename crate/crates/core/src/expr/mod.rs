//! A small expression language for series and `gamma` functions.
//!
//! ```text
//! expr    := "solve" NAME ":" NAME "=" expr | compose
//! compose := sum ("@" sum)*
//! sum     := product (("+" | "-") product)*
//! product := unary (("*" | "/") unary)*
//! unary   := "-" unary | power
//! power   := postfix ("^" exponent)?
//! exponent:= INT | "-" INT | "(" "-"? INT ("/" INT)? ")"
//! postfix := primary ("." NAME)?
//! primary := INT | "z" | NAME | NAME "(" args ")" | NAME "[" params "]" | "(" expr ")"
//! ```
//!
//! `a @ b` is the composition `a(b)`. Functions: `rev` (compositional
//! inverse), `phat` (pseudo-inverse), `sqrt`, `exp`, `log`, `aerate(e, q)`
//! and `T(k)`. Names: `C`, `m`, `mt`, `r`, `F`, or any catalog family, with
//! optional parameters and a part selector such as `ct_neg[n=3].B`.

mod eval;
mod lexer;
mod parser;

use std::fmt;

use crate::fps::Rat;

pub use eval::{eval_expr, to_laurent, EvalError, EvalErrorKind};
pub use parser::{parse_expr, ParseError};

/// Byte range in the source text.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    fn join(self, other: Span) -> Span {
        Span {
            start: self.start.min(other.start),
            end: self.end.max(other.end),
        }
    }
}

/// Binary operators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Compose,
}

impl BinOp {
    fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
            BinOp::Compose => "@",
        }
    }
}

/// Node payloads.
#[derive(Clone, Debug, PartialEq)]
pub enum ExprKind {
    /// Integer literal.
    Num(Rat),
    /// The variable `z`.
    Z,
    /// A bound variable, a named series or a family with default parameters.
    Name(String),
    /// Function application.
    Call { name: String, args: Vec<Expr> },
    /// Family reference with parameters and an optional part.
    Family {
        name: String,
        params: Vec<(String, Rat)>,
        part: Option<String>,
    },
    Neg(Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Rat),
    /// `solve g: g = body`.
    Solve { var: String, body: Box<Expr> },
}

/// Expression tree node. Equality ignores spans.
#[derive(Clone, Debug)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Expr {
    fn new(kind: ExprKind, span: Span) -> Self {
        Expr { kind, span }
    }

    /// Whether `name` occurs free in the expression.
    pub fn mentions(&self, name: &str) -> bool {
        match &self.kind {
            ExprKind::Num(_) | ExprKind::Z | ExprKind::Family { .. } => false,
            ExprKind::Name(n) => n == name,
            ExprKind::Call { args, .. } => args.iter().any(|a| a.mentions(name)),
            ExprKind::Neg(a) | ExprKind::Pow(a, _) => a.mentions(name),
            ExprKind::Binary(_, a, b) => a.mentions(name) || b.mentions(name),
            ExprKind::Solve { var, body } => var != name && body.mentions(name),
        }
    }
}

fn fmt_rat(r: &Rat, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.is_integer() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

/// Fully parenthesized form that parses back to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ExprKind::Num(r) => fmt_rat(r, f),
            ExprKind::Z => write!(f, "z"),
            ExprKind::Name(n) => write!(f, "{n}"),
            ExprKind::Call { name, args } => {
                write!(f, "{name}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
            ExprKind::Family { name, params, part } => {
                write!(f, "{name}[")?;
                for (i, (k, v)) in params.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{k}=")?;
                    fmt_rat(v, f)?;
                }
                write!(f, "]")?;
                if let Some(p) = part {
                    write!(f, ".{p}")?;
                }
                Ok(())
            }
            ExprKind::Neg(a) => write!(f, "(-{a})"),
            ExprKind::Binary(op, a, b) => write!(f, "({a} {} {b})", op.symbol()),
            ExprKind::Pow(a, e) => {
                if e.is_integer() && *e.numer() >= 0.into() {
                    write!(f, "({a}^{})", e.numer())
                } else {
                    write!(f, "({a}^(")?;
                    fmt_rat(e, f)?;
                    write!(f, "))")
                }
            }
            ExprKind::Solve { var, body } => write!(f, "(solve {var}: {var} = {body})"),
        }
    }
}
