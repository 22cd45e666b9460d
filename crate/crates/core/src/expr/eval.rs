use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Signed, ToPrimitive};
use thiserror::Error;

use super::{BinOp, Expr, ExprKind, Span};
use crate::families::series::{catalan, fibonacci, motzkin, schroder, tree};
use crate::families::{make_family, FamilyError};
use crate::fps::{solve_fixpoint, Rat, Series, SeriesError};
use crate::laurent::{LaurentPoly, LaurentRational};
use crate::theorems::{ogf_root, pseudo_inverse, TheoremError};

/// Why evaluation failed.
#[derive(Clone, Debug, Error, PartialEq)]
pub enum EvalErrorKind {
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("unknown function `{0}`")]
    UnknownFunction(String),
    #[error("{0}")]
    BadArgument(String),
    #[error("family `{family}` has no series `{part}`")]
    UnknownPart { family: String, part: String },
    #[error("not a Laurent rational function of z")]
    NotLaurent,
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Theorem(#[from] TheoremError),
}

/// Evaluation error located at a span of the source.
#[derive(Clone, Debug, Error, PartialEq)]
#[error("{kind} (at {}..{})", span.start, span.end)]
pub struct EvalError {
    pub kind: EvalErrorKind,
    pub span: Span,
}

type Res<T> = Result<T, EvalError>;

fn err<T>(span: Span, kind: impl Into<EvalErrorKind>) -> Res<T> {
    Err(EvalError {
        kind: kind.into(),
        span,
    })
}

fn at<E: Into<EvalErrorKind>>(span: Span) -> impl FnOnce(E) -> EvalError {
    move |e| EvalError {
        kind: e.into(),
        span,
    }
}

/// Evaluates an expression as a power series truncated at `order`.
///
/// Operations that lose precision, such as division by a series with positive
/// valuation, return a series of correspondingly lower order.
pub fn eval_expr(expr: &Expr, order: usize) -> Result<Series, EvalError> {
    let mut ev = Evaluator {
        order,
        bound: BTreeMap::new(),
        cache: HashMap::new(),
    };
    Ok(ev.eval(expr, order)?.truncate(order))
}

struct Evaluator {
    order: usize,
    bound: BTreeMap<String, Series>,
    cache: HashMap<*const Expr, Series>,
}

impl Evaluator {
    fn free_of_bound(&self, e: &Expr) -> bool {
        self.bound.keys().all(|v| !e.mentions(v))
    }

    fn eval(&mut self, e: &Expr, n: usize) -> Res<Series> {
        if self.bound.is_empty() || !self.free_of_bound(e) {
            return self.eval_node(e, n);
        }
        let key = e as *const Expr;
        if let Some(s) = self.cache.get(&key) {
            return Ok(s.truncate(n));
        }
        let full = self.eval_node(e, self.order)?;
        let out = full.truncate(n);
        self.cache.insert(key, full);
        Ok(out)
    }

    fn eval_node(&mut self, e: &Expr, n: usize) -> Res<Series> {
        let sp = e.span;
        match &e.kind {
            ExprKind::Num(r) => Ok(Series::constant(r.clone(), n)),
            ExprKind::Z => Ok(Series::z(n.max(1)).truncate(n)),
            ExprKind::Name(name) => self.name(name, n, sp),
            ExprKind::Family { name, params, part } => {
                let p = params.iter().cloned().collect();
                let part = part.as_deref().unwrap_or("g");
                let build_order = if part == "B" { 2 * n + 2 } else { n };
                let inst = make_family(name, &p, build_order).map_err(at(sp))?;
                inst.series(part).map(|s| s.truncate(n)).ok_or_else(|| EvalError {
                    kind: EvalErrorKind::UnknownPart {
                        family: name.clone(),
                        part: part.into(),
                    },
                    span: sp,
                })
            }
            ExprKind::Neg(a) => Ok(-&self.eval(a, n)?),
            ExprKind::Binary(op, a, b) => {
                let x = self.eval(a, n)?;
                let y = self.eval(b, n)?;
                match op {
                    BinOp::Add => Ok(&x + &y),
                    BinOp::Sub => Ok(&x - &y),
                    BinOp::Mul => Ok(&x * &y),
                    BinOp::Div => x.div(&y).map_err(at(sp)),
                    BinOp::Compose => x.compose(&y).map_err(at(b.span)),
                }
            }
            ExprKind::Pow(a, p) => {
                let x = self.eval(a, n)?;
                if p.is_integer() {
                    let k = p.to_integer().to_i64().ok_or_else(|| EvalError {
                        kind: EvalErrorKind::BadArgument("exponent out of range".into()),
                        span: sp,
                    })?;
                    x.pow_int(k).map_err(at(sp))
                } else {
                    x.pow_rational(p).map_err(at(sp))
                }
            }
            ExprKind::Call { name, args } => self.call(name, args, n, sp),
            ExprKind::Solve { var, body } => self.solve(var, body, n, sp),
        }
    }

    fn name(&self, name: &str, n: usize, sp: Span) -> Res<Series> {
        if let Some(s) = self.bound.get(name) {
            return Ok(s.truncate(n));
        }
        let s = match name {
            "C" => catalan(n),
            "m" => motzkin(n),
            "mt" => ogf_root(&LaurentRational::from_laurent(LaurentPoly::from_int_terms(&[(0, 1), (1, -1), (2, 1)])), n),
            "r" => schroder(n),
            "F" => Ok(fibonacci(n)),
            other => {
                let inst = make_family(other, &BTreeMap::new(), n).map_err(|e| match e {
                    FamilyError::UnknownFamily(_) => EvalError {
                        kind: EvalErrorKind::UnknownName(other.into()),
                        span: sp,
                    },
                    e => EvalError {
                        kind: e.into(),
                        span: sp,
                    },
                })?;
                return Ok(inst.g);
            }
        };
        s.map_err(at(sp))
    }

    fn call(&mut self, name: &str, args: &[Expr], n: usize, sp: Span) -> Res<Series> {
        let arity = |k: usize| -> Res<()> {
            if args.len() == k {
                Ok(())
            } else {
                err(sp, EvalErrorKind::BadArgument(format!("`{name}` takes {k} argument(s), found {}", args.len())))
            }
        };
        match name {
            "rev" => {
                arity(1)?;
                self.eval(&args[0], n)?.comp_inverse().map_err(at(sp))
            }
            "phat" => {
                arity(1)?;
                pseudo_inverse(&self.eval(&args[0], n)?).map_err(at(sp))
            }
            "sqrt" => {
                arity(1)?;
                self.eval(&args[0], n)?.sqrt().map_err(at(sp))
            }
            "exp" => {
                arity(1)?;
                self.eval(&args[0], n)?.exp().map_err(at(sp))
            }
            "log" => {
                arity(1)?;
                self.eval(&args[0], n)?.log().map_err(at(sp))
            }
            "aerate" => {
                arity(2)?;
                let q = int_literal(&args[1])
                    .filter(|q| *q >= 1)
                    .ok_or_else(|| EvalError {
                        kind: EvalErrorKind::BadArgument("aerate needs a positive integer factor".into()),
                        span: args[1].span,
                    })? as usize;
                let inner = self.eval(&args[0], n / q)?;
                Ok(inner.aerate(q).truncate(n))
            }
            "T" => {
                arity(1)?;
                let k = int_literal(&args[0]).ok_or_else(|| EvalError {
                    kind: EvalErrorKind::BadArgument("T needs an integer index".into()),
                    span: args[0].span,
                })?;
                tree(k, n).map_err(at(sp))
            }
            other => err(sp, EvalErrorKind::UnknownFunction(other.into())),
        }
    }

    fn solve(&mut self, var: &str, body: &Expr, n: usize, sp: Span) -> Res<Series> {
        let seed = {
            let saved = self.bound.insert(var.to_string(), Series::zero(0));
            let c = self.eval(body, 0);
            restore(&mut self.bound, var, saved);
            c?
        };
        let saved = self.bound.remove(var);
        let this = std::cell::RefCell::new(std::mem::take(self));
        let result = solve_fixpoint(
            |g| {
                let mut ev = this.borrow_mut();
                ev.bound.insert(var.to_string(), g.clone());
                let out = ev.eval(body, g.order());
                ev.bound.remove(var);
                out.map_err(|e| match e.kind {
                    EvalErrorKind::Series(s) => s,
                    _ => SeriesError::NotContracting { order: g.order() },
                })
            },
            &seed,
            n,
        );
        *self = this.into_inner();
        restore(&mut self.bound, var, saved);
        result.map_err(at(sp))
    }
}

impl Default for Evaluator {
    fn default() -> Self {
        Evaluator {
            order: 0,
            bound: BTreeMap::new(),
            cache: HashMap::new(),
        }
    }
}

fn restore(bound: &mut BTreeMap<String, Series>, var: &str, saved: Option<Series>) {
    match saved {
        Some(s) => {
            bound.insert(var.to_string(), s);
        }
        None => {
            bound.remove(var);
        }
    }
}

fn int_literal(e: &Expr) -> Option<i64> {
    match &e.kind {
        ExprKind::Num(r) if r.is_integer() => r.to_integer().to_i64(),
        ExprKind::Neg(a) => int_literal(a).map(|v| -v),
        _ => None,
    }
}

/// Converts an expression built from `z`, integers, `+ - * /` and integer
/// powers into a Laurent rational function.
pub fn to_laurent(expr: &Expr) -> Result<LaurentRational, EvalError> {
    let sp = expr.span;
    let not = || EvalError {
        kind: EvalErrorKind::NotLaurent,
        span: sp,
    };
    match &expr.kind {
        ExprKind::Num(r) => Ok(LaurentRational::from_laurent(LaurentPoly::constant(r.clone()))),
        ExprKind::Z => Ok(LaurentRational::from_laurent(LaurentPoly::monomial(Rat::one(), 1))),
        ExprKind::Neg(a) => Ok(to_laurent(a)?.neg()),
        ExprKind::Binary(op, a, b) => {
            let x = to_laurent(a)?;
            let y = to_laurent(b)?;
            match op {
                BinOp::Add => Ok(x.add(&y)),
                BinOp::Sub => Ok(x.add(&y.neg())),
                BinOp::Mul => Ok(x.mul(&y)),
                BinOp::Div => x.div(&y).map_err(|_| EvalError {
                    kind: EvalErrorKind::BadArgument("division by zero".into()),
                    span: sp,
                }),
                BinOp::Compose => Err(not()),
            }
        }
        ExprKind::Pow(a, p) if p.is_integer() => {
            let k = p.to_integer().to_i64().filter(|k| k.abs() <= 1 << 16).ok_or_else(not)?;
            let x = to_laurent(a)?;
            if k.is_negative() && x.num().is_zero() {
                return err(sp, EvalErrorKind::BadArgument("zero to a negative power".into()));
            }
            x.powi(k).map_err(|_| not())
        }
        _ => Err(not()),
    }
}
