use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::kernel::{Rational, SeriesFunction};

/// Position of a statement in its source file (1-based).
#[derive(Debug, Clone, Copy, Default)]
pub struct Span {
    pub line: usize,
    pub col: usize,
}

// Spans never take part in structural equality.
impl PartialEq for Span {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}
impl Eq for Span {}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

/// Expression tree of the definition language. Parentheses are not kept;
/// the printer re-inserts them where precedence requires.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Num(Rational),
    /// The deformation parameter.
    Z,
    Gen(String),
    Macro(String),
    /// `f(scale * z * arg)`; for [`SeriesFunction::SinhOverZ`] the source
    /// spelling is `sinhz(scale * arg)`.
    Func { f: SeriesFunction, scale: Rational, arg: String },
    Neg(Box<Expr>),
    Sum(Vec<Expr>),
    Product(Vec<Expr>),
    /// Division of the enclosing product by an integer; only valid as a
    /// product factor.
    Recip(BigInt),
    Pow(Box<Expr>, u32),
    Bracket(Box<Expr>, Box<Expr>),
    Tensor(Vec<Expr>),
}

impl Expr {
    pub fn int(n: i64) -> Self {
        Expr::Num(Rational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Expr::int(0)
    }

    pub fn is_literal_zero(&self) -> bool {
        matches!(self, Expr::Num(q) if num_traits::Zero::is_zero(q))
    }

    /// Top-level summands, with their sign folded into `Neg`.
    pub fn summands(&self) -> Vec<Expr> {
        match self {
            Expr::Sum(ts) => ts.clone(),
            other => vec![other.clone()],
        }
    }

    pub fn from_summands(mut terms: Vec<Expr>) -> Expr {
        terms.retain(|t| !t.is_literal_zero());
        match terms.len() {
            0 => Expr::zero(),
            1 => terms.pop().unwrap(),
            _ => Expr::Sum(terms),
        }
    }

    pub fn negated(&self) -> Expr {
        match self {
            Expr::Neg(inner) => (**inner).clone(),
            other => Expr::Neg(Box::new(other.clone())),
        }
    }

    /// Every generator name referenced (macros are not expanded).
    pub fn generators(&self, out: &mut Vec<String>) {
        match self {
            Expr::Gen(g) => out.push(g.clone()),
            Expr::Func { arg, .. } => out.push(arg.clone()),
            Expr::Neg(e) | Expr::Pow(e, _) => e.generators(out),
            Expr::Sum(v) | Expr::Product(v) | Expr::Tensor(v) => v.iter().for_each(|e| e.generators(out)),
            Expr::Bracket(a, b) => {
                a.generators(out);
                b.generators(out);
            }
            Expr::Num(_) | Expr::Z | Expr::Macro(_) | Expr::Recip(_) => {}
        }
    }

    pub fn macros(&self, out: &mut Vec<String>) {
        match self {
            Expr::Macro(m) => out.push(m.clone()),
            Expr::Neg(e) | Expr::Pow(e, _) => e.macros(out),
            Expr::Sum(v) | Expr::Product(v) | Expr::Tensor(v) => v.iter().for_each(|e| e.macros(out)),
            Expr::Bracket(a, b) => {
                a.macros(out);
                b.macros(out);
            }
            _ => {}
        }
    }

    pub fn is_series_function(&self) -> bool {
        match self {
            Expr::Func { .. } => true,
            Expr::Pow(e, _) => e.is_series_function(),
            _ => false,
        }
    }

    /// Replaces the listed generators (and macros) by zero and simplifies.
    pub fn substitute_zero(&self, gens: &[String], macros: &[String]) -> Expr {
        use Expr::*;
        match self {
            Gen(g) if gens.contains(g) => Expr::zero(),
            Macro(m) if macros.contains(m) => Expr::zero(),
            Func { arg, .. } if gens.contains(arg) => {
                // f(0): exp and cosh give 1, the odd functions vanish.
                match self {
                    Func { f: SeriesFunction::Exp | SeriesFunction::Cosh, .. } => Expr::int(1),
                    _ => Expr::zero(),
                }
            }
            Neg(e) => {
                let inner = e.substitute_zero(gens, macros);
                if inner.is_literal_zero() {
                    Expr::zero()
                } else {
                    Neg(Box::new(inner))
                }
            }
            Pow(e, n) => {
                let inner = e.substitute_zero(gens, macros);
                if inner.is_literal_zero() {
                    Expr::zero()
                } else {
                    Pow(Box::new(inner), *n)
                }
            }
            Sum(v) => Expr::from_summands(v.iter().map(|e| e.substitute_zero(gens, macros)).collect()),
            Product(v) | Tensor(v) => {
                let parts: Vec<Expr> = v.iter().map(|e| e.substitute_zero(gens, macros)).collect();
                if parts.iter().any(Expr::is_literal_zero) {
                    Expr::zero()
                } else if matches!(self, Product(_)) {
                    Product(parts)
                } else {
                    Tensor(parts)
                }
            }
            Bracket(a, b) => {
                let (a, b) = (a.substitute_zero(gens, macros), b.substitute_zero(gens, macros));
                if a.is_literal_zero() || b.is_literal_zero() {
                    Expr::zero()
                } else {
                    Bracket(Box::new(a), Box::new(b))
                }
            }
            other => other.clone(),
        }
    }

    /// Renames generators according to `map` (names absent from it are kept).
    pub fn rename(&self, map: &dyn Fn(&str) -> String) -> Expr {
        use Expr::*;
        match self {
            Gen(g) => Gen(map(g)),
            Func { f, scale, arg } => Func { f: *f, scale: scale.clone(), arg: map(arg) },
            Neg(e) => Neg(Box::new(e.rename(map))),
            Pow(e, n) => Pow(Box::new(e.rename(map)), *n),
            Sum(v) => Sum(v.iter().map(|e| e.rename(map)).collect()),
            Product(v) => Product(v.iter().map(|e| e.rename(map)).collect()),
            Tensor(v) => Tensor(v.iter().map(|e| e.rename(map)).collect()),
            Bracket(a, b) => Bracket(Box::new(a.rename(map)), Box::new(b.rename(map))),
            other => other.clone(),
        }
    }
}

#[derive(Clone, Copy, PartialEq, PartialOrd)]
enum Prec {
    Sum,
    Tensor,
    Product,
    Unary,
    Atom,
}

fn prec_of(e: &Expr) -> Prec {
    match e {
        Expr::Sum(_) => Prec::Sum,
        Expr::Tensor(_) => Prec::Tensor,
        Expr::Product(_) => Prec::Product,
        Expr::Neg(_) => Prec::Unary,
        Expr::Num(q) if q.is_negative() => Prec::Unary,
        _ => Prec::Atom,
    }
}

fn fmt_at(e: &Expr, min: Prec, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if prec_of(e) < min {
        write!(f, "(")?;
        fmt_expr(e, f)?;
        write!(f, ")")
    } else {
        fmt_expr(e, f)
    }
}

fn fmt_scale(scale: &Rational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if scale.is_negative() {
        write!(f, "-")?;
    }
    let mag = scale.abs();
    if !mag.is_one() {
        if mag.denom().is_one() {
            write!(f, "{}*", mag.numer())?;
        } else {
            write!(f, "{}/{}*", mag.numer(), mag.denom())?;
        }
    }
    Ok(())
}

fn fmt_expr(e: &Expr, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match e {
        Expr::Num(q) => {
            if q.denom().is_one() {
                write!(f, "{}", q.numer())
            } else {
                write!(f, "{}/{}", q.numer(), q.denom())
            }
        }
        Expr::Z => write!(f, "z"),
        Expr::Gen(g) | Expr::Macro(g) => write!(f, "{g}"),
        Expr::Func { f: func, scale, arg } => {
            write!(f, "{}(", func.name())?;
            fmt_scale(scale, f)?;
            if *func == SeriesFunction::SinhOverZ {
                write!(f, "{arg})")
            } else {
                write!(f, "z*{arg})")
            }
        }
        Expr::Neg(inner) => {
            write!(f, "-")?;
            fmt_at(inner, Prec::Product, f)
        }
        Expr::Sum(terms) => {
            for (i, t) in terms.iter().enumerate() {
                match (i, t) {
                    (0, _) => fmt_at(t, Prec::Tensor, f)?,
                    (_, Expr::Neg(inner)) => {
                        write!(f, " - ")?;
                        fmt_at(inner, Prec::Tensor, f)?;
                    }
                    _ => {
                        write!(f, " + ")?;
                        fmt_at(t, Prec::Tensor, f)?;
                    }
                }
            }
            Ok(())
        }
        Expr::Tensor(slots) => {
            for (i, s) in slots.iter().enumerate() {
                if i > 0 {
                    write!(f, " ox ")?;
                }
                fmt_at(s, Prec::Product, f)?;
            }
            Ok(())
        }
        Expr::Product(factors) => {
            for (i, x) in factors.iter().enumerate() {
                match x {
                    Expr::Recip(n) => write!(f, "/{n}")?,
                    _ => {
                        if i > 0 {
                            write!(f, "*")?;
                        }
                        fmt_at(x, Prec::Atom, f)?;
                    }
                }
            }
            Ok(())
        }
        Expr::Recip(n) => write!(f, "1/{n}"),
        Expr::Pow(base, n) => {
            fmt_at(base, Prec::Atom, f)?;
            write!(f, "^{n}")
        }
        Expr::Bracket(a, b) => {
            write!(f, "[")?;
            fmt_expr(a, f)?;
            write!(f, ", ")?;
            fmt_expr(b, f)?;
            write!(f, "]")
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_expr(self, f)
    }
}
