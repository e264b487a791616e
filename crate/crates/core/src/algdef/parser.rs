use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::ast::{Expr, Span};
use super::lexer::{Tok, Token};
use super::{AlgdefError, ErrorKind};
use crate::kernel::{Rational, SeriesFunction};

/// Names visible while parsing an expression.
pub struct Scope<'a> {
    pub generators: &'a HashSet<String>,
    pub series: &'a HashSet<String>,
    pub macros: &'a HashSet<String>,
}

pub struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    scope: Scope<'a>,
}

fn is_reserved(name: &str) -> bool {
    matches!(name, "z" | "ox") || SeriesFunction::from_name(name).is_ok()
}

impl<'a> Parser<'a> {
    pub fn new(toks: Vec<Token>, scope: Scope<'a>) -> Self {
        Parser { toks, pos: 0, scope }
    }

    pub fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    pub fn span(&self) -> Span {
        self.toks[self.pos].span
    }

    pub fn advance(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    pub fn error<T>(&self, msg: impl Into<String>) -> Result<T, AlgdefError> {
        Err(AlgdefError::new(ErrorKind::Syntax(msg.into()), self.span()))
    }

    pub fn expect(&mut self, tok: Tok) -> Result<Span, AlgdefError> {
        if *self.peek() == tok {
            Ok(self.advance().span)
        } else {
            self.error(format!("expected {}, found {}", tok.describe(), self.peek().describe()))
        }
    }

    pub fn expect_end(&mut self) -> Result<(), AlgdefError> {
        if *self.peek() == Tok::End {
            Ok(())
        } else {
            self.error(format!("unexpected {}", self.peek().describe()))
        }
    }

    /// A declared generator name.
    pub fn generator(&mut self) -> Result<(String, Span), AlgdefError> {
        let span = self.span();
        match self.peek().clone() {
            Tok::Ident(name) if self.scope.generators.contains(&name) => {
                self.advance();
                Ok((name, span))
            }
            Tok::Ident(name) => Err(AlgdefError::new(ErrorKind::UndeclaredSymbol(name), span)),
            other => self.error(format!("expected a generator, found {}", other.describe())),
        }
    }

    pub fn ident(&mut self) -> Result<(String, Span), AlgdefError> {
        let span = self.span();
        match self.peek().clone() {
            Tok::Ident(name) => {
                self.advance();
                Ok((name, span))
            }
            other => self.error(format!("expected a name, found {}", other.describe())),
        }
    }

    fn int(&mut self) -> Result<BigInt, AlgdefError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.advance();
                Ok(n)
            }
            other => self.error(format!("expected an integer, found {}", other.describe())),
        }
    }

    pub fn expr(&mut self) -> Result<Expr, AlgdefError> {
        let mut terms = vec![self.tensor()?];
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.advance();
                    terms.push(self.tensor()?);
                }
                Tok::Minus => {
                    self.advance();
                    terms.push(Expr::Neg(Box::new(self.tensor()?)));
                }
                _ => break,
            }
        }
        Ok(if terms.len() == 1 { terms.pop().unwrap() } else { Expr::Sum(terms) })
    }

    fn tensor(&mut self) -> Result<Expr, AlgdefError> {
        let mut slots = vec![self.product()?];
        while matches!(self.peek(), Tok::Ident(s) if s == "ox") {
            self.advance();
            slots.push(self.product()?);
        }
        Ok(if slots.len() == 1 { slots.pop().unwrap() } else { Expr::Tensor(slots) })
    }

    fn product(&mut self) -> Result<Expr, AlgdefError> {
        if *self.peek() == Tok::Minus {
            self.advance();
            return Ok(Expr::Neg(Box::new(self.product()?)));
        }
        let mut factors = vec![self.power()?];
        loop {
            match self.peek() {
                Tok::Star => {
                    self.advance();
                    factors.push(self.power()?);
                }
                Tok::Slash => {
                    self.advance();
                    let span = self.span();
                    let n = self.int()?;
                    if n.is_zero() {
                        return Err(AlgdefError::new(ErrorKind::Syntax("division by zero".into()), span));
                    }
                    factors.push(Expr::Recip(n));
                }
                _ => break,
            }
        }
        Ok(if factors.len() == 1 { factors.pop().unwrap() } else { Expr::Product(factors) })
    }

    fn power(&mut self) -> Result<Expr, AlgdefError> {
        let base = self.atom()?;
        if *self.peek() == Tok::Caret {
            self.advance();
            let span = self.span();
            let n = self.int()?;
            let n = n
                .to_u32()
                .ok_or_else(|| AlgdefError::new(ErrorKind::Syntax("exponent out of range".into()), span))?;
            return Ok(Expr::Pow(Box::new(base), n));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, AlgdefError> {
        let span = self.span();
        match self.peek().clone() {
            Tok::Int(n) => {
                self.advance();
                Ok(Expr::Num(Rational::from_integer(n)))
            }
            Tok::LParen | Tok::LBrace => {
                let close = if *self.peek() == Tok::LParen { Tok::RParen } else { Tok::RBrace };
                self.advance();
                let e = self.expr()?;
                self.expect(close)?;
                Ok(e)
            }
            Tok::LBrack => {
                self.advance();
                let a = self.expr()?;
                self.expect(Tok::Comma)?;
                let b = self.expr()?;
                self.expect(Tok::RBrack)?;
                Ok(Expr::Bracket(Box::new(a), Box::new(b)))
            }
            Tok::Ident(name) => {
                self.advance();
                if name == "z" {
                    return Ok(Expr::Z);
                }
                if let Ok(f) = SeriesFunction::from_name(&name) {
                    return self.function(f);
                }
                if self.scope.generators.contains(&name) {
                    return Ok(Expr::Gen(name));
                }
                if self.scope.macros.contains(&name) {
                    return Ok(Expr::Macro(name));
                }
                if is_reserved(&name) {
                    return Err(AlgdefError::new(ErrorKind::Syntax(format!("misplaced keyword '{name}'")), span));
                }
                Err(AlgdefError::new(ErrorKind::UndeclaredSymbol(name), span))
            }
            other => self.error(format!("unexpected {}", other.describe())),
        }
    }

    /// Function arguments must be `[-][n[/d]*]z*G` (or `[-][n[/d]*]G` for
    /// `sinhz`) with `G` a declared series generator.
    fn function(&mut self, f: SeriesFunction) -> Result<Expr, AlgdefError> {
        self.expect(Tok::LParen)?;
        let arg_start = self.pos;
        match self.linear_argument(f) {
            Ok((scale, arg, arg_span)) => {
                if !self.scope.series.contains(&arg) {
                    return Err(AlgdefError::new(
                        ErrorKind::NonlinearArgument(format!("'{arg}' is not a declared series generator")),
                        arg_span,
                    ));
                }
                self.expect(Tok::RParen)?;
                Ok(Expr::Func { f, scale, arg })
            }
            Err(e) => {
                // Report undeclared names as such; anything else is a shape error.
                if matches!(e.kind, ErrorKind::UndeclaredSymbol(_)) {
                    return Err(e);
                }
                self.pos = arg_start;
                Err(AlgdefError::new(
                    ErrorKind::NonlinearArgument(format!(
                        "argument of {} must be linear in a series generator",
                        f.name()
                    )),
                    self.span(),
                ))
            }
        }
    }

    fn linear_argument(&mut self, f: SeriesFunction) -> Result<(Rational, String, Span), AlgdefError> {
        let mut scale = Rational::from_integer(1.into());
        if *self.peek() == Tok::Minus {
            self.advance();
            scale = -scale;
        }
        if let Tok::Int(n) = self.peek().clone() {
            self.advance();
            let mut q = Rational::from_integer(n);
            if *self.peek() == Tok::Slash {
                self.advance();
                let d = self.int()?;
                if d.is_zero() {
                    return self.error("division by zero");
                }
                q /= Rational::from_integer(d);
            }
            self.expect(Tok::Star)?;
            scale *= q;
        }
        if f != SeriesFunction::SinhOverZ {
            match self.peek() {
                Tok::Ident(s) if s == "z" => {
                    self.advance();
                }
                _ => return self.error("expected z"),
            }
            self.expect(Tok::Star)?;
        }
        let (arg, arg_span) = self.generator()?;
        if *self.peek() != Tok::RParen {
            return self.error("expected ')'");
        }
        Ok((scale, arg, arg_span))
    }
}
