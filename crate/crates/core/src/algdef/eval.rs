use std::cell::RefCell;
use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use num_traits::One;

use super::ast::{Expr, Span};
use super::lexer::tokenize;
use super::parser::{Parser, Scope};
use super::presentation::HopfPresentation;
use super::AlgdefError;
use crate::engine::{
    AlgebraElement, BracketTable, Engine, GenId, Generator, Image, MorphismKind, MorphismTable, TensorElement,
    TensorKey, Word,
};
use crate::kernel::{Rational, SeriesFunction, ZSeries};

/// Result of evaluating an expression: an algebra element or a tensor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Alg(AlgebraElement),
    Tensor(TensorElement),
}

impl Value {
    pub fn into_algebra(self) -> Option<AlgebraElement> {
        match self {
            Value::Alg(a) => Some(a),
            Value::Tensor(_) => None,
        }
    }

    pub fn into_tensor(self) -> Option<TensorElement> {
        match self {
            Value::Tensor(t) => Some(t),
            Value::Alg(_) => None,
        }
    }
}

/// How products are formed: free concatenation, or through an engine.
#[derive(Clone, Copy)]
pub(crate) enum Mode<'e> {
    Raw,
    Normal(&'e Engine),
}

pub(crate) struct Evaluator<'a> {
    pres: &'a HopfPresentation,
    ids: HashMap<&'a str, GenId>,
    order: usize,
    mode: Mode<'a>,
    macro_cache: RefCell<HashMap<String, Value>>,
}

type EvalResult<T> = Result<T, String>;

fn as_scalar(a: &AlgebraElement) -> Option<ZSeries> {
    if a.terms().keys().all(Word::is_empty) {
        Some(a.scalar_part())
    } else {
        None
    }
}

fn raw_tensor_mul(a: &TensorElement, b: &TensorElement) -> TensorElement {
    let mut out = TensorElement::zero(a.rank(), a.order());
    for (ka, ca) in a.terms() {
        for (kb, cb) in b.terms() {
            let key: TensorKey = ka.iter().zip(kb.iter()).map(|(u, v)| u.concat(v)).collect();
            out.add_term(key, &(ca * cb));
        }
    }
    out
}

impl<'a> Evaluator<'a> {
    pub(crate) fn new(pres: &'a HopfPresentation, order: usize, mode: Mode<'a>) -> Self {
        let ids = pres.generators.iter().enumerate().map(|(i, g)| (g.as_str(), i as GenId)).collect();
        Self { pres, ids, order, mode, macro_cache: RefCell::new(HashMap::new()) }
    }

    fn mul(&self, a: Value, b: Value) -> EvalResult<Value> {
        Ok(match (a, b) {
            (Value::Alg(x), Value::Alg(y)) => Value::Alg(match self.mode {
                Mode::Raw => x.concat_mul(&y),
                Mode::Normal(e) => e.mul(&x, &y).map_err(|e| e.to_string())?,
            }),
            (Value::Alg(x), Value::Tensor(t)) | (Value::Tensor(t), Value::Alg(x)) => {
                // Only scalars may multiply a tensor.
                let c = as_scalar(&x).ok_or("an algebra element cannot multiply a tensor")?;
                Value::Tensor(t.scale(&c))
            }
            (Value::Tensor(s), Value::Tensor(t)) => {
                if s.rank() != t.rank() {
                    return Err(format!("tensor rank mismatch: {} vs {}", s.rank(), t.rank()));
                }
                Value::Tensor(match self.mode {
                    Mode::Raw => raw_tensor_mul(&s, &t),
                    Mode::Normal(e) => e.tensor_mul(&s, &t).map_err(|e| e.to_string())?,
                })
            }
        })
    }

    fn add(&self, a: Value, b: Value) -> EvalResult<Value> {
        Ok(match (a, b) {
            (Value::Alg(x), Value::Alg(y)) => Value::Alg(x.add(&y)),
            (Value::Tensor(s), Value::Tensor(t)) => {
                if s.rank() != t.rank() {
                    return Err(format!("tensor rank mismatch: {} vs {}", s.rank(), t.rank()));
                }
                Value::Tensor(s.add(&t))
            }
            (Value::Alg(x), Value::Tensor(t)) | (Value::Tensor(t), Value::Alg(x)) => {
                if x.is_zero() {
                    Value::Tensor(t)
                } else {
                    return Err("cannot add an algebra element to a tensor".into());
                }
            }
        })
    }

    fn scale(&self, v: Value, q: &Rational) -> Value {
        match v {
            Value::Alg(x) => Value::Alg(x.scale_rational(q)),
            Value::Tensor(t) => Value::Tensor(t.scale(&ZSeries::constant(q.clone(), self.order))),
        }
    }

    fn generator(&self, name: &str) -> EvalResult<GenId> {
        self.ids.get(name).copied().ok_or_else(|| format!("undeclared generator '{name}'"))
    }

    fn function(&self, f: SeriesFunction, scale: &Rational, arg: &str) -> EvalResult<AlgebraElement> {
        let g = self.generator(arg)?;
        let coeffs = f.taylor(scale, self.order);
        let shift = f.power_shift();
        let terms = coeffs.into_iter().enumerate().filter(|(_, c)| !num_traits::Zero::is_zero(c)).map(|(k, c)| {
            let word = Word::from_letters(&vec![g; k + shift]);
            (word, ZSeries::monomial(c, k, self.order))
        });
        Ok(AlgebraElement::from_terms(self.order, terms))
    }

    pub(crate) fn eval(&self, e: &Expr) -> EvalResult<Value> {
        let order = self.order;
        Ok(match e {
            Expr::Num(q) => Value::Alg(AlgebraElement::scalar(ZSeries::constant(q.clone(), order))),
            Expr::Z => Value::Alg(AlgebraElement::scalar(ZSeries::z(order))),
            Expr::Gen(g) => Value::Alg(AlgebraElement::generator(self.generator(g)?, order)),
            Expr::Macro(m) => {
                if let Some(v) = self.macro_cache.borrow().get(m) {
                    return Ok(v.clone());
                }
                let def = self
                    .pres
                    .macros
                    .iter()
                    .find(|d| &d.name == m)
                    .ok_or_else(|| format!("undefined macro '{m}'"))?;
                let v = self.eval(&def.rhs)?;
                self.macro_cache.borrow_mut().insert(m.clone(), v.clone());
                v
            }
            Expr::Func { f, scale, arg } => Value::Alg(self.function(*f, scale, arg)?),
            Expr::Neg(inner) => self.scale(self.eval(inner)?, &-Rational::one()),
            Expr::Sum(terms) => {
                let mut acc = Value::Alg(AlgebraElement::zero(order));
                for t in terms {
                    acc = self.add(acc, self.eval(t)?)?;
                }
                acc
            }
            Expr::Product(factors) => {
                let mut acc = Value::Alg(AlgebraElement::one(order));
                for f in factors {
                    acc = match f {
                        Expr::Recip(n) => self.scale(acc, &Rational::new(1.into(), n.clone())),
                        other => self.mul(acc, self.eval(other)?)?,
                    };
                }
                acc
            }
            Expr::Recip(n) => Value::Alg(AlgebraElement::scalar(ZSeries::constant(
                Rational::new(1.into(), n.clone()),
                order,
            ))),
            Expr::Pow(base, n) => {
                let b = self.eval(base)?;
                let mut acc = match &b {
                    Value::Alg(_) => Value::Alg(AlgebraElement::one(order)),
                    Value::Tensor(t) => Value::Tensor(TensorElement::scalar(t.rank(), ZSeries::one(order))),
                };
                for _ in 0..*n {
                    acc = self.mul(acc, b.clone())?;
                }
                acc
            }
            Expr::Bracket(a, b) => {
                let (Value::Alg(x), Value::Alg(y)) = (self.eval(a)?, self.eval(b)?) else {
                    return Err("brackets of tensors are not supported".into());
                };
                Value::Alg(match self.mode {
                    Mode::Raw => x.concat_mul(&y).sub(&y.concat_mul(&x)),
                    Mode::Normal(e) => e.commutator(&x, &y).map_err(|e| e.to_string())?,
                })
            }
            Expr::Tensor(slots) => {
                let mut factors = Vec::with_capacity(slots.len());
                for s in slots {
                    match self.eval(s)? {
                        Value::Alg(a) => factors.push(a),
                        Value::Tensor(_) => return Err("nested tensor products are not supported".into()),
                    }
                }
                let mut t = TensorElement::zero(factors.len(), order);
                t.add_outer(&factors, &ZSeries::one(order));
                Value::Tensor(t)
            }
        })
    }
}

/// The three structure maps of a presentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StructureMap {
    Coproduct,
    Counit,
    Antipode,
}

/// A presentation evaluated at a fixed truncation order.
#[derive(Clone)]
pub struct Instance {
    pub presentation: HopfPresentation,
    pub engine: Arc<Engine>,
    pub coproduct: Option<MorphismTable>,
    pub counit: Option<MorphismTable>,
    pub antipode: Option<MorphismTable>,
}

impl HopfPresentation {
    pub fn generator_records(&self) -> Vec<Generator> {
        self.generators
            .iter()
            .zip(&self.grading)
            .enumerate()
            .map(|(i, (name, &goodness))| Generator { id: i as GenId, name: name.clone(), goodness, pbw_rank: i })
            .collect()
    }

    /// Bracket table whose entries are the right-hand sides with products
    /// taken in the free algebra (no reordering).
    pub fn raw_bracket_table(&self, order: usize) -> Result<BracketTable, AlgdefError> {
        let ev = Evaluator::new(self, order, Mode::Raw);
        let mut table = BracketTable::new(self.generators.len(), order);
        for b in &self.brackets {
            let v = ev.eval(&b.rhs).map_err(|m| AlgdefError::eval(m, b.span))?;
            let Value::Alg(rhs) = v else {
                return Err(AlgdefError::eval("bracket right-hand side is a tensor", b.span));
            };
            let l = self.generator_index(&b.left).unwrap() as GenId;
            let r = self.generator_index(&b.right).unwrap() as GenId;
            table.set(l, r, rhs);
        }
        Ok(table)
    }

    /// Builds the engine: raw right-hand sides are normal ordered with an
    /// engine running on the raw table, then the engine is rebuilt on the
    /// normal-ordered table.
    pub fn build_engine(&self, order: usize) -> Result<Engine, AlgdefError> {
        let raw = self.raw_bracket_table(order)?;
        let needs_ordering = raw.nonzero_pairs().iter().any(|&(a, b)| !raw.bracket(a, b).is_normal());
        if !needs_ordering {
            return Ok(Engine::new(self.generator_records(), raw));
        }
        let bootstrap = Engine::new(self.generator_records(), raw.clone());
        let mut failure = None;
        let table = raw.map_entries(|e| match bootstrap.normal_form(e) {
            Ok(n) => n,
            Err(err) => {
                failure.get_or_insert(err);
                e.clone()
            }
        });
        if let Some(err) = failure {
            return Err(AlgdefError::engine(err, Span::default()));
        }
        Ok(Engine::new(self.generator_records(), table))
    }

    pub fn instantiate(&self, order: usize) -> Result<Instance, AlgdefError> {
        let engine = Arc::new(self.build_engine(order)?);
        self.instantiate_with(engine)
    }

    /// Evaluates the structure maps on an existing engine, which must have been
    /// built from a presentation with the same generators and brackets.
    pub fn instantiate_with(&self, engine: Arc<Engine>) -> Result<Instance, AlgdefError> {
        let mut inst =
            Instance { presentation: self.clone(), engine, coproduct: None, counit: None, antipode: None };
        inst.coproduct = inst.map_for(&self.coproduct, MorphismKind::Homomorphism, Some(2))?;
        inst.counit = inst.map_for(&self.counit, MorphismKind::Homomorphism, None)?;
        inst.antipode = inst.map_for(&self.antipode, MorphismKind::AntiHomomorphism, None)?;
        Ok(inst)
    }
}

impl Instance {
    pub fn order(&self) -> usize {
        self.engine.order()
    }

    pub fn names(&self) -> &[String] {
        self.engine.names()
    }

    pub fn id(&self, name: &str) -> Option<GenId> {
        self.engine.generator_id(name)
    }

    fn map_for(
        &self,
        defs: &[super::Definition],
        kind: MorphismKind,
        tensor_rank: Option<usize>,
    ) -> Result<Option<MorphismTable>, AlgdefError> {
        if defs.is_empty() {
            Ok(None)
        } else {
            self.structure_map(defs, kind, tensor_rank).map(Some)
        }
    }

    fn structure_map(
        &self,
        defs: &[super::Definition],
        kind: MorphismKind,
        tensor_rank: Option<usize>,
    ) -> Result<MorphismTable, AlgdefError> {
        let ev = Evaluator::new(&self.presentation, self.order(), Mode::Normal(&self.engine));
        let mut images = vec![None; self.presentation.generators.len()];
        for d in defs {
            let v = ev.eval(&d.rhs).map_err(|m| AlgdefError::eval(m, d.span))?;
            let image = match (v, tensor_rank) {
                (Value::Tensor(t), Some(r)) if t.rank() == r => Image::Tensor(t),
                (Value::Alg(a), Some(r)) if a.is_zero() => Image::Tensor(TensorElement::zero(r, self.order())),
                (Value::Alg(a), None) => Image::Algebra(a),
                _ => return Err(AlgdefError::eval(format!("image of '{}' has the wrong shape", d.name), d.span)),
            };
            images[self.presentation.generator_index(&d.name).unwrap()] = Some(image);
        }
        Ok(MorphismTable { kind, images, source_names: self.presentation.generators.clone() })
    }

    /// Re-evaluates the image of one generator under a structure map from the
    /// current presentation text.
    pub fn refresh_image(&mut self, map: StructureMap, generator: &str) -> Result<(), AlgdefError> {
        let (defs, kind, rank) = match map {
            StructureMap::Coproduct => (&self.presentation.coproduct, MorphismKind::Homomorphism, Some(2)),
            StructureMap::Counit => (&self.presentation.counit, MorphismKind::Homomorphism, None),
            StructureMap::Antipode => (&self.presentation.antipode, MorphismKind::AntiHomomorphism, None),
        };
        let def: Vec<_> = defs.iter().filter(|d| d.name == generator).cloned().collect();
        let fresh = self.structure_map(&def, kind, rank)?;
        let idx = self
            .presentation
            .generator_index(generator)
            .ok_or_else(|| AlgdefError::eval(format!("unknown generator '{generator}'"), Span::default()))?;
        let slot = match map {
            StructureMap::Coproduct => &mut self.coproduct,
            StructureMap::Counit => &mut self.counit,
            StructureMap::Antipode => &mut self.antipode,
        };
        match slot {
            Some(table) => table.images[idx] = fresh.images[idx].clone(),
            None => *slot = Some(fresh),
        }
        Ok(())
    }

    /// Line-oriented rendering of the evaluated structure: brackets, the three
    /// structure maps, then `extra` under the given labels. Depends only on the
    /// normal forms, not on the presentation name or source layout.
    pub fn canonical_dump(&self, extra: &[(String, AlgebraElement)]) -> String {
        use std::fmt::Write;
        let names = self.names();
        let mut out = String::new();
        let _ = writeln!(out, "order {}", self.order());
        let _ = writeln!(out, "generators {}", names.join(" "));
        let table = self.engine.table();
        for a in 0..names.len() {
            for b in a + 1..names.len() {
                let v = table.bracket(a as GenId, b as GenId);
                if !v.is_zero() {
                    let _ = writeln!(out, "bracket [{}, {}] = {}", names[a], names[b], v.display(names));
                }
            }
        }
        for (label, map) in [("coproduct", &self.coproduct), ("counit", &self.counit), ("antipode", &self.antipode)] {
            let Some(map) = map else { continue };
            for (g, name) in names.iter().enumerate() {
                let text = match map.image(g as GenId) {
                    Ok(Image::Algebra(a)) => a.display(names).to_string(),
                    Ok(Image::Tensor(t)) => t.display(names).to_string(),
                    Err(_) => "undefined".to_string(),
                };
                let _ = writeln!(out, "{label} {name} = {text}");
            }
        }
        for (label, e) in extra {
            let _ = writeln!(out, "element {label} = {}", e.display(names));
        }
        out
    }

    /// Evaluates an expression tree in normal-ordered form.
    pub fn eval(&self, e: &Expr) -> Result<Value, AlgdefError> {
        let ev = Evaluator::new(&self.presentation, self.order(), Mode::Normal(&self.engine));
        ev.eval(e).map_err(|m| AlgdefError::eval(m, Span::default()))
    }

    /// Parses an expression written in this presentation's generators and macros.
    pub fn parse_expr(&self, text: &str) -> Result<Expr, AlgdefError> {
        parse_expression(&self.presentation, text)
    }

    pub fn eval_str(&self, text: &str) -> Result<Value, AlgdefError> {
        self.eval(&self.parse_expr(text)?)
    }

    /// Evaluates text that must denote an algebra element.
    pub fn element(&self, text: &str) -> Result<AlgebraElement, AlgdefError> {
        self.eval_str(text)?
            .into_algebra()
            .ok_or_else(|| AlgdefError::eval("expected an algebra element, found a tensor", Span::default()))
    }

    /// The homomorphism into `target` given by the IDENTIFY section.
    pub fn identification_map(&self, target: &Instance) -> Result<MorphismTable, AlgdefError> {
        let id = self
            .presentation
            .identification
            .as_ref()
            .ok_or_else(|| AlgdefError::eval("presentation has no IDENTIFY section", Span::default()))?;
        let mut images = vec![None; self.presentation.generators.len()];
        for entry in &id.entries {
            let expr = parse_expression(&target.presentation, &entry.text).map_err(|mut e| {
                e.span = entry.span;
                e
            })?;
            let a = target
                .eval(&expr)?
                .into_algebra()
                .ok_or_else(|| AlgdefError::eval("identification image is a tensor", entry.span))?;
            images[self.presentation.generator_index(&entry.name).unwrap()] = Some(Image::Algebra(a));
        }
        Ok(MorphismTable {
            kind: MorphismKind::Homomorphism,
            images,
            source_names: self.presentation.generators.clone(),
        })
    }
}

pub(crate) fn parse_expression(pres: &HopfPresentation, text: &str) -> Result<Expr, AlgdefError> {
    let gens: HashSet<String> = pres.generators.iter().cloned().collect();
    let series: HashSet<String> = pres.series.iter().cloned().collect();
    let macros: HashSet<String> = pres.macros.iter().map(|m| m.name.clone()).collect();
    let toks = tokenize(&[(1, text)], &gens)?;
    let mut p = Parser::new(toks, Scope { generators: &gens, series: &series, macros: &macros });
    let e = p.expr()?;
    p.expect_end()?;
    Ok(e)
}
