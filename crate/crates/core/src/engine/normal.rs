use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, RwLock};

use super::element::AlgebraElement;
use super::table::BracketTable;
use super::tensor::{TensorElement, TensorKey};
use super::word::{GenId, Generator, Word};
use super::EngineError;
use crate::kernel::ZSeries;

/// Rewriting steps allowed per engine before the table is declared broken.
pub const DEFAULT_STEP_BUDGET: u64 = 500_000_000;

const MAX_DEPTH: usize = 4096;

/// PBW normal-ordering engine for one bracket table at a fixed truncation order.
///
/// Products of a normal word with a single generator are memoized; the cache
/// is shared between threads.
pub struct Engine {
    generators: Vec<Generator>,
    names: Vec<String>,
    table: BracketTable,
    order: usize,
    budget: u64,
    steps: AtomicU64,
    cache: RwLock<HashMap<(Word, GenId), Arc<AlgebraElement>>>,
}

impl Engine {
    pub fn new(generators: Vec<Generator>, table: BracketTable) -> Self {
        let names = generators.iter().map(|g| g.name.clone()).collect();
        let order = table.order();
        Self {
            generators,
            names,
            table,
            order,
            budget: DEFAULT_STEP_BUDGET,
            steps: AtomicU64::new(0),
            cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn with_step_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn table(&self) -> &BracketTable {
        &self.table
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn steps_taken(&self) -> u64 {
        self.steps.load(Ordering::Relaxed)
    }

    pub fn generator_id(&self, name: &str) -> Option<GenId> {
        self.names.iter().position(|n| n == name).map(|i| i as GenId)
    }

    pub fn gen(&self, g: GenId) -> AlgebraElement {
        AlgebraElement::generator(g, self.order)
    }

    fn check_word(&self, w: &Word) -> Result<(), EngineError> {
        match w.letters().iter().find(|&&g| g as usize >= self.generators.len()) {
            Some(&g) => Err(EngineError::UnknownGenerator(g)),
            None => Ok(()),
        }
    }

    /// Unique PBW normal form of an arbitrary element.
    pub fn normal_form(&self, e: &AlgebraElement) -> Result<AlgebraElement, EngineError> {
        let e = self.at_order(e);
        let mut out = AlgebraElement::zero(self.order);
        for (w, c) in e.terms() {
            self.check_word(w)?;
            if w.is_normal() {
                out.add_term(w.clone(), c);
                continue;
            }
            let nf = self.word_times_word(&Word::empty(), w, 0)?;
            out.add_scaled(&nf, c);
        }
        Ok(out)
    }

    /// Normal form of the product `a b`.
    pub fn mul(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement, EngineError> {
        let a = if a.is_normal() { self.at_order(a) } else { self.normal_form(a)? };
        let b = self.at_order(b);
        let mut out = AlgebraElement::zero(self.order);
        for (u, cu) in a.terms() {
            self.check_word(u)?;
            for (v, cv) in b.terms() {
                let coeff = cu * cv;
                if coeff.is_zero() {
                    continue;
                }
                let prod = self.word_times_word(u, v, 0)?;
                out.add_scaled(&prod, &coeff);
            }
        }
        Ok(out)
    }

    /// Product of any number of elements, normal-ordering as it goes.
    pub fn product(&self, factors: &[&AlgebraElement]) -> Result<AlgebraElement, EngineError> {
        let mut acc = AlgebraElement::one(self.order);
        for f in factors {
            acc = self.mul(&acc, f)?;
        }
        Ok(acc)
    }

    pub fn power(&self, a: &AlgebraElement, n: u32) -> Result<AlgebraElement, EngineError> {
        let a = self.normal_form(a)?;
        let mut acc = AlgebraElement::one(self.order);
        for _ in 0..n {
            acc = self.mul(&acc, &a)?;
        }
        Ok(acc)
    }

    /// `normal_form(a b - b a)`
    pub fn commutator(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement, EngineError> {
        let a = self.normal_form(a)?;
        let b = self.normal_form(b)?;
        Ok(self.mul(&a, &b)?.sub(&self.mul(&b, &a)?))
    }

    /// Bracket of two generators as stored in the table.
    pub fn bracket(&self, a: GenId, b: GenId) -> AlgebraElement {
        self.table.bracket(a, b)
    }

    fn at_order(&self, e: &AlgebraElement) -> AlgebraElement {
        if e.order() == self.order {
            e.clone()
        } else {
            e.with_order(self.order)
        }
    }

    /// Normal form of `u * v` for a normal word `u` and any word `v`.
    fn word_times_word(&self, u: &Word, v: &Word, depth: usize) -> Result<AlgebraElement, EngineError> {
        let mut acc = AlgebraElement::term(u.clone(), ZSeries::one(self.order));
        for &g in v.letters() {
            let mut next = AlgebraElement::zero(self.order);
            for (w, c) in acc.terms() {
                let prod = self.word_times_gen(w, g, depth + 1)?;
                next.add_scaled(&prod, c);
            }
            acc = next;
        }
        Ok(acc)
    }

    /// Normal form of `m * g` for a normal word `m`.
    fn word_times_gen(&self, m: &Word, g: GenId, depth: usize) -> Result<Arc<AlgebraElement>, EngineError> {
        let y = match m.last() {
            Some(y) if y > g => y,
            _ => return Ok(Arc::new(AlgebraElement::term(m.pushed(g), ZSeries::one(self.order)))),
        };
        let key = (m.clone(), g);
        if let Some(hit) = self.cache.read().expect("cache poisoned").get(&key) {
            return Ok(hit.clone());
        }
        if depth > MAX_DEPTH {
            return Err(EngineError::StepBudgetExceeded(self.budget));
        }
        let steps = self.steps.fetch_add(1, Ordering::Relaxed);
        if steps >= self.budget {
            return Err(EngineError::StepBudgetExceeded(self.budget));
        }
        // m = m' y with y > g:  m' y g = (m' g) y + m' [y, g]
        let prefix = Word::from_letters(&m.letters()[..m.len() - 1]);
        let mut out = AlgebraElement::zero(self.order);
        let head = self.word_times_gen(&prefix, g, depth + 1)?;
        for (w, c) in head.terms() {
            let prod = self.word_times_gen(w, y, depth + 1)?;
            out.add_scaled(&prod, c);
        }
        if let Some(br) = self.table.get_ordered(y, g) {
            for (v, c) in br.terms() {
                let prod = self.word_times_word(&prefix, v, depth + 1)?;
                out.add_scaled(&prod, c);
            }
        }
        let out = Arc::new(out);
        self.cache.write().expect("cache poisoned").insert(key, out.clone());
        Ok(out)
    }

    // ---- tensor algebra ------------------------------------------------

    /// Factorwise product in the tensor power algebra.
    pub fn tensor_mul(&self, a: &TensorElement, b: &TensorElement) -> Result<TensorElement, EngineError> {
        if a.rank() != b.rank() {
            return Err(EngineError::RankMismatch(a.rank(), b.rank()));
        }
        let mut out = TensorElement::zero(a.rank(), self.order);
        for (ka, ca) in a.terms() {
            for (kb, cb) in b.terms() {
                let coeff = ca * cb;
                if coeff.is_zero() {
                    continue;
                }
                let factors = ka
                    .iter()
                    .zip(kb.iter())
                    .map(|(u, v)| self.word_times_word(u, v, 0))
                    .collect::<Result<Vec<_>, _>>()?;
                out.add_outer(&factors, &coeff);
            }
        }
        Ok(out)
    }

    pub fn tensor_commutator(&self, a: &TensorElement, b: &TensorElement) -> Result<TensorElement, EngineError> {
        Ok(self.tensor_mul(a, b)?.sub(&self.tensor_mul(b, a)?))
    }

    /// Normal-orders every tensor slot.
    pub fn tensor_normal_form(&self, t: &TensorElement) -> Result<TensorElement, EngineError> {
        let mut out = TensorElement::zero(t.rank(), self.order);
        for (k, c) in t.terms() {
            let factors = k
                .iter()
                .map(|w| {
                    self.check_word(w)?;
                    self.word_times_word(&Word::empty(), w, 0)
                })
                .collect::<Result<Vec<_>, _>>()?;
            out.add_outer(&factors, &c.with_order(self.order));
        }
        Ok(out)
    }

    /// `a ⊗ b` of two normal elements.
    pub fn tensor2(&self, a: &AlgebraElement, b: &AlgebraElement) -> TensorElement {
        let mut out = TensorElement::zero(2, self.order);
        out.add_outer(&[self.at_order(a), self.at_order(b)], &ZSeries::one(self.order));
        out
    }

    /// Multiplies the slots of a rank-2 tensor together: `m(a ⊗ b) = a b`.
    pub fn multiply_out(&self, t: &TensorElement) -> Result<AlgebraElement, EngineError> {
        let mut out = AlgebraElement::zero(self.order);
        for (k, c) in t.terms() {
            let mut acc = AlgebraElement::term(k[0].clone(), ZSeries::one(self.order));
            for w in k.iter().skip(1) {
                acc = self.mul(&acc, &AlgebraElement::term(w.clone(), ZSeries::one(self.order)))?;
            }
            out.add_scaled(&acc, c);
        }
        Ok(out)
    }

    #[doc(hidden)]
    pub fn tensor_key_normal(&self, key: &TensorKey) -> bool {
        key.iter().all(Word::is_normal)
    }
}
