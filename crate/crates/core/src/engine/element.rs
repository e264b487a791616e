use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::word::{GenId, Word};
use crate::kernel::{Rational, ZSeries};

/// Finite linear combination of generator words with [`ZSeries`] coefficients.
///
/// Zero coefficients are never stored; the empty word is the unit.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    order: usize,
    terms: BTreeMap<Word, ZSeries>,
}

impl AlgebraElement {
    pub fn zero(order: usize) -> Self {
        Self { order, terms: BTreeMap::new() }
    }

    pub fn one(order: usize) -> Self {
        Self::scalar(ZSeries::one(order))
    }

    pub fn scalar(c: ZSeries) -> Self {
        Self::term(Word::empty(), c)
    }

    pub fn generator(g: GenId, order: usize) -> Self {
        Self::term(Word::letter(g), ZSeries::one(order))
    }

    pub fn term(w: Word, c: ZSeries) -> Self {
        let mut e = Self::zero(c.order());
        e.add_term(w, &c);
        e
    }

    pub fn from_terms(order: usize, terms: impl IntoIterator<Item = (Word, ZSeries)>) -> Self {
        let mut e = Self::zero(order);
        for (w, c) in terms {
            e.add_term(w, &c);
        }
        e
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn terms(&self) -> &BTreeMap<Word, ZSeries> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Word, ZSeries> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_normal(&self) -> bool {
        self.terms.keys().all(Word::is_normal)
    }

    pub fn coefficient(&self, w: &Word) -> ZSeries {
        self.terms.get(w).cloned().unwrap_or_else(|| ZSeries::zero(self.order))
    }

    /// Coefficient of the unit word.
    pub fn scalar_part(&self) -> ZSeries {
        self.coefficient(&Word::empty())
    }

    pub fn add_term(&mut self, w: Word, c: &ZSeries) {
        if c.is_zero() {
            return;
        }
        assert_eq!(c.order(), self.order, "truncation order mismatch");
        match self.terms.get_mut(&w) {
            Some(existing) => {
                existing.add_assign_ref(c);
                if existing.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c.clone());
            }
        }
    }

    /// `self += other * factor`
    pub fn add_scaled(&mut self, other: &Self, factor: &ZSeries) {
        for (w, c) in &other.terms {
            let prod = c * factor;
            self.add_term(w.clone(), &prod);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), &-c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            order: self.order,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &ZSeries) -> Self {
        let mut out = Self::zero(self.order);
        out.add_scaled(self, c);
        out
    }

    pub fn scale_rational(&self, q: &Rational) -> Self {
        self.scale(&ZSeries::constant(q.clone(), self.order))
    }

    /// Free (unreduced) product: words are concatenated.
    pub fn concat_mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.order);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.concat(v), &(a * b));
            }
        }
        out
    }

    /// Re-expresses the element at another truncation order.
    pub fn with_order(&self, order: usize) -> Self {
        Self::from_terms(order, self.terms.iter().map(|(w, c)| (w.clone(), c.with_order(order))))
    }

    /// Drops every word that contains one of `gens`.
    pub fn without_generators(&self, gens: &[GenId]) -> Self {
        Self::from_terms(
            self.order,
            self.terms
                .iter()
                .filter(|(w, _)| !gens.iter().any(|g| w.contains(*g)))
                .map(|(w, c)| (w.clone(), c.clone())),
        )
    }

    /// Letters used anywhere in the element.
    pub fn support(&self) -> Vec<GenId> {
        let mut out: Vec<GenId> = self.terms.keys().flat_map(|w| w.letters().to_vec()).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> ElementDisplay<'a> {
        ElementDisplay { element: self, names }
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter().map(|(w, c)| (w.letters(), c))).finish()
    }
}

/// Formats an element with generator names: `(1 + z^2/2) P+*K3 - P1`.
pub struct ElementDisplay<'a> {
    element: &'a AlgebraElement,
    names: &'a [String],
}

pub(crate) fn fmt_coefficient_term(
    f: &mut fmt::Formatter<'_>,
    first: bool,
    c: &ZSeries,
    body: &str,
) -> fmt::Result {
    let nonzero: Vec<usize> = (0..=c.order()).filter(|&k| !c.coeff(k).is_zero()).collect();
    let single = nonzero.len() == 1;
    if single {
        let k = nonzero[0];
        let q = c.coeff(k);
        let neg = q.is_negative();
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { "-" } else { "+" })?;
        }
        let mag = ZSeries::monomial(q.abs(), k, c.order());
        let is_unit = k == 0 && q.abs().is_one();
        match (is_unit, body.is_empty()) {
            (true, true) => write!(f, "1"),
            (true, false) => write!(f, "{body}"),
            (false, true) => write!(f, "{mag}"),
            (false, false) => write!(f, "{mag} {body}"),
        }
    } else {
        if !first {
            write!(f, " + ")?;
        }
        if body.is_empty() {
            write!(f, "({c})")
        } else {
            write!(f, "({c}) {body}")
        }
    }
}

impl fmt::Display for ElementDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.element.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, c) in &self.element.terms {
            let body = if w.is_empty() { String::new() } else { w.render(self.names) };
            fmt_coefficient_term(f, first, c, &body)?;
            first = false;
        }
        Ok(())
    }
}
