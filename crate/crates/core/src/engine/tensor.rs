use std::collections::BTreeMap;
use std::fmt;

use smallvec::SmallVec;

use super::element::{fmt_coefficient_term, AlgebraElement};
use super::word::{GenId, Word};
use crate::kernel::ZSeries;

/// One word per tensor slot.
pub type TensorKey = SmallVec<[Word; 3]>;

/// Element of a tensor power (rank 2 or 3) of the algebra. Generators are all
/// even, so slots multiply independently without signs.
#[derive(Clone, PartialEq, Eq)]
pub struct TensorElement {
    rank: usize,
    order: usize,
    terms: BTreeMap<TensorKey, ZSeries>,
}

impl TensorElement {
    pub fn zero(rank: usize, order: usize) -> Self {
        Self { rank, order, terms: BTreeMap::new() }
    }

    /// `1 ⊗ ... ⊗ 1` scaled by `c`.
    pub fn scalar(rank: usize, c: ZSeries) -> Self {
        let mut t = Self::zero(rank, c.order());
        t.add_term((0..rank).map(|_| Word::empty()).collect(), &c);
        t
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn terms(&self) -> &BTreeMap<TensorKey, ZSeries> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, key: TensorKey, c: &ZSeries) {
        debug_assert_eq!(key.len(), self.rank);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(existing) => {
                existing.add_assign_ref(c);
                if existing.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c.clone());
            }
        }
    }

    /// Adds `coeff * (f_1 ⊗ f_2 ⊗ ...)`.
    pub fn add_outer(&mut self, factors: &[AlgebraElement], coeff: &ZSeries) {
        let mut partial: Vec<(TensorKey, ZSeries)> = vec![(TensorKey::new(), coeff.clone())];
        for f in factors {
            let mut next = Vec::with_capacity(partial.len() * f.len());
            for (k, c) in &partial {
                for (w, cw) in f.terms() {
                    let prod = c * cw;
                    if prod.is_zero() {
                        continue;
                    }
                    let mut k2 = k.clone();
                    k2.push(w.clone());
                    next.push((k2, prod));
                }
            }
            partial = next;
        }
        for (k, c) in partial {
            self.add_term(k, &c);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), &-c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            rank: self.rank,
            order: self.order,
            terms: self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, f: &ZSeries) -> Self {
        let mut out = Self::zero(self.rank, self.order);
        for (k, c) in &self.terms {
            out.add_term(k.clone(), &(c * f));
        }
        out
    }

    /// Swaps the two slots of a rank-2 tensor.
    pub fn flipped(&self) -> Self {
        let mut out = Self::zero(self.rank, self.order);
        for (k, c) in &self.terms {
            let mut k2 = k.clone();
            k2.reverse();
            out.add_term(k2, c);
        }
        out
    }

    /// Permutes slots: slot `i` of the result is slot `perm[i]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let mut out = Self::zero(self.rank, self.order);
        for (k, c) in &self.terms {
            let k2: TensorKey = perm.iter().map(|&i| k[i].clone()).collect();
            out.add_term(k2, c);
        }
        out
    }

    /// Coefficient of `z^k` as a rational tensor, returned as terms.
    pub fn z_coefficient(&self, k: usize) -> Vec<(TensorKey, crate::kernel::Rational)> {
        self.terms
            .iter()
            .filter(|(_, c)| k <= c.order() && !num_traits::Zero::is_zero(c.coeff(k)))
            .map(|(key, c)| (key.clone(), c.coeff(k).clone()))
            .collect()
    }

    pub fn with_order(&self, order: usize) -> Self {
        let mut out = Self::zero(self.rank, order);
        for (k, c) in &self.terms {
            out.add_term(k.clone(), &c.with_order(order));
        }
        out
    }

    /// Letters used in any slot.
    pub fn support(&self) -> Vec<GenId> {
        let mut out: Vec<GenId> =
            self.terms.keys().flat_map(|k| k.iter().flat_map(|w| w.letters().to_vec())).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> TensorDisplay<'a> {
        TensorDisplay { tensor: self, names }
    }
}

impl fmt::Debug for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.terms.iter().map(|(k, c)| (k.iter().map(|w| w.letters().to_vec()).collect::<Vec<_>>(), c)))
            .finish()
    }
}

pub struct TensorDisplay<'a> {
    tensor: &'a TensorElement,
    names: &'a [String],
}

impl fmt::Display for TensorDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.tensor.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in &self.tensor.terms {
            let body = k.iter().map(|w| w.render(self.names)).collect::<Vec<_>>().join(" ox ");
            fmt_coefficient_term(f, first, c, &body)?;
            first = false;
        }
        Ok(())
    }
}
