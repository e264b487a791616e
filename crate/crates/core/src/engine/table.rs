use super::element::AlgebraElement;
use super::word::GenId;

/// Brackets `[Y, X]` for every ordered pair with `rank(Y) > rank(X)`.
/// Unlisted pairs are zero; `[X, Y] = -[Y, X]` is implied.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BracketTable {
    size: usize,
    order: usize,
    entries: Vec<Option<AlgebraElement>>,
}

impl BracketTable {
    pub fn new(size: usize, order: usize) -> Self {
        Self { size, order, entries: vec![None; size * size] }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Stores `[a, b] = value`, flipping the sign when `a` precedes `b`.
    pub fn set(&mut self, a: GenId, b: GenId, value: AlgebraElement) {
        assert_ne!(a, b, "bracket of a generator with itself is structurally zero");
        let (hi, lo, v) = if a > b { (a, b, value) } else { (b, a, value.neg()) };
        let idx = hi as usize * self.size + lo as usize;
        self.entries[idx] = if v.is_zero() { None } else { Some(v) };
    }

    /// `[hi, lo]` for `hi > lo`; `None` when the bracket vanishes.
    pub fn get_ordered(&self, hi: GenId, lo: GenId) -> Option<&AlgebraElement> {
        debug_assert!(hi > lo);
        self.entries[hi as usize * self.size + lo as usize].as_ref()
    }

    /// `[a, b]` for any pair.
    pub fn bracket(&self, a: GenId, b: GenId) -> AlgebraElement {
        if a == b {
            return AlgebraElement::zero(self.order);
        }
        if a > b {
            self.get_ordered(a, b).cloned().unwrap_or_else(|| AlgebraElement::zero(self.order))
        } else {
            self.get_ordered(b, a).map(AlgebraElement::neg).unwrap_or_else(|| AlgebraElement::zero(self.order))
        }
    }

    /// Nonvanishing pairs `(hi, lo)` with `hi > lo`.
    pub fn nonzero_pairs(&self) -> Vec<(GenId, GenId)> {
        let mut out = Vec::new();
        for hi in 0..self.size {
            for lo in 0..hi {
                if self.entries[hi * self.size + lo].is_some() {
                    out.push((hi as GenId, lo as GenId));
                }
            }
        }
        out
    }

    pub fn map_entries(&self, mut f: impl FnMut(&AlgebraElement) -> AlgebraElement) -> Self {
        let entries = self
            .entries
            .iter()
            .map(|e| e.as_ref().map(&mut f).filter(|v| !v.is_zero()))
            .collect();
        Self { size: self.size, order: self.order, entries }
    }
}
