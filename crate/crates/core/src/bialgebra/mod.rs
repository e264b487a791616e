//! Finite-dimensional Lie bialgebra layer: structure constants, bivectors and
//! trivectors, the Schouten bracket, cocommutators and the comparison of a
//! cocommutator with the first-order part of a quantum coproduct.

use std::borrow::Cow;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::algdef::{AlgdefError, HopfPresentation, Instance};
use crate::engine::{fmt_coefficient_term, GenId};
use crate::kernel::{Rational, ZSeries};

/// Truncation order used for bialgebra objects; everything here is at most
/// quadratic in `z`.
pub const BIALGEBRA_ORDER: usize = 2;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BialgebraError {
    #[error("bracket [{0}, {1}] is not linear in the generators")]
    NonLinearBracket(String, String),
    #[error("first-order coproduct term of {0} is not a bivector: {1}")]
    NotBivector(String, String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("presentation has no coproduct")]
    NoCoproduct,
    #[error(transparent)]
    Algdef(#[from] AlgdefError),
}

/// Structure constants `[X_i, X_j] = c^k_ij X_k` of a Lie algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureConstants {
    names: Vec<String>,
    c: Vec<Vec<Vec<(GenId, Rational)>>>,
}

impl StructureConstants {
    /// Reads the classical (z = 0) brackets of a presentation.
    pub fn from_presentation(p: &HopfPresentation) -> Result<Self, BialgebraError> {
        Self::from_instance(&p.instantiate(0)?)
    }

    pub fn from_instance(inst: &Instance) -> Result<Self, BialgebraError> {
        let names = inst.names().to_vec();
        let n = names.len();
        let mut c = vec![vec![Vec::new(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let b = inst.engine.bracket(i as GenId, j as GenId);
                for (w, coeff) in b.terms() {
                    if w.len() != 1 {
                        return Err(BialgebraError::NonLinearBracket(names[i].clone(), names[j].clone()));
                    }
                    c[i][j].push((w.letters()[0], coeff.coeff(0).clone()));
                }
            }
        }
        Ok(Self { names, c })
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn id(&self, name: &str) -> Result<GenId, BialgebraError> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| i as GenId)
            .ok_or_else(|| BialgebraError::UnknownGenerator(name.to_string()))
    }

    /// Nonzero `c^k_ij` as `(k, c)` pairs.
    pub fn bracket(&self, i: GenId, j: GenId) -> &[(GenId, Rational)] {
        &self.c[i as usize][j as usize]
    }

    pub fn is_antisymmetric(&self) -> bool {
        let n = self.dim() as GenId;
        (0..n).all(|i| {
            (0..n).all(|j| {
                let mut sum: BTreeMap<GenId, Rational> = BTreeMap::new();
                for (k, v) in self.bracket(i, j).iter().chain(self.bracket(j, i)) {
                    *sum.entry(*k).or_insert_with(Rational::zero) += v;
                }
                sum.values().all(Zero::is_zero)
            })
        })
    }

    /// `[X_i,[X_j,X_k]] + cyclic` for every `i < j < k` that fails.
    pub fn jacobi_failures(&self) -> Vec<(GenId, GenId, GenId)> {
        let n = self.dim() as GenId;
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let mut sum: BTreeMap<GenId, Rational> = BTreeMap::new();
                    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                        for (m, v) in self.bracket(b, c) {
                            for (l, u) in self.bracket(a, *m) {
                                *sum.entry(*l).or_insert_with(Rational::zero) += v * u;
                            }
                        }
                    }
                    if sum.values().any(|v| !v.is_zero()) {
                        out.push((i, j, k));
                    }
                }
            }
        }
        out
    }
}

/// Antisymmetric rank-2 tensor `sum_{i<j} b^ij X_i ^ X_j` with
/// `X_i ^ X_j = X_i (x) X_j - X_j (x) X_i`.
#[derive(Clone, PartialEq, Eq)]
pub struct Bivector {
    order: usize,
    comps: BTreeMap<(GenId, GenId), ZSeries>,
}

impl Bivector {
    pub fn zero(order: usize) -> Self {
        Self { order, comps: BTreeMap::new() }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Adds `c X_i ^ X_j`.
    pub fn add_wedge(&mut self, i: GenId, j: GenId, c: &ZSeries) {
        if i == j || c.is_zero() {
            return;
        }
        let (key, c) = if i < j { ((i, j), c.with_order(self.order)) } else { ((j, i), -c.with_order(self.order)) };
        let e = self.comps.entry(key).or_insert_with(|| ZSeries::zero(self.order));
        e.add_assign_ref(&c);
        if e.is_zero() {
            self.comps.remove(&key);
        }
    }

    /// `c * (a1 ^ b1 + a2 ^ b2 + ...)` by generator name.
    pub fn from_wedges(sc: &StructureConstants, c: &ZSeries, pairs: &[(&str, &str)]) -> Result<Self, BialgebraError> {
        let mut b = Self::zero(c.order());
        for (x, y) in pairs {
            b.add_wedge(sc.id(x)?, sc.id(y)?, c);
        }
        Ok(b)
    }

    /// Antisymmetric component `b^ij`.
    pub fn component(&self, i: GenId, j: GenId) -> ZSeries {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.comps.get(&(i, j)).cloned().unwrap_or_else(|| ZSeries::zero(self.order)),
            std::cmp::Ordering::Greater => -self.component(j, i),
            std::cmp::Ordering::Equal => ZSeries::zero(self.order),
        }
    }

    pub fn components(&self) -> &BTreeMap<(GenId, GenId), ZSeries> {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((i, j), c) in &other.comps {
            out.add_wedge(*i, *j, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&ZSeries::from_integer(-1, self.order)))
    }

    pub fn scale(&self, f: &ZSeries) -> Self {
        let mut out = Self::zero(self.order);
        for ((i, j), c) in &self.comps {
            out.add_wedge(*i, *j, &(c * f));
        }
        out
    }

    /// Full tensor components `(i, j) -> b^ij` including both orders.
    fn full(&self) -> Vec<(GenId, GenId, ZSeries)> {
        let mut out = Vec::with_capacity(2 * self.comps.len());
        for ((i, j), c) in &self.comps {
            out.push((*i, *j, c.clone()));
            out.push((*j, *i, -c));
        }
        out
    }

    /// Each wedge is oriented so that its leading coefficient is positive.
    pub fn display<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        let terms = self
            .comps
            .iter()
            .map(|(&(i, j), c)| {
                let negative = c.valuation().is_some_and(|k| c.coeff(k).is_negative());
                if negative {
                    (vec![j, i], Cow::Owned(-c))
                } else {
                    (vec![i, j], Cow::Borrowed(c))
                }
            })
            .collect();
        MultiDisplay { terms, names }
    }
}

impl fmt::Debug for Bivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Bivector(")?;
        for ((i, j), c) in &self.comps {
            write!(f, "[{i},{j}]={c}; ")?;
        }
        write!(f, ")")
    }
}

/// Totally antisymmetric rank-3 tensor stored on `i < j < k` with unit
/// normalization: the stored value is the `X_i (x) X_j (x) X_k` component.
#[derive(Clone, PartialEq, Eq)]
pub struct Trivector {
    order: usize,
    comps: BTreeMap<(GenId, GenId, GenId), ZSeries>,
}

impl Trivector {
    pub fn zero(order: usize) -> Self {
        Self { order, comps: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn len(&self) -> usize {
        self.comps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn components(&self) -> &BTreeMap<(GenId, GenId, GenId), ZSeries> {
        &self.comps
    }

    pub fn component(&self, i: GenId, j: GenId, k: GenId) -> ZSeries {
        let mut idx = [i, j, k];
        if idx[0] == idx[1] || idx[1] == idx[2] || idx[0] == idx[2] {
            return ZSeries::zero(self.order);
        }
        let mut sign = 1;
        for a in 0..3 {
            for b in 0..2 - a {
                if idx[b] > idx[b + 1] {
                    idx.swap(b, b + 1);
                    sign = -sign;
                }
            }
        }
        let c = self.comps.get(&(idx[0], idx[1], idx[2])).cloned().unwrap_or_else(|| ZSeries::zero(self.order));
        if sign < 0 {
            -c
        } else {
            c
        }
    }

    /// Antisymmetric projection of a full rank-3 tensor.
    fn from_full(order: usize, full: &Full3) -> Self {
        let sixth = Rational::new(1.into(), 6.into());
        let mut alt: BTreeMap<(GenId, GenId, GenId), ZSeries> = BTreeMap::new();
        for (&(a, b, c), v) in full {
            if a == b || b == c || a == c {
                continue;
            }
            let mut idx = [a, b, c];
            let mut sign = 1i64;
            for x in 0..3 {
                for y in 0..2 - x {
                    if idx[y] > idx[y + 1] {
                        idx.swap(y, y + 1);
                        sign = -sign;
                    }
                }
            }
            let e = alt.entry((idx[0], idx[1], idx[2])).or_insert_with(|| ZSeries::zero(order));
            e.add_assign_ref(&v.scale(&(&sixth * Rational::from_integer(sign.into()))));
        }
        alt.retain(|_, v| !v.is_zero());
        Self { order, comps: alt }
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        let terms = self.comps.iter().map(|((i, j, k), c)| (vec![*i, *j, *k], Cow::Borrowed(c))).collect();
        MultiDisplay { terms, names }
    }
}

impl fmt::Debug for Trivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Trivector(")?;
        for ((i, j, k), c) in &self.comps {
            write!(f, "[{i},{j},{k}]={c}; ")?;
        }
        write!(f, ")")
    }
}

struct MultiDisplay<'a> {
    terms: Vec<(Vec<GenId>, Cow<'a, ZSeries>)>,
    names: &'a [String],
}

impl fmt::Display for MultiDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (idx, c)) in self.terms.iter().enumerate() {
            let body: Vec<&str> = idx.iter().map(|&i| self.names[i as usize].as_str()).collect();
            fmt_coefficient_term(f, n == 0, c, &body.join("^"))?;
        }
        Ok(())
    }
}

type Full3 = HashMap<(GenId, GenId, GenId), ZSeries>;

fn add3(t: &mut Full3, key: (GenId, GenId, GenId), c: ZSeries) {
    if c.is_zero() {
        return;
    }
    match t.get_mut(&key) {
        Some(e) => e.add_assign_ref(&c),
        None => {
            t.insert(key, c);
        }
    }
}

/// `[r12, s13] + [r12, s23] + [r13, s23]` as a full rank-3 tensor.
fn cyb_full(r: &Bivector, s: &Bivector, sc: &StructureConstants) -> Full3 {
    let mut t = Full3::new();
    let (rf, sf) = (r.full(), s.full());
    let order = r.order.max(s.order);
    for (i, j, a) in &rf {
        for (k, l, b) in &sf {
            let ab = (a * b).with_order(order);
            for (m, c) in sc.bracket(*i, *k) {
                add3(&mut t, (*m, *j, *l), ab.scale(c));
            }
            for (m, c) in sc.bracket(*j, *k) {
                add3(&mut t, (*i, *m, *l), ab.scale(c));
            }
            for (m, c) in sc.bracket(*j, *l) {
                add3(&mut t, (*i, *k, *m), ab.scale(c));
            }
        }
    }
    t
}

/// Schouten bracket of two bivectors, symmetrized so that `schouten(r, r)`
/// is the classical Yang-Baxter expression `[[r, r]]`.
pub fn schouten(r: &Bivector, s: &Bivector, sc: &StructureConstants) -> Trivector {
    let order = r.order.max(s.order);
    let mut full = cyb_full(r, s, sc);
    if r != s {
        let half = Rational::new(1.into(), 2.into());
        let other = cyb_full(s, r, sc);
        for v in full.values_mut() {
            *v = v.scale(&half);
        }
        for (k, v) in other {
            add3(&mut full, k, v.scale(&half));
        }
    }
    Trivector::from_full(order, &full)
}

/// `[1 (x) X + X (x) 1, r]`, the adjoint action of `X` on `r`.
pub fn cocommutator(r: &Bivector, x: GenId, sc: &StructureConstants) -> Bivector {
    let mut out = Bivector::zero(r.order);
    for ((i, j), c) in &r.comps {
        for (m, v) in sc.bracket(x, *i) {
            out.add_wedge(*m, *j, &c.scale(v));
        }
        for (m, v) in sc.bracket(x, *j) {
            out.add_wedge(*i, *m, &c.scale(v));
        }
    }
    out
}

/// Cocommutator of every generator, indexed by generator id.
pub fn cocommutator_table(r: &Bivector, sc: &StructureConstants) -> Vec<Bivector> {
    (0..sc.dim() as GenId).map(|x| cocommutator(r, x, sc)).collect()
}

/// `r = 2z (K3 ^ P+ + E1 ^ P1 + E2 ^ P2)`.
pub fn null_plane_r_matrix(sc: &StructureConstants) -> Result<Bivector, BialgebraError> {
    let two_z = ZSeries::monomial(Rational::from_integer(2.into()), 1, BIALGEBRA_ORDER);
    Bivector::from_wedges(sc, &two_z, &[("K3", "P+"), ("E1", "P1"), ("E2", "P2")])
}

/// The cocommutator table as printed alongside the r-matrix.
pub fn printed_cocommutators(sc: &StructureConstants) -> Result<Vec<Bivector>, BialgebraError> {
    let two_z = ZSeries::monomial(Rational::from_integer(2.into()), 1, BIALGEBRA_ORDER);
    let printed: [(&str, &[(&str, &str)]); 10] = [
        ("P+", &[]),
        ("E1", &[]),
        ("E2", &[]),
        ("J3", &[]),
        ("P-", &[("P-", "P+")]),
        ("P1", &[("P1", "P+")]),
        ("P2", &[("P2", "P+")]),
        ("F1", &[("F1", "P+"), ("E1", "P-"), ("J3", "P2")]),
        ("F2", &[("F2", "P+"), ("E2", "P-"), ("J3", "P1")]),
        ("K3", &[("K3", "P+"), ("E1", "P1"), ("E2", "P2")]),
    ];
    let mut out = vec![Bivector::zero(BIALGEBRA_ORDER); sc.dim()];
    for (g, pairs) in printed {
        out[sc.id(g)? as usize] = Bivector::from_wedges(sc, &two_z, pairs)?;
    }
    Ok(out)
}

/// Cyclic sum of `(delta (x) id) delta(X)` for every generator `X`.
pub fn cojacobi_defect(delta: &[Bivector]) -> Vec<Trivector> {
    let order = delta.iter().map(|d| d.order).max().unwrap_or(BIALGEBRA_ORDER);
    delta
        .iter()
        .map(|dx| {
            let mut full = Full3::new();
            for (i, j, a) in dx.full() {
                for (k, l, b) in delta[i as usize].full() {
                    let c = (&a * &b).with_order(order);
                    add3(&mut full, (k, l, j), c.clone());
                    add3(&mut full, (j, k, l), c.clone());
                    add3(&mut full, (l, j, k), c);
                }
            }
            // The cyclic sum of a tensor antisymmetric in its first two slots
            // is three times its antisymmetric projection.
            let mut t = Trivector::from_full(order, &full);
            let three = Rational::from_integer(3.into());
            for v in t.comps.values_mut() {
                *v = v.scale(&three);
            }
            t
        })
        .collect()
}

/// The `z^1` coefficient of `Delta(X) - Delta^op(X)` minus `delta(X)`, for
/// every generator. `inst` must share the generator order of `delta`.
pub fn first_order_consistency(inst: &Instance, delta: &[Bivector]) -> Result<Vec<Bivector>, BialgebraError> {
    let cop = inst.coproduct.as_ref().ok_or(BialgebraError::NoCoproduct)?;
    let names = inst.names();
    let z = ZSeries::monomial(Rational::one(), 1, BIALGEBRA_ORDER);
    let mut out = Vec::with_capacity(names.len());
    for (g, name) in names.iter().enumerate() {
        let t = cop.tensor_image(g as GenId).map_err(|e| BialgebraError::NotBivector(name.clone(), e.to_string()))?;
        let mut first = Bivector::zero(BIALGEBRA_ORDER);
        for (key, c) in t.z_coefficient(1) {
            if key[0].len() != 1 || key[1].len() != 1 {
                let term = key.iter().map(|w| w.render(names)).collect::<Vec<_>>().join(" ox ");
                return Err(BialgebraError::NotBivector(name.clone(), term));
            }
            // (a (x) b) - (b (x) a) = a ^ b
            first.add_wedge(key[0].letters()[0], key[1].letters()[0], &z.scale(&c));
        }
        out.push(first.sub(&delta[g]));
    }
    Ok(out)
}

/// First-order bracket `[x^a, x^b] = sum_c delta_c^{ab} x^c` of dual group
/// coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualBracket {
    pub left: GenId,
    pub right: GenId,
    pub rhs: Vec<(GenId, ZSeries)>,
}

pub fn dual_coordinate_brackets(delta: &[Bivector], coords: &[GenId]) -> Vec<DualBracket> {
    let mut out = Vec::new();
    for (n, &a) in coords.iter().enumerate() {
        for &b in &coords[n + 1..] {
            let rhs = delta
                .iter()
                .enumerate()
                .map(|(c, d)| (c as GenId, d.component(a, b)))
                .filter(|(_, v)| !v.is_zero())
                .collect();
            out.push(DualBracket { left: a, right: b, rhs });
        }
    }
    out
}

impl DualBracket {
    pub fn render(&self, names: &[String], hat: impl Fn(&str) -> String) -> String {
        let lhs = format!("[{}, {}]", hat(&names[self.left as usize]), hat(&names[self.right as usize]));
        if self.rhs.is_empty() {
            return format!("{lhs} = 0");
        }
        let terms = self.rhs.iter().map(|(c, v)| (vec![*c], Cow::Borrowed(v))).collect();
        let hatted: Vec<String> = names.iter().map(|n| hat(n)).collect();
        format!("{lhs} = {}", MultiDisplay { terms, names: &hatted })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algdef::load_bundled;

    fn sc() -> StructureConstants {
        StructureConstants::from_presentation(&load_bundled("poincare-classical").unwrap()).unwrap()
    }

    #[test]
    fn wedge_is_antisymmetric() {
        let sc = sc();
        let one = ZSeries::one(2);
        let b = Bivector::from_wedges(&sc, &one, &[("P1", "P+")]).unwrap();
        assert_eq!(b.component(sc.id("P1").unwrap(), sc.id("P+").unwrap()), one);
        assert_eq!(b.component(sc.id("P+").unwrap(), sc.id("P1").unwrap()), -one.clone());
        assert!(b.add(&Bivector::from_wedges(&sc, &one, &[("P+", "P1")]).unwrap()).is_zero());
    }

    #[test]
    fn trivector_component_signs() {
        let mut full = Full3::new();
        for (k, s) in [((0, 1, 2), 1), ((1, 2, 0), 1), ((2, 0, 1), 1), ((1, 0, 2), -1), ((0, 2, 1), -1), ((2, 1, 0), -1)] {
            full.insert(k, ZSeries::from_integer(s, 0));
        }
        let t = Trivector::from_full(0, &full);
        assert_eq!(t.component(0, 1, 2), ZSeries::one(0));
        assert_eq!(t.component(2, 1, 0), ZSeries::from_integer(-1, 0));
    }
}
