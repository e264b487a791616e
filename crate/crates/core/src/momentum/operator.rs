use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use super::field::{Axis, Coeff, FieldError, Point};
use crate::kernel::Rational;

/// 2x2 matrix over [`Coeff`], acting on the two helicity components.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SpinMatrix(pub [[Coeff; 2]; 2]);

impl SpinMatrix {
    pub fn zero() -> Self {
        SpinMatrix(std::array::from_fn(|_| std::array::from_fn(|_| Coeff::zero())))
    }

    pub fn identity() -> Self {
        Self::scalar(Coeff::one())
    }

    pub fn scalar(c: Coeff) -> Self {
        let mut m = Self::zero();
        m.0[0][0] = c.clone();
        m.0[1][1] = c;
        m
    }

    pub fn from_entries(a: Coeff, b: Coeff, c: Coeff, d: Coeff) -> Self {
        SpinMatrix([[a, b], [c, d]])
    }

    /// Pauli matrix `sigma_k`, `k` in 1..=3.
    pub fn pauli(k: usize) -> Self {
        let (z, o, i) = (Coeff::zero(), Coeff::one(), Coeff::i());
        match k {
            1 => Self::from_entries(z.clone(), o.clone(), o, z),
            2 => Self::from_entries(z.clone(), i.neg(), i, z),
            3 => Self::from_entries(o.clone(), z.clone(), z, o.neg()),
            _ => panic!("pauli index {k}"),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().flatten().all(Coeff::is_zero)
    }

    pub fn map(&self, f: impl Fn(&Coeff) -> Coeff) -> Self {
        SpinMatrix(std::array::from_fn(|r| std::array::from_fn(|c| f(&self.0[r][c]))))
    }

    pub fn try_map<E>(&self, f: impl Fn(&Coeff) -> Result<Coeff, E>) -> Result<Self, E> {
        let mut out = Self::zero();
        for r in 0..2 {
            for c in 0..2 {
                out.0[r][c] = f(&self.0[r][c])?;
            }
        }
        Ok(out)
    }

    pub fn add(&self, o: &Self) -> Self {
        SpinMatrix(std::array::from_fn(|r| std::array::from_fn(|c| self.0[r][c].add(&o.0[r][c]))))
    }

    pub fn sub(&self, o: &Self) -> Self {
        SpinMatrix(std::array::from_fn(|r| std::array::from_fn(|c| self.0[r][c].sub(&o.0[r][c]))))
    }

    pub fn mul(&self, o: &Self) -> Self {
        SpinMatrix(std::array::from_fn(|r| {
            std::array::from_fn(|c| self.0[r][0].mul(&o.0[0][c]).add(&self.0[r][1].mul(&o.0[1][c])))
        }))
    }

    pub fn scale(&self, k: &Coeff) -> Self {
        self.map(|x| x.mul(k))
    }

    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    /// Components `(a0, a1, a2, a3)` with `M = a0 + a1 sigma1 + a2 sigma2 + a3 sigma3`.
    pub fn pauli_components(&self) -> [Coeff; 4] {
        let half = Coeff::frac(1, 2);
        let m = &self.0;
        [
            m[0][0].add(&m[1][1]).mul(&half),
            m[0][1].add(&m[1][0]).mul(&half),
            m[0][1].sub(&m[1][0]).mul(&Coeff::i()).mul(&half),
            m[0][0].sub(&m[1][1]).mul(&half),
        ]
    }

    /// The scalar `a` when the matrix is `a * identity`.
    pub fn as_scalar(&self) -> Option<Coeff> {
        let m = &self.0;
        (m[0][1].is_zero() && m[1][0].is_zero() && m[0][0] == m[1][1]).then(|| m[0][0].clone())
    }

    pub fn eval(&self, p: &Point) -> [[Complex64; 2]; 2] {
        std::array::from_fn(|r| std::array::from_fn(|c| self.0[r][c].eval(p)))
    }
}

impl fmt::Display for SpinMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels = ["", "sigma1", "sigma2", "sigma3"];
        let mut first = true;
        for (k, a) in self.pauli_components().iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (k, a.is_one()) {
                (0, _) => write!(f, "({a})")?,
                (_, true) => write!(f, "{}", labels[k])?,
                _ => write!(f, "({a})*{}", labels[k])?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Multi-index `(a, b, c)` for `d+^a d1^b d2^c`.
pub type DerivIndex = [u8; 3];

/// `sum_alpha C_alpha(p) d^alpha` with 2x2 matrix coefficients standing to
/// the left of the derivatives.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DiffOperator {
    terms: BTreeMap<DerivIndex, SpinMatrix>,
}

fn binom_u8(n: u8, k: u8) -> i64 {
    (0..k).fold(1i64, |acc, j| acc * i64::from(n - j) / i64::from(j + 1))
}

impl DiffOperator {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity() -> Self {
        Self::multiplication(Coeff::one())
    }

    pub fn multiplication(c: Coeff) -> Self {
        Self::matrix(SpinMatrix::scalar(c))
    }

    pub fn matrix(m: SpinMatrix) -> Self {
        Self::term([0, 0, 0], m)
    }

    /// `c * d_axis`
    pub fn derivative(axis: Axis, c: Coeff) -> Self {
        let mut idx = [0; 3];
        idx[axis as usize] = 1;
        Self::term(idx, SpinMatrix::scalar(c))
    }

    pub fn term(idx: DerivIndex, m: SpinMatrix) -> Self {
        let mut out = Self::zero();
        out.add_term(idx, &m);
        out
    }

    fn add_term(&mut self, idx: DerivIndex, m: &SpinMatrix) {
        if m.is_zero() {
            return;
        }
        let sum = match self.terms.get(&idx) {
            Some(old) => old.add(m),
            None => m.clone(),
        };
        if sum.is_zero() {
            self.terms.remove(&idx);
        } else {
            self.terms.insert(idx, sum);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&DerivIndex, &SpinMatrix)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest total derivative order.
    pub fn order(&self) -> u8 {
        self.terms.keys().map(|k| k.iter().sum()).max().unwrap_or(0)
    }

    pub fn coefficient(&self, idx: DerivIndex) -> SpinMatrix {
        self.terms.get(&idx).cloned().unwrap_or_else(SpinMatrix::zero)
    }

    /// The matrix when the operator has no derivative part.
    pub fn as_matrix(&self) -> Option<SpinMatrix> {
        match self.terms.len() {
            0 => Some(SpinMatrix::zero()),
            1 => self.terms.get(&[0, 0, 0]).cloned(),
            _ => None,
        }
    }

    /// The scalar `a` when the operator is multiplication by `a * identity`.
    pub fn as_scalar(&self) -> Option<Coeff> {
        self.as_matrix()?.as_scalar()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (k, m) in &o.terms {
            out.add_term(*k, m);
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&Coeff::int(-1))
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    /// Left multiplication by a scalar function.
    pub fn scale(&self, c: &Coeff) -> Self {
        let mut out = Self::zero();
        for (k, m) in &self.terms {
            out.add_term(*k, &m.scale(c));
        }
        out
    }

    pub fn scale_rational(&self, q: &Rational) -> Self {
        self.scale(&Coeff::constant(q.clone()))
    }

    /// Operator product `self o other`, by the Leibniz rule.
    pub fn compose(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (a, ma) in &self.terms {
            for (b, mb) in &o.terms {
                for g0 in 0..=a[0] {
                    for g1 in 0..=a[1] {
                        for g2 in 0..=a[2] {
                            let g = [g0, g1, g2];
                            let w = binom_u8(a[0], g0) * binom_u8(a[1], g1) * binom_u8(a[2], g2);
                            let db = mb.map(|c| c.derive_multi(g));
                            if db.is_zero() {
                                continue;
                            }
                            let prod = ma.mul(&db).scale(&Coeff::int(w));
                            let idx = [a[0] - g0 + b[0], a[1] - g1 + b[1], a[2] - g2 + b[2]];
                            out.add_term(idx, &prod);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::identity();
        for _ in 0..k {
            acc = acc.compose(self);
        }
        acc
    }

    pub fn commutator(&self, o: &Self) -> Self {
        self.compose(o).sub(&o.compose(self))
    }

    pub fn try_map_coeffs(&self, f: impl Fn(&Coeff) -> Result<Coeff, FieldError>) -> Result<Self, FieldError> {
        let mut out = Self::zero();
        for (k, m) in &self.terms {
            out.add_term(*k, &m.try_map(&f)?);
        }
        Ok(out)
    }

    /// Coefficient-wise `z -> 0` limit.
    pub fn classical_limit(&self) -> Result<Self, FieldError> {
        self.try_map_coeffs(Coeff::classical_limit)
    }

    /// Coefficient-wise substitution of a value for the mass symbol.
    pub fn at_mass(&self, m: &Rational) -> Result<Self, FieldError> {
        self.try_map_coeffs(|c| c.at_mass(m))
    }
}

impl fmt::Display for DiffOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by_key(|(idx, _)| (idx.iter().sum::<u8>(), std::cmp::Reverse(**idx)));
        for (n, (idx, m)) in terms.into_iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "[{m}]")?;
            for axis in Axis::ALL {
                match idx[axis as usize] {
                    0 => {}
                    1 => write!(f, " {}", axis.symbol())?,
                    k => write!(f, " {}^{k}", axis.symbol())?,
                }
            }
        }
        Ok(())
    }
}
