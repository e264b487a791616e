use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use crate::kernel::{rational_to_f64, Rational};

/// Commuting symbols of the coefficient ring. `S` and `C` stand for
/// `sinh(z p+)` and `cosh(z p+)`; `I` is the imaginary unit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    Z = 0,
    PPlus = 1,
    P1 = 2,
    P2 = 3,
    M = 4,
    S = 5,
    C = 6,
    I = 7,
}

pub const NVARS: usize = 8;
const NAMES: [&str; NVARS] = ["z", "p+", "p1", "p2", "m", "s", "c", "i"];

impl Var {
    pub const ALL: [Var; NVARS] = [Var::Z, Var::PPlus, Var::P1, Var::P2, Var::M, Var::S, Var::C, Var::I];

    pub fn name(self) -> &'static str {
        NAMES[self as usize]
    }
}

/// Momentum directions for the derivations `d+`, `d1`, `d2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axis {
    Plus = 0,
    One = 1,
    Two = 2,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::Plus, Axis::One, Axis::Two];

    pub fn symbol(self) -> &'static str {
        ["d+", "d1", "d2"][self as usize]
    }
}

type Exps = [u16; NVARS];

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
struct Poly {
    terms: BTreeMap<Exps, Rational>,
}

fn binomial(n: u32, k: u32) -> Rational {
    let mut acc = Rational::one();
    for j in 0..k {
        acc = acc * Rational::from_integer((n - j).into()) / Rational::from_integer((j + 1).into());
    }
    acc
}

impl Poly {
    fn constant(q: Rational) -> Self {
        let mut p = Poly::default();
        p.push([0; NVARS], q);
        p
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_raw(&mut self, e: Exps, q: Rational) {
        if q.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Rational::zero);
        *slot += q;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    /// Adds `q * x^e`, rewriting `c^2 = s^2 + 1` and `i^2 = -1`.
    fn push(&mut self, mut e: Exps, mut q: Rational) {
        let ie = e[Var::I as usize];
        if ie >= 2 {
            if (ie / 2) % 2 == 1 {
                q = -q;
            }
            e[Var::I as usize] = ie % 2;
        }
        let ce = e[Var::C as usize];
        if ce < 2 {
            self.add_raw(e, q);
            return;
        }
        let half = u32::from(ce / 2);
        e[Var::C as usize] = ce % 2;
        for j in 0..=half {
            let mut f = e;
            f[Var::S as usize] += 2 * j as u16;
            self.add_raw(f, &q * binomial(half, j));
        }
    }

    fn add(&self, o: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, q) in &o.terms {
            out.add_raw(*e, q.clone());
        }
        out
    }

    fn scale(&self, q: &Rational) -> Poly {
        if q.is_zero() {
            return Poly::default();
        }
        Poly { terms: self.terms.iter().map(|(e, c)| (*e, c * q)).collect() }
    }

    fn mul(&self, o: &Poly) -> Poly {
        let mut out = Poly::default();
        for (ea, qa) in &self.terms {
            for (eb, qb) in &o.terms {
                let mut e = *ea;
                for v in 0..NVARS {
                    e[v] += eb[v];
                }
                out.push(e, qa * qb);
            }
        }
        out
    }

    fn mul_monomial(&self, m: &Exps) -> Poly {
        let mut out = Poly::default();
        for (e, q) in &self.terms {
            let mut f = *e;
            for v in 0..NVARS {
                f[v] += m[v];
            }
            out.push(f, q.clone());
        }
        out
    }

    fn min_degree(&self, v: usize) -> u16 {
        self.terms.keys().map(|e| e[v]).min().unwrap_or(0)
    }

    fn derive(&self, axis: Axis) -> Poly {
        let mut out = Poly::default();
        for (e, q) in &self.terms {
            match axis {
                Axis::One | Axis::Two => {
                    let v = if axis == Axis::One { Var::P1 } else { Var::P2 } as usize;
                    if e[v] > 0 {
                        let mut f = *e;
                        f[v] -= 1;
                        out.push(f, q * Rational::from_integer(e[v].into()));
                    }
                }
                Axis::Plus => {
                    let (p, s, c, z) = (Var::PPlus as usize, Var::S as usize, Var::C as usize, Var::Z as usize);
                    if e[p] > 0 {
                        let mut f = *e;
                        f[p] -= 1;
                        out.push(f, q * Rational::from_integer(e[p].into()));
                    }
                    if e[s] > 0 {
                        let mut f = *e;
                        f[s] -= 1;
                        f[c] += 1;
                        f[z] += 1;
                        out.push(f, q * Rational::from_integer(e[s].into()));
                    }
                    if e[c] > 0 {
                        let mut f = *e;
                        f[c] -= 1;
                        f[s] += 1;
                        f[z] += 1;
                        out.push(f, q * Rational::from_integer(e[c].into()));
                    }
                }
            }
        }
        out
    }

    /// Splits into the parts of c-degree 0 and 1 (the latter with `c` removed).
    fn split_c(&self) -> (Poly, Poly) {
        let (mut a, mut b) = (Poly::default(), Poly::default());
        for (e, q) in &self.terms {
            if e[Var::C as usize] == 0 {
                a.add_raw(*e, q.clone());
            } else {
                let mut f = *e;
                f[Var::C as usize] -= 1;
                b.add_raw(f, q.clone());
            }
        }
        (a, b)
    }

    /// Exact quotient by `s^2 + 1` when it exists.
    fn div_s2_plus_1(&self) -> Option<Poly> {
        let s = Var::S as usize;
        let mut groups: BTreeMap<Exps, BTreeMap<u16, Rational>> = BTreeMap::new();
        for (e, q) in &self.terms {
            let mut k = *e;
            k[s] = 0;
            groups.entry(k).or_default().insert(e[s], q.clone());
        }
        let mut out = Poly::default();
        for (k, mut coeffs) in groups {
            while let Some((&d, _)) = coeffs.iter().next_back() {
                if d < 2 {
                    return None;
                }
                let lead = coeffs.remove(&d).unwrap();
                let low = coeffs.entry(d - 2).or_insert_with(Rational::zero);
                *low -= &lead;
                if low.is_zero() {
                    coeffs.remove(&(d - 2));
                }
                let mut e = k;
                e[s] = d - 2;
                out.add_raw(e, lead);
            }
        }
        Some(out)
    }

    fn fmt_with(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (e, q)) in self.terms.iter().rev().enumerate() {
            let neg = q.is_negative();
            if n == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let mag = q.abs();
            let mono = fmt_monomial(e);
            match (mag.is_one(), mono.is_empty()) {
                (true, true) => write!(f, "1")?,
                (true, false) => write!(f, "{mono}")?,
                (false, true) => write!(f, "{mag}")?,
                (false, false) => write!(f, "{mag}*{mono}")?,
            }
        }
        Ok(())
    }
}

fn fmt_monomial(e: &Exps) -> String {
    let mut parts = Vec::new();
    for v in 0..NVARS {
        match e[v] {
            0 => {}
            1 => parts.push(NAMES[v].to_string()),
            k => parts.push(format!("{}^{}", NAMES[v], k)),
        }
    }
    parts.join("*")
}

/// Element of the coefficient field: a reduced polynomial over a monomial
/// denominator in `z, p+, m, s, c`. The representation is canonical, so
/// structural equality is equality of functions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coeff {
    num: Poly,
    den: Exps,
}

/// Point at which a coefficient is evaluated numerically.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub z: f64,
    pub p_plus: f64,
    pub p1: f64,
    pub p2: f64,
    pub m: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("cannot invert {0}")]
    NotInvertible(String),
    #[error("{0} has no finite limit at z = 0")]
    Divergent(String),
}

impl Coeff {
    pub fn zero() -> Self {
        Coeff { num: Poly::default(), den: [0; NVARS] }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(q: Rational) -> Self {
        Coeff { num: Poly::constant(q), den: [0; NVARS] }.canonical()
    }

    pub fn int(n: i64) -> Self {
        Self::constant(Rational::from_integer(n.into()))
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Self::constant(Rational::new(n.into(), d.into()))
    }

    pub fn var(v: Var) -> Self {
        let mut e = [0; NVARS];
        e[v as usize] = 1;
        let mut num = Poly::default();
        num.push(e, Rational::one());
        Coeff { num, den: [0; NVARS] }
    }

    /// `x^k` for a variable that may appear in denominators, with negative
    /// exponents allowed.
    pub fn var_pow(v: Var, k: i32) -> Self {
        if k >= 0 {
            return Self::var(v).pow(k as u32);
        }
        assert!(!matches!(v, Var::I | Var::P1 | Var::P2), "{} cannot be a denominator", v.name());
        let mut den = [0; NVARS];
        den[v as usize] = (-k) as u16;
        Coeff { num: Poly::constant(Rational::one()), den }
    }

    pub fn z() -> Self {
        Self::var(Var::Z)
    }
    pub fn s() -> Self {
        Self::var(Var::S)
    }
    pub fn c() -> Self {
        Self::var(Var::C)
    }
    pub fn i() -> Self {
        Self::var(Var::I)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// True when the rational constant is the whole value.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.is_zero() {
            return Some(Rational::zero());
        }
        if self.den != [0; NVARS] || self.num.terms.len() != 1 {
            return None;
        }
        let (e, q) = self.num.terms.iter().next().unwrap();
        (*e == [0; NVARS]).then(|| q.clone())
    }

    pub fn depends_on(&self, v: Var) -> bool {
        self.den[v as usize] > 0 || self.num.terms.keys().any(|e| e[v as usize] > 0)
    }

    fn canonical(mut self) -> Self {
        if self.num.is_zero() {
            self.den = [0; NVARS];
            return self;
        }
        loop {
            for v in [Var::Z, Var::PPlus, Var::M, Var::S] {
                let k = self.den[v as usize].min(self.num.min_degree(v as usize));
                if k > 0 {
                    self.den[v as usize] -= k;
                    let mut terms = BTreeMap::new();
                    for (mut e, q) in std::mem::take(&mut self.num.terms) {
                        e[v as usize] -= k;
                        terms.insert(e, q);
                    }
                    self.num.terms = terms;
                }
            }
            if self.den[Var::C as usize] == 0 {
                break;
            }
            let (a, b) = self.num.split_c();
            let Some(beta) = a.div_s2_plus_1() else { break };
            let mut c1 = [0; NVARS];
            c1[Var::C as usize] = 1;
            self.num = b.add(&beta.mul_monomial(&c1));
            self.den[Var::C as usize] -= 1;
        }
        self
    }

    fn with_den(&self, den: &Exps) -> Poly {
        let mut extra = [0; NVARS];
        for v in 0..NVARS {
            extra[v] = den[v] - self.den[v];
        }
        self.num.mul_monomial(&extra)
    }

    pub fn add(&self, o: &Coeff) -> Coeff {
        let mut den = [0; NVARS];
        for v in 0..NVARS {
            den[v] = self.den[v].max(o.den[v]);
        }
        Coeff { num: self.with_den(&den).add(&o.with_den(&den)), den }.canonical()
    }

    pub fn neg(&self) -> Coeff {
        self.scale(&-Rational::one())
    }

    pub fn sub(&self, o: &Coeff) -> Coeff {
        self.add(&o.neg())
    }

    pub fn scale(&self, q: &Rational) -> Coeff {
        Coeff { num: self.num.scale(q), den: self.den }.canonical()
    }

    pub fn mul(&self, o: &Coeff) -> Coeff {
        let mut den = self.den;
        for v in 0..NVARS {
            den[v] += o.den[v];
        }
        Coeff { num: self.num.mul(&o.num), den }.canonical()
    }

    pub fn pow(&self, k: u32) -> Coeff {
        let mut acc = Coeff::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Inverse, available when the numerator is a single monomial free of
    /// the symbols that cannot be denominators.
    pub fn try_inv(&self) -> Result<Coeff, FieldError> {
        let bad = || FieldError::NotInvertible(self.to_string());
        if self.num.terms.len() != 1 {
            return Err(bad());
        }
        let (e, q) = self.num.terms.iter().next().unwrap();
        if e[Var::I as usize] > 0 || e[Var::P1 as usize] > 0 || e[Var::P2 as usize] > 0 {
            return Err(bad());
        }
        let mut num = Poly::default();
        num.push(self.den, q.recip());
        Ok(Coeff { num, den: *e }.canonical())
    }

    pub fn div(&self, o: &Coeff) -> Result<Coeff, FieldError> {
        Ok(self.mul(&o.try_inv()?))
    }

    /// Partial derivative; `d+` acts by `p+ -> 1, s -> z c, c -> z s`.
    pub fn derive(&self, axis: Axis) -> Coeff {
        let dn = self.num.derive(axis);
        if self.den == [0; NVARS] {
            return Coeff { num: dn, den: self.den }.canonical();
        }
        let mut den_poly = Poly::default();
        den_poly.push(self.den, Rational::one());
        let dd = den_poly.derive(axis);
        if dd.is_zero() {
            return Coeff { num: dn, den: self.den }.canonical();
        }
        let num = dn.mul(&den_poly).add(&self.num.mul(&dd).scale(&-Rational::one()));
        let mut den = self.den;
        for v in 0..NVARS {
            den[v] *= 2;
        }
        Coeff { num, den }.canonical()
    }

    pub fn derive_multi(&self, idx: [u8; 3]) -> Coeff {
        let mut out = self.clone();
        for axis in Axis::ALL {
            for _ in 0..idx[axis as usize] {
                out = out.derive(axis);
            }
        }
        out
    }

    /// Complex value at a point with `z != 0` (or no `z` dependence).
    pub fn eval(&self, p: &Point) -> Complex64 {
        self.numeric().eval(p)
    }

    /// Floating-point form for repeated evaluation.
    pub fn numeric(&self) -> NumericCoeff {
        NumericCoeff {
            terms: self.num.terms.iter().map(|(e, q)| (rational_to_f64(q), *e)).collect(),
            den: self.den,
        }
    }

    /// The `z -> 0` limit, expanding `s = z p+ + ...` and `c = 1 + ...`.
    pub fn classical_limit(&self) -> Result<Coeff, FieldError> {
        if self.is_zero() {
            return Ok(Coeff::zero());
        }
        let (z, p, s, c) = (Var::Z as usize, Var::PPlus as usize, Var::S as usize, Var::C as usize);
        let target = u32::from(self.den[z]) + u32::from(self.den[s]);
        let trunc = |poly: Poly| Poly {
            terms: poly.terms.into_iter().filter(|(e, _)| u32::from(e[z]) <= target).collect(),
        };
        let series = |odd: bool| {
            let mut out = Poly::default();
            let mut k = u32::from(odd);
            let mut fact = Rational::one();
            for j in 1..=k {
                fact *= Rational::from_integer(j.into());
            }
            while k <= target {
                let mut e = [0; NVARS];
                e[z] = k as u16;
                e[p] = k as u16;
                out.push(e, fact.recip());
                fact *= Rational::from_integer(((k + 1) * (k + 2)).into());
                k += 2;
            }
            out
        };
        let (ss, cs) = (series(true), series(false));
        let mut expanded = Poly::default();
        for (e, q) in &self.num.terms {
            let mut base = *e;
            base[s] = 0;
            base[c] = 0;
            let mut t = Poly::default();
            t.push(base, q.clone());
            for _ in 0..e[s] {
                t = trunc(t.mul(&ss));
            }
            for _ in 0..e[c] {
                t = trunc(t.mul(&cs));
            }
            expanded = expanded.add(&t);
        }
        let mut lead = Poly::default();
        for (e, q) in expanded.terms {
            if u32::from(e[z]) < target {
                return Err(FieldError::Divergent(self.to_string()));
            }
            if u32::from(e[z]) > target {
                continue;
            }
            let mut f = e;
            f[z] = 0;
            lead.add_raw(f, q);
        }
        let mut den = [0; NVARS];
        den[p] = self.den[p] + self.den[s];
        den[Var::M as usize] = self.den[Var::M as usize];
        Ok(Coeff { num: lead, den }.canonical())
    }

    /// Substitutes a rational value for `m`; `m` must not occur in the denominator
    /// unless the value is nonzero.
    pub fn at_mass(&self, m: &Rational) -> Result<Coeff, FieldError> {
        let mv = Var::M as usize;
        let mut num = Poly::default();
        for (e, q) in &self.num.terms {
            let mut f = *e;
            f[mv] = 0;
            num.push(f, q * num_traits::pow(m.clone(), e[mv].into()));
        }
        let mut den = self.den;
        let dm = den[mv];
        den[mv] = 0;
        if dm > 0 {
            if m.is_zero() {
                return Err(FieldError::NotInvertible("m".into()));
            }
            num = num.scale(&num_traits::pow(m.recip(), dm.into()));
        }
        Ok(Coeff { num, den }.canonical())
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let den = fmt_monomial(&self.den);
        let compound = self.num.terms.len() > 1;
        if den.is_empty() {
            return self.num.fmt_with(f);
        }
        if compound {
            write!(f, "(")?;
        }
        self.num.fmt_with(f)?;
        if compound {
            write!(f, ")")?;
        }
        if self.den.iter().filter(|&&k| k > 0).count() > 1 {
            write!(f, "/({den})")
        } else {
            write!(f, "/{den}")
        }
    }
}

/// A [`Coeff`] with `f64` coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct NumericCoeff {
    terms: Vec<(f64, Exps)>,
    den: Exps,
}

impl Point {
    fn values(&self) -> [Complex64; NVARS] {
        let x = self.z * self.p_plus;
        [
            Complex64::new(self.z, 0.0),
            Complex64::new(self.p_plus, 0.0),
            Complex64::new(self.p1, 0.0),
            Complex64::new(self.p2, 0.0),
            Complex64::new(self.m, 0.0),
            Complex64::new(x.sinh(), 0.0),
            Complex64::new(x.cosh(), 0.0),
            Complex64::i(),
        ]
    }
}

impl NumericCoeff {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, p: &Point) -> Complex64 {
        if self.terms.is_empty() {
            return Complex64::zero();
        }
        let vals = p.values();
        let mut acc = Complex64::zero();
        for (q, e) in &self.terms {
            let mut t = Complex64::new(*q, 0.0);
            for v in 0..NVARS {
                if e[v] > 0 {
                    t *= vals[v].powu(e[v].into());
                }
            }
            acc += t;
        }
        let mut den = Complex64::one();
        for v in 0..NVARS {
            if self.den[v] > 0 {
                den *= vals[v].powu(self.den[v].into());
            }
        }
        acc / den
    }
}

impl From<i64> for Coeff {
    fn from(n: i64) -> Self {
        Coeff::int(n)
    }
}

macro_rules! coeff_binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl std::ops::$tr<&Coeff> for &Coeff {
            type Output = Coeff;
            fn $m(self, o: &Coeff) -> Coeff {
                self.$f(o)
            }
        }
        impl std::ops::$tr<Coeff> for Coeff {
            type Output = Coeff;
            fn $m(self, o: Coeff) -> Coeff {
                (&self).$f(&o)
            }
        }
    };
}
coeff_binop!(Add, add, add);
coeff_binop!(Sub, sub, sub);
coeff_binop!(Mul, mul, mul);

impl std::ops::Neg for Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        Coeff::neg(&self)
    }
}
