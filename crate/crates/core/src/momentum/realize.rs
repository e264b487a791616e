use std::cell::RefCell;
use std::collections::BTreeMap;

use num_traits::One;

use super::field::{Axis, Coeff, FieldError, Var};
use super::operator::{DiffOperator, SpinMatrix};
use super::MomentumError;
use crate::algdef::{load_bundled, parse_expression, Expr, HopfPresentation, POINCARE_GENERATORS};
use crate::kernel::{Rational, SeriesFunction};
use crate::observables::Casimir;

/// Which spin component accompanies the mass in each of `F1`, `F2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FVariant {
    /// `F1` carries `m S2`, `F2` carries `m S1`.
    Printed,
    /// `F1` carries `m S1`, `F2` carries `m S2`.
    Swapped,
}

/// A triple of spin matrices closing under `[S_i, S_j] = eps_ijk S_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpinTriple(pub [SpinMatrix; 3]);

impl SpinTriple {
    /// Spin 1/2 as `S_k = -(i/2) sigma_k`. The matrices are skew-hermitian,
    /// like the other generators of the real form; `i S_3 = sigma_3 / 2`.
    pub fn spin_half() -> Self {
        let k = Coeff::i().mul(&Coeff::frac(-1, 2));
        SpinTriple(std::array::from_fn(|j| SpinMatrix::pauli(j + 1).scale(&k)))
    }

    /// Validated user triple.
    pub fn new(s: [SpinMatrix; 3]) -> Result<Self, MomentumError> {
        let t = SpinTriple(s);
        let bad: Vec<usize> = t.su2_defects().iter().enumerate().filter(|(_, d)| !d.is_zero()).map(|(k, _)| k + 1).collect();
        if bad.is_empty() {
            Ok(t)
        } else {
            Err(MomentumError::BadSpin(format!("su(2) relation fails for component(s) {bad:?}")))
        }
    }

    /// `[S1,S2]-S3`, `[S2,S3]-S1`, `[S3,S1]-S2`.
    pub fn su2_defects(&self) -> [SpinMatrix; 3] {
        let s = &self.0;
        [
            s[0].commutator(&s[1]).sub(&s[2]),
            s[1].commutator(&s[2]).sub(&s[0]),
            s[2].commutator(&s[0]).sub(&s[1]),
        ]
    }
}

/// `z (m^2 + p1^2 + p2^2)`
fn mass_shell_numerator() -> Coeff {
    let sq = |v| Coeff::var(v).pow(2);
    Coeff::z().mul(&sq(Var::M).add(&sq(Var::P1)).add(&sq(Var::P2)))
}

fn sinh_over_z() -> Coeff {
    Coeff::s().mul(&Coeff::var_pow(Var::Z, -1))
}

fn z_over_sinh() -> Coeff {
    Coeff::z().mul(&Coeff::var_pow(Var::S, -1))
}

/// `exp(n z p+)` as a polynomial in `s`, `c`.
fn exp_n(n: i64) -> Coeff {
    let base = if n >= 0 { Coeff::c().add(&Coeff::s()) } else { Coeff::c().sub(&Coeff::s()) };
    base.pow(n.unsigned_abs() as u32)
}

/// The ten generators as operators on two-component wave functions of
/// `(p+, p1, p2)`, with `M_q` the scalar `m`.
pub fn generator_images(spin: &SpinTriple, variant: FVariant) -> BTreeMap<String, DiffOperator> {
    let [s1, s2, s3] = &spin.0;
    let (p1, p2, m) = (Coeff::var(Var::P1), Coeff::var(Var::P2), Coeff::var(Var::M));
    let mult = DiffOperator::multiplication;
    let mut out = BTreeMap::new();
    out.insert("P+".to_string(), mult(Coeff::var(Var::PPlus)));
    out.insert("P1".to_string(), mult(p1.clone()));
    out.insert("P2".to_string(), mult(p2.clone()));
    out.insert("E1".to_string(), DiffOperator::derivative(Axis::One, sinh_over_z()));
    out.insert("E2".to_string(), DiffOperator::derivative(Axis::Two, sinh_over_z()));
    out.insert(
        "J3".to_string(),
        DiffOperator::derivative(Axis::Two, p1.clone())
            .sub(&DiffOperator::derivative(Axis::One, p2.clone()))
            .add(&DiffOperator::matrix(s3.clone())),
    );
    out.insert("K3".to_string(), DiffOperator::derivative(Axis::Plus, sinh_over_z()));
    let pm = mass_shell_numerator().mul(&Coeff::var_pow(Var::S, -1)).mul(&Coeff::frac(1, 2));
    out.insert("P-".to_string(), mult(pm.clone()));
    let transverse = pm.mul(&Coeff::c());
    let (mass_f1, mass_f2) = match variant {
        FVariant::Printed => (s2, s1),
        FVariant::Swapped => (s1, s2),
    };
    let c = Coeff::c();
    let f1_spin = mass_f1.scale(&m).add(&s3.scale(&p2.mul(&c)));
    let f2_spin = mass_f2.scale(&m).sub(&s3.scale(&p1.mul(&c)));
    let f = |p: &Coeff, axis: Axis, spin: SpinMatrix| {
        DiffOperator::derivative(Axis::Plus, p.clone())
            .add(&DiffOperator::derivative(axis, transverse.clone()))
            .sub(&DiffOperator::matrix(spin.scale(&z_over_sinh())))
    };
    out.insert("F1".to_string(), f(&p1, Axis::One, f1_spin));
    out.insert("F2".to_string(), f(&p2, Axis::Two, f2_spin));
    out
}

/// A representation of a presentation's generators by differential
/// operators, extended to expressions over the presentation.
#[derive(Debug, Clone)]
pub struct Realization {
    presentation: HopfPresentation,
    images: BTreeMap<String, DiffOperator>,
    macro_cache: RefCell<BTreeMap<String, DiffOperator>>,
}

impl Realization {
    /// The quantum algebra with spin 1/2.
    pub fn quantum(variant: FVariant) -> Result<Self, MomentumError> {
        Self::with_spin(&SpinTriple::spin_half(), variant)
    }

    pub fn with_spin(spin: &SpinTriple, variant: FVariant) -> Result<Self, MomentumError> {
        Ok(Self::from_parts(load_bundled("poincare-quantum")?, generator_images(spin, variant)))
    }

    pub fn from_parts(presentation: HopfPresentation, images: BTreeMap<String, DiffOperator>) -> Self {
        Realization { presentation, images, macro_cache: RefCell::new(BTreeMap::new()) }
    }

    pub fn presentation(&self) -> &HopfPresentation {
        &self.presentation
    }

    pub fn generator(&self, name: &str) -> Result<&DiffOperator, MomentumError> {
        self.images.get(name).ok_or_else(|| MomentumError::UnknownGenerator(name.to_string()))
    }

    pub fn images(&self) -> &BTreeMap<String, DiffOperator> {
        &self.images
    }

    /// `z -> 0` limit of every generator, attached to the classical presentation.
    pub fn classical_limit(&self) -> Result<Realization, MomentumError> {
        let mut images = BTreeMap::new();
        for (k, v) in &self.images {
            images.insert(k.clone(), v.classical_limit()?);
        }
        Ok(Self::from_parts(load_bundled("poincare-classical")?, images))
    }

    /// Hermitian operators: `K3, J3, E1, E2` (and `F1, F2`) are multiplied
    /// by the imaginary unit; the momenta are left alone.
    pub fn hermitized(&self) -> Realization {
        let mut images = BTreeMap::new();
        for (k, v) in &self.images {
            let op = if is_skew(k) { v.scale(&Coeff::i()) } else { v.clone() };
            images.insert(k.clone(), op);
        }
        Self::from_parts(self.presentation.clone(), images)
    }

    pub fn eval_str(&self, text: &str) -> Result<DiffOperator, MomentumError> {
        self.eval(&parse_expression(&self.presentation, text)?)
    }

    pub fn eval(&self, e: &Expr) -> Result<DiffOperator, MomentumError> {
        Ok(match e {
            Expr::Num(q) => DiffOperator::multiplication(Coeff::constant(q.clone())),
            Expr::Z => DiffOperator::multiplication(Coeff::z()),
            Expr::Gen(g) => self.generator(g)?.clone(),
            Expr::Macro(name) => {
                if let Some(v) = self.macro_cache.borrow().get(name) {
                    return Ok(v.clone());
                }
                let def = self
                    .presentation
                    .macros
                    .iter()
                    .find(|d| &d.name == name)
                    .ok_or_else(|| MomentumError::Unsupported(format!("undefined macro '{name}'")))?;
                let v = self.eval(&def.rhs)?;
                self.macro_cache.borrow_mut().insert(name.clone(), v.clone());
                v
            }
            Expr::Func { f, scale, arg } => DiffOperator::multiplication(self.function(*f, scale, arg)?),
            Expr::Neg(inner) => self.eval(inner)?.neg(),
            Expr::Sum(terms) => {
                let mut acc = DiffOperator::zero();
                for t in terms {
                    acc = acc.add(&self.eval(t)?);
                }
                acc
            }
            Expr::Product(factors) => {
                let mut acc = DiffOperator::identity();
                for f in factors {
                    acc = match f {
                        Expr::Recip(n) => acc.scale_rational(&Rational::new(1.into(), n.clone())),
                        other => acc.compose(&self.eval(other)?),
                    };
                }
                acc
            }
            Expr::Recip(n) => DiffOperator::multiplication(Coeff::constant(Rational::new(1.into(), n.clone()))),
            Expr::Pow(base, n) => self.eval(base)?.pow(*n),
            Expr::Bracket(a, b) => self.eval(a)?.commutator(&self.eval(b)?),
            Expr::Tensor(_) => return Err(MomentumError::Unsupported("tensor expression".into())),
        })
    }

    fn function(&self, f: SeriesFunction, scale: &Rational, arg: &str) -> Result<Coeff, MomentumError> {
        if self.generator(arg)?.as_scalar() != Some(Coeff::var(Var::PPlus)) {
            return Err(MomentumError::Unsupported(format!("function of {arg}")));
        }
        if !scale.denom().is_one() {
            return Err(MomentumError::Unsupported(format!("non-integer scale {scale}")));
        }
        let n: i64 = scale.numer().try_into().map_err(|_| MomentumError::Unsupported(format!("scale {scale}")))?;
        let half = Coeff::frac(1, 2);
        let sinh = || exp_n(n).sub(&exp_n(-n)).mul(&half);
        Ok(match f {
            SeriesFunction::Exp => exp_n(n),
            SeriesFunction::Sinh => sinh(),
            SeriesFunction::Cosh => exp_n(n).add(&exp_n(-n)).mul(&half),
            SeriesFunction::SinhOverZ => sinh().mul(&Coeff::var_pow(Var::Z, -1)),
        })
    }

    /// Printed right-hand side of `[x, y]`, realized; zero when the table is silent.
    pub fn bracket_rhs(&self, x: &str, y: &str) -> Result<DiffOperator, MomentumError> {
        for b in &self.presentation.brackets {
            if b.left == x && b.right == y {
                return self.eval(&b.rhs);
            }
            if b.left == y && b.right == x {
                return Ok(self.eval(&b.rhs)?.neg());
            }
        }
        Ok(DiffOperator::zero())
    }
}

pub(crate) fn is_skew(name: &str) -> bool {
    matches!(name, "K3" | "J3" | "E1" | "E2" | "F1" | "F2")
}

/// `A B - B A`
pub fn diffop_commutator(a: &DiffOperator, b: &DiffOperator) -> DiffOperator {
    a.commutator(b)
}

/// One generator pair of the realization check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairDefect {
    pub left: String,
    pub right: String,
    /// `[rho(left), rho(right)] - factor * rho(rhs)`
    pub defect: DiffOperator,
}

impl PairDefect {
    pub fn passed(&self) -> bool {
        self.defect.is_zero()
    }
}

/// All 45 unordered generator pairs, `[rho(X), rho(Y)] - factor * rho(rhs)`.
pub fn pair_suite(r: &Realization, factor: &Coeff) -> Result<Vec<PairDefect>, MomentumError> {
    let mut out = Vec::new();
    for (a, x) in POINCARE_GENERATORS.iter().enumerate() {
        for y in &POINCARE_GENERATORS[a + 1..] {
            let lhs = r.generator(x)?.commutator(r.generator(y)?);
            let rhs = r.bracket_rhs(x, y)?.scale(factor);
            out.push(PairDefect { left: x.to_string(), right: y.to_string(), defect: lhs.sub(&rhs) });
        }
    }
    Ok(out)
}

/// The bracket table checked in the momentum realization.
pub fn realization_defect_suite(r: &Realization) -> Result<Vec<PairDefect>, MomentumError> {
    pair_suite(r, &Coeff::one())
}

/// Failing pairs for each placement of the mass-spin terms in `F1`, `F2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexAssignment {
    pub printed: Vec<PairDefect>,
    pub swapped: Vec<PairDefect>,
}

impl IndexAssignment {
    pub fn consistent(&self) -> Vec<FVariant> {
        let mut out = Vec::new();
        if self.printed.iter().all(PairDefect::passed) {
            out.push(FVariant::Printed);
        }
        if self.swapped.iter().all(PairDefect::passed) {
            out.push(FVariant::Swapped);
        }
        out
    }
}

pub fn index_assignment_check() -> Result<IndexAssignment, MomentumError> {
    Ok(IndexAssignment {
        printed: realization_defect_suite(&Realization::quantum(FVariant::Printed)?)?,
        swapped: realization_defect_suite(&Realization::quantum(FVariant::Swapped)?)?,
    })
}

/// `M_q^2` or `W_q^2` evaluated in the realization.
pub fn casimir_eval(r: &Realization, c: Casimir) -> Result<DiffOperator, MomentumError> {
    match c {
        Casimir::Mq2 | Casimir::Wq2 | Casimir::M2 | Casimir::W2 => r.eval_str(c.formula()),
        other => Err(MomentumError::Unsupported(format!("{} is not a Poincare invariant", other.name()))),
    }
}

/// Quantum spin component `i` in 1..=3 from the Pauli-Lubanski components.
pub fn quantum_spin(r: &Realization, i: usize) -> Result<DiffOperator, MomentumError> {
    let wp = r.eval_str("Wpq")?;
    let tanh_factor = |p: Var| Coeff::z().mul(&Coeff::var(p)).mul(&Coeff::c()).mul(&Coeff::var_pow(Var::S, -1));
    let inv_m = Coeff::var_pow(Var::M, -1);
    Ok(match i {
        1 => r.eval_str("W23q")?.add(&wp.scale(&tanh_factor(Var::P1))).scale(&inv_m),
        2 => r.eval_str("W13q")?.sub(&wp.scale(&tanh_factor(Var::P2))).scale(&inv_m),
        3 => wp.scale(&z_over_sinh()),
        _ => return Err(MomentumError::Unsupported(format!("spin component {i}"))),
    })
}

/// Results of the quantum spin checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpinReport {
    pub components: [DiffOperator; 3],
    /// `[S1,S2]-S3`, `[S2,S3]-S1`, `[S3,S1]-S2`
    pub su2: [DiffOperator; 3],
    /// `(component, generator, commutes)`
    pub commutation: Vec<(usize, String, bool)>,
}

impl SpinReport {
    pub fn su2_holds(&self) -> bool {
        self.su2.iter().all(DiffOperator::is_zero)
    }

    /// True when every component commutes with the stability generators
    /// other than `J3`.
    pub fn commutes_with_stability_except_j3(&self) -> bool {
        self.commutation.iter().filter(|(_, g, _)| g != "J3").all(|(_, _, ok)| *ok)
    }

    pub fn helicity_central(&self) -> bool {
        self.commutation.iter().filter(|(k, _, _)| *k == 3).all(|(_, _, ok)| *ok)
    }
}

pub fn spin_report(r: &Realization) -> Result<SpinReport, MomentumError> {
    let s: Vec<DiffOperator> = (1..=3).map(|i| quantum_spin(r, i)).collect::<Result<_, _>>()?;
    let su2 = [
        s[0].commutator(&s[1]).sub(&s[2]),
        s[1].commutator(&s[2]).sub(&s[0]),
        s[2].commutator(&s[0]).sub(&s[1]),
    ];
    let mut commutation = Vec::new();
    for (k, sk) in s.iter().enumerate() {
        for g in crate::algdef::SPLUS {
            commutation.push((k + 1, g.to_string(), sk.commutator(r.generator(g)?).is_zero()));
        }
    }
    Ok(SpinReport { components: [s[0].clone(), s[1].clone(), s[2].clone()], su2, commutation })
}

/// `F1`, `F2` rebuilt from the mass, quantum spin and stability generators,
/// minus their realized forms.
pub fn hamiltonian_reconstruction(r: &Realization) -> Result<[DiffOperator; 2], MomentumError> {
    let s: Vec<DiffOperator> = (1..=3).map(|i| quantum_spin(r, i)).collect::<Result<_, _>>()?;
    let g = |n: &str| r.generator(n).cloned();
    let c = DiffOperator::multiplication(Coeff::c());
    let m = Coeff::var(Var::M);
    let tail = DiffOperator::multiplication(z_over_sinh());
    let build = |p: &str, e: &str, mass_spin: &DiffOperator, sign: i64| -> Result<DiffOperator, MomentumError> {
        let kin = g("K3")?.compose(&g(p)?).add(&g(e)?.compose(&g("P-")?).compose(&c));
        let other = if p == "P1" { "P2" } else { "P1" };
        let hel = g(other)?.compose(&c).compose(&s[2]).scale(&Coeff::int(sign));
        Ok(kin.sub(&mass_spin.scale(&m).add(&hel)).compose(&tail))
    };
    let f1 = build("P1", "E1", &s[1], 1)?;
    let f2 = build("P2", "E2", &s[0], -1)?;
    Ok([f1.sub(&g("F1")?), f2.sub(&g("F2")?)])
}

/// Denominator function of the position operators `Q_i = E_i / f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PositionChoice {
    /// `f = sinh(z p+) / z`
    SinhOverZ,
    /// `f = tanh(z p+) / z`
    TanhOverZ,
    /// Any function of `p+` with an invertible monomial form.
    Custom(Coeff),
}

impl PositionChoice {
    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "sinh" | "sinh_over_z" => Some(Self::SinhOverZ),
            "tanh" | "tanh_over_z" => Some(Self::TanhOverZ),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::SinhOverZ => "sinh",
            Self::TanhOverZ => "tanh",
            Self::Custom(_) => "custom",
        }
    }

    pub fn f(&self) -> Coeff {
        match self {
            Self::SinhOverZ => sinh_over_z(),
            Self::TanhOverZ => sinh_over_z().mul(&Coeff::var_pow(Var::C, -1)),
            Self::Custom(f) => f.clone(),
        }
    }

    /// `f` must depend on `p+` alone and tend to `p+` as `z -> 0`.
    pub fn validate(&self) -> Result<Coeff, MomentumError> {
        let f = self.f();
        if [Var::P1, Var::P2, Var::M, Var::I].iter().any(|&v| f.depends_on(v)) {
            return Err(MomentumError::BadPositionFunction(format!("{f} depends on more than p+")));
        }
        let lim = f.classical_limit().map_err(|_| MomentumError::BadPositionFunction(format!("{f} diverges at z = 0")))?;
        if lim != Coeff::var(Var::PPlus) {
            return Err(MomentumError::BadPositionFunction(format!("{f} tends to {lim}, not p+")));
        }
        f.try_inv().map_err(|_| MomentumError::BadPositionFunction(format!("{f} vanishes for p+ > 0")))?;
        Ok(f)
    }
}

/// `Q_i = i E_i / f` for `i` in 1..=2.
pub fn position_operator(r: &Realization, i: usize, choice: &PositionChoice) -> Result<DiffOperator, MomentumError> {
    let f = choice.validate()?;
    let e = r.generator(match i {
        1 => "E1",
        2 => "E2",
        _ => return Err(MomentumError::Unsupported(format!("position component {i}"))),
    })?;
    Ok(e.scale(&Coeff::i()).compose(&DiffOperator::multiplication(f.try_inv()?)))
}

/// Hermitian form of a generator.
pub fn hermitization(r: &Realization, name: &str) -> Result<DiffOperator, MomentumError> {
    let op = r.generator(name)?;
    Ok(if is_skew(name) { op.scale(&Coeff::i()) } else { op.clone() })
}

/// One bracket of the position-operator table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositionBracket {
    pub label: String,
    pub computed: DiffOperator,
    /// The general formula in `f` and its derivative.
    pub general: DiffOperator,
    /// The value printed for this particular choice, where one exists.
    pub specific: Option<DiffOperator>,
}

impl PositionBracket {
    pub fn matches_general(&self) -> bool {
        self.computed == self.general
    }

    pub fn matches_specific(&self) -> Option<bool> {
        self.specific.as_ref().map(|s| *s == self.computed)
    }
}

/// Brackets of `Q_1`, `Q_2` with the hermitian stability generators,
/// `P-`, and each other.
pub fn position_bracket_table(r: &Realization, choice: &PositionChoice) -> Result<Vec<PositionBracket>, MomentumError> {
    let f = choice.validate()?;
    let finv = f.try_inv()?;
    let fp = f.derive(Axis::Plus);
    let i = Coeff::i();
    let q = [position_operator(r, 1, choice)?, position_operator(r, 2, choice)?];
    let h = |n: &str| hermitization(r, n);
    let mult = DiffOperator::multiplication;
    let s_z = sinh_over_z();
    let brace = fp.mul(&finv).mul(&finv).mul(&s_z).sub(&Coeff::c().mul(&finv));
    let mut out = Vec::new();
    for k in 0..2 {
        let n = k + 1;
        let e_hat = h(&format!("E{n}"))?;
        let row = |label: String, other: DiffOperator, general: DiffOperator, specific: Option<DiffOperator>| PositionBracket {
            label,
            computed: q[k].commutator(&other),
            general,
            specific,
        };
        for j in 1..=2 {
            out.push(row(format!("[Q{n}, E{j}]"), h(&format!("E{j}"))?, DiffOperator::zero(), None));
        }
        let k3_specific = match choice {
            PositionChoice::SinhOverZ => Some(DiffOperator::zero()),
            PositionChoice::TanhOverZ => Some(e_hat.scale(&i).compose(&mult(Coeff::z().mul(&Coeff::s())))),
            PositionChoice::Custom(_) => None,
        };
        out.push(row(format!("[Q{n}, K3]"), h("K3")?, e_hat.scale(&i).compose(&mult(brace.clone())), k3_specific));
        let j3_general = if n == 1 { q[1].scale(&i) } else { q[0].scale(&i.neg()) };
        out.push(row(format!("[Q{n}, J3]"), h("J3")?, j3_general, None));
        out.push(row(format!("[Q{n}, P+]"), h("P+")?, DiffOperator::zero(), None));
        for j in 1..=2 {
            let general = if j == n { mult(i.mul(&s_z).mul(&finv)) } else { DiffOperator::zero() };
            let specific = match (choice, j == n) {
                (_, false) => None,
                (PositionChoice::SinhOverZ, true) => Some(mult(i.clone())),
                (PositionChoice::TanhOverZ, true) => Some(mult(i.mul(&Coeff::c()))),
                (PositionChoice::Custom(_), true) => None,
            };
            out.push(row(format!("[Q{n}, P{j}]"), h(&format!("P{j}"))?, general, specific));
        }
        let p_i = Coeff::var(if n == 1 { Var::P1 } else { Var::P2 });
        let pm_specific = match choice {
            PositionChoice::SinhOverZ => Some(mult(i.mul(&Coeff::z()).mul(&p_i).mul(&Coeff::var_pow(Var::S, -1)))),
            PositionChoice::TanhOverZ => {
                Some(mult(i.mul(&Coeff::z()).mul(&p_i).mul(&Coeff::c()).mul(&Coeff::var_pow(Var::S, -1))))
            }
            PositionChoice::Custom(_) => None,
        };
        out.push(row(format!("[Q{n}, P-]"), h("P-")?, mult(i.mul(&p_i).mul(&finv)), pm_specific));
    }
    out.push(PositionBracket {
        label: "[Q1, Q2]".into(),
        computed: q[0].commutator(&q[1]),
        general: DiffOperator::zero(),
        specific: Some(DiffOperator::zero()),
    });
    Ok(out)
}

/// `[X^, Y^] - i rho^(rhs)` over all pairs, with every generator hermitized.
pub fn hermitian_bracket_suite(r: &Realization) -> Result<Vec<PairDefect>, MomentumError> {
    pair_suite(&r.hermitized(), &Coeff::i())
}

/// Value of `W_q^2` when it is a scalar matrix: the coefficient of `m^2`.
pub fn pauli_lubanski_scalar(r: &Realization) -> Result<Option<Coeff>, MomentumError> {
    Ok(casimir_eval(r, Casimir::Wq2)?.as_scalar())
}

impl From<FieldError> for MomentumError {
    fn from(e: FieldError) -> Self {
        MomentumError::Field(e)
    }
}
