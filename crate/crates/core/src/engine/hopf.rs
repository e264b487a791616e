use num_traits::{One, Zero};

use super::element::AlgebraElement;
use super::morphism::MorphismTable;
use super::normal::Engine;
use super::tensor::{TensorElement, TensorKey};
use super::word::{GenId, Word};
use super::EngineError;
use crate::kernel::{Rational, ZSeries};

/// `[x,[y,w]] + [y,[w,x]] + [w,[x,y]]` in normal form.
pub fn jacobi_defect(engine: &Engine, x: GenId, y: GenId, w: GenId) -> Result<AlgebraElement, EngineError> {
    let gx = engine.gen(x);
    let gy = engine.gen(y);
    let gw = engine.gen(w);
    let a = engine.commutator(&gx, &engine.bracket(y, w))?;
    let b = engine.commutator(&gy, &engine.bracket(w, x))?;
    let c = engine.commutator(&gw, &engine.bracket(x, y))?;
    Ok(a.add(&b).add(&c))
}

/// `Δ([x, y]) - [Δx, Δy]` in the tensor square.
pub fn coproduct_homomorphism_defect(
    engine: &Engine,
    x: GenId,
    y: GenId,
    delta: &MorphismTable,
) -> Result<TensorElement, EngineError> {
    let lhs = engine.apply_to_tensor_rank2(delta, &engine.bracket(x, y))?;
    let rhs = engine.tensor_commutator(delta.tensor_image(x)?, delta.tensor_image(y)?)?;
    Ok(lhs.sub(&rhs))
}

/// `(Δ⊗id)Δ(x) - (id⊗Δ)Δ(x)` as a rank-3 tensor.
pub fn coassociativity_defect(engine: &Engine, x: GenId, delta: &MorphismTable) -> Result<TensorElement, EngineError> {
    let dx = delta.tensor_image(x)?;
    let order = engine.order();
    let mut left = TensorElement::zero(3, order);
    let mut right = TensorElement::zero(3, order);
    for (k, c) in dx.terms() {
        let du = engine.word_tensor_image(delta, &k[0], c, 2)?;
        for (ku, cu) in du.terms() {
            left.add_term(TensorKey::from_iter([ku[0].clone(), ku[1].clone(), k[1].clone()]), cu);
        }
        let dv = engine.word_tensor_image(delta, &k[1], c, 2)?;
        for (kv, cv) in dv.terms() {
            right.add_term(TensorKey::from_iter([k[0].clone(), kv[0].clone(), kv[1].clone()]), cv);
        }
    }
    Ok(left.sub(&right))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CounitDefect {
    /// `(ε⊗id)Δ(x) - x`
    pub left: AlgebraElement,
    /// `(id⊗ε)Δ(x) - x`
    pub right: AlgebraElement,
}

impl CounitDefect {
    pub fn is_zero(&self) -> bool {
        self.left.is_zero() && self.right.is_zero()
    }
}

fn counit_of_word(engine: &Engine, eps: &MorphismTable, w: &Word) -> Result<ZSeries, EngineError> {
    let img = engine.word_image(eps, w, &ZSeries::one(engine.order()))?;
    Ok(img.scalar_part())
}

pub fn counit_defect(
    engine: &Engine,
    x: GenId,
    delta: &MorphismTable,
    eps: &MorphismTable,
) -> Result<CounitDefect, EngineError> {
    let dx = delta.tensor_image(x)?;
    let order = engine.order();
    let mut left = AlgebraElement::zero(order);
    let mut right = AlgebraElement::zero(order);
    for (k, c) in dx.terms() {
        let e0 = counit_of_word(engine, eps, &k[0])?;
        left.add_term(k[1].clone(), &(c * &e0));
        let e1 = counit_of_word(engine, eps, &k[1])?;
        right.add_term(k[0].clone(), &(c * &e1));
    }
    let gx = engine.gen(x);
    Ok(CounitDefect { left: left.sub(&gx), right: right.sub(&gx) })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AntipodeDefect {
    /// `m(γ⊗id)Δ(x) - ε(x)1`
    pub left: AlgebraElement,
    /// `m(id⊗γ)Δ(x) - ε(x)1`
    pub right: AlgebraElement,
}

impl AntipodeDefect {
    pub fn is_zero(&self) -> bool {
        self.left.is_zero() && self.right.is_zero()
    }
}

pub fn antipode_axiom_defect(
    engine: &Engine,
    x: GenId,
    delta: &MorphismTable,
    gamma: &MorphismTable,
    eps: &MorphismTable,
) -> Result<AntipodeDefect, EngineError> {
    let dx = delta.tensor_image(x)?;
    let order = engine.order();
    let mut left = AlgebraElement::zero(order);
    let mut right = AlgebraElement::zero(order);
    let one = ZSeries::one(order);
    for (k, c) in dx.terms() {
        let ga = engine.word_image(gamma, &k[0], c)?;
        left = left.add(&engine.mul(&ga, &AlgebraElement::term(k[1].clone(), one.clone()))?);
        let gb = engine.word_image(gamma, &k[1], c)?;
        right = right.add(&engine.mul(&AlgebraElement::term(k[0].clone(), one.clone()), &gb)?);
    }
    let ex = AlgebraElement::scalar(counit_of_word(engine, eps, &Word::letter(x))?);
    Ok(AntipodeDefect { left: left.sub(&ex), right: right.sub(&ex) })
}

/// `e^{a z G} X e^{-a z G}` through the truncated adjoint series
/// `X + a z [G, X] + (a z)^2/2! [G, [G, X]] + ...`.
pub fn conjugate_by_exp(
    engine: &Engine,
    scale: &Rational,
    g: GenId,
    x: &AlgebraElement,
) -> Result<AlgebraElement, EngineError> {
    let order = engine.order();
    let gen = engine.gen(g);
    let mut term = engine.normal_form(x)?;
    let mut out = term.clone();
    let mut fact = Rational::one();
    for k in 1..=order {
        term = engine.commutator(&gen, &term)?;
        if term.is_zero() {
            break;
        }
        fact *= Rational::from_integer(k.into());
        let c = ZSeries::monomial(num_traits::pow(scale.clone(), k) / &fact, k, order);
        if c.is_zero() && !scale.is_zero() {
            continue;
        }
        out = out.add(&term.scale(&c));
    }
    Ok(out)
}

impl Engine {
    pub(crate) fn apply_to_tensor_rank2(
        &self,
        m: &MorphismTable,
        e: &AlgebraElement,
    ) -> Result<TensorElement, EngineError> {
        let mut out = TensorElement::zero(2, self.order());
        for (w, c) in e.terms() {
            out = out.add(&self.word_tensor_image(m, w, &c.with_order(self.order()), 2)?);
        }
        Ok(out)
    }
}
