use super::element::AlgebraElement;
use super::normal::Engine;
use super::tensor::TensorElement;
use super::word::{GenId, Word};
use super::EngineError;
use crate::kernel::ZSeries;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MorphismKind {
    Homomorphism,
    AntiHomomorphism,
}

/// Image of a single generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Image {
    Algebra(AlgebraElement),
    Tensor(TensorElement),
}

/// A map defined on generators and extended (anti-)multiplicatively.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphismTable {
    pub kind: MorphismKind,
    pub images: Vec<Option<Image>>,
    /// Generator names of the source presentation, for error messages.
    pub source_names: Vec<String>,
}

impl MorphismTable {
    pub fn image(&self, g: GenId) -> Result<&Image, EngineError> {
        self.images
            .get(g as usize)
            .and_then(Option::as_ref)
            .ok_or_else(|| EngineError::MissingImage(self.source_names.get(g as usize).cloned().unwrap_or_else(|| g.to_string())))
    }

    pub fn algebra_image(&self, g: GenId) -> Result<&AlgebraElement, EngineError> {
        match self.image(g)? {
            Image::Algebra(a) => Ok(a),
            Image::Tensor(_) => Err(EngineError::ImageKind("expected algebra-valued images")),
        }
    }

    pub fn tensor_image(&self, g: GenId) -> Result<&TensorElement, EngineError> {
        match self.image(g)? {
            Image::Tensor(t) => Ok(t),
            Image::Algebra(_) => Err(EngineError::ImageKind("expected tensor-valued images")),
        }
    }

    fn tensor_rank(&self) -> Option<usize> {
        self.images.iter().flatten().find_map(|i| match i {
            Image::Tensor(t) => Some(t.rank()),
            Image::Algebra(_) => None,
        })
    }
}

impl Engine {
    /// Extends `m` to the element `e` and normal-orders in this (target) engine.
    pub fn apply_morphism(&self, m: &MorphismTable, e: &AlgebraElement) -> Result<Image, EngineError> {
        match m.tensor_rank() {
            Some(rank) => Ok(Image::Tensor(self.apply_to_tensor(m, e, rank)?)),
            None => Ok(Image::Algebra(self.apply_to_algebra(m, e)?)),
        }
    }

    /// Algebra-valued extension of `m`.
    pub fn apply_to_algebra(&self, m: &MorphismTable, e: &AlgebraElement) -> Result<AlgebraElement, EngineError> {
        let mut out = AlgebraElement::zero(self.order());
        for (w, c) in e.terms() {
            let img = self.word_image(m, w, &c.with_order(self.order()))?;
            out = out.add(&img);
        }
        Ok(out)
    }

    /// `m(w)` scaled by `c`.
    pub fn word_image(&self, m: &MorphismTable, w: &Word, c: &ZSeries) -> Result<AlgebraElement, EngineError> {
        let letters: Vec<GenId> = match m.kind {
            MorphismKind::Homomorphism => w.letters().to_vec(),
            MorphismKind::AntiHomomorphism => w.letters().iter().rev().copied().collect(),
        };
        let mut acc = AlgebraElement::scalar(c.clone());
        for g in letters {
            if acc.is_zero() {
                break;
            }
            acc = self.mul(&acc, m.algebra_image(g)?)?;
        }
        Ok(acc)
    }

    fn apply_to_tensor(&self, m: &MorphismTable, e: &AlgebraElement, rank: usize) -> Result<TensorElement, EngineError> {
        if m.kind == MorphismKind::AntiHomomorphism {
            return Err(EngineError::ImageKind("tensor-valued anti-homomorphisms are not supported"));
        }
        let mut out = TensorElement::zero(rank, self.order());
        for (w, c) in e.terms() {
            out = out.add(&self.word_tensor_image(m, w, &c.with_order(self.order()), rank)?);
        }
        Ok(out)
    }

    /// `c * m(w)` for a tensor-valued homomorphism.
    pub fn word_tensor_image(
        &self,
        m: &MorphismTable,
        w: &Word,
        c: &ZSeries,
        rank: usize,
    ) -> Result<TensorElement, EngineError> {
        let mut acc = TensorElement::scalar(rank, c.clone());
        for &g in w.letters() {
            if acc.is_zero() {
                break;
            }
            acc = self.tensor_mul(&acc, m.tensor_image(g)?)?;
        }
        Ok(acc)
    }
}
