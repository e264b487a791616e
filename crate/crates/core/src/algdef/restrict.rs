use std::fmt;

use thiserror::Error;

use super::ast::Expr;
use super::presentation::{Definition, HopfPresentation};
use super::{AlgdefError, ErrorKind, Span};
use crate::engine::{GenId, Image, Word};

/// Where a closure failure was observed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessSite {
    Coproduct(String),
    Bracket(String, String),
}

impl fmt::Display for WitnessSite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WitnessSite::Coproduct(g) => write!(f, "Delta({g})"),
            WitnessSite::Bracket(a, b) => write!(f, "[{a}, {b}]"),
        }
    }
}

/// A structure constant of the subset that leaves the subset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureWitness {
    pub site: WitnessSite,
    /// Offending terms, rendered with `ox` between tensor factors.
    pub terms: Vec<String>,
    /// Generators outside the subset that occur in those terms.
    pub outside: Vec<String>,
}

impl ClosureWitness {
    pub fn has_term(&self, term: &str) -> bool {
        self.terms.iter().any(|t| t == term)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureFailure {
    /// Coproduct witnesses come first, then brackets, each in PBW order.
    pub witnesses: Vec<ClosureWitness>,
}

impl ClosureFailure {
    pub fn first(&self) -> &ClosureWitness {
        &self.witnesses[0]
    }

    pub fn find(&self, site: &WitnessSite) -> Option<&ClosureWitness> {
        self.witnesses.iter().find(|w| &w.site == site)
    }
}

impl fmt::Display for ClosureFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self.first();
        write!(f, "{} contains {}", w.site, w.terms[0])?;
        if self.witnesses.len() > 1 {
            write!(f, " (and {} more sites)", self.witnesses.len() - 1)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RestrictError {
    #[error(transparent)]
    Definition(#[from] AlgdefError),
    #[error("not closed: {0}")]
    NotClosed(ClosureFailure),
}

fn subset_ids(parent: &HopfPresentation, subset: &[&str]) -> Result<Vec<bool>, AlgdefError> {
    let mut inside = vec![false; parent.generators.len()];
    for name in subset {
        let idx = parent
            .generator_index(name)
            .ok_or_else(|| AlgdefError::new(ErrorKind::UndeclaredSymbol(name.to_string()), Span::default()))?;
        inside[idx] = true;
    }
    Ok(inside)
}

fn word_outside<'a>(w: &'a Word, inside: &'a [bool]) -> impl Iterator<Item = GenId> + 'a {
    w.letters().iter().copied().filter(move |&g| !inside[g as usize])
}

/// Substitutes zero for every generator outside `subset` in all defining
/// expressions and keeps only the definitions that belong to the subset.
pub fn project(parent: &HopfPresentation, subset: &[&str], name: &str) -> Result<HopfPresentation, AlgdefError> {
    let inside = subset_ids(parent, subset)?;
    let outside: Vec<String> =
        parent.generators.iter().zip(&inside).filter(|(_, &i)| !i).map(|(g, _)| g.clone()).collect();
    let keep = |g: &String| !outside.contains(g);

    let mut zero_macros: Vec<String> = Vec::new();
    let mut macros = Vec::new();
    for m in &parent.macros {
        let rhs = m.rhs.substitute_zero(&outside, &zero_macros);
        if rhs.is_literal_zero() {
            zero_macros.push(m.name.clone());
        } else {
            macros.push(Definition { name: m.name.clone(), rhs, span: m.span });
        }
    }
    let subst = |e: &Expr| e.substitute_zero(&outside, &zero_macros);
    let map_defs = |defs: &[Definition]| -> Vec<Definition> {
        defs.iter()
            .filter(|d| keep(&d.name))
            .map(|d| Definition { name: d.name.clone(), rhs: subst(&d.rhs), span: d.span })
            .collect()
    };
    let mut brackets = Vec::new();
    for b in &parent.brackets {
        if keep(&b.left) && keep(&b.right) {
            let rhs = subst(&b.rhs);
            if !rhs.is_literal_zero() {
                brackets.push(super::BracketDef { rhs, ..b.clone() });
            }
        }
    }
    let projected = HopfPresentation {
        name: name.to_string(),
        generators: parent.generators.iter().filter(|g| keep(g)).cloned().collect(),
        grading: parent.generators.iter().zip(&parent.grading).filter(|(g, _)| keep(g)).map(|(_, &h)| h).collect(),
        series: parent.series.iter().filter(|g| keep(g)).cloned().collect(),
        center: parent.center.iter().filter(|g| keep(g)).cloned().collect(),
        macros,
        brackets,
        coproduct: map_defs(&parent.coproduct),
        counit: map_defs(&parent.counit),
        antipode: map_defs(&parent.antipode),
        identification: None,
    };
    // Series functions of a removed generator are evaluated at zero by the
    // substitution, so the series list only loses names that no longer occur.
    Ok(projected)
}

/// Restricts `parent` to the Hopf subalgebra generated by `subset`, checked at
/// truncation order `order`. Fails with every offending coproduct and bracket
/// when the subset does not close.
pub fn restrict(
    parent: &HopfPresentation,
    subset: &[&str],
    name: &str,
    order: usize,
) -> Result<HopfPresentation, RestrictError> {
    let inside = subset_ids(parent, subset)?;
    let inst = parent.instantiate(order)?;
    let names = inst.names().to_vec();
    let mut witnesses = Vec::new();

    let collect_outside = |letters: &mut Vec<GenId>, w: &Word| {
        for g in word_outside(w, &inside) {
            if !letters.contains(&g) {
                letters.push(g);
            }
        }
    };

    if let Some(delta) = &inst.coproduct {
        for (g, _) in inside.iter().enumerate().filter(|(_, &i)| i) {
            let Ok(Image::Tensor(t)) = delta.image(g as GenId) else { continue };
            let mut terms = Vec::new();
            let mut letters = Vec::new();
            for key in t.terms().keys() {
                if key.iter().any(|w| word_outside(w, &inside).next().is_some()) {
                    terms.push(key.iter().map(|w| w.render(&names)).collect::<Vec<_>>().join(" ox "));
                    key.iter().for_each(|w| collect_outside(&mut letters, w));
                }
            }
            if !terms.is_empty() {
                letters.sort_unstable();
                witnesses.push(ClosureWitness {
                    site: WitnessSite::Coproduct(names[g].clone()),
                    terms,
                    outside: letters.iter().map(|&l| names[l as usize].clone()).collect(),
                });
            }
        }
    }
    let members: Vec<GenId> = (0..names.len() as GenId).filter(|&g| inside[g as usize]).collect();
    for (i, &a) in members.iter().enumerate() {
        for &b in &members[i + 1..] {
            let br = inst.engine.bracket(b, a);
            let mut terms = Vec::new();
            let mut letters = Vec::new();
            for w in br.terms().keys() {
                if word_outside(w, &inside).next().is_some() {
                    terms.push(w.render(&names));
                    collect_outside(&mut letters, w);
                }
            }
            if !terms.is_empty() {
                letters.sort_unstable();
                witnesses.push(ClosureWitness {
                    site: WitnessSite::Bracket(names[b as usize].clone(), names[a as usize].clone()),
                    terms,
                    outside: letters.iter().map(|&l| names[l as usize].clone()).collect(),
                });
            }
        }
    }
    if !witnesses.is_empty() {
        return Err(RestrictError::NotClosed(ClosureFailure { witnesses }));
    }

    let restricted = project(parent, subset, name)?;
    // The syntactic restriction must agree with the parent's normal forms.
    let sub = restricted.instantiate(order)?;
    let to_parent: Vec<GenId> = members.clone();
    let lift_word = |w: &Word| Word::from_letters(&w.letters().iter().map(|&g| to_parent[g as usize]).collect::<Vec<_>>());
    let mismatch = |what: String| {
        RestrictError::Definition(AlgdefError::eval(
            format!("restricted presentation disagrees with its parent at {what}"),
            Span::default(),
        ))
    };
    let n = members.len() as GenId;
    for a in 0..n {
        for b in 0..a {
            let mine = sub.engine.bracket(a, b);
            let theirs = inst.engine.bracket(to_parent[a as usize], to_parent[b as usize]);
            let lifted: Vec<(Word, _)> = mine.terms().iter().map(|(w, c)| (lift_word(w), c.clone())).collect();
            let lifted = crate::engine::AlgebraElement::from_terms(order, lifted);
            if lifted != theirs {
                return Err(mismatch(format!("[{}, {}]", names[to_parent[a as usize] as usize], names[to_parent[b as usize] as usize])));
            }
        }
    }
    if let (Some(mine), Some(theirs)) = (&sub.coproduct, &inst.coproduct) {
        for g in 0..n {
            let (Ok(Image::Tensor(x)), Ok(Image::Tensor(y))) = (mine.image(g), theirs.image(to_parent[g as usize])) else {
                return Err(mismatch(format!("Delta({})", names[to_parent[g as usize] as usize])));
            };
            let mut lifted = crate::engine::TensorElement::zero(2, order);
            for (k, c) in x.terms() {
                lifted.add_term(k.iter().map(lift_word).collect(), c);
            }
            if &lifted != y {
                return Err(mismatch(format!("Delta({})", names[to_parent[g as usize] as usize])));
            }
        }
    }
    Ok(restricted)
}
