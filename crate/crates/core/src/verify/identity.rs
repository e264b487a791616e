use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algdef::{AlgdefError, Instance};
use crate::engine::{
    antipode_axiom_defect, coassociativity_defect, coproduct_homomorphism_defect, counit_defect, jacobi_defect,
    AlgebraElement, EngineError, GenId, TensorElement,
};

/// A single checkable statement about a presentation. Generators and macros
/// are referred to by name.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "args", rename_all = "snake_case")]
pub enum Identity {
    Jacobi(String, String, String),
    Homomorphism(String, String),
    Coassociativity(String),
    Counit(String),
    Antipode(String),
    /// The macro commutes with every generator.
    Central(String),
    /// Two macros have the same normal form.
    Equal(String, String),
    /// Two expressions in the presentation's language have the same normal form.
    Relation(String, String),
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Identity::Jacobi(a, b, c) => write!(f, "jacobi({a}, {b}, {c})"),
            Identity::Homomorphism(a, b) => write!(f, "homomorphism({a}, {b})"),
            Identity::Coassociativity(g) => write!(f, "coassociativity({g})"),
            Identity::Counit(g) => write!(f, "counit({g})"),
            Identity::Antipode(g) => write!(f, "antipode({g})"),
            Identity::Central(m) => write!(f, "central({m})"),
            Identity::Equal(a, b) => write!(f, "{a} == {b}"),
            Identity::Relation(a, b) => write!(f, "{a} = {b}"),
        }
    }
}

/// The non-zero remainder of an identity, in whatever shape it naturally has.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Defect {
    Algebra(AlgebraElement),
    Tensor(TensorElement),
    /// Left and right versions of a two-sided axiom.
    Sides(AlgebraElement, AlgebraElement),
    /// One entry per generator, e.g. commutators with a candidate central element.
    PerGenerator(Vec<(String, AlgebraElement)>),
}

impl Defect {
    pub fn is_zero(&self) -> bool {
        match self {
            Defect::Algebra(a) => a.is_zero(),
            Defect::Tensor(t) => t.is_zero(),
            Defect::Sides(l, r) => l.is_zero() && r.is_zero(),
            Defect::PerGenerator(v) => v.iter().all(|(_, a)| a.is_zero()),
        }
    }

    /// Lowest power of z with a non-zero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        let alg = |a: &AlgebraElement| a.terms().values().filter_map(|c| c.valuation()).min();
        match self {
            Defect::Algebra(a) => alg(a),
            Defect::Tensor(t) => t.terms().values().filter_map(|c| c.valuation()).min(),
            Defect::Sides(l, r) => [alg(l), alg(r)].into_iter().flatten().min(),
            Defect::PerGenerator(v) => v.iter().filter_map(|(_, a)| alg(a)).min(),
        }
    }

    pub fn render(&self, names: &[String]) -> String {
        match self {
            Defect::Algebra(a) => a.display(names).to_string(),
            Defect::Tensor(t) => t.display(names).to_string(),
            Defect::Sides(l, r) => {
                let mut parts = Vec::new();
                if !l.is_zero() {
                    parts.push(format!("left: {}", l.display(names)));
                }
                if !r.is_zero() {
                    parts.push(format!("right: {}", r.display(names)));
                }
                parts.join("; ")
            }
            Defect::PerGenerator(v) => v
                .iter()
                .filter(|(_, a)| !a.is_zero())
                .map(|(g, a)| format!("[{g}]: {}", a.display(names)))
                .collect::<Vec<_>>()
                .join("; "),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CheckError {
    #[error("unknown generator '{0}'")]
    UnknownGenerator(String),
    #[error("presentation lacks {0}")]
    MissingStructure(&'static str),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Definition(#[from] AlgdefError),
}

fn id(inst: &Instance, name: &str) -> Result<GenId, CheckError> {
    inst.id(name).ok_or_else(|| CheckError::UnknownGenerator(name.to_string()))
}

impl Identity {
    /// Generators this identity is stated for.
    pub fn generators(&self) -> Vec<&str> {
        match self {
            Identity::Jacobi(a, b, c) => vec![a, b, c],
            Identity::Homomorphism(a, b) => vec![a, b],
            Identity::Coassociativity(g) | Identity::Counit(g) | Identity::Antipode(g) => vec![g],
            Identity::Central(_) | Identity::Equal(_, _) | Identity::Relation(_, _) => vec![],
        }
    }

    pub fn defect(&self, inst: &Instance) -> Result<Defect, CheckError> {
        let e = &*inst.engine;
        let delta = || inst.coproduct.as_ref().ok_or(CheckError::MissingStructure("a coproduct"));
        let eps = || inst.counit.as_ref().ok_or(CheckError::MissingStructure("a counit"));
        let gamma = || inst.antipode.as_ref().ok_or(CheckError::MissingStructure("an antipode"));
        Ok(match self {
            Identity::Jacobi(a, b, c) => Defect::Algebra(jacobi_defect(e, id(inst, a)?, id(inst, b)?, id(inst, c)?)?),
            Identity::Homomorphism(a, b) => {
                Defect::Tensor(coproduct_homomorphism_defect(e, id(inst, a)?, id(inst, b)?, delta()?)?)
            }
            Identity::Coassociativity(g) => Defect::Tensor(coassociativity_defect(e, id(inst, g)?, delta()?)?),
            Identity::Counit(g) => {
                let d = counit_defect(e, id(inst, g)?, delta()?, eps()?)?;
                Defect::Sides(d.left, d.right)
            }
            Identity::Antipode(g) => {
                let d = antipode_axiom_defect(e, id(inst, g)?, delta()?, gamma()?, eps()?)?;
                Defect::Sides(d.left, d.right)
            }
            Identity::Central(m) => {
                let c = inst.element(m)?;
                let mut out = Vec::new();
                for (g, name) in inst.names().iter().enumerate() {
                    out.push((name.clone(), e.commutator(&c, &e.gen(g as GenId))?));
                }
                Defect::PerGenerator(out)
            }
            Identity::Equal(a, b) | Identity::Relation(a, b) => Defect::Algebra(inst.element(a)?.sub(&inst.element(b)?)),
        })
    }

    pub fn holds(&self, inst: &Instance) -> Result<bool, CheckError> {
        Ok(self.defect(inst)?.is_zero())
    }
}

/// All unordered triples of distinct generators.
pub fn jacobi_identities(names: &[String]) -> Vec<Identity> {
    let mut out = Vec::new();
    for i in 0..names.len() {
        for j in i + 1..names.len() {
            for k in j + 1..names.len() {
                out.push(Identity::Jacobi(names[i].clone(), names[j].clone(), names[k].clone()));
            }
        }
    }
    out
}

/// Homomorphism on all unordered pairs, then coassociativity, counit and
/// antipode per generator.
pub fn hopf_identities(names: &[String]) -> Vec<Identity> {
    let mut out = Vec::new();
    for i in 0..names.len() {
        for j in i + 1..names.len() {
            out.push(Identity::Homomorphism(names[i].clone(), names[j].clone()));
        }
    }
    out.extend(names.iter().map(|g| Identity::Coassociativity(g.clone())));
    out.extend(names.iter().map(|g| Identity::Counit(g.clone())));
    out.extend(names.iter().map(|g| Identity::Antipode(g.clone())));
    out
}

/// Outcome of one identity.
#[derive(Debug, Clone)]
pub struct Checked {
    pub identity: Identity,
    pub defect: Defect,
}

impl Checked {
    pub fn passed(&self) -> bool {
        self.defect.is_zero()
    }
}

/// Checks identities on all available cores; results keep the input order.
pub fn check_all(inst: &Instance, identities: &[Identity]) -> Result<Vec<Checked>, CheckError> {
    let threads = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1).min(identities.len().max(1));
    let chunk = identities.len().div_ceil(threads).max(1);
    let results: Vec<Result<Vec<Checked>, CheckError>> = std::thread::scope(|s| {
        let handles: Vec<_> = identities
            .chunks(chunk)
            .map(|part| {
                s.spawn(move || {
                    part.iter()
                        .map(|i| Ok(Checked { identity: i.clone(), defect: i.defect(inst)? }))
                        .collect::<Result<Vec<_>, CheckError>>()
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("checker thread panicked")).collect()
    });
    let mut out = Vec::with_capacity(identities.len());
    for r in results {
        out.extend(r?);
    }
    Ok(out)
}
