//! Casimir elements, centrality, the Pauli-Lubanski commutation tables and
//! the goodness grading.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algdef::{AlgdefError, Definition, HopfPresentation, Instance, Span};
use crate::engine::{AlgebraElement, EngineError, GenId};
use crate::kernel::Rational;
use crate::verify::{check_all, repair_search, CheckError, DefRef, Identity, RepairConfig, RepairReport};

#[derive(Debug, Error)]
pub enum ObservableError {
    #[error("{0} needs {1}, which the presentation does not define")]
    Mismatch(Casimir, String),
    #[error(transparent)]
    Definition(#[from] AlgdefError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Check(#[from] CheckError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Casimir {
    /// Classical mass squared.
    M2,
    /// Classical Pauli-Lubanski square, symmetrized in `W+ W-`.
    W2,
    Mq2,
    /// Quantum Pauli-Lubanski square with `cosh(z P+)` on the left of the brace.
    Wq2,
    /// Galilean internal energy.
    Eq2,
    /// Galilean intrinsic angular momentum.
    Lq,
}

impl Casimir {
    pub const ALL: [Casimir; 6] = [Casimir::M2, Casimir::W2, Casimir::Mq2, Casimir::Wq2, Casimir::Eq2, Casimir::Lq];

    pub fn formula(self) -> &'static str {
        match self {
            Casimir::M2 => "M2",
            Casimir::W2 => "W13^2 + W23^2 + Wp*Wm + Wm*Wp",
            Casimir::Mq2 => "Mq2",
            Casimir::Wq2 => "W13q^2 + W23q^2 + cosh(z*P+)*(Wpq*Wmq + Wmq*Wpq) - z^2*Mq2*Wpq^2",
            Casimir::Eq2 => "Eq2",
            Casimir::Lq => "Lq",
        }
    }

    /// Macros the formula refers to.
    pub fn macros(self) -> &'static [&'static str] {
        match self {
            Casimir::M2 => &["M2"],
            Casimir::W2 => &["W13", "W23", "Wp", "Wm"],
            Casimir::Mq2 => &["Mq2"],
            Casimir::Wq2 => &["W13q", "W23q", "Wpq", "Wmq", "Mq2"],
            Casimir::Eq2 => &["Eq2"],
            Casimir::Lq => &["Lq"],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Casimir::M2 => "M2",
            Casimir::W2 => "W2",
            Casimir::Mq2 => "Mq2",
            Casimir::Wq2 => "Wq2",
            Casimir::Eq2 => "Eq2",
            Casimir::Lq => "Lq",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.name() == name)
    }
}

impl fmt::Display for Casimir {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CasimirElement {
    pub name: Casimir,
    pub body: AlgebraElement,
}

/// Normal-ordered body of a Casimir in the given instance.
pub fn build_casimir(name: Casimir, inst: &Instance) -> Result<CasimirElement, ObservableError> {
    for m in name.macros() {
        if !inst.presentation.macros.iter().any(|d| d.name == *m) {
            return Err(ObservableError::Mismatch(name, format!("macro {m}")));
        }
    }
    Ok(CasimirElement { name, body: inst.element(name.formula())? })
}

/// `[c, X]` for every generator `X`.
pub fn centrality_defect(c: &AlgebraElement, inst: &Instance) -> Result<Vec<(String, AlgebraElement)>, ObservableError> {
    let e = &inst.engine;
    let mut out = Vec::with_capacity(inst.names().len());
    for (g, name) in inst.names().iter().enumerate() {
        out.push((name.clone(), e.commutator(c, &e.gen(g as GenId))?));
    }
    Ok(out)
}

pub fn is_central(c: &AlgebraElement, inst: &Instance) -> Result<bool, ObservableError> {
    Ok(centrality_defect(c, inst)?.iter().all(|(_, d)| d.is_zero()))
}

/// One reading of an ambiguous printed formula and whether it is central.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Reading {
    pub label: String,
    pub formula: String,
    pub central: bool,
    /// Generators whose commutator with the element is nonzero.
    pub fails_with: Vec<String>,
}

fn reading(inst: &Instance, label: &str, formula: &str) -> Result<Reading, ObservableError> {
    let body = inst.element(formula)?;
    let fails_with: Vec<String> =
        centrality_defect(&body, inst)?.into_iter().filter(|(_, d)| !d.is_zero()).map(|(g, _)| g).collect();
    Ok(Reading { label: label.to_string(), formula: formula.to_string(), central: fails_with.is_empty(), fails_with })
}

/// Candidate readings of the Pauli-Lubanski square whose printed form leaves
/// the second term of the brace unspecified.
pub fn pauli_lubanski_readings(inst: &Instance) -> Result<Vec<Reading>, ObservableError> {
    let quantum = inst.presentation.macros.iter().any(|d| d.name == "Wpq");
    let candidates: Vec<(&str, String)> = if quantum {
        vec![
            ("symmetrized, cosh on the left", Casimir::Wq2.formula().to_string()),
            (
                "symmetrized, cosh on the right",
                "W13q^2 + W23q^2 + (Wpq*Wmq + Wmq*Wpq)*cosh(z*P+) - z^2*Mq2*Wpq^2".to_string(),
            ),
            ("single product, cosh on the left", "W13q^2 + W23q^2 + cosh(z*P+)*Wpq*Wmq - z^2*Mq2*Wpq^2".to_string()),
            ("doubled product, cosh on the left", "W13q^2 + W23q^2 + 2*cosh(z*P+)*Wpq*Wmq - z^2*Mq2*Wpq^2".to_string()),
        ]
    } else {
        vec![
            ("symmetrized", Casimir::W2.formula().to_string()),
            ("single product", "W13^2 + W23^2 + Wp*Wm".to_string()),
            ("doubled product", "W13^2 + W23^2 + 2*Wp*Wm".to_string()),
        ]
    };
    candidates.iter().map(|(l, f)| reading(inst, l, f)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SuiteKind {
    Classical,
    Quantum,
}

const MOMENTA: [&str; 4] = ["P+", "P1", "P2", "P-"];

const CLASSICAL_COMPONENTS: [&str; 4] = ["W13", "W23", "Wp", "Wm"];
const QUANTUM_COMPONENTS: [&str; 4] = ["W13q", "W23q", "Wpq", "Wmq"];

const CLASSICAL_TABLE: [(&str, &str); 18] = [
    ("[J3, W13]", "-W23"),
    ("[E2, W13]", "Wp"),
    ("[F2, W13]", "-Wm"),
    ("[J3, W23]", "W13"),
    ("[E1, W23]", "-Wp"),
    ("[F1, W23]", "Wm"),
    ("[E1, Wm]", "W23"),
    ("[E2, Wm]", "-W13"),
    ("[K3, Wm]", "-Wm"),
    ("[F1, Wp]", "-W23"),
    ("[F2, Wp]", "W13"),
    ("[K3, Wp]", "Wp"),
    ("[W13, Wp]", "Wp*P1 + W23*P+"),
    ("[W13, Wm]", "-Wm*P1 + W23*P-"),
    ("[W23, Wp]", "Wp*P2 - W13*P+"),
    ("[W23, Wm]", "-Wm*P2 - W13*P-"),
    ("[W23, W13]", "Wp*P- + Wm*P+"),
    ("[Wp, Wm]", "W13*P1 + W23*P2"),
];

const QUANTUM_TABLE: [(&str, &str); 24] = [
    ("[J3, W13q]", "-W23q"),
    ("[F1, W13q]", "z^2*Wpq*P1*P2"),
    ("[E2, W13q]", "Wpq*cosh(z*P+)"),
    ("[K3, W13q]", "z*Wpq*P2*sinh(z*P+)"),
    ("[F2, W13q]", "-Wmq*cosh(z*P+) + z^2*Wpq*{Mq2 + P2^2}"),
    ("[J3, W23q]", "W13q"),
    ("[F2, W23q]", "-z^2*Wpq*P1*P2"),
    ("[E1, W23q]", "-Wpq*cosh(z*P+)"),
    ("[K3, W23q]", "-z*Wpq*P1*sinh(z*P+)"),
    ("[F1, W23q]", "Wmq*cosh(z*P+) - z^2*Wpq*{Mq2 + P1^2}"),
    ("[E1, Wmq]", "W23q"),
    ("[F1, Wmq]", "-z^2*Wpq*P1*P-"),
    ("[E2, Wmq]", "-W13q"),
    ("[F2, Wmq]", "-z^2*Wpq*P2*P-"),
    ("[K3, Wmq]", "-Wmq*cosh(z*P+) + z^2*Wpq*{Mq2 - P-*sinhz(P+)}"),
    ("[F1, Wpq]", "-W23q"),
    ("[F2, Wpq]", "W13q"),
    ("[K3, Wpq]", "Wpq*cosh(z*P+)"),
    ("[W13q, Wpq]", "Wpq*P1*cosh(z*P+) + W23q*sinhz(P+)"),
    ("[W23q, Wpq]", "Wpq*P2*cosh(z*P+) - W13q*sinhz(P+)"),
    ("[W23q, W13q]", "Wpq*{P-*cosh(z*P+)^2 - z*Mq2*sinh(z*P+)} + Wmq*sinhz(2*P+)/2"),
    ("[W13q, Wmq]", "-Wmq*P1*cosh(z*P+) + W23q*P-*cosh(z*P+) + z^2*Mq2*Wpq"),
    ("[W23q, Wmq]", "-Wmq*P2*cosh(z*P+) - W13q*P-*cosh(z*P+) + z^2*Mq2*Wpq"),
    ("[Wpq, Wmq]", "W13q*P1 + W23q*P2"),
];

/// One statement of a commutation table.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TableStatement {
    pub lhs: String,
    /// Right-hand side as printed, `0` for brackets the table leaves out.
    pub rhs: String,
    pub printed: bool,
    /// Name of the macro holding the right-hand side in the suite presentation.
    pub rhs_macro: String,
}

impl TableStatement {
    pub fn identity(&self) -> Identity {
        Identity::Relation(self.lhs.clone(), self.rhs_macro.clone())
    }
}

/// The printed statements followed by the implied zero brackets between
/// generators and components.
pub fn appendix_statements(kind: SuiteKind) -> Vec<TableStatement> {
    let (table, comps, gens): (&[(&str, &str)], _, _) = match kind {
        SuiteKind::Classical => (&CLASSICAL_TABLE, CLASSICAL_COMPONENTS, crate::algdef::POINCARE_GENERATORS),
        SuiteKind::Quantum => (&QUANTUM_TABLE, QUANTUM_COMPONENTS, crate::algdef::POINCARE_GENERATORS),
    };
    let prefix = match kind {
        SuiteKind::Classical => "Rc",
        SuiteKind::Quantum => "Rq",
    };
    let mut out: Vec<TableStatement> = table
        .iter()
        .enumerate()
        .map(|(i, (l, r))| TableStatement {
            lhs: l.to_string(),
            rhs: r.to_string(),
            printed: true,
            rhs_macro: format!("{prefix}{}", i + 1),
        })
        .collect();
    for g in gens {
        for w in comps {
            let lhs = format!("[{g}, {w}]");
            if !out.iter().any(|s| s.lhs == lhs) {
                let n = out.len() + 1;
                out.push(TableStatement { lhs, rhs: "0".into(), printed: false, rhs_macro: format!("{prefix}{n}") });
            }
        }
    }
    out
}

/// `p` with one macro per statement holding its right-hand side.
pub fn suite_presentation(p: &HopfPresentation, statements: &[TableStatement]) -> Result<HopfPresentation, AlgdefError> {
    let mut out = p.clone();
    for s in statements {
        let rhs = crate::algdef::parse_expression(&out, &s.rhs)?;
        out.macros.push(Definition { name: s.rhs_macro.clone(), rhs, span: Span::default() });
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct StatementResult {
    pub statement: TableStatement,
    pub defect: AlgebraElement,
}

impl StatementResult {
    pub fn passed(&self) -> bool {
        self.defect.is_zero()
    }
}

#[derive(Debug, Clone)]
pub struct AppendixReport {
    pub kind: SuiteKind,
    pub order: usize,
    pub results: Vec<StatementResult>,
    /// Repair reports for failing printed statements, keyed by statement index.
    pub repairs: Vec<(usize, RepairReport)>,
}

impl AppendixReport {
    pub fn printed(&self) -> impl Iterator<Item = &StatementResult> {
        self.results.iter().filter(|r| r.statement.printed)
    }

    pub fn implied(&self) -> impl Iterator<Item = &StatementResult> {
        self.results.iter().filter(|r| !r.statement.printed)
    }

    pub fn all_passed(&self) -> bool {
        self.results.iter().all(StatementResult::passed)
    }
}

/// Checks every statement of a commutation table at truncation order `order`
/// and runs a repair search on the right-hand side of each failing printed
/// statement.
pub fn appendix_suite(kind: SuiteKind, p: &HopfPresentation, order: usize) -> Result<AppendixReport, ObservableError> {
    let statements = appendix_statements(kind);
    let suite = suite_presentation(p, &statements)?;
    let inst = suite.instantiate(order)?;
    let ids: Vec<Identity> = statements.iter().map(TableStatement::identity).collect();
    let checked = check_all(&inst, &ids)?;
    let mut results = Vec::with_capacity(statements.len());
    let mut repairs = Vec::new();
    for (i, (s, c)) in statements.into_iter().zip(checked).enumerate() {
        let defect = match c.defect {
            crate::verify::Defect::Algebra(a) => a,
            _ => unreachable!("relations have algebra defects"),
        };
        if !defect.is_zero() && s.printed {
            let cfg = RepairConfig {
                targets: Some(vec![DefRef::Macro(s.rhs_macro.clone())]),
                append_factors: MOMENTA.iter().map(|m| m.to_string()).collect(),
                ..RepairConfig::default()
            };
            repairs.push((i, repair_search(&suite, &[s.identity()], order, &cfg)?));
        }
        results.push(StatementResult { statement: s, defect });
    }
    Ok(AppendixReport { kind, order, results, repairs })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoodnessEntry {
    pub generator: String,
    pub declared: Option<i8>,
    /// `g` with `[K3, A] = g A` at `z = 0`, if the bracket is proportional.
    pub classical: Option<i64>,
    /// Whether `[K3, A] = g A` also holds exactly at the checked order.
    pub exact_in_quantum: bool,
}

impl GoodnessEntry {
    pub fn consistent(&self) -> bool {
        self.declared.is_some() && self.declared.map(i64::from) == self.classical
    }
}

fn eigenvalue(inst: &Instance, k3: GenId, g: GenId) -> Result<Option<Rational>, ObservableError> {
    let e = &inst.engine;
    let a = e.gen(g);
    let br = e.commutator(&e.gen(k3), &a)?;
    if br.is_zero() {
        return Ok(Some(Rational::from_integer(0.into())));
    }
    let c = br.coefficient(&crate::engine::Word::letter(g));
    let lambda = c.coeff(0).clone();
    let scaled = a.scale_rational(&lambda);
    Ok(if br == scaled { Some(lambda) } else { None })
}

/// Goodness of every generator from `[K3, A]`, checked at `z = 0` against the
/// declared grading, plus whether the quantum bracket at `order` keeps it.
pub fn goodness_check(p: &HopfPresentation, order: usize) -> Result<Vec<GoodnessEntry>, ObservableError> {
    let classical = p.instantiate(0)?;
    let quantum = p.instantiate(order)?;
    let k3 = classical.id("K3").ok_or_else(|| AlgdefError::new(crate::algdef::ErrorKind::UndeclaredSymbol("K3".into()), Span::default()))?;
    let mut out = Vec::new();
    for (g, name) in p.generators.iter().enumerate() {
        let g = g as GenId;
        let declared = p.grading.get(g as usize).copied().filter(|_| !p.grading.is_empty());
        let classical_value = eigenvalue(&classical, k3, g)?
            .filter(|q| q.is_integer())
            .and_then(|q| i64::try_from(q.to_integer()).ok());
        let exact = match (&classical_value, eigenvalue(&quantum, k3, g)?) {
            (Some(c), Some(q)) => q == Rational::from_integer((*c).into()),
            _ => false,
        };
        out.push(GoodnessEntry { generator: name.clone(), declared, classical: classical_value, exact_in_quantum: exact });
    }
    Ok(out)
}
