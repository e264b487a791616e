//! Verification suites behind the command-line front end, and the versioned
//! JSON report they produce.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::algdef::{
    bundled_names, bundled_source, load_bundled, project, restrict, AlgdefError, HopfPresentation, Instance,
    RestrictError, PI13, PI23, POINCARE_GENERATORS, SPLUS,
};
use crate::bialgebra::{
    cocommutator_table, cojacobi_defect, dual_coordinate_brackets, first_order_consistency, null_plane_r_matrix,
    printed_cocommutators, schouten, BialgebraError, Bivector, StructureConstants, Trivector, BIALGEBRA_ORDER,
};
use crate::engine::{EngineError, Image};
use crate::momentum::{
    casimir_eval, hamiltonian_reconstruction, index_assignment_check, pauli_lubanski_scalar, realization_defect_suite,
    spin_report, Coeff, FVariant, MomentumError, Realization, Var,
};
use crate::observables::{appendix_suite, build_casimir, centrality_defect, Casimir, ObservableError, SuiteKind};
use crate::verify::{
    apply_edits, check_all, hopf_identities, jacobi_identities, repair_search, CheckError, DefRef, Identity,
    RepairConfig,
};

pub const SCHEMA_VERSION: u32 = 1;
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Generators of the Galilean Hopf subalgebra inside the quantum Poincare algebra.
pub const GALILEAN_SET: [&str; 7] = ["P+", "P1", "P2", "P-", "E1", "E2", "J3"];

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("unknown suite '{0}'")]
    UnknownSuite(String),
    #[error("unknown algebra '{0}': neither bundled nor a readable .algdef file")]
    UnknownAlgebra(String),
    #[error("suite {0} does not apply to {1}")]
    NotApplicable(Suite, String),
    #[error("{0}")]
    Expression(String),
    #[error(transparent)]
    Algdef(#[from] AlgdefError),
    #[error(transparent)]
    Check(#[from] CheckError),
    #[error(transparent)]
    Observable(#[from] ObservableError),
    #[error(transparent)]
    Bialgebra(#[from] BialgebraError),
    #[error(transparent)]
    Momentum(#[from] MomentumError),
    #[error(transparent)]
    Engine(#[from] EngineError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Jacobi,
    Hopf,
    Casimir,
    Appendix,
    Bialgebra,
    Realization,
    Subalgebras,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Jacobi,
        Suite::Hopf,
        Suite::Casimir,
        Suite::Appendix,
        Suite::Bialgebra,
        Suite::Realization,
        Suite::Subalgebras,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Jacobi => "jacobi",
            Suite::Hopf => "hopf",
            Suite::Casimir => "casimir",
            Suite::Appendix => "appendix",
            Suite::Bialgebra => "bialgebra",
            Suite::Realization => "realization",
            Suite::Subalgebras => "subalgebras",
        }
    }

    /// `all` expands to every suite.
    pub fn parse_list(text: &str) -> Result<Vec<Suite>, ReportError> {
        if text == "all" {
            return Ok(Suite::ALL.to_vec());
        }
        text.split(',').map(|s| s.trim().parse()).collect()
    }

    pub fn applies_to(self, p: &HopfPresentation) -> bool {
        let poincare = p.generators.iter().map(String::as_str).eq(POINCARE_GENERATORS);
        let has_macro = |m: &str| p.macros.iter().any(|d| d.name == m);
        match self {
            Suite::Jacobi => true,
            Suite::Hopf => p.has_hopf_structure(),
            Suite::Casimir => Casimir::ALL.into_iter().any(|c| c.macros().iter().all(|m| has_macro(m))),
            Suite::Appendix => has_macro("Wpq") || has_macro("Wp"),
            Suite::Bialgebra | Suite::Subalgebras => poincare && !p.series.is_empty() && p.has_hopf_structure(),
            Suite::Realization => load_bundled("poincare-quantum").is_ok_and(|q| q == *p),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = ReportError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| ReportError::UnknownSuite(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RepairMode {
    Off,
    #[default]
    Report,
}

impl FromStr for RepairMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "off" => Ok(RepairMode::Off),
            "report" => Ok(RepairMode::Report),
            other => Err(format!("unknown repair mode '{other}' (expected off or report)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail { defect: String },
    /// Passes once the listed edits are applied to the printed definitions.
    Repaired { variant: Vec<String> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub suite: Suite,
    pub key: String,
    #[serde(flatten)]
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

impl Entry {
    fn new(suite: Suite, key: impl Into<String>, status: Status) -> Self {
        Entry { suite, key: key.into(), status, note: None }
    }

    fn check(suite: Suite, key: impl Into<String>, ok: bool, defect: impl FnOnce() -> String) -> Self {
        let status = if ok { Status::Pass } else { Status::Fail { defect: defect() } };
        Entry::new(suite, key, status)
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

/// Everything that is compared between runs; timing lives in [`RunOutput`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub engine_version: String,
    pub algebra: String,
    pub source_sha256: String,
    pub order: usize,
    pub repair: RepairMode,
    pub suites: Vec<Suite>,
    /// Suites requested through `all` that do not apply to this algebra.
    pub skipped: Vec<Suite>,
    pub entries: Vec<Entry>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct Counts {
    pub pass: usize,
    pub fail: usize,
    pub repaired: usize,
}

impl VerificationReport {
    pub fn counts(&self, suite: Option<Suite>) -> Counts {
        let mut c = Counts::default();
        for e in self.entries.iter().filter(|e| suite.is_none_or(|s| e.suite == s)) {
            match e.status {
                Status::Pass => c.pass += 1,
                Status::Fail { .. } => c.fail += 1,
                Status::Repaired { .. } => c.repaired += 1,
            }
        }
        c
    }

    /// 0 when everything passes as printed, 2 when some entries pass only
    /// through documented repairs, 1 on any failure.
    pub fn exit_code(&self) -> i32 {
        let c = self.counts(None);
        if c.fail > 0 {
            1
        } else if c.repaired > 0 {
            2
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn render_text(&self) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{} (K = {}, sha256 {}, engine {})",
            self.algebra,
            self.order,
            &self.source_sha256[..16],
            self.engine_version
        );
        for &s in &self.suites {
            let c = self.counts(Some(s));
            let _ = writeln!(out, "{s:<12} {} pass, {} repaired, {} fail", c.pass, c.repaired, c.fail);
            for e in self.entries.iter().filter(|e| e.suite == s) {
                match &e.status {
                    Status::Pass => {}
                    Status::Fail { defect } => {
                        let _ = writeln!(out, "  FAIL {}: {}", e.key, defect);
                    }
                    Status::Repaired { variant } => {
                        let _ = writeln!(out, "  REPAIRED {}", e.key);
                        for line in variant {
                            let _ = writeln!(out, "    {line}");
                        }
                    }
                }
                if let Some(n) = &e.note {
                    let _ = writeln!(out, "  note {}: {}", e.key, clip(n, 160));
                }
            }
        }
        for s in &self.skipped {
            let _ = writeln!(out, "{s:<12} skipped (does not apply)");
        }
        let _ = writeln!(out, "exit {}", self.exit_code());
        out
    }
}

fn clip(s: &str, n: usize) -> String {
    match s.char_indices().nth(n) {
        Some((i, _)) => format!("{} ...", &s[..i]),
        None => s.to_string(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RunOutput {
    pub report: VerificationReport,
    /// Wall-clock seconds per suite.
    pub timing: Vec<(Suite, f64)>,
}

impl RunOutput {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// A presentation with the text it was read from.
#[derive(Debug, Clone)]
pub struct Source {
    pub name: String,
    pub text: String,
    pub presentation: HopfPresentation,
}

impl Source {
    /// A bundled name, or a path to an `.algdef` file.
    pub fn resolve(algebra: &str) -> Result<Self, ReportError> {
        if bundled_names().contains(&algebra) {
            let presentation = load_bundled(algebra)?;
            let text = bundled_source(algebra).map(str::to_string).unwrap_or_else(|| presentation.serialize());
            return Ok(Source { name: algebra.to_string(), text, presentation });
        }
        let text = std::fs::read_to_string(algebra).map_err(|_| ReportError::UnknownAlgebra(algebra.to_string()))?;
        let presentation = HopfPresentation::parse(&text)?;
        Ok(Source { name: algebra.to_string(), text, presentation })
    }

    pub fn sha256(&self) -> String {
        Sha256::digest(self.text.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// Runs the suites in the given order. A suite that does not apply is an
/// error unless `skip_inapplicable` is set, in which case it is listed as
/// skipped.
pub fn run(
    source: &Source,
    suites: &[Suite],
    order: usize,
    repair: RepairMode,
    skip_inapplicable: bool,
) -> Result<RunOutput, ReportError> {
    let p = &source.presentation;
    let mut entries = Vec::new();
    let mut timing = Vec::new();
    let mut ran = Vec::new();
    let mut skipped = Vec::new();
    for &s in suites {
        if !s.applies_to(p) {
            if skip_inapplicable {
                skipped.push(s);
                continue;
            }
            return Err(ReportError::NotApplicable(s, source.name.clone()));
        }
        let t0 = Instant::now();
        entries.extend(run_suite(s, p, order, repair)?);
        timing.push((s, t0.elapsed().as_secs_f64()));
        ran.push(s);
    }
    let report = VerificationReport {
        schema_version: SCHEMA_VERSION,
        engine_version: ENGINE_VERSION.to_string(),
        algebra: source.name.clone(),
        source_sha256: source.sha256(),
        order,
        repair,
        suites: ran,
        skipped,
        entries,
    };
    Ok(RunOutput { report, timing })
}

pub fn run_suite(s: Suite, p: &HopfPresentation, order: usize, repair: RepairMode) -> Result<Vec<Entry>, ReportError> {
    match s {
        Suite::Jacobi => jacobi_suite(p, order),
        Suite::Hopf => hopf_suite(p, order, repair),
        Suite::Casimir => casimir_suite(p, order, repair),
        Suite::Appendix => appendix_entries(p, order, repair),
        Suite::Bialgebra => bialgebra_suite(p, repair),
        Suite::Realization => realization_suite(),
        Suite::Subalgebras => subalgebra_suite(p, order),
    }
}

fn identity_entries(suite: Suite, inst: &Instance, ids: &[Identity]) -> Result<Vec<Entry>, ReportError> {
    let names = inst.names();
    Ok(check_all(inst, ids)?
        .into_iter()
        .map(|c| Entry::check(suite, c.identity.to_string(), c.passed(), || c.defect.render(names)))
        .collect())
}

fn jacobi_suite(p: &HopfPresentation, order: usize) -> Result<Vec<Entry>, ReportError> {
    let inst = p.instantiate(order)?;
    identity_entries(Suite::Jacobi, &inst, &jacobi_identities(inst.names()))
}

/// Marks failing entries as repaired when the search finds a unique minimal
/// variant under which the whole list passes.
fn apply_repair(
    entries: &mut [Entry],
    p: &HopfPresentation,
    ids: &[Identity],
    order: usize,
    cfg: &RepairConfig,
) -> Result<(), ReportError> {
    if entries.iter().all(|e| e.status == Status::Pass) {
        return Ok(());
    }
    let report = repair_search(p, ids, order, cfg)?;
    if !report.unique_minimal() {
        let note = format!("repair search: {} minimal variants, {} evaluated", report.variants.len(), report.evaluated);
        for e in entries.iter_mut().filter(|e| e.status != Status::Pass) {
            e.note = Some(note.clone());
        }
        return Ok(());
    }
    let variant = &report.variants[0];
    for e in entries.iter_mut() {
        if let Status::Fail { defect } = &e.status {
            let was = defect.clone();
            e.status = Status::Repaired { variant: variant.diff.clone() };
            e.note = Some(format!("as printed: {was}"));
        }
    }
    Ok(())
}

fn hopf_suite(p: &HopfPresentation, order: usize, repair: RepairMode) -> Result<Vec<Entry>, ReportError> {
    let inst = p.instantiate(order)?;
    let ids = hopf_identities(inst.names());
    let mut entries = identity_entries(Suite::Hopf, &inst, &ids)?;
    if repair == RepairMode::Report {
        apply_repair(&mut entries, p, &ids, order, &RepairConfig::default())?;
    }
    Ok(entries)
}

fn casimir_suite(p: &HopfPresentation, order: usize, repair: RepairMode) -> Result<Vec<Entry>, ReportError> {
    let mut out = Vec::new();
    for k in [order, 0] {
        let inst = p.instantiate(k)?;
        let at = if k == 0 { "z^0".to_string() } else { format!("K={k}") };
        for g in &p.center {
            let d = centrality_defect(&inst.element(g)?, &inst)?;
            out.push(centrality_entry(&inst, &format!("central({g}) at {at}"), &d));
        }
        for c in Casimir::ALL {
            let Ok(el) = build_casimir(c, &inst) else { continue };
            let d = centrality_defect(&el.body, &inst)?;
            let mut e = centrality_entry(&inst, &format!("central({c}) at {at}"), &d);
            if e.status != Status::Pass && repair == RepairMode::Report && c.formula() == c.name() {
                let ids = [Identity::Central(c.name().to_string())];
                let cfg = RepairConfig { targets: Some(vec![DefRef::Macro(c.name().into())]), ..RepairConfig::default() };
                let mut single = [e];
                apply_repair(&mut single, p, &ids, k, &cfg)?;
                let [repaired] = single;
                e = repaired;
            }
            out.push(e);
        }
    }
    Ok(out)
}

fn centrality_entry(inst: &Instance, key: &str, d: &[(String, crate::engine::AlgebraElement)]) -> Entry {
    let names = inst.names();
    let failing: Vec<String> =
        d.iter().filter(|(_, x)| !x.is_zero()).map(|(g, x)| format!("[{g}]: {}", x.display(names))).collect();
    Entry::check(Suite::Casimir, key, failing.is_empty(), || failing.join("; "))
}

fn appendix_entries(p: &HopfPresentation, order: usize, repair: RepairMode) -> Result<Vec<Entry>, ReportError> {
    let kind = if p.macros.iter().any(|d| d.name == "Wpq") { SuiteKind::Quantum } else { SuiteKind::Classical };
    let report = appendix_suite(kind, p, order)?;
    let mut out = Vec::new();
    for (i, r) in report.results.iter().enumerate() {
        let s = &r.statement;
        let key = if s.printed { format!("{} = {}", s.lhs, s.rhs) } else { format!("{} = 0 (implied)", s.lhs) };
        let names = report_names(p);
        let mut e = Entry::check(Suite::Appendix, key, r.passed(), || r.defect.display(&names).to_string());
        if !r.passed() && repair == RepairMode::Report {
            if let Some((_, rep)) = report.repairs.iter().find(|(j, _)| *j == i) {
                if rep.unique_minimal() {
                    let was = r.defect.display(&names).to_string();
                    e = Entry::new(Suite::Appendix, e.key, Status::Repaired { variant: rep.variants[0].diff.clone() })
                        .with_note(format!("as printed: {was}"));
                }
            }
        }
        out.push(e);
    }
    Ok(out)
}

fn report_names(p: &HopfPresentation) -> Vec<String> {
    p.generators.clone()
}

fn bialgebra_suite(p: &HopfPresentation, repair: RepairMode) -> Result<Vec<Entry>, ReportError> {
    let s = Suite::Bialgebra;
    let sc = StructureConstants::from_presentation(p)?;
    let names = sc.names().to_vec();
    let mut out = Vec::new();
    out.push(Entry::check(s, "structure constants satisfy Jacobi", sc.jacobi_failures().is_empty(), || {
        format!("{} failing triples", sc.jacobi_failures().len())
    }));
    let r = null_plane_r_matrix(&sc)?;
    let srr = schouten(&r, &r, &sc);
    out.push(Entry::check(s, "schouten(r, r) = 0", srr.is_zero(), || srr.display(&names).to_string()));

    let derived = cocommutator_table(&r, &sc);
    let cj = cojacobi_defect(&derived);
    out.push(Entry::check(s, "co-Jacobi for delta = d r", cj.iter().all(Trivector::is_zero), || {
        "nonzero cyclic sum".into()
    }));

    let printed = printed_cocommutators(&sc)?;
    for (g, name) in names.iter().enumerate() {
        let key = format!("printed delta({name}) = [{name} ox 1 + 1 ox {name}, r]");
        let ok = printed[g] == derived[g];
        let mut e = Entry::check(s, key, ok, || {
            format!("printed {}, derived {}", printed[g].display(&names), derived[g].display(&names))
        });
        if !ok && repair == RepairMode::Report {
            if let Some(diff) = single_wedge_flip(&printed[g], &derived[g], &names) {
                e = Entry::new(s, e.key, Status::Repaired { variant: vec![format!("delta({name}): {diff}")] });
            }
        }
        out.push(e);
    }

    let inst = p.instantiate(BIALGEBRA_ORDER)?;
    for (label, table) in [("printed delta", &printed), ("delta = d r", &derived)] {
        let defects = first_order_consistency(&inst, table)?;
        let mut entries: Vec<Entry> = names
            .iter()
            .zip(&defects)
            .map(|(name, d)| {
                Entry::check(s, format!("first order of Delta({name}) against {label}"), d.is_zero(), || {
                    d.display(&names).to_string()
                })
            })
            .collect();
        if repair == RepairMode::Report && entries.iter().any(|e| e.status != Status::Pass) {
            repair_first_order(&mut entries, p, table)?;
        }
        out.extend(entries);
    }

    let coords: Vec<_> = ["P1", "P2", "P+"].iter().map(|g| sc.id(g)).collect::<Result<_, _>>()?;
    let shown: Vec<String> = dual_coordinate_brackets(&derived, &coords)
        .iter()
        .map(|b| b.render(&names, |n| format!("p{}", n.trim_start_matches('P'))))
        .collect();
    let expected = ["[p1, p2] = 0", "[p1, p+] = 2 z p1", "[p2, p+] = 2 z p2"];
    for (got, want) in shown.iter().zip(expected) {
        out.push(Entry::check(s, format!("dual bracket {want}"), got == want, || got.clone()));
    }
    Ok(out)
}

/// The one wedge of `printed` whose sign flip gives `derived`, if any.
fn single_wedge_flip(printed: &Bivector, derived: &Bivector, names: &[String]) -> Option<String> {
    let diff = derived.sub(printed);
    let comps = diff.components();
    if comps.len() != 1 {
        return None;
    }
    let (&(i, j), c) = comps.iter().next()?;
    let half = c.scale(&crate::kernel::Rational::new(1.into(), 2.into()));
    let p = printed.component(i, j);
    (-&p == half || p == -&half).then(|| {
        let w = format!("{} ^ {}", names[i as usize], names[j as usize]);
        format!("{} * {w} -> {} * {w}", p, -&p)
    })
}

/// Looks for the coproduct edits that bring the first-order part of `Delta`
/// in line with `table` while keeping every Hopf identity.
fn repair_first_order(entries: &mut [Entry], p: &HopfPresentation, table: &[Bivector]) -> Result<(), ReportError> {
    let ids = hopf_identities(&p.generators);
    let report = repair_search(p, &ids, BIALGEBRA_ORDER, &RepairConfig::default())?;
    if !report.unique_minimal() {
        return Ok(());
    }
    let variant = &report.variants[0];
    let Some((fixed, _)) = apply_edits(p, &variant.edits) else { return Ok(()) };
    let defects = first_order_consistency(&fixed.instantiate(BIALGEBRA_ORDER)?, table)?;
    if defects.iter().all(Bivector::is_zero) {
        for e in entries.iter_mut().filter(|e| e.status != Status::Pass) {
            e.status = Status::Repaired { variant: variant.diff.clone() };
        }
    }
    Ok(())
}

fn realization_suite() -> Result<Vec<Entry>, ReportError> {
    let s = Suite::Realization;
    let r = Realization::quantum(FVariant::Printed)?;
    let mut out: Vec<Entry> = realization_defect_suite(&r)?
        .into_iter()
        .map(|d| Entry::check(s, format!("[{}, {}]", d.left, d.right), d.passed(), || d.defect.to_string()))
        .collect();
    let m2 = casimir_eval(&r, Casimir::Mq2)?;
    let mass = Coeff::var(Var::M).pow(2);
    out.push(Entry::check(s, "Mq2 = m^2 Id", m2.as_scalar().as_ref() == Some(&mass), || m2.to_string()));
    let w2 = pauli_lubanski_scalar(&r)?;
    let expected = mass.mul(&Coeff::frac(-3, 4));
    out.push(
        Entry::check(s, "Wq2 = -3/4 m^2 Id", w2.as_ref() == Some(&expected), || format!("{w2:?}"))
            .with_note("spin components S_k = -(i/2) sigma_k"),
    );
    let spin = spin_report(&r)?;
    out.push(Entry::check(s, "spin components satisfy su(2)", spin.su2_holds(), || {
        spin.su2.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
    }));
    out.push(Entry::check(
        s,
        "spin commutes with the stability generators except J3",
        spin.commutes_with_stability_except_j3(),
        || "nonzero commutator".into(),
    ));
    out.push(Entry::check(s, "helicity commutes with the stability generators", spin.helicity_central(), || {
        "nonzero commutator".into()
    }));
    let ia = index_assignment_check()?;
    out.push(Entry::check(s, "only the printed F index assignment closes", ia.consistent() == [FVariant::Printed], || {
        format!("consistent assignments: {:?}", ia.consistent())
    }));
    let rec = hamiltonian_reconstruction(&r)?;
    out.push(Entry::check(s, "F1, F2 rebuilt from mass and spin", rec.iter().all(|d| d.is_zero()), || {
        rec.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
    }));
    Ok(out)
}

fn subalgebra_suite(p: &HopfPresentation, order: usize) -> Result<Vec<Entry>, ReportError> {
    let s = Suite::Subalgebras;
    let mut out = Vec::new();
    let closes = |subset: &[&str]| -> Result<Result<HopfPresentation, String>, ReportError> {
        match restrict(p, subset, "sub", order) {
            Ok(sub) => Ok(Ok(sub)),
            Err(RestrictError::NotClosed(f)) => Ok(Err(f.to_string())),
            Err(RestrictError::Definition(d)) => Err(d.into()),
        }
    };
    for (label, subset) in [("S+", &SPLUS[..]), ("galilean", &GALILEAN_SET[..])] {
        let r = closes(subset)?;
        out.push(Entry::check(s, format!("{label} closes as a Hopf subalgebra"), r.is_ok(), || r.clone().unwrap_err()));
    }
    let g1 = closes(&["E1", "E2", "P+"])?;
    let undeformed = match &g1 {
        Ok(sub) => {
            let inst = sub.instantiate(order)?;
            let delta = inst.coproduct.as_ref();
            sub.brackets.is_empty()
                && inst.names().iter().all(|g| {
                    let primitive = inst.eval_str(&format!("1 ox {g} + {g} ox 1")).ok();
                    let image = delta.and_then(|d| d.image(inst.id(g).unwrap()).ok());
                    matches!((image, primitive), (Some(Image::Tensor(t)), Some(crate::algdef::Value::Tensor(u))) if *t == u)
                })
        }
        Err(_) => false,
    };
    out.push(Entry::check(s, "G+1 closes undeformed", undeformed, || match &g1 {
        Err(w) => w.clone(),
        Ok(_) => "coproduct or brackets are deformed".into(),
    }));
    for (label, subset) in [
        ("G0", &["K3", "J3", "P1", "P2"][..]),
        ("G-1", &["F1", "F2", "P-"][..]),
        ("S-", &["F1", "F2", "P-", "K3", "J3", "P1", "P2"][..]),
    ] {
        let r = closes(subset)?;
        let e = Entry::check(s, format!("{label} does not close"), r.is_err(), || "closes".into());
        out.push(match r {
            Err(w) => e.with_note(format!("witness {w}")),
            Ok(_) => e,
        });
    }
    for (label, subset) in [("pi13", &PI13), ("pi23", &PI23)] {
        let strict = closes(subset)?;
        let projected = project(p, subset, label)?;
        let inst = projected.instantiate(order)?;
        let mut ids = jacobi_identities(inst.names());
        ids.extend(hopf_identities(inst.names()).into_iter().filter(|i| !matches!(i, Identity::Antipode(_))));
        let failing: Vec<String> =
            check_all(&inst, &ids)?.into_iter().filter(|c| !c.passed()).map(|c| c.identity.to_string()).collect();
        let e = Entry::check(s, format!("{label} restriction: brackets and coproduct"), failing.is_empty(), || {
            failing.join(", ")
        });
        out.push(match strict {
            Err(w) => e.with_note(format!("restriction by projection; the strict subset leaves itself: {w}")),
            Ok(_) => e,
        });
        out.push(restricted_antipode_entry(&projected, label, order)?);
    }
    let inst = p.instantiate(order)?;
    let c = inst.engine.commutator(&inst.element("F1")?, &inst.element("F2")?)?;
    out.push(Entry::check(s, "[F1, F2] != 0", !c.is_zero(), || "vanishes".into()).with_note(c.display(inst.names()).to_string()));
    Ok(out)
}

/// The projected antipode keeps the conjugation exponent of the parent. When
/// it fails, the exponent matching the projected coproduct is searched for.
fn restricted_antipode_entry(projected: &HopfPresentation, label: &str, order: usize) -> Result<Entry, ReportError> {
    let s = Suite::Subalgebras;
    let key = format!("{label} restriction: antipode");
    let antipode_failures = |pres: &HopfPresentation| -> Result<Vec<String>, ReportError> {
        let inst = pres.instantiate(order)?;
        let ids: Vec<Identity> = inst.names().iter().map(|g| Identity::Antipode(g.clone())).collect();
        Ok(check_all(&inst, &ids)?.into_iter().filter(|c| !c.passed()).map(|c| c.identity.to_string()).collect())
    };
    let failing = antipode_failures(projected)?;
    if failing.is_empty() {
        return Ok(Entry::new(s, key, Status::Pass));
    }
    for k in 1..=4 {
        let mut candidate = projected.clone();
        for d in &mut candidate.antipode {
            let text = format!("-exp({k}*z*P+)*{g}*exp(-{k}*z*P+)", g = d.name);
            d.rhs = crate::algdef::parse_expression(projected, &text)?;
        }
        if antipode_failures(&candidate)?.is_empty() {
            let variant = projected
                .antipode
                .iter()
                .zip(&candidate.antipode)
                .filter(|(a, b)| a.rhs != b.rhs)
                .map(|(a, b)| format!("antipode({}): {} -> {}", a.name, a.rhs, b.rhs))
                .collect();
            return Ok(Entry::new(s, key, Status::Repaired { variant })
                .with_note(format!("as projected: {} fail", failing.join(", "))));
        }
    }
    Ok(Entry::new(s, key, Status::Fail { defect: failing.join(", ") }))
}

/// Normal form of an expression, or of `Delta(x)`, `antipode(x)`, `epsilon(x)`.
pub fn expand(inst: &Instance, text: &str) -> Result<String, ReportError> {
    let text = text.trim();
    let names = inst.names();
    let wrapped = |prefix: &str| {
        text.strip_prefix(prefix).and_then(|r| r.strip_prefix('(')).and_then(|r| r.strip_suffix(')'))
    };
    let maps = [
        (&["Delta", "coproduct"][..], &inst.coproduct),
        (&["antipode", "S", "gamma"][..], &inst.antipode),
        (&["epsilon", "counit"][..], &inst.counit),
    ];
    for (prefixes, map) in maps {
        if let Some(inner) = prefixes.iter().find_map(|p| wrapped(p)) {
            let map = map.as_ref().ok_or_else(|| ReportError::Expression(format!("{} has no such map", inst.presentation.name)))?;
            let x = inst.element(inner)?;
            return Ok(match inst.engine.apply_morphism(map, &x)? {
                Image::Algebra(a) => a.display(names).to_string(),
                Image::Tensor(t) => t.display(names).to_string(),
            });
        }
    }
    Ok(match inst.eval_str(text)? {
        crate::algdef::Value::Alg(a) => a.display(names).to_string(),
        crate::algdef::Value::Tensor(t) => t.display(names).to_string(),
    })
}
