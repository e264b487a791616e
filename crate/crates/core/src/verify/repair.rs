use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::identity::{CheckError, Identity};
use crate::algdef::{Expr, HopfPresentation, Instance, StructureMap};
use crate::kernel::Rational;

/// Which definition a term belongs to.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "section", content = "name", rename_all = "snake_case")]
pub enum DefRef {
    Bracket(String, String),
    Coproduct(String),
    Counit(String),
    Antipode(String),
    Macro(String),
}

impl fmt::Display for DefRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DefRef::Bracket(a, b) => write!(f, "[{a}, {b}]"),
            DefRef::Coproduct(g) => write!(f, "Delta({g})"),
            DefRef::Counit(g) => write!(f, "epsilon({g})"),
            DefRef::Antipode(g) => write!(f, "antipode({g})"),
            DefRef::Macro(m) => write!(f, "{m}"),
        }
    }
}

/// Elementary change to one summand of a definition.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Toggle {
    FlipSign,
    /// Moves the series-function factors of a product to the other end.
    /// `slot` selects the tensor factor for tensor terms.
    SwapPlacement { slot: Option<usize> },
    /// Multiplies the term by 2 (`double = true`) or by 1/2.
    Rescale { double: bool },
    /// Multiplies an algebra term by a generator on the right.
    AppendFactor { generator: String },
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edit {
    pub definition: DefRef,
    /// Index of the summand in the right-hand side.
    pub term: usize,
    pub toggle: Toggle,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Variant {
    pub edits: Vec<Edit>,
    /// One line per edit: `definition: old term -> new term`.
    pub diff: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RepairConfig {
    pub max_edits: usize,
    /// Maximum number of variants evaluated.
    pub budget: usize,
    pub allow_swap: bool,
    pub allow_rescale: bool,
    /// Definitions whose terms may be edited; `None` selects the ones
    /// involved in the failing identities.
    pub targets: Option<Vec<DefRef>>,
    /// Generators that may be appended to algebra terms as a missing factor.
    pub append_factors: Vec<String>,
}

impl Default for RepairConfig {
    fn default() -> Self {
        Self {
            max_edits: 2,
            budget: 200_000,
            allow_swap: true,
            allow_rescale: true,
            targets: None,
            append_factors: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RepairReport {
    pub failing: Vec<Identity>,
    /// Every passing variant of the smallest size found.
    pub variants: Vec<Variant>,
    pub evaluated: usize,
    /// The search stopped early; `variants` may be incomplete.
    pub budget_exhausted: bool,
}

impl RepairReport {
    pub fn already_consistent(&self) -> bool {
        self.failing.is_empty()
    }

    pub fn minimal_size(&self) -> Option<usize> {
        self.variants.first().map(|v| v.edits.len())
    }

    pub fn unique_minimal(&self) -> bool {
        self.variants.len() == 1 && !self.budget_exhausted
    }
}

fn term_text(t: &Expr) -> String {
    match t {
        Expr::Neg(inner) if matches!(**inner, Expr::Sum(_)) => format!("- ({inner})"),
        Expr::Neg(inner) => format!("- {inner}"),
        other => format!("+ {other}"),
    }
}

fn is_function_factor(e: &Expr) -> bool {
    e.is_series_function()
}

fn swap_product(e: &Expr) -> Option<Expr> {
    let Expr::Product(fs) = e else { return None };
    let is_fn: Vec<bool> = fs.iter().map(is_function_factor).collect();
    let n_fn = is_fn.iter().filter(|&&b| b).count();
    if n_fn == 0 || n_fn == fs.len() {
        return None;
    }
    // Scalars (numbers, z, divisions) stay in front.
    let scalar = |x: &Expr| matches!(x, Expr::Num(_) | Expr::Z | Expr::Recip(_)) || matches!(x, Expr::Pow(b, _) if **b == Expr::Z);
    let scalars: Vec<Expr> = fs.iter().filter(|x| scalar(x)).cloned().collect();
    let body: Vec<(Expr, bool)> =
        fs.iter().zip(&is_fn).filter(|(x, _)| !scalar(x)).map(|(x, &b)| (x.clone(), b)).collect();
    let k = body.iter().filter(|(_, b)| *b).count();
    let fns_last = body.iter().rev().take(k).all(|(_, b)| *b);
    let fns_first = body.iter().take(k).all(|(_, b)| *b);
    let (fns, rest): (Vec<_>, Vec<_>) = body.into_iter().partition(|(_, b)| *b);
    let fns: Vec<Expr> = fns.into_iter().map(|(x, _)| x).collect();
    let rest: Vec<Expr> = rest.into_iter().map(|(x, _)| x).collect();
    let reordered = if fns_last {
        [scalars, fns, rest].concat()
    } else if fns_first {
        [scalars, rest, fns].concat()
    } else {
        return None;
    };
    let out = Expr::Product(reordered);
    (out != *e).then_some(out)
}

fn scale_expr(e: &Expr, q: Rational) -> Expr {
    match e {
        Expr::Tensor(slots) => {
            let mut slots = slots.clone();
            slots[0] = scale_expr(&slots[0], q);
            Expr::Tensor(slots)
        }
        Expr::Product(fs) => Expr::Product([vec![Expr::Num(q)], fs.clone()].concat()),
        other => Expr::Product(vec![Expr::Num(q), other.clone()]),
    }
}

/// Applies a toggle to a summand; `None` when the toggle does not apply or
/// would not change the term.
pub fn apply_toggle(term: &Expr, toggle: &Toggle) -> Option<Expr> {
    let (negative, core) = match term {
        Expr::Neg(inner) => (true, (**inner).clone()),
        other => (false, other.clone()),
    };
    let rewrap = |e: Expr| if negative { Expr::Neg(Box::new(e)) } else { e };
    match toggle {
        Toggle::FlipSign => Some(term.negated()),
        Toggle::Rescale { double } => {
            let q = if *double { Rational::from_integer(2.into()) } else { Rational::new(BigInt::from(1), BigInt::from(2)) };
            Some(rewrap(scale_expr(&core, q)))
        }
        Toggle::SwapPlacement { slot: None } => swap_product(&core).map(rewrap),
        Toggle::SwapPlacement { slot: Some(i) } => {
            let Expr::Tensor(slots) = &core else { return None };
            let swapped = swap_product(slots.get(*i)?)?;
            let mut slots = slots.clone();
            slots[*i] = swapped;
            Some(rewrap(Expr::Tensor(slots)))
        }
        Toggle::AppendFactor { generator } => {
            let factor = Expr::Gen(generator.clone());
            match core {
                Expr::Tensor(_) => None,
                Expr::Product(fs) => Some(rewrap(Expr::Product([fs, vec![factor]].concat()))),
                other => Some(rewrap(Expr::Product(vec![other, factor]))),
            }
        }
    }
}

fn definition_rhs<'a>(p: &'a HopfPresentation, d: &DefRef) -> Option<&'a Expr> {
    match d {
        DefRef::Bracket(a, b) => p.bracket_def(a, b).map(|x| &x.rhs),
        DefRef::Coproduct(g) => p.coproduct.iter().find(|x| &x.name == g).map(|x| &x.rhs),
        DefRef::Counit(g) => p.counit.iter().find(|x| &x.name == g).map(|x| &x.rhs),
        DefRef::Antipode(g) => p.antipode.iter().find(|x| &x.name == g).map(|x| &x.rhs),
        DefRef::Macro(m) => p.macros.iter().find(|x| &x.name == m).map(|x| &x.rhs),
    }
}

fn definition_rhs_mut<'a>(p: &'a mut HopfPresentation, d: &DefRef) -> Option<&'a mut Expr> {
    match d {
        DefRef::Bracket(a, b) => p
            .brackets
            .iter_mut()
            .find(|x| (&x.left == a && &x.right == b) || (&x.left == b && &x.right == a))
            .map(|x| &mut x.rhs),
        DefRef::Coproduct(g) => p.coproduct.iter_mut().find(|x| &x.name == g).map(|x| &mut x.rhs),
        DefRef::Counit(g) => p.counit.iter_mut().find(|x| &x.name == g).map(|x| &mut x.rhs),
        DefRef::Antipode(g) => p.antipode.iter_mut().find(|x| &x.name == g).map(|x| &mut x.rhs),
        DefRef::Macro(m) => p.macros.iter_mut().find(|x| &x.name == m).map(|x| &mut x.rhs),
    }
}

/// Applies a set of edits; edits on the same definition refer to the
/// original summand indices.
pub fn apply_edits(p: &HopfPresentation, edits: &[Edit]) -> Option<(HopfPresentation, Vec<String>)> {
    let mut out = p.clone();
    let mut diff = Vec::new();
    let defs: BTreeSet<&DefRef> = edits.iter().map(|e| &e.definition).collect();
    for d in defs {
        let rhs = definition_rhs_mut(&mut out, d)?;
        let mut terms = rhs.summands();
        for e in edits.iter().filter(|e| &e.definition == d) {
            let old = terms.get(e.term)?.clone();
            let new = apply_toggle(&old, &e.toggle)?;
            diff.push(format!("{d}: {} -> {}", term_text(&old), term_text(&new)));
            terms[e.term] = new;
        }
        *rhs = if terms.len() == 1 { terms.pop().unwrap() } else { Expr::Sum(terms) };
    }
    Some((out, diff))
}

/// Macros used, directly or through other macros, by the bracket table.
fn bracket_macros(p: &HopfPresentation) -> BTreeSet<String> {
    let mut found: BTreeSet<String> = BTreeSet::new();
    let mut stack: Vec<String> = Vec::new();
    for b in &p.brackets {
        b.rhs.macros(&mut stack);
    }
    while let Some(m) = stack.pop() {
        if found.insert(m.clone()) {
            if let Some(d) = p.macros.iter().find(|d| d.name == m) {
                d.rhs.macros(&mut stack);
            }
        }
    }
    found
}

/// Definitions that can influence an identity.
pub fn involved_definitions(inst: &Instance, identity: &Identity) -> BTreeSet<DefRef> {
    let p = &inst.presentation;
    let mut out = BTreeSet::new();
    let coproducts = |out: &mut BTreeSet<DefRef>, g: &str| {
        out.insert(DefRef::Coproduct(g.to_string()));
    };
    match identity {
        Identity::Jacobi(..) => {
            for b in &p.brackets {
                out.insert(DefRef::Bracket(b.left.clone(), b.right.clone()));
            }
            for m in bracket_macros(p) {
                out.insert(DefRef::Macro(m));
            }
        }
        Identity::Homomorphism(a, b) => {
            coproducts(&mut out, a);
            coproducts(&mut out, b);
            if let Some(def) = p.bracket_def(a, b) {
                out.insert(DefRef::Bracket(def.left.clone(), def.right.clone()));
                let mut ms = Vec::new();
                def.rhs.macros(&mut ms);
                out.extend(ms.into_iter().map(DefRef::Macro));
            }
            if let (Some(x), Some(y)) = (inst.id(a), inst.id(b)) {
                for g in inst.engine.bracket(x, y).support() {
                    coproducts(&mut out, &inst.names()[g as usize]);
                }
            }
        }
        Identity::Coassociativity(g) => coproducts(&mut out, g),
        Identity::Counit(g) => {
            coproducts(&mut out, g);
            out.insert(DefRef::Counit(g.clone()));
        }
        Identity::Antipode(g) => {
            coproducts(&mut out, g);
            out.insert(DefRef::Counit(g.clone()));
            out.insert(DefRef::Antipode(g.clone()));
        }
        Identity::Central(m) => {
            out.insert(DefRef::Macro(m.clone()));
        }
        Identity::Equal(a, b) => {
            out.insert(DefRef::Macro(a.clone()));
            out.insert(DefRef::Macro(b.clone()));
        }
        Identity::Relation(a, b) => {
            let mut ms = Vec::new();
            for side in [a, b] {
                if let Ok(e) = inst.parse_expr(side) {
                    e.macros(&mut ms);
                }
            }
            out.extend(ms.into_iter().map(DefRef::Macro));
        }
    }
    out
}

fn candidate_edits(p: &HopfPresentation, targets: &BTreeSet<DefRef>, cfg: &RepairConfig) -> Vec<Edit> {
    let mut out = Vec::new();
    for d in targets {
        let Some(rhs) = definition_rhs(p, d) else { continue };
        for (i, t) in rhs.summands().iter().enumerate() {
            if t.is_literal_zero() {
                continue;
            }
            let mut toggles = vec![Toggle::FlipSign];
            if cfg.allow_swap {
                let core = match t {
                    Expr::Neg(x) => &**x,
                    x => x,
                };
                match core {
                    Expr::Tensor(slots) => toggles.extend((0..slots.len()).map(|s| Toggle::SwapPlacement { slot: Some(s) })),
                    _ => toggles.push(Toggle::SwapPlacement { slot: None }),
                }
            }
            if cfg.allow_rescale {
                toggles.push(Toggle::Rescale { double: true });
                toggles.push(Toggle::Rescale { double: false });
            }
            toggles.extend(cfg.append_factors.iter().map(|g| Toggle::AppendFactor { generator: g.clone() }));
            for toggle in toggles {
                if apply_toggle(t, &toggle).is_some() {
                    out.push(Edit { definition: d.clone(), term: i, toggle });
                }
            }
        }
    }
    out
}

/// Iterates over k-subsets of 0..n in lexicographic order.
fn combinations(n: usize, k: usize, mut f: impl FnMut(&[usize]) -> bool) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if !f(&idx) {
            return;
        }
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

struct Evaluator<'a> {
    base: &'a HopfPresentation,
    screen: Instance,
    screen_order: usize,
    bracket_macros: BTreeSet<String>,
}

impl Evaluator<'_> {
    fn instance(&self, p: &HopfPresentation, edits: &[Edit]) -> Result<Instance, CheckError> {
        let touches_table = edits.iter().any(|e| match &e.definition {
            DefRef::Bracket(..) => true,
            DefRef::Macro(m) => self.bracket_macros.contains(m),
            _ => false,
        });
        if touches_table {
            return Ok(p.instantiate(self.screen_order)?);
        }
        // Same bracket table: reuse the warm engine and re-evaluate only the
        // edited images.
        let mut inst = self.screen.clone();
        inst.presentation = p.clone();
        for e in edits {
            let (map, g) = match &e.definition {
                DefRef::Coproduct(g) => (StructureMap::Coproduct, g),
                DefRef::Counit(g) => (StructureMap::Counit, g),
                DefRef::Antipode(g) => (StructureMap::Antipode, g),
                _ => continue,
            };
            inst.refresh_image(map, g)?;
        }
        Ok(inst)
    }

    /// Index of the first identity that still fails, `None` if all hold.
    fn first_failure(&self, edits: &[Edit], identities: &[Identity]) -> Option<usize> {
        let Some((p, _)) = apply_edits(self.base, edits) else { return Some(0) };
        let Ok(inst) = self.instance(&p, edits) else { return Some(0) };
        identities.iter().position(|id| !matches!(id.holds(&inst), Ok(true)))
    }
}

/// Searches for minimal sets of term edits that make every identity in
/// `identities` hold at truncation order `order`.
///
/// Candidates are screened against the failing identities at a low order and
/// confirmed against the whole list at `order`.
pub fn repair_search(
    presentation: &HopfPresentation,
    identities: &[Identity],
    order: usize,
    cfg: &RepairConfig,
) -> Result<RepairReport, CheckError> {
    let inst = presentation.instantiate(order)?;
    let checked = super::identity::check_all(&inst, identities)?;
    let failing: Vec<Identity> = checked.iter().filter(|c| !c.passed()).map(|c| c.identity.clone()).collect();
    if failing.is_empty() {
        return Ok(RepairReport { failing, variants: Vec::new(), evaluated: 0, budget_exhausted: false });
    }
    let lowest = checked.iter().filter_map(|c| c.defect.valuation()).max().unwrap_or(0);
    let screen_order = lowest.max(1).min(order);

    let targets: BTreeSet<DefRef> = match &cfg.targets {
        Some(t) => t.iter().cloned().collect(),
        None => failing.iter().flat_map(|f| involved_definitions(&inst, f)).collect(),
    };
    let candidates = candidate_edits(presentation, &targets, cfg);
    // An edit can only repair identities whose involved definitions it touches.
    let involved: Vec<BTreeSet<DefRef>> = failing.iter().map(|f| involved_definitions(&inst, f)).collect();
    let covers: Vec<Vec<bool>> =
        candidates.iter().map(|c| involved.iter().map(|s| s.contains(&c.definition)).collect()).collect();
    let ev = Evaluator {
        base: presentation,
        screen: presentation.instantiate_with(Arc::new(presentation.build_engine(screen_order)?))?,
        screen_order,
        bracket_macros: bracket_macros(presentation),
    };
    let mut order_of_checks: Vec<Identity> = failing.clone();

    let mut evaluated = 0usize;
    let mut exhausted = false;
    let mut variants = Vec::new();
    for size in 1..=cfg.max_edits {
        let mut screened: Vec<Vec<Edit>> = Vec::new();
        combinations(candidates.len(), size, |idx| {
            let edits: Vec<Edit> = idx.iter().map(|&i| candidates[i].clone()).collect();
            let mut terms = BTreeSet::new();
            if !edits.iter().all(|e| terms.insert((&e.definition, e.term))) {
                return true;
            }
            if !(0..failing.len()).all(|f| idx.iter().any(|&i| covers[i][f])) {
                return true;
            }
            if evaluated >= cfg.budget {
                exhausted = true;
                return false;
            }
            evaluated += 1;
            match ev.first_failure(&edits, &order_of_checks) {
                None => screened.push(edits),
                // Check the most recently failing identity first next time.
                Some(f) if f > 0 => {
                    let id = order_of_checks.remove(f);
                    order_of_checks.insert(0, id);
                }
                Some(_) => {}
            }
            true
        });
        for edits in screened {
            let Some((p, diff)) = apply_edits(presentation, &edits) else { continue };
            let Ok(full) = p.instantiate(order) else { continue };
            let all_hold = super::identity::check_all(&full, identities)
                .map(|v| v.iter().all(|c| c.passed()))
                .unwrap_or(false);
            if all_hold {
                variants.push(Variant { edits, diff });
            }
        }
        if !variants.is_empty() || exhausted {
            break;
        }
    }
    Ok(RepairReport { failing, variants, evaluated, budget_exhausted: exhausted })
}
