use super::presentation::HopfPresentation;
use super::restrict::{project, restrict, RestrictError};
use super::{AlgdefError, ErrorKind, Span};
use crate::kernel::DEFAULT_ORDER;

const POINCARE_CLASSICAL: &str = include_str!("../../data/poincare-classical.algdef");
const POINCARE_QUANTUM: &str = include_str!("../../data/poincare-quantum.algdef");
const GALILEAN_QUANTUM: &str = include_str!("../../data/galilean-quantum.algdef");

pub const PI13: [&str; 6] = ["K3", "E1", "F1", "P1", "P+", "P-"];
pub const PI23: [&str; 6] = ["K3", "E2", "F2", "P2", "P+", "P-"];
pub const SPLUS: [&str; 7] = ["E1", "E2", "P+", "K3", "J3", "P1", "P2"];
pub const POINCARE_GENERATORS: [&str; 10] = ["P+", "P1", "P2", "P-", "E1", "E2", "J3", "K3", "F1", "F2"];

pub fn bundled_names() -> &'static [&'static str] {
    &["poincare-classical", "poincare-quantum", "galilean-quantum", "pi13", "pi23", "splus-quantum"]
}

/// Source text of the presentations shipped as files.
pub fn bundled_source(name: &str) -> Option<&'static str> {
    match name {
        "poincare-classical" => Some(POINCARE_CLASSICAL),
        "poincare-quantum" => Some(POINCARE_QUANTUM),
        "galilean-quantum" => Some(GALILEAN_QUANTUM),
        _ => None,
    }
}

/// Loads a bundled presentation. The two Pi presentations are projections
/// of the quantum algebra (generators outside the set are set to zero);
/// `splus-quantum` is a checked restriction.
pub fn load_bundled(name: &str) -> Result<HopfPresentation, AlgdefError> {
    if let Some(src) = bundled_source(name) {
        return HopfPresentation::parse(src);
    }
    let quantum = || HopfPresentation::parse(POINCARE_QUANTUM);
    match name {
        "pi13" => project(&quantum()?, &PI13, name),
        "pi23" => project(&quantum()?, &PI23, name),
        "splus-quantum" => restrict(&quantum()?, &SPLUS, name, DEFAULT_ORDER).map_err(|e| match e {
            RestrictError::Definition(d) => d,
            RestrictError::NotClosed(f) => AlgdefError::eval(f.to_string(), Span::default()),
        }),
        other => Err(AlgdefError::new(ErrorKind::UnknownPresentation(other.to_string()), Span::default())),
    }
}
