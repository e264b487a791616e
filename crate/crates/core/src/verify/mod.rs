//! Identity checks over evaluated presentations and the search for minimal
//! corrections of failing definitions.

mod identity;
mod repair;

pub use identity::{check_all, hopf_identities, jacobi_identities, CheckError, Checked, Defect, Identity};
pub use repair::{
    apply_edits, apply_toggle, involved_definitions, repair_search, DefRef, Edit, RepairConfig, RepairReport, Toggle,
    Variant,
};
