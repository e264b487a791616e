use nullplane::algdef::{bundled_source, load_bundled, HopfPresentation};
use nullplane::verify::*;

fn quantum() -> HopfPresentation {
    load_bundled("poincare-quantum").unwrap()
}

fn pair_identities(p: &HopfPresentation, g: &str) -> Vec<Identity> {
    // J3 and F2 are left out: their pairs with F1 involve the printed Delta(F2).
    p.generators
        .iter()
        .filter(|h| !matches!(h.as_str(), "J3" | "F2"))
        .map(|h| Identity::Homomorphism(h.clone(), g.to_string()))
        .collect()
}

#[test]
fn planted_sign_error_is_undone_by_one_flip() {
    let src = bundled_source("poincare-quantum")
        .unwrap()
        .replace("+ z*exp(-z*P+)*E1 ox P- - z*P- ox E1*exp(z*P+)", "+ z*exp(-z*P+)*E1 ox P- + z*P- ox E1*exp(z*P+)");
    let corrupted = HopfPresentation::parse(&src).unwrap();
    let ids = pair_identities(&corrupted, "F1");
    let report = repair_search(&corrupted, &ids, 3, &RepairConfig::default()).unwrap();
    assert!(!report.already_consistent(), "{report:?}");
    assert_eq!(report.minimal_size(), Some(1));
    assert!(report.unique_minimal(), "{:?}", report.variants);
    let edit = &report.variants[0].edits[0];
    assert_eq!(edit.definition, DefRef::Coproduct("F1".into()));
    assert_eq!(edit.toggle, Toggle::FlipSign);
    assert_eq!(report.variants[0].diff, ["Delta(F1): + z*P- ox E1*exp(z*P+) -> - z*P- ox E1*exp(z*P+)"]);
    let (fixed, _) = apply_edits(&corrupted, &report.variants[0].edits).unwrap();
    assert_eq!(fixed, quantum());
}

#[test]
fn passing_identities_are_already_consistent() {
    let p = quantum();
    let ids = vec![Identity::Homomorphism("K3".into(), "P+".into()), Identity::Coassociativity("F1".into())];
    let report = repair_search(&p, &ids, 4, &RepairConfig::default()).unwrap();
    assert!(report.already_consistent());
    assert!(report.variants.is_empty());
    assert_eq!(report.evaluated, 0);
}

#[test]
fn printed_coproduct_of_f2_fails_and_has_a_unique_two_flip_repair() {
    let p = quantum();
    let ids = hopf_identities(&p.generators);
    let inst = p.instantiate(6).unwrap();
    let failing: Vec<String> =
        check_all(&inst, &ids).unwrap().into_iter().filter(|c| !c.passed()).map(|c| c.identity.to_string()).collect();
    assert_eq!(failing.len(), 8, "{failing:?}");

    let report = repair_search(&p, &ids, 6, &RepairConfig::default()).unwrap();
    assert!(report.unique_minimal());
    assert_eq!(report.minimal_size(), Some(2));
    assert_eq!(
        report.variants[0].diff,
        [
            "Delta(F2): + z*exp(-z*P+)*J3 ox P1 -> - z*exp(-z*P+)*J3 ox P1",
            "Delta(F2): - z*P1 ox J3*exp(z*P+) -> + z*P1 ox J3*exp(z*P+)",
        ]
    );
    let (fixed, _) = apply_edits(&p, &report.variants[0].edits).unwrap();
    let fixed = fixed.instantiate(6).unwrap();
    assert!(check_all(&fixed, &ids).unwrap().iter().all(Checked::passed));
}

#[test]
fn galilean_energy_invariant_needs_a_factor_two() {
    let p = load_bundled("galilean-quantum").unwrap();
    let ids = vec![Identity::Central("Eq2".into())];
    let inst = p.instantiate(4).unwrap();
    assert!(!ids[0].holds(&inst).unwrap());
    assert!(Identity::Central("Lq".into()).holds(&inst).unwrap());

    let cfg = RepairConfig { targets: Some(vec![DefRef::Macro("Eq2".into())]), ..RepairConfig::default() };
    let report = repair_search(&p, &ids, 4, &cfg).unwrap();
    assert!(report.unique_minimal(), "{:?}", report.variants);
    let edit = &report.variants[0].edits[0];
    assert_eq!(edit.toggle, Toggle::Rescale { double: true });
    assert_eq!(report.variants[0].diff, ["Eq2: - Ht*sinhz(Mt) -> - 2*Ht*sinhz(Mt)"]);
}

#[test]
fn toggles_act_on_single_terms() {
    let p = quantum();
    let inst = p.instantiate(2).unwrap();
    let term = inst.parse_expr("z*exp(-z*P+)*J3").unwrap();
    let flipped = apply_toggle(&term, &Toggle::FlipSign).unwrap();
    assert_eq!(flipped.to_string(), "-z*exp(-z*P+)*J3");
    let swapped = apply_toggle(&term, &Toggle::SwapPlacement { slot: None }).unwrap();
    assert_eq!(swapped.to_string(), "z*J3*exp(-z*P+)");
    assert!(apply_toggle(&inst.parse_expr("J3").unwrap(), &Toggle::SwapPlacement { slot: None }).is_none());
}
