use nullplane::algdef::{load_bundled, Instance};
use nullplane::observables::*;
use nullplane::verify::Toggle;

fn inst(name: &str, k: usize) -> Instance {
    load_bundled(name).unwrap().instantiate(k).unwrap()
}

#[test]
fn quantum_casimirs_reduce_to_classical_ones() {
    let q0 = inst("poincare-quantum", 0);
    let c0 = inst("poincare-classical", 0);
    let mq = build_casimir(Casimir::Mq2, &q0).unwrap().body;
    assert_eq!(mq, c0.element("2*P-*P+ - P1^2 - P2^2").unwrap());
    assert_eq!(mq, build_casimir(Casimir::M2, &c0).unwrap().body);
    let wq = build_casimir(Casimir::Wq2, &q0).unwrap().body;
    assert_eq!(wq, build_casimir(Casimir::W2, &c0).unwrap().body);
}

#[test]
fn mass_on_plane_subalgebra_drops_transverse_terms() {
    let pi13 = inst("pi13", 4);
    let m = build_casimir(Casimir::Mq2, &pi13).unwrap().body;
    assert_eq!(m, pi13.element("2*P-*sinhz(P+) - P1^2").unwrap());
    assert!(matches!(build_casimir(Casimir::W2, &pi13), Err(ObservableError::Mismatch(..))));
}

#[test]
fn classical_casimirs_are_central() {
    let c = inst("poincare-classical", 0);
    for name in [Casimir::M2, Casimir::W2] {
        assert!(is_central(&build_casimir(name, &c).unwrap().body, &c).unwrap(), "{name}");
    }
}

#[test]
fn quantum_casimirs_are_central_at_default_order() {
    let q = inst("poincare-quantum", 6);
    for name in [Casimir::Mq2, Casimir::Wq2] {
        let defects = centrality_defect(&build_casimir(name, &q).unwrap().body, &q).unwrap();
        assert_eq!(defects.len(), 10);
        assert!(defects.iter().all(|(_, d)| d.is_zero()), "{name}");
    }
}

#[test]
fn pauli_lubanski_components_are_not_central() {
    let q = inst("poincare-quantum", 4);
    let w13 = q.element("W13q").unwrap();
    let defects = centrality_defect(&w13, &q).unwrap();
    let of = |g: &str| defects.iter().find(|(n, _)| n == g).unwrap().1.clone();
    assert!(of("P+").is_zero());
    assert_eq!(of("E2"), q.element("-Wpq*cosh(z*P+)").unwrap());
}

#[test]
fn only_symmetrized_readings_are_central() {
    let c = inst("poincare-classical", 0);
    let readings = pauli_lubanski_readings(&c).unwrap();
    let central: Vec<&str> = readings.iter().filter(|r| r.central).map(|r| r.label.as_str()).collect();
    assert_eq!(central, ["symmetrized"]);
    let q = inst("poincare-quantum", 4);
    let readings = pauli_lubanski_readings(&q).unwrap();
    let central: Vec<&str> = readings.iter().filter(|r| r.central).map(|r| r.label.as_str()).collect();
    assert_eq!(central, ["symmetrized, cosh on the left", "symmetrized, cosh on the right"]);
}

#[test]
fn classical_table_holds_with_implied_zeros() {
    let p = load_bundled("poincare-classical").unwrap();
    let report = appendix_suite(SuiteKind::Classical, &p, 0).unwrap();
    assert_eq!(report.printed().count(), 18);
    assert_eq!(report.implied().count(), 28);
    assert!(report.all_passed());
    assert!(report.repairs.is_empty());
}

#[test]
fn quantum_table_fails_only_where_a_momentum_factor_is_missing() {
    let p = load_bundled("poincare-quantum").unwrap();
    let report = appendix_suite(SuiteKind::Quantum, &p, 6).unwrap();
    assert_eq!(report.printed().count(), 24);
    assert_eq!(report.implied().count(), 22);
    assert!(report.implied().all(StatementResult::passed));
    let failing: Vec<&str> = report.results.iter().filter(|r| !r.passed()).map(|r| r.statement.lhs.as_str()).collect();
    assert_eq!(failing, ["[W13q, Wmq]", "[W23q, Wmq]"]);
    for ((_, repair), g) in report.repairs.iter().zip(["P1", "P2"]) {
        assert!(repair.unique_minimal());
        let edit = &repair.variants[0].edits[0];
        assert_eq!(edit.toggle, Toggle::AppendFactor { generator: g.into() });
    }
    assert_eq!(report.repairs[0].1.variants[0].diff, ["Rq22: + z^2*Mq2*Wpq -> + z^2*Mq2*Wpq*P1"]);
}

#[test]
fn printed_examples_from_the_tables() {
    let c = inst("poincare-classical", 0);
    assert_eq!(c.element("[E2, W13]").unwrap(), c.element("Wp").unwrap());
    let q = inst("poincare-quantum", 6);
    assert_eq!(q.element("[F2, W13q]").unwrap(), q.element("-Wmq*cosh(z*P+) + z^2*Wpq*(Mq2 + P2^2)").unwrap());
    assert_eq!(q.element("[K3, Wpq]").unwrap(), q.element("Wpq*cosh(z*P+)").unwrap());
}

#[test]
fn galilean_center() {
    let g = inst("galilean-quantum", 6);
    assert!(is_central(&g.element("Mt").unwrap(), &g).unwrap());
    assert!(is_central(&build_casimir(Casimir::Lq, &g).unwrap().body, &g).unwrap());
    let eq = build_casimir(Casimir::Eq2, &g).unwrap().body;
    let defects = centrality_defect(&eq, &g).unwrap();
    let failing: Vec<&str> = defects.iter().filter(|(_, d)| !d.is_zero()).map(|(n, _)| n.as_str()).collect();
    assert_eq!(failing, ["Kt1", "Kt2"]);
    assert!(is_central(&g.element("Pt1^2 + Pt2^2 - 2*Ht*sinhz(Mt)").unwrap(), &g).unwrap());
}

#[test]
fn galilean_energy_maps_onto_mass_plus_remainder() {
    let g = inst("galilean-quantum", 6);
    let q = inst("poincare-quantum", 6);
    let phi = g.identification_map(&q).unwrap();
    let image = q.engine.apply_to_algebra(&phi, &g.element("Eq2").unwrap()).unwrap();
    assert_eq!(image, q.element("P1^2 + P2^2 - P-*sinhz(P+)").unwrap());
    assert_eq!(image, q.element("-Mq2 + P-*sinhz(P+)").unwrap());
    let doubled = q.engine.apply_to_algebra(&phi, &g.element("Pt1^2 + Pt2^2 - 2*Ht*sinhz(Mt)").unwrap()).unwrap();
    assert_eq!(doubled, q.element("-Mq2").unwrap());
}

#[test]
fn goodness_grading() {
    let entries = goodness_check(&load_bundled("poincare-quantum").unwrap(), 2).unwrap();
    let get = |g: &str| entries.iter().find(|e| e.generator == g).unwrap();
    assert_eq!(get("E1").classical, Some(1));
    assert_eq!(get("F2").classical, Some(-1));
    assert_eq!(get("P1").classical, Some(0));
    assert_eq!(get("K3").classical, Some(0));
    assert!(entries.iter().all(GoodnessEntry::consistent));
    assert!(!get("E1").exact_in_quantum);
    assert!(get("P1").exact_in_quantum && get("J3").exact_in_quantum);
}
