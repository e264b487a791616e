use nullplane::algdef::{load_bundled, Instance};
use nullplane::bialgebra::*;
use nullplane::engine::{AlgebraElement, GenId, TensorElement};
use nullplane::kernel::{Rational, ZSeries};
use nullplane::verify::{apply_edits, DefRef, Edit, Toggle};

fn classical() -> Instance {
    load_bundled("poincare-classical").unwrap().instantiate(2).unwrap()
}

fn sc() -> StructureConstants {
    StructureConstants::from_instance(&classical()).unwrap()
}

fn two_z() -> ZSeries {
    ZSeries::monomial(Rational::from_integer(2.into()), 1, 2)
}

/// `c * sum (a (x) b - b (x) a)` placed in slots `slots` of a rank-3 tensor,
/// or as a rank-2 tensor when `slots` is `None`.
fn embed(inst: &Instance, c: &ZSeries, pairs: &[(&str, &str)], slots: Option<(usize, usize)>) -> TensorElement {
    let rank = if slots.is_some() { 3 } else { 2 };
    let mut t = TensorElement::zero(rank, 2);
    let one = AlgebraElement::one(2);
    for (a, b) in pairs {
        let (ea, eb) = (inst.element(a).unwrap(), inst.element(b).unwrap());
        for (x, y, sign) in [(&ea, &eb, 1), (&eb, &ea, -1)] {
            let mut factors = vec![one.clone(); rank];
            let (i, j) = slots.unwrap_or((0, 1));
            factors[i] = x.clone();
            factors[j] = y.clone();
            t.add_outer(&factors, &c.scale(&Rational::from_integer(sign.into())));
        }
    }
    t
}

/// `[[r, r]]` computed with tensor commutators in the enveloping algebra.
fn cybe_oracle(pairs: &[(&str, &str)]) -> TensorElement {
    let inst = classical();
    let e = &inst.engine;
    let r12 = embed(&inst, &two_z(), pairs, Some((0, 1)));
    let r13 = embed(&inst, &two_z(), pairs, Some((0, 2)));
    let r23 = embed(&inst, &two_z(), pairs, Some((1, 2)));
    e.tensor_commutator(&r12, &r13)
        .unwrap()
        .add(&e.tensor_commutator(&r12, &r23).unwrap())
        .add(&e.tensor_commutator(&r13, &r23).unwrap())
}

fn assert_trivector_matches(t: &Trivector, oracle: &TensorElement) {
    for (key, c) in oracle.terms() {
        assert!(key.iter().all(|w| w.len() == 1));
        let idx: Vec<GenId> = key.iter().map(|w| w.letters()[0]).collect();
        assert_eq!(&t.component(idx[0], idx[1], idx[2]), c, "{idx:?}");
    }
    for ((i, j, k), c) in t.components() {
        let total: usize = oracle.terms().keys().filter(|key| key[0].letters() == [*i] && key[1].letters() == [*j] && key[2].letters() == [*k]).count();
        assert_eq!(total, 1, "{i} {j} {k} = {c}");
    }
}

#[test]
fn structure_constants_are_antisymmetric_and_satisfy_jacobi() {
    let sc = sc();
    assert_eq!(sc.dim(), 10);
    assert!(sc.is_antisymmetric());
    assert!(sc.jacobi_failures().is_empty());
    let k3 = sc.id("K3").unwrap();
    assert_eq!(sc.bracket(k3, sc.id("P+").unwrap()), &[(sc.id("P+").unwrap(), Rational::from_integer(1.into()))]);
}

#[test]
fn quantum_brackets_are_not_structure_constants() {
    let q = load_bundled("poincare-quantum").unwrap().instantiate(2).unwrap();
    assert!(matches!(StructureConstants::from_instance(&q), Err(BialgebraError::NonLinearBracket(..))));
}

#[test]
fn r_matrix_solves_the_classical_yang_baxter_equation() {
    let sc = sc();
    let r = null_plane_r_matrix(&sc).unwrap();
    let t = schouten(&r, &r, &sc);
    assert!(t.is_zero(), "{}", t.display(sc.names()));
    assert!(cybe_oracle(&[("K3", "P+"), ("E1", "P1"), ("E2", "P2")]).is_zero());
}

#[test]
fn schouten_bracket_agrees_with_tensor_oracle() {
    let sc = sc();
    for pairs in [
        &[("P1", "P2")][..],
        &[("K3", "P+")][..],
        &[("E1", "P1")][..],
        &[("K3", "P+"), ("E1", "P1")][..],
        &[("F1", "E1"), ("J3", "P-")][..],
    ] {
        let r = Bivector::from_wedges(&sc, &two_z(), pairs).unwrap();
        assert_trivector_matches(&schouten(&r, &r, &sc), &cybe_oracle(pairs));
    }
}

#[test]
fn partial_r_matrices_discriminate() {
    let sc = sc();
    let abelian = Bivector::from_wedges(&sc, &two_z(), &[("P1", "P2")]).unwrap();
    assert!(schouten(&abelian, &abelian, &sc).is_zero());
    // K3 and P+ span a two-dimensional subalgebra, which has no trivectors.
    let kp = Bivector::from_wedges(&sc, &two_z(), &[("K3", "P+")]).unwrap();
    assert!(schouten(&kp, &kp, &sc).is_zero());
    let e1p1 = Bivector::from_wedges(&sc, &two_z(), &[("E1", "P1")]).unwrap();
    assert_eq!(schouten(&e1p1, &e1p1, &sc).display(sc.names()).to_string(), "-4 z^2 P+^P1^E1");
    let transverse = Bivector::from_wedges(&sc, &two_z(), &[("E1", "P1"), ("E2", "P2")]).unwrap();
    assert_eq!(schouten(&transverse, &transverse, &sc).len(), 2);
}

#[test]
fn cocommutator_examples() {
    let sc = sc();
    let r = null_plane_r_matrix(&sc).unwrap();
    let id = |n| sc.id(n).unwrap();
    assert!(cocommutator(&r, id("P+"), &sc).is_zero());
    assert_eq!(
        cocommutator(&r, id("K3"), &sc),
        Bivector::from_wedges(&sc, &two_z(), &[("K3", "P+"), ("E1", "P1"), ("E2", "P2")]).unwrap()
    );
    assert_eq!(cocommutator(&r, id("P-"), &sc), Bivector::from_wedges(&sc, &two_z(), &[("P-", "P+")]).unwrap());
    let shown = cocommutator(&r, id("K3"), &sc).display(sc.names()).to_string();
    assert_eq!(shown, "2 z K3^P+ + 2 z E1^P1 + 2 z E2^P2");
}

#[test]
fn cocommutators_agree_with_tensor_commutator_oracle() {
    let inst = classical();
    let sc = sc();
    let r = null_plane_r_matrix(&sc).unwrap();
    let rt = embed(&inst, &two_z(), &[("K3", "P+"), ("E1", "P1"), ("E2", "P2")], None);
    for g in inst.names() {
        let x = inst.element(g).unwrap();
        let one = AlgebraElement::one(2);
        let mut dx = TensorElement::zero(2, 2);
        dx.add_outer(&[one.clone(), x.clone()], &ZSeries::one(2));
        dx.add_outer(&[x, one], &ZSeries::one(2));
        let oracle = inst.engine.tensor_commutator(&dx, &rt).unwrap();
        let ours = cocommutator(&r, sc.id(g).unwrap(), &sc);
        for (key, c) in oracle.terms() {
            let (a, b) = (key[0].letters()[0], key[1].letters()[0]);
            assert_eq!(&ours.component(a, b), c, "{g}");
        }
        assert_eq!(oracle.len(), 2 * ours.components().len(), "{g}");
    }
}

#[test]
fn printed_cocommutators_match_the_r_matrix_except_for_f2() {
    let sc = sc();
    let r = null_plane_r_matrix(&sc).unwrap();
    let derived = cocommutator_table(&r, &sc);
    let printed = printed_cocommutators(&sc).unwrap();
    let mismatched: Vec<&str> =
        (0..10).filter(|&g| derived[g] != printed[g]).map(|g| sc.names()[g].as_str()).collect();
    assert_eq!(mismatched, ["F2"]);
    let f2 = sc.id("F2").unwrap() as usize;
    assert_eq!(
        derived[f2],
        Bivector::from_wedges(&sc, &two_z(), &[("F2", "P+"), ("E2", "P-"), ("P1", "J3")]).unwrap()
    );
}

#[test]
fn cojacobi_holds_for_derived_cocommutators() {
    let sc = sc();
    let derived = cocommutator_table(&null_plane_r_matrix(&sc).unwrap(), &sc);
    assert!(cojacobi_defect(&derived).iter().all(Trivector::is_zero));
    let zero = vec![Bivector::zero(2); 10];
    assert!(cojacobi_defect(&zero).iter().all(Trivector::is_zero));
    let mut corrupted = derived.clone();
    let f1 = sc.id("F1").unwrap() as usize;
    corrupted[f1] = Bivector::from_wedges(&sc, &two_z(), &[("F1", "P+"), ("E1", "P-"), ("J3", "P2"), ("K3", "P1")]).unwrap();
    assert!(cojacobi_defect(&corrupted).iter().any(|t| !t.is_zero()));
}

#[test]
fn first_order_coproduct_matches_cocommutators() {
    let sc = sc();
    let quantum = load_bundled("poincare-quantum").unwrap();
    let inst = quantum.instantiate(2).unwrap();
    let printed = printed_cocommutators(&sc).unwrap();
    assert!(first_order_consistency(&inst, &printed).unwrap().iter().all(Bivector::is_zero));

    let derived = cocommutator_table(&null_plane_r_matrix(&sc).unwrap(), &sc);
    let defects = first_order_consistency(&inst, &derived).unwrap();
    let failing: Vec<&str> = (0..10).filter(|&g| !defects[g].is_zero()).map(|g| sc.names()[g].as_str()).collect();
    assert_eq!(failing, ["F2"]);

    let flips: Vec<Edit> = [4, 5]
        .map(|term| Edit { definition: DefRef::Coproduct("F2".into()), term, toggle: Toggle::FlipSign })
        .to_vec();
    let (repaired, _) = apply_edits(&quantum, &flips).unwrap();
    let defects = first_order_consistency(&repaired.instantiate(2).unwrap(), &derived).unwrap();
    assert!(defects.iter().all(Bivector::is_zero));
}

#[test]
fn dual_coordinates_of_translations() {
    let sc = sc();
    let derived = cocommutator_table(&null_plane_r_matrix(&sc).unwrap(), &sc);
    let coords = [sc.id("P1").unwrap(), sc.id("P2").unwrap(), sc.id("P+").unwrap()];
    let brackets = dual_coordinate_brackets(&derived, &coords);
    let shown: Vec<String> =
        brackets.iter().map(|b| b.render(sc.names(), |n| format!("p{}", n.trim_start_matches('P')))).collect();
    assert_eq!(shown, ["[p1, p2] = 0", "[p1, p+] = 2 z p1", "[p2, p+] = 2 z p2"]);
}
