use nullplane::algdef::*;
use nullplane::engine::{coproduct_homomorphism_defect, Image};

const TINY: &str = "ALGEBRA tiny
GENERATORS
  A B C
BRACKETS
  [A, B] = C
";

fn quantum() -> HopfPresentation {
    load_bundled("poincare-quantum").unwrap()
}

#[test]
fn serialize_then_parse_is_the_identity() {
    for name in ["poincare-classical", "poincare-quantum", "galilean-quantum", "pi13", "pi23", "splus-quantum"] {
        let p = load_bundled(name).unwrap();
        let text = p.serialize();
        let back = HopfPresentation::parse(&text).unwrap_or_else(|e| panic!("{name}: {e}\n{text}"));
        assert_eq!(back, p, "{name}");
        assert_eq!(back.serialize(), text, "{name}");
    }
}

#[test]
fn classical_file_has_ten_generators_and_24_brackets() {
    let p = load_bundled("poincare-classical").unwrap();
    assert_eq!(p.generators, ["P+", "P1", "P2", "P-", "E1", "E2", "J3", "K3", "F1", "F2"]);
    assert_eq!(p.brackets.len(), 24);
    let inst = p.instantiate(0).unwrap();
    assert_eq!(inst.engine.table().nonzero_pairs().len(), 24);
}

#[test]
fn galilean_file_has_seven_generators_and_central_mass() {
    let p = load_bundled("galilean-quantum").unwrap();
    assert_eq!(p.generators.len(), 7);
    assert_eq!(p.center, ["Mt"]);
    let inst = p.instantiate(4).unwrap();
    let m = inst.element("Mt").unwrap();
    for g in inst.names() {
        let x = inst.element(g).unwrap();
        assert!(inst.engine.commutator(&m, &x).unwrap().is_zero());
    }
}

#[test]
fn bundled_subalgebras_have_the_listed_generators() {
    let pi13 = load_bundled("pi13").unwrap();
    assert_eq!(pi13.generators.len(), 6);
    for g in PI13 {
        assert!(pi13.generator_index(g).is_some());
    }
    assert_eq!(load_bundled("pi23").unwrap().generators.len(), 6);
    let splus = load_bundled("splus-quantum").unwrap();
    assert_eq!(splus.generators.len(), 7);
    let grading = &splus.grading;
    assert!(grading.iter().all(|&g| g == 0 || g == 1));
    assert!(matches!(load_bundled("sl2").unwrap_err().kind, ErrorKind::UnknownPresentation(_)));
}

#[test]
fn duplicate_bracket_in_either_order_is_rejected() {
    let src = format!("{TINY}  [B, A] = -C\n");
    let err = HopfPresentation::parse(&src).unwrap_err();
    assert!(matches!(err.kind, ErrorKind::DuplicateBracket(..)), "{err}");
    assert_eq!(err.span.line, 6);
}

#[test]
fn undeclared_symbol_is_reported_with_position() {
    let src = TINY.replace("= C", "= C + D");
    let err = HopfPresentation::parse(&src).unwrap_err();
    assert!(matches!(err.kind, ErrorKind::UndeclaredSymbol(ref s) if s == "D"), "{err}");
    assert_eq!((err.span.line, err.span.col), (5, 16));
    assert!(err.to_string().starts_with("5:16:"));
}

#[test]
fn function_arguments_must_be_linear_in_series_generators() {
    let with_series = TINY.replace("BRACKETS", "SERIES\n  A\nBRACKETS");
    assert!(HopfPresentation::parse(&with_series.replace("= C", "= C*sinh(z*A)")).is_ok());
    for bad in ["sinh(z*A^2)", "exp(z*A*B)", "cosh(A)", "sinh(z*B)"] {
        let src = with_series.replace("= C", &format!("= {bad}"));
        let err = HopfPresentation::parse(&src).unwrap_err();
        assert!(matches!(err.kind, ErrorKind::NonlinearArgument(_)), "{bad}: {err}");
    }
}

#[test]
fn syntax_errors_carry_line_and_column() {
    let err = HopfPresentation::parse(&TINY.replace("= C", "= (C")).unwrap_err();
    assert!(matches!(err.kind, ErrorKind::Syntax(_)), "{err}");
    assert_eq!(err.span.line, 5);
}

#[test]
fn positive_grade_subalgebra_is_closed_and_undeformed() {
    let g1 = restrict(&quantum(), &["E1", "E2", "P+"], "g+1", 4).unwrap();
    assert!(g1.brackets.is_empty());
    let inst = g1.instantiate(4).unwrap();
    let delta = inst.coproduct.as_ref().unwrap();
    for g in inst.names() {
        let expected = inst.eval_str(&format!("1 ox {g} + {g} ox 1")).unwrap();
        let Ok(Image::Tensor(t)) = delta.image(inst.id(g).unwrap()) else { panic!() };
        assert_eq!(Value::Tensor(t.clone()), expected, "{g}");
    }
}

#[test]
fn stability_subalgebra_closes() {
    let s = restrict(&quantum(), &SPLUS, "s+", 6).unwrap();
    assert_eq!(s.generators.len(), 7);
    assert!(s.has_hopf_structure());
}

#[test]
fn negative_grade_set_fails_with_coproduct_witness() {
    let Err(RestrictError::NotClosed(f)) = restrict(&quantum(), &["F1", "F2", "P-"], "g-1", 4) else {
        panic!("expected a closure failure")
    };
    // Delta(P-) already leaves the set through its exp(-z*P+) dressing.
    assert_eq!(f.first().site, WitnessSite::Coproduct("P-".into()));
    assert!(f.first().outside.contains(&"P+".to_string()));
    let w = f.find(&WitnessSite::Coproduct("F1".into())).unwrap();
    assert!(w.has_term("E1 ox P-"), "{:?}", w.terms);
    assert!(w.outside.contains(&"E1".to_string()));
}

#[test]
fn grade_zero_and_minus_stability_sets_fail() {
    for subset in [&["K3", "J3", "P1", "P2"][..], &["F1", "F2", "P-", "K3", "J3", "P1", "P2"][..]] {
        match restrict(&quantum(), subset, "sub", 4) {
            Err(RestrictError::NotClosed(f)) => assert!(!f.witnesses.is_empty()),
            other => panic!("{subset:?} closed: {other:?}"),
        }
    }
}

#[test]
fn plane_subalgebras_close_only_after_projection() {
    for subset in [&PI13, &PI23] {
        assert!(matches!(restrict(&quantum(), subset, "pi", 4), Err(RestrictError::NotClosed(_))));
        let p = project(&quantum(), subset, "pi").unwrap();
        assert_eq!(p.generators.len(), 6);
        p.instantiate(4).unwrap();
    }
}

#[test]
fn quantum_negative_grade_generators_do_not_commute() {
    for k in 2..=4 {
        let inst = quantum().instantiate(k).unwrap();
        let c = inst.engine.commutator(&inst.element("F1").unwrap(), &inst.element("F2").unwrap()).unwrap();
        assert!(!c.is_zero(), "K={k}");
    }
    let classical = quantum().instantiate(1).unwrap();
    let c = classical.engine.commutator(&classical.element("F1").unwrap(), &classical.element("F2").unwrap()).unwrap();
    assert!(c.is_zero());
}

#[test]
fn galilean_identification_respects_brackets_and_coproducts() {
    let gal = load_bundled("galilean-quantum").unwrap().instantiate(4).unwrap();
    let poin = quantum().instantiate(4).unwrap();
    let phi = gal.identification_map(&poin).unwrap();
    let image = |x: &nullplane::engine::AlgebraElement| poin.engine.apply_to_algebra(&phi, x).unwrap();
    for a in gal.names() {
        for b in gal.names() {
            let (ga, gb) = (gal.element(a).unwrap(), gal.element(b).unwrap());
            let lhs = image(&gal.engine.commutator(&ga, &gb).unwrap());
            let rhs = poin.engine.commutator(&image(&ga), &image(&gb)).unwrap();
            assert_eq!(lhs, rhs, "[{a}, {b}]");
        }
    }
    let gd = gal.coproduct.as_ref().unwrap();
    let pd = poin.coproduct.as_ref().unwrap();
    for g in gal.names() {
        let t = gd.tensor_image(gal.id(g).unwrap()).unwrap();
        let mut mapped = nullplane::engine::TensorElement::zero(2, 4);
        for (key, c) in t.terms() {
            let f0 = image(&nullplane::engine::AlgebraElement::term(key[0].clone(), c.clone()));
            let f1 = image(&nullplane::engine::AlgebraElement::term(key[1].clone(), nullplane::kernel::ZSeries::one(4)));
            mapped = mapped.add(&poin.engine.tensor2(&f0, &f1));
        }
        let target = poin.engine.apply_morphism(pd, &image(&gal.element(g).unwrap())).unwrap();
        assert_eq!(Image::Tensor(mapped), target, "Delta({g})");
    }
    // The momenta of the Galilean set are primitive-like under the identification.
    let d = coproduct_homomorphism_defect(&poin.engine, poin.id("E1").unwrap(), poin.id("P1").unwrap(), pd).unwrap();
    assert!(d.is_zero());
}
