//! Normal ordering, morphisms and Hopf defects checked against a naive
//! rewriting oracle that shares no code with the engine.

use std::collections::BTreeMap;

use nullplane::algdef::{load_bundled, Instance};
use nullplane::engine::*;
use nullplane::kernel::{Rational, SeriesFunction, ZSeries};
use proptest::prelude::*;

/// Polynomial in words with coefficients truncated at z^K, as plain vectors.
type Poly = BTreeMap<Vec<u8>, Vec<Rational>>;

struct Oracle {
    k: usize,
    /// [hi, lo] for hi > lo, taken from the raw (unordered) right-hand sides.
    table: BTreeMap<(u8, u8), Poly>,
}

fn series_mul(a: &[Rational], b: &[Rational], k: usize) -> Vec<Rational> {
    let mut out = vec![Rational::from_integer(0.into()); k + 1];
    for i in 0..=k {
        for j in 0..=k - i {
            out[i + j] += &a[i] * &b[j];
        }
    }
    out
}

fn add_into(p: &mut Poly, w: Vec<u8>, c: &[Rational]) {
    let e = p.entry(w.clone()).or_insert_with(|| vec![Rational::from_integer(0.into()); c.len()]);
    for (x, y) in e.iter_mut().zip(c) {
        *x += y;
    }
    if e.iter().all(|x| *x == Rational::from_integer(0.into())) {
        p.remove(&w);
    }
}

impl Oracle {
    fn from_instance(inst: &Instance) -> Self {
        let k = inst.order();
        let raw = inst.presentation.raw_bracket_table(k).unwrap();
        let mut table = BTreeMap::new();
        for (hi, lo) in raw.nonzero_pairs() {
            table.insert((hi, lo), to_poly(&raw.bracket(hi, lo)));
        }
        Oracle { k, table }
    }

    /// Rewrites the leftmost inversion of every word until none is left.
    fn normal(&self, p: &Poly) -> Poly {
        let mut todo: Vec<(Vec<u8>, Vec<Rational>)> = p.iter().map(|(w, c)| (w.clone(), c.clone())).collect();
        let mut out = Poly::new();
        while let Some((w, c)) = todo.pop() {
            match (0..w.len().saturating_sub(1)).find(|&i| w[i] > w[i + 1]) {
                None => add_into(&mut out, w, &c),
                Some(i) => {
                    let mut swapped = w.clone();
                    swapped.swap(i, i + 1);
                    todo.push((swapped, c.clone()));
                    if let Some(br) = self.table.get(&(w[i], w[i + 1])) {
                        for (bw, bc) in br {
                            let mut nw = w[..i].to_vec();
                            nw.extend_from_slice(bw);
                            nw.extend_from_slice(&w[i + 2..]);
                            let nc = series_mul(&c, bc, self.k);
                            if nc.iter().any(|x| *x != Rational::from_integer(0.into())) {
                                todo.push((nw, nc));
                            }
                        }
                    }
                }
            }
        }
        out
    }

    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        let mut out = Poly::new();
        for (u, c) in a {
            for (v, d) in b {
                let mut w = u.clone();
                w.extend_from_slice(v);
                add_into(&mut out, w, &series_mul(c, d, self.k));
            }
        }
        self.normal(&out)
    }

    fn commutator(&self, a: &Poly, b: &Poly) -> Poly {
        let mut out = self.mul(a, b);
        for (w, c) in self.mul(b, a) {
            let neg: Vec<Rational> = c.iter().map(|x| -x).collect();
            add_into(&mut out, w, &neg);
        }
        out
    }
}

fn to_poly(e: &AlgebraElement) -> Poly {
    e.terms().iter().map(|(w, c)| (w.letters().to_vec(), c.coeffs().to_vec())).collect()
}

fn gen_poly(g: u8, k: usize) -> Poly {
    let mut c = vec![Rational::from_integer(0.into()); k + 1];
    c[0] = Rational::from_integer(1.into());
    Poly::from([(vec![g], c)])
}

fn quantum(k: usize) -> Instance {
    load_bundled("poincare-quantum").unwrap().instantiate(k).unwrap()
}

fn sinh_over_z_in(inst: &Instance, g: &str) -> AlgebraElement {
    let id = inst.id(g).unwrap();
    let k = inst.order();
    let coeffs = SeriesFunction::SinhOverZ.taylor(&Rational::from_integer(1.into()), k);
    AlgebraElement::from_terms(
        k,
        coeffs.into_iter().enumerate().map(|(i, c)| (Word::from_letters(&vec![id; i + 1]), ZSeries::monomial(c, i, k))),
    )
}

#[test]
fn ordered_word_is_a_fixed_point() {
    let inst = quantum(4);
    let e = &inst.engine;
    let w = e.mul(&e.gen(inst.id("P+").unwrap()), &e.gen(inst.id("K3").unwrap())).unwrap();
    assert_eq!(w.len(), 1);
    assert_eq!(e.normal_form(&w).unwrap(), w);
}

#[test]
fn boost_and_translation_bracket_is_sinh_series() {
    let inst = quantum(6);
    let e = &inst.engine;
    let (k3, pp) = (e.gen(inst.id("K3").unwrap()), e.gen(inst.id("P+").unwrap()));
    let lhs = e.mul(&k3, &pp).unwrap().sub(&e.mul(&pp, &k3).unwrap());
    assert_eq!(lhs, sinh_over_z_in(&inst, "P+"));
    let (e1, p1) = (e.gen(inst.id("E1").unwrap()), e.gen(inst.id("P1").unwrap()));
    assert_eq!(e.commutator(&e1, &p1).unwrap(), sinh_over_z_in(&inst, "P+"));
    // First terms spelled out: P+ + z^2/6 P+^3 + z^4/120 P+^5.
    let pp_id = inst.id("P+").unwrap();
    let c3 = lhs.coefficient(&Word::from_letters(&[pp_id; 3]));
    assert_eq!(c3.coeff(2), &Rational::new(1.into(), 6.into()));
    let c5 = lhs.coefficient(&Word::from_letters(&[pp_id; 5]));
    assert_eq!(c5.coeff(4), &Rational::new(1.into(), 120.into()));
}

#[test]
fn commutator_examples() {
    let inst = quantum(6);
    let e = &inst.engine;
    let f12 = e.commutator(&inst.element("F1").unwrap(), &inst.element("F2").unwrap()).unwrap();
    let printed = inst.element("z^2*P-*Wpq + z*P-*J3*sinh(z*P+)").unwrap();
    assert_eq!(f12, printed);
    assert!(!f12.is_zero());
    let pp_pm = e.commutator(&inst.element("P+").unwrap(), &inst.element("P-").unwrap()).unwrap();
    assert!(pp_pm.is_zero());
    let x = inst.element("K3*F1 + z*P2*E1").unwrap();
    assert!(e.commutator(&x, &x).unwrap().is_zero());
}

#[test]
fn normal_form_agrees_with_naive_rewriting_on_all_generator_pairs() {
    let inst = quantum(3);
    let oracle = Oracle::from_instance(&inst);
    let n = inst.names().len() as u8;
    for a in 0..n {
        for b in 0..n {
            let ours = inst.engine.mul(&inst.engine.gen(a), &inst.engine.gen(b)).unwrap();
            let theirs = oracle.mul(&gen_poly(a, 3), &gen_poly(b, 3));
            assert_eq!(to_poly(&ours), theirs, "{a} {b}");
        }
    }
}

#[test]
fn jacobi_triples_agree_with_oracle() {
    let inst = quantum(2);
    let oracle = Oracle::from_instance(&inst);
    let id = |n: &str| inst.id(n).unwrap();
    for (x, y, w) in [("E1", "F1", "P1"), ("K3", "F1", "F2"), ("P+", "P1", "P2"), ("K3", "E2", "F1")] {
        let (x, y, w) = (id(x), id(y), id(w));
        let g = |i| gen_poly(i, 2);
        let mut total = Poly::new();
        for (a, b, c) in [(x, y, w), (y, w, x), (w, x, y)] {
            for (word, coeff) in oracle.commutator(&g(a), &oracle.commutator(&g(b), &g(c))) {
                add_into(&mut total, word, &coeff);
            }
        }
        assert!(total.is_empty());
        assert!(jacobi_defect(&inst.engine, x, y, w).unwrap().is_zero());
    }
}

#[test]
fn all_jacobi_triples_vanish_at_default_order() {
    let inst = quantum(6);
    let n = inst.names().len() as u8;
    let mut count = 0;
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                assert!(jacobi_defect(&inst.engine, a, b, c).unwrap().is_zero());
                count += 1;
            }
        }
    }
    assert_eq!(count, 120);
}

#[test]
fn classical_limit_of_quantum_table_is_the_classical_table() {
    let q = quantum(0);
    let c = load_bundled("poincare-classical").unwrap().instantiate(0).unwrap();
    assert_eq!(q.engine.table(), c.engine.table());
    assert_eq!(q.engine.table().nonzero_pairs().len(), 24);
    assert_eq!(quantum(2).engine.table().nonzero_pairs().len(), 25);
}

#[test]
fn coproduct_of_a_product_is_the_product_of_coproducts() {
    let inst = quantum(4);
    let e = &inst.engine;
    let delta = inst.coproduct.as_ref().unwrap();
    let x = inst.element("P+*P1").unwrap();
    let Image::Tensor(lhs) = e.apply_morphism(delta, &x).unwrap() else { panic!() };
    let dp = delta.tensor_image(inst.id("P+").unwrap()).unwrap();
    let d1 = delta.tensor_image(inst.id("P1").unwrap()).unwrap();
    assert_eq!(lhs, e.tensor_mul(dp, d1).unwrap());
    let printed = inst.eval_str("(1 ox P+ + P+ ox 1)*(exp(-z*P+) ox P1 + P1 ox exp(z*P+))").unwrap();
    assert_eq!(nullplane::algdef::Value::Tensor(lhs), printed);
}

#[test]
fn antipode_and_counit_examples() {
    let inst = quantum(6);
    let e = &inst.engine;
    let gamma = inst.antipode.as_ref().unwrap();
    let eps = inst.counit.as_ref().unwrap();
    assert_eq!(e.apply_to_algebra(gamma, &inst.element("P-").unwrap()).unwrap(), inst.element("-P-").unwrap());
    assert_eq!(e.apply_to_algebra(gamma, &inst.element("P+").unwrap()).unwrap(), inst.element("-P+").unwrap());
    for w in ["K3", "F1*P2", "E1*E2*J3", "P+^3"] {
        assert!(e.apply_to_algebra(eps, &inst.element(w).unwrap()).unwrap().is_zero());
    }
    // The printed conjugation agrees with the truncated adjoint series.
    let three = Rational::from_integer(3.into());
    for g in ["K3", "F1", "F2", "E1"] {
        let x = inst.element(g).unwrap();
        let series = conjugate_by_exp(e, &three, inst.id("P+").unwrap(), &x).unwrap();
        assert_eq!(gamma.algebra_image(inst.id(g).unwrap()).unwrap(), &series.neg(), "{g}");
    }
}

#[test]
fn homomorphism_defects_for_listed_pairs() {
    let inst = quantum(6);
    let delta = inst.coproduct.as_ref().unwrap();
    for (a, b) in [("K3", "P+"), ("E1", "P1"), ("J3", "J3"), ("K3", "F1"), ("F1", "P-")] {
        let d = coproduct_homomorphism_defect(&inst.engine, inst.id(a).unwrap(), inst.id(b).unwrap(), delta).unwrap();
        assert!(d.is_zero(), "{a} {b}: {:?}", d);
    }
}

#[test]
fn coassociativity_counit_and_antipode_for_listed_generators() {
    let inst = quantum(6);
    let (delta, eps, gamma) = (
        inst.coproduct.as_ref().unwrap(),
        inst.counit.as_ref().unwrap(),
        inst.antipode.as_ref().unwrap(),
    );
    for g in ["P+", "P-", "F1", "F2", "K3"] {
        assert!(coassociativity_defect(&inst.engine, inst.id(g).unwrap(), delta).unwrap().is_zero(), "{g}");
        assert!(counit_defect(&inst.engine, inst.id(g).unwrap(), delta, eps).unwrap().is_zero(), "{g}");
    }
    for g in ["P+", "P1", "K3", "F1"] {
        assert!(antipode_axiom_defect(&inst.engine, inst.id(g).unwrap(), delta, gamma, eps).unwrap().is_zero(), "{g}");
    }
}

#[test]
fn step_budget_stops_runaway_rewriting() {
    let p = load_bundled("poincare-quantum").unwrap();
    let engine = p.build_engine(6).unwrap().with_step_budget(10);
    let raw = AlgebraElement::term(Word::from_letters(&[9, 8, 7, 4, 3]), ZSeries::one(6));
    assert!(matches!(engine.normal_form(&raw), Err(EngineError::StepBudgetExceeded(_))));
}

fn arb_element(n: u8, k: usize) -> impl Strategy<Value = AlgebraElement> {
    let term = (prop::collection::vec(0..n, 0..4), -3i64..=3, 0..=k);
    prop::collection::vec(term, 1..4).prop_map(move |ts| {
        AlgebraElement::from_terms(
            k,
            ts.into_iter().map(|(w, c, p)| (Word::from_letters(&w), ZSeries::monomial(Rational::from_integer(c.into()), p, k))),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn products_are_associative(a in arb_element(10, 2), b in arb_element(10, 2), c in arb_element(10, 2)) {
        let inst = quantum(2);
        let e = &inst.engine;
        let left = e.mul(&e.mul(&a, &b).unwrap(), &c).unwrap();
        let right = e.mul(&a, &e.mul(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn normal_form_is_idempotent_linear_and_matches_oracle(a in arb_element(10, 2), b in arb_element(10, 2)) {
        let inst = quantum(2);
        let e = &inst.engine;
        let na = e.normal_form(&a).unwrap();
        prop_assert!(na.is_normal());
        prop_assert_eq!(e.normal_form(&na).unwrap(), na.clone());
        let nb = e.normal_form(&b).unwrap();
        prop_assert_eq!(e.normal_form(&a.add(&b)).unwrap(), na.add(&nb));
        let oracle = Oracle::from_instance(&inst);
        prop_assert_eq!(to_poly(&na), oracle.normal(&to_poly(&a)));
    }
}
