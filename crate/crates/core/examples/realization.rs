//! Differential-operator realization with spin 1/2 in momentum space.

use nullplane::momentum::*;

fn main() {
    let r = Realization::quantum(FVariant::Printed).unwrap();
    for g in ["P-", "K3", "E1", "F1"] {
        println!("{g} = {}", r.generator(g).unwrap());
    }
    let bad = realization_defect_suite(&r).unwrap().into_iter().filter(|d| !d.passed()).count();
    println!("bracket defects: {bad}");
    for c in [nullplane::observables::Casimir::Mq2, nullplane::observables::Casimir::Wq2] {
        println!("{} = {}", c.name(), casimir_eval(&r, c).unwrap());
    }
    let q1 = position_operator(&r, 1, &PositionChoice::TanhOverZ).unwrap();
    println!("[Q1, P1] = {}", q1.commutator(r.generator("P1").unwrap()));
}
