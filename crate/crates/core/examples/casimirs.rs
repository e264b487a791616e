use nullplane::algdef::load_bundled;
use nullplane::observables::{build_casimir, centrality_defect, pauli_lubanski_readings, Casimir};

fn main() {
    let inst = load_bundled("poincare-quantum").unwrap().instantiate(6).unwrap();
    for c in [Casimir::Mq2, Casimir::Wq2] {
        let body = build_casimir(c, &inst).unwrap().body;
        let open: Vec<_> = centrality_defect(&body, &inst).unwrap().into_iter().filter(|(_, d)| !d.is_zero()).collect();
        println!("{}: {} terms, central: {}", c.name(), body.len(), open.is_empty());
    }
    for r in pauli_lubanski_readings(&inst).unwrap() {
        println!("{:<34} central {:<5} {:?}", r.label, r.central, r.fails_with);
    }
}
