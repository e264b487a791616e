//! Normal ordering in the quantum enveloping algebra, truncated at z^6.

use nullplane::algdef::load_bundled;
use nullplane::kernel::{Rational, SeriesFunction, ZSeries};

fn main() {
    let inst = load_bundled("poincare-quantum").unwrap().instantiate(6).unwrap();
    let e = &inst.engine;
    let names = inst.names();
    let g = |n: &str| e.gen(inst.id(n).unwrap());

    let f1f2 = e.commutator(&g("F1"), &g("F2")).unwrap();
    println!("[F1, F2] = {}", f1f2.display(names));

    let word = e.product(&[&g("F2"), &g("P1"), &g("K3")]).unwrap();
    println!("F2*P1*K3 = {}", word.display(names));

    let sinhz = ZSeries::expand(SeriesFunction::from_name("sinhz").unwrap(), &Rational::from_integer(1.into()), 6);
    println!("sinh(z)/z to z^6: {:?}", sinhz.coeffs().iter().map(ToString::to_string).collect::<Vec<_>>());
}
