//! Loading `.algdef` presentations and expanding structure maps.

use nullplane::algdef::{bundled_names, load_bundled};
use nullplane::report::expand;

fn main() {
    for name in bundled_names() {
        let p = load_bundled(name).unwrap();
        let inst = p.instantiate(2).unwrap();
        println!("{name}: {}", inst.names().join(" "));
    }
    let q = load_bundled("poincare-quantum").unwrap().instantiate(3).unwrap();
    for text in ["Delta(P1)", "antipode(E1)", "epsilon(F1)", "Mq2"] {
        println!("{text} = {}", expand(&q, text).unwrap());
    }
    println!("{}", load_bundled("pi13").unwrap().serialize());
}
