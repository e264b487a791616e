//! The classical r-matrix, its Schouten bracket and the cocommutator.

use nullplane::algdef::load_bundled;
use nullplane::bialgebra::*;

fn main() {
    let sc = StructureConstants::from_presentation(&load_bundled("poincare-quantum").unwrap()).unwrap();
    let names = sc.names().to_vec();
    let r = null_plane_r_matrix(&sc).unwrap();
    println!("r = {}", r.display(&names));
    println!("[[r, r]] zero: {}", schouten(&r, &r, &sc).is_zero());
    for (name, d) in names.iter().zip(cocommutator_table(&r, &sc)) {
        println!("delta({name}) = {}", d.display(&names));
    }
}
