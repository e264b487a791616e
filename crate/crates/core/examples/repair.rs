//! Locating a sign defect in a printed coproduct with the repair search.

use nullplane::algdef::load_bundled;
use nullplane::verify::{check_all, hopf_identities, repair_search, RepairConfig};

fn main() {
    let p = load_bundled("poincare-quantum").unwrap();
    let inst = p.instantiate(4).unwrap();
    let ids = hopf_identities(inst.names());
    let failing: Vec<_> = check_all(&inst, &ids).unwrap().into_iter().filter(|c| !c.passed()).collect();
    println!("{} of {} Hopf identities fail as printed", failing.len(), ids.len());

    let report = repair_search(&p, &ids, 4, &RepairConfig::default()).unwrap();
    println!("{} variants evaluated, unique minimal: {}", report.evaluated, report.unique_minimal());
    for v in &report.variants {
        for line in &v.diff {
            println!("  {line}");
        }
    }
}
