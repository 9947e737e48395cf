// Closing a finite subgroup of Sp(2n), its classes and the Poincaré table.

use sra_core::catalog;
use sra_core::certificates::poincare_from_class_count;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for name in ["Z4_sp2", "Q8_sp2", "Z2xZ2_sp4"] {
        let g = catalog::group(name)?;
        println!("{name}: order {}, {} classes", g.order(), g.classes().len());
        for class in g.classes() {
            println!(
                "  c{}: size {}, centralizer {}, k = {}",
                class.index,
                class.members.len(),
                class.centralizer.len(),
                class.k
            );
        }
        let dims = poincare_from_class_count(&g);
        println!("  dim H^k(G∗W), k = 0..{}: {dims:?}", 2 * g.n());
        assert_eq!(dims.iter().skip(1).step_by(2).sum::<usize>(), 0);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("group_analysis");
}
