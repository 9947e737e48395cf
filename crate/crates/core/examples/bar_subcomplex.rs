// The Koszul complex of `W` sits inside the normalized bar complex.

use sra_core::koszul::bar_subcomplex_check;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for (n, k) in [(1, 1), (1, 2), (2, 2)] {
        let report = bar_subcomplex_check(n, k, 1)?;
        println!("n = {n}, k = {k}: {} chains, {} failures", report.checked, report.failures);
        assert!(report.passed());
    }
    assert!(bar_subcomplex_check(3, 4, 0).is_err());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("bar_subcomplex");
}
