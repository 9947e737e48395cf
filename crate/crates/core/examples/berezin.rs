// Expanding `a·⟨a_1, …, a_k⟩` in symmetrized products with Bernoulli numbers.

use std::sync::Arc;

use sra_core::catalog;
use sra_core::smash::LambdaWeights;
use sra_core::sra::{berezin_expand, berezin_sweep, bernoulli, RewriteSystem, SRAElement};
use sra_core::Cyclotomic;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for j in 0..=6 {
        println!("B_{j} = {}", bernoulli(j));
    }
    let g = Arc::new(catalog::group("Z2_sp2")?);
    let lambda = LambdaWeights::new(&g, [(1, Cyclotomic::ratio(1, 3))])?;
    let sys = RewriteSystem::new(&g, &lambda)?;

    let p = SRAElement::basis_vector(&g, 0);
    let q = SRAElement::basis_vector(&g, 1);
    let diff = berezin_expand(&sys, &p, &[q.clone(), q], 6)?;
    assert!(diff.is_zero());

    let report = berezin_sweep(&sys, 2, 3, 1)?;
    println!("{} cases, {} failures", report.cases, report.failures);
    assert!(report.passed());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("berezin");
}
