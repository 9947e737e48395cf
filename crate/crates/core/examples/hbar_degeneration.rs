// At `ħ = 0` the algebra becomes the smash product `G∗W`.

use std::sync::Arc;

use sra_core::catalog;
use sra_core::smash::LambdaWeights;
use sra_core::sra::{hbar_zero_compare, to_smash, RewriteSystem, SRAElement};
use sra_core::Cyclotomic;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let g = Arc::new(catalog::group("Z3_sp2")?);
    let lambda = LambdaWeights::new(&g, g.gamma2().into_iter().map(|c| (c, Cyclotomic::from_integer(2))))?;
    let sys = RewriteSystem::new(&g, &lambda)?;

    let zero = sys.specialized(&Cyclotomic::zero());
    let x = zero.commutator(&SRAElement::basis_vector(&g, 1), &SRAElement::basis_vector(&g, 0));
    println!("[e2, e1] at ħ = 0: {}", to_smash(&x)?.to_text());

    let report = hbar_zero_compare(&sys, 3)?;
    println!("{} pairs, {} sections checked", report.pairs_checked, report.sections_checked);
    assert!(report.passed());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("hbar_degeneration");
}
