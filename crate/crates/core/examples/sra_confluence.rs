// Normal forms, critical pairs and PBW counts for a symplectic reflection algebra.

use std::sync::Arc;

use sra_core::catalog;
use sra_core::smash::LambdaWeights;
use sra_core::sra::{confluence_check, pbw_filtered_dimension, pbw_monomial_count, Letter, RewriteSystem, SRAElement, TVWord};
use sra_core::Cyclotomic;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let g = Arc::new(catalog::group("Z4_sp2")?);
    let lambda = LambdaWeights::new(&g, g.gamma2().into_iter().map(|c| (c, Cyclotomic::ratio(2, 3))))?;
    let sys = RewriteSystem::new(&g, &lambda)?;

    let nf = sys.normal_form(&TVWord::new(vec![Letter::V(1), Letter::V(0), Letter::G(1)]))?;
    println!("e2 e1 g1 = {}", nf.to_text());

    let report = confluence_check(&sys);
    println!("{} critical pairs, {} unresolved", report.pairs.len(), report.failures());
    assert!(report.all_resolved);
    for d in 0..=3 {
        let count = pbw_filtered_dimension(&sys, d);
        assert_eq!(count.dimension, pbw_monomial_count(g.n(), g.order(), d));
    }

    let broken = sys.corrupt(0, 1, &SRAElement::basis_vector(&g, 0));
    let bad = confluence_check(&broken);
    println!("corrupted table: {} unresolved pairs", bad.failures());
    assert!(!bad.all_resolved);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("sra_confluence");
}
