// The relative cocycle `C_λ` of the smash product and its nontriviality.

use std::sync::Arc;

use sra_core::catalog;
use sra_core::certificates::c_lambda_witnesses;
use sra_core::smash::{build_c_lambda, check_relative, LambdaExtension, LambdaWeights};
use sra_core::Cyclotomic;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let g = Arc::new(catalog::group("Z6_sp2")?);
    let classes = g.gamma2();
    let lambda = LambdaWeights::new(&g, classes.iter().enumerate().map(|(i, &c)| (c, Cyclotomic::ratio(i as i64 + 1, 7))))?;
    let c = build_c_lambda(&g, &lambda);
    println!("C_λ on Z6: {} nonzero components", c.terms().count());
    check_relative(&LambdaExtension::new(&g, c))?;

    for w in c_lambda_witnesses(&g, &lambda)? {
        println!("class c{}: λ = {}, not a coboundary: {}", w.class, w.lambda, w.witness);
        assert!(w.witness);
    }
    assert!(build_c_lambda(&g, &LambdaWeights::zero(&g)).is_zero());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("smash_cocycle");
}
