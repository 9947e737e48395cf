// Eigenvalues, Darboux basis and the canonical form `ω_σ` of a group element.

use sra_core::catalog;
use sra_core::sympgroup::sigma_invariants;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let g = catalog::group("Z2xZ2_sp4")?;
    for (i, sigma) in g.elements().iter().enumerate() {
        let inv = sigma_invariants(sigma)?;
        let alphas: Vec<String> = inv.alphas().iter().map(|a| a.to_text(1)).collect();
        println!("g{i}: k = {}, alphas = {alphas:?}, ω_σ has {} terms", inv.k(), inv.omega().terms().count());
        assert_eq!(inv.omega(), &inv.omega_via_projection());
        assert_eq!(2 * inv.k(), inv.moving_dimension());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("sigma_invariants");
}
