// Contracting Koszul cocycles of `W_σ` to `s·ω_σ + Δ′(b)`.

use sra_core::catalog;
use sra_core::koszul::{truncated_cohomology_dims, KoszulCochain, KoszulContext};
use sra_core::sympgroup::sigma_invariants;
use sra_core::WeylElement;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let g = catalog::group("Z4_sp2")?;
    let inv = sigma_invariants(g.element(1))?;
    let ctx = KoszulContext::from_invariants(&inv);
    let n = ctx.n();

    // a 2-cocycle: ω_σ plus the coboundary of a 1-cochain
    let mut b = KoszulCochain::zero(2 * n, 1);
    b.add_at(&[0], &WeylElement::parse("(1) p1^2 q1 + (3)", n, 1)?);
    let cocycle = ctx.omega_sigma().scale(&sra_core::Cyclotomic::from_integer(5)).add(&ctx.delta_prime(&b)?);
    let cert = ctx.contract(&cocycle)?;
    assert!(cert.verified && ctx.verify_certificate(&cocycle, &cert)?);
    println!("s = {:?}", cert.s.map(|s| s.to_text(4)));

    assert!(ctx.noncoboundary_witness(&ctx.omega_sigma())?);
    let table = truncated_cohomology_dims(&ctx, 0..=2, 4)?;
    for row in &table.rows {
        println!("H^{} (window ≤ {}): {}", row.degree, table.d_max, row.cohomology);
    }
    assert_eq!(table.dim(2), Some(1));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("koszul_contraction");
}
