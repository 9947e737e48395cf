// The Moyal product on polynomials in `p_i, q_i`.

use sra_core::{Cyclotomic, WeylElement};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let n = 1;
    let p = WeylElement::p(n, 0);
    let q = WeylElement::q(n, 0);

    let comm = p.moyal_commutator(&q)?;
    assert_eq!(comm, WeylElement::one(n));
    println!("[p, q]* = {}", comm.to_text(1));

    let p2 = p.moyal_mul(&p)?;
    let q2 = q.moyal_mul(&q)?;
    let prod = p2.moyal_mul(&q2)?;
    println!("p² * q² = {}", prod.to_text(1));

    // associativity on a sample
    let a = WeylElement::parse("(1) p1 + (2) q1^2", n, 1)?;
    let b = WeylElement::parse("(1) p1 q1", n, 1)?;
    let c = WeylElement::parse("(1) q1^3 + (-1)", n, 1)?;
    assert_eq!(a.moyal_mul(&b)?.moyal_mul(&c)?, a.moyal_mul(&b.moyal_mul(&c)?)?);

    // the product is symmetric up to odd Poisson terms
    let sym = a.moyal_mul(&b)?.add(&b.moyal_mul(&a)?).scale(&Cyclotomic::ratio(1, 2));
    println!("½(ab + ba) = {}", sym.to_text(1));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("moyal_product");
}
