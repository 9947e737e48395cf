// Exact arithmetic in cyclotomic fields: roots of unity, inverses, parsing.

use sra_core::Cyclotomic;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let i = Cyclotomic::root_of_unity(4, 1);
    assert_eq!(&i * &i, Cyclotomic::from_integer(-1));

    let z = Cyclotomic::root_of_unity(6, 1);
    let w = &z * &z;
    // 1 + ζ_3 + ζ_3² = 0
    assert!((&(&Cyclotomic::one() + &w) + &(&w * &w)).is_zero());

    let x = Cyclotomic::parse("1/2 + 3z", 12)?;
    let inv = x.inverse()?;
    assert!((&x * &inv).is_one());
    println!("x = {}, 1/x = {}", x.to_text(12), inv.to_text(12));

    let a = Cyclotomic::root_of_unity(3, 1);
    let b = Cyclotomic::root_of_unity(4, 1);
    println!("ζ_3 + i = {} in Q(ζ_12)", (&a + &b).to_text(12));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("cyclotomic_arithmetic");
}
