//! Built-in finite symplectic groups.
//!
//! Names:
//! - `trivial`: `{Id}` in `Sp(2)`;
//! - `Z<l>_sp2` for `1 ≤ l ≤ 12`: rotations of order `l` in `Sp(2)`;
//! - `Z2_sp4`, `Z2_sp6`: `{±Id}` in `Sp(4)`, `Sp(6)`;
//! - `Q8_sp2`: the quaternion group inside `SL(2) = Sp(2)`;
//! - `A*B`: block-diagonal direct product of two catalog groups, e.g. `Z2_sp2*Z3_sp2`;
//! - `Z2xZ2_sp4`: shorthand for `Z2_sp2*Z2_sp2`.

use crate::cyclo::Cyclotomic;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::sympgroup::{close_group_named, FiniteSympGroup, SympMatrix, DEFAULT_CAP};

/// Rotation by `2π/l` in the `(p, q)` plane.
pub fn rotation(l: u32) -> SympMatrix {
    assert!(l >= 1);
    let z = Cyclotomic::root_of_unity(l, 1);
    let zi = Cyclotomic::root_of_unity(l, -1);
    let half = Cyclotomic::ratio(1, 2);
    let cos = &(&z + &zi) * &half;
    let i = Cyclotomic::root_of_unity(4, 1);
    let sin = &(&(&z - &zi) * &half) * &i.inverse().unwrap();
    let m = Matrix::from_rows(vec![vec![cos.clone(), -&sin], vec![sin, cos]]);
    SympMatrix::new(m).expect("rotations are symplectic")
}

pub fn minus_identity(n: usize) -> SympMatrix {
    SympMatrix::new(Matrix::identity(2 * n).scale(&Cyclotomic::from_integer(-1))).unwrap()
}

/// `diag(a, b)` acting on the first and last symplectic pairs.
pub fn block_diagonal(a: &SympMatrix, b: &SympMatrix) -> SympMatrix {
    let (da, db) = (2 * a.n(), 2 * b.n());
    let mut m = Matrix::zeros(da + db, da + db);
    for i in 0..da {
        for j in 0..da {
            m.set(i, j, a.matrix().get(i, j).clone());
        }
    }
    for i in 0..db {
        for j in 0..db {
            m.set(da + i, da + j, b.matrix().get(i, j).clone());
        }
    }
    SympMatrix::new(m).expect("block sums of symplectic matrices are symplectic")
}

/// `G × H` acting block-diagonally on `V_G ⊕ V_H`.
pub fn direct_product(g: &FiniteSympGroup, h: &FiniteSympGroup) -> Result<FiniteSympGroup> {
    let ig = SympMatrix::identity(g.n());
    let ih = SympMatrix::identity(h.n());
    let mut gens: Vec<SympMatrix> = g.generators().iter().map(|x| block_diagonal(x, &ih)).collect();
    gens.extend(h.generators().iter().map(|y| block_diagonal(&ig, y)));
    let name = format!("{}*{}", g.name(), h.name());
    close_group_named(&name, g.n() + h.n(), &gens, DEFAULT_CAP)
}

/// Names of the predefined groups exercised by the test-suite.
pub fn names() -> Vec<String> {
    let mut v = vec!["trivial".to_string()];
    v.extend((1..=12).map(|l| format!("Z{l}_sp2")));
    v.extend(["Z2_sp4", "Z2_sp6", "Q8_sp2", "Z2xZ2_sp4", "Z2_sp2*Z3_sp2"].map(String::from));
    v
}

/// Looks up a catalog group by name.
pub fn group(name: &str) -> Result<FiniteSympGroup> {
    if let Some((a, b)) = name.split_once('*') {
        return direct_product(&group(a)?, &group(b)?);
    }
    let unknown = || Error::Parse(format!("unknown catalog group '{name}'"));
    let g = match name {
        "trivial" => close_group_named(name, 1, &[SympMatrix::identity(1)], DEFAULT_CAP)?,
        "Z2_sp4" => close_group_named(name, 2, &[minus_identity(2)], DEFAULT_CAP)?,
        "Z2_sp6" => close_group_named(name, 3, &[minus_identity(3)], DEFAULT_CAP)?,
        "Z2xZ2_sp4" => direct_product(&group("Z2_sp2")?, &group("Z2_sp2")?)?.with_name(name),
        "Q8_sp2" => {
            let s = SympMatrix::from_i64(&[&[0, -1], &[1, 0]])?;
            let i = Cyclotomic::root_of_unity(4, 1);
            let d = SympMatrix::new(Matrix::from_rows(vec![
                vec![i.clone(), Cyclotomic::zero()],
                vec![Cyclotomic::zero(), i.inverse()?],
            ]))?;
            close_group_named(name, 1, &[s, d], DEFAULT_CAP)?
        }
        _ => {
            let l: u32 = name
                .strip_prefix('Z')
                .and_then(|r| r.strip_suffix("_sp2"))
                .and_then(|r| r.parse().ok())
                .filter(|l| (1..=12).contains(l))
                .ok_or_else(unknown)?;
            close_group_named(name, 1, &[rotation(l)], DEFAULT_CAP)?
        }
    };
    Ok(g)
}
