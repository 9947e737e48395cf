//! The Koszul complex as a subcomplex of the normalized bar complex of `W`.
//!
//! A bar chain `a ⊗ a_1 ⊗ … ⊗ a_k ⊗ b` is stored by its monomial factors; chains
//! with a constant middle factor are dropped (normalization).

use std::collections::BTreeMap;

use crate::cyclo::Cyclotomic;
use crate::error::{Error, Result};
use crate::forms::{index_sets, permutations, sort_sign};
use crate::weyl::{moyal_monomials, Monomial, WeylElement};

/// Default maximal chain degree accepted by [`bar_subcomplex_check`].
pub const DEFAULT_BAR_CAP: usize = 3;
const HARD_BAR_CAP: usize = 4;

#[derive(Clone, Debug, PartialEq)]
pub struct BarChain {
    n: usize,
    degree: usize,
    terms: BTreeMap<Vec<Monomial>, Cyclotomic>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BarReport {
    pub n: usize,
    pub degree: usize,
    pub checked: usize,
    pub failures: usize,
}

impl BarReport {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.checked > 0
    }
}

impl BarChain {
    pub fn zero(n: usize, degree: usize) -> Self {
        BarChain { n, degree, terms: BTreeMap::new() }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, factors: Vec<Monomial>, c: Cyclotomic) {
        debug_assert_eq!(factors.len(), self.degree + 2);
        if c.is_zero() || factors[1..factors.len() - 1].iter().any(Monomial::is_one) {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(factors) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    e.insert(s);
                }
            }
        }
    }

    /// Multilinear expansion of `f_0 ⊗ … ⊗ f_{k+1}`.
    pub fn from_tensor(factors: &[WeylElement]) -> Self {
        assert!(factors.len() >= 2);
        let n = factors[0].n();
        let mut acc: Vec<(Vec<Monomial>, Cyclotomic)> = vec![(Vec::new(), Cyclotomic::one())];
        for f in factors {
            let mut next = Vec::new();
            for (ms, c) in &acc {
                for (m, d) in f.terms() {
                    let mut v = ms.clone();
                    v.push(m.clone());
                    next.push((v, c * d));
                }
            }
            acc = next;
        }
        let mut out = BarChain::zero(n, factors.len() - 2);
        for (ms, c) in acc {
            out.add_term(ms, c);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree);
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.clone(), v.clone());
        }
        out
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        let mut out = BarChain::zero(self.n, self.degree);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v * c);
        }
        out
    }

    /// `Σ_j (-1)^j f_0 ⊗ … ⊗ f_j ∗ f_{j+1} ⊗ …` with the Moyal product.
    pub fn differential(&self) -> Self {
        assert!(self.degree >= 1, "bar differential needs degree at least 1");
        let mut out = BarChain::zero(self.n, self.degree - 1);
        for (fs, c) in &self.terms {
            for j in 0..=self.degree {
                let sign = if j % 2 == 0 { c.clone() } else { -c };
                for (r, m) in moyal_monomials(&fs[j], &fs[j + 1]) {
                    let mut v = Vec::with_capacity(fs.len() - 1);
                    v.extend_from_slice(&fs[..j]);
                    v.push(m);
                    v.extend_from_slice(&fs[j + 2..]);
                    out.add_term(v, &sign * &Cyclotomic::from_rational(r));
                }
            }
        }
        out
    }
}

/// `ι(a ⊗ Z_I ⊗ b) = Σ_π sgn(π) a ⊗ Z_{i_π(1)} ⊗ … ⊗ b`.
pub fn embed(a: &WeylElement, idx: &[usize], b: &WeylElement) -> BarChain {
    let n = a.n();
    let mut out = BarChain::zero(n, idx.len());
    for p in permutations(idx.len()) {
        let (_, sign) = sort_sign(&p).unwrap();
        let mut fs = vec![a.clone()];
        fs.extend(p.iter().map(|&i| WeylElement::variable(n, idx[i])));
        fs.push(b.clone());
        out = out.add(&BarChain::from_tensor(&fs).scale(&Cyclotomic::from_integer(sign)));
    }
    out
}

/// `d^K(a ⊗ Z_I ⊗ b)` pushed through `ι`.
pub fn koszul_differential_embedded(a: &WeylElement, idx: &[usize], b: &WeylElement) -> Result<BarChain> {
    let n = a.n();
    let mut out = BarChain::zero(n, idx.len() - 1);
    for (pos, &t) in idx.iter().enumerate() {
        let z = WeylElement::variable(n, t);
        let mut rest = idx.to_vec();
        rest.remove(pos);
        let left = embed(&a.moyal_mul(&z)?, &rest, b);
        let right = embed(a, &rest, &z.moyal_mul(b)?);
        let term = left.add(&right.scale(&Cyclotomic::from_integer(-1)));
        let sign = if pos % 2 == 0 { 1 } else { -1 };
        out = out.add(&term.scale(&Cyclotomic::from_integer(sign)));
    }
    Ok(out)
}

/// All monomials in `2n` variables of degree at most `max_deg`.
pub fn monomials_up_to(n: usize, max_deg: u32) -> Vec<Monomial> {
    fn rec(axis: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if axis == cur.len() {
            out.push(Monomial(cur.clone()));
            return;
        }
        for e in 0..=left {
            cur[axis] = e;
            rec(axis + 1, left - e, cur, out);
        }
        cur[axis] = 0;
    }
    let mut out = Vec::new();
    rec(0, max_deg, &mut vec![0; 2 * n], &mut out);
    out
}

/// Checks `d^B ι = ι d^K` on every `a ⊗ Z_I ⊗ b` with `|I| = degree` and
/// `a, b` monomials of degree at most `max_deg`.
pub fn bar_subcomplex_check(n: usize, degree: usize, max_deg: u32) -> Result<BarReport> {
    bar_subcomplex_check_capped(n, degree, max_deg, DEFAULT_BAR_CAP)
}

/// As [`bar_subcomplex_check`] with an explicit degree cap (at most 4).
pub fn bar_subcomplex_check_capped(n: usize, degree: usize, max_deg: u32, cap: usize) -> Result<BarReport> {
    let cap = cap.min(HARD_BAR_CAP);
    if degree > cap {
        return Err(Error::DegreeCapExceeded { degree, cap });
    }
    if degree == 0 || degree > 2 * n {
        return Err(Error::BasisMismatch(format!("chain degree must lie in 1..={}", 2 * n)));
    }
    let mons = monomials_up_to(n, max_deg);
    let mut report = BarReport { n, degree, checked: 0, failures: 0 };
    for idx in index_sets(2 * n, degree) {
        for ma in &mons {
            let a = WeylElement::monomial(n, ma.clone(), Cyclotomic::one());
            for mb in &mons {
                let b = WeylElement::monomial(n, mb.clone(), Cyclotomic::one());
                let lhs = embed(&a, &idx, &b).differential();
                let rhs = koszul_differential_embedded(&a, &idx, &b)?;
                report.checked += 1;
                if lhs != rhs {
                    report.failures += 1;
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_one_and_two() {
        for k in 1..=2 {
            let r = bar_subcomplex_check(1, k, 2).unwrap();
            assert!(r.passed(), "{r:?}");
        }
        let r = bar_subcomplex_check(2, 2, 1).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn degree_three() {
        let r = bar_subcomplex_check(2, 3, 1).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn caps_and_shapes() {
        assert_eq!(bar_subcomplex_check(3, 4, 1), Err(Error::DegreeCapExceeded { degree: 4, cap: 3 }));
        assert!(bar_subcomplex_check_capped(2, 5, 0, 9).is_err());
        assert!(bar_subcomplex_check(1, 3, 1).is_err());
        assert_eq!(monomials_up_to(1, 2).len(), 6);
    }

    #[test]
    fn bar_differential_squares_to_zero() {
        let n = 1;
        let fs: Vec<WeylElement> = [[1, 0], [0, 1], [1, 1], [2, 0]]
            .iter()
            .map(|e| WeylElement::monomial(n, Monomial(e.to_vec()), Cyclotomic::one()))
            .collect();
        let c = BarChain::from_tensor(&fs);
        assert!(c.differential().differential().is_zero());
        // a constant middle factor is normalized away
        let one = WeylElement::one(n);
        assert!(BarChain::from_tensor(&[fs[0].clone(), one, fs[1].clone()]).is_zero());
    }
}
