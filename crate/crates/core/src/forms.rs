//! Alternating multilinear maps on `V` with values in a coefficient module.
//!
//! A form of degree `k` on a space with basis `Z_0, …, Z_{d-1}` is stored by its
//! values on `Z_{i_1} ∧ … ∧ Z_{i_k}` for strictly increasing index tuples. The
//! wedge product uses the determinant convention, so that
//! `(Z*_0 ∧ Z*_1)(Z_0, Z_1) = 1`.

use std::collections::BTreeMap;
use std::fmt;

use crate::cyclo::Cyclotomic;
use crate::linalg::Matrix;
use crate::weyl::WeylElement;

/// Values a form can take: a vector space over the cyclotomic scalars.
pub trait FormValue: Clone + PartialEq + fmt::Debug {
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn scaled(&self, c: &Cyclotomic) -> Self;
}

impl FormValue for Cyclotomic {
    fn is_zero(&self) -> bool {
        Cyclotomic::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn scaled(&self, c: &Cyclotomic) -> Self {
        self * c
    }
}

impl FormValue for WeylElement {
    fn is_zero(&self) -> bool {
        WeylElement::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn scaled(&self, c: &Cyclotomic) -> Self {
        self.scale(c)
    }
}

#[derive(Clone, PartialEq)]
pub struct Form<T> {
    dim: usize,
    degree: usize,
    values: BTreeMap<Vec<usize>, T>,
}

pub type ScalarForm = Form<Cyclotomic>;

/// Sign of the permutation sorting `idx`, or `None` if an index repeats.
pub fn sort_sign(idx: &[usize]) -> Option<(Vec<usize>, i64)> {
    let mut inversions = 0usize;
    for i in 0..idx.len() {
        for j in i + 1..idx.len() {
            if idx[i] == idx[j] {
                return None;
            }
            if idx[i] > idx[j] {
                inversions += 1;
            }
        }
    }
    let mut v = idx.to_vec();
    v.sort_unstable();
    Some((v, if inversions.is_multiple_of(2) { 1 } else { -1 }))
}

/// All permutations of `0..k`.
pub fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out
}

/// All strictly increasing `k`-tuples in `0..d`.
pub fn index_sets(d: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, d: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..d {
            if d - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, d, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, d, k, &mut Vec::new(), &mut out);
    out
}

impl<T: FormValue> Form<T> {
    pub fn zero(dim: usize, degree: usize) -> Self {
        Form { dim, degree, values: BTreeMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    /// Stored values on increasing index tuples.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &T)> {
        self.values.iter()
    }

    /// Adds `value` at an arbitrary index tuple, reordering with sign.
    pub fn add_at(&mut self, idx: &[usize], value: &T) {
        assert_eq!(idx.len(), self.degree, "index tuple length differs from form degree");
        assert!(idx.iter().all(|&i| i < self.dim), "form index out of range");
        let Some((sorted, sign)) = sort_sign(idx) else { return };
        let v = if sign < 0 { value.scaled(&Cyclotomic::from_integer(-1)) } else { value.clone() };
        self.add_sorted(sorted, v);
    }

    pub(crate) fn add_sorted(&mut self, key: Vec<usize>, v: T) {
        if v.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.values.entry(key) {
            Entry::Vacant(e) => {
                e.insert(v);
            }
            Entry::Occupied(mut e) => {
                let s = e.get().plus(&v);
                if s.is_zero() {
                    e.remove();
                } else {
                    e.insert(s);
                }
            }
        }
    }

    /// Value on `Z_{idx[0]} ∧ …`, with sign; `None` when the value is zero.
    pub fn get(&self, idx: &[usize]) -> Option<T> {
        let (sorted, sign) = sort_sign(idx)?;
        let v = self.values.get(&sorted)?;
        Some(if sign < 0 { v.scaled(&Cyclotomic::from_integer(-1)) } else { v.clone() })
    }

    pub fn get_sorted(&self, idx: &[usize]) -> Option<&T> {
        self.values.get(idx)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.dim, self.degree), (other.dim, other.degree), "form shape mismatch");
        let mut out = self.clone();
        for (k, v) in &other.values {
            out.add_sorted(k.clone(), v.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&Cyclotomic::from_integer(-1)))
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        let mut out = Self::zero(self.dim, self.degree);
        for (k, v) in &self.values {
            out.add_sorted(k.clone(), v.scaled(c));
        }
        out
    }

    /// Applies `f` to every value, keeping the index structure.
    pub fn map_values<U: FormValue>(&self, mut f: impl FnMut(&T) -> U) -> Form<U> {
        let mut out = Form::zero(self.dim, self.degree);
        for (k, v) in &self.values {
            out.add_sorted(k.clone(), f(v));
        }
        out
    }

    /// `(M^*φ)(v_1, …) = φ(M v_1, …)`, with `M` acting on coordinate columns.
    pub fn pullback(&self, m: &Matrix) -> Self {
        assert_eq!((m.rows(), m.cols()), (self.dim, self.dim));
        let mut out = Self::zero(self.dim, self.degree);
        for i_set in index_sets(self.dim, self.degree) {
            for (j_set, v) in &self.values {
                let d = m.minor(j_set, &i_set);
                if !d.is_zero() {
                    out.add_sorted(i_set.clone(), v.scaled(&d));
                }
            }
        }
        out
    }

    /// Evaluation on coordinate vectors.
    pub fn eval(&self, vectors: &[Vec<Cyclotomic>]) -> Option<T> {
        assert_eq!(vectors.len(), self.degree);
        let cols = Matrix::from_columns(vectors);
        let all: Vec<usize> = (0..self.degree).collect();
        let mut acc: Option<T> = None;
        for (j_set, v) in &self.values {
            let d = if self.degree == 0 { Cyclotomic::one() } else { cols.minor(j_set, &all) };
            if d.is_zero() {
                continue;
            }
            let term = v.scaled(&d);
            acc = Some(match acc {
                None => term,
                Some(a) => a.plus(&term),
            });
        }
        acc.filter(|a| !a.is_zero())
    }
}

impl Form<Cyclotomic> {
    /// The degree-zero form with value `c`.
    pub fn scalar(dim: usize, c: Cyclotomic) -> Self {
        let mut f = Self::zero(dim, 0);
        f.add_sorted(Vec::new(), c);
        f
    }

    /// The 1-form `v ↦ Σ coeffs[i] v_i`.
    pub fn covector(coeffs: &[Cyclotomic]) -> Self {
        let mut f = Self::zero(coeffs.len(), 1);
        for (i, c) in coeffs.iter().enumerate() {
            f.add_sorted(vec![i], c.clone());
        }
        f
    }

    pub fn coefficient(&self, idx: &[usize]) -> Cyclotomic {
        self.get(idx).unwrap_or_default()
    }

    pub fn wedge(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let mut out = Self::zero(self.dim, self.degree + other.degree);
        for (i, a) in &self.values {
            for (j, b) in &other.values {
                let mut idx = i.clone();
                idx.extend_from_slice(j);
                if let Some((sorted, sign)) = sort_sign(&idx) {
                    let v = a * b;
                    out.add_sorted(sorted, if sign < 0 { -v } else { v });
                }
            }
        }
        out
    }

    /// `φ ∧ φ ∧ … ∧ φ` (`k` factors); the empty product is the scalar 1.
    pub fn wedge_power(&self, k: usize) -> Self {
        let mut out = Self::scalar(self.dim, Cyclotomic::one());
        for _ in 0..k {
            out = out.wedge(self);
        }
        out
    }
}

impl<T: FormValue> fmt::Debug for Form<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Form(deg {}, dim {}) {{", self.degree, self.dim)?;
        for (k, v) in &self.values {
            write!(f, " {k:?}: {v:?};")?;
        }
        write!(f, " }}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(i: i64) -> Cyclotomic {
        Cyclotomic::from_integer(i)
    }

    #[test]
    fn wedge_is_determinant() {
        let a = ScalarForm::covector(&[c(1), c(2), c(0)]);
        let b = ScalarForm::covector(&[c(0), c(1), c(3)]);
        let w = a.wedge(&b);
        let u = vec![c(1), c(0), c(1)];
        let v = vec![c(2), c(1), c(0)];
        // (a∧b)(u,v) = a(u)b(v) - a(v)b(u)
        let expect = c(1) * c(1) - c(4) * c(3);
        assert_eq!(w.eval(&[u, v]).unwrap_or_default(), expect);
        assert!(a.wedge(&a).is_zero());
        assert_eq!(b.wedge(&a), w.scale(&c(-1)));
    }

    #[test]
    fn pullback_matches_evaluation() {
        let a = ScalarForm::covector(&[c(1), c(2), c(0), c(1)]);
        let b = ScalarForm::covector(&[c(0), c(1), c(3), c(-1)]);
        let phi = a.wedge(&b);
        let m = Matrix::from_i64(&[&[1, 2, 0, 0], &[0, 1, 0, 1], &[3, 0, 1, 0], &[0, 0, 2, 1]]);
        let pulled = phi.pullback(&m);
        let u = vec![c(1), c(-1), c(2), c(0)];
        let v = vec![c(0), c(1), c(1), c(3)];
        let lhs = pulled.eval(&[u.clone(), v.clone()]).unwrap_or_default();
        let rhs = phi.eval(&[m.mul_vec(&u), m.mul_vec(&v)]).unwrap_or_default();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn signed_access() {
        let mut f = ScalarForm::zero(3, 2);
        f.add_at(&[2, 0], &c(5));
        assert_eq!(f.coefficient(&[0, 2]), c(-5));
        assert_eq!(f.coefficient(&[2, 0]), c(5));
        f.add_at(&[1, 1], &c(7));
        assert_eq!(f.terms().count(), 1);
        assert_eq!(index_sets(4, 2).len(), 6);
        assert_eq!(index_sets(3, 0), vec![Vec::<usize>::new()]);
    }
}
