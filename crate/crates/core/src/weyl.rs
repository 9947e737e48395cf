//! Polynomials in `p_1, q_1, …, p_n, q_n` with the commutative product and the
//! Moyal product.
//!
//! Axis `2i` is `p_{i+1}` and axis `2i + 1` is `q_{i+1}`. The Moyal product is
//! normalized by `[p_i, q_j]_* = δ_ij`, with no deformation parameter.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::cyclo::{factorial, rat, Cyclotomic, Rational};
use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// Exponent vector of length `2n`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; 2 * n])
    }

    pub fn unit(n: usize, axis: usize) -> Self {
        let mut e = vec![0; 2 * n];
        e[axis] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Canonical text `p1^a q1^b …`; the empty monomial prints as `1`.
    pub fn to_text(&self) -> String {
        let mut parts = Vec::new();
        for (axis, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let name = axis_name(axis);
            parts.push(if e == 1 { name } else { format!("{name}^{e}") });
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join(" ")
        }
    }
}

/// `p1`, `q1`, `p2`, … for axes `0, 1, 2, …`.
pub fn axis_name(axis: usize) -> String {
    let pair = axis / 2 + 1;
    if axis.is_multiple_of(2) {
        format!("p{pair}")
    } else {
        format!("q{pair}")
    }
}

/// The canonical symplectic form `ω(p_i, q_j) = δ_ij` on `V = span(p, q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticForm {
    n: usize,
    matrix: Matrix,
}

impl SymplecticForm {
    pub fn canonical(n: usize) -> Self {
        let mut m = Matrix::zeros(2 * n, 2 * n);
        for i in 0..n {
            m.set(2 * i, 2 * i + 1, Cyclotomic::one());
            m.set(2 * i + 1, 2 * i, Cyclotomic::from_integer(-1));
        }
        SymplecticForm { n, matrix: m }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Gram matrix `J` with `J_ij = ω(Z_i, Z_j)`.
    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// `ω(u, v)` for coordinate vectors in the canonical basis.
    pub fn eval(&self, u: &[Cyclotomic], v: &[Cyclotomic]) -> Cyclotomic {
        let mut acc = Cyclotomic::zero();
        for i in 0..self.n {
            let (pi, qi) = (2 * i, 2 * i + 1);
            acc += &(&u[pi] * &v[qi]);
            acc -= &(&u[qi] * &v[pi]);
        }
        acc
    }

    /// `MᵀJM = J`.
    pub fn is_symplectic(&self, m: &Matrix) -> bool {
        m.rows() == 2 * self.n && m.cols() == 2 * self.n && m.transpose().mul(&self.matrix).mul(m) == self.matrix
    }
}

/// An element of `W`, stored as a sparse map from exponent vectors to coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct WeylElement {
    n: usize,
    terms: BTreeMap<Monomial, Cyclotomic>,
}

fn falling(a: u32, r: u32) -> Rational {
    let mut acc = BigInt::one();
    for i in 0..r {
        acc *= BigInt::from(a - i);
    }
    Rational::from_integer(acc)
}

/// Moyal kernel for one symplectic pair: terms `(coefficient, p-exponent, q-exponent)`
/// of `p^a q^b * p^c q^d`.
fn pair_kernel(a: u32, b: u32, c: u32, d: u32) -> Vec<(Rational, u32, u32)> {
    let mut out = Vec::new();
    let half = rat(1, 2);
    for r in 0..=a.min(d) {
        for s in 0..=b.min(c) {
            let mut coeff = falling(a, r) * falling(d, r) * falling(b, s) * falling(c, s);
            coeff /= factorial(r) * factorial(s);
            let mut h = Rational::one();
            for _ in 0..r + s {
                h *= &half;
            }
            coeff *= h;
            if s % 2 == 1 {
                coeff = -coeff;
            }
            out.push((coeff, a + c - r - s, b + d - r - s));
        }
    }
    out
}

/// Rational expansion of the Moyal product of two monomials.
pub fn moyal_monomials(x: &Monomial, y: &Monomial) -> Vec<(Rational, Monomial)> {
    let n = x.0.len() / 2;
    let mut acc: Vec<(Rational, Vec<u32>)> = vec![(Rational::one(), Vec::with_capacity(2 * n))];
    for i in 0..n {
        let k = pair_kernel(x.0[2 * i], x.0[2 * i + 1], y.0[2 * i], y.0[2 * i + 1]);
        let mut next = Vec::with_capacity(acc.len() * k.len());
        for (c, e) in &acc {
            for (kc, pe, qe) in &k {
                let mut e2 = e.clone();
                e2.push(*pe);
                e2.push(*qe);
                next.push((c * kc, e2));
            }
        }
        acc = next;
    }
    acc.into_iter().map(|(c, e)| (c, Monomial(e))).collect()
}

impl WeylElement {
    pub fn zero(n: usize) -> Self {
        WeylElement { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, Cyclotomic::one())
    }

    pub fn constant(n: usize, c: Cyclotomic) -> Self {
        Self::monomial(n, Monomial::one(n), c)
    }

    pub fn monomial(n: usize, m: Monomial, c: Cyclotomic) -> Self {
        assert_eq!(m.0.len(), 2 * n, "monomial length does not match arity");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        WeylElement { n, terms }
    }

    /// The coordinate function `Z_axis`.
    pub fn variable(n: usize, axis: usize) -> Self {
        Self::monomial(n, Monomial::unit(n, axis), Cyclotomic::one())
    }

    /// `p_{i+1}`.
    pub fn p(n: usize, i: usize) -> Self {
        Self::variable(n, 2 * i)
    }

    /// `q_{i+1}`.
    pub fn q(n: usize, i: usize) -> Self {
        Self::variable(n, 2 * i + 1)
    }

    /// The element of `V` with the given canonical coordinates.
    pub fn linear(coords: &[Cyclotomic]) -> Self {
        let n = coords.len() / 2;
        let mut out = Self::zero(n);
        for (axis, c) in coords.iter().enumerate() {
            out.add_term(Monomial::unit(n, axis), c);
        }
        out
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Monomial, Cyclotomic)>) -> Self {
        let mut out = Self::zero(n);
        for (m, c) in terms {
            out.add_term(m, &c);
        }
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Cyclotomic)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Cyclotomic {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> Cyclotomic {
        self.coefficient(&Monomial::one(self.n))
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Component of total degree exactly `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        WeylElement {
            n: self.n,
            terms: self.terms.iter().filter(|(m, _)| m.degree() == d).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Coordinates of the degree-one component.
    pub fn linear_coords(&self) -> Vec<Cyclotomic> {
        (0..2 * self.n).map(|axis| self.coefficient(&Monomial::unit(self.n, axis))).collect()
    }

    pub fn add_term(&mut self, m: Monomial, c: &Cyclotomic) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_arity(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::MismatchedArity { expected: self.n, found: other.n });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "arity mismatch in addition");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "arity mismatch in subtraction");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), &-c);
        }
        out
    }

    pub fn add_assign(&mut self, other: &Self) {
        assert_eq!(self.n, other.n, "arity mismatch in addition");
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c);
        }
    }

    pub fn neg(&self) -> Self {
        WeylElement { n: self.n, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        WeylElement { n: self.n, terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    /// Commutative polynomial product.
    pub fn abelian_mul(&self, other: &Self) -> Result<Self> {
        self.check_arity(other)?;
        let mut out = Self::zero(self.n);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        Ok(out)
    }

    /// Moyal product `m ∘ exp(½Π)`.
    pub fn moyal_mul(&self, other: &Self) -> Result<Self> {
        self.check_arity(other)?;
        let mut out = Self::zero(self.n);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let c = ca * cb;
                for (k, m) in moyal_monomials(ma, mb) {
                    if !k.is_zero() {
                        out.add_term(m, &(&c * &Cyclotomic::from_rational(k)));
                    }
                }
            }
        }
        Ok(out)
    }

    /// `a * b - b * a`.
    pub fn moyal_commutator(&self, other: &Self) -> Result<Self> {
        Ok(self.moyal_mul(other)?.sub(&other.moyal_mul(self)?))
    }

    /// Formal partial derivative along a 0-based axis.
    pub fn partial(&self, axis: usize) -> Result<Self> {
        if axis >= 2 * self.n {
            return Err(Error::AxisOutOfRange { axis, n: self.n });
        }
        let mut out = Self::zero(self.n);
        for (m, c) in &self.terms {
            let e = m.0[axis];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[axis] -= 1;
            out.add_term(m2, &(c * &Cyclotomic::from_integer(e as i64)));
        }
        Ok(out)
    }

    /// Multiplication by the coordinate `Z_axis`.
    pub fn mul_variable(&self, axis: usize) -> Self {
        let mut out = Self::zero(self.n);
        for (m, c) in &self.terms {
            let mut m2 = m.clone();
            m2.0[axis] += 1;
            out.terms.insert(m2, c.clone());
        }
        out
    }

    /// Algebra map of the commutative product sending `Z_j` to `Σ_i M_ij Z_i`.
    pub fn substitute_linear(&self, m: &Matrix) -> Self {
        let n = self.n;
        assert_eq!((m.rows(), m.cols()), (2 * n, 2 * n));
        let images: Vec<WeylElement> = (0..2 * n).map(|j| WeylElement::linear(&m.column(j))).collect();
        let mut powers: Vec<Vec<WeylElement>> = images.iter().map(|img| vec![WeylElement::one(n), img.clone()]).collect();
        let mut out = Self::zero(n);
        for (mono, c) in &self.terms {
            let mut term = WeylElement::constant(n, c.clone());
            for (axis, &e) in mono.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[axis].len() <= e as usize {
                    let next = powers[axis].last().unwrap().abelian_mul(&images[axis]).unwrap();
                    powers[axis].push(next);
                }
                term = term.abelian_mul(&powers[axis][e as usize]).unwrap();
            }
            out.add_assign(&term);
        }
        out
    }

    /// Action of a symplectic matrix on `W`; an automorphism of both products.
    pub fn apply_symplectic(&self, sigma: &Matrix) -> Result<Self> {
        if !SymplecticForm::canonical(self.n).is_symplectic(sigma) {
            return Err(Error::NonSymplecticMatrix);
        }
        Ok(self.substitute_linear(sigma))
    }

    /// Evaluation at the origin of every variable except those listed.
    pub fn max_cyclotomic_order(&self) -> u32 {
        crate::cyclo::common_order(self.terms.values())
    }

    /// Text form `(c) p1^2 q1 + …` with coefficients written in the basis of `ζ_order`.
    pub fn to_text(&self, order: u32) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .map(|(m, c)| {
                if m.is_one() {
                    format!("({})", c.to_text(order))
                } else {
                    format!("({}) {}", c.to_text(order), m.to_text())
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Parses the output of [`WeylElement::to_text`].
    pub fn parse(text: &str, n: usize, order: u32) -> Result<Self> {
        let text = text.trim();
        let mut out = Self::zero(n);
        if text == "0" {
            return Ok(out);
        }
        let mut rest = text;
        loop {
            rest = rest.trim_start();
            let inner_start = rest.strip_prefix('(').ok_or_else(|| Error::Parse(format!("expected '(' in '{rest}'")))?;
            let close = inner_start.find(')').ok_or_else(|| Error::Parse("unbalanced parenthesis".into()))?;
            let coeff = Cyclotomic::parse(&inner_start[..close], order)?;
            let after = &inner_start[close + 1..];
            let (mono_text, next) = match after.find(" + (") {
                Some(pos) => (&after[..pos], Some(&after[pos + 3..])),
                None => (after, None),
            };
            let mono = parse_monomial(mono_text.trim(), n)?;
            out.add_term(mono, &coeff);
            match next {
                Some(nx) => rest = nx,
                None => break,
            }
        }
        Ok(out)
    }
}

fn parse_monomial(text: &str, n: usize) -> Result<Monomial> {
    let mut m = Monomial::one(n);
    if text.is_empty() || text == "1" {
        return Ok(m);
    }
    for factor in text.split_whitespace() {
        let (name, exp) = match factor.split_once('^') {
            Some((a, e)) => (a, e.parse::<u32>().map_err(|_| Error::Parse(format!("bad exponent '{factor}'")))?),
            None => (factor, 1),
        };
        let (kind, idx) = name.split_at(1);
        let pair: usize = idx.parse().map_err(|_| Error::Parse(format!("bad variable '{name}'")))?;
        if pair == 0 || pair > n {
            return Err(Error::Parse(format!("variable '{name}' out of range")));
        }
        let axis = match kind {
            "p" => 2 * (pair - 1),
            "q" => 2 * (pair - 1) + 1,
            _ => return Err(Error::Parse(format!("bad variable '{name}'"))),
        };
        m.0[axis] += exp;
    }
    Ok(m)
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let order = self.max_cyclotomic_order();
        write!(f, "{}", self.to_text(order))?;
        if order > 2 {
            write!(f, " [z=ζ{order}]")?;
        }
        Ok(())
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
