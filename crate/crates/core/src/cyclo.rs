//! Exact arithmetic in cyclotomic fields `Q(ζ_N)`.
//!
//! An element is stored in the power basis `1, ζ, …, ζ^{φ(N)-1}` modulo the
//! `N`-th cyclotomic polynomial, so equal values of the same order have equal
//! coefficient vectors. Operands of different orders are embedded into
//! `Q(ζ_lcm)` before combining. Rational results are always stored with
//! order 1.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Shorthand for the rational `num/den`.
pub fn rat(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Debug)]
struct Field {
    degree: usize,
    /// `ζ^e` reduced, for `e` in `0..order`.
    powers: Vec<Vec<Rational>>,
}

fn cyclotomic_poly_cache() -> &'static Mutex<HashMap<u32, Arc<Vec<BigInt>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<BigInt>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Integer coefficients (lowest degree first) of the `n`-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(n: u32) -> Arc<Vec<BigInt>> {
    assert!(n >= 1, "cyclotomic polynomial of order 0");
    if let Some(p) = cyclotomic_poly_cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by every Φ_d with d | n, d < n.
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            let den = cyclotomic_polynomial(d);
            num = exact_monic_div(&num, &den);
        }
    }
    let p = Arc::new(num);
    cyclotomic_poly_cache().lock().unwrap().insert(n, p.clone());
    p
}

fn exact_monic_div(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = num.len() - 1 - dd;
    let mut quot = vec![BigInt::zero(); qd + 1];
    for i in (0..=qd).rev() {
        let c = rem[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[i + j] -= &c * dj;
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

fn field(order: u32) -> Arc<Field> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Field>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(f) = cache.lock().unwrap().get(&order) {
        return f.clone();
    }
    let phi = cyclotomic_polynomial(order);
    let degree = phi.len() - 1;
    let mut powers: Vec<Vec<Rational>> = Vec::with_capacity(order as usize);
    let mut cur = vec![Rational::zero(); degree];
    cur[0] = Rational::one();
    for _ in 0..order {
        powers.push(cur.clone());
        // multiply by x and reduce with the monic Φ
        let top = cur[degree - 1].clone();
        let mut next = vec![Rational::zero(); degree];
        for i in (1..degree).rev() {
            next[i] = cur[i - 1].clone();
        }
        if !top.is_zero() {
            for (i, slot) in next.iter_mut().enumerate() {
                *slot -= &top * Rational::from_integer(phi[i].clone());
            }
        }
        cur = next;
    }
    let f = Arc::new(Field { degree, powers });
    cache.lock().unwrap().insert(order, f.clone());
    f
}

/// An exact element of `Q(ζ_N)`.
#[derive(Clone)]
pub struct Cyclotomic {
    order: u32,
    coeffs: Vec<Rational>,
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(r: Rational) -> Self {
        Cyclotomic { order: 1, coeffs: vec![r] }
    }

    pub fn from_integer(i: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(i)))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Self::from_rational(rat(num, den))
    }

    /// `ζ_N^k`.
    pub fn root_of_unity(n: u32, k: i64) -> Self {
        assert!(n >= 1, "root of unity of order 0");
        let f = field(n);
        let e = k.rem_euclid(n as i64) as usize;
        Self::normalized(n, f.powers[e].clone())
    }

    /// Builds an element of `Q(ζ_N)` from power-basis coefficients of any length;
    /// exponents at or above `φ(N)` are reduced.
    pub fn from_power_coeffs(n: u32, coeffs: &[Rational]) -> Self {
        let f = field(n);
        let mut out = vec![Rational::zero(); f.degree];
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let p = &f.powers[k % n as usize];
            for (slot, pc) in out.iter_mut().zip(p) {
                if !pc.is_zero() {
                    *slot += c * pc;
                }
            }
        }
        Self::normalized(n, out)
    }

    fn normalized(order: u32, coeffs: Vec<Rational>) -> Self {
        if order > 1 && coeffs[1..].iter().all(Zero::is_zero) {
            let c0 = coeffs.into_iter().next().unwrap();
            return Self::from_rational(c0);
        }
        Cyclotomic { order, coeffs }
    }

    /// The cyclotomic order the element is currently stored in.
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.order == 1 && self.coeffs[0].is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.order == 1 && self.coeffs[0].is_one()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        (self.order == 1).then(|| &self.coeffs[0])
    }

    /// Power-basis coefficients after embedding into `Q(ζ_m)`; `m` must be a
    /// multiple of the stored order.
    pub fn embedded_coeffs(&self, m: u32) -> Vec<Rational> {
        assert!(m.is_multiple_of(self.order), "cannot embed order {} into {}", self.order, m);
        let f = field(m);
        if self.order == m {
            return self.coeffs.clone();
        }
        let step = (m / self.order) as usize;
        let mut out = vec![Rational::zero(); f.degree];
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let p = &f.powers[(k * step) % m as usize];
            for (slot, pc) in out.iter_mut().zip(p) {
                if !pc.is_zero() {
                    *slot += c * pc;
                }
            }
        }
        out
    }

    fn aligned(&self, other: &Self) -> (u32, Vec<Rational>, Vec<Rational>) {
        let m = self.order.lcm(&other.order);
        (m, self.embedded_coeffs(m), other.embedded_coeffs(m))
    }

    fn scale_by_rational(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        Cyclotomic { order: self.order, coeffs: self.coeffs.iter().map(|c| c * r).collect() }
    }

    /// Multiplicative inverse.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(Self::from_rational(r.recip()));
        }
        // Solve (multiplication by self) · x = 1 over Q.
        let n = self.order;
        let d = self.coeffs.len();
        let mut cols: Vec<Vec<Rational>> = Vec::with_capacity(d);
        for j in 0..d {
            let zj = Self::root_of_unity(n, j as i64);
            cols.push((self * &zj).embedded_coeffs(n));
        }
        let mut rhs = vec![Rational::zero(); d];
        rhs[0] = Rational::one();
        let x = solve_rational(cols, rhs).ok_or(Error::DivisionByZero)?;
        Ok(Self::normalized(n, x))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inverse()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut out = Self::one();
        for _ in 0..e.unsigned_abs() {
            out = &out * &base;
        }
        Ok(out)
    }

    /// Text form `a0 + a1*z + a2*z^2 + …` in the basis of `ζ_m`.
    pub fn to_text(&self, m: u32) -> String {
        let coeffs = self.embedded_coeffs(m);
        let mut out = String::new();
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let zpart = match k {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{k}"),
            };
            if k == 0 {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&zpart);
            } else {
                out.push_str(&format!("{mag}*{zpart}"));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// Parses the text form with `z` standing for `ζ_n` (exponents may exceed `φ(n)`).
    pub fn parse(text: &str, n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::Parse("cyclotomic order must be positive".into()));
        }
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let s = s.replace('ζ', "z");
        if s.is_empty() {
            return Err(Error::Parse("empty scalar".into()));
        }
        let mut terms: Vec<String> = Vec::new();
        let mut cur = String::new();
        let mut prev: Option<char> = None;
        for ch in s.chars() {
            if (ch == '+' || ch == '-') && !matches!(prev, None | Some('*') | Some('^') | Some('/')) {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
            prev = Some(ch);
        }
        terms.push(cur);
        let mut coeffs: Vec<Rational> = Vec::new();
        for t in terms {
            let (k, c) = parse_term(&t)?;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, Rational::zero());
            }
            coeffs[k] += c;
        }
        Ok(Self::from_power_coeffs(n, &coeffs))
    }
}

fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("bad rational '{s}'"));
    match s.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.parse().map_err(|_| bad())?;
            let b: BigInt = b.parse().map_err(|_| bad())?;
            if b.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(a, b))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

fn parse_term(t: &str) -> Result<(usize, Rational)> {
    let (sign, body) = match t.strip_prefix('-') {
        Some(rest) => (-Rational::one(), rest),
        None => (Rational::one(), t.strip_prefix('+').unwrap_or(t)),
    };
    if body.is_empty() {
        return Err(Error::Parse(format!("dangling sign in '{t}'")));
    }
    let (coef, zpart) = match body.find('z') {
        None => (body, None),
        Some(pos) => {
            let c = body[..pos].trim_end_matches('*');
            (c, Some(&body[pos..]))
        }
    };
    let c = if coef.is_empty() { Rational::one() } else { parse_rational(coef)? };
    let k = match zpart {
        None => 0,
        Some("z") => 1,
        Some(z) => {
            let e = z
                .strip_prefix("z^")
                .ok_or_else(|| Error::Parse(format!("bad power in '{t}'")))?;
            e.parse::<usize>().map_err(|_| Error::Parse(format!("bad exponent in '{t}'")))?
        }
    };
    Ok((k, sign * c))
}

/// Solves a square system given by columns; `None` if singular.
fn solve_rational(cols: Vec<Vec<Rational>>, rhs: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = rhs.len();
    // augmented row-major matrix
    let mut m: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut row: Vec<Rational> = cols.iter().map(|c| c[i].clone()).collect();
            row.push(rhs[i].clone());
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let inv = m[col][col].recip();
        for v in m[col].iter_mut() {
            *v *= &inv;
        }
        let pivot = m[col].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, y) in row[col..].iter_mut().zip(&pivot[col..]) {
                    *x -= &f * y;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}

impl Default for Cyclotomic {
    fn default() -> Self {
        Self::zero()
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let (_, a, b) = self.aligned(other);
        a == b
    }
}

impl Eq for Cyclotomic {}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]_{}", self.to_text(self.order), self.order)
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.order <= 2 {
            write!(f, "{}", self.to_text(self.order))
        } else {
            write!(f, "{} (z=ζ{})", self.to_text(self.order), self.order)
        }
    }
}

impl From<Rational> for Cyclotomic {
    fn from(r: Rational) -> Self {
        Self::from_rational(r)
    }
}

impl From<i64> for Cyclotomic {
    fn from(i: i64) -> Self {
        Self::from_integer(i)
    }
}

impl<'a> Add<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.order == 1 && rhs.order == 1 {
            return Cyclotomic::from_rational(&self.coeffs[0] + &rhs.coeffs[0]);
        }
        let (m, a, b) = self.aligned(rhs);
        Cyclotomic::normalized(m, a.into_iter().zip(b).map(|(x, y)| x + y).collect())
    }
}

impl<'a> Sub<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.order == 1 && rhs.order == 1 {
            return Cyclotomic::from_rational(&self.coeffs[0] - &rhs.coeffs[0]);
        }
        let (m, a, b) = self.aligned(rhs);
        Cyclotomic::normalized(m, a.into_iter().zip(b).map(|(x, y)| x - y).collect())
    }
}

impl<'a> Mul<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        if rhs.order == 1 {
            return self.scale_by_rational(&rhs.coeffs[0]);
        }
        if self.order == 1 {
            return rhs.scale_by_rational(&self.coeffs[0]);
        }
        let (m, a, b) = self.aligned(rhs);
        let mut prod = vec![Rational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        Cyclotomic::from_power_coeffs(m, &prod)
    }
}

impl<'a> Div<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    /// Panics on a zero divisor; use [`Cyclotomic::checked_div`] to recover.
    fn div(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.checked_div(rhs).expect("cyclotomic division by zero")
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic { order: self.order, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: &Cyclotomic) -> Cyclotomic {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&Cyclotomic> for Cyclotomic {
    fn add_assign(&mut self, rhs: &Cyclotomic) {
        if self.order == rhs.order && self.order > 1 {
            for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                *a += b;
            }
            let c = std::mem::take(&mut self.coeffs);
            *self = Cyclotomic::normalized(self.order, c);
        } else {
            *self = &*self + rhs;
        }
    }
}

impl SubAssign<&Cyclotomic> for Cyclotomic {
    fn sub_assign(&mut self, rhs: &Cyclotomic) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Cyclotomic> for Cyclotomic {
    fn mul_assign(&mut self, rhs: &Cyclotomic) {
        *self = &*self * rhs;
    }
}

impl std::iter::Sum for Cyclotomic {
    fn sum<I: Iterator<Item = Cyclotomic>>(iter: I) -> Self {
        iter.fold(Cyclotomic::zero(), |acc, x| acc + x)
    }
}

/// Multiplicative order of `ζ_n^k`.
pub fn root_order(n: u32, k: i64) -> u32 {
    let k = k.rem_euclid(n as i64) as u32;
    n / n.gcd(&k)
}

/// Least common multiple of the orders of a collection of scalars.
pub fn common_order<'a>(xs: impl IntoIterator<Item = &'a Cyclotomic>) -> u32 {
    xs.into_iter().fold(1u32, |acc, x| acc.lcm(&x.order()))
}

/// `n!` as a rational.
pub fn factorial(n: u32) -> Rational {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    Rational::from_integer(acc)
}

/// Euler's totient via the cyclotomic polynomial degree.
pub fn totient(n: u32) -> usize {
    cyclotomic_polynomial(n).len() - 1
}
