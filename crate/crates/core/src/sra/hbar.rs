//! Polynomials in a formal parameter `ħ` with cyclotomic coefficients.

use std::fmt;

use serde::Serialize;

use crate::cyclo::Cyclotomic;

/// `Σ_i c_i ħ^i`, stored without trailing zeros.
#[derive(Clone, PartialEq, Default)]
pub struct HbarPoly {
    coeffs: Vec<Cyclotomic>,
}

impl HbarPoly {
    pub fn zero() -> Self {
        HbarPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Cyclotomic::one())
    }

    pub fn constant(c: Cyclotomic) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn hbar() -> Self {
        Self::from_coeffs(vec![Cyclotomic::zero(), Cyclotomic::one()])
    }

    /// `c ħ^d`.
    pub fn term(c: Cyclotomic, d: usize) -> Self {
        let mut v = vec![Cyclotomic::zero(); d];
        v.push(c);
        Self::from_coeffs(v)
    }

    pub fn from_coeffs(mut coeffs: Vec<Cyclotomic>) -> Self {
        while coeffs.last().is_some_and(Cyclotomic::is_zero) {
            coeffs.pop();
        }
        HbarPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[Cyclotomic] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in `ħ`; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let zero = Cyclotomic::zero();
        let v = (0..len)
            .map(|i| self.coeffs.get(i).unwrap_or(&zero) + other.coeffs.get(i).unwrap_or(&zero))
            .collect();
        Self::from_coeffs(v)
    }

    pub fn neg(&self) -> Self {
        HbarPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut v = vec![Cyclotomic::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                v[i + j] += &(a * b);
            }
        }
        Self::from_coeffs(v)
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Value at `ħ = c`.
    pub fn eval(&self, c: &Cyclotomic) -> Cyclotomic {
        self.coeffs.iter().rev().fold(Cyclotomic::zero(), |acc, x| &(&acc * c) + x)
    }

    /// Largest cyclotomic order among the coefficients.
    pub fn max_order(&self) -> u32 {
        crate::cyclo::common_order(&self.coeffs)
    }

    /// Text such as `(1) + (-1/2)ħ + (3)ħ^2`, with coefficients written in `Q(ζ_order)`.
    pub fn to_text(&self, order: u32) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let coeff = c.to_text(order);
            parts.push(match i {
                0 => format!("({coeff})"),
                1 => format!("({coeff})ħ"),
                _ => format!("({coeff})ħ^{i}"),
            });
        }
        parts.join(" + ")
    }
}

impl fmt::Debug for HbarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text(self.max_order()))
    }
}

impl Serialize for HbarPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_text(self.max_order()))
    }
}
