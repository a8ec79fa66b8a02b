//! Laurent polynomials in a single formal symbol, generic over the scalar.
//!
//! The intended reading is `q^s`: a value `Laurent { m -> c_m }` stands for
//! `sum_m c_m * (q^s)^m` with integer exponents `m`. The normalized r-th
//! derivative at `s = 0`, `(log q)^{-r} d^r/ds^r`, then becomes the purely
//! formal functional `sum_m m^r c_m`; no numeric value of `q` is ever needed.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul};

use crate::scalar::{from_i64, scalar_pow, Scalar};

/// Exact Laurent polynomial with no stored zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Laurent<T> {
    coeffs: BTreeMap<i64, T>,
}

impl<T: Scalar> Laurent<T> {
    pub fn zero() -> Self {
        Laurent {
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(0, T::one())
    }

    /// The single term `c * (q^s)^m`.
    pub fn monomial(m: i64, c: T) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(m, c);
        }
        Laurent { coeffs }
    }

    pub fn from_pairs<I: IntoIterator<Item = (i64, T)>>(pairs: I) -> Self {
        let mut out = Self::zero();
        for (m, c) in pairs {
            out.add_term(m, c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, m: i64) -> T {
        self.coeffs.get(&m).cloned().unwrap_or_else(T::zero)
    }

    /// Exponents with nonzero coefficient, in increasing order.
    pub fn exponents(&self) -> impl Iterator<Item = i64> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &T)> {
        self.coeffs.iter().map(|(m, c)| (*m, c))
    }

    fn add_term(&mut self, m: i64, c: T) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(m).or_insert_with(T::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&m);
        }
    }

    /// `sum_m m^r c_m`, with the convention `0^0 = 1` so that `r = 0`
    /// evaluates the polynomial at `s = 0`.
    pub fn normalized_derivative(&self, r: usize) -> T {
        let mut acc = T::zero();
        for (m, c) in &self.coeffs {
            acc += scalar_pow(from_i64::<T>(*m), r) * c.clone();
        }
        acc
    }

    /// The image under `q^s -> q^{-s}` (exponent negation).
    pub fn mirrored(&self) -> Self {
        Laurent {
            coeffs: self.coeffs.iter().map(|(m, c)| (-m, c.clone())).collect(),
        }
    }

    /// True when the coefficient map is symmetric under `m -> -m`.
    pub fn is_palindromic(&self) -> bool {
        self.coeffs
            .iter()
            .all(|(m, c)| self.coeffs.get(&-m) == Some(c))
    }
}

impl<T: Scalar> Add for &Laurent<T> {
    type Output = Laurent<T>;

    fn add(self, rhs: &Laurent<T>) -> Laurent<T> {
        let mut out = self.clone();
        for (m, c) in &rhs.coeffs {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl<T: Scalar> Add for Laurent<T> {
    type Output = Laurent<T>;

    fn add(self, rhs: Laurent<T>) -> Laurent<T> {
        &self + &rhs
    }
}

impl<T: Scalar> Mul for &Laurent<T> {
    type Output = Laurent<T>;

    fn mul(self, rhs: &Laurent<T>) -> Laurent<T> {
        let mut out = Laurent::zero();
        for (m, c) in &self.coeffs {
            for (m2, c2) in &rhs.coeffs {
                out.add_term(m + m2, c.clone() * c2.clone());
            }
        }
        out
    }
}

impl<T: Scalar> Mul for Laurent<T> {
    type Output = Laurent<T>;

    fn mul(self, rhs: Laurent<T>) -> Laurent<T> {
        &self * &rhs
    }
}

/// Serialization: sorted `m:c` pairs joined by `+`, e.g.
/// `-4:1+-2:4+0:6+2:4+4:1`. The zero polynomial prints as `0`.
impl<T: Scalar> fmt::Display for Laurent<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.coeffs {
            if !first {
                write!(f, "+")?;
            }
            write!(f, "{}:{}", m, c)?;
            first = false;
        }
        Ok(())
    }
}
