//! Exact integer polynomials in one variable (`λ`, or `q` after substitution)
//! and in two variables `(t, q)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::ser::{Serialize, SerializeSeq, Serializer};

/// Dense polynomial with arbitrary-precision coefficients; index = power.
///
/// The coefficient vector never ends in a zero, so the zero polynomial is the
/// empty vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::from_coeffs(vec![c.into()])
    }

    /// The variable itself.
    pub fn x() -> Self {
        Self::from_coeffs(vec![BigInt::zero(), BigInt::one()])
    }

    /// `x + c`.
    pub fn linear(c: impl Into<BigInt>) -> Self {
        Self::from_coeffs(vec![c.into(), BigInt::one()])
    }

    pub fn monomial(c: impl Into<BigInt>, power: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); power + 1];
        coeffs[power] = c.into();
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `x^k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Substitutes `x -> x + shift`.
    pub fn shift(&self, shift: i64) -> Self {
        let s = Self::linear(shift);
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| &(&acc * &s) + &Self::constant(c.clone()))
    }

    /// Exact division by `x`; `None` if the constant term is nonzero.
    pub fn div_x(&self) -> Option<Self> {
        match self.coeffs.first() {
            None => Some(Self::zero()),
            Some(c) if c.is_zero() => Some(Self::from_coeffs(self.coeffs[1..].to_vec())),
            Some(_) => None,
        }
    }

    /// Exact division by the monic `x - root`; `None` if it leaves a remainder.
    pub fn div_linear(&self, root: i64) -> Option<Self> {
        let root = BigInt::from(root);
        let mut quotient = vec![BigInt::zero(); self.coeffs.len().saturating_sub(1)];
        let mut carry = BigInt::zero();
        for k in (0..self.coeffs.len()).rev() {
            let v = &self.coeffs[k] + &carry;
            if k == 0 {
                return v.is_zero().then(|| Self::from_coeffs(quotient));
            }
            carry = &v * &root;
            quotient[k - 1] = v;
        }
        Some(Self::zero())
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::from_coeffs((0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::from_coeffs((0..len).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::from_coeffs(out)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(
            f,
            self.coeffs
                .iter()
                .enumerate()
                .rev()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (c, monomial_name("x", k))),
        )
    }
}

/// JSON number for an arbitrary-precision integer.
pub(crate) fn json_int(c: &BigInt) -> serde_json::Number {
    c.to_string().parse().expect("decimal integer is a JSON number")
}

impl Serialize for IntPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            seq.serialize_element(&json_int(c))?;
        }
        seq.end()
    }
}

/// Sparse polynomial in `t` and `q`, keyed by `(power of t, power of q)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct TwoVarPolynomial {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl TwoVarPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0, 0)
    }

    pub fn monomial(c: impl Into<BigInt>, t: u32, q: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(t, q, c.into());
        p
    }

    pub fn t() -> Self {
        Self::monomial(1, 1, 0)
    }

    pub fn q() -> Self {
        Self::monomial(1, 0, 1)
    }

    pub fn add_term(&mut self, t: u32, q: u32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((t, q)).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(t, q));
        }
    }

    pub fn coeff(&self, t: u32, q: u32) -> BigInt {
        self.terms.get(&(t, q)).cloned().unwrap_or_default()
    }

    /// Nonzero terms in increasing `(t, q)` order.
    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &BigInt)> {
        self.terms.iter().map(|(&k, v)| (k, v))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Terms with total degree exactly `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        TwoVarPolynomial {
            terms: self
                .terms
                .iter()
                .filter(|(&(t, q), _)| t + q == d)
                .map(|(&k, v)| (k, v.clone()))
                .collect(),
        }
    }

    /// Substitutes `t = value`, leaving a polynomial in `q`.
    pub fn eval_t(&self, value: i64) -> IntPolynomial {
        let value = BigInt::from(value);
        let mut out = IntPolynomial::zero();
        for (&(t, q), c) in &self.terms {
            let term = IntPolynomial::monomial(c * num_traits::pow(value.clone(), t as usize), q as usize);
            out = &out + &term;
        }
        out
    }

    /// Divides every coefficient by `g`; `None` unless all are multiples.
    pub fn div_exact(&self, g: &BigInt) -> Option<Self> {
        let mut out = Self::zero();
        for (&(t, q), c) in &self.terms {
            let (quot, rem) = c.div_rem(g);
            if !rem.is_zero() {
                return None;
            }
            out.add_term(t, q, quot);
        }
        Some(out)
    }

    /// Divides by `q^k`; `None` if some term has a smaller power of `q`.
    pub fn div_q_power(&self, k: u32) -> Option<Self> {
        let mut out = Self::zero();
        for (&(t, q), c) in &self.terms {
            out.add_term(t, q.checked_sub(k)?, c.clone());
        }
        Some(out)
    }

    /// Every coefficient is nonnegative.
    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }
}

/// Serializes as `[[i, j, c], ...]` for the terms `c t^i q^j`, sorted.
impl Serialize for TwoVarPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (&(i, j), c) in &self.terms {
            seq.serialize_element(&(i, j, json_int(c)))?;
        }
        seq.end()
    }
}

impl Add for &TwoVarPolynomial {
    type Output = TwoVarPolynomial;
    fn add(self, rhs: &TwoVarPolynomial) -> TwoVarPolynomial {
        let mut out = self.clone();
        for (&(t, q), c) in &rhs.terms {
            out.add_term(t, q, c.clone());
        }
        out
    }
}

impl Sub for &TwoVarPolynomial {
    type Output = TwoVarPolynomial;
    fn sub(self, rhs: &TwoVarPolynomial) -> TwoVarPolynomial {
        let mut out = self.clone();
        for (&(t, q), c) in &rhs.terms {
            out.add_term(t, q, -c);
        }
        out
    }
}

impl Mul for &TwoVarPolynomial {
    type Output = TwoVarPolynomial;
    fn mul(self, rhs: &TwoVarPolynomial) -> TwoVarPolynomial {
        let mut out = TwoVarPolynomial::zero();
        for (&(t1, q1), a) in &self.terms {
            for (&(t2, q2), b) in &rhs.terms {
                out.add_term(t1 + t2, q1 + q2, a * b);
            }
        }
        out
    }
}

impl fmt::Display for TwoVarPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(
            f,
            self.terms.iter().rev().map(|(&(t, q), c)| {
                let name = match (monomial_name("t", t as usize), monomial_name("q", q as usize)) {
                    (a, b) if a.is_empty() => b,
                    (a, b) if b.is_empty() => a,
                    (a, b) => format!("{a}*{b}"),
                };
                (c, name)
            }),
        )
    }
}

fn monomial_name(var: &str, k: usize) -> String {
    match k {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{k}"),
    }
}

fn write_terms<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (&'a BigInt, String)>,
) -> fmt::Result {
    let mut first = true;
    for (c, name) in terms {
        let sign = if c.is_negative() { "-" } else { "+" };
        let mag = c.abs();
        if first {
            if c.is_negative() {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {sign} ")?;
        }
        first = false;
        match (mag.is_one(), name.is_empty()) {
            (_, true) => write!(f, "{mag}")?,
            (true, false) => write!(f, "{name}")?,
            (false, false) => write!(f, "{mag}*{name}")?,
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}
