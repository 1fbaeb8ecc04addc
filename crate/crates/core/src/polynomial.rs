//! Integer polynomials in `x, y` and in `t`.
//!
//! Display order for bivariate polynomials is by `x`-degree descending, then
//! `y`-degree ascending, e.g. `x^2 + 4*x + 3 + 4*y + 2*y^2`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BivariatePolynomial {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl BivariatePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn x() -> Self {
        Self::monomial(1, 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(1, 0, 1)
    }

    pub fn monomial(c: impl Into<BigInt>, i: u32, j: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(i, j, c.into());
        p
    }

    /// Builds from `(i, j, coefficient)` triples; repeated exponents add up.
    pub fn from_terms<C: Into<BigInt>>(terms: impl IntoIterator<Item = (u32, u32, C)>) -> Self {
        let mut p = Self::zero();
        for (i, j, c) in terms {
            p.add_term(i, j, c.into());
        }
        p
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((i, j)).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, i: u32, j: u32) -> BigInt {
        self.terms.get(&(i, j)).cloned().unwrap_or_default()
    }

    /// Nonzero terms `((i, j), c)` in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigInt)> {
        self.terms.iter()
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    pub fn evaluate(&self, x: &BigInt, y: &BigInt) -> BigInt {
        self.terms
            .iter()
            .map(|(&(i, j), c)| c * x.pow(i) * y.pow(j))
            .sum()
    }

    pub fn evaluate_i64(&self, x: i64, y: i64) -> BigInt {
        self.evaluate(&BigInt::from(x), &BigInt::from(y))
    }

    /// `p(1 − t, 0)`.
    pub fn at_one_minus_t_zero(&self) -> UnivariatePolynomial {
        let one_minus_t = UnivariatePolynomial::from_coeffs([1, -1]);
        let mut out = UnivariatePolynomial::zero();
        for (&(i, j), c) in &self.terms {
            if j == 0 {
                out = &out + &(&one_minus_t.pow(i) * &UnivariatePolynomial::constant(c.clone()));
            }
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut out = Self::zero();
        for (&(i, j), d) in &self.terms {
            out.add_term(i, j, c * d);
        }
        out
    }
}

impl Add for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn add(self, rhs: Self) -> BivariatePolynomial {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }
}

impl Add for BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn add(self, rhs: Self) -> BivariatePolynomial {
        &self + &rhs
    }
}

impl Neg for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn neg(self) -> BivariatePolynomial {
        self.scale(&BigInt::from(-1))
    }
}

impl Sub for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn sub(self, rhs: Self) -> BivariatePolynomial {
        self + &(-rhs)
    }
}

impl Sub for BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn sub(self, rhs: Self) -> BivariatePolynomial {
        &self - &rhs
    }
}

impl Mul for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn mul(self, rhs: Self) -> BivariatePolynomial {
        let mut out = BivariatePolynomial::zero();
        for (&(i, j), c) in &self.terms {
            for (&(k, l), d) in &rhs.terms {
                out.add_term(i + k, j + l, c * d);
            }
        }
        out
    }
}

impl Mul for BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn mul(self, rhs: Self) -> BivariatePolynomial {
        &self * &rhs
    }
}

fn write_term(
    f: &mut fmt::Formatter<'_>,
    first: bool,
    c: &BigInt,
    monomial: &str,
) -> fmt::Result {
    let negative = c.is_negative();
    match (first, negative) {
        (true, true) => f.write_str("-")?,
        (true, false) => {}
        (false, true) => f.write_str(" - ")?,
        (false, false) => f.write_str(" + ")?,
    }
    let abs = c.abs();
    if monomial.is_empty() {
        write!(f, "{abs}")
    } else if abs.is_one() {
        f.write_str(monomial)
    } else {
        write!(f, "{abs}*{monomial}")
    }
}

fn power(var: &str, e: u32) -> Option<String> {
    match e {
        0 => None,
        1 => Some(var.to_string()),
        _ => Some(format!("{var}^{e}")),
    }
}

impl fmt::Display for BivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        for (n, (i, j)) in keys.into_iter().enumerate() {
            let monomial: Vec<String> = [power("x", i), power("y", j)].into_iter().flatten().collect();
            write_term(f, n == 0, &self.terms[&(i, j)], &monomial.join("*"))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct UnivariatePolynomial {
    terms: BTreeMap<u32, BigInt>,
}

impl UnivariatePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(0, c.into());
        p
    }

    /// Coefficients listed from degree 0 upward.
    pub fn from_coeffs<C: Into<BigInt>>(coeffs: impl IntoIterator<Item = C>) -> Self {
        let mut p = Self::zero();
        for (k, c) in coeffs.into_iter().enumerate() {
            p.add_term(k as u32, c.into());
        }
        p
    }

    pub fn add_term(&mut self, k: u32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(k).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, k: u32) -> BigInt {
        self.terms.get(&k).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    pub fn evaluate(&self, t: &BigInt) -> BigInt {
        self.terms.iter().map(|(&k, c)| c * t.pow(k)).sum()
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::constant(1);
        for _ in 0..e {
            out = &out * self;
        }
        out
    }
}

impl Add for &UnivariatePolynomial {
    type Output = UnivariatePolynomial;
    fn add(self, rhs: Self) -> UnivariatePolynomial {
        let mut out = self.clone();
        for (&k, c) in &rhs.terms {
            out.add_term(k, c.clone());
        }
        out
    }
}

impl Mul for &UnivariatePolynomial {
    type Output = UnivariatePolynomial;
    fn mul(self, rhs: Self) -> UnivariatePolynomial {
        let mut out = UnivariatePolynomial::zero();
        for (&i, c) in &self.terms {
            for (&k, d) in &rhs.terms {
                out.add_term(i + k, c * d);
            }
        }
        out
    }
}

impl fmt::Display for UnivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (n, (&k, c)) in self.terms.iter().rev().enumerate() {
            write_term(f, n == 0, c, &power("t", k).unwrap_or_default())?;
        }
        Ok(())
    }
}
