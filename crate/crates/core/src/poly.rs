//! Dense univariate polynomials with exact rational coefficients, and the
//! window-relative transforms (f <-> h, reversal, `x -> -1-x`, r-sections,
//! symmetric decomposition) that every other module is written in terms of.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomial of degree {degree} does not fit the window n = {n}")]
    DegreeExceedsWindow { degree: usize, n: usize },
    #[error("section modulus r must be positive")]
    ZeroModulus,
    #[error("section index {i} must be below r = {r}")]
    SectionIndex { i: usize, r: usize },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("invalid rational literal {0:?}")]
    BadLiteral(String),
}

/// Coefficients are stored low-to-high and the highest stored coefficient is
/// never zero; the zero polynomial stores nothing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

fn rat(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn from_bigints(coeffs: &[BigInt]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|c| Rational::from_integer(c.clone()))
                .collect(),
        )
    }

    /// `1 + x + ... + x^(len-1)`.
    pub fn geometric(len: usize) -> Self {
        Self::new(vec![Rational::one(); len])
    }

    /// `(a + b x)^n`.
    pub fn binomial_power(a: i64, b: i64, n: usize) -> Self {
        Self::from_ints(&[a, b]).pow(n)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    /// Coefficients padded (or not truncated) to exactly `len` entries.
    /// Panics if the polynomial has more nonzero coefficients than `len`.
    pub fn padded(&self, len: usize) -> Vec<Rational> {
        assert!(
            self.coeffs.len() <= len,
            "polynomial longer than requested padding"
        );
        let mut out = self.coeffs.clone();
        out.resize(len, Rational::zero());
        out
    }

    pub fn fits_window(&self, n: usize) -> bool {
        self.degree().is_none_or(|d| d <= n)
    }

    fn check_window(&self, n: usize) -> Result<(), PolyError> {
        match self.degree() {
            Some(degree) if degree > n => Err(PolyError::DegreeExceedsWindow { degree, n }),
            _ => Ok(()),
        }
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn sum_coeffs(&self) -> Rational {
        self.coeffs.iter().fold(Rational::zero(), |acc, c| acc + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat(i as i64))
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial { coeffs }
    }

    pub fn pow(&self, mut e: usize) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Substitutes the polynomial `q` for `x`.
    pub fn compose(&self, q: &Polynomial) -> Self {
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| {
            &(&acc * q) + &Self::constant(c.clone())
        })
    }

    pub fn div_rem(&self, divisor: &Polynomial) -> Result<(Self, Self), PolyError> {
        let dd = divisor.degree().ok_or(PolyError::DivisionByZero)?;
        let lead = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let Some(sd) = self.degree() else {
            return Ok((Self::zero(), Self::zero()));
        };
        if sd < dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![Rational::zero(); sd - dd + 1];
        for i in (dd..=sd).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let q = &rem[i] / &lead;
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                let idx = i - dd + j;
                rem[idx] = &rem[idx] - &q * dc;
            }
            quot[i - dd] = q;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Exact quotient; panics if `divisor` does not divide `self`.
    pub fn exact_div(&self, divisor: &Polynomial) -> Self {
        let (q, r) = self.div_rem(divisor).expect("nonzero divisor");
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            Some(lc) => self.scale(&(Rational::one() / lc)),
            None => Self::zero(),
        }
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(a: &Polynomial, b: &Polynomial) -> Self {
        let mut a = a.clone();
        let mut b = b.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r.primitive_part();
        }
        a.monic()
    }

    /// Positive multiple of `self` with coprime integer coefficients. The
    /// multiplier is positive, so signs at every point are preserved.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let den_lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(den_lcm.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        Self::new(
            ints.into_iter()
                .map(|c| Rational::from_integer(c / &g))
                .collect(),
        )
    }

    /// Integer coefficients of the primitive part.
    pub fn primitive_integer_coeffs(&self) -> Vec<BigInt> {
        self.primitive_part()
            .coeffs
            .iter()
            .map(|c| c.to_integer())
            .collect()
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn to_bigints(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// First index whose coefficient is negative.
    pub fn first_negative(&self) -> Option<(usize, Rational)> {
        self.coeffs
            .iter()
            .enumerate()
            .find(|(_, c)| c.is_negative())
            .map(|(i, c)| (i, c.clone()))
    }

    /// Symmetric with center `n/2`: `deg <= n` and `c_i = c_{n-i}`.
    pub fn is_symmetric(&self, n: usize) -> bool {
        self.fits_window(n) && (0..=n).all(|i| self.coeff(i) == self.coeff(n - i))
    }

    /// Coefficientwise `self >= other`.
    pub fn dominates(&self, other: &Polynomial) -> bool {
        let len = self.coeffs.len().max(other.coeffs.len());
        (0..len).all(|i| self.coeff(i) >= other.coeff(i))
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$method(rhs)
            }
        }
        impl $trait<Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                self.$method(&rhs)
            }
        }
    };
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl std::iter::Sum for Polynomial {
    fn sum<I: Iterator<Item = Polynomial>>(iter: I) -> Self {
        iter.fold(Polynomial::zero(), |acc, p| acc + p)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Parses `"3"`, `"-7/2"` or an exact decimal such as `"0.125"`.
pub fn parse_rational(s: &str) -> Result<Rational, PolyError> {
    let bad = || PolyError::BadLiteral(s.to_string());
    let t = s.trim();
    if let Some((num, den)) = t.split_once('/') {
        let num = BigInt::from_str(num.trim()).map_err(|_| bad())?;
        let den = BigInt::from_str(den.trim()).map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(num, den));
    }
    if let Some((int, frac)) = t.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = int.starts_with('-');
        let int_part = if int.is_empty() || int == "-" || int == "+" {
            BigInt::zero()
        } else {
            BigInt::from_str(int).map_err(|_| bad())?.abs()
        };
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let frac_part = BigInt::from_str(frac).map_err(|_| bad())?;
        let mag = Rational::new(int_part * &scale + frac_part, scale);
        return Ok(if negative { -mag } else { mag });
    }
    BigInt::from_str(t)
        .map(Rational::from_integer)
        .map_err(|_| bad())
}

/// Canonical exact string: integers as `"12"`, others as `"p/q"`.
pub fn rational_to_string(r: &Rational) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Lossy conversion, for display only.
pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            seq.serialize_element(&rational_to_string(c))?;
        }
        seq.end()
    }
}

struct CoeffLiteral(Rational);

impl<'de> Deserialize<'de> for CoeffLiteral {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(deserializer)?;
        let text = match &v {
            serde_json::Value::String(s) => s.clone(),
            serde_json::Value::Number(n) => n.to_string(),
            other => return Err(de::Error::custom(format!("not a coefficient: {other}"))),
        };
        parse_rational(&text)
            .map(CoeffLiteral)
            .map_err(de::Error::custom)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct PolyVisitor;
        impl<'de> Visitor<'de> for PolyVisitor {
            type Value = Polynomial;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "an array of coefficient literals, low to high")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Polynomial, A::Error> {
                let mut coeffs = Vec::new();
                while let Some(CoeffLiteral(c)) = seq.next_element()? {
                    coeffs.push(c);
                }
                Ok(Polynomial::new(coeffs))
            }
        }
        deserializer.deserialize_seq(PolyVisitor)
    }
}

/// `(1-x)^n f(x/(1-x))`, the h-polynomial associated to `f` with respect to `n`.
pub fn h_from_f(f: &Polynomial, n: usize) -> Result<Polynomial, PolyError> {
    f.check_window(n)?;
    Ok(window_transform(f, n, -1))
}

/// `(1+x)^n h(x/(1+x))`, the inverse of [`h_from_f`] for the same `n`.
pub fn f_from_h(h: &Polynomial, n: usize) -> Result<Polynomial, PolyError> {
    h.check_window(n)?;
    Ok(window_transform(h, n, 1))
}

// sum_i c_i x^i (1 + sign*x)^(n-i)
fn window_transform(p: &Polynomial, n: usize, sign: i64) -> Polynomial {
    let base = Polynomial::from_ints(&[1, sign]);
    let mut powers = Vec::with_capacity(n + 1);
    powers.push(Polynomial::one());
    for k in 1..=n {
        powers.push(&powers[k - 1] * &base);
    }
    p.coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| powers[n - i].shift(i).scale(c))
        .sum()
}

/// `x^n p(1/x)`.
pub fn reverse(p: &Polynomial, n: usize) -> Result<Polynomial, PolyError> {
    p.check_window(n)?;
    Ok(Polynomial::new((0..=n).map(|i| p.coeff(n - i)).collect()))
}

/// `p(-1-x)`.
pub fn involution_i(p: &Polynomial) -> Polynomial {
    p.compose(&Polynomial::from_ints(&[-1, -1]))
}

/// `g^<r,i>`: the coefficient of `x^m` is the coefficient of `x^(rm+i)` in `g`.
pub fn r_section(g: &Polynomial, r: usize, i: usize) -> Result<Polynomial, PolyError> {
    if r == 0 {
        return Err(PolyError::ZeroModulus);
    }
    if i >= r {
        return Err(PolyError::SectionIndex { i, r });
    }
    Ok(Polynomial::new(
        g.coeffs.iter().skip(i).step_by(r).cloned().collect(),
    ))
}

/// The unique `g = a + x b` with `a` symmetric about `n/2` and `b` symmetric
/// about `(n-1)/2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetricDecomposition {
    pub a: Polynomial,
    pub b: Polynomial,
    pub n: usize,
}

impl SymmetricDecomposition {
    pub fn reconstruct(&self) -> Polynomial {
        &self.a + &self.b.shift(1)
    }

    pub fn parts_symmetric(&self) -> bool {
        let b_ok = if self.n == 0 {
            self.b.is_zero()
        } else {
            self.b.is_symmetric(self.n - 1)
        };
        self.a.is_symmetric(self.n) && b_ok
    }
}

pub fn symmetric_decompose(g: &Polynomial, n: usize) -> Result<SymmetricDecomposition, PolyError> {
    // x^n g(1/x) = a + b, so (1 - x) b = x^n g(1/x) - g.
    let rev = reverse(g, n)?;
    let b = (&rev - g).exact_div(&Polynomial::from_ints(&[1, -1]));
    let a = g - &b.shift(1);
    Ok(SymmetricDecomposition { a, b, n })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    #[test]
    fn h_from_f_examples() {
        assert_eq!(h_from_f(&p(&[1, 3, 2]), 2).unwrap(), p(&[1, 1]));
        assert_eq!(
            h_from_f(&Polynomial::binomial_power(1, 1, 5), 5).unwrap(),
            p(&[1])
        );
        assert_eq!(h_from_f(&p(&[1, 15, 30, 16]), 3).unwrap(), p(&[1, 12, 3]));
        assert!(matches!(
            h_from_f(&p(&[1, 2, 3]), 1),
            Err(PolyError::DegreeExceedsWindow { degree: 2, n: 1 })
        ));
    }

    #[test]
    fn f_from_h_examples() {
        assert_eq!(f_from_h(&p(&[1]), 2).unwrap(), p(&[1, 2, 1]));
        assert_eq!(f_from_h(&p(&[1, 1]), 2).unwrap(), p(&[1, 3, 2]));
        assert!(f_from_h(&p(&[0, 0, 1]), 1).is_err());
    }

    #[test]
    fn reverse_examples() {
        assert_eq!(reverse(&p(&[1, 2]), 2).unwrap(), p(&[0, 2, 1]));
        assert_eq!(reverse(&Polynomial::zero(), 4).unwrap(), Polynomial::zero());
        assert!(reverse(&p(&[0, 0, 0, 1]), 2).is_err());
    }

    #[test]
    fn involution_examples() {
        assert_eq!(involution_i(&p(&[0, 1])), p(&[-1, -1]));
        // interior f of a 2-subdivided edge: x + 2x^2  ->  f(sigma_2) = 1 + 3x + 2x^2
        assert_eq!(involution_i(&p(&[0, 1, 2])), p(&[1, 3, 2]));
    }

    #[test]
    fn r_section_examples() {
        let g = Polynomial::geometric(4).pow(3);
        assert_eq!(r_section(&g, 4, 0).unwrap(), p(&[1, 12, 3]));
        assert_eq!(r_section(&g, 1, 0).unwrap(), g);
        assert_eq!(r_section(&g, 0, 0), Err(PolyError::ZeroModulus));
        assert!(r_section(&g, 2, 2).is_err());
    }

    #[test]
    fn symmetric_decompose_examples() {
        let g = p(&[1, 4, 1]);
        let dec = symmetric_decompose(&g, 2).unwrap();
        assert_eq!(dec.a, g);
        assert!(dec.b.is_zero());
        // Eulerian A_3 with window 2 (h of sd(sigma_3) equals h of sd(boundary)).
        let dec = symmetric_decompose(&p(&[1, 4, 1]), 2).unwrap();
        assert!(dec.parts_symmetric());
        // non-symmetric input
        let dec = symmetric_decompose(&p(&[1, 12, 3]), 2).unwrap();
        assert_eq!(dec.reconstruct(), p(&[1, 12, 3]));
        assert!(dec.parts_symmetric());
        assert_eq!(dec.b, p(&[2, 2]));
        assert!(symmetric_decompose(&p(&[1, 1, 1]), 1).is_err());
    }

    #[test]
    fn division_and_gcd() {
        let a = p(&[-1, 0, 0, 1]);
        let b = p(&[-1, 1]);
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(q, p(&[1, 1, 1]));
        assert!(r.is_zero());
        let g = Polynomial::gcd(&(&p(&[1, 1]) * &p(&[2, 1])), &(&p(&[1, 1]) * &p(&[3, 1])));
        assert_eq!(g, p(&[1, 1]));
        assert_eq!(
            a.div_rem(&Polynomial::zero()),
            Err(PolyError::DivisionByZero)
        );
    }

    #[test]
    fn literals_and_json() {
        assert_eq!(
            parse_rational("-7/2").unwrap(),
            Rational::new((-7).into(), 2.into())
        );
        assert_eq!(
            parse_rational("0.125").unwrap(),
            Rational::new(1.into(), 8.into())
        );
        assert_eq!(
            parse_rational("-1.5").unwrap(),
            Rational::new((-3).into(), 2.into())
        );
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        let q = Polynomial::new(vec![rat(1), Rational::new(1.into(), 3.into())]);
        let s = serde_json::to_string(&q).unwrap();
        assert_eq!(s, r#"["1","1/3"]"#);
        let back: Polynomial = serde_json::from_str(r#"["1", "1/3", 0]"#).unwrap();
        assert_eq!(back, q);
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, -1, 3]).to_string(), "1 - x + 3x^2");
        assert_eq!(p(&[0, 0, 1]).to_string(), "x^2");
        assert_eq!(Polynomial::zero().to_string(), "0");
    }

    fn small_poly(max_len: usize) -> impl Strategy<Value = Polynomial> {
        prop::collection::vec(-20i64..20, 0..=max_len).prop_map(|c| Polynomial::from_ints(&c))
    }

    proptest! {
        #[test]
        fn f_h_round_trip(f in small_poly(9), extra in 0usize..3) {
            let n = f.degree().unwrap_or(0) + extra;
            let h = h_from_f(&f, n).unwrap();
            prop_assert!(h.fits_window(n));
            prop_assert_eq!(f_from_h(&h, n).unwrap(), f);
        }

        #[test]
        fn reverse_is_involution(q in small_poly(8)) {
            let n = q.degree().unwrap_or(0) + 1;
            prop_assert_eq!(reverse(&reverse(&q, n).unwrap(), n).unwrap(), q);
        }

        #[test]
        fn involution_is_algebra_map(a in small_poly(5), b in small_poly(5)) {
            prop_assert_eq!(involution_i(&(&a * &b)), &involution_i(&a) * &involution_i(&b));
            prop_assert_eq!(involution_i(&involution_i(&a)), a);
        }

        #[test]
        fn r_section_reconstructs(g in small_poly(12), r in 1usize..=5) {
            let rebuilt: Polynomial = (0..r)
                .map(|i| {
                    let sec = r_section(&g, r, i).unwrap();
                    sec.compose(&Polynomial::monomial(Rational::one(), r)).shift(i)
                })
                .sum();
            prop_assert_eq!(rebuilt, g);
        }

        #[test]
        fn symmetric_decomposition_is_valid(g in small_poly(11), extra in 0usize..2) {
            let n = g.degree().unwrap_or(0) + extra;
            let dec = symmetric_decompose(&g, n).unwrap();
            prop_assert_eq!(dec.reconstruct(), g);
            prop_assert!(dec.parts_symmetric());
        }
    }
}
