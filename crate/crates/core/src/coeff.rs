//! Exact scalars.
//!
//! [`Rational`] wraps an arbitrary-precision fraction, [`GaussRational`] is
//! `re + im·i` over it, and [`PiGaussCoeff`] is a polynomial in a formal
//! symbol π with Gaussian-rational coefficients. π is never evaluated; it only
//! ever appears through the `2π` factors of labels and marked points.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A reduced fraction with positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self> {
        let d = denom.into();
        if d.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        Ok(Rational(BigRational::new(numer.into(), d)))
    }

    /// Literal constructor; panics on a zero denominator.
    pub fn frac(numer: i64, denom: i64) -> Self {
        Self::new(numer, denom).expect("zero denominator in literal")
    }

    pub fn int(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn from_big(r: BigRational) -> Self {
        Rational(r)
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn checked_div(&self, rhs: &Rational) -> Result<Self> {
        Ok(self * &rhs.recip()?)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Rational::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `self mod m` with representative in `[0, m)`; `m > 0`.
    pub fn rem_euclid(&self, m: &Rational) -> Self {
        let q = self.checked_div(m).expect("positive modulus").floor();
        self - &(m * &Rational::int(q))
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl<'a> Add<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn add(self, rhs: &Rational) -> Rational {
        Rational(&self.0 + &rhs.0)
    }
}
impl<'a> Sub<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn sub(self, rhs: &Rational) -> Rational {
        Rational(&self.0 - &rhs.0)
    }
}
impl<'a> Mul<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn mul(self, rhs: &Rational) -> Rational {
        Rational(&self.0 * &rhs.0)
    }
}
impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}
forward_binop!(Rational, Add, add);
forward_binop!(Rational, Sub, sub);
forward_binop!(Rational, Mul, mul);
forward_neg!(Rational);

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::int(n)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not a rational: {s:?}"));
        match s.split_once('/') {
            None => Ok(Rational::int(s.parse::<BigInt>().map_err(|_| bad())?)),
            Some((n, d)) => {
                let n = n.trim().parse::<BigInt>().map_err(|_| bad())?;
                let d = d.trim().parse::<BigInt>().map_err(|_| bad())?;
                Rational::new(n, d)
            }
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(D::Error::custom)
    }
}

/// `re + im·i` with rational parts.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GaussRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussRational { re, im }
    }

    pub fn real(re: Rational) -> Self {
        GaussRational { re, im: Rational::zero() }
    }

    pub fn zero() -> Self {
        Self::real(Rational::zero())
    }

    pub fn one() -> Self {
        Self::real(Rational::one())
    }

    pub fn i() -> Self {
        GaussRational { re: Rational::zero(), im: Rational::one() }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussRational { re: self.re.clone(), im: -&self.im }
    }

    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn scale(&self, r: &Rational) -> Self {
        GaussRational { re: &self.re * r, im: &self.im * r }
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.norm_sqr().recip()?;
        Ok(self.conj().scale(&n))
    }

    pub fn checked_div(&self, rhs: &GaussRational) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = GaussRational::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl<'a> Add<&'a GaussRational> for &'a GaussRational {
    type Output = GaussRational;
    fn add(self, rhs: &GaussRational) -> GaussRational {
        GaussRational { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}
impl<'a> Sub<&'a GaussRational> for &'a GaussRational {
    type Output = GaussRational;
    fn sub(self, rhs: &GaussRational) -> GaussRational {
        GaussRational { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}
impl<'a> Mul<&'a GaussRational> for &'a GaussRational {
    type Output = GaussRational;
    fn mul(self, rhs: &GaussRational) -> GaussRational {
        GaussRational {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}
impl Neg for &GaussRational {
    type Output = GaussRational;
    fn neg(self) -> GaussRational {
        GaussRational { re: -&self.re, im: -&self.im }
    }
}
forward_binop!(GaussRational, Add, add);
forward_binop!(GaussRational, Sub, sub);
forward_binop!(GaussRational, Mul, mul);
forward_neg!(GaussRational);

impl From<Rational> for GaussRational {
    fn from(r: Rational) -> Self {
        GaussRational::real(r)
    }
}

impl From<i64> for GaussRational {
    fn from(n: i64) -> Self {
        GaussRational::real(Rational::int(n))
    }
}

impl fmt::Display for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_negative() {
            write!(f, "{}-{} i", self.re, -&self.im)
        } else {
            write!(f, "{}+{} i", self.re, self.im)
        }
    }
}

impl fmt::Debug for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for GaussRational {
    type Err = Error;
    /// Accepts `a`, `a+b i`, `a-b i`, `b i`, `i`, with optional spaces.
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let Some(body) = t.strip_suffix('i') else {
            return Ok(GaussRational::real(t.parse()?));
        };
        let split = body
            .char_indices()
            .filter(|&(k, c)| k > 0 && (c == '+' || c == '-'))
            .map(|(k, _)| k)
            .last();
        let (re, im) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("0", body),
        };
        let im = match im {
            "" | "+" => Rational::one(),
            "-" => -Rational::one(),
            other => other.trim_start_matches('+').parse()?,
        };
        Ok(GaussRational { re: re.parse()?, im })
    }
}

impl Serialize for GaussRational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for GaussRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(D::Error::custom)
    }
}

/// Polynomial in the formal symbol π over the Gaussian rationals.
///
/// Invariant: no stored coefficient is zero, so structural equality is
/// mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PiGaussCoeff {
    terms: BTreeMap<u32, GaussRational>,
}

impl PiGaussCoeff {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_gauss(GaussRational::one())
    }

    pub fn i() -> Self {
        Self::from_gauss(GaussRational::i())
    }

    pub fn pi() -> Self {
        Self::pi_pow(1, GaussRational::one())
    }

    /// `c·π^k`.
    pub fn pi_pow(k: u32, c: GaussRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        PiGaussCoeff { terms }
    }

    pub fn from_gauss(c: GaussRational) -> Self {
        Self::pi_pow(0, c)
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::from_gauss(GaussRational::real(r))
    }

    pub fn int(n: i64) -> Self {
        Self::from_rational(Rational::int(n))
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Self::from_rational(Rational::frac(n, d))
    }

    pub fn from_terms(it: impl IntoIterator<Item = (u32, GaussRational)>) -> Self {
        let mut out = Self::zero();
        for (k, c) in it {
            out.add_term(k, &c);
        }
        out
    }

    fn add_term(&mut self, k: u32, c: &GaussRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(k).or_insert_with(GaussRational::zero);
        *slot = &*slot + c;
        if slot.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &GaussRational)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    /// Coefficient of `π^k`.
    pub fn pi_coeff(&self, k: u32) -> GaussRational {
        self.terms.get(&k).cloned().unwrap_or_else(GaussRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn is_real(&self) -> bool {
        self.terms.values().all(GaussRational::is_real)
    }

    pub fn is_pi_free(&self) -> bool {
        self.terms.keys().all(|&k| k == 0)
    }

    /// The value as a Gaussian rational, if no positive power of π occurs.
    pub fn as_gauss(&self) -> Option<GaussRational> {
        self.is_pi_free().then(|| self.pi_coeff(0))
    }

    pub fn conj(&self) -> Self {
        PiGaussCoeff { terms: self.terms.iter().map(|(k, c)| (*k, c.conj())).collect() }
    }

    /// Coefficientwise real part (π is real).
    pub fn re(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, c)| (*k, GaussRational::real(c.re.clone()))))
    }

    /// Coefficientwise imaginary part (π is real).
    pub fn im(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, c)| (*k, GaussRational::real(c.im.clone()))))
    }

    pub fn scale(&self, c: &GaussRational) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, v)| (*k, v * c)))
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, v)| (*k, v.scale(r))))
    }

    pub fn div_rational(&self, r: &Rational) -> Result<Self> {
        Ok(self.scale_rational(&r.recip()?))
    }

    pub fn div_gauss(&self, c: &GaussRational) -> Result<Self> {
        Ok(self.scale(&c.inv()?))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Floating-point value with π evaluated, as `(re, im)`. Only for
    /// numerical cross-checks; nothing in the crate depends on it.
    pub fn approx(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, c) in &self.terms {
            let p = std::f64::consts::PI.powi(*k as i32);
            re += c.re.to_f64() * p;
            im += c.im.to_f64() * p;
        }
        (re, im)
    }
}

impl<'a> Add<&'a PiGaussCoeff> for &'a PiGaussCoeff {
    type Output = PiGaussCoeff;
    fn add(self, rhs: &PiGaussCoeff) -> PiGaussCoeff {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, c);
        }
        out
    }
}
impl<'a> Sub<&'a PiGaussCoeff> for &'a PiGaussCoeff {
    type Output = PiGaussCoeff;
    fn sub(self, rhs: &PiGaussCoeff) -> PiGaussCoeff {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, &-c);
        }
        out
    }
}
impl<'a> Mul<&'a PiGaussCoeff> for &'a PiGaussCoeff {
    type Output = PiGaussCoeff;
    fn mul(self, rhs: &PiGaussCoeff) -> PiGaussCoeff {
        let mut out = PiGaussCoeff::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a + b, &(x * y));
            }
        }
        out
    }
}
impl Neg for &PiGaussCoeff {
    type Output = PiGaussCoeff;
    fn neg(self) -> PiGaussCoeff {
        PiGaussCoeff { terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect() }
    }
}
forward_binop!(PiGaussCoeff, Add, add);
forward_binop!(PiGaussCoeff, Sub, sub);
forward_binop!(PiGaussCoeff, Mul, mul);
forward_neg!(PiGaussCoeff);

impl From<Rational> for PiGaussCoeff {
    fn from(r: Rational) -> Self {
        PiGaussCoeff::from_rational(r)
    }
}

impl From<GaussRational> for PiGaussCoeff {
    fn from(c: GaussRational) -> Self {
        PiGaussCoeff::from_gauss(c)
    }
}

impl From<i64> for PiGaussCoeff {
    fn from(n: i64) -> Self {
        PiGaussCoeff::int(n)
    }
}

impl fmt::Display for PiGaussCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (k, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            let body = if c.is_real() { c.re.to_string() } else { format!("({c})") };
            match k {
                0 => write!(f, "{body}")?,
                1 => write!(f, "{body}·π")?,
                _ => write!(f, "{body}·π^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PiGaussCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
struct PiTermWire {
    pi: u32,
    re: Rational,
    im: Rational,
}

impl Serialize for PiGaussCoeff {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let wire: Vec<PiTermWire> = self
            .terms
            .iter()
            .map(|(k, c)| PiTermWire { pi: *k, re: c.re.clone(), im: c.im.clone() })
            .collect();
        wire.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PiGaussCoeff {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let wire = Vec::<PiTermWire>::deserialize(d)?;
        Ok(PiGaussCoeff::from_terms(wire.into_iter().map(|t| (t.pi, GaussRational::new(t.re, t.im)))))
    }
}
