//! Truncated bivariate series.
//!
//! A [`SmoothJet`] stores the coefficients of `Σ c_{pq} u^p v^q` for
//! `p + q ≤ N`, where the variable pair `(u, v)` is fixed by its [`Basis`]:
//! `(X, Y)`, `(Z, Z̄)` with `Z = X + iY`, or `(Z_μ, Z̄_μ)` with
//! `Z_μ = Z/(1+μ̄) + μZ̄/(1+μ)`.
//!
//! Products drop everything above total degree `N`. Two jets only combine
//! when order and basis agree; the arithmetic operators panic otherwise and
//! the `checked_*` methods return an error.

mod plane;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::coeff::{GaussRational, PiGaussCoeff, Rational};
use crate::error::{Error, Result};

pub use plane::{PlaneJet, Sign, VPlusJet};

/// A point of the open unit disk with Gaussian-rational value.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mu(GaussRational);

impl Mu {
    pub fn new(value: GaussRational) -> Result<Self> {
        if value.norm_sqr() < Rational::one() {
            Ok(Mu(value))
        } else {
            Err(Error::InvalidJet(format!("|mu|^2 >= 1 for mu = {value}")))
        }
    }

    pub fn zero() -> Self {
        Mu(GaussRational::zero())
    }

    pub fn value(&self) -> &GaussRational {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// `(a, b)` with `Z_μ = aZ + bZ̄`.
    pub fn zmu_coefficients(&self) -> (GaussRational, GaussRational) {
        let one = GaussRational::one();
        let a = (&one + &self.0.conj()).inv().expect("1 + conj(mu) != 0 inside the disk");
        let b = self.0.checked_div(&(&one + &self.0)).expect("1 + mu != 0 inside the disk");
        (a, b)
    }
}

impl fmt::Display for Mu {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for Mu {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mu({})", self.0)
    }
}

impl Serialize for Mu {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Mu {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Mu::new(GaussRational::deserialize(d)?).map_err(D::Error::custom)
    }
}

/// Monomial basis of a [`SmoothJet`]. `Zmu(0)` is normalized to `Z`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Basis {
    XY,
    Z,
    Zmu(Mu),
}

impl Basis {
    pub fn zmu(mu: &Mu) -> Basis {
        if mu.is_zero() {
            Basis::Z
        } else {
            Basis::Zmu(mu.clone())
        }
    }

    /// The μ of a complex basis (`Z` has μ = 0).
    pub fn mu(&self) -> Option<Mu> {
        match self {
            Basis::XY => None,
            Basis::Z => Some(Mu::zero()),
            Basis::Zmu(m) => Some(m.clone()),
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Basis::XY => write!(f, "XY"),
            Basis::Z => write!(f, "Z"),
            Basis::Zmu(m) => write!(f, "Zmu({m})"),
        }
    }
}

/// Truncated series `Σ_{p+q≤N} c_{pq} u^p v^q` in a fixed basis.
///
/// Invariant: no stored coefficient is zero and every key has `p + q ≤ N`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SmoothJet {
    order: u32,
    basis: Basis,
    coeffs: BTreeMap<(u32, u32), PiGaussCoeff>,
}

impl SmoothJet {
    pub fn zero(order: u32, basis: Basis) -> Self {
        SmoothJet { order, basis, coeffs: BTreeMap::new() }
    }

    pub fn constant(order: u32, basis: Basis, c: PiGaussCoeff) -> Self {
        Self::monomial(order, basis, 0, 0, c)
    }

    pub fn monomial(order: u32, basis: Basis, p: u32, q: u32, c: PiGaussCoeff) -> Self {
        let mut out = Self::zero(order, basis);
        out.add_at(p, q, &c);
        out
    }

    /// Builds a jet from `((p, q), c)` pairs; terms above the order are dropped
    /// and repeated keys are summed.
    pub fn from_terms(
        order: u32,
        basis: Basis,
        terms: impl IntoIterator<Item = ((u32, u32), PiGaussCoeff)>,
    ) -> Self {
        let mut out = Self::zero(order, basis);
        for ((p, q), c) in terms {
            out.add_at(p, q, &c);
        }
        out
    }

    /// Shorthand for a real XY polynomial from integer-fraction coefficients
    /// `((p, q), (numer, denom))`.
    pub fn xy_poly(order: u32, terms: &[((u32, u32), (i64, i64))]) -> Self {
        Self::from_terms(
            order,
            Basis::XY,
            terms.iter().map(|&(k, (n, d))| (k, PiGaussCoeff::frac(n, d))),
        )
    }

    pub fn x(order: u32) -> Self {
        Self::monomial(order, Basis::XY, 1, 0, PiGaussCoeff::one())
    }

    pub fn y(order: u32) -> Self {
        Self::monomial(order, Basis::XY, 0, 1, PiGaussCoeff::one())
    }

    pub fn z(order: u32) -> Self {
        Self::monomial(order, Basis::Z, 1, 0, PiGaussCoeff::one())
    }

    pub fn zbar(order: u32) -> Self {
        Self::monomial(order, Basis::Z, 0, 1, PiGaussCoeff::one())
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn coeff(&self, p: u32, q: u32) -> PiGaussCoeff {
        self.coeffs.get(&(p, q)).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &PiGaussCoeff)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn constant_term(&self) -> PiGaussCoeff {
        self.coeff(0, 0)
    }

    /// Lowest total degree carrying a nonzero coefficient.
    pub fn valuation(&self) -> Option<u32> {
        self.coeffs.keys().map(|(p, q)| p + q).min()
    }

    pub(crate) fn add_at(&mut self, p: u32, q: u32, c: &PiGaussCoeff) {
        if p + q > self.order || c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry((p, q)).or_default();
        *slot = &*slot + c;
        if slot.is_zero() {
            self.coeffs.remove(&(p, q));
        }
    }

    /// The same polynomial viewed at another order. Raising the order treats
    /// the jet as an exact polynomial; callers must make sure that is sound.
    pub(crate) fn with_order(&self, order: u32) -> Self {
        let mut out = Self::zero(order, self.basis.clone());
        for ((p, q), c) in &self.coeffs {
            out.add_at(*p, *q, c);
        }
        out
    }

    /// Drops all terms above `order`, which must not exceed the current order.
    pub fn truncate(&self, order: u32) -> Result<Self> {
        if order > self.order {
            return Err(Error::OrderMismatch(self.order, order));
        }
        Ok(self.with_order(order))
    }

    fn compatible(&self, other: &SmoothJet) -> Result<()> {
        if self.order != other.order {
            return Err(Error::OrderMismatch(self.order, other.order));
        }
        if self.basis != other.basis {
            return Err(Error::BasisMismatch(self.basis.to_string(), other.basis.to_string()));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &SmoothJet) -> Result<Self> {
        self.compatible(other)?;
        let mut out = self.clone();
        for ((p, q), c) in &other.coeffs {
            out.add_at(*p, *q, c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &SmoothJet) -> Result<Self> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &SmoothJet) -> Result<Self> {
        self.compatible(other)?;
        let mut out = Self::zero(self.order, self.basis.clone());
        for ((p1, q1), a) in &self.coeffs {
            for ((p2, q2), b) in &other.coeffs {
                if p1 + p2 + q1 + q2 <= self.order {
                    out.add_at(p1 + p2, q1 + q2, &(a * b));
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &PiGaussCoeff) -> Self {
        let mut out = Self::zero(self.order, self.basis.clone());
        for ((p, q), v) in &self.coeffs {
            out.add_at(*p, *q, &(v * c));
        }
        out
    }

    pub fn scale_gauss(&self, c: &GaussRational) -> Self {
        self.scale(&PiGaussCoeff::from_gauss(c.clone()))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(self.order, self.basis.clone(), PiGaussCoeff::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `f(u, v)`: substitutes the two basis variables of `self` by `u` and `v`.
    /// The result lives in the basis of `u`/`v`. Both must have zero constant
    /// term so that truncation commutes with substitution.
    pub fn substitute(&self, u: &SmoothJet, v: &SmoothJet) -> Result<Self> {
        u.compatible(v)?;
        if u.order != self.order {
            return Err(Error::OrderMismatch(self.order, u.order));
        }
        if !u.constant_term().is_zero() || !v.constant_term().is_zero() {
            return Err(Error::InvalidJet("substituted series must vanish at the origin".into()));
        }
        let n = self.order;
        let basis = u.basis.clone();
        let mut vpow = vec![Self::constant(n, basis.clone(), PiGaussCoeff::one())];
        for k in 1..=n as usize {
            let next = &vpow[k - 1] * v;
            vpow.push(next);
        }
        let mut inner = vec![Self::zero(n, basis.clone()); n as usize + 1];
        for ((p, q), c) in &self.coeffs {
            let t = vpow[*q as usize].scale(c);
            inner[*p as usize] = &inner[*p as usize] + &t;
        }
        let mut acc = inner.pop().expect("n + 1 >= 1 entries");
        while let Some(next) = inner.pop() {
            acc = &next + &(&acc * u);
        }
        Ok(acc)
    }

    /// `f ∘ G` for an XY-basis jet and a map jet of the same order.
    pub fn compose<G: AsRef<PlaneJet>>(&self, g: &G) -> Result<Self> {
        let g = g.as_ref();
        self.expect_basis(&Basis::XY)?;
        self.substitute(g.first(), g.second())
    }

    pub fn expect_basis(&self, b: &Basis) -> Result<()> {
        if &self.basis != b {
            return Err(Error::BasisMismatch(self.basis.to_string(), b.to_string()));
        }
        Ok(())
    }

    /// Pair of series in `target` expressing the basis variables of `self`.
    fn variables_in(&self, target: &Basis) -> (SmoothJet, SmoothJet) {
        let n = self.order;
        let lin = |a: GaussRational, b: GaussRational| {
            SmoothJet::from_terms(
                n,
                target.clone(),
                [((1, 0), a.into()), ((0, 1), b.into())],
            )
        };
        let half = GaussRational::real(Rational::frac(1, 2));
        let half_i = GaussRational::new(Rational::zero(), Rational::frac(1, 2));
        match (&self.basis, target) {
            (Basis::XY, Basis::Z) => (lin(half.clone(), half), lin(-&half_i, half_i)),
            (Basis::Z, Basis::XY) => (
                lin(GaussRational::one(), GaussRational::i()),
                lin(GaussRational::one(), -GaussRational::i()),
            ),
            (Basis::Zmu(m), Basis::Z) => {
                let (a, b) = m.zmu_coefficients();
                (lin(a.clone(), b.clone()), lin(b.conj(), a.conj()))
            }
            (Basis::Z, Basis::Zmu(m)) => {
                let (a, b) = m.zmu_coefficients();
                let det = a.norm_sqr() - b.norm_sqr();
                let inv = GaussRational::real(det.recip().expect("|a| > |b| inside the disk"));
                (
                    lin(&a.conj() * &inv, -(&b * &inv)),
                    lin(-(&b.conj() * &inv), &a * &inv),
                )
            }
            _ => unreachable!("only single-step conversions through Z"),
        }
    }

    /// Exact change of monomial basis.
    pub fn to_basis(&self, target: &Basis) -> Self {
        if &self.basis == target {
            return self.clone();
        }
        if self.basis != Basis::Z && target != &Basis::Z {
            return self.to_basis(&Basis::Z).to_basis(target);
        }
        let (u, v) = self.variables_in(target);
        self.substitute(&u, &v).expect("linear change of variables")
    }

    pub fn xy_to_z(&self) -> Result<Self> {
        self.expect_basis(&Basis::XY)?;
        Ok(self.to_basis(&Basis::Z))
    }

    pub fn z_to_xy(&self) -> Result<Self> {
        self.expect_basis(&Basis::Z)?;
        Ok(self.to_basis(&Basis::XY))
    }

    pub fn z_to_zmu(&self, mu: &Mu) -> Result<Self> {
        self.expect_basis(&Basis::Z)?;
        Ok(self.to_basis(&Basis::zmu(mu)))
    }

    pub fn zmu_to_z(&self) -> Result<Self> {
        match self.basis {
            Basis::Zmu(_) | Basis::Z => Ok(self.to_basis(&Basis::Z)),
            Basis::XY => Err(Error::BasisMismatch("XY".into(), "Zmu".into())),
        }
    }

    /// Complex conjugate of the function the jet represents.
    pub fn conj(&self) -> Self {
        let mut out = Self::zero(self.order, self.basis.clone());
        for ((p, q), c) in &self.coeffs {
            match self.basis {
                Basis::XY => out.add_at(*p, *q, &c.conj()),
                Basis::Z | Basis::Zmu(_) => out.add_at(*q, *p, &c.conj()),
            }
        }
        out
    }

    /// True when the represented function is real-valued.
    pub fn is_real(&self) -> bool {
        *self == self.conj()
    }

    pub fn re(&self) -> Self {
        (self + &self.conj()).scale(&PiGaussCoeff::frac(1, 2))
    }

    pub fn im(&self) -> Self {
        (self - &self.conj()).scale(&minus_half_i())
    }

    /// Substitutes `X ↦ −X` in an XY-basis jet.
    pub fn reflect_x(&self) -> Result<Self> {
        self.expect_basis(&Basis::XY)?;
        let mut out = Self::zero(self.order, Basis::XY);
        for ((p, q), c) in &self.coeffs {
            out.add_at(*p, *q, &if p % 2 == 1 { -c } else { c.clone() });
        }
        Ok(out)
    }
}

/// `1/(2i) = −i/2`.
pub(crate) fn minus_half_i() -> PiGaussCoeff {
    PiGaussCoeff::from_gauss(GaussRational::new(Rational::zero(), Rational::frac(-1, 2)))
}

impl<'a> Add<&'a SmoothJet> for &'a SmoothJet {
    type Output = SmoothJet;
    fn add(self, rhs: &SmoothJet) -> SmoothJet {
        self.checked_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}
impl<'a> Sub<&'a SmoothJet> for &'a SmoothJet {
    type Output = SmoothJet;
    fn sub(self, rhs: &SmoothJet) -> SmoothJet {
        self.checked_sub(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}
impl<'a> Mul<&'a SmoothJet> for &'a SmoothJet {
    type Output = SmoothJet;
    fn mul(self, rhs: &SmoothJet) -> SmoothJet {
        self.checked_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}
impl Neg for &SmoothJet {
    type Output = SmoothJet;
    fn neg(self) -> SmoothJet {
        SmoothJet {
            order: self.order,
            basis: self.basis.clone(),
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}
forward_binop!(SmoothJet, Add, add);
forward_binop!(SmoothJet, Sub, sub);
forward_binop!(SmoothJet, Mul, mul);
forward_neg!(SmoothJet);

fn monomial_name(basis: &Basis, p: u32, q: u32) -> String {
    let (u, v) = match basis {
        Basis::XY => ("X", "Y"),
        Basis::Z => ("Z", "Zb"),
        Basis::Zmu(_) => ("Zm", "Zmb"),
    };
    let pow = |s: &str, e: u32| match e {
        0 => String::new(),
        1 => s.to_string(),
        _ => format!("{s}^{e}"),
    };
    format!("{}{}", pow(u, p), pow(v, q))
}

impl fmt::Display for SmoothJet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0 + O({})", self.order + 1);
        }
        for (n, ((p, q), c)) in self.coeffs.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            let m = monomial_name(&self.basis, *p, *q);
            if m.is_empty() {
                write!(f, "[{c}]")?;
            } else {
                write!(f, "[{c}]{m}")?;
            }
        }
        write!(f, " + O({})", self.order + 1)
    }
}

impl fmt::Debug for SmoothJet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SmoothJet<{}>({})", self.basis, self)
    }
}

#[derive(Serialize, Deserialize)]
struct TermWire {
    p: u32,
    q: u32,
    coeff: PiGaussCoeff,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JetWire {
    order: u32,
    basis: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    mu: Option<Mu>,
    terms: Vec<TermWire>,
}

impl Serialize for SmoothJet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let (basis, mu) = match &self.basis {
            Basis::XY => ("XY", None),
            Basis::Z => ("Z", None),
            Basis::Zmu(m) => ("Zmu", Some(m.clone())),
        };
        JetWire {
            order: self.order,
            basis: basis.into(),
            mu,
            terms: self
                .coeffs
                .iter()
                .map(|((p, q), c)| TermWire { p: *p, q: *q, coeff: c.clone() })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SmoothJet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = JetWire::deserialize(d)?;
        if w.order == 0 {
            return Err(D::Error::custom("jet order must be at least 1"));
        }
        let basis = match (w.basis.as_str(), w.mu) {
            ("XY", None) => Basis::XY,
            ("Z", None) => Basis::Z,
            ("Zmu", Some(m)) => Basis::zmu(&m),
            (b, _) => return Err(D::Error::custom(format!("unknown basis {b:?} (or mu misplaced)"))),
        };
        let mut out = SmoothJet::zero(w.order, basis);
        for t in w.terms {
            if t.p + t.q > w.order {
                return Err(D::Error::custom(format!(
                    "term ({}, {}) exceeds order {}",
                    t.p, t.q, w.order
                )));
            }
            out.add_at(t.p, t.q, &t.coeff);
        }
        Ok(out)
    }
}
