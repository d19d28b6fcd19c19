use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Basis, Mu, SmoothJet};
use crate::coeff::PiGaussCoeff;
use crate::error::{Error, Result};

/// Jet of a plane map germ `(X, Y) ↦ (first, second)` fixing the origin.
///
/// Components are XY-basis jets. Real maps have real components; complex
/// coefficients are allowed so that formal identities can be checked too.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PlaneJet {
    first: SmoothJet,
    second: SmoothJet,
}

impl AsRef<PlaneJet> for PlaneJet {
    fn as_ref(&self) -> &PlaneJet {
        self
    }
}

impl PlaneJet {
    pub fn new(first: SmoothJet, second: SmoothJet) -> Result<Self> {
        first.expect_basis(&Basis::XY)?;
        second.expect_basis(&Basis::XY)?;
        if first.order() != second.order() {
            return Err(Error::OrderMismatch(first.order(), second.order()));
        }
        if !first.constant_term().is_zero() || !second.constant_term().is_zero() {
            return Err(Error::InvalidJet("map jet must fix the origin".into()));
        }
        Ok(PlaneJet { first, second })
    }

    pub fn identity(order: u32) -> Self {
        PlaneJet { first: SmoothJet::x(order), second: SmoothJet::y(order) }
    }

    /// The real map whose complex form `first + i·second` is `gc`.
    pub fn from_complex_form(gc: &SmoothJet) -> Result<Self> {
        if gc.basis() == &Basis::XY {
            return Err(Error::BasisMismatch("XY".into(), "Z".into()));
        }
        let gc = gc.to_basis(&Basis::Z);
        PlaneJet::new(gc.re().to_basis(&Basis::XY), gc.im().to_basis(&Basis::XY))
    }

    pub fn order(&self) -> u32 {
        self.first.order()
    }

    pub fn first(&self) -> &SmoothJet {
        &self.first
    }

    pub fn second(&self) -> &SmoothJet {
        &self.second
    }

    pub fn is_real(&self) -> bool {
        self.first.is_real() && self.second.is_real()
    }

    pub fn truncate(&self, order: u32) -> Result<Self> {
        PlaneJet::new(self.first.truncate(order)?, self.second.truncate(order)?)
    }

    /// `first + i·second` in the `Z` basis.
    pub fn complex_form(&self) -> SmoothJet {
        let i = PiGaussCoeff::i();
        (&self.first + &self.second.scale(&i)).to_basis(&Basis::Z)
    }

    /// `first + i·second` in the `Z_μ` basis.
    pub fn complex_form_in(&self, mu: &Mu) -> SmoothJet {
        self.complex_form().to_basis(&Basis::zmu(mu))
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &PlaneJet) -> Result<PlaneJet> {
        PlaneJet::new(self.first.compose(inner)?, self.second.compose(inner)?)
    }

    pub fn checked_add(&self, other: &PlaneJet) -> Result<PlaneJet> {
        PlaneJet::new(self.first.checked_add(&other.first)?, self.second.checked_add(&other.second)?)
    }

    pub fn checked_sub(&self, other: &PlaneJet) -> Result<PlaneJet> {
        PlaneJet::new(self.first.checked_sub(&other.first)?, self.second.checked_sub(&other.second)?)
    }

    /// Componentwise sum of a nonempty tuple of map jets.
    pub fn sum<'a>(maps: impl IntoIterator<Item = &'a PlaneJet>) -> Result<PlaneJet> {
        let mut it = maps.into_iter();
        let first = it.next().ok_or_else(|| Error::Precondition("empty tuple".into()))?;
        it.try_fold(first.clone(), |acc, g| acc.checked_add(g))
    }

    /// Linear part as a row-major 2×2 matrix.
    pub fn linear_part(&self) -> [[PiGaussCoeff; 2]; 2] {
        [
            [self.first.coeff(1, 0), self.first.coeff(0, 1)],
            [self.second.coeff(1, 0), self.second.coeff(0, 1)],
        ]
    }

    pub fn is_identity(&self) -> bool {
        *self == PlaneJet::identity(self.order())
    }

    fn apply_matrix(m: &[[PiGaussCoeff; 2]; 2], f: &SmoothJet, g: &SmoothJet) -> Result<PlaneJet> {
        PlaneJet::new(&f.scale(&m[0][0]) + &g.scale(&m[0][1]), &f.scale(&m[1][0]) + &g.scale(&m[1][1]))
    }

    /// Compositional inverse up to the order, by fixed-point iteration on
    /// `L·H = id − N∘H` where `L` is the linear and `N` the nonlinear part.
    /// Each sweep fixes one more degree.
    pub fn revert(&self) -> Result<PlaneJet> {
        let n = self.order();
        let l = self.linear_part();
        let det = &l[0][0] * &l[1][1] - &l[0][1] * &l[1][0];
        let det = det
            .as_gauss()
            .filter(|d| !d.is_zero())
            .ok_or_else(|| Error::NotInvertible(format!("linear part has determinant {det}")))?;
        let d = PiGaussCoeff::from_gauss(det.inv()?);
        let linv = [[&l[1][1] * &d, -(&l[0][1] * &d)], [-(&l[1][0] * &d), &l[0][0] * &d]];
        let id = PlaneJet::identity(n);
        let lin = PlaneJet::apply_matrix(&l, id.first(), id.second())?;
        let nonlinear = self.checked_sub(&lin)?;
        let mut h = PlaneJet::apply_matrix(&linv, id.first(), id.second())?;
        for _ in 1..n {
            let nh = nonlinear.compose(&h)?;
            let rhs = id.checked_sub(&nh)?;
            h = PlaneJet::apply_matrix(&linv, rhs.first(), rhs.second())?;
        }
        if !self.compose(&h)?.is_identity() {
            return Err(Error::Internal("reversion did not converge".into()));
        }
        Ok(h)
    }
}

impl fmt::Debug for PlaneJet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PlaneJet({}; {})", self.first, self.second)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PlaneWire {
    order: u32,
    first: SmoothJet,
    second: SmoothJet,
}

impl Serialize for PlaneJet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PlaneWire { order: self.order(), first: self.first.clone(), second: self.second.clone() }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PlaneJet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = PlaneWire::deserialize(d)?;
        if w.first.order() != w.order {
            return Err(D::Error::custom("component order differs from map order"));
        }
        PlaneJet::new(w.first, w.second).map_err(D::Error::custom)
    }
}

/// Orientation tag of an abscissa-preserving jet: `Plus` for the identity
/// component, `Minus` for the coset reached by an `X ↦ −X` reflection.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    fn times(self, other: Sign) -> Sign {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

/// Jet of an abscissa-preserving germ `G(X, Y) = (X, g(X, Y))`.
///
/// Invariants: `g` is a real XY jet without constant term whose `Y`
/// coefficient is a π-free positive rational.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VPlusJet {
    map: PlaneJet,
    sign: Sign,
}

impl AsRef<PlaneJet> for VPlusJet {
    fn as_ref(&self) -> &PlaneJet {
        &self.map
    }
}

impl VPlusJet {
    pub fn new(g: SmoothJet) -> Result<Self> {
        Self::with_sign(g, Sign::Plus)
    }

    pub fn with_sign(g: SmoothJet, sign: Sign) -> Result<Self> {
        g.expect_basis(&Basis::XY)?;
        if !g.is_real() {
            return Err(Error::InvalidJet(format!("g is not real: {g}")));
        }
        if !g.constant_term().is_zero() {
            return Err(Error::InvalidJet("g has a constant term".into()));
        }
        let b = g.coeff(0, 1);
        match b.as_gauss() {
            Some(v) if v.is_real() && v.re.is_positive() => {}
            _ => {
                return Err(Error::InvalidJet(format!(
                    "Y coefficient of g must be a positive π-free rational, got {b}"
                )))
            }
        }
        let map = PlaneJet::new(SmoothJet::x(g.order()), g)?;
        Ok(VPlusJet { map, sign })
    }

    /// Accepts a map jet whose first component is exactly `X`.
    pub fn from_plane(map: &PlaneJet) -> Result<Self> {
        if map.first() != &SmoothJet::x(map.order()) {
            return Err(Error::InvalidJet("first component is not X".into()));
        }
        Self::new(map.second().clone())
    }

    pub fn identity(order: u32) -> Self {
        VPlusJet { map: PlaneJet::identity(order), sign: Sign::Plus }
    }

    pub fn g(&self) -> &SmoothJet {
        self.map.second()
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn order(&self) -> u32 {
        self.map.order()
    }

    pub fn plane(&self) -> &PlaneJet {
        &self.map
    }

    pub fn is_identity(&self) -> bool {
        self.sign == Sign::Plus && self.map.is_identity()
    }

    pub fn complex_form(&self) -> SmoothJet {
        self.map.complex_form()
    }

    pub fn truncate(&self, order: u32) -> Result<Self> {
        Self::with_sign(self.g().truncate(order)?, self.sign)
    }

    /// `self ∘ other`.
    pub fn group_compose(&self, other: &VPlusJet) -> Result<VPlusJet> {
        let map = self.map.compose(&other.map)?;
        Self::with_sign(map.second().clone(), self.sign.times(other.sign))
    }

    pub fn revert(&self) -> Result<VPlusJet> {
        let inv = self.map.revert()?;
        Self::with_sign(inv.second().clone(), self.sign)
    }

    /// `g(X, Y) ↦ g(−X, Y)` with the orientation tag toggled.
    pub fn z2_reflect(&self) -> VPlusJet {
        let g = self.g().reflect_x().expect("XY basis by invariant");
        Self::with_sign(g, self.sign.flip()).expect("reflection keeps the Y coefficient")
    }

    /// The `X` coefficient `a` and the `Y` coefficient `b` of `g`.
    pub fn linear_coefficients(&self) -> (PiGaussCoeff, PiGaussCoeff) {
        (self.g().coeff(1, 0), self.g().coeff(0, 1))
    }
}

impl fmt::Debug for VPlusJet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.sign == Sign::Plus { "+" } else { "-" };
        write!(f, "VPlusJet[{s}](X, {})", self.g())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VPlusWire {
    order: u32,
    g: SmoothJet,
    sign: Sign,
}

impl Serialize for VPlusJet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        VPlusWire { order: self.order(), g: self.g().clone(), sign: self.sign }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for VPlusJet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = VPlusWire::deserialize(d)?;
        if w.g.order() != w.order {
            return Err(D::Error::custom("g order differs from jet order"));
        }
        VPlusJet::with_sign(w.g, w.sign).map_err(D::Error::custom)
    }
}
