//! Jets of multi-valued germs.
//!
//! A [`LogLaurentGerm`] is a finite sum
//! `Σ c_{pq} Z_μ^p Z̄_μ^q + A·ln Z_μ + B·ln Z̄_μ` with integer exponents and
//! smooth jets `A`, `B`. Terms with a negative exponent and the two log
//! coefficients form the [`SingularPart`]; a germ is smooth exactly when that
//! part vanishes. Monomials `Z_μ^p Z̄_μ^q` with distinct `(p, q)` have distinct
//! degree or winding number, so no cancellation between them can hide a
//! singularity.
//!
//! [`expand_g_ln_g`] writes `G ln G` in this form. With `R = G_C − Z_μ` the
//! identity `G ln G = G ln Z_μ + Σ_l c_l R^{l+1} Z_μ^{-l} (+ R)` holds with
//! two choices of coefficients, see [`LogSeries`].

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coeff::{GaussRational, PiGaussCoeff, Rational};
use crate::error::{Error, Result};
use crate::jet::{minus_half_i, Basis, Mu, PlaneJet, SmoothJet};

/// Coefficients `c_l` of the `R^{l+1} Z_μ^{-l}` terms.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LogSeries {
    /// `c_l = (−1)^{l−1}/l`, the expansion of `R·ln(1 + R/Z_μ)` alone. This is
    /// the convention in which the reference example values are stated.
    #[default]
    AlternatingHarmonic,
    /// `c_l = (−1)^{l−1}/(l(l+1))` plus the smooth term `R`: the full Taylor
    /// expansion of `(Z_μ + R)·ln(1 + R/Z_μ)`.
    Exact,
}

impl LogSeries {
    pub fn coefficient(self, l: u32) -> Rational {
        let sign = if l % 2 == 1 { 1 } else { -1 };
        let l = l as i64;
        match self {
            LogSeries::AlternatingHarmonic => Rational::frac(sign, l),
            LogSeries::Exact => Rational::frac(sign, l * (l + 1)),
        }
    }
}

type Lattice = BTreeMap<(i32, i32), PiGaussCoeff>;

fn lattice_add(map: &mut Lattice, key: (i32, i32), c: &PiGaussCoeff) {
    if c.is_zero() {
        return;
    }
    let slot = map.entry(key).or_default();
    *slot = &*slot + c;
    if slot.is_zero() {
        map.remove(&key);
    }
}

/// Jet of a germ `Σ c_{pq} Z_μ^p Z̄_μ^q + lnz·ln Z_μ + lnzbar·ln Z̄_μ`.
#[derive(Clone, PartialEq, Eq)]
pub struct LogLaurentGerm {
    order: u32,
    mu: Mu,
    depth: u32,
    window: Option<u32>,
    laurent: Lattice,
    lnz: SmoothJet,
    lnzbar: SmoothJet,
}

impl LogLaurentGerm {
    pub fn zero(order: u32, mu: &Mu) -> Self {
        Self::with_depth(order, mu, order.saturating_sub(2), None)
    }

    fn with_depth(order: u32, mu: &Mu, depth: u32, window: Option<u32>) -> Self {
        let basis = Basis::zmu(mu);
        LogLaurentGerm {
            order,
            mu: mu.clone(),
            depth,
            window,
            laurent: Lattice::new(),
            lnz: SmoothJet::zero(order, basis.clone()),
            lnzbar: SmoothJet::zero(order, basis),
        }
    }

    /// The germ of a smooth jet given in any complex basis.
    pub fn from_smooth(f: &SmoothJet, mu: &Mu) -> Result<Self> {
        if f.basis() == &Basis::XY {
            return Err(Error::BasisMismatch("XY".into(), Basis::zmu(mu).to_string()));
        }
        let f = f.to_basis(&Basis::zmu(mu));
        let mut out = Self::zero(f.order(), mu);
        for ((p, q), c) in f.terms() {
            out.insert(p as i32, q as i32, c)?;
        }
        Ok(out)
    }

    /// `f·ln Z_μ` (or `f·ln Z̄_μ` when `bar`).
    pub fn log_term(f: &SmoothJet, mu: &Mu, bar: bool) -> Result<Self> {
        f.expect_basis(&Basis::zmu(mu))?;
        let mut out = Self::zero(f.order(), mu);
        if bar {
            out.lnzbar = f.clone();
        } else {
            out.lnz = f.clone();
        }
        Ok(out)
    }

    /// Adds `c·Z_μ^p Z̄_μ^q`. Terms above the order are dropped; exponents
    /// below the depth bound are an internal error.
    pub fn insert(&mut self, p: i32, q: i32, c: &PiGaussCoeff) -> Result<()> {
        if p + q > self.order as i32 {
            return Ok(());
        }
        let d = self.depth as i32;
        if p < -d || q < -d {
            return Err(Error::Internal(format!("Laurent exponent ({p}, {q}) below depth bound {d}")));
        }
        lattice_add(&mut self.laurent, (p, q), c);
        Ok(())
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn mu(&self) -> &Mu {
        &self.mu
    }

    /// Laurent depth bound `P`: exponents are at least `−P`.
    pub fn depth(&self) -> u32 {
        self.depth
    }

    /// Set for germs from the mixed-invariant expansion: only coefficients
    /// with both exponents at most this value are exact.
    pub fn window(&self) -> Option<u32> {
        self.window
    }

    pub fn laurent_coeff(&self, p: i32, q: i32) -> PiGaussCoeff {
        self.laurent.get(&(p, q)).cloned().unwrap_or_default()
    }

    pub fn laurent_terms(&self) -> impl Iterator<Item = ((i32, i32), &PiGaussCoeff)> {
        self.laurent.iter().map(|(k, c)| (*k, c))
    }

    pub fn lnz(&self) -> &SmoothJet {
        &self.lnz
    }

    pub fn lnzbar(&self) -> &SmoothJet {
        &self.lnzbar
    }

    fn compatible(&self, other: &LogLaurentGerm) -> Result<()> {
        if self.order != other.order {
            return Err(Error::OrderMismatch(self.order, other.order));
        }
        if self.mu != other.mu || self.window != other.window {
            return Err(Error::MuMismatch(format!("germ bases {} and {}", self.mu, other.mu)));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &LogLaurentGerm) -> Result<Self> {
        self.compatible(other)?;
        let mut out = self.clone();
        out.depth = self.depth.max(other.depth);
        for (k, c) in &other.laurent {
            lattice_add(&mut out.laurent, *k, c);
        }
        out.lnz = &out.lnz + &other.lnz;
        out.lnzbar = &out.lnzbar + &other.lnzbar;
        Ok(out)
    }

    pub fn checked_sub(&self, other: &LogLaurentGerm) -> Result<Self> {
        self.checked_add(&other.scale(&PiGaussCoeff::int(-1)))
    }

    pub fn scale(&self, c: &PiGaussCoeff) -> Self {
        let mut out = self.clone();
        out.laurent = Lattice::new();
        for (k, v) in &self.laurent {
            lattice_add(&mut out.laurent, *k, &(v * c));
        }
        out.lnz = self.lnz.scale(c);
        out.lnzbar = self.lnzbar.scale(c);
        out
    }

    /// Complex conjugate germ.
    pub fn conj(&self) -> Self {
        let mut out = self.clone();
        out.laurent = self.laurent.iter().map(|((p, q), c)| ((*q, *p), c.conj())).collect();
        out.lnz = self.lnzbar.conj();
        out.lnzbar = self.lnz.conj();
        out
    }

    pub fn is_real(&self) -> bool {
        *self == self.conj()
    }

    fn restrict_to_window(&mut self) {
        if let Some(w) = self.window {
            let w = w as i32;
            self.laurent.retain(|(p, q), _| *p <= w && *q <= w);
        }
    }

    /// `(f − conj f)/(2i)`.
    pub fn im(&self) -> Self {
        let mut out = self.checked_sub(&self.conj()).expect("same shape").scale(&minus_half_i());
        out.restrict_to_window();
        out
    }

    pub fn singular_part(&self) -> SingularPart {
        let w = self.window.map(|w| w as i32).unwrap_or(i32::MAX);
        SingularPart {
            order: self.order,
            mu: self.mu.clone(),
            neg_terms: self
                .laurent
                .iter()
                .filter(|((p, q), _)| (*p < 0 || *q < 0) && *p <= w && *q <= w)
                .map(|(k, c)| (*k, c.clone()))
                .collect(),
            lnz: self.lnz.clone(),
            lnzbar: self.lnzbar.clone(),
        }
    }

    pub fn is_smooth(&self) -> bool {
        self.singular_part().is_empty()
    }

    /// The nonnegative-exponent terms as a jet in the `Z_μ` basis.
    pub fn smooth_part(&self) -> SmoothJet {
        SmoothJet::from_terms(
            self.order,
            Basis::zmu(&self.mu),
            self.laurent
                .iter()
                .filter(|((p, q), _)| *p >= 0 && *q >= 0)
                .map(|((p, q), c)| ((*p as u32, *q as u32), c.clone())),
        )
    }
}

impl fmt::Debug for LogLaurentGerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LogLaurentGerm(mu = {}, order {}) {{", self.mu, self.order)?;
        for ((p, q), c) in &self.laurent {
            write!(f, " ({p},{q}): {c};")?;
        }
        write!(f, " lnz: {}; lnzbar: {} }}", self.lnz, self.lnzbar)
    }
}

#[derive(Serialize, Deserialize)]
struct LatticeTermWire {
    p: i32,
    q: i32,
    coeff: PiGaussCoeff,
}

#[derive(Serialize)]
struct GermWire<'a> {
    order: u32,
    mu: &'a Mu,
    #[serde(skip_serializing_if = "Option::is_none")]
    window: Option<u32>,
    laurent: Vec<LatticeTermWire>,
    lnz: &'a SmoothJet,
    lnzbar: &'a SmoothJet,
}

fn lattice_wire(map: &Lattice) -> Vec<LatticeTermWire> {
    map.iter().map(|((p, q), c)| LatticeTermWire { p: *p, q: *q, coeff: c.clone() }).collect()
}

impl Serialize for LogLaurentGerm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GermWire {
            order: self.order,
            mu: &self.mu,
            window: self.window,
            laurent: lattice_wire(&self.laurent),
            lnz: &self.lnz,
            lnzbar: &self.lnzbar,
        }
        .serialize(s)
    }
}

/// Negative-exponent terms and log coefficients of a germ.
#[derive(Clone, PartialEq, Eq)]
pub struct SingularPart {
    order: u32,
    mu: Mu,
    neg_terms: Lattice,
    lnz: SmoothJet,
    lnzbar: SmoothJet,
}

impl SingularPart {
    pub fn empty(order: u32, mu: &Mu) -> Self {
        LogLaurentGerm::zero(order, mu).singular_part()
    }

    pub fn is_empty(&self) -> bool {
        self.neg_terms.is_empty() && self.lnz.is_zero() && self.lnzbar.is_zero()
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn mu(&self) -> &Mu {
        &self.mu
    }

    pub fn coeff(&self, p: i32, q: i32) -> PiGaussCoeff {
        self.neg_terms.get(&(p, q)).cloned().unwrap_or_default()
    }

    pub fn neg_terms(&self) -> impl Iterator<Item = ((i32, i32), &PiGaussCoeff)> {
        self.neg_terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn lnz(&self) -> &SmoothJet {
        &self.lnz
    }

    pub fn lnzbar(&self) -> &SmoothJet {
        &self.lnzbar
    }
}

impl fmt::Debug for SingularPart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SingularPart {{")?;
        for ((p, q), c) in &self.neg_terms {
            write!(f, " ({p},{q}): {c};")?;
        }
        write!(f, " lnz: {}; lnzbar: {} }}", self.lnz, self.lnzbar)
    }
}

#[derive(Serialize)]
struct SingularWire<'a> {
    order: u32,
    mu: &'a Mu,
    neg_terms: Vec<LatticeTermWire>,
    lnz: &'a SmoothJet,
    lnzbar: &'a SmoothJet,
}

impl Serialize for SingularPart {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SingularWire {
            order: self.order,
            mu: &self.mu,
            neg_terms: lattice_wire(&self.neg_terms),
            lnz: &self.lnz,
            lnzbar: &self.lnzbar,
        }
        .serialize(s)
    }
}

/// Complex form of `g` in the `Z_μ` basis, checked to have linear part
/// exactly `Z_μ`.
pub fn complex_form_checked(g: &PlaneJet, mu: &Mu) -> Result<SmoothJet> {
    let gc = g.complex_form_in(mu);
    let ok = gc.constant_term().is_zero() && gc.coeff(1, 0).is_one() && gc.coeff(0, 1).is_zero();
    if !ok {
        return Err(Error::MuMismatch(format!(
            "linear part of G_C in the Z_mu basis for mu = {mu} is {} Z_mu + {} conj(Z_mu)",
            gc.coeff(1, 0),
            gc.coeff(0, 1)
        )));
    }
    Ok(gc)
}

/// Jet of `G ln G` in the `Z_μ` basis. The `l`-th term has total degree at
/// least `l + 2`, so `1 ≤ l ≤ N − 2` is exhaustive at order `N`.
pub fn expand_g_ln_g(g: &PlaneJet, mu: &Mu, series: LogSeries) -> Result<LogLaurentGerm> {
    let n = g.order();
    let gc = complex_form_checked(g, mu)?;
    let zmu = SmoothJet::monomial(n, Basis::zmu(mu), 1, 0, PiGaussCoeff::one());
    let r = &gc - &zmu;
    let mut out = LogLaurentGerm::zero(n, mu);
    if series == LogSeries::Exact {
        for ((p, q), c) in r.terms() {
            out.insert(p as i32, q as i32, c)?;
        }
    }
    for l in 1..=n.saturating_sub(2) {
        // Factors of a degree-(N+l) term of R^{l+1} have degree at most N,
        // so treating the jet as a polynomial is exact here.
        let power = r.with_order(n + l).pow(l + 1);
        let c = PiGaussCoeff::from_rational(series.coefficient(l));
        for ((p, q), v) in power.terms() {
            out.insert(p as i32 - l as i32, q as i32, &(v * &c))?;
        }
    }
    out.lnz = gc;
    Ok(out)
}

/// `Im(G ln G − G)` for one map.
pub fn im_g_ln_g_minus_g(g: &PlaneJet, mu: &Mu, series: LogSeries) -> Result<LogLaurentGerm> {
    let e = expand_g_ln_g(g, mu, series)?;
    let gc = LogLaurentGerm::from_smooth(e.lnz(), mu)?;
    Ok(e.checked_sub(&gc)?.im())
}

fn tuple_sum(tuple: &[PlaneJet], mu: &Mu, series: LogSeries) -> Result<LogLaurentGerm> {
    let order = tuple.first().map(PlaneJet::order).ok_or_else(|| Error::Precondition("empty tuple".into()))?;
    let mut acc = LogLaurentGerm::zero(order, mu);
    for g in tuple {
        if g.order() != order {
            return Err(Error::OrderMismatch(order, g.order()));
        }
        acc = acc.checked_add(&im_g_ln_g_minus_g(g, mu, series)?)?;
    }
    Ok(acc)
}

/// `Σ Im(G'_j ln G'_j − G'_j) − Σ Im(G_j ln G_j − G_j)` as a germ.
pub fn admissibility_germ(
    tuple: &[PlaneJet],
    tuple_prime: &[PlaneJet],
    mu: &Mu,
    series: LogSeries,
) -> Result<LogLaurentGerm> {
    if tuple.len() != tuple_prime.len() {
        return Err(Error::LengthMismatch(tuple.len(), tuple_prime.len()));
    }
    tuple_sum(tuple_prime, mu, series)?.checked_sub(&tuple_sum(tuple, mu, series)?)
}

/// Singular part of [`admissibility_germ`]; empty iff the tuples are affine
/// admissible at the order of the jets.
pub fn admissibility_difference(
    tuple: &[PlaneJet],
    tuple_prime: &[PlaneJet],
    mu: &Mu,
    series: LogSeries,
) -> Result<SingularPart> {
    Ok(admissibility_germ(tuple, tuple_prime, mu, series)?.singular_part())
}

fn binomial_neg(l: u32, k: u32) -> Rational {
    // binom(−l, k) = (−1)^k binom(l + k − 1, k)
    let mut b = Rational::one();
    for t in 0..k {
        b = b * Rational::frac((l + t) as i64, (t + 1) as i64);
    }
    if k % 2 == 1 {
        -b
    } else {
        b
    }
}

/// Experimental: `G ln G` in the plain `Z` basis for a map whose linear part
/// `aZ + bZ̄` need not match a common μ.
///
/// Uses `ln(aZ + bZ̄) = ln Z + ln a + Σ_k (−1)^{k−1} γ^k/k (Z̄/Z)^k` and
/// `(aZ + bZ̄)^{-l} = a^{-l} Z^{-l} Σ_k binom(−l, k) γ^k (Z̄/Z)^k` with
/// `γ = b/a`, keeping powers of `Z̄` up to `window`. Coefficients with both
/// exponents at most `window` are exact; the smooth constant `G ln a` is
/// omitted, so only the singular part is meaningful.
pub fn expand_g_ln_g_mixed(g: &PlaneJet, window: u32, series: LogSeries) -> Result<LogLaurentGerm> {
    let n = g.order();
    let gc = g.complex_form();
    let a = gc.coeff(1, 0).as_gauss().filter(|a| !a.is_zero());
    let b = gc.coeff(0, 1).as_gauss();
    let (Some(a), Some(b)) = (a, b) else {
        return Err(Error::MuMismatch("linear part must be π-free with nonzero Z coefficient".into()));
    };
    if b.norm_sqr() >= a.norm_sqr() {
        return Err(Error::MuMismatch("linear part is not orientation preserving".into()));
    }
    let gamma = b.checked_div(&a)?;
    let depth = n.saturating_sub(2) + window;
    let mu0 = Mu::zero();
    let mut out = LogLaurentGerm::with_depth(n, &mu0, depth, Some(window));
    let lin = SmoothJet::from_terms(n, Basis::Z, [((1, 0), a.clone().into()), ((0, 1), b.into())]);
    let r = &gc - &lin;
    for k in 1..=window {
        let sign = if k % 2 == 1 { 1 } else { -1 };
        let ck = PiGaussCoeff::from_gauss(gamma.pow(k).scale(&Rational::frac(sign, k as i64)));
        for ((p, q), v) in gc.terms() {
            if q + k <= window {
                out.insert(p as i32 - k as i32, (q + k) as i32, &(v * &ck))?;
            }
        }
    }
    if series == LogSeries::Exact {
        for ((p, q), c) in r.terms() {
            out.insert(p as i32, q as i32, c)?;
        }
    }
    let ainv = a.inv()?;
    for l in 1..=n.saturating_sub(2) {
        let power = r.with_order(n + l).pow(l + 1);
        let cl = GaussRational::real(series.coefficient(l)) * ainv.pow(l);
        for k in 0..=window {
            let ck = PiGaussCoeff::from_gauss(&cl * &gamma.pow(k).scale(&binomial_neg(l, k)));
            for ((p, q), v) in power.terms() {
                if q + k <= window {
                    out.insert(p as i32 - (l + k) as i32, (q + k) as i32, &(v * &ck))?;
                }
            }
        }
    }
    out.lnz = gc;
    Ok(out)
}

/// Experimental admissibility difference for tuples without a common
/// first-order invariant, exact on the exponent window `[·, window]²`.
pub fn admissibility_difference_mixed(
    tuple: &[PlaneJet],
    tuple_prime: &[PlaneJet],
    window: u32,
    series: LogSeries,
) -> Result<SingularPart> {
    if tuple.len() != tuple_prime.len() {
        return Err(Error::LengthMismatch(tuple.len(), tuple_prime.len()));
    }
    let side = |t: &[PlaneJet]| -> Result<Option<LogLaurentGerm>> {
        let mut acc: Option<LogLaurentGerm> = None;
        for g in t {
            let e = expand_g_ln_g_mixed(g, window, series)?;
            let gc = LogLaurentGerm::from_smooth(e.lnz(), &Mu::zero())?;
            let mut gc = gc;
            gc.depth = e.depth;
            gc.window = e.window;
            let term = e.checked_sub(&gc)?.im();
            acc = Some(match acc {
                None => term,
                Some(a) => a.checked_add(&term)?,
            });
        }
        Ok(acc)
    };
    match (side(tuple_prime)?, side(tuple)?) {
        (Some(a), Some(b)) => Ok(a.checked_sub(&b)?.singular_part()),
        _ => Err(Error::Precondition("empty tuple".into())),
    }
}

/// Power sums `Σ_j c_j^{l+1}` for `l = 1..=m` (with `m` the number of values).
pub fn power_sums(cs: &[GaussRational]) -> Vec<GaussRational> {
    (1..=cs.len() as u32)
        .map(|l| cs.iter().fold(GaussRational::zero(), |acc, c| acc + c.pow(l + 1)))
        .collect()
}

/// True when every power sum `Σ_j c_j^{l+1}`, `1 ≤ l ≤ m`, vanishes. This
/// forces all `c_j = 0`: grouping equal values `d_k` with multiplicities
/// `n_k`, the sums read `V·diag(d_k²)·n = 0` for an invertible Vandermonde
/// matrix `V`.
pub fn power_sums_vanish(cs: &[GaussRational]) -> bool {
    power_sums(cs).iter().all(GaussRational::is_zero)
}
