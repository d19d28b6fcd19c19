//! Focus-focus labels.
//!
//! A label of multiplicity `m` is a list of series `s_j` (or `ts_j` with
//! constant terms for complete labels) and an `m × m` matrix of series
//! `g_{jℓ}` with positive `Y` coefficient, subject to
//!
//! 1. `s_j(X, Y) = s_ℓ(X, g_{jℓ}(X, Y))`,
//! 2. `g_{jj} = Y`,
//! 3. `g_{jp}(X, Y) = g_{ℓp}(X, g_{jℓ}(X, Y))`.
//!
//! Writing `G_{jℓ} = (X, g_{jℓ})`, relation 3 says `G_{jp} = G_{ℓp} ∘ G_{jℓ}`,
//! so a label is determined by its first row and `ts_0`. Labels are taken up
//! to cyclic relabelling of the indices; [`Label::same_class`] decides that.

use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::coeff::{GaussRational, PiGaussCoeff, Rational};
use crate::error::{Error, Result};
use crate::jet::{Basis, PlaneJet, SmoothJet, VPlusJet};

/// Complete labels keep constant terms and compare exactly; reduced labels
/// have no constant terms and compare modulo `2πℤ·X`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LabelKind {
    Complete,
    Reduced,
}

/// A failed label relation, with the offending indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "relation", rename_all = "kebab-case")]
pub enum Violation {
    /// `s_j ≠ s_ℓ(X, g_{jℓ})`.
    Transport { j: usize, l: usize },
    /// `g_{jj} ≠ Y`.
    Diagonal { j: usize },
    /// `g_{jp} ≠ g_{ℓp}(X, g_{jℓ})`.
    Cocycle { j: usize, l: usize, p: usize },
    /// `g_{jℓ}` lacks a positive π-free `Y` coefficient or has a constant term.
    NotPositive { j: usize, l: usize },
    /// A reduced label entry `s_j` with a constant term.
    ConstantTerm { j: usize },
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Label {
    kind: LabelKind,
    order: u32,
    ts: Vec<SmoothJet>,
    g: Vec<Vec<SmoothJet>>,
}

fn two_pi() -> PiGaussCoeff {
    PiGaussCoeff::pi_pow(1, GaussRational::from(2))
}

/// Reduces the real part of the π-coefficient of `X` into `[0, 2)`.
fn normalize_mod_2pi_x(s: &SmoothJet) -> SmoothJet {
    let c = s.coeff(1, 0).pi_coeff(1).re;
    let r = c.rem_euclid(&Rational::int(2));
    let shift = &r - &c;
    if shift.is_zero() {
        return s.clone();
    }
    s + &SmoothJet::monomial(s.order(), Basis::XY, 1, 0, PiGaussCoeff::pi_pow(1, shift.into()))
}

/// `d ∈ 2πℤ·X`.
fn is_multiple_of_2pi_x(d: &SmoothJet) -> bool {
    if d.terms().any(|(k, _)| k != (1, 0)) {
        return false;
    }
    let c = d.coeff(1, 0);
    let Some((k, v)) = c.terms().next() else { return true };
    c.terms().count() == 1 && k == 1 && v.is_real() && v.re.is_integer() && v.re.numer() % 2 == 0.into()
}

impl Label {
    /// Checks shapes and reality; the relations are left to [`Label::validate`].
    pub fn new(kind: LabelKind, ts: Vec<SmoothJet>, g: Vec<Vec<SmoothJet>>) -> Result<Self> {
        let m = ts.len();
        if m == 0 {
            return Err(Error::Precondition("multiplicity must be at least 1".into()));
        }
        if g.len() != m || g.iter().any(|row| row.len() != m) {
            return Err(Error::Precondition(format!("g must be a {m}x{m} matrix")));
        }
        let order = ts[0].order();
        for f in ts.iter().chain(g.iter().flatten()) {
            f.expect_basis(&Basis::XY)?;
            if f.order() != order {
                return Err(Error::OrderMismatch(order, f.order()));
            }
            if !f.is_real() {
                return Err(Error::InvalidJet(format!("label entries must be real: {f}")));
            }
        }
        let ts = match kind {
            LabelKind::Complete => ts,
            LabelKind::Reduced => ts.iter().map(normalize_mod_2pi_x).collect(),
        };
        Ok(Label { kind, order, ts, g })
    }

    /// The complete label generated by `g_{j,j+1} = chain[j]` and `ts_0 = seed`.
    pub fn generate(chain: &[SmoothJet], seed: &SmoothJet) -> Result<Self> {
        let order = seed.order();
        let mut row = vec![VPlusJet::identity(order)];
        for (j, gj) in chain.iter().enumerate() {
            if gj.order() != order {
                return Err(Error::OrderMismatch(order, gj.order()));
            }
            let step = VPlusJet::new(gj.clone())
                .map_err(|e| Error::NotInvertible(format!("chain entry {j}: {e}")))?;
            let next = step.group_compose(&row[j])?;
            row.push(next);
        }
        Self::from_row(&row, seed)
    }

    /// The complete label with `G_{0j} = row[j]` (so `row[0]` must be the
    /// identity) and `ts_0 = seed`.
    pub fn from_row(row: &[VPlusJet], seed: &SmoothJet) -> Result<Self> {
        if !row.first().is_some_and(VPlusJet::is_identity) {
            return Err(Error::Precondition("G_00 must be the identity".into()));
        }
        let inv: Vec<VPlusJet> = row.iter().map(VPlusJet::revert).collect::<Result<_>>()?;
        let ts = inv.iter().map(|h| seed.compose(h)).collect::<Result<Vec<_>>>()?;
        let g = inv
            .iter()
            .map(|hj| row.iter().map(|gl| Ok(gl.group_compose(hj)?.g().clone())).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Label::new(LabelKind::Complete, ts, g)
    }

    /// The reduced label generated by `chain` and `s_0 = seed`.
    pub fn generate_reduced(chain: &[SmoothJet], seed: &SmoothJet) -> Result<Self> {
        Self::generate(chain, seed)?.reduce()
    }

    /// Drops constant terms and passes to the quotient by `2πℤ·X`.
    pub fn reduce(&self) -> Result<Self> {
        let ts = self
            .ts
            .iter()
            .map(|s| s - &SmoothJet::constant(self.order, Basis::XY, s.constant_term()))
            .collect();
        Label::new(LabelKind::Reduced, ts, self.g.clone())
    }

    /// `(chain, seed)` with `chain[j] = g_{j,j+1}` and `seed = ts_0`.
    pub fn extract_generators(&self) -> (Vec<SmoothJet>, SmoothJet) {
        let chain = (0..self.m() - 1).map(|j| self.g[j][j + 1].clone()).collect();
        (chain, self.ts[0].clone())
    }

    pub fn kind(&self) -> LabelKind {
        self.kind
    }

    pub fn m(&self) -> usize {
        self.ts.len()
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn ts(&self, j: usize) -> &SmoothJet {
        &self.ts[j]
    }

    pub fn ts_all(&self) -> &[SmoothJet] {
        &self.ts
    }

    pub fn g_all(&self) -> &[Vec<SmoothJet>] {
        &self.g
    }

    pub fn g(&self, j: usize, l: usize) -> &SmoothJet {
        &self.g[j][l]
    }

    /// `G_j = (X, g_{0j})` for `j ∈ ℤ_m`.
    pub fn tuple(&self) -> Result<Vec<VPlusJet>> {
        self.g[0].iter().map(|g| VPlusJet::new(g.clone())).collect()
    }

    pub fn truncate(&self, order: u32) -> Result<Self> {
        let ts = self.ts.iter().map(|f| f.truncate(order)).collect::<Result<_>>()?;
        let g = self
            .g
            .iter()
            .map(|row| row.iter().map(|f| f.truncate(order)).collect::<Result<_>>())
            .collect::<Result<_>>()?;
        Label::new(self.kind, ts, g)
    }

    fn map_of(&self, j: usize, l: usize) -> Result<PlaneJet> {
        PlaneJet::new(SmoothJet::x(self.order), self.g[j][l].clone())
    }

    /// All violated relations; empty iff the label is valid at its order.
    pub fn validate(&self) -> Vec<Violation> {
        let m = self.m();
        let mut out = Vec::new();
        for j in 0..m {
            if self.kind == LabelKind::Reduced && !self.ts[j].constant_term().is_zero() {
                out.push(Violation::ConstantTerm { j });
            }
        }
        let mut maps = vec![vec![None; m]; m];
        for j in 0..m {
            for l in 0..m {
                if VPlusJet::new(self.g[j][l].clone()).is_ok() {
                    maps[j][l] = self.map_of(j, l).ok();
                } else {
                    out.push(Violation::NotPositive { j, l });
                }
            }
        }
        for j in 0..m {
            if self.g[j][j] != SmoothJet::y(self.order) {
                out.push(Violation::Diagonal { j });
            }
        }
        for j in 0..m {
            for l in 0..m {
                let Some(gjl) = &maps[j][l] else { continue };
                let moved = self.ts[l].compose(gjl).expect("same order");
                let d = &self.ts[j] - &moved;
                let ok = match self.kind {
                    LabelKind::Complete => d.is_zero(),
                    LabelKind::Reduced => is_multiple_of_2pi_x(&d),
                };
                if !ok {
                    out.push(Violation::Transport { j, l });
                }
                for p in 0..m {
                    if self.g[l][p].compose(gjl).expect("same order") != self.g[j][p] {
                        out.push(Violation::Cocycle { j, l, p });
                    }
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// `s'_j = s_j(−X, Y) + kπX`, `g'_{jℓ} = g_{jℓ}(−X, Y)`.
    pub fn z2_action(&self, k: i64) -> Label {
        let kpx = SmoothJet::monomial(self.order, Basis::XY, 1, 0, PiGaussCoeff::pi_pow(1, k.into()));
        let reflect = |f: &SmoothJet| f.reflect_x().expect("XY basis");
        let ts = self.ts.iter().map(|s| &reflect(s) + &kpx).collect();
        let g = self.g.iter().map(|row| row.iter().map(reflect).collect()).collect();
        Label::new(self.kind, ts, g).expect("shape preserved")
    }

    /// `ts'_j = ts_{σ(j)}`, `g'_{jℓ} = g_{σ(j)σ(ℓ)}`.
    pub fn zm_reindex(&self, sigma: &[usize]) -> Result<Label> {
        check_permutation(sigma, self.m())?;
        let ts = sigma.iter().map(|&s| self.ts[s].clone()).collect();
        let g = sigma.iter().map(|&a| sigma.iter().map(|&b| self.g[a][b].clone()).collect()).collect();
        Label::new(self.kind, ts, g)
    }

    /// Relabelling `j ↦ j + r` (mod m).
    pub fn rotate(&self, r: usize) -> Label {
        let m = self.m();
        let sigma: Vec<usize> = (0..m).map(|j| (j + r) % m).collect();
        self.zm_reindex(&sigma).expect("rotation is a permutation")
    }

    /// Equality of the classes modulo cyclic relabelling.
    pub fn same_class(&self, other: &Label) -> bool {
        self.m() == other.m() && (0..self.m()).any(|r| &self.rotate(r) == other)
    }

    /// `ts_j ↦ ts_j + 2π(kX + b)`.
    pub fn zr_shift(&self, k: i64, b: &Rational) -> Label {
        let n = self.order;
        let shift = SmoothJet::from_terms(
            n,
            Basis::XY,
            [((1, 0), two_pi().scale_rational(&Rational::int(k))), ((0, 0), two_pi().scale_rational(b))],
        );
        let ts = self.ts.iter().map(|s| s + &shift).collect();
        Label::new(self.kind, ts, self.g.clone()).expect("shape preserved")
    }
}

pub fn check_permutation(sigma: &[usize], m: usize) -> Result<()> {
    let mut seen = vec![false; m];
    if sigma.len() != m {
        return Err(Error::Precondition(format!("permutation of length {} for m = {m}", sigma.len())));
    }
    for &s in sigma {
        if s >= m || std::mem::replace(&mut seen[s], true) {
            return Err(Error::Precondition(format!("{sigma:?} is not a permutation of 0..{m}")));
        }
    }
    Ok(())
}

/// True for the rotations `j ↦ j + r`, which leave the label class unchanged.
pub fn is_cyclic_shift(sigma: &[usize]) -> bool {
    let m = sigma.len();
    m == 0 || (0..m).all(|j| sigma[j] == (sigma[0] + j) % m)
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Label({:?}, m = {}, order {})", self.kind, self.m(), self.order)?;
        for (j, s) in self.ts.iter().enumerate() {
            writeln!(f, "  ts_{j} = {s}")?;
        }
        for (j, row) in self.g.iter().enumerate() {
            for (l, g) in row.iter().enumerate() {
                writeln!(f, "  g_{j}{l} = {g}")?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LabelWire {
    m: usize,
    order: u32,
    ts: Vec<SmoothJet>,
    g: Vec<Vec<SmoothJet>>,
    #[serde(rename = "mod2piX", default, skip_serializing_if = "std::ops::Not::not")]
    mod_2pi_x: bool,
}

impl Serialize for Label {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LabelWire {
            m: self.m(),
            order: self.order,
            ts: self.ts.clone(),
            g: self.g.clone(),
            mod_2pi_x: self.kind == LabelKind::Reduced,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Label {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = LabelWire::deserialize(d)?;
        if w.ts.len() != w.m {
            return Err(D::Error::custom("m differs from the number of ts entries"));
        }
        if w.ts.iter().any(|f| f.order() != w.order) {
            return Err(D::Error::custom("entry order differs from label order"));
        }
        let kind = if w.mod_2pi_x { LabelKind::Reduced } else { LabelKind::Complete };
        Label::new(kind, w.ts, w.g).map_err(D::Error::custom)
    }
}
