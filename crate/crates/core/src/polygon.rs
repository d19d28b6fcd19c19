//! Semitoric polygons with marked points and labels.
//!
//! Corners are classified from the primitive integer vectors `ξ₁`, `ξ₂`
//! along the two edges at a vertex. At vertex `v` of a counterclockwise
//! polygon, `ξ₁` points toward the next vertex and `ξ₂` toward the previous
//! one, so `det(ξ₁, ξ₂) > 0` for every convex corner. With the opposite
//! assignment no vertex on an upward ray could be fake or hidden for `s ≥ 1`.
//!
//! `T = [[1, 0], [1, 1]]` acts by `(x, y) ↦ (x, x + y)`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize};

use crate::affine::{label_equivalent, EquivalenceCertificate, Options};
use crate::coeff::{GaussRational, PiGaussCoeff, Rational};
use crate::error::{Error, Result};
use crate::jet::VPlusJet;
use crate::label::{Label, LabelKind, Violation};

pub type Point = [Rational; 2];
pub type IntVec = [BigInt; 2];

fn cross(a: &Point, b: &Point) -> Rational {
    &a[0] * &b[1] - &a[1] * &b[0]
}

fn sub(a: &Point, b: &Point) -> Point {
    [&a[0] - &b[0], &a[1] - &b[1]]
}

pub fn det(a: &IntVec, b: &IntVec) -> BigInt {
    &a[0] * &b[1] - &a[1] * &b[0]
}

/// `T^s ξ`.
pub fn shear(s: i64, xi: &IntVec) -> IntVec {
    [xi[0].clone(), &xi[1] + BigInt::from(s) * &xi[0]]
}

pub fn is_primitive(xi: &IntVec) -> bool {
    xi[0].gcd(&xi[1]).is_one()
}

/// The primitive integer vector positively proportional to a nonzero
/// rational vector.
pub fn primitive_direction(v: &Point) -> Result<IntVec> {
    if v[0].is_zero() && v[1].is_zero() {
        return Err(Error::InvalidPolygon("zero edge".into()));
    }
    let l = v[0].denom().lcm(v[1].denom());
    let ints: Vec<BigInt> = v.iter().map(|c| c.numer() * (&l / c.denom())).collect();
    let g = ints[0].gcd(&ints[1]);
    Ok([&ints[0] / &g, &ints[1] / &g])
}

fn big_as_string<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Corner {
    Delzant,
    SFake,
    SHidden,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CornerReport {
    #[serde(serialize_with = "big_as_string")]
    pub det: BigInt,
    #[serde(serialize_with = "big_as_string")]
    pub det_sheared: BigInt,
    pub s: u32,
    pub categories: BTreeSet<Corner>,
}

impl CornerReport {
    pub fn is_none(&self) -> bool {
        self.categories.is_empty()
    }
}

/// All categories the corner `(ξ₁, ξ₂)` satisfies for the given `s`; they
/// may overlap.
pub fn classify_corner(xi1: &IntVec, xi2: &IntVec, s: u32) -> Result<CornerReport> {
    for xi in [xi1, xi2] {
        if !is_primitive(xi) {
            return Err(Error::NonPrimitive(xi[0].clone(), xi[1].clone()));
        }
    }
    let d = det(xi1, xi2);
    let ds = det(xi1, &shear(s as i64, xi2));
    let mut categories = BTreeSet::new();
    if d.abs().is_one() {
        categories.insert(Corner::Delzant);
    }
    if ds.is_zero() {
        categories.insert(Corner::SFake);
    }
    if ds.abs().is_one() {
        categories.insert(Corner::SHidden);
    }
    Ok(CornerReport { det: d, det_sheared: ds, s, categories })
}

/// A compact strictly convex polygon, stored counterclockwise starting at
/// the lexicographically smallest vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Polygon {
    vertices: Vec<Point>,
}

impl Polygon {
    pub fn new(mut vertices: Vec<Point>) -> Result<Self> {
        let n = vertices.len();
        if n < 3 {
            return Err(Error::InvalidPolygon(format!("{n} vertices")));
        }
        for i in 0..n {
            let a = &vertices[i];
            let b = &vertices[(i + 1) % n];
            let c = &vertices[(i + 2) % n];
            if !cross(&sub(b, a), &sub(c, b)).is_positive() {
                return Err(Error::InvalidPolygon(format!(
                    "turn at vertex {} is not strictly counterclockwise",
                    (i + 1) % n
                )));
            }
        }
        // the winding number is 1 only if the edge angles sum to 2π; a
        // simple check is that exactly one vertex is lexicographically
        // smaller than both neighbours
        let start = (0..n).min_by(|&i, &j| vertices[i].cmp(&vertices[j])).unwrap();
        let locals = (0..n)
            .filter(|&i| vertices[i] < vertices[(i + 1) % n] && vertices[i] < vertices[(i + n - 1) % n])
            .count();
        if locals != 1 {
            return Err(Error::InvalidPolygon("boundary winds more than once".into()));
        }
        vertices.rotate_left(start);
        Ok(Polygon { vertices })
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// `(ξ₁, ξ₂)` at vertex `i`: toward the next and previous vertex.
    pub fn corner_vectors(&self, i: usize) -> (IntVec, IntVec) {
        let n = self.len();
        let v = &self.vertices[i];
        let next = primitive_direction(&sub(&self.vertices[(i + 1) % n], v)).expect("distinct vertices");
        let prev = primitive_direction(&sub(&self.vertices[(i + n - 1) % n], v)).expect("distinct vertices");
        (next, prev)
    }

    pub fn edge_directions(&self) -> Vec<IntVec> {
        (0..self.len()).map(|i| self.corner_vectors(i).0).collect()
    }

    pub fn contains_strictly(&self, p: &Point) -> bool {
        let n = self.len();
        (0..n).all(|i| cross(&sub(&self.vertices[(i + 1) % n], &self.vertices[i]), &sub(p, &self.vertices[i])).is_positive())
    }

    /// `(x, y) ↦ (x, kx + y + b)`.
    pub fn act(&self, k: i64, b: &Rational) -> Polygon {
        Polygon { vertices: self.vertices.iter().map(|p| act_point(p, k, b)).collect() }
    }
}

fn act_point(p: &Point, k: i64, b: &Rational) -> Point {
    [p[0].clone(), &(&Rational::int(k) * &p[0]) + &(&p[1] + b)]
}

impl<'de> Deserialize<'de> for Polygon {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Polygon::new(Vec::<Point>::deserialize(d)?).map_err(D::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MarkedPoint {
    pub c: Point,
    pub m: usize,
}

impl MarkedPoint {
    /// Whether `v` lies on the ray `{c¹} × [c², ∞)`.
    pub fn ray_contains(&self, v: &Point) -> bool {
        v[0] == self.c[0] && v[1] >= self.c[1]
    }
}

/// Polygon, marked points and one complete label per marked point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IngredientRep {
    #[serde(rename = "vertices")]
    pub polygon: Polygon,
    pub points: Vec<MarkedPoint>,
    pub labels: Vec<Label>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "violation", rename_all = "kebab-case")]
pub enum RepViolation {
    Order { i: usize },
    Multiplicity { i: usize, m: usize },
    LabelCount { points: usize, labels: usize },
    LabelMultiplicity { i: usize, point: usize, label: usize },
    LabelKind { i: usize },
    LabelRelations { i: usize, violations: Vec<Violation> },
    Interior { i: usize },
    ConstantTerm { i: usize, j: usize },
    Corner { vertex: usize, s: Option<u32>, report: CornerReport },
}

fn two_pi_times(r: &Rational) -> PiGaussCoeff {
    PiGaussCoeff::pi_pow(1, GaussRational::real(&Rational::int(2) * r))
}

impl IngredientRep {
    pub fn new(polygon: Polygon, points: Vec<MarkedPoint>, labels: Vec<Label>) -> Self {
        IngredientRep { polygon, points, labels }
    }

    /// `s_i`: total multiplicity of the marked points sharing `c_i`'s abscissa.
    pub fn s(&self, i: usize) -> usize {
        let x = &self.points[i].c[0];
        self.points.iter().filter(|p| &p.c[0] == x).map(|p| p.m).sum()
    }

    pub fn validate(&self) -> Vec<RepViolation> {
        let mut out = Vec::new();
        for i in 1..self.points.len() {
            if self.points[i - 1].c >= self.points[i].c {
                out.push(RepViolation::Order { i });
            }
        }
        for (i, p) in self.points.iter().enumerate() {
            if p.m == 0 {
                out.push(RepViolation::Multiplicity { i, m: 0 });
            }
            if !self.polygon.contains_strictly(&p.c) {
                out.push(RepViolation::Interior { i });
            }
        }
        if self.labels.len() != self.points.len() {
            out.push(RepViolation::LabelCount { points: self.points.len(), labels: self.labels.len() });
        }
        for (i, (p, l)) in self.points.iter().zip(&self.labels).enumerate() {
            if l.m() != p.m {
                out.push(RepViolation::LabelMultiplicity { i, point: p.m, label: l.m() });
            }
            if l.kind() != LabelKind::Complete {
                out.push(RepViolation::LabelKind { i });
            }
            let v = l.validate();
            if !v.is_empty() {
                out.push(RepViolation::LabelRelations { i, violations: v });
            }
            let want = two_pi_times(&p.c[1]);
            for j in 0..l.m() {
                if l.ts(j).constant_term() != want {
                    out.push(RepViolation::ConstantTerm { i, j });
                }
            }
        }
        for (vi, v) in self.polygon.vertices().iter().enumerate() {
            let (xi1, xi2) = self.polygon.corner_vectors(vi);
            let on_ray = self.points.iter().position(|p| p.ray_contains(v));
            let (s, ok) = match on_ray {
                Some(i) => {
                    let s = self.s(i) as u32;
                    let r = classify_corner(&xi1, &xi2, s).expect("primitive");
                    let ok = r.categories.contains(&Corner::SFake) || r.categories.contains(&Corner::SHidden);
                    (Some(s), (ok, r))
                }
                None => {
                    let r = classify_corner(&xi1, &xi2, 0).expect("primitive");
                    (None, (r.categories.contains(&Corner::Delzant), r))
                }
            };
            if !ok.0 {
                out.push(RepViolation::Corner { vertex: vi, s, report: ok.1 });
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// The `ℤ × ℝ` action: shear by `T^k`, translate by `(0, b)`. Labels at
    /// `c_i` gain `2π(kX + b + k c¹_i)`, which keeps the constant terms equal
    /// to `2π` times the new ordinate.
    pub fn act(&self, k: i64, b: &Rational) -> IngredientRep {
        let points: Vec<MarkedPoint> =
            self.points.iter().map(|p| MarkedPoint { c: act_point(&p.c, k, b), m: p.m }).collect();
        let labels = self
            .labels
            .iter()
            .zip(self.points.iter().map(Some).chain(std::iter::repeat(None)))
            .map(|(l, p)| {
                let shift = match p {
                    Some(p) => b + &(&Rational::int(k) * &p.c[0]),
                    None => b.clone(),
                };
                l.zr_shift(k, &shift)
            })
            .collect();
        IngredientRep { polygon: self.polygon.act(k, b), points, labels }
    }

    fn same_labels(&self, other: &IngredientRep) -> bool {
        self.labels.len() == other.labels.len() && self.labels.iter().zip(&other.labels).all(|(a, b)| a.same_class(b))
    }
}

pub fn zr_action_rep(rep: &IngredientRep, k: i64, b: &Rational) -> IngredientRep {
    rep.act(k, b)
}

/// The unique `(k, b)` carrying the polygon and marked points of `rep` onto
/// those of `rep_prime`, if any. Two vertices with distinct abscissae fix
/// `k` and `b` linearly.
pub fn geometry_witness(rep: &IngredientRep, rep_prime: &IngredientRep) -> Option<(i64, Rational)> {
    let (v, w) = (rep.polygon.vertices(), rep_prime.polygon.vertices());
    if v.len() != w.len() || rep.points.len() != rep_prime.points.len() {
        return None;
    }
    let i = (1..v.len()).find(|&i| v[i][0] != v[0][0])?;
    let d0 = &w[0][1] - &v[0][1];
    let di = &w[i][1] - &v[i][1];
    let k = (&di - &d0).checked_div(&(&v[i][0] - &v[0][0])).ok()?;
    if !k.is_integer() {
        return None;
    }
    let k_int: i64 = k.numer().try_into().ok()?;
    let b = &d0 - &(&k * &v[0][0]);
    let moved = rep.act(k_int, &b);
    (moved.polygon == rep_prime.polygon && moved.points == rep_prime.points).then_some((k_int, b))
}

/// `(k, b)` with `rep.act(k, b)` equal to `rep_prime` (labels compared up to
/// cyclic relabelling).
pub fn rep_orbit_equal(rep: &IngredientRep, rep_prime: &IngredientRep) -> Option<(i64, Rational)> {
    let (k, b) = geometry_witness(rep, rep_prime)?;
    rep.act(k, &b).same_labels(rep_prime).then_some((k, b))
}

#[derive(Clone, Debug, Serialize)]
pub struct RepEquivalence {
    pub verdict: bool,
    pub order: u32,
    /// The `ℤ × ℝ` element applied to the first representative.
    pub orbit: Option<(i64, Rational)>,
    pub certificates: Vec<EquivalenceCertificate>,
}

/// Nodewise affine equivalence via `node_jets[i]` at marked point `i`, after
/// aligning the geometry with the `ℤ × ℝ` action. A single jet is used at
/// every node.
pub fn rep_affine_equivalent(
    rep: &IngredientRep,
    rep_prime: &IngredientRep,
    node_jets: &[VPlusJet],
    opts: &Options,
) -> Result<RepEquivalence> {
    for (name, r) in [("first", rep), ("second", rep_prime)] {
        let v = r.validate();
        if !v.is_empty() {
            return Err(Error::Precondition(format!("{name} representative is invalid: {v:?}")));
        }
    }
    let n = rep.points.len();
    if node_jets.len() != 1 && node_jets.len() != n {
        return Err(Error::LengthMismatch(n, node_jets.len()));
    }
    let order = rep.labels.first().map(|l| l.order()).or(node_jets.first().map(|g| g.order())).unwrap_or(0);
    let Some((k, b)) = geometry_witness(rep, rep_prime) else {
        return Ok(RepEquivalence { verdict: false, order, orbit: None, certificates: Vec::new() });
    };
    let moved = rep.act(k, &b);
    let mut certificates = Vec::with_capacity(n);
    for i in 0..n {
        let g = &node_jets[if node_jets.len() == 1 { 0 } else { i }];
        certificates.push(label_equivalent(&moved.labels[i], &rep_prime.labels[i], g, opts)?);
    }
    let verdict = certificates.iter().all(|c| c.verdict);
    Ok(RepEquivalence { verdict, order, orbit: Some((k, b)), certificates })
}
