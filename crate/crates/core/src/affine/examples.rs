use serde::Serialize;

use super::{label_equivalent, synthesize_equivalent, synthesize_seed, Options};
use crate::coeff::{GaussRational, PiGaussCoeff, Rational};
use crate::error::{Error, Result};
use crate::germ::LogSeries;
use crate::jet::{Basis, Mu, PlaneJet, SmoothJet, VPlusJet};
use crate::label::{check_permutation, is_cyclic_shift, Label};

/// Two labels and the jet `G` that mediates their equivalence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LabelPair {
    pub l: Label,
    pub l_prime: Label,
    #[serde(rename = "G")]
    pub g: VPlusJet,
}

fn default_chain(m: usize, order: u32) -> Vec<SmoothJet> {
    (0..m - 1)
        .map(|j| {
            let j = j as i64 + 1;
            SmoothJet::xy_poly(order, &[((0, 1), (1, 1)), ((1, 1), (j, 1)), ((0, 2), (1, j + 1)), ((2, 1), (j * j, 1))])
        })
        .collect()
}

fn default_seed(order: u32) -> SmoothJet {
    SmoothJet::xy_poly(order, &[((1, 0), (1, 1)), ((0, 2), (1, 1)), ((1, 2), (1, 2)), ((0, 3), (-1, 3))])
}

/// `ℓ` generated by `chain` and `seed` (defaults when `None`) and its
/// relabelling `ℓ' = σ·ℓ`, equivalent via the identity.
pub fn permutation_example(
    m: usize,
    sigma: &[usize],
    chain: Option<Vec<SmoothJet>>,
    seed: Option<SmoothJet>,
    order: u32,
) -> Result<LabelPair> {
    if m < 3 {
        return Err(Error::Precondition(format!("permutation example needs m >= 3, got {m}")));
    }
    check_permutation(sigma, m)?;
    if is_cyclic_shift(sigma) {
        return Err(Error::Precondition(format!("{sigma:?} is a cyclic shift")));
    }
    let chain = chain.unwrap_or_else(|| default_chain(m, order));
    let seed = seed.unwrap_or_else(|| default_seed(order));
    let l = Label::generate(&chain, &seed)?;
    let l_prime = l.zm_reindex(sigma)?;
    if l.same_class(&l_prime) {
        return Err(Error::Precondition("the chain is too symmetric: relabelling gives the same class".into()));
    }
    Ok(LabelPair { l, l_prime, g: VPlusJet::identity(order) })
}

/// Labels with tuples `(id, G'_0 + G'_1 − id)` and `(G'_0, G'_1)` for
/// liftable `G'_j` with identity linear part; `ℓ'` is synthesized.
pub fn liftable_pair_example(g0: &VPlusJet, g1: &VPlusJet, seed: &SmoothJet, series: LogSeries) -> Result<LabelPair> {
    let n = seed.order();
    for (name, g) in [("G'_0", g0), ("G'_1", g1)] {
        if g.order() != n {
            return Err(Error::OrderMismatch(n, g.order()));
        }
        let mu = super::first_order_invariant(g.plane())?;
        if !mu.is_zero() {
            return Err(Error::Precondition(format!("{name} has first-order invariant {mu}, expected 0")));
        }
        let rep = super::lift_report(g.plane(), &mu)?;
        if !rep.liftable {
            return Err(Error::Precondition(format!("{name} is not liftable: {:?}", rep.failing_coeffs)));
        }
    }
    let id = VPlusJet::identity(n);
    let sum = g0.plane().checked_add(g1.plane())?.checked_sub(id.plane())?;
    let g_sum = VPlusJet::from_plane(&sum)?;
    let l = Label::from_row(&[id, g_sum], seed)?;
    let l_prime = synthesize_equivalent(&l, &[g0.clone(), g1.clone()], g0, series)?;
    if l.same_class(&l_prime) {
        return Err(Error::Precondition("the choice of G'_0, G'_1 reproduces the same label".into()));
    }
    Ok(LabelPair { l, l_prime, g: g0.clone() })
}

/// The `m = 2` family `G_C = (Z, Z + (a+b)ZZ̄)`, `G'_C = (Z + aZZ̄, Z + bZZ̄)`
/// with `ts_0 = 0`.
#[derive(Clone, Debug, Serialize)]
pub struct ConcreteExample {
    pub a: GaussRational,
    pub b: GaussRational,
    pub order: u32,
    pub tuple: Vec<PlaneJet>,
    pub tuple_prime: Vec<PlaneJet>,
    pub ts0: SmoothJet,
    pub ts0_prime: SmoothJet,
    /// The complete tuples satisfy the equivalence identity exactly.
    pub tuples_equivalent: bool,
    /// Label-level pair; only for purely imaginary `a`, `b`, where the maps
    /// preserve the abscissa.
    pub labels: Option<LabelPair>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

fn z_plus_c_z_zbar(order: u32, c: &GaussRational) -> Result<PlaneJet> {
    let gc = &SmoothJet::z(order) + &SmoothJet::monomial(order, Basis::Z, 1, 1, PiGaussCoeff::from_gauss(c.clone()));
    PlaneJet::from_complex_form(&gc)
}

pub fn concrete_example(a: &GaussRational, b: &GaussRational, order: u32, series: LogSeries) -> Result<ConcreteExample> {
    let ab = a + b;
    if a.is_zero() || b.is_zero() || ab.is_zero() {
        return Err(Error::Precondition("need ab(a+b) != 0".into()));
    }
    let tuple = vec![PlaneJet::identity(order), z_plus_c_z_zbar(order, &ab)?];
    let tuple_prime = vec![z_plus_c_z_zbar(order, a)?, z_plus_c_z_zbar(order, b)?];
    let ts0 = SmoothJet::zero(order, Basis::XY);
    let ts0_prime = synthesize_seed(&tuple, &tuple_prime, &ts0, series)?;
    let residual = super::equivalence_residual(&tuple, &ts0, &tuple_prime, &ts0_prime, &Mu::zero(), series)?;
    let tuples_equivalent = residual.laurent_terms().next().is_none() && residual.lnz().is_zero() && residual.lnzbar().is_zero();
    let imaginary = a.re == Rational::zero() && b.re == Rational::zero();
    let (labels, note) = if imaginary {
        let v = |m: &PlaneJet| VPlusJet::from_plane(m);
        let (g0, g1, gs) = (v(&tuple_prime[0])?, v(&tuple_prime[1])?, v(&tuple[1])?);
        let l = Label::from_row(&[VPlusJet::identity(order), gs], &ts0)?;
        let l_prime = synthesize_equivalent(&l, &[g0.clone(), g1], &g0, series)?;
        let cert = label_equivalent(&l, &l_prime, &g0, &Options { series, mixed_window: None })?;
        if !cert.verdict {
            return Err(Error::Internal("synthesized label failed certification".into()));
        }
        (Some(LabelPair { l, l_prime, g: g0 }), None)
    } else {
        (None, Some("a or b has a nonzero real part: the maps move the abscissa, so only the tuple-level data exist".into()))
    };
    Ok(ConcreteExample { a: a.clone(), b: b.clone(), order, tuple, tuple_prime, ts0, ts0_prime, tuples_equivalent, labels, note })
}
