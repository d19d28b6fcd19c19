//! First-order invariants, liftability and affine equivalence.
//!
//! For a map jet `G` with complex form `G_C = αZ + βZ̄ + …` the first-order
//! invariant is `μ = β/ᾱ`. For abscissa-preserving jets the linear part of
//! `G_C` is then exactly `Z_μ`. `G` is μ-liftable when `G_C` has no pure
//! `Z̄_μ^q` terms and μ-holomorphic when it has no `Z̄_μ` at all.
//!
//! Two tuples `(G_j)`, `(G'_j)` are affine admissible when
//! `Σ Im(G'_j ln G'_j − G'_j) − Σ Im(G_j ln G_j − G_j)` is smooth. For
//! liftable tuples of a common μ this happens exactly when the tuple
//! sums agree; [`affine_admissible`] computes both criteria.

mod examples;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::germ::{self, LogLaurentGerm, LogSeries, SingularPart};
use crate::jet::{Basis, Mu, PlaneJet, SmoothJet, VPlusJet};
use crate::label::{Label, Violation};

pub use examples::{concrete_example, liftable_pair_example, permutation_example, ConcreteExample, LabelPair};

/// `μ = β/ᾱ` from the linear part `αZ + βZ̄` of `G_C`.
pub fn first_order_invariant(g: &PlaneJet) -> Result<Mu> {
    let gc = g.complex_form();
    let alpha = gc.coeff(1, 0).as_gauss().filter(|a| !a.is_zero());
    let beta = gc.coeff(0, 1).as_gauss();
    match (alpha, beta) {
        (Some(a), Some(b)) => Mu::new(b.checked_div(&a.conj())?),
        _ => Err(Error::InvalidJet("linear part must be π-free with nonzero Z coefficient".into())),
    }
}

/// The common first-order invariant of all maps, if there is one.
pub fn common_invariant<'a>(maps: impl IntoIterator<Item = &'a PlaneJet>) -> Result<Option<Mu>> {
    let mut out: Option<Mu> = None;
    for g in maps {
        let mu = first_order_invariant(g)?;
        match &out {
            None => out = Some(mu),
            Some(m) if *m != mu => return Ok(None),
            _ => {}
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiftReport {
    pub mu: Mu,
    pub order: u32,
    pub liftable: bool,
    pub holomorphic: bool,
    /// Exponents `q` with a nonzero `Z̄_μ^q` coefficient.
    pub failing_coeffs: Vec<u32>,
}

pub fn lift_report(g: &PlaneJet, mu: &Mu) -> Result<LiftReport> {
    let own = first_order_invariant(g)?;
    if own != *mu {
        return Err(Error::MuMismatch(format!("G has first-order invariant {own}, not {mu}")));
    }
    let gc = g.complex_form_in(mu);
    let failing_coeffs: Vec<u32> = gc.terms().filter(|((p, _), _)| *p == 0).map(|((_, q), _)| q).collect();
    let holomorphic = gc.terms().all(|((_, q), _)| q == 0);
    Ok(LiftReport { mu: mu.clone(), order: g.order(), liftable: failing_coeffs.is_empty(), holomorphic, failing_coeffs })
}

pub fn is_liftable(g: &PlaneJet, mu: &Mu) -> Result<bool> {
    Ok(lift_report(g, mu)?.liftable)
}

/// How an admissibility verdict was reached.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    /// Full expansion in the common `Z_μ` basis.
    CommonMu,
    /// Invariants differ and the tuple sums differ: the `ln Z` coefficient
    /// alone already rules out smoothness.
    LogTerm,
    /// Invariants differ: experimental windowed expansion in the `Z` basis.
    ExperimentalMixed,
}

/// The liftable-tuple criterion, computed when every `G_j` is liftable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SumCriterion {
    pub tuple_prime_liftable: bool,
    pub equal_sums: bool,
}

impl SumCriterion {
    pub fn admissible(&self) -> bool {
        self.tuple_prime_liftable && self.equal_sums
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdmissibilityVerdict {
    pub admissible: bool,
    pub order: u32,
    pub route: Route,
    pub witness: SingularPart,
    pub criterion: Option<SumCriterion>,
}

impl AdmissibilityVerdict {
    /// Both criteria agree (trivially true when the second was not computed).
    pub fn routes_agree(&self) -> bool {
        self.criterion.as_ref().map_or(true, |p| p.admissible() == self.admissible)
    }
}

/// Options shared by the admissibility and equivalence entry points.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Options {
    pub series: LogSeries,
    /// Enables the experimental mixed-invariant expansion with this `Z̄`
    /// window. Without it, tuples lacking a common invariant but with equal
    /// sums are rejected.
    pub mixed_window: Option<u32>,
}

fn sums_equal(tuple: &[PlaneJet], tuple_prime: &[PlaneJet]) -> Result<bool> {
    Ok(PlaneJet::sum(tuple)? == PlaneJet::sum(tuple_prime)?)
}

/// Decides affine admissibility at the order of the jets. `mu` is the common
/// first-order invariant; pass `None` to infer it.
pub fn affine_admissible(
    tuple: &[PlaneJet],
    tuple_prime: &[PlaneJet],
    mu: Option<&Mu>,
    opts: &Options,
) -> Result<AdmissibilityVerdict> {
    if tuple.len() != tuple_prime.len() {
        return Err(Error::LengthMismatch(tuple.len(), tuple_prime.len()));
    }
    let order = tuple.first().ok_or_else(|| Error::Precondition("empty tuple".into()))?.order();
    let common = common_invariant(tuple.iter().chain(tuple_prime))?;
    let mu = match (mu, common) {
        (Some(m), Some(c)) if *m != c => {
            return Err(Error::MuMismatch(format!("tuples have common invariant {c}, not {m}")))
        }
        (Some(m), None) => {
            return Err(Error::MuMismatch(format!("not every entry has first-order invariant {m}")))
        }
        (_, c) => c,
    };
    let Some(mu) = mu else {
        return mixed_admissible(tuple, tuple_prime, order, opts);
    };
    let witness = germ::admissibility_difference(tuple, tuple_prime, &mu, opts.series)?;
    let criterion = if tuple.iter().map(|g| is_liftable(g, &mu)).collect::<Result<Vec<_>>>()?.iter().all(|b| *b) {
        let lifts = tuple_prime.iter().map(|g| is_liftable(g, &mu)).collect::<Result<Vec<_>>>()?;
        Some(SumCriterion {
            tuple_prime_liftable: lifts.iter().all(|b| *b),
            equal_sums: sums_equal(tuple, tuple_prime)?,
        })
    } else {
        None
    };
    Ok(AdmissibilityVerdict { admissible: witness.is_empty(), order, route: Route::CommonMu, witness, criterion })
}

fn mixed_admissible(
    tuple: &[PlaneJet],
    tuple_prime: &[PlaneJet],
    order: u32,
    opts: &Options,
) -> Result<AdmissibilityVerdict> {
    if !sums_equal(tuple, tuple_prime)? {
        let d = (&PlaneJet::sum(tuple_prime)?.complex_form() - &PlaneJet::sum(tuple)?.complex_form()).to_basis(&Basis::Z);
        let witness = LogLaurentGerm::log_term(&d, &Mu::zero(), false)?.im().singular_part();
        return Ok(AdmissibilityVerdict { admissible: false, order, route: Route::LogTerm, witness, criterion: None });
    }
    let Some(window) = opts.mixed_window else {
        return Err(Error::MuMismatch(
            "entries have different first-order invariants; enable the experimental mixed mode".into(),
        ));
    };
    let witness = germ::admissibility_difference_mixed(tuple, tuple_prime, window, opts.series)?;
    Ok(AdmissibilityVerdict {
        admissible: witness.is_empty(),
        order,
        route: Route::ExperimentalMixed,
        witness,
        criterion: None,
    })
}

/// The smooth difference `D` of two admissible tuples as a real XY jet.
fn smooth_difference(tuple: &[PlaneJet], tuple_prime: &[PlaneJet], mu: &Mu, series: LogSeries) -> Result<SmoothJet> {
    let d = germ::admissibility_germ(tuple, tuple_prime, mu, series)?;
    if !d.is_smooth() {
        return Err(Error::NotAdmissible(d.order()));
    }
    let d = d.smooth_part().to_basis(&Basis::XY);
    if !d.is_real() {
        return Err(Error::Internal("smooth difference is not real".into()));
    }
    Ok(d)
}

/// The unique `S'_0` with `S'_0 ∘ G'_0 = S_0 + D`, where `D` is the smooth
/// difference of the two tuples.
pub fn correction_series(
    tuple: &[PlaneJet],
    tuple_prime: &[PlaneJet],
    s0: &SmoothJet,
    mu: &Mu,
    series: LogSeries,
) -> Result<SmoothJet> {
    let d = smooth_difference(tuple, tuple_prime, mu, series)?;
    let g0 = tuple_prime.first().ok_or_else(|| Error::Precondition("empty tuple".into()))?;
    s0.checked_add(&d)?.compose(&g0.revert()?)
}

/// `[−Σ Im(G ln G − G) + S_0] − [−Σ Im(G' ln G' − G') + S'_0 ∘ G'_0]`; zero
/// iff the complete tuples are affine equivalent at this order.
pub fn equivalence_residual(
    tuple: &[PlaneJet],
    s0: &SmoothJet,
    tuple_prime: &[PlaneJet],
    s0_prime: &SmoothJet,
    mu: &Mu,
    series: LogSeries,
) -> Result<LogLaurentGerm> {
    let d = germ::admissibility_germ(tuple, tuple_prime, mu, series)?;
    let g0 = tuple_prime.first().ok_or_else(|| Error::Precondition("empty tuple".into()))?;
    let lhs = s0_prime.compose(g0)?.checked_sub(s0)?.to_basis(&Basis::zmu(mu));
    d.checked_sub(&LogLaurentGerm::from_smooth(&lhs, mu)?)
}

/// Why a label pair failed to be equivalent at the tested order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Residual {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub multiplicity_mismatch: Option<(usize, usize)>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub invalid_labels: Vec<(String, Vec<Violation>)>,
    /// Nonempty singular part of the admissibility difference.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub singular: Option<SingularPart>,
    /// `(j, ts'_j − ts''_j)` for every index whose seed differs from the
    /// required one.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub seed_defects: Vec<(usize, SmoothJet)>,
}

impl Residual {
    pub fn is_empty(&self) -> bool {
        self.multiplicity_mismatch.is_none()
            && self.invalid_labels.is_empty()
            && self.singular.is_none()
            && self.seed_defects.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceCertificate {
    #[serde(rename = "G")]
    pub g: VPlusJet,
    pub order: u32,
    /// Cyclic relabellings `(r, r')` applied to `ℓ` and `ℓ'`.
    pub rotation: (usize, usize),
    /// The seeds `ts''_j` required of `ℓ'`, in its own indexing.
    pub corrections: Vec<SmoothJet>,
    pub residual: Residual,
    pub verdict: bool,
}

fn label_tuples(l: &Label, lp: &Label, g: &VPlusJet) -> Result<(Vec<PlaneJet>, Vec<PlaneJet>)> {
    let t = l.tuple()?.iter().map(|x| x.plane().clone()).collect();
    let tp = (0..lp.m())
        .map(|j| Ok(VPlusJet::new(lp.g(0, j).compose(g)?)?.plane().clone()))
        .collect::<Result<Vec<_>>>()?;
    Ok((t, tp))
}

fn certificate_for(l: &Label, lp: &Label, g: &VPlusJet, rotation: (usize, usize), opts: &Options) -> Result<EquivalenceCertificate> {
    let m = l.m();
    let order = l.order();
    let (t, tp) = label_tuples(l, lp, g)?;
    let verdict = affine_admissible(&t, &tp, None, opts)?;
    let mut residual = Residual::default();
    let mut corrections = Vec::new();
    if !verdict.admissible {
        residual.singular = Some(verdict.witness);
    } else if verdict.route == Route::CommonMu {
        let mu = verdict.witness.mu().clone();
        let s0p = correction_series(&t, &tp, l.ts(0), &mu, opts.series)?;
        let g_prime = |j: usize| VPlusJet::new(lp.g(0, j).clone());
        for j in 0..m {
            let required = s0p.compose(&g_prime(j)?.revert()?)?;
            let d = lp.ts(j) - &required;
            if !d.is_zero() {
                residual.seed_defects.push(((j + rotation.1) % m, d));
            }
            corrections.push(((j + rotation.1) % m, required));
        }
    } else {
        return Err(Error::MuMismatch("seed corrections need a common first-order invariant".into()));
    }
    corrections.sort_by_key(|(j, _)| *j);
    let verdict = residual.is_empty();
    Ok(EquivalenceCertificate {
        g: g.clone(),
        order,
        rotation,
        corrections: corrections.into_iter().map(|(_, c)| c).collect(),
        residual,
        verdict,
    })
}

/// Decides whether `ℓ` and `ℓ'` are affine equivalent via `G` at their order.
/// Labels are classes modulo cyclic relabelling, so all pairs of rotations
/// are tried; the first certificate with an empty residual is returned, and
/// otherwise the one for the unrotated labels.
pub fn label_equivalent(l: &Label, lp: &Label, g: &VPlusJet, opts: &Options) -> Result<EquivalenceCertificate> {
    let order = l.order();
    if lp.order() != order || g.order() != order {
        return Err(Error::OrderMismatch(order, if lp.order() != order { lp.order() } else { g.order() }));
    }
    if l.m() != lp.m() {
        return Ok(EquivalenceCertificate {
            g: g.clone(),
            order,
            rotation: (0, 0),
            corrections: vec![],
            residual: Residual { multiplicity_mismatch: Some((l.m(), lp.m())), ..Default::default() },
            verdict: false,
        });
    }
    let mut invalid = Vec::new();
    for (name, x) in [("l", l), ("l'", lp)] {
        let v = x.validate();
        if !v.is_empty() {
            invalid.push((name.to_string(), v));
        }
    }
    if !invalid.is_empty() {
        return Ok(EquivalenceCertificate {
            g: g.clone(),
            order,
            rotation: (0, 0),
            corrections: vec![],
            residual: Residual { invalid_labels: invalid, ..Default::default() },
            verdict: false,
        });
    }
    let m = l.m();
    let mut first = None;
    for r in 0..m {
        for rp in 0..m {
            let cert = certificate_for(&l.rotate(r), &lp.rotate(rp), g, (r, rp), opts)?;
            if cert.verdict {
                return Ok(cert);
            }
            first.get_or_insert(cert);
        }
    }
    Ok(first.expect("m >= 1"))
}

/// The seed `S'_0` of the equivalent tuple, after checking that the tuples
/// share (1) a common first-order invariant, (2) liftability and (3) sums.
pub fn synthesize_seed(tuple: &[PlaneJet], targets: &[PlaneJet], s0: &SmoothJet, series: LogSeries) -> Result<SmoothJet> {
    if tuple.len() != targets.len() {
        return Err(Error::LengthMismatch(tuple.len(), targets.len()));
    }
    let mut mu: Option<Mu> = None;
    for (j, (a, b)) in tuple.iter().zip(targets).enumerate() {
        let (ma, mb) = (first_order_invariant(a)?, first_order_invariant(b)?);
        if ma != mb {
            return Err(Error::Hypothesis { item: 1, detail: format!("index {j}: invariants {ma} and {mb} differ") });
        }
        match &mu {
            Some(m) if *m != ma => {
                return Err(Error::Hypothesis {
                    item: 1,
                    detail: format!("index {j}: invariant {ma} differs from {m}; only a common invariant is supported"),
                })
            }
            _ => mu = Some(ma),
        }
    }
    let mu = mu.ok_or_else(|| Error::Precondition("empty tuple".into()))?;
    for (j, (a, b)) in tuple.iter().zip(targets).enumerate() {
        for (name, x) in [("G", a), ("G'", b)] {
            let rep = lift_report(x, &mu)?;
            if !rep.liftable {
                return Err(Error::Hypothesis {
                    item: 2,
                    detail: format!("{name}_{j} is not liftable (Zbar^q coefficients for q in {:?})", rep.failing_coeffs),
                });
            }
        }
    }
    if !sums_equal(tuple, targets)? {
        return Err(Error::Hypothesis { item: 3, detail: "the tuples have different sums".into() });
    }
    correction_series(tuple, targets, s0, &mu, series)
}

/// The complete label with tuple `targets` that is affine equivalent to `ℓ`
/// via `G = targets[0]`.
pub fn synthesize_equivalent(l: &Label, targets: &[VPlusJet], g: &VPlusJet, series: LogSeries) -> Result<Label> {
    if targets.len() != l.m() {
        return Err(Error::LengthMismatch(l.m(), targets.len()));
    }
    if &targets[0] != g {
        return Err(Error::Precondition("the first target must equal the mediating jet G".into()));
    }
    let v = l.validate();
    if !v.is_empty() {
        return Err(Error::Precondition(format!("input label is invalid: {v:?}")));
    }
    let tuple: Vec<PlaneJet> = l.tuple()?.iter().map(|x| x.plane().clone()).collect();
    let tp: Vec<PlaneJet> = targets.iter().map(|x| x.plane().clone()).collect();
    let s0p = synthesize_seed(&tuple, &tp, l.ts(0), series)?;
    let ginv = g.revert()?;
    let row = targets.iter().map(|t| t.group_compose(&ginv)).collect::<Result<Vec<_>>>()?;
    Label::from_row(&row, &s0p)
}

#[cfg(test)]
mod tests;
