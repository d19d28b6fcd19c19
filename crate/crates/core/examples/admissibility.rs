//! Affine admissibility of tuples with a common first-order invariant.

use focaljet::affine::{affine_admissible, Options};
use focaljet::{Basis, GaussRational, Mu, PiGaussCoeff, PlaneJet, Rational, SmoothJet};

fn liftable(n: u32, mu: &Mu, c: (i64, i64)) -> focaljet::Result<PlaneJet> {
    let basis = Basis::zmu(mu);
    let gc = SmoothJet::monomial(n, basis.clone(), 1, 0, PiGaussCoeff::one())
        + SmoothJet::monomial(n, basis, 1, 1, PiGaussCoeff::from_gauss(GaussRational::new(Rational::zero(), Rational::frac(c.0, c.1))));
    PlaneJet::from_complex_form(&gc.to_basis(&Basis::Z))
}

fn main() -> focaljet::Result<()> {
    let n = 5;
    let mu = Mu::new(GaussRational::real(Rational::frac(1, 2)))?;
    let (a, b, c) = (liftable(n, &mu, (1, 1))?, liftable(n, &mu, (2, 1))?, liftable(n, &mu, (3, 2))?);
    let opts = Options::default();
    let same_sum = affine_admissible(&[a.clone(), b.clone()], &[c.clone(), c.clone()], Some(&mu), &opts)?;
    println!("equal sums: admissible = {}, route = {:?}", same_sum.admissible, same_sum.route);
    let other = affine_admissible(&[a.clone(), b], &[a.clone(), a], Some(&mu), &opts)?;
    println!("unequal sums: admissible = {}", other.admissible);
    println!("ln Z coefficient of the difference: {}", other.witness.lnz());
    Ok(())
}
