//! First-order invariants and liftability in the Z_mu coordinates.

use focaljet::affine::{first_order_invariant, lift_report};
use focaljet::{Basis, PiGaussCoeff, PlaneJet, SmoothJet, VPlusJet};

fn main() -> focaljet::Result<()> {
    let n = 4;
    let g = VPlusJet::new(SmoothJet::xy_poly(n, &[((0, 1), (3, 1)), ((2, 0), (1, 1)), ((0, 2), (1, 1))]))?;
    let mu = first_order_invariant(g.plane())?;
    println!("G = {g:?}");
    println!("mu = {mu}");
    let r = lift_report(g.plane(), &mu)?;
    println!("liftable: {}, holomorphic: {}, failing Zbar^q: {:?}", r.liftable, r.holomorphic, r.failing_coeffs);

    for (name, p, q) in [("Z + Z²", 2, 0), ("Z + Z Zbar", 1, 1), ("Z + Zbar²", 0, 2)] {
        let gc = SmoothJet::z(n) + SmoothJet::monomial(n, Basis::Z, p, q, PiGaussCoeff::one());
        let r = lift_report(&PlaneJet::from_complex_form(&gc)?, &focaljet::Mu::zero())?;
        println!("{name:12} liftable: {:5} holomorphic: {:5} failing: {:?}", r.liftable, r.holomorphic, r.failing_coeffs);
    }
    Ok(())
}
