//! Reverting abscissa-preserving jets and checking the result exactly.

use focaljet::{PiGaussCoeff, PlaneJet, SmoothJet, VPlusJet};

fn main() -> focaljet::Result<()> {
    let n = 5;
    // G = (X, Y + XY + X² + Y³)
    let g = VPlusJet::new(SmoothJet::xy_poly(n, &[((0, 1), (1, 1)), ((1, 1), (1, 1)), ((2, 0), (1, 1)), ((0, 3), (1, 1))]))?;
    let inv = g.revert()?;
    println!("G      = {g:?}");
    println!("G^-1   = {inv:?}");
    println!("G∘G^-1 is the identity: {}", g.group_compose(&inv)?.is_identity());

    // W = Z + Z Zbar is reverted to W − W Wbar + ... at order 2
    let zc = SmoothJet::z(2) + SmoothJet::zbar(2).checked_mul(&SmoothJet::z(2))?;
    let map = PlaneJet::from_complex_form(&zc)?;
    let back = map.revert()?.complex_form();
    println!("(Z + Z Zbar)^-1 in complex form = {back}");
    let expect = SmoothJet::z(2) - SmoothJet::monomial(2, focaljet::Basis::Z, 1, 1, PiGaussCoeff::one());
    assert_eq!(back, expect);
    Ok(())
}
