//! The Z×R action on representatives, orbit witnesses and nodewise
//! comparison.

use focaljet::affine::Options;
use focaljet::label::Label;
use focaljet::polygon::{rep_affine_equivalent, rep_orbit_equal, IngredientRep, MarkedPoint, Polygon};
use focaljet::{Basis, GaussRational, PiGaussCoeff, Rational, SmoothJet, VPlusJet};

fn main() -> focaljet::Result<()> {
    let n = 4;
    let p = |x: i64, y: i64| [Rational::int(x), Rational::int(y)];
    let polygon = Polygon::new(vec![p(0, 0), p(3, 0), p(3, 3), p(0, 3)])?;
    let constant = PiGaussCoeff::pi_pow(1, GaussRational::real(Rational::int(2)));
    let seed = SmoothJet::constant(n, Basis::XY, constant) + SmoothJet::xy_poly(n, &[((0, 2), (1, 1))]);
    let rep = IngredientRep::new(polygon, vec![MarkedPoint { c: p(1, 1), m: 1 }], vec![Label::generate(&[], &seed)?]);

    let moved = rep.act(2, &Rational::frac(1, 3));
    println!("sheared vertices: {:?}", moved.polygon.vertices());
    println!("valid after the action: {}", moved.is_valid());
    println!("witness: {:?}", rep_orbit_equal(&rep, &moved));

    let id = VPlusJet::identity(n);
    let r = rep_affine_equivalent(&rep, &moved, &[id], &Options::default())?;
    println!("affine equivalent after alignment: {} (orbit {:?})", r.verdict, r.orbit);
    Ok(())
}
