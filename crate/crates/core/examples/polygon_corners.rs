//! Corner categories and validation of an ingredient representative.

use focaljet::label::Label;
use focaljet::polygon::{classify_corner, IngredientRep, MarkedPoint, Polygon};
use focaljet::{Basis, GaussRational, PiGaussCoeff, Rational, SmoothJet};
use num_bigint::BigInt;

fn main() -> focaljet::Result<()> {
    let v = |a: i64, b: i64| [BigInt::from(a), BigInt::from(b)];
    for (x1, x2, s) in [(v(1, 0), v(0, 1), 0), (v(1, 1), v(-1, 0), 1), (v(1, 1), v(-1, 1), 1)] {
        let r = classify_corner(&x1, &x2, s)?;
        println!("{x1:?} {x2:?} s={s}: det {} det(ξ1, T^s ξ2) {} {:?}", r.det, r.det_sheared, r.categories);
    }

    let p = |x: i64, y: i64| [Rational::int(x), Rational::int(y)];
    let polygon = Polygon::new(vec![p(0, 0), p(2, 0), p(2, 1), p(1, 2), p(0, 1)])?;
    let n = 3;
    let c2 = Rational::one();
    let constant = PiGaussCoeff::pi_pow(1, GaussRational::real(&c2 * &Rational::int(2)));
    let label = Label::generate(&[], &(SmoothJet::constant(n, Basis::XY, constant) + SmoothJet::x(n)))?;
    let rep = IngredientRep::new(polygon, vec![MarkedPoint { c: [Rational::one(), c2], m: 1 }], vec![label]);
    for i in 0..rep.polygon.len() {
        let (x1, x2) = rep.polygon.corner_vectors(i);
        println!("vertex {:?}: ξ1 = {x1:?}, ξ2 = {x2:?}", rep.polygon.vertices()[i]);
    }
    println!("violations: {:?}", rep.validate());
    Ok(())
}
