//! The multi-valued germ Im(G ln G) − Im(G) and its singular part.

use focaljet::germ::{expand_g_ln_g, im_g_ln_g_minus_g, LogSeries};
use focaljet::{Basis, GaussRational, Mu, PiGaussCoeff, PlaneJet, Rational, SmoothJet};

fn main() -> focaljet::Result<()> {
    let n = 5;
    let c = GaussRational::new(Rational::frac(1, 2), Rational::one());
    // G_C = Z + c Zbar² − conj(c) Z² is a real abscissa-preserving map
    let gc = SmoothJet::z(n)
        + SmoothJet::monomial(n, Basis::Z, 0, 2, PiGaussCoeff::from_gauss(c.clone()))
        + SmoothJet::monomial(n, Basis::Z, 2, 0, PiGaussCoeff::from_gauss(-c.conj()));
    let g = PlaneJet::from_complex_form(&gc)?;
    let mu = Mu::zero();
    for series in [LogSeries::AlternatingHarmonic, LogSeries::Exact] {
        let germ = expand_g_ln_g(&g, &mu, series)?;
        println!("{series:?}: coefficient of Z^-1 Zbar^4 in G ln G = {}", germ.laurent_coeff(-1, 4));
    }
    let im = im_g_ln_g_minus_g(&g, &mu, LogSeries::default())?;
    let sing = im.singular_part();
    println!("singular terms of Im(G ln G) − Im G:");
    for ((p, q), v) in sing.neg_terms() {
        println!("  Z^{p} Zbar^{q}: {v}");
    }
    println!("ln Z coefficient: {}", sing.lnz());
    println!("expected c² = {}", &c * &c);
    Ok(())
}
