//! The family G_1 = Z + (a+b) Z Zbar, G'_0 = Z + a Z Zbar, G'_1 = Z + b Z Zbar.

use focaljet::affine::concrete_example;
use focaljet::germ::LogSeries;
use focaljet::{GaussRational, Rational};

fn main() -> focaljet::Result<()> {
    let one = GaussRational::one();
    let ex = concrete_example(&one, &one, 3, LogSeries::default())?;
    println!("a = b = 1, N = 3: ts'_0 = {}", ex.ts0_prime);
    println!("  {}", ex.note.as_deref().unwrap_or(""));

    let (a, b) = (GaussRational::i(), GaussRational::new(Rational::zero(), Rational::int(2)));
    let ex = concrete_example(&a, &b, 5, LogSeries::default())?;
    let pair = ex.labels.expect("imaginary a, b give labels");
    println!("a = i, b = 2i, N = 5:");
    println!("  G'_0   = {:?}", pair.g);
    println!("  ts''_0 = {}", pair.l_prime.ts(0));
    println!("  tuples equivalent: {}", ex.tuples_equivalent);
    Ok(())
}
