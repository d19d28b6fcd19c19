//! Multiplicity-2 labels built from liftable G'_0, G'_1 and
//! G_1 = G'_0 + G'_1 − id, certified affine equivalent via G'_0.

use focaljet::affine::{label_equivalent, liftable_pair_example, Options};
use focaljet::germ::LogSeries;
use focaljet::{SmoothJet, VPlusJet};

fn main() -> focaljet::Result<()> {
    let n = 6;
    // Y + (X² + Y²) lifts: its complex form is Z + i Z Zbar
    let g0 = VPlusJet::new(SmoothJet::xy_poly(n, &[((0, 1), (1, 1)), ((2, 0), (1, 1)), ((0, 2), (1, 1))]))?;
    let g1 = VPlusJet::new(SmoothJet::xy_poly(
        n,
        &[((0, 1), (1, 1)), ((2, 0), (-1, 2)), ((0, 2), (-1, 2)), ((3, 0), (1, 1)), ((1, 2), (1, 1))],
    ))?;
    let seed = SmoothJet::xy_poly(n, &[((1, 0), (1, 1)), ((0, 2), (1, 1))]);
    for series in [LogSeries::AlternatingHarmonic, LogSeries::Exact] {
        let pair = liftable_pair_example(&g0, &g1, &seed, series)?;
        println!("{series:?}");
        println!("  g_01  = {}", pair.l.g(0, 1));
        println!("  g'_01 = {}", pair.l_prime.g(0, 1));
        println!("  ts'_0 = {}", pair.l_prime.ts(0));
        let cert = label_equivalent(&pair.l, &pair.l_prime, &pair.g, &Options { series, mixed_window: None })?;
        println!("  certified: {}", cert.verdict);
    }
    Ok(())
}
