//! Generating a label, validating it and applying the group actions.

use focaljet::label::Label;
use focaljet::{Rational, SmoothJet};

fn main() -> focaljet::Result<()> {
    let n = 4;
    let chain = [
        SmoothJet::xy_poly(n, &[((0, 1), (1, 1)), ((1, 1), (1, 1))]),
        SmoothJet::xy_poly(n, &[((0, 1), (2, 1)), ((0, 2), (1, 3))]),
    ];
    let seed = SmoothJet::xy_poly(n, &[((1, 0), (1, 1)), ((0, 2), (1, 1))]);
    let l = Label::generate(&chain, &seed)?;
    println!("m = {}, order = {}, violations: {:?}", l.m(), l.order(), l.validate());
    for j in 0..l.m() {
        println!("ts_{j} = {}", l.ts(j));
    }
    println!("g_02 = {}", l.g(0, 2));

    let reflected = l.z2_action(1);
    println!("Z2 (k = 1): ts_0 = {}", reflected.ts(0));
    println!("Z2 twice returns the label: {}", reflected.z2_action(1) == l);

    let shifted = l.zr_shift(1, &Rational::frac(1, 2));
    println!("Z×R (1, 1/2): ts_0 = {}", shifted.ts(0));

    let swapped = l.zm_reindex(&[1, 0, 2])?;
    println!("transposition keeps validity: {}, same class: {}", swapped.is_valid(), swapped.same_class(&l));
    println!("rotation is the same class: {}", l.rotate(1).same_class(&l));
    println!("{}", serde_json::to_string_pretty(&l).expect("serializes"));
    Ok(())
}
