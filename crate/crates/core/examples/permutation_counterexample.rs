//! Two different labels of multiplicity 3, related by a non-cyclic
//! relabelling, that are affine equivalent via the identity.

use focaljet::affine::{label_equivalent, permutation_example, Options};

fn main() -> focaljet::Result<()> {
    let pair = permutation_example(3, &[1, 0, 2], None, None, 6)?;
    println!("same label class: {}", pair.l.same_class(&pair.l_prime));
    let cert = label_equivalent(&pair.l, &pair.l_prime, &pair.g, &Options::default())?;
    println!("affine equivalent via the identity: {}", cert.verdict);
    println!("matched rotation: {:?}", cert.rotation);
    Ok(())
}
