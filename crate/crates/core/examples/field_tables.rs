//! Builds F_27 and prints its modulus, primitive element, a few Zech
//! logarithms and the quartic residue classes of F_13.

use paley::ff::{build_field, build_field_of_order};

fn main() -> paley::Result<()> {
    let f = build_field(3, 3)?;
    let spec = f.spec();
    println!(
        "F_{} = F_{}[x] / {:?} (low degree first)",
        spec.q, spec.p, spec.modulus
    );
    println!("omega = {:?}", f.coefficients(f.primitive()));
    for m in 0..6 {
        println!("log(1 + omega^{m}) = {:?}", f.zech(m));
    }
    let f13 = build_field_of_order(13)?;
    for i in 0..4 {
        let coset: Vec<u32> = f13
            .coset(4, i)?
            .iter()
            .map(|&a| f13.to_poly_index(a))
            .collect();
        println!("omega^{i} S_4 in F_13: {coset:?}");
    }
    Ok(())
}
