//! Exact finite-field 3F2 values: q^2 3F2(chi_4, phi, phi; eps, eps | 1) at
//! q = 125 and the whole tuple table for k = 4 at q = 13.

use paley::ff::build_field_of_order;
use paley::formulas::chi4_phi_phi;
use paley::hyp::{TupleParam, TupleTable};

fn main() -> paley::Result<()> {
    let f125 = build_field_of_order(125)?;
    println!(
        "q^2 3F2(chi4, phi, phi; eps, eps | 1) at q = 125: {}",
        chi4_phi_phi(&f125)?
    );

    let f = build_field_of_order(13)?;
    let table = TupleTable::new(&f, 4, f.one())?;
    for t in [
        [1, 1, 1, 0, 0],
        [1, 2, 2, 0, 0],
        [2, 2, 2, 0, 0],
        [1, 3, 2, 0, 0],
    ] {
        let t = TupleParam(t);
        println!("q^2 3F2({t} | 1) = {}", table.num(t));
    }
    println!("signed total over Z_4^5: {}", table.total_signed());
    Ok(())
}
