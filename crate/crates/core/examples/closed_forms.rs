//! The k = 2 and k = 4 closed forms, with x from q = x^2 + y^2, compared
//! with enumeration.

use paley::digraph::build_g;
use paley::ff::{build_field_of_order, valid_modulus};
use paley::formulas::{closed_form, two_squares, Normalization};

fn main() -> paley::Result<()> {
    for q in (3..=130u64).filter(|&q| valid_modulus(q, 4)) {
        let f = build_field_of_order(q)?;
        let x = two_squares(q, Normalization::Unconditional)?.x;
        let g = build_g(&f, 4)?;
        println!(
            "q = {q:>3}, x = {x:>3}: K_3 = {} (enumerated {}), K_4 = {} (enumerated {})",
            closed_form(&f, 4, 3)?,
            g.count_transitive(3)?,
            closed_form(&f, 4, 4)?,
            g.count_transitive(4)?
        );
    }
    Ok(())
}
