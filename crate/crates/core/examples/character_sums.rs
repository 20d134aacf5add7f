//! Jacobi sums of order-4 characters and the aggregates R_k, S_k, S_k^-,
//! with the reduction identities checked at q = 29.

use paley::chars::{aggregates, check_jacobi_reductions, jacobi, Character};
use paley::ff::build_field_of_order;

fn main() -> paley::Result<()> {
    let f = build_field_of_order(29)?;
    let chi = Character::of_order(&f, 4)?;
    for s in 1..4 {
        for t in 1..4 {
            let j = jacobi(&f, chi.pow(s), chi.pow(t));
            println!("J(chi^{s}, chi^{t}) = {:.4}", j.to_complex());
        }
    }
    println!("{:?}", aggregates(&f, 4)?);
    let report = check_jacobi_reductions(&f, 4)?;
    println!(
        "{} reduction checks, all passed: {}",
        report.len(),
        report.passed()
    );
    Ok(())
}
