//! K_3 and K_4 for small power Paley digraphs, by enumeration and by every
//! applicable formula.

use paley::ff::{build_field_of_order, valid_modulus};
use paley::formulas::{count, Method, ResidualMode};

fn main() -> paley::Result<()> {
    println!(
        "{:>4} {:>3} {:>3} {:>10} {:>10} {:>10}",
        "q", "k", "m", "brute", "formula", "closed"
    );
    for k in [2u32, 4, 6] {
        for q in (3..=80u64).filter(|&q| valid_modulus(q, k)) {
            let f = build_field_of_order(q)?;
            for (m, method) in [(3, Method::Jacobi), (4, Method::Reduced)] {
                let brute = count(&f, k, m, Method::Brute, ResidualMode::Full)?;
                let formula = count(&f, k, m, method, ResidualMode::Orbits)?;
                let closed = count(&f, k, m, Method::Closed, ResidualMode::Full)
                    .map_or("-".to_string(), |c| c.to_string());
                println!("{q:>4} {k:>3} {m:>3} {brute:>10} {formula:>10} {closed:>10}");
            }
        }
    }
    Ok(())
}
