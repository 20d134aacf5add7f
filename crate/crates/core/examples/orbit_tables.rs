//! Orbits of X_k for even k up to 12, and the k = 4 orbits as CSV.

use paley::orbits::{enumerate_orbits, orbit_count_formula, orbits_to_csv, xk_size_formula};

fn main() -> paley::Result<()> {
    for k in (2..=12).step_by(2) {
        let orbits = enumerate_orbits(k)?;
        let zero = orbits.iter().filter(|o| o.zero_valued).count();
        println!(
            "k = {k:>2}: |X_k| = {:>6}, {:>4} orbits (formula {:>4}), {zero} forced to zero",
            xk_size_formula(k),
            orbits.len(),
            orbit_count_formula(k)
        );
    }
    print!("{}", orbits_to_csv(&enumerate_orbits(4)?));
    Ok(())
}
