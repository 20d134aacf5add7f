//! Reproduces the lower-bound table for `R_t(3)` and `R_t(4)`, `t = 1..=5`,
//! from searches over `q < 10^4`, then composes the seeds upward.

use paley::ramsey::{composite_bound, table1, Seeds, DEFAULT_Q_MAX};

fn main() -> paley::Result<()> {
    let start = std::time::Instant::now();
    println!("{:>2} {:>4} {:>8} {:>8}", "t", "k", "R_t(3)", "R_t(4)");
    for row in table1(DEFAULT_Q_MAX)? {
        let show = |b: Option<u64>| b.map_or("-".to_string(), |b| b.to_string());
        println!(
            "{:>2} {:>4} {:>8} {:>8}",
            row.t,
            row.k,
            show(row.m3.bound),
            show(row.m4.bound)
        );
    }
    eprintln!("search took {:.1?}", start.elapsed());
    for t in 3..=6 {
        println!(
            "t = {t}: R_t(3) >= {}, R_t(4) >= {}",
            composite_bound(t, Seeds::M3)?,
            composite_bound(t, Seeds::M4)?
        );
    }
    Ok(())
}
