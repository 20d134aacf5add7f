//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
//! criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::SeedableRng;

use paley::chars::{check_character_identities, check_jacobi_reductions};
use paley::digraph::{build_g, multicolor_tournament, verify_subgraph_formulas};
use paley::ff::{build_field_of_order, prime_power, valid_modulus};
use paley::formulas::{
    check_order4_aggregates, check_order4_jacobi, chi4_phi_phi, k3_jacobi, k4_full_sum, k4_reduced,
    two_squares, Normalization, ResidualMode,
};
use paley::hyp::{identity_suite, TupleParam};
use paley::orbits::{enumerate_orbits, orbit_count_formula, xk, xk_size_formula};
use paley::ramsey::{composite_bound, search_zero, table1, Seeds};
use paley::Result;

/// Failure messages, empty when the criterion holds.
type Outcome = Result<Vec<String>>;
type Criterion = (&'static str, fn() -> Outcome);

fn oracle_equivalence() -> Outcome {
    let mut failures = Vec::new();
    let mut cases = 0;
    for (k, q_limit) in [(2u32, 200u64), (4, 200), (6, 200), (8, 120), (10, 120)] {
        for q in (3..=q_limit).filter(|&q| valid_modulus(q, k)) {
            let f = build_field_of_order(q)?;
            let g = build_g(&f, k)?;
            let (b3, b4) = (g.count_transitive(3)?, g.count_transitive(4)?);
            let j3 = k3_jacobi(&f, k)?;
            let full = k4_full_sum(&f, k)?;
            let reduced = k4_reduced(&f, k, ResidualMode::Both)?.count;
            if (b3, b4, b4) != (j3, full, reduced) {
                failures.push(format!(
                    "(q, k) = ({q}, {k}): brute K3 = {b3}, K4 = {b4}; Jacobi K3 = {j3}; full K4 = {full}; reduced K4 = {reduced}"
                ));
            }
            cases += 1;
        }
    }
    if cases == 0 {
        failures.push("no parameter pairs enumerated".into());
    }
    Ok(failures)
}

fn point_values() -> Outcome {
    let mut failures = Vec::new();
    let mut expect = |what: &str, got: i64, want: i64| {
        if got != want {
            failures.push(format!("{what} = {got}, expected {want}"));
        }
    };
    let k4 = |q: u64, k: u32| -> Result<i64> {
        Ok(k4_reduced(&build_field_of_order(q)?, k, ResidualMode::Both)?.count as i64)
    };
    let k3 =
        |q: u64, k: u32| -> Result<i64> { Ok(k3_jacobi(&build_field_of_order(q)?, k)? as i64) };
    expect("K4(G2(7))", k4(7, 2)?, 0);
    expect("K3(G2(3))", k3(3, 2)?, 0);
    expect("K3(G4(13))", k3(13, 4)?, 0);
    expect("K4(G4(125))", k4(125, 4)?, 0);
    for rule in [Normalization::Conditional, Normalization::Unconditional] {
        let s = two_squares(125, rule)?;
        expect("x for 125", s.x, -11);
        expect("|y| for 125", s.y, 2);
    }
    expect(
        "q^2 3F2(chi4, phi, phi; eps, eps | 1) at q = 125",
        chi4_phi_phi(&build_field_of_order(125)?)?,
        -142,
    );
    Ok(failures)
}

fn table_reproduction() -> Outcome {
    let expected = [(4, 8), (14, 126), (44, 344), (42, 954), (72, 3332)];
    let mut failures = Vec::new();
    for (row, (r3, r4)) in table1(10_000)?.iter().zip(expected) {
        for (record, want) in [(&row.m3, r3), (&row.m4, r4)] {
            if record.bound != Some(want) {
                failures.push(format!(
                    "R_{}({}) bound {:?}, expected {want}; witnesses {:?}",
                    row.t, record.m, record.bound, record.witnesses
                ));
            }
        }
    }
    Ok(failures)
}

fn orbit_data() -> Outcome {
    let mut failures = Vec::new();
    let orbits = enumerate_orbits(4)?;
    let listed = [
        ([1, 1, 1, 0, 0], 10, 0),
        ([3, 3, 3, 0, 0], 10, 0),
        ([1, 3, 2, 0, 0], 30, 0),
        ([1, 2, 2, 0, 0], 30, 10),
        ([1, 1, 3, 0, 0], 12, 0),
        ([2, 2, 2, 0, 0], 1, 1),
    ];
    if orbits.len() != 6 {
        failures.push(format!("k = 4 has {} orbits", orbits.len()));
    }
    for (rep, size, net) in listed {
        let t = TupleParam(rep);
        match orbits.iter().find(|o| o.contains(t)) {
            None => failures.push(format!("{t} lies in no orbit")),
            Some(o) => {
                if o.size != size || o.net_relative_to(t) != Some(net) {
                    failures.push(format!(
                        "orbit of {t}: size {}, net {:?}",
                        o.size,
                        o.net_relative_to(t)
                    ));
                }
            }
        }
    }
    if xk(4).len() != 93 {
        failures.push(format!("|X_4| = {}", xk(4).len()));
    }
    for k in (2..=12).step_by(2) {
        let orbits = enumerate_orbits(k)?;
        let total: usize = orbits.iter().map(|o| o.size).sum();
        if orbits.len() as i64 != orbit_count_formula(k) {
            failures.push(format!(
                "k = {k}: {} orbits, formula {}",
                orbits.len(),
                orbit_count_formula(k)
            ));
        }
        if total as i64 != xk_size_formula(k) || xk(k).len() != total {
            failures.push(format!(
                "k = {k}: orbit sizes sum to {total}, formula {}",
                xk_size_formula(k)
            ));
        }
    }
    Ok(failures)
}

fn identity_suites() -> Outcome {
    let mut failures = Vec::new();
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for (q, k) in [(13u64, 4u32), (29, 4), (31, 6), (43, 6)] {
        let f = build_field_of_order(q)?;
        let mut report = check_character_identities(&f, k, 50, &mut rng)?;
        report.extend(check_jacobi_reductions(&f, k)?);
        report.extend(identity_suite(&f, k, 50, &mut rng)?);
        if q % 4 == 1 {
            report.extend(check_order4_jacobi(&f)?);
        }
        failures.extend(
            report
                .failures()
                .map(|c| format!("(q, k) = ({q}, {k}): {} {}", c.name, c.detail)),
        );
    }
    Ok(failures)
}

fn order4_aggregates() -> Outcome {
    let mut failures = Vec::new();
    for q in (5..=500u64)
        .step_by(8)
        .filter(|&q| prime_power(q).is_some())
    {
        let report = check_order4_aggregates(&build_field_of_order(q)?)?;
        failures.extend(
            report
                .failures()
                .map(|c| format!("{} {}", c.name, c.detail)),
        );
    }
    Ok(failures)
}

fn composite_bounds() -> Outcome {
    let mut failures = Vec::new();
    let seed4 = search_zero(4, 4, 10_000)?.bound;
    let seed3 = search_zero(6, 3, 10_000)?.bound;
    let (Some(b4), Some(b3)) = (seed4, seed3) else {
        return Ok(vec![format!(
            "searched seeds missing: R_2(4) {seed4:?}, R_3(3) {seed3:?}"
        )]);
    };
    for t in 2..=6u32 {
        let got = composite_bound(
            t,
            Seeds {
                r_m: 8,
                base_t: 2,
                base_bound: b4,
            },
        )?;
        if got != 125 * 7u64.pow(t - 2) + 1 {
            failures.push(format!("m = 4, t = {t}: {got}"));
        }
    }
    for t in 3..=6u32 {
        let got = composite_bound(
            t,
            Seeds {
                r_m: 4,
                base_t: 3,
                base_bound: b3,
            },
        )?;
        if got != 43 * 3u64.pow(t - 3) + 1 {
            failures.push(format!("m = 3, t = {t}: {got}"));
        }
    }
    Ok(failures)
}

fn structural_checks() -> Outcome {
    let mut failures = Vec::new();
    for (q, k) in [(7u64, 2u32), (13, 4), (31, 6), (41, 8)] {
        let f = build_field_of_order(q)?;
        let report = verify_subgraph_formulas(&f, k)?;
        failures.extend(
            report
                .failures()
                .map(|c| format!("(q, k) = ({q}, {k}): {} {}", c.name, c.detail)),
        );
        let t = multicolor_tournament(&f, k)?;
        if !t.is_complete() {
            failures.push(format!("P_{k}({q}) is not a complete coloured tournament"));
        }
        if t.colour_class(&f, 0) != build_g(&f, k)? {
            failures.push(format!("colour 0 of P_{k}({q}) differs from G_{k}({q})"));
        }
    }
    Ok(failures)
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        (
            "brute force equals the character-sum formulas",
            oracle_equivalence,
        ),
        ("point values", point_values),
        ("lower-bound table at q < 10^4", table_reproduction),
        ("orbit data", orbit_data),
        ("identity suites", identity_suites),
        (
            "order-4 aggregates for q = 5 (mod 8), q <= 500",
            order4_aggregates,
        ),
        ("composite bounds", composite_bounds),
        ("structural checks", structural_checks),
    ];
    let mut all_passed = true;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let failures = outcome.unwrap_or_else(|e| vec![format!("error: {e}")]);
        let status = if failures.is_empty() { "PASS" } else { "FAIL" };
        println!("{status} {}: {name} ({elapsed:.1?})", i + 1);
        for f in &failures {
            println!("     {f}");
        }
        all_passed &= failures.is_empty();
    }
    if all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
