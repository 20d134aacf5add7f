//! Searches for `q` with `K_m(G_k(q)) = 0`, which give lower bounds
//! `q + 1 ≤ R_{k/2}(m)` through the `k/2`-coloured tournament `P_k(q)`, and
//! the multiplicative composition of such bounds.

use rayon::prelude::*;
use serde::Serialize;

use crate::digraph::{h1_edge_count, h_edge_count, has_monochromatic_transitive};
use crate::error::{Error, Result};
use crate::ff::{build_field, build_field_with_cap, prime_power, FieldTable};
use crate::formulas::{k3_jacobi, k4_reduced, ResidualMode};
use crate::report::Report;

/// Default search limit.
pub const DEFAULT_Q_MAX: u64 = 10_000;

/// Witnesses up to this order are also checked by brute force on `P_k(q)`.
pub const DEFAULT_SPOT_CHECK_CAP: u64 = 50;

/// Prime powers `q < q_max` with `q ≡ k + 1 (mod 2k)`, ascending.
pub fn enumerate_q(k: u32, q_max: u64) -> Vec<u64> {
    if k < 2 || !k.is_multiple_of(2) || q_max < 3 {
        return Vec::new();
    }
    let n = q_max as usize;
    let mut composite = vec![false; n];
    let mut out = Vec::new();
    let modulus = 2 * k as u64;
    let target = (k as u64 + 1) % modulus;
    for p in 2..n {
        if composite[p] {
            continue;
        }
        for multiple in (p * p..n).step_by(p) {
            composite[multiple] = true;
        }
        let mut q = p as u64;
        while q < q_max {
            if q % modulus == target {
                out.push(q);
            }
            q = match q.checked_mul(p as u64) {
                Some(next) => next,
                None => break,
            };
        }
    }
    out.sort_unstable();
    out
}

/// The outcome of one `K_m = 0` search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundRecord {
    /// Number of colours, `k / 2`.
    pub t: u32,
    pub m: usize,
    pub k: u32,
    pub q_max: u64,
    /// Every `q < q_max` with `K_m(G_k(q)) = 0`, ascending.
    pub witnesses: Vec<u64>,
    pub q_star: Option<u64>,
    /// `q_star + 1`.
    pub bound: Option<u64>,
}

/// `K_m(G_k(q)) = 0`, decided by edge counts: `K_3 = 0` iff `H_k(q)` has no
/// edges and `K_4 = 0` iff `H¹_k(q)` has no edges.
pub fn is_zero(f: &FieldTable, k: u32, m: usize) -> Result<bool> {
    match m {
        3 => Ok(h_edge_count(f, k) == 0),
        4 => Ok(h1_edge_count(f, k, true) == 0),
        _ => Err(Error::UnsupportedOrder(m)),
    }
}

fn field_of(q: u64) -> Result<FieldTable> {
    let (p, r) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
    build_field_with_cap(p, r, q)
}

/// Every `q < q_max` in [`enumerate_q`] with `K_m(G_k(q)) = 0`.
pub fn search_zero(k: u32, m: usize, q_max: u64) -> Result<BoundRecord> {
    search_zero_with(k, m, q_max, field_of)
}

/// As [`search_zero`], building each field with `build`.
pub fn search_zero_with<F>(k: u32, m: usize, q_max: u64, build: F) -> Result<BoundRecord>
where
    F: Fn(u64) -> Result<FieldTable> + Sync,
{
    if m != 3 && m != 4 {
        return Err(Error::UnsupportedOrder(m));
    }
    if k < 2 || !k.is_multiple_of(2) {
        return Err(Error::InvalidParameters { q: 0, k });
    }
    let flags = enumerate_q(k, q_max)
        .into_par_iter()
        .map(|q| Ok((q, is_zero(&build(q)?, k, m)?)))
        .collect::<Result<Vec<_>>>()?;
    let witnesses: Vec<u64> = flags
        .into_iter()
        .filter(|&(_, z)| z)
        .map(|(q, _)| q)
        .collect();
    let q_star = witnesses.last().copied();
    Ok(BoundRecord {
        t: k / 2,
        m,
        k,
        q_max,
        witnesses,
        q_star,
        bound: q_star.map(|q| q + 1),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub t: u32,
    pub k: u32,
    pub m3: BoundRecord,
    pub m4: BoundRecord,
}

/// Bounds for `R_t(3)` and `R_t(4)`, `t = 1..=5`.
pub fn table1(q_max: u64) -> Result<Vec<TableRow>> {
    (1..=5u32)
        .map(|t| {
            let k = 2 * t;
            Ok(TableRow {
                t,
                k,
                m3: search_zero(k, 3, q_max)?,
                m4: search_zero(k, 4, q_max)?,
            })
        })
        .collect()
}

/// Seeds for the composition `R_t(m) ≥ (R_{t-1}(m) - 1)(R(m) - 1) + 1`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Seeds {
    /// Two-colour Ramsey number `R(m)` for transitive tournaments.
    pub r_m: u64,
    /// Colour count of the starting bound.
    pub base_t: u32,
    /// Lower bound for `R_{base_t}(m)`.
    pub base_bound: u64,
}

impl Seeds {
    /// `R(4) = 8` with `R_2(4) ≥ 126`.
    pub const M4: Seeds = Seeds {
        r_m: 8,
        base_t: 2,
        base_bound: 126,
    };
    /// `R(3) = 4` with `R_3(3) ≥ 44`.
    pub const M3: Seeds = Seeds {
        r_m: 4,
        base_t: 3,
        base_bound: 44,
    };
}

/// The lower bound for `R_t(m)` obtained by composing from the seed.
pub fn composite_bound(t: u32, seeds: Seeds) -> Result<u64> {
    if seeds.r_m < 2 || seeds.base_bound < 2 || seeds.base_t < 1 {
        return Err(Error::InvalidSeed(format!("{seeds:?}")));
    }
    if t < seeds.base_t {
        return Err(Error::InvalidSeed(format!(
            "t = {t} is below the seed's t = {}",
            seeds.base_t
        )));
    }
    let mut bound = seeds.base_bound;
    for _ in seeds.base_t..t {
        bound = (bound - 1)
            .checked_mul(seeds.r_m - 1)
            .and_then(|b| b.checked_add(1))
            .ok_or_else(|| Error::Unsupported("bound exceeds u64".into()))?;
    }
    Ok(bound)
}

/// Re-checks one witness: the character-sum formula gives exactly zero,
/// and for `q ≤ spot_cap` no colour class of `P_k(q)` contains a transitive
/// `T_m`.
pub fn verify_witness(k: u32, m: usize, q: u64, spot_cap: u64) -> Result<Report> {
    let (p, r) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
    let f = build_field(p, r)?;
    let mut report = Report::new();
    let value = match m {
        3 => k3_jacobi(&f, k)?,
        4 => k4_reduced(&f, k, ResidualMode::Both)?.count,
        _ => return Err(Error::UnsupportedOrder(m)),
    };
    report.push(
        format!("K_{m}(G_{k}({q})) = 0 by formula"),
        value == 0,
        format!("{value}"),
    );
    if q <= spot_cap {
        let mono = has_monochromatic_transitive(&f, k, m)?;
        report.push(format!("P_{k}({q}) has no monochromatic T_{m}"), !mono, "");
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::primitive_moduli;

    #[test]
    fn enumeration() {
        assert_eq!(enumerate_q(2, 20), vec![3, 7, 11, 19]);
        assert!(enumerate_q(4, 10_000).contains(&125));
        assert!(enumerate_q(6, 10_000).contains(&343));
        assert!(enumerate_q(2, 10_000).contains(&2187));
        assert!(enumerate_q(3, 100).is_empty());
        let qs = enumerate_q(8, 2_000);
        assert!(qs.windows(2).all(|w| w[0] < w[1]));
        assert!(qs.iter().all(|&q| crate::ff::valid_modulus(q, 8)));
    }

    #[test]
    fn small_searches() {
        let r = search_zero(2, 4, 100).unwrap();
        assert_eq!(r.witnesses, vec![3, 7]);
        assert_eq!(r.bound, Some(8));
        let r = search_zero(2, 3, 100).unwrap();
        assert_eq!(r.bound, Some(4));
        let r = search_zero(4, 3, 100).unwrap();
        assert_eq!(r.bound, Some(14));
        let r = search_zero(4, 4, 200).unwrap();
        assert_eq!(r.q_star, Some(125));
    }

    #[test]
    fn empty_search_has_no_bound() {
        let r = search_zero(10, 4, 10).unwrap();
        assert!(r.witnesses.is_empty());
        assert_eq!(r.bound, None);
    }

    #[test]
    fn monotone_in_q_max() {
        let mut last = 0;
        for q_max in [20, 50, 100, 200, 400] {
            let b = search_zero(4, 4, q_max).unwrap().bound.unwrap_or(0);
            assert!(b >= last);
            last = b;
        }
    }

    #[test]
    fn independent_of_modulus() {
        let alt = |q: u64| {
            let (p, r) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
            let modulus = primitive_moduli(p, r)
                .nth(1)
                .or_else(|| primitive_moduli(p, r).next())
                .unwrap();
            FieldTable::with_modulus(p, modulus)
        };
        for (k, m) in [(4, 4), (6, 3), (2, 4), (4, 3)] {
            assert_eq!(
                search_zero(k, m, 400).unwrap(),
                search_zero_with(k, m, 400, alt).unwrap()
            );
        }
    }

    #[test]
    fn composite_bounds() {
        assert_eq!(composite_bound(3, Seeds::M4).unwrap(), 876);
        assert_eq!(composite_bound(4, Seeds::M3).unwrap(), 130);
        let classical = Seeds {
            r_m: 4,
            base_t: 2,
            base_bound: 14,
        };
        assert_eq!(composite_bound(3, classical).unwrap(), 40);
        for t in 2..=6 {
            assert_eq!(
                composite_bound(t, Seeds::M4).unwrap(),
                125 * 7u64.pow(t - 2) + 1
            );
        }
        assert!(composite_bound(1, Seeds::M4).is_err());
        assert!(composite_bound(
            3,
            Seeds {
                r_m: 1,
                base_t: 2,
                base_bound: 10
            }
        )
        .is_err());
    }

    #[test]
    fn composite_monotone_in_seed() {
        for b in 2..60 {
            let lo = composite_bound(
                5,
                Seeds {
                    r_m: 4,
                    base_t: 3,
                    base_bound: b,
                },
            )
            .unwrap();
            let hi = composite_bound(
                5,
                Seeds {
                    r_m: 4,
                    base_t: 3,
                    base_bound: b + 1,
                },
            )
            .unwrap();
            assert!(lo < hi);
        }
    }

    #[test]
    fn witnesses_reverify() {
        for (k, m, q_max) in [(2, 4, 20), (4, 3, 50), (4, 4, 130), (6, 3, 50)] {
            let record = search_zero(k, m, q_max).unwrap();
            for q in record.witnesses {
                let report = verify_witness(k, m, q, DEFAULT_SPOT_CHECK_CAP).unwrap();
                assert!(report.passed(), "{report}");
            }
        }
    }
}
