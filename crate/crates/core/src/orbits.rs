//! The order-120 group generated by eight hypergeometric transformations,
//! acting on the residual tuple set `X_k`, with sign bookkeeping.
//!
//! For `t ∈ Z_k⁵` write `F(t)` for the signed value
//! `(-1)^{t_3 + t_5} ₃F₂(χ_k^{t_1}, χ_k^{t_2}, χ_k^{t_3}; χ_k^{t_4}, χ_k^{t_5} | 1)`.
//! Each generator `T` comes with a sign `s_T(t) ∈ {±1}` such that
//! `F(t) = s_T(t) F(T t)`. The signs are the `(-1)`-prefactors of the
//! underlying transformation formulas evaluated at `χ_k(-1) = -1`,
//! combined with the change in `(-1)^{t_3 + t_5}`.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::cyclo::CycNum;
use crate::error::{Error, Result};
use crate::ff::{valid_modulus, FieldTable};
use crate::hyp::{TupleParam, TupleTable};
use crate::report::Report;

/// One generator: the map on `Z_k⁵` and its sign.
#[derive(Copy, Clone)]
pub struct Generator {
    pub name: &'static str,
    map: fn([i64; 5]) -> [i64; 5],
    sign_exponent: fn([i64; 5]) -> i64,
}

impl Generator {
    pub fn apply(&self, t: TupleParam, k: u32) -> TupleParam {
        TupleParam::new((self.map)(t.0.map(i64::from)), k)
    }

    /// `s_T(t)`, with `F(t) = s_T(t) F(T t)`.
    pub fn sign(&self, t: TupleParam) -> i64 {
        if (self.sign_exponent)(t.0.map(i64::from)).rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    }
}

pub const GENERATORS: [Generator; 8] = [
    Generator {
        name: "T1",
        map: |[a, b, c, d, e]| [b - d, a - d, c - d, -d, e - d],
        sign_exponent: |_| 0,
    },
    Generator {
        name: "T2",
        map: |[a, b, c, d, e]| [a, a - d, a - e, a - b, a - c],
        sign_exponent: |[a, b, c, d, e]| a + b + c + d + e,
    },
    Generator {
        name: "T3",
        map: |[a, b, c, d, e]| [b - d, b, b - e, b - a, b - c],
        sign_exponent: |[a, b, c, d, e]| a + b + c + d + e,
    },
    Generator {
        name: "T4",
        map: |[a, b, c, d, e]| [a, b, e - c, a + b - d, e],
        sign_exponent: |[a, ..]| a,
    },
    Generator {
        name: "T5",
        map: |[a, b, c, d, e]| [a, d - b, c, d, a + c - e],
        sign_exponent: |[_, _, c, d, _]| c + d,
    },
    Generator {
        name: "T6",
        map: |[a, b, c, d, e]| [d - a, b, c, d, b + c - e],
        sign_exponent: |[_, _, c, _, _]| c,
    },
    Generator {
        name: "T7",
        map: |[a, b, c, d, e]| [d - a, d - b, c, d, d + e - a - b],
        sign_exponent: |[_, _, _, d, _]| d,
    },
    Generator {
        name: "T8",
        map: |[a, b, c, d, e]| [a, c, b, e, d],
        sign_exponent: |[_, b, c, d, e]| b + c + d + e,
    },
];

/// Membership in `X_k`: `t_1, t_2, t_3 ∉ {0, t_4, t_5}` and
/// `t_1 + t_2 + t_3 ≢ t_4 + t_5 (mod k)`.
pub fn in_xk(t: TupleParam, k: u32) -> bool {
    let [a, b, c, d, e] = t.0;
    [a, b, c].iter().all(|&x| x != 0 && x != d && x != e) && (a + b + c) % k != (d + e) % k
}

/// `X_k` in lexicographic order.
pub fn xk(k: u32) -> Vec<TupleParam> {
    TupleParam::all(k).filter(|&t| in_xk(t, k)).collect()
}

/// `|X_k| = (k - 1)(k⁴ - 9k³ + 36k² - 69k + 51)`.
pub fn xk_size_formula(k: u32) -> i64 {
    let k = k as i64;
    (k - 1) * (k.pow(4) - 9 * k.pow(3) + 36 * k * k - 69 * k + 51)
}

/// Closed form for the number of orbits on `X_k`.
pub fn orbit_count_formula(k: u32) -> i64 {
    let kk = k as i64;
    let main = (kk - 1) * (kk.pow(4) - 9 * kk.pow(3) + 61 * kk * kk - 189 * kk + 280);
    let extra = match k % 12 {
        1 | 5 | 7 | 11 => 0,
        3 | 9 => 40 * kk - 200,
        2 | 10 => 105 * kk - 180,
        4 | 8 => 105 * kk - 240,
        6 => 145 * kk - 380,
        _ => 145 * kk - 440,
    };
    (main + extra) / 120
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitRecord {
    /// Lexicographically smallest element.
    pub representative: TupleParam,
    pub size: usize,
    /// `Σ_{x in orbit} F(x) = net · F(representative)`; `0` when
    /// `zero_valued`.
    pub net: i64,
    /// Two paths assign opposite signs to some element, forcing `F = 0` on
    /// the whole orbit.
    pub zero_valued: bool,
    /// Every element with its sign relative to the representative.
    #[serde(skip)]
    pub members: Vec<(TupleParam, i64)>,
}

impl OrbitRecord {
    pub fn contains(&self, t: TupleParam) -> bool {
        self.members.iter().any(|&(x, _)| x == t)
    }

    /// The net contribution re-expressed relative to the member `t`:
    /// `Σ_{x in orbit} F(x) = net_relative_to(t) · F(t)`.
    pub fn net_relative_to(&self, t: TupleParam) -> Option<i64> {
        self.members
            .iter()
            .find(|&&(x, _)| x == t)
            .map(|&(_, s)| self.net * s)
    }
}

/// Orbits of `X_k` under the generators, sorted by representative. Signs
/// are propagated along a breadth-first spanning tree from the
/// representative, and every non-tree arc is checked against them.
pub fn enumerate_orbits(k: u32) -> Result<Vec<OrbitRecord>> {
    if k < 2 || k % 2 == 1 {
        return Err(Error::Unsupported(format!(
            "orbit enumeration needs even k >= 2, got {k}"
        )));
    }
    let mut sign: HashMap<TupleParam, i64> = HashMap::new();
    let mut orbits = Vec::new();
    for rep in xk(k) {
        if sign.contains_key(&rep) {
            continue;
        }
        sign.insert(rep, 1);
        let mut queue = VecDeque::from([rep]);
        let mut members = Vec::new();
        let mut conflict = false;
        while let Some(x) = queue.pop_front() {
            let sx = sign[&x];
            members.push((x, sx));
            for g in &GENERATORS {
                let y = g.apply(x, k);
                let sy = g.sign(x) * sx;
                match sign.get(&y) {
                    Some(&s) => conflict |= s != sy,
                    None => {
                        sign.insert(y, sy);
                        queue.push_back(y);
                    }
                }
            }
        }
        members.sort();
        let net = if conflict {
            0
        } else {
            members.iter().map(|&(_, s)| s).sum()
        };
        orbits.push(OrbitRecord {
            representative: rep,
            size: members.len(),
            net,
            zero_valued: conflict,
            members,
        });
    }
    Ok(orbits)
}

/// CSV with header `t1,t2,t3,t4,t5,size,net,zero_valued`.
pub fn orbits_to_csv(orbits: &[OrbitRecord]) -> String {
    let mut s = String::from("t1,t2,t3,t4,t5,size,net,zero_valued\n");
    for o in orbits {
        let [a, b, c, d, e] = o.representative.0;
        writeln!(
            s,
            "{a},{b},{c},{d},{e},{},{},{}",
            o.size, o.net, o.zero_valued
        )
        .expect("write to String");
    }
    s
}

/// `q² Σ_{t ∈ X_k} F(t)`, summed tuple by tuple.
pub fn residual_full(table: &TupleTable) -> CycNum {
    table.weighted_signed_sum(xk(table.k()).into_iter().map(|t| (t, 1)))
}

/// `q² Σ_{t ∈ X_k} F(t)` as `Σ_orbits net · q² F(rep)`.
pub fn residual_by_orbits(table: &TupleTable, orbits: &[OrbitRecord]) -> CycNum {
    table.weighted_signed_sum(
        orbits
            .iter()
            .filter(|o| o.net != 0)
            .map(|o| (o.representative, o.net)),
    )
}

/// Evaluates `F` on every element of every orbit at `λ = 1` and checks it
/// against the signed representative value, zero-valued orbits, and the
/// orbit-reduced residual sum.
pub fn verify_orbit_values(f: &FieldTable, k: u32) -> Result<Report> {
    if !valid_modulus(f.order() as u64, k) {
        return Err(Error::InvalidParameters {
            q: f.order() as u64,
            k,
        });
    }
    let orbits = enumerate_orbits(k)?;
    let table = TupleTable::new(f, k, f.one())?;
    let tag = format!("(q, k) = ({}, {k})", f.order());
    let mut report = Report::new();

    let bad: Vec<String> = orbits
        .par_iter()
        .flat_map_iter(|o| {
            let rep_value = table.signed_num(o.representative);
            let mut bad = Vec::new();
            if o.zero_valued && !rep_value.is_zero() {
                bad.push(format!(
                    "zero-valued orbit of {} has value {rep_value}",
                    o.representative
                ));
            }
            for &(t, s) in &o.members {
                if table.signed_num(t) != rep_value.scale(&BigInt::from(s)) {
                    bad.push(format!("{t} (sign {s} relative to {})", o.representative));
                }
            }
            bad
        })
        .collect();
    report.push(
        format!(
            "orbit values agree up to tracked sign, {} tuples, {tag}",
            xk(k).len()
        ),
        bad.is_empty(),
        bad.join("; "),
    );

    let full = residual_full(&table);
    let reduced = residual_by_orbits(&table, &orbits);
    report.push(
        format!("residual sum over X_k equals orbit-reduced sum, {tag}"),
        full == reduced,
        format!("full = {full}, orbits = {reduced}"),
    );
    Ok(report)
}
