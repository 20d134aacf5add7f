//! Multiplicative characters of `F_q^*`, Jacobi and Gauss sums, and the
//! aggregate Jacobi-sum quantities `R_k`, `S_k` and friends.
//!
//! A character is identified by its exponent `t` modulo `q - 1`:
//! `χ_t(ω^m) = ζ_{q-1}^{tm}` and `χ_t(0) = 0`, the trivial character
//! included. The canonical order-`k` character is `χ_k = χ_{(q-1)/k}`, so
//! `χ_k(ω) = ζ_k`.

use std::ops::Mul;

use num_bigint::BigInt;
use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use crate::cyclo::{gcd, root, CycNum};
use crate::error::{Error, Result};
use crate::ff::{valid_modulus, FieldElem, FieldTable};
use crate::report::Report;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct Character {
    index: u32,
    modulus: u32,
}

impl Character {
    pub fn new(f: &FieldTable, t: i64) -> Character {
        let modulus = f.group_order();
        Character {
            index: t.rem_euclid(modulus as i64) as u32,
            modulus,
        }
    }

    pub fn trivial(f: &FieldTable) -> Character {
        Character::new(f, 0)
    }

    /// The canonical character of order `k`, `χ_{(q-1)/k}`.
    pub fn of_order(f: &FieldTable, k: u32) -> Result<Character> {
        let n = f.group_order();
        if k == 0 || !n.is_multiple_of(k) {
            return Err(Error::NotDivisor { k, q_minus_one: n });
        }
        Ok(Character::new(f, (n / k) as i64))
    }

    /// The quadratic character `φ` (odd `q`).
    pub fn quadratic(f: &FieldTable) -> Result<Character> {
        Character::of_order(f, 2)
    }

    pub fn index(self) -> u32 {
        self.index
    }

    pub fn order(self) -> u32 {
        self.modulus / gcd(self.index as u64, self.modulus as u64) as u32
    }

    pub fn is_trivial(self) -> bool {
        self.index == 0
    }

    /// The inverse character `χ̄`.
    pub fn inverse(self) -> Character {
        Character {
            index: (self.modulus - self.index) % self.modulus,
            modulus: self.modulus,
        }
    }

    pub fn pow(self, e: i64) -> Character {
        let m = self.modulus as i64;
        Character {
            index: ((self.index as i64 * e.rem_euclid(m)) % m) as u32,
            modulus: self.modulus,
        }
    }

    /// `χ(-1) ∈ {±1}`.
    pub fn at_minus_one(self, f: &FieldTable) -> i64 {
        if f.characteristic() == 2 || self.index.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

impl Mul for Character {
    type Output = Character;
    fn mul(self, rhs: Character) -> Character {
        debug_assert_eq!(self.modulus, rhs.modulus);
        Character {
            index: ((self.index as u64 + rhs.index as u64) % self.modulus as u64) as u32,
            modulus: self.modulus,
        }
    }
}

/// Smallest root order `n` carrying all the given characters, with their
/// exponents rescaled to `Z_n`.
pub(crate) fn common_order(chars: &[Character]) -> (usize, Vec<u64>) {
    let modulus = chars[0].modulus as u64;
    let g = chars.iter().fold(modulus, |g, c| gcd(g, c.index as u64));
    let n = modulus / g;
    (
        n as usize,
        chars.iter().map(|c| c.index as u64 / g).collect(),
    )
}

/// `χ(a)` as an exact cyclotomic integer (`0` at `a = 0`).
pub fn char_value(f: &FieldTable, chi: Character, a: FieldElem) -> CycNum {
    debug_assert_eq!(chi.modulus, f.group_order());
    let (n, e) = common_order(&[chi]);
    match a.log() {
        None => CycNum::zero(n),
        Some(m) => root(n, ((e[0] * m as u64) % n as u64) as i64),
    }
}

/// `J(A, B) = Σ_a A(a) B(1 - a)`, by direct summation.
pub fn jacobi(f: &FieldTable, a: Character, b: Character) -> CycNum {
    let (n, e) = common_order(&[a, b]);
    let n64 = n as u64;
    let mut counts = vec![0i64; n];
    for m in 1..f.group_order() {
        if let Some(l) = f.one_minus_log(m) {
            let idx = (e[0] * m as u64 + e[1] * l as u64) % n64;
            counts[idx as usize] += 1;
        }
    }
    CycNum::from_counts(&counts)
}

/// The canonical additive character `ψ(a) = exp(2πi Tr(a) / p)`, tabulated by
/// discrete logarithm.
#[derive(Clone, Debug)]
pub struct AdditiveCharacter {
    p: u32,
    trace_by_log: Vec<u32>,
}

impl AdditiveCharacter {
    pub fn canonical(f: &FieldTable) -> AdditiveCharacter {
        AdditiveCharacter {
            p: f.characteristic(),
            trace_by_log: f.nonzero().map(|a| f.trace(a)).collect(),
        }
    }

    pub fn value(&self, a: FieldElem) -> Complex64 {
        let tr = a.log().map_or(0, |m| self.trace_by_log[m as usize]);
        Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * tr as f64 / self.p as f64)
    }
}

/// Gauss sum `g(χ) = Σ_a χ(a) ψ(a)` in floating point.
pub fn gauss(f: &FieldTable, chi: Character, psi: &AdditiveCharacter) -> Complex64 {
    let n = f.group_order() as f64;
    let p = psi.p as f64;
    let tau = 2.0 * std::f64::consts::PI;
    psi.trace_by_log
        .iter()
        .enumerate()
        .map(|(m, &tr)| {
            let phase = (chi.index as f64 * m as f64 % n) / n + tr as f64 / p;
            Complex64::from_polar(1.0, tau * phase)
        })
        .sum()
}

/// `J(A, B)` through `g(A) g(B) / g(AB)`; only meaningful when `A`, `B`
/// and `AB` are all nontrivial.
pub fn jacobi_via_gauss(
    f: &FieldTable,
    a: Character,
    b: Character,
    psi: &AdditiveCharacter,
) -> Complex64 {
    gauss(f, a, psi) * gauss(f, b, psi) / gauss(f, a * b, psi)
}

/// Jacobi sums `J(χ^s, χ^t)` for all `s, t ∈ Z_k`, where `χ` has order `k`,
/// computed from one pass over the field. Values live in `Z[ζ_k]`.
#[derive(Clone, Debug)]
pub struct PowerFamily {
    k: u32,
    q: u32,
    table: Vec<CycNum>,
}

impl PowerFamily {
    /// Family generated by the canonical `χ_k`.
    pub fn new(f: &FieldTable, k: u32) -> Result<PowerFamily> {
        PowerFamily::with_generator(f, k, 1)
    }

    /// Family generated by `χ_k^j`, `gcd(j, k) = 1`.
    pub fn with_generator(f: &FieldTable, k: u32, j: u32) -> Result<PowerFamily> {
        let classes = f.one_minus_classes(k)?;
        let ku = k as usize;
        let mut hist = vec![0i64; ku * ku];
        for (m, c) in classes.iter().enumerate() {
            if let Some(c1) = c {
                hist[(m % ku) * ku + *c1 as usize] += 1;
            }
        }
        let mut table = Vec::with_capacity(ku * ku);
        for s in 0..ku {
            for t in 0..ku {
                let mut counts = vec![0i64; ku];
                for c0 in 0..ku {
                    for c1 in 0..ku {
                        let e = (j as usize * (s * c0 + t * c1)) % ku;
                        counts[e] += hist[c0 * ku + c1];
                    }
                }
                table.push(CycNum::from_counts(&counts));
            }
        }
        Ok(PowerFamily {
            k,
            q: f.order(),
            table,
        })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// `J(χ^s, χ^t)`, indices taken modulo `k`.
    pub fn jacobi(&self, s: i64, t: i64) -> &CycNum {
        let k = self.k as i64;
        &self.table[(s.rem_euclid(k) * k + t.rem_euclid(k)) as usize]
    }

    /// All eight aggregate sums, each reduced to a rational integer.
    pub fn aggregates(&self) -> Result<JacobiAggregates> {
        let k = self.k as i64;
        let sign = |e: i64| if e.rem_euclid(2) == 0 { 1i64 } else { -1 };
        let ne0 = |e: i64| e.rem_euclid(k) != 0;

        let mut r = CycNum::from_int(0);
        let mut r_minus = CycNum::from_int(0);
        let mut j0 = CycNum::from_int(0);
        let mut j0_minus = CycNum::from_int(0);
        for s in 0..k {
            for t in 0..k {
                let j = self.jacobi(s, t);
                let signed = j.scale(&BigInt::from(sign(s + t)));
                j0 += j;
                j0_minus += &signed;
                if s != 0 && t != 0 && ne0(s + t) {
                    r += j;
                    r_minus += &signed;
                }
            }
        }

        // Σ_t J(χ^s, χ^t) and Σ_v J(χ^{-s}, χ^v) factor the unrestricted
        // triple sums.
        let mut jj0 = CycNum::from_int(0);
        let mut jj0_minus = CycNum::from_int(0);
        let mut s_sum = CycNum::from_int(0);
        let mut s_minus = CycNum::from_int(0);
        for s in 0..k {
            let row: CycNum = (0..k).map(|t| self.jacobi(s, t)).sum();
            let row_minus: CycNum = (0..k)
                .map(|t| self.jacobi(s, t).scale(&BigInt::from(sign(s + t))))
                .sum();
            let back: CycNum = (0..k).map(|v| self.jacobi(-s, v)).sum();
            jj0 += &(&row * &back);
            jj0_minus += &(&row_minus * &back);
            if s == 0 {
                continue;
            }
            for t in 1..k {
                if !ne0(s + t) {
                    continue;
                }
                let mut inner = CycNum::from_int(0);
                for v in 1..k {
                    if ne0(v + t) && ne0(v - s) {
                        inner += self.jacobi(-s, v);
                    }
                }
                let prod = self.jacobi(s, t) * &inner;
                s_minus += &prod.scale(&BigInt::from(sign(s + t)));
                s_sum += &prod;
            }
        }

        Ok(JacobiAggregates {
            q: self.q as i64,
            k: self.k as i64,
            r: r.to_i64()?,
            r_minus: r_minus.to_i64()?,
            s: s_sum.to_i64()?,
            s_minus: s_minus.to_i64()?,
            j0: j0.to_i64()?,
            j0_minus: j0_minus.to_i64()?,
            jj0: jj0.to_i64()?,
            jj0_minus: jj0_minus.to_i64()?,
        })
    }
}

/// The integer-valued Jacobi-sum aggregates at one `(q, k)`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JacobiAggregates {
    pub q: i64,
    pub k: i64,
    /// `R_k`: `Σ J(χ^s, χ^t)` over `1 ≤ s, t ≤ k-1`, `s + t ≢ 0`.
    pub r: i64,
    pub r_minus: i64,
    /// `S_k`: `Σ J(χ^s, χ^t) J(χ^{-s}, χ^v)` over `1 ≤ s, t, v ≤ k-1` with
    /// `s + t`, `v + t`, `v - s` all `≢ 0`.
    pub s: i64,
    pub s_minus: i64,
    /// `J_0`: `Σ J(χ^s, χ^t)` over all `s, t`.
    pub j0: i64,
    pub j0_minus: i64,
    pub jj0: i64,
    pub jj0_minus: i64,
}

fn check_valid(f: &FieldTable, k: u32) -> Result<()> {
    if !valid_modulus(f.order() as u64, k) {
        return Err(Error::InvalidParameters {
            q: f.order() as u64,
            k,
        });
    }
    Ok(())
}

/// Aggregates for the canonical `χ_k`; requires `q ≡ k + 1 (mod 2k)`.
pub fn aggregates(f: &FieldTable, k: u32) -> Result<JacobiAggregates> {
    check_valid(f, k)?;
    PowerFamily::new(f, k)?.aggregates()
}

/// Recomputes the left-hand sides of the seven `J_0 / JJ_0` identities by
/// plain index enumeration and compares them with the closed right-hand
/// sides in terms of `R_k`, `R_k^-`, `S_k`, `S_k^-`.
pub fn check_jacobi_reductions(f: &FieldTable, k: u32) -> Result<Report> {
    check_valid(f, k)?;
    let fam = PowerFamily::new(f, k)?;
    let agg = fam.aggregates()?;
    let (q, kk) = (f.order() as i64, k as i64);
    let sign = |e: i64| BigInt::from(if e.rem_euclid(2) == 0 { 1 } else { -1 });
    let ne0 = |e: i64| e.rem_euclid(kk) != 0;

    let mut lhs_a = CycNum::from_int(0);
    let mut lhs_b = CycNum::from_int(0);
    let mut lhs_e = CycNum::from_int(0);
    for s in 0..kk {
        for t in 0..kk {
            let j = fam.jacobi(s, t);
            lhs_a += j;
            lhs_b += &j.scale(&sign(s + t));
            lhs_e += &j.scale(&sign(s));
        }
    }
    let mut lhs_c = CycNum::from_int(0);
    let mut lhs_d = CycNum::from_int(0);
    let mut lhs_f = CycNum::from_int(0);
    let mut lhs_g = CycNum::from_int(0);
    for s in 0..kk {
        for t in 0..kk {
            for v in 0..kk {
                let prod = fam.jacobi(s, t) * fam.jacobi(-s, v);
                lhs_c += &prod;
                lhs_d += &prod.scale(&sign(s + t));
                lhs_f += &prod.scale(&sign(t + v));
                if s != 0 && t != 0 && v != 0 && ne0(s + t) && ne0(v + t) && ne0(v - s) {
                    lhs_g += &prod.scale(&sign(t + v));
                }
            }
        }
    }

    let (r, rm, s, sm) = (agg.r, agg.r_minus, agg.s, agg.s_minus);
    let j0 = r + q - 2 * kk + 1;
    let jj0 = s - 4 * r + q * q + q * (kk * kk - 5 * kk) + kk * kk + 4 * kk - 3;
    let expected = [
        ("(a) J0 = R + q - 2k + 1", &lhs_a, j0),
        ("(b) J0- = R- + q + 1", &lhs_b, rm + q + 1),
        (
            "(c) JJ0 = S - 4R + q^2 + q(k^2 - 5k) + k^2 + 4k - 3",
            &lhs_c,
            jj0,
        ),
        (
            "(d) JJ0- = S- - R- - 3R + q^2 - 2kq + 3(k - 1)",
            &lhs_d,
            sm - rm - 3 * r + q * q - 2 * kk * q + 3 * (kk - 1),
        ),
        ("(e) sum (-1)^s J = J0", &lhs_e, j0),
        (
            "(f) sum (-1)^(t+v) JJ = JJ0 + k^2 (q - 1)",
            &lhs_f,
            jj0 + kk * kk * (q - 1),
        ),
        (
            "(g) restricted sum (-1)^(t+v) JJ = S + qk(k - 2)",
            &lhs_g,
            s + q * kk * (kk - 2),
        ),
    ];
    let mut report = Report::new();
    for (name, lhs, rhs) in expected {
        let got = lhs.to_i64();
        report.push(
            format!("jacobi-reduction {name} at (q, k) = ({q}, {k})"),
            got == Ok(rhs),
            format!("lhs = {lhs}, rhs = {rhs}"),
        );
    }
    Ok(report)
}

/// Basic Jacobi-sum facts, the inversion and product identities on random
/// character pairs, and the order-`k` orthogonality relation.
pub fn check_character_identities<R: Rng>(
    f: &FieldTable,
    k: u32,
    trials: usize,
    rng: &mut R,
) -> Result<Report> {
    check_valid(f, k)?;
    let q = f.order() as i64;
    let n = f.group_order() as i64;
    let eps = Character::trivial(f);
    let mut report = Report::new();

    let jee = jacobi(f, eps, eps);
    report.push(
        "J(e, e) = q - 2",
        jee.to_i64() == Ok(q - 2),
        format!("{jee}"),
    );
    let mut ok_b = true;
    let mut ok_c = true;
    for t in 1..n {
        let chi = Character::new(f, t);
        ok_b &= jacobi(f, eps, chi).to_i64() == Ok(-1);
        ok_c &= jacobi(f, chi, chi.inverse()).to_i64() == Ok(-chi.at_minus_one(f));
    }
    report.push("J(e, chi) = -1 for all nontrivial chi", ok_b, "");
    report.push(
        "J(chi, chi-bar) = -chi(-1) for all nontrivial chi",
        ok_c,
        "",
    );

    for _ in 0..trials {
        let a = Character::new(f, rng.gen_range(0..n));
        let b = Character::new(f, rng.gen_range(0..n));
        let lhs = jacobi(f, a, b);
        let rhs = jacobi(f, a, (a * b).inverse()).scale(&BigInt::from(a.at_minus_one(f)));
        report.push(
            format!(
                "J(A, B) = A(-1) J(A, conj(AB)) for (A, B) = ({}, {})",
                a.index(),
                b.index()
            ),
            lhs == rhs,
            "",
        );
        let a = Character::new(f, rng.gen_range(1..n));
        let mut b = Character::new(f, rng.gen_range(1..n));
        if (a * b).is_trivial() {
            b = b * Character::new(f, 1);
            if b.is_trivial() || (a * b).is_trivial() {
                continue;
            }
        }
        let prod = jacobi(f, a, b) * jacobi(f, a.inverse(), b.inverse());
        report.push(
            format!(
                "J(A, B) J(conj A, conj B) = q for (A, B) = ({}, {})",
                a.index(),
                b.index()
            ),
            prod.to_i64() == Ok(q),
            "",
        );
    }

    let chi_k = Character::of_order(f, k)?;
    let mut ok = true;
    for bel in f.nonzero() {
        let total: CycNum = (0..k as i64)
            .map(|t| char_value(f, chi_k.pow(t), bel))
            .sum();
        let is_power = f.residue_class(k, bel)? == Some(0);
        ok &= total.to_i64() == Ok(if is_power { k as i64 } else { 0 });
    }
    report.push(
        format!("orthogonality of chi_{k} powers on all nonzero b"),
        ok,
        "",
    );
    Ok(report)
}
