//! Exact transitive subtournament counts `K_3(G_k(q))` and `K_4(G_k(q))`
//! from character sums, plus the closed forms for `k ∈ {2, 4}`.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::chars::{aggregates, jacobi, Character, JacobiAggregates};
use crate::digraph::build_g;
use crate::error::{Error, Result};
use crate::ff::{prime_power, valid_modulus, FieldTable};
use crate::hyp::{f3f2_charsum, TupleTable};
use crate::orbits::{enumerate_orbits, residual_by_orbits, residual_full};
use crate::report::Report;

/// Which primes may divide `x` in `q = x² + y²`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Normalization {
    /// `p ∤ x` is required only when `p ≡ 1 (mod 4)`.
    Conditional,
    /// `p ∤ x` always.
    Unconditional,
}

impl Normalization {
    fn name(self) -> &'static str {
        match self {
            Normalization::Conditional => "conditional",
            Normalization::Unconditional => "unconditional",
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwoSquares {
    pub x: i64,
    pub y: i64,
}

/// The unique `q = x² + y²` with `x ≡ 1 (mod 4)`, `y ≥ 0` and the chosen
/// divisibility rule, by exhaustive search over `|x| ≤ √q`.
pub fn two_squares(q: u64, rule: Normalization) -> Result<TwoSquares> {
    let (p, _) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
    let p = p as i64;
    let q = q as i64;
    let bound = (q as f64).sqrt() as i64 + 1;
    let mut found = Vec::new();
    for x in -bound..=bound {
        if x.rem_euclid(4) != 1 || x * x > q {
            continue;
        }
        let needs_coprime = rule == Normalization::Unconditional || p % 4 == 1;
        if needs_coprime && x % p == 0 {
            continue;
        }
        let rest = q - x * x;
        let y = (rest as f64).sqrt().round() as i64;
        if y * y == rest {
            found.push(TwoSquares { x, y });
        }
    }
    match found.len() {
        0 => Err(Error::NoDecomposition {
            q: q as u64,
            rule: rule.name(),
        }),
        1 => Ok(found[0]),
        _ => Err(Error::NonUnique {
            q: q as u64,
            rule: rule.name(),
            candidates: found.iter().map(|s| s.x).collect(),
        }),
    }
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

/// `num / den` as a nonnegative `u64`, or an error naming the quotient.
fn exact_count(num: BigInt, den: BigInt) -> Result<u64> {
    if !(&num % &den).is_zero() || num < BigInt::zero() {
        return Err(Error::NotIntegral(format!("{num} / {den}")));
    }
    (num / den)
        .to_u64()
        .ok_or_else(|| Error::Unsupported("count exceeds u64".into()))
}

/// `K_4(G_k(q)) = q(q - 1) k⁻⁶ Σ_{t ∈ Z_k⁵} q² (-1)^{t_3 + t_5} ₃F₂(t | 1)`.
pub fn k4_full_sum(f: &FieldTable, k: u32) -> Result<u64> {
    check_valid(f, k)?;
    let table = TupleTable::new(f, k, f.one())?;
    let total = table.total_signed().to_integer()?;
    let q = BigInt::from(f.order());
    exact_count(&q * (&q - 1) * total, BigInt::from(k).pow(6))
}

/// How the residual sum over `X_k` is evaluated.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ResidualMode {
    /// Every tuple of `X_k`.
    Full,
    /// One value per orbit, weighted by its net contribution.
    Orbits,
    /// Both, failing with [`Error::ModeDisagreement`] if they differ.
    Both,
}

/// The pieces of the reduced `K_4` formula.
#[derive(Clone, Debug, Serialize)]
pub struct ReducedK4 {
    pub aggregates: JacobiAggregates,
    /// `q² Σ_{t ∈ X_k} (-1)^{t_3 + t_5} ₃F₂(t | 1)`.
    pub residual: i64,
    /// The bracketed integer; `K_4 = q(q - 1) bracket / k⁶`.
    pub bracket: i64,
    pub count: u64,
}

/// `K_4(G_k(q))` from the aggregates `R_k`, `S_k`, `S_k^-` and the residual
/// hypergeometric sum over `X_k`.
pub fn k4_reduced(f: &FieldTable, k: u32, mode: ResidualMode) -> Result<ReducedK4> {
    check_valid(f, k)?;
    let agg = aggregates(f, k)?;
    let table = TupleTable::new(f, k, f.one())?;
    let residual = match mode {
        ResidualMode::Full => residual_full(&table),
        ResidualMode::Orbits => residual_by_orbits(&table, &enumerate_orbits(k)?),
        ResidualMode::Both => {
            let full = residual_full(&table);
            let orbits = residual_by_orbits(&table, &enumerate_orbits(k)?);
            if full != orbits {
                return Err(Error::ModeDisagreement {
                    full: full.to_string(),
                    orbits: orbits.to_string(),
                });
            }
            full
        }
    }
    .to_i64()?;
    let (q, kk) = (f.order() as i64, k as i64);
    let (r, s, sm) = (agg.r, agg.s, agg.s_minus);
    let bracket = 10 * r * r + 5 * (q - kk * kk + 1) * r - 10 * s - 5 * sm + q * q
        - 10 * (kk - 1).pow(2) * q
        + 5 * kk * kk * (kk - 1)
        + 1
        + residual;
    let count = exact_count(BigInt::from(q) * (q - 1) * bracket, BigInt::from(kk).pow(6))?;
    Ok(ReducedK4 {
        aggregates: agg,
        residual,
        bracket,
        count,
    })
}

/// `K_3(G_k(q)) = q(q - 1)(R_k + q - 2k + 1) / k³`.
pub fn k3_jacobi(f: &FieldTable, k: u32) -> Result<u64> {
    check_valid(f, k)?;
    let r = aggregates(f, k)?.r;
    let (q, kk) = (f.order() as i64, k as i64);
    exact_count(
        BigInt::from(q) * (q - 1) * (r + q - 2 * kk + 1),
        BigInt::from(kk).pow(3),
    )
}

fn div_exact(num: i128, den: i128) -> Result<u64> {
    exact_count(BigInt::from(num), BigInt::from(den))
}

/// `K_4(G_2(q)) = q(q - 1)(q - 3)(q - 7) / 64`.
pub fn closed_k4_order2(q: u64) -> Result<u64> {
    let q = q as i128;
    div_exact(q * (q - 1) * (q - 3) * (q - 7), 64)
}

/// `K_4(G_4(q)) = q(q - 1)/4096 · [q² + 2q(5x - 21) + 24x² - 150x + 241 + 10F]`
/// with `F = q² ₃F₂(χ_4, φ, φ; ε, ε | 1)`.
pub fn closed_k4_order4(q: u64, x: i64, big_f: i64) -> Result<u64> {
    let (q, x, big_f) = (q as i128, x as i128, big_f as i128);
    let bracket = q * q + 2 * q * (5 * x - 21) + 24 * x * x - 150 * x + 241 + 10 * big_f;
    div_exact(q * (q - 1) * bracket, 4096)
}

/// `K_3(G_2(q)) = q(q - 1)(q - 3) / 8`.
pub fn closed_k3_order2(q: u64) -> Result<u64> {
    let q = q as i128;
    div_exact(q * (q - 1) * (q - 3), 8)
}

/// `K_3(G_4(q)) = q(q - 1)(q + 2x - 7) / 64`.
pub fn closed_k3_order4(q: u64, x: i64) -> Result<u64> {
    let (q, x) = (q as i128, x as i128);
    div_exact(q * (q - 1) * (q + 2 * x - 7), 64)
}

/// `q² ₃F₂(χ_4, φ, φ; ε, ε | 1)` as an integer.
pub fn chi4_phi_phi(f: &FieldTable) -> Result<i64> {
    let chi4 = Character::of_order(f, 4)?;
    let phi = Character::quadratic(f)?;
    let eps = Character::trivial(f);
    f3f2_charsum(f, chi4, phi, phi, eps, eps, f.one())
        .num
        .to_i64()
}

/// The closed form for `K_m(G_k(q))`, `k ∈ {2, 4}`, `m ∈ {3, 4}`.
pub fn closed_form(f: &FieldTable, k: u32, m: usize) -> Result<u64> {
    check_valid(f, k)?;
    let q = f.order() as u64;
    match (k, m) {
        (2, 3) => closed_k3_order2(q),
        (2, 4) => closed_k4_order2(q),
        (4, 3) => closed_k3_order4(q, two_squares(q, Normalization::Unconditional)?.x),
        (4, 4) => closed_k4_order4(
            q,
            two_squares(q, Normalization::Unconditional)?.x,
            chi4_phi_phi(f)?,
        ),
        (_, 3 | 4) => Err(Error::Unsupported(format!("no closed form for k = {k}"))),
        _ => Err(Error::UnsupportedOrder(m)),
    }
}

/// How a count is obtained.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Enumeration on the explicit digraph.
    Brute,
    /// `K_4` from the hypergeometric sum over all of `Z_k⁵`.
    FullSum,
    /// `K_4` from Jacobi aggregates plus the residual sum over `X_k`.
    Reduced,
    /// `K_3` from `R_k`.
    Jacobi,
    /// Closed forms for `k ∈ {2, 4}`.
    Closed,
}

/// `K_m(G_k(q))` by the chosen method.
pub fn count(f: &FieldTable, k: u32, m: usize, method: Method, mode: ResidualMode) -> Result<u64> {
    check_valid(f, k)?;
    match (method, m) {
        (_, m) if m != 3 && m != 4 => Err(Error::UnsupportedOrder(m)),
        (Method::Brute, _) => build_g(f, k)?.count_transitive(m),
        (Method::FullSum, 4) => k4_full_sum(f, k),
        (Method::Reduced, 4) => Ok(k4_reduced(f, k, mode)?.count),
        (Method::Jacobi, 3) => k3_jacobi(f, k),
        (Method::Closed, _) => closed_form(f, k, m),
        (method, m) => Err(Error::Unsupported(format!(
            "{method:?} does not count K_{m}"
        ))),
    }
}

/// For `q ≡ 1 (mod 4)`: `J(χ_4, χ_4) + J(χ̄_4, χ̄_4) = -2x` and the sum of
/// their squares equals `2x² - 2y² = 4x² - 2q = 2q - 4y²`, with `x` under
/// the conditional normalization.
pub fn check_order4_jacobi(f: &FieldTable) -> Result<Report> {
    let q = f.order() as i64;
    let TwoSquares { x, y } = two_squares(q as u64, Normalization::Conditional)?;
    let chi = Character::of_order(f, 4)?;
    let j1 = jacobi(f, chi, chi);
    let j2 = jacobi(f, chi.inverse(), chi.inverse());
    let sum = &j1 + &j2;
    let squares = &j1 * &j1 + &j2 * &j2;
    let mut report = Report::new();
    report.push(
        format!("J(chi4, chi4) + J(chi4-bar, chi4-bar) = -2x at q = {q}"),
        sum.to_i64() == Ok(-2 * x),
        format!("{sum}, x = {x}"),
    );
    let forms = [2 * x * x - 2 * y * y, 4 * x * x - 2 * q, 2 * q - 4 * y * y];
    report.push(
        format!("J(chi4, chi4)^2 + J(chi4-bar, chi4-bar)^2 = 2x^2 - 2y^2 = 4x^2 - 2q = 2q - 4y^2 at q = {q}"),
        forms.iter().all(|&v| squares.to_i64() == Ok(v)),
        format!("{squares} vs {forms:?}"),
    );
    Ok(report)
}

/// For `q ≡ 5 (mod 8)`: `R_4 = 2x`, `S_4 = 4x² - 6q`, `S_4^- = 2q - 4x²`.
pub fn check_order4_aggregates(f: &FieldTable) -> Result<Report> {
    check_valid(f, 4)?;
    let q = f.order() as i64;
    let x = two_squares(q as u64, Normalization::Unconditional)?.x;
    let agg = aggregates(f, 4)?;
    let mut report = Report::new();
    report.push(
        format!("R_4 = 2x at q = {q}"),
        agg.r == 2 * x,
        format!("R_4 = {}, x = {x}", agg.r),
    );
    report.push(
        format!("S_4 = 4x^2 - 6q at q = {q}"),
        agg.s == 4 * x * x - 6 * q,
        format!("S_4 = {}", agg.s),
    );
    report.push(
        format!("S_4^- = 2q - 4x^2 at q = {q}"),
        agg.s_minus == 2 * q - 4 * x * x,
        format!("S_4^- = {}", agg.s_minus),
    );
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::{build_field, build_field_of_order, is_prime};

    #[test]
    fn two_squares_examples() {
        for rule in [Normalization::Conditional, Normalization::Unconditional] {
            assert_eq!(two_squares(125, rule).unwrap(), TwoSquares { x: -11, y: 2 });
            assert_eq!(two_squares(13, rule).unwrap(), TwoSquares { x: -3, y: 2 });
            assert_eq!(two_squares(5, rule).unwrap(), TwoSquares { x: 1, y: 2 });
        }
        assert_eq!(two_squares(9, Normalization::Conditional).unwrap().x, -3);
        assert!(matches!(
            two_squares(9, Normalization::Unconditional),
            Err(Error::NoDecomposition { .. })
        ));
        assert!(matches!(
            two_squares(12, Normalization::Conditional),
            Err(Error::NotPrimePower(12))
        ));
    }

    #[test]
    fn normalizations_agree_below_10000() {
        for q in (5..10_000u64).step_by(8) {
            if prime_power(q).is_none() {
                continue;
            }
            let a = two_squares(q, Normalization::Conditional).unwrap();
            let b = two_squares(q, Normalization::Unconditional).unwrap();
            assert_eq!(a, b, "q = {q}");
        }
    }

    #[test]
    fn closed_form_arithmetic() {
        assert_eq!(closed_k4_order2(7).unwrap(), 0);
        assert_eq!(closed_k4_order2(11).unwrap(), 55);
        assert_eq!(closed_k4_order4(125, -11, -142).unwrap(), 0);
        assert_eq!(closed_k3_order4(13, -3).unwrap(), 0);
        assert_eq!(closed_k3_order2(7).unwrap(), 21);
        assert_eq!(closed_k3_order2(3).unwrap(), 0);
    }

    #[test]
    fn point_values() {
        let f7 = build_field(7, 1).unwrap();
        assert_eq!(k4_full_sum(&f7, 2).unwrap(), 0);
        assert_eq!(k3_jacobi(&f7, 2).unwrap(), 21);
        let f11 = build_field(11, 1).unwrap();
        assert_eq!(k4_full_sum(&f11, 2).unwrap(), 55);
        assert_eq!(k3_jacobi(&build_field(3, 1).unwrap(), 2).unwrap(), 0);
        assert_eq!(k3_jacobi(&build_field(13, 1).unwrap(), 4).unwrap(), 0);
        let f43 = build_field(43, 1).unwrap();
        assert_eq!(k3_jacobi(&f43, 6).unwrap(), 0);
        assert_eq!(build_g(&f43, 6).unwrap().count_transitive(3).unwrap(), 0);
    }

    #[test]
    fn all_methods_agree_on_small_fields() {
        for (q, k) in [
            (7u64, 2u32),
            (11, 2),
            (13, 4),
            (29, 4),
            (31, 6),
            (27, 2),
            (25, 8),
        ] {
            let f = build_field_of_order(q).unwrap();
            let brute4 = count(&f, k, 4, Method::Brute, ResidualMode::Full).unwrap();
            let brute3 = count(&f, k, 3, Method::Brute, ResidualMode::Full).unwrap();
            assert_eq!(k4_full_sum(&f, k).unwrap(), brute4, "q = {q}, k = {k}");
            assert_eq!(
                k4_reduced(&f, k, ResidualMode::Both).unwrap().count,
                brute4,
                "q = {q}, k = {k}"
            );
            assert_eq!(k3_jacobi(&f, k).unwrap(), brute3);
            if k <= 4 {
                assert_eq!(closed_form(&f, k, 4).unwrap(), brute4);
                assert_eq!(closed_form(&f, k, 3).unwrap(), brute3);
            }
        }
    }

    #[test]
    fn orbit_residual_at_13() {
        let f = build_field(13, 1).unwrap();
        let table = TupleTable::new(&f, 4, f.one()).unwrap();
        let v = |t| table.signed_num(crate::hyp::TupleParam(t));
        let expected = v([1, 2, 2, 0, 0]).scale(&BigInt::from(10)) + v([2, 2, 2, 0, 0]);
        assert_eq!(residual_full(&table), expected);
    }

    #[test]
    fn method_order_mismatch() {
        let f = build_field(7, 1).unwrap();
        assert!(count(&f, 2, 3, Method::FullSum, ResidualMode::Full).is_err());
        assert!(count(&f, 2, 4, Method::Jacobi, ResidualMode::Full).is_err());
        assert_eq!(
            count(&f, 2, 5, Method::Brute, ResidualMode::Full),
            Err(Error::UnsupportedOrder(5))
        );
        assert!(closed_form(&build_field(31, 1).unwrap(), 6, 4).is_err());
    }

    #[test]
    fn order4_jacobi_identities() {
        for q in [5u64, 9, 13, 17, 25, 29, 37, 41, 49, 81, 125] {
            let f = build_field_of_order(q).unwrap();
            let report = check_order4_jacobi(&f).unwrap();
            assert!(report.passed(), "{report}");
        }
    }

    #[test]
    fn order4_aggregates() {
        for q in [5u64, 13, 29, 37, 53, 61, 101, 125] {
            if !is_prime(q) && q != 125 {
                continue;
            }
            let report = check_order4_aggregates(&build_field_of_order(q).unwrap()).unwrap();
            assert!(report.passed(), "{report}");
        }
    }
}
