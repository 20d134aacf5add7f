//! Greene's finite field hypergeometric functions `₂F₁` and `₃F₂`.
//!
//! Every value is returned as a [`ScaledValue`] `num / den` with `num` an
//! exact cyclotomic integer. Two independent evaluation routes exist:
//!
//! * the definitional sum over all `q - 1` characters `χ` of products of
//!   binomial symbols,
//! * the single (for `₂F₁`) or double (for `₃F₂`) character sum over field
//!   elements.
//!
//! [`TupleTable`] evaluates `q² ₃F₂(χ_k^{t_1}, χ_k^{t_2}, χ_k^{t_3};
//! χ_k^{t_4}, χ_k^{t_5} | λ)` for all `k⁵` exponent tuples at once.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::chars::{common_order, jacobi, Character};
use crate::cyclo::CycNum;
use crate::error::{Error, Result};
use crate::ff::{valid_modulus, FieldElem, FieldTable};
use crate::report::Report;

/// The exact value `num / den`, `den > 0`.
#[derive(Clone, Debug)]
pub struct ScaledValue {
    pub num: CycNum,
    pub den: BigInt,
}

impl ScaledValue {
    pub fn new(num: CycNum, den: impl Into<BigInt>) -> ScaledValue {
        let den = den.into();
        assert!(den.is_positive(), "denominator must be positive");
        ScaledValue { num, den }
    }

    pub fn from_int(n: impl Into<BigInt>) -> ScaledValue {
        ScaledValue::new(CycNum::from_int(n), 1)
    }

    pub fn scale(&self, c: impl Into<BigInt>) -> ScaledValue {
        ScaledValue::new(self.num.scale(&c.into()), self.den.clone())
    }

    /// Divides by a positive integer.
    pub fn div_int(&self, d: impl Into<BigInt>) -> ScaledValue {
        ScaledValue::new(self.num.clone(), &self.den * d.into())
    }

    /// Numerator over the given denominator, which must be a multiple of
    /// `den`.
    pub fn numerator_over(&self, den: &BigInt) -> Result<CycNum> {
        if !(den % &self.den).is_zero() {
            return Err(Error::NotIntegral(format!(
                "{} does not divide {den}",
                self.den
            )));
        }
        Ok(self.num.scale(&(den / &self.den)))
    }

    /// The rational integer this value equals.
    pub fn to_integer(&self) -> Result<BigInt> {
        let n = self.num.to_integer()?;
        if !(&n % &self.den).is_zero() {
            return Err(Error::NotIntegral(format!("{n} / {}", self.den)));
        }
        Ok(n / &self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn conjugate(&self) -> ScaledValue {
        ScaledValue::new(self.num.conjugate(), self.den.clone())
    }
}

impl PartialEq for ScaledValue {
    fn eq(&self, other: &ScaledValue) -> bool {
        self.num.scale(&other.den) == other.num.scale(&self.den)
    }
}

impl fmt::Display for ScaledValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / {}", self.num, self.den)
        }
    }
}

impl Add for &ScaledValue {
    type Output = ScaledValue;
    fn add(self, rhs: &ScaledValue) -> ScaledValue {
        if self.den == rhs.den {
            return ScaledValue::new(&self.num + &rhs.num, self.den.clone());
        }
        ScaledValue::new(
            self.num.scale(&rhs.den) + rhs.num.scale(&self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &ScaledValue {
    type Output = ScaledValue;
    fn sub(self, rhs: &ScaledValue) -> ScaledValue {
        self + &(-rhs)
    }
}

impl Neg for &ScaledValue {
    type Output = ScaledValue;
    fn neg(self) -> ScaledValue {
        ScaledValue::new(-&self.num, self.den.clone())
    }
}

impl Neg for ScaledValue {
    type Output = ScaledValue;
    fn neg(self) -> ScaledValue {
        -&self
    }
}

impl Mul for &ScaledValue {
    type Output = ScaledValue;
    fn mul(self, rhs: &ScaledValue) -> ScaledValue {
        ScaledValue::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

/// An exponent tuple `(t_1, ..., t_5) ∈ Z_k⁵`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct TupleParam(pub [u32; 5]);

impl TupleParam {
    pub fn new(t: [i64; 5], k: u32) -> TupleParam {
        TupleParam(t.map(|x| x.rem_euclid(k as i64) as u32))
    }

    /// `(-1)^{t_3 + t_5}`.
    pub fn sign(self) -> i64 {
        if (self.0[2] + self.0[4]).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Position of the tuple in lexicographic order over `Z_k⁵`.
    pub fn index(self, k: u32) -> usize {
        self.0
            .iter()
            .fold(0usize, |acc, &x| acc * k as usize + x as usize)
    }

    pub fn from_index(mut idx: usize, k: u32) -> TupleParam {
        let mut t = [0u32; 5];
        for slot in t.iter_mut().rev() {
            *slot = (idx % k as usize) as u32;
            idx /= k as usize;
        }
        TupleParam(t)
    }

    /// All `k⁵` tuples in lexicographic order.
    pub fn all(k: u32) -> impl Iterator<Item = TupleParam> {
        (0..(k as usize).pow(5)).map(move |i| TupleParam::from_index(i, k))
    }
}

impl fmt::Display for TupleParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d, e] = self.0;
        write!(f, "({a},{b},{c},{d},{e})")
    }
}

fn sign_scaled(f: &FieldTable, chi: Character, v: ScaledValue) -> ScaledValue {
    if chi.at_minus_one(f) == 1 {
        v
    } else {
        -&v
    }
}

/// The binomial symbol `(A over B) = B(-1) J(A, B̄) / q`.
pub fn binom(f: &FieldTable, a: Character, b: Character) -> ScaledValue {
    let j = jacobi(f, a, b.inverse());
    sign_scaled(f, b, ScaledValue::new(j, f.order()))
}

fn log_or_skip(x: FieldElem) -> Option<u64> {
    x.log().map(u64::from)
}

/// `₂F₁(A, B; C | λ)` through `Σ_b AC̄(b) B̄C(1 - b) Ā(b - λ)`; `den = q`.
/// Equal to [`f2f1_definitional`] for `λ ≠ 0` only.
pub fn f2f1_charsum(
    f: &FieldTable,
    a: Character,
    b: Character,
    c: Character,
    lambda: FieldElem,
) -> ScaledValue {
    let (n, e) = common_order(&[a * c.inverse(), b.inverse() * c, a.inverse()]);
    let n64 = n as u64;
    let mut counts = vec![0i64; n];
    for x in f.nonzero() {
        let (Some(l1), Some(l2)) = (log_or_skip(x), log_or_skip(f.sub(f.one(), x))) else {
            continue;
        };
        let Some(l3) = log_or_skip(f.sub(x, lambda)) else {
            continue;
        };
        counts[((e[0] * l1 + e[1] * l2 + e[2] * l3) % n64) as usize] += 1;
    }
    ScaledValue::new(CycNum::from_counts(&counts), f.order())
}

/// `₃F₂(A, B, C; D, E | λ)` through the double character sum
/// `Σ_{a,b} AĒ(a) C̄E(1 - a) B(b) B̄D(b - 1) Ā(a - λb)`; `den = q²`.
/// Equal to [`f3f2_definitional`] for `λ ≠ 0` only.
pub fn f3f2_charsum(
    f: &FieldTable,
    a: Character,
    b: Character,
    c: Character,
    d: Character,
    e: Character,
    lambda: FieldElem,
) -> ScaledValue {
    let (n, w) = common_order(&[
        a * e.inverse(),
        c.inverse() * e,
        b,
        b.inverse() * d,
        a.inverse(),
    ]);
    let n64 = n as u64;
    let g = f.group_order();
    let half = f.minus_one_log();
    let mut counts = vec![0i64; n];
    for i in 1..g {
        let l_one_minus_a = f.one_minus_log(i).expect("a != 1") as u64;
        for j in 1..g {
            // b - 1 = -(1 - b)
            let l_b_minus_one = (f.one_minus_log(j).expect("b != 1") + half) as u64;
            let l_diff = match lambda.log() {
                None => i as u64,
                Some(l) => match f.one_minus_log((j + l + g - i) % g) {
                    None => continue,
                    Some(z) => (i + z) as u64,
                },
            };
            let idx = w[0] * i as u64
                + w[1] * l_one_minus_a
                + w[2] * j as u64
                + w[3] * l_b_minus_one
                + w[4] * l_diff;
            counts[(idx % n64) as usize] += 1;
        }
    }
    ScaledValue::new(CycNum::from_counts(&counts), BigInt::from(f.order()).pow(2))
}

/// `Σ_χ Π_i B_iχ(-1) J(A_iχ, conj(B_iχ)) χ(λ)` over all characters, with
/// `B_0 = ε`: the definitional sum with all powers of `q` cleared.
fn greene_sum(
    f: &FieldTable,
    tops: &[Character],
    bottoms: &[Character],
    lambda: FieldElem,
) -> CycNum {
    let n = f.group_order() as i64;
    (0..n)
        .into_par_iter()
        .map(|s| {
            let chi = Character::new(f, s);
            let lam = match lambda.log() {
                None => return CycNum::from_int(0),
                Some(l) => crate::cyclo::root(n as usize, s * l as i64),
            };
            let mut acc = lam;
            for (i, &top) in tops.iter().enumerate() {
                let bottom = if i == 0 {
                    Character::trivial(f)
                } else {
                    bottoms[i - 1]
                } * chi;
                let j = jacobi(f, top * chi, bottom.inverse());
                acc = acc * j.scale(&BigInt::from(bottom.at_minus_one(f)));
            }
            acc
        })
        .collect::<Vec<_>>()
        .iter()
        .sum()
}

/// Greene's definition of `₂F₁(A, B; C | λ)`; `den = q(q - 1)`.
pub fn f2f1_definitional(
    f: &FieldTable,
    a: Character,
    b: Character,
    c: Character,
    lambda: FieldElem,
) -> ScaledValue {
    let q = BigInt::from(f.order());
    ScaledValue::new(greene_sum(f, &[a, b], &[c], lambda), &q * (&q - 1))
}

/// Greene's definition of `₃F₂(A, B, C; D, E | λ)`; `den = q²(q - 1)`.
pub fn f3f2_definitional(
    f: &FieldTable,
    a: Character,
    b: Character,
    c: Character,
    d: Character,
    e: Character,
    lambda: FieldElem,
) -> ScaledValue {
    let q = BigInt::from(f.order());
    ScaledValue::new(
        greene_sum(f, &[a, b, c], &[d, e], lambda),
        &q * &q * (&q - 1),
    )
}

/// The characters `χ_k^{t_1}, ..., χ_k^{t_5}` of a tuple.
pub fn tuple_characters(f: &FieldTable, k: u32, t: TupleParam) -> Result<[Character; 5]> {
    let chi = Character::of_order(f, k)?;
    Ok(t.0.map(|x| chi.pow(x as i64)))
}

/// `(-1)^{t_3 + t_5} ₃F₂(χ_k^{t_1}, χ_k^{t_2}, χ_k^{t_3}; χ_k^{t_4}, χ_k^{t_5} | λ)`
/// by the double character sum.
pub fn signed_f3f2(
    f: &FieldTable,
    k: u32,
    t: TupleParam,
    lambda: FieldElem,
) -> Result<ScaledValue> {
    let [a, b, c, d, e] = tuple_characters(f, k, t)?;
    Ok(f3f2_charsum(f, a, b, c, d, e, lambda).scale(t.sign()))
}

/// `q² ₃F₂(t | λ)` (unsigned) for every `t ∈ Z_k⁵` at one field.
///
/// Built from the histogram of the residue classes of
/// `(a, 1 - a, b, b - 1, a - λb)` over the `O(q²)` admissible pairs,
/// followed by a character transform over `Z_k⁵` that stays in
/// `Z[ζ_k]`-coefficient form throughout. Values are stored as exponent
/// count vectors of length `k`.
#[derive(Clone, Debug)]
pub struct TupleTable {
    k: u32,
    q: u32,
    counts: Vec<i64>,
}

impl TupleTable {
    pub fn new(f: &FieldTable, k: u32, lambda: FieldElem) -> Result<TupleTable> {
        if k == 0 || !f.group_order().is_multiple_of(k) {
            return Err(Error::NotDivisor {
                k,
                q_minus_one: f.group_order(),
            });
        }
        let ku = k as usize;
        let bins = ku.pow(5);
        let g = f.group_order();
        let half = f.minus_one_log();
        let classes = f.one_minus_classes(k)?;

        // Dual coordinates of a class 5-tuple (c1..c5): the exponent of
        // ζ_k contributed for tuple t is t · d with
        // d = (c1 - c5, c3 - c4, -c2, c4, c2 - c1).
        let hist = (1..g)
            .into_par_iter()
            .fold(
                || vec![0i64; bins],
                |mut h, i| {
                    let c1 = i % k;
                    let c2 = classes[i as usize].expect("a != 1");
                    for j in 1..g {
                        let c3 = j % k;
                        let c4 = (classes[j as usize].expect("b != 1") + half) % k;
                        let c5 = match lambda.log() {
                            None => c1,
                            Some(l) => match classes[((j + l + g - i) % g) as usize] {
                                None => continue,
                                Some(z) => (c1 + z) % k,
                            },
                        };
                        let d = [
                            (c1 + k - c5) % k,
                            (c3 + k - c4) % k,
                            (k - c2) % k,
                            c4,
                            (c2 + k - c1) % k,
                        ];
                        h[TupleParam(d).index(k)] += 1;
                    }
                    h
                },
            )
            .reduce(
                || vec![0i64; bins],
                |mut a, b| {
                    a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                    a
                },
            );

        // counts[idx * k + e]: coefficient of ζ_k^e. One axis at a time,
        // replace the dual coordinate d_i by the tuple coordinate t_i.
        let mut counts = vec![0i64; bins * ku];
        for (idx, &h) in hist.iter().enumerate() {
            counts[idx * ku] = h;
        }
        for axis in 0..5 {
            let stride = ku.pow(4 - axis as u32);
            let block = stride * ku;
            let mut next = vec![0i64; bins * ku];
            next.par_chunks_mut(block * ku)
                .zip(counts.par_chunks(block * ku))
                .for_each(|(out, inp)| {
                    for rest in 0..stride {
                        for t in 0..ku {
                            let o =
                                &mut out[(t * stride + rest) * ku..(t * stride + rest + 1) * ku];
                            for d in 0..ku {
                                let src =
                                    &inp[(d * stride + rest) * ku..(d * stride + rest + 1) * ku];
                                let shift = (t * d) % ku;
                                for (e, &c) in src.iter().enumerate() {
                                    if c != 0 {
                                        o[(e + shift) % ku] += c;
                                    }
                                }
                            }
                        }
                    }
                });
            counts = next;
        }
        Ok(TupleTable {
            k,
            q: f.order(),
            counts,
        })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    fn slot(&self, t: TupleParam) -> &[i64] {
        let ku = self.k as usize;
        let i = t.index(self.k);
        &self.counts[i * ku..(i + 1) * ku]
    }

    /// `q² ₃F₂(t | λ)`, unsigned.
    pub fn num(&self, t: TupleParam) -> CycNum {
        CycNum::from_counts(self.slot(t))
    }

    /// `q² (-1)^{t_3 + t_5} ₃F₂(t | λ)`.
    pub fn signed_num(&self, t: TupleParam) -> CycNum {
        self.num(t).scale(&BigInt::from(t.sign()))
    }

    /// `Σ_t w(t) q² (-1)^{t_3 + t_5} ₃F₂(t | λ)` over the given weighted
    /// tuples, accumulated in count form.
    pub fn weighted_signed_sum(
        &self,
        terms: impl IntoIterator<Item = (TupleParam, i64)>,
    ) -> CycNum {
        let ku = self.k as usize;
        let mut acc = vec![0i128; ku];
        for (t, w) in terms {
            let w = w as i128 * t.sign() as i128;
            for (a, &c) in acc.iter_mut().zip(self.slot(t)) {
                *a += w * c as i128;
            }
        }
        CycNum::from_counts(&acc)
    }

    /// The signed sum over all `k⁵` tuples.
    pub fn total_signed(&self) -> CycNum {
        self.weighted_signed_sum(TupleParam::all(self.k).map(|t| (t, 1)))
    }
}

fn rand_char<R: Rng>(f: &FieldTable, rng: &mut R) -> Character {
    Character::new(f, rng.gen_range(0..f.group_order() as i64))
}

fn rand_nontrivial<R: Rng>(f: &FieldTable, rng: &mut R) -> Character {
    Character::new(f, rng.gen_range(1..f.group_order() as i64))
}

fn eq_check(report: &mut Report, name: &str, params: String, lhs: &ScaledValue, rhs: &ScaledValue) {
    let ok = lhs == rhs;
    let detail = if ok {
        params
    } else {
        format!("{params}: lhs = {lhs}, rhs = {rhs}")
    };
    report.push(name, ok, detail);
}

/// Random parameters `A, ..., E` with `A, B, C` nontrivial, none of
/// `A, B, C` equal to `D` or `E`, and `ABC ≠ DE`.
fn generic_params<R: Rng>(f: &FieldTable, rng: &mut R) -> [Character; 5] {
    loop {
        let p = [
            rand_nontrivial(f, rng),
            rand_nontrivial(f, rng),
            rand_nontrivial(f, rng),
            rand_char(f, rng),
            rand_char(f, rng),
        ];
        let clash = p[..3].iter().any(|&x| x == p[3] || x == p[4]);
        if !clash && p[0] * p[1] * p[2] != p[3] * p[4] {
            return p;
        }
    }
}

/// Reductions of `₃F₂(· | 1)` to `₂F₁` and binomials, the `₂F₁(· | 1)`
/// evaluation, the `(B, D) ↔ (C, E)` symmetry, and the seven
/// transformation formulas, each on `trials` random parameter draws. Also
/// cross-checks the character-sum and definitional routes.
pub fn identity_suite<R: Rng>(
    f: &FieldTable,
    k: u32,
    trials: usize,
    rng: &mut R,
) -> Result<Report> {
    if !valid_modulus(f.order() as u64, k) {
        return Err(Error::InvalidParameters {
            q: f.order() as u64,
            k,
        });
    }
    let one = f.one();
    let eps = Character::trivial(f);
    let m1 = |x: Character| x.at_minus_one(f);
    let f32 = |p: [Character; 5]| f3f2_charsum(f, p[0], p[1], p[2], p[3], p[4], one);
    let f21 = |a, b, c| f2f1_charsum(f, a, b, c, one);
    let bn = |a, b| binom(f, a, b);
    let q = f.order();
    let mut report = Report::new();

    for _ in 0..trials {
        let [a, b, c, d, e] = [0; 5].map(|_| rand_char(f, rng));
        let show = |p: &[Character]| {
            let v: Vec<String> = p.iter().map(|x| x.index().to_string()).collect();
            format!("[{}]", v.join(","))
        };

        let lhs = f32([eps, b, c, d, e]);
        let rhs = &f21(b * d.inverse(), c * d.inverse(), e * d.inverse())
            .div_int(q)
            .neg()
            + &(&bn(b, d) * &bn(c, e));
        eq_check(
            &mut report,
            "reduction A = e",
            show(&[b, c, d, e]),
            &lhs,
            &rhs,
        );

        let lhs = f32([a, eps, c, d, e]);
        let rhs = &(&bn(d, a) * &f21(a * d.inverse(), c * d.inverse(), e * d.inverse()))
            .scale(m1(a))
            - &bn(c, e).div_int(q).scale(m1(d));
        eq_check(
            &mut report,
            "reduction B = e",
            show(&[a, c, d, e]),
            &lhs,
            &rhs,
        );

        let lhs = f32([a, b, c, a, e]);
        let rhs = &(&bn(b, a) * &f21(b, c, e))
            - &bn(c * a.inverse(), e * a.inverse())
                .div_int(q)
                .scale(m1(a.inverse()));
        eq_check(
            &mut report,
            "reduction D = A",
            show(&[a, b, c, e]),
            &lhs,
            &rhs,
        );

        let lhs = f32([a, b, c, b, e]);
        let rhs = &f21(a, c, e).div_int(q).neg()
            + &(&bn(a * b.inverse(), b.inverse()) * &bn(c * b.inverse(), e * b.inverse()));
        eq_check(
            &mut report,
            "reduction D = B",
            show(&[a, b, c, e]),
            &lhs,
            &rhs,
        );

        let lhs = f32([a, b, c, d, b]);
        let rhs = &(&bn(c * d.inverse(), b * d.inverse()) * &f21(a, c, d))
            - &bn(a * b.inverse(), b.inverse()).div_int(q).scale(m1(b * d));
        eq_check(
            &mut report,
            "reduction E = B",
            show(&[a, b, c, d]),
            &lhs,
            &rhs,
        );

        let e6 = a * b * c * d.inverse();
        let lhs = f32([a, b, c, d, e6]);
        let rhs = &(&bn(c, d * a.inverse()) * &bn(b, d * c.inverse())).scale(m1(b * c))
            - &bn(d * b.inverse(), a).div_int(q).scale(m1(b * d));
        eq_check(
            &mut report,
            "reduction E = ABC/D",
            show(&[a, b, c, d]),
            &lhs,
            &rhs,
        );

        let lhs = f21(a, b, c);
        let rhs = bn(b, a.inverse() * c).scale(m1(a));
        eq_check(&mut report, "2F1 at 1", show(&[a, b, c]), &lhs, &rhs);

        eq_check(
            &mut report,
            "3F2 symmetry (B, D) <-> (C, E)",
            show(&[a, b, c, d, e]),
            &f32([a, b, c, d, e]),
            &f32([a, c, b, e, d]),
        );

        let p = generic_params(f, rng);
        let [a, b, c, d, e] = p;
        let lhs = f32(p);
        let (di, ei) = (d.inverse(), e.inverse());
        let all = m1(a * b * c * d * e);
        let transforms: [(&str, [Character; 5], i64); 7] = [
            ("transformation T1", [b * di, a * di, c * di, di, e * di], 1),
            (
                "transformation T2",
                [a, a * di, a * ei, a * b.inverse(), a * c.inverse()],
                all,
            ),
            (
                "transformation T3",
                [b * di, b, b * ei, b * a.inverse(), b * c.inverse()],
                all,
            ),
            (
                "transformation T4",
                [a, b, c.inverse() * e, a * b * di, e],
                m1(a * e),
            ),
            (
                "transformation T5",
                [a, d * b.inverse(), c, d, a * c * ei],
                m1(a * d),
            ),
            (
                "transformation T6",
                [a.inverse() * d, b, c, d, b * c * ei],
                m1(b),
            ),
            (
                "transformation T7",
                [
                    a.inverse() * d,
                    b.inverse() * d,
                    c,
                    d,
                    (a * b).inverse() * d * e,
                ],
                m1(a * b),
            ),
        ];
        for (name, image, sign) in transforms {
            eq_check(&mut report, name, show(&p), &lhs, &f32(image).scale(sign));
        }

        let p = [0; 5].map(|_| rand_char(f, rng));
        let lam = f.from_log(rng.gen_range(0..f.group_order() as u64));
        eq_check(
            &mut report,
            "3F2 character sum = definition",
            format!("{} at log lambda = {:?}", show(&p), lam.log()),
            &f3f2_charsum(f, p[0], p[1], p[2], p[3], p[4], lam),
            &f3f2_definitional(f, p[0], p[1], p[2], p[3], p[4], lam),
        );
        eq_check(
            &mut report,
            "2F1 character sum = definition",
            format!("{} at log lambda = {:?}", show(&p[..3]), lam.log()),
            &f2f1_charsum(f, p[0], p[1], p[2], lam),
            &f2f1_definitional(f, p[0], p[1], p[2], lam),
        );
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::{build_field, build_field_of_order};
    use rand::SeedableRng;

    fn rng() -> rand::rngs::StdRng {
        rand::rngs::StdRng::seed_from_u64(7)
    }

    #[test]
    fn binom_examples() {
        let f = build_field(13, 1).unwrap();
        let eps = Character::trivial(&f);
        assert_eq!(binom(&f, eps, eps).num.to_i64().unwrap(), 11);
        for t in 1..12 {
            let chi = Character::new(&f, t);
            assert_eq!(binom(&f, chi, chi).num.to_i64().unwrap(), -1);
            let (a, b) = (chi, Character::new(&f, 5));
            assert_eq!(
                binom(&f, a, b).conjugate(),
                binom(&f, a.inverse(), b.inverse())
            );
        }
    }

    #[test]
    fn f2f1_routes_agree() {
        let f = build_field(13, 1).unwrap();
        let mut r = rng();
        for _ in 0..20 {
            let [a, b, c] = [0; 3].map(|_| Character::new(&f, r.gen_range(0..12)));
            let lam = f.from_int(r.gen_range(1..13));
            assert_eq!(
                f2f1_charsum(&f, a, b, c, lam),
                f2f1_definitional(&f, a, b, c, lam)
            );
        }
    }

    #[test]
    fn routes_differ_only_at_zero() {
        // At λ = 0 the definition vanishes while the character sum
        // collapses to J(C̄, B̄C).
        let f = build_field(3, 3).unwrap();
        for ta in 0..26 {
            let a = Character::new(&f, ta);
            for (tb, tc) in [(0, 0), (3, 5), (13, 13), (1, 25)] {
                let (b, c) = (Character::new(&f, tb), Character::new(&f, tc));
                assert!(f2f1_definitional(&f, a, b, c, f.zero()).is_zero());
                let v = f2f1_charsum(&f, a, b, c, f.zero());
                assert_eq!(v.num, jacobi(&f, c.inverse(), b.inverse() * c));
            }
        }
    }

    #[test]
    fn f3f2_routes_agree_exhaustively_at_q7() {
        let f = build_field(7, 1).unwrap();
        for t in TupleParam::all(2) {
            let [a, b, c, d, e] = tuple_characters(&f, 2, t).unwrap();
            assert_eq!(
                f3f2_charsum(&f, a, b, c, d, e, f.one()),
                f3f2_definitional(&f, a, b, c, d, e, f.one()),
                "{t}"
            );
        }
    }

    #[test]
    fn f3f2_routes_agree_on_random_tuples() {
        let mut r = rng();
        for (q, k) in [(13u64, 4u32), (31, 6)] {
            let f = build_field_of_order(q).unwrap();
            for _ in 0..20 {
                let t = TupleParam::new([0; 5].map(|_| r.gen_range(0..k as i64)), k);
                let [a, b, c, d, e] = tuple_characters(&f, k, t).unwrap();
                assert_eq!(
                    f3f2_charsum(&f, a, b, c, d, e, f.one()),
                    f3f2_definitional(&f, a, b, c, d, e, f.one())
                );
            }
        }
    }

    #[test]
    fn phi_phi_phi_values() {
        for q in [7u64, 11, 19, 23, 27, 31] {
            let f = build_field_of_order(q).unwrap();
            let phi = Character::quadratic(&f).unwrap();
            let eps = Character::trivial(&f);
            assert!(f3f2_charsum(&f, phi, phi, phi, eps, eps, f.one()).is_zero());
        }
        let f = build_field(13, 1).unwrap();
        let phi = Character::quadratic(&f).unwrap();
        let eps = Character::trivial(&f);
        let v = f3f2_charsum(&f, phi, phi, phi, eps, eps, f.one());
        assert_eq!(v.num.to_i64().unwrap(), 10);
    }

    #[test]
    fn chi4_phi_phi_at_125() {
        let f = build_field(5, 3).unwrap();
        let chi4 = Character::of_order(&f, 4).unwrap();
        let phi = Character::quadratic(&f).unwrap();
        let eps = Character::trivial(&f);
        let v = f3f2_charsum(&f, chi4, phi, phi, eps, eps, f.one());
        assert_eq!(v.num.to_i64().unwrap(), -142);
    }

    #[test]
    fn tuple_table_matches_charsum() {
        let mut r = rng();
        for (q, k) in [(7u64, 2u32), (13, 4), (31, 6), (25, 8)] {
            let f = build_field_of_order(q).unwrap();
            for lam in [f.one(), f.primitive(), f.zero()] {
                let table = TupleTable::new(&f, k, lam).unwrap();
                for _ in 0..15 {
                    let t = TupleParam::new([0; 5].map(|_| r.gen_range(0..k as i64)), k);
                    assert_eq!(
                        table.signed_num(t),
                        signed_f3f2(&f, k, t, lam).unwrap().num,
                        "q = {q}, k = {k}, t = {t}"
                    );
                }
            }
        }
    }

    #[test]
    fn zero_tuple_sign_is_positive() {
        let f = build_field(11, 1).unwrap();
        let t = TupleParam([0; 5]);
        let eps = Character::trivial(&f);
        assert_eq!(
            signed_f3f2(&f, 2, t, f.one()).unwrap(),
            f3f2_charsum(&f, eps, eps, eps, eps, eps, f.one())
        );
    }

    #[test]
    fn tuple_index_round_trip() {
        for k in [2u32, 4, 6] {
            for (i, t) in TupleParam::all(k).enumerate() {
                assert_eq!(t.index(k), i);
            }
        }
    }

    #[test]
    fn identities_hold_at_13_4() {
        let f = build_field(13, 1).unwrap();
        let report = identity_suite(&f, 4, 10, &mut rng()).unwrap();
        assert!(report.passed(), "{report}");
    }
}
