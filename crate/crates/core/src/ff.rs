//! Finite fields `F_q`, `q = p^r`, in discrete-log representation.
//!
//! A [`FieldTable`] fixes a primitive element `ω` (the root of the
//! lexicographically smallest primitive modulus, or the smallest primitive
//! root when `r = 1`) and stores three tables built once at construction:
//!
//! * `exp[m]`: polynomial index of `ω^m`,
//! * `log[i]`: inverse of `exp` on nonzero polynomial indices,
//! * `zech[m]`: `log(1 + ω^m)`, the Zech logarithm.
//!
//! A polynomial index encodes `c_0 + c_1 x + ... + c_{r-1} x^{r-1}` as
//! `c_0 + c_1 p + ... + c_{r-1} p^{r-1}`, so for prime fields the index of an
//! element is the integer it represents.

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest field order accepted by [`build_field`].
pub const DEFAULT_FIELD_CAP: u64 = 1 << 20;

const NONE: u32 = u32::MAX;

/// An element of a [`FieldTable`]: either zero or `ω^m` stored as `m`.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct FieldElem(u32);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(NONE);

    pub fn is_zero(self) -> bool {
        self.0 == NONE
    }

    /// Discrete logarithm base `ω`, `None` for zero.
    pub fn log(self) -> Option<u32> {
        (self.0 != NONE).then_some(self.0)
    }
}

/// Parameters that determine a field up to the choice of modulus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FieldSpec {
    pub p: u32,
    pub r: u32,
    pub q: u32,
    /// Monic modulus, low degree first, length `r + 1`. For `r = 1` this is
    /// `x - ω`.
    pub modulus: Vec<u32>,
}

#[derive(Clone, Debug)]
pub struct FieldTable {
    spec: FieldSpec,
    exp: Vec<u32>,
    log: Vec<u32>,
    zech: Vec<u32>,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors of `n`, ascending.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Writes `q = p^r` with `p` prime, if possible.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    let factors = prime_factors(q);
    if factors.len() != 1 {
        return None;
    }
    let p = factors[0];
    let mut r = 0;
    let mut n = q;
    while n > 1 {
        n /= p;
        r += 1;
    }
    Some((p as u32, r))
}

/// `true` iff `k ≥ 2` is even, `q` is a prime power and `q ≡ k + 1 (mod 2k)`.
pub fn valid_modulus(q: u64, k: u32) -> bool {
    k >= 2
        && k.is_multiple_of(2)
        && q % (2 * k as u64) == (k as u64 + 1) % (2 * k as u64)
        && prime_power(q).is_some()
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

pub fn smallest_primitive_root(p: u32) -> Result<u32> {
    if !is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    primitive_roots(p)
        .next()
        .ok_or(Error::NoPrimitivePolynomial { p, r: 1 })
}

fn primitive_roots(p: u32) -> impl Iterator<Item = u32> {
    let n = p as u64 - 1;
    let factors = prime_factors(n);
    (1..p).filter(move |&g| {
        if p == 2 {
            return true;
        }
        factors
            .iter()
            .all(|&l| pow_mod(g as u64, n / l, p as u64) != 1)
    })
}

/// Arithmetic in `Z_p[x] / (f)` for a monic `f` of degree `r`.
struct PolyRing<'a> {
    p: u64,
    modulus: &'a [u32],
}

impl PolyRing<'_> {
    fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let r = self.degree();
        let mut prod = vec![0u64; 2 * r];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        for i in (r..2 * r).rev() {
            let top = prod[i];
            if top == 0 {
                continue;
            }
            prod[i] = 0;
            for j in 0..r {
                let sub = top * self.modulus[j] as u64 % self.p;
                let idx = i - r + j;
                prod[idx] = (prod[idx] + self.p - sub) % self.p;
            }
        }
        prod.truncate(r);
        prod
    }

    fn pow_x(&self, mut e: u64) -> Vec<u64> {
        let r = self.degree();
        let mut acc = vec![0u64; r];
        acc[0] = 1;
        let mut base = vec![0u64; r];
        if r == 1 {
            base[0] = (self.p - self.modulus[0] as u64) % self.p;
        } else {
            base[1] = 1;
        }
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

fn is_one(v: &[u64]) -> bool {
    v[0] == 1 && v[1..].iter().all(|&c| c == 0)
}

/// `true` iff the monic `modulus` (low degree first) has a root generating
/// `F_{p^r}^*`.
pub fn is_primitive(p: u32, modulus: &[u32]) -> bool {
    let r = modulus.len().saturating_sub(1);
    if r == 0 || modulus[r] != 1 || modulus[0].is_multiple_of(p) {
        return false;
    }
    let ring = PolyRing {
        p: p as u64,
        modulus,
    };
    let n = (p as u64).pow(r as u32) - 1;
    if !is_one(&ring.pow_x(n)) {
        return false;
    }
    prime_factors(n)
        .iter()
        .all(|&l| !is_one(&ring.pow_x(n / l)))
}

/// Primitive monic moduli of degree `r` over `Z_p` in lexicographic order of
/// their coefficients, compared low degree first. For `r = 1` these are the
/// polynomials `x - g` for the primitive roots `g` in increasing order.
pub fn primitive_moduli(p: u32, r: u32) -> Box<dyn Iterator<Item = Vec<u32>>> {
    if r == 1 {
        return Box::new(primitive_roots(p).map(move |g| vec![(p - g) % p, 1]));
    }
    let count = (p as u64).pow(r);
    Box::new((0..count).filter_map(move |idx| {
        let mut coeffs = vec![0u32; r as usize + 1];
        let mut rest = idx;
        for i in (0..r as usize).rev() {
            coeffs[i] = (rest % p as u64) as u32;
            rest /= p as u64;
        }
        coeffs[r as usize] = 1;
        is_primitive(p, &coeffs).then_some(coeffs)
    }))
}

/// Builds `F_{p^r}` with the default size cap.
pub fn build_field(p: u32, r: u32) -> Result<FieldTable> {
    build_field_with_cap(p, r, DEFAULT_FIELD_CAP)
}

pub fn build_field_with_cap(p: u32, r: u32, cap: u64) -> Result<FieldTable> {
    if !is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    if r == 0 {
        return Err(Error::ZeroDegree);
    }
    let q = (p as u64).checked_pow(r).unwrap_or(u64::MAX);
    if q > cap {
        return Err(Error::FieldTooLarge { q, cap });
    }
    let modulus = primitive_moduli(p, r)
        .next()
        .ok_or(Error::NoPrimitivePolynomial { p, r })?;
    FieldTable::with_modulus(p, modulus)
}

/// Builds `F_q` for a prime power `q`.
pub fn build_field_of_order(q: u64) -> Result<FieldTable> {
    let (p, r) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
    build_field(p, r)
}

impl FieldTable {
    /// Builds the field from an explicit primitive modulus.
    pub fn with_modulus(p: u32, modulus: Vec<u32>) -> Result<FieldTable> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if !is_primitive(p, &modulus) {
            return Err(Error::NotPrimitive(modulus));
        }
        let r = modulus.len() - 1;
        let q = (p as usize).pow(r as u32);
        let n = q - 1;

        let mut exp = Vec::with_capacity(n);
        let mut log = vec![NONE; q];
        let mut digits = vec![0u32; r];
        digits[0] = 1;
        for m in 0..n {
            let idx = digits
                .iter()
                .rev()
                .fold(0usize, |acc, &d| acc * p as usize + d as usize);
            exp.push(idx as u32);
            log[idx] = m as u32;
            // multiply by x and reduce with x^r = -(m_0 + ... + m_{r-1} x^{r-1})
            let top = digits[r - 1];
            for i in (1..r).rev() {
                digits[i] = digits[i - 1];
            }
            digits[0] = 0;
            if top != 0 {
                for i in 0..r {
                    let sub = (top as u64 * modulus[i] as u64 % p as u64) as u32;
                    digits[i] = (digits[i] + p - sub) % p;
                }
            }
        }

        let mut zech = vec![NONE; n];
        for m in 0..n {
            let idx = exp[m] as usize;
            let plus_one = if idx % p as usize == p as usize - 1 {
                idx - (p as usize - 1)
            } else {
                idx + 1
            };
            zech[m] = log[plus_one];
        }

        Ok(FieldTable {
            spec: FieldSpec {
                p,
                r: r as u32,
                q: q as u32,
                modulus,
            },
            exp,
            log,
            zech,
        })
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn order(&self) -> u32 {
        self.spec.q
    }

    pub fn characteristic(&self) -> u32 {
        self.spec.p
    }

    /// Order of the multiplicative group, `q - 1`.
    pub fn group_order(&self) -> u32 {
        self.spec.q - 1
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem::ZERO
    }

    pub fn one(&self) -> FieldElem {
        FieldElem(0)
    }

    /// The fixed primitive element `ω`.
    pub fn primitive(&self) -> FieldElem {
        self.from_log(1)
    }

    pub fn from_log(&self, m: u64) -> FieldElem {
        FieldElem((m % self.group_order() as u64) as u32)
    }

    /// `log_ω(-1)`: `(q - 1) / 2` in odd characteristic, `0` otherwise.
    pub fn minus_one_log(&self) -> u32 {
        if self.spec.p == 2 {
            0
        } else {
            self.group_order() / 2
        }
    }

    /// Zech logarithm `log(1 + ω^m)`, `None` when `1 + ω^m = 0`.
    pub fn zech(&self, m: u32) -> Option<u32> {
        let v = self.zech[(m % self.group_order()) as usize];
        (v != NONE).then_some(v)
    }

    /// `log(1 - ω^m)`, `None` when `ω^m = 1`.
    pub fn one_minus_log(&self, m: u32) -> Option<u32> {
        let n = self.group_order();
        self.zech((m % n + self.minus_one_log()) % n)
    }

    pub fn from_poly_index(&self, idx: u32) -> FieldElem {
        FieldElem(self.log[idx as usize])
    }

    pub fn to_poly_index(&self, a: FieldElem) -> u32 {
        match a.log() {
            None => 0,
            Some(m) => self.exp[m as usize],
        }
    }

    /// Coefficients of the polynomial representative, low degree first.
    pub fn coefficients(&self, a: FieldElem) -> Vec<u32> {
        let mut idx = self.to_poly_index(a);
        (0..self.spec.r)
            .map(|_| {
                let c = idx % self.spec.p;
                idx /= self.spec.p;
                c
            })
            .collect()
    }

    /// Image of the integer `n` under `Z → F_q`.
    pub fn from_int(&self, n: i64) -> FieldElem {
        let p = self.spec.p as i64;
        self.from_poly_index(n.rem_euclid(p) as u32)
    }

    /// All `q` elements in polynomial-index order (so `0, 1, 2, ...` for a
    /// prime field).
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        (0..self.spec.q).map(move |i| self.from_poly_index(i))
    }

    /// Nonzero elements in exponent order `ω^0, ω^1, ...`.
    pub fn nonzero(&self) -> impl Iterator<Item = FieldElem> {
        (0..self.group_order()).map(FieldElem)
    }

    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        match (a.log(), b.log()) {
            (Some(x), Some(y)) => self.from_log(x as u64 + y as u64),
            _ => FieldElem::ZERO,
        }
    }

    pub fn inv(&self, a: FieldElem) -> Option<FieldElem> {
        a.log()
            .map(|m| FieldElem((self.group_order() - m) % self.group_order()))
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> Option<FieldElem> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    pub fn pow(&self, a: FieldElem, e: u64) -> FieldElem {
        match a.log() {
            None if e == 0 => self.one(),
            None => FieldElem::ZERO,
            Some(m) => self.from_log(m as u64 * (e % self.group_order() as u64)),
        }
    }

    pub fn neg(&self, a: FieldElem) -> FieldElem {
        match a.log() {
            None => a,
            Some(m) => self.from_log(m as u64 + self.minus_one_log() as u64),
        }
    }

    /// Addition via Zech logarithms: `ω^a + ω^b = ω^a (1 + ω^(b-a))`.
    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        match (a.log(), b.log()) {
            (None, _) => b,
            (_, None) => a,
            (Some(x), Some(y)) => {
                let n = self.group_order();
                match self.zech((y + n - x) % n) {
                    None => FieldElem::ZERO,
                    Some(z) => self.from_log(x as u64 + z as u64),
                }
            }
        }
    }

    /// Addition through polynomial representatives, digit by digit.
    pub fn add_via_poly(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        let p = self.spec.p;
        let (mut x, mut y) = (self.to_poly_index(a), self.to_poly_index(b));
        let mut idx = 0u32;
        let mut place = 1u32;
        for _ in 0..self.spec.r {
            idx += ((x % p + y % p) % p) * place;
            x /= p;
            y /= p;
            place = place.wrapping_mul(p);
        }
        self.from_poly_index(idx)
    }

    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    /// Absolute trace `Tr(a) = a + a^p + ... + a^(p^(r-1))`, as an integer in
    /// `0..p`.
    pub fn trace(&self, a: FieldElem) -> u32 {
        let mut acc = FieldElem::ZERO;
        let mut term = a;
        for _ in 0..self.spec.r {
            acc = self.add(acc, term);
            term = self.pow(term, self.spec.p as u64);
        }
        self.to_poly_index(acc)
    }

    fn check_divides(&self, k: u32) -> Result<()> {
        if k == 0 || !self.group_order().is_multiple_of(k) {
            return Err(Error::NotDivisor {
                k,
                q_minus_one: self.group_order(),
            });
        }
        Ok(())
    }

    /// `log_ω(a) mod k`; class `0` is the subgroup `S_k` of `k`-th powers.
    /// Returns `Ok(None)` for `a = 0`.
    pub fn residue_class(&self, k: u32, a: FieldElem) -> Result<Option<u32>> {
        self.check_divides(k)?;
        Ok(a.log().map(|m| m % k))
    }

    /// The coset `ω^i S_k`.
    pub fn coset(&self, k: u32, i: u32) -> Result<Vec<FieldElem>> {
        self.check_divides(k)?;
        if i >= k {
            return Err(Error::IndexOutOfRange { index: i, bound: k });
        }
        Ok((i..self.group_order())
            .step_by(k as usize)
            .map(FieldElem)
            .collect())
    }

    /// Residue class of `1 - ω^m` modulo `k` for every exponent `m`, with
    /// `None` at `m = 0`. The main lookup table of every character sum over
    /// powers of a fixed order-`k` character.
    pub fn one_minus_classes(&self, k: u32) -> Result<Vec<Option<u32>>> {
        self.check_divides(k)?;
        Ok((0..self.group_order())
            .map(|m| self.one_minus_log(m).map(|l| l % k))
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_order(g: u64, p: u64) -> u64 {
        let mut x = g % p;
        let mut n = 1;
        while x != 1 {
            x = x * g % p;
            n += 1;
        }
        n
    }

    #[test]
    fn smallest_roots_match_direct_order_computation() {
        for p in [3u32, 5, 7, 11, 13, 17, 19, 23, 41, 43, 71, 73] {
            let g = smallest_primitive_root(p).unwrap();
            assert_eq!(brute_order(g as u64, p as u64), p as u64 - 1);
            for h in 2..g {
                assert!(brute_order(h as u64, p as u64) < p as u64 - 1);
            }
        }
        assert_eq!(smallest_primitive_root(7).unwrap(), 3);
        assert_eq!(smallest_primitive_root(3).unwrap(), 2);
    }

    #[test]
    fn prime_field_omega() {
        let f = build_field(7, 1).unwrap();
        assert_eq!(f.to_poly_index(f.primitive()), 3);
        let f = build_field(3, 1).unwrap();
        assert_eq!(f.to_poly_index(f.primitive()), 2);
    }

    #[test]
    fn order_125_field() {
        let f = build_field(5, 3).unwrap();
        assert_eq!(f.order(), 125);
        assert_eq!(f.group_order(), 124);
        let mut seen = [false; 125];
        for a in f.nonzero() {
            let i = f.to_poly_index(a) as usize;
            assert!(!seen[i]);
            seen[i] = true;
        }
        assert!(!seen[0]);
        assert_eq!(f.to_poly_index(f.one()), 1);
    }

    #[test]
    fn modulus_is_lexicographically_first() {
        let f = build_field(3, 2).unwrap();
        let first = f.spec().modulus.clone();
        // every lexicographically smaller monic quadratic must fail primitivity
        for c0 in 0..3u32 {
            for c1 in 0..3u32 {
                if (c0, c1) < (first[0], first[1]) {
                    assert!(!is_primitive(3, &[c0, c1, 1]));
                }
            }
        }
    }

    #[test]
    fn build_errors() {
        assert_eq!(build_field(6, 1).unwrap_err(), Error::NotPrime(6));
        assert_eq!(build_field(3, 0).unwrap_err(), Error::ZeroDegree);
        assert!(matches!(
            build_field(2, 21),
            Err(Error::FieldTooLarge { .. })
        ));
        assert!(matches!(
            FieldTable::with_modulus(5, vec![1, 0, 1]),
            Err(Error::NotPrimitive(_))
        ));
    }

    #[test]
    fn squares_mod_seven() {
        let f = build_field(7, 1).unwrap();
        for n in [1, 2, 4] {
            assert_eq!(f.residue_class(2, f.from_int(n)).unwrap(), Some(0));
        }
        for n in [3, 5, 6] {
            assert_eq!(f.residue_class(2, f.from_int(n)).unwrap(), Some(1));
        }
        assert_eq!(f.residue_class(2, f.zero()).unwrap(), None);
        assert!(f.residue_class(4, f.one()).is_err());

        let mut c: Vec<u32> = f
            .coset(2, 1)
            .unwrap()
            .into_iter()
            .map(|a| f.to_poly_index(a))
            .collect();
        c.sort();
        assert_eq!(c, vec![3, 5, 6]);
        assert!(matches!(f.coset(2, 2), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn trivial_square_class_mod_three() {
        let f = build_field(3, 1).unwrap();
        let s: Vec<u32> = f
            .coset(2, 0)
            .unwrap()
            .into_iter()
            .map(|a| f.to_poly_index(a))
            .collect();
        assert_eq!(s, vec![1]);
    }

    #[test]
    fn minus_one_is_not_a_kth_power() {
        for (q, k) in [
            (7u64, 2u32),
            (13, 4),
            (125, 4),
            (31, 6),
            (41, 8),
            (9, 8),
            (27, 2),
            (343, 6),
        ] {
            assert!(valid_modulus(q, k));
            let f = build_field_of_order(q).unwrap();
            let minus_one = f.neg(f.one());
            assert_eq!(f.residue_class(k, minus_one).unwrap(), Some(k / 2));
        }
    }

    #[test]
    fn valid_modulus_examples() {
        assert!(valid_modulus(7, 2));
        assert!(valid_modulus(125, 4));
        assert!(!valid_modulus(9, 2));
        assert!(!valid_modulus(15, 2)); // not a prime power
        assert!(!valid_modulus(7, 3));
        assert!(!valid_modulus(7, 0));
    }

    #[test]
    fn cosets_partition_the_group() {
        let f = build_field(3, 3).unwrap(); // q = 27, q - 1 = 26
        let mut all: Vec<FieldElem> = (0..2).flat_map(|i| f.coset(2, i).unwrap()).collect();
        assert!(f.coset(2, 0).unwrap().len() == 13);
        all.sort();
        all.dedup();
        assert_eq!(all.len(), 26);
    }

    #[test]
    fn zech_and_poly_addition_agree_exhaustively() {
        for (p, r) in [(2u32, 4u32), (3, 3), (5, 2), (7, 1), (13, 1), (2, 1)] {
            let f = build_field(p, r).unwrap();
            let elems: Vec<FieldElem> = f.elements().collect();
            for &a in &elems {
                for &b in &elems {
                    assert_eq!(f.add(a, b), f.add_via_poly(a, b));
                }
                assert_eq!(f.add(a, f.neg(a)), f.zero());
            }
        }
    }

    #[test]
    fn trace_lands_in_prime_field() {
        let f = build_field(5, 3).unwrap();
        let mut counts = [0; 5];
        for a in f.elements() {
            let t = f.trace(a);
            assert!(t < 5);
            counts[t as usize] += 1;
        }
        // the trace is a surjective linear form
        assert!(counts.iter().all(|&c| c == 25));
    }

    #[test]
    fn prime_power_detection() {
        assert_eq!(prime_power(125), Some((5, 3)));
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }
}
