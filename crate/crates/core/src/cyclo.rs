//! Exact cyclotomic integers in group-ring form.
//!
//! A [`CycNum`] of order `n` is a coefficient vector `(c_0, ..., c_{n-1})`
//! standing for `Σ c_j ζ_n^j`, multiplied by cyclic convolution. The
//! representation is not canonical: two vectors denote the same algebraic
//! integer iff their difference vanishes modulo the cyclotomic polynomial
//! `Φ_n`, which is what [`PartialEq`], [`CycNum::is_zero`] and
//! [`CycNum::to_integer`] reduce by.
//!
//! Values of different orders combine by lifting both to the lcm of the
//! orders, so sums of character values from unrelated subgroups just work.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct CycNum {
    order: usize,
    coeffs: Vec<BigInt>,
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a as u64, b as u64) as usize * b
}

fn mobius(mut n: usize) -> i32 {
    let mut result = 1;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return 0;
            }
            result = -result;
        }
        d += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

fn compute_cyclotomic(n: usize) -> Vec<i64> {
    let divisors: Vec<usize> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    let mut poly = vec![1i64];
    for &d in &divisors {
        if mobius(n / d) == 1 {
            let mut next = vec![0i64; poly.len() + d];
            for (i, &c) in poly.iter().enumerate() {
                next[i + d] += c;
                next[i] -= c;
            }
            poly = next;
        }
    }
    for &d in &divisors {
        if mobius(n / d) == -1 {
            // exact division by x^d - 1
            let deg = poly.len() - 1;
            let mut quot = vec![0i64; deg - d + 1];
            for j in (d..=deg).rev() {
                let above = if j < quot.len() { quot[j] } else { 0 };
                quot[j - d] = poly[j] + above;
            }
            poly = quot;
        }
    }
    poly
}

/// Coefficients of `Φ_n`, low degree first. Cached per `n`.
pub fn cyclotomic_polynomial(n: usize) -> Arc<Vec<i64>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<i64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    let poly = Arc::new(compute_cyclotomic(n));
    cache.lock().unwrap().insert(n, poly.clone());
    poly
}

/// `ζ_n^j`.
pub fn root(n: usize, j: i64) -> CycNum {
    let mut v = CycNum::zero(n);
    v.coeffs[j.rem_euclid(n as i64) as usize] = BigInt::one();
    v
}

impl CycNum {
    pub fn zero(n: usize) -> CycNum {
        assert!(n >= 1, "root order must be positive");
        CycNum {
            order: n,
            coeffs: vec![BigInt::zero(); n],
        }
    }

    pub fn from_int(c: impl Into<BigInt>) -> CycNum {
        CycNum {
            order: 1,
            coeffs: vec![c.into()],
        }
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> CycNum {
        assert!(!coeffs.is_empty(), "root order must be positive");
        CycNum {
            order: coeffs.len(),
            coeffs,
        }
    }

    /// From a histogram of exponents: `Σ counts[j] ζ_n^j` with `n = counts.len()`.
    pub fn from_counts<T: Copy + Into<BigInt>>(counts: &[T]) -> CycNum {
        CycNum::from_coeffs(counts.iter().map(|&c| c.into()).collect())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Re-expresses the value over `ζ_m` for a multiple `m` of the order.
    pub fn lift(&self, m: usize) -> CycNum {
        assert!(
            m.is_multiple_of(self.order),
            "lift target {m} is not a multiple of {}",
            self.order
        );
        if m == self.order {
            return self.clone();
        }
        let step = m / self.order;
        let mut out = CycNum::zero(m);
        for (j, c) in self.coeffs.iter().enumerate() {
            out.coeffs[j * step] = c.clone();
        }
        out
    }

    fn aligned(&self, other: &CycNum) -> (CycNum, CycNum) {
        let m = lcm(self.order, other.order);
        (self.lift(m), other.lift(m))
    }

    pub fn scale(&self, c: &BigInt) -> CycNum {
        CycNum {
            order: self.order,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Complex conjugation `ζ → ζ^{-1}`.
    pub fn conjugate(&self) -> CycNum {
        self.galois(-1)
    }

    /// The automorphism `ζ_n → ζ_n^j`, `gcd(j, n) = 1`.
    pub fn galois(&self, j: i64) -> CycNum {
        let n = self.order;
        assert!(
            gcd(j.rem_euclid(n as i64) as u64, n as u64) == 1,
            "{j} is not a unit modulo {n}"
        );
        let mut out = CycNum::zero(n);
        for (i, c) in self.coeffs.iter().enumerate() {
            let t = (i as i64 * j).rem_euclid(n as i64) as usize;
            out.coeffs[t] += c;
        }
        out
    }

    /// Canonical coordinates: the remainder modulo `Φ_n`, of length
    /// `deg Φ_n = φ(n)`.
    pub fn reduced(&self) -> Vec<BigInt> {
        let phi = cyclotomic_polynomial(self.order);
        let d = phi.len() - 1;
        let mut c = self.coeffs.clone();
        for i in (d..c.len()).rev() {
            if c[i].is_zero() {
                continue;
            }
            let t = std::mem::take(&mut c[i]);
            for (j, &pj) in phi[..d].iter().enumerate() {
                if pj != 0 {
                    c[i - d + j] -= &t * pj;
                }
            }
        }
        c.truncate(d);
        c
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero) || self.reduced().iter().all(Zero::is_zero)
    }

    /// The rational integer this value equals, or [`Error::NotRational`].
    pub fn to_integer(&self) -> Result<BigInt> {
        let red = self.reduced();
        if red[1..].iter().any(|c| !c.is_zero()) {
            return Err(Error::NotRational);
        }
        Ok(red[0].clone())
    }

    pub fn to_i64(&self) -> Result<i64> {
        self.to_integer()?.to_i64().ok_or(Error::NotRational)
    }

    /// Numerical embedding with `ζ_n = exp(2πi/n)`.
    pub fn to_complex(&self) -> Complex64 {
        let n = self.order as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| {
                Complex64::from_polar(c.to_f64().unwrap_or(f64::NAN), 2.0 * PI * j as f64 / n)
            })
            .sum()
    }
}

impl PartialEq for CycNum {
    fn eq(&self, other: &CycNum) -> bool {
        (self - other).is_zero()
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .reduced()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| match j {
                0 => c.to_string(),
                _ if c.is_one() => format!("z{}^{}", self.order, j),
                _ if c.is_negative() && (-c).is_one() => format!("-z{}^{}", self.order, j),
                _ => format!("{}*z{}^{}", c, self.order, j),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl Add<&CycNum> for &CycNum {
    type Output = CycNum;
    fn add(self, rhs: &CycNum) -> CycNum {
        let (mut a, b) = self.aligned(rhs);
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x += y;
        }
        a
    }
}

impl AddAssign<&CycNum> for CycNum {
    fn add_assign(&mut self, rhs: &CycNum) {
        if self.order == rhs.order {
            for (x, y) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                *x += y;
            }
        } else {
            *self = &*self + rhs;
        }
    }
}

impl Sub<&CycNum> for &CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &CycNum) -> CycNum {
        let (mut a, b) = self.aligned(rhs);
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x -= y;
        }
        a
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul<&CycNum> for &CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &CycNum) -> CycNum {
        let (a, b) = self.aligned(rhs);
        let n = a.order;
        let mut out = CycNum::zero(n);
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    out.coeffs[(i + j) % n] += x * y;
                }
            }
        }
        out
    }
}

macro_rules! owned_ops {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr<CycNum> for CycNum {
            type Output = CycNum;
            fn $m(self, rhs: CycNum) -> CycNum { (&self).$m(&rhs) }
        }
        impl $tr<&CycNum> for CycNum {
            type Output = CycNum;
            fn $m(self, rhs: &CycNum) -> CycNum { (&self).$m(rhs) }
        }
        impl $tr<CycNum> for &CycNum {
            type Output = CycNum;
            fn $m(self, rhs: CycNum) -> CycNum { self.$m(&rhs) }
        }
    )*};
}

owned_ops!(Add::add, Sub::sub, Mul::mul);

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

impl Sum for CycNum {
    fn sum<I: Iterator<Item = CycNum>>(iter: I) -> CycNum {
        iter.fold(CycNum::from_int(0), |mut acc, x| {
            acc += &x;
            acc
        })
    }
}

impl<'a> Sum<&'a CycNum> for CycNum {
    fn sum<I: Iterator<Item = &'a CycNum>>(iter: I) -> CycNum {
        iter.fold(CycNum::from_int(0), |mut acc, x| {
            acc += x;
            acc
        })
    }
}
