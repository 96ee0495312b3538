//! Exact integer and digit utilities: base-p expansions, Lucas residues,
//! multiplicative orders and 2-adic valuations.
//!
//! Everything here is a pure function on immutable values. Quantities that
//! can outgrow 64 bits (powers `p^h`, digit-vector values, counts) are
//! [`BigUint`]; moduli and single digits stay in `u64`.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

const TRIAL_DIVISION_LIMIT: u64 = 1 << 20;
const MILLER_RABIN_WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo the prime `p` (Fermat). `a` must not be divisible by `p`.
pub(crate) fn inv_mod_prime(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow_mod(a, p - 2, p)
}

fn miller_rabin(n: u64, a: u64) -> bool {
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mut x = pow_mod(a % n, d, n);
    if x == 1 || x == n - 1 {
        return true;
    }
    for _ in 1..s {
        x = mul_mod(x, x, n);
        if x == n - 1 {
            return true;
        }
    }
    false
}

/// Deterministic primality test for 64-bit integers: trial division up to
/// 2^20, then Miller-Rabin with the first twelve primes as witnesses.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d <= TRIAL_DIVISION_LIMIT && d * d <= n {
        if n % d == 0 {
            return n == d;
        }
        d += 1;
    }
    if d * d > n {
        return true;
    }
    MILLER_RABIN_WITNESSES
        .iter()
        .all(|&a| a % n == 0 || miller_rabin(n, a))
}

pub fn ensure_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::param(format!("p = {p} is not prime")))
    }
}

pub fn pow_big(base: u64, exp: u32) -> BigUint {
    num_traits::pow(BigUint::from(base), exp as usize)
}

/// Prime factorisation by trial division, as (prime, multiplicity) pairs.
pub(crate) fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (f, _)| acc / f * (f - 1))
}

/// Smallest `h >= 1` with `p^h = 1 (mod n)`.
pub fn mult_order(p: u64, n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::param("modulus must be positive"));
    }
    if p.gcd(&n) != 1 {
        return Err(Error::param(format!("gcd({p}, {n}) != 1")));
    }
    if n == 1 {
        return Ok(1);
    }
    let mut order = euler_phi(n);
    for (f, _) in factorize(order) {
        while order % f == 0 && pow_mod(p, order / f, n) == 1 {
            order /= f;
        }
    }
    Ok(order)
}

/// Largest `e` with `2^e | n`; `None` stands for infinity (`n = 0`).
pub fn two_adic_valuation(n: u64) -> Option<u32> {
    if n == 0 {
        None
    } else {
        Some(n.trailing_zeros())
    }
}

/// If `value = base^e` for some `e >= 0`, returns `e`.
pub(crate) fn exact_log(base: u64, value: u64) -> Option<u32> {
    if base < 2 || value == 0 {
        return None;
    }
    let mut e = 0;
    let mut v = value;
    while v % base == 0 {
        v /= base;
        e += 1;
    }
    (v == 1).then_some(e)
}

/// Fixed-length little-endian base-p digit vector: `digits[r]` is the
/// coefficient of `p^r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DigitVec {
    digits: Vec<u64>,
    base: u64,
}

impl DigitVec {
    pub fn zero(base: u64, len: usize) -> Self {
        DigitVec {
            digits: vec![0; len],
            base,
        }
    }

    /// Builds a digit vector from raw digits; every digit must be below `base`.
    pub fn from_digits(digits: Vec<u64>, base: u64) -> Result<Self> {
        if base < 2 {
            return Err(Error::param("digit base must be at least 2"));
        }
        if let Some(d) = digits.iter().find(|&&d| d >= base) {
            return Err(Error::Range(format!("digit {d} not below base {base}")));
        }
        if digits.is_empty() {
            return Err(Error::param("digit vector length must be at least 1"));
        }
        Ok(DigitVec { digits, base })
    }

    /// Expansion of `x` with exactly `len` digits; fails when `x >= base^len`.
    pub(crate) fn expand(x: &BigUint, base: u64, len: usize) -> Result<Self> {
        let mut digits = Vec::with_capacity(len);
        // peel off as many base digits per big division as fit in a u64
        let mut chunk_len = 1usize;
        let mut chunk = base;
        while let Some(next) = chunk.checked_mul(base) {
            chunk = next;
            chunk_len += 1;
        }
        let mut rest = x.clone();
        while digits.len() < len && !rest.is_zero() {
            let (quot, rem) = rest.div_rem(&BigUint::from(chunk));
            let mut r = rem.to_u64().expect("remainder below u64 chunk");
            for _ in 0..chunk_len {
                digits.push(r % base);
                r /= base;
            }
            rest = quot;
        }
        let overflow = digits.len() > len && digits[len..].iter().any(|&d| d != 0);
        if !rest.is_zero() || overflow {
            return Err(Error::Range(format!(
                "{x} does not fit in {len} base-{base} digits"
            )));
        }
        digits.resize(len, 0);
        Ok(DigitVec { digits, base })
    }

    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn value(&self) -> BigUint {
        let base = BigUint::from(self.base);
        self.digits
            .iter()
            .rev()
            .fold(BigUint::zero(), |acc, &d| acc * &base + d)
    }

    /// Digitwise domination: every digit of `self` is at most the matching
    /// digit of `other`. By Lucas this is `C(other, self) != 0 (mod p)`.
    pub fn is_dominated_by(&self, other: &DigitVec) -> bool {
        debug_assert_eq!(self.base, other.base);
        let n = self.digits.len().max(other.digits.len());
        (0..n).all(|r| {
            let a = self.digits.get(r).copied().unwrap_or(0);
            let b = other.digits.get(r).copied().unwrap_or(0);
            a <= b
        })
    }

    /// In-place addition; returns `false` if the sum overflowed the fixed length.
    pub(crate) fn add_assign(&mut self, other: &DigitVec) -> bool {
        let mut carry = 0u64;
        let base = self.base;
        let others = other.digits.iter().copied().chain(std::iter::repeat(0));
        for (d, o) in self.digits.iter_mut().zip(others) {
            // both digits are below base, so the sum is below 2 * base
            let s = *d + o + carry;
            if s >= base {
                *d = s - base;
                carry = 1;
            } else {
                *d = s;
                carry = 0;
            }
        }
        carry == 0
    }
}

/// Base-p expansion of `x` with exactly `h` digits (zero padded).
pub fn base_p_digits(x: &BigUint, p: u64, h: usize) -> Result<DigitVec> {
    ensure_prime(p)?;
    if h == 0 {
        return Err(Error::param("digit length h must be at least 1"));
    }
    DigitVec::expand(x, p, h)
}

fn digits_of(x: &BigUint, p: u64) -> Vec<u64> {
    let len = (x.bits() as usize).max(1);
    DigitVec::expand(x, p, len)
        .expect("bit length bounds the digit count")
        .digits
}

/// `C(b, a) != 0 (mod p)`, decided by digit domination.
pub fn lucas_nonzero(a: &BigUint, b: &BigUint, p: u64) -> Result<bool> {
    ensure_prime(p)?;
    if a > b {
        return Ok(false);
    }
    let da = digits_of(a, p);
    let db = digits_of(b, p);
    Ok(da
        .iter()
        .zip(db.iter().chain(std::iter::repeat(&0)))
        .all(|(x, y)| x <= y))
}

/// `C(x, y) mod p` for single digits `x, y < p`.
pub(crate) fn digit_binom_mod(x: u64, y: u64, p: u64) -> u64 {
    if y > x {
        return 0;
    }
    let y = y.min(x - y);
    let mut num = 1u64;
    let mut den = 1u64;
    for k in 0..y {
        num = mul_mod(num, x - k, p);
        den = mul_mod(den, k + 1, p);
    }
    mul_mod(num, inv_mod_prime(den, p), p)
}

/// `C(b, a) mod p` as the product of single-digit binomials.
pub fn binom_mod_p(b: &BigUint, a: &BigUint, p: u64) -> Result<u64> {
    ensure_prime(p)?;
    if a > b {
        return Ok(0);
    }
    let da = digits_of(a, p);
    let db = digits_of(b, p);
    let mut acc = 1 % p;
    for (r, &y) in db.iter().enumerate() {
        let x = da.get(r).copied().unwrap_or(0);
        acc = mul_mod(acc, digit_binom_mod(y, x, p), p);
        if acc == 0 {
            break;
        }
    }
    Ok(acc)
}

/// Exact division; a remainder is reported as an internal error.
pub(crate) fn exact_div(num: &BigUint, den: &BigUint, what: &str) -> Result<BigUint> {
    let (q, r) = num.div_rem(den);
    if r.is_zero() {
        Ok(q)
    } else {
        Err(Error::internal(format!("{what}: {num} is not divisible by {den}")))
    }
}
