//! Four finite sets of integer tuples whose sizes feed the closed forms, each
//! counted both by formula and by enumeration.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};

use crate::arith::ensure_prime;
use crate::error::{Error, Result};

/// Largest number of tuples [`enumerate_count`] will visit.
pub const ENUMERATION_CAP: u64 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SetParams {
    /// `(a, b, c, d)` with `a, b in [1, p]`, `1 <= c, d <= min(a, b)`,
    /// `a + b <= c + d + p - 1`.
    Quadruples { p: u64 },
    /// `(a_0..a_(m-1), b_0..b_(n-1))` with `0 <= a_r <= b - 1` and
    /// `0 <= b_s <= min_r a_r`.
    BelowMin { b: u64, m: u32, n: u32 },
    /// As [`SetParams::BelowMin`] with the bound `min_r min(a_r, b - 1 - a_r)`; needs `b >= 2`.
    BelowCentered { b: u64, m: u32, n: u32 },
    /// `(a_0..a_(m-1), b_0..b_(2n-1))` with `0 <= a_r <= b - 1`, the first `n`
    /// entries `b_s <= min_r a_r` and the last `n` entries `b_s <= min_r (b - 1 - a_r)`.
    BelowMinAndComplement { b: u64, m: u32, n: u32 },
}

impl SetParams {
    pub fn name(&self) -> &'static str {
        match self {
            SetParams::Quadruples { .. } => "quadruples",
            SetParams::BelowMin { .. } => "below-min",
            SetParams::BelowCentered { .. } => "below-centered",
            SetParams::BelowMinAndComplement { .. } => "below-min-and-complement",
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            SetParams::Quadruples { p } => ensure_prime(p),
            SetParams::BelowMin { b, m, n } | SetParams::BelowMinAndComplement { b, m, n } => {
                if b < 1 || m < 1 || n < 1 {
                    return Err(Error::param(format!("{self}: need b, m, n >= 1")));
                }
                Ok(())
            }
            SetParams::BelowCentered { b, m, n } => {
                if b < 2 || m < 1 || n < 1 {
                    return Err(Error::param(format!("{self}: need b >= 2 and m, n >= 1")));
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for SetParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            SetParams::Quadruples { p } => write!(f, "{} p={p}", self.name()),
            SetParams::BelowMin { b, m, n }
            | SetParams::BelowCentered { b, m, n }
            | SetParams::BelowMinAndComplement { b, m, n } => write!(f, "{} b={b} m={m} n={n}", self.name()),
        }
    }
}

fn pw(base: u64, e: u32) -> BigInt {
    num_traits::pow(BigInt::from(base), e as usize)
}

fn spw(base: i64, e: u32) -> BigInt {
    num_traits::pow(BigInt::from(base), e as usize)
}

fn to_natural(v: BigInt, what: &SetParams) -> Result<BigUint> {
    if v.is_negative() {
        return Err(Error::internal(format!("{what}: negative count {v}")));
    }
    Ok(v.to_biguint().expect("non-negative"))
}

fn exact(num: BigInt, den: BigInt, what: &SetParams) -> Result<BigInt> {
    if !(&num % &den).is_zero() {
        return Err(Error::internal(format!("{what}: {num} is not divisible by {den}")));
    }
    Ok(num / den)
}

/// Size of the set from its closed formula.
pub fn closed_count(params: &SetParams) -> Result<BigUint> {
    params.validate()?;
    let v = match *params {
        SetParams::Quadruples { p } => {
            let num = BigInt::from(p) * (p + 1) * (BigInt::from(p) * p + p + 2);
            exact(num, BigInt::from(8), params)?
        }
        SetParams::BelowMin { b, m, n } => (0..b).map(|i| (pw(i + 1, m) - pw(i, m)) * pw(b - i, n)).sum(),
        SetParams::BelowCentered { b, m, n } => {
            if b % 2 == 1 {
                let mut s = pw(b + 1, n);
                for i in 1..=(b - 1) / 2 {
                    s += (pw(2 * i + 1, m) - pw(2 * i - 1, m)) * pw(b - 2 * i + 1, n);
                }
                exact(s, pw(2, n), params)?
            } else {
                let s: BigInt = (1..=b / 2).map(|i| (pw(i, m) - pw(i - 1, m)) * pw(b - 2 * i + 2, n)).sum();
                // 2^(m-n) may be fractional; divide after multiplying
                exact(s * pw(2, m), pw(2, n), params)?
            }
        }
        SetParams::BelowMinAndComplement { b, m, n } => {
            let mut s: BigInt = (0..b).map(|i| pw((b - i) * (i + 1), n)).sum();
            for i in 1..b {
                for j in 1..=i {
                    let second = spw(j as i64 + 1, m) - spw(j as i64, m) * 2 + spw(j as i64 - 1, m);
                    s += second * pw((b - i) * (i - j + 1), n);
                }
            }
            s
        }
    };
    to_natural(v, params)
}

/// Number of tuples `enumerate_count` visits for these parameters, if it fits in `u64`.
pub fn enumeration_size(params: &SetParams) -> Option<u64> {
    match *params {
        SetParams::Quadruples { p } => p.checked_pow(4),
        SetParams::BelowMin { b, m, .. }
        | SetParams::BelowCentered { b, m, .. }
        | SetParams::BelowMinAndComplement { b, m, .. } => b.checked_pow(m),
    }
}

/// Calls `f` on every tuple in `[0, b)^m`.
fn for_each_tuple(b: u64, m: u32, mut f: impl FnMut(&[u64])) {
    let mut a = vec![0u64; m as usize];
    loop {
        f(&a);
        let mut r = 0;
        loop {
            if r == a.len() {
                return;
            }
            a[r] += 1;
            if a[r] < b {
                break;
            }
            a[r] = 0;
            r += 1;
        }
    }
}

/// Number of values `x` in `[0, b)` meeting every bound `x <= bound(a_r)`.
fn admissible(b: u64, a: &[u64], bound: impl Fn(u64) -> u64) -> u64 {
    (0..b).filter(|&x| a.iter().all(|&ar| x <= bound(ar))).count() as u64
}

/// Size of the set by testing membership of tuples.
///
/// The conditions on the trailing coordinates `b_s` depend only on the
/// leading tuple and act on each coordinate separately, so for each leading
/// tuple the admissible values of one `b_s` are counted by testing every
/// candidate, and the count is raised to the number of such coordinates.
/// [`enumerate_count_exhaustive`] walks the full product instead.
pub fn enumerate_count(params: &SetParams) -> Result<BigUint> {
    params.validate()?;
    let size = enumeration_size(params).filter(|&s| s <= ENUMERATION_CAP);
    if size.is_none() {
        return Err(Error::Limit(format!("{params}: more than {ENUMERATION_CAP} tuples to enumerate")));
    }
    let mut total = BigUint::zero();
    match *params {
        SetParams::Quadruples { p } => {
            let mut count = 0u64;
            for a in 1..=p {
                for b in 1..=p {
                    for c in 1..=p {
                        for d in 1..=p {
                            if c <= a.min(b) && d <= a.min(b) && a + b < c + d + p {
                                count += 1;
                            }
                        }
                    }
                }
            }
            total += count;
        }
        SetParams::BelowMin { b, m, n } => for_each_tuple(b, m, |a| {
            total += num_traits::pow(BigUint::from(admissible(b, a, |ar| ar)), n as usize);
        }),
        SetParams::BelowCentered { b, m, n } => for_each_tuple(b, m, |a| {
            total += num_traits::pow(BigUint::from(admissible(b, a, |ar| ar.min(b - 1 - ar))), n as usize);
        }),
        SetParams::BelowMinAndComplement { b, m, n } => for_each_tuple(b, m, |a| {
            let low = admissible(b, a, |ar| ar);
            let high = admissible(b, a, |ar| b - 1 - ar);
            total += num_traits::pow(BigUint::from(low * high), n as usize);
        }),
    }
    Ok(total)
}

/// Size of the set by walking every tuple of the ambient box; only for tiny parameters.
pub fn enumerate_count_exhaustive(params: &SetParams) -> Result<u64> {
    params.validate()?;
    let (b, m, extra, kind) = match *params {
        SetParams::Quadruples { .. } => return enumerate_count(params).map(|v| v.try_into().expect("fits")),
        SetParams::BelowMin { b, m, n } => (b, m, n, 0),
        SetParams::BelowCentered { b, m, n } => (b, m, n, 1),
        SetParams::BelowMinAndComplement { b, m, n } => (b, m, 2 * n, 2),
    };
    let size = b.checked_pow(m + extra).filter(|&s| s <= ENUMERATION_CAP);
    if size.is_none() {
        return Err(Error::Limit(format!("{params}: too many tuples for exhaustive enumeration")));
    }
    let n = extra as usize / if kind == 2 { 2 } else { 1 };
    let mut count = 0u64;
    for_each_tuple(b, m + extra, |t| {
        let (a, rest) = t.split_at(m as usize);
        let ok = rest.iter().enumerate().all(|(s, &x)| {
            a.iter().all(|&ar| match kind {
                0 => x <= ar,
                1 => x <= ar.min(b - 1 - ar),
                _ if s < n => x <= ar,
                _ => x <= b - 1 - ar,
            })
        });
        if ok {
            count += 1;
        }
    });
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(params: SetParams) -> BigUint {
        closed_count(&params).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(c(SetParams::Quadruples { p: 2 }), BigUint::from(6u32));
        assert_eq!(c(SetParams::Quadruples { p: 3 }), BigUint::from(21u32));
        assert_eq!(c(SetParams::BelowMin { b: 2, m: 1, n: 1 }), BigUint::from(3u32));
        assert_eq!(enumerate_count(&SetParams::Quadruples { p: 2 }).unwrap(), BigUint::from(6u32));
        for params in [
            SetParams::BelowCentered { b: 3, m: 2, n: 1 },
            SetParams::BelowMinAndComplement { b: 2, m: 1, n: 1 },
        ] {
            assert_eq!(enumerate_count(&params).unwrap(), c(params));
        }
    }

    #[test]
    fn invalid_parameters() {
        assert!(closed_count(&SetParams::Quadruples { p: 4 }).is_err());
        assert!(closed_count(&SetParams::BelowCentered { b: 1, m: 1, n: 1 }).is_err());
        assert!(closed_count(&SetParams::BelowMin { b: 0, m: 1, n: 1 }).is_err());
        assert!(matches!(
            enumerate_count(&SetParams::BelowMin { b: 100, m: 5, n: 1 }),
            Err(Error::Limit(_))
        ));
    }

    #[test]
    fn factored_enumeration_matches_exhaustive() {
        for b in 1..=4u64 {
            for m in 1..=3u32 {
                for n in 1..=3u32 {
                    let mut all = vec![SetParams::BelowMin { b, m, n }, SetParams::BelowMinAndComplement { b, m, n }];
                    if b >= 2 {
                        all.push(SetParams::BelowCentered { b, m, n });
                    }
                    for params in all {
                        let Ok(full) = enumerate_count_exhaustive(&params) else { continue };
                        assert_eq!(enumerate_count(&params).unwrap(), BigUint::from(full), "{params}");
                    }
                }
            }
        }
    }
}
