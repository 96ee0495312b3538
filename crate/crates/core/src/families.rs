//! Closed-form p-ranks for families of curves.
//!
//! Every family carries its own applicability predicate; [`closed_form`]
//! never guesses the family from `(p, m, n)`. [`match_families`] lists the
//! families that describe a given `y^m = x^n + 1`, and [`counter_gamma`]
//! evaluates the same curve through the counters so the two can be compared.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{CheckedSub, One, Signed, ToPrimitive, Zero};

use crate::arith::{ensure_prime, exact_log, mult_order, pow_big, pow_mod, DigitVec};
use crate::counting::{prank_cn_formula, prank_general};
use crate::curves::{genus, FermatContext};
use crate::error::{Error, Result};
use crate::report::{Method, PRankReport};

/// A family of curves with a closed-form p-rank, with its free parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyId {
    /// `y^m = x^n + 1` with `m | p-1`, `n | p+1`
    DivisorsOfPMinusPlusOne { m: u64, n: u64 },
    /// `y^m = x^(p^h-1) + 1` with `m | p^h - 1`
    ByQMinusOne { m: u64, h: u32 },
    /// `y^N = x^N + 1`, `N = p^2+p+1`
    CubicNormSquare,
    /// `y^N = x^(p^3-1) + 1`, `N = p^2+p+1`
    CubicNormByCubeMinusOne,
    /// `y^N = x^N + 1`, `N = (p^h-1)/2`
    HalfSquare { h: u32 },
    /// `y^N = x^(p^h-1) + 1`, `N = (p^h-1)/2`
    HalfByQMinusOne { h: u32 },
    /// `y^(p^a-1) = x^(p^b-1) + 1`
    PowersMinusOne { a: u32, b: u32 },
    /// `p = 2`, `m | 2^u-1`, `n | 2^v-1`, `gcd(u, v) = 1`: zero
    Char2CoprimeOrders { m: u64, n: u64, u: u32, v: u32 },
    /// `m | p^u+1`, `n | p^v+1`: zero
    PlusOneDivisors { m: u64, n: u64, u: u32, v: u32 },
    /// `y^(p^a+1) = x^(p^b-1) + 1` with `b/gcd(a,b)` even
    PlusMinusEven { a: u32, b: u32 },
    /// `y^(p^a+1) = x^(p^b-1) + 1` with `b/gcd(a,b)` odd
    PlusMinusOdd { a: u32, b: u32 },
    /// `p = 2`, `m | 2^u+1`, `n | 2^v-1`, `v/gcd(u,v)` odd: zero
    Char2PlusMinus { m: u64, n: u64, u: u32, v: u32 },
    /// `y^2 = x^n + 1` for the six shapes of `n` in [`HyperShape`]
    Hyper { shape: HyperShape, r: u32 },
    /// `y^2 = x^n + 1` through the correction-term table
    HyperDeltaTable { n: u64 },
    /// `y^2 = x(x^n + 1)`, `n` odd
    TwistedOdd { n: u64 },
    /// `y^2 = x(x^n + 1)`, `n` even
    TwistedEven { n: u64 },
    /// `y^2 = x(x^(p^h+1) + 1)`
    TwistedPowerPlusOne { h: u32 },
    /// `y^2 = x^(2N) + 1` with `N = (p^h-1)/alpha`, `alpha` odd; same p-rank as `y^2 = x^N + 1`
    HyperOddCofactorDouble { h: u32, alpha: u64 },
    Dgz { h: u32 },
    Bks { h: u32 },
    /// `y^(m(p+1)) = x^(n(p+1)) + 1` with `m, n | p-1`
    ScaledByPPlusOne { m: u64, n: u64 },
}

/// The six exponent shapes `n` (in terms of `p` and `r`) for `y^2 = x^n + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HyperShape {
    /// `p^r - 1`
    PowerMinusOne,
    /// `2(p^r + 1)`
    TwicePowerPlusOne,
    /// `2(p^r - 1)`
    TwicePowerMinusOne,
    /// `p^(2r) + p^r + 1`
    CubicNorm,
    /// `2(p^(2r) + p^r + 1)`
    TwiceCubicNorm,
    /// `p^(3r) - p^(2r) + p^r - 1`
    AlternatingCube,
}

impl HyperShape {
    pub const ALL: [HyperShape; 6] = [
        HyperShape::PowerMinusOne,
        HyperShape::TwicePowerPlusOne,
        HyperShape::TwicePowerMinusOne,
        HyperShape::CubicNorm,
        HyperShape::TwiceCubicNorm,
        HyperShape::AlternatingCube,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            HyperShape::PowerMinusOne => "pr-1",
            HyperShape::TwicePowerPlusOne => "2pr+2",
            HyperShape::TwicePowerMinusOne => "2pr-2",
            HyperShape::CubicNorm => "p2r+pr+1",
            HyperShape::TwiceCubicNorm => "2p2r+2pr+2",
            HyperShape::AlternatingCube => "p3r-p2r+pr-1",
        }
    }

    pub fn exponent(self, p: u64, r: u32) -> Option<u64> {
        let pr = p.checked_pow(r)?;
        let p2r = pr.checked_mul(pr)?;
        match self {
            HyperShape::PowerMinusOne => pr.checked_sub(1),
            HyperShape::TwicePowerPlusOne => pr.checked_add(1)?.checked_mul(2),
            HyperShape::TwicePowerMinusOne => (pr - 1).checked_mul(2),
            HyperShape::CubicNorm => p2r.checked_add(pr)?.checked_add(1),
            HyperShape::TwiceCubicNorm => p2r.checked_add(pr)?.checked_add(1)?.checked_mul(2),
            HyperShape::AlternatingCube => p2r.checked_mul(pr)?.checked_sub(p2r)?.checked_add(pr)?.checked_sub(1),
        }
    }
}

impl FamilyId {
    /// Stable identifier used on the command line and in tables.
    pub fn name(&self) -> &'static str {
        match self {
            FamilyId::DivisorsOfPMinusPlusOne { .. } => "divisors-p-1-p+1",
            FamilyId::ByQMinusOne { .. } => "by-q-1",
            FamilyId::CubicNormSquare => "cubic-norm",
            FamilyId::CubicNormByCubeMinusOne => "cubic-norm-by-p3-1",
            FamilyId::HalfSquare { .. } => "half-q",
            FamilyId::HalfByQMinusOne { .. } => "half-q-by-q-1",
            FamilyId::PowersMinusOne { .. } => "pa-1-pb-1",
            FamilyId::Char2CoprimeOrders { .. } => "char2-coprime-orders",
            FamilyId::PlusOneDivisors { .. } => "plus-one-divisors",
            FamilyId::PlusMinusEven { .. } => "pa+1-pb-1-even",
            FamilyId::PlusMinusOdd { .. } => "pa+1-pb-1-odd",
            FamilyId::Char2PlusMinus { .. } => "char2-plus-minus",
            FamilyId::Hyper { shape, .. } => match shape {
                HyperShape::PowerMinusOne => "hyper-pr-1",
                HyperShape::TwicePowerPlusOne => "hyper-2pr+2",
                HyperShape::TwicePowerMinusOne => "hyper-2pr-2",
                HyperShape::CubicNorm => "hyper-cubic-norm",
                HyperShape::TwiceCubicNorm => "hyper-2cubic-norm",
                HyperShape::AlternatingCube => "hyper-alt-cube",
            },
            FamilyId::HyperDeltaTable { .. } => "hyper-delta",
            FamilyId::TwistedOdd { .. } => "twisted-odd",
            FamilyId::TwistedEven { .. } => "twisted-even",
            FamilyId::TwistedPowerPlusOne { .. } => "twisted-ph+1",
            FamilyId::HyperOddCofactorDouble { .. } => "hyper-odd-cofactor",
            FamilyId::Dgz { .. } => "dgz",
            FamilyId::Bks { .. } => "bks",
            FamilyId::ScaledByPPlusOne { .. } => "scaled-p+1",
        }
    }

    /// The free parameters as `name=value` pairs.
    pub fn params(&self) -> String {
        match *self {
            FamilyId::DivisorsOfPMinusPlusOne { m, n } => format!("m={m} n={n}"),
            FamilyId::ByQMinusOne { m, h } => format!("m={m} h={h}"),
            FamilyId::CubicNormSquare | FamilyId::CubicNormByCubeMinusOne => String::new(),
            FamilyId::HalfSquare { h } | FamilyId::HalfByQMinusOne { h } => format!("h={h}"),
            FamilyId::PowersMinusOne { a, b }
            | FamilyId::PlusMinusEven { a, b }
            | FamilyId::PlusMinusOdd { a, b } => format!("a={a} b={b}"),
            FamilyId::Char2CoprimeOrders { m, n, u, v }
            | FamilyId::PlusOneDivisors { m, n, u, v }
            | FamilyId::Char2PlusMinus { m, n, u, v } => format!("m={m} n={n} u={u} v={v}"),
            FamilyId::Hyper { r, .. } => format!("r={r}"),
            FamilyId::HyperDeltaTable { n } | FamilyId::TwistedOdd { n } | FamilyId::TwistedEven { n } => {
                format!("n={n}")
            }
            FamilyId::TwistedPowerPlusOne { h } | FamilyId::Dgz { h } | FamilyId::Bks { h } => format!("h={h}"),
            FamilyId::HyperOddCofactorDouble { h, alpha } => format!("h={h} alpha={alpha}"),
            FamilyId::ScaledByPPlusOne { m, n } => format!("m={m} n={n}"),
        }
    }

    /// True for the families whose value is zero by a vanishing argument.
    pub fn is_zero_family(&self) -> bool {
        matches!(
            self,
            FamilyId::Char2CoprimeOrders { .. } | FamilyId::PlusOneDivisors { .. } | FamilyId::Char2PlusMinus { .. }
        )
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params = self.params();
        if params.is_empty() {
            f.write_str(self.name())
        } else {
            write!(f, "{} {}", self.name(), params)
        }
    }
}

/// The curve a family value refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyCurve {
    Fermat { m: u64, n: u64 },
    Twisted { n: u64 },
    Dgz { h: u32 },
    Bks { h: u32 },
}

impl fmt::Display for FamilyCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FamilyCurve::Fermat { m, n } => write!(f, "y^{m}=x^{n}+1"),
            FamilyCurve::Twisted { n } => write!(f, "y^2=x(x^{n}+1)"),
            FamilyCurve::Dgz { h } => write!(f, "DGZ(h={h})"),
            FamilyCurve::Bks { h } => write!(f, "BKS(h={h})"),
        }
    }
}

fn na(family: &FamilyId, condition: impl Into<String>) -> Error {
    Error::not_applicable(family.name(), condition)
}

fn require(ok: bool, family: &FamilyId, condition: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(na(family, condition))
    }
}

fn p_pow_u64(p: u64, e: u32) -> Option<u64> {
    p.checked_pow(e)
}

fn need_u64(x: Option<u64>, family: &FamilyId) -> Result<u64> {
    x.ok_or_else(|| Error::Range(format!("{family}: exponent exceeds 64 bits")))
}

fn bi(x: u64) -> BigInt {
    BigInt::from(x)
}

fn bpow(base: u64, e: u64) -> BigInt {
    num_traits::pow(BigInt::from(base), e as usize)
}

fn ipow(base: &BigInt, e: u64) -> BigInt {
    num_traits::pow(base.clone(), e as usize)
}

fn exact(num: BigInt, den: BigInt, what: &str) -> Result<BigInt> {
    let (q, r) = num.div_rem(&den);
    if r.is_zero() {
        Ok(q)
    } else {
        Err(Error::internal(format!("{what}: {num} is not divisible by {den}")))
    }
}

fn natural(x: BigInt, what: &str) -> Result<BigUint> {
    if x.is_negative() {
        Err(Error::internal(format!("{what} evaluated to a negative value {x}")))
    } else {
        Ok(x.to_biguint().expect("non-negative"))
    }
}

fn odd_p(p: u64, family: &FamilyId) -> Result<()> {
    require(p != 2, family, "p odd")
}

/// Does `m` divide `p^e + 1`?
fn divides_power_plus_one(p: u64, e: u32, m: u64) -> bool {
    (pow_mod(p, e as u64, m) + 1) % m == 0
}

fn divides_power_minus_one(p: u64, e: u32, m: u64) -> bool {
    pow_mod(p, e as u64, m) == 1 % m
}

/// The curve described by a family, after checking its predicate.
pub fn family_curve(p: u64, family: &FamilyId) -> Result<FamilyCurve> {
    ensure_prime(p)?;
    let f = family;
    let fermat = |m: u64, n: u64| -> Result<FamilyCurve> {
        require(m >= 2 && n >= 2, f, "exponents at least 2")?;
        Ok(FamilyCurve::Fermat { m, n })
    };
    match *family {
        FamilyId::DivisorsOfPMinusPlusOne { m, n } => {
            require(p != 2 && m >= 2 && (p - 1) % m == 0, f, "m >= 2 divides p-1")?;
            require(n >= 2 && (p + 1) % n == 0, f, "n >= 2 divides p+1")?;
            fermat(m, n)
        }
        FamilyId::ByQMinusOne { m, h } => {
            require(h >= 1, f, "h >= 1")?;
            let n = need_u64(p_pow_u64(p, h).map(|q| q - 1), f)?;
            require(m >= 2 && n % m == 0, f, "m >= 2 divides p^h-1")?;
            fermat(m, n)
        }
        FamilyId::CubicNormSquare => {
            let n = p * p + p + 1;
            fermat(n, n)
        }
        FamilyId::CubicNormByCubeMinusOne => fermat(p * p + p + 1, p * p * p - 1),
        FamilyId::HalfSquare { h } | FamilyId::HalfByQMinusOne { h } => {
            odd_p(p, f)?;
            require(h >= 1, f, "h >= 1")?;
            let q = need_u64(p_pow_u64(p, h), f)?;
            let half = (q - 1) / 2;
            require(half >= 2, f, "(p^h-1)/2 >= 2")?;
            if matches!(family, FamilyId::HalfSquare { .. }) {
                fermat(half, half)
            } else {
                fermat(half, q - 1)
            }
        }
        FamilyId::PowersMinusOne { a, b } => {
            require(a >= 1 && b >= 1, f, "a, b >= 1")?;
            let m = need_u64(p_pow_u64(p, a), f)? - 1;
            let n = need_u64(p_pow_u64(p, b), f)? - 1;
            fermat(m, n)
        }
        FamilyId::Char2CoprimeOrders { m, n, u, v } => {
            require(p == 2, f, "p = 2")?;
            require(u >= 1 && v >= 1 && u.gcd(&v) == 1, f, "gcd(u, v) = 1")?;
            require(m >= 2 && divides_power_minus_one(2, u, m), f, "m divides 2^u-1")?;
            require(n >= 2 && divides_power_minus_one(2, v, n), f, "n divides 2^v-1")?;
            fermat(m, n)
        }
        FamilyId::PlusOneDivisors { m, n, u, v } => {
            require(m >= 2 && divides_power_plus_one(p, u, m), f, "m divides p^u+1")?;
            require(n >= 2 && divides_power_plus_one(p, v, n), f, "n divides p^v+1")?;
            fermat(m, n)
        }
        FamilyId::PlusMinusEven { a, b } | FamilyId::PlusMinusOdd { a, b } => {
            require(a >= 1 && b >= 1, f, "a, b >= 1")?;
            let even = (b / a.gcd(&b)) % 2 == 0;
            if matches!(family, FamilyId::PlusMinusEven { .. }) {
                require(even, f, "b/gcd(a,b) even")?;
            } else {
                require(!even, f, "b/gcd(a,b) odd")?;
            }
            let m = need_u64(p_pow_u64(p, a).and_then(|x| x.checked_add(1)), f)?;
            let n = need_u64(p_pow_u64(p, b), f)? - 1;
            fermat(m, n)
        }
        FamilyId::Char2PlusMinus { m, n, u, v } => {
            require(p == 2, f, "p = 2")?;
            require(v >= 1 && (v / u.gcd(&v)) % 2 == 1, f, "v/gcd(u,v) odd")?;
            require(m >= 2 && divides_power_plus_one(2, u, m), f, "m divides 2^u+1")?;
            require(n >= 2 && divides_power_minus_one(2, v, n), f, "n divides 2^v-1")?;
            fermat(m, n)
        }
        FamilyId::Hyper { shape, r } => {
            odd_p(p, f)?;
            require(r >= 1, f, "r >= 1")?;
            let n = need_u64(shape.exponent(p, r), f)?;
            fermat(2, n)
        }
        FamilyId::HyperDeltaTable { n } => {
            odd_p(p, f)?;
            require(n >= 1 && n % p != 0, f, "n >= 1 coprime to p")?;
            Ok(FamilyCurve::Fermat { m: 2, n })
        }
        FamilyId::TwistedOdd { n } | FamilyId::TwistedEven { n } => {
            odd_p(p, f)?;
            require(n >= 1 && n % p != 0, f, "n >= 1 coprime to p")?;
            let odd = n % 2 == 1;
            if matches!(family, FamilyId::TwistedOdd { .. }) {
                require(odd, f, "n odd")?;
            } else {
                require(!odd, f, "n even")?;
            }
            Ok(FamilyCurve::Twisted { n })
        }
        FamilyId::TwistedPowerPlusOne { h } => {
            odd_p(p, f)?;
            require(h >= 1, f, "h >= 1")?;
            let n = need_u64(p_pow_u64(p, h).and_then(|x| x.checked_add(1)), f)?;
            Ok(FamilyCurve::Twisted { n })
        }
        FamilyId::HyperOddCofactorDouble { h, alpha } => {
            odd_p(p, f)?;
            require(h >= 1, f, "h >= 1")?;
            let qm1 = need_u64(p_pow_u64(p, h), f)? - 1;
            require(alpha % 2 == 1 && qm1 % alpha == 0, f, "alpha odd divisor of p^h-1")?;
            let n = need_u64((qm1 / alpha).checked_mul(2), f)?;
            fermat(2, n)
        }
        FamilyId::Dgz { h } => {
            require(h >= 1, f, "h >= 1")?;
            Ok(FamilyCurve::Dgz { h })
        }
        FamilyId::Bks { h } => {
            odd_p(p, f)?;
            require(h >= 1, f, "h >= 1")?;
            Ok(FamilyCurve::Bks { h })
        }
        FamilyId::ScaledByPPlusOne { m, n } => {
            require(m >= 1 && (p - 1) % m == 0 && n >= 1 && (p - 1) % n == 0, f, "m, n divide p-1")?;
            fermat(m * (p + 1), n * (p + 1))
        }
    }
}

/// Closed-form p-rank of the family member, with the family predicate checked.
pub fn closed_form(p: u64, family: &FamilyId) -> Result<PRankReport> {
    let curve = family_curve(p, family)?;
    let gamma = closed_value(p, family)?;
    let mut report = PRankReport::new(gamma, Method::ClosedForm).with_note(family.to_string());
    match curve {
        FamilyCurve::Fermat { m, n } => report.genus = Some(BigUint::from(genus(m, n))),
        FamilyCurve::Twisted { n } => report.genus = Some(BigUint::from(n / 2)),
        FamilyCurve::Dgz { .. } | FamilyCurve::Bks { .. } => {}
    }
    Ok(report)
}

fn closed_value(p: u64, family: &FamilyId) -> Result<BigUint> {
    let f = family;
    let what = family.name();
    match *family {
        FamilyId::DivisorsOfPMinusPlusOne { m, n } => divisors_value(p, m, n),
        FamilyId::ByQMinusOne { m, h } => by_q_minus_one_value(p, m, h),
        FamilyId::CubicNormSquare => {
            let v = bi(p) * (p + 1) * (p * p + p + 2);
            natural(exact(v, bi(8), what)?, what)
        }
        FamilyId::CubicNormByCubeMinusOne => {
            let v = bi(p) * (p + 1) * (bpow(p, 3) + 2 * p * p + 3 * p - 14);
            natural(exact(v, bi(8), what)?, what)
        }
        FamilyId::HalfSquare { h } => {
            let q = bpow(p, h as u64);
            let first = exact(bpow(p + 1, h as u64) * (&q + 3), bpow(2, h as u64 + 2), what)?;
            let second = exact((&q - 1) * 3, bi(2), what)?;
            natural(first - second, what)
        }
        FamilyId::HalfByQMinusOne { h } => {
            let q = bpow(p, h as u64);
            let first = exact(bpow(p + 1, h as u64) * (&q + 1), bpow(2, h as u64 + 1), what)?;
            natural(first - (q - 1) * 2, what)
        }
        FamilyId::PowersMinusOne { a, b } => {
            let d = a.gcd(&b) as u64;
            let (ad, bd) = (a as u64 / d, b as u64 / d);
            let inner: BigInt = (0..p).map(|i| (bpow(i + 1, ad) - bpow(i, ad)) * bpow(p - i, bd)).sum();
            let v = ipow(&inner, d) - (bpow(p, a as u64) + bpow(p, b as u64) + bpow(p, d) - 3);
            natural(v, what)
        }
        FamilyId::Char2CoprimeOrders { .. } | FamilyId::PlusOneDivisors { .. } | FamilyId::Char2PlusMinus { .. } => {
            Ok(BigUint::zero())
        }
        FamilyId::PlusMinusEven { a, b } => {
            let d = a.gcd(&b) as u64;
            let e = b as u64 / (2 * d);
            let ad = a as u64 / d;
            let mut inner: BigInt = (0..p).map(|i| bpow((p - i) * (i + 1), e)).sum();
            for i in 1..p {
                for j in 1..=i {
                    let second = bpow(j + 1, ad) - bpow(j, ad) * 2 + bpow(j - 1, ad);
                    inner += second * bpow((p - i) * (i - j + 1), e);
                }
            }
            natural(ipow(&inner, d) - (bpow(p, a as u64) + bpow(p, d)), what)
        }
        FamilyId::PlusMinusOdd { a, b } => {
            if p == 2 {
                return Ok(BigUint::zero());
            }
            let d = a.gcd(&b) as u64;
            let (ad, bd) = (a as u64 / d, b as u64 / d);
            let mut inner = bpow(p + 1, bd);
            for i in 1..=(p - 1) / 2 {
                inner += (bpow(2 * i + 1, ad) - bpow(2 * i - 1, ad)) * bpow(p - 2 * i + 1, bd);
            }
            let v = exact(ipow(&inner, d), bpow(2, b as u64), what)?;
            natural(v - (bpow(p, a as u64) + 1), what)
        }
        FamilyId::Hyper { shape, r } => hyper_shape_value(p, shape, r),
        FamilyId::HyperDeltaTable { n } => {
            let table = hyper_delta_table(p, n)?;
            let (_, delta_n) = table
                .items
                .first()
                .cloned()
                .ok_or_else(|| na(f, "alpha divides none of (p-1)/2, (p+1)/2, (p+3)/2, p-1"))?;
            hyper_gamma_from_delta(p, n, table.h, &delta_n)
        }
        FamilyId::TwistedOdd { n } => Ok(prank_cn_formula(p, n)?.gamma),
        FamilyId::TwistedEven { n } => Ok(twisted_even_table(p, n)?.gamma),
        FamilyId::TwistedPowerPlusOne { h } => Ok(pow_big(p.div_ceil(2), h)),
        FamilyId::HyperOddCofactorDouble { h, alpha } => {
            let n = (p.pow(h) - 1) / alpha;
            Ok(prank_cn_formula(p, n)?.gamma)
        }
        FamilyId::Dgz { h } => {
            let q = bpow(p, h as u64);
            let q3 = ipow(&q, 3);
            let lead = (bpow(p * (p + 1) / 2, h as u64) - &q) * &q3;
            natural(lead - q3 + &q + 1, what)
        }
        FamilyId::Bks { h } => {
            let q = bpow(p, h as u64);
            natural((bpow(p.div_ceil(2), h as u64) - 1) * q - 1, what)
        }
        FamilyId::ScaledByPPlusOne { m, n } => {
            let d = m.gcd(&n);
            let (mi, ni, di, pi) = (bi(m), bi(n), bi(d), bi(p));
            let mn = &mi * &ni;
            let x = &mn * &pi * &pi + (&mn * 2 - &mi - &ni - &di) * 2 * &pi + &mn * 3 - &mi * 2 - &ni * 2 - &di * 2 + 4;
            let correction = (&mi * &mi + &ni * &ni + &di * &di) * bpow(p - 1, 2);
            let v = exact(&mn * 3 * x - correction, mn * 12, what)?;
            natural(v, what)
        }
    }
}

fn divisors_value(p: u64, m: u64, n: u64) -> Result<BigUint> {
    let what = "divisors-p-1-p+1";
    let (m0, n0) = ((p - 1) / m, (p + 1) / n);
    let c = m.div_ceil(2);
    let sum: i128 = (c..=m).map(|j| ((j * m0 + 1) / n0) as i128).sum();
    let (mi, ni, d) = (m as i128, n as i128, m.gcd(&n) as i128);
    let gamma = 2 * sum - (mi - c as i128 + 2) * (ni - 1) + 1 - d;
    if gamma < 0 {
        return Err(Error::internal(format!("{what}: negative value {gamma}")));
    }
    let m0i = m0 as i128;
    if n == p + 1 {
        let special = if m % 2 == 1 {
            m0i * (mi - 1) * (mi - 1) / 4 + (mi - 1) / 2
        } else {
            m0i * (mi * mi - 2 * mi) / 4 + (mi - 2) / 2
        };
        if special != gamma {
            return Err(Error::internal(format!("{what}: n = p+1 form gives {special}, general {gamma}")));
        }
    }
    if m == p - 1 {
        let n0i = n0 as i128;
        let special = if n % 2 == 1 {
            n0i * (ni * ni - 1) / 4 - ni + 1
        } else {
            n0i * ni * ni / 4 - ni
        };
        if special != gamma {
            return Err(Error::internal(format!("{what}: m = p-1 form gives {special}, general {gamma}")));
        }
    }
    Ok(BigUint::from(gamma as u128))
}

fn by_q_minus_one_value(p: u64, m: u64, h: u32) -> Result<BigUint> {
    let what = "by-q-1";
    let qm1 = pow_big(p, h) - 1u32;
    let beta = &qm1 / m;
    let mut sum = BigUint::zero();
    for j in 1..m {
        let digits = DigitVec::expand(&(&beta * j), p, h as usize)?;
        sum += digits
            .digits()
            .iter()
            .fold(BigUint::one(), |acc, &a| acc * (a + 1));
    }
    let gamma = natural(BigInt::from(sum) - bi(2 * (m - 1)), what)?;
    if (p - 1) % m == 0 {
        let power: BigUint = (1..m).map(|j| pow_big(j * (p - 1) / m + 1, h)).sum();
        let alt = natural(BigInt::from(power) - bi(2 * (m - 1)), what)?;
        if alt != gamma {
            return Err(Error::internal(format!("{what}: power form {alt} differs from digit form {gamma}")));
        }
    }
    Ok(gamma)
}

fn hyper_shape_value(p: u64, shape: HyperShape, r: u32) -> Result<BigUint> {
    let what = "hyper";
    let r = r as u64;
    let half = bpow(p.div_ceil(2), r);
    let cubic = exact(bi((p + 3) * (p + 1)), bi(8), what)?;
    let v = match shape {
        HyperShape::PowerMinusOne | HyperShape::TwicePowerMinusOne => half - 2,
        HyperShape::TwicePowerPlusOne => half,
        HyperShape::CubicNorm => ipow(&cubic, r),
        HyperShape::TwiceCubicNorm => ipow(&cubic, r) * 2,
        HyperShape::AlternatingCube => {
            let base = exact(bi(p * p + 2 * p + 3) * (p + 1), bi(12), what)?;
            ipow(&base, r) - 2
        }
    };
    natural(v, what)
}

/// Items of the correction-term table for `y^2 = x^n + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DeltaItem {
    /// `alpha | (p-1)/2`
    HalfBelow,
    /// `alpha | (p+1)/2`
    HalfAbove,
    /// `alpha | (p+3)/2` and `(p-1) ∤ n`
    ThreeHalvesCoprime,
    /// `alpha | (p+3)/2` and `(p-1) | n`
    ThreeHalvesDivisible,
    /// `n` odd and `alpha | p-1`
    OddFull,
}

impl DeltaItem {
    pub const ALL: [DeltaItem; 5] = [
        DeltaItem::HalfBelow,
        DeltaItem::HalfAbove,
        DeltaItem::ThreeHalvesCoprime,
        DeltaItem::ThreeHalvesDivisible,
        DeltaItem::OddFull,
    ];

    pub fn hypothesis(self) -> &'static str {
        match self {
            DeltaItem::HalfBelow => "alpha | (p-1)/2",
            DeltaItem::HalfAbove => "alpha | (p+1)/2",
            DeltaItem::ThreeHalvesCoprime => "alpha | (p+3)/2, (p-1) !| n",
            DeltaItem::ThreeHalvesDivisible => "alpha | (p+3)/2, (p-1) | n",
            DeltaItem::OddFull => "n odd, alpha | p-1",
        }
    }
}

/// Correction-term data for `y^2 = x^n + 1`: the counted value and every
/// table item whose hypothesis holds, with the item's value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HyperDeltaTable {
    pub h: u64,
    pub alpha: BigUint,
    pub delta_n: BigInt,
    pub gamma: BigUint,
    pub items: Vec<(DeltaItem, BigInt)>,
}

/// Every table item needs `alpha <= max(p - 1, (p + 3)/2)`; cheap test
/// before the correction term is computed.
fn hyper_delta_possible(p: u64, n: u64) -> bool {
    let Ok(h) = mult_order(p, n) else { return false };
    let bound = (p - 1).max((p + 3) / 2) as u128;
    match (p as u128).checked_pow(h as u32) {
        Some(q) => q - 1 <= bound * n as u128,
        None => false,
    }
}

fn divides_small(alpha: &BigUint, x: u64) -> bool {
    (BigUint::from(x) % alpha).is_zero()
}

fn sign_pow(h: u64) -> BigInt {
    if h % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

pub fn hyper_delta_table(p: u64, n: u64) -> Result<HyperDeltaTable> {
    let fam = FamilyId::HyperDeltaTable { n };
    family_curve(p, &fam)?;
    let formula = prank_cn_formula(p, n)?;
    let (h, alpha) = (formula.h, formula.alpha.clone());
    let a = BigInt::from(alpha.clone());
    let odd = n % 2 == 1;
    let sign = sign_pow(h);
    let mut items = Vec::new();
    let entail = |ok: bool, what: &str| -> Result<()> {
        if ok {
            Ok(())
        } else {
            Err(Error::internal(format!("table entailment failed for p={p} n={n}: {what}")))
        }
    };
    if divides_small(&alpha, (p - 1) / 2) {
        entail(!odd, "alpha | (p-1)/2 should force n even")?;
        items.push((DeltaItem::HalfBelow, &a + 1));
    }
    if divides_small(&alpha, p.div_ceil(2)) {
        items.push((DeltaItem::HalfAbove, if odd { a.clone() } else { &a * 2 }));
    }
    if divides_small(&alpha, (p + 3) / 2) {
        if n % (p - 1) != 0 {
            let base = if odd { a.clone() } else { &a * 2 };
            items.push((DeltaItem::ThreeHalvesCoprime, base + &sign));
        } else {
            entail(!odd, "alpha | (p+3)/2 and (p-1) | n should force n even")?;
            items.push((DeltaItem::ThreeHalvesDivisible, &a * 2 + &sign * (BigInt::one() - &a)));
        }
    }
    if odd && divides_small(&alpha, p - 1) {
        entail(h % 2 == 1, "n odd and alpha | p-1 should force h odd")?;
        let v = exact(&a + 2, bi(2), "odd-full item")?;
        items.push((DeltaItem::OddFull, v));
    }
    for (item, v) in &items {
        if *v != formula.delta_n {
            return Err(Error::internal(format!(
                "table item '{}' gives {v}, counted value is {} (p={p} n={n})",
                item.hypothesis(),
                formula.delta_n
            )));
        }
    }
    Ok(HyperDeltaTable {
        h,
        alpha,
        delta_n: formula.delta_n,
        gamma: formula.gamma,
        items,
    })
}

/// `n/(q-1) * (((p+1)/2)^h - delta)` for `y^2 = x^n + 1` (or the twisted curve with its own correction term).
pub fn hyper_gamma_from_delta(p: u64, n: u64, h: u64, delta_n: &BigInt) -> Result<BigUint> {
    let qm1 = bpow(p, h) - 1;
    let v = exact((bpow(p.div_ceil(2), h) - delta_n) * n, qm1, "hyper-delta")?;
    natural(v, "hyper-delta")
}

/// Items of the correction-term table for `y^2 = x(x^n + 1)`, `n` even.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TwistedItem {
    /// `alpha | (p-1)/2`
    HalfBelow,
    /// `alpha | (p+1)/2`
    HalfAbove,
    /// `alpha | (p+3)/2`, and `(p-1) ∤ 2n` or `(p-1) | n`
    ThreeHalvesGeneric,
    /// `alpha | (p+3)/2`, `(p-1) | 2n`, `(p-1) ∤ n`
    ThreeHalvesSpecial,
}

impl TwistedItem {
    pub const ALL: [TwistedItem; 4] = [
        TwistedItem::HalfBelow,
        TwistedItem::HalfAbove,
        TwistedItem::ThreeHalvesGeneric,
        TwistedItem::ThreeHalvesSpecial,
    ];

    pub fn hypothesis(self) -> &'static str {
        match self {
            TwistedItem::HalfBelow => "alpha | (p-1)/2",
            TwistedItem::HalfAbove => "alpha | (p+1)/2",
            TwistedItem::ThreeHalvesGeneric => "alpha | (p+3)/2, (p-1) !| 2n or (p-1) | n",
            TwistedItem::ThreeHalvesSpecial => "alpha | (p+3)/2, (p-1) | 2n, (p-1) !| n",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistedEvenTable {
    pub h: u64,
    pub alpha: BigUint,
    /// `None` when `alpha` is odd (the p-rank is then zero)
    pub delta_tilde: Option<BigInt>,
    pub gamma: BigUint,
    pub items: Vec<(TwistedItem, BigInt)>,
}

/// `y^2 = x(x^n + 1)` for even `n`: zero when `alpha` is odd, otherwise
/// `n/(q-1) * (((p+1)/2)^h - (2 delta_2n - delta_n))`.
pub fn twisted_even_table(p: u64, n: u64) -> Result<TwistedEvenTable> {
    family_curve(p, &FamilyId::TwistedEven { n })?;
    let h = mult_order(p, n)?;
    let qm1 = pow_big(p, h as u32) - 1u32;
    let alpha = &qm1 / n;
    if alpha.is_odd() {
        return Ok(TwistedEvenTable {
            h,
            alpha,
            delta_tilde: None,
            gamma: BigUint::zero(),
            items: Vec::new(),
        });
    }
    let single = prank_cn_formula(p, n)?;
    let double = prank_cn_formula(p, 2 * n)?;
    if double.h != h || single.h != h {
        return Err(Error::internal(format!("orders of p modulo n and 2n differ for p={p} n={n}")));
    }
    let dt = &double.delta_n * 2 - &single.delta_n;
    let a = BigInt::from(alpha.clone());
    let sign = sign_pow(h);
    let mut items = Vec::new();
    if divides_small(&alpha, (p - 1) / 2) {
        items.push((TwistedItem::HalfBelow, BigInt::one()));
    }
    if divides_small(&alpha, p.div_ceil(2)) {
        items.push((TwistedItem::HalfAbove, BigInt::zero()));
    }
    if divides_small(&alpha, (p + 3) / 2) {
        if (2 * n) % (p - 1) == 0 && n % (p - 1) != 0 {
            items.push((TwistedItem::ThreeHalvesSpecial, &sign * (BigInt::one() - &a)));
        } else {
            items.push((TwistedItem::ThreeHalvesGeneric, sign.clone()));
        }
    }
    for (item, v) in &items {
        if *v != dt {
            return Err(Error::internal(format!(
                "twisted table item '{}' gives {v}, counted value is {dt} (p={p} n={n})",
                item.hypothesis()
            )));
        }
    }
    let gamma = hyper_gamma_from_delta(p, n, h, &dt)?;
    Ok(TwistedEvenTable {
        h,
        alpha,
        delta_tilde: Some(dt),
        gamma,
        items,
    })
}

/// p-rank of `y^2 = x(x^n + 1)` from the closed forms (odd `n`: equal to `y^2 = x^n + 1`).
pub fn twisted_gamma(p: u64, n: u64) -> Result<BigUint> {
    if n % 2 == 1 {
        closed_value_checked(p, &FamilyId::TwistedOdd { n })
    } else {
        closed_value_checked(p, &FamilyId::TwistedEven { n })
    }
}

fn closed_value_checked(p: u64, family: &FamilyId) -> Result<BigUint> {
    family_curve(p, family)?;
    closed_value(p, family)
}

/// p-rank of `y^2 = x^n + 1` by the counter; zero for the rational `n <= 2`.
pub fn hyper_counter(p: u64, n: u64) -> Result<BigUint> {
    if n <= 2 {
        return Ok(BigUint::zero());
    }
    Ok(prank_general(&FermatContext::new(p, 2, n)?)?.gamma)
}

/// p-rank of `y^m = x^n + 1` by the counter; zero for rational curves.
pub fn fermat_counter(p: u64, m: u64, n: u64) -> Result<BigUint> {
    if m < 2 || n < 2 {
        return Ok(BigUint::zero());
    }
    Ok(prank_general(&FermatContext::new(p, m, n)?)?.gamma)
}

/// The same curve evaluated through the counters: the Fermat counter
/// directly, `gamma(y^2=x^2n+1) - gamma(y^2=x^n+1)` for `y^2 = x(x^n+1)`,
/// and the expressions through `gamma(F_{q-1,q-1})` and
/// `gamma(y^2 = x^(2(q-1)) + 1)` for DGZ and BKS.
pub fn counter_gamma(p: u64, curve: FamilyCurve) -> Result<BigUint> {
    match curve {
        FamilyCurve::Fermat { m, n } => fermat_counter(p, m, n),
        FamilyCurve::Twisted { n } => {
            let big = hyper_counter(p, 2 * n)?;
            let small = hyper_counter(p, n)?;
            big.checked_sub(&small)
                .ok_or_else(|| Error::internal(format!("counter difference negative for p={p} n={n}")))
        }
        FamilyCurve::Dgz { h } => {
            let q = p.checked_pow(h).ok_or_else(|| Error::Range("q exceeds 64 bits".into()))?;
            let g = fermat_counter(p, q - 1, q - 1)?;
            let qb = bi(q);
            let v = ipow(&qb, 4) * 2 + (BigInt::from(g) - 4) * ipow(&qb, 3) + &qb + 1;
            natural(v, "dgz counter")
        }
        FamilyCurve::Bks { h } => {
            let q = p.checked_pow(h).ok_or_else(|| Error::Range("q exceeds 64 bits".into()))?;
            let g = hyper_counter(p, 2 * (q - 1))?;
            Ok((g + 1u32) * q - 1u32)
        }
    }
}

/// Rough work estimate for running the counter on `y^m = x^n + 1`; `None`
/// when the parameters are invalid or the estimate overflows.
pub fn counter_cost(p: u64, m: u64, n: u64) -> Option<f64> {
    if m < 2 || n < 2 || m % p == 0 || n % p == 0 {
        return None;
    }
    let h = crate::curves::joint_order(p, m, n).ok()?;
    let log_q = h as f64 * (p as f64).ln();
    let log_alpha = log_q - (n as f64).ln();
    let residue = (log_alpha.exp() * p as f64).max(1.0);
    let per_j = residue.min(n as f64 + 1.0) * h as f64;
    Some(per_j * (m as f64 + 1.0))
}

fn counter_curve_cost(p: u64, curve: FamilyCurve) -> Option<f64> {
    match curve {
        FamilyCurve::Fermat { m, n } => counter_cost(p, m, n),
        FamilyCurve::Twisted { n } => counter_cost(p, 2, 2 * n),
        FamilyCurve::Dgz { h } => {
            let q = p.checked_pow(h)?;
            if q <= 2 {
                Some(0.0)
            } else {
                counter_cost(p, q - 1, q - 1)
            }
        }
        FamilyCurve::Bks { h } => counter_cost(p, 2, 2 * (p.checked_pow(h)? - 1)),
    }
}

/// Whether [`counter_gamma`] is expected to finish within `budget` work units.
pub fn counter_feasible(p: u64, curve: FamilyCurve, budget: f64) -> bool {
    counter_curve_cost(p, curve).is_some_and(|c| c <= budget)
}

/// Every family whose predicate holds for `y^m = x^n + 1` over `F_p`.
pub fn match_families(p: u64, m: u64, n: u64) -> Result<Vec<FamilyId>> {
    ensure_prime(p)?;
    if m < 2 || n < 2 {
        return Err(Error::param("exponents must be at least 2"));
    }
    if m % p == 0 || n % p == 0 {
        return Err(Error::CharacteristicDividesExponent { p, m, n });
    }
    let mut out = Vec::new();
    let mut push = |fam: FamilyId| {
        if family_curve(p, &fam) == Ok(FamilyCurve::Fermat { m, n }) {
            out.push(fam);
        }
    };
    push(FamilyId::DivisorsOfPMinusPlusOne { m, n });
    if let Some(h) = n.checked_add(1).and_then(|x| exact_log(p, x)).filter(|&h| h >= 1) {
        push(FamilyId::ByQMinusOne { m, h });
    }
    push(FamilyId::CubicNormSquare);
    push(FamilyId::CubicNormByCubeMinusOne);
    if p != 2 {
        if let Some(h) = m.checked_mul(2).and_then(|x| x.checked_add(1)).and_then(|x| exact_log(p, x)) {
            push(FamilyId::HalfSquare { h });
            push(FamilyId::HalfByQMinusOne { h });
        }
    }
    let minus = |x: u64| x.checked_add(1).and_then(|y| exact_log(p, y)).filter(|&e| e >= 1);
    let plus = |x: u64| exact_log(p, x - 1).filter(|&e| e >= 1);
    if let (Some(a), Some(b)) = (minus(m), minus(n)) {
        push(FamilyId::PowersMinusOne { a, b });
    }
    if let (Some(a), Some(b)) = (plus(m), minus(n)) {
        push(FamilyId::PlusMinusEven { a, b });
        push(FamilyId::PlusMinusOdd { a, b });
    }
    if p == 2 {
        if let (Ok(u), Ok(v)) = (mult_order(2, m), mult_order(2, n)) {
            push(FamilyId::Char2CoprimeOrders { m, n, u: u as u32, v: v as u32 });
        }
    }
    let plus_one_order = |x: u64| crate::curves::divides_p_power_plus_one(p, x);
    if let (Some(u), Some(v)) = (plus_one_order(m), plus_one_order(n)) {
        push(FamilyId::PlusOneDivisors { m, n, u: u as u32, v: v as u32 });
    }
    if p == 2 {
        if let (Some(u), Ok(v)) = (plus_one_order(m), mult_order(2, n)) {
            push(FamilyId::Char2PlusMinus { m, n, u: u as u32, v: v as u32 });
        }
    }
    if m == 2 && p != 2 {
        for shape in HyperShape::ALL {
            for r in 1..=64u32 {
                match shape.exponent(p, r) {
                    Some(e) if e == n => push(FamilyId::Hyper { shape, r }),
                    Some(e) if e > n => break,
                    None => break,
                    _ => {}
                }
            }
        }
        if hyper_delta_possible(p, n) && hyper_delta_table(p, n).is_ok_and(|t| !t.items.is_empty()) {
            push(FamilyId::HyperDeltaTable { n });
        }
        if n % 2 == 0 {
            let half = n / 2;
            if let Ok(h) = mult_order(p, half) {
                let qm1 = p.checked_pow(h as u32).map(|q| q - 1);
                if let Some(qm1) = qm1 {
                    let alpha = qm1 / half;
                    push(FamilyId::HyperOddCofactorDouble { h: h as u32, alpha });
                }
            }
        }
    }
    if p != 2 && m % (p + 1) == 0 && n % (p + 1) == 0 {
        push(FamilyId::ScaledByPPlusOne { m: m / (p + 1), n: n / (p + 1) });
    }
    Ok(out)
}

/// Every `(family, m, n)` with `y^m = x^n + 1` of genus in `[1, max_genus]`
/// over `F_p`, found by running [`match_families`] on each exponent pair
/// (both orientations).
pub fn fermat_instances(p: u64, max_genus: u128) -> Result<Vec<(FamilyId, u64, u64)>> {
    ensure_prime(p)?;
    let mut out = Vec::new();
    // (m-1)(n-1) + 1 - min(m, n) <= 2 genus bounds the search
    for m in 2..=2 * max_genus as u64 + 2 {
        let mut n = 2u64;
        loop {
            let lower = (m - 1) as u128 * (n - 1) as u128 + 1 - m.min(n) as u128;
            if lower > 2 * max_genus {
                break;
            }
            let g = genus(m, n);
            if g >= 1 && g <= max_genus && m % p != 0 && n % p != 0 {
                for fam in match_families(p, m, n)? {
                    out.push((fam, m, n));
                }
            }
            n += 1;
        }
    }
    Ok(out)
}

/// One evaluated identity: name, left side, right side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Identity {
    pub name: String,
    pub lhs: BigUint,
    pub rhs: BigUint,
}

impl Identity {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// The relations between `F_k: y^2 = x^(2^k u) + 1` and
/// `H_k: y^2 = x(x^(2^k u) + 1)`, for `u` odd: `gamma(F_0) = gamma(H_0)`,
/// `gamma(F_1) = 2 gamma(F_0)`, `gamma(H_(i-1)) = gamma(F_i) - gamma(F_(i-1))`
/// for `1 <= i <= k`, and `gamma(F_k) = gamma(F_0) + sum_(i<k) gamma(H_i)`.
/// `F` values come from the counter, `H` values from the closed forms.
pub fn kani_rosen_identities(p: u64, u: u64, k: u32) -> Result<Vec<Identity>> {
    ensure_prime(p)?;
    if p == 2 {
        return Err(Error::param("p must be odd"));
    }
    if u % 2 == 0 || u % p == 0 {
        return Err(Error::param(format!("u = {u} must be odd and coprime to p")));
    }
    if k == 0 {
        return Err(Error::param("k must be at least 1"));
    }
    let exponent = |i: u32| -> Result<u64> {
        1u64.checked_shl(i)
            .and_then(|t| t.checked_mul(u))
            .ok_or_else(|| Error::Range("exponent exceeds 64 bits".into()))
    };
    let mut f = Vec::new();
    let mut hv = Vec::new();
    for i in 0..=k {
        let e = exponent(i)?;
        if let Some(c) = counter_cost(p, 2, e.max(3)) {
            if c > 1e10 {
                return Err(Error::Limit(format!("y^2 = x^{e} + 1 is too large for the counter")));
            }
        }
        f.push(hyper_counter(p, e)?);
        hv.push(twisted_gamma(p, e)?);
    }
    let mut out = vec![
        Identity {
            name: "gamma(F0) = gamma(H0)".into(),
            lhs: f[0].clone(),
            rhs: hv[0].clone(),
        },
        Identity {
            name: "gamma(F1) = 2 gamma(F0)".into(),
            lhs: f[1].clone(),
            rhs: &f[0] * 2u32,
        },
    ];
    for i in 1..=k as usize {
        let diff = BigInt::from(f[i].clone()) - BigInt::from(f[i - 1].clone());
        let rhs = natural(diff, "Kani-Rosen difference")
            .map_err(|_| Error::internal(format!("gamma(F{i}) < gamma(F{}) for p={p} u={u}", i - 1)))?;
        out.push(Identity {
            name: format!("gamma(H{}) = gamma(F{i}) - gamma(F{})", i - 1, i - 1),
            lhs: hv[i - 1].clone(),
            rhs,
        });
    }
    let total: BigUint = hv[..k as usize].iter().sum();
    out.push(Identity {
        name: format!("gamma(F{k}) = gamma(F0) + sum gamma(H0..H{})", k - 1),
        lhs: f[k as usize].clone(),
        rhs: &f[0] + total,
    });
    Ok(out)
}

/// Smallest `h` with `p^h = 1 (mod n)` as a `u32` (for the family parameters).
pub fn order_u32(p: u64, n: u64) -> Result<u32> {
    let h = mult_order(p, n)?;
    h.to_u32().ok_or_else(|| Error::Range("order exceeds 32 bits".into()))
}
