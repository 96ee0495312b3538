//! Counting the index set `T` and its relatives.
//!
//! `T` collects the pairs `(i, j)` with `0 <= i*alpha <= j*beta <= q - 1`
//! and `C(j*beta, i*alpha) != 0 (mod p)`; the p-rank of `y^m = x^n + 1` is
//! `#T - (m + n + gcd(m, n))`. By Lucas, the inner count for a fixed `j` is
//! the number of multiples of `alpha` whose base-p digits are dominated by
//! those of `j*beta`, which is what [`count_dominated_multiples`] computes.

use std::ops::AddAssign;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{CheckedSub, One, Signed, ToPrimitive, Zero};

use crate::arith::{ensure_prime, lucas_nonzero, mult_order, pow_big, DigitVec};
use crate::curves::FermatContext;
use crate::error::{Error, Result};
use crate::report::{Method, PRankReport};

/// Work budget (roughly, digit operations) for a single dominated-multiple count.
pub const COST_LIMIT: u128 = 1 << 33;
/// Largest modulus handled by the residue DP (its state table has this many entries).
pub const RESIDUE_DP_MAX_ALPHA: u64 = 1 << 22;
/// Largest box `(s+1)^h` enumerated when no closed rule for the correction term applies.
pub const DELTA_ENUMERATION_LIMIT: u64 = 10_000_000;

/// Largest number of `(j, k)` pairs the pairwise `#T` count walks.
pub const PAIR_LIMIT: u128 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountResult {
    pub value: BigUint,
    pub method: Method,
}

/// How [`count_dominated_multiples_with`] walks the candidates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// Pick the cheaper of the two by estimated cost.
    Auto,
    /// Dynamic programming over digits, state = partial value mod alpha.
    Residue,
    /// Step through the multiples `k * alpha` and test domination of each.
    Multiples,
}

/// Number of `x` in `[0, value(bound)]` with every base-p digit of `x` at
/// most the matching digit of `bound` and `alpha | x`.
pub fn count_dominated_multiples(bound: &DigitVec, alpha: &BigUint) -> Result<BigUint> {
    count_dominated_multiples_with(bound, alpha, Strategy::Auto)
}

pub fn count_dominated_multiples_with(
    bound: &DigitVec,
    alpha: &BigUint,
    strategy: Strategy,
) -> Result<BigUint> {
    if alpha.is_zero() {
        return Err(Error::param("modulus alpha must be at least 1"));
    }
    let modulus = Modulus::new(alpha, bound.base(), bound.len());
    let kmax = (bound.value() / alpha).to_u128();
    modulus.count(bound, kmax, strategy)
}

/// A modulus prepared for repeated counts over bounds of one length.
struct Modulus<'a> {
    alpha: &'a BigUint,
    small: Option<u64>,
    /// base-p digits of alpha, `None` when alpha does not fit in the bound length
    digits: Option<DigitVec>,
}

impl<'a> Modulus<'a> {
    fn new(alpha: &'a BigUint, base: u64, len: usize) -> Self {
        Modulus {
            alpha,
            small: alpha.to_u64(),
            digits: DigitVec::expand(alpha, base, len).ok(),
        }
    }

    /// `kmax` is `floor(value(bound) / alpha)` when it fits in `u128`.
    fn count(&self, bound: &DigitVec, kmax: Option<u128>, strategy: Strategy) -> Result<BigUint> {
        let h = bound.len() as u128;
        let residue = self
            .small
            .filter(|&a| a <= RESIDUE_DP_MAX_ALPHA)
            .map(|a| a as u128 * bound.digits().iter().map(|&d| d as u128 + 1).sum::<u128>());
        let multiples = kmax.and_then(|k| k.checked_add(1)).and_then(|k| k.checked_mul(h));
        let chosen = match strategy {
            Strategy::Residue => residue.map(|_| Strategy::Residue),
            Strategy::Multiples => multiples.map(|_| Strategy::Multiples),
            Strategy::Auto => match (residue, multiples) {
                (Some(r), Some(k)) if r.min(k) <= COST_LIMIT => {
                    Some(if r <= k { Strategy::Residue } else { Strategy::Multiples })
                }
                (Some(r), None) if r <= COST_LIMIT => Some(Strategy::Residue),
                (None, Some(k)) if k <= COST_LIMIT => Some(Strategy::Multiples),
                _ => None,
            },
        };
        match (chosen, kmax) {
            (Some(Strategy::Residue), _) => Ok(residue_count(bound, self.small.expect("residue cost implies a small modulus"))),
            (Some(Strategy::Multiples), Some(k)) => Ok(BigUint::from(self.multiples_count(bound, k))),
            _ => Err(Error::Limit(format!(
                "dominated-multiple count with alpha = {} over {} digits is too expensive",
                self.alpha,
                bound.len()
            ))),
        }
    }

    fn multiples_count(&self, bound: &DigitVec, kmax: u128) -> u128 {
        let Some(step) = self.digits.as_ref().filter(|_| kmax > 0) else {
            // only x = 0 lies below the bound
            return 1;
        };
        let mut x = DigitVec::zero(bound.base(), bound.len());
        let mut count = 0u128;
        for _ in 0..=kmax {
            if x.is_dominated_by(bound) {
                count += 1;
            }
            x.add_assign(step);
        }
        count
    }
}

fn residue_count(bound: &DigitVec, alpha: u64) -> BigUint {
    // the count never exceeds value(bound) + 1 <= p^h
    let fits_u128 = (bound.base() as f64).log2() * bound.len() as f64 <= 126.0;
    if fits_u128 {
        BigUint::from(residue_dp::<u128>(bound, alpha))
    } else {
        residue_dp::<BigUint>(bound, alpha)
    }
}

fn residue_dp<T>(bound: &DigitVec, alpha: u64) -> T
where
    T: Clone + Zero + One + for<'a> AddAssign<&'a T>,
{
    let p = bound.base();
    let a = alpha as usize;
    let mut counts = vec![T::zero(); a];
    counts[0] = T::one();
    let mut next = vec![T::zero(); a];
    for &top in bound.digits().iter().rev() {
        next.iter_mut().for_each(|c| *c = T::zero());
        for (state, count) in counts.iter().enumerate() {
            if count.is_zero() {
                continue;
            }
            let mut target = ((state as u128 * p as u128) % alpha as u128) as usize;
            for _ in 0..=top {
                next[target] += count;
                target += 1;
                if target == a {
                    target = 0;
                }
            }
        }
        std::mem::swap(&mut counts, &mut next);
    }
    counts.swap_remove(0)
}

fn j_beta_digits(ctx: &FermatContext, j: u64) -> Result<DigitVec> {
    DigitVec::expand(&(&ctx.beta * j), ctx.p, ctx.h as usize)
}

/// `#T` by the double loop over `j` and `i`, testing each pair with Lucas.
pub fn count_t_naive(ctx: &FermatContext) -> Result<CountResult> {
    let mut total = 0u64;
    for j in 0..=ctx.m {
        let big_j = &ctx.beta * j;
        let top = (&big_j / &ctx.alpha)
            .to_u64()
            .ok_or_else(|| Error::Limit("naive count range exceeds u64".into()))?;
        for i in 0..=top {
            if lucas_nonzero(&(&ctx.alpha * i), &big_j, ctx.p)? {
                total += 1;
            }
        }
    }
    Ok(CountResult {
        value: BigUint::from(total),
        method: Method::Naive,
    })
}

/// `#T` as a sum of dominated-multiple counts, one per `j`.
pub fn count_t_dp(ctx: &FermatContext) -> Result<CountResult> {
    count_t_dp_with(ctx, Strategy::Auto)
}

pub fn count_t_dp_with(ctx: &FermatContext, strategy: Strategy) -> Result<CountResult> {
    let pairs = (ctx.m as u128 + 1) * (ctx.n as u128 + 1) / 2;
    if strategy == Strategy::Auto && pairs <= PAIR_LIMIT {
        return Ok(CountResult {
            value: BigUint::from(count_t_pairs(ctx)),
            method: Method::DigitDp,
        });
    }
    let h = ctx.h as usize;
    let modulus = Modulus::new(&ctx.alpha, ctx.p, h);
    let beta = j_beta_digits(ctx, 1)?;
    let mut bound = DigitVec::zero(ctx.p, h);
    let mut total = BigUint::zero();
    for j in 0..=ctx.m {
        // j*beta / alpha = j*n/m
        let kmax = (j as u128 * ctx.n as u128) / ctx.m as u128;
        total += modulus.count(&bound, Some(kmax), strategy)?;
        if j < ctx.m && !bound.add_assign(&beta) {
            return Err(Error::internal("j*beta overflowed p^h"));
        }
    }
    Ok(CountResult {
        value: total,
        method: Method::DigitDp,
    })
}

/// Base-p digits of `k (p^h - 1) / d` for `0 < k < d`, `d | p^h - 1`, from
/// the least significant one up. They are one period of the base-p
/// expansion of `k/d`, so each digit costs one modular step.
#[derive(Debug, Clone, Copy)]
struct PeriodicDigits {
    p: u64,
    d: u64,
    /// inverse of p modulo d, which is p^(h-1)
    p_inv: u64,
}

impl PeriodicDigits {
    fn new(p: u64, d: u64, h: u64) -> Self {
        PeriodicDigits {
            p,
            d,
            p_inv: crate::arith::pow_mod(p, h - 1, d),
        }
    }

    fn digits(self, k: u64) -> impl Iterator<Item = u64> {
        let d = self.d as u128;
        let mut r = (k as u128 * self.p_inv as u128) % d;
        std::iter::repeat_with(move || {
            let digit = (self.p as u128 * r / d) as u64;
            r = r * self.p_inv as u128 % d;
            digit
        })
    }
}

/// `#T` pair by pair: for each `j` and each multiple `k alpha <= j beta`,
/// compare digits from the bottom and stop at the first one that exceeds.
fn count_t_pairs(ctx: &FermatContext) -> u128 {
    let h = ctx.h as usize;
    let rows = PeriodicDigits::new(ctx.p, ctx.m, ctx.h);
    let cols = PeriodicDigits::new(ctx.p, ctx.n, ctx.h);
    // j = 0 admits only k = 0; j = m has all digits p - 1 and admits every k <= n
    let mut total = 1 + (ctx.n as u128 + 1);
    for j in 1..ctx.m {
        let kmax = (j as u128 * ctx.n as u128 / ctx.m as u128) as u64;
        total += 1;
        for k in 1..=kmax {
            if cols.digits(k).zip(rows.digits(j)).take(h).all(|(x, b)| x <= b) {
                total += 1;
            }
        }
    }
    total
}

fn prank_from_t(ctx: &FermatContext, t: CountResult) -> Result<PRankReport> {
    let offset = BigUint::from(ctx.m) + ctx.n + ctx.d;
    if t.value < offset {
        return Err(Error::internal(format!(
            "#T = {} is below m + n + d = {offset} for p={} m={} n={}",
            t.value, ctx.p, ctx.m, ctx.n
        )));
    }
    let gamma = t.value - offset;
    check_gamma_range(ctx, &gamma)?;
    Ok(PRankReport::new(gamma, t.method).with_genus(ctx.genus))
}

fn check_gamma_range(ctx: &FermatContext, gamma: &BigUint) -> Result<()> {
    if *gamma > BigUint::from(ctx.genus) {
        return Err(Error::internal(format!(
            "p-rank {gamma} exceeds genus {} for p={} m={} n={}",
            ctx.genus, ctx.p, ctx.m, ctx.n
        )));
    }
    Ok(())
}

fn attach_supersingular(ctx: &FermatContext, mut report: PRankReport) -> Result<PRankReport> {
    let verdict = ctx.is_supersingular()?;
    if verdict.supersingular && !report.gamma.is_zero() {
        return Err(Error::internal(format!(
            "supersingular curve with nonzero p-rank {} (p={} m={} n={})",
            report.gamma, ctx.p, ctx.m, ctx.n
        )));
    }
    report.supersingular = Some(verdict.supersingular);
    Ok(report)
}

/// p-rank of `y^m = x^n + 1` as `#T - (m + n + d)`.
pub fn prank_general(ctx: &FermatContext) -> Result<PRankReport> {
    if ctx.genus == 0 {
        return Ok(PRankReport::rational(Method::DigitDp));
    }
    let report = prank_from_t(ctx, count_t_dp(ctx)?)?;
    attach_supersingular(ctx, report)
}

/// Same as [`prank_general`] but with the naive `#T` loop.
pub fn prank_general_naive(ctx: &FermatContext) -> Result<PRankReport> {
    if ctx.genus == 0 {
        return Ok(PRankReport::rational(Method::Naive));
    }
    prank_from_t(ctx, count_t_naive(ctx)?)
}

/// p-rank as the number of basis indices `(i, j)` with `C(j*beta, i*alpha) != 0 (mod p)`.
pub fn prank_via_a(ctx: &FermatContext) -> Result<PRankReport> {
    if ctx.genus == 0 {
        return Ok(PRankReport::rational(Method::Naive));
    }
    let mut count = 0u64;
    for idx in ctx.basis() {
        if lucas_nonzero(&(&ctx.alpha * idx.i), &(&ctx.beta * idx.j), ctx.p)? {
            count += 1;
        }
    }
    let gamma = BigUint::from(count);
    check_gamma_range(ctx, &gamma)?;
    Ok(PRankReport::new(gamma, Method::Naive).with_genus(ctx.genus))
}

/// Genus of `y^2 = x^n + 1`.
pub(crate) fn hyperelliptic_genus(n: u64) -> u64 {
    (n - 1) / 2
}

fn validate_odd_char(p: u64, n: u64) -> Result<()> {
    ensure_prime(p)?;
    if p == 2 {
        return Err(Error::param("y^2 = x^n + 1 needs odd characteristic"));
    }
    if n == 0 {
        return Err(Error::param("n must be at least 1"));
    }
    if n % p == 0 {
        return Err(Error::CharacteristicDividesExponent { p, m: 2, n });
    }
    Ok(())
}

/// p-rank of `y^2 = x^n + 1` as `#S - 1` (n odd) or `#S - 2` (n even), where
/// `S` collects the `i <= n/2` with `C((q-1)/2, i*alpha) != 0 (mod p)`.
pub fn prank_hyperelliptic(p: u64, n: u64) -> Result<PRankReport> {
    validate_odd_char(p, n)?;
    if n <= 2 {
        return Ok(PRankReport::rational(Method::DigitDp));
    }
    let h = mult_order(p, n)?;
    let qm1 = pow_big(p, h as u32) - 1u32;
    let alpha = &qm1 / n;
    let half = DigitVec::expand(&(&qm1 / 2u32), p, h as usize)?;
    let s = count_dominated_multiples(&half, &alpha)?;
    let drop = if n % 2 == 1 { 1u32 } else { 2u32 };
    let gamma = s
        .checked_sub(&BigUint::from(drop))
        .ok_or_else(|| Error::internal(format!("#S too small for p={p} n={n}")))?;
    Ok(PRankReport::new(gamma, Method::DigitDp).with_genus(hyperelliptic_genus(n)))
}

/// Number of `u = sum u_r p^r` with all digits in `[0, (p-1)/2]` and `alpha | u`.
pub fn count_box_m(p: u64, h: u64, alpha: &BigUint) -> Result<BigUint> {
    ensure_prime(p)?;
    if p == 2 {
        return Err(Error::param("the half-digit box needs odd characteristic"));
    }
    if h == 0 {
        return Err(Error::param("h must be at least 1"));
    }
    let qm1 = pow_big(p, h as u32) - 1u32;
    if alpha.is_zero() || !(&qm1 % alpha).is_zero() {
        return Err(Error::param(format!("alpha = {alpha} does not divide {p}^{h} - 1")));
    }
    let half = DigitVec::from_digits(vec![(p - 1) / 2; h as usize], p)?;
    count_dominated_multiples(&half, alpha)
}

/// Which rule produced the correction term of a congruence-box count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DeltaRule {
    /// `s = 0`
    ZeroWidth,
    /// `s = alpha - 1`
    FullResidues,
    /// `s = alpha - 2`
    OneShort,
    /// `s = alpha/2`, `b = 0`, `h` odd
    Half,
    /// direct enumeration of `[0, s]^h`
    Enumerated,
    /// dominated-multiple count (power-of-p coefficients only)
    Digits,
}

impl DeltaRule {
    pub fn as_str(self) -> &'static str {
        match self {
            DeltaRule::ZeroWidth => "s=0",
            DeltaRule::FullResidues => "s=alpha-1",
            DeltaRule::OneShort => "s=alpha-2",
            DeltaRule::Half => "s=alpha/2",
            DeltaRule::Enumerated => "enumerated",
            DeltaRule::Digits => "digits",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceBoxCount {
    /// solutions in `[0, t*alpha + s]^h`
    pub total: BigUint,
    /// solutions in `[0, s]^h`
    pub delta: BigUint,
    pub rule: DeltaRule,
}

fn validate_box(alpha: u64, s: u64, coeffs: &[u64], b: u64) -> Result<()> {
    if alpha == 0 {
        return Err(Error::param("alpha must be at least 1"));
    }
    if s >= alpha || b >= alpha {
        return Err(Error::param(format!("s = {s} and b = {b} must lie in [0, alpha - 1]")));
    }
    if coeffs.is_empty() {
        return Err(Error::param("at least one coefficient is required"));
    }
    if let Some(c) = coeffs.iter().find(|&&c| c.gcd(&alpha) != 1) {
        return Err(Error::param(format!("coefficient {c} is not a unit modulo {alpha}")));
    }
    Ok(())
}

/// All closed rules for the correction term that apply to these parameters,
/// with their values. Several can apply at once (e.g. `s = 0 = alpha - 2`).
pub fn delta_special_cases(alpha: u64, s: u64, coeffs: &[u64], b: u64) -> Result<Vec<(DeltaRule, BigUint)>> {
    validate_box(alpha, s, coeffs, b)?;
    let h = coeffs.len();
    let big_alpha = BigInt::from(alpha);
    let sign = if h % 2 == 0 { BigInt::one() } else { -BigInt::one() };
    let mut out = Vec::new();
    if s == 0 {
        out.push((DeltaRule::ZeroWidth, BigUint::from((b == 0) as u32)));
    }
    if s + 1 == alpha {
        out.push((DeltaRule::FullResidues, num_traits::pow(BigUint::from(alpha), h - 1)));
    }
    if alpha >= 2 && s + 2 == alpha {
        let num = num_traits::pow(BigInt::from(alpha - 1), h) - &sign;
        let mut value = exact_div_signed(&num, &big_alpha, "one-short correction")?;
        let sum = coeffs.iter().fold(0u128, |acc, &c| (acc + c as u128) % alpha as u128);
        if (sum + b as u128) % alpha as u128 == 0 {
            value += &sign;
        }
        out.push((DeltaRule::OneShort, to_natural(value, "one-short correction")?));
    }
    if alpha % 2 == 0 && s == alpha / 2 && b == 0 && h % 2 == 1 {
        let num = (num_traits::pow(BigUint::from(s + 1), h) - 1u32) * 2u32 + alpha;
        let value = crate::arith::exact_div(&num, &BigUint::from(2 * alpha), "half-width correction")?;
        out.push((DeltaRule::Half, value));
    }
    Ok(out)
}

fn exact_div_signed(num: &BigInt, den: &BigInt, what: &str) -> Result<BigInt> {
    let (q, r) = num.div_rem(den);
    if r.is_zero() {
        Ok(q)
    } else {
        Err(Error::internal(format!("{what}: {num} is not divisible by {den}")))
    }
}

fn to_natural(x: BigInt, what: &str) -> Result<BigUint> {
    if x.is_negative() {
        return Err(Error::internal(format!("{what} is negative: {x}")));
    }
    Ok(x.to_biguint().expect("non-negative"))
}

/// Number of points of `[0, s]^h` on `a_1 x_1 + ... + a_h x_h = b (mod alpha)`,
/// by walking the box.
pub fn enumerate_congruence_box(alpha: u64, top: u64, coeffs: &[u64], b: u64) -> Result<u64> {
    if alpha == 0 || coeffs.is_empty() {
        return Err(Error::param("alpha and the coefficient list must be non-empty"));
    }
    let h = coeffs.len() as u32;
    let size = (top as u128 + 1).checked_pow(h).unwrap_or(u128::MAX);
    if size > DELTA_ENUMERATION_LIMIT as u128 {
        return Err(Error::Limit(format!(
            "delta too large, use DP: box of size {}^{h} exceeds {DELTA_ENUMERATION_LIMIT}",
            top + 1
        )));
    }
    let a = alpha as u128;
    let coeffs: Vec<u128> = coeffs.iter().map(|&c| c as u128 % a).collect();
    let target = b as u128 % a;
    let mut x = vec![0u64; coeffs.len()];
    let mut sum = 0u128;
    let mut count = 0u64;
    loop {
        if sum == target {
            count += 1;
        }
        // odometer step, keeping the weighted sum mod alpha up to date
        let mut r = 0;
        loop {
            if r == x.len() {
                return Ok(count);
            }
            if x[r] < top {
                x[r] += 1;
                sum = (sum + coeffs[r]) % a;
                break;
            }
            sum = (sum + a - (coeffs[r] * top as u128) % a) % a;
            x[r] = 0;
            r += 1;
        }
    }
}

/// Solutions of `a_1 x_1 + ... + a_h x_h = b (mod alpha)` with every `x_i` in
/// `[0, t*alpha + s]`, as `((t*alpha + s + 1)^h - (s + 1)^h)/alpha + delta`.
pub fn count_congruence_box(alpha: u64, t: u64, s: u64, coeffs: &[u64], b: u64) -> Result<CongruenceBoxCount> {
    let specials = delta_special_cases(alpha, s, coeffs, b)?;
    let (delta, rule) = match specials.into_iter().next() {
        Some((rule, value)) => (value, rule),
        None => (
            BigUint::from(enumerate_congruence_box(alpha, s, coeffs, b)?),
            DeltaRule::Enumerated,
        ),
    };
    assemble_box(alpha, t, s, coeffs.len(), delta, rule)
}

fn assemble_box(alpha: u64, t: u64, s: u64, h: usize, delta: BigUint, rule: DeltaRule) -> Result<CongruenceBoxCount> {
    let width = BigUint::from(t) * alpha + s + 1u32;
    let num = num_traits::pow(width, h) - num_traits::pow(BigUint::from(s + 1), h);
    let main = crate::arith::exact_div(&num, &BigUint::from(alpha), "congruence box")?;
    Ok(CongruenceBoxCount {
        total: main + &delta,
        delta,
        rule,
    })
}

/// Closed evaluation for `y^2 = x^n + 1` through the half-box count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnFormula {
    pub gamma: BigUint,
    pub delta_n: BigInt,
    pub delta: BigUint,
    pub rule: DeltaRule,
    pub h: u64,
    pub alpha: BigUint,
    pub s: BigUint,
}

/// `gamma = n/(q-1) * (((p+1)/2)^h - delta_n)` with
/// `delta_n = (s+1)^h - alpha*(delta - 1)` for odd `n` and
/// `(s+1)^h - alpha*(delta - 2)` for even `n`, where `delta` counts the
/// points of `[0, s]^h` on `x_1 + p x_2 + ... + p^(h-1) x_h = 0 (mod alpha)`
/// and `s = (p-1)/2 mod alpha`.
pub fn prank_cn_formula(p: u64, n: u64) -> Result<CnFormula> {
    validate_odd_char(p, n)?;
    let h = mult_order(p, n)?;
    let q = pow_big(p, h as u32);
    let qm1 = &q - 1u32;
    let alpha = &qm1 / n;
    let half = BigUint::from((p - 1) / 2);
    let (t, s) = half.div_rem(&alpha);
    let (delta, rule) = cn_delta(p, h, &alpha, &t, &s)?;
    let s_pow = num_traits::pow(BigInt::from(&s + 1u32), h as usize);
    let k = if n % 2 == 1 { 1u32 } else { 2u32 };
    let delta_n = s_pow - BigInt::from(alpha.clone()) * (BigInt::from(delta.clone()) - k);
    let top = num_traits::pow(BigInt::from(p.div_ceil(2)), h as usize) - &delta_n;
    let num = top * n;
    let gamma = exact_div_signed(&num, &BigInt::from(qm1), "hyperelliptic closed form")?;
    Ok(CnFormula {
        gamma: to_natural(gamma, "hyperelliptic closed form")?,
        delta_n,
        delta,
        rule,
        h,
        alpha,
        s,
    })
}

fn cn_delta(p: u64, h: u64, alpha: &BigUint, t: &BigUint, s: &BigUint) -> Result<(BigUint, DeltaRule)> {
    let s_small = s.to_u64().expect("s <= (p-1)/2");
    if let (Some(a), Some(t)) = (alpha.to_u64(), t.to_u64()) {
        let coeffs: Vec<u64> = (0..h).map(|i| crate::arith::pow_mod(p, i, a)).collect();
        match count_congruence_box(a, t, s_small, &coeffs, 0) {
            Ok(c) => return Ok((c.delta, c.rule)),
            Err(Error::Limit(_)) => {}
            Err(e) => return Err(e),
        }
    }
    let bound = DigitVec::from_digits(vec![s_small; h as usize], p)?;
    Ok((count_dominated_multiples(&bound, alpha)?, DeltaRule::Digits))
}
