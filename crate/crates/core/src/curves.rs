//! Curve parameters, derived invariants, the holomorphic-differential basis
//! and the supersingularity classifier.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::arith::{ensure_prime, exact_log, mult_order, pow_big, pow_mod, two_adic_valuation};
use crate::error::{Error, Result};

/// Largest exponent `h` for which a context is built. `p^h` is materialised
/// as a big integer, so this bounds memory rather than correctness.
pub const MAX_EXPONENT: u64 = 1 << 20;

/// Which curve a request is about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CurveVariant {
    /// `y^m = x^n + 1`
    Fermat { m: u64, n: u64 },
    /// `y^2 = x(x^n + 1)`
    TwistedHyperelliptic { n: u64 },
    Dgz { h: u32 },
    Bks { h: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CurveSpec {
    pub p: u64,
    pub variant: CurveVariant,
}

impl CurveSpec {
    pub fn new(p: u64, variant: CurveVariant) -> Result<Self> {
        let spec = CurveSpec { p, variant };
        spec.validate()?;
        Ok(spec)
    }

    pub fn fermat(p: u64, m: u64, n: u64) -> Result<Self> {
        Self::new(p, CurveVariant::Fermat { m, n })
    }

    pub fn validate(&self) -> Result<()> {
        let p = self.p;
        ensure_prime(p)?;
        match self.variant {
            CurveVariant::Fermat { m, n } => {
                if m < 2 || n < 2 {
                    return Err(Error::param(format!("exponents must be at least 2 (m = {m}, n = {n})")));
                }
                if m % p == 0 || n % p == 0 {
                    return Err(Error::CharacteristicDividesExponent { p, m, n });
                }
            }
            CurveVariant::TwistedHyperelliptic { n } => {
                if p == 2 {
                    return Err(Error::param("y^2 = x(x^n+1) needs odd characteristic"));
                }
                if n == 0 {
                    return Err(Error::param("n must be at least 1"));
                }
                if n % p == 0 {
                    return Err(Error::CharacteristicDividesExponent { p, m: 2, n });
                }
            }
            CurveVariant::Dgz { h } => {
                if h == 0 {
                    return Err(Error::param("h must be at least 1"));
                }
            }
            CurveVariant::Bks { h } => {
                if h == 0 {
                    return Err(Error::param("h must be at least 1"));
                }
                if p == 2 {
                    return Err(Error::param("the BKS curve needs odd characteristic"));
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for CurveSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.variant {
            CurveVariant::Fermat { m, n } => write!(f, "y^{m} = x^{n} + 1 over F_{}", self.p),
            CurveVariant::TwistedHyperelliptic { n } => write!(f, "y^2 = x(x^{n} + 1) over F_{}", self.p),
            CurveVariant::Dgz { h } => write!(f, "DGZ curve, q = {}^{h}", self.p),
            CurveVariant::Bks { h } => write!(f, "BKS curve, q = {}^{h}", self.p),
        }
    }
}

/// Derived invariants of `y^m = x^n + 1` over `F_p`.
///
/// `h` is chosen so that both `m` and `n` divide `q - 1 = p^h - 1`;
/// [`FermatContext::new`] picks the minimal one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FermatContext {
    pub p: u64,
    pub m: u64,
    pub n: u64,
    pub d: u64,
    pub h: u64,
    pub q: BigUint,
    pub alpha: BigUint,
    pub beta: BigUint,
    pub genus: u128,
}

/// Index `(i, j)` of the differential `x^(i-1) y^(-j) dx`; valid indices
/// satisfy `m <= i*m < j*n <= n*(m-1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisIndex {
    pub i: u64,
    pub j: u64,
}

impl fmt::Display for BasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.i, self.j)
    }
}

pub fn genus(m: u64, n: u64) -> u128 {
    let d = m.gcd(&n) as u128;
    let (m, n) = (m as u128, n as u128);
    ((m - 1) * (n - 1) + 1 - d) / 2
}

/// Multiplicative order of `p` modulo `lcm(m, n)`, as the lcm of the two orders.
pub fn joint_order(p: u64, m: u64, n: u64) -> Result<u64> {
    let hm = mult_order(p, m)?;
    let hn = mult_order(p, n)?;
    Ok(hm.lcm(&hn))
}

impl FermatContext {
    /// Context with the minimal valid exponent `h`.
    pub fn new(p: u64, m: u64, n: u64) -> Result<Self> {
        CurveSpec::fermat(p, m, n)?;
        let h = joint_order(p, m, n)?;
        Self::build(p, m, n, h)
    }

    /// Context with a caller-chosen exponent, which must be a multiple of
    /// the minimal one.
    pub fn with_exponent(p: u64, m: u64, n: u64, h: u64) -> Result<Self> {
        CurveSpec::fermat(p, m, n)?;
        let minimal = joint_order(p, m, n)?;
        if h == 0 || h % minimal != 0 {
            return Err(Error::param(format!(
                "h = {h} is not a multiple of the order {minimal} of p modulo lcm(m, n)"
            )));
        }
        Self::build(p, m, n, h)
    }

    fn build(p: u64, m: u64, n: u64, h: u64) -> Result<Self> {
        if h > MAX_EXPONENT {
            return Err(Error::Limit(format!("exponent h = {h} exceeds {MAX_EXPONENT}")));
        }
        let q = pow_big(p, h as u32);
        let qm1 = &q - 1u32;
        let (alpha, ra) = qm1.div_rem(&BigUint::from(n));
        let (beta, rb) = qm1.div_rem(&BigUint::from(m));
        if ra != BigUint::ZERO || rb != BigUint::ZERO {
            return Err(Error::internal(format!("m = {m} or n = {n} does not divide p^{h} - 1")));
        }
        Ok(FermatContext {
            p,
            m,
            n,
            d: m.gcd(&n),
            h,
            q,
            alpha,
            beta,
            genus: genus(m, n),
        })
    }

    pub fn q_minus_one(&self) -> BigUint {
        &self.q - 1u32
    }

    pub fn alpha_u64(&self) -> Option<u64> {
        self.alpha.to_u64()
    }

    pub fn beta_u64(&self) -> Option<u64> {
        self.beta.to_u64()
    }

    pub fn is_basis_index(&self, idx: BasisIndex) -> bool {
        let (m, n) = (self.m as u128, self.n as u128);
        let (i, j) = (idx.i as u128, idx.j as u128);
        m <= i * m && i * m < j * n && j * n <= n * (m - 1)
    }

    /// Basis indices ordered lexicographically by `(j, i)`.
    pub fn basis(&self) -> Vec<BasisIndex> {
        let mut out = Vec::new();
        for j in 1..self.m {
            // largest i with i*m < j*n
            let top = ((j as u128 * self.n as u128 - 1) / self.m as u128) as u64;
            out.extend((1..=top).map(|i| BasisIndex { i, j }));
        }
        debug_assert_eq!(out.len() as u128, self.genus);
        out
    }

    pub fn spec(&self) -> CurveSpec {
        CurveSpec {
            p: self.p,
            variant: CurveVariant::Fermat { m: self.m, n: self.n },
        }
    }

    /// Supersingularity test: is there `h' >= 1` with both `m` and `n`
    /// dividing `p^h' + 1`?
    ///
    /// The residues `p^h' mod lcm(m, n)` repeat with period equal to the order
    /// of `p`, which is `self.h` for a minimal context, so scanning one period
    /// is exhaustive. The witness is the smallest such `h'`.
    pub fn is_supersingular(&self) -> Result<Supersingularity> {
        if self.genus == 0 {
            return Err(Error::RationalCurve);
        }
        let period = joint_order(self.p, self.m, self.n)?;
        let (m, n) = (self.m, self.n);
        let mut pm = self.p % m;
        let mut pn = self.p % n;
        for h in 1..=period {
            if (pm + 1) % m == 0 && (pn + 1) % n == 0 {
                return Ok(Supersingularity {
                    supersingular: true,
                    witness: Some(h),
                });
            }
            pm = ((pm as u128 * self.p as u128) % m as u128) as u64;
            pn = ((pn as u128 * self.p as u128) % n as u128) as u64;
        }
        Ok(Supersingularity {
            supersingular: false,
            witness: None,
        })
    }

    /// Closed-form verdict for the two shapes with a known answer:
    /// `y^(p^a+1) = x^(p^b+1) + 1`, supersingular iff `v2(a) == v2(b)`, and
    /// `y^(p^a +- 1) = x^(p^b-1) + 1`, supersingular only for
    /// `y^(3^a+1) = x^2 + 1`. The first shape is tried first, which settles
    /// the overlap at `p = 2` (e.g. `3 = 2+1 = 4-1`). `None` when neither
    /// shape matches or the curve is rational.
    pub fn supersingular_special(&self) -> Option<bool> {
        if self.genus == 0 {
            return None;
        }
        let p = self.p;
        let positive = |e: Option<u32>| e.filter(|&e| e >= 1);
        let plus = |x: u64| positive(exact_log(p, x - 1));
        let minus = |x: u64| positive(x.checked_add(1).and_then(|y| exact_log(p, y)));
        if let (Some(a), Some(b)) = (plus(self.m), plus(self.n)) {
            return Some(two_adic_valuation(a as u64) == two_adic_valuation(b as u64));
        }
        if minus(self.n).is_some() && (plus(self.m).is_some() || minus(self.m).is_some()) {
            return Some(p == 3 && plus(self.m).is_some() && self.n == 2);
        }
        None
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Supersingularity {
    pub supersingular: bool,
    pub witness: Option<u64>,
}

/// `gcd(p^a + 1, p^b - 1)` from its case table: `p^d + 1` when `b/d` is
/// even, otherwise 1 for `p = 2` and 2 for odd `p`, with `d = gcd(a, b)`.
pub fn gcd_plus_minus_table(p: u64, a: u32, b: u32) -> BigUint {
    let d = a.gcd(&b);
    if (b / d) % 2 == 0 {
        pow_big(p, d) + 1u32
    } else if p == 2 {
        BigUint::one()
    } else {
        BigUint::from(2u32)
    }
}

/// Does `n` divide `p^k + 1` for some `k` in `[1, order]`? Returns the smallest such `k`.
pub fn divides_p_power_plus_one(p: u64, n: u64) -> Option<u64> {
    if n == 1 {
        return Some(1);
    }
    let order = mult_order(p, n).ok()?;
    (1..=order).find(|&k| (pow_mod(p, k, n) + 1) % n == 0)
}
