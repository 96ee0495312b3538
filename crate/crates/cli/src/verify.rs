use std::io::Write;

use fermat_prank::arith::is_prime;
use fermat_prank::counting::{count_congruence_box, delta_special_cases, enumerate_congruence_box, prank_general};
use fermat_prank::families::{
    closed_form, counter_gamma, fermat_counter, fermat_instances, hyper_counter, hyper_delta_table,
    kani_rosen_identities, twisted_gamma, FamilyCurve, FamilyId,
};
use fermat_prank::oracle::{check_h_step_diagonal, prank_oracle};
use fermat_prank::sets::{closed_count, enumerate_count, SetParams};
use fermat_prank::{Error, FermatContext};
use num_bigint::BigUint;
use rayon::prelude::*;

use crate::args::{Suite, VerifyArgs};
use crate::{thread_pool, Failure, EXIT_MISMATCH, EXIT_OK};

/// How many failures each suite prints.
pub const SHOWN_FAILURES: usize = 5;

#[derive(Debug, Clone, Default)]
pub struct SuiteReport {
    pub name: &'static str,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Outcome of one check: `None` when it passes, otherwise a description.
type Check = Box<dyn Fn() -> Option<String> + Send + Sync>;

fn run_checks(name: &'static str, checks: Vec<Check>) -> SuiteReport {
    let results: Vec<Option<String>> = checks.par_iter().map(|c| c()).collect();
    SuiteReport {
        name,
        checks: results.len(),
        failures: results.into_iter().flatten().collect(),
    }
}

fn equal_or(label: String, left: Result<BigUint, Error>, right: Result<BigUint, Error>) -> Option<String> {
    match (left, right) {
        (Ok(a), Ok(b)) if a == b => None,
        (Ok(a), Ok(b)) => Some(format!("{label}: {a} != {b}")),
        (Err(e), _) | (_, Err(e)) => Some(format!("{label}: {e}")),
    }
}

fn primes_up_to(max_p: u64) -> Vec<u64> {
    (2..=max_p).filter(|&p| is_prime(p)).collect()
}

/// Closed forms against the counters: every matching Fermat-type family
/// up to `max_genus`, the twisted curves, the correction-term tables, and
/// the DGZ and BKS curves for small `q`.
pub fn formulas(max_genus: u128, max_p: u64) -> Result<SuiteReport, Error> {
    let mut checks: Vec<Check> = Vec::new();
    for p in primes_up_to(max_p) {
        for (fam, m, n) in fermat_instances(p, max_genus)? {
            checks.push(Box::new(move || {
                let closed = closed_form(p, &fam).map(|r| r.gamma);
                equal_or(format!("p={p} {fam} (m={m} n={n})"), closed, fermat_counter(p, m, n))
            }));
        }
        if p == 2 {
            continue;
        }
        for n in (1..=40).filter(|n| n % p != 0) {
            checks.push(Box::new(move || {
                let counted = counter_gamma(p, FamilyCurve::Twisted { n });
                equal_or(format!("p={p} twisted n={n}"), twisted_gamma(p, n), counted)
            }));
        }
        for n in (3..=200).filter(|n| n % p != 0) {
            checks.push(Box::new(move || {
                let table = hyper_delta_table(p, n).map(|t| t.gamma);
                equal_or(format!("p={p} hyper-delta n={n}"), table, hyper_counter(p, n))
            }));
        }
    }
    for p in primes_up_to(max_p.min(7)) {
        for h in 1..=2u32 {
            if p.pow(h) > 30 {
                continue;
            }
            let mut fams = vec![(FamilyId::Dgz { h }, FamilyCurve::Dgz { h })];
            if p != 2 {
                fams.push((FamilyId::Bks { h }, FamilyCurve::Bks { h }));
            }
            for (fam, curve) in fams {
                checks.push(Box::new(move || {
                    let closed = closed_form(p, &fam).map(|r| r.gamma);
                    equal_or(format!("p={p} {fam}"), closed, counter_gamma(p, curve))
                }));
            }
        }
    }
    Ok(run_checks("formulas", checks))
}

/// Every `(p, m, n)` with `1 <= genus <= max_genus`: counter against the
/// Cartier matrix rank, and the `h`-fold action against the binomial diagonal.
pub fn oracle(max_genus: u128, max_p: u64) -> Result<SuiteReport, Error> {
    let mut checks: Vec<Check> = Vec::new();
    for p in primes_up_to(max_p) {
        for m in 2..=2 * max_genus as u64 + 2 {
            for n in 2..=2 * max_genus as u64 + 2 {
                let Ok(ctx) = FermatContext::new(p, m, n) else { continue };
                if ctx.genus == 0 || ctx.genus > max_genus {
                    continue;
                }
                checks.push(Box::new(move || {
                    let label = format!("p={p} m={m} n={n}");
                    let rank = prank_oracle(&ctx).map(|r| r.gamma);
                    if let Some(f) = equal_or(label.clone(), rank, prank_general(&ctx).map(|r| r.gamma)) {
                        return Some(f);
                    }
                    match check_h_step_diagonal(&ctx) {
                        Ok(true) => None,
                        Ok(false) => Some(format!("{label}: h-fold action is not the binomial diagonal")),
                        Err(e) => Some(format!("{label}: {e}")),
                    }
                }));
            }
        }
    }
    Ok(run_checks("oracle", checks))
}

/// Closed set sizes against enumeration.
pub fn sets() -> SuiteReport {
    let mut all = Vec::new();
    for p in [2u64, 3, 5, 7] {
        all.push(SetParams::Quadruples { p });
    }
    for b in 1..=9u64 {
        for m in 1..=4u32 {
            for n in 1..=4u32 {
                all.push(SetParams::BelowMin { b, m, n });
                if b >= 2 {
                    all.push(SetParams::BelowCentered { b, m, n });
                }
                all.push(SetParams::BelowMinAndComplement { b, m, n });
            }
        }
    }
    let checks = all
        .into_iter()
        .map(|params| -> Check {
            Box::new(move || equal_or(params.to_string(), closed_count(&params), enumerate_count(&params)))
        })
        .collect();
    run_checks("sets", checks)
}

/// Relations between `y^2 = x^(2^k u) + 1` and `y^2 = x(x^(2^k u) + 1)`.
pub fn kani_rosen(max_p: u64) -> SuiteReport {
    let mut checks: Vec<Check> = Vec::new();
    for p in primes_up_to(max_p).into_iter().filter(|&p| p != 2) {
        for u in [1u64, 3, 5, 7].into_iter().filter(|u| u % p != 0) {
            checks.push(Box::new(move || match kani_rosen_identities(p, u, 2) {
                Err(e) => Some(format!("p={p} u={u}: {e}")),
                Ok(ids) => ids
                    .iter()
                    .find(|i| !i.holds())
                    .map(|i| format!("p={p} u={u}: {} ({} != {})", i.name, i.lhs, i.rhs)),
            }));
        }
    }
    run_checks("kani-rosen", checks)
}

/// Points of `[0, t*alpha + s]^h` on `x_1 + p x_2 + ... = b (mod alpha)`:
/// the counting formula and each closed correction term against enumeration.
pub fn congruence_box() -> SuiteReport {
    let mut checks: Vec<Check> = Vec::new();
    for p in [3u64, 5, 7] {
        for alpha in (1..=8u64).filter(|a| a % p != 0) {
            for h in 1..=4u32 {
                let coeffs: Vec<u64> = (0..h).map(|i| p.pow(i) % alpha).collect();
                for t in 0..=2u64 {
                    for s in 0..alpha {
                        for b in 0..alpha {
                            let coeffs = coeffs.clone();
                            checks.push(Box::new(move || {
                                let label = format!("p={p} alpha={alpha} h={h} t={t} s={s} b={b}");
                                let formula = count_congruence_box(alpha, t, s, &coeffs, b).map(|c| c.total);
                                let direct = enumerate_congruence_box(alpha, t * alpha + s, &coeffs, b).map(BigUint::from);
                                if let Some(f) = equal_or(label.clone(), formula, direct) {
                                    return Some(f);
                                }
                                let specials = match delta_special_cases(alpha, s, &coeffs, b) {
                                    Ok(v) => v,
                                    Err(e) => return Some(format!("{label}: {e}")),
                                };
                                let delta = enumerate_congruence_box(alpha, s, &coeffs, b).map(BigUint::from);
                                specials.into_iter().find_map(|(rule, value)| {
                                    equal_or(format!("{label} rule {}", rule.as_str()), Ok(value), delta.clone())
                                })
                            }));
                        }
                    }
                }
            }
        }
    }
    run_checks("congruence-box", checks)
}

pub fn run_suite(suite: Suite, max_genus: Option<u128>, max_p: u64) -> Result<Vec<SuiteReport>, Error> {
    Ok(match suite {
        Suite::Formulas => vec![formulas(max_genus.unwrap_or(2000), max_p)?],
        Suite::Oracle => vec![oracle(max_genus.unwrap_or(50), max_p)?],
        Suite::Sets => vec![sets()],
        Suite::KaniRosen => vec![kani_rosen(max_p)],
        Suite::CongruenceBox => vec![congruence_box()],
        Suite::All => {
            let mut v = Vec::new();
            for s in [Suite::Formulas, Suite::Oracle, Suite::Sets, Suite::KaniRosen, Suite::CongruenceBox] {
                v.extend(run_suite(s, max_genus, max_p)?);
            }
            v
        }
    })
}

pub fn run(args: &VerifyArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let pool = thread_pool(args.jobs)?;
    let reports = pool.install(|| run_suite(args.suite, args.max_genus, args.max_p))?;
    let mut ok = true;
    for r in &reports {
        let status = if r.passed() { "pass" } else { "FAIL" };
        writeln!(out, "{}: {status} ({} checks, {} failures)", r.name, r.checks, r.failures.len())?;
        for f in r.failures.iter().take(SHOWN_FAILURES) {
            writeln!(out, "  {f}")?;
        }
        ok &= r.passed();
    }
    Ok(if ok { EXIT_OK } else { EXIT_MISMATCH })
}
