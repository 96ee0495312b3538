//! End-to-end acceptance checks. Runs without the libtest harness so that
//! every criterion prints its own line under a plain `cargo test`.

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use fermat_prank::counting::{count_congruence_box, delta_special_cases, prank_general};
use fermat_prank::families::{
    closed_form, fermat_instances, kani_rosen_identities, match_families, twisted_gamma, FamilyId,
};
use fermat_prank::oracle::{check_h_step_diagonal, prank_oracle};
use fermat_prank::sets::{closed_count, enumerate_count, enumerate_count_exhaustive, SetParams};
use fermat_prank::FermatContext;
use num_bigint::BigUint;

const PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Smallest h with p^h = 1 mod x, or None when p^h leaves u128.
fn small_order(p: u64, x: u64) -> Option<u32> {
    let mut r = p % x;
    for h in 1..=x as u32 {
        if r == 1 % x {
            return (p as u128).checked_pow(h).map(|_| h);
        }
        r = r * p % x;
    }
    None
}

/// C(b, a) != 0 mod p, digit by digit.
fn lucas(p: u128, mut a: u128, mut b: u128) -> bool {
    while a > 0 || b > 0 {
        if a % p > b % p {
            return false;
        }
        a /= p;
        b /= p;
    }
    true
}

/// p-rank of y^m = x^n + 1 by listing the pairs (i alpha, j beta) with
/// nonzero binomial. Only for exponents whose joint q fits in u128.
fn brute_gamma(p: u64, m: u64, n: u64) -> Option<u128> {
    let h = {
        let (a, b) = (small_order(p, m)?, small_order(p, n)?);
        a / gcd(a as u64, b as u64) as u32 * b
    };
    let q = (p as u128).checked_pow(h)?;
    let (alpha, beta) = ((q - 1) / n as u128, (q - 1) / m as u128);
    let mut t = 0u128;
    for j in 0..=m as u128 {
        for i in 0..=n as u128 {
            if i * alpha <= j * beta && lucas(p as u128, i * alpha, j * beta) {
                t += 1;
            }
        }
    }
    Some(t - (m + n + gcd(m, n)) as u128)
}

fn gamma(p: u64, m: u64, n: u64) -> Result<BigUint, String> {
    let ctx = FermatContext::new(p, m, n).map_err(|e| format!("p={p} m={m} n={n}: {e}"))?;
    prank_general(&ctx).map(|r| r.gamma).map_err(|e| format!("p={p} m={m} n={n}: {e}"))
}

fn expect_eq<T: PartialEq + std::fmt::Display>(what: &str, got: T, want: T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got}, expected {want}"))
    }
}

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    let spent = start.elapsed();
    if spent <= limit {
        Ok(())
    } else {
        Err(format!("took {spent:.1?}, limit {limit:?}"))
    }
}

fn diagonal_curves() -> Outcome {
    let start = Instant::now();
    let mut count = 0;
    for p in [3u64, 5, 7] {
        for h in 1..=2u32 {
            let q = p.pow(h);
            let want = BigUint::from((p * (p + 1) / 2).pow(h) - 3 * (q - 1));
            let what = format!("F_{{{0},{0}}} at p={p}", q - 1);
            expect_eq(&what, gamma(p, q - 1, q - 1)?, want.clone())?;
            if let Some(b) = brute_gamma(p, q - 1, q - 1) {
                expect_eq(&format!("{what} (brute)"), BigUint::from(b), want)?;
            }
            count += 1;
        }
    }
    within(Duration::from_secs(1), start)?;
    Ok(format!("{count} curves"))
}

fn closed_form_sweep() -> Outcome {
    let start = Instant::now();
    let mut seen = BTreeSet::new();
    let mut count = 0;
    for p in PRIMES {
        for (fam, m, n) in fermat_instances(p, 2000).map_err(|e| e.to_string())? {
            let closed = closed_form(p, &fam).map_err(|e| format!("p={p} {fam}: {e}"))?.gamma;
            expect_eq(&format!("p={p} {fam} (m={m} n={n})"), closed, gamma(p, m, n)?)?;
            seen.insert(fam.name());
            count += 1;
        }
    }
    let wanted = [
        "divisors-p-1-p+1",
        "by-q-1",
        "cubic-norm",
        "cubic-norm-by-p3-1",
        "half-q",
        "half-q-by-q-1",
        "pa-1-pb-1",
        "char2-coprime-orders",
        "plus-one-divisors",
        "pa+1-pb-1-even",
        "pa+1-pb-1-odd",
        "char2-plus-minus",
        "hyper-pr-1",
        "hyper-2pr+2",
        "hyper-2pr-2",
        "hyper-cubic-norm",
        "hyper-2cubic-norm",
        "hyper-alt-cube",
        "hyper-delta",
        "hyper-odd-cofactor",
        "scaled-p+1",
    ];
    let missing: Vec<_> = wanted.iter().filter(|n| !seen.contains(*n)).collect();
    if !missing.is_empty() {
        return Err(format!("families never reached: {missing:?}"));
    }
    within(Duration::from_secs(300), start)?;
    Ok(format!("{count} instances, {} families", seen.len()))
}

/// Every valid (p, m, n) with genus in [1, 50].
fn small_curves() -> Vec<FermatContext> {
    let mut out = Vec::new();
    for p in PRIMES {
        for m in 2..=102u64 {
            for n in 2..=102u64 {
                if let Ok(ctx) = FermatContext::new(p, m, n) {
                    if (1..=50).contains(&ctx.genus) {
                        out.push(ctx);
                    }
                }
            }
        }
    }
    out
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let curves = small_curves();
    let mut brute = 0;
    for ctx in &curves {
        let (p, m, n) = (ctx.p, ctx.m, ctx.n);
        let rank = prank_oracle(ctx).map_err(|e| format!("p={p} m={m} n={n}: {e}"))?.gamma;
        let counted = gamma(p, m, n)?;
        expect_eq(&format!("p={p} m={m} n={n} oracle vs counter"), &rank, &counted)?;
        if let Some(b) = brute_gamma(p, m, n) {
            expect_eq(&format!("p={p} m={m} n={n} brute"), BigUint::from(b), counted)?;
            brute += 1;
        }
    }
    within(Duration::from_secs(120), start)?;
    Ok(format!("{} curves, {brute} also by brute force", curves.len()))
}

fn h_step_diagonal() -> Outcome {
    let curves = small_curves();
    for ctx in &curves {
        match check_h_step_diagonal(ctx) {
            Ok(true) => {}
            Ok(false) => return Err(format!("p={} m={} n={}: not diagonal", ctx.p, ctx.m, ctx.n)),
            Err(e) => return Err(format!("p={} m={} n={}: {e}", ctx.p, ctx.m, ctx.n)),
        }
    }
    Ok(format!("{} curves", curves.len()))
}

fn set_counts() -> Outcome {
    let start = Instant::now();
    let mut all: Vec<SetParams> = [2u64, 3, 5, 7].into_iter().map(|p| SetParams::Quadruples { p }).collect();
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
    let mut exhaustive = 0;
    for params in &all {
        let closed = closed_count(params).map_err(|e| format!("{params}: {e}"))?;
        let listed = enumerate_count(params).map_err(|e| format!("{params}: {e}"))?;
        expect_eq(&params.to_string(), &closed, &listed)?;
        if let Ok(walked) = enumerate_count_exhaustive(params) {
            expect_eq(&format!("{params} (full walk)"), closed, BigUint::from(walked))?;
            exhaustive += 1;
        }
    }
    within(Duration::from_secs(60), start)?;
    Ok(format!("{} parameter sets, {exhaustive} walked in full", all.len()))
}

/// Solutions of sum c_i x_i = b (mod alpha) with every x_i in [0, top].
fn brute_box(alpha: u64, top: u64, coeffs: &[u64], b: u64) -> u64 {
    let mut residues = vec![0u64; alpha as usize];
    residues[0] = 1;
    for &c in coeffs {
        let mut next = vec![0u64; alpha as usize];
        for (r, &ways) in residues.iter().enumerate() {
            for x in 0..=top {
                next[((r as u64 + c * x) % alpha) as usize] += ways;
            }
        }
        residues = next;
    }
    residues[(b % alpha) as usize]
}

fn congruence_box() -> Outcome {
    let mut count = 0;
    let mut specials = 0;
    for p in [3u64, 5, 7] {
        for alpha in (1..=8u64).filter(|a| a % p != 0) {
            for h in 1..=4u32 {
                let coeffs: Vec<u64> = (0..h).map(|i| p.pow(i) % alpha).collect();
                for s in 0..alpha {
                    for b in 0..alpha {
                        let label = format!("p={p} alpha={alpha} h={h} s={s} b={b}");
                        let small = brute_box(alpha, s, &coeffs, b);
                        let rules = delta_special_cases(alpha, s, &coeffs, b).map_err(|e| format!("{label}: {e}"))?;
                        for (rule, value) in rules {
                            expect_eq(&format!("{label} rule {}", rule.as_str()), value, BigUint::from(small))?;
                            specials += 1;
                        }
                        for t in 0..=2u64 {
                            let formula = count_congruence_box(alpha, t, s, &coeffs, b)
                                .map_err(|e| format!("{label} t={t}: {e}"))?
                                .total;
                            let direct = brute_box(alpha, t * alpha + s, &coeffs, b);
                            expect_eq(&format!("{label} t={t}"), formula, BigUint::from(direct))?;
                            count += 1;
                        }
                    }
                }
            }
        }
    }
    Ok(format!("{count} boxes, {specials} special-case values"))
}

fn zero_order_params(fam: &FamilyId) -> Option<(u32, u32)> {
    match *fam {
        FamilyId::Char2CoprimeOrders { u, v, .. }
        | FamilyId::PlusOneDivisors { u, v, .. }
        | FamilyId::Char2PlusMinus { u, v, .. } => Some((u, v)),
        _ => None,
    }
}

fn zero_families() -> Outcome {
    let mut count = 0;
    let mut names = BTreeSet::new();
    for p in [2u64, 3, 5] {
        // exponents dividing p^u - 1 or p^u + 1 for u <= 4
        let mut exps = BTreeSet::new();
        for u in 1..=4u32 {
            for x in [p.pow(u) - 1, p.pow(u) + 1] {
                exps.extend((2..=x).filter(|d| x % d == 0));
            }
        }
        for &m in &exps {
            for &n in &exps {
                let Ok(fams) = match_families(p, m, n) else { continue };
                for fam in fams.iter().filter(|f| f.is_zero_family()) {
                    let Some((u, v)) = zero_order_params(fam) else { continue };
                    if u > 4 || v > 4 {
                        continue;
                    }
                    let what = format!("p={p} {fam}");
                    expect_eq(&what, gamma(p, m, n)?, BigUint::ZERO)?;
                    let closed = closed_form(p, fam).map_err(|e| format!("{what}: {e}"))?.gamma;
                    expect_eq(&format!("{what} closed form"), closed, BigUint::ZERO)?;
                    if let Some(b) = brute_gamma(p, m, n) {
                        expect_eq(&format!("{what} brute"), b, 0)?;
                    }
                    names.insert(fam.name());
                    count += 1;
                }
            }
        }
    }
    if names.len() < 3 {
        return Err(format!("only {names:?} reached"));
    }
    // 2 is -1 mod 3 only at odd powers and -1 mod 5 only at powers 2 mod 4
    let ctx = FermatContext::new(2, 3, 5).map_err(|e| e.to_string())?;
    let ss = ctx.is_supersingular().map_err(|e| e.to_string())?;
    if ss.supersingular {
        return Err("y^3 = x^5 + 1 over F_2 reported supersingular".into());
    }
    expect_eq("y^3=x^5+1 at p=2", gamma(2, 3, 5)?, BigUint::ZERO)?;
    Ok(format!("{count} instances; y^3=x^5+1 at p=2 has p-rank 0 and is not supersingular"))
}

fn twisted_bridge() -> Outcome {
    let mut count = 0;
    for p in PRIMES.into_iter().filter(|&p| p != 2) {
        for n in (1..=40u64).filter(|n| n % p != 0) {
            let d = twisted_gamma(p, n).map_err(|e| format!("p={p} n={n}: {e}"))?;
            let c = |k: u64| if k < 2 { Ok(BigUint::ZERO) } else { gamma(p, 2, k) };
            let want = if n % 2 == 0 { c(2 * n)? - c(n)? } else { c(n)? };
            expect_eq(&format!("p={p} D_{n}"), d, want)?;
            count += 1;
        }
    }
    Ok(format!("{count} curves"))
}

fn kani_rosen() -> Outcome {
    let mut count = 0;
    for p in [5u64, 7] {
        for u in [3u64, 5].into_iter().filter(|u| u % p != 0) {
            for k in 1..=2u32 {
                let ids = kani_rosen_identities(p, u, k).map_err(|e| format!("p={p} u={u} k={k}: {e}"))?;
                for id in ids {
                    if !id.holds() {
                        return Err(format!("p={p} u={u} k={k}: {} ({} != {})", id.name, id.lhs, id.rhs));
                    }
                    count += 1;
                }
            }
        }
    }
    Ok(format!("{count} identities"))
}

fn scaled_family() -> Outcome {
    let mut count = 0;
    let base = closed_form(5, &FamilyId::ScaledByPPlusOne { m: 2, n: 2 }).map_err(|e| e.to_string())?.gamma;
    expect_eq("scaled family p=5 m=n=2", base, BigUint::from(27u32))?;
    expect_eq("y^12=x^12+1 at p=5 (brute)", brute_gamma(5, 12, 12).unwrap_or(0), 27)?;
    for p in [5u64, 7, 11, 13] {
        for m in (1..p).filter(|m| (p - 1) % m == 0) {
            for n in (1..p).filter(|n| (p - 1) % n == 0) {
                let (big_m, big_n) = (m * (p + 1), n * (p + 1));
                if fermat_prank::curves::genus(big_m, big_n) > 2000 {
                    continue;
                }
                let fam = FamilyId::ScaledByPPlusOne { m, n };
                let closed = closed_form(p, &fam).map_err(|e| format!("p={p} {fam}: {e}"))?.gamma;
                expect_eq(&format!("p={p} {fam}"), closed, gamma(p, big_m, big_n)?)?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} instances"))
}

fn table_output(table: u8, p: u64) -> Result<String, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_prank"))
        .args(["table", "--table", &table.to_string(), "--p", &p.to_string(), "--format", "csv"])
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("table {table} at p={p} exited with {}", out.status));
    }
    String::from_utf8(out.stdout).map_err(|e| e.to_string())
}

/// Agreement column of each data row.
fn flags(csv: &str) -> Vec<String> {
    csv.lines()
        .skip(1)
        .map(|line| line.split(',').nth(6).unwrap_or_default().to_string())
        .collect()
}

fn golden_tables() -> Outcome {
    // rows that cannot be instantiated at p = 7 are taken from these primes in turn
    let fallback = [3u64, 2, 5];
    let mut rows = 0;
    let mut borrowed = 0;
    for table in 1..=5u8 {
        let first = table_output(table, 7)?;
        if table_output(table, 7)? != first {
            return Err(format!("table {table} differs between runs"));
        }
        let mut row_flags = flags(&first);
        for p in fallback {
            if row_flags.iter().all(|f| f == "ok") {
                break;
            }
            let other = table_output(table, p)?;
            if table_output(table, p)? != other {
                return Err(format!("table {table} at p={p} differs between runs"));
            }
            for (mine, theirs) in row_flags.iter_mut().zip(flags(&other)) {
                if mine == "n/a" && theirs != "n/a" {
                    *mine = theirs;
                    borrowed += 1;
                }
            }
        }
        if let Some(bad) = row_flags.iter().position(|f| f != "ok") {
            return Err(format!("table {table} row {} reads '{}'", bad + 1, row_flags[bad]));
        }
        rows += row_flags.len();
    }
    Ok(format!("{rows} rows ok, {borrowed} taken from p in {fallback:?}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("diagonal curves y^(q-1) = x^(q-1) + 1", diagonal_curves),
        ("closed forms vs counter, genus <= 2000", closed_form_sweep),
        ("Cartier rank vs counter, genus <= 50", oracle_equivalence),
        ("h-fold Cartier action is the binomial diagonal", h_step_diagonal),
        ("set sizes vs enumeration", set_counts),
        ("congruence box counts and correction terms", congruence_box),
        ("zero p-rank families", zero_families),
        ("y^2 = x(x^n + 1) vs y^2 = x^2n + 1 and y^2 = x^n + 1", twisted_bridge),
        ("Kani-Rosen identities", kani_rosen),
        ("exponents scaled by p + 1", scaled_family),
        ("tables are reproducible and agree", golden_tables),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let spent = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {:>2}: pass  {name} ({detail}; {spent:.1?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
