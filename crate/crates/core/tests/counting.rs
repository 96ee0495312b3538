use fermat_prank::counting::{
    count_box_m, count_congruence_box, count_t_dp, count_t_naive, delta_special_cases, prank_cn_formula,
    prank_general, prank_hyperelliptic, prank_via_a,
};
use fermat_prank::FermatContext;
use num_bigint::BigUint;
use proptest::prelude::*;

const PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

fn contexts(max_mn: u64, max_genus: u128) -> impl Iterator<Item = FermatContext> {
    PRIMES.into_iter().flat_map(move |p| {
        (2..=max_mn).flat_map(move |m| (2..=max_mn).filter_map(move |n| FermatContext::new(p, m, n).ok()))
    })
    .filter(move |ctx| ctx.genus <= max_genus)
}

#[test]
fn dp_count_matches_naive_count() {
    for ctx in contexts(40, u128::MAX) {
        if ctx.beta_u64().is_none_or(|b| b > 2_000_000) {
            continue;
        }
        let naive = count_t_naive(&ctx).unwrap().value;
        let dp = count_t_dp(&ctx).unwrap().value;
        assert_eq!(naive, dp, "p={} m={} n={}", ctx.p, ctx.m, ctx.n);
    }
}

#[test]
fn count_t_matches_basis_walk() {
    for ctx in contexts(30, 2_000) {
        let a = prank_general(&ctx).unwrap().gamma;
        let b = prank_via_a(&ctx).unwrap().gamma;
        assert_eq!(a, b, "p={} m={} n={}", ctx.p, ctx.m, ctx.n);
    }
}

#[test]
fn p_rank_is_symmetric_and_bounded_by_genus() {
    for ctx in contexts(25, u128::MAX) {
        let gamma = prank_general(&ctx).unwrap().gamma;
        let swapped = prank_general(&FermatContext::new(ctx.p, ctx.n, ctx.m).unwrap()).unwrap().gamma;
        assert_eq!(gamma, swapped, "p={} m={} n={}", ctx.p, ctx.m, ctx.n);
        assert!(gamma <= BigUint::from(ctx.genus));
    }
}

#[test]
fn larger_exponent_gives_the_same_rank() {
    for ctx in contexts(12, 200) {
        let doubled = FermatContext::with_exponent(ctx.p, ctx.m, ctx.n, 2 * ctx.h).unwrap();
        assert_eq!(
            count_t_dp(&ctx).unwrap().value,
            count_t_dp(&doubled).unwrap().value,
            "p={} m={} n={}",
            ctx.p,
            ctx.m,
            ctx.n
        );
    }
}

#[test]
fn hyperelliptic_count_matches_general() {
    for p in [3u64, 5, 7, 11, 13] {
        for n in 3..=150 {
            if n % p == 0 {
                continue;
            }
            let hyper = prank_hyperelliptic(p, n).unwrap().gamma;
            let general = prank_general(&FermatContext::new(p, 2, n).unwrap()).unwrap().gamma;
            assert_eq!(hyper, general, "p={p} n={n}");
        }
    }
}

#[test]
fn half_box_formula_matches_hyperelliptic_count() {
    for p in [3u64, 5, 7, 11, 13] {
        for n in 3..=300 {
            if n % p == 0 {
                continue;
            }
            let formula = prank_cn_formula(p, n).unwrap().gamma;
            let counted = prank_hyperelliptic(p, n).unwrap().gamma;
            assert_eq!(formula, counted, "p={p} n={n}");
        }
    }
}

/// Walks `[0, (p-1)/2]^h` and keeps the points whose `sum x_r p^r` is a multiple of `alpha`.
fn brute_half_box(p: u64, h: u32, alpha: u64) -> u64 {
    let half = (p - 1) / 2;
    let mut count = 0;
    for v in 0..p.pow(h) {
        let mut x = v;
        let mut ok = true;
        for _ in 0..h {
            ok &= x % p <= half;
            x /= p;
        }
        if ok && v % alpha == 0 {
            count += 1;
        }
    }
    count
}

#[test]
fn half_box_count_matches_brute_force() {
    for p in [3u64, 5, 7] {
        for h in 1..=4u32 {
            let qm1 = p.pow(h) - 1;
            for alpha in (1..=qm1).filter(|a| qm1 % a == 0) {
                let counted = count_box_m(p, h as u64, &BigUint::from(alpha)).unwrap();
                assert_eq!(counted, BigUint::from(brute_half_box(p, h, alpha)), "p={p} h={h} alpha={alpha}");
            }
        }
    }
}

fn brute_box(alpha: u64, top: u64, coeffs: &[u64], b: u64) -> u64 {
    let h = coeffs.len() as u32;
    let side = top + 1;
    let mut count = 0;
    for v in 0..side.pow(h) {
        let mut x = v;
        let mut sum = 0;
        for &c in coeffs {
            sum += c * (x % side);
            x /= side;
        }
        if sum % alpha == b {
            count += 1;
        }
    }
    count
}

#[test]
fn congruence_box_matches_brute_force() {
    for p in [3u64, 5, 7] {
        for alpha in 1..=8u64 {
            if alpha % p == 0 {
                continue;
            }
            for h in 1..=3usize {
                let coeffs: Vec<u64> = (0..h as u32).map(|i| p.pow(i) % alpha).collect();
                for t in 0..=2 {
                    for s in 0..alpha {
                        for b in 0..alpha {
                            let got = count_congruence_box(alpha, t, s, &coeffs, b).unwrap();
                            let want = brute_box(alpha, t * alpha + s, &coeffs, b);
                            assert_eq!(got.total, BigUint::from(want), "p={p} alpha={alpha} h={h} t={t} s={s} b={b}");
                            for (rule, value) in delta_special_cases(alpha, s, &coeffs, b).unwrap() {
                                let want = brute_box(alpha, s, &coeffs, b);
                                assert_eq!(value, BigUint::from(want), "{} alpha={alpha} s={s} b={b}", rule.as_str());
                            }
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn rejects_invalid_curves() {
    assert!(FermatContext::new(4, 3, 3).is_err());
    assert!(FermatContext::new(3, 3, 2).is_err());
    assert!(FermatContext::new(5, 1, 3).is_err());
    assert!(prank_hyperelliptic(2, 5).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_curves_agree(pi in 0usize..6, m in 2u64..60, n in 2u64..60) {
        let p = PRIMES[pi];
        prop_assume!(m % p != 0 && n % p != 0);
        let ctx = FermatContext::new(p, m, n).unwrap();
        prop_assume!(ctx.genus <= 1_500);
        prop_assert_eq!(prank_general(&ctx).unwrap().gamma, prank_via_a(&ctx).unwrap().gamma);
    }
}
