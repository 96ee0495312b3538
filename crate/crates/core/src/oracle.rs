//! Cartier-operator check of the p-rank.
//!
//! The differentials `x^(i-1) y^(-j) dx` indexed by the basis form a basis of
//! the holomorphic differentials. One application of the Cartier operator
//! sends each of them to a scalar multiple of another (or to zero); the
//! p-rank is the rank of the `g`-th power of that matrix over `F_p`.
//!
//! None of this goes through the Lucas digit code used by the counters:
//! binomials are evaluated multiplicatively, and the rank comes from plain
//! Gaussian elimination.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::arith::{binom_mod_p, inv_mod_prime, mul_mod};
use crate::curves::{BasisIndex, FermatContext};
use crate::error::{Error, Result};
use crate::report::{Method, PRankReport};

/// Default largest genus for which the oracle builds dense matrices.
pub const DEFAULT_GENUS_CAP: u128 = 512;

/// Column-sparse matrix of the Cartier operator on the differential basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartierMatrix {
    pub p: u64,
    pub basis: Vec<BasisIndex>,
    /// `columns[c]` is the image of `basis[c]`: a row index and a nonzero coefficient.
    pub columns: Vec<Option<(usize, u64)>>,
}

impl CartierMatrix {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let g = self.dimension();
        let mut m = DenseMatrix::zero(g, self.p);
        for (c, entry) in self.columns.iter().enumerate() {
            if let Some((r, v)) = *entry {
                m.set(r, c, v);
            }
        }
        m
    }
}

/// `C(w, r) mod p` for `w < p`, as a product of the row factors `(w-k)/(k+1)`.
fn small_binomial(w: u64, r: u64, p: u64) -> u64 {
    if r > w {
        return 0;
    }
    let mut num = 1 % p;
    let mut den = 1 % p;
    for k in 0..r {
        num = mul_mod(num, w - k, p);
        den = mul_mod(den, k + 1, p);
    }
    mul_mod(num, inv_mod_prime(den, p), p)
}

fn neg_over(a: u64, unit: u64, p: u64) -> u64 {
    // the residue of -a / unit modulo p, in [0, p-1]
    let neg = (p - a % p) % p;
    mul_mod(neg, inv_mod_prime(unit % p, p), p)
}

/// One Cartier step on `x^(i-1) y^(-j) dx`.
///
/// Writes `y^(-j) = y^(-(j + m w)) (x^n + 1)^w` with the least `w` making
/// `j + m w = p J`, expands the binomial, and keeps the single term whose
/// exponent of `x` is `-1 mod p`.
pub fn cartier_step(ctx: &FermatContext, idx: BasisIndex) -> Result<Option<(BasisIndex, u64)>> {
    if !ctx.is_basis_index(idx) {
        return Err(Error::param(format!("{idx} is not a basis index")));
    }
    let p = ctx.p;
    let (m, n) = (ctx.m as u128, ctx.n as u128);
    let w = neg_over(idx.j, ctx.m, p);
    let big_j = (idx.j as u128 + m * w as u128) / p as u128;
    let r = neg_over(idx.i, ctx.n, p);
    if r > w {
        return Ok(None);
    }
    let coeff = small_binomial(w, r, p);
    if coeff == 0 {
        return Ok(None);
    }
    let i_new = (r as u128 * n + idx.i as u128) / p as u128;
    let target = BasisIndex {
        i: i_new as u64,
        j: big_j as u64,
    };
    if !ctx.is_basis_index(target) {
        return Err(Error::internal(format!(
            "Cartier image {target} of {idx} left the basis (p={p} m={} n={})",
            ctx.m, ctx.n
        )));
    }
    Ok(Some((target, coeff)))
}

/// The step taken with `w + lift*p` in place of the least `w`, returned as
/// the new exponent of `y^(-1)` and the surviving `x`-exponents with their
/// coefficients.
pub fn cartier_step_lifted(ctx: &FermatContext, idx: BasisIndex, lift: u64) -> Result<(u64, BTreeMap<u64, u64>)> {
    let p = ctx.p;
    let w = neg_over(idx.j, ctx.m, p) + lift * p;
    let big_j = (idx.j + ctx.m * w) / p;
    let mut terms = BTreeMap::new();
    let mut row = BigUint::from(1u32);
    for r in 0..=w {
        if r > 0 {
            row = row * (w - r + 1) / r;
        }
        if (r * ctx.n + idx.i) % p == 0 {
            let c = (&row % p).to_u64().expect("residue below p");
            if c != 0 {
                terms.insert((r * ctx.n + idx.i) / p - 1, c);
            }
        }
    }
    Ok((big_j, terms))
}

/// Checks that the lifted step describes the same differential as the
/// minimal one: `sum c_r x^(e_r) = c x^(i'-1) (x^n + 1)^k (mod p)` with
/// `k` the difference of the `y`-exponents divided by `m`.
pub fn lifted_step_consistent(ctx: &FermatContext, idx: BasisIndex, lift: u64) -> Result<bool> {
    let p = ctx.p;
    let (lifted_j, lifted_terms) = cartier_step_lifted(ctx, idx, lift)?;
    let w = neg_over(idx.j, ctx.m, p);
    let base_j = (idx.j + ctx.m * w) / p;
    let k = (lifted_j - base_j) / ctx.m;
    let mut expected = BTreeMap::new();
    if let Some((target, c)) = cartier_step(ctx, idx)? {
        let mut row = BigUint::from(1u32);
        for t in 0..=k {
            if t > 0 {
                row = row * (k - t + 1) / t;
            }
            let v = mul_mod((&row % p).to_u64().expect("residue below p"), c, p);
            if v != 0 {
                expected.insert(target.i - 1 + t * ctx.n, v);
            }
        }
    }
    Ok(lifted_j - base_j == k * ctx.m && expected == lifted_terms)
}

pub fn cartier_matrix(ctx: &FermatContext) -> Result<CartierMatrix> {
    let basis = ctx.basis();
    let position: HashMap<BasisIndex, usize> = basis.iter().enumerate().map(|(k, &b)| (b, k)).collect();
    let columns = basis
        .iter()
        .map(|&idx| {
            Ok(cartier_step(ctx, idx)?.map(|(target, c)| (position[&target], c)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CartierMatrix {
        p: ctx.p,
        basis,
        columns,
    })
}

/// Dense square matrix over `F_p`, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseMatrix {
    size: usize,
    p: u64,
    data: Vec<u64>,
}

impl DenseMatrix {
    pub fn zero(size: usize, p: u64) -> Self {
        DenseMatrix {
            size,
            p,
            data: vec![0; size * size],
        }
    }

    pub fn identity(size: usize, p: u64) -> Self {
        let mut m = Self::zero(size, p);
        for k in 0..size {
            m.set(k, k, 1 % p);
        }
        m
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.size + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.size + c] = v % self.p;
    }

    pub fn mul(&self, other: &DenseMatrix) -> DenseMatrix {
        let g = self.size;
        let p = self.p;
        let mut out = DenseMatrix::zero(g, p);
        for r in 0..g {
            for k in 0..g {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                let row = &other.data[k * g..(k + 1) * g];
                let dst = &mut out.data[r * g..(r + 1) * g];
                for (d, &b) in dst.iter_mut().zip(row) {
                    if b != 0 {
                        *d = (*d + mul_mod(a, b, p)) % p;
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, mut exp: u64) -> DenseMatrix {
        let mut acc = DenseMatrix::identity(self.size, self.p);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Rank over `F_p` by Gaussian elimination.
    pub fn rank(&self) -> usize {
        let g = self.size;
        let p = self.p;
        let mut a = self.data.clone();
        let mut rank = 0;
        for col in 0..g {
            let Some(pivot) = (rank..g).find(|&r| a[r * g + col] != 0) else {
                continue;
            };
            if pivot != rank {
                for c in 0..g {
                    a.swap(pivot * g + c, rank * g + c);
                }
            }
            let inv = inv_mod_prime(a[rank * g + col], p);
            for c in col..g {
                a[rank * g + c] = mul_mod(a[rank * g + c], inv, p);
            }
            for r in 0..g {
                if r == rank {
                    continue;
                }
                let factor = a[r * g + col];
                if factor == 0 {
                    continue;
                }
                for c in col..g {
                    let sub = mul_mod(factor, a[rank * g + c], p);
                    a[r * g + c] = (a[r * g + c] + p - sub) % p;
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.size).all(|r| (0..self.size).all(|c| r == c || self.get(r, c) == 0))
    }
}

fn check_cap(ctx: &FermatContext, cap: u128) -> Result<()> {
    if ctx.genus > cap {
        return Err(Error::Limit(format!(
            "genus {} exceeds the oracle cap {cap}",
            ctx.genus
        )));
    }
    Ok(())
}

/// Ranks of `A^g` and `A^(g+1)`; equal values witness that the rank has stabilised.
pub fn stable_ranks(ctx: &FermatContext) -> Result<(usize, usize)> {
    check_cap(ctx, DEFAULT_GENUS_CAP)?;
    let a = cartier_matrix(ctx)?.to_dense();
    let g = a.size() as u64;
    let ag = a.pow(g);
    let ag1 = ag.mul(&a);
    Ok((ag.rank(), ag1.rank()))
}

/// p-rank as the rank of the `g`-th power of the Cartier matrix.
pub fn prank_oracle(ctx: &FermatContext) -> Result<PRankReport> {
    prank_oracle_with_cap(ctx, DEFAULT_GENUS_CAP)
}

pub fn prank_oracle_with_cap(ctx: &FermatContext, cap: u128) -> Result<PRankReport> {
    if ctx.genus == 0 {
        return Ok(PRankReport::rational(Method::Oracle));
    }
    check_cap(ctx, cap)?;
    let a = cartier_matrix(ctx)?.to_dense();
    let rank = a.pow(a.size() as u64).rank();
    Ok(PRankReport::new(BigUint::from(rank), Method::Oracle).with_genus(ctx.genus))
}

/// Is `A^h` diagonal with the entry at `(i, j)` equal to `C(j*beta, i*alpha) mod p`?
pub fn check_h_step_diagonal(ctx: &FermatContext) -> Result<bool> {
    if ctx.genus == 0 {
        return Ok(true);
    }
    check_cap(ctx, DEFAULT_GENUS_CAP)?;
    let matrix = cartier_matrix(ctx)?;
    let ah = matrix.to_dense().pow(ctx.h);
    if !ah.is_diagonal() {
        return Ok(false);
    }
    for (k, idx) in matrix.basis.iter().enumerate() {
        let expected = binom_mod_p(&(&ctx.beta * idx.j), &(&ctx.alpha * idx.i), ctx.p)?;
        if ah.get(k, k) != expected {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every column holds at most one nonzero entry and targets lie in the basis.
pub fn column_sparse(matrix: &CartierMatrix) -> bool {
    let dense = matrix.to_dense();
    let g = dense.size();
    (0..g).all(|c| (0..g).filter(|&r| !dense.get(r, c).is_zero()).count() <= 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::prank_general;

    fn ctx(p: u64, m: u64, n: u64) -> FermatContext {
        FermatContext::new(p, m, n).unwrap()
    }

    #[test]
    fn step_examples() {
        assert_eq!(cartier_step(&ctx(2, 3, 3), BasisIndex { i: 1, j: 2 }).unwrap(), None);
        assert_eq!(
            cartier_step(&ctx(5, 4, 4), BasisIndex { i: 1, j: 2 }).unwrap(),
            Some((BasisIndex { i: 1, j: 2 }, 2))
        );
        assert_eq!(
            cartier_step(&ctx(5, 4, 4), BasisIndex { i: 2, j: 3 }).unwrap(),
            Some((BasisIndex { i: 2, j: 3 }, 3))
        );
        assert!(cartier_step(&ctx(5, 4, 4), BasisIndex { i: 3, j: 3 }).is_err());
    }

    #[test]
    fn matrix_examples() {
        let m = cartier_matrix(&ctx(2, 3, 3)).unwrap();
        assert!(m.columns.iter().all(Option::is_none));
        let m = cartier_matrix(&ctx(5, 4, 4)).unwrap();
        assert_eq!(m.to_dense().pow(3).rank(), 3);
        let m = cartier_matrix(&ctx(7, 2, 3)).unwrap();
        assert_eq!(m.dimension(), 1);
        assert!(m.columns[0].is_some());
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(prank_oracle(&ctx(5, 4, 4)).unwrap().gamma, BigUint::from(3u32));
        assert_eq!(prank_oracle(&ctx(2, 3, 3)).unwrap().gamma, BigUint::from(0u32));
        assert_eq!(prank_oracle(&ctx(3, 2, 8)).unwrap().gamma, BigUint::from(2u32));
    }

    #[test]
    fn diagonal_examples() {
        assert!(check_h_step_diagonal(&ctx(5, 4, 4)).unwrap());
        assert!(check_h_step_diagonal(&ctx(3, 2, 8)).unwrap());
        assert!(check_h_step_diagonal(&ctx(2, 3, 3)).unwrap());
    }

    #[test]
    fn oracle_matches_counter_small() {
        for p in [2u64, 3, 5, 7] {
            for m in 2..12 {
                for n in 2..12 {
                    let Ok(c) = FermatContext::new(p, m, n) else { continue };
                    if c.genus == 0 {
                        continue;
                    }
                    let matrix = cartier_matrix(&c).unwrap();
                    assert!(column_sparse(&matrix));
                    assert_eq!(
                        prank_oracle(&c).unwrap().gamma,
                        prank_general(&c).unwrap().gamma,
                        "p={p} m={m} n={n}"
                    );
                    let (a, b) = stable_ranks(&c).unwrap();
                    assert_eq!(a, b);
                }
            }
        }
    }

    #[test]
    fn lift_invariance() {
        for (p, m, n) in [(5u64, 4u64, 4u64), (3, 2, 8), (7, 3, 4), (2, 3, 5), (5, 6, 4), (11, 5, 3)] {
            let c = ctx(p, m, n);
            for idx in c.basis() {
                for lift in 1..=2 {
                    assert!(lifted_step_consistent(&c, idx, lift).unwrap(), "p={p} m={m} n={n} {idx}");
                }
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        let c = ctx(5, 4, 4);
        assert!(matches!(prank_oracle_with_cap(&c, 2), Err(Error::Limit(_))));
    }

    #[test]
    fn rank_of_known_matrices() {
        let mut m = DenseMatrix::zero(3, 5);
        m.set(0, 0, 1);
        m.set(0, 1, 2);
        m.set(1, 0, 2);
        m.set(1, 1, 4);
        m.set(2, 2, 3);
        assert_eq!(m.rank(), 2);
        assert_eq!(DenseMatrix::identity(4, 7).rank(), 4);
        assert_eq!(DenseMatrix::zero(4, 7).rank(), 0);
    }
}
