#![allow(dead_code)]

use frobdim::{FreeVector, Monomial, PolyRing, Polynomial, QuotientRing};
use proptest::prelude::*;

pub fn ring(p: u64, vars: &[&str], ideal: &[&str]) -> QuotientRing {
    QuotientRing::parse(p, vars, ideal).unwrap()
}

/// Raw term lists: up to `len` terms with exponents below `max_exp`.
pub fn terms(nvars: usize, max_exp: u32, len: usize) -> impl Strategy<Value = Vec<(Vec<u32>, u32)>> {
    prop::collection::vec((prop::collection::vec(0..max_exp, nvars), 0u32..1000), 0..=len)
}

pub fn build(ring: &PolyRing, raw: &[(Vec<u32>, u32)]) -> Polynomial {
    let p = ring.field().characteristic();
    ring.from_terms(raw.iter().map(|(e, c)| (Monomial::from_exponents(e), c % p)).collect())
}

/// `Σ_j c_j g_j` in a free module of rank `rank`, reduced in `r`.
pub fn combine(r: &QuotientRing, rank: usize, gens: &[FreeVector], coeffs: &[Polynomial]) -> FreeVector {
    let mut acc = vec![Polynomial::zero(); rank];
    for (g, c) in gens.iter().zip(coeffs) {
        for (pos, f) in g.entries() {
            acc[*pos] = r.add(&acc[*pos], &r.mul(c, f));
        }
    }
    r.reduce_vector(&FreeVector::from_dense(acc))
}

pub fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || n < k {
        return 0;
    }
    (0..k).fold(1i64, |acc, i| acc * (n - i) / (i + 1))
}

/// Rank over F_p of a list of sparse coefficient rows, by plain Gaussian elimination.
pub fn rank_mod_p(p: u32, mut rows: Vec<Vec<u32>>) -> usize {
    let p = p as u64;
    let inv = |a: u64| {
        let mut r = 1u64;
        let (mut b, mut e) = (a, p - 2);
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    };
    let width = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..width {
        let Some(piv) = (rank..rows.len()).find(|&i| rows[i][col] != 0) else { continue };
        rows.swap(rank, piv);
        let s = inv(rows[rank][col] as u64);
        for v in rows[rank].iter_mut() {
            *v = (*v as u64 * s % p) as u32;
        }
        let pivot = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && row[col] != 0 {
                let f = row[col] as u64;
                for (x, &y) in row.iter_mut().zip(&pivot) {
                    *x = ((*x as u64 + p - f * y as u64 % p) % p) as u32;
                }
            }
        }
        rank += 1;
    }
    rank
}
