//! Hilbert series and numerical invariants of R = S/I.

use serde::Serialize;

use crate::error::Result;
use crate::module::{standard_monomials, PresentedModule};
use crate::poly::Monomial;
use crate::resolution::minimal_free_resolution;
use crate::ring::QuotientRing;

/// Polynomial in `t` with integer coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct IntPoly(pub Vec<i64>);

impl IntPoly {
    pub fn one() -> Self {
        IntPoly(vec![1])
    }

    fn trim(mut self) -> Self {
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
        self
    }

    pub fn coeff(&self, k: usize) -> i64 {
        self.0.get(k).copied().unwrap_or(0)
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.0.len().max(other.0.len());
        IntPoly((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect()).trim()
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly(self.0.iter().map(|c| -c).collect())
    }

    pub fn shift(&self, k: usize) -> IntPoly {
        if self.0.is_empty() {
            return self.clone();
        }
        let mut v = vec![0; k];
        v.extend_from_slice(&self.0);
        IntPoly(v)
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.0.is_empty() || other.0.is_empty() {
            return IntPoly(Vec::new());
        }
        let mut v = vec![0; self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        IntPoly(v).trim()
    }

    pub fn eval_one(&self) -> i64 {
        self.0.iter().sum()
    }

    /// Exact quotient by `1 - t`, if it divides.
    pub fn div_one_minus_t(&self) -> Option<IntPoly> {
        let mut acc = 0;
        let mut out = Vec::with_capacity(self.0.len());
        for c in &self.0 {
            acc += c;
            out.push(acc);
        }
        if acc != 0 {
            return None;
        }
        out.pop();
        Some(IntPoly(out).trim())
    }
}

fn minimalize(gens: &[Monomial]) -> Vec<Monomial> {
    let mut out: Vec<Monomial> = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        let redundant = gens.iter().enumerate().any(|(j, h)| j != i && h.divides(g) && (h != g || j < i));
        if !redundant {
            out.push(g.clone());
        }
    }
    out
}

/// Numerator `N` with `HS_{S/J}(t) = N(t)/(1-t)^n` for a monomial ideal `J`.
pub fn monomial_hilbert_numerator(gens: &[Monomial]) -> IntPoly {
    let gens = minimalize(gens);
    if gens.iter().any(Monomial::is_one) {
        return IntPoly(Vec::new());
    }
    let coprime = gens.iter().enumerate().all(|(i, a)| gens[i + 1..].iter().all(|b| a.is_coprime(b)));
    if coprime {
        return gens.iter().fold(IntPoly::one(), |acc, m| {
            acc.mul(&IntPoly::one().add(&IntPoly::one().shift(m.degree() as usize).neg()))
        });
    }
    let (m, rest) = gens.split_last().unwrap();
    let colon: Vec<Monomial> = rest.iter().map(|g| m.gcd(g).quotient_of(g).unwrap()).collect();
    monomial_hilbert_numerator(rest).add(&monomial_hilbert_numerator(&colon).shift(m.degree() as usize).neg())
}

/// Numerator of the Hilbert series of R over `(1-t)^n`, from in(I).
pub fn hilbert_numerator(r: &QuotientRing) -> IntPoly {
    monomial_hilbert_numerator(&r.leading_monomials())
}

/// The same numerator as an alternating sum of shifts in the minimal
/// S-resolution of S/I.
pub fn hilbert_numerator_from_resolution(r: &QuotientRing) -> Result<IntPoly> {
    let (_, res) = s_resolution(r)?;
    let mut q = IntPoly(Vec::new());
    for (i, degs) in res.degrees.iter().enumerate() {
        for &d in degs {
            let term = IntPoly::one().shift(d as usize);
            q = if i % 2 == 0 { q.add(&term) } else { q.add(&term.neg()) };
        }
    }
    Ok(q)
}

fn s_resolution(r: &QuotientRing) -> Result<(QuotientRing, crate::resolution::Resolution)> {
    let s = QuotientRing::new(r.poly().clone(), Vec::new())?.with_budget(r.budget());
    let m = PresentedModule::cyclic(&s, r.ideal_generators())?;
    let res = minimal_free_resolution(&m, r.nvars() + 1)?;
    Ok((s, res))
}

/// Krull dimension of S/J: the largest set of variables containing the support
/// of no generator of `J`.
pub fn monomial_dimension(gens: &[Monomial], n: usize) -> usize {
    let supports: Vec<u32> = gens.iter().map(Monomial::support).collect();
    (0u32..1 << n).filter(|u| supports.iter().all(|s| s & !u != 0)).map(|u| u.count_ones() as usize).max().unwrap_or(0)
}

/// Numerical invariants of R.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RingInvariants {
    pub dim: usize,
    pub depth: usize,
    pub multiplicity: u64,
    /// `None` when R has infinite length.
    pub length: Option<u64>,
    pub hilbert_numerator: IntPoly,
    pub is_cm: bool,
    pub is_ci: bool,
    pub e_threshold: u32,
    pub r_window: usize,
}

/// Smallest `e >= 0` with `p^e >= bound`.
pub fn log_threshold(p: u32, bound: u64) -> u32 {
    let mut e = 0;
    let mut q: u64 = 1;
    while q < bound {
        q = q.saturating_mul(p as u64);
        e += 1;
    }
    e
}

pub fn ring_profile(r: &QuotientRing) -> Result<RingInvariants> {
    let n = r.nvars();
    let leads = r.leading_monomials();
    let dim = monomial_dimension(&leads, n);
    let numerator = hilbert_numerator(r);
    let mut h = numerator.clone();
    for _ in 0..n - dim {
        h = h.div_one_minus_t().expect("(1-t)^codim divides the Hilbert numerator");
    }
    let multiplicity = h.eval_one();
    assert!(multiplicity >= 1, "multiplicity of a nonzero graded ring is positive");
    let multiplicity = multiplicity as u64;
    let length = if dim == 0 {
        let basis = standard_monomials(&leads.iter().map(|m| (m.clone(), 0)).collect::<Vec<_>>(), 1, n)
            .expect("zero-dimensional rings have finitely many standard monomials");
        Some(basis.len() as u64)
    } else {
        None
    };
    let (_, res) = s_resolution(r)?;
    let pd = res.betti.iter().rposition(|&b| b > 0).unwrap_or(0);
    let depth = n - pd;
    let mu = res.betti.get(1).copied().unwrap_or(0);
    Ok(RingInvariants {
        dim,
        depth,
        multiplicity,
        length,
        hilbert_numerator: numerator,
        is_cm: depth == dim,
        is_ci: mu == n - dim,
        e_threshold: log_threshold(r.characteristic(), multiplicity),
        r_window: dim.max(1),
    })
}

impl QuotientRing {
    /// Cached [`ring_profile`].
    pub fn invariants(&self) -> Result<RingInvariants> {
        self.invariants_cell().get_or_init(|| ring_profile(self)).clone()
    }
}
