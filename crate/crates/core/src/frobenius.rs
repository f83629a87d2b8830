//! The Frobenius functor on free complexes, the pushforward ᵉR as an R-module,
//! and Tor/Ext tables against it.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::homology::{hom_cohomology, homology_is_zero, spot_homology, HomologyInfo, Spot};
use crate::module::{FreeComplex, Matrix, PresentedModule};
use crate::poly::Monomial;
use crate::resolution::minimal_free_resolution;
use crate::ring::QuotientRing;

/// Largest `q^n` accepted by [`pushforward_presentation`] by default.
pub const DEFAULT_PUSHFORWARD_BUDGET: u64 = 4096;

/// Replaces every entry `a` of every differential by `a^q` reduced modulo I.
pub fn frobenius_twist(c: &FreeComplex, e: u32) -> Result<FreeComplex> {
    let ring = c.ring();
    let q = ring.poly().frobenius_power(e)? as i64;
    let degrees = c.degrees().map(|d| d.iter().map(|v| v.iter().map(|x| x * q).collect()).collect());
    c.map_differentials(|d| d.map_entries(|a| ring.frobenius(a, e)), degrees)
}

/// ᵉR presented as an R-module on the q-restricted monomials.
#[derive(Clone, Debug)]
pub struct FrobeniusPresentation {
    pub e: u32,
    pub q: u32,
    pub generators: Vec<Monomial>,
    pub relations: Matrix,
    /// Degree of generator `b` is `|b|/q`, stored as `(|b|, q)`.
    pub gen_degrees: Vec<(u32, u32)>,
}

impl FrobeniusPresentation {
    /// The presented module, graded in units where each variable has degree `q`.
    pub fn as_module(&self, ring: &QuotientRing) -> Result<PresentedModule> {
        let degs = self.gen_degrees.iter().map(|(d, _)| *d as i64).collect();
        PresentedModule::with_unit(ring, self.generators.len(), Some(degs), self.q as i64, self.relations.clone())
    }
}

fn restricted_monomials(n: usize, q: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u32; n];
    loop {
        out.push(Monomial::from_exponents(&exps));
        let mut k = 0;
        while k < n {
            exps[k] += 1;
            if exps[k] < q {
                break;
            }
            exps[k] = 0;
            k += 1;
        }
        if k == n {
            break;
        }
    }
    out.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| b.exponents().cmp(a.exponents())));
    out
}

pub fn pushforward_presentation(r: &QuotientRing, e: u32) -> Result<FrobeniusPresentation> {
    pushforward_presentation_with_budget(r, e, DEFAULT_PUSHFORWARD_BUDGET)
}

pub fn pushforward_presentation_with_budget(r: &QuotientRing, e: u32, budget: u64) -> Result<FrobeniusPresentation> {
    let poly = r.poly();
    let q = poly.frobenius_power(e)?;
    let n = r.nvars();
    let size = (q as u64).checked_pow(n as u32).unwrap_or(u64::MAX);
    if size > budget {
        return Err(Error::ResourceExceeded(format!("pushforward rank {q}^{n} exceeds the limit {budget}")));
    }
    let generators = restricted_monomials(n, q);
    let index: HashMap<&Monomial, usize> = generators.iter().enumerate().map(|(i, b)| (b, i)).collect();
    let g = generators.len();
    let mut cols = Vec::new();
    for f in r.ideal_generators() {
        for b in &generators {
            let fb = poly.mul_term(f, b, 1);
            let mut col = vec![crate::poly::Polynomial::zero(); g];
            for (slot, c) in poly.q_basis_decompose(&fb, e)? {
                col[index[&slot]] = r.reduce(&c);
            }
            cols.push(crate::poly::FreeVector::from_dense(col));
        }
    }
    let gen_degrees = generators.iter().map(|b| (b.degree(), q)).collect();
    Ok(FrobeniusPresentation { e, q, generators, relations: Matrix::from_columns(g, &cols), gen_degrees })
}

/// Which functor a table records.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, serde::Serialize)]
pub enum TableKind {
    Tor,
    Ext,
}

/// Cells `(i, e)` of Tor_i(ᵉR, M) or Ext^i(ᵉR, M) for `t <= i < t + window`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobTable {
    pub kind: TableKind,
    pub e: u32,
    pub t: i64,
    pub window: usize,
    pub cells: BTreeMap<(i64, u32), HomologyInfo>,
}

impl FrobTable {
    pub fn all_vanish(&self) -> bool {
        self.cells.values().all(|c| c.vanishes)
    }

    pub fn first_nonvanishing(&self) -> Option<(i64, u32)> {
        self.cells.iter().find(|(_, c)| !c.vanishes).map(|(k, _)| *k)
    }
}

pub type TorTable = FrobTable;

/// Tor_i(ᵉR, M) via the Frobenius twist of a minimal resolution of M.
pub fn tor_frobenius(m: &PresentedModule, t: usize, window: usize, e: u32) -> Result<TorTable> {
    if t < 1 || window < 1 {
        return Err(Error::Precondition("module Tor tables need t >= 1 and window >= 1".into()));
    }
    let res = minimal_free_resolution(m, t + window)?;
    tor_frobenius_complex(&res.complex, t as i64, window, e)
}

/// Tor_i(ᵉR, C) for a bounded complex of free modules: homology of its twist.
pub fn tor_frobenius_complex(c: &FreeComplex, t: i64, window: usize, e: u32) -> Result<TorTable> {
    if e == 0 {
        return Err(Error::Precondition("Frobenius exponent must be positive".into()));
    }
    let twisted = frobenius_twist(c, e)?;
    let mut cells = BTreeMap::new();
    for i in t..t + window as i64 {
        cells.insert((i, e), homology_is_zero(&twisted, i, true)?);
    }
    Ok(FrobTable { kind: TableKind::Tor, e, t, window, cells })
}

/// Tor_i(ᵉR, M) computed as the homology of `F ⊗ ᵉR` with ᵉR given by its
/// pushforward presentation.
pub fn tor_frobenius_via_pushforward(m: &PresentedModule, i: usize, e: u32) -> Result<HomologyInfo> {
    if e == 0 {
        return Err(Error::Precondition("Frobenius exponent must be positive".into()));
    }
    let ring = m.ring();
    let pf = pushforward_presentation(ring, e)?.as_module(ring)?.minimal_presentation()?;
    let res = minimal_free_resolution(m, i + 1)?;
    let g = pf.generator_count();
    let c = &res.complex;
    let i = i as i64;
    let out = c.differential(i).kron_identity(g);
    let inc = c.differential(i + 1).kron_identity(g);
    let mid_rel = pf.relations().block_diagonal(c.rank(i));
    let out_rel = pf.relations().block_diagonal(c.rank(i - 1));
    spot_homology(
        &Spot {
            ring,
            b: g * c.rank(i),
            incoming: Some(&inc),
            outgoing: Some(&out),
            mid_rel: Some(&mid_rel),
            out_rel: Some(&out_rel),
        },
        true,
    )
}

/// Ext^i(ᵉR, M) for `t <= i < t + window`, from a minimal resolution of ᵉR.
pub fn ext_frobenius(m: &PresentedModule, t: usize, window: usize, e: u32) -> Result<FrobTable> {
    if e == 0 {
        return Err(Error::Precondition("Frobenius exponent must be positive".into()));
    }
    if window < 1 {
        return Err(Error::Precondition("window must be at least 1".into()));
    }
    let ring = m.ring();
    let pf = pushforward_presentation(ring, e)?.as_module(ring)?;
    let res = minimal_free_resolution(&pf, t + window)?;
    let mut cells = BTreeMap::new();
    for i in t..t + window {
        cells.insert((i as i64, e), hom_cohomology(&res.complex, m, i, true)?);
    }
    Ok(FrobTable { kind: TableKind::Ext, e, t: t as i64, window, cells })
}

/// Largest `i` with `H_i(C) != 0`, or `None` for an exact complex.
pub fn sup_homology(c: &FreeComplex) -> Result<Option<i64>> {
    for i in (c.lo()..=c.hi()).rev() {
        if !homology_is_zero(c, i, false)?.vanishes {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::FreeVector;

    fn ring(p: u64, vars: &[&str], ideal: &[&str]) -> QuotientRing {
        QuotientRing::parse(p, vars, ideal).unwrap()
    }

    #[test]
    fn twist_examples() {
        let r = ring(2, &["x"], &["x^2"]);
        let c = FreeComplex::new(&r, 0, vec![1, 1], vec![Matrix::from_rows(vec![vec![r.poly().var(0)]])]).unwrap();
        assert!(frobenius_twist(&c, 1).unwrap().differential(1).is_zero());
        let s = ring(2, &["x", "y"], &[]);
        let d = Matrix::from_rows(vec![vec![s.poly().var(0), s.poly().var(1)]]);
        let c = FreeComplex::new(&s, 0, vec![1, 2], vec![d]).unwrap();
        let t = frobenius_twist(&c, 1).unwrap().differential(1);
        assert_eq!(t.get(0, 0), &s.poly().parse("x^2").unwrap());
        assert_eq!(t.get(0, 1), &s.poly().parse("y^2").unwrap());
        let id = FreeComplex::new(&s, 0, vec![2, 2], vec![Matrix::identity(&s, 2)]).unwrap();
        assert_eq!(frobenius_twist(&id, 2).unwrap().differential(1), Matrix::identity(&s, 2));
    }

    #[test]
    fn pushforward_examples() {
        let s = ring(2, &["x"], &[]);
        let pf = pushforward_presentation(&s, 1).unwrap();
        assert_eq!(pf.generators.len(), 2);
        assert_eq!(pf.relations.cols(), 0);

        let r = ring(2, &["x"], &["x^2"]);
        let pf = pushforward_presentation(&r, 1).unwrap();
        let x = r.poly().var(0);
        assert_eq!(
            pf.relations.columns(),
            vec![FreeVector::from_entries(vec![(0, x.clone())]), FreeVector::from_entries(vec![(1, x)]),]
        );
        assert_eq!(pf.as_module(&r).unwrap().length().unwrap(), Some(2));

        let r = ring(2, &["x", "y"], &["x*y"]);
        let pf = pushforward_presentation(&r, 1).unwrap();
        assert_eq!((pf.generators.len(), pf.relations.cols()), (4, 4));
        assert!(pushforward_presentation_with_budget(&r, 3, 16).is_err());
    }

    #[test]
    fn tor_examples() {
        let r = ring(2, &["x"], &["x^2"]);
        let k = PresentedModule::residue_field(&r);
        let t = tor_frobenius(&k, 1, 1, 1).unwrap();
        assert_eq!(t.cells[&(1, 1)], HomologyInfo { vanishes: false, dim_k: Some(2) });
        assert_eq!(tor_frobenius_via_pushforward(&k, 1, 1).unwrap(), HomologyInfo { vanishes: false, dim_k: Some(2) });

        let s = ring(2, &["x", "y"], &[]);
        let k = PresentedModule::residue_field(&s);
        for e in 1..=2 {
            assert!(tor_frobenius(&k, 1, 2, e).unwrap().all_vanish());
        }

        let r = ring(2, &["x", "y"], &["x*y"]);
        let m = PresentedModule::cyclic(&r, &[r.poly().parse("x+y").unwrap()]).unwrap();
        assert!(tor_frobenius_via_pushforward(&m, 1, 1).unwrap().vanishes);
        assert!(tor_frobenius(&m, 1, 2, 1).unwrap().all_vanish());
    }

    #[test]
    fn ext_examples() {
        let r = ring(2, &["x"], &["x^2"]);
        assert!(ext_frobenius(&PresentedModule::free(&r, 1), 1, 2, 1).unwrap().all_vanish());
        assert!(!ext_frobenius(&PresentedModule::residue_field(&r), 1, 1, 1).unwrap().all_vanish());
        let s = ring(3, &["x", "y"], &[]);
        assert!(ext_frobenius(&PresentedModule::residue_field(&s), 1, 2, 1).unwrap().all_vanish());
    }

    #[test]
    fn sup_homology_examples() {
        let r = ring(2, &["x"], &["x^2"]);
        assert_eq!(sup_homology(&FreeComplex::concentrated(&r, 1, 0)).unwrap(), Some(0));
        let c = FreeComplex::new(&r, 0, vec![1, 1], vec![Matrix::zeros(1, 1)]).unwrap();
        assert_eq!(sup_homology(&c).unwrap(), Some(1));
        let s = ring(2, &["x", "y"], &[]);
        let p = s.poly();
        let c = FreeComplex::new(
            &s,
            0,
            vec![1, 2, 1],
            vec![
                Matrix::from_rows(vec![vec![p.var(0), p.var(1)]]),
                Matrix::from_rows(vec![vec![p.var(1)], vec![p.var(0)]]),
            ],
        )
        .unwrap();
        assert_eq!(sup_homology(&c).unwrap(), Some(0));
        let exact = FreeComplex::new(&s, 0, vec![1, 1], vec![Matrix::identity(&s, 1)]).unwrap();
        assert_eq!(sup_homology(&exact).unwrap(), None);
    }
}
