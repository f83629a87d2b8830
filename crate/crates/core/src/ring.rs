//! Quotient rings R = S/I by homogeneous ideals.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::field::FieldContext;
use crate::groebner::{terms_to_vec, vec_to_terms, Engine, ModuleOrder, Reducers, Term, DEFAULT_STEP_BUDGET};
use crate::invariants::RingInvariants;
use crate::poly::{FreeVector, Monomial, PolyRing, Polynomial};

struct Inner {
    poly: PolyRing,
    ideal_gens: Vec<Polynomial>,
    basis: Vec<Polynomial>,
    reducers: Reducers,
    budget: u64,
    invariants: OnceLock<Result<RingInvariants>>,
}

/// `R = F_p[x_1..x_n]/I` with a cached reduced Gröbner basis of `I`.
///
/// Cheap to clone; clones share the cached basis and invariants.
#[derive(Clone)]
pub struct QuotientRing(Arc<Inner>);

impl fmt::Debug for QuotientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.poly();
        let ideal: Vec<String> = self.0.ideal_gens.iter().map(|g| p.display(g)).collect();
        write!(f, "F_{}[{}]/({})", p.field().characteristic(), p.var_names().join(","), ideal.join(", "))
    }
}

impl QuotientRing {
    pub fn new(poly: PolyRing, ideal_gens: Vec<Polynomial>) -> Result<Self> {
        Self::with_budget_inner(poly, ideal_gens, DEFAULT_STEP_BUDGET)
    }

    fn with_budget_inner(poly: PolyRing, ideal_gens: Vec<Polynomial>, budget: u64) -> Result<Self> {
        let mut gens = Vec::new();
        for g in ideal_gens {
            poly.check(&g)?;
            if g.is_zero() {
                continue;
            }
            match g.homogeneous_degree() {
                Some(0) => return Err(Error::Invalid("ideal contains a unit".into())),
                Some(_) => gens.push(g),
                None => return Err(Error::NonHomogeneous(format!("ideal generator {}", poly.display(&g)))),
            }
        }
        let order = ModuleOrder::top(poly.order());
        let input =
            gens.iter().map(|g| vec_to_terms(&order, &FreeVector::from_entries(vec![(0, g.clone())]))).collect();
        let mut eng = Engine::new(poly.field(), order, budget);
        let elems = eng.buchberger(input)?;
        let basis: Vec<Polynomial> =
            elems.iter().map(|e| terms_to_vec(&poly, e).get(0).cloned().unwrap_or_default()).collect();
        if basis.iter().any(|b| b.as_constant().is_some()) {
            return Err(Error::Invalid("ideal is the unit ideal".into()));
        }
        Ok(QuotientRing(Arc::new(Inner {
            poly,
            ideal_gens: gens,
            basis,
            reducers: Reducers::from_elems(elems),
            budget,
            invariants: OnceLock::new(),
        })))
    }

    /// The polynomial ring itself (I = 0).
    pub fn polynomial(field: FieldContext, vars: &[&str]) -> Result<Self> {
        Self::new(PolyRing::new(field, vars)?, Vec::new())
    }

    /// Convenience constructor from textual ideal generators.
    pub fn parse(p: u64, vars: &[&str], ideal: &[&str]) -> Result<Self> {
        let poly = PolyRing::new(FieldContext::new(p)?, vars)?;
        let gens = ideal.iter().map(|s| poly.parse(s)).collect::<Result<Vec<_>>>()?;
        Self::new(poly, gens)
    }

    /// Same ring with a different per-computation reduction-step budget.
    pub fn with_budget(&self, budget: u64) -> Self {
        QuotientRing(Arc::new(Inner {
            poly: self.0.poly.clone(),
            ideal_gens: self.0.ideal_gens.clone(),
            basis: self.0.basis.clone(),
            reducers: self.0.reducers.clone(),
            budget,
            invariants: OnceLock::new(),
        }))
    }

    pub fn poly(&self) -> &PolyRing {
        &self.0.poly
    }

    pub fn field(&self) -> &FieldContext {
        self.0.poly.field()
    }

    pub fn characteristic(&self) -> u32 {
        self.field().characteristic()
    }

    pub fn nvars(&self) -> usize {
        self.0.poly.nvars()
    }

    pub fn budget(&self) -> u64 {
        self.0.budget
    }

    pub fn ideal_generators(&self) -> &[Polynomial] {
        &self.0.ideal_gens
    }

    /// Reduced Gröbner basis of I.
    pub fn ideal_basis(&self) -> &[Polynomial] {
        &self.0.basis
    }

    pub fn is_polynomial_ring(&self) -> bool {
        self.0.basis.is_empty()
    }

    /// Minimal generators of the initial ideal in(I).
    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.0.basis.iter().map(|b| b.leading().unwrap().0.clone()).collect()
    }

    pub fn same_ring(&self, other: &QuotientRing) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.poly == other.0.poly && self.0.basis == other.0.basis)
    }

    /// Normal form modulo I.
    pub fn reduce(&self, f: &Polynomial) -> Polynomial {
        if self.is_polynomial_ring() || f.is_zero() {
            return f.clone();
        }
        let poly = self.poly();
        let order = ModuleOrder::top(poly.order());
        let terms = f.terms().iter().map(|(m, c)| Term { mon: m.clone(), pos: 0, coef: *c }).collect();
        let mut eng = Engine::new(poly.field(), order, u64::MAX);
        let r = eng.reduce(terms, &self.0.reducers).expect("unbounded reduction");
        poly.from_terms(r.into_iter().map(|t| (t.mon, t.coef)).collect())
    }

    /// Entrywise normal form modulo I.
    pub fn reduce_vector(&self, v: &FreeVector) -> FreeVector {
        if self.is_polynomial_ring() {
            return v.clone();
        }
        FreeVector::from_entries(v.entries().iter().map(|(p, f)| (*p, self.reduce(f))).collect())
    }

    pub fn mul(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        self.reduce(&self.poly().mul(f, g))
    }

    pub fn add(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        self.poly().add(f, g)
    }

    /// The Frobenius image `f^q`, reduced modulo I.
    pub fn frobenius(&self, f: &Polynomial, e: u32) -> Result<Polynomial> {
        Ok(self.reduce(&self.poly().qpower(f, e)?))
    }

    pub fn is_zero_element(&self, f: &Polynomial) -> bool {
        self.reduce(f).is_zero()
    }

    /// Checks whether a monomial is standard, i.e. not in in(I).
    pub fn is_standard(&self, m: &Monomial) -> bool {
        !self.0.basis.iter().any(|b| b.leading().unwrap().0.divides(m))
    }

    pub(crate) fn invariants_cell(&self) -> &OnceLock<Result<RingInvariants>> {
        &self.0.invariants
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_ideals() {
        assert!(matches!(QuotientRing::parse(2, &["x", "y"], &["x^2 + y"]), Err(Error::NonHomogeneous(_))));
        assert!(QuotientRing::parse(2, &["x"], &["1"]).is_err());
        assert!(QuotientRing::parse(4, &["x"], &[]).is_err());
    }

    #[test]
    fn reduces_modulo_ideal() {
        let r = QuotientRing::parse(3, &["x", "y"], &["x^2 - y^2"]).unwrap();
        let p = r.poly();
        // in(I) = (x^2) in grevlex, so x^3 -> x*y^2.
        assert_eq!(r.reduce(&p.parse("x^3").unwrap()), p.parse("x*y^2").unwrap());
        assert!(r.is_zero_element(&p.parse("x^2*y - y^3").unwrap()));
        assert_eq!(r.frobenius(&p.parse("x").unwrap(), 1).unwrap(), p.parse("x*y^2").unwrap());
    }
}
