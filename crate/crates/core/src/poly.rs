//! Monomials, term orders, polynomials over F_p and free-module vectors.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::field::FieldContext;

pub const MAX_VARS: usize = 16;
pub const MAX_PARSED_EXPONENT: u64 = 1_000_000;

type Exps = SmallVec<[u32; 4]>;

/// A monomial `x^a` stored as a dense exponent vector with cached total degree.
///
/// The derived `Ord` is structural (lexicographic on the exponent vector) and is
/// only meant for use as a map key. Term orders live in [`MonomialOrder`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: Exps,
    degree: u32,
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{:?}", self.exps.as_slice())
    }
}

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial { exps: SmallVec::from_elem(0, n), degree: 0 }
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut m = Self::one(n);
        m.exps[i] = 1;
        m.degree = 1;
        m
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        let degree = exps.iter().try_fold(0u32, |acc, &e| acc.checked_add(e)).expect("monomial degree overflow");
        Monomial { exps: SmallVec::from_slice(exps), degree }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        let exps: Exps =
            self.exps.iter().zip(&other.exps).map(|(a, b)| a.checked_add(*b).expect("exponent overflow")).collect();
        let degree = self.degree.checked_add(other.degree).expect("exponent overflow");
        Monomial { exps, degree }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let exps: Exps = other.exps.iter().zip(&self.exps).map(|(a, b)| a - b).collect();
        Some(Monomial { exps, degree: other.degree - self.degree })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps: Exps = self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect();
        let degree = exps.iter().sum();
        Monomial { exps, degree }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let exps: Exps = self.exps.iter().zip(&other.exps).map(|(a, b)| *a.min(b)).collect();
        let degree = exps.iter().sum();
        Monomial { exps, degree }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Exponents scaled by `q`, with overflow detection.
    pub fn scaled(&self, q: u32) -> Result<Monomial> {
        let mut exps = Exps::with_capacity(self.exps.len());
        for &a in &self.exps {
            exps.push(a.checked_mul(q).ok_or(Error::Overflow)?);
        }
        let degree = self.degree.checked_mul(q).ok_or(Error::Overflow)?;
        Ok(Monomial { exps, degree })
    }

    /// Variables with a nonzero exponent, as a bit set.
    pub fn support(&self) -> u32 {
        self.exps.iter().enumerate().filter(|(_, &a)| a > 0).fold(0, |acc, (i, _)| acc | (1 << i))
    }

    /// If this is a pure power `x_i^a` with `a > 0`, returns `(i, a)`.
    pub fn pure_power(&self) -> Option<(usize, u32)> {
        let mut found = None;
        for (i, &a) in self.exps.iter().enumerate() {
            if a > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some((i, a));
            }
        }
        found
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum MonomialOrder {
    #[default]
    Grevlex,
    Lex,
}

impl MonomialOrder {
    /// `Greater` means `a` is the larger monomial.
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Grevlex => a.degree.cmp(&b.degree).then_with(|| {
                for (x, y) in a.exps.iter().zip(&b.exps).rev() {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }),
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
        }
    }
}

/// A polynomial: terms strictly descending in the ring's order, no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: Vec<(Monomial, u32)>,
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.terms.iter()).finish()
    }
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    pub fn leading(&self) -> Option<&(Monomial, u32)> {
        self.terms.first()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero constant value, if the polynomial is a constant.
    pub fn as_constant(&self) -> Option<u32> {
        match self.terms.as_slice() {
            [(m, c)] if m.is_one() => Some(*c),
            _ => None,
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// Common degree of all terms, if homogeneous and nonzero.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.terms.first()?.0.degree();
        self.terms.iter().all(|(m, _)| m.degree() == d).then_some(d)
    }

    pub fn into_terms(self) -> Vec<(Monomial, u32)> {
        self.terms
    }
}

/// The polynomial ring S = F_p[x_1..x_n] with named variables and a term order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyRing {
    field: FieldContext,
    vars: Vec<String>,
    order: MonomialOrder,
}

fn valid_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl PolyRing {
    pub fn new(field: FieldContext, vars: &[&str]) -> Result<Self> {
        Self::with_order(field, vars, MonomialOrder::Grevlex)
    }

    pub fn with_order(field: FieldContext, vars: &[&str], order: MonomialOrder) -> Result<Self> {
        if vars.len() > MAX_VARS {
            return Err(Error::TooManyVariables(vars.len()));
        }
        for (i, v) in vars.iter().enumerate() {
            if !valid_identifier(v) {
                return Err(Error::Invalid(format!("bad variable name `{v}`")));
            }
            if vars[..i].contains(v) {
                return Err(Error::Invalid(format!("duplicate variable `{v}`")));
            }
        }
        Ok(PolyRing { field, vars: vars.iter().map(|s| s.to_string()).collect(), order })
    }

    pub fn field(&self) -> &FieldContext {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.vars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn check(&self, f: &Polynomial) -> Result<()> {
        if f.terms.iter().any(|(m, _)| m.nvars() != self.nvars()) {
            return Err(Error::Mismatch(format!("polynomial does not live in a ring with {} variables", self.nvars())));
        }
        Ok(())
    }

    pub fn one(&self) -> Polynomial {
        self.constant(1)
    }

    pub fn constant(&self, c: u32) -> Polynomial {
        self.term(Monomial::one(self.nvars()), c)
    }

    pub fn var(&self, i: usize) -> Polynomial {
        self.term(Monomial::var(self.nvars(), i), 1)
    }

    pub fn term(&self, m: Monomial, c: u32) -> Polynomial {
        let c = self.field.from_u64(c as u64);
        if c == 0 {
            Polynomial::zero()
        } else {
            Polynomial { terms: vec![(m, c)] }
        }
    }

    /// Normalizes an arbitrary list of terms: sorts, merges duplicates, drops zeros.
    pub fn from_terms(&self, mut terms: Vec<(Monomial, u32)>) -> Polynomial {
        let ord = self.order;
        terms.sort_by(|a, b| ord.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, u32)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            let c = self.field.from_u64(c as u64);
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = self.field.add(*lc, c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| *c != 0);
        Polynomial { terms: out }
    }

    pub fn add(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        self.add_scaled(f, 1, &Monomial::one(self.nvars()), g)
    }

    pub fn sub(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        self.add_scaled(f, self.field.neg(1), &Monomial::one(self.nvars()), g)
    }

    pub fn neg(&self, f: &Polynomial) -> Polynomial {
        Polynomial { terms: f.terms.iter().map(|(m, c)| (m.clone(), self.field.neg(*c))).collect() }
    }

    pub fn scale(&self, f: &Polynomial, c: u32) -> Polynomial {
        if c == 0 {
            return Polynomial::zero();
        }
        Polynomial { terms: f.terms.iter().map(|(m, a)| (m.clone(), self.field.mul(*a, c))).collect() }
    }

    /// `f + c·m·g`, merging sorted term lists.
    pub fn add_scaled(&self, f: &Polynomial, c: u32, m: &Monomial, g: &Polynomial) -> Polynomial {
        if c == 0 || g.is_zero() {
            return f.clone();
        }
        let fld = &self.field;
        let mut out = Vec::with_capacity(f.len() + g.len());
        let mut i = 0;
        let shifted = g.terms.iter().map(|(gm, gc)| (gm.mul(m), fld.mul(*gc, c)));
        let mut shifted = shifted.peekable();
        while let Some((sm, _)) = shifted.peek() {
            if i < f.terms.len() {
                match self.order.cmp(&f.terms[i].0, sm) {
                    Ordering::Greater => {
                        out.push(f.terms[i].clone());
                        i += 1;
                    }
                    Ordering::Less => out.push(shifted.next().unwrap()),
                    Ordering::Equal => {
                        let (sm, sc) = shifted.next().unwrap();
                        let s = fld.add(f.terms[i].1, sc);
                        if s != 0 {
                            out.push((sm, s));
                        }
                        i += 1;
                    }
                }
            } else {
                out.push(shifted.next().unwrap());
            }
        }
        out.extend_from_slice(&f.terms[i..]);
        Polynomial { terms: out }
    }

    pub fn mul_term(&self, f: &Polynomial, m: &Monomial, c: u32) -> Polynomial {
        if c == 0 {
            return Polynomial::zero();
        }
        Polynomial { terms: f.terms.iter().map(|(fm, fc)| (fm.mul(m), self.field.mul(*fc, c))).collect() }
    }

    pub fn mul(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        debug_assert!(self.check(f).is_ok() && self.check(g).is_ok());
        if f.is_zero() || g.is_zero() {
            return Polynomial::zero();
        }
        let mut acc: BTreeMap<Monomial, u32> = BTreeMap::new();
        for (fm, fc) in &f.terms {
            for (gm, gc) in &g.terms {
                let e = acc.entry(fm.mul(gm)).or_insert(0);
                *e = self.field.add(*e, self.field.mul(*fc, *gc));
            }
        }
        self.from_terms(acc.into_iter().collect())
    }

    pub fn pow(&self, f: &Polynomial, mut e: u64) -> Result<Polynomial> {
        if let Some(d) = f.total_degree() {
            if (d as u64).saturating_mul(e) > u32::MAX as u64 {
                return Err(Error::Overflow);
            }
        }
        let mut base = f.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        Ok(acc)
    }

    /// q = p^e, or overflow.
    pub fn frobenius_power(&self, e: u32) -> Result<u32> {
        let p = self.field.characteristic();
        let mut q: u32 = 1;
        for _ in 0..e {
            q = q.checked_mul(p).ok_or(Error::Overflow)?;
        }
        Ok(q)
    }

    /// `f^q` for q = p^e: over a prime field this is exponent scaling by q.
    pub fn qpower(&self, f: &Polynomial, e: u32) -> Result<Polynomial> {
        let q = self.frobenius_power(e)?;
        let mut terms = Vec::with_capacity(f.len());
        for (m, c) in &f.terms {
            terms.push((m.scaled(q)?, *c));
        }
        // Scaling exponents preserves any term order, so no resort is needed.
        Ok(Polynomial { terms })
    }

    /// Writes `f = Σ_b c_b^q · b` over q-restricted monomials `b`.
    pub fn q_basis_decompose(&self, f: &Polynomial, e: u32) -> Result<BTreeMap<Monomial, Polynomial>> {
        let q = self.frobenius_power(e)?;
        let mut slots: BTreeMap<Monomial, Vec<(Monomial, u32)>> = BTreeMap::new();
        for (m, c) in &f.terms {
            let rem: Vec<u32> = m.exponents().iter().map(|a| a % q).collect();
            let quo: Vec<u32> = m.exponents().iter().map(|a| a / q).collect();
            slots.entry(Monomial::from_exponents(&rem)).or_default().push((Monomial::from_exponents(&quo), *c));
        }
        Ok(slots.into_iter().map(|(b, t)| (b, self.from_terms(t))).collect())
    }

    pub fn is_homogeneous(&self, f: &Polynomial) -> bool {
        f.is_zero() || f.homogeneous_degree().is_some()
    }

    pub fn display(&self, f: &Polynomial) -> String {
        if f.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::with_capacity(f.len());
        for (m, c) in &f.terms {
            let mut factors = Vec::new();
            if *c != 1 || m.is_one() {
                factors.push(c.to_string());
            }
            for (i, &a) in m.exponents().iter().enumerate() {
                match a {
                    0 => {}
                    1 => factors.push(self.vars[i].clone()),
                    _ => factors.push(format!("{}^{}", self.vars[i], a)),
                }
            }
            parts.push(factors.join("*"));
        }
        parts.join(" + ")
    }

    pub fn parse(&self, text: &str) -> Result<Polynomial> {
        let mut vars: Vec<(usize, &str)> = self.vars.iter().map(|s| s.as_str()).enumerate().collect();
        vars.sort_by(|a, b| b.1.len().cmp(&a.1.len()).then(a.0.cmp(&b.0)));
        let mut parser = Parser { ring: self, src: text.as_bytes(), pos: 0, vars };
        let f = parser.expr()?;
        parser.skip_ws();
        if parser.pos != parser.src.len() {
            return Err(parser.err("unexpected trailing input"));
        }
        Ok(f)
    }
}

struct Parser<'a> {
    ring: &'a PolyRing,
    src: &'a [u8],
    pos: usize,
    vars: Vec<(usize, &'a str)>,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Syntax { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let r = self.ring;
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                r.neg(&self.term()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = r.add(&acc, &self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = r.sub(&acc, &self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = self.ring.mul(&acc, &self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let mut base = self.atom()?;
        while self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let e = self.integer()?.ok_or_else(|| self.err("expected exponent"))?;
            if e > MAX_PARSED_EXPONENT {
                self.pos = start;
                return Err(Error::Overflow);
            }
            base = self.ring.pow(&base, e)?;
        }
        Ok(base)
    }

    /// Reads an unsigned integer literal; returns its value capped for overflow
    /// detection together with nothing if no digits are present.
    fn integer(&mut self) -> Result<Option<u64>> {
        let start = self.pos;
        let mut v: u64 = 0;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            v = v.saturating_mul(10).saturating_add((self.src[self.pos] - b'0') as u64);
            self.pos += 1;
        }
        Ok((self.pos > start).then_some(v))
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let r = self.ring;
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let f = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(f)
            }
            Some(c) if c.is_ascii_digit() => {
                // Reduce digit by digit so arbitrarily long literals are fine.
                let p = r.field().characteristic() as u64;
                let mut v = 0u64;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    v = (v * 10 + (self.src[self.pos] - b'0') as u64) % p;
                    self.pos += 1;
                }
                Ok(r.constant(v as u32))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let rest = &self.src[self.pos..];
                for &(idx, name) in &self.vars {
                    if rest.starts_with(name.as_bytes()) {
                        self.pos += name.len();
                        return Ok(r.var(idx));
                    }
                }
                let start = self.pos;
                let mut end = start;
                while end < self.src.len() && (self.src[end].is_ascii_alphanumeric() || self.src[end] == b'_') {
                    end += 1;
                }
                Err(Error::UnknownVariable {
                    pos: start,
                    name: String::from_utf8_lossy(&self.src[start..end]).into_owned(),
                })
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

/// An element of a free module: `(position, polynomial)` pairs, ascending by
/// position, with no zero entries.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct FreeVector {
    entries: Vec<(usize, Polynomial)>,
}

impl FreeVector {
    pub fn zero() -> Self {
        FreeVector { entries: Vec::new() }
    }

    pub fn unit(ring: &PolyRing, pos: usize) -> Self {
        FreeVector { entries: vec![(pos, ring.one())] }
    }

    pub fn from_entries(mut entries: Vec<(usize, Polynomial)>) -> Self {
        entries.retain(|(_, f)| !f.is_zero());
        entries.sort_by_key(|(p, _)| *p);
        for w in entries.windows(2) {
            assert!(w[0].0 != w[1].0, "duplicate position {} in FreeVector", w[0].0);
        }
        FreeVector { entries }
    }

    pub fn from_dense(dense: Vec<Polynomial>) -> Self {
        FreeVector { entries: dense.into_iter().enumerate().filter(|(_, f)| !f.is_zero()).collect() }
    }

    pub fn to_dense(&self, rank: usize) -> Vec<Polynomial> {
        let mut out = vec![Polynomial::zero(); rank];
        for (p, f) in &self.entries {
            out[*p] = f.clone();
        }
        out
    }

    pub fn entries(&self) -> &[(usize, Polynomial)] {
        &self.entries
    }

    pub fn get(&self, pos: usize) -> Option<&Polynomial> {
        self.entries.binary_search_by_key(&pos, |(p, _)| *p).ok().map(|i| &self.entries[i].1)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn max_position(&self) -> Option<usize> {
        self.entries.last().map(|(p, _)| *p)
    }
}
