//! Buchberger's algorithm for submodules of free modules over S = F_p[x] and
//! over quotients R = S/I, together with normal forms, syzygies and lifts.
//!
//! Everything over R is computed in S: a submodule of R^g is represented by its
//! preimage in S^g, i.e. the given generators plus `h·e_j` for every element `h`
//! of the Gröbner basis of I and every position `j`.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap, HashSet};

use crate::error::{Error, Result};
use crate::field::FieldContext;
use crate::poly::{FreeVector, Monomial, MonomialOrder, PolyRing};
use crate::ring::QuotientRing;

pub const DEFAULT_STEP_BUDGET: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Term {
    pub mon: Monomial,
    pub pos: usize,
    pub coef: u32,
}

pub(crate) type TermVec = Vec<Term>;

/// Term-over-position order on module monomials, optionally with an
/// elimination block: positions below `split` outrank every position at or
/// above it regardless of the monomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct ModuleOrder {
    pub mono: MonomialOrder,
    pub split: usize,
}

impl ModuleOrder {
    pub fn top(mono: MonomialOrder) -> Self {
        ModuleOrder { mono, split: 0 }
    }

    #[inline]
    pub fn cmp(&self, a: (&Monomial, usize), b: (&Monomial, usize)) -> Ordering {
        let block_a = a.1 < self.split;
        let block_b = b.1 < self.split;
        block_a.cmp(&block_b).then_with(|| self.mono.cmp(a.0, b.0)).then_with(|| b.1.cmp(&a.1))
    }
}

pub(crate) fn vec_to_terms(order: &ModuleOrder, v: &FreeVector) -> TermVec {
    let mut terms: TermVec = v
        .entries()
        .iter()
        .flat_map(|(pos, f)| f.terms().iter().map(move |(m, c)| Term { mon: m.clone(), pos: *pos, coef: *c }))
        .collect();
    terms.sort_by(|a, b| order.cmp((&b.mon, b.pos), (&a.mon, a.pos)));
    terms
}

pub(crate) fn terms_to_vec(ring: &PolyRing, terms: &[Term]) -> FreeVector {
    let mut by_pos: std::collections::BTreeMap<usize, Vec<(Monomial, u32)>> = Default::default();
    for t in terms {
        by_pos.entry(t.pos).or_default().push((t.mon.clone(), t.coef));
    }
    FreeVector::from_entries(by_pos.into_iter().map(|(p, t)| (p, ring.from_terms(t))).collect())
}

/// Core reduction machinery; counts steps against a budget.
pub(crate) struct Engine<'a> {
    pub field: &'a FieldContext,
    pub order: ModuleOrder,
    budget: u64,
    steps: u64,
}

impl<'a> Engine<'a> {
    pub fn new(field: &'a FieldContext, order: ModuleOrder, budget: u64) -> Self {
        Engine { field, order, budget, steps: 0 }
    }

    fn tick(&mut self) -> Result<()> {
        self.steps += 1;
        if self.steps > self.budget {
            return Err(Error::ResourceExceeded(format!(
                "more than {} reduction steps in a Gröbner computation",
                self.budget
            )));
        }
        Ok(())
    }

    /// `v[..]` with `c·m·g` added; only the suffix starting at `from` can change.
    fn axpy(&self, v: &[Term], from: usize, c: u32, m: &Monomial, g: &[Term]) -> TermVec {
        let f = self.field;
        let mut out: TermVec = Vec::with_capacity(v.len() + g.len());
        out.extend_from_slice(&v[..from]);
        let mut i = from;
        let mut j = 0;
        while j < g.len() {
            let gm = g[j].mon.mul(m);
            let gc = f.mul(g[j].coef, c);
            loop {
                if i < v.len() {
                    match self.order.cmp((&v[i].mon, v[i].pos), (&gm, g[j].pos)) {
                        Ordering::Greater => {
                            out.push(v[i].clone());
                            i += 1;
                            continue;
                        }
                        Ordering::Equal => {
                            let s = f.add(v[i].coef, gc);
                            if s != 0 {
                                out.push(Term { mon: gm, pos: g[j].pos, coef: s });
                            }
                            i += 1;
                        }
                        Ordering::Less => out.push(Term { mon: gm, pos: g[j].pos, coef: gc }),
                    }
                } else {
                    out.push(Term { mon: gm, pos: g[j].pos, coef: gc });
                }
                break;
            }
            j += 1;
        }
        out.extend_from_slice(&v[i..]);
        out
    }

    fn make_monic(&self, v: &mut TermVec) {
        if let Some(lead) = v.first() {
            if lead.coef != 1 {
                let inv = self.field.inv(lead.coef);
                for t in v.iter_mut() {
                    t.coef = self.field.mul(t.coef, inv);
                }
            }
        }
    }

    /// Fully reduces `v` by the monic elements of `basis`.
    pub fn reduce(&mut self, mut v: TermVec, basis: &Reducers) -> Result<TermVec> {
        let mut k = 0;
        while k < v.len() {
            match basis.find(&v[k]) {
                Some(j) => {
                    let g = &basis.elems[j];
                    let m = g[0].mon.quotient_of(&v[k].mon).expect("divisor");
                    let c = self.field.neg(v[k].coef);
                    v = self.axpy(&v, k, c, &m, g);
                    self.tick()?;
                }
                None => k += 1,
            }
        }
        Ok(v)
    }

    fn s_vector(&self, f: &[Term], g: &[Term]) -> TermVec {
        let l = f[0].mon.lcm(&g[0].mon);
        let mf = f[0].mon.quotient_of(&l).unwrap();
        let mg = g[0].mon.quotient_of(&l).unwrap();
        let scaled: TermVec = f.iter().map(|t| Term { mon: t.mon.mul(&mf), pos: t.pos, coef: t.coef }).collect();
        self.axpy(&scaled, 0, self.field.neg(1), &mg, g)
    }

    /// Reduced Gröbner basis of the module generated by `gens`.
    pub fn buchberger(&mut self, gens: Vec<TermVec>) -> Result<Vec<TermVec>> {
        let mut basis = Reducers::default();
        let mut pairs: BTreeSet<(u32, usize, usize)> = BTreeSet::new();
        let mut pending: HashSet<(usize, usize)> = HashSet::new();

        let add = |basis: &mut Reducers,
                   pairs: &mut BTreeSet<(u32, usize, usize)>,
                   pending: &mut HashSet<(usize, usize)>,
                   v: TermVec| {
            let j = basis.elems.len();
            for i in basis.same_position(v[0].pos) {
                let l = basis.elems[i][0].mon.lcm(&v[0].mon);
                pairs.insert((l.degree(), j, i));
                pending.insert((i, j));
            }
            basis.push(v);
        };

        for mut g in gens {
            if g.is_empty() {
                continue;
            }
            self.make_monic(&mut g);
            add(&mut basis, &mut pairs, &mut pending, g);
        }

        while let Some((_, j, i)) = pairs.pop_first() {
            pending.remove(&(i, j));
            self.tick()?;
            let (f, g) = (&basis.elems[i], &basis.elems[j]);
            if basis.single_position[i] && basis.single_position[j] && f[0].mon.is_coprime(&g[0].mon) {
                continue;
            }
            let l = f[0].mon.lcm(&g[0].mon);
            let pos = f[0].pos;
            let chain = basis.same_position(pos).any(|k| {
                k != i
                    && k != j
                    && basis.elems[k][0].mon.divides(&l)
                    && !pending.contains(&(i.min(k), i.max(k)))
                    && !pending.contains(&(j.min(k), j.max(k)))
            });
            if chain {
                continue;
            }
            let s = self.s_vector(f, g);
            let mut r = self.reduce(s, &basis)?;
            if !r.is_empty() {
                self.make_monic(&mut r);
                add(&mut basis, &mut pairs, &mut pending, r);
            }
        }

        self.interreduce(basis.elems)
    }

    fn interreduce(&mut self, elems: Vec<TermVec>) -> Result<Vec<TermVec>> {
        let mut keep: Vec<TermVec> = Vec::new();
        for (idx, e) in elems.iter().enumerate() {
            let lead = &e[0];
            let redundant = elems.iter().enumerate().any(|(k, o)| {
                k != idx && o[0].pos == lead.pos && o[0].mon.divides(&lead.mon) && (o[0].mon != lead.mon || k < idx)
            });
            if !redundant {
                keep.push(e.clone());
            }
        }
        let mut out = Vec::with_capacity(keep.len());
        for idx in 0..keep.len() {
            let others = Reducers::from_elems(
                keep.iter().enumerate().filter(|(k, _)| *k != idx).map(|(_, e)| e.clone()).collect(),
            );
            let lead = keep[idx][0].clone();
            let tail = keep[idx][1..].to_vec();
            let mut r = vec![lead];
            r.extend(self.reduce(tail, &others)?);
            out.push(r);
        }
        let ord = self.order;
        out.sort_by(|a, b| ord.cmp((&a[0].mon, a[0].pos), (&b[0].mon, b[0].pos)));
        Ok(out)
    }
}

/// Monic reducers, indexed by leading position.
#[derive(Default, Clone, Debug)]
pub(crate) struct Reducers {
    pub elems: Vec<TermVec>,
    single_position: Vec<bool>,
    by_pos: HashMap<usize, Vec<usize>>,
}

impl Reducers {
    pub fn from_elems(elems: Vec<TermVec>) -> Self {
        let mut r = Reducers::default();
        for e in elems {
            r.push(e);
        }
        r
    }

    fn push(&mut self, v: TermVec) {
        let pos = v[0].pos;
        self.by_pos.entry(pos).or_default().push(self.elems.len());
        self.single_position.push(v.iter().all(|t| t.pos == pos));
        self.elems.push(v);
    }

    fn same_position(&self, pos: usize) -> impl Iterator<Item = usize> + '_ {
        self.by_pos.get(&pos).into_iter().flatten().copied()
    }

    fn find(&self, t: &Term) -> Option<usize> {
        self.by_pos.get(&t.pos)?.iter().copied().find(|&j| self.elems[j][0].mon.divides(&t.mon))
    }
}

/// Generators `h·e_j` of `I·S^g` restricted to positions in `positions`.
fn ideal_columns(ring: &QuotientRing, positions: std::ops::Range<usize>) -> Vec<FreeVector> {
    let mut out = Vec::new();
    for j in positions {
        for h in ring.ideal_basis() {
            out.push(FreeVector::from_entries(vec![(j, h.clone())]));
        }
    }
    out
}

/// A submodule of a free module of rank `rank` over a ring (S or a quotient R).
#[derive(Clone, Debug)]
pub struct SubmodulePresentation {
    pub ring: QuotientRing,
    pub rank: usize,
    pub generators: Vec<FreeVector>,
}

impl SubmodulePresentation {
    pub fn new(ring: &QuotientRing, rank: usize, generators: Vec<FreeVector>) -> Result<Self> {
        for g in &generators {
            if g.max_position().is_some_and(|p| p >= rank) {
                return Err(Error::Mismatch(format!("generator outside rank-{rank} free module")));
            }
            for (_, f) in g.entries() {
                ring.poly().check(f)?;
            }
        }
        Ok(SubmodulePresentation { ring: ring.clone(), rank, generators })
    }
}

/// A reduced Gröbner basis of (the preimage in S^g of) a submodule.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: QuotientRing,
    rank: usize,
    order: ModuleOrder,
    reducers: Reducers,
    over_quotient: bool,
}

impl GroebnerBasis {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> MonomialOrder {
        self.order.mono
    }

    pub fn over_quotient(&self) -> bool {
        self.over_quotient
    }

    pub fn elements(&self) -> Vec<FreeVector> {
        self.reducers.elems.iter().map(|e| terms_to_vec(self.ring.poly(), e)).collect()
    }

    pub fn len(&self) -> usize {
        self.reducers.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reducers.elems.is_empty()
    }

    /// Leading module monomials `(monomial, position)`.
    pub fn leading_terms(&self) -> Vec<(Monomial, usize)> {
        self.reducers.elems.iter().map(|e| (e[0].mon.clone(), e[0].pos)).collect()
    }

    pub fn normal_form(&self, v: &FreeVector) -> Result<FreeVector> {
        if v.max_position().is_some_and(|p| p >= self.rank) {
            return Err(Error::Mismatch(format!("vector outside rank-{} free module", self.rank)));
        }
        let poly = self.ring.poly();
        let mut eng = Engine::new(poly.field(), self.order, u64::MAX);
        let r = eng.reduce(vec_to_terms(&self.order, v), &self.reducers)?;
        Ok(terms_to_vec(poly, &r))
    }

    pub fn contains(&self, v: &FreeVector) -> Result<bool> {
        Ok(self.normal_form(v)?.is_zero())
    }
}

/// Reduced Gröbner basis of a submodule of R^g in the ring's term order.
pub fn groebner_basis(gens: &SubmodulePresentation) -> Result<GroebnerBasis> {
    groebner_basis_with_order(gens, gens.ring.poly().order())
}

pub fn groebner_basis_with_order(gens: &SubmodulePresentation, mono: MonomialOrder) -> Result<GroebnerBasis> {
    let ring = &gens.ring;
    let poly = ring.poly();
    let order = ModuleOrder::top(mono);
    let mut input: Vec<TermVec> = gens.generators.iter().map(|g| vec_to_terms(&order, g)).collect();
    let over_quotient = !ring.ideal_basis().is_empty();
    input.extend(ideal_columns(ring, 0..gens.rank).iter().map(|g| vec_to_terms(&order, g)));
    let mut eng = Engine::new(poly.field(), order, ring.budget());
    let elems = eng.buchberger(input)?;
    Ok(GroebnerBasis {
        ring: ring.clone(),
        rank: gens.rank,
        order,
        reducers: Reducers::from_elems(elems),
        over_quotient,
    })
}

pub fn normal_form(v: &FreeVector, gb: &GroebnerBasis) -> Result<FreeVector> {
    gb.normal_form(v)
}

/// Generators of the relations among `gens` over their ring.
pub fn syzygy_basis(gens: &SubmodulePresentation) -> Result<SubmodulePresentation> {
    let elim = Elimination::new(&gens.ring, gens.rank, &gens.generators)?;
    Ok(SubmodulePresentation { ring: gens.ring.clone(), rank: gens.generators.len(), generators: elim.syzygies() })
}

/// Coefficients expressing `v` in terms of the generators, if `v` lies in
/// their span.
pub fn lift(gens: &SubmodulePresentation, v: &FreeVector) -> Result<Option<FreeVector>> {
    Elimination::new(&gens.ring, gens.rank, &gens.generators)?.lift(v)
}

/// True iff the columns generate all of R^g.
pub fn is_zero_cokernel(ring: &QuotientRing, columns: &[FreeVector], rank: usize) -> Result<bool> {
    let gb = groebner_basis(&SubmodulePresentation::new(ring, rank, columns.to_vec())?)?;
    for j in 0..rank {
        if !gb.contains(&FreeVector::unit(ring.poly(), j))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Gröbner basis of `{(c_j, e_j)} ∪ I·S^{g+m}` in an elimination order that
/// puts the g ambient positions above the m tracking positions. Its elements
/// with vanishing ambient part generate the syzygies; reducing `(v, 0)` gives
/// a certificate of membership.
pub(crate) struct Elimination {
    ring: QuotientRing,
    rank: usize,
    order: ModuleOrder,
    reducers: Reducers,
}

impl Elimination {
    pub fn new(ring: &QuotientRing, rank: usize, cols: &[FreeVector]) -> Result<Self> {
        let poly = ring.poly();
        let order = ModuleOrder { mono: poly.order(), split: rank };
        let ncols = cols.len();
        let mut input: Vec<TermVec> = Vec::new();
        for (j, c) in cols.iter().enumerate() {
            if c.max_position().is_some_and(|p| p >= rank) {
                return Err(Error::Mismatch(format!("column outside rank-{rank} free module")));
            }
            let mut entries = c.entries().to_vec();
            entries.push((rank + j, poly.one()));
            input.push(vec_to_terms(&order, &FreeVector::from_entries(entries)));
        }
        for g in ideal_columns(ring, 0..rank + ncols) {
            input.push(vec_to_terms(&order, &g));
        }
        let mut eng = Engine::new(poly.field(), order, ring.budget());
        let elems = eng.buchberger(input)?;
        Ok(Elimination { ring: ring.clone(), rank, order, reducers: Reducers::from_elems(elems) })
    }

    /// Syzygies over the ring, reduced modulo I, nonzero and deduplicated.
    pub fn syzygies(&self) -> Vec<FreeVector> {
        let poly = self.ring.poly();
        let mut out: Vec<FreeVector> = Vec::new();
        for e in &self.reducers.elems {
            if e[0].pos < self.rank {
                continue;
            }
            let shifted: TermVec =
                e.iter().map(|t| Term { mon: t.mon.clone(), pos: t.pos - self.rank, coef: t.coef }).collect();
            let v = self.ring.reduce_vector(&terms_to_vec(poly, &shifted));
            if !v.is_zero() && !out.contains(&v) {
                out.push(v);
            }
        }
        out
    }

    /// Coefficients `λ` with `v = Σ λ_j c_j` in R^g, if `v` is in the span.
    pub fn lift(&self, v: &FreeVector) -> Result<Option<FreeVector>> {
        let poly = self.ring.poly();
        let mut eng = Engine::new(poly.field(), self.order, self.ring.budget());
        let r = eng.reduce(vec_to_terms(&self.order, v), &self.reducers)?;
        if r.first().is_some_and(|t| t.pos < self.rank) {
            return Ok(None);
        }
        let lam: TermVec = r
            .iter()
            .map(|t| Term { mon: t.mon.clone(), pos: t.pos - self.rank, coef: poly.field().neg(t.coef) })
            .collect();
        Ok(Some(self.ring.reduce_vector(&terms_to_vec(poly, &lam))))
    }
}
