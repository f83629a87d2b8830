//! Matrices, finitely presented modules and bounded complexes of free modules.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::groebner::{groebner_basis, GroebnerBasis, SubmodulePresentation};
use crate::poly::{FreeVector, Monomial, Polynomial};
use crate::ring::QuotientRing;

/// Dense row-major matrix of polynomials. Columns are the images of basis vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Polynomial>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Polynomial::zero(); rows * cols] }
    }

    pub fn identity(ring: &QuotientRing, n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, ring.poly().one());
        }
        m
    }

    pub fn from_columns(rows: usize, columns: &[FreeVector]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            for (i, f) in c.entries() {
                assert!(*i < rows, "column entry outside {rows} rows");
                m.set(*i, j, f.clone());
            }
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Polynomial>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, f: Polynomial) {
        self.data[i * self.cols + j] = f;
    }

    pub fn column(&self, j: usize) -> FreeVector {
        FreeVector::from_dense((0..self.rows).map(|i| self.get(i, j).clone()).collect())
    }

    pub fn columns(&self) -> Vec<FreeVector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Polynomial::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Product reduced modulo the ideal of `ring`.
    pub fn mul(&self, ring: &QuotientRing, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::Mismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let p = ring.poly();
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Polynomial::zero();
                for k in 0..self.cols {
                    let (a, b) = (self.get(i, k), other.get(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = p.add(&acc, &p.mul(a, b));
                    }
                }
                out.set(i, j, ring.reduce(&acc));
            }
        }
        Ok(out)
    }

    pub fn map_entries(&self, mut f: impl FnMut(&Polynomial) -> Result<Polynomial>) -> Result<Matrix> {
        let data = self.data.iter().map(&mut f).collect::<Result<Vec<_>>>()?;
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    /// `self ⊗ I_g`: every entry `a` becomes the block `a·I_g`.
    pub fn kron_identity(&self, g: usize) -> Matrix {
        let mut out = Matrix::zeros(self.rows * g, self.cols * g);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..g {
                    out.set(i * g + k, j * g + k, a.clone());
                }
            }
        }
        out
    }

    /// Block-diagonal sum of `n` copies.
    pub fn block_diagonal(&self, n: usize) -> Matrix {
        let mut out = Matrix::zeros(self.rows * n, self.cols * n);
        for b in 0..n {
            for i in 0..self.rows {
                for j in 0..self.cols {
                    out.set(b * self.rows + i, b * self.cols + j, self.get(i, j).clone());
                }
            }
        }
        out
    }

    pub fn display(&self, ring: &QuotientRing) -> String {
        let p = ring.poly();
        (0..self.rows)
            .map(|i| {
                let row: Vec<String> = (0..self.cols).map(|j| p.display(self.get(i, j))).collect();
                format!("[{}]", row.join(", "))
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// Degree of a homogeneous column given row degrees; `None` for the zero column.
/// Degrees are measured in units where each variable has degree `unit`.
pub(crate) fn column_degree(col: &FreeVector, row_degrees: &[i64], unit: i64) -> Result<Option<i64>> {
    let mut deg = None;
    for (r, f) in col.entries() {
        for (m, _) in f.terms() {
            let d = unit * m.degree() as i64 + row_degrees[*r];
            match deg {
                None => deg = Some(d),
                Some(d0) if d0 != d => return Err(Error::NonHomogeneous(format!("column mixes degrees {d0} and {d}"))),
                _ => {}
            }
        }
    }
    Ok(deg)
}

/// Selects a minimal generating subset of homogeneous columns: processes them in
/// increasing degree and keeps a column only if it is not in the span of the
/// columns kept before it.
pub(crate) fn minimal_generators(
    ring: &QuotientRing,
    rank: usize,
    mut cols: Vec<(FreeVector, i64)>,
) -> Result<Vec<(FreeVector, i64)>> {
    cols.retain(|(c, _)| !c.is_zero());
    cols.sort_by_key(|(_, d)| *d);
    let mut kept: Vec<(FreeVector, i64)> = Vec::new();
    let mut gb: Option<GroebnerBasis> = None;
    for (c, d) in cols {
        let redundant = match &gb {
            None => ring.reduce_vector(&c).is_zero(),
            Some(gb) => gb.contains(&c)?,
        };
        if !redundant {
            kept.push((c, d));
            let gens = kept.iter().map(|(c, _)| c.clone()).collect();
            gb = Some(groebner_basis(&SubmodulePresentation::new(ring, rank, gens)?)?);
        }
    }
    Ok(kept)
}

/// `M = coker(relations: R^s -> R^g)`, optionally graded.
///
/// Generator degrees are measured in units of `degree_unit` per variable, so
/// rational gradings such as the one on the Frobenius pushforward can be
/// represented with integer degrees.
#[derive(Debug)]
pub struct PresentedModule {
    ring: QuotientRing,
    generators: usize,
    gen_degrees: Option<Vec<i64>>,
    degree_unit: i64,
    relations: Matrix,
    rel_gb: OnceLock<Result<GroebnerBasis>>,
}

impl Clone for PresentedModule {
    fn clone(&self) -> Self {
        PresentedModule {
            ring: self.ring.clone(),
            generators: self.generators,
            gen_degrees: self.gen_degrees.clone(),
            degree_unit: self.degree_unit,
            relations: self.relations.clone(),
            rel_gb: OnceLock::new(),
        }
    }
}

impl PresentedModule {
    pub fn new(
        ring: &QuotientRing,
        generators: usize,
        gen_degrees: Option<Vec<i64>>,
        relations: Matrix,
    ) -> Result<Self> {
        Self::with_unit(ring, generators, gen_degrees, 1, relations)
    }

    pub fn with_unit(
        ring: &QuotientRing,
        generators: usize,
        gen_degrees: Option<Vec<i64>>,
        degree_unit: i64,
        relations: Matrix,
    ) -> Result<Self> {
        if relations.rows() != generators {
            return Err(Error::Mismatch(format!(
                "relation matrix has {} rows for {} generators",
                relations.rows(),
                generators
            )));
        }
        if let Some(d) = &gen_degrees {
            if d.len() != generators {
                return Err(Error::Mismatch(format!("{} degrees for {} generators", d.len(), generators)));
            }
        }
        let relations = relations.map_entries(|f| {
            ring.poly().check(f)?;
            Ok(ring.reduce(f))
        })?;
        if let Some(d) = &gen_degrees {
            for c in relations.columns() {
                column_degree(&c, d, degree_unit)?;
            }
        }
        Ok(PresentedModule {
            ring: ring.clone(),
            generators,
            gen_degrees,
            degree_unit,
            relations,
            rel_gb: OnceLock::new(),
        })
    }

    pub fn free(ring: &QuotientRing, rank: usize) -> Self {
        Self::new(ring, rank, Some(vec![0; rank]), Matrix::zeros(rank, 0)).expect("free module")
    }

    /// The cyclic module R/J for homogeneous `ideal` generators.
    pub fn cyclic(ring: &QuotientRing, ideal: &[Polynomial]) -> Result<Self> {
        let row: Vec<Polynomial> = ideal.to_vec();
        let rel = Matrix::from_rows(vec![row]);
        let rel = if ideal.is_empty() { Matrix::zeros(1, 0) } else { rel };
        Self::new(ring, 1, Some(vec![0]), rel)
    }

    /// The residue field k = R/(x_1..x_n).
    pub fn residue_field(ring: &QuotientRing) -> Self {
        let vars: Vec<Polynomial> = (0..ring.nvars()).map(|i| ring.poly().var(i)).collect();
        Self::cyclic(ring, &vars).expect("residue field")
    }

    pub fn ring(&self) -> &QuotientRing {
        &self.ring
    }

    pub fn generator_count(&self) -> usize {
        self.generators
    }

    pub fn gen_degrees(&self) -> Option<&[i64]> {
        self.gen_degrees.as_deref()
    }

    pub fn degree_unit(&self) -> i64 {
        self.degree_unit
    }

    pub fn relations(&self) -> &Matrix {
        &self.relations
    }

    pub fn is_graded(&self) -> bool {
        self.gen_degrees.is_some()
    }

    /// Gröbner basis of the relation module (with I adjoined), cached.
    pub fn relation_gb(&self) -> Result<&GroebnerBasis> {
        self.rel_gb
            .get_or_init(|| {
                groebner_basis(&SubmodulePresentation::new(&self.ring, self.generators, self.relations.columns())?)
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn is_zero(&self) -> Result<bool> {
        let gb = self.relation_gb()?;
        for j in 0..self.generators {
            if !gb.contains(&FreeVector::unit(self.ring.poly(), j))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// F_p-basis of M as standard module monomials, if M has finite length.
    pub fn standard_basis(&self) -> Result<Option<Vec<(usize, Monomial)>>> {
        Ok(standard_monomials(&self.relation_gb()?.leading_terms(), self.generators, self.ring.nvars()))
    }

    pub fn is_finite_length(&self) -> Result<bool> {
        Ok(self.standard_basis()?.is_some())
    }

    /// Length λ(M) = dim_k M, or `None` if infinite.
    pub fn length(&self) -> Result<Option<usize>> {
        Ok(self.standard_basis()?.map(|b| b.len()))
    }

    /// Graded dimensions `degree -> dim_k M_degree` of a finite-length graded module.
    pub fn hilbert_function(&self) -> Result<std::collections::BTreeMap<i64, usize>> {
        let degs = self.gen_degrees.as_ref().ok_or_else(|| Error::NonHomogeneous("module has no grading".into()))?;
        let basis = self.standard_basis()?.ok_or(Error::NotFiniteLength)?;
        let mut out = std::collections::BTreeMap::new();
        for (pos, m) in basis {
            *out.entry(degs[pos] + self.degree_unit * m.degree() as i64).or_insert(0) += 1;
        }
        Ok(out)
    }

    /// Degrees of the relation columns (graded modules only); zero columns give `None`.
    pub(crate) fn relation_degrees(&self) -> Result<Vec<Option<i64>>> {
        let degs = self.gen_degrees.as_ref().ok_or_else(|| Error::NonHomogeneous("module has no grading".into()))?;
        self.relations.columns().iter().map(|c| column_degree(c, degs, self.degree_unit)).collect()
    }

    /// An isomorphic presentation with minimal generators and minimal relations.
    ///
    /// Unit entries of the relation matrix are pivoted away; then redundant
    /// relations are dropped. Relation minimality needs a grading.
    pub fn minimal_presentation(&self) -> Result<PresentedModule> {
        let ring = &self.ring;
        let p = ring.poly();
        let mut cols: Vec<Vec<Polynomial>> =
            self.relations.columns().iter().filter(|c| !c.is_zero()).map(|c| c.to_dense(self.generators)).collect();
        let mut rows: Vec<usize> = (0..self.generators).collect();
        loop {
            let pivot = cols
                .iter()
                .enumerate()
                .find_map(|(j, c)| c.iter().enumerate().find_map(|(r, f)| f.as_constant().map(|u| (j, r, u))));
            let Some((j, r, u)) = pivot else { break };
            let pivot_col = cols.remove(j);
            let inv = ring.field().inv(u);
            for c in cols.iter_mut() {
                if c[r].is_zero() {
                    continue;
                }
                let factor = p.scale(&c[r], ring.field().neg(inv));
                for (k, entry) in c.iter_mut().enumerate() {
                    if !pivot_col[k].is_zero() {
                        *entry = ring.reduce(&p.add(entry, &p.mul(&factor, &pivot_col[k])));
                    }
                }
                debug_assert!(c[r].is_zero());
            }
            for c in cols.iter_mut() {
                c.remove(r);
            }
            rows.remove(r);
            cols.retain(|c| c.iter().any(|f| !f.is_zero()));
        }
        let g = rows.len();
        let degrees = self.gen_degrees.as_ref().map(|d| rows.iter().map(|&r| d[r]).collect::<Vec<_>>());
        let columns: Vec<FreeVector> = cols.into_iter().map(FreeVector::from_dense).collect();
        let columns = match &degrees {
            Some(d) => {
                let with_deg = columns
                    .into_iter()
                    .map(|c| Ok((column_degree(&c, d, self.degree_unit)?.unwrap_or(0), c)))
                    .collect::<Result<Vec<_>>>()?;
                minimal_generators(ring, g, with_deg.into_iter().map(|(d, c)| (c, d)).collect())?
                    .into_iter()
                    .map(|(c, _)| c)
                    .collect()
            }
            None => columns,
        };
        PresentedModule::with_unit(ring, g, degrees, self.degree_unit, Matrix::from_columns(g, &columns))
    }

    /// Direct sum of `n` copies.
    pub fn power(&self, n: usize) -> PresentedModule {
        let degrees = self.gen_degrees.as_ref().map(|d| d.iter().cycle().take(d.len() * n).copied().collect());
        PresentedModule {
            ring: self.ring.clone(),
            generators: self.generators * n,
            gen_degrees: degrees,
            degree_unit: self.degree_unit,
            relations: self.relations.block_diagonal(n),
            rel_gb: OnceLock::new(),
        }
    }
}

/// Standard monomials of a leading module, if there are finitely many.
pub(crate) fn standard_monomials(leads: &[(Monomial, usize)], rank: usize, n: usize) -> Option<Vec<(usize, Monomial)>> {
    let mut out = Vec::new();
    for pos in 0..rank {
        let here: Vec<&Monomial> = leads.iter().filter(|(_, p)| *p == pos).map(|(m, _)| m).collect();
        if here.iter().any(|m| m.is_one()) {
            continue;
        }
        let mut bounds = vec![0u32; n];
        for (v, b) in bounds.iter_mut().enumerate() {
            *b = here.iter().filter_map(|m| m.pure_power().filter(|(i, _)| *i == v).map(|(_, a)| a)).min()?;
        }
        let mut exps = vec![0u32; n];
        loop {
            let m = Monomial::from_exponents(&exps);
            if !here.iter().any(|l| l.divides(&m)) {
                out.push((pos, m));
            }
            let mut k = 0;
            loop {
                if k == n {
                    break;
                }
                exps[k] += 1;
                if exps[k] < bounds[k] {
                    break;
                }
                exps[k] = 0;
                k += 1;
            }
            if k == n {
                break;
            }
        }
    }
    Some(out)
}

/// A bounded complex of finite free modules `C_hi -> ... -> C_lo` with
/// differentials `d_i: C_i -> C_{i-1}`.
#[derive(Clone, Debug)]
pub struct FreeComplex {
    ring: QuotientRing,
    lo: i64,
    ranks: Vec<usize>,
    /// `maps[k]` is `d_{lo+k+1}`.
    maps: Vec<Matrix>,
    degrees: Option<Vec<Vec<i64>>>,
    degree_unit: i64,
}

impl FreeComplex {
    /// Builds a complex from `d_{lo+1}, ..., d_hi`, checking shapes and `d∘d = 0`.
    pub fn new(ring: &QuotientRing, lo: i64, ranks: Vec<usize>, maps: Vec<Matrix>) -> Result<Self> {
        Self::new_graded(ring, lo, ranks, maps, None, 1)
    }

    pub fn new_graded(
        ring: &QuotientRing,
        lo: i64,
        ranks: Vec<usize>,
        maps: Vec<Matrix>,
        degrees: Option<Vec<Vec<i64>>>,
        degree_unit: i64,
    ) -> Result<Self> {
        if ranks.is_empty() || maps.len() + 1 != ranks.len() {
            return Err(Error::Mismatch("a complex needs one more module than differentials".into()));
        }
        for (k, d) in maps.iter().enumerate() {
            if d.rows() != ranks[k] || d.cols() != ranks[k + 1] {
                return Err(Error::Mismatch(format!(
                    "differential {} has shape {}x{}, expected {}x{}",
                    lo + k as i64 + 1,
                    d.rows(),
                    d.cols(),
                    ranks[k],
                    ranks[k + 1]
                )));
            }
        }
        let maps = maps.into_iter().map(|d| d.map_entries(|f| Ok(ring.reduce(f)))).collect::<Result<Vec<_>>>()?;
        for w in maps.windows(2) {
            if !w[0].mul(ring, &w[1])?.is_zero() {
                return Err(Error::Invalid("consecutive differentials do not compose to zero".into()));
            }
        }
        Ok(FreeComplex { ring: ring.clone(), lo, ranks, maps, degrees, degree_unit })
    }

    /// A single free module concentrated in degree `at`.
    pub fn concentrated(ring: &QuotientRing, rank: usize, at: i64) -> Self {
        FreeComplex::new(ring, at, vec![rank], Vec::new()).expect("single module")
    }

    pub fn ring(&self) -> &QuotientRing {
        &self.ring
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.ranks.len() as i64 - 1
    }

    pub fn rank(&self, i: i64) -> usize {
        if i < self.lo || i > self.hi() {
            0
        } else {
            self.ranks[(i - self.lo) as usize]
        }
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// `d_i: C_i -> C_{i-1}`, the zero map outside the stored range.
    pub fn differential(&self, i: i64) -> Matrix {
        if i > self.lo && i <= self.hi() {
            self.maps[(i - self.lo - 1) as usize].clone()
        } else {
            Matrix::zeros(self.rank(i - 1), self.rank(i))
        }
    }

    pub fn degrees(&self) -> Option<&[Vec<i64>]> {
        self.degrees.as_deref()
    }

    pub fn degree_unit(&self) -> i64 {
        self.degree_unit
    }

    /// The complex with every differential replaced by `f`, same ranks.
    pub(crate) fn map_differentials(
        &self,
        mut f: impl FnMut(&Matrix) -> Result<Matrix>,
        degrees: Option<Vec<Vec<i64>>>,
    ) -> Result<FreeComplex> {
        let maps = self.maps.iter().map(&mut f).collect::<Result<Vec<_>>>()?;
        FreeComplex::new_graded(&self.ring, self.lo, self.ranks.clone(), maps, degrees, self.degree_unit)
    }
}
