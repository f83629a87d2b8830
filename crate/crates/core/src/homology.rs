//! Homology of complexes of presented modules, Ext, and finite-length duals.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::{groebner_basis, Elimination, SubmodulePresentation};
use crate::module::{standard_monomials, FreeComplex, Matrix, PresentedModule};
use crate::poly::{FreeVector, Monomial};
use crate::resolution::minimal_free_resolution;
use crate::ring::QuotientRing;

/// Outcome of a homology computation: vanishing, and the F_p-dimension when
/// the homology has finite length and a dimension was requested.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyInfo {
    pub vanishes: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim_k: Option<usize>,
}

/// One spot `A --alpha--> B --beta--> C` of a complex of presented modules,
/// with `B = R^b / im(mid_rel)` and `C = R^c / im(out_rel)`.
/// Matrices are given on the free covers.
pub struct Spot<'a> {
    pub ring: &'a QuotientRing,
    pub b: usize,
    pub incoming: Option<&'a Matrix>,
    pub outgoing: Option<&'a Matrix>,
    pub mid_rel: Option<&'a Matrix>,
    pub out_rel: Option<&'a Matrix>,
}

/// Generators of `{v ∈ R^b : beta·v ∈ im(out_rel)}`.
fn kernel_generators(spot: &Spot) -> Result<Vec<FreeVector>> {
    let ring = spot.ring;
    let Some(beta) = spot.outgoing.filter(|m| m.rows() > 0 && !m.is_zero()) else {
        return Ok((0..spot.b).map(|j| FreeVector::unit(ring.poly(), j)).collect());
    };
    let mut cols = beta.columns();
    if let Some(rel) = spot.out_rel {
        cols.extend(rel.columns());
    }
    let elim = Elimination::new(ring, beta.rows(), &cols)?;
    let b = spot.b;
    let mut out: Vec<FreeVector> = Vec::new();
    for s in elim.syzygies() {
        let head = FreeVector::from_entries(s.entries().iter().filter(|(p, _)| *p < b).cloned().collect());
        if !head.is_zero() && !out.contains(&head) {
            out.push(head);
        }
    }
    Ok(out)
}

/// Zero test and optional F_p-dimension of `ker(beta) / (im(alpha) + im(mid_rel))`.
pub fn spot_homology(spot: &Spot, want_dim: bool) -> Result<HomologyInfo> {
    let ring = spot.ring;
    let mut image: Vec<FreeVector> = Vec::new();
    if let Some(a) = spot.incoming {
        image.extend(a.columns().into_iter().filter(|c| !c.is_zero()));
    }
    if let Some(r) = spot.mid_rel {
        image.extend(r.columns().into_iter().filter(|c| !c.is_zero()));
    }
    let kernel = kernel_generators(spot)?;
    let image_gb = groebner_basis(&SubmodulePresentation::new(ring, spot.b, image.clone())?)?;
    let mut survivors = Vec::new();
    for k in kernel {
        if !image_gb.contains(&k)? {
            survivors.push(k);
        }
    }
    if survivors.is_empty() {
        return Ok(HomologyInfo { vanishes: true, dim_k: Some(0) });
    }
    if !want_dim {
        return Ok(HomologyInfo { vanishes: false, dim_k: None });
    }
    // H ≅ R^s / {λ : Σ λ_j κ_j ∈ image}.
    let s = survivors.len();
    let mut cols = survivors;
    cols.extend(image);
    let elim = Elimination::new(ring, spot.b, &cols)?;
    let rels: Vec<FreeVector> = elim
        .syzygies()
        .into_iter()
        .map(|v| FreeVector::from_entries(v.entries().iter().filter(|(p, _)| *p < s).cloned().collect()))
        .filter(|v| !v.is_zero())
        .collect();
    let gb = groebner_basis(&SubmodulePresentation::new(ring, s, rels)?)?;
    let dim = standard_monomials(&gb.leading_terms(), s, ring.nvars()).map(|b| b.len());
    Ok(HomologyInfo { vanishes: false, dim_k: dim })
}

/// `H_i(C) = ker d_i / im d_{i+1}`.
pub fn homology_is_zero(c: &FreeComplex, i: i64, want_dim: bool) -> Result<HomologyInfo> {
    let out = c.differential(i);
    let inc = c.differential(i + 1);
    spot_homology(
        &Spot {
            ring: c.ring(),
            b: c.rank(i),
            incoming: Some(&inc),
            outgoing: Some(&out),
            mid_rel: None,
            out_rel: None,
        },
        want_dim,
    )
}

/// The cochain map `Hom(F_{j-1}, M) -> Hom(F_j, M)` induced by `d_j`, acting
/// on `β` copies of the generators of `M`.
pub(crate) fn hom_dual(d: &Matrix, g: usize) -> Matrix {
    d.transpose().kron_identity(g)
}

/// Cohomology at `i` of `Hom(F, M)` for a free complex `F` in degrees `>= 0`
/// whose differentials are `maps[j] = d_{j+1}`.
pub(crate) fn hom_cohomology(f: &FreeComplex, m: &PresentedModule, i: usize, want_dim: bool) -> Result<HomologyInfo> {
    let g = m.generator_count();
    let ring = m.ring();
    let i = i as i64;
    let out = hom_dual(&f.differential(i + 1), g);
    let inc = if i >= 1 { Some(hom_dual(&f.differential(i), g)) } else { None };
    let mid_rel = m.relations().block_diagonal(f.rank(i));
    let out_rel = m.relations().block_diagonal(f.rank(i + 1));
    spot_homology(
        &Spot {
            ring,
            b: g * f.rank(i),
            incoming: inc.as_ref(),
            outgoing: Some(&out),
            mid_rel: Some(&mid_rel),
            out_rel: Some(&out_rel),
        },
        want_dim,
    )
}

/// `Ext^i_R(A, M)`: zero test and optional F_p-dimension.
pub fn ext_module(a: &PresentedModule, m: &PresentedModule, i: usize, want_dim: bool) -> Result<HomologyInfo> {
    if !a.ring().same_ring(m.ring()) {
        return Err(Error::Mismatch("modules over different rings".into()));
    }
    let res = minimal_free_resolution(a, i + 1)?;
    hom_cohomology(&res.complex, m, i, want_dim)
}

/// A finite-length module as a vector space with variable actions.
#[derive(Clone, Debug)]
pub struct FiniteLengthStructure {
    /// Standard monomial basis `(generator, monomial)`.
    pub basis: Vec<(usize, Monomial)>,
    pub degrees: Option<Vec<i64>>,
    /// `action[v][a][b]` is the coefficient of basis element `a` in `x_v · basis[b]`.
    pub action: Vec<Vec<Vec<u32>>>,
}

impl FiniteLengthStructure {
    pub fn dim_k(&self) -> usize {
        self.basis.len()
    }
}

pub fn finite_length_structure(m: &PresentedModule) -> Result<FiniteLengthStructure> {
    let ring = m.ring();
    let poly = ring.poly();
    let basis = m.standard_basis()?.ok_or(Error::NotFiniteLength)?;
    let gb = m.relation_gb()?;
    let index: std::collections::HashMap<(usize, Monomial), usize> =
        basis.iter().cloned().enumerate().map(|(i, b)| (b, i)).collect();
    let dim = basis.len();
    let mut action = vec![vec![vec![0u32; dim]; dim]; ring.nvars()];
    for (v, act) in action.iter_mut().enumerate() {
        let x = Monomial::var(ring.nvars(), v);
        for (b, (pos, mon)) in basis.iter().enumerate() {
            let image = FreeVector::from_entries(vec![(*pos, poly.term(mon.mul(&x), 1))]);
            for (p, f) in gb.normal_form(&image)?.entries() {
                for (mm, c) in f.terms() {
                    let a = index[&(*p, mm.clone())];
                    act[a][b] = *c;
                }
            }
        }
    }
    let degrees =
        m.gen_degrees().map(|d| basis.iter().map(|(p, mon)| d[*p] + m.degree_unit() * mon.degree() as i64).collect());
    Ok(FiniteLengthStructure { basis, degrees, action })
}

/// The graded k-dual `M^∨ = Hom_k(M, k)` of a finite-length module, with the
/// transposed variable actions; presented minimally.
pub fn finite_length_dual(m: &PresentedModule) -> Result<PresentedModule> {
    let ring = m.ring();
    let poly = ring.poly();
    let field = ring.field();
    let st = finite_length_structure(m)?;
    let dim = st.dim_k();
    let mut cols = Vec::new();
    for (v, act) in st.action.iter().enumerate() {
        for (b, row) in act.iter().enumerate().take(dim) {
            // x_v · δ_b = Σ_{b'} act[b][b'] δ_{b'}
            let mut entries = vec![(b, poly.var(v))];
            for (b2, &c) in row.iter().enumerate() {
                if c != 0 {
                    if b2 == b {
                        let f = poly.add(&entries[0].1, &poly.constant(field.neg(c)));
                        entries[0].1 = f;
                    } else {
                        entries.push((b2, poly.constant(field.neg(c))));
                    }
                }
            }
            cols.push(FreeVector::from_entries(entries));
        }
    }
    let degrees = st.degrees.map(|d| d.iter().map(|x| -x).collect());
    let dual = PresentedModule::with_unit(ring, dim, degrees, m.degree_unit(), Matrix::from_columns(dim, &cols))?;
    dual.minimal_presentation()
}
