//! Minimal graded free resolutions and the projective-dimension oracle.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::groebner::Elimination;
use crate::module::{column_degree, minimal_generators, FreeComplex, Matrix, PresentedModule};

/// A minimal free resolution `F_N -> ... -> F_0` together with `β_i = rank F_i`.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub complex: FreeComplex,
    pub betti: Vec<usize>,
    /// Generator degrees of each `F_i`, in units of the module's degree unit.
    pub degrees: Vec<Vec<i64>>,
}

impl Resolution {
    /// True once some `F_j` with `j <= N` is zero.
    pub fn terminated(&self) -> bool {
        self.betti.contains(&0)
    }
}

/// Minimal generators of the kernel of `d: R^cols -> R^rows` (homogeneous),
/// with their degrees.
fn minimal_kernel(
    m: &PresentedModule,
    d: &Matrix,
    col_degrees: &[i64],
) -> Result<(Vec<crate::poly::FreeVector>, Vec<i64>)> {
    let ring = m.ring();
    let elim = Elimination::new(ring, d.rows(), &d.columns())?;
    let syz = elim.syzygies();
    let with_deg = syz
        .into_iter()
        .map(|s| {
            let deg = column_degree(&s, col_degrees, m.degree_unit())?.expect("nonzero syzygy");
            Ok((s, deg))
        })
        .collect::<Result<Vec<_>>>()?;
    let kept = minimal_generators(ring, d.cols(), with_deg)?;
    Ok(kept.into_iter().unzip())
}

/// Minimal graded free resolution of `m` computed through homological degree `steps`.
pub fn minimal_free_resolution(m: &PresentedModule, steps: usize) -> Result<Resolution> {
    if !m.is_graded() {
        return Err(Error::NonHomogeneous("minimal resolutions need a graded module".into()));
    }
    let ring = m.ring();
    let min = m.minimal_presentation()?;
    let d0 = min.gen_degrees().unwrap().to_vec();
    let mut betti = vec![min.generator_count()];
    let mut degrees = vec![d0];
    let mut maps: Vec<Matrix> = Vec::new();
    if steps >= 1 {
        let rel_deg =
            min.relation_degrees()?.into_iter().map(|d| d.expect("minimal relations are nonzero")).collect::<Vec<_>>();
        betti.push(min.relations().cols());
        degrees.push(rel_deg);
        maps.push(min.relations().clone());
    }
    for _k in 2..=steps {
        let last = maps.last().unwrap();
        let (cols, degs) = if last.cols() == 0 {
            (Vec::new(), Vec::new())
        } else {
            minimal_kernel(&min, last, degrees.last().unwrap())?
        };
        let d = Matrix::from_columns(last.cols(), &cols);
        betti.push(cols.len());
        degrees.push(degs);
        maps.push(d);
    }
    let complex = FreeComplex::new_graded(ring, 0, betti.clone(), maps, Some(degrees.clone()), m.degree_unit())?;
    Ok(Resolution { complex, betti, degrees })
}

/// Projective dimension: a natural number or infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ProjDim {
    Finite(usize),
    Infinite,
}

impl ProjDim {
    pub fn is_finite(self) -> bool {
        matches!(self, ProjDim::Finite(_))
    }
}

impl fmt::Display for ProjDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjDim::Finite(n) => write!(f, "{n}"),
            ProjDim::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for ProjDim {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ProjDim::Finite(n) => s.serialize_u64(*n as u64),
            ProjDim::Infinite => s.serialize_str("inf"),
        }
    }
}

/// Decides `pd_R M` exactly: a finite projective dimension is at most depth R
/// (Auslander–Buchsbaum), so resolving to step `depth R + 1` suffices.
pub fn projective_dimension_oracle(m: &PresentedModule) -> Result<ProjDim> {
    if m.is_zero()? {
        return Err(Error::Invalid("projective dimension of the zero module".into()));
    }
    let depth = m.ring().invariants()?.depth;
    let res = minimal_free_resolution(m, depth + 1)?;
    Ok(match res.betti.iter().position(|&b| b == 0) {
        Some(j) => ProjDim::Finite(j - 1),
        None => ProjDim::Infinite,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::QuotientRing;

    #[test]
    fn koszul_betti_numbers() {
        let s = QuotientRing::parse(2, &["x", "y"], &[]).unwrap();
        let res = minimal_free_resolution(&PresentedModule::residue_field(&s), 3).unwrap();
        assert_eq!(res.betti, vec![1, 2, 1, 0]);
        assert_eq!(res.degrees[2], vec![2]);
    }

    #[test]
    fn periodic_resolution_over_dual_numbers() {
        let r = QuotientRing::parse(2, &["x"], &["x^2"]).unwrap();
        let res = minimal_free_resolution(&PresentedModule::residue_field(&r), 4).unwrap();
        assert_eq!(res.betti, vec![1, 1, 1, 1, 1]);
        let x = r.poly().var(0);
        for i in 1..=4 {
            assert_eq!(res.complex.differential(i).get(0, 0), &x);
        }
    }

    #[test]
    fn free_module_resolution() {
        let r = QuotientRing::parse(3, &["x", "y"], &["x*y"]).unwrap();
        let res = minimal_free_resolution(&PresentedModule::free(&r, 1), 3).unwrap();
        assert_eq!(res.betti, vec![1, 0, 0, 0]);
    }

    #[test]
    fn oracle_examples() {
        let s = QuotientRing::parse(2, &["x", "y"], &[]).unwrap();
        assert_eq!(projective_dimension_oracle(&PresentedModule::residue_field(&s)).unwrap(), ProjDim::Finite(2));
        let r = QuotientRing::parse(2, &["x"], &["x^2"]).unwrap();
        assert_eq!(projective_dimension_oracle(&PresentedModule::residue_field(&r)).unwrap(), ProjDim::Infinite);
        let r = QuotientRing::parse(2, &["x", "y"], &["x*y"]).unwrap();
        let m = PresentedModule::cyclic(&r, &[r.poly().parse("x+y").unwrap()]).unwrap();
        assert_eq!(projective_dimension_oracle(&m).unwrap(), ProjDim::Finite(1));
        assert!(projective_dimension_oracle(&PresentedModule::free(&r, 0)).is_err());
    }
}
