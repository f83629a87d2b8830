mod common;

use common::{build, combine, ring, terms};
use frobdim::{
    groebner_basis, is_zero_cokernel, lift, normal_form, syzygy_basis, FreeVector, Polynomial, QuotientRing,
    SubmodulePresentation,
};
use proptest::prelude::*;

const RANK: usize = 2;

fn base_rings() -> Vec<QuotientRing> {
    vec![
        ring(2, &["x", "y"], &[]),
        ring(3, &["x", "y"], &[]),
        ring(2, &["x", "y"], &["x*y"]),
        ring(3, &["x", "y", "z"], &["x^2 - y*z"]),
        ring(2, &["x", "y"], &["x^3"]),
    ]
}

type RawVec = Vec<Vec<(Vec<u32>, u32)>>;

fn raw_vectors(count: usize) -> impl Strategy<Value = Vec<RawVec>> {
    prop::collection::vec(prop::collection::vec(terms(3, 3, 3), RANK), 1..=count)
}

fn vectors(r: &QuotientRing, raw: &[RawVec]) -> Vec<FreeVector> {
    let n = r.nvars();
    raw.iter()
        .map(|col| {
            let dense = col
                .iter()
                .map(|t| {
                    let t: Vec<_> = t.iter().map(|(e, c)| (e[..n].to_vec(), *c)).collect();
                    r.reduce(&build(r.poly(), &t))
                })
                .collect();
            FreeVector::from_dense(dense)
        })
        .collect()
}

fn coefficients(r: &QuotientRing, raw: &[Vec<(Vec<u32>, u32)>]) -> Vec<Polynomial> {
    let n = r.nvars();
    raw.iter()
        .map(|t| {
            let t: Vec<_> = t.iter().map(|(e, c)| (e[..n].to_vec(), *c)).collect();
            build(r.poly(), &t)
        })
        .collect()
}

fn scale(r: &QuotientRing, v: &FreeVector, c: u32) -> FreeVector {
    let f = r.poly().constant(c);
    combine(r, RANK, std::slice::from_ref(v), &[f])
}

fn add(r: &QuotientRing, a: &FreeVector, b: &FreeVector) -> FreeVector {
    let one = r.poly().one();
    combine(r, RANK, &[a.clone(), b.clone()], &[one.clone(), one])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn normal_form_is_idempotent_and_linear(
        k in 0usize..5, gens in raw_vectors(3), extra in raw_vectors(2), c in 1u32..100
    ) {
        let r = &base_rings()[k];
        let sub = SubmodulePresentation::new(r, RANK, vectors(r, &gens)).unwrap();
        let gb = groebner_basis(&sub).unwrap();
        let vs = vectors(r, &extra);
        let (v, w) = (&vs[0], vs.get(1).cloned().unwrap_or_else(FreeVector::zero));
        let nv = normal_form(v, &gb).unwrap();
        prop_assert_eq!(&normal_form(&nv, &gb).unwrap(), &nv);
        let c = c % r.characteristic();
        let lhs = normal_form(&add(r, &scale(r, v, c), &w), &gb).unwrap();
        let rhs = add(r, &scale(r, &nv, c), &normal_form(&w, &gb).unwrap());
        prop_assert_eq!(lhs, rhs);
        for g in &sub.generators {
            prop_assert!(gb.contains(g).unwrap());
        }
    }

    #[test]
    fn groebner_basis_is_idempotent(k in 0usize..5, gens in raw_vectors(3)) {
        let r = &base_rings()[k];
        let gb = groebner_basis(&SubmodulePresentation::new(r, RANK, vectors(r, &gens)).unwrap()).unwrap();
        let again = groebner_basis(&SubmodulePresentation::new(r, RANK, gb.elements()).unwrap()).unwrap();
        prop_assert_eq!(gb.leading_terms(), again.leading_terms());
        prop_assert_eq!(gb.elements(), again.elements());
    }

    #[test]
    fn syzygies_evaluate_to_zero(k in 0usize..5, gens in raw_vectors(3)) {
        let r = &base_rings()[k];
        let cols = vectors(r, &gens);
        let sub = SubmodulePresentation::new(r, RANK, cols.clone()).unwrap();
        let syz = syzygy_basis(&sub).unwrap();
        prop_assert_eq!(syz.rank, cols.len());
        for s in &syz.generators {
            let coeffs = s.to_dense(cols.len());
            prop_assert!(combine(r, RANK, &cols, &coeffs).is_zero());
        }
    }

    #[test]
    fn lift_certificates_reconstruct_members(
        k in 0usize..5, gens in raw_vectors(3), coeff_raw in prop::collection::vec(terms(3, 2, 2), 3)
    ) {
        let r = &base_rings()[k];
        let cols = vectors(r, &gens);
        let sub = SubmodulePresentation::new(r, RANK, cols.clone()).unwrap();
        let coeffs = coefficients(r, &coeff_raw[..cols.len()]);
        let v = combine(r, RANK, &cols, &coeffs);
        let cert = lift(&sub, &v).unwrap();
        prop_assert!(cert.is_some());
        let rebuilt = combine(r, RANK, &cols, &cert.unwrap().to_dense(cols.len()));
        prop_assert_eq!(rebuilt, v);
    }
}

#[test]
fn non_members_do_not_lift() {
    let r = ring(2, &["x", "y"], &["x*y"]);
    let p = r.poly();
    let cols = vec![
        FreeVector::from_dense(vec![p.parse("x").unwrap(), p.parse("y").unwrap()]),
        FreeVector::from_dense(vec![p.parse("y^2").unwrap(), Polynomial::zero()]),
    ];
    let sub = SubmodulePresentation::new(&r, 2, cols.clone()).unwrap();
    assert!(lift(&sub, &FreeVector::unit(p, 0)).unwrap().is_none());
    assert!(lift(&sub, &FreeVector::from_dense(vec![p.parse("x").unwrap(), Polynomial::zero()])).unwrap().is_none());
    assert!(!is_zero_cokernel(&r, &cols, 2).unwrap());
    let mut full = cols;
    full.push(FreeVector::from_dense(vec![p.parse("x + 1").unwrap(), p.parse("1").unwrap()]));
    full.push(FreeVector::unit(p, 1));
    assert!(is_zero_cokernel(&r, &full, 2).unwrap());
}

#[test]
fn budget_exhaustion_is_reported() {
    let r = ring(3, &["x", "y", "z"], &[]).with_budget(3);
    let p = r.poly();
    let gens: Vec<FreeVector> = ["x^3 - y*z^2", "y^3 - x^2*z", "z^3 - x*y^2", "x*y*z - 1"]
        .iter()
        .map(|s| FreeVector::from_dense(vec![p.parse(s).unwrap()]))
        .collect();
    let err = groebner_basis(&SubmodulePresentation::new(&r, 1, gens).unwrap()).unwrap_err();
    assert!(matches!(err, frobdim::Error::ResourceExceeded(_)), "{err:?}");
}
