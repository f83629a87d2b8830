//! Frobenius-based detection of finite flat and injective dimension for graded
//! modules over quotients of polynomial rings over F_p.

pub mod corpus;
pub mod criteria;
pub mod error;
pub mod field;
pub mod frobenius;
pub mod groebner;
pub mod homology;
pub mod input;
pub mod invariants;
pub mod module;
pub mod poly;
pub mod report;
pub mod resolution;
pub mod ring;

pub use criteria::{
    decide_flat_dimension, decide_injectivity_zero_dim, CriterionConfig, FlatInput, Mode, Outcome, TheoremTag, Verdict,
    Witness,
};
pub use error::{Error, Result};
pub use field::FieldContext;
pub use frobenius::{
    ext_frobenius, frobenius_twist, pushforward_presentation, sup_homology, tor_frobenius, tor_frobenius_complex,
    tor_frobenius_via_pushforward, FrobTable, FrobeniusPresentation, TableKind, TorTable,
};
pub use groebner::{
    groebner_basis, is_zero_cokernel, lift, normal_form, syzygy_basis, GroebnerBasis, SubmodulePresentation,
};
pub use homology::{
    ext_module, finite_length_dual, finite_length_structure, homology_is_zero, FiniteLengthStructure, HomologyInfo,
};
pub use invariants::{hilbert_numerator, ring_profile, RingInvariants};
pub use module::{FreeComplex, Matrix, PresentedModule};
pub use poly::{FreeVector, Monomial, MonomialOrder, PolyRing, Polynomial};
pub use resolution::{minimal_free_resolution, projective_dimension_oracle, ProjDim, Resolution};
pub use ring::QuotientRing;
