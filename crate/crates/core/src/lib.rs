//! Exact computation in the group of polynomial automorphisms of affine
//! n-space over the Gaussian rationals.
//!
//! Maps compose as functions: `f.compose(&g)` is `f ∘ g`, whose components
//! are `f_i(g_1, ..., g_n)`. Variables are zero-based in the API and print
//! as `x1..xn`.

pub mod centralizer;
pub mod derivation;
pub mod error;
pub mod linalg;
pub mod poly;
pub mod polymap;
pub mod sample;
pub mod scalar;
pub mod suite;
pub mod tame;
pub mod text;
pub mod torus;

pub use centralizer::{
    centralizer_equals_dn, commutant_support, is_in_centralizer, CentralizerReport,
    CentralizerVerdict, CommutantSupport,
};
pub use derivation::{
    b_coefficient, classify_dn_normalized, conj_by_diagonal, flow, Derivation, Lnd,
    MonomialDerivationForm, Nilpotency,
};
pub use error::{Error, NotAutomorphismReason, Result};
pub use poly::{Degree, Monomial, Polynomial};
pub use polymap::{
    conjugate, formal_inverse, gabber_bound, locally_finite_certify, verify_automorphism,
    Automorphism, LocallyFinite, PolyMap, ThetaAut,
};
pub use scalar::{FieldAut, Scalar};
pub use tame::{
    eval_word, jvk_factor, random_tame, random_tame_with_budget, Factorization, TameGenerator,
    TameWord, WordBudget,
};
pub use text::{
    parse_character, parse_derivation, parse_map, parse_poly, parse_poly_auto, parse_word,
    ParseError,
};
pub use torus::{
    dominance_leq, enumerate_xu, eval_character, is_dominant, is_in_xu, mu_elements,
    translation_lemma_witness, Character, DiagonalElement, FiniteDiagonalGroup,
};
