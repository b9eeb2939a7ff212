//! Structural predicates, category membership and classification.

mod category;
mod props;
mod resolve;

pub use category::{
    classify_injective, classify_projective, cover_member, member, BaseCategory, CategoryTag,
    ClassifyError, UnknownCategory, Verdict,
};
pub use props::{decompose, p_component, properties, PropertyVector, TypeDecomposition};
pub use resolve::{
    cyclic_truncation_exact, is_essentially_injective, resolve, vector_quotient, Resolution,
};
