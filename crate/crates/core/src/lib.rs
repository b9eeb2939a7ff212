//! Symbolic Hom/Ext calculus for locally compact Polish abelian groups.

pub mod classify;
pub mod cover;
pub mod duality;
pub mod expr;
pub mod finab;
pub mod homext;
pub mod parse;
pub mod selftest;
