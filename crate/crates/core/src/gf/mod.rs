//! Finite field arithmetic: GF(p), GF(q = p^n), GF(q^r) and polynomials and
//! matrices over them.

pub mod factor;
mod field;
mod matrix;
mod poly;
pub mod primitive;
mod spec;

pub use field::{FiniteField, MAX_FIELD_ORDER};
pub use matrix::Matrix;
pub use poly::Poly;
pub use primitive::{default_primitive, find_primitive, is_primitive};
pub use spec::{build_q_matrix, FieldElement, FieldSpec, FieldSpecJson, QMatrix, WordVector};
