//! Exact bitmask Clifford algebra kernel with quaternion-type
//! classification.
//!
//! * [`blade`]: basis blades of Cl(p,q) and their product signs.
//! * [`multivector`]: sparse real/complex multivectors, brackets,
//!   projections, conjugation and the exponential.
//! * [`qtype`]: the 15 quaternion types, coefficient patterns and the
//!   composition tables of the commutator, anticommutator and product.
//! * [`reference`]: transcribed reference tables and their diff against the
//!   generated ones.
//! * [`verifier`]: exhaustive and sampled checks of every composition rule
//!   and closure statement.

pub mod blade;
pub mod error;
pub mod multivector;
pub mod qtype;
pub mod reference;
pub mod verifier;

pub use blade::{canonical_sign, metric_sign, reorder_sign, Blade, Signature, MAX_GENERATORS};
pub use error::{Error, Result};
pub use multivector::{FieldTag, Multivector, Scalar};
pub use qtype::{
    detect_qtype, emit_table, is_closed, main_compose, pattern_compose, qtype_compose, Bracket, CoeffClass, OpKind,
    QType, SubspacePattern, TypeTable,
};
