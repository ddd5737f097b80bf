//! Exact rationals and simple number fields.

pub mod numfield;
pub(crate) mod qslice;
pub mod rational;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
pub use numfield::{nf_arith, nf_automorphism, nf_new, Field, FieldAutomorphism, NFElement, NfOp};
pub use rational::{format_rational, parse_rational, rat, rat2};
