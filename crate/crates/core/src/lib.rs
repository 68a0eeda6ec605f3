//! Exact algebra for maximal tori in groups of type F4 and in orthogonal
//! groups over the rationals.

pub mod arith;
pub mod error;
pub mod etale;
pub mod forms;
pub mod octonion;
pub mod realizability;
pub mod selftest;
