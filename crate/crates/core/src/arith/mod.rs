//! Exact arithmetic over Q: rationals, polynomials, real roots, number fields,
//! local symbols.

pub mod factor;
pub mod local;
pub mod matrix;
pub mod modp;
pub mod numfield;
pub mod poly;
pub mod rational;
pub mod sturm;

pub use local::{hilbert_symbol, is_square_local, Place};
pub use matrix::Matrix;
pub use numfield::NumberFieldElement;
pub use poly::Poly;
pub use rational::Rational;
pub use sturm::{isolate_real_roots, sign_at_root, sturm_real_root_count, IsolatingInterval};
