//! Split octonions as pairs of 2x2 rational matrices, the split Albert algebra
//! built on them, the split twisted composition and its rank-2 torus.

pub mod albert;
pub mod composition;
pub mod real_forms;
pub mod torus;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use rand::Rng;
use serde::Serialize;

use crate::arith::rational::{format_rational, rat, Rational};

pub use albert::{albert_cross, albert_product, AlbertElement};
pub use composition::{check_composition_axioms, AxiomFailure, AxiomReport, CompositionElement, Mutation};
pub use real_forms::{real_form_from_signature, total_signature, RealCompositionSignature, RealFormF4};
pub use torus::{torus_generator, GeneratorKind, TorusParameter};

/// 2x2 rational matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat2(pub [Rational; 4]);

impl Mat2 {
    pub fn zero() -> Self {
        Mat2(std::array::from_fn(|_| Rational::zero()))
    }

    pub fn scalar(x: Rational) -> Self {
        Mat2([x.clone(), Rational::zero(), Rational::zero(), x])
    }

    pub fn diag(a: Rational, d: Rational) -> Self {
        Mat2([a, Rational::zero(), Rational::zero(), d])
    }

    pub fn det(&self) -> Rational {
        let [a, b, c, d] = &self.0;
        a * d - b * c
    }

    /// Adjugate: [[a22, -a12], [-a21, a11]].
    pub fn bar(&self) -> Self {
        let [a, b, c, d] = &self.0;
        Mat2([d.clone(), -b.clone(), -c.clone(), a.clone()])
    }

    pub fn trace(&self) -> Rational {
        &self.0[0] + &self.0[3]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Mat2(std::array::from_fn(|i| &self.0[i] * k))
    }
}

impl Add for &Mat2 {
    type Output = Mat2;
    fn add(self, o: &Mat2) -> Mat2 {
        Mat2(std::array::from_fn(|i| &self.0[i] + &o.0[i]))
    }
}

impl Sub for &Mat2 {
    type Output = Mat2;
    fn sub(self, o: &Mat2) -> Mat2 {
        Mat2(std::array::from_fn(|i| &self.0[i] - &o.0[i]))
    }
}

impl Neg for &Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        Mat2(std::array::from_fn(|i| -&self.0[i]))
    }
}

impl Mul for &Mat2 {
    type Output = Mat2;
    fn mul(self, o: &Mat2) -> Mat2 {
        let [a, b, c, d] = &self.0;
        let [e, f, g, h] = &o.0;
        Mat2([a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h])
    }
}

/// Split octonion `(A, B)` with `A, B` in M_2(Q).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Octonion {
    pub a: Mat2,
    pub b: Mat2,
}

impl Octonion {
    pub fn new(a: Mat2, b: Mat2) -> Self {
        Octonion { a, b }
    }

    pub fn zero() -> Self {
        Octonion { a: Mat2::zero(), b: Mat2::zero() }
    }

    pub fn one() -> Self {
        Octonion::scalar(Rational::one())
    }

    pub fn scalar(x: Rational) -> Self {
        Octonion { a: Mat2::scalar(x), b: Mat2::zero() }
    }

    /// Coordinates in the basis: entries of A row-major, then of B.
    pub fn coords(&self) -> [Rational; 8] {
        std::array::from_fn(|i| if i < 4 { self.a.0[i].clone() } else { self.b.0[i - 4].clone() })
    }

    pub fn from_coords(v: &[Rational]) -> Self {
        assert_eq!(v.len(), 8);
        Octonion { a: Mat2(std::array::from_fn(|i| v[i].clone())), b: Mat2(std::array::from_fn(|i| v[i + 4].clone())) }
    }

    pub fn basis(i: usize) -> Self {
        let mut v: Vec<Rational> = vec![Rational::zero(); 8];
        v[i] = Rational::one();
        Octonion::from_coords(&v)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// The rational `x` if this octonion is `x` times the unit.
    pub fn as_scalar(&self) -> Option<Rational> {
        let [a, b, c, d] = &self.a.0;
        (self.b.is_zero() && b.is_zero() && c.is_zero() && a == d).then(|| a.clone())
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Octonion { a: self.a.scale(k), b: self.b.scale(k) }
    }

    pub fn random<R: Rng>(rng: &mut R) -> Self {
        Octonion::from_coords(&(0..8).map(|_| random_rational(rng)).collect::<Vec<_>>())
    }
}

/// Small random rational: numerator in [-9, 9], denominator in [1, 4].
pub fn random_rational<R: Rng>(rng: &mut R) -> Rational {
    rat(rng.gen_range(-9..=9), rng.gen_range(1..=4))
}

pub fn oct_mul(x: &Octonion, y: &Octonion) -> Octonion {
    // (A,B)(C,D) = (AC + D̄B, DA + BC̄)
    let (a, b, c, d) = (&x.a, &x.b, &y.a, &y.b);
    Octonion { a: &(a * c) + &(&d.bar() * b), b: &(d * a) + &(b * &c.bar()) }
}

pub fn oct_conj(x: &Octonion) -> Octonion {
    Octonion { a: x.a.bar(), b: -&x.b }
}

pub fn oct_norm(x: &Octonion) -> Rational {
    x.a.det() - x.b.det()
}

/// Polarization of the norm: n(x+y) - n(x) - n(y).
pub fn oct_inner(x: &Octonion, y: &Octonion) -> Rational {
    oct_norm(&(x + y)) - oct_norm(x) - oct_norm(y)
}

impl Add for &Octonion {
    type Output = Octonion;
    fn add(self, o: &Octonion) -> Octonion {
        Octonion { a: &self.a + &o.a, b: &self.b + &o.b }
    }
}

impl Sub for &Octonion {
    type Output = Octonion;
    fn sub(self, o: &Octonion) -> Octonion {
        Octonion { a: &self.a - &o.a, b: &self.b - &o.b }
    }
}

impl Neg for &Octonion {
    type Output = Octonion;
    fn neg(self) -> Octonion {
        Octonion { a: -&self.a, b: -&self.b }
    }
}

impl Mul for &Octonion {
    type Output = Octonion;
    fn mul(self, o: &Octonion) -> Octonion {
        oct_mul(self, o)
    }
}

impl fmt::Display for Octonion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coords().iter().map(format_rational).collect();
        write!(f, "([{}, {}; {}, {}], [{}, {}; {}, {}])", c[0], c[1], c[2], c[3], c[4], c[5], c[6], c[7])
    }
}

impl Serialize for Octonion {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let c: Vec<String> = self.coords().iter().map(format_rational).collect();
        c.serialize(s)
    }
}
