//! Elements of `Q[t]/(m)` for a monic squarefree modulus `m`.
//!
//! When `m` is irreducible this is a number field; for reducible `m` it is the
//! étale algebra `Q[t]/(m)` and only inversion can fail.

use std::fmt;

use num_traits::{One, Zero};

use super::poly::Poly;
use super::rational::Rational;
use crate::error::ArithError;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NumberFieldElement {
    modulus: Poly,
    rep: Poly,
}

impl NumberFieldElement {
    /// Reduce `rep` modulo `modulus`. The modulus is made monic.
    pub fn new(modulus: &Poly, rep: &Poly) -> Result<Self, ArithError> {
        if modulus.is_constant() {
            return Err(ArithError::ConstantPolynomial);
        }
        let m = modulus.monic();
        let rep = rep.rem(&m)?;
        Ok(NumberFieldElement { modulus: m, rep })
    }

    pub fn from_rational(modulus: &Poly, c: Rational) -> Result<Self, ArithError> {
        Self::new(modulus, &Poly::constant(c))
    }

    /// The class of `t`.
    pub fn generator(modulus: &Poly) -> Result<Self, ArithError> {
        Self::new(modulus, &Poly::x())
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    pub fn rep(&self) -> &Poly {
        &self.rep
    }

    pub fn degree(&self) -> usize {
        self.modulus.deg()
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.rep == Poly::one()
    }

    fn same(&self, rep: Poly) -> Self {
        NumberFieldElement { modulus: self.modulus.clone(), rep }
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.modulus, other.modulus, "elements of different algebras");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        self.same(&self.rep + &other.rep)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check(other);
        self.same(&self.rep - &other.rep)
    }

    pub fn neg(&self) -> Self {
        self.same(-&self.rep)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        self.same((&self.rep * &other.rep).rem(&self.modulus).expect("nonconstant modulus"))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.same(self.rep.scale(c))
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = self.same(Poly::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn inverse(&self) -> Result<Self, ArithError> {
        let (g, s, _) = self.rep.ext_gcd(&self.modulus);
        if g != Poly::one() {
            return Err(ArithError::NotInvertible(self.modulus.to_string()));
        }
        Ok(self.same(s.rem(&self.modulus)?))
    }

    pub fn div(&self, other: &Self) -> Result<Self, ArithError> {
        Ok(self.mul(&other.inverse()?))
    }

    /// Evaluate a rational polynomial at this element.
    pub fn eval_poly(&self, p: &Poly) -> Self {
        let mut acc = self.same(Poly::zero());
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(self).add(&self.same(Poly::constant(c.clone())));
        }
        acc
    }

    /// Matrix of multiplication by `self` on the power basis; column `j` is `self * t^j`.
    pub fn mult_matrix(&self) -> Vec<Vec<Rational>> {
        let n = self.degree();
        let mut m = vec![vec![Rational::zero(); n]; n];
        let mut basis = self.same(Poly::one());
        let t = self.same(Poly::x());
        for j in 0..n {
            let col = self.mul(&basis);
            for (i, row) in m.iter_mut().enumerate() {
                row[j] = col.rep.coeff(i);
            }
            basis = basis.mul(&t);
        }
        m
    }

    pub fn trace(&self) -> Rational {
        let m = self.mult_matrix();
        (0..m.len()).fold(Rational::zero(), |acc, i| acc + &m[i][i])
    }

    /// `N(a) = Res(m, a)` for monic `m`.
    pub fn norm(&self) -> Rational {
        if self.rep.is_zero() {
            return Rational::zero();
        }
        self.modulus.resultant(&self.rep).expect("nonzero polynomials")
    }

    /// Characteristic polynomial of multiplication by `self`, via
    /// `Res_t(m(t), x - a(t))` interpolated at `deg m + 1` integer points.
    pub fn charpoly(&self) -> Poly {
        let n = self.degree();
        let xs: Vec<Rational> = (0..=n).map(|k| Rational::from_integer((k as i64).into())).collect();
        let ys: Vec<Rational> = xs
            .iter()
            .map(|x| {
                let lin = &Poly::constant(x.clone()) - &self.rep;
                if lin.is_zero() {
                    Rational::zero()
                } else {
                    self.modulus.resultant(&lin).expect("nonzero polynomials")
                }
            })
            .collect();
        interpolate(&xs, &ys)
    }

    /// Minimal polynomial: squarefree part of the characteristic polynomial.
    /// Exact when the modulus is irreducible.
    pub fn minpoly(&self) -> Poly {
        self.charpoly().squarefree_part().expect("nonzero charpoly")
    }

    pub fn parse(modulus: &Poly, s: &str, var: &str) -> Result<Self, ArithError> {
        Self::new(modulus, &Poly::parse_in(s, var)?)
    }
}

/// Lagrange interpolation through distinct abscissae.
pub fn interpolate(xs: &[Rational], ys: &[Rational]) -> Poly {
    let mut acc = Poly::zero();
    for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
        if yi.is_zero() {
            continue;
        }
        let mut basis = Poly::one();
        let mut denom = Rational::one();
        for (j, xj) in xs.iter().enumerate() {
            if i != j {
                basis = &basis * &Poly::linear_root(xj);
                denom *= xi - xj;
            }
        }
        acc = &acc + &basis.scale(&(yi / denom));
    }
    acc
}

impl fmt::Display for NumberFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod ({})", self.rep, self.modulus)
    }
}

impl fmt::Debug for NumberFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
