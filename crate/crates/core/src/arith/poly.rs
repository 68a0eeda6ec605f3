//! Dense univariate polynomials over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::{common_denominator, format_rational, parse_rational, Rational};
use crate::error::ArithError;

/// Polynomial with rational coefficients in ascending degree order.
///
/// The coefficient vector never has a trailing zero, so the zero polynomial
/// is the empty vector and `lc()` is always nonzero for nonzero polynomials.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// The indeterminate `t`.
    pub fn x() -> Self {
        Poly::new(vec![Rational::zero(), Rational::one()])
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    /// `t - r`
    pub fn linear_root(r: &Rational) -> Self {
        Poly::new(vec![-r.clone(), Rational::one()])
    }

    /// `c * t^n`
    pub fn monomial(c: Rational, n: usize) -> Self {
        let mut v = vec![Rational::zero(); n + 1];
        v[n] = c;
        Poly::new(v)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the convention deg(0) = 0; only for places where that is harmless.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn lc(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Sign of `p(x)` for `x` tending to +infinity (`positive = true`) or -infinity.
    pub fn sign_at_infinity(&self, positive: bool) -> i8 {
        match self.degree() {
            None => 0,
            Some(d) => {
                let s = if self.lc().is_positive() { 1 } else { -1 };
                if positive || d % 2 == 0 {
                    s
                } else {
                    -s
                }
            }
        }
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * Rational::from_integer(BigInt::from(i))).collect(),
        )
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(&self.lc().recip())
    }

    pub fn pow(&self, e: usize) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `self(g(t))`
    pub fn compose(&self, g: &Poly) -> Poly {
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * g) + &Poly::constant(c.clone());
        }
        acc
    }

    /// `p(-t)`
    pub fn reflect(&self) -> Poly {
        Poly::new(
            self.coeffs.iter().enumerate().map(|(i, c)| if i % 2 == 1 { -c.clone() } else { c.clone() }).collect(),
        )
    }

    /// Euclidean division; panics-free, errors on a zero divisor.
    pub fn div_rem(&self, d: &Poly) -> Result<(Poly, Poly), ArithError> {
        let dd = d.degree().ok_or(ArithError::DivisionByZero)?;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let inv = d.lc().recip();
        let mut q = vec![Rational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &inv;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[k + j] -= &c * dc;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        Ok((Poly::new(q), Poly::new(r)))
    }

    pub fn rem(&self, d: &Poly) -> Result<Poly, ArithError> {
        Ok(self.div_rem(d)?.1)
    }

    /// Exact quotient; errors if the division leaves a remainder.
    pub fn exact_div(&self, d: &Poly) -> Result<Poly, ArithError> {
        let (q, r) = self.div_rem(d)?;
        if !r.is_zero() {
            return Err(ArithError::NotInvertible(format!("{d} does not divide {self}")));
        }
        Ok(q)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd: returns `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1).expect("nonzero divisor");
            r0 = std::mem::replace(&mut r1, r);
            let s = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s);
            let t = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.lc().recip();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).is_constant()
    }

    /// Errors with `NotSquarefree` unless `gcd(p, p')` is constant.
    pub fn require_squarefree(&self) -> Result<(), ArithError> {
        if self.is_zero() {
            return Err(ArithError::ZeroPolynomial);
        }
        let g = self.gcd(&self.derivative());
        if g.is_constant() {
            Ok(())
        } else {
            Err(ArithError::NotSquarefree(g.deg()))
        }
    }

    /// `p / gcd(p, p')`, made monic.
    pub fn squarefree_part(&self) -> Result<Poly, ArithError> {
        if self.is_zero() {
            return Err(ArithError::ZeroPolynomial);
        }
        let g = self.gcd(&self.derivative());
        Ok(self.exact_div(&g)?.monic())
    }

    /// Primitive integer polynomial with positive leading coefficient and the
    /// same roots.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let den = common_denominator(self.coeffs.iter());
        let ints: Vec<BigInt> =
            self.coeffs.iter().map(|c| (c * Rational::from_integer(den.clone())).to_integer()).collect();
        let content = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        let sgn = if ints.last().unwrap().is_negative() { -BigInt::one() } else { BigInt::one() };
        ints.into_iter().map(|c| &c / &content * &sgn).collect()
    }

    pub fn from_bigints(cs: &[BigInt]) -> Poly {
        Poly::new(cs.iter().map(|c| Rational::from_integer(c.clone())).collect())
    }

    /// Resultant by the Euclidean remainder sequence over the field of rationals.
    ///
    /// Uses `Res(A,B) = (-1)^{deg A deg B} lc(B)^{deg A - deg R} Res(B, R)` with
    /// `R = A mod B`.
    pub fn resultant(&self, other: &Poly) -> Result<Rational, ArithError> {
        if self.is_zero() || other.is_zero() {
            return Err(ArithError::ZeroPolynomial);
        }
        let mut a = self.clone();
        let mut b = other.clone();
        let mut acc = Rational::one();
        loop {
            let m = a.deg();
            let n = b.deg();
            if n == 0 {
                return Ok(acc * num_traits::pow(b.lc(), m));
            }
            if m == 0 {
                return Ok(acc * num_traits::pow(a.lc(), n));
            }
            let r = a.rem(&b)?;
            if r.is_zero() {
                return Ok(Rational::zero());
            }
            if (m * n) % 2 == 1 {
                acc = -acc;
            }
            acc *= num_traits::pow(b.lc(), m - r.deg());
            a = b;
            b = r;
        }
    }

    /// `(-1)^{n(n-1)/2} Res(p, p') / lc(p)`.
    pub fn discriminant(&self) -> Result<Rational, ArithError> {
        let n = self.degree().ok_or(ArithError::ZeroPolynomial)?;
        if n == 0 {
            return Err(ArithError::ConstantPolynomial);
        }
        let r = self.resultant(&self.derivative())?;
        let s = if (n * (n - 1) / 2) % 2 == 1 { -Rational::one() } else { Rational::one() };
        Ok(s * r / self.lc())
    }

    /// Parse the ASCII grammar `c_n*t^n + ... + c_0` in the variable `var`.
    pub fn parse_in(s: &str, var: &str) -> Result<Poly, ArithError> {
        PolyParser::new(s, var).parse()
    }

    pub fn parse(s: &str) -> Result<Poly, ArithError> {
        Poly::parse_in(s, "t")
    }

    pub fn to_string_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if i == 0 {
                out.push_str(&format_rational(&a));
            } else if a.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{}*{}", format_rational(&a), mono));
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_in("t"))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Poly::parse(&s).map_err(serde::de::Error::custom)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

struct PolyParser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    var: &'a str,
    pos: usize,
}

impl<'a> PolyParser<'a> {
    fn new(src: &'a str, var: &'a str) -> Self {
        PolyParser { src, bytes: src.as_bytes(), var, pos: 0 }
    }

    fn err(&self, message: impl Into<String>) -> ArithError {
        ArithError::Parse { column: self.pos + 1, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn number(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            None
        } else {
            Some(self.src[start..self.pos].parse().expect("digits"))
        }
    }

    fn at_var(&self) -> bool {
        self.src[self.pos..].starts_with(self.var)
    }

    fn parse(mut self) -> Result<Poly, ArithError> {
        let mut terms: Vec<Rational> = Vec::new();
        let mut first = true;
        loop {
            self.skip_ws();
            if self.pos >= self.bytes.len() {
                if first {
                    return Err(self.err("empty polynomial"));
                }
                break;
            }
            let mut negative = false;
            match self.peek() {
                Some(b'+') => self.pos += 1,
                Some(b'-') => {
                    negative = true;
                    self.pos += 1
                }
                _ if !first => return Err(self.err("expected '+' or '-'")),
                _ => {}
            }
            first = false;
            self.skip_ws();
            let (coeff, exp) = self.term()?;
            let coeff = if negative { -coeff } else { coeff };
            if terms.len() <= exp {
                terms.resize(exp + 1, Rational::zero());
            }
            terms[exp] += coeff;
        }
        Ok(Poly::new(terms))
    }

    fn term(&mut self) -> Result<(Rational, usize), ArithError> {
        let mut coeff = Rational::one();
        let mut saw_coeff = false;
        if let Some(n) = self.number() {
            saw_coeff = true;
            self.skip_ws();
            if self.peek() == Some(b'/') {
                self.pos += 1;
                self.skip_ws();
                let d = self.number().ok_or_else(|| self.err("expected denominator"))?;
                if d.is_zero() {
                    return Err(self.err("zero denominator"));
                }
                coeff = Rational::new(n, d);
            } else {
                coeff = Rational::from_integer(n);
            }
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
                self.skip_ws();
                if !self.at_var() {
                    return Err(self.err(format!("expected variable '{}' after '*'", self.var)));
                }
            }
        }
        if self.at_var() {
            self.pos += self.var.len();
            self.skip_ws();
            let mut exp = 1usize;
            if self.peek() == Some(b'^') {
                self.pos += 1;
                self.skip_ws();
                let e = self.number().ok_or_else(|| self.err("expected exponent"))?;
                exp = e.try_into().map_err(|_| self.err("exponent too large"))?;
            }
            return Ok((coeff, exp));
        }
        if !saw_coeff {
            return Err(self.err(format!("expected a coefficient or '{}'", self.var)));
        }
        Ok((coeff, 0))
    }
}

/// Parse a rational from polynomial-style input, e.g. coefficients in a datum file.
pub fn parse_scalar(s: &str) -> Result<Rational, ArithError> {
    parse_rational(s)
}
