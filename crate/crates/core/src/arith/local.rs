//! Places of Q, Hilbert symbols and local square tests.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::{square_class_integer, Rational};
use crate::error::ArithError;

/// A place of Q: the real place or a finite prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Place {
    Real,
    Prime(u64),
}

impl Place {
    /// Checked constructor for finite places.
    pub fn prime(p: u64) -> Result<Place, ArithError> {
        if is_prime_u64(p) {
            Ok(Place::Prime(p))
        } else {
            Err(ArithError::InvalidPlace(p.to_string()))
        }
    }

    pub fn is_real(&self) -> bool {
        matches!(self, Place::Real)
    }

    pub fn parse(s: &str) -> Result<Place, ArithError> {
        let s = s.trim();
        if s == "inf" || s == "∞" {
            return Ok(Place::Real);
        }
        let p: u64 = s.parse().map_err(|_| ArithError::InvalidPlace(s.to_string()))?;
        Place::prime(p)
    }
}

// The real place sorts first, then primes ascending.
impl Ord for Place {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Place::Real, Place::Real) => Ordering::Equal,
            (Place::Real, _) => Ordering::Less,
            (_, Place::Real) => Ordering::Greater,
            (Place::Prime(a), Place::Prime(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for Place {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Real => f.write_str("inf"),
            Place::Prime(p) => write!(f, "{p}"),
        }
    }
}

impl Serialize for Place {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Place {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Place::parse(&s).map_err(serde::de::Error::custom)
    }
}

pub fn is_prime_u64(p: u64) -> bool {
    num_prime::nt_funcs::is_prime64(p)
}

/// Primes up to and including `bound`.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    num_prime::nt_funcs::primes(bound + 1).into_iter().filter(|&p| p <= bound).collect()
}

/// Prime factorization of `|n|` for nonzero `n`, primes ascending.
pub fn factor_integer(n: &BigInt) -> Result<Vec<(u64, usize)>, ArithError> {
    if n.is_zero() {
        return Err(ArithError::ZeroArgument);
    }
    let m: BigUint = n.magnitude().clone();
    if m.is_one() {
        return Ok(Vec::new());
    }
    let fs = match m.to_u64() {
        Some(small) => num_prime::nt_funcs::factorize64(small).into_iter().collect(),
        None => {
            let mut out = Vec::new();
            for (p, e) in num_prime::nt_funcs::factorize(m) {
                let p = p.to_u64().ok_or_else(|| ArithError::PrimeTooLarge(p.to_string()))?;
                out.push((p, e));
            }
            out
        }
    };
    Ok(fs)
}

pub fn prime_divisors(n: &BigInt) -> Result<Vec<u64>, ArithError> {
    Ok(factor_integer(n)?.into_iter().map(|(p, _)| p).collect())
}

/// Canonical square-class representative: the signed squarefree integer.
pub fn squarefree_class(x: &Rational) -> Result<BigInt, ArithError> {
    if x.is_zero() {
        return Err(ArithError::ZeroArgument);
    }
    let n = square_class_integer(x);
    let mut out = BigInt::one();
    for (p, e) in factor_integer(&n)? {
        if e % 2 == 1 {
            out *= p;
        }
    }
    if n.is_negative() {
        out = -out;
    }
    Ok(out)
}

/// `(v_p(n), n / p^{v_p(n)})` for nonzero `n`.
pub fn split_valuation(n: &BigInt, p: u64) -> (u64, BigInt) {
    let p = BigInt::from(p);
    let mut v = 0;
    let mut m = n.clone();
    loop {
        let (q, r) = m.div_rem(&p);
        if !r.is_zero() {
            return (v, m);
        }
        m = q;
        v += 1;
    }
}

/// p-adic valuation of a nonzero rational.
pub fn valuation(x: &Rational, p: u64) -> i64 {
    let (a, _) = split_valuation(x.numer(), p);
    let (b, _) = split_valuation(x.denom(), p);
    a as i64 - b as i64
}

/// Legendre symbol `(a/p)` for odd prime `p`: 0, 1 or -1.
pub fn legendre(a: &BigInt, p: u64) -> i8 {
    let pb = BigInt::from(p);
    let r = a.mod_floor(&pb);
    if r.is_zero() {
        return 0;
    }
    let e = BigInt::from((p - 1) / 2);
    if r.modpow(&e, &pb).is_one() {
        1
    } else {
        -1
    }
}

fn check_place(v: Place) -> Result<(), ArithError> {
    match v {
        Place::Real => Ok(()),
        Place::Prime(p) if is_prime_u64(p) => Ok(()),
        Place::Prime(p) => Err(ArithError::InvalidPlace(p.to_string())),
    }
}

fn mod8(n: &BigInt) -> u32 {
    n.mod_floor(&BigInt::from(8)).to_u32().unwrap()
}

/// The Hilbert symbol `(a, b)_v` as +1 or -1.
pub fn hilbert_symbol(a: &Rational, b: &Rational, v: Place) -> Result<i8, ArithError> {
    check_place(v)?;
    if a.is_zero() || b.is_zero() {
        return Err(ArithError::ZeroArgument);
    }
    let a = square_class_integer(a);
    let b = square_class_integer(b);
    Ok(match v {
        Place::Real => {
            if a.is_negative() && b.is_negative() {
                -1
            } else {
                1
            }
        }
        Place::Prime(2) => {
            let (alpha, u) = split_valuation(&a, 2);
            let (beta, w) = split_valuation(&b, 2);
            let eps = |x: u32| ((x - 1) / 2) % 2;
            let omega = |x: u32| ((x * x - 1) / 8) % 2;
            let (u8_, w8) = (mod8(&u), mod8(&w));
            let e = eps(u8_) * eps(w8) + (alpha as u32 % 2) * omega(w8) + (beta as u32 % 2) * omega(u8_);
            if e % 2 == 0 {
                1
            } else {
                -1
            }
        }
        Place::Prime(p) => {
            let (alpha, u) = split_valuation(&a, p);
            let (beta, w) = split_valuation(&b, p);
            let mut s: i8 = 1;
            if alpha % 2 == 1 && beta % 2 == 1 && (p % 4 == 3) {
                s = -s;
            }
            if beta % 2 == 1 {
                s *= legendre(&u, p);
            }
            if alpha % 2 == 1 {
                s *= legendre(&w, p);
            }
            s
        }
    })
}

/// Whether `a` is a square in the completion `Q_v`.
pub fn is_square_local(a: &Rational, v: Place) -> Result<bool, ArithError> {
    check_place(v)?;
    if a.is_zero() {
        return Err(ArithError::ZeroArgument);
    }
    let n = square_class_integer(a);
    Ok(match v {
        Place::Real => n.is_positive(),
        Place::Prime(p) => {
            let (e, u) = split_valuation(&n, p);
            if e % 2 == 1 {
                false
            } else if p == 2 {
                mod8(&u) == 1
            } else {
                legendre(&u, p) == 1
            }
        }
    })
}

/// `{inf, 2}` together with every prime dividing a numerator or denominator of the inputs.
pub fn relevant_places<'a, I: IntoIterator<Item = &'a Rational>>(xs: I) -> Result<BTreeSet<Place>, ArithError> {
    let mut out: BTreeSet<Place> = [Place::Real, Place::Prime(2)].into_iter().collect();
    for x in xs {
        if x.is_zero() {
            return Err(ArithError::ZeroArgument);
        }
        for p in prime_divisors(&square_class_integer(x))? {
            out.insert(Place::Prime(p));
        }
    }
    Ok(out)
}

/// Places where `(a, b)_v = -1`.
pub fn hilbert_ramification(a: &Rational, b: &Rational) -> Result<BTreeSet<Place>, ArithError> {
    let mut out = BTreeSet::new();
    for v in relevant_places([a, b])? {
        if hilbert_symbol(a, b, v)? == -1 {
            out.insert(v);
        }
    }
    Ok(out)
}
