//! Invariants of nondegenerate quadratic forms over Q.
//!
//! Forms are handled through the complete tuple (dimension, discriminant,
//! Hasse ramification set, signature); explicit diagonalizations only appear
//! at the edges (construction from entries and realization back to entries).

mod realize;

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::arith::local::{
    hilbert_ramification, hilbert_symbol, is_square_local, prime_divisors, squarefree_class, Place,
};
use crate::arith::rational::{big, format_rational, parse_rational, Rational};
use crate::error::{ArithError, FormError};

pub use realize::{check_feasible, realize_invariants, Infeasible};

/// `<a_1, ..., a_m>` with nonzero rational entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalForm {
    entries: Vec<Rational>,
}

impl DiagonalForm {
    pub fn new(entries: Vec<Rational>) -> Result<Self, FormError> {
        if entries.iter().any(Zero::is_zero) {
            return Err(FormError::ZeroEntry);
        }
        Ok(DiagonalForm { entries })
    }

    pub fn from_ints(v: &[i64]) -> Self {
        DiagonalForm::new(v.iter().map(|&a| Rational::from_integer(a.into())).collect()).expect("nonzero entries")
    }

    /// The zero-dimensional form.
    pub fn empty() -> Self {
        DiagonalForm { entries: Vec::new() }
    }

    pub fn hyperbolic(planes: usize) -> Self {
        let mut v = Vec::with_capacity(2 * planes);
        for _ in 0..planes {
            v.push(Rational::one());
            v.push(-Rational::one());
        }
        DiagonalForm { entries: v }
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn concat(&self, other: &DiagonalForm) -> DiagonalForm {
        let mut v = self.entries.clone();
        v.extend(other.entries.iter().cloned());
        DiagonalForm { entries: v }
    }

    /// Comma-separated rationals, e.g. `1,1,-7` or `1/2,-3`.
    pub fn parse(s: &str) -> Result<Self, FormError> {
        let mut entries = Vec::new();
        let mut column = 1;
        for part in s.split(',') {
            let x = parse_rational(part).map_err(|e| match e {
                ArithError::Parse { message, .. } => FormError::Arith(ArithError::Parse { column, message }),
                other => FormError::Arith(other),
            })?;
            entries.push(x);
            column += part.len() + 1;
        }
        if entries.is_empty() {
            return Err(FormError::Arith(ArithError::Parse { column: 1, message: "empty form".into() }));
        }
        DiagonalForm::new(entries)
    }

    pub fn invariants(&self) -> Result<WittInvariants, ArithError> {
        invariants_of(self)
    }
}

impl fmt::Display for DiagonalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(format_rational).collect();
        write!(f, "<{}>", parts.join(", "))
    }
}

impl Serialize for DiagonalForm {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let parts: Vec<String> = self.entries.iter().map(format_rational).collect();
        parts.serialize(s)
    }
}

/// Complete set of isometry invariants of a form over Q.
///
/// `disc` is the signed squarefree integer representing the square class of
/// `(-1)^{m(m-1)/2} det`; `hasse` lists the places where `w(q) = sum_{i<j} (a_i, a_j)`
/// is nontrivial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WittInvariants {
    pub dim: usize,
    pub disc: BigInt,
    pub hasse: BTreeSet<Place>,
    pub sig: (usize, usize),
}

impl Serialize for WittInvariants {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("WittInvariants", 4)?;
        st.serialize_field("dim", &self.dim)?;
        st.serialize_field("disc", &self.disc.to_string())?;
        st.serialize_field("hasse", &self.hasse)?;
        st.serialize_field("sig", &[self.sig.0, self.sig.1])?;
        st.end()
    }
}

impl fmt::Display for WittInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let h: Vec<String> = self.hasse.iter().map(|p| p.to_string()).collect();
        write!(f, "dim {} disc {} hasse {{{}}} sig ({},{})", self.dim, self.disc, h.join(","), self.sig.0, self.sig.1)
    }
}

fn twist_sign(m: usize) -> bool {
    (m * (m.saturating_sub(1)) / 2) % 2 == 1
}

/// Set symmetric difference, the group law of ramification sets.
pub fn sym_diff(a: &BTreeSet<Place>, b: &BTreeSet<Place>) -> BTreeSet<Place> {
    a.symmetric_difference(b).copied().collect()
}

pub fn invariants_of(q: &DiagonalForm) -> Result<WittInvariants, ArithError> {
    let mut acc = WittInvariants::empty();
    for a in q.entries() {
        acc = orthogonal_sum(&acc, &WittInvariants::rank_one(a)?)?;
    }
    Ok(acc)
}

impl WittInvariants {
    pub fn empty() -> Self {
        WittInvariants { dim: 0, disc: BigInt::one(), hasse: BTreeSet::new(), sig: (0, 0) }
    }

    /// Invariants of `<a>`.
    pub fn rank_one(a: &Rational) -> Result<Self, ArithError> {
        let disc = squarefree_class(a)?;
        let sig = if a.is_positive() { (1, 0) } else { (0, 1) };
        Ok(WittInvariants { dim: 1, disc, hasse: BTreeSet::new(), sig })
    }

    /// Invariants of the hyperbolic form with `planes` copies of `<1,-1>`.
    pub fn hyperbolic(planes: usize) -> Self {
        invariants_of(&DiagonalForm::hyperbolic(planes)).expect("nonzero entries")
    }

    /// Square-class representative of the determinant.
    pub fn det(&self) -> BigInt {
        if twist_sign(self.dim) {
            -self.disc.clone()
        } else {
            self.disc.clone()
        }
    }

    pub fn det_rational(&self) -> Rational {
        big(&self.det())
    }

    pub fn disc_rational(&self) -> Rational {
        big(&self.disc)
    }

    /// `+1` or `-1`.
    pub fn hasse_at(&self, v: Place) -> i8 {
        if self.hasse.contains(&v) {
            -1
        } else {
            1
        }
    }

    /// `{inf, 2}` plus primes dividing the discriminant or in the Hasse set.
    pub fn bad_places(&self) -> BTreeSet<Place> {
        let mut out: BTreeSet<Place> = [Place::Real, Place::Prime(2)].into_iter().collect();
        for p in prime_divisors(&self.disc).expect("nonzero disc") {
            out.insert(Place::Prime(p));
        }
        out.extend(self.hasse.iter().copied());
        out
    }
}

pub fn orthogonal_sum(u: &WittInvariants, v: &WittInvariants) -> Result<WittInvariants, ArithError> {
    if u.dim == 0 {
        return Ok(v.clone());
    }
    if v.dim == 0 {
        return Ok(u.clone());
    }
    let dim = u.dim + v.dim;
    let du = u.det_rational();
    let dv = v.det_rational();
    let det = &du * &dv;
    let disc_q = if twist_sign(dim) { -det } else { det };
    let hasse = sym_diff(&sym_diff(&u.hasse, &v.hasse), &hilbert_ramification(&du, &dv)?);
    Ok(WittInvariants { dim, disc: squarefree_class(&disc_q)?, hasse, sig: (u.sig.0 + v.sig.0, u.sig.1 + v.sig.1) })
}

/// The `u'` with `u = u' ⟂ v`, when the signature allows it.
pub fn orthogonal_difference(u: &WittInvariants, v: &WittInvariants) -> Option<WittInvariants> {
    if v.dim > u.dim || v.sig.0 > u.sig.0 || v.sig.1 > u.sig.1 {
        return None;
    }
    let dim = u.dim - v.dim;
    if dim == 0 {
        return Some(WittInvariants::empty());
    }
    let dv = v.det_rational();
    let det_rest = u.det_rational() * &dv;
    let disc_q = if twist_sign(dim) { -det_rest.clone() } else { det_rest.clone() };
    let disc = squarefree_class(&disc_q).ok()?;
    let det_rest = big(&if twist_sign(dim) { -disc.clone() } else { disc.clone() });
    let hasse = if v.dim == 0 {
        u.hasse.clone()
    } else {
        sym_diff(&sym_diff(&u.hasse, &v.hasse), &hilbert_ramification(&det_rest, &dv).ok()?)
    };
    Some(WittInvariants { dim, disc, hasse, sig: (u.sig.0 - v.sig.0, u.sig.1 - v.sig.1) })
}

/// Clifford-invariant triviality via the case table on `n = dim/2 mod 4`.
pub fn is_trivial_clifford(u: &WittInvariants) -> Result<bool, FormError> {
    if u.dim % 2 == 1 {
        return Err(FormError::OddDimension(u.dim));
    }
    Ok(u.hasse == clifford_target(u)?)
}

/// The Hasse set that a form with trivial Clifford invariant must have.
pub fn clifford_target(u: &WittInvariants) -> Result<BTreeSet<Place>, FormError> {
    if u.dim % 2 == 1 {
        return Err(FormError::OddDimension(u.dim));
    }
    let m1 = -Rational::one();
    let d = u.disc_rational();
    Ok(match (u.dim / 2) % 4 {
        0 => hilbert_ramification(&m1, &d)?,
        1 => BTreeSet::new(),
        2 => hilbert_ramification(&m1, &(-d))?,
        _ => hilbert_ramification(&m1, &m1)?,
    })
}

pub fn equivalent(u: &WittInvariants, v: &WittInvariants) -> bool {
    u == v
}

/// Whether `u` and `v` become isometric over `Q_v`.
pub fn locally_equivalent(u: &WittInvariants, v: &WittInvariants, place: Place) -> Result<bool, ArithError> {
    if u.dim != v.dim {
        return Ok(false);
    }
    if u.dim == 0 {
        return Ok(true);
    }
    if place.is_real() {
        return Ok(u.sig == v.sig);
    }
    let ratio = u.disc_rational() * v.disc_rational();
    Ok(is_square_local(&ratio, place)? && u.hasse_at(place) == v.hasse_at(place))
}

pub fn is_hyperbolic_local(u: &WittInvariants, v: Place) -> Result<bool, ArithError> {
    if u.dim % 2 == 1 {
        return Ok(false);
    }
    locally_equivalent(u, &WittInvariants::hyperbolic(u.dim / 2), v)
}

pub fn is_isotropic_local(u: &WittInvariants, v: Place) -> Result<bool, ArithError> {
    if v.is_real() {
        return Ok(u.sig.0 > 0 && u.sig.1 > 0);
    }
    let d = u.det_rational();
    let m1 = -Rational::one();
    Ok(match u.dim {
        0 | 1 => false,
        2 => is_square_local(&(-d), v)?,
        3 => hilbert_symbol(&m1, &(-d), v)? == u.hasse_at(v),
        4 => !is_square_local(&d, v)? || u.hasse_at(v) == hilbert_symbol(&m1, &m1, v)?,
        _ => true,
    })
}

/// Hasse–Minkowski: isotropic over Q iff isotropic at every place. Places
/// outside `bad_places` never obstruct in dimension at least 3.
pub fn is_isotropic_global(u: &WittInvariants) -> Result<bool, ArithError> {
    match u.dim {
        0 | 1 => Ok(false),
        2 => Ok(u.disc.is_one()),
        _ => {
            for v in u.bad_places() {
                if !is_isotropic_local(u, v)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

/// Anisotropic kernel and Witt index.
pub fn witt_split(u: &WittInvariants) -> Result<(WittInvariants, usize), ArithError> {
    let h = WittInvariants::hyperbolic(1);
    let mut cur = u.clone();
    let mut planes = 0;
    while is_isotropic_global(&cur)? {
        cur = orthogonal_difference(&cur, &h).expect("isotropic forms are indefinite");
        planes += 1;
    }
    Ok((cur, planes))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::int;

    fn inv(v: &[i64]) -> WittInvariants {
        invariants_of(&DiagonalForm::from_ints(v)).unwrap()
    }

    fn places(v: &[u64]) -> BTreeSet<Place> {
        v.iter().map(|&p| if p == 0 { Place::Real } else { Place::Prime(p) }).collect()
    }

    #[test]
    fn small_invariants() {
        let u = inv(&[1, 1]);
        assert_eq!((u.dim, u.disc.clone(), u.hasse.clone(), u.sig), (2, BigInt::from(-1), BTreeSet::new(), (2, 0)));
        let h = inv(&[1, -1]);
        assert_eq!((h.disc.clone(), h.sig), (BigInt::from(1), (1, 1)));
        assert!(h.hasse.is_empty());
        // <-1,-1>: (-1,-1) ramified at inf and 2
        assert_eq!(inv(&[-1, -1]).hasse, places(&[0, 2]));
    }

    #[test]
    fn worked_trace_form() {
        // <2,-2,-1,-2>: pairwise symbols computed by hand.
        // (2,-2)=1, (2,-1)=1, (2,-2)=1, (-2,-1)=(-1,-1)(2,-1) -> {inf,2}, (-2,-2)=(-2,-1)->{inf,2}, (-1,-2)->{inf,2}
        // Three copies of {inf,2} cancel to one copy.
        let u = inv(&[2, -2, -1, -2]);
        assert_eq!(u.sig, (1, 3));
        assert_eq!(u.disc, BigInt::from(-2)); // det = -8
        assert_eq!(u.hasse, places(&[0, 2]));
        // h ⟂ <-1,-2>: the Clifford class is the quaternion algebra (-1,-2), which is not split.
        assert!(!is_trivial_clifford(&u).unwrap());
        assert!(is_trivial_clifford(&inv(&[-2, 2, 1, 2])).unwrap());
    }

    #[test]
    fn sums_and_differences() {
        let h4 = orthogonal_sum(&inv(&[1, -1]), &inv(&[1, -1])).unwrap();
        assert_eq!(h4, inv(&[1, -1, 1, -1]));
        assert_eq!((h4.disc.clone(), h4.sig), (BigInt::from(1), (2, 2)));
        let a = inv(&[3, -5, 7]);
        let b = inv(&[-2, 11]);
        let s = orthogonal_sum(&a, &b).unwrap();
        assert_eq!(s, inv(&[3, -5, 7, -2, 11]));
        assert_eq!(orthogonal_difference(&s, &b).unwrap(), a);
        assert_eq!(orthogonal_difference(&s, &a).unwrap(), b);
    }

    #[test]
    fn clifford_examples() {
        assert!(is_trivial_clifford(&inv(&[1, -1])).unwrap());
        // <1,1,1,1>: n=2, target (-1,-disc) with disc=1 -> {inf,2}; w = 6 copies of (1,1) -> trivial.
        assert!(!is_trivial_clifford(&inv(&[1, 1, 1, 1])).unwrap());
        assert!(is_trivial_clifford(&inv(&[-1, -1, -1, -1])).unwrap() == false);
        assert_eq!(is_trivial_clifford(&inv(&[1, 2, 3])), Err(FormError::OddDimension(3)));
    }

    #[test]
    fn equivalence_examples() {
        assert!(equivalent(&inv(&[1, 1]), &inv(&[2, 2])));
        assert!(!equivalent(&inv(&[1, 1]), &inv(&[1, -1])));
        assert!(equivalent(&inv(&[1, 7]), &inv(&[7, 1])));
    }

    #[test]
    fn isotropy_examples() {
        let u = inv(&[1, 1, -7]);
        assert!(!is_isotropic_local(&u, Place::Prime(7)).unwrap());
        assert!(!is_isotropic_global(&u).unwrap());
        assert!(is_isotropic_global(&inv(&[1, -1])).unwrap());
        assert!(!is_isotropic_local(&inv(&[1, 2, 3]), Place::Real).unwrap());
        assert!(is_isotropic_global(&inv(&[1, 1, -2])).unwrap());
    }

    #[test]
    fn witt_split_examples() {
        let (k, n) = witt_split(&inv(&[1, -1, 1, -1])).unwrap();
        assert_eq!((k.dim, n), (0, 2));
        let (k, n) = witt_split(&inv(&[1, 1, -7])).unwrap();
        assert_eq!((k, n), (inv(&[1, 1, -7]), 0));
        let (k, n) = witt_split(&inv(&[1, 1, -1, -7])).unwrap();
        assert_eq!((k.dim, n), (2, 1));
        assert_eq!(k, inv(&[1, -7]));
        assert!(!is_isotropic_global(&k).unwrap());
    }

    #[test]
    fn parse_forms() {
        let q = DiagonalForm::parse("1, 1/2,-7").unwrap();
        assert_eq!(q.entries()[1], Rational::new(1.into(), 2.into()));
        assert!(DiagonalForm::parse("1,0").is_err());
        match DiagonalForm::parse("1,x") {
            Err(FormError::Arith(ArithError::Parse { column, .. })) => assert_eq!(column, 3),
            other => panic!("{other:?}"),
        }
        assert_eq!(int(1), q.entries()[0]);
    }
}
