//! Construct an explicit diagonal form with prescribed invariants.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::Serialize;

use super::{invariants_of, orthogonal_difference, DiagonalForm, WittInvariants};
use crate::arith::local::{is_square_local, primes_up_to, Place};
use crate::arith::rational::{big, Rational};

/// Why a tuple of invariants is not the tuple of any form over Q.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Infeasible {
    Violated(String),
    SearchExhausted(String),
}

impl fmt::Display for Infeasible {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Infeasible::Violated(s) => write!(f, "infeasible: {s}"),
            Infeasible::SearchExhausted(s) => write!(f, "search exhausted: {s}"),
        }
    }
}

const EXTRA_PRIME_BOUND: u64 = 2000;

/// Classical consistency conditions for a tuple to come from a form over Q.
pub fn check_feasible(u: &WittInvariants) -> Result<(), Infeasible> {
    let bad = |s: &str| Err(Infeasible::Violated(s.to_string()));
    if u.sig.0 + u.sig.1 != u.dim {
        return bad("signature does not add up to the dimension");
    }
    if u.disc == BigInt::from(0) {
        return bad("zero discriminant");
    }
    if u.dim == 0 {
        if !u.disc.is_one() || !u.hasse.is_empty() {
            return bad("the empty form has discriminant 1 and no ramification");
        }
        return Ok(());
    }
    if u.hasse.len() % 2 == 1 {
        return bad("odd number of ramified places (Hilbert reciprocity)");
    }
    let s = u.sig.1;
    let det_negative = u.det().is_negative();
    if det_negative != (s % 2 == 1) {
        return bad("sign of the determinant disagrees with the signature");
    }
    if u.hasse.contains(&Place::Real) != ((s * s.saturating_sub(1) / 2) % 2 == 1) {
        return bad("Hasse invariant at the real place disagrees with the signature");
    }
    match u.dim {
        1 if !u.hasse.is_empty() => bad("a one-dimensional form has trivial Hasse invariant"),
        2 => {
            let d = u.disc_rational();
            for v in u.bad_places() {
                if u.hasse.contains(&v) && is_square_local(&d, v).expect("valid place") {
                    return Err(Infeasible::Violated(format!(
                        "binary form hyperbolic at {v} but with nontrivial Hasse invariant there"
                    )));
                }
            }
            Ok(())
        }
        _ => Ok(()),
    }
}

/// Candidate values `±(product of a subset of primes) * (optional extra prime)`,
/// enumerated in a fixed order.
fn candidates(u: &WittInvariants, signs: &[i64]) -> impl Iterator<Item = Rational> {
    let primes: Vec<u64> = u
        .bad_places()
        .into_iter()
        .filter_map(|v| match v {
            Place::Prime(p) => Some(p),
            Place::Real => None,
        })
        .collect();
    let extras: Vec<u64> =
        std::iter::once(1).chain(primes_up_to(EXTRA_PRIME_BOUND).into_iter().filter(|p| !primes.contains(p))).collect();
    let signs = signs.to_vec();
    extras.into_iter().flat_map(move |q| {
        let primes = primes.clone();
        let signs = signs.clone();
        (0u64..(1 << primes.len())).flat_map(move |mask| {
            let mut n = BigInt::from(q);
            for (i, p) in primes.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    n *= *p;
                }
            }
            let n = n.clone();
            signs.clone().into_iter().map(move |s| big(&(&n * s)))
        })
    })
}

fn allowed_signs(u: &WittInvariants) -> Vec<i64> {
    let mut v = Vec::new();
    if u.sig.0 > 0 {
        v.push(1);
    }
    if u.sig.1 > 0 {
        v.push(-1);
    }
    v
}

/// An explicit diagonal form whose invariants equal `u`, or the reason none exists.
pub fn realize_invariants(u: &WittInvariants) -> Result<DiagonalForm, Infeasible> {
    check_feasible(u)?;
    let mut entries: Vec<Rational> = Vec::new();
    let mut cur = u.clone();
    while cur.dim >= 4 {
        let a = if cur.sig.0 > 0 { Rational::one() } else { -Rational::one() };
        let rest = peel(&cur, &a).expect("sign chosen from the signature");
        entries.push(a);
        cur = rest;
    }
    if cur.dim == 3 {
        let a = candidates(&cur, &allowed_signs(&cur))
            .find(|a| peel(&cur, a).is_some_and(|rest| check_feasible(&rest).is_ok()))
            .ok_or_else(|| Infeasible::SearchExhausted(format!("no first entry found for {cur}")))?;
        cur = peel(&cur, &a).unwrap();
        entries.push(a);
    }
    if cur.dim == 2 {
        let d = cur.det_rational();
        let target = cur.clone();
        let a = candidates(&cur, &allowed_signs(&cur))
            .find(|a| {
                let form = DiagonalForm::from_rationals(vec![a.clone(), a * &d]);
                invariants_of(&form).is_ok_and(|w| w == target)
            })
            .ok_or_else(|| Infeasible::SearchExhausted(format!("no binary form found for {cur}")))?;
        entries.push(a.clone());
        entries.push(a * d);
        cur = WittInvariants::empty();
    }
    if cur.dim == 1 {
        entries.push(cur.disc_rational());
    }
    let form = DiagonalForm::from_rationals(entries);
    debug_assert_eq!(invariants_of(&form).ok().as_ref(), Some(u));
    Ok(form)
}

fn peel(u: &WittInvariants, a: &Rational) -> Option<WittInvariants> {
    let one = WittInvariants::rank_one(a).ok()?;
    orthogonal_difference(u, &one)
}

impl DiagonalForm {
    pub(crate) fn from_rationals(entries: Vec<Rational>) -> Self {
        DiagonalForm::new(entries).expect("nonzero entries")
    }
}
