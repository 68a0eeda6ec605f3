//! Sturm sequences and exact real root isolation.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::poly::Poly;
use super::rational::{format_rational, sign, Rational};
use crate::error::ArithError;

/// A half-open interval `(low, high]` containing exactly one real root of `poly`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsolatingInterval {
    pub low: Rational,
    pub high: Rational,
    pub poly: Poly,
}

impl Serialize for IsolatingInterval {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("IsolatingInterval", 2)?;
        st.serialize_field("low", &format_rational(&self.low))?;
        st.serialize_field("high", &format_rational(&self.high))?;
        st.end()
    }
}

/// The Sturm chain `p, p', -rem(p, p'), ...`.
pub fn sturm_chain(p: &Poly) -> Vec<Poly> {
    let mut chain = vec![p.clone(), p.derivative()];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            break;
        }
        let r = chain[n - 2].rem(&chain[n - 1]).expect("nonzero divisor");
        if r.is_zero() {
            break;
        }
        chain.push(-&r);
    }
    chain
}

fn sign_changes(chain: &[Poly], x: &Rational) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for q in chain {
        let s = sign(&q.eval(x));
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

fn sign_changes_at_infinity(chain: &[Poly], positive: bool) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for q in chain {
        let s = q.sign_at_infinity(positive);
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Number of roots in `(a, b]`; valid for squarefree `p` whatever the signs at the endpoints.
fn count_in(chain: &[Poly], a: &Rational, b: &Rational) -> usize {
    sign_changes(chain, a) - sign_changes(chain, b)
}

pub fn sturm_real_root_count(p: &Poly) -> Result<usize, ArithError> {
    p.require_squarefree()?;
    if p.is_constant() {
        return Ok(0);
    }
    let chain = sturm_chain(p);
    Ok(sign_changes_at_infinity(&chain, false) - sign_changes_at_infinity(&chain, true))
}

/// Number of roots of squarefree `p` in `(a, b]`.
pub fn count_roots_in(p: &Poly, a: &Rational, b: &Rational) -> Result<usize, ArithError> {
    p.require_squarefree()?;
    if p.is_constant() {
        return Ok(0);
    }
    Ok(count_in(&sturm_chain(p), a, b))
}

/// Every real root lies strictly inside `(-B, B)`.
pub fn cauchy_bound(p: &Poly) -> Rational {
    let lc = p.lc().abs();
    let m =
        p.coeffs().iter().take(p.deg()).map(|c| c.abs() / &lc).fold(Rational::zero(), |a, b| if b > a { b } else { a });
    m + Rational::one()
}

pub fn isolate_real_roots(p: &Poly) -> Result<Vec<IsolatingInterval>, ArithError> {
    p.require_squarefree()?;
    if p.is_constant() {
        return Ok(Vec::new());
    }
    let chain = sturm_chain(p);
    let b = cauchy_bound(p);
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    while let Some((lo, hi)) = stack.pop() {
        match count_in(&chain, &lo, &hi) {
            0 => {}
            1 => out.push(IsolatingInterval { low: lo, high: hi, poly: p.clone() }),
            _ => {
                let mid = (&lo + &hi) / Rational::from_integer(2.into());
                stack.push((lo, mid.clone()));
                stack.push((mid, hi));
            }
        }
    }
    out.sort_by(|x, y| x.low.cmp(&y.low));
    Ok(out)
}

impl IsolatingInterval {
    /// Halve the interval, keeping the half that holds the root.
    pub fn bisect(&self) -> IsolatingInterval {
        let mid = (&self.low + &self.high) / Rational::from_integer(2.into());
        let chain = sturm_chain(&self.poly);
        if count_in(&chain, &self.low, &mid) == 1 {
            IsolatingInterval { low: self.low.clone(), high: mid, poly: self.poly.clone() }
        } else {
            IsolatingInterval { low: mid, high: self.high.clone(), poly: self.poly.clone() }
        }
    }

    /// Refine until the width is at most `width`.
    pub fn refine_to(&self, width: &Rational) -> IsolatingInterval {
        let mut cur = self.clone();
        while &(&cur.high - &cur.low) > width {
            cur = cur.bisect();
        }
        cur
    }

    pub fn width(&self) -> Rational {
        &self.high - &self.low
    }

    /// Whether the root is exactly `high`.
    pub fn root_is_high(&self) -> bool {
        self.poly.eval(&self.high).is_zero()
    }
}

/// Exact sign of `q` at the root isolated by `root`.
pub fn sign_at_root(q: &Poly, root: &IsolatingInterval) -> i8 {
    if q.is_zero() {
        return 0;
    }
    if q.is_constant() {
        return sign(&q.lc());
    }
    let g = q.gcd(&root.poly);
    if !g.is_constant() {
        // g divides a squarefree polynomial, so it is squarefree as well.
        let chain = sturm_chain(&g);
        if count_in(&chain, &root.low, &root.high) == 1 {
            return 0;
        }
    }
    let qs = q.squarefree_part().expect("nonzero");
    let qchain = sturm_chain(&qs);
    let mut cur = root.clone();
    while count_in(&qchain, &cur.low, &cur.high) > 0 {
        cur = cur.bisect();
    }
    sign(&q.eval(&cur.high))
}
