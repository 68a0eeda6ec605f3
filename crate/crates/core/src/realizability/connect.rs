//! Connectedness of 𝒞(E,q): factors i, j are linked when some place is
//! non-split in both. Links are searched among ∞ and the primes up to a bound.

use std::collections::BTreeSet;

use serde::Serialize;

use super::local::{exists_local_assignment, Instance, SplitStatus};
use super::{Answer, Reason, Verdict};
use crate::arith::local::{primes_up_to, Place};
use crate::error::RealizabilityError;
use crate::forms::WittInvariants;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Linkage {
    pub i: usize,
    pub j: usize,
    pub place: Place,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorGraph {
    pub factors: usize,
    /// First common non-split place found for each linked pair.
    pub links: Vec<Linkage>,
    /// (factor, prime) pairs skipped for lack of splitting data.
    pub wild_skipped: Vec<(usize, u64)>,
    pub bound: u64,
}

impl FactorGraph {
    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.factors).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            parent[x] = r;
            r
        }
        for l in &self.links {
            let (a, b) = (find(&mut parent, l.i), find(&mut parent, l.j));
            parent[a.max(b)] = a.min(b);
        }
        let mut comps: Vec<Vec<usize>> = Vec::new();
        for x in 0..self.factors {
            let root = find(&mut parent, x);
            match comps.iter_mut().find(|c| c[0] == root) {
                Some(c) => c.push(x),
                None => comps.push(vec![x]),
            }
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }
}

/// Links among {∞} ∪ {p ≤ bound}.
pub fn factor_graph(inst: &Instance) -> Result<FactorGraph, RealizabilityError> {
    let r = inst.e.factors().len();
    let primes = primes_up_to(inst.bound);
    let mut wild_skipped = Vec::new();
    let mut nonsplit: Vec<BTreeSet<Place>> = Vec::with_capacity(r);
    for i in 0..r {
        let mut set = BTreeSet::new();
        if inst.nonsplit_at(i, Place::Real)? {
            set.insert(Place::Real);
        }
        for &p in &primes {
            match inst.status(i, p) {
                SplitStatus::NotAllSplit => {
                    set.insert(Place::Prime(p));
                }
                SplitStatus::Wild => wild_skipped.push((i, p)),
                SplitStatus::AllSplit => {}
            }
        }
        nonsplit.push(set);
    }
    let mut links = Vec::new();
    for i in 0..r {
        for j in i + 1..r {
            if let Some(&place) = nonsplit[i].intersection(&nonsplit[j]).next() {
                links.push(Linkage { i, j, place });
            }
        }
    }
    Ok(FactorGraph { factors: r, links, wild_skipped, bound: inst.bound })
}

/// Whether 𝒞(E,q) contains a connected element.
///
/// Within a component of the linkage graph the parity of Σ|S_i(C)| does not
/// depend on C, so C is connected iff every component has even parity. Links
/// beyond the bound are unknown, hence an odd component gives UnknownWithinBound.
pub fn connectedness(inst: &Instance, q: &WittInvariants) -> Result<Verdict, RealizabilityError> {
    let search = exists_local_assignment(inst, q)?;
    let Some(assignment) = search.assignment else {
        return Ok(search.verdict);
    };
    let graph = factor_graph(inst)?;
    let odd = assignment.odd_factors();
    let comps = graph.components();
    let mut reasons = search.verdict.reasons;
    let mut odd_components = Vec::new();
    for c in &comps {
        let parity = c.iter().filter(|&&i| odd[i]).count() % 2 == 1;
        reasons.push(Reason::new(None, format!("component {c:?} has an even number of odd |S_i(C)|"), !parity));
        if parity {
            odd_components.push(c.clone());
        }
    }
    let answer = if odd_components.is_empty() { Answer::Yes } else { Answer::UnknownWithinBound };
    Ok(Verdict::with_answer(answer, reasons)
        .witness("assignment", &assignment)
        .witness("odd_factors", &odd)
        .witness("graph", &graph)
        .witness("odd_components", &odd_components)
        .with_bound(inst.bound))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Poly;
    use crate::etale::{canonical_trace_form, EtaleInvolution, InvolutionFactor};

    fn quad(m: &str, d: &str) -> InvolutionFactor {
        InvolutionFactor::quadratic(&Poly::parse(m).unwrap(), &Poly::parse(d).unwrap()).unwrap()
    }

    #[test]
    fn single_factor_is_connected() {
        let inst = Instance::new(EtaleInvolution::new(vec![quad("t", "-7")]).unwrap());
        let q = canonical_trace_form(&inst.e).unwrap().invariants;
        let v = connectedness(&inst, &q).unwrap();
        assert_eq!(v.answer, Answer::Yes);
    }

    #[test]
    fn imaginary_pair_links_at_infinity() {
        let inst = Instance::new(EtaleInvolution::new(vec![quad("t", "-1"), quad("t", "-3")]).unwrap());
        let g = factor_graph(&inst).unwrap();
        assert_eq!(g.links, vec![Linkage { i: 0, j: 1, place: Place::Real }]);
    }

    #[test]
    fn real_pair_links_at_a_prime() {
        // Q(√2) and Q(√3) both ramify at 2. Q(√17) and Q(√-7) split at 2 and are both inert at 3.
        let inst = Instance::new(EtaleInvolution::new(vec![quad("t", "2"), quad("t", "3")]).unwrap()).with_bound(50);
        assert_eq!(factor_graph(&inst).unwrap().links[0].place, Place::Prime(2));
        let inst = Instance::new(EtaleInvolution::new(vec![quad("t", "17"), quad("t", "-7")]).unwrap()).with_bound(50);
        assert_eq!(factor_graph(&inst).unwrap().links[0].place, Place::Prime(3));
    }

    #[test]
    fn link_beyond_bound_is_unknown() {
        use crate::arith::local::{legendre, squarefree_class};
        use crate::arith::rational::int;
        use crate::forms::{invariants_of, orthogonal_sum, DiagonalForm};
        let bound = 13;
        let odd_primes: Vec<u64> = primes_up_to(bound).into_iter().skip(1).collect();
        // Squarefree d ≡ 1 mod 8, a square mod every odd p ≤ bound: Q(√d) splits at ∞ and all p ≤ bound.
        let d = (1..100_000i64)
            .map(|k| 8 * k + 1)
            .find(|&d| {
                squarefree_class(&int(d)).unwrap() == d.into()
                    && odd_primes.iter().all(|&p| legendre(&d.into(), p) == 1)
            })
            .unwrap();
        let inst = Instance::new(EtaleInvolution::new(vec![quad("t", "-1"), quad("t", &d.to_string())]).unwrap())
            .with_bound(bound);
        let g = factor_graph(&inst).unwrap();
        assert!(g.links.is_empty());
        // Flip w(q) at 3 (only Q(i) non-split) and at some p where only Q(√d) is non-split.
        // Both components then have odd parity.
        let p2 = (5u64..)
            .find(|&p| crate::arith::local::is_prime_u64(p) && p % 4 == 1 && legendre(&d.into(), p) == -1)
            .unwrap();
        let base = orthogonal_sum(
            &invariants_of(&DiagonalForm::from_ints(&[1, 1])).unwrap(),
            &invariants_of(&DiagonalForm::from_ints(&[1, -d])).unwrap(),
        )
        .unwrap();
        let mut q = base.clone();
        for p in [3, p2] {
            if !q.hasse.remove(&Place::Prime(p)) {
                q.hasse.insert(Place::Prime(p));
            }
        }
        assert_eq!(connectedness(&inst, &base).unwrap().answer, Answer::Yes);
        let v = connectedness(&inst, &q).unwrap();
        assert_eq!(v.answer, Answer::UnknownWithinBound);
        assert_eq!(v.bound, Some(bound));
    }
}
