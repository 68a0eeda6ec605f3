//! Local realizability of (E, q) and the search for an element of 𝒞(E,q).

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{Answer, Reason, Verdict};
use crate::arith::local::{hilbert_symbol, is_square_local, prime_divisors, valuation, Place};
use crate::arith::modp::PolyModP;
use crate::arith::rational::{big, Rational};
use crate::error::RealizabilityError;
use crate::etale::{EtaleInvolution, FactorKind, InvolutionFactor};
use crate::forms::{is_hyperbolic_local, WittInvariants};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SplitStatus {
    AllSplit,
    NotAllSplit,
    Wild,
}

/// Whether every place of F above p splits in E = F(√d).
///
/// Exact for F = Q at every prime. Otherwise p must be odd, coprime to the
/// discriminant of the fixed polynomial, and d must be a unit above p.
pub fn split_place_test(f: &InvolutionFactor, p: u64) -> SplitStatus {
    let d = match f.kind() {
        FactorKind::Split => return SplitStatus::AllSplit,
        FactorKind::Quadratic(d) => d,
    };
    let place = Place::Prime(p);
    if f.degree() == 1 {
        // d is rational once reduced modulo a linear polynomial.
        let square = is_square_local(&d.rep().coeff(0), place).expect("nonzero d");
        return if square { SplitStatus::AllSplit } else { SplitStatus::NotAllSplit };
    }
    if p == 2 {
        return SplitStatus::Wild;
    }
    let m = f.fixed_poly();
    let disc = m.discriminant().expect("fixed polynomial is nonconstant");
    if valuation(&disc, p) != 0 || valuation(&d.norm(), p) != 0 {
        return SplitStatus::Wild;
    }
    let (Some(mbar), Some(dbar)) = (PolyModP::from_poly(m, p), PolyModP::from_poly(d.rep(), p)) else {
        return SplitStatus::Wild;
    };
    if mbar.factor_squarefree().iter().all(|g| g.is_square_in_residue_field(&dbar)) {
        SplitStatus::AllSplit
    } else {
        SplitStatus::NotAllSplit
    }
}

/// (E, σ) with user-supplied splitting data at wild primes and a prime search bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub e: EtaleInvolution,
    /// Per factor: prime → status, taking precedence over `split_place_test`.
    pub overrides: Vec<BTreeMap<u64, SplitStatus>>,
    pub bound: u64,
}

pub const DEFAULT_LINK_BOUND: u64 = 1000;

impl Instance {
    pub fn new(e: EtaleInvolution) -> Self {
        let r = e.factors().len();
        Instance { e, overrides: vec![BTreeMap::new(); r], bound: DEFAULT_LINK_BOUND }
    }

    pub fn with_override(mut self, factor: usize, p: u64, status: SplitStatus) -> Self {
        self.overrides[factor].insert(p, status);
        self
    }

    pub fn with_bound(mut self, bound: u64) -> Self {
        self.bound = bound;
        self
    }

    pub fn sub(&self, indices: &[usize]) -> Instance {
        Instance {
            e: self.e.sub(indices),
            overrides: indices.iter().map(|&i| self.overrides[i].clone()).collect(),
            bound: self.bound,
        }
    }

    pub fn status(&self, factor: usize, p: u64) -> SplitStatus {
        match self.overrides[factor].get(&p) {
            Some(&s) if s != SplitStatus::Wild => s,
            _ => split_place_test(&self.e.factors()[factor], p),
        }
    }

    /// Whether some place of F_i above v fails to split in E_i.
    pub fn nonsplit_at(&self, factor: usize, v: Place) -> Result<bool, RealizabilityError> {
        let f = &self.e.factors()[factor];
        match v {
            Place::Real => Ok(f.real_places().iter().any(|tau| f.ramified_at(tau))),
            Place::Prime(p) => match self.status(factor, p) {
                SplitStatus::AllSplit => Ok(false),
                SplitStatus::NotAllSplit => Ok(true),
                SplitStatus::Wild => Err(RealizabilityError::WildPrimeDataMissing { factor, p }),
            },
        }
    }

    /// Places outside of which every factor is tame, d is a unit and q is unimodular.
    pub fn bad_places(&self, q: &WittInvariants) -> Result<BTreeSet<Place>, RealizabilityError> {
        let mut out = q.bad_places();
        let mut add = |x: &Rational| -> Result<(), RealizabilityError> {
            for n in [x.numer(), x.denom()] {
                out.extend(prime_divisors(n)?.into_iter().map(Place::Prime));
            }
            Ok(())
        };
        for f in self.e.factors() {
            let m = f.fixed_poly();
            add(&m.discriminant()?)?;
            for c in m.coeffs().iter().filter(|c| !c.is_zero()) {
                add(c)?;
            }
            if let FactorKind::Quadratic(d) = f.kind() {
                add(&d.norm())?;
                for c in d.rep().coeffs().iter().filter(|c| !c.is_zero()) {
                    add(c)?;
                }
            }
        }
        for o in &self.overrides {
            out.extend(o.keys().map(|&p| Place::Prime(p)));
        }
        Ok(out)
    }
}

/// Real-place counts of a sub-algebra: unramified real, ramified real, complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RealCounts {
    pub rho: usize,
    pub ramified: usize,
    pub complex: usize,
}

impl RealCounts {
    pub fn of(e: &EtaleInvolution) -> Self {
        RealCounts { rho: e.rho_infinity(), ramified: e.ramified_real(), complex: e.complex_places() }
    }

    pub fn of_factor(f: &InvolutionFactor) -> Self {
        let real = f.real_places();
        let ramified = real.iter().filter(|tau| f.ramified_at(tau)).count();
        RealCounts { rho: real.len() - ramified, ramified, complex: f.complex_places() }
    }

    /// (r', s') with sig = (2r' + ρ, 2s' + ρ) and r', s' ≥ #complex places.
    pub fn shape(&self, sig: (usize, usize)) -> Option<(usize, usize)> {
        let (r, s) = sig;
        if r < self.rho || s < self.rho || (r - self.rho) % 2 == 1 || (s - self.rho) % 2 == 1 {
            return None;
        }
        let (r1, s1) = ((r - self.rho) / 2, (s - self.rho) / 2);
        (r1 >= self.complex && s1 >= self.complex).then_some((r1, s1))
    }
}

fn check_dim(e: &EtaleInvolution, q: &WittInvariants) -> Result<(), RealizabilityError> {
    if q.dim != e.rank() {
        return Err(RealizabilityError::DimensionMismatch { form: q.dim, algebra: e.rank() });
    }
    Ok(())
}

/// Whether (E_v, q_v) is realizable.
pub fn local_orth_realizable(inst: &Instance, q: &WittInvariants, v: Place) -> Result<Verdict, RealizabilityError> {
    check_dim(&inst.e, q)?;
    match v {
        Place::Real => {
            let counts = RealCounts::of(&inst.e);
            let shape = counts.shape(q.sig);
            let cond = format!(
                "(c) signature ({},{}) = (2r'+{rho}, 2s'+{rho}) with r', s' >= {c}",
                q.sig.0,
                q.sig.1,
                rho = counts.rho,
                c = counts.complex
            );
            let mut verdict = Verdict::from_reasons(vec![Reason::new(Some(v), cond, shape.is_some())]);
            if let Some(rs) = shape {
                verdict = verdict.witness("r_s", &rs);
            }
            Ok(verdict.witness("real_counts", &counts))
        }
        Place::Prime(p) => {
            let mut all_split = true;
            for i in 0..inst.e.factors().len() {
                if inst.nonsplit_at(i, v)? {
                    all_split = false;
                }
            }
            let reason = if all_split {
                Reason::new(Some(v), "(a) split place: q_v hyperbolic", is_hyperbolic_local(q, v)?)
            } else {
                let ratio = q.disc_rational() * big(&inst.e.discriminant());
                Reason::new(Some(v), "(b) disc(q_v) = disc(E_v)", is_square_local(&ratio, Place::Prime(p))?)
            };
            Ok(Verdict::from_reasons(vec![reason]))
        }
    }
}

/// Local invariants of one q_i^v.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalInvariants {
    pub dim: usize,
    /// Global representative of the square class.
    #[serde(serialize_with = "as_string")]
    pub disc: BigInt,
    /// w(q_i^v) = 1.
    pub hasse: bool,
    pub sig: Option<(usize, usize)>,
}

fn as_string<S: serde::Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// An element of 𝒞(E,q) given at the bad places; w(q_i^v) = 0 elsewhere.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalAssignment {
    pub places: BTreeMap<Place, Vec<LocalInvariants>>,
}

impl LocalAssignment {
    /// Parity of |S_i(C)| for each factor i.
    pub fn odd_factors(&self) -> Vec<bool> {
        let r = self.places.values().next().map_or(0, Vec::len);
        (0..r).map(|i| self.places.values().filter(|v| v[i].hasse).count() % 2 == 1).collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LocalSearch {
    pub verdict: Verdict,
    pub assignment: Option<LocalAssignment>,
}

/// Smallest place where the rational x is not a square.
fn nonsquare_witness(x: &Rational) -> Result<Place, RealizabilityError> {
    if x.is_negative() {
        return Ok(Place::Real);
    }
    for n in [x.numer(), x.denom()] {
        for p in prime_divisors(n)? {
            if valuation(x, p) % 2 != 0 {
                return Ok(Place::Prime(p));
            }
        }
    }
    Ok(Place::Prime(2))
}

fn det_of(dim: usize, disc: &BigInt) -> Rational {
    let d = big(disc);
    if (dim / 2) % 2 == 1 {
        -d
    } else {
        d
    }
}

fn finite_tuple(inst: &Instance, q: &WittInvariants, p: u64) -> Result<Vec<LocalInvariants>, RealizabilityError> {
    let v = Place::Prime(p);
    let mut tuple = Vec::new();
    let mut free = None;
    for (i, f) in inst.e.factors().iter().enumerate() {
        let dim = 2 * f.degree();
        if inst.nonsplit_at(i, v)? {
            free.get_or_insert(i);
            tuple.push(LocalInvariants { dim, disc: f.discriminant(), hasse: false, sig: None });
        } else {
            let h = WittInvariants::hyperbolic(f.degree());
            tuple.push(LocalInvariants { dim, disc: BigInt::one(), hasse: h.hasse_at(v) == -1, sig: None });
        }
    }
    // w(⟂ q_i) = Σ w(q_i) + Σ_{i<j} (det q_i, det q_j)
    let total = |t: &[LocalInvariants]| -> Result<bool, RealizabilityError> {
        let mut w = false;
        let mut det = Rational::one();
        for x in t {
            let d = det_of(x.dim, &x.disc);
            w ^= x.hasse ^ (hilbert_symbol(&det, &d, v)? == -1);
            det *= d;
        }
        Ok(w)
    };
    let target = q.hasse_at(v) == -1;
    if total(&tuple)? != target {
        if let Some(i) = free {
            tuple[i].hasse ^= true;
        }
    }
    Ok(tuple)
}

fn real_tuple(inst: &Instance, q: &WittInvariants) -> Vec<LocalInvariants> {
    let counts = RealCounts::of(&inst.e);
    let mut k = (q.sig.0 - counts.rho - 2 * counts.complex) / 2;
    inst.e
        .factors()
        .iter()
        .map(|f| {
            let c = RealCounts::of_factor(f);
            let ki = k.min(c.ramified);
            k -= ki;
            let base = c.rho + 2 * c.complex;
            let sig = (base + 2 * ki, base + 2 * (c.ramified - ki));
            let m = f.degree();
            let s = sig.1;
            let disc_negative = (m + s) % 2 == 1;
            LocalInvariants {
                dim: 2 * m,
                disc: if disc_negative { -BigInt::one() } else { BigInt::one() },
                hasse: (s * s.saturating_sub(1) / 2) % 2 == 1,
                sig: Some(sig),
            }
        })
        .collect()
}

/// Search for (q_i^v) ∈ 𝒞(E,q). Returns a witness at the bad places when one exists.
pub fn exists_local_assignment(inst: &Instance, q: &WittInvariants) -> Result<LocalSearch, RealizabilityError> {
    check_dim(&inst.e, q)?;
    let disc_e = inst.e.discriminant();
    let mut reasons = Vec::new();
    if q.disc != disc_e {
        let ratio = q.disc_rational() * big(&disc_e);
        let v = nonsquare_witness(&ratio)?;
        reasons.push(Reason::new(Some(v), format!("disc(q) = disc(E) locally ({} vs {})", q.disc, disc_e), false));
        let verdict = Verdict::from_reasons(reasons).witness("disc_witness", &v);
        return Ok(LocalSearch { verdict, assignment: None });
    }
    reasons.push(Reason::new(None, "disc(q) = disc(E)", true));
    let bad = inst.bad_places(q)?;
    for &v in &bad {
        reasons.extend(local_orth_realizable(inst, q, v)?.reasons);
    }
    if reasons.iter().any(|r| !r.pass) {
        return Ok(LocalSearch { verdict: Verdict::from_reasons(reasons), assignment: None });
    }
    let mut places = BTreeMap::new();
    for &v in &bad {
        let t = match v {
            Place::Real => real_tuple(inst, q),
            Place::Prime(p) => finite_tuple(inst, q, p)?,
        };
        places.insert(v, t);
    }
    let assignment = LocalAssignment { places };
    let verdict = Verdict::with_answer(Answer::Yes, reasons).witness("assignment", &assignment);
    Ok(LocalSearch { verdict, assignment: Some(assignment) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::local::legendre;
    use crate::arith::Poly;
    use crate::etale::canonical_trace_form;
    use crate::forms::{invariants_of, orthogonal_sum, DiagonalForm};

    fn p(s: &str) -> Poly {
        Poly::parse(s).unwrap()
    }

    fn quad(m: &str, d: &str) -> InvolutionFactor {
        InvolutionFactor::quadratic(&p(m), &p(d)).unwrap()
    }

    fn inst(fs: Vec<InvolutionFactor>) -> Instance {
        Instance::new(EtaleInvolution::new(fs).unwrap())
    }

    #[test]
    fn split_test_matches_legendre() {
        for &pr in &[3u64, 5, 7, 11, 13, 17, 19, 23] {
            for d in [-1i64, 2, 3, -5, 6] {
                if d % pr as i64 == 0 {
                    continue;
                }
                let f = quad("t", &d.to_string());
                let expected =
                    if legendre(&BigInt::from(d), pr) == 1 { SplitStatus::AllSplit } else { SplitStatus::NotAllSplit };
                assert_eq!(split_place_test(&f, pr), expected, "d = {d}, p = {pr}");
            }
        }
        assert_eq!(split_place_test(&quad("t", "4"), 7), SplitStatus::AllSplit);
        assert_eq!(split_place_test(&quad("t^2 - 5", "t"), 5), SplitStatus::Wild);
        assert_eq!(split_place_test(&quad("t^2 - 5", "t"), 2), SplitStatus::Wild);
    }

    #[test]
    fn split_test_degree_two() {
        // F = Q(i), d = 3. At p ≡ 1 mod 4 two places of degree 1: split iff (3/p) = 1.
        // At p ≡ 3 mod 4 one place with residue field F_{p²}, where every element of F_p is a square.
        let f = quad("t^2 + 1", "3");
        for &pr in &[5u64, 7, 11, 13, 17, 19, 29, 31, 37, 41] {
            let expected = if pr % 4 == 3 || legendre(&BigInt::from(3), pr) == 1 {
                SplitStatus::AllSplit
            } else {
                SplitStatus::NotAllSplit
            };
            assert_eq!(split_place_test(&f, pr), expected, "p = {pr}");
        }
    }

    #[test]
    fn overrides_take_precedence() {
        let i = inst(vec![quad("t^2 - 5", "t")]);
        assert_eq!(
            i.nonsplit_at(0, Place::Prime(5)),
            Err(RealizabilityError::WildPrimeDataMissing { factor: 0, p: 5 })
        );
        let i = i.with_override(0, 5, SplitStatus::NotAllSplit);
        assert_eq!(i.nonsplit_at(0, Place::Prime(5)), Ok(true));
    }

    #[test]
    fn real_place_examples() {
        // Q(2^(1/4)) over Q(√2): ρ = 1.
        let i = inst(vec![quad("t^2 - 2", "t")]);
        let q = invariants_of(&DiagonalForm::from_ints(&[1, 1, 1, 1])).unwrap();
        assert_eq!(local_orth_realizable(&i, &q, Place::Real).unwrap().answer, Answer::No);
        let q = invariants_of(&DiagonalForm::from_ints(&[1, -1, -1, -2])).unwrap();
        let v = local_orth_realizable(&i, &q, Place::Real).unwrap();
        assert!(v.is_yes());
        assert_eq!(v.witnesses["r_s"], serde_json::json!([0, 1]));
    }

    #[test]
    fn complex_places_force_hyperbolic_blocks() {
        // F = Q(i) has one complex place, which contributes (2,2).
        let i = inst(vec![quad("t^2 + 1", "3")]);
        assert!(RealCounts::of(&i.e).shape((2, 2)).is_some());
        assert!(RealCounts::of(&i.e).shape((4, 0)).is_none());
    }

    #[test]
    fn canonical_form_is_locally_realizable() {
        let i = inst(vec![quad("t^2 - 2", "t"), quad("t", "-1")]);
        let q = canonical_trace_form(&i.e).unwrap().invariants;
        let s = exists_local_assignment(&i.with_override(0, 2, SplitStatus::NotAllSplit), &q).unwrap();
        assert!(s.verdict.is_yes(), "{:?}", s.verdict);
        let a = s.assignment.unwrap();
        // The tuple at each place sums to q_v.
        for (v, t) in &a.places {
            let mut acc = WittInvariants::empty();
            for x in t {
                let mut w = WittInvariants {
                    dim: x.dim,
                    disc: x.disc.clone(),
                    hasse: BTreeSet::new(),
                    sig: x.sig.unwrap_or((x.dim, 0)),
                };
                if x.hasse {
                    w.hasse.insert(*v);
                }
                acc = orthogonal_sum(&acc, &w).unwrap();
            }
            assert_eq!(acc.hasse.contains(v), q.hasse.contains(v), "place {v}");
            if *v == Place::Real {
                assert_eq!(acc.sig, q.sig);
            }
        }
    }

    #[test]
    fn disc_mismatch_names_a_place() {
        let i = inst(vec![quad("t", "-1")]);
        let q = invariants_of(&DiagonalForm::from_ints(&[1, 3])).unwrap();
        let s = exists_local_assignment(&i, &q).unwrap();
        assert_eq!(s.verdict.answer, Answer::No);
        assert_eq!(s.verdict.witnesses["disc_witness"], serde_json::json!("3"));
    }
}
