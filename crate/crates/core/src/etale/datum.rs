//! Data (L, E, σ, β): a cubic étale L and an étale L-algebra with involution of
//! rank 8. β is carried as an uninterpreted token.

use num_traits::Zero;
use serde::Serialize;

use super::{EtaleInvolution, InvolutionFactor};
use crate::arith::local::{is_square_local, primes_up_to, valuation, Place};
use crate::arith::rational::Rational;
use crate::arith::sturm::{isolate_real_roots, sign_at_root, IsolatingInterval};
use crate::arith::{NumberFieldElement, Poly};
use crate::error::EtaleError;

pub const DEFAULT_PROBE_BOUND: u64 = 10_000;
const MAX_REPORTED_PRIMES: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicEtale {
    g: Poly,
}

impl CubicEtale {
    pub fn new(g: &Poly) -> Result<Self, EtaleError> {
        if g.degree() != Some(3) {
            return Err(EtaleError::InvalidDatum(format!("L must be cubic, got {g}")));
        }
        g.require_squarefree()?;
        Ok(CubicEtale { g: g.monic() })
    }

    pub fn poly(&self) -> &Poly {
        &self.g
    }

    pub fn real_roots(&self) -> Vec<IsolatingInterval> {
        isolate_real_roots(&self.g).expect("squarefree")
    }

    /// L ⊗ R = R³ (as opposed to R × C).
    pub fn is_totally_real(&self) -> bool {
        self.real_roots().len() == 3
    }

    pub fn discriminant(&self) -> Rational {
        self.g.discriminant().expect("nonzero polynomial")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LStructuredFactor {
    pub base: InvolutionFactor,
    /// Image λ of the generator of L in F.
    pub l_embedding: NumberFieldElement,
}

impl LStructuredFactor {
    pub fn new(base: InvolutionFactor, l_embedding: &Poly, l: &CubicEtale) -> Result<Self, EtaleError> {
        let lam = NumberFieldElement::new(base.fixed_poly(), l_embedding)?;
        if !lam.eval_poly(l.poly()).is_zero() {
            return Err(EtaleError::InvalidDatum(format!(
                "g({}) is not zero modulo {}",
                l_embedding,
                base.fixed_poly()
            )));
        }
        Ok(LStructuredFactor { base, l_embedding: lam })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Datum {
    pub l: CubicEtale,
    pub factors: Vec<LStructuredFactor>,
    pub beta: String,
}

impl Datum {
    pub fn new(l: CubicEtale, factors: Vec<LStructuredFactor>) -> Self {
        Datum { l, factors, beta: "beta".to_string() }
    }

    /// (E, σ) viewed over Q.
    pub fn etale(&self) -> EtaleInvolution {
        EtaleInvolution::new(self.factors.iter().map(|f| f.base.clone()).collect()).expect("nonempty")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DatumCheck {
    pub check: String,
    pub place: Option<Place>,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DatumReport {
    pub checks: Vec<DatumCheck>,
    pub probe_bound: u64,
    /// Finite-place checks only cover primes up to the probe bound.
    pub necessary_conditions_only: bool,
}

impl DatumReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> Vec<&DatumCheck> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }
}

/// Real places τ of E^σ above the real root θ of g, decided by the sign of
/// λ − low and λ − high at τ.
fn lies_over(lam: &NumberFieldElement, tau: &IsolatingInterval, theta: &IsolatingInterval) -> bool {
    let lo = lam.rep() - &Poly::constant(theta.low.clone());
    let hi = lam.rep() - &Poly::constant(theta.high.clone());
    sign_at_root(&lo, tau) > 0 && sign_at_root(&hi, tau) <= 0
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlaceAbove {
    pub factor: usize,
    pub tau: IsolatingInterval,
    pub unramified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThetaRho {
    pub theta: IsolatingInterval,
    pub places: Vec<PlaceAbove>,
    pub rho: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RhoData {
    pub totally_real: bool,
    pub per_theta: Vec<ThetaRho>,
    pub total: usize,
}

pub fn rho_data(d: &Datum) -> Result<RhoData, EtaleError> {
    let thetas = d.l.real_roots();
    let mut per_theta: Vec<ThetaRho> =
        thetas.iter().map(|t| ThetaRho { theta: t.clone(), places: Vec::new(), rho: 0 }).collect();
    for (j, f) in d.factors.iter().enumerate() {
        for tau in f.base.real_places() {
            let k = thetas.iter().position(|th| lies_over(&f.l_embedding, &tau, th)).ok_or_else(|| {
                EtaleError::InvalidDatum(format!("real place of factor {j} lies over no real root of g"))
            })?;
            let unramified = !f.base.ramified_at(&tau);
            per_theta[k].places.push(PlaceAbove { factor: j, tau, unramified });
        }
    }
    for t in &mut per_theta {
        t.rho = t.places.iter().filter(|p| p.unramified).count();
        if t.places.len() > 4 {
            return Err(EtaleError::InvalidDatum(format!("{} real places above one real place of L", t.places.len())));
        }
    }
    let total = per_theta.iter().map(|t| t.rho).sum();
    Ok(RhoData { totally_real: thetas.len() == 3, per_theta, total })
}

/// Check the rank condition and the necessary discriminant conditions.
pub fn validate_datum(d: &Datum, probe_bound: u64) -> DatumReport {
    let mut checks = Vec::new();
    let mut push = |check: &str, place: Option<Place>, pass: bool, detail: String| {
        checks.push(DatumCheck { check: check.to_string(), place, pass, detail })
    };

    // ∏ charpoly(λ_j) = c g⁴
    let prod = d.factors.iter().fold(Poly::one(), |acc, f| &acc * &f.l_embedding.charpoly());
    let g4 = d.l.poly().pow(4);
    let rank_ok = prod.monic() == g4;
    let degree: usize = d.factors.iter().map(|f| f.base.degree()).sum();
    push(
        "rank_L E = 2 rank_L E^sigma = 8",
        None,
        rank_ok,
        if rank_ok {
            "product of characteristic polynomials is g^4".into()
        } else {
            format!("rank of E^sigma over Q is {degree}, expected 12")
        },
    );

    // At each real root θ of g the number of ramified places above θ has the parity of disc(L) < 0.
    let disc_l = d.l.discriminant();
    let want_odd = disc_l < Rational::zero();
    match rho_data(d) {
        Ok(rho) => {
            for t in &rho.per_theta {
                let ramified = t.places.len() - t.rho;
                let pass = (ramified % 2 == 1) == want_odd;
                push(
                    "disc_L(E) = disc(L) at a real place of L",
                    Some(Place::Real),
                    pass,
                    format!("{ramified} ramified real places above the root in ({}, {}]", t.theta.low, t.theta.high),
                );
            }
        }
        Err(e) => push("real places of E^sigma over L", Some(Place::Real), false, e.to_string()),
    }

    // N_{L/Q} of both sides: disc(E) disc(L) must be a local square.
    let quotient = Rational::from(d.etale().discriminant()) * &disc_l;
    let mut bad: Vec<u64> = primes_up_to(probe_bound)
        .into_iter()
        .filter(|&p| !is_square_local(&quotient, Place::Prime(p)).expect("valid prime"))
        .collect();
    let total_bad = bad.len();
    // Primes dividing the quotient to an odd power are the informative witnesses.
    bad.sort_by_key(|&p| (valuation(&quotient, p) % 2 == 0, p));
    bad.truncate(MAX_REPORTED_PRIMES);
    if bad.is_empty() {
        push("disc_L(E) = disc(L) at probed finite places", None, true, format!("all primes up to {probe_bound}"));
    }
    for p in bad {
        push(
            "disc_L(E) = disc(L) at probed finite places",
            Some(Place::Prime(p)),
            false,
            format!("disc(E) disc(L) = {quotient} is not a square in Q_{p} ({total_bad} failing primes up to {probe_bound})"),
        );
    }
    DatumReport { checks, probe_bound, necessary_conditions_only: true }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        Poly::parse(s).unwrap()
    }

    fn rational_factor(l: &CubicEtale, theta: &str, d: Option<&str>) -> LStructuredFactor {
        let base = match d {
            Some(d) => InvolutionFactor::quadratic(&p("t"), &p(d)).unwrap(),
            None => InvolutionFactor::split(&p("t")).unwrap(),
        };
        LStructuredFactor::new(base, &p(theta), l).unwrap()
    }

    fn rrr(ds: [[Option<&str>; 4]; 3]) -> Datum {
        let l = CubicEtale::new(&p("t^3 - t")).unwrap();
        let mut factors = Vec::new();
        for (theta, row) in ["-1", "0", "1"].iter().zip(ds) {
            for d in row {
                factors.push(rational_factor(&l, theta, d));
            }
        }
        Datum::new(l, factors)
    }

    #[test]
    fn totally_real_split_datum() {
        let d = rrr([[None; 4]; 3]);
        let r = validate_datum(&d, 200);
        assert!(r.ok(), "{:?}", r.failures());
        let rho = rho_data(&d).unwrap();
        assert_eq!(rho.total, 12);
        assert!(rho.per_theta.iter().all(|t| t.rho == 4));
    }

    #[test]
    fn rank_failure() {
        let mut d = rrr([[None; 4]; 3]);
        d.factors.pop();
        let r = validate_datum(&d, 50);
        assert!(!r.checks[0].pass);
    }

    #[test]
    fn disc_mismatch_flagged_at_five() {
        let n = Some("-1");
        let d = rrr([[n, n, n, n], [n, n, n, n], [n, n, Some("-5"), Some("-1")]]);
        let r = validate_datum(&d, 100);
        let f = r.failures();
        assert_eq!(f[0].place, Some(Place::Prime(5)));
        assert!(f.iter().all(|c| c.place != Some(Place::Real)));
        assert_eq!(rho_data(&d).unwrap().total, 0);
    }

    #[test]
    fn mixed_signature_parity_fails() {
        let n = Some("-1");
        let d = rrr([[n, n, n, Some("1")], [n, n, n, n], [n, n, n, Some("-1")]]);
        let r = validate_datum(&d, 10);
        assert!(r.failures().iter().any(|c| c.place == Some(Place::Real)));
    }

    #[test]
    fn cube_root_of_two() {
        let l = CubicEtale::new(&p("t^3 - 2")).unwrap();
        assert!(!l.is_totally_real());
        let mk = |d: Option<&str>| {
            let base = match d {
                Some(d) => InvolutionFactor::quadratic(&p("t^3 - 2"), &p(d)).unwrap(),
                None => InvolutionFactor::split(&p("t^3 - 2")).unwrap(),
            };
            LStructuredFactor::new(base, &p("t"), &l).unwrap()
        };
        let d = Datum::new(l.clone(), vec![mk(Some("-3")), mk(None), mk(None), mk(None)]);
        assert!(validate_datum(&d, 500).ok());
        assert_eq!(rho_data(&d).unwrap().total, 3);
        let d = Datum::new(l.clone(), vec![mk(Some("-3")), mk(Some("-1")), mk(Some("-1")), mk(None)]);
        assert!(validate_datum(&d, 500).ok());
        assert_eq!(rho_data(&d).unwrap().total, 1);
        // Degree-2 extension of L: Q(2^(1/6)) with λ = t².
        let six = LStructuredFactor::new(InvolutionFactor::split(&p("t^6 - 2")).unwrap(), &p("t^2"), &l).unwrap();
        let rho = rho_data(&Datum::new(l.clone(), vec![six, mk(None), mk(Some("-3"))])).unwrap();
        assert_eq!(rho.per_theta[0].places.len(), 4);
        assert!(matches!(
            LStructuredFactor::new(
                InvolutionFactor::split(&p("t^2 - 2")).unwrap(),
                &p("t"),
                &CubicEtale::new(&p("t^3 - 2")).unwrap()
            ),
            Err(EtaleError::InvalidDatum(_))
        ));
    }
}
