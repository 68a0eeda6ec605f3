//! Étale algebras with involution over Q, given as products of fields F_j with
//! either a quadratic extension F_j(√d_j) or a switched pair F_j × F_j.

pub mod datum;
pub mod phi;
pub mod trace;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::factor::is_irreducible;
use crate::arith::local::squarefree_class;
use crate::arith::rational::Rational;
use crate::arith::sturm::{isolate_real_roots, sign_at_root, IsolatingInterval};
use crate::arith::{NumberFieldElement, Poly};
use crate::error::EtaleError;

pub use datum::{rho_data, validate_datum, CubicEtale, Datum, DatumReport, LStructuredFactor, RhoData};
pub use phi::{phi_algebra, psi_apply, t_alpha_membership_split, SplitPhiAlgebra};
pub use trace::{canonical_trace_form, trace_form, CanonicalTraceForm, TraceForm};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FactorKind {
    /// F(√d) with σ(√d) = −√d.
    Quadratic(NumberFieldElement),
    /// F × F with σ switching the two copies.
    Split,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvolutionFactor {
    fixed_poly: Poly,
    kind: FactorKind,
}

impl InvolutionFactor {
    pub fn quadratic(fixed_poly: &Poly, d: &Poly) -> Result<Self, EtaleError> {
        let f = Self::checked(fixed_poly)?;
        let d = NumberFieldElement::new(&f, d)?;
        if d.is_zero() {
            return Err(EtaleError::ZeroD);
        }
        Ok(InvolutionFactor { fixed_poly: f, kind: FactorKind::Quadratic(d) })
    }

    pub fn split(fixed_poly: &Poly) -> Result<Self, EtaleError> {
        Ok(InvolutionFactor { fixed_poly: Self::checked(fixed_poly)?, kind: FactorKind::Split })
    }

    fn checked(f: &Poly) -> Result<Poly, EtaleError> {
        if !is_irreducible(f)? {
            return Err(EtaleError::NotIrreducible(f.to_string()));
        }
        Ok(f.monic())
    }

    pub fn fixed_poly(&self) -> &Poly {
        &self.fixed_poly
    }

    pub fn kind(&self) -> &FactorKind {
        &self.kind
    }

    pub fn is_split(&self) -> bool {
        self.kind == FactorKind::Split
    }

    /// Degree of F over Q.
    pub fn degree(&self) -> usize {
        self.fixed_poly.deg()
    }

    /// Real roots of the fixed polynomial, i.e. real places of F.
    pub fn real_places(&self) -> Vec<IsolatingInterval> {
        real_places(&self.fixed_poly)
    }

    pub fn complex_places(&self) -> usize {
        (self.degree() - self.real_places().len()) / 2
    }

    /// Whether the real place τ of F extends to a complex place of E.
    pub fn ramified_at(&self, tau: &IsolatingInterval) -> bool {
        match &self.kind {
            FactorKind::Split => false,
            FactorKind::Quadratic(d) => sign_at_root(d.rep(), tau) < 0,
        }
    }

    /// Square class of disc(E_j)/Q: N_{F/Q}(d) for a quadratic factor, 1 when split.
    pub fn discriminant(&self) -> BigInt {
        match &self.kind {
            FactorKind::Split => BigInt::one(),
            FactorKind::Quadratic(d) => squarefree_class(&d.norm()).expect("d is nonzero"),
        }
    }

    pub fn one(&self) -> EtaleElement {
        let o = NumberFieldElement::from_rational(&self.fixed_poly, Rational::one()).unwrap();
        let z = NumberFieldElement::from_rational(&self.fixed_poly, Rational::zero()).unwrap();
        match self.kind {
            FactorKind::Quadratic(_) => EtaleElement(vec![(o, z)]),
            FactorKind::Split => EtaleElement(vec![(o.clone(), o)]),
        }
    }
}

impl fmt::Display for InvolutionFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            FactorKind::Quadratic(d) => write!(f, "Q[t]/({})(sqrt({}))", self.fixed_poly, d),
            FactorKind::Split => write!(f, "Q[t]/({}) x Q[t]/({}) switched", self.fixed_poly, self.fixed_poly),
        }
    }
}

impl Serialize for InvolutionFactor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("InvolutionFactor", 3)?;
        st.serialize_field("fixed_poly", &self.fixed_poly.to_string())?;
        match &self.kind {
            FactorKind::Quadratic(d) => {
                st.serialize_field("kind", "quadratic")?;
                st.serialize_field("d", &d.to_string())?;
            }
            FactorKind::Split => {
                st.serialize_field("kind", "split")?;
                st.serialize_field("d", &Option::<String>::None)?;
            }
        }
        st.end()
    }
}

/// (E, σ) = product of its factors. rank_Q E = 2 rank_Q E^σ by construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EtaleInvolution {
    factors: Vec<InvolutionFactor>,
}

impl EtaleInvolution {
    pub fn new(factors: Vec<InvolutionFactor>) -> Result<Self, EtaleError> {
        if factors.is_empty() {
            return Err(EtaleError::InvalidDatum("no factors".into()));
        }
        Ok(EtaleInvolution { factors })
    }

    pub fn factors(&self) -> &[InvolutionFactor] {
        &self.factors
    }

    /// n = rank of E^σ.
    pub fn n(&self) -> usize {
        self.factors.iter().map(InvolutionFactor::degree).sum()
    }

    pub fn rank(&self) -> usize {
        2 * self.n()
    }

    /// Square class of disc(E).
    pub fn discriminant(&self) -> BigInt {
        let prod: BigInt = self.factors.iter().map(InvolutionFactor::discriminant).product();
        squarefree_class(&Rational::from(prod)).unwrap()
    }

    /// ρ at the real place: real places of E^σ that do not ramify in E.
    pub fn rho_infinity(&self) -> usize {
        self.factors.iter().map(|f| f.real_places().iter().filter(|tau| !f.ramified_at(tau)).count()).sum()
    }

    /// Real places of E^σ ramified in E.
    pub fn ramified_real(&self) -> usize {
        self.factors.iter().map(|f| f.real_places().iter().filter(|tau| f.ramified_at(tau)).count()).sum()
    }

    pub fn complex_places(&self) -> usize {
        self.factors.iter().map(InvolutionFactor::complex_places).sum()
    }

    pub fn sub(&self, indices: &[usize]) -> EtaleInvolution {
        EtaleInvolution { factors: indices.iter().map(|&i| self.factors[i].clone()).collect() }
    }

    pub fn one(&self) -> EtaleElement {
        EtaleElement(self.factors.iter().flat_map(|f| f.one().0).collect())
    }
}

/// Element of E: per factor a pair (a, b) meaning a + b√d, or (a, b) ∈ F × F.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaleElement(pub Vec<(NumberFieldElement, NumberFieldElement)>);

/// x σ(x) = 1 in E.
pub fn u_membership(e: &EtaleInvolution, x: &EtaleElement) -> Result<bool, EtaleError> {
    if x.0.len() != e.factors.len() {
        return Err(EtaleError::FactorCount { expected: e.factors.len(), got: x.0.len() });
    }
    Ok(e.factors.iter().zip(&x.0).all(|(f, (a, b))| match &f.kind {
        // (a + b√d)(a − b√d) = a² − d b²
        FactorKind::Quadratic(d) => a.mul(a).sub(&d.mul(&b.mul(b))).is_one(),
        FactorKind::Split => a.mul(b).is_one(),
    }))
}

pub fn real_places(f: &Poly) -> Vec<IsolatingInterval> {
    isolate_real_roots(f).expect("fixed polynomials are squarefree")
}

/// Torus type at the real place, counted by kind.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RealTorusType {
    /// split real places: G_m
    pub gm: usize,
    /// complex places: R_{C/R} G_m
    pub rc: usize,
    /// ramified real places: R^1_{C/R} G_m
    pub r1: usize,
}

pub fn real_torus_type(e: &EtaleInvolution) -> RealTorusType {
    let ramified = e.ramified_real();
    let real: usize = e.factors.iter().map(|f| f.real_places().len()).sum();
    RealTorusType { gm: real - ramified, rc: e.complex_places(), r1: ramified }
}

impl fmt::Display for RealTorusType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gm^{} x R_C/R(Gm)^{} x R1_C/R(Gm)^{}", self.gm, self.rc, self.r1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        Poly::parse(s).unwrap()
    }

    fn el(m: &str, s: &str) -> NumberFieldElement {
        NumberFieldElement::parse(&p(m), s, "t").unwrap()
    }

    #[test]
    fn rho_counts() {
        let f = InvolutionFactor::quadratic(&p("t^2 - 2"), &p("t")).unwrap();
        let roots = f.real_places();
        assert_eq!(roots.len(), 2);
        assert!(f.ramified_at(&roots[0]));
        assert!(!f.ramified_at(&roots[1]));
        let e = EtaleInvolution::new(vec![f]).unwrap();
        assert_eq!(e.rho_infinity(), 1);
        let split = EtaleInvolution::new(vec![InvolutionFactor::split(&p("t^3 - 2")).unwrap()]).unwrap();
        assert_eq!(split.rho_infinity(), 1);
        let neg = EtaleInvolution::new(vec![InvolutionFactor::quadratic(&p("t^2 - 3"), &p("-5")).unwrap()]).unwrap();
        assert_eq!(neg.rho_infinity(), 0);
    }

    #[test]
    fn rejects_reducible() {
        assert!(matches!(InvolutionFactor::split(&p("t^2 - 1")), Err(EtaleError::NotIrreducible(_))));
        assert_eq!(InvolutionFactor::quadratic(&p("t^2 - 2"), &p("t^2 - 2")), Err(EtaleError::ZeroD));
    }

    #[test]
    fn unitary_elements() {
        let gi = InvolutionFactor::quadratic(&p("t"), &p("-1")).unwrap();
        let e = EtaleInvolution::new(vec![gi]).unwrap();
        assert!(u_membership(&e, &e.one()).unwrap());
        let x = EtaleElement(vec![(el("t", "3/5"), el("t", "4/5"))]);
        assert!(u_membership(&e, &x).unwrap());
        let y = EtaleElement(vec![(el("t", "3/5"), el("t", "3/5"))]);
        assert!(!u_membership(&e, &y).unwrap());
        let s = EtaleInvolution::new(vec![InvolutionFactor::split(&p("t^2 - 5")).unwrap()]).unwrap();
        let u = el("t^2 - 5", "t + 2");
        let x = EtaleElement(vec![(u.clone(), u.inverse().unwrap())]);
        assert!(u_membership(&s, &x).unwrap());
    }

    #[test]
    fn torus_types() {
        let four =
            EtaleInvolution::new(vec![InvolutionFactor::quadratic(&p("t^4 - 10*t^2 + 1"), &p("-1")).unwrap()]).unwrap();
        assert_eq!(real_torus_type(&four), RealTorusType { gm: 0, rc: 0, r1: 4 });
        let mixed = EtaleInvolution::new(vec![
            InvolutionFactor::split(&p("t^2 + 1")).unwrap(),
            InvolutionFactor::quadratic(&p("t^2 - 2"), &p("-3")).unwrap(),
        ])
        .unwrap();
        assert_eq!(real_torus_type(&mixed), RealTorusType { gm: 0, rc: 1, r1: 2 });
        assert_eq!(mixed.discriminant(), BigInt::from(1));
    }
}
