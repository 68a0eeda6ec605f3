//! Trace forms q_α(x) = Tr_{E/Q}(α x σ(x)).

use num_traits::Zero;
use serde::Serialize;

use super::{EtaleInvolution, FactorKind, InvolutionFactor};
use crate::arith::matrix::Matrix;
use crate::arith::rational::{int, Rational};
use crate::arith::{NumberFieldElement, Poly};
use crate::error::EtaleError;
use crate::forms::{invariants_of, is_trivial_clifford, DiagonalForm, WittInvariants};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceForm {
    pub gram: Matrix,
    pub form: DiagonalForm,
}

impl TraceForm {
    pub fn invariants(&self) -> WittInvariants {
        invariants_of(&self.form).expect("trace forms are nondegenerate")
    }
}

/// Gram matrix of x ↦ Tr_{F/Q}(β x²) on the power basis of F.
fn gram_f(beta: &NumberFieldElement) -> Matrix {
    let n = beta.degree();
    let t = NumberFieldElement::generator(beta.modulus()).unwrap();
    let mut traces = Vec::with_capacity(2 * n - 1);
    let mut cur = beta.clone();
    for _ in 0..2 * n - 1 {
        traces.push(cur.trace());
        cur = cur.mul(&t);
    }
    Matrix::from_rows((0..n).map(|i| (0..n).map(|j| traces[i + j].clone()).collect()).collect())
}

fn block_diagonal(blocks: &[Matrix]) -> Matrix {
    let n: usize = blocks.iter().map(Matrix::rows).sum();
    let mut m = Matrix::zeros(n, n);
    let mut off = 0;
    for b in blocks {
        for i in 0..b.rows() {
            for j in 0..b.cols() {
                m[(off + i, off + j)] = b[(i, j)].clone();
            }
        }
        off += b.rows();
    }
    m
}

fn factor_gram(f: &InvolutionFactor, alpha: &NumberFieldElement) -> Matrix {
    let two = int(2);
    let g = gram_f(alpha);
    let k = g.rows();
    match f.kind() {
        // a + b√d ↦ 2 Tr_F(α a²) − 2 Tr_F(α d b²)
        FactorKind::Quadratic(d) => {
            let gd = gram_f(&alpha.mul(d));
            let scale = |m: &Matrix, c: &Rational| {
                Matrix::from_rows((0..k).map(|i| m.row(i).iter().map(|x| x * c).collect()).collect())
            };
            block_diagonal(&[scale(&g, &two), scale(&gd, &-two.clone())])
        }
        // (a, b) ↦ 2 Tr_F(α a b)
        FactorKind::Split => {
            let mut m = Matrix::zeros(2 * k, 2 * k);
            for i in 0..k {
                for j in 0..k {
                    m[(i, k + j)] = g[(i, j)].clone();
                    m[(k + i, j)] = g[(i, j)].clone();
                }
            }
            m
        }
    }
}

/// q_α for α = (α_j) ∈ E^σ = ∏ F_j, on the basis (power basis of F_j) ⊗ {1, √d}
/// (or the two copies of F_j for a split factor).
pub fn trace_form(e: &EtaleInvolution, alpha: &[NumberFieldElement]) -> Result<TraceForm, EtaleError> {
    if alpha.len() != e.factors().len() {
        return Err(EtaleError::FactorCount { expected: e.factors().len(), got: alpha.len() });
    }
    let mut blocks = Vec::new();
    for (f, a) in e.factors().iter().zip(alpha) {
        if a.is_zero() {
            return Err(EtaleError::SingularAlpha);
        }
        let a = NumberFieldElement::new(f.fixed_poly(), a.rep())?;
        blocks.push(factor_gram(f, &a));
    }
    let gram = block_diagonal(&blocks);
    let diag = gram.diagonalize_symmetric();
    if diag.iter().any(Zero::is_zero) {
        return Err(EtaleError::SingularAlpha);
    }
    Ok(TraceForm { gram, form: DiagonalForm::new(diag)? })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalTraceForm {
    /// θ_j ∈ F_j with E_j ≅ F_j(√θ_j) and F_j = Q(θ_j).
    pub theta: Vec<NumberFieldElement>,
    /// f = ∏ minpoly(θ_j), so that E^σ = Q[t]/(f) and E = E^σ(√t).
    pub f: Poly,
    /// α = ±1/(2 f'(t)), sign (−1)^{n+1}.
    pub alpha: Vec<NumberFieldElement>,
    pub trace: TraceForm,
    pub invariants: WittInvariants,
}

#[derive(Serialize)]
pub struct CanonicalSummary {
    pub f: String,
    pub alpha: Vec<String>,
    pub form: DiagonalForm,
    pub invariants: WittInvariants,
}

impl CanonicalTraceForm {
    pub fn summary(&self) -> CanonicalSummary {
        CanonicalSummary {
            f: self.f.to_string(),
            alpha: self.alpha.iter().map(|a| a.to_string()).collect(),
            form: self.trace.form.clone(),
            invariants: self.invariants.clone(),
        }
    }
}

const PRESENTATION_TRIES: i64 = 64;

/// Candidate multipliers c with θ = d c² (or c² for split factors).
fn multiplier(modulus: &Poly, k: i64, degree: usize) -> NumberFieldElement {
    let rep = if degree == 1 || k == 0 { Poly::constant(int(k + 1)) } else { &Poly::x() + &Poly::constant(int(k - 1)) };
    NumberFieldElement::new(modulus, &rep).unwrap()
}

/// Present E as E^σ(√t) with E^σ = Q[t]/(f) and take
/// q(x) = Tr(α x σ(x)) with α = (−1)^{n+1} / (2 f'(t)).
pub fn canonical_trace_form(e: &EtaleInvolution) -> Result<CanonicalTraceForm, EtaleError> {
    let mut theta = Vec::new();
    let mut minpolys: Vec<Poly> = Vec::new();
    for f in e.factors() {
        let m = f.fixed_poly();
        let found = (0..PRESENTATION_TRIES).find_map(|k| {
            let c = multiplier(m, k, f.degree());
            if c.is_zero() {
                return None;
            }
            let th = match f.kind() {
                FactorKind::Quadratic(d) => d.mul(&c.mul(&c)),
                FactorKind::Split => c.mul(&c),
            };
            let mp = th.minpoly();
            (mp.deg() == f.degree() && !minpolys.contains(&mp)).then_some((th, mp))
        });
        let (th, mp) = found.ok_or_else(|| EtaleError::NoPresentation(f.to_string()))?;
        theta.push(th);
        minpolys.push(mp);
    }
    let fpoly = minpolys.iter().fold(Poly::one(), |acc, m| &acc * m);
    let fprime = fpoly.derivative();
    let sign = if e.n() % 2 == 1 { int(1) } else { int(-1) };
    let alpha = theta
        .iter()
        .map(|th| Ok(th.eval_poly(&fprime).scale(&int(2)).inverse()?.scale(&sign)))
        .collect::<Result<Vec<_>, EtaleError>>()?;
    let trace = trace_form(e, &alpha)?;
    let invariants = trace.invariants();
    if !is_trivial_clifford(&invariants)? {
        return Err(EtaleError::CliffordMismatch(invariants.to_string()));
    }
    Ok(CanonicalTraceForm { theta, f: fpoly, alpha, trace, invariants })
}
