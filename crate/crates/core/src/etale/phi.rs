//! The algebra E^Φ and the map Ψ over fully split data.
//!
//! Hom(E, k̄) is modelled as points 0..2n with a fixed-point-free involution σ.
//! Φ is the set of subsets φ with φ ∩ φσ = ∅ and φ ∪ φσ = Hom, encoded as bitmasks.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::matrix::Matrix;
use crate::arith::rational::Rational;
use crate::error::EtaleError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitPhiAlgebra {
    pub n: usize,
    /// σ as a permutation of 0..2n.
    pub sigma: Vec<usize>,
    /// Admissible subsets, sorted by bitmask.
    pub phi_basis: Vec<u64>,
}

impl SplitPhiAlgebra {
    pub fn hom_size(&self) -> usize {
        2 * self.n
    }

    pub fn sigma_of(&self, phi: u64) -> u64 {
        (0..self.hom_size()).filter(|&i| phi >> i & 1 == 1).fold(0, |acc, i| acc | 1 << self.sigma[i])
    }

    pub fn index_of(&self, phi: u64) -> usize {
        self.phi_basis.binary_search(&phi).expect("admissible subset")
    }

    /// σ on E^Φ as a permutation of basis indices.
    pub fn sigma_on_phi(&self) -> Vec<usize> {
        self.phi_basis.iter().map(|&p| self.index_of(self.sigma_of(p))).collect()
    }

    /// Unordered pairs {φ1, φ2} of admissible subsets meeting in exactly one point ρ.
    pub fn pairs(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for (i, &a) in self.phi_basis.iter().enumerate() {
            for (j, &b) in self.phi_basis.iter().enumerate().skip(i + 1) {
                let m = a & b;
                if m.count_ones() == 1 {
                    out.push((i, j, m.trailing_zeros() as usize));
                }
            }
        }
        out
    }
}

/// The standard involution i ↔ i + n on 0..2n.
pub fn standard_sigma(n: usize) -> Vec<usize> {
    (0..2 * n).map(|i| if i < n { i + n } else { i - n }).collect()
}

pub fn phi_algebra(n: usize, sigma: &[usize]) -> Result<SplitPhiAlgebra, EtaleError> {
    let m = 2 * n;
    if sigma.len() != m || n == 0 || m > 40 {
        return Err(EtaleError::NotSplitData(format!("involution on {} points for n = {n}", sigma.len())));
    }
    for (i, &s) in sigma.iter().enumerate() {
        if s >= m || sigma[s] != i {
            return Err(EtaleError::NotSplitData("sigma is not an involution".into()));
        }
        if s == i {
            return Err(EtaleError::FixedPointInvolution);
        }
    }
    // Choose one point from each orbit.
    let reps: Vec<usize> = (0..m).filter(|&i| i < sigma[i]).collect();
    let mut basis: Vec<u64> = (0u64..1 << n)
        .map(|choice| {
            reps.iter().enumerate().fold(0u64, |acc, (k, &r)| {
                let pt = if choice >> k & 1 == 1 { sigma[r] } else { r };
                acc | 1 << pt
            })
        })
        .collect();
    basis.sort_unstable();
    Ok(SplitPhiAlgebra { n, sigma: sigma.to_vec(), phi_basis: basis })
}

/// Ψ(Σ a_φ e_φ) = Σ_{φ1∩φ2={ρ}} a_φ1 a_φ2 e_ρ ⊗ (e_φ1 + e_φ2 + e_φ1σ + e_φ2σ),
/// as a 2n × 2^n coefficient matrix (row ρ, column φ).
pub fn psi_apply(p: &SplitPhiAlgebra, x: &[Rational]) -> Result<Matrix, EtaleError> {
    if x.len() != p.phi_basis.len() {
        return Err(EtaleError::NotSplitData(format!("expected {} coefficients, got {}", p.phi_basis.len(), x.len())));
    }
    let sig = p.sigma_on_phi();
    let mut out = Matrix::zeros(p.hom_size(), p.phi_basis.len());
    for (i, j, rho) in p.pairs() {
        let c = &x[i] * &x[j];
        if c.is_zero() {
            continue;
        }
        for col in [i, j, sig[i], sig[j]] {
            out[(rho, col)] += &c;
        }
    }
    Ok(out)
}

/// Membership of (x1, x2) ∈ E × E^Φ in T(α): x_i σ(x_i) = 1 and Ψ(x2) = x1 ⊗ 1.
pub fn t_alpha_membership_split(p: &SplitPhiAlgebra, x1: &[Rational], x2: &[Rational]) -> Result<bool, EtaleError> {
    if x1.len() != p.hom_size() {
        return Err(EtaleError::NotSplitData(format!(
            "expected {} coordinates for x1, got {}",
            p.hom_size(),
            x1.len()
        )));
    }
    let unitary1 = (0..p.hom_size()).all(|i| (&x1[i] * &x1[p.sigma[i]]).is_one());
    let sig = p.sigma_on_phi();
    if x2.len() != sig.len() {
        return Err(EtaleError::NotSplitData(format!("expected {} coordinates for x2, got {}", sig.len(), x2.len())));
    }
    let unitary2 = (0..sig.len()).all(|i| (&x2[i] * &x2[sig[i]]).is_one());
    if !unitary1 || !unitary2 {
        return Ok(false);
    }
    let psi = psi_apply(p, x2)?;
    Ok((0..p.hom_size()).all(|r| psi.row(r).iter().all(|c| *c == x1[r])))
}
