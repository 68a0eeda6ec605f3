//! The rank-2 split torus T_1 acting on the three octonion slots of M_s.

use std::fmt;

use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::albert::AlbertElement;
use super::{oct_conj, Mat2, Octonion};
use crate::arith::matrix::Matrix;
use crate::arith::rational::{rat, Rational};
use crate::error::OctonionError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum GeneratorKind {
    R,
    S,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusParameter {
    pub lambda: Rational,
    pub kind: GeneratorKind,
}

impl TorusParameter {
    pub fn new(lambda: Rational, kind: GeneratorKind) -> Result<Self, OctonionError> {
        if lambda.is_zero() {
            return Err(OctonionError::ZeroLambda);
        }
        Ok(TorusParameter { lambda, kind })
    }
}

/// A triple (g1, g2, g3) of linear maps of the octonions, as 8x8 matrices.
pub type Triple = [Matrix; 3];

fn u(lambda: &Rational) -> Octonion {
    Octonion::new(Mat2::diag(lambda.clone(), lambda.recip()), Mat2::zero())
}

fn matrix_of(f: impl Fn(&Octonion) -> Octonion) -> Matrix {
    let cols: Vec<Vec<Rational>> = (0..8).map(|j| f(&Octonion::basis(j)).coords().to_vec()).collect();
    Matrix::from_columns(&cols)
}

/// Left multiplication by diag(λ, λ⁻¹).
pub fn left(lambda: &Rational) -> Matrix {
    let u = u(lambda);
    matrix_of(|x| &u * x)
}

/// Right multiplication by diag(λ, λ⁻¹).
pub fn right(lambda: &Rational) -> Matrix {
    let u = u(lambda);
    matrix_of(|x| x * &u)
}

/// r_λ = (L_λ, R_λ, L_{λ⁻¹}∘R_{λ⁻¹}) and s_λ = (R_λ, L_{λ⁻¹}∘R_{λ⁻¹}, L_λ).
pub fn torus_generator(p: &TorusParameter) -> Result<Triple, OctonionError> {
    if p.lambda.is_zero() {
        return Err(OctonionError::ZeroLambda);
    }
    let l = &p.lambda;
    let inv = l.recip();
    let both = left(&inv).mul(&right(&inv));
    Ok(match p.kind {
        GeneratorKind::R => [left(l), right(l), both],
        GeneratorKind::S => [right(l), both, left(l)],
    })
}

pub fn compose(g: &Triple, h: &Triple) -> Triple {
    std::array::from_fn(|i| g[i].mul(&h[i]))
}

pub fn apply_slot(m: &Matrix, x: &Octonion) -> Octonion {
    Octonion::from_coords(&m.apply(&x.coords()))
}

/// Action on the Albert algebra: identity on the diagonal, g_i on c_i.
pub fn act(g: &Triple, x: &AlbertElement) -> AlbertElement {
    AlbertElement::new(x.xi.clone(), std::array::from_fn(|i| apply_slot(&g[i], &x.c[i])))
}

/// Which slot map is applied to the left factor of the product.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SlotOrder {
    /// g1(x·y) = F3(x)·F2(y)
    ThreeTwo,
    /// g1(x·y) = F2(x)·F3(y)
    TwoThree,
}

/// One reading of the triality relation: `g1(x·y) = F_a(x)·F_b(y)` where
/// `F_j(z)` is `conj(g_j(conj z))` if barred and `g_j(z)` otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TrialityVariant {
    pub order: SlotOrder,
    pub bar_left: bool,
    pub bar_right: bool,
}

impl fmt::Display for TrialityVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = match self.order {
            SlotOrder::ThreeTwo => (3, 2),
            SlotOrder::TwoThree => (2, 3),
        };
        let side = |j: u8, z: &str, bar: bool| {
            if bar {
                format!("conj(g{j}(conj {z}))")
            } else {
                format!("g{j}({z})")
            }
        };
        write!(f, "g1(x*y) = {} * {}", side(a, "x", self.bar_left), side(b, "y", self.bar_right))
    }
}

impl TrialityVariant {
    pub fn all() -> Vec<TrialityVariant> {
        let mut out = Vec::new();
        for order in [SlotOrder::ThreeTwo, SlotOrder::TwoThree] {
            for bar_left in [true, false] {
                for bar_right in [true, false] {
                    out.push(TrialityVariant { order, bar_left, bar_right });
                }
            }
        }
        out
    }

    pub fn holds(&self, g: &Triple, x: &Octonion, y: &Octonion) -> bool {
        let f = |j: usize, z: &Octonion, bar: bool| {
            if bar {
                oct_conj(&apply_slot(&g[j], &oct_conj(z)))
            } else {
                apply_slot(&g[j], z)
            }
        };
        let (a, b) = match self.order {
            SlotOrder::ThreeTwo => (2, 1),
            SlotOrder::TwoThree => (1, 2),
        };
        apply_slot(&g[0], &(x * y)) == &f(a, x, self.bar_left) * &f(b, y, self.bar_right)
    }
}

/// The reading fixed after running [`search_triality_variants`]:
/// g1(x·y) = conj(g3(x̄)) · conj(g2(ȳ)).
pub const TRIALITY_RELATION: TrialityVariant =
    TrialityVariant { order: SlotOrder::ThreeTwo, bar_left: true, bar_right: true };

/// The variants satisfied by r_λ and s_λ for every sampled λ and octonion pair.
pub fn search_triality_variants(samples: usize, seed: u64) -> Vec<TrialityVariant> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut alive = TrialityVariant::all();
    for _ in 0..samples {
        let lambda = loop {
            let l = super::random_rational(&mut rng);
            if !l.is_zero() {
                break l;
            }
        };
        let x = Octonion::random(&mut rng);
        let y = Octonion::random(&mut rng);
        for kind in [GeneratorKind::R, GeneratorKind::S] {
            let g = torus_generator(&TorusParameter { lambda: lambda.clone(), kind }).unwrap();
            alive.retain(|v| v.holds(&g, &x, &y));
        }
    }
    alive
}

/// Gram matrix of the norm polarization in the coordinate basis.
pub fn norm_gram() -> Matrix {
    let cols: Vec<Vec<Rational>> =
        (0..8).map(|j| (0..8).map(|i| super::oct_inner(&Octonion::basis(i), &Octonion::basis(j))).collect()).collect();
    Matrix::from_columns(&cols)
}

pub fn is_isometry(m: &Matrix) -> bool {
    let g = norm_gram();
    m.transpose().mul(&g).mul(m) == g
}

/// Dimension of the common fixed space of the given triples on M_s.
pub fn fixed_dimension_on_m(gens: &[Triple]) -> usize {
    (0..3)
        .map(|slot| {
            let id = Matrix::identity(8);
            let stacked = gens.iter().map(|g| g[slot].sub(&id)).reduce(|a, b| a.stack(&b)).unwrap();
            8 - stacked.rank()
        })
        .sum()
}

pub fn identity_triple() -> Triple {
    std::array::from_fn(|_| Matrix::identity(8))
}

/// λ = 2 as the standard generic parameter.
pub fn generic_lambda() -> Rational {
    rat(2, 1)
}

pub fn is_identity(g: &Triple) -> bool {
    g.iter().all(|m| *m == Matrix::identity(8))
}

pub fn determinants(g: &Triple) -> [Rational; 3] {
    std::array::from_fn(|i| g[i].det())
}
