//! The split Albert algebra: hermitian 3x3 matrices over the split octonions.

use std::fmt;

use num_traits::{One, Zero};
use rand::Rng;
use serde::Serialize;

use super::{oct_conj, oct_inner, oct_norm, random_rational, Octonion};
use crate::arith::rational::{format_rational, Rational};

/// `(ξ1, ξ2, ξ3; c1, c2, c3)`, standing for the matrix
/// `[[ξ1, c3, c̄2], [c̄3, ξ2, c1], [c2, c̄1, ξ3]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlbertElement {
    pub xi: [Rational; 3],
    pub c: [Octonion; 3],
}

type OctMatrix = [[Octonion; 3]; 3];

impl AlbertElement {
    pub fn new(xi: [Rational; 3], c: [Octonion; 3]) -> Self {
        AlbertElement { xi, c }
    }

    pub fn zero() -> Self {
        AlbertElement { xi: std::array::from_fn(|_| Rational::zero()), c: std::array::from_fn(|_| Octonion::zero()) }
    }

    pub fn identity() -> Self {
        AlbertElement::diagonal(std::array::from_fn(|_| Rational::one()))
    }

    pub fn diagonal(xi: [Rational; 3]) -> Self {
        AlbertElement { xi, c: std::array::from_fn(|_| Octonion::zero()) }
    }

    pub fn off_diagonal(c: [Octonion; 3]) -> Self {
        AlbertElement { xi: std::array::from_fn(|_| Rational::zero()), c }
    }

    pub fn random<R: Rng>(rng: &mut R) -> Self {
        AlbertElement {
            xi: std::array::from_fn(|_| random_rational(rng)),
            c: std::array::from_fn(|_| Octonion::random(rng)),
        }
    }

    pub fn add(&self, o: &AlbertElement) -> AlbertElement {
        AlbertElement {
            xi: std::array::from_fn(|i| &self.xi[i] + &o.xi[i]),
            c: std::array::from_fn(|i| &self.c[i] + &o.c[i]),
        }
    }

    pub fn scale(&self, k: &Rational) -> AlbertElement {
        AlbertElement { xi: std::array::from_fn(|i| &self.xi[i] * k), c: std::array::from_fn(|i| self.c[i].scale(k)) }
    }

    /// Projection to the diagonal part L_s.
    pub fn l_part(&self) -> [Rational; 3] {
        self.xi.clone()
    }

    /// Projection to the off-diagonal part M_s.
    pub fn m_part(&self) -> [Octonion; 3] {
        self.c.clone()
    }

    /// The 27 coordinates: ξ1, ξ2, ξ3, then the 8 coordinates of c1, c2, c3.
    pub fn coords(&self) -> Vec<Rational> {
        let mut v = self.xi.to_vec();
        for c in &self.c {
            v.extend(c.coords());
        }
        v
    }

    pub fn from_coords(v: &[Rational]) -> Self {
        assert_eq!(v.len(), 27);
        AlbertElement {
            xi: std::array::from_fn(|i| v[i].clone()),
            c: std::array::from_fn(|i| Octonion::from_coords(&v[3 + 8 * i..11 + 8 * i])),
        }
    }

    fn to_matrix(&self) -> OctMatrix {
        let [c1, c2, c3] = &self.c;
        let s = |x: &Rational| Octonion::scalar(x.clone());
        [
            [s(&self.xi[0]), c3.clone(), oct_conj(c2)],
            [oct_conj(c3), s(&self.xi[1]), c1.clone()],
            [c2.clone(), oct_conj(c1), s(&self.xi[2])],
        ]
    }

    fn from_hermitian(m: &OctMatrix) -> Self {
        let xi = std::array::from_fn(|i| m[i][i].as_scalar().expect("diagonal entries are scalars"));
        for (i, j) in [(1, 2), (2, 0), (0, 1)] {
            debug_assert_eq!(m[j][i], oct_conj(&m[i][j]));
        }
        AlbertElement { xi, c: [m[1][2].clone(), m[2][0].clone(), m[0][1].clone()] }
    }

    /// Norm Q(ξ, c) = ½ Σ ξ_i² + Σ N(c_i).
    pub fn norm(&self) -> Rational {
        let half = Rational::new(1.into(), 2.into());
        let l: Rational = self.xi.iter().map(|x| x * x).sum();
        let m: Rational = self.c.iter().map(oct_norm).sum();
        half * l + m
    }
}

fn matmul(x: &OctMatrix, y: &OctMatrix) -> OctMatrix {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| (0..3).fold(Octonion::zero(), |acc, k| &acc + &(&x[i][k] * &y[k][j])))
    })
}

/// Jordan product ½(x·y + y·x), computed from the full matrix products.
pub fn albert_product(x: &AlbertElement, y: &AlbertElement) -> AlbertElement {
    let (mx, my) = (x.to_matrix(), y.to_matrix());
    let xy = matmul(&mx, &my);
    let yx = matmul(&my, &mx);
    let half = Rational::new(1.into(), 2.into());
    let sym: OctMatrix = std::array::from_fn(|i| std::array::from_fn(|j| (&xy[i][j] + &yx[i][j]).scale(&half)));
    AlbertElement::from_hermitian(&sym)
}

/// Bilinear form of the norm: Σ ξ_i ξ'_i + Σ <c_i, c'_i>.
pub fn albert_inner(x: &AlbertElement, y: &AlbertElement) -> Rational {
    let l: Rational = x.xi.iter().zip(&y.xi).map(|(a, b)| a * b).sum();
    let m: Rational = x.c.iter().zip(&y.c).map(|(a, b)| oct_inner(a, b)).sum();
    l + m
}

/// x×y = xy − ½<x,e>y − ½<y,e>x − ½<x,y>e + ½<x,e><y,e>e.
pub fn albert_cross(x: &AlbertElement, y: &AlbertElement) -> AlbertElement {
    let e = AlbertElement::identity();
    let half = Rational::new(1.into(), 2.into());
    let xe = albert_inner(x, &e);
    let ye = albert_inner(y, &e);
    let xy = albert_inner(x, y);
    albert_product(x, y)
        .add(&y.scale(&-(&half * &xe)))
        .add(&x.scale(&-(&half * &ye)))
        .add(&e.scale(&(&half * (&xe * &ye - xy))))
}

impl fmt::Display for AlbertElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let xi: Vec<String> = self.xi.iter().map(format_rational).collect();
        write!(f, "({}; {}, {}, {})", xi.join(", "), self.c[0], self.c[1], self.c[2])
    }
}

impl Serialize for AlbertElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<String> = self.coords().iter().map(format_rational).collect();
        v.serialize(s)
    }
}
