//! The split twisted composition (L_s, M_s, q_s, *2) in closed form, and a
//! randomized check of its identities against the Albert product.

use std::fmt;

use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::albert::{albert_cross, albert_inner, albert_product, AlbertElement};
use super::{oct_conj, oct_inner, oct_norm, random_rational, Octonion};
use crate::arith::rational::{format_rational, int, Rational};

pub type LElement = [Rational; 3];
pub type MElement = [Octonion; 3];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompositionElement {
    #[serde(serialize_with = "ser_l")]
    pub l: LElement,
    pub m: MElement,
}

fn ser_l<S: serde::Serializer>(l: &LElement, s: S) -> Result<S::Ok, S::Error> {
    l.iter().map(format_rational).collect::<Vec<_>>().serialize(s)
}

impl CompositionElement {
    pub fn random<R: rand::Rng>(rng: &mut R) -> Self {
        CompositionElement {
            l: std::array::from_fn(|_| random_rational(rng)),
            m: std::array::from_fn(|_| Octonion::random(rng)),
        }
    }

    pub fn to_albert(&self) -> AlbertElement {
        AlbertElement::new(self.l.clone(), self.m.clone())
    }
}

pub fn mu_l(x: &LElement, y: &LElement) -> LElement {
    std::array::from_fn(|i| &x[i] * &y[i])
}

pub fn norm_l(x: &LElement) -> Rational {
    x.iter().product()
}

/// Module action (ξ1 c1, ξ2 c2, ξ3 c3).
pub fn eta(xi: &LElement, c: &MElement) -> MElement {
    std::array::from_fn(|i| c[i].scale(&xi[i]))
}

/// Quadratic form (N(c1), N(c2), N(c3)).
pub fn q_s(c: &MElement) -> LElement {
    std::array::from_fn(|i| oct_norm(&c[i]))
}

/// Bilinear form (<c1,c1'>, <c2,c2'>, <c3,c3'>).
pub fn q_s_bilinear(c: &MElement, d: &MElement) -> LElement {
    std::array::from_fn(|i| oct_inner(&c[i], &d[i]))
}

/// ½(c̄3 c̄2' + c̄3' c̄2, c̄1 c̄3' + c̄1' c̄3, c̄2 c̄1' + c̄2' c̄1).
pub fn mu_m(c: &MElement, d: &MElement) -> MElement {
    let half = Rational::new(1.into(), 2.into());
    let cb: Vec<Octonion> = c.iter().map(oct_conj).collect();
    let db: Vec<Octonion> = d.iter().map(oct_conj).collect();
    let term = |i: usize, j: usize| (&(&cb[i] * &db[j]) + &(&db[i] * &cb[j])).scale(&half);
    [term(2, 1), term(0, 2), term(1, 0)]
}

/// c^{*2} = (conj(c2 c3), conj(c3 c1), conj(c1 c2)).
pub fn star_square(c: &MElement) -> MElement {
    [oct_conj(&(&c[1] * &c[2])), oct_conj(&(&c[2] * &c[0])), oct_conj(&(&c[0] * &c[1]))]
}

/// Deliberate corruptions used to confirm that the checks can fail.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mutation {
    /// Drop the outer conjugation in the star square.
    StarSquare,
}

fn star_square_with(c: &MElement, mutation: Option<Mutation>) -> MElement {
    match mutation {
        None => star_square(c),
        Some(Mutation::StarSquare) => [&c[1] * &c[2], &c[2] * &c[0], &c[0] * &c[1]],
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub seed: u64,
    pub trials: usize,
    pub identities: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomFailure {
    pub identity: String,
    pub trial: usize,
    pub x: CompositionElement,
    pub y: CompositionElement,
    pub lhs: String,
    pub rhs: String,
}

impl fmt::Display for AxiomFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "identity {} fails at trial {}: {} != {}", self.identity, self.trial, self.lhs, self.rhs)
    }
}

fn show_l(l: &LElement) -> String {
    format!("({})", l.iter().map(format_rational).collect::<Vec<_>>().join(", "))
}

fn show_m(m: &MElement) -> String {
    format!("({}, {}, {})", m[0], m[1], m[2])
}

pub const IDENTITY_NAMES: [&str; 7] =
    ["mu_L", "eta", "q_s bilinear", "mu_M", "star square", "q(c)q(c*2) = N(q(c))", "xi(xi c)*2 = N(xi)c*2"];

/// Check the closed formulas against projections of Albert products and cross
/// products, and both composition axioms, on `trials` seeded random inputs.
pub fn check_composition_axioms(
    trials: usize,
    seed: u64,
    mutation: Option<Mutation>,
) -> Result<AxiomReport, AxiomFailure> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let e = AlbertElement::identity();
    for trial in 0..trials {
        let x = CompositionElement::random(&mut rng);
        let y = CompositionElement::random(&mut rng);
        let fail = |name: &str, lhs: String, rhs: String| AxiomFailure {
            identity: name.to_string(),
            trial,
            x: x.clone(),
            y: y.clone(),
            lhs,
            rhs,
        };
        let (xi, xi2, c, c2) = (&x.l, &y.l, &x.m, &y.m);
        let lx = AlbertElement::diagonal(xi.clone());
        let mx = AlbertElement::off_diagonal(c.clone());
        let my = AlbertElement::off_diagonal(c2.clone());

        let oracle = albert_product(&lx, &AlbertElement::diagonal(xi2.clone())).l_part();
        let closed = mu_l(xi, xi2);
        if closed != oracle {
            return Err(fail(IDENTITY_NAMES[0], show_l(&closed), show_l(&oracle)));
        }

        let two_xc = albert_product(&lx, &mx).scale(&int(-2));
        let oracle = two_xc.add(&mx.scale(&albert_inner(&lx, &e))).m_part();
        let closed = eta(xi, c);
        if closed != oracle {
            return Err(fail(IDENTITY_NAMES[1], show_m(&closed), show_m(&oracle)));
        }

        let cross = albert_cross(&mx, &my).l_part();
        let oracle: LElement = std::array::from_fn(|i| &cross[i] * int(-2));
        let closed = q_s_bilinear(c, c2);
        if closed != oracle {
            return Err(fail(IDENTITY_NAMES[2], show_l(&closed), show_l(&oracle)));
        }

        let oracle = albert_product(&mx, &my).m_part();
        let closed = mu_m(c, c2);
        if closed != oracle {
            return Err(fail(IDENTITY_NAMES[3], show_m(&closed), show_m(&oracle)));
        }

        let oracle = albert_product(&mx, &mx).m_part();
        let closed = star_square_with(c, mutation);
        if closed != oracle {
            return Err(fail(IDENTITY_NAMES[4], show_m(&closed), show_m(&oracle)));
        }

        let q = q_s(c);
        let lhs = mu_l(&q, &q_s(&star_square_with(c, mutation)));
        let n = norm_l(&q);
        let rhs: LElement = std::array::from_fn(|_| n.clone());
        if lhs != rhs {
            return Err(fail(IDENTITY_NAMES[5], show_l(&lhs), show_l(&rhs)));
        }

        let lhs = eta(xi, &star_square_with(&eta(xi, c), mutation));
        let n = norm_l(xi);
        let rhs: MElement = std::array::from_fn(|i| star_square_with(c, mutation)[i].scale(&n));
        if lhs != rhs {
            return Err(fail(IDENTITY_NAMES[6], show_m(&lhs), show_m(&rhs)));
        }
    }
    Ok(AxiomReport { seed, trials, identities: IDENTITY_NAMES.iter().map(|s| s.to_string()).collect() })
}

/// True if `c` has every slot zero.
pub fn m_is_zero(c: &MElement) -> bool {
    c.iter().all(Octonion::is_zero)
}

/// True if `l` is zero.
pub fn l_is_zero(l: &LElement) -> bool {
    l.iter().all(Zero::is_zero)
}
