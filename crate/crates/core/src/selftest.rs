//! Seeded randomized checks of the algebra kernel.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::arith::local::hilbert_ramification;
use crate::arith::rational::{format_rational, int, Rational};
use crate::octonion::albert::{albert_product, AlbertElement};
use crate::octonion::composition::star_square;
use crate::octonion::torus::{act, apply_slot, compose, determinants, is_isometry, torus_generator, Triple};
use crate::octonion::{
    check_composition_axioms, oct_mul, oct_norm, random_rational, GeneratorKind, Mutation, Octonion, TorusParameter,
};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Counterexample {
    pub check: String,
    pub trial: usize,
    pub detail: serde_json::Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub check: String,
    pub trials: usize,
    pub pass: bool,
    pub counterexample: Option<Counterexample>,
}

impl CheckOutcome {
    fn from_result(check: &str, trials: usize, r: Result<(), Counterexample>) -> Self {
        CheckOutcome { check: check.to_string(), trials, pass: r.is_ok(), counterexample: r.err() }
    }
}

fn nonzero_rational<R: Rng>(rng: &mut R) -> Rational {
    loop {
        let x = random_rational(rng);
        if !x.is_zero() {
            return x;
        }
    }
}

/// n(xy) = n(x)n(y).
pub fn norm_multiplicativity(trials: usize, seed: u64) -> Result<(), Counterexample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 0..trials {
        let x = Octonion::random(&mut rng);
        let y = Octonion::random(&mut rng);
        let lhs = oct_norm(&oct_mul(&x, &y));
        let rhs = oct_norm(&x) * oct_norm(&y);
        if lhs != rhs {
            return Err(Counterexample {
                check: "norm multiplicativity".into(),
                trial,
                detail: json!({ "x": x, "y": y, "n(xy)": format_rational(&lhs), "n(x)n(y)": format_rational(&rhs) }),
            });
        }
    }
    Ok(())
}

fn generator(lambda: Rational, kind: GeneratorKind) -> Triple {
    torus_generator(&TorusParameter::new(lambda, kind).expect("nonzero")).expect("valid parameter")
}

/// Torus generators: isometries of determinant 1, λ ↦ g_λ multiplicative,
/// r and s commuting, action by automorphisms of the Albert algebra and of ∗2.
pub fn torus_suite(trials: usize, seed: u64) -> Result<(), Counterexample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 0..trials {
        let l = nonzero_rational(&mut rng);
        let m = nonzero_rational(&mut rng);
        let fail = |what: &str| Counterexample {
            check: format!("torus generators: {what}"),
            trial,
            detail: json!({ "lambda": format_rational(&l), "mu": format_rational(&m) }),
        };
        for kind in [GeneratorKind::R, GeneratorKind::S] {
            let g = generator(l.clone(), kind);
            if !g.iter().all(is_isometry) {
                return Err(fail("isometry"));
            }
            if determinants(&g) != [Rational::one(), Rational::one(), Rational::one()] {
                return Err(fail("determinant"));
            }
            if compose(&g, &generator(m.clone(), kind)) != generator(&l * &m, kind) {
                return Err(fail("homomorphism"));
            }
            let x = AlbertElement::random(&mut rng);
            let y = AlbertElement::random(&mut rng);
            if act(&g, &albert_product(&x, &y)) != albert_product(&act(&g, &x), &act(&g, &y)) {
                return Err(fail("Albert automorphism"));
            }
            let c = x.c.clone();
            let gc: [Octonion; 3] = std::array::from_fn(|i| apply_slot(&g[i], &c[i]));
            let sc = star_square(&c);
            let gsc: [Octonion; 3] = std::array::from_fn(|i| apply_slot(&g[i], &sc[i]));
            if gsc != star_square(&gc) {
                return Err(fail("star square equivariance"));
            }
        }
        let r = generator(l.clone(), GeneratorKind::R);
        let s = generator(m.clone(), GeneratorKind::S);
        if compose(&r, &s) != compose(&s, &r) {
            return Err(fail("commuting"));
        }
    }
    Ok(())
}

/// Random pair of nonzero integers in [-bound, bound].
pub fn random_symbol<R: Rng>(rng: &mut R, bound: i64) -> (Rational, Rational) {
    let mut pick = || loop {
        let a = rng.gen_range(-bound..=bound);
        if a != 0 {
            return int(a);
        }
    };
    (pick(), pick())
}

/// The ramification set of (a, b) has even size.
pub fn hilbert_reciprocity(trials: usize, seed: u64) -> Result<(), Counterexample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 0..trials {
        let (a, b) = random_symbol(&mut rng, 10_000);
        let ram = hilbert_ramification(&a, &b).expect("nonzero entries");
        if ram.len() % 2 == 1 {
            return Err(Counterexample {
                check: "Hilbert reciprocity".into(),
                trial,
                detail: json!({ "a": format_rational(&a), "b": format_rational(&b), "ramified": ram }),
            });
        }
    }
    Ok(())
}

/// Every check, in a fixed order.
pub fn run_all(trials: usize, seed: u64, mutation: Option<Mutation>) -> Vec<CheckOutcome> {
    let axioms = check_composition_axioms(trials, seed, mutation).map(|_| ()).map_err(|f| Counterexample {
        check: format!("composition: {}", f.identity),
        trial: f.trial,
        detail: serde_json::to_value(&f).expect("serializable"),
    });
    vec![
        CheckOutcome::from_result("composition axioms", trials, axioms),
        CheckOutcome::from_result("norm multiplicativity", trials, norm_multiplicativity(trials, seed)),
        CheckOutcome::from_result("torus generators", trials.min(50), torus_suite(trials.min(50), seed)),
        CheckOutcome::from_result("Hilbert reciprocity", trials, hilbert_reciprocity(trials, seed)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_checks_pass() {
        assert!(run_all(20, 1, None).iter().all(|c| c.pass));
    }

    #[test]
    fn mutation_is_caught() {
        let out = run_all(5, 1, Some(Mutation::StarSquare));
        assert!(!out[0].pass);
        assert!(out[1..].iter().all(|c| c.pass));
    }
}
