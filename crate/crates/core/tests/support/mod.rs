//! Instance builders and small-integer oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use f4tori::arith::local::{prime_divisors, Place};
use f4tori::arith::rational::Rational;
use f4tori::arith::Poly;
use f4tori::etale::{canonical_trace_form, EtaleInvolution, InvolutionFactor};
use f4tori::forms::{check_feasible, clifford_target, invariants_of, DiagonalForm, WittInvariants};
use f4tori::realizability::{exists_local_assignment, local_orth_realizable, Instance, SplitStatus};
use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn poly(s: &str) -> Poly {
    Poly::parse(s).unwrap()
}

pub fn quad(fixed: &str, d: &str) -> InvolutionFactor {
    InvolutionFactor::quadratic(&poly(fixed), &poly(d)).unwrap()
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|k| k * k <= n).all(|k| n % k != 0)
}

fn pow_mod(mut b: u128, mut e: u128, m: u128) -> u128 {
    let mut r = 1;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

/// Euler's criterion, odd prime p.
pub fn legendre(a: i128, p: u64) -> i8 {
    let m = p as i128;
    let r = a.rem_euclid(m);
    if r == 0 {
        return 0;
    }
    if pow_mod(r as u128, ((p - 1) / 2) as u128, p as u128) == 1 {
        1
    } else {
        -1
    }
}

/// (v_p(x), x / p^v) for nonzero x.
pub fn split_p(mut x: i128, p: u64) -> (u32, i128) {
    let m = p as i128;
    let mut v = 0;
    while x % m == 0 {
        x /= m;
        v += 1;
    }
    (v, x)
}

/// Hilbert symbol at an odd prime from the valuation formula.
pub fn hilbert_odd(a: i128, b: i128, p: u64) -> i8 {
    let (al, u) = split_p(a, p);
    let (be, w) = split_p(b, p);
    let eps = if p % 4 == 3 { -1i8 } else { 1 };
    let mut s = if (al * be) % 2 == 1 { eps } else { 1 };
    if be % 2 == 1 {
        s *= legendre(u, p);
    }
    if al % 2 == 1 {
        s *= legendre(w, p);
    }
    s
}

pub fn hilbert_real(a: i128, b: i128) -> i8 {
    if a < 0 && b < 0 {
        -1
    } else {
        1
    }
}

pub fn is_square_odd(x: i128, p: u64) -> bool {
    let (v, u) = split_p(x, p);
    v % 2 == 0 && legendre(u, p) == 1
}

/// Hasse invariant Π_{i<j} (a_i, a_j) of a diagonal integer form at an odd prime.
pub fn hasse_odd(entries: &[i128], p: u64) -> i8 {
    let mut s = 1;
    for i in 0..entries.len() {
        for j in i + 1..entries.len() {
            s *= hilbert_odd(entries[i], entries[j], p);
        }
    }
    s
}

pub fn signature(entries: &[i128]) -> (usize, usize) {
    let pos = entries.iter().filter(|&&a| a > 0).count();
    (pos, entries.len() - pos)
}

/// Hyperbolicity at an odd prime straight from the entries: (−1)^n det a square
/// and the Hasse invariant equal to that of n copies of <1, −1>.
pub fn hyperbolic_odd(entries: &[i128], p: u64) -> bool {
    let m = entries.len();
    if m % 2 == 1 {
        return false;
    }
    let det: i128 = entries.iter().product();
    let sign = if (m / 2) % 2 == 1 { -1 } else { 1 };
    let h: Vec<i128> = (0..m).map(|i| if i % 2 == 0 { 1 } else { -1 }).collect();
    is_square_odd(sign * det, p) && hasse_odd(entries, p) == hasse_odd(&h, p)
}

/// Whether (2r′+ρ, 2s′+ρ) = sig for some r′, s′ at least `floor`.
pub fn real_shape_exists(sig: (usize, usize), rho: usize, floor: usize) -> bool {
    (floor..=sig.0).any(|r| (floor..=sig.1).any(|s| 2 * r + rho == sig.0 && 2 * s + rho == sig.1))
}

/// The form of dimension rank E, discriminant disc E, trivial Clifford
/// invariant and the given signature, when such a form exists over Q.
pub fn trivial_clifford_form(e: &EtaleInvolution, sig: (usize, usize)) -> Option<WittInvariants> {
    let mut q = WittInvariants { dim: e.rank(), disc: e.discriminant(), hasse: BTreeSet::new(), sig };
    q.hasse = clifford_target(&q).ok()?;
    check_feasible(&q).ok().map(|_| q)
}

/// Pairs (a, b) of primes with a ≡ 1 mod 8, −b ≡ 1 mod 8 and (a / −b) = 1.
pub fn disconnected_pairs(count: usize) -> Vec<(i64, i64)> {
    let aa: Vec<u64> = (3..400).filter(|&p| is_prime(p) && p % 8 == 1).collect();
    let ll: Vec<u64> = (3..400).filter(|&p| is_prime(p) && p % 8 == 7).collect();
    let mut out = Vec::new();
    for &a in &aa {
        for &l in &ll {
            if legendre(a as i128, l) == 1 && out.len() < count {
                out.push((a as i64, -(l as i64)));
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// Q(√a)(√b) over Q(√a).
    K1,
    /// Q(√b)(√a) over Q(√b).
    K2,
}

/// E = product of copies of K1 = Q(√a, √b) ⊃ Q(√a) and K2 = Q(√a, √b) ⊃ Q(√b).
///
/// For p ∤ 2ab with Frobenius g, K1 is non-split iff χ_a(g) = 1, χ_b(g) = −1 and
/// K2 iff χ_b(g) = 1, χ_a(g) = −1, so no odd prime away from ab links them; at
/// ∞ only K1 is non-split, at 2 everything splits, at a only K2 is non-split
/// and at −b only K1.
pub fn disconnected_instance(a: i64, b: i64, layout: &[Side]) -> Instance {
    let factors = layout
        .iter()
        .map(|s| match s {
            Side::K1 => quad(&format!("t^2 - {a}"), &b.to_string()),
            Side::K2 => quad(&format!("t^2 + {}", -b), &a.to_string()),
        })
        .collect();
    let mut inst = Instance::new(EtaleInvolution::new(factors).unwrap()).with_bound(200);
    let (pa, pb) = (a as u64, (-b) as u64);
    for (i, s) in layout.iter().enumerate() {
        let (at_a, at_b) = match s {
            Side::K1 => (SplitStatus::AllSplit, SplitStatus::NotAllSplit),
            Side::K2 => (SplitStatus::NotAllSplit, SplitStatus::AllSplit),
        };
        inst = inst.with_override(i, 2, SplitStatus::AllSplit).with_override(i, pa, at_a).with_override(i, pb, at_b);
    }
    inst
}

/// Non-split status of each side at a prime p ∤ 2ab from the quadratic characters.
pub fn galois_nonsplit(a: i64, b: i64, p: u64) -> (bool, bool) {
    let (ca, cb) = (legendre(a as i128, p), legendre(b as i128, p));
    (ca == 1 && cb == -1, cb == 1 && ca == -1)
}

const LAYOUTS: [&[Side]; 4] = [
    &[Side::K1, Side::K2],
    &[Side::K1, Side::K1, Side::K2],
    &[Side::K1, Side::K2, Side::K2],
    &[Side::K1, Side::K1, Side::K2, Side::K2],
];

/// Every (instance, q) with q trivial Clifford and locally realizable.
pub fn disconnected_cases(pairs: usize) -> Vec<(Instance, WittInvariants)> {
    let mut out = Vec::new();
    for (a, b) in disconnected_pairs(pairs) {
        for layout in LAYOUTS {
            let inst = disconnected_instance(a, b, layout);
            let dim = inst.e.rank();
            for s in 0..=dim {
                let Some(q) = trivial_clifford_form(&inst.e, (dim - s, s)) else { continue };
                if exists_local_assignment(&inst, &q).unwrap().verdict.is_yes() {
                    out.push((inst.clone(), q));
                }
            }
        }
    }
    out
}

/// Integer representatives of the square classes of the entries.
pub fn integer_entries(q: &DiagonalForm) -> Vec<i128> {
    q.entries().iter().map(|a: &Rational| i128::try_from(a.numer() * a.denom()).expect("entry fits in i128")).collect()
}

/// Clifford invariant from the entries: compare Π_{i<j}(a_i, a_j) with the
/// case table on n mod 4 at ∞ and every odd prime dividing some entry; the
/// prime 2 follows from the product formula on both sides.
pub fn trivial_clifford_oracle(q: &DiagonalForm) -> bool {
    let a = integer_entries(q);
    let m = a.len();
    assert_eq!(m % 2, 0);
    let n = m / 2;
    let det: i128 = a.iter().product();
    let disc = if n % 2 == 1 { -det } else { det };
    let target = |h: &dyn Fn(i128, i128) -> i8| match n % 4 {
        0 => h(-1, disc),
        1 => 1,
        2 => h(-1, -disc),
        _ => h(-1, -1),
    };
    let hasse = |h: &dyn Fn(i128, i128) -> i8| {
        let mut s = 1;
        for i in 0..m {
            for j in i + 1..m {
                s *= h(a[i], a[j]);
            }
        }
        s
    };
    if hasse(&hilbert_real) != target(&hilbert_real) {
        return false;
    }
    let mut primes = BTreeSet::new();
    for x in &a {
        primes.extend(prime_divisors(&BigInt::from(*x)).unwrap());
    }
    primes.remove(&2);
    primes.into_iter().all(|p| {
        let h = move |x: i128, y: i128| hilbert_odd(x, y, p);
        hasse(&h) == target(&h)
    })
}

pub fn minus(m: i64) -> String {
    if m < 0 {
        format!("t^2 + {}", -m)
    } else {
        format!("t^2 - {m}")
    }
}

const NONSQUARES: [i64; 8] = [-1, 2, -2, 3, -3, 5, -7, 6];
const QUADRATIC: [i64; 5] = [2, -1, 3, 5, -3];

/// A random factor of degree ≤ `room` over Q, a quadratic field or Q(2^{1/3}).
fn random_factor(rng: &mut ChaCha8Rng, room: usize) -> InvolutionFactor {
    loop {
        let kind = rng.gen_range(0..6);
        let pick = |rng: &mut ChaCha8Rng, xs: &[i64]| xs[rng.gen_range(0..xs.len())];
        match kind {
            0 | 1 => return quad("t", &pick(rng, &NONSQUARES).to_string()),
            2 => return InvolutionFactor::split(&poly("t")).unwrap(),
            3 if room >= 2 => {
                let m = pick(rng, &QUADRATIC);
                let (x, y) = (rng.gen_range(-3i64..=3), rng.gen_range(1i64..=3));
                let f = InvolutionFactor::quadratic(&poly(&minus(m)), &poly(&format!("{x} + {y}*t")));
                // Skip d that happen to be squares in F.
                if let Ok(f) = f {
                    if canonical_trace_form(&EtaleInvolution::new(vec![f.clone()]).unwrap()).is_ok() {
                        return f;
                    }
                }
            }
            4 if room >= 2 => {
                let m = pick(rng, &QUADRATIC);
                return InvolutionFactor::split(&poly(&minus(m))).unwrap();
            }
            5 if room >= 3 => return quad("t^3 - 2", ["t", "-1 - t", "3"][rng.gen_range(0..3)]),
            _ => {}
        }
    }
}

pub fn random_algebra(rng: &mut ChaCha8Rng) -> EtaleInvolution {
    let n = rng.gen_range(1..=4);
    let mut factors = Vec::new();
    let mut used = 0;
    while used < n {
        let f = random_factor(rng, n - used);
        used += f.degree();
        factors.push(f);
    }
    EtaleInvolution::new(factors).unwrap()
}

const PRIMES: [u64; 6] = [3, 5, 7, 11, 13, 17];

fn residue(rng: &mut ChaCha8Rng, p: u64, want: i8) -> i64 {
    loop {
        let d = rng.gen_range(-60i64..=60);
        if d != 0 && legendre(d as i128, p) == want {
            return d;
        }
    }
}

fn unit_or_p(rng: &mut ChaCha8Rng, p: u64) -> i128 {
    loop {
        let x = rng.gen_range(-40i128..=40);
        if x != 0 {
            return if rng.gen_bool(0.2) { x * p as i128 } else { x };
        }
    }
}

/// ⟨x₁, −x₁c₁², …⟩ with probability ½, then one entry rescaled at random.
fn near_hyperbolic(rng: &mut ChaCha8Rng, n: usize, p: u64) -> Vec<i128> {
    let mut v = Vec::new();
    for _ in 0..n {
        let x = unit_or_p(rng, p);
        let c = rng.gen_range(1i128..=5);
        v.push(x);
        v.push(-x * c * c);
    }
    if rng.gen_bool(0.5) {
        let i = rng.gen_range(0..v.len());
        v[i] *= [2i128, 3, 5, p as i128, -1][rng.gen_range(0..5)];
    }
    v
}

fn invariants(entries: &[i128]) -> f4tori::forms::WittInvariants {
    let ints: Vec<i64> = entries.iter().map(|&x| x as i64).collect();
    invariants_of(&DiagonalForm::from_ints(&ints)).unwrap()
}

pub fn rational_factors(ds: &[i64]) -> EtaleInvolution {
    EtaleInvolution::new(ds.iter().map(|d| quad("t", &d.to_string())).collect()).unwrap()
}

/// Case (a): every factor split at p, compared with a hyperbolicity test on the entries.
pub fn case_a(rng: &mut ChaCha8Rng) -> (bool, bool) {
    let p = PRIMES[rng.gen_range(0..PRIMES.len())];
    let n = rng.gen_range(1..=4);
    let ds: Vec<i64> = (0..n).map(|_| residue(rng, p, 1)).collect();
    let inst = Instance::new(rational_factors(&ds));
    for i in 0..n {
        assert_eq!(inst.status(i, p), SplitStatus::AllSplit);
    }
    let q = near_hyperbolic(rng, n, p);
    let got = local_orth_realizable(&inst, &invariants(&q), Place::Prime(p)).unwrap().is_yes();
    (got, hyperbolic_odd(&q, p))
}

/// Case (b): some factor non-split at p, compared with the square class of disc(q) disc(E).
pub fn case_b(rng: &mut ChaCha8Rng) -> (bool, bool) {
    let p = PRIMES[rng.gen_range(0..PRIMES.len())];
    let n = rng.gen_range(1..=4);
    let mut ds: Vec<i64> = (0..n)
        .map(|_| {
            let want = if rng.gen_bool(0.5) { 1 } else { -1 };
            residue(rng, p, want)
        })
        .collect();
    ds[0] = residue(rng, p, -1);
    let inst = Instance::new(rational_factors(&ds));
    let mut q = near_hyperbolic(rng, n, p);
    // Aim at the right discriminant half of the time.
    if rng.gen_bool(0.5) {
        q[0] *= ds.iter().map(|&d| d as i128).product::<i128>();
    }
    let got = local_orth_realizable(&inst, &invariants(&q), Place::Prime(p)).unwrap().is_yes();
    let sign = if n % 2 == 1 { -1 } else { 1 };
    let det: i128 = q.iter().product();
    let disc_e: i128 = ds.iter().map(|&d| d as i128).product();
    (got, is_square_odd(sign * det * disc_e, p))
}

/// Case (c): real place, compared with enumeration of (r′, s′).
pub fn case_c(rng: &mut ChaCha8Rng) -> (bool, bool) {
    let n_real = rng.gen_range(0..=3);
    let n_imag = rng.gen_range(0..=1);
    let ds: Vec<i64> = (0..n_real.max(1 - n_imag)).map(|_| [-3i64, -1, 2, 5][rng.gen_range(0..4)]).collect();
    let mut factors: Vec<_> = ds.iter().map(|d| quad("t", &d.to_string())).collect();
    for _ in 0..n_imag {
        factors.push(quad("t^2 + 1", &["3", "t", "1 + 2*t"][rng.gen_range(0..3)].to_string()));
    }
    let inst = Instance::new(EtaleInvolution::new(factors).unwrap());
    let dim = 2 * (ds.len() + 2 * n_imag);
    let pos = rng.gen_range(0..=dim);
    let q: Vec<i128> = (0..dim).map(|i| if i < pos { 1 + i as i128 } else { -1 - i as i128 }).collect();
    let got = local_orth_realizable(&inst, &invariants(&q), Place::Real).unwrap().is_yes();
    let rho = ds.iter().filter(|&&d| d > 0).count();
    (got, real_shape_exists(signature(&q), rho, n_imag))
}
