//! Factorization of rational polynomials: factor modulo a good prime, Hensel
//! lift, recombine.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::modp::PolyModP;
use super::poly::Poly;
use super::rational::Rational;
use crate::error::ArithError;

type IntPoly = Vec<BigInt>;

fn trim(mut v: IntPoly) -> IntPoly {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn imul(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn reduce(a: &[BigInt], m: &BigInt) -> IntPoly {
    trim(a.iter().map(|x| x.mod_floor(m)).collect())
}

fn symmetric(a: &[BigInt], m: &BigInt) -> IntPoly {
    let half = m / 2;
    trim(
        a.iter()
            .map(|x| {
                let r = x.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn isub(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    trim((0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect())
}

fn iadd(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    trim((0..n).map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z)).collect())
}

fn iscale(a: &[BigInt], k: &BigInt) -> IntPoly {
    trim(a.iter().map(|x| x * k).collect())
}

/// Lift `f = g*h mod p` (h monic, lc(g) = lc(f)) to a factorization mod `p^k`.
fn hensel_pair(f: &IntPoly, g: &PolyModP, h: &PolyModP, p: u64, k: u32) -> (IntPoly, IntPoly) {
    let (one, s, t) = g.ext_gcd(h);
    debug_assert_eq!(one, PolyModP::one(p));
    let pb = BigInt::from(p);
    let mut g_int = g.to_bigints();
    let mut h_int = h.to_bigints();
    let mut pj = pb.clone();
    for _ in 1..k {
        let pk_next = &pj * &pb;
        let diff = reduce(&isub(f, &imul(&g_int, &h_int)), &pk_next);
        let e_int: IntPoly = diff.iter().map(|x| x / &pj).collect();
        let e = PolyModP::from_bigints(&e_int, p);
        let (q, dh) = e.mul(&s).div_rem(h);
        let dg = e.mul(&t).add(&q.mul(g));
        g_int = reduce(&iadd(&g_int, &iscale(&dg.to_bigints(), &pj)), &pk_next);
        h_int = reduce(&iadd(&h_int, &iscale(&dh.to_bigints(), &pj)), &pk_next);
        pj = pk_next;
    }
    (g_int, h_int)
}

/// Lift `f = lc * prod(factors) mod p` to monic factors modulo `p^k`.
fn hensel_multi(f: &IntPoly, factors: &[PolyModP], p: u64, k: u32) -> Vec<IntPoly> {
    let pk = BigInt::from(p).pow(k);
    if factors.len() == 1 {
        // Monic representative of f / lc mod p^k.
        let lc = f.last().unwrap().mod_floor(&pk);
        let inv = lc.modinv(&pk).expect("lc coprime to p");
        return vec![reduce(&iscale(f, &inv), &pk)];
    }
    let mid = factors.len() / 2;
    let prod = |fs: &[PolyModP]| fs.iter().fold(PolyModP::one(p), |a, b| a.mul(b));
    let lc_mod = f.last().unwrap().mod_floor(&BigInt::from(p));
    let lc_small: u64 = lc_mod.try_into().unwrap();
    let g = prod(&factors[..mid]).scale(lc_small);
    let h = prod(&factors[mid..]);
    let (g_l, h_l) = hensel_pair(f, &g, &h, p, k);
    let mut out = hensel_multi(&g_l, &factors[..mid], p, k);
    out.extend(hensel_multi(&h_l, &factors[mid..], p, k));
    out
}

fn primitive_part(v: &IntPoly) -> IntPoly {
    let c = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if c.is_zero() {
        return v.clone();
    }
    let c = if v.last().unwrap().is_negative() { -c } else { c };
    v.iter().map(|x| x / &c).collect()
}

fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, size, &mut Vec::new(), &mut out);
    out
}

/// Irreducible factors over Q of a squarefree polynomial, each monic, sorted by
/// degree then coefficients.
pub fn factor_squarefree(f: &Poly) -> Result<Vec<Poly>, ArithError> {
    f.require_squarefree()?;
    let mut out = Vec::new();
    if f.is_constant() {
        return Ok(out);
    }
    let mut work = f.primitive_integer();
    // t divides f at most once.
    if work[0].is_zero() {
        out.push(Poly::x());
        work.remove(0);
    }
    let n = work.len() - 1;
    if n == 0 {
        return Ok(out);
    }
    if n == 1 {
        out.push(Poly::from_bigints(&work).monic());
        sort_factors(&mut out);
        return Ok(out);
    }
    let lc = work.last().unwrap().clone();
    let mut p = 3u64;
    let modp = loop {
        if super::local::is_prime_u64(p) && !(&lc % BigInt::from(p)).is_zero() {
            let fp = PolyModP::from_bigints(&work, p);
            if fp.is_squarefree() {
                break fp;
            }
        }
        p += 2;
    };
    let mut factors = modp.factor_squarefree();
    if factors.len() == 1 {
        out.push(Poly::from_bigints(&work).monic());
        sort_factors(&mut out);
        return Ok(out);
    }
    let norm2: BigInt = work.iter().map(|c| c * c).sum::<BigInt>().sqrt() + 1;
    let bound = &lc.abs() * (BigInt::one() << n) * norm2 * 2;
    let pb = BigInt::from(p);
    let mut k = 1u32;
    while pb.pow(k) <= bound {
        k += 1;
    }
    let pk = pb.pow(k);
    let lifted = hensel_multi(&work, &factors, p, k);
    let mut lifted: Vec<IntPoly> = lifted;
    let mut current = Poly::from_bigints(&work);
    let mut size = 1;
    while 2 * size <= lifted.len() {
        let mut found = None;
        for s in subsets(lifted.len(), size) {
            let lc_cur = current.primitive_integer().last().unwrap().clone();
            let cand = s.iter().fold(vec![lc_cur.clone()], |acc, &i| imul(&acc, &lifted[i]));
            let cand = primitive_part(&symmetric(&cand, &pk));
            let cand_poly = Poly::from_bigints(&cand);
            let (q, r) = current.div_rem(&cand_poly)?;
            if r.is_zero() {
                found = Some((s, cand_poly, q));
                break;
            }
        }
        match found {
            Some((s, cand, q)) => {
                out.push(cand.monic());
                current = Poly::from_bigints(&q.primitive_integer());
                for &i in s.iter().rev() {
                    lifted.remove(i);
                    factors.remove(i);
                }
            }
            None => size += 1,
        }
    }
    if !current.is_constant() {
        out.push(current.monic());
    }
    sort_factors(&mut out);
    Ok(out)
}

fn sort_factors(v: &mut [Poly]) {
    v.sort_by(|a, b| {
        a.deg().cmp(&b.deg()).then_with(|| {
            let ka: Vec<Rational> = a.coeffs().to_vec();
            let kb: Vec<Rational> = b.coeffs().to_vec();
            ka.cmp(&kb)
        })
    });
}

pub fn is_irreducible(f: &Poly) -> Result<bool, ArithError> {
    if f.is_constant() {
        return Ok(false);
    }
    if !f.is_squarefree() {
        return Ok(false);
    }
    Ok(factor_squarefree(f)?.len() == 1)
}
