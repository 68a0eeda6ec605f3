//! Polynomials over a prime field F_p with word-sized p.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::poly::Poly;
use super::rational::Rational;

/// Dense polynomial over F_p, ascending coefficients, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyModP {
    pub p: u64,
    pub c: Vec<u64>,
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn powmod_u64(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    powmod_u64(a, p - 2, p)
}

/// Reduce a rational modulo p; `None` if p divides the denominator.
pub fn rational_mod(x: &Rational, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let d = x.denom().mod_floor(&pb).to_u64().unwrap();
    if d == 0 {
        return None;
    }
    let n = x.numer().mod_floor(&pb).to_u64().unwrap();
    Some(mulmod(n, inv_mod(d, p), p))
}

impl PolyModP {
    pub fn new(p: u64, mut c: Vec<u64>) -> Self {
        for x in c.iter_mut() {
            *x %= p;
        }
        while c.last() == Some(&0) {
            c.pop();
        }
        PolyModP { p, c }
    }

    /// Reduce a rational polynomial; `None` if p divides a denominator.
    pub fn from_poly(f: &Poly, p: u64) -> Option<Self> {
        let c = f.coeffs().iter().map(|x| rational_mod(x, p)).collect::<Option<Vec<_>>>()?;
        Some(PolyModP::new(p, c))
    }

    pub fn from_bigints(f: &[BigInt], p: u64) -> Self {
        let pb = BigInt::from(p);
        PolyModP::new(p, f.iter().map(|x| x.mod_floor(&pb).to_u64().unwrap()).collect())
    }

    pub fn zero(p: u64) -> Self {
        PolyModP { p, c: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        PolyModP::new(p, vec![1])
    }

    pub fn x(p: u64) -> Self {
        PolyModP::new(p, vec![0, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn lc(&self) -> u64 {
        *self.c.last().unwrap_or(&0)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let v =
            (0..n).map(|i| (self.c.get(i).copied().unwrap_or(0) + o.c.get(i).copied().unwrap_or(0)) % self.p).collect();
        PolyModP::new(self.p, v)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let p = self.p;
        let v =
            (0..n).map(|i| (self.c.get(i).copied().unwrap_or(0) + p - o.c.get(i).copied().unwrap_or(0)) % p).collect();
        PolyModP::new(p, v)
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return PolyModP::zero(self.p);
        }
        let p = self.p;
        let mut v = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                v[i + j] = (v[i + j] + mulmod(a, b, p)) % p;
            }
        }
        PolyModP::new(p, v)
    }

    pub fn scale(&self, k: u64) -> Self {
        PolyModP::new(self.p, self.c.iter().map(|&a| mulmod(a, k, self.p)).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(inv_mod(self.lc(), self.p))
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let p = self.p;
        let dd = d.degree();
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (PolyModP::zero(p), self.clone());
        }
        let inv = inv_mod(d.lc(), p);
        let mut q = vec![0u64; r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = mulmod(r[k + dd], inv, p);
            if c != 0 {
                for (j, &dc) in d.c.iter().enumerate() {
                    r[k + j] = (r[k + j] + p - mulmod(c, dc, p)) % p;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (PolyModP::new(p, q), PolyModP::new(p, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s*self + t*o = g` and `g` monic.
    pub fn ext_gcd(&self, o: &Self) -> (Self, Self, Self) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (PolyModP::one(p), PolyModP::zero(p));
        let (mut t0, mut t1) = (PolyModP::zero(p), PolyModP::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        let inv = inv_mod(r0.lc(), p);
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    pub fn derivative(&self) -> Self {
        let p = self.p;
        PolyModP::new(p, self.c.iter().enumerate().skip(1).map(|(i, &a)| mulmod(a, i as u64 % p, p)).collect())
    }

    /// `self^e mod m` for a big exponent.
    pub fn powmod(&self, e: &BigUint, m: &Self) -> Self {
        let mut result = PolyModP::one(self.p).rem(m);
        let mut base = self.rem(m);
        for i in 0..e.bits() {
            if e.bit(i) {
                result = result.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
        }
        result
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).degree() == 0
    }

    /// Distinct-degree factorization of a monic squarefree polynomial:
    /// pairs `(product of all irreducible factors of degree d, d)`.
    pub fn distinct_degree(&self) -> Vec<(PolyModP, usize)> {
        let p = self.p;
        let mut out = Vec::new();
        let mut f = self.monic();
        let x = PolyModP::x(p);
        let mut h = x.clone();
        let pb = BigUint::from(p);
        let mut d = 0;
        while f.degree() >= 2 * (d + 1) {
            d += 1;
            h = h.powmod(&pb, &f);
            let g = h.sub(&x).gcd(&f);
            if g.degree() > 0 {
                f = f.div_rem(&g).0;
                h = h.rem(&f);
                out.push((g, d));
            }
        }
        if f.degree() > 0 {
            let deg = f.degree();
            out.push((f, deg));
        }
        out
    }

    /// Equal-degree splitting into monic irreducible factors of degree `d`.
    fn equal_degree(&self, d: usize, rng: &mut ChaCha8Rng) -> Vec<PolyModP> {
        let p = self.p;
        let n = self.degree();
        if n == d {
            return vec![self.monic()];
        }
        loop {
            let a = PolyModP::new(p, (0..n).map(|_| rng.gen_range(0..p)).collect());
            if a.degree() == 0 {
                continue;
            }
            let g = if p == 2 {
                // Trace map a + a^2 + ... + a^{2^{d-1}}.
                let mut t = a.rem(self);
                let mut acc = t.clone();
                for _ in 1..d {
                    t = t.mul(&t).rem(self);
                    acc = acc.add(&t);
                }
                acc.gcd(self)
            } else {
                let e = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
                a.powmod(&e, self).sub(&PolyModP::one(p)).gcd(self)
            };
            if g.degree() > 0 && g.degree() < n {
                let h = self.div_rem(&g).0;
                let mut out = g.equal_degree(d, rng);
                out.extend(h.equal_degree(d, rng));
                return out;
            }
        }
    }

    /// Monic irreducible factors of a squarefree polynomial, sorted by (degree, coefficients).
    pub fn factor_squarefree(&self) -> Vec<PolyModP> {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let mut out = Vec::new();
        for (g, d) in self.distinct_degree() {
            out.extend(g.equal_degree(d, &mut rng));
        }
        out.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.c.cmp(&b.c)));
        out
    }

    /// For irreducible `self` of degree f and nonzero `a` reduced mod `self`:
    /// whether `a` is a square in `F_p[x]/(self) = F_{p^f}`.
    pub fn is_square_in_residue_field(&self, a: &PolyModP) -> bool {
        let a = a.rem(self);
        assert!(!a.is_zero(), "zero residue");
        if self.p == 2 {
            return true;
        }
        let e = (BigUint::from(self.p).pow(self.degree() as u32) - 1u32) / 2u32;
        a.powmod(&e, self) == PolyModP::one(self.p)
    }

    pub fn to_bigints(&self) -> Vec<BigInt> {
        self.c.iter().map(|&a| BigInt::from(a)).collect()
    }
}

/// Smallest odd prime at least `from` not dividing `n`.
pub fn prime_not_dividing(n: &BigInt, from: u64) -> u64 {
    let mut p = from.max(3);
    loop {
        if super::local::is_prime_u64(p) && !(n % BigInt::from(p)).is_zero() {
            return p;
        }
        p += 1;
    }
}

pub fn is_one_poly(f: &PolyModP) -> bool {
    f.c.len() == 1 && f.c[0].is_one()
}
