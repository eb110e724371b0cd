//! Finite fields F_{p^k} with elements encoded as integers whose base-p digits
//! are the coefficients (least significant digit = constant term).

use crate::error::{Error, Result};
use serde::Serialize;

const MAX_ORDER: u64 = 1 << 20;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Returns `(p, k)` with `q = p^k`, or `None` if `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    let f = prime_factors(q);
    if f.len() != 1 {
        return None;
    }
    let p = f[0];
    let mut k = 0;
    let mut m = q;
    while m > 1 {
        m /= p;
        k += 1;
    }
    Some((p, k))
}

#[derive(Clone, Debug, Serialize)]
pub struct FieldSpec {
    pub p: u32,
    pub k: u32,
    /// Monic defining polynomial, coefficients low degree first, length k+1.
    pub poly: Vec<u32>,
    #[serde(skip)]
    q: u32,
    #[serde(skip)]
    generator: u32,
    #[serde(skip)]
    exp: Vec<u32>,
    #[serde(skip)]
    log: Vec<u32>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.poly == other.poly
    }
}

impl Eq for FieldSpec {}

// Polynomials over F_p as coefficient vectors, low degree first.
fn trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p);
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let c = r[r.len() - 1] * lead_inv % p;
        for (i, &mi) in m.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - c * mi % p) % p;
        }
        trim(&mut r);
    }
    r
}

fn poly_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            r[i + j] = (r[i + j] + x * y) % p;
        }
    }
    trim(&mut r);
    r
}

fn inv_mod(a: u32, p: u32) -> u32 {
    let mut r = 1u64;
    let mut b = a as u64 % p as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    r as u32
}

fn is_irreducible(f: &[u32], p: u32) -> bool {
    let k = f.len() - 1;
    for d in 1..=k / 2 {
        let count = (p as u64).pow(d as u32);
        for code in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut c = code;
            for _ in 0..d {
                g.push((c % p as u64) as u32);
                c /= p as u64;
            }
            g.push(1);
            if poly_rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Smallest monic irreducible of degree k with nonzero constant term,
/// coefficient lists compared from the constant term upward.
pub fn smallest_irreducible(p: u32, k: u32) -> Vec<u32> {
    let count = (p as u64).pow(k);
    for ord in 0..count {
        // c0 is the most significant digit of ord
        let mut f = vec![0u32; k as usize + 1];
        let mut c = ord;
        for i in (0..k as usize).rev() {
            f[i] = (c % p as u64) as u32;
            c /= p as u64;
        }
        f[k as usize] = 1;
        if f[0] == 0 {
            continue;
        }
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl FieldSpec {
    pub fn new(p: u64, k: u32) -> Result<FieldSpec> {
        if !is_prime(p) {
            return Err(Error::NonPrimeCharacteristic(p));
        }
        if k == 0 {
            return Err(Error::DegreeTooLarge("degree must be at least 1".into()));
        }
        match p.checked_pow(k) {
            Some(q) if q <= MAX_ORDER => {}
            _ => return Err(Error::DegreeTooLarge(format!("{}^{} exceeds 2^20", p, k))),
        }
        let p = p as u32;
        let poly = smallest_irreducible(p, k);
        let q = p.pow(k);
        let mut f = FieldSpec { p, k, poly, q, generator: 0, exp: Vec::new(), log: Vec::new() };
        f.generator = f.find_primitive();
        f.build_tables();
        Ok(f)
    }

    /// Field of order q (a prime power).
    pub fn of_order(q: u64) -> Result<FieldSpec> {
        match prime_power(q) {
            Some((p, k)) => FieldSpec::new(p, k),
            None => Err(Error::NonPrimeCharacteristic(q)),
        }
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn generator(&self) -> u32 {
        self.generator
    }

    pub fn digits(&self, a: u32) -> Vec<u32> {
        let mut v = Vec::with_capacity(self.k as usize);
        let mut c = a;
        for _ in 0..self.k {
            v.push(c % self.p);
            c /= self.p;
        }
        v
    }

    pub fn from_digits(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0, |acc, &x| acc * self.p + x % self.p)
    }

    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        let r = poly_rem(&poly_mul(&self.digits(a), &self.digits(b), self.p), &self.poly, self.p);
        self.from_digits(&r)
    }

    fn find_primitive(&self) -> u32 {
        if self.q == 2 {
            return 1;
        }
        let n = (self.q - 1) as u64;
        let primes = prime_factors(n);
        'cand: for g in 1..self.q {
            for &r in &primes {
                let mut acc = 1;
                let mut base = g;
                let mut e = n / r;
                while e > 0 {
                    if e & 1 == 1 {
                        acc = self.slow_mul(acc, base);
                    }
                    base = self.slow_mul(base, base);
                    e >>= 1;
                }
                if acc == 1 {
                    continue 'cand;
                }
            }
            return g;
        }
        unreachable!()
    }

    fn build_tables(&mut self) {
        let n = (self.q - 1) as usize;
        self.exp = vec![0; n];
        self.log = vec![0; self.q as usize];
        let mut x = 1;
        for i in 0..n {
            self.exp[i] = x;
            self.log[x as usize] = i as u32;
            x = self.slow_mul(x, self.generator);
        }
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        let (mut a, mut b) = (a, b);
        let mut r = 0;
        let mut place = 1;
        while a > 0 || b > 0 {
            r += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        r
    }

    pub fn neg(&self, a: u32) -> u32 {
        if self.p == 2 {
            return a;
        }
        let mut a = a;
        let mut r = 0;
        let mut place = 1;
        while a > 0 {
            r += ((self.p - a % self.p) % self.p) * place;
            a /= self.p;
            place *= self.p;
        }
        r
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.q - 1;
        let s = self.log[a as usize] + self.log[b as usize];
        self.exp[(if s >= n { s - n } else { s }) as usize]
    }

    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero");
        let n = self.q - 1;
        let l = self.log[a as usize];
        self.exp[((n - l) % n) as usize]
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = (self.q - 1) as u64;
        self.exp[((self.log[a as usize] as u64 * (e % n)) % n) as usize]
    }

    /// Discrete logarithm to the base of the canonical generator.
    pub fn log(&self, a: u32) -> Option<u32> {
        if a == 0 {
            None
        } else {
            Some(self.log[a as usize])
        }
    }

    /// g^i for the canonical generator g.
    pub fn exp(&self, i: u64) -> u32 {
        self.exp[(i % (self.q as u64 - 1)) as usize]
    }

    /// Embeds an element of F_p.
    pub fn scalar(&self, c: u32) -> u32 {
        c % self.p
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.q
    }
}
