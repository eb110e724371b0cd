//! Polynomials of degree < 64 over F_2 or F_3, packed into machine words.
//!
//! Over F_2 bit i of `lo` is the coefficient of t^i and `hi` is zero. Over F_3
//! bit i of `lo` marks coefficient 1 and bit i of `hi` marks coefficient 2.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Poly {
    pub lo: u64,
    pub hi: u64,
}

pub const ZERO: Poly = Poly { lo: 0, hi: 0 };
pub const ONE: Poly = Poly { lo: 1, hi: 0 };

impl Poly {
    pub fn monomial(e: u32) -> Poly {
        assert!(e < 64, "degree overflow");
        Poly { lo: 1 << e, hi: 0 }
    }

    pub fn is_zero(self) -> bool {
        self.lo | self.hi == 0
    }

    /// Valuation, 64 for zero.
    pub fn val(self) -> u32 {
        (self.lo | self.hi).trailing_zeros()
    }

    /// Degree, -1 for zero.
    pub fn deg(self) -> i32 {
        63 - (self.lo | self.hi).leading_zeros() as i32
    }

    pub fn coeff(self, i: u32) -> u8 {
        ((self.lo >> i) & 1) as u8 | ((((self.hi >> i) & 1) as u8) << 1)
    }

    pub fn shl(self, k: u32) -> Poly {
        if k >= 64 {
            assert!(self.is_zero(), "degree overflow");
            return ZERO;
        }
        debug_assert!(self.deg() + (k as i32) < 64, "degree overflow");
        Poly { lo: self.lo << k, hi: self.hi << k }
    }

    pub fn shr(self, k: u32) -> Poly {
        if k >= 64 {
            return ZERO;
        }
        Poly { lo: self.lo >> k, hi: self.hi >> k }
    }

    /// Reduction modulo t^n.
    pub fn trunc(self, n: u32) -> Poly {
        if n >= 64 {
            return self;
        }
        let m = (1u64 << n) - 1;
        Poly { lo: self.lo & m, hi: self.hi & m }
    }

    /// Coefficients, low degree first, up to the degree.
    pub fn coeffs(self) -> Vec<u8> {
        (0..=self.deg()).map(|i| self.coeff(i as u32)).collect()
    }

    pub fn from_coeffs(c: &[u8], p: u8) -> Poly {
        let mut r = ZERO;
        for (i, &x) in c.iter().enumerate() {
            match x % p {
                1 => r.lo |= 1 << i,
                2 => r.hi |= 1 << i,
                _ => {}
            }
        }
        r
    }
}

/// Arithmetic in F_p[t] for p in {2, 3}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Ring {
    pub p: u8,
}

impl Ring {
    pub fn new(p: u8) -> Ring {
        assert!(p == 2 || p == 3, "packed polynomials support p = 2, 3");
        Ring { p }
    }

    #[inline]
    pub fn add(self, x: Poly, y: Poly) -> Poly {
        if self.p == 2 {
            return Poly { lo: x.lo ^ y.lo, hi: 0 };
        }
        let t = (x.lo | y.hi) ^ (x.hi | y.lo);
        Poly { lo: (x.hi | y.hi) ^ t, hi: (x.lo | y.lo) ^ t }
    }

    #[inline]
    pub fn neg(self, x: Poly) -> Poly {
        if self.p == 2 {
            x
        } else {
            Poly { lo: x.hi, hi: x.lo }
        }
    }

    #[inline]
    pub fn sub(self, x: Poly, y: Poly) -> Poly {
        self.add(x, self.neg(y))
    }

    /// Multiplication by a scalar in F_p.
    pub fn scale(self, c: u8, x: Poly) -> Poly {
        match c % self.p {
            0 => ZERO,
            1 => x,
            _ => self.neg(x),
        }
    }

    pub fn mul(self, x: Poly, y: Poly) -> Poly {
        if x.is_zero() || y.is_zero() {
            return ZERO;
        }
        assert!(x.deg() + y.deg() < 64, "degree overflow");
        let (x, y) = if (x.lo | x.hi).count_ones() <= (y.lo | y.hi).count_ones() { (x, y) } else { (y, x) };
        let mut acc = ZERO;
        if self.p == 2 {
            let mut bits = x.lo;
            while bits != 0 {
                let i = bits.trailing_zeros();
                acc.lo ^= y.lo << i;
                bits &= bits - 1;
            }
            return acc;
        }
        let mut bits = x.lo | x.hi;
        while bits != 0 {
            let i = bits.trailing_zeros();
            let term = Poly { lo: y.lo << i, hi: y.hi << i };
            acc = if (x.hi >> i) & 1 == 1 { self.sub(acc, term) } else { self.add(acc, term) };
            bits &= bits - 1;
        }
        acc
    }

    /// Product modulo t^n.
    pub fn mul_trunc(self, x: Poly, y: Poly, n: u32) -> Poly {
        self.mul(x.trunc(n), y.trunc(n)).trunc(n)
    }

    /// Inverse of a unit (nonzero constant term) modulo t^n.
    pub fn unit_inverse(self, u: Poly, n: u32) -> Poly {
        let c0 = u.coeff(0);
        assert!(c0 != 0, "not a unit");
        // c0 is its own inverse in F_2 and F_3
        let mut r = self.scale(c0, ONE);
        for k in 1..n {
            let c = self.mul_trunc(u, r, k + 1).coeff(k);
            if c != 0 {
                // subtract c * c0^{-1} t^k
                let fix = self.scale(c * c0 % self.p, Poly::monomial(k));
                r = self.sub(r, fix);
            }
        }
        r
    }

    /// Polynomial division by t^v when exact.
    pub fn div_monomial(self, x: Poly, v: u32) -> Poly {
        debug_assert!(x.is_zero() || x.val() >= v);
        x.shr(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_mul(x: &[u8], y: &[u8], p: u8) -> Vec<u8> {
        let mut r = vec![0u8; x.len() + y.len()];
        for (i, &a) in x.iter().enumerate() {
            for (j, &b) in y.iter().enumerate() {
                r[i + j] = (r[i + j] + a * b) % p;
            }
        }
        while r.last() == Some(&0) {
            r.pop();
        }
        r
    }

    #[test]
    fn f3_addition_table() {
        let r = Ring::new(3);
        for a in 0..3u8 {
            for b in 0..3u8 {
                let s = r.add(Poly::from_coeffs(&[a], 3), Poly::from_coeffs(&[b], 3));
                assert_eq!(s.coeff(0), (a + b) % 3);
            }
        }
    }

    #[test]
    fn products_match_schoolbook() {
        for p in [2u8, 3] {
            let r = Ring::new(p);
            let x = [1u8, 2, 0, 1, 1];
            let y = [2u8, 1, 1];
            let x: Vec<u8> = x.iter().map(|c| c % p).collect();
            let y: Vec<u8> = y.iter().map(|c| c % p).collect();
            let prod = r.mul(Poly::from_coeffs(&x, p), Poly::from_coeffs(&y, p));
            assert_eq!(prod.coeffs(), naive_mul(&x, &y, p));
        }
    }

    #[test]
    fn unit_inverse() {
        for p in [2u8, 3] {
            let r = Ring::new(p);
            let u = Poly::from_coeffs(&[p - 1, 1, 0, 1], p);
            let inv = r.unit_inverse(u, 10);
            assert_eq!(r.mul_trunc(u, inv, 10), ONE);
        }
    }
}
