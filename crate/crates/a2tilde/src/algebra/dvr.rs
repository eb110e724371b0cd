//! 3x3 matrices over F_q((t)) and their elementary divisors over F_q[[t]].

use super::field::FieldSpec;
use crate::error::{Error, Result};
use serde::Serialize;

/// `t^val * (c_0 + c_1 t + ...)`. The zero series has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Laurent {
    pub val: i64,
    pub coeffs: Vec<u32>,
}

impl Laurent {
    pub fn zero() -> Laurent {
        Laurent { val: 0, coeffs: Vec::new() }
    }

    pub fn monomial(c: u32, e: i64) -> Laurent {
        Laurent::new(e, vec![c])
    }

    pub fn new(val: i64, coeffs: Vec<u32>) -> Laurent {
        let mut l = Laurent { val, coeffs };
        l.normalize();
        l
    }

    fn normalize(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|&&c| c == 0).count();
        if lead == self.coeffs.len() {
            self.coeffs.clear();
            self.val = 0;
        } else if lead > 0 {
            self.coeffs.drain(..lead);
            self.val += lead as i64;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Valuation; `None` for zero.
    pub fn valuation(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.val)
        }
    }

    /// Exponent one past the highest stored term.
    pub fn top(&self) -> i64 {
        self.val + self.coeffs.len() as i64
    }

    pub fn coeff(&self, e: i64) -> u32 {
        let i = e - self.val;
        if i < 0 || i >= self.coeffs.len() as i64 {
            0
        } else {
            self.coeffs[i as usize]
        }
    }

    pub fn add(&self, o: &Laurent, f: &FieldSpec) -> Laurent {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let lo = self.val.min(o.val);
        let hi = self.top().max(o.top());
        let coeffs = (lo..hi).map(|e| f.add(self.coeff(e), o.coeff(e))).collect();
        Laurent::new(lo, coeffs)
    }

    pub fn neg(&self, f: &FieldSpec) -> Laurent {
        Laurent { val: self.val, coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect() }
    }

    pub fn sub(&self, o: &Laurent, f: &FieldSpec) -> Laurent {
        self.add(&o.neg(f), f)
    }

    pub fn mul(&self, o: &Laurent, f: &FieldSpec) -> Laurent {
        if self.is_zero() || o.is_zero() {
            return Laurent::zero();
        }
        let mut c = vec![0; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                c[i + j] = f.add(c[i + j], f.mul(a, b));
            }
        }
        Laurent::new(self.val + o.val, c)
    }

    /// Drops every term of exponent >= n.
    pub fn truncate(&self, n: i64) -> Laurent {
        if self.top() <= n {
            return self.clone();
        }
        if self.val >= n {
            return Laurent::zero();
        }
        Laurent::new(self.val, self.coeffs[..(n - self.val) as usize].to_vec())
    }

    pub fn shift(&self, k: i64) -> Laurent {
        if self.is_zero() {
            return Laurent::zero();
        }
        Laurent { val: self.val + k, coeffs: self.coeffs.clone() }
    }

    /// Inverse of a unit power series (valuation 0) modulo t^n.
    fn unit_inverse(&self, n: i64, f: &FieldSpec) -> Laurent {
        debug_assert_eq!(self.valuation(), Some(0));
        let c0inv = f.inv(self.coeffs[0]);
        let mut inv = vec![0u32; n.max(0) as usize];
        for k in 0..n as usize {
            // sum_{i<=k} a_i inv_{k-i} = [k == 0]
            let mut s = if k == 0 { 1 } else { 0 };
            for i in 1..=k {
                s = f.sub(s, f.mul(self.coeff(i as i64), inv[k - i]));
            }
            inv[k] = f.mul(s, c0inv);
        }
        Laurent::new(0, inv)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DVRMatrix {
    pub entries: [[Laurent; 3]; 3],
    /// Entries are known modulo t^precision.
    pub precision: i64,
}

impl DVRMatrix {
    pub fn new(entries: [[Laurent; 3]; 3], precision: i64) -> DVRMatrix {
        DVRMatrix { entries, precision }
    }

    pub fn identity(precision: i64) -> DVRMatrix {
        let e = |i: usize, j: usize| if i == j { Laurent::monomial(1, 0) } else { Laurent::zero() };
        DVRMatrix::new(
            [[e(0, 0), e(0, 1), e(0, 2)], [e(1, 0), e(1, 1), e(1, 2)], [e(2, 0), e(2, 1), e(2, 2)]],
            precision,
        )
    }

    pub fn diag_monomials(exps: [i64; 3], precision: i64) -> DVRMatrix {
        let mut m = DVRMatrix::identity(precision);
        for i in 0..3 {
            m.entries[i][i] = Laurent::monomial(1, exps[i]);
        }
        m
    }

    pub fn mul(&self, o: &DVRMatrix, f: &FieldSpec) -> DVRMatrix {
        let mut out = DVRMatrix::identity(self.precision.min(o.precision));
        for i in 0..3 {
            for j in 0..3 {
                let mut s = Laurent::zero();
                for k in 0..3 {
                    s = s.add(&self.entries[i][k].mul(&o.entries[k][j], f), f);
                }
                out.entries[i][j] = s;
            }
        }
        out
    }

    pub fn determinant(&self, f: &FieldSpec) -> Laurent {
        let e = &self.entries;
        let minor = |a: usize, b: usize, c: usize, d: usize| {
            e[1][a].mul(&e[2][b], f).sub(&e[1][c].mul(&e[2][d], f), f)
        };
        let t0 = e[0][0].mul(&minor(1, 2, 2, 1), f);
        let t1 = e[0][1].mul(&minor(0, 2, 2, 0), f);
        let t2 = e[0][2].mul(&minor(0, 1, 1, 0), f);
        t0.sub(&t1, f).add(&t2, f)
    }
}

/// Valuations `(a, b, c)`, `a >= b >= c`, of the invariant factors of `m`.
pub fn dvr_elementary_divisors(m: &DVRMatrix, f: &FieldSpec) -> Result<(i64, i64, i64)> {
    let det = m.determinant(f);
    let Some(det_val) = det.valuation() else {
        return Err(Error::SingularMatrix);
    };
    let n = m.precision;
    let s = m
        .entries
        .iter()
        .flatten()
        .filter_map(|x| x.truncate(n).valuation())
        .min()
        .ok_or_else(|| Error::InsufficientPrecision("all entries vanish modulo t^N".into()))?;
    // work with t^{-s} m, whose entries are integral and known modulo t^w
    let w = n - s;
    let mut a: Vec<Vec<Laurent>> =
        m.entries.iter().map(|row| row.iter().map(|x| x.truncate(n).shift(-s)).collect()).collect();
    let mut vals = Vec::with_capacity(3);
    for k in 0..3 {
        let mut best: Option<(usize, usize, i64)> = None;
        for i in k..3 {
            for j in k..3 {
                if let Some(v) = a[i][j].valuation() {
                    if best.map_or(true, |(_, _, bv)| v < bv) {
                        best = Some((i, j, v));
                    }
                }
            }
        }
        let Some((pi, pj, v)) = best else {
            return Err(Error::InsufficientPrecision(format!(
                "block of size {} vanishes modulo t^{}",
                3 - k,
                n
            )));
        };
        a.swap(k, pi);
        for row in a.iter_mut() {
            row.swap(k, pj);
        }
        let unit = a[k][k].shift(-v);
        let uinv = unit.unit_inverse(w - v, f);
        for i in k + 1..3 {
            if a[i][k].is_zero() {
                continue;
            }
            let c = a[i][k].shift(-v).mul(&uinv, f).truncate(w - v);
            for j in k..3 {
                let t = c.mul(&a[k][j], f);
                a[i][j] = a[i][j].sub(&t, f).truncate(w);
            }
        }
        for j in k + 1..3 {
            if a[k][j].is_zero() {
                continue;
            }
            let c = a[k][j].shift(-v).mul(&uinv, f).truncate(w - v);
            for i in k..3 {
                let t = c.mul(&a[i][k], f);
                a[i][j] = a[i][j].sub(&t, f).truncate(w);
            }
        }
        vals.push(v + s);
    }
    vals.sort_unstable_by(|x, y| y.cmp(x));
    let (da, db, dc) = (vals[0], vals[1], vals[2]);
    if da + db + dc != det_val || w < (da - dc) + 2 {
        return Err(Error::InsufficientPrecision(format!(
            "divisors ({}, {}, {}) need relative precision {} but only {} is available",
            da,
            db,
            dc,
            da - dc + 2,
            w
        )));
    }
    Ok((da, db, dc))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_and_diagonal() {
        let f = FieldSpec::new(2, 1).unwrap();
        assert_eq!(dvr_elementary_divisors(&DVRMatrix::identity(8), &f), Ok((0, 0, 0)));
        let d = DVRMatrix::diag_monomials([2, 1, 0], 8);
        assert_eq!(dvr_elementary_divisors(&d, &f), Ok((2, 1, 0)));
    }

    #[test]
    fn singular() {
        let f = FieldSpec::new(2, 1).unwrap();
        let mut d = DVRMatrix::identity(8);
        d.entries[2][2] = Laurent::zero();
        assert_eq!(dvr_elementary_divisors(&d, &f), Err(Error::SingularMatrix));
    }

    #[test]
    fn precision_shortfall() {
        let f = FieldSpec::new(2, 1).unwrap();
        let d = DVRMatrix::diag_monomials([5, 0, 0], 6);
        assert!(matches!(dvr_elementary_divisors(&d, &f), Err(Error::InsufficientPrecision(_))));
    }
}
