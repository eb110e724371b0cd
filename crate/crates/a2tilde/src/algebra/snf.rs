//! Smith normal form of integer matrices with unimodular transforms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> IntMatrix {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Copy>(rows: &[Vec<T>]) -> IntMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = IntMatrix::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                m.data[i * c + j] = v.into();
            }
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] += a * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    // row[dst] += f * row[src]
    fn add_row(&mut self, dst: usize, src: usize, f: &BigInt) {
        for j in 0..self.cols {
            let v = self.get(src, j) * f;
            self.data[dst * self.cols + j] += v;
        }
    }

    fn add_col(&mut self, dst: usize, src: usize, f: &BigInt) {
        for i in 0..self.rows {
            let v = self.get(i, src) * f;
            self.data[i * self.cols + dst] += v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let idx = r * self.cols + j;
            self.data[idx] = -self.data[idx].clone();
        }
    }
}

#[derive(Clone, Debug)]
pub struct Snf {
    pub left: IntMatrix,
    pub diag: IntMatrix,
    pub right: IntMatrix,
}

impl Snf {
    /// Diagonal entries d_1 | d_2 | ... (including zeros).
    pub fn invariants(&self) -> Vec<BigInt> {
        self.diag.diagonal()
    }

    pub fn rank(&self) -> usize {
        self.invariants().iter().filter(|d| !d.is_zero()).count()
    }
}

/// `left * m * right = diag`. Pivot is the nonzero entry of smallest absolute
/// value in the active block, ties broken in row-major order.
pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    let mut a = m.clone();
    let mut left = IntMatrix::identity(m.rows);
    let mut right = IntMatrix::identity(m.cols);
    let n = m.rows.min(m.cols);
    for t in 0..n {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..a.rows {
                for j in t..a.cols {
                    let v = a.get(i, j);
                    if v.is_zero() {
                        continue;
                    }
                    match best {
                        Some((bi, bj)) if a.get(bi, bj).abs() <= v.abs() => {}
                        _ => best = Some((i, j)),
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return Snf { left, diag: a, right };
            };
            a.swap_rows(t, pi);
            left.swap_rows(t, pi);
            a.swap_cols(t, pj);
            right.swap_cols(t, pj);
            let mut dirty = false;
            for i in t + 1..a.rows {
                let (q, r) = a.get(i, t).div_mod_floor(a.get(t, t));
                if !q.is_zero() {
                    let f = -q;
                    a.add_row(i, t, &f);
                    left.add_row(i, t, &f);
                }
                dirty |= !r.is_zero();
            }
            for j in t + 1..a.cols {
                let (q, r) = a.get(t, j).div_mod_floor(a.get(t, t));
                if !q.is_zero() {
                    let f = -q;
                    a.add_col(j, t, &f);
                    right.add_col(j, t, &f);
                }
                dirty |= !r.is_zero();
            }
            if dirty {
                continue;
            }
            // divisibility of the remaining block
            let p = a.get(t, t).clone();
            let mut fix = None;
            'scan: for i in t + 1..a.rows {
                for j in t + 1..a.cols {
                    if !a.get(i, j).is_multiple_of(&p) {
                        fix = Some(i);
                        break 'scan;
                    }
                }
            }
            match fix {
                Some(i) => {
                    let one = BigInt::one();
                    a.add_row(t, i, &one);
                    left.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if a.get(t, t).is_negative() {
            a.negate_row(t);
            left.negate_row(t);
        }
    }
    Snf { left, diag: a, right }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &IntMatrix) -> Snf {
        let s = smith_normal_form(m);
        assert_eq!(s.left.mul(m).mul(&s.right), s.diag);
        s
    }

    #[test]
    fn identity() {
        let s = check(&IntMatrix::identity(3));
        assert_eq!(s.invariants(), vec![BigInt::from(1); 3]);
    }

    #[test]
    fn diag_2_3() {
        let s = check(&IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(s.invariants(), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn gamma0_relations() {
        let m = IntMatrix::from_rows(&[
            vec![7, 0, 0],
            vec![0, 7, 0],
            vec![0, 0, 7],
            vec![1, 1, 3],
            vec![3, 3, 1],
        ]);
        let s = check(&m);
        assert_eq!(s.invariants(), vec![BigInt::from(1), BigInt::from(1), BigInt::from(7)]);
    }
}
