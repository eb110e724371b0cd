//! Homothety classes of O-lattices in K^3, O = F_p[[t]], stored as column
//! Hermite forms.
//!
//! A vertex is the lattice spanned by the columns
//! `(t^e1, 0, 0)`, `(x, t^e2, 0)`, `(y, z, t^e3)` with `deg x, deg y < e1`,
//! `deg z < e2`, scaled so that the smallest entry valuation is 0.

use super::poly::{Poly, Ring, ONE, ZERO};
use crate::apartment::{Shape, TranslationVec};
use serde::{Deserialize, Serialize};
use std::fmt;

pub type Col = [Poly; 3];
/// Row-major 3x3 polynomial matrix.
pub type Mat3 = [[Poly; 3]; 3];

pub const MAX_PRECISION: u32 = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Vertex {
    pub e: [u8; 3],
    pub x: Poly,
    pub y: Poly,
    pub z: Poly,
}

impl Vertex {
    pub fn origin() -> Vertex {
        Vertex { e: [0; 3], x: ZERO, y: ZERO, z: ZERO }
    }

    /// Determinant valuation mod 3.
    pub fn vertex_type(&self) -> u8 {
        (self.e.iter().map(|&v| v as u32).sum::<u32>() % 3) as u8
    }

    fn exps(&self) -> [u32; 3] {
        [self.e[0] as u32, self.e[1] as u32, self.e[2] as u32]
    }

    pub fn basis(&self) -> Mat3 {
        let [e1, e2, e3] = self.exps();
        [
            [Poly::monomial(e1), self.x, self.y],
            [ZERO, Poly::monomial(e2), self.z],
            [ZERO, ZERO, Poly::monomial(e3)],
        ]
    }

    /// Coefficient arrays of the basis matrix, row-major, low degree first.
    pub fn coefficient_rows(&self) -> Vec<Vec<Vec<u8>>> {
        self.basis().iter().map(|row| row.iter().map(|p| p.coeffs()).collect()).collect()
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = |p: Poly| p.coeffs().iter().map(|d| d.to_string()).collect::<String>();
        write!(f, "[{},{},{}|{}|{}|{}]", self.e[0], self.e[1], self.e[2], c(self.x), c(self.y), c(self.z))
    }
}

pub fn diag(n: [u32; 3]) -> Mat3 {
    let mut m = [[ZERO; 3]; 3];
    for k in 0..3 {
        m[k][k] = Poly::monomial(n[k]);
    }
    m
}

pub fn identity() -> Mat3 {
    diag([0; 3])
}

pub fn mat_mul(r: Ring, a: &Mat3, b: &Mat3, n: u32) -> Mat3 {
    let mut out = [[ZERO; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let mut acc = ZERO;
            for k in 0..3 {
                acc = r.add(acc, r.mul_trunc(a[i][k], b[k][j], n));
            }
            out[i][j] = acc;
        }
    }
    out
}

fn columns(m: &Mat3) -> [Col; 3] {
    [[m[0][0], m[1][0], m[2][0]], [m[0][1], m[1][1], m[2][1]], [m[0][2], m[1][2], m[2][2]]]
}

fn trunc_col(c: Col, n: u32) -> Col {
    [c[0].trunc(n), c[1].trunc(n), c[2].trunc(n)]
}

fn axpy(r: Ring, c: Poly, g: &Col, h: &mut Col, n: u32) {
    for k in 0..3 {
        h[k] = r.sub(h[k], r.mul_trunc(c, g[k], n));
    }
}

/// Canonical vertex of the lattice `span(gens) + t^n O^3`.
pub fn canonicalize(r: Ring, gens: &[Col], n: u32) -> Vertex {
    assert!(n <= MAX_PRECISION, "precision {n} exceeds {MAX_PRECISION}");
    let mut work: Vec<Col> = gens.iter().map(|&g| trunc_col(g, n)).filter(|g| g.iter().any(|p| !p.is_zero())).collect();
    let mut pivots = [[ZERO; 3]; 3];
    let mut e = [n; 3];
    for row in (0..3).rev() {
        let best = work
            .iter()
            .enumerate()
            .filter(|(_, g)| !g[row].is_zero())
            .min_by_key(|(_, g)| g[row].val())
            .map(|(i, _)| i);
        let Some(bi) = best else {
            continue;
        };
        let mut g = work.swap_remove(bi);
        let v = g[row].val();
        let u = r.div_monomial(g[row], v);
        let ui = r.unit_inverse(u, n - v);
        for k in 0..3 {
            g[k] = r.mul_trunc(g[k], ui, n);
        }
        for h in work.iter_mut() {
            if !h[row].is_zero() {
                let c = r.div_monomial(h[row], v);
                axpy(r, c, &g, h, n);
            }
        }
        if v > 0 {
            let shifted = trunc_col([g[0].shl(n - v), g[1].shl(n - v), ZERO], n);
            if shifted.iter().any(|p| !p.is_zero()) {
                work.push(shifted);
            }
        }
        work.retain(|h| h.iter().any(|p| !p.is_zero()));
        pivots[row] = g;
        e[row] = v;
    }
    // pivots[2] = (y, z, t^e3), pivots[1] = (x, t^e2, 0)
    let mut x = pivots[1][0];
    let mut y = pivots[2][0];
    let mut z = pivots[2][1];
    let (e1, e2) = (e[0], e[1]);
    let hz = z.shr(e2);
    if !hz.is_zero() {
        z = z.trunc(e2);
        y = r.sub(y, r.mul_trunc(hz, x, n));
    }
    x = x.trunc(e1);
    y = y.trunc(e1);
    let s = [e[0], e[1], e[2], x.val(), y.val(), z.val()].into_iter().min().unwrap();
    Vertex {
        e: [(e[0] - s) as u8, (e[1] - s) as u8, (e[2] - s) as u8],
        x: x.shr(s),
        y: y.shr(s),
        z: z.shr(s),
    }
}

/// Vertex spanned by the columns of an integral matrix whose lattice
/// contains `t^n O^3`.
pub fn from_matrix(r: Ring, m: &Mat3, n: u32) -> Vertex {
    canonicalize(r, &columns(m), n)
}

/// Upper-triangular cofactor data `A = t^E B^{-1}` of a vertex.
#[derive(Clone, Copy, Debug)]
pub struct Frame {
    e: [u32; 3],
    x: Poly,
    y: Poly,
    z: Poly,
    a12: Poly,
    a13: Poly,
    a23: Poly,
}

impl Frame {
    pub fn new(r: Ring, v: &Vertex) -> Frame {
        let e = v.exps();
        Frame {
            e,
            x: v.x,
            y: v.y,
            z: v.z,
            a12: r.neg(v.x.shl(e[2])),
            a13: r.sub(r.mul(v.x, v.z), v.y.shl(e[1])),
            a23: r.neg(v.z.shl(e[0])),
        }
    }

    pub fn e_total(&self) -> u32 {
        self.e[0] + self.e[1] + self.e[2]
    }

    /// Largest elementary divisor exponent relative to the origin.
    pub fn depth(&self) -> u32 {
        self.e_total() - self.min_val_a()
    }

    fn min_val_a(&self) -> u32 {
        let [e1, e2, e3] = self.e;
        [e2 + e3, e1 + e3, e1 + e2, self.a12.val(), self.a13.val(), self.a23.val()].into_iter().min().unwrap()
    }
}

/// Minimal entry valuation of `A_x B_y`.
fn min_val_product(r: Ring, a: &Frame, b: &Frame) -> u32 {
    let [e1, e2, e3] = a.e;
    let [f1, f2, f3] = b.e;
    let mut m = (e2 + e3 + f1).min(e1 + e3 + f2).min(e1 + e2 + f3);
    let p12 = r.add(b.x.shl(e2 + e3), r.mul(a.a12, Poly::monomial(f2)));
    m = m.min(p12.val());
    let p13 = r.add(r.add(b.y.shl(e2 + e3), r.mul(a.a12, b.z)), a.a13.shl(f3));
    m = m.min(p13.val());
    let p23 = r.add(b.z.shl(e1 + e3), a.a23.shl(f3));
    m.min(p23.val())
}

/// Vector distance between two vertices given their frames.
pub fn shape_between(r: Ring, a: &Frame, b: &Frame) -> Shape {
    let ea = a.e_total() as i64;
    let eb = b.e_total() as i64;
    let c = min_val_product(r, a, b) as i64 - ea;
    let top = -(min_val_product(r, b, a) as i64 - eb);
    let mid = (eb - ea) - top - c;
    Shape::new((top - mid) as u32, (mid - c) as u32)
}

pub fn shape(r: Ring, a: &Vertex, b: &Vertex) -> Shape {
    shape_between(r, &Frame::new(r, a), &Frame::new(r, b))
}

/// Largest elementary divisor exponent of a normalized vertex relative to the
/// origin, so that `t^depth O^3` lies in the lattice.
pub fn depth(r: Ring, v: &Vertex) -> u32 {
    Frame::new(r, v).depth()
}

fn subspace_bases(p: u8) -> Vec<Vec<[u8; 3]>> {
    let vectors: Vec<[u8; 3]> = (1..(p as u32).pow(3))
        .map(|k| [(k % p as u32) as u8, ((k / p as u32) % p as u32) as u8, (k / (p as u32 * p as u32)) as u8])
        .collect();
    let normalized: Vec<[u8; 3]> =
        vectors.iter().copied().filter(|v| v.iter().find(|&&c| c != 0) == Some(&1)).collect();
    let mut out: Vec<Vec<[u8; 3]>> = normalized.iter().map(|&v| vec![v]).collect();
    for f in &normalized {
        let kernel: Vec<[u8; 3]> = normalized
            .iter()
            .copied()
            .filter(|w| (0..3).map(|k| f[k] as u32 * w[k] as u32).sum::<u32>() % p as u32 == 0)
            .collect();
        out.push(vec![kernel[0], kernel[1]]);
    }
    out
}

/// The `2(p^2+p+1)` neighbors of a vertex.
pub fn neighbors(r: Ring, v: &Vertex) -> Vec<Vertex> {
    let n = depth(r, v) + 1;
    let cols = columns(&v.basis());
    let tcols: Vec<Col> = cols.iter().map(|c| [c[0].shl(1), c[1].shl(1), c[2].shl(1)]).collect();
    subspace_bases(r.p)
        .into_iter()
        .map(|basis| {
            let mut gens = tcols.clone();
            for w in basis {
                let mut g = [ZERO; 3];
                for (k, &c) in w.iter().enumerate() {
                    for i in 0..3 {
                        g[i] = r.add(g[i], r.scale(c, cols[k][i]));
                    }
                }
                gens.push(g);
            }
            canonicalize(r, &gens, n)
        })
        .collect()
}

/// The exponent vector `(i+j, j, 0)` of the diagonal lattice at position `v`,
/// shifted to be nonnegative.
pub fn position_exponents(v: TranslationVec) -> [u32; 3] {
    let n = [v.i + v.j, v.j, 0];
    let m = *n.iter().min().unwrap();
    [(n[0] - m) as u32, (n[1] - m) as u32, (n[2] - m) as u32]
}

/// The lattice `M D_n O^3` for an integral `M` with `t^mdepth O^3 ⊆ M O^3`.
pub fn apply_to_diagonal(r: Ring, m: &Mat3, mdepth: u32, n: [u32; 3]) -> Vertex {
    let top = *n.iter().max().unwrap();
    let prec = mdepth + top;
    let prod = mat_mul(r, m, &diag(n), prec);
    from_matrix(r, &prod, prec)
}

/// `B_x · h` truncated, the global frame of a local frame `h` at `x`.
pub fn globalize(r: Ring, x: &Vertex, h: &Mat3, n: u32) -> Mat3 {
    mat_mul(r, &x.basis(), h, n)
}

/// Smith decomposition of a vertex: `g ∈ GL3(O)` and exponents `n1 >= n2 >= n3 = 0`
/// with `g D_n O^3` equal to the lattice.
pub fn smith_frame(r: Ring, v: &Vertex) -> (Mat3, [u32; 3]) {
    let n = depth(r, v) + 1;
    let mut m = v.basis();
    let mut rinv = identity();
    let mut vals = [0u32; 3];
    for s in 0..3 {
        let mut best: Option<(usize, usize, u32)> = None;
        for i in s..3 {
            for j in s..3 {
                let e = m[i][j].trunc(n);
                if !e.is_zero() && best.map_or(true, |b| e.val() < b.2) {
                    best = Some((i, j, e.val()));
                }
            }
        }
        let (bi, bj, v0) = best.expect("full rank lattice");
        m.swap(s, bi);
        for row in rinv.iter_mut() {
            row.swap(s, bi);
        }
        for row in m.iter_mut() {
            row.swap(s, bj);
        }
        let u = r.div_monomial(m[s][s].trunc(n), v0);
        let ui = r.unit_inverse(u, n);
        for i in s + 1..3 {
            if m[i][s].trunc(n).is_zero() {
                continue;
            }
            let c = r.mul_trunc(r.div_monomial(m[i][s].trunc(n), v0), ui, n);
            for j in 0..3 {
                m[i][j] = r.sub(m[i][j], r.mul_trunc(c, m[s][j], n)).trunc(n);
            }
            for row in rinv.iter_mut() {
                row[s] = r.add(row[s], r.mul_trunc(c, row[i], n)).trunc(n);
            }
        }
        for j in s + 1..3 {
            if m[s][j].trunc(n).is_zero() {
                continue;
            }
            let c = r.mul_trunc(r.div_monomial(m[s][j].trunc(n), v0), ui, n);
            for i in 0..3 {
                m[i][j] = r.sub(m[i][j], r.mul_trunc(c, m[i][s], n)).trunc(n);
            }
        }
        vals[s] = v0;
    }
    let mut g = [[ZERO; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            g[i][j] = rinv[i][2 - j];
        }
    }
    (g, [vals[2], vals[1], vals[0]])
}

pub fn unit_diag(r: Ring, k: usize, u: Poly) -> Mat3 {
    let _ = r;
    let mut m = identity();
    m[k][k] = u;
    m
}

pub fn elementary(a: usize, b: usize, c: Poly) -> Mat3 {
    let mut m = identity();
    m[a][b] = c;
    m
}

pub fn is_identity(m: &Mat3) -> bool {
    (0..3).all(|i| (0..3).all(|j| m[i][j] == if i == j { ONE } else { ZERO }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn origin_has_fourteen_neighbors() {
        let r = Ring::new(2);
        let o = Vertex::origin();
        let mut nb = neighbors(r, &o);
        assert_eq!(nb.len(), 14);
        nb.sort();
        nb.dedup();
        assert_eq!(nb.len(), 14);
        for v in &nb {
            let s = shape(r, &o, v);
            assert!(s == Shape::new(1, 0) || s == Shape::new(0, 1), "{s}");
            assert_eq!(shape(r, v, &o), s.flip());
            assert!(neighbors(r, v).contains(&o));
        }
    }

    #[test]
    fn diagonal_shapes() {
        for p in [2u8, 3] {
            let r = Ring::new(p);
            let o = Vertex::origin();
            for (i, j) in [(1, 0), (0, 1), (2, 1), (1, 3)] {
                let v = apply_to_diagonal(r, &identity(), 0, position_exponents(TranslationVec::new(i, j)));
                assert_eq!(shape(r, &o, &v), Shape::new(i as u32, j as u32));
            }
        }
    }

    #[test]
    fn smith_frame_reconstructs() {
        let r = Ring::new(3);
        let o = Vertex::origin();
        let mut frontier = vec![o];
        for _ in 0..3 {
            frontier = frontier.iter().flat_map(|v| neighbors(r, v)).take(40).collect();
        }
        for v in frontier {
            let (g, n) = smith_frame(r, &v);
            let back = apply_to_diagonal(r, &g, 0, n);
            assert_eq!(back, v);
            let s = shape(r, &o, &v);
            assert_eq!([s.i + s.j, s.j, 0], n);
        }
    }
}
