//! Spheres, sector ancestors, germs and horofunctions.

use super::ball::BuildingBall;
use super::lattice::{self, Frame, Mat3, Vertex};
use super::poly::Ring;
use crate::apartment::{Shape, TranslationVec, T1, T2};
use crate::error::{Error, Result};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;

/// Vector distances from a fixed vertex to every vertex of the ball.
#[derive(Clone, Debug)]
pub struct ShapeMap {
    pub base: u32,
    pub shapes: Vec<Shape>,
}

impl ShapeMap {
    pub fn new(ball: &BuildingBall, x: u32) -> ShapeMap {
        let shapes = (0..ball.len() as u32).into_par_iter().map(|v| ball.vector_distance(x, v)).collect();
        ShapeMap { base: x, shapes }
    }

    pub fn get(&self, v: u32) -> Shape {
        self.shapes[v as usize]
    }
}

/// Largest `l` such that spheres of length `l` around `x` lie in the ball.
pub fn complete_radius(ball: &BuildingBall, x: u32) -> u32 {
    (2 * ball.r).saturating_sub(ball.dist_o(x))
}

pub fn require_complete(ball: &BuildingBall, x: u32, s: Shape) -> Result<()> {
    if ball.dist_o(x) + s.length() > 2 * ball.r {
        return Err(Error::SphereTruncated(format!(
            "sphere {s} around a vertex at distance {} exceeds radius {}",
            ball.dist_o(x),
            ball.r
        )));
    }
    Ok(())
}

/// `V_λ(x)` as sorted vertex ids.
pub fn sphere(ball: &BuildingBall, sm: &ShapeMap, s: Shape) -> Result<Vec<u32>> {
    require_complete(ball, sm.base, s)?;
    Ok((0..ball.len() as u32).filter(|&v| sm.get(v) == s).collect())
}

pub fn sphere_of(ball: &BuildingBall, x: u32, s: Shape) -> Result<Vec<u32>> {
    sphere(ball, &ShapeMap::new(ball, x), s)
}

/// `shape(y', y) = shape(y', x) + shape(x, y)`.
pub fn geodesic_between(ball: &BuildingBall, x: u32, y: u32, y2: u32) -> bool {
    let lhs = ball.vector_distance(y2, y).vec();
    lhs == ball.vector_distance(y2, x).vec() + ball.vector_distance(x, y).vec()
}

/// The neighbor of `z` one step closer to the base along `dir` (`T1` or `T2`).
pub fn parent(ball: &BuildingBall, sm: &ShapeMap, z: u32, dir: TranslationVec) -> Option<u32> {
    let target = (sm.get(z).vec() - dir).to_shape()?;
    ball.neighbors(z).iter().copied().find(|&p| sm.get(p) == target)
}

/// The vertex at shape `target` on the segment from the base to `z`.
pub fn ancestor(ball: &BuildingBall, sm: &ShapeMap, z: u32, target: Shape) -> Option<u32> {
    let mut cur = z;
    loop {
        let s = sm.get(cur);
        if s == target {
            return Some(cur);
        }
        if !target.le(s) {
            return None;
        }
        let dir = if s.i > target.i { T1 } else { T2 };
        cur = parent(ball, sm, cur, dir)?;
    }
}

/// Children of `y` in direction `dir`: vertices at `shape + dir` whose parent is `y`.
pub fn children(ball: &BuildingBall, sm: &ShapeMap, y: u32, dir: TranslationVec) -> Vec<u32> {
    let target = (sm.get(y).vec() + dir).to_shape().expect("dominant");
    ball.neighbors(y).iter().copied().filter(|&c| sm.get(c) == target).collect()
}

/// Which boundary ray a `Z` set is measured against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Ray {
    /// Vertices at `(m, 0)`.
    Alpha1,
    /// Vertices at `(0, m)`.
    Alpha2,
}

/// The distinct sets of `y ∈ V_λ(x)` sharing a sector through one ray vertex
/// at depth `m`, sorted.
pub fn ray_partition(ball: &BuildingBall, sm: &ShapeMap, lam: Shape, ray: Ray, m: u32) -> Result<Vec<Vec<u32>>> {
    let (zs, ws) = match ray {
        Ray::Alpha1 => (Shape::new(m.max(lam.i), lam.j), Shape::new(m.max(lam.i), 0)),
        Ray::Alpha2 => (Shape::new(lam.i, m.max(lam.j)), Shape::new(0, m.max(lam.j))),
    };
    let zsphere = sphere(ball, sm, zs)?;
    let pairs: Vec<(u32, u32)> = zsphere
        .par_iter()
        .map(|&z| {
            let a = ancestor(ball, sm, z, lam).expect("ancestor exists");
            let w = ancestor(ball, sm, z, ws).expect("ancestor exists");
            (w, a)
        })
        .collect();
    let mut by_ray: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    for (w, a) in pairs {
        by_ray.entry(w).or_default().push(a);
    }
    let mut sets: Vec<Vec<u32>> = by_ray
        .into_values()
        .map(|mut v| {
            v.sort_unstable();
            v.dedup();
            v
        })
        .collect();
    sets.sort();
    sets.dedup();
    Ok(sets)
}

/// For every `y ∈ V_λ(x)`, the set of `y'` sharing with `y` a sector through
/// one fixed ray vertex at depth `m`. When several ray vertices see `y`, the
/// smallest set in sorted order is used.
pub fn ray_classes(ball: &BuildingBall, sm: &ShapeMap, lam: Shape, ray: Ray, m: u32) -> Result<BTreeMap<u32, Vec<u32>>> {
    let mut out: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    for set in ray_partition(ball, sm, lam, ray, m)? {
        for &y in &set {
            out.entry(y).or_insert_with(|| set.clone());
        }
    }
    Ok(out)
}

/// Sector germ: the diagonal `z_m = B g D_(m,m) O^3`, `0 <= m <= depth`, of
/// the sector with local frame `g` at `base`.
#[derive(Clone, Debug)]
pub struct SectorGerm {
    pub base: Vertex,
    pub frame: Mat3,
    pub depth: u32,
    pub vertices: Vec<Vertex>,
}

impl SectorGerm {
    pub fn new(r: Ring, base: Vertex, frame: Mat3, depth: u32) -> SectorGerm {
        let a = lattice::depth(r, &base);
        let global = lattice::globalize(r, &base, &frame, a + 2 * depth + 1);
        let vertices = (0..=depth).map(|m| lattice::apply_to_diagonal(r, &global, a, [2 * m, m, 0])).collect();
        SectorGerm { base, frame, depth, vertices }
    }

    /// A germ at `base` of a sector containing `through`.
    pub fn through(r: Ring, base: &Vertex, through: &Vertex, depth: u32) -> Result<SectorGerm> {
        let (g, _) = local_smith_frame(r, base, through)?;
        Ok(SectorGerm::new(r, *base, g, depth))
    }

    /// The sector at the same base with the opposite chamber in the same flat.
    pub fn opposite(&self, r: Ring) -> SectorGerm {
        let mut g = self.frame;
        for row in g.iter_mut() {
            row.reverse();
        }
        SectorGerm::new(r, self.base, g, self.depth)
    }

    /// Vertex of the flat spanned by the frame at position `v`.
    pub fn flat_vertex(&self, r: Ring, v: TranslationVec) -> Vertex {
        let n = lattice::position_exponents(v);
        let a = lattice::depth(r, &self.base);
        let top = *n.iter().max().unwrap();
        let global = lattice::globalize(r, &self.base, &self.frame, a + top + 1);
        lattice::apply_to_diagonal(r, &global, a, n)
    }

    pub fn tip(&self) -> &Vertex {
        self.vertices.last().expect("germ has a base")
    }
}

/// Local Smith frame of `y` seen from `x`: `g ∈ GL3(O)` with
/// `y = B_x g D_n O^3`, `n` decreasing.
pub fn local_smith_frame(r: Ring, x: &Vertex, y: &Vertex) -> Result<(Mat3, [u32; 3])> {
    let fx = Frame::new(r, x);
    let s = lattice::shape_between(r, &fx, &Frame::new(r, y));
    let ex = x.e.iter().map(|&e| e as u32).sum::<u32>();
    let ay = lattice::depth(r, y);
    let prec = ex + ay + s.length() + 1;
    if prec > lattice::MAX_PRECISION {
        return Err(Error::InsufficientPrecision(format!("precision {prec} needed")));
    }
    // A_x B_y spans t^{E_x} B_x^{-1} L_y
    let ax = adjugate_upper(r, x);
    let local = lattice::from_matrix(r, &lattice::mat_mul(r, &ax, &y.basis(), prec), prec);
    let (g, n) = lattice::smith_frame(r, &local);
    Ok((g, n))
}

/// `t^{E} B^{-1}` for the upper triangular basis of a vertex.
fn adjugate_upper(r: Ring, v: &Vertex) -> Mat3 {
    let [e1, e2, e3] = [v.e[0] as u32, v.e[1] as u32, v.e[2] as u32];
    use super::poly::{Poly, ZERO};
    [
        [Poly::monomial(e2 + e3), r.neg(v.x.shl(e3)), r.sub(r.mul(v.x, v.z), v.y.shl(e2))],
        [ZERO, Poly::monomial(e1 + e3), r.neg(v.z.shl(e1))],
        [ZERO, ZERO, Poly::monomial(e1 + e2)],
    ]
}

/// `h_C(x, y) = λ - μ` for a deep germ vertex `z ∈ V_λ(x) ∩ V_μ(y)`.
///
/// A germ vertex counts when the shapes from both `x` and `y` grow by `(1,1)`
/// at the next germ vertex; the two deepest such vertices must agree.
pub fn horofunction(r: Ring, x: &Vertex, y: &Vertex, germ: &SectorGerm) -> Result<TranslationVec> {
    let fx = Frame::new(r, x);
    let fy = Frame::new(r, y);
    let sx: Vec<Shape> = germ.vertices.iter().map(|z| lattice::shape_between(r, &fx, &Frame::new(r, z))).collect();
    let sy: Vec<Shape> = germ.vertices.iter().map(|z| lattice::shape_between(r, &fy, &Frame::new(r, z))).collect();
    let diag = TranslationVec::new(1, 1);
    let settled: Vec<usize> = (0..germ.vertices.len().saturating_sub(1))
        .filter(|&m| sx[m + 1].vec() - sx[m].vec() == diag && sy[m + 1].vec() - sy[m].vec() == diag)
        .collect();
    if settled.len() < 2 {
        return Err(Error::GermTooShallow(format!("germ of depth {} has {} settled vertices", germ.depth, settled.len())));
    }
    let h: Vec<TranslationVec> = settled[settled.len() - 2..].iter().map(|&m| sx[m].vec() - sy[m].vec()).collect();
    if h[0] != h[1] {
        return Err(Error::GermTooShallow(format!("horofunction not yet stable: {} vs {}", h[0], h[1])));
    }
    Ok(h[1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::building::build_ball;

    #[test]
    fn spheres_and_geodesics() {
        let b = build_ball(2, 2).unwrap();
        let o = b.origin();
        let sm = ShapeMap::new(&b, o);
        assert_eq!(sphere(&b, &sm, Shape::new(1, 0)).unwrap().len(), 7);
        assert_eq!(sphere(&b, &sm, Shape::new(0, 0)).unwrap(), vec![o]);
        assert!(geodesic_between(&b, o, o, o));
        let y = sphere(&b, &sm, Shape::new(1, 1)).unwrap()[0];
        assert!(!geodesic_between(&b, o, y, y));
        assert!(matches!(sphere(&b, &sm, Shape::new(3, 2)), Err(Error::SphereTruncated(_))));
    }

    #[test]
    fn horofunction_basics() {
        let r = Ring::new(2);
        let o = Vertex::origin();
        let germ = SectorGerm::new(r, o, lattice::identity(), 5);
        assert_eq!(horofunction(r, &o, &o, &germ).unwrap(), TranslationVec::new(0, 0));
        let z1 = germ.vertices[1];
        assert_eq!(horofunction(r, &o, &z1, &germ).unwrap(), TranslationVec::new(1, 1));
    }
}
