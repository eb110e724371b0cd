//! Flats through a sector germ, the sets `Y_w^λ` and the sets `Z_±(y)`.

use super::ball::BuildingBall;
use super::lattice::{self, Vertex};
use super::orbits::{tuple_orbit, vertex_orbit, Parahoric};
use super::sectors::{ray_classes, ray_partition, require_complete, Ray, SectorGerm, ShapeMap};
use crate::apartment::{weyl_apply, Shape, TranslationVec, WeylElt};
use crate::error::{Error, Result};
use serde::Serialize;
use std::collections::BTreeMap;

/// Positions of the model apartment at combinatorial distance at most `radius` from 0.
pub fn sigma_ball(radius: u32) -> Vec<TranslationVec> {
    let r = radius as i64;
    let mut out = Vec::new();
    for i in -r..=r {
        for j in -r..=r {
            if i.abs().max(j.abs()).max((i + j).abs()) <= r {
                out.push(TranslationVec::new(i, j));
            }
        }
    }
    out
}

/// A flat ball: the image of `sigma_ball(radius)` under a marked flat.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlatBall {
    pub positions: Vec<TranslationVec>,
    pub vertices: Vec<u32>,
}

impl FlatBall {
    pub fn at(&self, v: TranslationVec) -> Option<u32> {
        self.positions.iter().position(|&p| p == v).map(|k| self.vertices[k])
    }
}

/// All flat balls of the given radius containing `x` and the germ, each as a
/// position-indexed vertex map, sorted.
pub fn flats_through(ball: &BuildingBall, x: u32, germ: &SectorGerm, radius: u32) -> Result<Vec<FlatBall>> {
    if germ.base != *ball.vertex(x) {
        return Err(Error::GermNotBased);
    }
    if ball.dist_o(x) + radius.max(2 * germ.depth) > 2 * ball.r {
        return Err(Error::SphereTruncated(format!("flats of radius {radius} around vertex {x} leave the ball")));
    }
    let r = ball.ring;
    let positions = sigma_ball(radius);
    let standard: Vec<Vertex> = positions
        .iter()
        .map(|&v| lattice::apply_to_diagonal(r, &lattice::identity(), 0, lattice::position_exponents(v)))
        .collect();
    let orbit = tuple_orbit(r, Parahoric::germ(germ.depth), &standard);
    let a = lattice::depth(r, &germ.base);
    let prec = a + 2 * radius + 1;
    let global = lattice::globalize(r, &germ.base, &germ.frame, prec);
    let mut out = Vec::with_capacity(orbit.len());
    for tuple in orbit {
        let mut ids = Vec::with_capacity(tuple.len());
        for v in &tuple {
            let da = lattice::depth(r, v);
            let m = lattice::mat_mul(r, &global, &v.basis(), a + da + 1);
            let w = lattice::from_matrix(r, &m, a + da);
            ids.push(ball.id(&w).ok_or_else(|| Error::SphereTruncated(format!("flat vertex {w} outside the ball")))?);
        }
        out.push(FlatBall { positions: positions.clone(), vertices: ids });
    }
    out.sort_by(|p, q| p.vertices.cmp(&q.vertices));
    out.dedup();
    Ok(out)
}

/// The position used for `Y_w^λ`: `(w0 w w0) λ`, which exchanges the roles
/// of `s1` and `s2` relative to the literal `w λ`.
pub fn y_position(w: WeylElt, lam: Shape) -> TranslationVec {
    let conj = WeylElt::W0.compose(w).compose(WeylElt::W0);
    weyl_apply(conj, lam.vec())
}

/// `|Y_w^λ|` for a germ of depth `k`: the size of the orbit of the position
/// vertex under the stabilizer of the germ.
pub fn yw_count(r: super::poly::Ring, k: u32, w: WeylElt, lam: Shape) -> usize {
    let pos = y_position(w, lam);
    let d = lattice::apply_to_diagonal(r, &lattice::identity(), 0, lattice::position_exponents(pos));
    vertex_orbit(r, Parahoric::germ(k), d).len()
}

#[derive(Clone, Debug, Serialize)]
pub struct YCounts {
    pub shape: Shape,
    pub depth: u32,
    pub counts: BTreeMap<String, usize>,
    /// Counts for the germ one step deeper.
    pub deeper: BTreeMap<String, usize>,
    pub stable: bool,
}

/// Counts of `Y_w^λ` for all six `w`, at the germ depth and one deeper.
pub fn count_yw(ball: &BuildingBall, x: u32, germ: &SectorGerm, lam: Shape) -> Result<YCounts> {
    if germ.base != *ball.vertex(x) {
        return Err(Error::GermNotBased);
    }
    let r = ball.ring;
    let at = |k: u32| -> BTreeMap<String, usize> {
        WeylElt::ALL.iter().map(|&w| (w.name().to_string(), yw_count(r, k, w, lam))).collect()
    };
    let counts = at(germ.depth);
    let deeper = at(germ.depth + 1);
    let stable = counts == deeper;
    Ok(YCounts { shape: lam, depth: germ.depth, counts, deeper, stable })
}

#[derive(Clone, Debug, Serialize)]
pub struct ZCounts {
    pub plus: usize,
    pub minus: usize,
    /// `Some(true)` when the counts with the ray one step deeper agree.
    pub stable: Option<bool>,
}

/// Ray used for `Z_+`: the `α2` ray, under which `|Z_+|` scales with `q^{α1}`.
pub const PLUS_RAY: Ray = Ray::Alpha2;
pub const MINUS_RAY: Ray = Ray::Alpha1;

/// Precomputed `Z_±` classes for a whole sphere.
#[derive(Clone, Debug)]
pub struct ZClasses {
    pub shape: Shape,
    pub plus: BTreeMap<u32, Vec<u32>>,
    pub minus: BTreeMap<u32, Vec<u32>>,
    pub stable: Option<bool>,
}

pub fn z_classes(ball: &BuildingBall, sm: &ShapeMap, lam: Shape) -> Result<ZClasses> {
    if !lam.is_regular() {
        return Err(Error::NotRegular((lam.i, lam.j)));
    }
    require_complete(ball, sm.base, lam)?;
    let m = lam.length();
    let plus = ray_classes(ball, sm, lam, PLUS_RAY, m)?;
    let minus = ray_classes(ball, sm, lam, MINUS_RAY, m)?;
    let at = |ray, m| ray_partition(ball, sm, lam, ray, m);
    let stable = match (at(PLUS_RAY, m + 1), at(MINUS_RAY, m + 1)) {
        (Ok(p), Ok(q)) => Some(p == at(PLUS_RAY, m)? && q == at(MINUS_RAY, m)?),
        _ => None,
    };
    Ok(ZClasses { shape: lam, plus, minus, stable })
}

pub fn count_z(ball: &BuildingBall, x: u32, y: u32) -> Result<ZCounts> {
    let sm = ShapeMap::new(ball, x);
    let lam = sm.get(y);
    let c = z_classes(ball, &sm, lam)?;
    Ok(ZCounts { plus: c.plus[&y].len(), minus: c.minus[&y].len(), stable: c.stable })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::building::{build_ball, Ring};

    #[test]
    fn y_identity_is_single() {
        let r = Ring::new(2);
        for lam in [Shape::new(1, 1), Shape::new(2, 1)] {
            assert_eq!(yw_count(r, 2, WeylElt::E, lam), 1);
        }
    }

    #[test]
    fn flats_of_a_shallow_germ() {
        let b = build_ball(2, 2).unwrap();
        let o = b.origin();
        let germ = SectorGerm::new(b.ring, Vertex::origin(), lattice::identity(), 1);
        let flats = flats_through(&b, o, &germ, 2).unwrap();
        assert!(!flats.is_empty());
        for f in &flats {
            assert_eq!(f.at(TranslationVec::new(0, 0)), Some(o));
            assert_eq!(f.at(TranslationVec::new(1, 1)), b.id(&germ.vertices[1]));
        }
        let other = SectorGerm::new(b.ring, germ.vertices[1], lattice::identity(), 1);
        assert_eq!(flats_through(&b, o, &other, 2), Err(Error::GermNotBased));
    }
}
