//! Finite balls of the building of SL3(F_q((t))), q in {2, 3}.

use super::lattice::{self, Frame, Vertex};
use super::poly::Ring;
use crate::apartment::Shape;
use crate::error::{Error, Result};
use crate::plane::{check_axioms, AxiomReport, IncidencePlane};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::HashMap;
use std::fmt::Write;

/// Upper bound on the vertex count accepted by [`build_ball`].
pub const MAX_VERTICES: u64 = 400_000;

/// Sphere sizes in the building of order q: 1 at the origin,
/// `(q^2+q+1) q^{2(l-1)}` on the walls and `(q+1)(q^2+q+1) q^{2l-3}` inside.
pub fn sphere_size_estimate(q: u64, s: Shape) -> u64 {
    let l = s.length();
    if l == 0 {
        1
    } else if s.i == 0 || s.j == 0 {
        (q * q + q + 1) * q.pow(2 * (l - 1))
    } else {
        (q + 1) * (q * q + q + 1) * q.pow(2 * l - 3)
    }
}

pub fn ball_size_estimate(q: u64, r: u32) -> u64 {
    (0..=2 * r).flat_map(|l| (0..=l).map(move |i| Shape::new(i, l - i))).map(|s| sphere_size_estimate(q, s)).sum()
}

#[derive(Clone, Debug)]
pub struct BuildingBall {
    pub q: u32,
    pub r: u32,
    pub ring: Ring,
    pub vertices: Vec<Vertex>,
    pub frames: Vec<Frame>,
    /// Vector distance from the base vertex.
    pub shape_o: Vec<Shape>,
    /// Sorted neighbor lists.
    pub adj: Vec<Vec<u32>>,
    pub chambers: Vec<[u32; 3]>,
    index: HashMap<Vertex, u32>,
}

/// All homothety classes `L` with `t^r L0 ⊆ L ⊆ t^{-r} L0`, i.e. vertices at
/// vector distance of length at most `2r` from the base vertex.
pub fn build_ball(q: u32, r: u32) -> Result<BuildingBall> {
    if q != 2 && q != 3 {
        return Err(Error::SizeGuardExceeded(format!("q = {q}, only 2 and 3 are supported")));
    }
    if r > 4 {
        return Err(Error::SizeGuardExceeded(format!("radius {r} > 4")));
    }
    let est = ball_size_estimate(q as u64, r);
    if est > MAX_VERTICES {
        return Err(Error::SizeGuardExceeded(format!("{est} vertices expected, limit {MAX_VERTICES}")));
    }
    let ring = Ring::new(q as u8);
    let radius = 2 * r;
    let mut index: HashMap<Vertex, u32> = HashMap::new();
    let mut verts = vec![Vertex::origin()];
    index.insert(Vertex::origin(), 0);
    let mut nbrs: Vec<Vec<Vertex>> = Vec::new();
    let mut done = 0;
    while done < verts.len() {
        let layer: Vec<Vertex> = verts[done..].to_vec();
        let found: Vec<Vec<Vertex>> = layer
            .par_iter()
            .map(|v| {
                lattice::neighbors(ring, v)
                    .into_iter()
                    .filter(|w| Frame::new(ring, w).depth() <= radius)
                    .collect()
            })
            .collect();
        done = verts.len();
        for list in &found {
            for w in list {
                if !index.contains_key(w) {
                    index.insert(*w, verts.len() as u32);
                    verts.push(*w);
                }
            }
        }
        nbrs.extend(found);
    }
    // renumber by Hermite form
    let mut order: Vec<u32> = (0..verts.len() as u32).collect();
    order.sort_by_key(|&i| verts[i as usize]);
    let vertices: Vec<Vertex> = order.iter().map(|&i| verts[i as usize]).collect();
    let index: HashMap<Vertex, u32> = vertices.iter().enumerate().map(|(i, v)| (*v, i as u32)).collect();
    let adj: Vec<Vec<u32>> = order
        .iter()
        .map(|&old| {
            let mut l: Vec<u32> = nbrs[old as usize].iter().map(|w| index[w]).collect();
            l.sort_unstable();
            l
        })
        .collect();
    let frames: Vec<Frame> = vertices.iter().map(|v| Frame::new(ring, v)).collect();
    let shape_o: Vec<Shape> = frames.iter().map(shape_from_origin).collect();
    let mut ball = BuildingBall { q, r, ring, vertices, frames, shape_o, adj, chambers: Vec::new(), index };
    ball.chambers = ball.compute_chambers();
    let link = ball.link_report(ball.origin())?;
    if !link.pass {
        return Err(Error::InvalidData("link of the base vertex is not a projective plane".into()));
    }
    Ok(ball)
}

pub(crate) fn shape_from_origin(f: &Frame) -> Shape {
    let a = f.depth() as i64;
    let total = f.e_total() as i64;
    let b = total - a;
    Shape::new((a - b) as u32, b as u32)
}

impl BuildingBall {
    pub fn origin(&self) -> u32 {
        self.index[&Vertex::origin()]
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn id(&self, v: &Vertex) -> Option<u32> {
        self.index.get(v).copied()
    }

    pub fn vertex(&self, id: u32) -> &Vertex {
        &self.vertices[id as usize]
    }

    pub fn vertex_type(&self, id: u32) -> u8 {
        self.vertices[id as usize].vertex_type()
    }

    pub fn neighbors(&self, id: u32) -> &[u32] {
        &self.adj[id as usize]
    }

    pub fn adjacent(&self, a: u32, b: u32) -> bool {
        self.adj[a as usize].binary_search(&b).is_ok()
    }

    /// Graph distance from the base vertex.
    pub fn dist_o(&self, id: u32) -> u32 {
        self.shape_o[id as usize].length()
    }

    /// True when every neighbor of the vertex lies in the ball.
    pub fn is_interior(&self, id: u32) -> bool {
        self.dist_o(id) < 2 * self.r
    }

    pub fn vector_distance(&self, x: u32, y: u32) -> Shape {
        lattice::shape_between(self.ring, &self.frames[x as usize], &self.frames[y as usize])
    }

    fn compute_chambers(&self) -> Vec<[u32; 3]> {
        let mut out = Vec::new();
        for u in 0..self.len() as u32 {
            for &v in self.neighbors(u) {
                if v <= u {
                    continue;
                }
                for &w in self.neighbors(v) {
                    if w <= v || !self.adjacent(u, w) {
                        continue;
                    }
                    out.push([u, v, w]);
                }
            }
        }
        out
    }

    /// Incidence structure of the link of a vertex: points are the neighbors
    /// of type `type + 1`, lines those of type `type + 2`.
    pub fn link_plane(&self, id: u32) -> Result<IncidencePlane> {
        if !self.is_interior(id) {
            return Err(Error::SphereTruncated(format!("vertex {id} lies on the boundary of the ball")));
        }
        let t = self.vertex_type(id);
        let nb = self.neighbors(id);
        let points: Vec<u32> = nb.iter().copied().filter(|&v| self.vertex_type(v) == (t + 1) % 3).collect();
        let lines: Vec<Vec<u32>> = nb
            .iter()
            .copied()
            .filter(|&v| self.vertex_type(v) == (t + 2) % 3)
            .map(|l| {
                points
                    .iter()
                    .enumerate()
                    .filter(|(_, &p)| self.adjacent(p, l))
                    .map(|(k, _)| k as u32)
                    .collect()
            })
            .collect();
        Ok(IncidencePlane::new(self.q, points.len(), lines))
    }

    pub fn link_report(&self, id: u32) -> Result<AxiomReport> {
        Ok(check_axioms(&self.link_plane(id)?))
    }

    /// Interior vertices whose link fails the plane axioms, and the number of
    /// interior edges not on exactly `q + 1` chambers.
    pub fn regularity_defects(&self) -> (Vec<u32>, usize) {
        let ids: Vec<u32> = (0..self.len() as u32).filter(|&v| self.is_interior(v)).collect();
        let bad_links: Vec<u32> = ids
            .par_iter()
            .copied()
            .filter(|&v| !self.link_report(v).map(|r| r.pass).unwrap_or(false))
            .collect();
        let bad_edges: usize = ids
            .par_iter()
            .map(|&u| {
                self.neighbors(u)
                    .iter()
                    .filter(|&&v| v > u && self.is_interior(v))
                    .filter(|&&v| {
                        let common = self.neighbors(u).iter().filter(|&&w| self.adjacent(v, w)).count();
                        common != self.q as usize + 1
                    })
                    .count()
            })
            .sum();
        (bad_links, bad_edges)
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.len()];
        let mut stack = vec![self.origin()];
        seen[self.origin() as usize] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &v in self.neighbors(u) {
                if !seen[v as usize] {
                    seen[v as usize] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == self.len()
    }

    /// Graphviz rendering of the 1-skeleton, colored by type.
    pub fn to_dot(&self) -> String {
        const COLORS: [&str; 3] = ["red", "green", "blue"];
        let mut s = String::from("graph ball {\n");
        for v in 0..self.len() as u32 {
            let _ = writeln!(s, "  v{} [color={}];", v, COLORS[self.vertex_type(v) as usize]);
        }
        for u in 0..self.len() as u32 {
            for &v in self.neighbors(u) {
                if u < v {
                    let _ = writeln!(s, "  v{u} -- v{v};");
                }
            }
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> BallJson {
        BallJson {
            q: self.q,
            r: self.r,
            base: self.origin(),
            vertices: self
                .vertices
                .iter()
                .enumerate()
                .map(|(i, v)| VertexJson {
                    id: i as u32,
                    vertex_type: v.vertex_type(),
                    matrix: v.coefficient_rows(),
                    shape: [self.shape_o[i].i, self.shape_o[i].j],
                })
                .collect(),
            adjacency: self.adj.clone(),
            chambers: self.chambers.clone(),
        }
    }
}

#[derive(Serialize)]
pub struct VertexJson {
    pub id: u32,
    #[serde(rename = "type")]
    pub vertex_type: u8,
    pub matrix: Vec<Vec<Vec<u8>>>,
    pub shape: [u32; 2],
}

#[derive(Serialize)]
pub struct BallJson {
    pub q: u32,
    pub r: u32,
    pub base: u32,
    pub vertices: Vec<VertexJson>,
    pub adjacency: Vec<Vec<u32>>,
    pub chambers: Vec<[u32; 3]>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radius_one() {
        let b = build_ball(2, 1).unwrap();
        assert_eq!(b.neighbors(b.origin()).len(), 14);
        let through_o = b.chambers.iter().filter(|c| c.contains(&b.origin())).count();
        assert_eq!(through_o, 21);
        assert!(b.is_connected());
        let (links, edges) = b.regularity_defects();
        assert!(links.is_empty());
        assert_eq!(edges, 0);
        assert_eq!(b.len() as u64, ball_size_estimate(2, 1));
    }

    #[test]
    fn guard() {
        assert!(matches!(build_ball(4, 1), Err(Error::SizeGuardExceeded(_))));
        assert!(matches!(build_ball(2, 5), Err(Error::SizeGuardExceeded(_))));
        assert!(matches!(build_ball(3, 3), Err(Error::SizeGuardExceeded(_))));
    }
}
