//! Orbits of vertices under congruence-type subgroups of GL3(O).

use super::lattice::{self, Mat3, Vertex};
use super::poly::{Poly, Ring};
use crate::apartment::Shape;
use std::collections::{HashMap, HashSet};
use std::sync::Mutex;

/// The group of `h ∈ GL3(O)` with `val h12 >= f[0]`, `val h13 >= f[1]`,
/// `val h23 >= f[2]` and no condition below the diagonal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Parahoric {
    pub f: [u32; 3],
}

impl Parahoric {
    pub fn maximal() -> Parahoric {
        Parahoric { f: [0; 3] }
    }

    /// Stabilizer of the germ `o, z_1, ..., z_k` of the standard sector.
    pub fn germ(k: u32) -> Parahoric {
        Parahoric { f: [k, 2 * k, k] }
    }

    fn bound(&self, a: usize, b: usize) -> u32 {
        match (a, b) {
            (0, 1) => self.f[0],
            (0, 2) => self.f[1],
            (1, 2) => self.f[2],
            _ => 0,
        }
    }

    /// Generators acting faithfully on lattices containing `t^prec O^3`.
    pub fn generators(&self, r: Ring, prec: u32) -> Vec<Mat3> {
        let mut gens = Vec::new();
        for a in 0..3 {
            for b in 0..3 {
                if a == b {
                    continue;
                }
                for s in self.bound(a, b)..prec {
                    gens.push(lattice::elementary(a, b, Poly::monomial(s)));
                }
            }
        }
        for k in 0..3 {
            if r.p == 3 {
                gens.push(lattice::unit_diag(r, k, r.neg(super::poly::ONE)));
            }
            for s in 1..prec {
                gens.push(lattice::unit_diag(r, k, r.add(super::poly::ONE, Poly::monomial(s))));
            }
        }
        gens
    }
}

fn act(r: Ring, h: &Mat3, v: &Vertex, prec: u32) -> Vertex {
    let m = lattice::mat_mul(r, h, &v.basis(), prec.max(1));
    lattice::from_matrix(r, &m, prec)
}

/// Orbit of a single standard-coordinate vertex, sorted.
pub fn vertex_orbit(r: Ring, group: Parahoric, start: Vertex) -> Vec<Vertex> {
    let prec = lattice::depth(r, &start);
    let gens = group.generators(r, prec);
    let mut seen: HashSet<Vertex> = HashSet::from([start]);
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for h in &gens {
            let w = act(r, h, &v, prec);
            if seen.insert(w) {
                stack.push(w);
            }
        }
    }
    let mut out: Vec<Vertex> = seen.into_iter().collect();
    out.sort();
    out
}

/// Orbit of a tuple of standard-coordinate vertices under simultaneous action.
pub fn tuple_orbit(r: Ring, group: Parahoric, start: &[Vertex]) -> Vec<Vec<Vertex>> {
    let prec = start.iter().map(|v| lattice::depth(r, v)).max().unwrap_or(0);
    let depths: Vec<u32> = start.iter().map(|v| lattice::depth(r, v)).collect();
    let gens = group.generators(r, prec);
    let mut seen: HashSet<Vec<Vertex>> = HashSet::from([start.to_vec()]);
    let mut stack = vec![start.to_vec()];
    while let Some(t) = stack.pop() {
        for h in &gens {
            let w: Vec<Vertex> = t.iter().zip(&depths).map(|(v, &d)| act(r, h, v, d)).collect();
            if !seen.contains(&w) {
                seen.insert(w.clone());
                stack.push(w);
            }
        }
    }
    let mut out: Vec<Vec<Vertex>> = seen.into_iter().collect();
    out.sort();
    out
}

static SPHERE_CACHE: Mutex<Option<HashMap<(u8, Shape), u64>>> = Mutex::new(None);

/// `N_λ` as the size of the GL3(O)-orbit of the diagonal vertex at `λ`.
pub fn sphere_count(r: Ring, s: Shape) -> u64 {
    if let Some(&n) = SPHERE_CACHE.lock().unwrap().get_or_insert_with(HashMap::new).get(&(r.p, s)) {
        return n;
    }
    let d = lattice::apply_to_diagonal(r, &lattice::identity(), 0, lattice::position_exponents(s.vec()));
    let n = vertex_orbit(r, Parahoric::maximal(), d).len() as u64;
    SPHERE_CACHE.lock().unwrap().get_or_insert_with(HashMap::new).insert((r.p, s), n);
    n
}
