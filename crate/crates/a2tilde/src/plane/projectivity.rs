//! Combinatorial projections between pencils of opposite vertices,
//! perspectivity chains and projectivity groups.

use super::incidence::{Flag, IncidencePlane};
use super::perm::{self, Perm};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Vertex {
    Point(u32),
    Line(u32),
}

impl std::fmt::Display for Vertex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Vertex::Point(p) => write!(f, "P{}", p),
            Vertex::Line(l) => write!(f, "L{}", l),
        }
    }
}

impl std::str::FromStr for Vertex {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let (kind, id) = s.split_at(1);
        let id: u32 = id.parse().map_err(|_| format!("bad vertex {:?}", s))?;
        match kind {
            "P" | "p" => Ok(Vertex::Point(id)),
            "L" | "l" => Ok(Vertex::Line(id)),
            _ => Err(format!("bad vertex {:?}, expected P<id> or L<id>", s)),
        }
    }
}

impl Flag {
    pub fn contains(&self, v: Vertex) -> bool {
        match v {
            Vertex::Point(p) => self.point == p,
            Vertex::Line(l) => self.line == l,
        }
    }
}

/// The flags containing `v`, sorted by `(point, line)`.
pub fn pencil(plane: &IncidencePlane, v: Vertex) -> Vec<Flag> {
    let mut out: Vec<Flag> = match v {
        Vertex::Point(p) => plane.lines_through(p).iter().map(|&l| Flag { point: p, line: l }).collect(),
        Vertex::Line(l) => plane.points_on(l).iter().map(|&p| Flag { point: p, line: l }).collect(),
    };
    out.sort_unstable();
    out
}

pub fn opposite(plane: &IncidencePlane, v: Vertex, w: Vertex) -> bool {
    match (v, w) {
        (Vertex::Point(p), Vertex::Line(l)) | (Vertex::Line(l), Vertex::Point(p)) => !plane.incident(p, l),
        _ => false,
    }
}

/// The flag of `Ch(v)` closest to `f`, where `f` contains `w` and `w` is
/// opposite `v`.
pub fn combinatorial_projection(plane: &IncidencePlane, v: Vertex, w: Vertex, f: Flag) -> Result<Flag> {
    if !opposite(plane, v, w) {
        return Err(Error::NotOpposite(v.to_string(), w.to_string()));
    }
    if !f.contains(w) || !plane.incident(f.point, f.line) {
        return Err(Error::InvalidConfiguration(format!("flag ({}, {}) is not in Ch({})", f.point, f.line, w)));
    }
    match v {
        Vertex::Point(p) => {
            let line = plane.join(p, f.point).ok_or_else(|| Error::InvalidConfiguration("no unique join".into()))?;
            Ok(Flag { point: p, line })
        }
        Vertex::Line(m) => {
            let point = plane.meet(m, f.line).ok_or_else(|| Error::InvalidConfiguration("no unique meet".into()))?;
            Ok(Flag { point, line: m })
        }
    }
}

/// `[v0; ...; vk]` as a map from pencil indices of `v0` to pencil indices of `vk`.
pub fn perspectivity_chain(plane: &IncidencePlane, chain: &[Vertex]) -> Result<Vec<usize>> {
    let first = *chain.first().ok_or(Error::ChainBroken(0))?;
    for (k, w) in chain.windows(2).enumerate() {
        if !opposite(plane, w[0], w[1]) {
            return Err(Error::ChainBroken(k));
        }
    }
    let start = pencil(plane, first);
    let last = *chain.last().unwrap();
    let end = pencil(plane, last);
    let mut out = Vec::with_capacity(start.len());
    for &f in &start {
        let mut cur = f;
        for w in chain.windows(2) {
            cur = combinatorial_projection(plane, w[1], w[0], cur)?;
        }
        out.push(end.binary_search(&cur).expect("projection lands in the pencil"));
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct ProjectivityGroup {
    pub base: Vertex,
    pub degree: usize,
    pub generators: Vec<Perm>,
    pub order: usize,
    #[serde(skip)]
    pub elements: Vec<Perm>,
}

fn same_kind(plane: &IncidencePlane, v: Vertex) -> Vec<Vertex> {
    match v {
        Vertex::Point(_) => (0..plane.num_points as u32).map(Vertex::Point).collect(),
        Vertex::Line(_) => (0..plane.num_lines() as u32).map(Vertex::Line).collect(),
    }
}

fn other_kind(plane: &IncidencePlane, v: Vertex) -> Vec<Vertex> {
    match v {
        Vertex::Point(_) => (0..plane.num_lines() as u32).map(Vertex::Line).collect(),
        Vertex::Line(_) => (0..plane.num_points as u32).map(Vertex::Point).collect(),
    }
}

/// Group generated by the closed chains `[v; w; v'; w'; v]`, closed under
/// composition.
pub fn projectivity_group(plane: &IncidencePlane, v: Vertex) -> Result<ProjectivityGroup> {
    if plane.order > 9 {
        return Err(Error::DegreeTooLarge(format!("projectivity groups need q <= 9, got {}", plane.order)));
    }
    let degree = pencil(plane, v).len();
    let mut gens: BTreeSet<Perm> = BTreeSet::new();
    let dual = other_kind(plane, v);
    let same = same_kind(plane, v);
    // cache of the two-step maps [v; w; v'] so each four-chain is a composition
    let mut half: HashMap<(Vertex, Vertex), Vec<usize>> = HashMap::new();
    for &w in dual.iter().filter(|&&w| opposite(plane, v, w)) {
        for &v2 in same.iter().filter(|&&x| opposite(plane, x, w)) {
            half.insert((w, v2), perspectivity_chain(plane, &[v, w, v2])?);
        }
    }
    for (&(_, v2), there) in &half {
        for &w2 in dual.iter().filter(|&&w| opposite(plane, v2, w) && opposite(plane, v, w)) {
            let back = perspectivity_chain(plane, &[v2, w2, v])?;
            let g: Perm = there.iter().map(|&i| back[i] as u8).collect();
            if !perm::is_identity(&g) {
                gens.insert(g);
            }
        }
    }
    let generators: Vec<Perm> = gens.into_iter().collect();
    let elements = perm::closure(degree, &generators);
    Ok(ProjectivityGroup { base: v, degree, order: elements.len(), generators, elements })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransitivityReport {
    pub degree: usize,
    pub order: usize,
    pub max_transitivity: usize,
    pub sharply_3_transitive: bool,
    pub moufang_set: bool,
}

pub fn transitivity_report(g: &ProjectivityGroup) -> TransitivityReport {
    let n = g.degree;
    let k = perm::max_transitivity(&g.elements, n);
    let q = n - 1;
    let sharply = k >= 3 && g.order == (q + 1) * q * (q - 1);
    TransitivityReport { degree: n, order: g.order, max_transitivity: k, sharply_3_transitive: sharply, moufang_set: is_moufang(g, k) }
}

// The group is transitive, so testing the stabilizer of point 0 suffices.
fn is_moufang(g: &ProjectivityGroup, transitivity: usize) -> bool {
    if transitivity < 2 {
        return false;
    }
    let n = g.degree;
    let stab: Vec<usize> = (0..g.elements.len()).filter(|&i| g.elements[i][0] == 0).collect();
    perm::normal_subgroups(&g.elements, &stab).iter().any(|u| {
        if u.len() != n - 1 {
            return false;
        }
        let orbit: BTreeSet<u8> = u.iter().map(|&e| g.elements[e][1]).collect();
        orbit.len() == n - 1
    })
}

/// Flags `C = (P, L)` with neighbours `C0, C2` along one panel and `C1, C3`
/// along the other.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonTrivConfig {
    pub c: Flag,
    pub c0: Flag,
    pub c1: Flag,
    pub c2: Flag,
    pub c3: Flag,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NonTrivResult {
    pub chain: Vec<Vertex>,
    pub fixed: Vec<Flag>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Panel {
    Point,
    Line,
}

fn adjacent_panel(a: Flag, b: Flag) -> Option<Panel> {
    if a == b {
        None
    } else if a.point == b.point {
        Some(Panel::Point)
    } else if a.line == b.line {
        Some(Panel::Line)
    } else {
        None
    }
}

fn vertex_off(c: Flag, panel: Panel) -> Vertex {
    // the vertex of a neighbour of C that is not in C
    match panel {
        Panel::Point => Vertex::Line(c.line),
        Panel::Line => Vertex::Point(c.point),
    }
}

/// Fixed flags of `[v0; v1; v2; v3; v0]`, `v_i` the vertex of `C_i` off `C`.
pub fn nontriv_fixed_point_check(plane: &IncidencePlane, cfg: &NonTrivConfig) -> Result<NonTrivResult> {
    for (name, f) in [("C", cfg.c), ("C0", cfg.c0), ("C1", cfg.c1), ("C2", cfg.c2), ("C3", cfg.c3)] {
        if !plane.incident(f.point, f.line) {
            return Err(Error::InvalidConfiguration(format!("{} is not a flag", name)));
        }
    }
    if cfg.c0 == cfg.c2 {
        return Err(Error::InvalidConfiguration("C0 = C2".into()));
    }
    if cfg.c1 == cfg.c3 {
        return Err(Error::InvalidConfiguration("C1 = C3".into()));
    }
    let p0 = adjacent_panel(cfg.c, cfg.c0).ok_or_else(|| Error::InvalidConfiguration("C0 not adjacent to C".into()))?;
    let p2 = adjacent_panel(cfg.c, cfg.c2).ok_or_else(|| Error::InvalidConfiguration("C2 not adjacent to C".into()))?;
    let p1 = adjacent_panel(cfg.c, cfg.c1).ok_or_else(|| Error::InvalidConfiguration("C1 not adjacent to C".into()))?;
    let p3 = adjacent_panel(cfg.c, cfg.c3).ok_or_else(|| Error::InvalidConfiguration("C3 not adjacent to C".into()))?;
    if p0 != p2 || p1 != p3 || p0 == p1 {
        return Err(Error::InvalidConfiguration(
            "C0, C2 must share one panel of C and C1, C3 the other".into(),
        ));
    }
    let v = [vertex_off(cfg.c0, p0), vertex_off(cfg.c1, p1), vertex_off(cfg.c2, p2), vertex_off(cfg.c3, p3)];
    let chain = vec![v[0], v[1], v[2], v[3], v[0]];
    let map = perspectivity_chain(plane, &chain)?;
    let pen = pencil(plane, v[0]);
    let fixed = (0..map.len()).filter(|&i| map[i] == i).map(|i| pen[i]).collect();
    Ok(NonTrivResult { chain, fixed })
}

/// Every valid configuration of the plane, in a fixed order.
pub fn nontriv_configurations(plane: &IncidencePlane) -> Vec<NonTrivConfig> {
    let mut out = Vec::new();
    for c in plane.flags() {
        let other_lines: Vec<u32> = plane.lines_through(c.point).iter().copied().filter(|&l| l != c.line).collect();
        let other_points: Vec<u32> = plane.points_on(c.line).iter().copied().filter(|&p| p != c.point).collect();
        let along_point: Vec<Flag> = other_lines.iter().map(|&l| Flag { point: c.point, line: l }).collect();
        let along_line: Vec<Flag> = other_points.iter().map(|&p| Flag { point: p, line: c.line }).collect();
        for (even, odd) in [(&along_point, &along_line), (&along_line, &along_point)] {
            for &c0 in even.iter() {
                for &c2 in even.iter().filter(|&&x| x != c0) {
                    for &c1 in odd.iter() {
                        for &c3 in odd.iter().filter(|&&x| x != c1) {
                            out.push(NonTrivConfig { c, c0, c1, c2, c3 });
                        }
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane::incidence::pg2_of_order;

    #[test]
    fn projection_example() {
        let p = pg2_of_order(2).unwrap();
        let l = 0;
        let pt = (0..7).find(|&x| !p.incident(x, l)).unwrap();
        let x = p.points_on(l)[0];
        let f = combinatorial_projection(&p, Vertex::Point(pt), Vertex::Line(l), Flag { point: x, line: l }).unwrap();
        assert_eq!(f, Flag { point: pt, line: p.join(pt, x).unwrap() });
        let back = combinatorial_projection(&p, Vertex::Line(l), Vertex::Point(pt), f).unwrap();
        assert_eq!(back, Flag { point: x, line: l });
    }

    #[test]
    fn c0_equal_c2_rejected() {
        let p = pg2_of_order(2).unwrap();
        let mut cfg = nontriv_configurations(&p)[0];
        cfg.c2 = cfg.c0;
        assert!(matches!(nontriv_fixed_point_check(&p, &cfg), Err(Error::InvalidConfiguration(_))));
    }

    #[test]
    fn trivial_chain() {
        let p = pg2_of_order(2).unwrap();
        assert_eq!(perspectivity_chain(&p, &[Vertex::Point(0)]).unwrap(), vec![0, 1, 2]);
    }
}
