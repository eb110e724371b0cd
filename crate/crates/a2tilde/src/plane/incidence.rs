//! Finite projective planes as point/line incidence structures.

use crate::algebra::FieldSpec;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt::Write;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IncidencePlane {
    /// Declared order q.
    pub order: u32,
    pub num_points: usize,
    /// Each line as a sorted list of point ids.
    pub lines: Vec<Vec<u32>>,
    #[serde(skip)]
    point_lines: Vec<Vec<u32>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Flag {
    pub point: u32,
    pub line: u32,
}

impl IncidencePlane {
    /// Builds a plane from explicit lines. Nothing is validated here; see
    /// [`check_axioms`].
    pub fn new(order: u32, num_points: usize, lines: Vec<Vec<u32>>) -> IncidencePlane {
        let mut lines = lines;
        for l in lines.iter_mut() {
            l.sort_unstable();
            l.dedup();
        }
        let mut point_lines = vec![Vec::new(); num_points];
        for (li, l) in lines.iter().enumerate() {
            for &p in l {
                point_lines[p as usize].push(li as u32);
            }
        }
        IncidencePlane { order, num_points, lines, point_lines }
    }

    /// Restores the derived point-to-lines index after deserialization.
    pub fn reindex(self) -> IncidencePlane {
        IncidencePlane::new(self.order, self.num_points, self.lines)
    }

    pub fn num_lines(&self) -> usize {
        self.lines.len()
    }

    pub fn points_on(&self, line: u32) -> &[u32] {
        &self.lines[line as usize]
    }

    pub fn lines_through(&self, point: u32) -> &[u32] {
        &self.point_lines[point as usize]
    }

    pub fn incident(&self, point: u32, line: u32) -> bool {
        self.lines[line as usize].binary_search(&point).is_ok()
    }

    pub fn incidence_count(&self) -> usize {
        self.lines.iter().map(|l| l.len()).sum()
    }

    /// Lines containing both points.
    pub fn joins(&self, a: u32, b: u32) -> Vec<u32> {
        self.lines_through(a).iter().copied().filter(|&l| self.incident(b, l)).collect()
    }

    /// Points on both lines.
    pub fn meets(&self, l: u32, m: u32) -> Vec<u32> {
        self.points_on(l).iter().copied().filter(|&p| self.incident(p, m)).collect()
    }

    pub fn join(&self, a: u32, b: u32) -> Option<u32> {
        let j = self.joins(a, b);
        if j.len() == 1 {
            Some(j[0])
        } else {
            None
        }
    }

    pub fn meet(&self, l: u32, m: u32) -> Option<u32> {
        let j = self.meets(l, m);
        if j.len() == 1 {
            Some(j[0])
        } else {
            None
        }
    }

    pub fn flags(&self) -> Vec<Flag> {
        let mut out: Vec<Flag> = self
            .lines
            .iter()
            .enumerate()
            .flat_map(|(l, pts)| pts.iter().map(move |&p| Flag { point: p, line: l as u32 }))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph incidence {\n");
        for p in 0..self.num_points {
            let _ = writeln!(s, "  p{} [color=red];", p);
        }
        for l in 0..self.num_lines() {
            let _ = writeln!(s, "  l{} [color=blue];", l);
        }
        for (l, pts) in self.lines.iter().enumerate() {
            for p in pts {
                let _ = writeln!(s, "  p{} -- l{};", p, l);
            }
        }
        s.push_str("}\n");
        s
    }
}

fn projective_points(f: &FieldSpec) -> Vec<[u32; 3]> {
    let q = f.order();
    let mut pts = Vec::with_capacity((q * q + q + 1) as usize);
    for a in 0..q {
        for b in 0..q {
            for c in 0..q {
                let v = [a, b, c];
                if let Some(&lead) = v.iter().find(|&&x| x != 0) {
                    if lead == 1 {
                        pts.push(v);
                    }
                }
            }
        }
    }
    pts
}

/// The Desarguesian plane over `f`: normalized nonzero triples, with lines
/// given by the same triples under the dot product.
pub fn pg2(f: &FieldSpec) -> Result<IncidencePlane> {
    let q = f.order();
    if q > 64 {
        return Err(Error::FieldTooLarge(format!("pg2 needs q <= 64, got {}", q)));
    }
    let pts = projective_points(f);
    let lines: Vec<Vec<u32>> = pts
        .iter()
        .map(|l| {
            pts.iter()
                .enumerate()
                .filter(|(_, p)| {
                    let s = f.add(f.add(f.mul(l[0], p[0]), f.mul(l[1], p[1])), f.mul(l[2], p[2]));
                    s == 0
                })
                .map(|(i, _)| i as u32)
                .collect()
        })
        .collect();
    Ok(IncidencePlane::new(q, pts.len(), lines))
}

pub fn pg2_of_order(q: u32) -> Result<IncidencePlane> {
    if q > 64 {
        return Err(Error::FieldTooLarge(format!("pg2 needs q <= 64, got {}", q)));
    }
    pg2(&FieldSpec::of_order(q as u64)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub name: String,
    pub pass: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub order: u32,
    pub checks: Vec<AxiomCheck>,
    pub pass: bool,
}

impl AxiomReport {
    pub fn check(&self, name: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

pub const AXIOM_LINES: &str = "two points, unique line";
pub const AXIOM_POINTS: &str = "two lines, unique point";
pub const AXIOM_QUADRANGLE: &str = "four points, no three collinear";
pub const AXIOM_REGULAR: &str = "regularity";
pub const AXIOM_COUNTS: &str = "counts";

fn unique_pairs(sets: &[Vec<u32>], universe: usize) -> Option<String> {
    let mut count = vec![0u8; universe * universe];
    for s in sets {
        for (k, &a) in s.iter().enumerate() {
            for &b in &s[k + 1..] {
                let (a, b) = (a.min(b) as usize, a.max(b) as usize);
                let c = &mut count[a * universe + b];
                *c = c.saturating_add(1);
            }
        }
    }
    for a in 0..universe {
        for b in a + 1..universe {
            let c = count[a * universe + b];
            if c != 1 {
                return Some(format!("({}, {}) has {} joins", a, b, c));
            }
        }
    }
    None
}

fn collinear(plane: &IncidencePlane, a: u32, b: u32, c: u32) -> bool {
    plane.joins(a, b).iter().any(|&l| plane.incident(c, l))
}

fn find_quadrangle(plane: &IncidencePlane) -> Option<[u32; 4]> {
    let n = plane.num_points as u32;
    if n < 4 {
        return None;
    }
    for p0 in 0..n {
        for p1 in p0 + 1..n {
            for p2 in p1 + 1..n {
                if collinear(plane, p0, p1, p2) {
                    continue;
                }
                for p3 in p2 + 1..n {
                    if !collinear(plane, p0, p1, p3)
                        && !collinear(plane, p0, p2, p3)
                        && !collinear(plane, p1, p2, p3)
                    {
                        return Some([p0, p1, p2, p3]);
                    }
                }
            }
        }
    }
    None
}

pub fn check_axioms(plane: &IncidencePlane) -> AxiomReport {
    let q = plane.order as usize;
    let mut checks = Vec::new();
    let w = unique_pairs(&plane.lines, plane.num_points);
    checks.push(AxiomCheck { name: AXIOM_LINES.into(), pass: w.is_none(), witness: w });
    let pencils: Vec<Vec<u32>> = (0..plane.num_points as u32).map(|p| plane.lines_through(p).to_vec()).collect();
    let w = unique_pairs(&pencils, plane.num_lines()).map(|s| format!("lines {}", s));
    checks.push(AxiomCheck { name: AXIOM_POINTS.into(), pass: w.is_none(), witness: w });
    let quad = find_quadrangle(plane);
    checks.push(AxiomCheck {
        name: AXIOM_QUADRANGLE.into(),
        pass: quad.is_some(),
        witness: match quad {
            Some(_) => None,
            None => Some("no quadrangle".into()),
        },
    });
    let bad_line = plane.lines.iter().position(|l| l.len() != q + 1);
    let bad_point = (0..plane.num_points).find(|&p| plane.point_lines[p].len() != q + 1);
    let w = match (bad_line, bad_point) {
        (Some(l), _) => Some(format!("line {} has {} points", l, plane.lines[l].len())),
        (None, Some(p)) => Some(format!("point {} lies on {} lines", p, plane.point_lines[p].len())),
        _ => None,
    };
    checks.push(AxiomCheck { name: AXIOM_REGULAR.into(), pass: w.is_none(), witness: w });
    let n = q * q + q + 1;
    let ok = plane.num_points == n && plane.num_lines() == n;
    checks.push(AxiomCheck {
        name: AXIOM_COUNTS.into(),
        pass: ok,
        witness: if ok {
            None
        } else {
            Some(format!("{} points, {} lines, expected {}", plane.num_points, plane.num_lines(), n))
        },
    });
    let pass = checks.iter().all(|c| c.pass);
    AxiomReport { order: plane.order, checks, pass }
}

/// Searches for a collineation `a -> b` given as a point map.
pub fn find_isomorphism(a: &IncidencePlane, b: &IncidencePlane) -> Option<Vec<u32>> {
    if a.num_points != b.num_points || a.num_lines() != b.num_lines() || a.incidence_count() != b.incidence_count() {
        return None;
    }
    let mut st = IsoState {
        a,
        b,
        pmap: vec![u32::MAX; a.num_points],
        pused: vec![false; b.num_points],
        lmap: vec![u32::MAX; a.num_lines()],
        lused: vec![false; b.num_lines()],
    };
    if st.search() {
        Some(st.pmap)
    } else {
        None
    }
}

struct IsoState<'a> {
    a: &'a IncidencePlane,
    b: &'a IncidencePlane,
    pmap: Vec<u32>,
    pused: Vec<bool>,
    lmap: Vec<u32>,
    lused: Vec<bool>,
}

enum Undo {
    Point(usize),
    Line(usize),
}

impl<'a> IsoState<'a> {
    fn set_point(&mut self, x: usize, y: u32, trail: &mut Vec<Undo>) -> bool {
        if self.pmap[x] != u32::MAX {
            return self.pmap[x] == y;
        }
        if self.pused[y as usize] {
            return false;
        }
        self.pmap[x] = y;
        self.pused[y as usize] = true;
        trail.push(Undo::Point(x));
        true
    }

    fn set_line(&mut self, l: usize, m: u32, trail: &mut Vec<Undo>) -> bool {
        if self.lmap[l] != u32::MAX {
            return self.lmap[l] == m;
        }
        if self.lused[m as usize] {
            return false;
        }
        self.lmap[l] = m;
        self.lused[m as usize] = true;
        trail.push(Undo::Line(l));
        true
    }

    fn undo(&mut self, trail: Vec<Undo>) {
        for u in trail.into_iter().rev() {
            match u {
                Undo::Point(x) => {
                    self.pused[self.pmap[x] as usize] = false;
                    self.pmap[x] = u32::MAX;
                }
                Undo::Line(l) => {
                    self.lused[self.lmap[l] as usize] = false;
                    self.lmap[l] = u32::MAX;
                }
            }
        }
    }

    // Forces lines through pairs of mapped points and points on pairs of
    // mapped lines until nothing changes.
    fn propagate(&mut self, trail: &mut Vec<Undo>) -> bool {
        loop {
            let mut changed = false;
            for l in 0..self.a.num_lines() {
                let mapped: Vec<u32> =
                    self.a.lines[l].iter().copied().filter(|&p| self.pmap[p as usize] != u32::MAX).collect();
                if mapped.len() >= 2 {
                    let Some(m) = self.b.join(self.pmap[mapped[0] as usize], self.pmap[mapped[1] as usize]) else {
                        return false;
                    };
                    if mapped.iter().any(|&p| !self.b.incident(self.pmap[p as usize], m)) {
                        return false;
                    }
                    if self.lmap[l] == u32::MAX {
                        changed = true;
                    }
                    if !self.set_line(l, m, trail) {
                        return false;
                    }
                }
            }
            for p in 0..self.a.num_points {
                let mapped: Vec<u32> =
                    self.a.point_lines[p].iter().copied().filter(|&l| self.lmap[l as usize] != u32::MAX).collect();
                if mapped.len() >= 2 {
                    let Some(y) = self.b.meet(self.lmap[mapped[0] as usize], self.lmap[mapped[1] as usize]) else {
                        return false;
                    };
                    if self.pmap[p] == u32::MAX {
                        changed = true;
                    }
                    if !self.set_point(p, y, trail) {
                        return false;
                    }
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn search(&mut self) -> bool {
        let Some(x) = self.pmap.iter().position(|&y| y == u32::MAX) else {
            return true;
        };
        for y in 0..self.b.num_points as u32 {
            if self.pused[y as usize] {
                continue;
            }
            let mut trail = Vec::new();
            if self.set_point(x, y, &mut trail) && self.propagate(&mut trail) && self.search() {
                return true;
            }
            self.undo(trail);
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fano_counts() {
        let p = pg2_of_order(2).unwrap();
        assert_eq!(p.num_points, 7);
        assert_eq!(p.num_lines(), 7);
        assert_eq!(p.incidence_count(), 21);
        assert!(check_axioms(&p).pass);
    }

    #[test]
    fn larger_orders() {
        let p = pg2_of_order(3).unwrap();
        assert_eq!((p.num_points, p.num_lines()), (13, 13));
        let p = pg2_of_order(4).unwrap();
        assert!(p.lines.iter().all(|l| l.len() == 5));
        assert!(check_axioms(&p).pass);
    }

    #[test]
    fn too_large() {
        assert!(matches!(pg2_of_order(128), Err(Error::FieldTooLarge(_))));
    }

    #[test]
    fn self_isomorphism() {
        let p = pg2_of_order(3).unwrap();
        assert!(find_isomorphism(&p, &p).is_some());
    }
}
