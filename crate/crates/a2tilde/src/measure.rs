//! Visual measures on chambers at infinity, realized exactly on cylinder cells.
//!
//! A cell `Ω_x(y)` for `y ∈ V_λ(x)` has mass `1/N_λ`. Every statement here is
//! checked at finite depth with big rationals.

use crate::apartment::{Shape, TranslationVec, T1, T2};
use crate::building::flats::{z_classes, ZClasses};
use crate::building::orbits::sphere_count;
use crate::building::sectors::{children, horofunction, parent, require_complete, sphere, SectorGerm, ShapeMap};
use crate::building::{BuildingBall, Ring, Vertex};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `q^e` for a possibly negative exponent.
pub fn qpow(q: u32, e: i64) -> BigRational {
    let p = BigRational::from_integer(BigInt::from(q).pow(e.unsigned_abs() as u32));
    if e >= 0 {
        p
    } else {
        p.recip()
    }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn ser_rat<S: serde::Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_rat(r))
}

fn ser_rat_map<S: serde::Serializer>(m: &BTreeMap<u32, BigRational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let mut map = s.serialize_map(Some(m.len()))?;
    for (k, v) in m {
        map.serialize_entry(&k.to_string(), &fmt_rat(v))?;
    }
    map.end()
}

fn regular(lam: Shape) -> Result<()> {
    if lam.is_regular() {
        Ok(())
    } else {
        Err(Error::NotRegular((lam.i, lam.j)))
    }
}

/// Masses of cells, keyed by the target vertex id.
#[derive(Clone, Debug, Serialize)]
pub struct CylinderTable {
    pub base: u32,
    pub shape: Shape,
    #[serde(serialize_with = "ser_rat_map")]
    pub masses: BTreeMap<u32, BigRational>,
}

impl CylinderTable {
    pub fn total(&self) -> BigRational {
        self.masses.values().fold(BigRational::zero(), |a, b| a + b)
    }
}

/// The visual measure at `x` on the cells of depth `λ`.
pub fn visual_table(ball: &BuildingBall, sm: &ShapeMap, lam: Shape) -> Result<CylinderTable> {
    regular(lam)?;
    let cells = sphere(ball, sm, lam)?;
    let mass = rat(1, cells.len() as i64);
    Ok(CylinderTable { base: sm.base, shape: lam, masses: cells.into_iter().map(|y| (y, mass.clone())).collect() })
}

#[derive(Clone, Debug, Serialize)]
pub struct RefinementReport {
    pub shape: Shape,
    pub direction: TranslationVec,
    pub parents: usize,
    pub children: usize,
    /// `N_{λ+t} / N_λ`.
    pub expected_children: usize,
    pub consistent: bool,
    pub witnesses: Vec<u32>,
}

/// Each `λ`-cell is the disjoint union of its `(λ+t)`-children, with exactly
/// matching masses.
pub fn refinement_check(ball: &BuildingBall, sm: &ShapeMap, lam: Shape, dir: TranslationVec) -> Result<RefinementReport> {
    let parent_table = visual_table(ball, sm, lam)?;
    let child_shape = (lam.vec() + dir).to_shape().expect("dominant");
    let child_table = visual_table(ball, sm, child_shape)?;
    let ratio = child_table.masses.len() / parent_table.masses.len();
    let mut owner: BTreeMap<u32, u32> = BTreeMap::new();
    let mut witnesses = Vec::new();
    for &y in parent_table.masses.keys() {
        let kids = children(ball, sm, y, dir);
        let sum = kids.iter().fold(BigRational::zero(), |a, c| a + &child_table.masses[c]);
        if kids.len() != ratio || sum != parent_table.masses[&y] {
            witnesses.push(y);
        }
        for c in kids {
            if owner.insert(c, y).is_some() {
                witnesses.push(c);
            }
        }
    }
    for &c in child_table.masses.keys() {
        let dir_parent = parent(ball, sm, c, dir);
        if dir_parent.is_none() || owner.get(&c) != dir_parent.as_ref() {
            witnesses.push(c);
        }
    }
    witnesses.sort_unstable();
    witnesses.dedup();
    Ok(RefinementReport {
        shape: lam,
        direction: dir,
        parents: parent_table.masses.len(),
        children: owner.len(),
        expected_children: ratio,
        consistent: witnesses.is_empty() && owner.len() == child_table.masses.len(),
        witnesses,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct RnReport {
    pub x: u32,
    pub y: u32,
    pub depth: Shape,
    pub cells: usize,
    pub shared: usize,
    /// Shared cells with `μ_x/μ_y = q^{-2ℓ(h)}`.
    pub matches: usize,
    /// Shared cells with `μ_x/μ_y = q^{+2ℓ(h)}`.
    pub matches_positive_exponent: usize,
    /// Number of shared cells for each value of `ℓ(h)`.
    pub by_length: BTreeMap<i64, usize>,
    pub pass: bool,
    pub witnesses: Vec<u32>,
}

/// Compares `μ_x(Ω)/μ_y(Ω) = N_μ/N_λ` with `q^{-2ℓ(h_C(x,y))}` on every cell
/// `Ω = Ω_x(z) = Ω_y(z)`, where `h` is computed from a germ through `z`.
///
/// A cell is shared when both parents of `z` seen from `x` are also its
/// parents seen from `y`.
pub fn rn_check(ball: &BuildingBall, x: u32, y: u32, lam: Shape) -> Result<RnReport> {
    regular(lam)?;
    let r = ball.ring;
    let sm = ShapeMap::new(ball, x);
    let cells = sphere(ball, &sm, lam)?;
    let xv = *ball.vertex(x);
    let yv = *ball.vertex(y);
    let depth = ball.vector_distance(x, y).length() + lam.length() + 2;
    let results: Vec<Result<Option<(u32, i64, bool, bool)>>> = cells
        .par_iter()
        .map(|&z| {
            let mu = ball.vector_distance(y, z);
            if !mu.is_regular() {
                return Ok(None);
            }
            let p1 = parent(ball, &sm, z, T1).expect("parent");
            let p2 = parent(ball, &sm, z, T2).expect("parent");
            let same = Some(ball.vector_distance(y, p1)) == (mu.vec() - T1).to_shape()
                && Some(ball.vector_distance(y, p2)) == (mu.vec() - T2).to_shape();
            if !same {
                return Ok(None);
            }
            let germ = SectorGerm::through(r, &xv, ball.vertex(z), depth)?;
            let h = horofunction(r, &xv, &yv, &germ)?;
            let ratio = rat(sphere_count(r, mu) as i64, sphere_count(r, lam) as i64);
            let l = h.length();
            Ok(Some((z, l, ratio == qpow(ball.q, -2 * l), ratio == qpow(ball.q, 2 * l))))
        })
        .collect();
    let mut rep = RnReport {
        x,
        y,
        depth: lam,
        cells: cells.len(),
        shared: 0,
        matches: 0,
        matches_positive_exponent: 0,
        by_length: BTreeMap::new(),
        pass: false,
        witnesses: Vec::new(),
    };
    for res in results {
        if let Some((z, l, neg, pos)) = res? {
            rep.shared += 1;
            *rep.by_length.entry(l).or_default() += 1;
            if neg {
                rep.matches += 1;
            } else {
                rep.witnesses.push(z);
            }
            if pos {
                rep.matches_positive_exponent += 1;
            }
        }
    }
    rep.pass = rep.shared > 0 && rep.matches == rep.shared;
    Ok(rep)
}

#[derive(Clone, Debug, Serialize)]
pub struct BetaReport {
    /// β computed at the common base of the germs.
    pub beta: TranslationVec,
    /// β computed at the next vertex of the first germ, when the germ is deep enough.
    pub beta_other: Option<TranslationVec>,
    pub independent_of_point: bool,
}

/// `β_x(C, C') = h_C(x,z) + h_{C'}(x,z)` for `z` on the flat of two opposite
/// germs with a common base, evaluated at two points of that flat.
pub fn beta_value(r: Ring, x: &Vertex, c: &SectorGerm, c2: &SectorGerm) -> Result<BetaReport> {
    if c.base != c2.base {
        return Err(Error::NoCommonFlat("germs have different bases".into()));
    }
    let k = c.depth.min(c2.depth) as usize;
    let s = crate::building::shape(r, c.tip(), c2.tip());
    if c.depth != c2.depth || s != Shape::new(2 * k as u32, 2 * k as u32) {
        return Err(Error::NoCommonFlat(format!("germ tips at shape {s}")));
    }
    let beta_at = |z: &Vertex| -> Result<TranslationVec> { Ok(horofunction(r, x, z, c)? + horofunction(r, x, z, c2)?) };
    let beta = beta_at(&c.base)?;
    let beta_other = if k >= 3 { Some(beta_at(&c.vertices[1])?) } else { None };
    Ok(BetaReport { beta, beta_other, independent_of_point: beta_other.map_or(true, |b| b == beta) })
}

#[derive(Clone, Debug, Serialize)]
pub struct MassReport {
    pub depth: Shape,
    pub cells: u64,
    pub pairs: u64,
    /// Children pairs tested during the refinement.
    pub pair_tests: u64,
    /// `Σ μ_x(Ω) μ_x(Ω')` over the pairs.
    #[serde(serialize_with = "ser_rat")]
    pub product: BigRational,
    /// `Σ q^{-2ℓ(β)} μ_x(Ω) μ_x(Ω')`, with β evaluated on every `stride`-th
    /// pair and taken from the evaluated pairs otherwise.
    #[serde(serialize_with = "ser_rat")]
    pub weighted: BigRational,
    pub stride: u64,
    pub beta_evaluated: u64,
    pub beta_zero: u64,
    pub beta_point_independent: u64,
    pub equal: bool,
}

/// Pairs `(y, y')` in `V_λ(x)` with `x` on a geodesic from `y` to `y'`,
/// enumerated by refining from `(1,1)` one root step at a time, and the
/// number of candidate pairs tested.
pub fn opposite_pairs(ball: &BuildingBall, sm: &ShapeMap, lam: Shape) -> Result<(Vec<(u32, u32)>, u64)> {
    regular(lam)?;
    require_complete(ball, sm.base, lam)?;
    let start = Shape::new(1, 1);
    let cells = sphere(ball, sm, start)?;
    let mut tests = (cells.len() * cells.len()) as u64;
    let mut pairs: Vec<(u32, u32)> = cells
        .iter()
        .flat_map(|&a| cells.iter().map(move |&b| (a, b)))
        .filter(|&(a, b)| ball.vector_distance(b, a) == Shape::new(2, 2))
        .collect();
    let mut cur = start;
    let steps = std::iter::repeat(T1).take((lam.i - 1) as usize).chain(std::iter::repeat(T2).take((lam.j - 1) as usize));
    for dir in steps {
        let next = (cur.vec() + dir).to_shape().expect("dominant");
        // flip(λ) + λ
        let want = Shape::new(next.length(), next.length());
        let batches: Vec<(Vec<(u32, u32)>, u64)> = pairs
            .par_iter()
            .map(|&(a, b)| {
                let ka = children(ball, sm, a, dir);
                let kb = children(ball, sm, b, dir);
                let mut out = Vec::new();
                for &c in &ka {
                    for &d in &kb {
                        if ball.vector_distance(d, c) == want {
                            out.push((c, d));
                        }
                    }
                }
                (out, (ka.len() * kb.len()) as u64)
            })
            .collect();
        pairs = Vec::new();
        for (b, t) in batches {
            pairs.extend(b);
            tests += t;
        }
        cur = next;
    }
    pairs.sort_unstable();
    Ok((pairs, tests))
}

/// The same pairs by testing every pair of cells.
pub fn opposite_pairs_exhaustive(ball: &BuildingBall, sm: &ShapeMap, lam: Shape) -> Result<Vec<(u32, u32)>> {
    regular(lam)?;
    let cells = sphere(ball, sm, lam)?;
    let want = Shape::new(lam.length(), lam.length());
    let mut pairs: Vec<(u32, u32)> = cells
        .par_iter()
        .flat_map_iter(|&a| {
            cells.iter().filter(move |&&b| ball.vector_distance(b, a) == want).map(move |&b| (a, b))
        })
        .collect();
    pairs.sort_unstable();
    Ok(pairs)
}

/// The `m`-mass of the finite-depth shadow of `F'_x`. β is evaluated through
/// germs of depth `min(i, j)` on every `stride`-th pair.
pub fn m_mass_of_fx(ball: &BuildingBall, x: u32, lam: Shape, stride: usize) -> Result<MassReport> {
    let sm = ShapeMap::new(ball, x);
    let (pairs, tests) = opposite_pairs(ball, &sm, lam)?;
    let n = sphere(ball, &sm, lam)?.len() as i64;
    let r = ball.ring;
    let xv = *ball.vertex(x);
    let k = lam.i.min(lam.j);
    let stride = stride.max(1);
    let betas: Vec<Result<BetaReport>> = pairs
        .par_iter()
        .step_by(stride)
        .map(|&(y, y2)| {
            let c = SectorGerm::through(r, &xv, ball.vertex(y), k)?;
            let c2 = SectorGerm::through(r, &xv, ball.vertex(y2), k)?;
            beta_value(r, &xv, &c, &c2)
        })
        .collect();
    let mut zero = 0u64;
    let mut independent = 0u64;
    let mut density = BigRational::zero();
    for b in betas.iter() {
        let b = b.clone()?;
        if b.beta == crate::apartment::ZERO {
            zero += 1;
        }
        if b.independent_of_point {
            independent += 1;
        }
        density += qpow(ball.q, -2 * b.beta.length());
    }
    let evaluated = betas.len() as i64;
    let cell = rat(1, n * n);
    let product = rat(pairs.len() as i64, 1) * &cell;
    let weighted = if evaluated == 0 { BigRational::zero() } else { density / rat(evaluated, 1) * &product };
    Ok(MassReport {
        depth: lam,
        cells: n as u64,
        pairs: pairs.len() as u64,
        pair_tests: tests,
        equal: weighted == product && zero == evaluated as u64 && independent == evaluated as u64,
        product,
        weighted,
        stride: stride as u64,
        beta_evaluated: evaluated as u64,
        beta_zero: zero,
        beta_point_independent: independent,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct PlusMinusTables {
    pub plus: CylinderTable,
    pub minus: CylinderTable,
    /// Common mass of every plus cell, if constant.
    #[serde(serialize_with = "ser_opt_rat")]
    pub plus_mass: Option<BigRational>,
    #[serde(serialize_with = "ser_opt_rat")]
    pub minus_mass: Option<BigRational>,
}

fn ser_opt_rat<S: serde::Serializer>(r: &Option<BigRational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(v) => s.serialize_some(&fmt_rat(v)),
        None => s.serialize_none(),
    }
}

fn constant(t: &CylinderTable) -> Option<BigRational> {
    let first = t.masses.values().next()?.clone();
    t.masses.values().all(|m| *m == first).then_some(first)
}

/// Push-forwards of the `λ`-table to the ray vertices at `(i,0)` (plus) and `(0,j)` (minus).
pub fn plus_minus_tables(ball: &BuildingBall, sm: &ShapeMap, lam: Shape) -> Result<PlusMinusTables> {
    let table = visual_table(ball, sm, lam)?;
    let group = |target: Shape| -> CylinderTable {
        let mut masses: BTreeMap<u32, BigRational> = BTreeMap::new();
        for (&y, m) in &table.masses {
            let a = crate::building::sectors::ancestor(ball, sm, y, target).expect("ancestor");
            *masses.entry(a).or_insert_with(BigRational::zero) += m;
        }
        CylinderTable { base: sm.base, shape: target, masses }
    };
    let plus = group(Shape::new(lam.i, 0));
    let minus = group(Shape::new(0, lam.j));
    Ok(PlusMinusTables { plus_mass: constant(&plus), minus_mass: constant(&minus), plus, minus })
}

/// Constants measured once and then enforced.
#[derive(Clone, Debug, Serialize)]
pub struct Constants {
    pub q: u32,
    #[serde(serialize_with = "ser_rat")]
    pub k: BigRational,
    #[serde(serialize_with = "ser_rat")]
    pub k1: BigRational,
    #[serde(serialize_with = "ser_rat")]
    pub k2: BigRational,
    #[serde(serialize_with = "ser_rat")]
    pub k_plus: BigRational,
    #[serde(serialize_with = "ser_rat")]
    pub k_minus: BigRational,
    #[serde(serialize_with = "ser_rat")]
    pub k_prime: BigRational,
}

struct Level {
    n: usize,
    pm: PlusMinusTables,
    z: ZClasses,
}

fn level(ball: &BuildingBall, sm: &ShapeMap, lam: Shape) -> Result<Level> {
    let pm = plus_minus_tables(ball, sm, lam)?;
    let z = z_classes(ball, sm, lam)?;
    Ok(Level { n: sphere(ball, sm, lam)?.len(), pm, z })
}

/// Measure all constants at `λ = (1,1)`.
pub fn measure_constants(ball: &BuildingBall, sm: &ShapeMap) -> Result<Constants> {
    let lam = Shape::new(1, 1);
    let lv = level(ball, sm, lam)?;
    let q = ball.q;
    let y = *lv.z.plus.keys().next().expect("nonempty sphere");
    let zp = lv.z.plus[&y].len() as i64;
    let zm = lv.z.minus[&y].len() as i64;
    let pm = lv.pm.plus_mass.clone().ok_or_else(|| Error::InvalidData("plus masses not constant".into()))?;
    let mm = lv.pm.minus_mass.clone().ok_or_else(|| Error::InvalidData("minus masses not constant".into()))?;
    let l = lam.length() as i64;
    let k_prime = rat(zp * zm, 1) * &pm * &mm * rat(lv.n as i64, 1) * qpow(q, -l);
    Ok(Constants {
        q,
        k: rat(lv.n as i64, 1) * qpow(q, -2 * l),
        k1: (pm * qpow(q, 2 * lam.i as i64)).recip(),
        k2: (mm * qpow(q, 2 * lam.j as i64)).recip(),
        k_plus: rat(zp, 1) * qpow(q, -(lam.i as i64)),
        k_minus: rat(zm, 1) * qpow(q, -(lam.j as i64)),
        k_prime,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct DisintReport {
    pub depth: Shape,
    pub constants: Constants,
    pub cells: usize,
    /// Cells where `|Z_+||Z_-| m_+ m_- / (K' q^ℓ) = 1/N_λ`.
    pub identity_holds: usize,
    /// Cells whose individual quantities follow the power laws with the fixed constants.
    pub laws_hold: usize,
    pub z_stable: Option<bool>,
    pub pass: bool,
    pub witnesses: Vec<u32>,
}

/// The finite-depth disintegration identity, cell by cell.
pub fn disintegration_check(ball: &BuildingBall, x: u32, lam: Shape, constants: Option<Constants>) -> Result<DisintReport> {
    regular(lam)?;
    let sm = ShapeMap::new(ball, x);
    let c = match constants {
        Some(c) => c,
        None => measure_constants(ball, &sm)?,
    };
    let lv = level(ball, &sm, lam)?;
    let q = ball.q;
    let (i, j, l) = (lam.i as i64, lam.j as i64, lam.length() as i64);
    let target = rat(1, lv.n as i64);
    let mut holds = 0;
    let mut laws = 0;
    let mut witnesses = Vec::new();
    for (&y, zplus) in &lv.z.plus {
        let zp = rat(zplus.len() as i64, 1);
        let zm = rat(lv.z.minus[&y].len() as i64, 1);
        let pa = crate::building::sectors::ancestor(ball, &sm, y, Shape::new(lam.i, 0)).expect("ancestor");
        let ma = crate::building::sectors::ancestor(ball, &sm, y, Shape::new(0, lam.j)).expect("ancestor");
        let pmass = lv.pm.plus.masses[&pa].clone();
        let mmass = lv.pm.minus.masses[&ma].clone();
        let lhs = &zp * &zm * &pmass * &mmass / (&c.k_prime * qpow(q, l));
        let ok = lhs == target;
        let law = zp == &c.k_plus * qpow(q, i)
            && zm == &c.k_minus * qpow(q, j)
            && pmass == (&c.k1 * qpow(q, 2 * i)).recip()
            && mmass == (&c.k2 * qpow(q, 2 * j)).recip()
            && target == (&c.k * qpow(q, 2 * l)).recip();
        if ok {
            holds += 1;
        }
        if law {
            laws += 1;
        }
        if !(ok && law) {
            witnesses.push(y);
        }
    }
    let cells = lv.z.plus.len();
    Ok(DisintReport {
        depth: lam,
        constants: c,
        cells,
        identity_holds: holds,
        laws_hold: laws,
        z_stable: lv.z.stable,
        pass: cells > 0 && holds == cells && laws == cells && lv.z.stable != Some(false),
        witnesses,
    })
}

/// Sum of all masses in a table equals one.
pub fn is_probability(t: &CylinderTable) -> bool {
    t.total() == BigRational::one()
}

#[derive(Clone, Debug, Serialize)]
pub struct CocycleReport {
    pub x: u32,
    pub y: u32,
    pub depth: Shape,
    pub sampled: usize,
    /// Pairs with `β_x - β_y = h_C(x,y) + h_{C'}(x,y)`.
    pub plus_form: usize,
    /// Pairs with `β_x - β_y = h_C(x,y) - h_{C'}(x,y)`.
    pub minus_form: usize,
    pub pass: bool,
}

/// Moves the basepoint of β from `x` to `y` on every `stride`-th opposite
/// pair of cells at depth `λ` around `x`.
pub fn beta_cocycle_check(ball: &BuildingBall, x: u32, y: u32, lam: Shape, stride: usize) -> Result<CocycleReport> {
    let sm = ShapeMap::new(ball, x);
    let (pairs, _) = opposite_pairs(ball, &sm, lam)?;
    let r = ball.ring;
    let xv = *ball.vertex(x);
    let yv = *ball.vertex(y);
    let k = lam.i.min(lam.j);
    let rows: Vec<Result<(bool, bool)>> = pairs
        .par_iter()
        .step_by(stride.max(1))
        .map(|&(a, b)| {
            let c = SectorGerm::through(r, &xv, ball.vertex(a), k)?;
            let c2 = SectorGerm::through(r, &xv, ball.vertex(b), k)?;
            let bx = beta_value(r, &xv, &c, &c2)?.beta;
            let by = beta_value(r, &yv, &c, &c2)?.beta;
            let h = horofunction(r, &xv, &yv, &c)?;
            let h2 = horofunction(r, &xv, &yv, &c2)?;
            Ok((bx - by == h + h2, bx - by == h - h2))
        })
        .collect();
    let mut rep = CocycleReport { x, y, depth: lam, sampled: rows.len(), plus_form: 0, minus_form: 0, pass: false };
    for row in rows {
        let (p, m) = row?;
        rep.plus_form += p as usize;
        rep.minus_form += m as usize;
    }
    rep.pass = rep.sampled > 0 && rep.plus_form == rep.sampled;
    Ok(rep)
}
