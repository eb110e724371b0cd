//! Sphere, `Y_w` and `Z_±` counts checked against power laws whose
//! constants are measured at the smallest shape and then enforced.

use super::ball::BuildingBall;
use super::flats::{yw_count, z_classes};
use super::poly::Ring;
use super::sectors::{complete_radius, sphere, ShapeMap};
use crate::apartment::{Shape, WeylElt};
use crate::error::Result;
use crate::measure::{qpow, rat};
use num_rational::BigRational;
use serde::Serialize;
use std::collections::BTreeMap;

fn show(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Regular shapes of length at most `max_len`, by length then `i`.
pub fn regular_shapes(max_len: u32) -> Vec<Shape> {
    (2..=max_len).flat_map(|l| (1..l).map(move |i| Shape::new(i, l - i))).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct SphereRow {
    pub basepoint: u32,
    pub shape: Shape,
    pub count: usize,
    pub ratio: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SphereConstancy {
    pub q: u32,
    pub k: String,
    pub rows: Vec<SphereRow>,
    pub pass: bool,
}

/// `N_λ / q^{2ℓ(λ)}` for every regular `λ` with a complete sphere around
/// each basepoint.
pub fn sphere_constancy(ball: &BuildingBall, basepoints: &[u32]) -> Result<SphereConstancy> {
    let mut rows = Vec::new();
    let mut k: Option<BigRational> = None;
    let mut pass = true;
    for &x in basepoints {
        let sm = ShapeMap::new(ball, x);
        for lam in regular_shapes(complete_radius(ball, x)) {
            let n = sphere(ball, &sm, lam)?.len();
            let ratio = rat(n as i64, 1) * qpow(ball.q, -2 * lam.length() as i64);
            let k0 = k.get_or_insert_with(|| ratio.clone());
            pass &= *k0 == ratio;
            rows.push(SphereRow { basepoint: x, shape: lam, count: n, ratio: show(&ratio) });
        }
    }
    pass &= !rows.is_empty();
    Ok(SphereConstancy { q: ball.q, k: k.map(|k| show(&k)).unwrap_or_default(), rows, pass })
}

/// Exponent of `q` in the power law for `|Y_w^λ|`, `None` for `w0`.
pub fn y_exponent(w: WeylElt, lam: Shape) -> Option<u32> {
    let (i, j) = (lam.i, lam.j);
    match w {
        WeylElt::E => Some(0),
        WeylElt::S1 => Some(j),
        WeylElt::S2 => Some(i),
        WeylElt::S1S2 => Some(2 * i + j),
        WeylElt::S2S1 => Some(i + 2 * j),
        WeylElt::W0 => None,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct YRow {
    pub shape: Shape,
    pub germ_depth: u32,
    pub counts: BTreeMap<String, usize>,
    pub deeper: BTreeMap<String, usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct YLaws {
    pub q: u32,
    pub constants: BTreeMap<String, String>,
    pub rows: Vec<YRow>,
    pub identity_is_one: bool,
    pub laws_hold: bool,
    pub stable: bool,
    /// `|Y_w|/N_λ` strictly drops when both coordinates of `λ` grow, `w ≠ w0`.
    pub decay: bool,
    pub pass: bool,
}

/// `|Y_w^λ|` for germs of depth `ℓ(λ)` and `ℓ(λ)+1`.
pub fn y_laws(r: Ring, shapes: &[Shape]) -> YLaws {
    let q = r.p as u32;
    let rows: Vec<YRow> = shapes
        .iter()
        .map(|&lam| {
            let k = lam.length();
            let at = |k| WeylElt::ALL.iter().map(|&w| (w.name().to_string(), yw_count(r, k, w, lam))).collect();
            YRow { shape: lam, germ_depth: k, counts: at(k), deeper: at(k + 1) }
        })
        .collect();
    let mut constants: BTreeMap<String, BigRational> = BTreeMap::new();
    let mut laws_hold = true;
    for row in &rows {
        for &w in &WeylElt::ALL {
            if let Some(e) = y_exponent(w, row.shape) {
                let c = rat(row.counts[w.name()] as i64, 1) * qpow(q, -(e as i64));
                laws_hold &= *constants.entry(w.name().to_string()).or_insert_with(|| c.clone()) == c;
            }
        }
    }
    let identity_is_one = rows.iter().all(|r| r.counts["e"] == 1);
    let stable = rows.iter().all(|r| r.counts == r.deeper);
    let ratio = |row: &YRow, w: &str| {
        rat(row.counts[w] as i64, 1) / rat(super::ball::sphere_size_estimate(q as u64, row.shape) as i64, 1)
    };
    let mut decay = true;
    for a in &rows {
        for b in &rows {
            if b.shape.i > a.shape.i && b.shape.j > a.shape.j {
                for &w in WeylElt::ALL.iter().filter(|&&w| w != WeylElt::W0) {
                    decay &= ratio(b, w.name()) < ratio(a, w.name());
                }
            }
        }
    }
    YLaws {
        q,
        constants: constants.iter().map(|(k, v)| (k.clone(), show(v))).collect(),
        pass: identity_is_one && laws_hold && stable && decay && !rows.is_empty(),
        rows,
        identity_is_one,
        laws_hold,
        stable,
        decay,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ZRow {
    pub shape: Shape,
    pub cells: usize,
    pub plus: Vec<usize>,
    pub minus: Vec<usize>,
    pub stable: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ZLaws {
    pub q: u32,
    pub k_plus: String,
    pub k_minus: String,
    pub rows: Vec<ZRow>,
    pub pass: bool,
}

/// `|Z_+(y)| = K_+ q^i` and `|Z_-(y)| = K_- q^j` for every `y` at every shape.
pub fn z_laws(ball: &BuildingBall, x: u32, shapes: &[Shape]) -> Result<ZLaws> {
    let sm = ShapeMap::new(ball, x);
    let q = ball.q;
    let mut kp: Option<BigRational> = None;
    let mut km: Option<BigRational> = None;
    let mut pass = !shapes.is_empty();
    let mut rows = Vec::new();
    for &lam in shapes {
        let z = z_classes(ball, &sm, lam)?;
        let mut plus: Vec<usize> = z.plus.values().map(Vec::len).collect();
        let mut minus: Vec<usize> = z.minus.values().map(Vec::len).collect();
        for &s in &plus {
            let c = rat(s as i64, 1) * qpow(q, -(lam.i as i64));
            pass &= *kp.get_or_insert_with(|| c.clone()) == c;
        }
        for &s in &minus {
            let c = rat(s as i64, 1) * qpow(q, -(lam.j as i64));
            pass &= *km.get_or_insert_with(|| c.clone()) == c;
        }
        pass &= z.stable != Some(false);
        let cells = plus.len();
        plus.sort_unstable();
        plus.dedup();
        minus.sort_unstable();
        minus.dedup();
        rows.push(ZRow { shape: lam, cells, plus, minus, stable: z.stable });
    }
    Ok(ZLaws {
        q,
        k_plus: kp.map(|k| show(&k)).unwrap_or_default(),
        k_minus: km.map(|k| show(&k)).unwrap_or_default(),
        rows,
        pass,
    })
}

