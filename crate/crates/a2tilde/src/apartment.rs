//! The model apartment: translations in root coordinates `(α1, α2)`, the
//! Weyl group S3 and the type coloring.

use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

/// Translation vector `(i, j) = (α1(λ), α2(λ))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TranslationVec {
    pub i: i64,
    pub j: i64,
}

pub const T1: TranslationVec = TranslationVec { i: 1, j: 0 };
pub const T2: TranslationVec = TranslationVec { i: 0, j: 1 };
pub const ZERO: TranslationVec = TranslationVec { i: 0, j: 0 };

impl TranslationVec {
    pub const fn new(i: i64, j: i64) -> Self {
        TranslationVec { i, j }
    }

    pub fn length(self) -> i64 {
        self.i + self.j
    }

    pub fn is_dominant(self) -> bool {
        self.i >= 0 && self.j >= 0
    }

    pub fn is_regular(self) -> bool {
        self.i > 0 && self.j > 0
    }

    /// The w0 flip `(i, j) -> (j, i)` relating `shape(x, y)` and `shape(y, x)`.
    pub fn flip(self) -> Self {
        TranslationVec::new(self.j, self.i)
    }

    pub fn to_shape(self) -> Option<Shape> {
        if self.is_dominant() {
            Some(Shape::new(self.i as u32, self.j as u32))
        } else {
            None
        }
    }
}

impl Add for TranslationVec {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        TranslationVec::new(self.i + o.i, self.j + o.j)
    }
}

impl Sub for TranslationVec {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        TranslationVec::new(self.i - o.i, self.j - o.j)
    }
}

impl Neg for TranslationVec {
    type Output = Self;
    fn neg(self) -> Self {
        TranslationVec::new(-self.i, -self.j)
    }
}

impl fmt::Display for TranslationVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

/// Dominant translation `λ` with `i, j >= 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Shape {
    pub i: u32,
    pub j: u32,
}

impl Shape {
    pub const fn new(i: u32, j: u32) -> Self {
        Shape { i, j }
    }

    pub fn length(self) -> u32 {
        self.i + self.j
    }

    pub fn is_regular(self) -> bool {
        self.i > 0 && self.j > 0
    }

    pub fn vec(self) -> TranslationVec {
        TranslationVec::new(self.i as i64, self.j as i64)
    }

    pub fn flip(self) -> Shape {
        Shape::new(self.j, self.i)
    }

    pub fn type_shift(self) -> u8 {
        type_shift(self.vec())
    }

    /// Componentwise order: `self` lies below `o` in every sector.
    pub fn le(self, o: Shape) -> bool {
        self.i <= o.i && self.j <= o.j
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

impl std::str::FromStr for Shape {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 2 {
            return Err(format!("expected i,j but got {:?}", s));
        }
        let i = parts[0].trim().parse::<u32>().map_err(|e| e.to_string())?;
        let j = parts[1].trim().parse::<u32>().map_err(|e| e.to_string())?;
        Ok(Shape::new(i, j))
    }
}

pub fn length(v: TranslationVec) -> i64 {
    v.length()
}

/// `(i + 2j) mod 3`: translating by `t1` raises the type by 1, by `t2` by 2.
pub fn type_shift(v: TranslationVec) -> u8 {
    (v.i + 2 * v.j).rem_euclid(3) as u8
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum WeylElt {
    E,
    S1,
    S2,
    S1S2,
    S2S1,
    W0,
}

impl WeylElt {
    pub const ALL: [WeylElt; 6] =
        [WeylElt::E, WeylElt::S1, WeylElt::S2, WeylElt::S1S2, WeylElt::S2S1, WeylElt::W0];

    pub fn name(self) -> &'static str {
        match self {
            WeylElt::E => "e",
            WeylElt::S1 => "s1",
            WeylElt::S2 => "s2",
            WeylElt::S1S2 => "s1s2",
            WeylElt::S2S1 => "s2s1",
            WeylElt::W0 => "w0",
        }
    }

    /// Word in the simple reflections, leftmost letter applied last.
    pub fn word(self) -> &'static [u8] {
        match self {
            WeylElt::E => &[],
            WeylElt::S1 => &[1],
            WeylElt::S2 => &[2],
            WeylElt::S1S2 => &[1, 2],
            WeylElt::S2S1 => &[2, 1],
            WeylElt::W0 => &[1, 2, 1],
        }
    }

    pub fn compose(self, o: WeylElt) -> WeylElt {
        let probe = TranslationVec::new(1, 2);
        let target = weyl_apply(self, weyl_apply(o, probe));
        WeylElt::ALL.into_iter().find(|&w| weyl_apply(w, probe) == target).expect("S3 is closed")
    }

    pub fn inverse(self) -> WeylElt {
        WeylElt::ALL.into_iter().find(|&w| self.compose(w) == WeylElt::E).expect("S3 has inverses")
    }
}

fn reflect(s: u8, v: TranslationVec) -> TranslationVec {
    match s {
        1 => TranslationVec::new(-v.i, v.i + v.j),
        _ => TranslationVec::new(v.i + v.j, -v.j),
    }
}

pub fn weyl_apply(w: WeylElt, v: TranslationVec) -> TranslationVec {
    w.word().iter().rev().fold(v, |acc, &s| reflect(s, acc))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Dominance {
    Less,
    Greater,
    Equal,
    Incomparable,
}

/// `λ > μ` iff `λ - μ` is dominant and nonzero.
pub fn dominance_order(l: Shape, m: Shape) -> Dominance {
    match (l.i.cmp(&m.i), l.j.cmp(&m.j)) {
        (Ordering::Equal, Ordering::Equal) => Dominance::Equal,
        (a, b) if a != Ordering::Less && b != Ordering::Less => Dominance::Greater,
        (a, b) if a != Ordering::Greater && b != Ordering::Greater => Dominance::Less,
        _ => Dominance::Incomparable,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(length(TranslationVec::new(2, 3)), 5);
        assert_eq!(length(TranslationVec::new(-1, 2)), 1);
        assert_eq!(weyl_apply(WeylElt::S1, T1), TranslationVec::new(-1, 1));
        assert_eq!(weyl_apply(WeylElt::W0, TranslationVec::new(2, 3)), TranslationVec::new(-3, -2));
        assert_eq!(dominance_order(Shape::new(2, 2), Shape::new(1, 1)), Dominance::Greater);
        assert_eq!(dominance_order(Shape::new(1, 0), Shape::new(0, 1)), Dominance::Incomparable);
        assert_eq!(type_shift(T1), 1);
        assert_eq!(type_shift(T2), 2);
        assert_eq!(type_shift(TranslationVec::new(1, 1)), 0);
    }

    #[test]
    fn w0_is_s2s1s2() {
        for i in -3..=3 {
            for j in -3..=3 {
                let v = TranslationVec::new(i, j);
                let alt = reflect(2, reflect(1, reflect(2, v)));
                assert_eq!(weyl_apply(WeylElt::W0, v), alt);
            }
        }
    }
}
