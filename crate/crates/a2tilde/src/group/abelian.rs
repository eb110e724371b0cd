//! Abelianization through the Smith normal form of the relation matrix.

use super::words::Presentation;
use crate::algebra::{smith_normal_form, IntMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbelianInvariants {
    /// Torsion invariant factors `d_1 | d_2 | ...`, all greater than one.
    pub torsion: Vec<BigInt>,
    pub free_rank: usize,
}

impl AbelianInvariants {
    pub fn is_trivial(&self) -> bool {
        self.torsion.is_empty() && self.free_rank == 0
    }

    /// Group order, if finite.
    pub fn order(&self) -> Option<BigInt> {
        (self.free_rank == 0).then(|| self.torsion.iter().fold(BigInt::one(), |a, d| a * d))
    }
}

impl std::fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z/{d}")).collect();
        parts.extend(std::iter::repeat("Z".to_string()).take(self.free_rank));
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" x "))
        }
    }
}

pub fn relation_matrix(p: &Presentation) -> IntMatrix {
    let n = p.rank().max(1);
    let rows: Vec<Vec<i64>> = if p.relators.is_empty() {
        vec![vec![0; n]]
    } else {
        p.relators.iter().map(|r| {
            let mut v = r.exponent_sums(p.rank());
            v.resize(n, 0);
            v
        }).collect()
    };
    IntMatrix::from_rows(&rows)
}

pub fn abelianization(p: &Presentation) -> AbelianInvariants {
    if p.rank() == 0 {
        return AbelianInvariants { torsion: Vec::new(), free_rank: 0 };
    }
    let snf = smith_normal_form(&relation_matrix(p));
    let inv = snf.invariants();
    let torsion: Vec<BigInt> = inv.iter().filter(|d| !d.is_zero() && !d.is_one()).map(|d| d.abs()).collect();
    AbelianInvariants { torsion, free_rank: p.rank() - snf.rank() }
}

/// The abelianization map of a presentation with finite abelianization:
/// moduli `d_k > 1` and the image of each generator in `⊕ Z/d_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbelianMap {
    pub moduli: Vec<u64>,
    pub images: Vec<Vec<u64>>,
}

pub fn abelian_map(p: &Presentation) -> Option<AbelianMap> {
    let ab = abelianization(p);
    if ab.free_rank > 0 {
        return None;
    }
    let snf = smith_normal_form(&relation_matrix(p));
    let inv = snf.invariants();
    // v in the row space of R iff v Q lies in the row space of D
    let keep: Vec<usize> = (0..p.rank()).filter(|&k| k < inv.len() && !inv[k].abs().is_one()).collect();
    let moduli: Vec<u64> = keep.iter().map(|&k| inv[k].abs().to_u64().expect("small modulus")).collect();
    let images = (0..p.rank())
        .map(|g| {
            keep.iter()
                .zip(&moduli)
                .map(|(&k, &m)| snf.right.get(g, k).mod_floor(&BigInt::from(m)).to_u64().unwrap())
                .collect()
        })
        .collect();
    Some(AbelianMap { moduli, images })
}
