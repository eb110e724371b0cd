//! Planar difference sets: verification, Singer's construction and nested
//! pairs `D0 ⊂ Z/n0` scaled into `D ⊂ Z/n`.

use crate::algebra::field::{prime_power, FieldSpec};
use crate::error::{Error, Result};
use crate::plane::IncidencePlane;
use num_integer::Integer;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Singer,
    User,
    Embedded,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DifferenceSetRecord {
    pub n: u64,
    #[serde(rename = "D")]
    pub set: Vec<u64>,
    pub source: Source,
    pub verified: bool,
    /// Residue with zero or several representations, when not verified.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub residue: u64,
    pub representations: usize,
}

impl DifferenceSetRecord {
    pub fn order(&self) -> u64 {
        self.set.len() as u64 - 1
    }
}

pub fn check_difference_set(n: u64, set: &[u64]) -> DifferenceSetRecord {
    check_with_source(n, set, Source::User)
}

fn check_with_source(n: u64, set: &[u64], source: Source) -> DifferenceSetRecord {
    let d: Vec<u64> = set.iter().map(|&x| x % n).collect::<BTreeSet<_>>().into_iter().collect();
    let mut reps = vec![0usize; n as usize];
    for &a in &d {
        for &b in &d {
            if a != b {
                reps[((a + n - b) % n) as usize] += 1;
            }
        }
    }
    let witness = (1..n).find(|&a| reps[a as usize] != 1).map(|a| Witness { residue: a, representations: reps[a as usize] });
    let verified = !d.is_empty() && witness.is_none() && d.len() == set.len();
    let witness = if verified || witness.is_some() {
        witness
    } else {
        Some(Witness { residue: 0, representations: set.len() - d.len() })
    };
    DifferenceSetRecord { n, set: d, source, verified, witness }
}

/// Lexicographically smallest sorted set among the images `u·D + c`, `u` a unit.
pub fn normalize(n: u64, set: &[u64]) -> Vec<u64> {
    let mut best: Option<Vec<u64>> = None;
    for u in 1..n {
        if u.gcd(&n) != 1 {
            continue;
        }
        for c in 0..n {
            let mut img: Vec<u64> = set.iter().map(|&d| (u * d + c) % n).collect();
            img.sort_unstable();
            if best.as_ref().map_or(true, |b| img < *b) {
                best = Some(img);
            }
        }
    }
    best.unwrap_or_default()
}

/// The cubic extension `F_{q^3}` together with the data of the Singer cycle.
struct Singer {
    big: FieldSpec,
    n: u64,
}

impl Singer {
    fn new(q: u64) -> Result<Singer> {
        let (p, k) = prime_power(q).ok_or(Error::NonPrimeCharacteristic(q))?;
        let big = FieldSpec::new(p, 3 * k)?;
        Ok(Singer { big, n: q * q + q + 1 })
    }

    /// Elements of the subfield of order `r` (which must divide into the field).
    fn subfield(&self, r: u64) -> Vec<u32> {
        let total = self.big.order() as u64 - 1;
        let step = total / (r - 1);
        let mut out = vec![0u32];
        out.extend((0..r - 1).map(|i| self.big.exp(i * step)));
        out
    }

    /// `span_{F_r}{1, b}`.
    fn span(&self, r: u64, b: u32) -> Vec<u32> {
        let f = &self.big;
        let sub = self.subfield(r);
        let mut out = Vec::with_capacity(sub.len() * sub.len());
        for &u in &sub {
            for &v in &sub {
                out.push(f.add(u, f.mul(v, b)));
            }
        }
        out
    }

    /// `{m mod modulus : g^m ∈ line}` where `g = generator^gexp` generates the
    /// point group of order `modulus`.
    fn exponents(&self, line: &[u32], gexp: u64, modulus: u64) -> Vec<u64> {
        let f = &self.big;
        let total = f.order() as u64 - 1;
        let mut out = BTreeSet::new();
        let mut m = 0;
        // walk g^m until every point class is seen
        while m < modulus {
            let e = (gexp * m) % total;
            let x = f.exp(e);
            if line.contains(&x) {
                out.insert(m);
            }
            m += 1;
        }
        out.into_iter().collect()
    }
}

fn point_exponent_set(s: &Singer, r: u64, gexp: u64, modulus: u64, bexp: u64) -> Vec<u64> {
    let b = s.big.exp(bexp);
    let line = s.span(r, b);
    s.exponents(&line, gexp, modulus)
}

pub fn singer_difference_set(q: u64) -> Result<DifferenceSetRecord> {
    if q > 32 {
        return Err(Error::FieldTooLarge(format!("Singer sets need q <= 32, got {}", q)));
    }
    let s = Singer::new(q)?;
    // base point 1, line span{1, a} through 1 and a(1) = a
    let d = point_exponent_set(&s, q, 1, s.n, 1);
    Ok(check_with_source(s.n, &d, Source::Singer))
}

pub fn plane_from_difference_set(rec: &DifferenceSetRecord) -> Result<IncidencePlane> {
    if !rec.verified {
        return Err(Error::UnverifiedInput);
    }
    let n = rec.n;
    let lines = (0..n).map(|a| rec.set.iter().map(|&d| ((d + a) % n) as u32).collect()).collect();
    Ok(IncidencePlane::new(rec.order() as u32, n as usize, lines))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddedPair {
    pub base: DifferenceSetRecord,
    pub big: DifferenceSetRecord,
    pub scale: u64,
}

pub fn embed_difference_sets(q0: u64, e: u32) -> Result<EmbeddedPair> {
    if prime_power(q0).is_none() {
        return Err(Error::HypothesisViolated(format!("q0 = {} is not a prime power", q0)));
    }
    if q0 % 3 == 1 {
        return Err(Error::HypothesisViolated(format!("q0 = {} is congruent to 1 mod 3", q0)));
    }
    if e == 0 || e % 3 == 0 {
        return Err(Error::HypothesisViolated(format!("e = {} is congruent to 0 mod 3", e)));
    }
    let q = q0.checked_pow(e).filter(|&q| q <= 32).ok_or_else(|| Error::FieldTooLarge(format!("{}^{} exceeds 32", q0, e)))?;
    let s = Singer::new(q)?;
    let n = s.n;
    let n0 = q0 * q0 + q0 + 1;
    debug_assert_eq!(n % n0, 0);
    let scale = n / n0;
    let total = s.big.order() as u64 - 1;
    let small_total = q0 * q0 * q0 - 1;
    let m = total / small_total;
    // b = a^E generates the subfield of order q0^3 and a^E lies on point n/n0
    let big_e = (1..=small_total)
        .filter(|c| c.gcd(&small_total) == 1)
        .map(|c| c * m)
        .find(|&e| e % n == scale)
        .ok_or_else(|| Error::HypothesisViolated("no compatible subfield generator".into()))?;
    let run = |gexp: u64| -> (Vec<u64>, Vec<u64>) {
        let bexp = (big_e * gexp) % total;
        let base = point_exponent_set(&s, q0, bexp, n0, bexp);
        let big = point_exponent_set(&s, q, gexp, n, bexp);
        (base, big)
    };
    let (mut base, mut big) = run(1);
    if q0 == 2 && base == vec![0, 1, 5] {
        (base, big) = run(5);
    }
    let base = check_with_source(n0, &base, Source::Embedded);
    let big = check_with_source(n, &big, Source::Embedded);
    if !base.set.iter().all(|d| big.set.contains(&(d * scale % n))) {
        return Err(Error::HypothesisViolated("scaled inclusion failed".into()));
    }
    Ok(EmbeddedPair { base, big, scale })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert!(check_difference_set(7, &[0, 1, 3]).verified);
        assert!(check_difference_set(13, &[0, 1, 3, 9]).verified);
        let r = check_difference_set(7, &[0, 1, 2]);
        assert!(!r.verified);
        assert_eq!(r.witness, Some(Witness { residue: 1, representations: 2 }));
    }

    #[test]
    fn singer_two() {
        let r = singer_difference_set(2).unwrap();
        assert!(r.verified);
        assert_eq!(normalize(7, &r.set), vec![0, 1, 3]);
    }

    #[test]
    fn embed_small() {
        let p = embed_difference_sets(2, 1).unwrap();
        assert_eq!(p.base.set, vec![0, 1, 3]);
        assert_eq!(p.big.set, vec![0, 1, 3]);
        let p = embed_difference_sets(2, 2).unwrap();
        assert_eq!(p.base.set, vec![0, 1, 3]);
        assert_eq!(p.big.n, 21);
        for d in [0, 3, 9] {
            assert!(p.big.set.contains(&d));
        }
        assert!(matches!(embed_difference_sets(2, 3), Err(Error::HypothesisViolated(_))));
    }
}
