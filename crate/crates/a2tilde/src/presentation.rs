//! Essert presentations of panel-regular lattices, torsion of `σ0^d σ1^e`,
//! lattice morphisms and the exotic family over `Γ0`.

use crate::diffset::{check_difference_set, embed_difference_sets, DifferenceSetRecord};
use crate::error::{Error, Result};
use crate::group::{abelianization, perfect_check, AbelianInvariants, Presentation, SubgroupSpec, Word, DEFAULT_MAX_COSETS};
use serde::Serialize;
use std::collections::BTreeMap;

/// Difference set `D ∋ 0` in `Z/n` with two permutations of `D` fixing 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EssertData {
    pub q: u64,
    pub n: u64,
    #[serde(rename = "D")]
    pub d: Vec<u64>,
    pub pi1: BTreeMap<u64, u64>,
    pub pi2: BTreeMap<u64, u64>,
}

fn check_perm(name: &str, d: &[u64], pi: &BTreeMap<u64, u64>) -> Result<()> {
    let keys: Vec<u64> = pi.keys().copied().collect();
    let mut vals: Vec<u64> = pi.values().copied().collect();
    vals.sort_unstable();
    if keys != d || vals != d {
        return Err(Error::InvalidData(format!("{name} is not a permutation of D")));
    }
    if pi[&0] != 0 {
        return Err(Error::InvalidData(format!("{name} moves 0")));
    }
    Ok(())
}

impl EssertData {
    pub fn new(rec: &DifferenceSetRecord, pi1: BTreeMap<u64, u64>, pi2: BTreeMap<u64, u64>) -> Result<EssertData> {
        if !rec.verified {
            return Err(Error::InvalidData("difference set is not verified".into()));
        }
        let q = rec.order();
        if rec.n != q * q + q + 1 {
            return Err(Error::InvalidData(format!("n = {} but q = {q}", rec.n)));
        }
        if !rec.set.contains(&0) {
            return Err(Error::InvalidData("0 is not in D".into()));
        }
        check_perm("pi1", &rec.set, &pi1)?;
        check_perm("pi2", &rec.set, &pi2)?;
        Ok(EssertData { q, n: rec.n, d: rec.set.clone(), pi1, pi2 })
    }

    /// Permutations given as lists of images, aligned with sorted `D`.
    pub fn from_images(n: u64, set: &[u64], pi1: &[u64], pi2: &[u64]) -> Result<EssertData> {
        let rec = check_difference_set(n, set);
        let zip = |pi: &[u64]| -> Result<BTreeMap<u64, u64>> {
            if pi.len() != rec.set.len() {
                return Err(Error::InvalidData("permutation length differs from |D|".into()));
            }
            Ok(rec.set.iter().copied().zip(pi.iter().map(|&x| x % n)).collect())
        };
        EssertData::new(&rec, zip(pi1)?, zip(pi2)?)
    }

    pub fn identity_perm(&self) -> BTreeMap<u64, u64> {
        self.d.iter().map(|&x| (x, x)).collect()
    }
}

fn exp(x: u64) -> i64 {
    x as i64
}

/// `<σ0, σ1, σ2 | σi^n, σ0^d σ1^{π1(d)} σ2^{π2(d)} (d ∈ D, d ≠ 0)>`.
pub fn essert_presentation(data: &EssertData) -> Presentation {
    let n = exp(data.n);
    let mut rels: Vec<Word> = (0..3).map(|g| Word(vec![(g, n)])).collect();
    for &d in data.d.iter().filter(|&&d| d != 0) {
        rels.push(Word::from_syllables(&[(0, exp(d)), (1, exp(data.pi1[&d])), (2, exp(data.pi2[&d]))]));
    }
    Presentation::new(vec!["s0".into(), "s1".into(), "s2".into()], rels).expect("valid alphabet")
}

/// `(7, {0,1,3}, id, (1 3))`.
pub fn gamma0() -> EssertData {
    EssertData::from_images(7, &[0, 1, 3], &[0, 1, 3], &[0, 3, 1]).expect("valid data")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorsionVerdict {
    pub word: String,
    pub d: u64,
    pub e: u64,
    pub finite: bool,
    pub justification: String,
}

/// `σ0^d σ1^e` has finite order iff `e ∈ {0, π1(d)}`.
pub fn torsion_classify(data: &EssertData, d: u64, e: u64) -> Result<TorsionVerdict> {
    let d = d % data.n;
    let e = e % data.n;
    if d == 0 {
        return Err(Error::ZeroD);
    }
    let p1 = *data.pi1.get(&d).ok_or_else(|| Error::InvalidData(format!("{d} is not in D")))?;
    let (finite, justification) = if e == 0 {
        (true, format!("power of s0, which has order dividing {}", data.n))
    } else if e == p1 {
        (true, format!("equals s2^-{} by the relator for d = {d}", data.pi2[&d]))
    } else {
        (false, format!("e is neither 0 nor pi1(d) = {p1}"))
    };
    Ok(TorsionVerdict { word: format!("s0^{d}*s1^{e}"), d, e, finite, justification })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Condition {
    pub index: u8,
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelatorImage {
    pub relator: String,
    pub image: String,
    pub reduces_to_empty: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MorphismCertificate {
    pub source: EssertData,
    pub target: EssertData,
    pub scale: u64,
    pub conditions: Vec<Condition>,
    pub assignment: Vec<String>,
    pub relator_images: Vec<RelatorImage>,
    pub witness: TorsionVerdict,
    pub witness_source_word: String,
    pub valid: bool,
}

/// Exponents reduced into `[0, n)` using only the power relators.
fn reduce_powers(w: &Word, n: i64) -> Word {
    Word::from_syllables(&w.0.iter().map(|&(g, e)| (g, e.rem_euclid(n))).collect::<Vec<_>>())
}

/// Checks the three arithmetic conditions for `s_i ↦ σ_i^{n/n0}` to extend
/// to a homomorphism and returns the certificate, or the first failure.
pub fn lattice_morphism(source: &EssertData, target: &EssertData) -> Result<MorphismCertificate> {
    let (n0, n) = (source.n, target.n);
    if n % n0 != 0 {
        return Err(Error::ConditionFailed { bullet: 1, detail: format!("{n0} does not divide {n}") });
    }
    let s = n / n0;
    let mut conditions = vec![Condition { index: 1, name: "divisibility".into(), pass: true, detail: format!("{n0} divides {n}") }];
    if let Some(&d) = source.d.iter().find(|&&d| !target.d.contains(&(d * s % n))) {
        return Err(Error::ConditionFailed { bullet: 2, detail: format!("d = {d}: {} is not in D", d * s % n) });
    }
    conditions.push(Condition {
        index: 2,
        name: "scaled inclusion".into(),
        pass: true,
        detail: format!("{{d*{s} : d in D0}} is contained in D"),
    });
    for &d in &source.d {
        let t = d * s % n;
        for (i, (pi, tau)) in [(&target.pi1, &source.pi1), (&target.pi2, &source.pi2)].into_iter().enumerate() {
            if pi[&t] != tau[&d] * s % n {
                return Err(Error::ConditionFailed {
                    bullet: 3,
                    detail: format!("d = {d}: pi{}({t}) = {} but tau{}({d})*{s} = {}", i + 1, pi[&t], i + 1, tau[&d] * s % n),
                });
            }
        }
    }
    conditions.push(Condition {
        index: 3,
        name: "permutation compatibility".into(),
        pass: true,
        detail: format!("pi_i(d*{s}) = tau_i(d)*{s} for all d in D0"),
    });
    let src = essert_presentation(source);
    let tgt = essert_presentation(target);
    let images: Vec<Word> = (0..3).map(|g| Word(vec![(g, exp(s))])).collect();
    let target_rels: Vec<Word> = tgt.relators.iter().map(|r| reduce_powers(r, exp(n))).collect();
    let relator_images = src
        .relators
        .iter()
        .map(|r| {
            let img = r.substitute(&images);
            let red = reduce_powers(&img, exp(n));
            RelatorImage {
                relator: r.render(&src.generators),
                image: img.render(&tgt.generators),
                reduces_to_empty: red.is_empty() || target_rels.contains(&red),
            }
        })
        .collect::<Vec<_>>();
    let d = *source.d.iter().find(|&&d| d != 0).expect("nonempty D0");
    let e = (1..n0).find(|&e| e != source.pi1[&d]).expect("n0 > 2");
    let witness = torsion_classify(target, d * s, e * s)?;
    let valid = relator_images.iter().all(|r| r.reduces_to_empty) && !witness.finite;
    Ok(MorphismCertificate {
        source: source.clone(),
        target: target.clone(),
        scale: s,
        conditions,
        assignment: (0..3).map(|g| format!("s{g} -> s{g}^{s}")).collect(),
        relator_images,
        witness,
        witness_source_word: format!("s0^{d}*s1^{e}"),
        valid,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RationaleLine {
    pub kind: &'static str,
    pub statement: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExoticBundle {
    pub q: u64,
    pub data: EssertData,
    pub presentation: serde_json::Value,
    pub certificate: MorphismCertificate,
    pub source_abelianization: AbelianInvariants,
    pub derived_subgroup_index: usize,
    pub derived_subgroup_perfect: bool,
    pub rationale: Vec<RationaleLine>,
}

/// Essert data for `q = 2^e`, `e ≢ 0 mod 3`, receiving a morphism from `Γ0`:
/// `π1` is the identity and `π2` swaps `n/7` and `3n/7`.
pub fn exotic_construct(q: u64) -> Result<ExoticBundle> {
    if q < 2 || !q.is_power_of_two() {
        return Err(Error::HypothesisViolated(format!("q = {q} is not a power of 2")));
    }
    let e = q.trailing_zeros();
    if e % 3 == 0 {
        return Err(Error::HypothesisViolated(format!("q = {q} = 2^{e} with e divisible by 3")));
    }
    if q > 32 {
        return Err(Error::HypothesisViolated(format!("q = {q} exceeds 32")));
    }
    let pair = embed_difference_sets(2, e)?;
    let rec = pair.big;
    let n = rec.n;
    let (a, b) = (n / 7, 3 * n / 7);
    if !rec.set.contains(&0) || !rec.set.contains(&a) || !rec.set.contains(&b) {
        return Err(Error::HypothesisViolated(format!("D does not contain 0, {a} and {b}")));
    }
    let pi1: BTreeMap<u64, u64> = rec.set.iter().map(|&x| (x, x)).collect();
    let mut pi2 = pi1.clone();
    pi2.insert(a, b);
    pi2.insert(b, a);
    let data = EssertData::new(&rec, pi1, pi2)?;
    let g0 = gamma0();
    let certificate = lattice_morphism(&g0, &data)?;
    let g0p = essert_presentation(&g0);
    let ab = abelianization(&g0p);
    let perfect = perfect_check(&g0p, &SubgroupSpec::Derived, DEFAULT_MAX_COSETS)?;
    let computed = |s: String| RationaleLine { kind: "COMPUTED", statement: s };
    let cited = |s: &str| RationaleLine { kind: "CITED", statement: s.to_string() };
    let rationale = vec![
        computed(format!("abelianization of Gamma0 is {ab}")),
        computed(format!(
            "derived subgroup of Gamma0 has index {} and is perfect: {}",
            perfect.index, perfect.perfect
        )),
        computed(format!(
            "morphism Gamma0 -> Gamma(q={q}) with s_i -> s_i^{} satisfies all three conditions: {}",
            certificate.scale, certificate.valid
        )),
        computed(format!(
            "image of {} is {} of infinite order: {}",
            certificate.witness_source_word, certificate.witness.word, !certificate.witness.finite
        )),
        cited("the building of Gamma0 is not Bruhat-Tits"),
        cited("if the building of Gamma(q) were Bruhat-Tits, then either the building of Gamma0 is Bruhat-Tits or Gamma0 has an infinite quotient that is residually p-by-cyclic"),
        cited("a residually p-by-cyclic quotient of a group with a perfect subgroup of index 7 has order at most 7, so neither alternative holds and the building of Gamma(q) is not Bruhat-Tits"),
    ];
    Ok(ExoticBundle {
        q,
        presentation: essert_presentation(&data).to_json(),
        data,
        source_abelianization: ab,
        derived_subgroup_index: perfect.index,
        derived_subgroup_perfect: perfect.perfect,
        certificate,
        rationale,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma0_relators() {
        let p = essert_presentation(&gamma0());
        let r: Vec<String> = p.relators.iter().map(|w| w.render(&p.generators)).collect();
        assert_eq!(r, ["s0^7", "s1^7", "s2^7", "s0*s1*s2^3", "s0^3*s1^3*s2"]);
    }

    #[test]
    fn perm_must_fix_zero() {
        assert!(matches!(EssertData::from_images(7, &[0, 1, 3], &[1, 0, 3], &[0, 1, 3]), Err(Error::InvalidData(_))));
    }
}
