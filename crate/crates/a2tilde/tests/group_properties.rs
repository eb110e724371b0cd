use a2tilde::group::{
    abelianization, perfect_check, reidemeister_schreier, todd_coxeter, Presentation, SubgroupSpec, Transversal, Word,
};
use a2tilde::presentation::{essert_presentation, exotic_construct, gamma0, lattice_morphism, torsion_classify, EssertData};
use a2tilde::Error;
use proptest::prelude::*;

fn word(gens: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..gens, -4i64..=4), 0..8).prop_map(|s| Word::from_syllables(&s))
}

fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("s{i}")).collect()
}

/// <a, b | a^3, b^2, (ab)^2>, of order 6.
fn s3() -> Presentation {
    let ab = Word::from_syllables(&[(0, 1), (1, 1)]);
    Presentation::new(names(2), vec![Word::from_syllables(&[(0, 3)]), Word::from_syllables(&[(1, 2)]), ab.pow(2)]).unwrap()
}

proptest! {
    #[test]
    fn inverse_cancels_and_is_an_involution(w in word(3)) {
        prop_assert!(w.mul(&w.inverse()).is_empty());
        prop_assert!(w.inverse().mul(&w).is_empty());
        prop_assert_eq!(w.inverse().inverse(), w);
    }

    #[test]
    fn words_stay_freely_reduced(a in word(3), b in word(3)) {
        let w = a.mul(&b);
        prop_assert!(w.0.windows(2).all(|p| p[0].0 != p[1].0));
        prop_assert!(w.0.iter().all(|&(_, e)| e != 0));
        prop_assert!(w.length() <= a.length() + b.length());
        let sums: Vec<i64> = a.exponent_sums(3).iter().zip(b.exponent_sums(3)).map(|(x, y)| x + y).collect();
        prop_assert_eq!(w.exponent_sums(3), sums);
        prop_assert_eq!(Word::commutator(&a, &b).exponent_sums(3), vec![0, 0, 0]);
    }

    #[test]
    fn presentations_round_trip_through_gap_and_json(rels in prop::collection::vec(word(3), 0..5)) {
        let p = Presentation::new(names(3), rels).unwrap();
        prop_assert_eq!(Presentation::from_gap(&p.to_gap()).unwrap(), p.clone());
        prop_assert_eq!(Presentation::from_json(&p.to_json().to_string()).unwrap(), p);
    }

    #[test]
    fn abelianization_survives_tietze_moves(c in word(3), i in 0usize..5, j in 0usize..5) {
        let p = essert_presentation(&gamma0());
        let (ri, rj) = (&p.relators[i], &p.relators[j]);
        let extra = c.inverse().mul(ri).mul(&c).mul(rj);
        let mut rels = p.relators.clone();
        rels.push(extra);
        let q = Presentation::new(p.generators.clone(), rels).unwrap();
        prop_assert_eq!(abelianization(&q), abelianization(&p));
    }

    #[test]
    fn coset_tables_of_finite_groups_are_consistent(gens in prop::collection::vec(word(2), 0..3)) {
        let p = s3();
        let t = todd_coxeter(&p, &gens, 1000).unwrap();
        prop_assert!(t.is_consistent(&p));
        prop_assert_eq!(6 % t.cosets, 0);
        let sub = reidemeister_schreier(&p, &t, Transversal::BreadthFirst).unwrap();
        prop_assert_eq!(sub.generator_words.len(), t.cosets * (2 - 1) + 1);
        prop_assert_eq!(
            abelianization(&sub.presentation),
            abelianization(&reidemeister_schreier(&p, &t, Transversal::DepthFirst).unwrap().presentation)
        );
    }
}

#[test]
fn transversal_choice_does_not_change_the_derived_abelianization() {
    let g2 = EssertData::from_images(7, &[0, 1, 3], &[0, 1, 3], &[0, 1, 3]).unwrap();
    for p in [essert_presentation(&gamma0()), essert_presentation(&g2)] {
        let rep = perfect_check(&p, &SubgroupSpec::Derived, 1_000_000).unwrap();
        assert_eq!(rep.abelianization, rep.abelianization_dfs);
        assert_eq!(Some(rep.index.into()), abelianization(&p).order());
    }
}

#[test]
fn coset_enumeration_edge_cases() {
    let p = essert_presentation(&gamma0());
    let all: Vec<Word> = (0..3).map(Word::generator).collect();
    assert_eq!(todd_coxeter(&p, &all, 10).unwrap().cosets, 1);
    let free = Presentation::free(&["a", "b"]);
    assert!(matches!(todd_coxeter(&free, &[], 500), Err(Error::CosetLimitExceeded(_))));
    assert!(matches!(perfect_check(&free, &SubgroupSpec::Derived, 500), Err(Error::CosetLimitExceeded(_))));
    let z7 = Presentation::new(names(1), vec![Word::from_syllables(&[(0, 7)])]).unwrap();
    let whole = perfect_check(&z7, &SubgroupSpec::Generators(vec![Word::generator(0)]), 100).unwrap();
    assert!(!whole.perfect);
    assert_eq!((whole.index, whole.abelianization.to_string()), (1, "Z/7".to_string()));
    let trivial = perfect_check(&z7, &SubgroupSpec::Generators(vec![]), 100).unwrap();
    assert!(trivial.perfect && trivial.index == 7);
    // index 1: the original group back
    let t = todd_coxeter(&p, &all, 10).unwrap();
    let rs = reidemeister_schreier(&p, &t, Transversal::BreadthFirst).unwrap();
    assert_eq!(abelianization(&rs.presentation), abelianization(&p));
}

fn all_data() -> Vec<EssertData> {
    let mut v = vec![gamma0()];
    v.extend([4, 16, 32].map(|q| exotic_construct(q).unwrap().data));
    v
}

#[test]
fn torsion_verdicts_split_two_finite_and_the_rest_infinite() {
    for data in all_data() {
        let q = data.q;
        for &d in data.d.iter().filter(|&&d| d != 0) {
            let finite = (0..data.n).filter(|&e| torsion_classify(&data, d, e).unwrap().finite).count();
            assert_eq!(finite, 2, "n={} d={d}", data.n);
            assert_eq!(data.n as usize - finite, (q * q + q - 1) as usize);
        }
        assert!(torsion_classify(&data, 0, 1).is_err());
    }
}

/// Reduces exponents mod n and compares with the target relators, with no
/// other rewriting.
fn syntactic_image_check(source: &EssertData, target: &EssertData, scale: u64) -> bool {
    let n = target.n as i64;
    let normal = |w: &Word| -> Vec<(usize, i64)> {
        let mut out = Word::empty();
        for &(g, e) in &w.0 {
            out.push(g, e.rem_euclid(n));
        }
        out.0.into_iter().filter(|&(_, e)| e != 0).collect()
    };
    let targets: Vec<Vec<(usize, i64)>> = essert_presentation(target).relators.iter().map(normal).collect();
    let images: Vec<Word> = (0..3).map(|g| Word::from_syllables(&[(g, scale as i64)])).collect();
    essert_presentation(source).relators.iter().all(|r| {
        let img = normal(&r.substitute(&images));
        img.is_empty() || targets.contains(&img)
    })
}

#[test]
fn morphism_certificates_survive_the_syntactic_check() {
    for data in all_data() {
        let cert = lattice_morphism(&gamma0(), &data).unwrap();
        assert!(cert.valid);
        assert!(cert.conditions.iter().all(|c| c.pass));
        assert!(cert.relator_images.iter().all(|r| r.reduces_to_empty));
        assert!(!cert.witness.finite);
        assert!(syntactic_image_check(&gamma0(), &data, cert.scale), "n={}", data.n);
    }
}

#[test]
fn exotic_certificates_are_reproducible() {
    for q in [2, 4, 16] {
        let a = serde_json::to_string(&exotic_construct(q).unwrap()).unwrap();
        let b = serde_json::to_string(&exotic_construct(q).unwrap()).unwrap();
        assert_eq!(a, b);
    }
    let d4 = exotic_construct(4).unwrap().data;
    assert_eq!(d4.n, 21);
    assert!([0, 3, 9].iter().all(|x| d4.d.contains(x)));
    assert_eq!((d4.pi2[&3], d4.pi2[&9]), (9, 3));
    assert!(matches!(exotic_construct(8), Err(Error::HypothesisViolated(_))));
}

#[test]
fn gamma0_relators_are_exact() {
    let p = essert_presentation(&gamma0());
    let rendered: Vec<String> = p.relators.iter().map(|r| r.render(&p.generators)).collect();
    assert_eq!(rendered, ["s0^7", "s1^7", "s2^7", "s0*s1*s2^3", "s0^3*s1^3*s2"]);
}
