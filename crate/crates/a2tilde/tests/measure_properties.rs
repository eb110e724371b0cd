use a2tilde::apartment::Shape;
use a2tilde::building::sectors::ShapeMap;
use a2tilde::building::{build_ball, BuildingBall};
use a2tilde::measure::{
    beta_cocycle_check, disintegration_check, m_mass_of_fx, measure_constants, opposite_pairs, opposite_pairs_exhaustive,
    plus_minus_tables, rat, rn_check,
};
use std::sync::OnceLock;

fn ball3() -> &'static BuildingBall {
    static B: OnceLock<BuildingBall> = OnceLock::new();
    B.get_or_init(|| build_ball(2, 3).unwrap())
}

#[test]
fn radon_nikodym_ratio_on_all_shared_cells() {
    let b = ball3();
    let o = b.origin();
    for &y in b.neighbors(o) {
        let rn = rn_check(b, o, y, Shape::new(2, 2)).unwrap();
        assert!(rn.pass && rn.shared > 0 && rn.matches == rn.shared, "y={y}");
    }
}

#[test]
fn pruned_pairs_match_exhaustive_pairs() {
    let b = ball3();
    let sm = ShapeMap::new(b, b.origin());
    for s in [Shape::new(1, 1), Shape::new(2, 2)] {
        let (mut fast, _) = opposite_pairs(b, &sm, s).unwrap();
        let mut slow = opposite_pairs_exhaustive(b, &sm, s).unwrap();
        fast.sort_unstable();
        slow.sort_unstable();
        assert_eq!(fast, slow, "{s}");
    }
}

#[test]
fn finite_mass_and_beta() {
    let b = ball3();
    let m = m_mass_of_fx(b, b.origin(), Shape::new(2, 2), 1).unwrap();
    assert!(m.equal && m.beta_zero == m.beta_evaluated);
    assert_eq!(m.product, rat(8, 21));
    let c = beta_cocycle_check(b, b.origin(), b.neighbors(b.origin())[3], Shape::new(3, 3), 997).unwrap();
    assert!(c.pass && c.sampled > 0 && c.plus_form == c.sampled);
}

#[test]
fn disintegration_uses_one_constant_tuple() {
    let b = ball3();
    let o = b.origin();
    let sm = ShapeMap::new(b, o);
    let c = measure_constants(b, &sm).unwrap();
    assert_eq!(c.k, rat(21, 8));
    for s in [Shape::new(1, 1), Shape::new(2, 1), Shape::new(1, 2), Shape::new(2, 2)] {
        let d = disintegration_check(b, o, s, Some(c.clone())).unwrap();
        assert!(d.pass && d.identity_holds == d.cells, "{s}");
        let pm = plus_minus_tables(b, &sm, s).unwrap();
        assert!(pm.plus_mass.is_some() && pm.minus_mass.is_some());
    }
}
