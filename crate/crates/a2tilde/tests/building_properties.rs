use a2tilde::apartment::{dominance_order, length, type_shift, weyl_apply, Dominance, Shape, TranslationVec, WeylElt};
use a2tilde::building::counts::{regular_shapes, y_laws};
use a2tilde::building::sectors::{horofunction, SectorGerm, ShapeMap};
use a2tilde::building::{build_ball, BuildingBall};
use a2tilde::measure::{is_probability, refinement_check, visual_table};
use a2tilde::apartment::{T1, T2};
use proptest::prelude::*;
use std::sync::OnceLock;

fn ball2() -> &'static BuildingBall {
    static B: OnceLock<BuildingBall> = OnceLock::new();
    B.get_or_init(|| build_ball(2, 2).unwrap())
}

fn grid() -> impl Iterator<Item = TranslationVec> {
    (-5..=5).flat_map(|i| (-5..=5).map(move |j| TranslationVec::new(i, j)))
}

#[test]
fn weyl_action_respects_the_s3_table() {
    use WeylElt::*;
    for a in WeylElt::ALL {
        for b in WeylElt::ALL {
            let ab = a.compose(b);
            assert!(grid().all(|v| weyl_apply(ab, v) == weyl_apply(a, weyl_apply(b, v))));
        }
        assert_eq!(a.compose(a.inverse()), E);
    }
    assert_eq!(S1.compose(S2), S1S2);
    assert_eq!(S2.compose(S1), S2S1);
    assert_eq!(S1.compose(S2).compose(S1), W0);
    assert_eq!(S1S2.compose(S1S2).compose(S1S2), E);
    assert_eq!(S1.compose(S1), E);
}

#[test]
fn longest_element_negates_length() {
    for v in grid() {
        assert_eq!(length(weyl_apply(WeylElt::W0, v)), -length(v));
    }
}

#[test]
fn dominance_examples() {
    assert_eq!(dominance_order(Shape::new(2, 2), Shape::new(1, 1)), Dominance::Greater);
    assert_eq!(dominance_order(Shape::new(1, 0), Shape::new(0, 1)), Dominance::Incomparable);
    assert_eq!(dominance_order(Shape::new(3, 1), Shape::new(3, 1)), Dominance::Equal);
    assert_eq!((type_shift(TranslationVec::new(1, 0)), type_shift(TranslationVec::new(0, 1))), (1, 2));
}

proptest! {
    #[test]
    fn length_is_additive(a in (-50i64..50, -50i64..50), b in (-50i64..50, -50i64..50)) {
        let (u, v) = (TranslationVec::new(a.0, a.1), TranslationVec::new(b.0, b.1));
        prop_assert_eq!(length(u + v), length(u) + length(v));
    }

    #[test]
    fn type_shift_is_a_homomorphism(a in (-50i64..50, -50i64..50), b in (-50i64..50, -50i64..50)) {
        let (u, v) = (TranslationVec::new(a.0, a.1), TranslationVec::new(b.0, b.1));
        prop_assert_eq!(type_shift(u + v), (type_shift(u) + type_shift(v)) % 3);
        prop_assert_eq!((type_shift(-u) + type_shift(u)) % 3, 0);
    }
}

#[test]
fn vector_distance_is_antisymmetric_on_the_whole_ball() {
    let b = ball2();
    for x in 0..b.len() as u32 {
        let sm = ShapeMap::new(b, x);
        for y in 0..b.len() as u32 {
            let s = sm.get(y);
            assert_eq!(b.vector_distance(y, x), s.flip(), "{x} {y}");
            // types differ by the type shift of the distance
            assert_eq!((b.vertex_type(x) + s.type_shift()) % 3, b.vertex_type(y), "{x} {y}");
        }
    }
}

#[test]
fn interior_links_are_planes_of_order_q() {
    let b = ball2();
    for v in (0..b.len() as u32).filter(|&v| b.is_interior(v)) {
        let rep = b.link_report(v).unwrap();
        assert!(rep.pass && rep.order == 2, "vertex {v}");
    }
}

#[test]
fn y_ratios_decay_and_stabilize() {
    let shapes: Vec<Shape> = regular_shapes(4);
    let y = y_laws(ball2().ring, &shapes);
    assert!(y.identity_is_one && y.laws_hold && y.stable && y.decay);
}

#[test]
fn tables_refine_consistently() {
    let b = ball2();
    let sm = ShapeMap::new(b, b.origin());
    for s in [Shape::new(1, 1), Shape::new(2, 1), Shape::new(1, 2)] {
        for d in [T1, T2] {
            assert!(refinement_check(b, &sm, s, d).unwrap().consistent, "{s} {d}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn horofunction_is_a_cocycle_and_independent_of_depth(
        tip in 0usize..10_000, y in 0usize..10_000, z in 0usize..10_000
    ) {
        let b = ball2();
        let r = b.ring;
        let o = b.vertex(b.origin());
        let far: Vec<u32> = (0..b.len() as u32).filter(|&v| b.vector_distance(b.origin(), v) == Shape::new(2, 2)).collect();
        let through = b.vertex(far[tip % far.len()]);
        let germ = SectorGerm::through(r, o, through, 10).unwrap();
        let deeper = SectorGerm::through(r, o, through, 12).unwrap();
        let (y, z) = (b.vertex((y % b.len()) as u32), b.vertex((z % b.len()) as u32));
        let hxy = horofunction(r, o, y, &germ).unwrap();
        prop_assert_eq!(hxy, horofunction(r, o, y, &deeper).unwrap());
        let hxz = horofunction(r, o, z, &germ).unwrap();
        let hzy = horofunction(r, z, y, &germ).unwrap();
        prop_assert_eq!(hxy, hxz + hzy);
        prop_assert_eq!(horofunction(r, y, y, &germ).unwrap(), TranslationVec::new(0, 0));
    }

    #[test]
    fn cylinder_tables_are_probabilities_at_every_basepoint(x in 0usize..10_000, s in prop::sample::select(vec![(1u32, 0u32), (0, 1), (1, 1), (2, 1), (1, 2)])) {
        let b = ball2();
        let interior: Vec<u32> = (0..b.len() as u32).filter(|&v| b.dist_o(v) <= 1).collect();
        let x = interior[x % interior.len()];
        let sm = ShapeMap::new(b, x);
        let t = visual_table(b, &sm, Shape::new(s.0, s.1));
        prop_assume!(t.is_ok());
        prop_assert!(is_probability(&t.unwrap()));
    }
}
