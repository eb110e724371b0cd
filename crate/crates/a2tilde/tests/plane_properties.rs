use a2tilde::diffset::{check_difference_set, embed_difference_sets, normalize, plane_from_difference_set, singer_difference_set};
use a2tilde::plane::perm::tuple_orbit_size;
use a2tilde::plane::{
    check_axioms, combinatorial_projection, opposite, pencil, pg2_of_order, projectivity_group, IncidencePlane, Vertex,
};
use num_integer::Integer;
use proptest::prelude::*;

fn vertices(p: &IncidencePlane) -> Vec<Vertex> {
    (0..p.num_points as u32).map(Vertex::Point).chain((0..p.num_lines() as u32).map(Vertex::Line)).collect()
}

#[test]
fn generated_planes_satisfy_the_axioms() {
    for q in [2u32, 3, 4, 5, 7, 8, 9] {
        let n = (q * q + q + 1) as usize;
        let a = pg2_of_order(q).unwrap();
        let b = plane_from_difference_set(&singer_difference_set(q as u64).unwrap()).unwrap();
        for p in [a, b] {
            assert!(check_axioms(&p).pass, "q={q}");
            assert_eq!((p.num_points, p.num_lines()), (n, n));
            assert!((0..n as u32).all(|l| p.points_on(l).len() == q as usize + 1));
            assert!((0..n as u32).all(|x| p.lines_through(x).len() == q as usize + 1));
        }
    }
}

#[test]
fn projection_and_its_reverse_cancel() {
    for q in [2, 3, 4] {
        let p = pg2_of_order(q).unwrap();
        let vs = vertices(&p);
        for &v in &vs {
            for &w in &vs {
                if !opposite(&p, v, w) {
                    continue;
                }
                for f in pencil(&p, w) {
                    let g = combinatorial_projection(&p, v, w, f).unwrap();
                    assert!(g.contains(v));
                    assert_eq!(combinatorial_projection(&p, w, v, g).unwrap(), f);
                }
            }
        }
    }
}

#[test]
fn projectivity_groups_are_three_transitive() {
    for q in [2, 3, 4] {
        let p = pg2_of_order(q).unwrap();
        for v in [Vertex::Point(0), Vertex::Line(1)] {
            let g = projectivity_group(&p, v).unwrap();
            let d = g.degree;
            assert_eq!(d, q as usize + 1);
            assert_eq!(tuple_orbit_size(&g.elements, 3), d * (d - 1) * (d - 2));
        }
    }
}

#[test]
fn embedding_preconditions_make_n0_prime_to_q_minus_one() {
    for q0 in [2u64, 3, 5, 8] {
        for e in 1..=5u32 {
            match embed_difference_sets(q0, e) {
                Ok(pair) => {
                    let q = q0.pow(e);
                    assert_eq!((q0 * q0 + q0 + 1).gcd(&(q - 1)), 1);
                    assert_eq!(pair.big.n % pair.base.n, 0);
                }
                Err(_) => assert!(q0 % 3 == 1 || e % 3 == 0 || q0.pow(e) > 32),
            }
        }
    }
}

#[test]
fn embedded_base_plane_sits_inside_the_big_plane() {
    for e in [1, 2, 4, 5] {
        let pair = embed_difference_sets(2, e).unwrap();
        let small = plane_from_difference_set(&pair.base).unwrap();
        let big = plane_from_difference_set(&pair.big).unwrap();
        let s = pair.scale as u32;
        let n = pair.big.n as u32;
        // point x goes to s*x; the line D0 + a goes to D + s*a
        for (a, line) in small.lines.iter().enumerate() {
            let target = (s * a as u32) % n;
            for &x in line {
                assert!(big.incident((s * x) % n, target), "e={e}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn normalization_is_invariant_under_affine_images(q in prop::sample::select(vec![2u64, 3, 4, 5, 7, 8, 9]), u in 1u64..200, c in 0u64..200) {
        let rec = singer_difference_set(q).unwrap();
        let n = rec.n;
        prop_assume!(u.gcd(&n) == 1);
        let image: Vec<u64> = rec.set.iter().map(|&d| (u * d + c) % n).collect();
        prop_assert!(check_difference_set(n, &image).verified);
        prop_assert_eq!(normalize(n, &image), normalize(n, &rec.set));
    }

    #[test]
    fn check_matches_difference_counting(n in 3u64..40, raw in prop::collection::btree_set(0u64..40, 1..8)) {
        let set: Vec<u64> = raw.into_iter().filter(|&x| x < n).collect();
        prop_assume!(!set.is_empty());
        let mut reps = vec![0; n as usize];
        for &a in &set {
            for &b in &set {
                if a != b {
                    reps[((a + n - b) % n) as usize] += 1;
                }
            }
        }
        let rec = check_difference_set(n, &set);
        prop_assert_eq!(rec.verified, reps[1..].iter().all(|&r| r == 1));
        if let Some(w) = rec.witness {
            prop_assert!(reps[w.residue as usize] != 1);
        }
    }
}
