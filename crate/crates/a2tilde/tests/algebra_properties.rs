use a2tilde::algebra::{dvr_elementary_divisors, smith_normal_form, DVRMatrix, FieldSpec, IntMatrix, Laurent};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn matrix(max: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-9i64..=9, c), r))
}

/// Product of random elementary row operations on an n x n identity.
fn unimodular(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec((0..n, 0..n, -3i64..=3), 0..12).prop_map(move |ops| {
        let mut m: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect();
        for (a, b, k) in ops {
            if a != b {
                for j in 0..n {
                    m[a][j] += k * m[b][j];
                }
            }
        }
        m
    })
}

fn fields() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn snf_is_a_divisibility_chain_and_factorization(rows in matrix(6)) {
        let m = IntMatrix::from_rows(&rows);
        let s = smith_normal_form(&m);
        prop_assert_eq!(s.left.mul(&m).mul(&s.right), s.diag.clone());
        let d = s.diag.diagonal();
        for w in d.windows(2) {
            prop_assert!(w[0] >= BigInt::zero());
            if !w[0].is_zero() {
                prop_assert!((&w[1] % &w[0]).is_zero());
            } else {
                prop_assert!(w[1].is_zero());
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn snf_is_invariant_under_unimodular_multiplication(
        (rows, u, v) in (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| (
            prop::collection::vec(prop::collection::vec(-9i64..=9, c), r), unimodular(r), unimodular(c)))
    ) {
        let m = IntMatrix::from_rows(&rows);
        let conj = IntMatrix::from_rows(&u).mul(&m).mul(&IntMatrix::from_rows(&v));
        prop_assert_eq!(smith_normal_form(&m).diag.diagonal(), smith_normal_form(&conj).diag.diagonal());
    }

    #[test]
    fn field_axioms(q in fields(), seed in any::<[u32; 3]>()) {
        let f = FieldSpec::of_order(q).unwrap();
        let [a, b, c] = seed.map(|s| s % f.order());
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.pow(a, q), a);
        if a != 0 {
            prop_assert_eq!(f.mul(a, f.inv(a)), 1);
        }
    }

    #[test]
    fn dvr_divisors_are_invariant_under_unimodular_factors(
        e in (0i64..4, 0i64..4, 0i64..4),
        coeffs in prop::collection::vec(prop::collection::vec(0u32..2, 3), 6),
    ) {
        let f = FieldSpec::of_order(2).unwrap();
        let n = 16;
        let poly = |c: &Vec<u32>| Laurent::new(0, c.clone());
        // upper unitriangular times lower unitriangular, both with polynomial entries
        let one = || Laurent::new(0, vec![1]);
        let z = Laurent::zero;
        let up = DVRMatrix::new([[one(), poly(&coeffs[0]), poly(&coeffs[1])], [z(), one(), poly(&coeffs[2])], [z(), z(), one()]], n);
        let lo = DVRMatrix::new([[one(), z(), z()], [poly(&coeffs[3]), one(), z()], [poly(&coeffs[4]), poly(&coeffs[5]), one()]], n);
        let u = up.mul(&lo, &f);
        let d = DVRMatrix::diag_monomials([e.0, e.1, e.2], n);
        let mut sorted = [e.0, e.1, e.2];
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        let base = dvr_elementary_divisors(&d, &f).unwrap();
        prop_assert_eq!(base, (sorted[0], sorted[1], sorted[2]));
        prop_assert_eq!(dvr_elementary_divisors(&d.mul(&u, &f), &f).unwrap(), base);
        prop_assert_eq!(dvr_elementary_divisors(&u.mul(&d, &f), &f).unwrap(), base);
    }
}

#[test]
fn snf_of_identity_and_zero() {
    let s = smith_normal_form(&IntMatrix::identity(3));
    assert!(s.invariants().iter().all(|x| x.is_one()));
    assert_eq!(smith_normal_form(&IntMatrix::zeros(2, 3)).rank(), 0);
}
