//! Singer difference sets, normalization, the planes they define and nested pairs.

use a2tilde::diffset::{check_difference_set, embed_difference_sets, normalize, plane_from_difference_set, singer_difference_set};
use a2tilde::plane::{check_axioms, find_isomorphism, pg2_of_order};

fn main() -> a2tilde::Result<()> {
    for q in [2, 3, 4, 5, 7, 8, 9] {
        let rec = singer_difference_set(q)?;
        println!("q={q}: n={} D={:?} normalized {:?}", rec.n, rec.set, normalize(rec.n, &rec.set));
    }
    println!("{{0,1,2}} mod 7: {:?}", check_difference_set(7, &[0, 1, 2]).witness);

    let rec = singer_difference_set(3)?;
    let plane = plane_from_difference_set(&rec)?;
    println!("plane of order 3 passes = {}, isomorphic to PG(2,3) = {}", check_axioms(&plane).pass, find_isomorphism(&plane, &pg2_of_order(3)?).is_some());

    for e in [1, 2, 4, 5] {
        let pair = embed_difference_sets(2, e)?;
        println!("q=2^{e}: {:?} scaled by {} into D of size {}", pair.base.set, pair.scale, pair.big.set.len());
    }
    println!("e=3: {}", embed_difference_sets(2, 3).unwrap_err());
    Ok(())
}
