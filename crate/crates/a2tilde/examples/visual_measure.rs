//! Cylinder tables, refinement and Radon-Nikodym ratios between neighbors.

use a2tilde::apartment::{Shape, T1, T2};
use a2tilde::building::build_ball;
use a2tilde::building::sectors::ShapeMap;
use a2tilde::measure::{is_probability, refinement_check, rn_check, visual_table};

fn main() -> a2tilde::Result<()> {
    let b = build_ball(2, 3)?;
    let o = b.origin();
    let sm = ShapeMap::new(&b, o);
    let t = visual_table(&b, &sm, Shape::new(1, 1))?;
    println!("{} cells of mass {}, total one: {}", t.masses.len(), t.masses.values().next().unwrap(), is_probability(&t));
    for d in [T1, T2] {
        let r = refinement_check(&b, &sm, Shape::new(2, 2), d)?;
        println!("refine (2,2) by {d}: {} children per cell, consistent {}", r.expected_children, r.consistent);
    }
    let y = b.neighbors(o)[0];
    let rn = rn_check(&b, o, y, Shape::new(3, 3))?;
    println!("shared cells {}, ratio q^(-2ℓ(h)) on {}, q^(2ℓ(h)) on {}, by ℓ(h): {:?}", rn.shared, rn.matches, rn.matches_positive_exponent, rn.by_length);
    Ok(())
}
