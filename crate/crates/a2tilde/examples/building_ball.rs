//! A ball in the building of SL3(F_2((t))): sizes, links, panels and spheres.

use a2tilde::apartment::Shape;
use a2tilde::building::build_ball;
use a2tilde::building::sectors::{sphere, ShapeMap};

fn main() -> a2tilde::Result<()> {
    let b = build_ball(2, 2)?;
    let o = b.origin();
    println!("{} vertices, {} chambers, {} neighbors of o", b.len(), b.chambers.len(), b.neighbors(o).len());
    let (links, panels) = b.regularity_defects();
    println!("bad links {}, bad panels {panels}, connected {}", links.len(), b.is_connected());
    let sm = ShapeMap::new(&b, o);
    for s in ["1,0", "0,1", "1,1", "2,1", "2,2"] {
        let s: Shape = s.parse().unwrap();
        println!("|V_{s}(o)| = {}", sphere(&b, &sm, s)?.len());
    }
    let y = b.neighbors(o)[0];
    println!("shape(o, y) = {}, shape(y, o) = {}", b.vector_distance(o, y), b.vector_distance(y, o));
    Ok(())
}
