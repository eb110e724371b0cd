//! Sector germs and horofunctions `h_C(x, y)`.

use a2tilde::building::build_ball;
use a2tilde::building::sectors::{horofunction, SectorGerm};

fn main() -> a2tilde::Result<()> {
    let b = build_ball(2, 2)?;
    let r = b.ring;
    let o = *b.vertex(b.origin());
    let far = b.vertices.iter().find(|v| b.vector_distance(b.origin(), b.id(v).unwrap()).length() == 4).unwrap();
    let germ = SectorGerm::through(r, &o, far, 6)?;
    for &y in b.neighbors(b.origin()).iter().take(6) {
        let h = horofunction(r, &o, b.vertex(y), &germ)?;
        println!("h_C(o, {y}) = {h}");
    }
    let back = horofunction(r, &o, &germ.vertices[1], &germ)?;
    println!("h_C(o, z1) = {back}");
    Ok(())
}
