//! Power laws for sphere sizes and for the sets Y_w and Z_±.

use a2tilde::apartment::Shape;
use a2tilde::building::build_ball;
use a2tilde::building::counts::{sphere_constancy, y_laws, z_laws};

fn main() -> a2tilde::Result<()> {
    let b = build_ball(2, 3)?;
    let o = b.origin();
    let n = sphere_constancy(&b, &[o, b.neighbors(o)[0]])?;
    println!("N_λ / q^(2ℓ) = {} over {} spheres: {}", n.k, n.rows.len(), n.pass);
    let shapes = [Shape::new(1, 1), Shape::new(2, 1), Shape::new(1, 2), Shape::new(2, 2)];
    let y = y_laws(b.ring, &shapes);
    for row in &y.rows {
        println!("Y at {}: {:?}", row.shape, row.counts);
    }
    println!("Y constants {:?}, pass {}", y.constants, y.pass);
    let z = z_laws(&b, o, &shapes)?;
    println!("K+ = {}, K- = {}, pass {}", z.k_plus, z.k_minus, z.pass);
    Ok(())
}
