//! β on pairs of cells opposite through x, and the m-mass of F'_x.

use a2tilde::apartment::Shape;
use a2tilde::building::build_ball;
use a2tilde::measure::{beta_cocycle_check, m_mass_of_fx};

fn main() -> a2tilde::Result<()> {
    let b = build_ball(2, 3)?;
    let o = b.origin();
    for (s, stride) in [(Shape::new(2, 2), 1), (Shape::new(3, 3), 499)] {
        let m = m_mass_of_fx(&b, o, s, stride)?;
        println!("{s}: {} pairs, μ⊗μ mass {}, weighted mass {}, β = 0 on {}/{}", m.pairs, m.product, m.weighted, m.beta_zero, m.beta_evaluated);
    }
    let c = beta_cocycle_check(&b, o, b.neighbors(o)[0], Shape::new(3, 3), 499)?;
    println!("moving the basepoint: h_C + h_C' on {}/{}, h_C - h_C' on {}", c.plus_form, c.sampled, c.minus_form);
    Ok(())
}
