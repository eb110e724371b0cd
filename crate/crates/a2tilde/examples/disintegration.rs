//! Plus/minus tables and the cell-wise disintegration identity.

use a2tilde::apartment::Shape;
use a2tilde::building::build_ball;
use a2tilde::building::sectors::ShapeMap;
use a2tilde::measure::{disintegration_check, measure_constants, plus_minus_tables};

fn main() -> a2tilde::Result<()> {
    let b = build_ball(2, 3)?;
    let o = b.origin();
    let sm = ShapeMap::new(&b, o);
    let c = measure_constants(&b, &sm)?;
    println!("{}", serde_json::to_string(&c).unwrap());
    for s in [Shape::new(1, 1), Shape::new(2, 1), Shape::new(1, 2), Shape::new(2, 2)] {
        let pm = plus_minus_tables(&b, &sm, s)?;
        let d = disintegration_check(&b, o, s, Some(c.clone()))?;
        println!(
            "{s}: plus mass {:?}, minus mass {:?}, identity on {}/{} cells",
            pm.plus_mass.map(|m| m.to_string()),
            pm.minus_mass.map(|m| m.to_string()),
            d.identity_holds,
            d.cells
        );
    }
    Ok(())
}
