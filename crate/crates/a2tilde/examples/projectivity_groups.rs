//! Projectivity groups of pencils and their transitivity.

use a2tilde::plane::{pg2_of_order, projectivity_group, transitivity_report, Vertex};

fn main() -> a2tilde::Result<()> {
    for q in [2, 3, 4] {
        let plane = pg2_of_order(q)?;
        for v in [Vertex::Point(0), Vertex::Line(0)] {
            let g = projectivity_group(&plane, v)?;
            let rep = transitivity_report(&g);
            println!(
                "q={q} {v}: degree {}, order {}, {}-transitive, sharply 3-transitive {}, Moufang {}",
                rep.degree, rep.order, rep.max_transitivity, rep.sharply_3_transitive, rep.moufang_set
            );
        }
    }
    Ok(())
}
