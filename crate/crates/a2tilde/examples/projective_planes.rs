//! Desarguesian planes PG(2, q), their axiom reports and a DOT rendering.

use a2tilde::plane::{check_axioms, pg2_of_order};

fn main() -> a2tilde::Result<()> {
    for q in [2, 3, 4, 5, 7, 8, 9] {
        let p = pg2_of_order(q)?;
        let rep = check_axioms(&p);
        println!("PG(2,{q}): {} points, {} lines, axioms pass = {}", p.num_points, p.num_lines(), rep.pass);
    }
    let fano = pg2_of_order(2)?;
    println!("{}", fano.to_dot());
    Ok(())
}
