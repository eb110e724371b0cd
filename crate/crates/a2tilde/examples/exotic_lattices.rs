//! Morphisms from Γ0 and exotic lattices of order 2^e.

use a2tilde::presentation::{exotic_construct, gamma0, lattice_morphism};

fn main() -> a2tilde::Result<()> {
    let own = lattice_morphism(&gamma0(), &gamma0())?;
    println!("Γ0 -> Γ0: valid {}, witness {}", own.valid, own.witness.word);
    for q in [2, 4, 8, 16, 32] {
        match exotic_construct(q) {
            Ok(b) => {
                println!("q={q}: n={}, scale {}, certificate valid {}", b.data.n, b.certificate.scale, b.certificate.valid);
                for line in &b.rationale {
                    println!("  [{}] {}", line.kind, line.statement);
                }
            }
            Err(e) => println!("q={q}: {e}"),
        }
    }
    Ok(())
}
