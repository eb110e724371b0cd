//! Coset enumeration, Reidemeister-Schreier and the perfectness test.

use a2tilde::group::coset::generator_commutators;
use a2tilde::group::{abelian_kernel_table, abelianization, perfect_check, reidemeister_schreier, todd_coxeter, SubgroupSpec, Transversal};
use a2tilde::presentation::{essert_presentation, gamma0};

fn main() -> a2tilde::Result<()> {
    let p = essert_presentation(&gamma0());
    let kernel = abelian_kernel_table(&p)?;
    let sub = reidemeister_schreier(&p, &kernel, Transversal::BreadthFirst)?;
    println!("derived subgroup: index {}, {} generators, {} relators", kernel.cosets, sub.presentation.rank(), sub.raw_relators);
    println!("its abelianization: {}", abelianization(&sub.presentation));

    let mut gens = generator_commutators(&p);
    gens.extend(sub.generator_words.iter().cloned());
    let t = todd_coxeter(&p, &gens, 1_000_000)?;
    println!("HLT from commutators and Schreier generators: {} cosets ({} defined), consistent {}", t.cosets, t.defined, t.is_consistent(&p));

    let rep = perfect_check(&p, &SubgroupSpec::Derived, 1_000_000)?;
    println!("perfect: {}", rep.perfect);
    Ok(())
}
