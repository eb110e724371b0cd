//! Presentations from difference sets, in JSON and GAP form, and torsion of s0^d s1^e.

use a2tilde::group::abelianization;
use a2tilde::presentation::{essert_presentation, gamma0, torsion_classify, EssertData};

fn main() -> a2tilde::Result<()> {
    let g0 = gamma0();
    let p = essert_presentation(&g0);
    print!("{}", p.to_gap());
    println!("{}", p.to_json());
    println!("abelianization {}", abelianization(&p));

    let g2 = EssertData::from_images(7, &[0, 1, 3], &[0, 1, 3], &[0, 1, 3])?;
    let p2 = essert_presentation(&g2);
    println!("identity permutations: abelianization {}", abelianization(&p2));

    for e in 0..7 {
        let v = torsion_classify(&g0, 1, e)?;
        println!("{}: {} ({})", v.word, if v.finite { "finite" } else { "infinite" }, v.justification);
    }
    Ok(())
}
