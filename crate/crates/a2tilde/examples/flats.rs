//! Flat balls through a vertex and a sector germ.

use a2tilde::apartment::TranslationVec;
use a2tilde::building::build_ball;
use a2tilde::building::flats::flats_through;
use a2tilde::building::lattice;
use a2tilde::building::sectors::SectorGerm;

fn main() -> a2tilde::Result<()> {
    let b = build_ball(2, 2)?;
    let o = b.origin();
    for depth in [1, 2] {
        let germ = SectorGerm::new(b.ring, *b.vertex(o), lattice::identity(), depth);
        let flats = flats_through(&b, o, &germ, 2)?;
        let tips: std::collections::BTreeSet<_> = flats.iter().map(|f| f.at(TranslationVec::new(1, 1))).collect();
        println!("germ depth {depth}: {} flat balls of radius 2, {} vertices at position (1,1)", flats.len(), tips.len());
    }
    Ok(())
}
