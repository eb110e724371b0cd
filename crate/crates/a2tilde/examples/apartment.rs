//! The model apartment: shapes, the Weyl group and dominance.

use a2tilde::apartment::{dominance_order, type_shift, weyl_apply, Shape, TranslationVec, WeylElt};

fn main() {
    let lam = Shape::new(2, 1);
    for w in WeylElt::ALL {
        println!("{:>4} {lam} = {}", w.name(), weyl_apply(w, lam.vec()));
    }
    println!("flip {lam} = {}, type shift {}", lam.flip(), type_shift(lam.vec()));
    println!("{:?}", dominance_order(Shape::new(1, 1), Shape::new(3, 0)));
    println!("length of {} is {}", TranslationVec::new(2, -3), TranslationVec::new(2, -3).length());
}
