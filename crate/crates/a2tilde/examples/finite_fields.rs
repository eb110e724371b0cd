//! Arithmetic in GF(q), integer Smith forms and elementary divisors over F_q[[t]].

use a2tilde::algebra::{dvr_elementary_divisors, smith_normal_form, DVRMatrix, FieldSpec, IntMatrix, Laurent};

fn main() -> a2tilde::Result<()> {
    let f = FieldSpec::of_order(9)?;
    let g = f.generator();
    println!("GF(9): generator {g}, g^8 = {}, inverse of g = {}", f.pow(g, 8), f.inv(g));

    let m = IntMatrix::from_rows(&[vec![2i64, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
    let snf = smith_normal_form(&m);
    println!("invariant factors: {:?}", snf.invariants());
    assert_eq!(snf.left.mul(&m).mul(&snf.right), snf.diag);

    let f2 = FieldSpec::of_order(2)?;
    let t = |e| Laurent::monomial(1, e);
    let z = Laurent::zero;
    let a = DVRMatrix::new([[t(2), t(0), z()], [z(), t(1), z()], [z(), z(), t(0)]], 8);
    println!("elementary divisors of a 3x3 matrix over F_2[[t]]: {:?}", dvr_elementary_divisors(&a, &f2)?);
    Ok(())
}
