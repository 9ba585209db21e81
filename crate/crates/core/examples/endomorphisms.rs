//! Composing, inverting and classifying endomorphisms.

use zmfn::text::{parse_element, parse_endo};

fn main() -> zmfn::Result<()> {
    let e = parse_endo(
        "endo m=1 n=2
         x1 -> [0] x1 x2
         x2 -> [2] x2
         t1 -> [1] 1",
    )?;
    let f = parse_endo(
        "endo m=1 n=2
         x1 -> [1] x1
         x2 -> [0] x2
         t1 -> [1] 1",
    )?;
    let g = parse_element("[1] x1 X2", None, 2)?;
    println!("g e = {}", e.apply(&g));
    println!("e then f:\n{}", e.compose(&f));
    println!("e^3:\n{}", e.power(3));
    println!("flags of e: {:?}", e.flags());

    let inv = e.invert().expect("e is an automorphism");
    println!("inverse:\n{inv}");
    let (a, b, c) = e.auto_decompose()?;
    assert_eq!(a.compose(&b).compose(&c), e);
    println!("e = (id, I, P Q^-1) (id, Q, 0) (phi, I, 0)");

    let collapse = parse_endo(
        "endo m=1 n=2
         x1 -> [0] x1 x2
         x2 -> [1] x1 x2
         t1 -> [0] X2 X1",
    )?;
    println!("type II: {}, flags {:?}", !collapse.is_type_one(), collapse.flags());
    Ok(())
}
