//! Fixed subgroups of endomorphisms of both types.

use zmfn::endo::Endo;
use zmfn::fixed::{fix_type1, fix_type2, FixResult};
use zmfn::free::Word;
use zmfn::text::parse_endo;

fn main() -> zmfn::Result<()> {
    // x1 -> t x1: the fixed elements are t^a w with zero x1-exponent sum
    let shear = parse_endo("endo m=1 n=2\nx1 -> [1] x1\nx2 -> [0] x2\nt1 -> [1] 1")?;
    let Endo::TypeI { phi, .. } = &shear else { unreachable!() };
    // Fix phi is supplied by the caller; phi is the identity here
    let basis: Vec<Word> = (1..=2).map(|i| Word::generator(2, i)).collect();
    assert!(phi.is_identity());
    report(fix_type1(&shear, &basis)?);

    // x2 -> 1: Fix phi = <x1>
    let proj = parse_endo("endo m=1 n=2\nx1 -> [0] x1\nx2 -> [0] 1\nt1 -> [0] 1")?;
    report(fix_type1(&proj, &[Word::generator(2, 1)])?);

    let collapse = parse_endo("endo m=1 n=2\nx1 -> [0] x1 x2\nx2 -> [0] x1 x2\nt1 -> [1] x1 x2")?;
    println!("type II fixed subgroup:\n{}", fix_type2(&collapse)?);
    Ok(())
}

fn report(r: FixResult) {
    match r {
        FixResult::FinitelyGenerated { basis, cert } => {
            println!("finitely generated ({:?}):\n{basis}", cert.condition)
        }
        FixResult::NotFinitelyGenerated { cert } => {
            println!("not finitely generated: rank N = {} < rank Im P' = {}", cert.n.rank(), cert.im_p.rank())
        }
    }
}
