//! Bases and membership in a subgroup of Z^2 x F_2.

use zmfn::group::subgroup_basis;
use zmfn::text::{parse_element, parse_subgroup};

fn main() -> zmfn::Result<()> {
    let file = parse_subgroup(
        "group m=2 n=2
         [1,0] x1 x2
         [0,3] 1
         [2,3] x1 x2 x1 x2
         [0,0] x2^3",
    )?;
    let h = subgroup_basis(file.m, file.n, &file.gens)?;
    println!("basis:\n{h}");

    for src in ["[1,3] x1 x2", "[0,1] 1", "[5,-3] x2^3 x1 x2"] {
        let g = parse_element(src, Some(2), 2)?;
        match h.membership(&g) {
            // x_i in the expression stands for the i-th generator
            Some(m) => println!("{g} = {} over the generators", m.over_gens),
            None => println!("{g} is not in H"),
        }
    }

    // abelian completion: the vectors a with t^a w in H
    let w = parse_element("[0,0] x1 x2", Some(2), 2)?.word;
    println!("completion of {w}: {}", h.abelian_completion(&w));
    Ok(())
}
