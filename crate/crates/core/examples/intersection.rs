//! Subgroup and coset intersections, and quasi-convexity.

use zmfn::group::{subgroup_basis, GSubgroupBasis};
use zmfn::intersect::{coset_intersection, is_quasiconvex, subgroup_intersection, Intersection};
use zmfn::text::{parse_element, parse_subgroup};

fn sub(src: &str) -> zmfn::Result<GSubgroupBasis> {
    let f = parse_subgroup(src)?;
    subgroup_basis(f.m, f.n, &f.gens)
}

fn main() -> zmfn::Result<()> {
    // <x1, x2> and <t x1, x2> meet in the kernel of the x1-exponent sum
    let h = sub("group m=1 n=2\n[0] x1\n[0] x2")?;
    let h2 = sub("group m=1 n=2\n[1] x1\n[0] x2")?;
    match subgroup_intersection(&h, &h2)? {
        Intersection::FinitelyGenerated { basis, .. } => println!("finitely generated:\n{basis}"),
        Intersection::NotFinitelyGenerated { cert } => {
            println!("not finitely generated; PA - P'A' = {}", cert.difference(&h, &h2))
        }
    }

    let a = sub("group m=1 n=1\n[2] 1\n[1] x1^2")?;
    let b = sub("group m=1 n=1\n[2] 1\n[2] x1^3")?;
    if let Intersection::FinitelyGenerated { basis, .. } = subgroup_intersection(&a, &b)? {
        println!("intersection:\n{basis}");
    }

    let g = parse_element("[0] 1", Some(1), 1)?;
    let g2 = parse_element("[1] 1", Some(1), 1)?;
    match coset_intersection(&g, &a, &g2, &b)? {
        Some((w, _)) => println!("cosets meet at {w}"),
        None => println!("cosets are disjoint"),
    }

    for h in [&h, &h2, &a] {
        println!("quasi-convex: {}", is_quasiconvex(h)?);
    }
    Ok(())
}
