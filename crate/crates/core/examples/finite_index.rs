//! Finite index and coset representatives.

use zmfn::group::subgroup_basis;
use zmfn::index::finite_index;
use zmfn::text::parse_subgroup;

fn main() -> zmfn::Result<()> {
    let cases = [
        // <s, t^2, a, b^2, bab>: index 4
        "group m=2 n=2\n[1,0] 1\n[0,2] 1\n[0,0] x1\n[0,0] x2^2\n[0,0] x2 x1 x2",
        // <s, t^2, a, tb>: index 2
        "group m=2 n=2\n[1,0] 1\n[0,2] 1\n[0,0] x1\n[0,1] x2",
        // free part of infinite index
        "group m=1 n=2\n[1] 1\n[0] x1",
    ];
    for src in cases {
        let f = parse_subgroup(src)?;
        let h = subgroup_basis(f.m, f.n, &f.gens)?;
        match finite_index(&h) {
            Some(cert) => {
                let reps: Vec<String> = cert.reps.iter().map(ToString::to_string).collect();
                println!("index {} from {} candidates: {}", cert.index, cert.candidate_count(), reps.join(", "));
            }
            None => println!("infinite index"),
        }
    }
    Ok(())
}
