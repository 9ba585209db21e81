//! The Whitehead problem: is there a morphism of a given kind sending g to g'?

use zmfn::free::Word;
use zmfn::text::parse_element;
use zmfn::whitehead::{whitehead_minimize, whp_auto_free};
use zmfn::whp::{whp_auto, whp_endo, whp_mono, BoundedSearch, WhpAnswer};

fn main() -> zmfn::Result<()> {
    let u = Word::from_letters(2, [1, 1, 2]);
    let (min, _) = whitehead_minimize(&u);
    println!("{u} minimizes to {min}");
    if let Some(phi) = whp_auto_free(&u, &Word::from_letters(2, [1, 2, 2, 2])) {
        println!("automorphism of F2: {:?}", phi.images().iter().map(ToString::to_string).collect::<Vec<_>>());
    }

    let pairs = [("[2] x1 x2 x2", "[2] x1"), ("[2] x1", "[3] x1"), ("[3] x1 x2", "[6] x1 x1 x2"), ("[1] x1 X2", "[2] x1 x2 x1 x2")];
    for (a, b) in pairs {
        let g = parse_element(a, Some(1), 2)?;
        let g2 = parse_element(b, Some(1), 2)?;
        let reports = [
            ("auto", whp_auto(&g, &g2)?),
            ("mono", whp_mono(&g, &g2, &BoundedSearch::mono())?),
            ("endo", whp_endo(&g, &g2, &BoundedSearch::endo())?),
        ];
        for (kind, r) in reports {
            let verdict = match &r.answer {
                WhpAnswer::Yes(e) => {
                    assert_eq!(e.apply(&g), g2);
                    "yes".to_string()
                }
                WhpAnswer::No => "no".into(),
                WhpAnswer::Unknown(why) => format!("unknown ({why})"),
            };
            println!("{g} -> {g2} by {kind}: {verdict}");
        }
    }
    Ok(())
}
