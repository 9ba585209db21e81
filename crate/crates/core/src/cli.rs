//! Command-line front end. Exit codes: 0 yes, 1 no, 2 input error,
//! 3 unknown, 4 a `--verify` replay failed.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::endo::Endo;
use crate::error::Error;
use crate::fixed::{fix_bruteforce, fix_type1, fix_type2, validate_fix_basis, FixResult};
use crate::free::{words_up_to, Word};
use crate::group::{is_conjugate, iso_params, subgroup_basis, GElem, GSubgroupBasis};
use crate::index::finite_index;
use crate::intersect::{coset_intersection, is_quasiconvex, subgroup_intersection, Intersection};
use crate::lattice::{lattice_preimage, Lattice};
use crate::text::{format_subgroup, parse_element, parse_endo, parse_subgroup, parse_words};
use crate::whp::{whp_auto, whp_endo, whp_mono, BoundedSearch, Capability, WhpAnswer};

#[derive(Parser, Debug)]
#[command(name = "zmfn", version, about = "Exact algorithms for the groups Z^m x F_n")]
struct Cli {
    /// Replay soundness checks on every certificate before printing it.
    #[arg(long, global = true)]
    verify: bool,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args, Debug)]
struct Dims {
    /// Rank of the free-abelian factor; inferred from the first element if omitted.
    #[arg(short, long)]
    m: Option<usize>,
    /// Rank of the free factor.
    #[arg(short, long)]
    n: usize,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Auto,
    Mono,
    Endo,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the normal form of an element.
    NormalForm {
        #[command(flatten)]
        dims: Dims,
        elem: String,
    },
    /// Multiply elements left to right.
    Mul {
        #[command(flatten)]
        dims: Dims,
        #[arg(required = true)]
        elems: Vec<String>,
    },
    /// Decide membership and express the element over the generators.
    Member { subgroup: PathBuf, elem: String },
    /// Compute a basis of a subgroup.
    Basis { subgroup: PathBuf },
    /// Decide finite index and list coset representatives.
    Index { subgroup: PathBuf },
    /// Intersect two subgroups.
    Intersect { first: PathBuf, second: PathBuf },
    /// Decide whether g·H and g'·H' meet.
    CosetIntersect { first: PathBuf, g: String, second: PathBuf, g2: String },
    /// Decide quasi-convexity of a subgroup.
    Quasiconvex { subgroup: PathBuf },
    /// Apply a morphism to an element.
    EndoApply { endo: PathBuf, elem: String },
    /// Compose morphisms left to right, optionally raising the result to a power.
    EndoCompose {
        #[arg(required = true)]
        endos: Vec<PathBuf>,
        #[arg(long)]
        power: Option<u32>,
    },
    /// Invert an automorphism.
    EndoInvert { endo: PathBuf },
    /// Report whether a morphism is injective, surjective, bijective.
    EndoFlags { endo: PathBuf },
    /// Compute the fixed subgroup of a morphism.
    Fix {
        endo: PathBuf,
        /// Free basis of the fixed subgroup of the free part, one word per line.
        #[arg(long)]
        fix_free_basis: Option<PathBuf>,
    },
    /// Decide whether some morphism of the given kind maps g to g'.
    Whitehead {
        #[arg(long, value_enum)]
        mode: Mode,
        #[command(flatten)]
        dims: Dims,
        g: String,
        g2: String,
        /// Image length for the bounded free-part search.
        #[arg(long, default_value_t = 2)]
        search_len: usize,
    },
    /// Decide whether Z^m x F_n and Z^m2 x F_n2 are isomorphic.
    Iso { m: usize, n: usize, m2: usize, n2: usize },
    /// Decide conjugacy and print a conjugator x with x^-1 g x = g'.
    Conjugate {
        #[command(flatten)]
        dims: Dims,
        g: String,
        g2: String,
    },
}

enum Failure {
    Input(String),
    Verify(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = std::result::Result<i32, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn check(ok: bool, what: impl FnOnce() -> String) -> Result<(), Failure> {
    if ok {
        Ok(())
    } else {
        Err(Failure::Verify(what()))
    }
}

/// Parses inline elements sharing one `(m, n)`.
fn elements(dims: &Dims, srcs: &[&str]) -> Result<Vec<GElem>, Failure> {
    let mut m = dims.m;
    let mut out = Vec::new();
    for s in srcs {
        let g = parse_element(s, m, dims.n)?;
        m = Some(g.m());
        out.push(g);
    }
    Ok(out)
}

struct Loaded {
    gens: Vec<GElem>,
    basis: GSubgroupBasis,
}

fn subgroup(path: &Path) -> Result<Loaded, Failure> {
    let f = parse_subgroup(&read(path)?)?;
    let basis = subgroup_basis(f.m, f.n, &f.gens)?;
    Ok(Loaded { gens: f.gens, basis })
}

fn same_dims(h: &GSubgroupBasis, g: &GElem) -> Result<(), Failure> {
    if h.m() != g.m() || h.n() != g.n() {
        return Err(Failure::Input(format!("element {g} is not in Z^{} x F{}", h.m(), h.n())));
    }
    Ok(())
}

/// A word over named symbols, e.g. `h1 H2`.
fn over(w: &Word, sym: char) -> String {
    if w.is_identity() {
        return "1".into();
    }
    let up = sym.to_ascii_uppercase();
    w.letters()
        .iter()
        .map(|&l| if l > 0 { format!("{sym}{l}") } else { format!("{up}{}", -l) })
        .collect::<Vec<_>>()
        .join(" ")
}

fn group_generators(m: usize, n: usize) -> Vec<GElem> {
    let mut gs: Vec<GElem> = (1..=m).map(|j| GElem::t(m, n, j)).collect();
    gs.extend((1..=n).map(|i| GElem::x(m, n, i)));
    let invs: Vec<GElem> = gs.iter().map(GElem::inverse).collect();
    gs.extend(invs);
    gs
}

/// `g` evaluated through the generator images of `e`.
fn via_images(e: &Endo, g: &GElem) -> GElem {
    let (xs, ts) = e.images();
    let one = GElem::identity(e.m(), e.n());
    let mut acc = one.clone();
    for (t, a) in ts.iter().zip(&g.avec) {
        acc = acc.mul(&t.pow(i64::try_from(a).expect("small exponent")));
    }
    acc.mul(&g.word.evaluate(&xs, &one))
}

fn run_cmd(cmd: &Command, verify: bool, out: &mut String) -> Outcome {
    match cmd {
        Command::NormalForm { dims, elem } => {
            let g = &elements(dims, &[elem])?[0];
            writeln!(out, "{g}").ok();
            Ok(0)
        }
        Command::Mul { dims, elems } => {
            let srcs: Vec<&str> = elems.iter().map(String::as_str).collect();
            let gs = elements(dims, &srcs)?;
            let prod = gs.iter().skip(1).fold(gs[0].clone(), |acc, g| acc.mul(g));
            writeln!(out, "{prod}").ok();
            Ok(0)
        }
        Command::Member { subgroup: path, elem } => {
            let h = subgroup(path)?;
            let g = parse_element(elem, Some(h.basis.m()), h.basis.n())?;
            match h.basis.membership(&g) {
                Some(mem) => {
                    if verify {
                        let back = h.basis.eval_gens_word(&mem.over_gens);
                        check(back == g, || format!("expression evaluates to {back}, not {g}"))?;
                    }
                    writeln!(out, "member").ok();
                    writeln!(out, "over generators: {}", over(&mem.over_gens, 'h')).ok();
                    writeln!(out, "over basis: {}", over(&mem.over_basis, 'b')).ok();
                    Ok(0)
                }
                None => {
                    writeln!(out, "not a member").ok();
                    Ok(1)
                }
            }
        }
        Command::Basis { subgroup: path } => {
            let h = subgroup(path)?;
            let b = &h.basis;
            let elems = b.basis_elements();
            if verify {
                for (e, w) in elems.iter().zip(b.new_in_old()) {
                    check(b.eval_gens_word(w) == *e, || format!("basis element {e} is not the claimed product"))?;
                }
                for (g, w) in h.gens.iter().zip(b.old_in_new()) {
                    check(b.eval_basis_word(w) == *g, || format!("generator {g} is not recovered from the basis"))?;
                }
            }
            out.push_str(&format_subgroup(b.m(), b.n(), &elems));
            Ok(0)
        }
        Command::Index { subgroup: path } => {
            let h = subgroup(path)?;
            let b = &h.basis;
            let Some(cert) = finite_index(b) else {
                writeln!(out, "index: infinite").ok();
                return Ok(1);
            };
            if verify {
                let one = GElem::identity(b.m(), b.n());
                check(cert.coset_of(b, &one).is_some(), || "identity coset missing".into())?;
                for (i, r) in cert.reps.iter().enumerate() {
                    for r2 in &cert.reps[i + 1..] {
                        check(!b.contains(&r.inverse().mul(r2)), || format!("{r} and {r2} share a coset"))?;
                    }
                    for s in group_generators(b.m(), b.n()) {
                        let sr = s.mul(r);
                        check(cert.coset_of(b, &sr).is_some(), || format!("{sr} lies in no listed coset"))?;
                    }
                }
            }
            writeln!(out, "index: {}", cert.index).ok();
            for r in &cert.reps {
                writeln!(out, "{r}").ok();
            }
            Ok(0)
        }
        Command::Intersect { first, second } => {
            let (h, h2) = (subgroup(first)?.basis, subgroup(second)?.basis);
            if h.m() != h2.m() || h.n() != h2.n() {
                return Err(Failure::Input("subgroups live in different groups".into()));
            }
            let res = subgroup_intersection(&h, &h2)?;
            let cert = res.cert();
            if verify {
                for v in &cert.vbasis {
                    check(h.graph().contains(v) && h2.graph().contains(v), || format!("{v} is not in both projections"))?;
                }
            }
            match &res {
                Intersection::FinitelyGenerated { basis, .. } => {
                    let elems = basis.basis_elements();
                    if verify {
                        for e in &elems {
                            check(h.contains(e) && h2.contains(e), || format!("{e} is not in both subgroups"))?;
                        }
                    }
                    writeln!(out, "finitely generated").ok();
                    out.push_str(&format_subgroup(basis.m(), basis.n(), &elems));
                    Ok(0)
                }
                Intersection::NotFinitelyGenerated { .. } => {
                    let mlat = cert.m.direction().expect("0 lies in M");
                    let n3 = cert.vbasis.len();
                    if verify {
                        check(n3 >= 2 && mlat.rank() < n3, || "rank condition does not certify".into())?;
                    }
                    writeln!(out, "not finitely generated").ok();
                    let vs: Vec<String> = cert.vbasis.iter().map(Word::to_string).collect();
                    writeln!(out, "pullback basis: {}", vs.join(", ")).ok();
                    writeln!(out, "PA - P'A': {}", cert.difference(&h, &h2)).ok();
                    writeln!(out, "M: {mlat} (rank {} < {n3})", mlat.rank()).ok();
                    Ok(1)
                }
            }
        }
        Command::CosetIntersect { first, g, second, g2 } => {
            let (h, h2) = (subgroup(first)?.basis, subgroup(second)?.basis);
            let g = parse_element(g, Some(h.m()), h.n())?;
            let g2 = parse_element(g2, Some(h2.m()), h2.n())?;
            same_dims(&h, &g2)?;
            match coset_intersection(&g, &h, &g2, &h2)? {
                Some((w, _)) => {
                    if verify {
                        let ok = h.contains(&g.inverse().mul(&w)) && h2.contains(&g2.inverse().mul(&w));
                        check(ok, || format!("{w} is not in both cosets"))?;
                    }
                    writeln!(out, "{w}").ok();
                    Ok(0)
                }
                None => {
                    writeln!(out, "empty").ok();
                    Ok(1)
                }
            }
        }
        Command::Quasiconvex { subgroup: path } => {
            let b = subgroup(path)?.basis;
            let qc = is_quasiconvex(&b)?;
            if verify {
                let cyclic = b.lattice().rank() + b.free_rank() <= 1;
                let htau = b.lattice().sum(&Lattice::from_matrix(b.a_matrix()));
                let pre = lattice_preimage(b.a_matrix(), b.lattice());
                let dual = cyclic || (htau.rank() == b.lattice().rank() && pre.rank() == b.free_rank());
                check(dual == qc, || "lattice criterion disagrees".into())?;
            }
            writeln!(out, "{}", if qc { "quasi-convex" } else { "not quasi-convex" }).ok();
            Ok(if qc { 0 } else { 1 })
        }
        Command::EndoApply { endo, elem } => {
            let e = parse_endo(&read(endo)?)?;
            let g = parse_element(elem, Some(e.m()), e.n())?;
            let img = e.apply(&g);
            if verify {
                let alt = via_images(&e, &g);
                check(alt == img, || format!("generator images give {alt}"))?;
            }
            writeln!(out, "{img}").ok();
            Ok(0)
        }
        Command::EndoCompose { endos, power } => {
            let es: Vec<Endo> = endos.iter().map(|p| Ok(parse_endo(&read(p)?)?)).collect::<Result<_, Failure>>()?;
            if es.iter().any(|e| e.m() != es[0].m() || e.n() != es[0].n()) {
                return Err(Failure::Input("morphisms live in different groups".into()));
            }
            let comp = es.iter().skip(1).fold(es[0].clone(), |acc, e| acc.compose(e));
            let k = power.unwrap_or(1);
            let res = comp.power(k);
            if verify {
                for g in group_generators(comp.m(), comp.n()) {
                    let mut seq = g.clone();
                    for _ in 0..k {
                        seq = es.iter().fold(seq, |x, e| e.apply(&x));
                    }
                    check(res.apply(&g) == seq, || format!("composite disagrees on {g}"))?;
                }
            }
            write!(out, "{res}").ok();
            Ok(0)
        }
        Command::EndoInvert { endo } => {
            let e = parse_endo(&read(endo)?)?;
            match e.invert() {
                Some(inv) => {
                    if verify {
                        for g in group_generators(e.m(), e.n()) {
                            let ok = inv.apply(&e.apply(&g)) == g && e.apply(&inv.apply(&g)) == g;
                            check(ok, || format!("inverse fails on {g}"))?;
                        }
                    }
                    write!(out, "{inv}").ok();
                    Ok(0)
                }
                None => {
                    writeln!(out, "not an automorphism").ok();
                    Ok(1)
                }
            }
        }
        Command::EndoFlags { endo } => {
            let e = parse_endo(&read(endo)?)?;
            let f = e.flags();
            if verify {
                check(f.auto == e.invert().is_some(), || "auto flag disagrees with inversion".into())?;
                if f.mono {
                    let mut seen = std::collections::HashSet::new();
                    for w in words_up_to(e.n(), 3) {
                        let g = GElem::new(vec![0.into(); e.m()], w);
                        check(seen.insert(e.apply(&g)), || format!("two elements collide, one of them {g}"))?;
                    }
                }
            }
            writeln!(out, "mono: {}", f.mono).ok();
            writeln!(out, "epi: {}", f.epi).ok();
            writeln!(out, "auto: {}", f.auto).ok();
            Ok(0)
        }
        Command::Fix { endo, fix_free_basis } => {
            let e = parse_endo(&read(endo)?)?;
            let res = match &e {
                Endo::TypeII { .. } => {
                    let b = fix_type2(&e)?;
                    FixOut::Basis(b, None)
                }
                Endo::TypeI { phi, .. } => {
                    let Some(path) = fix_free_basis else {
                        return Err(Failure::Input("a type I morphism needs --fix-free-basis".into()));
                    };
                    let fb = parse_words(&read(path)?, e.n())?;
                    if !validate_fix_basis(phi, &fb) {
                        return Err(Failure::Input("a word of the supplied basis is not fixed".into()));
                    }
                    match fix_type1(&e, &fb)? {
                        FixResult::FinitelyGenerated { basis, cert } => {
                            FixOut::Basis(basis, Some(format!("{:?}", cert.condition.expect("fg"))))
                        }
                        FixResult::NotFinitelyGenerated { cert } => {
                            if verify {
                                check(cert.n.rank() < cert.im_p.rank() && fb.len() >= 2, || {
                                    "rank condition does not certify".into()
                                })?;
                            }
                            writeln!(out, "not finitely generated").ok();
                            writeln!(out, "N: {}", cert.n).ok();
                            writeln!(out, "Im P': {}", cert.im_p).ok();
                            return Ok(1);
                        }
                    }
                }
            };
            let FixOut::Basis(b, cond) = res;
            let elems = b.basis_elements();
            if verify {
                for g in &elems {
                    check(e.apply(g) == *g, || format!("{g} is not fixed"))?;
                }
                if e.m() <= 2 {
                    for g in fix_bruteforce(&e, 3, 2) {
                        check(b.contains(&g), || format!("fixed element {g} is missing"))?;
                    }
                }
            }
            writeln!(out, "finitely generated").ok();
            if let Some(c) = cond {
                writeln!(out, "condition: {c}").ok();
            }
            out.push_str(&format_subgroup(b.m(), b.n(), &elems));
            Ok(0)
        }
        Command::Whitehead { mode, dims, g, g2, search_len } => {
            let gs = elements(dims, &[g, g2])?;
            let (g, g2) = (&gs[0], &gs[1]);
            let report = match mode {
                Mode::Auto => whp_auto(g, g2)?,
                Mode::Mono => {
                    whp_mono(g, g2, &BoundedSearch { capability: Capability::Mono, max_len: *search_len, budget: 200_000 })?
                }
                Mode::Endo => {
                    whp_endo(g, g2, &BoundedSearch { capability: Capability::Endo, max_len: *search_len, budget: 200_000 })?
                }
            };
            let c = &report.cert;
            let cert = format!("alpha: {}  mu: {}  rho: {}  d: {}", c.alpha, c.mu, c.rho, c.d);
            match &report.answer {
                WhpAnswer::Yes(e) => {
                    if verify {
                        let f = e.flags();
                        let kind_ok = match mode {
                            Mode::Auto => f.auto,
                            Mode::Mono => f.mono,
                            Mode::Endo => true,
                        };
                        check(e.apply(g) == *g2 && kind_ok, || "witness fails".into())?;
                    }
                    writeln!(out, "yes").ok();
                    writeln!(out, "{cert}").ok();
                    write!(out, "{e}").ok();
                    Ok(0)
                }
                WhpAnswer::No => {
                    writeln!(out, "no").ok();
                    writeln!(out, "{cert}").ok();
                    Ok(1)
                }
                WhpAnswer::Unknown(why) => {
                    writeln!(out, "unknown: {why} abstained").ok();
                    writeln!(out, "{cert}").ok();
                    Ok(3)
                }
            }
        }
        Command::Iso { m, n, m2, n2 } => {
            let iso = iso_params(*m, *n, *m2, *n2);
            writeln!(out, "{}", if iso { "isomorphic" } else { "not isomorphic" }).ok();
            Ok(if iso { 0 } else { 1 })
        }
        Command::Conjugate { dims, g, g2 } => {
            let gs = elements(dims, &[g, g2])?;
            match is_conjugate(&gs[0], &gs[1]) {
                Some(x) => {
                    if verify {
                        check(x.inverse().mul(&gs[0]).mul(&x) == gs[1], || "conjugator fails".into())?;
                    }
                    writeln!(out, "conjugate").ok();
                    writeln!(out, "{x}").ok();
                    Ok(0)
                }
                None => {
                    writeln!(out, "not conjugate").ok();
                    Ok(1)
                }
            }
        }
    }
}

enum FixOut {
    Basis(GSubgroupBasis, Option<String>),
}

/// Runs the tool on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    let mut buf = String::new();
    match run_cmd(&cli.cmd, cli.verify, &mut buf) {
        Ok(code) => {
            let _ = out.write_all(buf.as_bytes());
            if cli.verify {
                let _ = writeln!(err, "verify: ok");
            }
            code
        }
        Err(Failure::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Verify(msg)) => {
            let _ = writeln!(err, "verify failed: {msg}");
            4
        }
    }
}
