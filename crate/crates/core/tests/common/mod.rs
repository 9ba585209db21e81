//! Golden-file cases shared by the CLI tests.

#![allow(dead_code)]

use std::path::{Path, PathBuf};

pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub code: i32,
}

/// Worked examples whose output is pinned exactly.
pub const WORKED: &[&str] = &["index_h", "index_h_prime", "intersect_nonhowson"];

pub const CASES: &[Case] = &[
    Case { name: "index_h", args: &["index", "@index_h.txt"], code: 0 },
    Case { name: "index_h_prime", args: &["index", "@index_h_prime.txt"], code: 0 },
    Case { name: "intersect_nonhowson", args: &["intersect", "@nonhowson_h.txt", "@nonhowson_h2.txt"], code: 1 },
    Case { name: "intersect_a6", args: &["intersect", "@a6_h.txt", "@a6_h2.txt"], code: 0 },
    Case { name: "intersect_free", args: &["intersect", "@free_h.txt", "@free_h2.txt"], code: 0 },
    Case { name: "index_infinite", args: &["index", "@free_h.txt"], code: 1 },
    Case { name: "index_four", args: &["index", "@finite_index.txt"], code: 0 },
    Case { name: "basis_mixed", args: &["basis", "@mixed.txt"], code: 0 },
    Case { name: "member_yes", args: &["member", "@mixed.txt", "[1,3] x1 x2"], code: 0 },
    Case { name: "member_generator", args: &["member", "@free_h.txt", "[0] x2"], code: 0 },
    Case { name: "member_no", args: &["member", "@free_h.txt", "[0] x1 x2 x1"], code: 1 },
    Case { name: "coset_meet", args: &["coset-intersect", "@a6_h.txt", "[0] 1", "@a6_h2.txt", "[1] 1"], code: 0 },
    Case { name: "coset_empty", args: &["coset-intersect", "@nonhowson_h.txt", "[1] 1", "@nonhowson_h.txt", "[0] 1"], code: 1 },
    Case { name: "quasiconvex_no", args: &["quasiconvex", "@nonhowson_h2.txt"], code: 1 },
    Case { name: "quasiconvex_yes", args: &["quasiconvex", "@free_h.txt"], code: 0 },
    Case { name: "endo_apply", args: &["endo-apply", "@nielsen.txt", "[2] x1 x2 X1"], code: 0 },
    Case { name: "endo_compose", args: &["endo-compose", "@shear.txt", "@swap.txt"], code: 0 },
    Case { name: "endo_power", args: &["endo-compose", "@shear.txt", "--power", "3"], code: 0 },
    Case { name: "endo_invert", args: &["endo-invert", "@nielsen.txt"], code: 0 },
    Case { name: "endo_invert_no", args: &["endo-invert", "@projection.txt"], code: 1 },
    Case { name: "endo_flags", args: &["endo-flags", "@type2.txt"], code: 0 },
    Case { name: "fix_type2", args: &["fix", "@type2.txt"], code: 0 },
    Case { name: "fix_shear", args: &["fix", "@shear.txt", "--fix-free-basis", "@fix_free.txt"], code: 1 },
    Case { name: "fix_projection", args: &["fix", "@projection.txt", "--fix-free-basis", "@fix_x1.txt"], code: 0 },
    Case { name: "whitehead_auto", args: &["whitehead", "--mode", "auto", "-n", "2", "[2] x1 x2 x2", "[2] x1"], code: 0 },
    Case { name: "whitehead_auto_no", args: &["whitehead", "--mode", "auto", "-n", "2", "[2] x1", "[2] x1 x1"], code: 1 },
    Case { name: "whitehead_mono", args: &["whitehead", "--mode", "mono", "-n", "2", "[3] x1 x2", "[6] x1 x1 x2"], code: 0 },
    Case { name: "whitehead_endo", args: &["whitehead", "--mode", "endo", "-n", "2", "[1] x1 X2", "[2] x1 x2 x1 x2"], code: 0 },
    Case {
        name: "whitehead_unknown",
        args: &["whitehead", "--mode", "mono", "-n", "2", "--search-len", "1", "[0] x1 x2 X1 X2", "[0] x1 x1 x2 x2 X1 X1 X2 X2"],
        code: 3,
    },
    Case { name: "iso", args: &["iso", "2", "1", "3", "0"], code: 0 },
    Case { name: "conjugate", args: &["conjugate", "-n", "2", "[1] x1 x2 X1", "[1] x2"], code: 0 },
    Case { name: "normal_form", args: &["normal-form", "-n", "2", "[1,-2] x1 X1 x2 x2"], code: 0 },
    Case { name: "mul", args: &["mul", "-n", "2", "[1] x1", "[2] X1 x2"], code: 0 },
];

pub fn data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data")
}

pub fn golden_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.out"))
}

/// Arguments with `@file` expanded to a path under the data directory.
pub fn expand(case: &Case, verify: bool) -> Vec<String> {
    let mut out = vec!["zmfn".to_string()];
    if verify {
        out.push("--verify".into());
    }
    for a in case.args {
        match a.strip_prefix('@') {
            Some(f) => out.push(data_dir().join(f).display().to_string()),
            None => out.push(a.to_string()),
        }
    }
    out
}

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run(case: &Case, verify: bool) -> Run {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = zmfn::cli::run(expand(case, verify), &mut out, &mut err);
    Run { code, stdout: String::from_utf8(out).unwrap(), stderr: String::from_utf8(err).unwrap() }
}

pub fn find(name: &str) -> &'static Case {
    CASES.iter().find(|c| c.name == name).expect("known case")
}
