//! The group `G = ℤᵐ × Fₙ`: normal forms, subgroup bases, membership and
//! abelian completions.
//!
//! An element is written `t^a w` with `a ∈ ℤᵐ` and `w` a reduced word; the
//! `t` part is central, so multiplication adds vectors and multiplies words.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::free::{conjugator, nielsen_reduce, GroupOps, StallingsGraph, Word};
use crate::free::invert_automorphism;
use crate::lattice::{
    fmt_vec, solve_linear, vec_add, vec_neg, vec_sub, zero_vec, AffineCoset, IVec, IntMat,
    Lattice,
};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GElem {
    pub avec: IVec,
    pub word: Word,
}

impl GElem {
    pub fn new(avec: IVec, word: Word) -> Self {
        GElem { avec, word }
    }

    pub fn identity(m: usize, n: usize) -> Self {
        GElem { avec: zero_vec(m), word: Word::identity(n) }
    }

    /// The central element `t^a`.
    pub fn central(avec: IVec, n: usize) -> Self {
        GElem { avec, word: Word::identity(n) }
    }

    /// The free generator `x_i`, 1-based.
    pub fn x(m: usize, n: usize, i: usize) -> Self {
        GElem { avec: zero_vec(m), word: Word::generator(n, i) }
    }

    /// The central generator `t_j`, 1-based.
    pub fn t(m: usize, n: usize, j: usize) -> Self {
        GElem { avec: crate::lattice::unit_vec(m, j - 1), word: Word::identity(n) }
    }

    pub fn m(&self) -> usize {
        self.avec.len()
    }

    pub fn n(&self) -> usize {
        self.word.rank()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_identity() && self.avec.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &GElem) -> GElem {
        GElem { avec: vec_add(&self.avec, &other.avec), word: self.word.mul(&other.word) }
    }

    pub fn inverse(&self) -> GElem {
        GElem { avec: vec_neg(&self.avec), word: self.word.inverse() }
    }

    pub fn pow(&self, k: i64) -> GElem {
        let kb = BigInt::from(k);
        GElem { avec: self.avec.iter().map(|x| x * &kb).collect(), word: self.word.pow(k) }
    }

    /// Checked product for inputs that may come from different groups.
    pub fn try_mul(&self, other: &GElem) -> Result<GElem> {
        if self.m() != other.m() || self.n() != other.n() {
            return Err(Error::Dimension(format!(
                "({}, {}) vs ({}, {})",
                self.m(),
                self.n(),
                other.m(),
                other.n()
            )));
        }
        Ok(self.mul(other))
    }
}

impl GroupOps for GElem {
    fn op(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn inv(&self) -> Self {
        self.inverse()
    }
}

impl fmt::Display for GElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.avec.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}] {}", parts.join(","), self.word)
    }
}

/// Result of a successful membership test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Membership {
    /// Word over the basis symbols: lattice vectors first, then free pairs.
    pub over_basis: Word,
    /// Word over the original generators.
    pub over_gens: Word,
}

/// A basis `{t^b₁,…,t^b_{m'}, t^{a₁}u₁,…,t^{a_{n'}}u_{n'}}` of a subgroup
/// `H ≤ G`, where the `b`s are the HNF basis of `L = H ∩ ℤᵐ` and the `u`s are a
/// Nielsen basis of the projection `Hπ`.
#[derive(Clone, Debug)]
pub struct GSubgroupBasis {
    m: usize,
    n: usize,
    gens: Vec<GElem>,
    lattice: Lattice,
    pairs: Vec<(IVec, Word)>,
    amat: IntMat,
    graph: StallingsGraph,
    graph_to_u: Vec<Word>,
    new_in_old: Vec<Word>,
    old_in_new: Vec<Word>,
}

impl PartialEq for GSubgroupBasis {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m
            && self.n == other.n
            && self.lattice == other.lattice
            && self.pairs == other.pairs
    }
}

fn check_dims(m: usize, n: usize, gens: &[GElem]) -> Result<()> {
    for g in gens {
        if g.m() != m || g.n() != n {
            return Err(Error::Dimension(format!(
                "element {g} does not live in Z^{m} x F_{n}"
            )));
        }
    }
    Ok(())
}

/// Product of powers `∏ y_k^{c_k}` over letters `offset+1, offset+2, …`.
fn monomial(rank: usize, offset: usize, coeffs: &[BigInt]) -> Word {
    let mut w = Word::identity(rank);
    for (k, c) in coeffs.iter().enumerate() {
        w = w.mul(&Word::generator(rank, offset + k + 1).pow_big(c));
    }
    w
}

pub fn subgroup_basis(m: usize, n: usize, gens: &[GElem]) -> Result<GSubgroupBasis> {
    check_dims(m, n, gens)?;
    let p = gens.len();
    let one = GElem::identity(m, n);
    let words: Vec<Word> = gens.iter().map(|g| g.word.clone()).collect();
    let nr = nielsen_reduce(&words);
    let k = nr.basis.len();

    // t^{a_j} u_j from the forward expressions
    let raw_pairs: Vec<GElem> = nr.forward.iter().map(|eta| eta.evaluate(gens, &one)).collect();
    debug_assert!(raw_pairs.iter().zip(&nr.basis).all(|(g, u)| &g.word == u));

    // h_i (h_i π α)⁻¹ = t^{d_i}
    let pair_one = GElem::identity(m, n);
    let d: Vec<IVec> = gens
        .iter()
        .zip(&nr.backward)
        .map(|(h, nu)| {
            let back = if k == 0 { pair_one.clone() } else { nu.evaluate(&raw_pairs, &pair_one) };
            vec_sub(&h.avec, &back.avec)
        })
        .collect();
    let lattice = Lattice::from_generators(m, &d);
    let dmat = IntMat::from_rows(m, d.clone());

    // words over the p generators evaluating to t^{d_i}
    let central_words: Vec<Word> = (0..p)
        .map(|i| {
            let nu_eta = if k == 0 {
                Word::identity(p)
            } else {
                nr.backward[i].substitute_into(&nr.forward, p)
            };
            Word::generator(p, i + 1).mul(&nu_eta.inverse())
        })
        .collect();
    let express_central = |v: &[BigInt]| -> Word {
        let sol = solve_linear(&dmat, v);
        let lambda = sol.offset().expect("vector lies in L");
        let mut w = Word::identity(p);
        for (cw, l) in central_words.iter().zip(lambda) {
            w = w.mul(&cw.pow_big(l));
        }
        w
    };

    let pairs: Vec<(IVec, Word)> = raw_pairs
        .iter()
        .map(|g| (lattice.reduce(&g.avec), g.word.clone()))
        .collect();
    let amat = IntMat::from_rows(m, pairs.iter().map(|(a, _)| a.clone()).collect());

    let mut new_in_old: Vec<Word> = lattice.basis_vecs().iter().map(|b| express_central(b)).collect();
    for (j, (a, _)) in pairs.iter().enumerate() {
        let shift = vec_sub(a, &raw_pairs[j].avec);
        new_in_old.push(express_central(&shift).mul(&nr.forward[j]));
    }

    let mp = lattice.rank();
    let total = mp + k;
    let pair_elems: Vec<GElem> = pairs.iter().map(|(a, u)| GElem::new(a.clone(), u.clone())).collect();
    let old_in_new: Vec<Word> = gens
        .iter()
        .zip(&nr.backward)
        .map(|(h, nu)| {
            let back = if k == 0 { pair_one.clone() } else { nu.evaluate(&pair_elems, &pair_one) };
            let mu = lattice.coords(&vec_sub(&h.avec, &back.avec)).expect("difference lies in L");
            let shifted = Word::from_letters(
                total,
                nu.letters().iter().map(|&l| if l > 0 { l + mp as i32 } else { l - mp as i32 }),
            );
            monomial(total, 0, &mu).mul(&shifted)
        })
        .collect();

    let graph = StallingsGraph::from_generators(n, &nr.basis);
    let readings: Vec<Word> = nr
        .basis
        .iter()
        .map(|u| graph.express(u).expect("basis word lies in its own subgroup"))
        .collect();
    let graph_to_u = invert_automorphism(k, &readings).expect("Nielsen basis is a free basis");

    Ok(GSubgroupBasis {
        m,
        n,
        gens: gens.to_vec(),
        lattice,
        pairs,
        amat,
        graph,
        graph_to_u,
        new_in_old,
        old_in_new,
    })
}

impl GSubgroupBasis {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `L = H ∩ ℤᵐ`.
    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn pairs(&self) -> &[(IVec, Word)] {
        &self.pairs
    }

    /// The matrix `A` whose rows are the `a_j`.
    pub fn a_matrix(&self) -> &IntMat {
        &self.amat
    }

    /// `n'`, the rank of `Hπ`.
    pub fn free_rank(&self) -> usize {
        self.pairs.len()
    }

    pub fn free_basis(&self) -> Vec<Word> {
        self.pairs.iter().map(|(_, u)| u.clone()).collect()
    }

    pub fn generators(&self) -> &[GElem] {
        &self.gens
    }

    /// Stallings graph of `Hπ`.
    pub fn graph(&self) -> &StallingsGraph {
        &self.graph
    }

    /// Basis elements: `t^{b_k}` for the lattice, then `t^{a_j}u_j`.
    pub fn basis_elements(&self) -> Vec<GElem> {
        let mut out: Vec<GElem> =
            self.lattice.basis_vecs().into_iter().map(|b| GElem::central(b, self.n)).collect();
        out.extend(self.pair_elements());
        out
    }

    pub fn pair_elements(&self) -> Vec<GElem> {
        self.pairs.iter().map(|(a, u)| GElem::new(a.clone(), u.clone())).collect()
    }

    /// Each basis element as a word over the original generators.
    pub fn new_in_old(&self) -> &[Word] {
        &self.new_in_old
    }

    /// Each original generator as a word over the basis symbols.
    pub fn old_in_new(&self) -> &[Word] {
        &self.old_in_new
    }

    /// Display convention: a lone free generator is listed with
    /// the abelian part, since `|B| = 1` is not allowed there.
    pub fn display_components(&self) -> (Vec<GElem>, Vec<GElem>) {
        let mut a: Vec<GElem> =
            self.lattice.basis_vecs().into_iter().map(|b| GElem::central(b, self.n)).collect();
        let pairs = self.pair_elements();
        if pairs.len() == 1 {
            a.extend(pairs);
            (a, Vec::new())
        } else {
            (a, pairs)
        }
    }

    /// Expression of `w ∈ Hπ` over `u₁..u_{n'}`.
    pub fn express_free(&self, w: &Word) -> Option<Word> {
        let e = self.graph.express(w)?;
        Some(e.substitute_into(&self.graph_to_u, self.free_rank()))
    }

    /// The set of `a` with `t^a w ∈ H`.
    pub fn abelian_completion(&self, w: &Word) -> AffineCoset {
        match self.express_free(w) {
            None => AffineCoset::Empty,
            Some(omega) => {
                let c = self.amat.vec_mul(&omega.abelianize());
                AffineCoset::new(c, self.lattice.clone())
            }
        }
    }

    pub fn membership(&self, g: &GElem) -> Option<Membership> {
        if g.m() != self.m || g.n() != self.n {
            return None;
        }
        let omega = self.express_free(&g.word)?;
        let one = GElem::identity(self.m, self.n);
        let c = if omega.rank() == 0 {
            one
        } else {
            omega.evaluate(&self.pair_elements(), &one)
        };
        let mu = self.lattice.coords(&vec_sub(&g.avec, &c.avec))?;
        let mp = self.lattice.rank();
        let total = mp + self.free_rank();
        let shifted = Word::from_letters(
            total,
            omega.letters().iter().map(|&l| if l > 0 { l + mp as i32 } else { l - mp as i32 }),
        );
        let over_basis = monomial(total, 0, &mu).mul(&shifted);
        let over_gens = over_basis.substitute_into(&self.new_in_old, self.gens.len());
        Some(Membership { over_basis, over_gens })
    }

    pub fn contains(&self, g: &GElem) -> bool {
        self.membership(g).is_some()
    }

    /// Evaluates a word over the basis symbols.
    pub fn eval_basis_word(&self, w: &Word) -> GElem {
        w.evaluate(&self.basis_elements(), &GElem::identity(self.m, self.n))
    }

    pub fn eval_gens_word(&self, w: &Word) -> GElem {
        w.evaluate(&self.gens, &GElem::identity(self.m, self.n))
    }
}

impl fmt::Display for GSubgroupBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "lattice: {}", self.lattice)?;
        for (a, u) in &self.pairs {
            writeln!(f, "pair: {} {}", fmt_vec(a), u)?;
        }
        Ok(())
    }
}

/// A conjugator `x` (with zero vector part) such that `x⁻¹·g·x = g2`.
pub fn is_conjugate(g: &GElem, g2: &GElem) -> Option<GElem> {
    if g.avec != g2.avec || g.n() != g2.n() {
        return None;
    }
    let x = conjugator(&g.word, &g2.word)?;
    Some(GElem::new(zero_vec(g.m()), x))
}

/// Whether `ℤᵐ × Fₙ ≅ ℤ^{m2} × F_{n2}`.
pub fn iso_params(m: usize, n: usize, m2: usize, n2: usize) -> bool {
    let norm = |m: usize, n: usize| if n == 1 { (m + 1, 0) } else { (m, n) };
    norm(m, n) == norm(m2, n2)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::lattice::ivec;

    pub fn el(avec: &[i64], letters: &[i32], n: usize) -> GElem {
        GElem::new(ivec(avec), Word::from_letters(n, letters.iter().copied()))
    }

    /// s = t1, t = t2, a = x1, b = x2 in ℤ²×F₂.
    pub fn example_h() -> Vec<GElem> {
        vec![
            el(&[1, 0], &[], 2),
            el(&[0, 2], &[], 2),
            el(&[0, 0], &[1], 2),
            el(&[0, 0], &[2, 2], 2),
            el(&[0, 0], &[2, 1, 2], 2),
        ]
    }

    pub fn example_h_prime() -> Vec<GElem> {
        vec![el(&[1, 0], &[], 2), el(&[0, 2], &[], 2), el(&[0, 0], &[1], 2), el(&[0, 1], &[2], 2)]
    }

    #[test]
    fn elements() {
        let g = el(&[1, 2], &[1, -2], 2);
        assert!(g.mul(&g.inverse()).is_identity());
        assert_eq!(el(&[1], &[1], 1).mul(&el(&[2], &[-1], 1)), el(&[3], &[], 1));
        let t = el(&[1], &[], 2);
        let x = el(&[0], &[1], 2);
        assert_eq!(t.mul(&x), x.mul(&t));
        assert_eq!(g.to_string(), "[1,2] x1 X2");
    }

    #[test]
    fn basis_example() {
        let mut gens = example_h_prime();
        gens.insert(3, el(&[0, 0], &[2, 2], 2));
        gens.insert(4, el(&[0, 0], &[2, 1, 2], 2));
        let h = subgroup_basis(2, 2, &gens).unwrap();
        let expected = vec![
            el(&[1, 0], &[], 2),
            el(&[0, 2], &[], 2),
            el(&[0, 0], &[1], 2),
            el(&[0, 1], &[2], 2),
        ];
        assert_eq!(h.basis_elements(), expected);
        check_change_of_basis(&h);
    }

    #[test]
    fn free_only_and_abelian_extraction() {
        let h = subgroup_basis(1, 2, &[el(&[0], &[1], 2), el(&[0], &[2], 2)]).unwrap();
        assert!(h.lattice().is_zero());
        assert_eq!(h.pairs(), &[(ivec(&[0]), Word::generator(2, 1)), (ivec(&[0]), Word::generator(2, 2))]);
        let h = subgroup_basis(1, 1, &[el(&[2], &[], 1), el(&[1], &[1, 1], 1)]).unwrap();
        assert_eq!(h.lattice(), &Lattice::from_generators(1, &[ivec(&[2])]));
        assert_eq!(h.pairs(), &[(ivec(&[1]), Word::from_letters(1, [1, 1]))]);
    }

    fn check_change_of_basis(h: &GSubgroupBasis) {
        for (i, w) in h.new_in_old().iter().enumerate() {
            assert_eq!(h.eval_gens_word(w), h.basis_elements()[i]);
        }
        for (i, w) in h.old_in_new().iter().enumerate() {
            assert_eq!(h.eval_basis_word(w), h.generators()[i]);
        }
    }

    #[test]
    fn completions() {
        let h = subgroup_basis(2, 2, &example_h_prime()).unwrap();
        let b = Word::generator(2, 2);
        let l = Lattice::from_generators(2, &[ivec(&[1, 0]), ivec(&[0, 2])]);
        assert_eq!(h.abelian_completion(&b), AffineCoset::new(ivec(&[0, 1]), l));
        let k = subgroup_basis(1, 2, &[el(&[0], &[1], 2), el(&[2], &[], 2)]).unwrap();
        assert!(k.abelian_completion(&Word::generator(2, 2)).is_empty());
        assert_eq!(
            k.abelian_completion(&Word::identity(2)),
            AffineCoset::new(ivec(&[0]), Lattice::from_generators(1, &[ivec(&[2])]))
        );
    }

    #[test]
    fn membership_examples() {
        let h = subgroup_basis(2, 2, &example_h_prime()).unwrap();
        for g in h.basis_elements() {
            let mem = h.membership(&g).unwrap();
            assert_eq!(h.eval_basis_word(&mem.over_basis), g);
            assert_eq!(h.eval_gens_word(&mem.over_gens), g);
        }
        assert!(h.membership(&el(&[0, 0], &[2], 2)).is_none());
        assert!(h.membership(&el(&[0, 1], &[2], 2)).is_some());
    }

    #[test]
    fn conjugacy_and_iso() {
        let g = el(&[1], &[2], 2);
        assert!(is_conjugate(&g, &g).is_some());
        let g2 = el(&[1], &[1, 2, -1], 2);
        let x = is_conjugate(&g, &g2).unwrap();
        assert_eq!(x, el(&[0], &[-1], 2));
        assert_eq!(x.inverse().mul(&g).mul(&x), g2);
        assert!(is_conjugate(&g, &el(&[2], &[2], 2)).is_none());
        assert!(iso_params(3, 1, 4, 0));
        assert!(iso_params(2, 3, 2, 3));
        assert!(!iso_params(2, 3, 3, 2));
    }

    #[test]
    fn basis_is_stable() {
        let h = subgroup_basis(2, 2, &example_h()).unwrap();
        let again = subgroup_basis(2, 2, &h.basis_elements()).unwrap();
        assert_eq!(h, again);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn gelem(m: usize, n: usize) -> impl Strategy<Value = GElem> {
            let r = n as i32;
            (
                proptest::collection::vec(-3i64..=3, m),
                proptest::collection::vec((1..=r.max(1), any::<bool>()), 0..=if n == 0 { 0 } else { 4 }),
            )
                .prop_map(move |(a, ls)| {
                    let word = Word::from_letters(n, ls.into_iter().map(|(g, s)| if s { g } else { -g }));
                    GElem::new(ivec(&a), word)
                })
        }

        fn setup() -> impl Strategy<Value = (usize, usize, Vec<GElem>)> {
            (1usize..=3, 0usize..=3).prop_flat_map(|(m, n)| {
                (Just(m), Just(n), proptest::collection::vec(gelem(m, n), 0..=5))
            })
        }

        proptest! {
            #[test]
            fn products_are_members((m, n, gens) in setup(), picks in proptest::collection::vec((0usize..5, any::<bool>()), 0..=3)) {
                let h = subgroup_basis(m, n, &gens).unwrap();
                check_change_of_basis(&h);
                let mut g = GElem::identity(m, n);
                if !gens.is_empty() {
                    for (i, s) in picks {
                        let x = &gens[i % gens.len()];
                        g = g.mul(&if s { x.clone() } else { x.inverse() });
                    }
                }
                let mem = h.membership(&g);
                prop_assert!(mem.is_some());
                let mem = mem.unwrap();
                prop_assert_eq!(h.eval_basis_word(&mem.over_basis), g.clone());
                prop_assert_eq!(h.eval_gens_word(&mem.over_gens), g);
            }

            #[test]
            fn description_is_sound((m, n, gens) in setup(), omega in proptest::collection::vec((0usize..5, any::<bool>()), 0..=3), shift in proptest::collection::vec(-2i64..=2, 3), off in proptest::collection::vec(-2i64..=2, 3)) {
                let h = subgroup_basis(m, n, &gens).unwrap();
                let k = h.free_rank();
                let w = if k == 0 { Word::identity(0) } else {
                    Word::from_letters(k, omega.iter().map(|&(i, s)| { let l = (i % k) as i32 + 1; if s { l } else { -l } }))
                };
                let u = if k == 0 { Word::identity(n) } else { w.substitute(&h.free_basis()) };
                let base = h.a_matrix().vec_mul(&w.abelianize());
                let lat_shift: IVec = h.lattice().basis_vecs().iter().zip(&shift).fold(zero_vec(m), |acc, (b, c)| {
                    vec_add(&acc, &crate::lattice::vec_scale(b, &BigInt::from(*c)))
                });
                let inside = GElem::new(vec_add(&base, &lat_shift), u.clone());
                prop_assert!(h.contains(&inside));
                let off = ivec(&off[..m]);
                let probe = GElem::new(vec_add(&inside.avec, &off), u);
                prop_assert_eq!(h.contains(&probe), h.lattice().contains(&off));
                let comp = h.abelian_completion(&inside.word);
                prop_assert!(comp.contains(&inside.avec));
            }

            #[test]
            fn basis_of_basis_is_stable((m, n, gens) in setup()) {
                let h = subgroup_basis(m, n, &gens).unwrap();
                let again = subgroup_basis(m, n, &h.basis_elements()).unwrap();
                prop_assert_eq!(h, again);
            }
        }
    }
}
