//! Endomorphisms of `ℤᵐ × Fₙ`.
//!
//! Every endomorphism has one of two shapes. Type I acts as
//! `t^a u ↦ t^{aQ + ûP} uφ` for a free endomorphism `φ`. Type II acts as
//! `t^a u ↦ t^{aQ + ûP} z^{a·l + û·h}` for a root word `z`. Here `û` is the
//! abelianization of `u` and maps act on the right.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::free::{invert_automorphism, nielsen_reduce, power_of, word_root, StallingsGraph, Word};
use crate::group::GElem;
use crate::lattice::{vec_add, vec_dot, vec_is_zero, vec_neg, IVec, IntMat};

/// An endomorphism of `Fₙ`, given by the images of the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeEndo {
    n: usize,
    images: Vec<Word>,
    abel: IntMat,
}

impl FreeEndo {
    pub fn new(n: usize, images: Vec<Word>) -> Result<Self> {
        if images.len() != n {
            return Err(Error::Dimension(format!("expected {n} images, got {}", images.len())));
        }
        if let Some(w) = images.iter().find(|w| w.rank() != n) {
            return Err(Error::Dimension(format!("image {w} is not a word in F{n}")));
        }
        let abel = IntMat::from_rows(n, images.iter().map(Word::abelianize).collect());
        Ok(FreeEndo { n, images, abel })
    }

    pub fn identity(n: usize) -> Self {
        Self::new(n, (1..=n).map(|i| Word::generator(n, i)).collect()).expect("well formed")
    }

    /// Right conjugation `x ↦ u⁻¹xu`.
    pub fn conjugation(u: &Word) -> Self {
        let n = u.rank();
        let ui = u.inverse();
        Self::new(n, (1..=n).map(|i| ui.mul(&Word::generator(n, i)).mul(u)).collect()).expect("well formed")
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    /// Row `i` is the abelianization of `xᵢφ`.
    pub fn abelianization(&self) -> &IntMat {
        &self.abel
    }

    pub fn apply(&self, w: &Word) -> Word {
        w.substitute_into(&self.images, self.n)
    }

    /// `self` followed by `other`.
    pub fn compose(&self, other: &FreeEndo) -> FreeEndo {
        Self::new(self.n, self.images.iter().map(|w| other.apply(w)).collect()).expect("same rank")
    }

    pub fn power(&self, k: u32) -> FreeEndo {
        (0..k).fold(Self::identity(self.n), |acc, _| acc.compose(self))
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    /// Injective iff the images freely generate a subgroup of rank `n`.
    pub fn is_mono(&self) -> bool {
        nielsen_reduce(&self.images).basis.len() == self.n
    }

    pub fn is_epi(&self) -> bool {
        let g = StallingsGraph::from_generators(self.n, &self.images);
        (1..=self.n).all(|i| g.contains(&Word::generator(self.n, i)))
    }

    pub fn invert(&self) -> Option<FreeEndo> {
        let inv = invert_automorphism(self.n, &self.images)?;
        Some(Self::new(self.n, inv).expect("same rank"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Flags {
    pub mono: bool,
    pub epi: bool,
    pub auto: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Endo {
    TypeI { phi: FreeEndo, q: IntMat, p: IntMat },
    TypeII { z: Word, l: IVec, h: IVec, q: IntMat, p: IntMat },
}

fn check_qp(m: usize, n: usize, q: &IntMat, p: &IntMat) -> Result<()> {
    if q.rows() != m || q.cols() != m || p.rows() != n || p.cols() != m {
        return Err(Error::Dimension(format!("Q must be {m}x{m} and P must be {n}x{m}")));
    }
    Ok(())
}

impl Endo {
    pub fn type_one(phi: FreeEndo, q: IntMat, p: IntMat) -> Result<Endo> {
        check_qp(q.rows(), phi.rank(), &q, &p)?;
        Ok(Endo::TypeI { phi, q, p })
    }

    /// Type II data, with `z` oriented so that the first nonzero entry of `l` is positive.
    pub fn type_two(z: Word, l: IVec, h: IVec, q: IntMat, p: IntMat) -> Result<Endo> {
        let (m, n) = (q.rows(), z.rank());
        check_qp(m, n, &q, &p)?;
        if l.len() != m || h.len() != n {
            return Err(Error::Dimension("l must have length m and h length n".into()));
        }
        match word_root(&z) {
            Some((_, 1)) => {}
            _ => return Err(Error::Invalid(format!("{z} is trivial or a proper power"))),
        }
        if vec_is_zero(&l) {
            return Err(Error::Invalid("l must be nonzero".into()));
        }
        if l.iter().find(|e| !e.is_zero()).is_some_and(|e| e.is_negative()) {
            return Ok(Endo::TypeII { z: z.inverse(), l: vec_neg(&l), h: vec_neg(&h), q, p });
        }
        Ok(Endo::TypeII { z, l, h, q, p })
    }

    pub fn identity(m: usize, n: usize) -> Endo {
        Endo::TypeI { phi: FreeEndo::identity(n), q: IntMat::identity(m), p: IntMat::zeros(n, m) }
    }

    /// Right conjugation by `g`, i.e. `h ↦ g⁻¹hg`.
    pub fn conjugation(g: &GElem) -> Endo {
        let (m, n) = (g.m(), g.n());
        Endo::TypeI { phi: FreeEndo::conjugation(&g.word), q: IntMat::identity(m), p: IntMat::zeros(n, m) }
    }

    /// Classifies the map given by the images of `x₁..xₙ` and `t₁..t_m`.
    pub fn from_images(m: usize, n: usize, xs: &[GElem], ts: &[GElem]) -> Result<Endo> {
        if xs.len() != n || ts.len() != m {
            return Err(Error::Dimension(format!("expected {n} x-images and {m} t-images")));
        }
        if let Some(g) = xs.iter().chain(ts).find(|g| g.m() != m || g.n() != n) {
            return Err(Error::Dimension(format!("image {g} is not in Z^{m} x F{n}")));
        }
        let q = IntMat::from_rows(m, ts.iter().map(|g| g.avec.clone()).collect());
        let p = IntMat::from_rows(m, xs.iter().map(|g| g.avec.clone()).collect());
        let Some(first) = ts.iter().find(|g| !g.word.is_identity()) else {
            let phi = FreeEndo::new(n, xs.iter().map(|g| g.word.clone()).collect())?;
            return Ok(Endo::TypeI { phi, q, p });
        };
        let (z, _) = word_root(&first.word).expect("nontrivial");
        let exps = |gs: &[GElem], z: &Word| -> Result<IVec> {
            gs.iter()
                .map(|g| {
                    power_of(&g.word, z).ok_or_else(|| {
                        Error::NotEndomorphism(format!("{} does not commute with {z}", g.word))
                    })
                })
                .collect()
        };
        let l = exps(ts, &z)?;
        let h = exps(xs, &z)?;
        Endo::type_two(z, l, h, q, p)
    }

    pub fn m(&self) -> usize {
        self.q().rows()
    }

    pub fn n(&self) -> usize {
        self.p().rows()
    }

    pub fn q(&self) -> &IntMat {
        match self {
            Endo::TypeI { q, .. } | Endo::TypeII { q, .. } => q,
        }
    }

    pub fn p(&self) -> &IntMat {
        match self {
            Endo::TypeI { p, .. } | Endo::TypeII { p, .. } => p,
        }
    }

    pub fn is_type_one(&self) -> bool {
        matches!(self, Endo::TypeI { .. })
    }

    pub fn apply(&self, g: &GElem) -> GElem {
        assert!(g.m() == self.m() && g.n() == self.n(), "element outside the domain");
        let u = g.word.abelianize();
        let avec = vec_add(&self.q().vec_mul(&g.avec), &self.p().vec_mul(&u));
        match self {
            Endo::TypeI { phi, .. } => GElem::new(avec, phi.apply(&g.word)),
            Endo::TypeII { z, l, h, .. } => {
                let e = vec_dot(&g.avec, l) + vec_dot(&u, h);
                GElem::new(avec, z.pow_big(&e))
            }
        }
    }

    /// Images of `x₁..xₙ` and of `t₁..t_m`.
    pub fn images(&self) -> (Vec<GElem>, Vec<GElem>) {
        let (m, n) = (self.m(), self.n());
        let xs = (1..=n).map(|i| self.apply(&GElem::x(m, n, i))).collect();
        let ts = (1..=m).map(|j| self.apply(&GElem::t(m, n, j))).collect();
        (xs, ts)
    }

    /// `self` followed by `other`.
    pub fn compose(&self, other: &Endo) -> Endo {
        assert!(self.m() == other.m() && self.n() == other.n(), "dimension mismatch");
        if let (Endo::TypeI { phi, q, p }, Endo::TypeI { phi: phi2, q: q2, p: p2 }) = (self, other) {
            return Endo::TypeI {
                phi: phi.compose(phi2),
                q: q.mul(q2),
                p: p.mul(q2).add(&phi.abelianization().mul(p2)),
            };
        }
        let (xs, ts) = self.images();
        let xs: Vec<GElem> = xs.iter().map(|g| other.apply(g)).collect();
        let ts: Vec<GElem> = ts.iter().map(|g| other.apply(g)).collect();
        Endo::from_images(self.m(), self.n(), &xs, &ts).expect("composite of endomorphisms")
    }

    /// The `k`-fold composite; Type I uses `P_k = Σ M^{i−1} P Q^{k−i}`.
    pub fn power(&self, k: u32) -> Endo {
        let (m, n) = (self.m(), self.n());
        match self {
            Endo::TypeI { phi, q, p } => {
                let mm = phi.abelianization();
                let mut pk = IntMat::zeros(n, m);
                for i in 1..=k {
                    pk = pk.add(&mm.pow(i - 1).mul(p).mul(&q.pow(k - i)));
                }
                Endo::TypeI { phi: phi.power(k), q: q.pow(k), p: pk }
            }
            Endo::TypeII { .. } => (0..k).fold(Endo::identity(m, n), |acc, _| acc.compose(self)),
        }
    }

    /// The action on `ℤ^{m+n}` when `n ≤ 1`, where the group is abelian.
    fn abelian_matrix(&self) -> IntMat {
        let (xs, ts) = self.images();
        let row = |g: &GElem| {
            let mut r = g.avec.clone();
            r.extend(g.word.abelianize());
            r
        };
        IntMat::from_rows(self.m() + self.n(), ts.iter().chain(&xs).map(row).collect())
    }

    pub(crate) fn from_abelian_matrix(m: usize, n: usize, e: &IntMat) -> Endo {
        let elem = |r: &[BigInt]| {
            let w = if n == 1 { Word::generator(1, 1).pow_big(&r[m]) } else { Word::identity(n) };
            GElem::new(r[..m].to_vec(), w)
        };
        let ts: Vec<GElem> = (0..m).map(|j| elem(e.row(j))).collect();
        let xs: Vec<GElem> = (m..m + n).map(|i| elem(e.row(i))).collect();
        Endo::from_images(m, n, &xs, &ts).expect("linear maps are endomorphisms")
    }

    pub fn flags(&self) -> Flags {
        if self.n() <= 1 {
            let d = self.abelian_matrix().det();
            let epi = d.abs().is_one();
            return Flags { mono: !d.is_zero(), epi, auto: epi };
        }
        match self {
            Endo::TypeII { .. } => Flags { mono: false, epi: false, auto: false },
            Endo::TypeI { phi, q, .. } => {
                let d = q.det();
                let mono = !d.is_zero() && phi.is_mono();
                let epi = d.abs().is_one() && phi.is_epi();
                Flags { mono, epi, auto: epi }
            }
        }
    }

    /// The inverse `Ψ_{φ⁻¹, Q⁻¹, −M⁻¹PQ⁻¹}`, present iff `self` is an automorphism.
    pub fn invert(&self) -> Option<Endo> {
        let (m, n) = (self.m(), self.n());
        if n <= 1 {
            let inv = self.abelian_matrix().inverse()?;
            return Some(Self::from_abelian_matrix(m, n, &inv));
        }
        let Endo::TypeI { phi, q, p } = self else { return None };
        let qi = q.inverse()?;
        let phii = phi.invert()?;
        let p2 = phii.abelianization().mul(p).mul(&qi).neg();
        Some(Endo::TypeI { phi: phii, q: qi, p: p2 })
    }

    /// Factors an automorphism as `Ψ_{1, I, PQ⁻¹} · Ψ_{1, Q, 0} · Ψ_{φ, I, 0}`.
    pub fn auto_decompose(&self) -> Result<(Endo, Endo, Endo)> {
        let not_auto = || Error::Invalid("not an automorphism".into());
        let Endo::TypeI { phi, q, p } = self else { return Err(not_auto()) };
        if !self.flags().auto {
            return Err(not_auto());
        }
        let (m, n) = (self.m(), self.n());
        let qi = q.inverse().ok_or_else(not_auto)?;
        let id = FreeEndo::identity(n);
        let a = Endo::TypeI { phi: id.clone(), q: IntMat::identity(m), p: p.mul(&qi) };
        let b = Endo::TypeI { phi: id, q: q.clone(), p: IntMat::zeros(n, m) };
        let c = Endo::TypeI { phi: phi.clone(), q: IntMat::identity(m), p: IntMat::zeros(n, m) };
        Ok((a, b, c))
    }
}

/// Morphism text format: a header and one line per generator image.
impl fmt::Display for Endo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (xs, ts) = self.images();
        writeln!(f, "endo m={} n={}", self.m(), self.n())?;
        for (i, g) in xs.iter().enumerate() {
            writeln!(f, "x{} -> {g}", i + 1)?;
        }
        for (j, g) in ts.iter().enumerate() {
            writeln!(f, "t{} -> {g}", j + 1)?;
        }
        Ok(())
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::free::words_up_to;
    use crate::group::tests::el;
    use crate::lattice::ivec;
    use proptest::prelude::*;

    fn w(n: usize, ls: &[i32]) -> Word {
        Word::from_letters(n, ls.iter().copied())
    }

    /// `x₁ ↦ t x₁`, `x₂ ↦ x₂`, `t ↦ t` in `ℤ × F₂`.
    pub(crate) fn shear() -> Endo {
        Endo::from_images(1, 2, &[el(&[1], &[1], 2), el(&[0], &[2], 2)], &[el(&[1], &[], 2)]).unwrap()
    }

    #[test]
    fn classification_examples() {
        let e = shear();
        assert_eq!(
            e,
            Endo::TypeI {
                phi: FreeEndo::identity(2),
                q: IntMat::from_i64(1, &[&[1]]),
                p: IntMat::from_i64(1, &[&[1], &[0]]),
            }
        );
        let triv = Endo::from_images(1, 2, &vec![el(&[0], &[], 2); 2], &[el(&[0], &[], 2)]).unwrap();
        assert!(matches!(&triv, Endo::TypeI { phi, q, p } if phi.images().iter().all(Word::is_identity) && q.is_zero() && p.is_zero()));
        let e2 = Endo::from_images(1, 2, &vec![el(&[0], &[], 2); 2], &[el(&[0], &[2], 2)]).unwrap();
        assert_eq!(
            e2,
            Endo::TypeII {
                z: w(2, &[2]),
                l: ivec(&[1]),
                h: ivec(&[0, 0]),
                q: IntMat::zeros(1, 1),
                p: IntMat::zeros(2, 1)
            }
        );
        assert_eq!(e2.apply(&el(&[1], &[1], 2)), el(&[0], &[2], 2));
        let bad = Endo::from_images(1, 2, &[el(&[0], &[1], 2), el(&[0], &[], 2)], &[el(&[0], &[2], 2)]);
        assert!(matches!(bad, Err(Error::NotEndomorphism(_))));
    }

    #[test]
    fn type_two_root_is_normalized() {
        let e = Endo::from_images(1, 2, &[el(&[0], &[-2, -2], 2), el(&[0], &[], 2)], &[el(&[0], &[-2, -2, -2], 2)])
            .unwrap();
        let Endo::TypeII { z, l, h, .. } = &e else { panic!("expected type II") };
        assert_eq!((z.clone(), l.clone(), h.clone()), (w(2, &[-2]), ivec(&[3]), ivec(&[2, 0])));
        assert!(Endo::type_two(w(2, &[1, 1]), ivec(&[1]), ivec(&[0, 0]), IntMat::zeros(1, 1), IntMat::zeros(2, 1)).is_err());
    }

    #[test]
    fn shear_action() {
        let e = shear();
        for g in [el(&[3], &[1, 2, -1, 1], 2), el(&[-1], &[2, 2], 2)] {
            let mut want = g.clone();
            want.avec[0] += g.word.abelianize()[0].clone();
            assert_eq!(e.apply(&g), want);
        }
        assert_eq!(Endo::identity(1, 2).apply(&el(&[2], &[1, -2], 2)), el(&[2], &[1, -2], 2));
    }

    #[test]
    fn powers_and_inverses_of_shears() {
        let e = shear();
        let Endo::TypeI { p, .. } = e.power(5) else { panic!() };
        assert_eq!(p, IntMat::from_i64(1, &[&[5], &[0]]));
        let inv = e.invert().unwrap();
        let Endo::TypeI { p, .. } = &inv else { panic!() };
        assert_eq!(*p, IntMat::from_i64(1, &[&[-1], &[0]]));
        assert_eq!(e.compose(&inv), Endo::identity(1, 2));
        assert_eq!(Endo::identity(2, 2).invert(), Some(Endo::identity(2, 2)));
    }

    #[test]
    fn flags_examples() {
        let e2 = Endo::from_images(1, 2, &vec![el(&[0], &[], 2); 2], &[el(&[0], &[2], 2)]).unwrap();
        assert_eq!(e2.flags(), Flags { mono: false, epi: false, auto: false });
        let q0 = Endo::type_one(FreeEndo::identity(2), IntMat::zeros(1, 1), IntMat::zeros(2, 1)).unwrap();
        assert!(!q0.flags().mono);
        assert!(q0.invert().is_none());
        let sq = FreeEndo::new(2, vec![w(2, &[1, 1]), w(2, &[2])]).unwrap();
        let e = Endo::type_one(sq, IntMat::identity(1), IntMat::zeros(2, 1)).unwrap();
        assert_eq!(e.flags(), Flags { mono: true, epi: false, auto: false });
        assert!(e.invert().is_none());
    }

    #[test]
    fn abelian_case_uses_the_full_matrix() {
        // t ↔ x in ℤ × ℤ is an automorphism of type II.
        let e = Endo::from_images(1, 1, &[el(&[1], &[], 1)], &[el(&[0], &[1], 1)]).unwrap();
        assert!(!e.is_type_one());
        assert!(e.flags().auto);
        let inv = e.invert().unwrap();
        for g in [el(&[2], &[1, 1, 1], 1), el(&[-1], &[-1], 1)] {
            assert_eq!(inv.apply(&e.apply(&g)), g);
        }
    }

    #[test]
    fn conjugation_endo() {
        let g = el(&[1], &[1], 2);
        let c = Endo::conjugation(&g);
        assert_eq!(c.apply(&el(&[0], &[2], 2)), el(&[0], &[-1, 2, 1], 2));
        assert_eq!(Endo::conjugation(&el(&[4], &[], 2)), Endo::identity(1, 2));
    }

    #[test]
    fn decomposition_recomposes() {
        let phi = FreeEndo::new(2, vec![w(2, &[1, 2]), w(2, &[2])]).unwrap();
        let e = Endo::type_one(phi, IntMat::from_i64(2, &[&[2, 1], &[1, 1]]), IntMat::from_i64(2, &[&[1, 0], &[3, -2]]))
            .unwrap();
        let (a, b, c) = e.auto_decompose().unwrap();
        assert_eq!(a.compose(&b).compose(&c), e);
        let (a, b, c) = Endo::identity(1, 2).auto_decompose().unwrap();
        assert!(a == b && b == c && c == Endo::identity(1, 2));
        assert!(shear().power(0) == Endo::identity(1, 2));
    }

    pub(crate) fn free_endo(n: usize, len: usize) -> impl Strategy<Value = FreeEndo> {
        let r = n as i32;
        proptest::collection::vec(proptest::collection::vec((1..=r, any::<bool>()), 0..=len), n).prop_map(move |ws| {
            FreeEndo::new(
                n,
                ws.into_iter()
                    .map(|ls| Word::from_letters(n, ls.into_iter().map(|(g, s)| if s { g } else { -g })))
                    .collect(),
            )
            .unwrap()
        })
    }

    fn mat(r: usize, c: usize) -> impl Strategy<Value = IntMat> {
        proptest::collection::vec(-2i64..=2, r * c).prop_map(move |xs| {
            IntMat::from_rows(c, xs.chunks(c.max(1)).take(r).map(ivec).collect::<Vec<_>>())
        })
    }

    fn gelem(m: usize, n: usize) -> impl Strategy<Value = GElem> {
        let r = n as i32;
        (proptest::collection::vec(-3i64..=3, m), proptest::collection::vec((1..=r, any::<bool>()), 0..=5)).prop_map(
            move |(a, ls)| GElem::new(ivec(&a), Word::from_letters(n, ls.into_iter().map(|(g, s)| if s { g } else { -g }))),
        )
    }

    fn endo_any() -> impl Strategy<Value = Endo> {
        (1usize..=2, 2usize..=3, any::<bool>()).prop_flat_map(|(m, n, two)| {
            let one = (free_endo(n, 3), mat(m, m), mat(n, m))
                .prop_map(|(phi, q, p)| Endo::type_one(phi, q, p).unwrap())
                .boxed();
            if !two {
                return one;
            }
            (
                proptest::collection::vec((1..=n as i32, any::<bool>()), 1..=3),
                proptest::collection::vec(-2i64..=2, m),
                proptest::collection::vec(-2i64..=2, n),
                mat(m, m),
                mat(n, m),
            )
                .prop_filter_map("type II data", move |(ls, l, h, q, p)| {
                    let z = Word::from_letters(n, ls.into_iter().map(|(g, s)| if s { g } else { -g }));
                    let (z, _) = word_root(&z)?;
                    Endo::type_two(z, ivec(&l), ivec(&h), q, p).ok()
                })
                .boxed()
        })
    }

    fn endo_with_elems() -> impl Strategy<Value = (Endo, Endo, GElem, GElem)> {
        endo_any().prop_flat_map(|e| {
            let (m, n) = (e.m(), e.n());
            let e2 = (free_endo(n, 2), mat(m, m), mat(n, m)).prop_map(|(phi, q, p)| Endo::type_one(phi, q, p).unwrap());
            (Just(e), e2, gelem(m, n), gelem(m, n))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(96))]
        #[test]
        fn homomorphism_and_composition((e, e2, g, h) in endo_with_elems()) {
            prop_assert_eq!(e.apply(&g.mul(&h)), e.apply(&g).mul(&e.apply(&h)));
            prop_assert_eq!(e.compose(&e2).apply(&g), e2.apply(&e.apply(&g)));
            prop_assert_eq!(e2.compose(&e).apply(&g), e.apply(&e2.apply(&g)));
            let p3 = e.power(3);
            prop_assert_eq!(&p3, &e.compose(&e).compose(&e));
            prop_assert_eq!(p3.apply(&g), e.apply(&e.apply(&e.apply(&g))));
            let round = Endo::from_images(e.m(), e.n(), &e.images().0, &e.images().1).unwrap();
            prop_assert_eq!(round, e.clone());
        }

        #[test]
        fn inverse_and_decomposition((e, _e2, g, _h) in endo_with_elems()) {
            let f = e.flags();
            prop_assert_eq!(f.auto, e.invert().is_some());
            if let Some(inv) = e.invert() {
                prop_assert_eq!(inv.apply(&e.apply(&g)), g.clone());
                prop_assert_eq!(e.apply(&inv.apply(&g)), g.clone());
                let (a, b, c) = e.auto_decompose().unwrap();
                prop_assert_eq!(a.compose(&b).compose(&c), e.clone());
            }
            if f.mono {
                let (m, n) = (e.m(), e.n());
                let mut seen = std::collections::HashSet::new();
                for w in words_up_to(n, 3) {
                    for a in -1i64..=1 {
                        let x = GElem::new(vec![BigInt::from(a); m], w.clone());
                        prop_assert!(seen.insert(e.apply(&x)));
                    }
                }
            }
        }
    }
}
