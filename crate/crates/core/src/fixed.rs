//! Fixed subgroups of endomorphisms of `ℤᵐ × Fₙ`.
//!
//! For Type II the fixed elements are the `t^a z^r` solving a homogeneous
//! linear system. For Type I, `t^a u` is fixed iff `uφ = u` and
//! `a(I − Q) = ûP`; the caller supplies a free basis of `Fix φ`.

use num_bigint::BigInt;

use crate::endo::{Endo, FreeEndo};
use crate::error::{Error, Result};
use crate::free::{schreier_basis, words_up_to, Word};
use crate::group::{subgroup_basis, GElem, GSubgroupBasis};
use crate::lattice::{left_kernel, solve_linear, unit_vec, IVec, IntMat, Lattice};

/// Which criterion certified finite generation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FixCondition {
    /// `Fix φ` is trivial.
    Trivial,
    /// `Fix φ` is cyclic with nonzero abelianization and `K = 0`.
    Cyclic,
    /// `rk N = rk Im P'`.
    RankEquality,
}

#[derive(Clone, Debug)]
pub struct FixCertificate {
    /// Abelianization of `Fix φ`.
    pub im_rho: Lattice,
    /// Rows: the basis of `im_rho` pushed through `P`.
    pub p_restricted: IntMat,
    /// `Im P'`.
    pub im_p: Lattice,
    /// `Im(I − Q)`.
    pub m: Lattice,
    /// `Im(I − Q) ∩ Im P'`.
    pub n: Lattice,
    /// `{c ∈ im_rho : cP ∈ N}`.
    pub npre: Lattice,
    pub condition: Option<FixCondition>,
}

#[derive(Clone, Debug)]
pub enum FixResult {
    FinitelyGenerated { basis: GSubgroupBasis, cert: FixCertificate },
    NotFinitelyGenerated { cert: FixCertificate },
}

impl FixResult {
    pub fn is_fg(&self) -> bool {
        matches!(self, FixResult::FinitelyGenerated { .. })
    }

    pub fn basis(&self) -> Option<&GSubgroupBasis> {
        match self {
            FixResult::FinitelyGenerated { basis, .. } => Some(basis),
            FixResult::NotFinitelyGenerated { .. } => None,
        }
    }

    pub fn cert(&self) -> &FixCertificate {
        match self {
            FixResult::FinitelyGenerated { cert, .. } | FixResult::NotFinitelyGenerated { cert } => cert,
        }
    }
}

fn i_minus(q: &IntMat) -> IntMat {
    IntMat::identity(q.rows()).sub(q)
}

/// `Fix Ψ` for a Type II endomorphism: `{t^a z^r : a·l + r(ẑ·h − 1) = 0, a(I − Q) = r·ẑP}`.
pub fn fix_type2(e: &Endo) -> Result<GSubgroupBasis> {
    let Endo::TypeII { z, l, h, q, p } = e else {
        return Err(Error::Invalid("fix_type2 needs a type II endomorphism".into()));
    };
    let (m, n) = (e.m(), e.n());
    let zh = z.abelianize();
    let zp = p.vec_mul(&zh);
    let zdoth: BigInt = zh.iter().zip(h).map(|(a, b)| a * b).sum();
    // Unknowns (a, r); column 0 is the free-part equation, the rest the abelian one.
    let mut rows: Vec<IVec> = Vec::with_capacity(m + 1);
    let qm = q.sub(&IntMat::identity(m));
    for j in 0..m {
        let mut row = vec![l[j].clone()];
        row.extend(qm.row(j).iter().cloned());
        rows.push(row);
    }
    let mut last = vec![zdoth - 1];
    last.extend(zp);
    rows.push(last);
    let sys = IntMat::from_rows(m + 1, rows);
    let gens: Vec<GElem> = left_kernel(&sys)
        .basis_vecs()
        .into_iter()
        .map(|v| GElem::new(v[..m].to_vec(), z.pow_big(&v[m])))
        .collect();
    subgroup_basis(m, n, &gens)
}

/// True iff every word is fixed by `φ`. Freeness and completeness of a
/// claimed basis of `Fix φ` cannot be checked and are trusted.
pub fn validate_fix_basis(phi: &FreeEndo, basis: &[Word]) -> bool {
    basis.iter().all(|w| w.rank() == phi.rank() && phi.apply(w) == *w)
}

/// `Fix Ψ` for a Type I endomorphism, given a free basis of `Fix φ`.
pub fn fix_type1(e: &Endo, fix_phi_basis: &[Word]) -> Result<FixResult> {
    let Endo::TypeI { q, p, .. } = e else {
        return Err(Error::Invalid("fix_type1 needs a type I endomorphism".into()));
    };
    let (m, n) = (e.m(), e.n());
    let r = fix_phi_basis.len();
    let iq = i_minus(q);
    let rho = IntMat::from_rows(n, fix_phi_basis.iter().map(Word::abelianize).collect());
    let im_rho = Lattice::from_matrix(&rho);
    let p_restricted = im_rho.basis().mul(p);
    let im_p = Lattice::from_matrix(&p_restricted);
    let mlat = Lattice::from_matrix(&iq);
    let nlat = mlat.intersect(&im_p);
    let npre = im_rho.intersect(&nlat.preimage(p));
    let condition = if r == 0 {
        Some(FixCondition::Trivial)
    } else if nlat.rank() == im_p.rank() {
        Some(FixCondition::RankEquality)
    } else if r == 1 && !im_rho.is_zero() && npre.is_zero() {
        Some(FixCondition::Cyclic)
    } else {
        None
    };
    let cert = FixCertificate { im_rho, p_restricted, im_p, m: mlat, n: nlat, npre, condition };
    if condition.is_none() {
        return Ok(FixResult::NotFinitelyGenerated { cert });
    }
    let mut gens: Vec<GElem> = left_kernel(&iq).basis_vecs().into_iter().map(|a| GElem::central(a, n)).collect();
    // Words over the basis of Fix φ whose abelianization lands in K.
    let sub = cert.npre.preimage(&rho);
    let free_part: Vec<Word> = if sub.rank() == r {
        let steps: Vec<IVec> = (0..r).map(|k| unit_vec(r, k)).collect();
        schreier_basis(r, &steps, &sub)
    } else {
        debug_assert!(sub.is_zero());
        Vec::new()
    };
    for wd in free_part {
        let w = wd.substitute_into(fix_phi_basis, n);
        let up = p.vec_mul(&w.abelianize());
        let a = solve_linear(&iq, &up);
        let a = a.offset().expect("ûP lies in Im(I − Q)").clone();
        gens.push(GElem::new(a, w));
    }
    let basis = subgroup_basis(m, n, &gens)?;
    Ok(FixResult::FinitelyGenerated { basis, cert })
}

/// All `t^a w` with `|w| ≤ max_len` and `‖a‖∞ ≤ max_coeff` fixed by `e`.
pub fn fix_bruteforce(e: &Endo, max_len: usize, max_coeff: i64) -> Vec<GElem> {
    let (m, n) = (e.m(), e.n());
    let vecs = box_vectors(m, max_coeff);
    let mut out = Vec::new();
    for w in words_up_to(n, max_len) {
        for a in &vecs {
            let g = GElem::new(a.clone(), w.clone());
            if e.apply(&g) == g {
                out.push(g);
            }
        }
    }
    out
}

/// All vectors of `ℤᵐ` with entries in `[−c, c]`, in lexicographic order.
pub fn box_vectors(m: usize, c: i64) -> Vec<IVec> {
    let mut out: Vec<IVec> = vec![Vec::new()];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|v| {
                (-c..=c).map(move |x| {
                    let mut v = v.clone();
                    v.push(BigInt::from(x));
                    v
                })
            })
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::endo::tests::shear;
    use crate::group::tests::el;
    use crate::lattice::ivec;
    use proptest::prelude::*;

    fn w(n: usize, ls: &[i32]) -> Word {
        Word::from_letters(n, ls.iter().copied())
    }

    fn type2(l: i64) -> Endo {
        Endo::type_two(w(2, &[1]), ivec(&[l]), ivec(&[0, 0]), IntMat::identity(1), IntMat::zeros(2, 1)).unwrap()
    }

    #[test]
    fn type2_examples() {
        let f = fix_type2(&type2(1)).unwrap();
        assert_eq!(f.basis_elements(), vec![el(&[1], &[1], 2)]);
        let f = fix_type2(&type2(2)).unwrap();
        assert_eq!(f.basis_elements(), vec![el(&[1], &[1, 1], 2)]);
        assert!(f.contains(&GElem::identity(1, 2)));
        for g in fix_bruteforce(&type2(1), 4, 4) {
            assert!(fix_type2(&type2(1)).unwrap().contains(&g));
        }
        let b = fix_bruteforce(&type2(1), 4, 4);
        for k in -4..=4 {
            assert!(b.contains(&el(&[1], &[1], 2).pow(k)));
        }
        assert!(fix_type2(&shear()).is_err());
    }

    #[test]
    fn shear_is_not_fg() {
        let basis = [w(2, &[1]), w(2, &[2])];
        let r = fix_type1(&shear(), &basis).unwrap();
        assert!(!r.is_fg());
        assert_eq!(r.cert().condition, None);
        let b = fix_bruteforce(&shear(), 4, 4);
        assert!(b.contains(&el(&[1], &[], 2)));
        assert!(b.contains(&el(&[0], &[2], 2)));
        assert!(b.contains(&el(&[0], &[-1, 2, 1], 2)));
        assert!(!b.contains(&el(&[0], &[1], 2)));
    }

    #[test]
    fn type1_examples() {
        let basis = [w(2, &[1]), w(2, &[2])];
        let q0 = Endo::type_one(FreeEndo::identity(2), IntMat::zeros(1, 1), IntMat::zeros(2, 1)).unwrap();
        let r = fix_type1(&q0, &basis).unwrap();
        assert_eq!(r.cert().condition, Some(FixCondition::RankEquality));
        assert_eq!(r.basis().unwrap().basis_elements(), vec![el(&[0], &[1], 2), el(&[0], &[2], 2)]);
        let r = fix_type1(&Endo::identity(2, 2), &[]).unwrap();
        assert_eq!(r.cert().condition, Some(FixCondition::Trivial));
        assert_eq!(r.basis().unwrap().lattice(), &Lattice::full(2));
        // Cyclic basis with zero abelianization falls under the rank condition.
        let r = fix_type1(&shear(), &[w(2, &[1, 2, -1, -2])]).unwrap();
        assert_eq!(r.cert().condition, Some(FixCondition::RankEquality));
        // Cyclic basis with nonzero abelianization outside K.
        let r = fix_type1(&shear(), &[w(2, &[1])]).unwrap();
        assert_eq!(r.cert().condition, Some(FixCondition::Cyclic));
        assert_eq!(r.basis().unwrap().basis_elements(), vec![el(&[1], &[], 2)]);
    }

    #[test]
    fn identity_q_gives_fix_phi_times_center() {
        let phi = FreeEndo::new(2, vec![w(2, &[1]), w(2, &[-1, 2, 1])]).unwrap();
        let e = Endo::type_one(phi.clone(), IntMat::identity(1), IntMat::zeros(2, 1)).unwrap();
        let fb = [w(2, &[1])];
        assert!(validate_fix_basis(&phi, &fb));
        let r = fix_type1(&e, &fb).unwrap();
        let mut want = vec![el(&[1], &[], 2)];
        want.extend(fb.iter().map(|u| GElem::new(ivec(&[0]), u.clone())));
        let want = subgroup_basis(1, 2, &want).unwrap();
        assert_eq!(r.basis().unwrap(), &want);
    }

    /// Retractions `xᵢ ↦ xᵢ` or `xᵢ ↦ 1`, whose fixed subgroup is generated by the kept letters.
    fn type1_setup() -> impl Strategy<Value = (Endo, Vec<Word>)> {
        (1usize..=2, proptest::collection::vec(any::<bool>(), 2), proptest::collection::vec(-2i64..=2, 4), proptest::collection::vec(-2i64..=2, 4))
            .prop_map(|(m, keep, q, p)| {
                let images: Vec<Word> =
                    (1..=2).map(|i| if keep[i - 1] { Word::generator(2, i) } else { Word::identity(2) }).collect();
                let fixed: Vec<Word> = images.iter().filter(|w| !w.is_identity()).cloned().collect();
                let phi = FreeEndo::new(2, images).unwrap();
                let q = IntMat::from_rows(m, q.chunks(2).take(m).map(|r| ivec(&r[..m])).collect());
                let p = IntMat::from_rows(m, p.chunks(2).take(2).map(|r| ivec(&r[..m])).collect());
                (Endo::type_one(phi, q, p).unwrap(), fixed)
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn type1_fixed_sets_match_enumeration((e, fixed) in type1_setup()) {
            let Endo::TypeI { phi, .. } = &e else { unreachable!() };
            prop_assert!(validate_fix_basis(phi, &fixed));
            let r = fix_type1(&e, &fixed).unwrap();
            let brute = fix_bruteforce(&e, 3, 2);
            if let Some(b) = r.basis() {
                for g in b.basis_elements() {
                    prop_assert_eq!(e.apply(&g), g.clone());
                }
                for g in &brute {
                    prop_assert!(b.contains(g));
                }
            } else {
                // A cyclic Fix φ always gives a finitely generated Fix Ψ.
                prop_assert!(fixed.len() == 2);
            }
        }

        #[test]
        fn type2_fixed_sets_match_enumeration(
            ls in proptest::collection::vec((1i32..=2, any::<bool>()), 1..=2),
            l in proptest::collection::vec(-2i64..=2, 1),
            h in proptest::collection::vec(-2i64..=2, 2),
            q in -2i64..=2,
            p in proptest::collection::vec(-2i64..=2, 2),
        ) {
            let z = Word::from_letters(2, ls.into_iter().map(|(g, s)| if s { g } else { -g }));
            let Some((z, _)) = crate::free::word_root(&z) else { return Ok(()) };
            let Ok(e) = Endo::type_two(z, ivec(&l), ivec(&h), IntMat::from_i64(1, &[&[q]]), IntMat::from_rows(1, p.iter().map(|&x| ivec(&[x])).collect())) else { return Ok(()) };
            let f = fix_type2(&e).unwrap();
            for g in f.basis_elements() {
                prop_assert_eq!(e.apply(&g), g.clone());
            }
            for g in fix_bruteforce(&e, 4, 3) {
                prop_assert!(f.contains(&g));
            }
        }
    }
}
