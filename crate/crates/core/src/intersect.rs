//! Coset and subgroup intersections in `ℤᵐ × Fₙ`, and the quasi-convexity
//! test built on them.
//!
//! For `g = t^a u` and `g' = t^{a'} u'` the free cosets are met first in a
//! pullback; the abelian parts then reduce to the affine coset
//! `M = {x : x(PA − P'A') ∈ N}` over the pullback basis.

use crate::error::{Error, Result};
use crate::free::{free_coset_intersect, pullback_basis, schreier_basis, StallingsGraph, Word};
use crate::group::{subgroup_basis, GElem, GSubgroupBasis};
use crate::lattice::{unit_vec, vec_sub, AffineCoset, IVec, IntMat, Lattice};

#[derive(Clone, Debug)]
pub struct MeetCertificate {
    pub v0: Word,
    pub vbasis: Vec<Word>,
    /// Rows abelianize each `v_i` over the basis of `Hπ`.
    pub p: IntMat,
    /// Rows abelianize each `v_i` over the basis of `H'π`.
    pub p2: IntMat,
    pub omega0: IVec,
    pub omega02: IVec,
    pub n: AffineCoset,
    pub m: AffineCoset,
}

impl MeetCertificate {
    /// `PA − P'A'`.
    pub fn difference(&self, h: &GSubgroupBasis, h2: &GSubgroupBasis) -> IntMat {
        self.p.mul(h.a_matrix()).sub(&self.p2.mul(h2.a_matrix()))
    }
}

fn same_group(h: &GSubgroupBasis, h2: &GSubgroupBasis) -> Result<()> {
    if h.m() != h2.m() || h.n() != h2.n() {
        return Err(Error::Dimension("subgroups live in different groups".into()));
    }
    Ok(())
}

fn abel_matrix(cols: usize, words: &[Word]) -> IntMat {
    IntMat::from_rows(cols, words.iter().map(Word::abelianize).collect())
}

/// The data of the intersection `gH ∩ g'H'`, or `None` when the free
/// cosets are already disjoint.
fn meet_data(g: &GElem, h: &GSubgroupBasis, g2: &GElem, h2: &GSubgroupBasis) -> Option<MeetCertificate> {
    let (u, u2) = (&g.word, &g2.word);
    let v0 = free_coset_intersect(u, h.graph(), u2, h2.graph())?;
    let pb = pullback_basis(h.graph(), h2.graph());
    let (n1, n2) = (h.free_rank(), h2.free_rank());
    let over_u: Vec<Word> = pb.vbasis.iter().map(|v| h.express_free(v).expect("in Hπ")).collect();
    let over_u2: Vec<Word> = pb.vbasis.iter().map(|v| h2.express_free(v).expect("in H'π")).collect();
    let p = abel_matrix(n1, &over_u);
    let p2 = abel_matrix(n2, &over_u2);
    let omega0 = h.express_free(&u.inverse().mul(&v0)).expect("u⁻¹v₀ ∈ Hπ").abelianize();
    let omega02 = h2.express_free(&u2.inverse().mul(&v0)).expect("u'⁻¹v₀ ∈ H'π").abelianize();
    let offset = vec_sub(
        &crate::lattice::vec_add(&vec_sub(&g2.avec, &g.avec), &h2.a_matrix().vec_mul(&omega02)),
        &h.a_matrix().vec_mul(&omega0),
    );
    let n = AffineCoset::new(offset, h.lattice().sum(h2.lattice()));
    let diff = p.mul(h.a_matrix()).sub(&p2.mul(h2.a_matrix()));
    let m = n.preimage(&diff);
    Some(MeetCertificate { v0, vbasis: pb.vbasis, p, p2, omega0, omega02, n, m })
}

/// Some `g'' ∈ gH ∩ g'H'`, present iff the cosets meet.
pub fn coset_intersection(
    g: &GElem,
    h: &GSubgroupBasis,
    g2: &GElem,
    h2: &GSubgroupBasis,
) -> Result<Option<(GElem, MeetCertificate)>> {
    same_group(h, h2)?;
    if g.m() != h.m() || g.n() != h.n() || g2.m() != h.m() || g2.n() != h.n() {
        return Err(Error::Dimension("coset representative outside the group".into()));
    }
    let Some(cert) = meet_data(g, h, g2, h2) else { return Ok(None) };
    let Some(x) = cert.m.offset() else { return Ok(None) };
    let n = h.n();
    let u2 = cert
        .vbasis
        .iter()
        .zip(x)
        .fold(cert.v0.clone(), |acc, (v, e)| acc.mul(&v.pow_big(e)));
    let c1 = h.abelian_completion(&g.word.inverse().mul(&u2)).translate(&g.avec);
    let c2 = h2.abelian_completion(&g2.word.inverse().mul(&u2)).translate(&g2.avec);
    let a2 = c1.intersect(&c2);
    let a2 = a2.offset().expect("completions meet once M is nonempty").clone();
    let witness = GElem::new(a2, u2);
    debug_assert!(h.contains(&g.inverse().mul(&witness)));
    debug_assert!(h2.contains(&g2.inverse().mul(&witness)));
    debug_assert_eq!(witness.n(), n);
    Ok(Some((witness, cert)))
}

#[derive(Clone, Debug)]
pub enum Intersection {
    FinitelyGenerated { basis: GSubgroupBasis, cert: MeetCertificate },
    NotFinitelyGenerated { cert: MeetCertificate },
}

impl Intersection {
    pub fn is_fg(&self) -> bool {
        matches!(self, Intersection::FinitelyGenerated { .. })
    }

    pub fn basis(&self) -> Option<&GSubgroupBasis> {
        match self {
            Intersection::FinitelyGenerated { basis, .. } => Some(basis),
            Intersection::NotFinitelyGenerated { .. } => None,
        }
    }

    pub fn cert(&self) -> &MeetCertificate {
        match self {
            Intersection::FinitelyGenerated { cert, .. } | Intersection::NotFinitelyGenerated { cert } => cert,
        }
    }
}

pub fn subgroup_intersection(h: &GSubgroupBasis, h2: &GSubgroupBasis) -> Result<Intersection> {
    same_group(h, h2)?;
    let (m, n) = (h.m(), h.n());
    let one = GElem::identity(m, n);
    let cert = meet_data(&one, h, &one, h2).expect("1 lies in both subgroups");
    let mlat = cert.m.direction().expect("0 lies in M").clone();
    let n3 = cert.vbasis.len();
    let fg = n3 == 0 || (n3 == 1 && mlat.is_zero()) || mlat.rank() == n3;
    if !fg {
        return Ok(Intersection::NotFinitelyGenerated { cert });
    }
    let mut gens: Vec<GElem> = h
        .lattice()
        .intersect(h2.lattice())
        .basis_vecs()
        .into_iter()
        .map(|b| GElem::central(b, n))
        .collect();
    if !mlat.is_zero() {
        let steps: Vec<IVec> = (0..n3).map(|j| unit_vec(n3, j)).collect();
        for zw in schreier_basis(n3, &steps, &mlat) {
            let z = zw.substitute_into(&cert.vbasis, n);
            let e = h.abelian_completion(&z).intersect(&h2.abelian_completion(&z));
            let e = e.offset().expect("z abelianizes into M").clone();
            gens.push(GElem::new(e, z));
        }
    }
    let basis = subgroup_basis(m, n, &gens)?;
    Ok(Intersection::FinitelyGenerated { basis, cert })
}

/// Verdict of the finite-generation test for subgroups meeting `ℤᵐ` trivially.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FgTest {
    pub fg: bool,
    pub trivial: bool,
    pub pa: IntMat,
    pub p2a2: IntMat,
}

/// For `H, H'` with `L = L' = 0` and free ranks at least 2: `H ∩ H'` is
/// finitely generated iff it is trivial or `PA = P'A'`.
pub fn free_nonabelian_fg_test(h: &GSubgroupBasis, h2: &GSubgroupBasis) -> Result<FgTest> {
    same_group(h, h2)?;
    if !h.lattice().is_zero() || !h2.lattice().is_zero() {
        return Err(Error::Invalid("both subgroups must meet Z^m trivially".into()));
    }
    if h.free_rank() < 2 || h2.free_rank() < 2 {
        return Err(Error::Invalid("both subgroups must have free rank at least 2".into()));
    }
    let one = GElem::identity(h.m(), h.n());
    let cert = meet_data(&one, h, &one, h2).expect("1 lies in both subgroups");
    let pa = cert.p.mul(h.a_matrix());
    let p2a2 = cert.p2.mul(h2.a_matrix());
    let n3 = cert.vbasis.len();
    let trivial = n3 == 0 || (n3 == 1 && pa != p2a2);
    Ok(FgTest { fg: trivial || pa == p2a2, trivial, pa, p2a2 })
}

/// Quasi-convexity: `H` is cyclic, or `L` has finite index in `Hτ` and
/// `H ∩ Fₙ` has finite index in `Hπ`.
pub fn is_quasiconvex(h: &GSubgroupBasis) -> Result<bool> {
    let (m, n) = (h.m(), h.n());
    if h.lattice().rank() + h.free_rank() <= 1 {
        return Ok(true);
    }
    let htau = h.lattice().sum(&Lattice::from_matrix(h.a_matrix()));
    if htau.rank() != h.lattice().rank() {
        return Ok(false);
    }
    let fn_gens: Vec<GElem> = (1..=n).map(|i| GElem::x(m, n, i)).collect();
    let free = subgroup_basis(m, n, &fn_gens)?;
    let Intersection::FinitelyGenerated { basis: k, .. } = subgroup_intersection(h, &free)? else {
        return Ok(false);
    };
    let r = h.free_rank();
    let inside: Vec<Word> =
        k.free_basis().iter().map(|w| h.express_free(w).expect("H ∩ Fₙ ≤ Hπ")).collect();
    Ok(StallingsGraph::from_generators(r, &inside).finite_index().is_some())
}
