//! Finite index of a subgroup `H ≤ ℤᵐ × Fₙ`, with coset representatives.
//!
//! `H` has finite index iff `L` has full rank, `Hπ` has finite index in
//! `Fₙ`, and the preimage of `L` under `A` has full rank `n'`. Candidate
//! representatives are `t^{c_i}·v_j·w_k`, then duplicates are cleaned out
//! by membership tests. Each surviving representative `t^c u` is replaced by
//! `t^c u'` with `u'` the shortlex-least word, no longer than `u`, in the same
//! coset (searched only for short `u`).

use crate::free::{words_up_to, Word};
use crate::group::{GElem, GSubgroupBasis};
use crate::lattice::{lattice_preimage, IVec};

#[derive(Clone, Debug)]
pub struct IndexCertificate {
    /// Representatives of `ℤᵐ / L`.
    pub abelian_reps: Vec<IVec>,
    /// Representatives `v` with `Fₙ = ⊔ v·Hπ`.
    pub free_reps: Vec<Word>,
    /// Representatives `w` with `Hπ = ⊔ w·(H ∩ Fₙ)`.
    pub inner_reps: Vec<Word>,
    /// Representatives `r` with `G = ⊔ r·H`.
    pub reps: Vec<GElem>,
    pub index: usize,
}

impl IndexCertificate {
    /// Representatives `r⁻¹` with `G = ⊔ H·r⁻¹`.
    pub fn reps_hr(&self) -> Vec<GElem> {
        self.reps.iter().map(GElem::inverse).collect()
    }

    /// Number of uncleaned candidates `r·s·t`.
    pub fn candidate_count(&self) -> usize {
        self.abelian_reps.len() * self.free_reps.len() * self.inner_reps.len()
    }

    /// The representative `r` with `g ∈ r·H`.
    pub fn coset_of(&self, h: &GSubgroupBasis, g: &GElem) -> Option<usize> {
        self.reps.iter().position(|r| h.contains(&r.inverse().mul(g)))
    }
}

pub fn finite_index(h: &GSubgroupBasis) -> Option<IndexCertificate> {
    let n = h.n();
    let (_, abelian_reps) = h.lattice().index()?;
    let (_, free_reps) = h.graph().finite_index()?;
    let k = lattice_preimage(h.a_matrix(), h.lattice());
    let (_, inner) = k.index()?;
    let basis = h.free_basis();
    let inner_reps: Vec<Word> = inner
        .iter()
        .map(|c| {
            c.iter().zip(&basis).fold(Word::identity(n), |acc, (e, u)| acc.mul(&u.pow_big(e)))
        })
        .collect();
    let mut reps: Vec<GElem> = Vec::new();
    for v in &free_reps {
        for w in &inner_reps {
            for c in &abelian_reps {
                let g = GElem::new(c.clone(), v.mul(w));
                if reps.iter().all(|r| !h.contains(&r.inverse().mul(&g))) {
                    reps.push(g);
                }
            }
        }
    }
    let reps = reps.into_iter().map(|r| shortest_rep(h, r)).collect::<Vec<_>>();
    let index = reps.len();
    Some(IndexCertificate { abelian_reps, free_reps, inner_reps, reps, index })
}

const CANONICAL_SEARCH_LEN: usize = 4;

fn shortest_rep(h: &GSubgroupBasis, r: GElem) -> GElem {
    if r.word.len() > CANONICAL_SEARCH_LEN {
        return r;
    }
    let rinv = r.inverse();
    words_up_to(h.n(), r.word.len())
        .into_iter()
        .map(|u| GElem::new(r.avec.clone(), u))
        .find(|g| h.contains(&rinv.mul(g)))
        .expect("r itself qualifies")
}
