//! Whitehead problems in `ℤᵐ × Fₙ`: given `g = t^a u` and `g' = t^b v`,
//! decide whether some automorphism, monomorphism or endomorphism maps `g`
//! to `g'`, and produce a witness.
//!
//! For a Type I candidate the free part needs `uφ = v`, the abelian part
//! needs `aQ + ûP = b`. Writing `α = gcd(a)` and `μ = gcd(û)`, the vectors
//! `aQ` range over `α·x` and `ûP` over `μ·y`, with `x` constrained by the
//! kind of morphism sought.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::endo::{Endo, FreeEndo};
use crate::error::{Error, Result};
use crate::free::{word_root, words_up_to, Word};
use crate::group::GElem;
use crate::lattice::{
    bezout_vector, divides, ext_gcd, gcd_vec, solve_linear, unimodular_completion, vec_is_zero, zero_vec, IVec,
    IntMat,
};
use crate::whitehead::whp_auto_free;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Capability {
    Auto,
    Mono,
    Endo,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WhpAnswer {
    Yes(Endo),
    No,
    /// The free-part oracle abstained; the string names it.
    Unknown(String),
}

impl WhpAnswer {
    pub fn witness(&self) -> Option<&Endo> {
        match self {
            WhpAnswer::Yes(e) => Some(e),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WhpCertificate {
    pub alpha: BigInt,
    pub mu: BigInt,
    pub rho: BigInt,
    /// `(x⁰, y⁰)` with `αx⁰ + μy⁰ = b`, when solvable.
    pub particular: Option<(IVec, IVec)>,
    /// `gcd(a, û)`, governing the Type II branch.
    pub d: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WhpReport {
    pub answer: WhpAnswer,
    pub cert: WhpCertificate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleAnswer {
    Found(FreeEndo),
    Impossible,
    Abstain,
}

/// Decides, or tries to decide, `∃φ: uφ = v` in a class of free endomorphisms.
pub trait FreeOracle {
    fn capability(&self) -> Capability;
    fn name(&self) -> String;
    fn query(&self, u: &Word, v: &Word) -> OracleAnswer;
}

/// The complete oracle for automorphisms.
pub struct WhiteheadOracle;

impl FreeOracle for WhiteheadOracle {
    fn capability(&self) -> Capability {
        Capability::Auto
    }

    fn name(&self) -> String {
        "whitehead".into()
    }

    fn query(&self, u: &Word, v: &Word) -> OracleAnswer {
        match whp_auto_free(u, v) {
            Some(phi) => OracleAnswer::Found(phi),
            None => OracleAnswer::Impossible,
        }
    }
}

/// Tries cheap constructions, then all image tuples with words up to
/// `max_len`. Sound on `Found`; abstains when nothing is found.
pub struct BoundedSearch {
    pub capability: Capability,
    pub max_len: usize,
    /// Upper bound on the number of tuples examined.
    pub budget: usize,
}

impl BoundedSearch {
    pub fn mono() -> Self {
        BoundedSearch { capability: Capability::Mono, max_len: 2, budget: 200_000 }
    }

    pub fn endo() -> Self {
        BoundedSearch { capability: Capability::Endo, max_len: 2, budget: 200_000 }
    }

    fn accepts(&self, phi: &FreeEndo) -> bool {
        match self.capability {
            Capability::Auto => phi.is_epi(),
            Capability::Mono => phi.is_mono(),
            Capability::Endo => true,
        }
    }

    fn search(&self, u: &Word, v: &Word) -> Option<FreeEndo> {
        let n = u.rank();
        let pool = words_up_to(n, self.max_len);
        let total = pool.len().checked_pow(n as u32)?;
        if total > self.budget {
            return None;
        }
        let mut idx = vec![0usize; n];
        loop {
            let phi = FreeEndo::new(n, idx.iter().map(|&i| pool[i].clone()).collect()).expect("rank n");
            if phi.apply(u) == *v && self.accepts(&phi) {
                return Some(phi);
            }
            let mut k = 0;
            while k < n {
                idx[k] += 1;
                if idx[k] < pool.len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == n {
                return None;
            }
        }
    }
}

impl FreeOracle for BoundedSearch {
    fn capability(&self) -> Capability {
        self.capability
    }

    fn name(&self) -> String {
        format!("bounded search (image length {})", self.max_len)
    }

    fn query(&self, u: &Word, v: &Word) -> OracleAnswer {
        let n = u.rank();
        if u.is_identity() || v.is_identity() {
            return match (u.is_identity(), v.is_identity(), self.capability) {
                (true, true, _) => OracleAnswer::Found(FreeEndo::identity(n)),
                (false, true, Capability::Endo) => {
                    OracleAnswer::Found(FreeEndo::new(n, vec![Word::identity(n); n]).expect("rank n"))
                }
                _ => OracleAnswer::Impossible,
            };
        }
        if let Some(phi) = whp_auto_free(u, v) {
            return OracleAnswer::Found(phi);
        }
        if self.capability == Capability::Endo {
            // xᵢ ↦ r^{hᵢ} with û·h = k, where v = r^k.
            let (r, k) = word_root(v).expect("v is nontrivial");
            let uhat = u.abelianize();
            let col = IntMat::from_rows(1, uhat.iter().map(|x| vec![x.clone()]).collect());
            if let Some(h) = solve_linear(&col, &[BigInt::from(k)]).offset() {
                let images = h.iter().map(|e| r.pow_big(e)).collect();
                return OracleAnswer::Found(FreeEndo::new(n, images).expect("rank n"));
            }
        }
        match self.search(u, v) {
            Some(phi) => OracleAnswer::Found(phi),
            None => OracleAnswer::Abstain,
        }
    }
}

/// Always abstains.
pub struct AbstainOracle(pub Capability);

impl FreeOracle for AbstainOracle {
    fn capability(&self) -> Capability {
        self.0
    }

    fn name(&self) -> String {
        "abstaining oracle".into()
    }

    fn query(&self, _: &Word, _: &Word) -> OracleAnswer {
        OracleAnswer::Abstain
    }
}

/// Shifts `x0` by a multiple of `mu` to a primitive vector, which is
/// possible iff `gcd(x0, mu) = 1` when `x0` has at least two entries.
///
/// All but the last entry stay put (the first moves by `mu` if they are all
/// zero), and the last moves by `λ·mu` with `λ` the part of
/// `gcd(x₁, …, x_{m−1})` coprime to `x_m`.
pub fn primitive_shift(x0: &[BigInt], mu: &BigInt) -> Option<IVec> {
    assert!(mu.is_positive(), "modulus must be positive");
    let m = x0.len();
    let mut all = x0.to_vec();
    all.push(mu.clone());
    if m == 0 || !gcd_vec(&all).is_one() {
        return None;
    }
    let mut x = x0.to_vec();
    if m == 1 {
        for target in [BigInt::one(), -BigInt::one()] {
            if divides(mu, &(&target - &x[0])) {
                return Some(vec![target]);
            }
        }
        return None;
    }
    if vec_is_zero(&x[..m - 1]) {
        x[0] += mu;
    }
    let mut lam = gcd_vec(&x[..m - 1]);
    loop {
        let d = lam.gcd(&x[m - 1]);
        if d.is_one() {
            break;
        }
        lam /= d;
    }
    x[m - 1] += lam * mu;
    debug_assert!(gcd_vec(&x).is_one());
    Some(x)
}

/// Some `(Q, P)` with `aQ + ûP = b`, where `Q` is unimodular for `Auto`
/// and nonsingular for `Mono`.
fn abelian_part(kind: Capability, a: &[BigInt], uhat: &[BigInt], b: &[BigInt]) -> (WhpCertificate, Option<(IntMat, IntMat)>) {
    let (m, n) = (a.len(), uhat.len());
    let alpha = gcd_vec(a);
    let mu = gcd_vec(uhat);
    let rho = alpha.gcd(&mu);
    let mut all = a.to_vec();
    all.extend_from_slice(uhat);
    let d = gcd_vec(&all);
    let mut cert = WhpCertificate { alpha: alpha.clone(), mu: mu.clone(), rho: rho.clone(), particular: None, d };
    if !b.iter().all(|bj| divides(&rho, bj)) {
        return (cert, None);
    }
    // Particular solution of αx + μy = b.
    let (x0, y0): (IVec, IVec) = if rho.is_zero() {
        (zero_vec(m), zero_vec(m))
    } else {
        let (_, s, t) = ext_gcd(&alpha, &mu);
        (b.iter().map(|bj| &s * bj / &rho).collect(), b.iter().map(|bj| &t * bj / &rho).collect())
    };
    cert.particular = Some((x0.clone(), y0.clone()));
    let p_from = |y: &IVec| -> IntMat {
        if mu.is_zero() {
            return IntMat::zeros(n, m);
        }
        let u0: IVec = uhat.iter().map(|x| x / &mu).collect();
        let c = bezout_vector(&u0);
        IntMat::from_rows(m, c.iter().map(|ci| y.iter().map(|yj| ci * yj).collect()).collect())
    };
    if alpha.is_zero() {
        return (cert, Some((IntMat::identity(m), p_from(&y0))));
    }
    let a0: IVec = a.iter().map(|x| x / &alpha).collect();
    // x = x⁰ + μ'k and y = y⁰ − α'k for any k.
    let mu1 = &mu / &rho;
    let alpha1 = &alpha / &rho;
    let shift = |x: &IVec| -> IVec {
        if mu.is_zero() {
            return y0.clone();
        }
        x.iter().zip(&x0).zip(&y0).map(|((xj, x0j), y0j)| y0j - (xj - x0j) / &mu1 * &alpha1).collect()
    };
    let x = match kind {
        Capability::Endo => x0.clone(),
        Capability::Mono if !vec_is_zero(&x0) => x0.clone(),
        Capability::Mono if mu.is_zero() => return (cert, None),
        Capability::Mono => {
            let mut x = x0.clone();
            x[0] += &mu1;
            x
        }
        Capability::Auto if mu.is_zero() => {
            if !gcd_vec(&x0).is_one() {
                return (cert, None);
            }
            x0.clone()
        }
        Capability::Auto => match primitive_shift(&x0, &mu1) {
            Some(x) => x,
            None => return (cert, None),
        },
    };
    let y = shift(&x);
    let q = match kind {
        Capability::Endo => {
            let c = bezout_vector(&a0);
            IntMat::from_rows(m, c.iter().map(|ci| x.iter().map(|xj| ci * xj).collect()).collect())
        }
        _ => {
            let g = gcd_vec(&x);
            let xp: IVec = x.iter().map(|v| v / &g).collect();
            let a_inv = unimodular_completion(&a0).inverse().expect("unimodular");
            let mut diag = IntMat::identity(m);
            diag.set(0, 0, g);
            a_inv.mul(&diag).mul(&unimodular_completion(&xp))
        }
    };
    (cert, Some((q, p_from(&y))))
}

fn check_dims(g: &GElem, g2: &GElem) -> Result<()> {
    if g.m() != g2.m() || g.n() != g2.n() {
        return Err(Error::Dimension("elements live in different groups".into()));
    }
    Ok(())
}

/// Accepts a witness only after replaying it.
fn verified(kind: Capability, e: Endo, g: &GElem, g2: &GElem) -> Result<WhpAnswer> {
    let f = e.flags();
    let ok = e.apply(g) == *g2
        && match kind {
            Capability::Auto => f.auto,
            Capability::Mono => f.mono,
            Capability::Endo => true,
        };
    if !ok {
        return Err(Error::Invalid(format!("witness failed verification:\n{e}")));
    }
    Ok(WhpAnswer::Yes(e))
}

/// For `n ≤ 1` the group is `ℤ^{m+n}` and every endomorphism is a matrix.
fn abelian_group(kind: Capability, g: &GElem, g2: &GElem) -> Result<WhpReport> {
    let (m, n) = (g.m(), g.n());
    let flat = |h: &GElem| {
        let mut v = h.avec.clone();
        v.extend(h.word.abelianize());
        v
    };
    let (w, w2) = (flat(g), flat(g2));
    let (cert, qp) = abelian_part(kind, &w, &[], &w2);
    let Some((e, _)) = qp else { return Ok(WhpReport { answer: WhpAnswer::No, cert }) };
    let endo = Endo::from_abelian_matrix(m, n, &e);
    Ok(WhpReport { answer: verified(kind, endo, g, g2)?, cert })
}

pub fn whp_auto(g: &GElem, g2: &GElem) -> Result<WhpReport> {
    check_dims(g, g2)?;
    if g.n() <= 1 {
        return abelian_group(Capability::Auto, g, g2);
    }
    let (cert, qp) = abelian_part(Capability::Auto, &g.avec, &g.word.abelianize(), &g2.avec);
    let no = |cert| Ok(WhpReport { answer: WhpAnswer::No, cert });
    let Some((q, p)) = qp else { return no(cert) };
    let Some(phi) = whp_auto_free(&g.word, &g2.word) else { return no(cert) };
    let e = Endo::type_one(phi, q, p)?;
    Ok(WhpReport { answer: verified(Capability::Auto, e, g, g2)?, cert })
}

fn via_oracle(
    kind: Capability,
    g: &GElem,
    g2: &GElem,
    oracle: &dyn FreeOracle,
    q: IntMat,
    p: IntMat,
) -> Result<WhpAnswer> {
    match oracle.query(&g.word, &g2.word) {
        OracleAnswer::Found(phi) => {
            let sound = phi.apply(&g.word) == g2.word && (kind != Capability::Mono || phi.is_mono());
            if !sound {
                return Err(Error::Invalid(format!("oracle {} returned a wrong free map", oracle.name())));
            }
            verified(kind, Endo::type_one(phi, q, p)?, g, g2)
        }
        OracleAnswer::Impossible => Ok(WhpAnswer::No),
        OracleAnswer::Abstain => Ok(WhpAnswer::Unknown(oracle.name())),
    }
}

pub fn whp_mono(g: &GElem, g2: &GElem, oracle: &dyn FreeOracle) -> Result<WhpReport> {
    check_dims(g, g2)?;
    if oracle.capability() != Capability::Mono {
        return Err(Error::Invalid("whp_mono needs a monomorphism oracle".into()));
    }
    if g.n() <= 1 {
        return abelian_group(Capability::Mono, g, g2);
    }
    let (cert, qp) = abelian_part(Capability::Mono, &g.avec, &g.word.abelianize(), &g2.avec);
    let Some((q, p)) = qp else { return Ok(WhpReport { answer: WhpAnswer::No, cert }) };
    let answer = via_oracle(Capability::Mono, g, g2, oracle, q, p)?;
    Ok(WhpReport { answer, cert })
}

/// Some `(l, h)` with `a·l + û·h = target` and `l ≠ 0`.
fn type_two_exponents(a: &[BigInt], uhat: &[BigInt], target: &BigInt) -> Option<(IVec, IVec)> {
    let m = a.len();
    let col = IntMat::from_rows(1, a.iter().chain(uhat).map(|x| vec![x.clone()]).collect());
    let sol = solve_linear(&col, std::slice::from_ref(target));
    let o = sol.offset()?.clone();
    let pick = if !vec_is_zero(&o[..m]) {
        o
    } else {
        let k = sol.direction()?.basis_vecs().into_iter().find(|k| !vec_is_zero(&k[..m]))?;
        o.iter().zip(&k).map(|(x, y)| x + y).collect()
    };
    Some((pick[..m].to_vec(), pick[m..].to_vec()))
}

pub fn whp_endo(g: &GElem, g2: &GElem, oracle: &dyn FreeOracle) -> Result<WhpReport> {
    check_dims(g, g2)?;
    if oracle.capability() != Capability::Endo {
        return Err(Error::Invalid("whp_endo needs an endomorphism oracle".into()));
    }
    if g.n() <= 1 {
        return abelian_group(Capability::Endo, g, g2);
    }
    let (m, n) = (g.m(), g.n());
    let uhat = g.word.abelianize();
    let (cert, qp) = abelian_part(Capability::Endo, &g.avec, &uhat, &g2.avec);
    let Some((q, p)) = qp else { return Ok(WhpReport { answer: WhpAnswer::No, cert }) };
    if m > 0 {
        let (z, k) = match word_root(&g2.word) {
            Some((z, k)) => (z, BigInt::from(k)),
            None => (Word::generator(n, 1), BigInt::zero()),
        };
        if divides(&cert.d, &k) {
            if let Some((l, h)) = type_two_exponents(&g.avec, &uhat, &k) {
                let e = Endo::type_two(z, l, h, q.clone(), p.clone())?;
                return Ok(WhpReport { answer: verified(Capability::Endo, e, g, g2)?, cert });
            }
        }
    }
    let answer = via_oracle(Capability::Endo, g, g2, oracle, q, p)?;
    Ok(WhpReport { answer, cert })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::tests::el;
    use crate::lattice::ivec;
    use proptest::prelude::*;


    #[test]
    fn auto_examples() {
        let r = whp_auto(&el(&[0], &[1], 2), &el(&[0], &[2], 2)).unwrap();
        assert!(matches!(r.answer, WhpAnswer::Yes(_)));
        let r = whp_auto(&el(&[1], &[], 2), &el(&[2], &[], 2)).unwrap();
        assert_eq!(r.answer, WhpAnswer::No);
        let r = whp_auto(&el(&[1], &[1], 2), &el(&[0], &[], 2)).unwrap();
        assert_eq!(r.answer, WhpAnswer::No);
        let r = whp_auto(&el(&[2, 3], &[1, 1, 2], 2), &el(&[5, 7], &[2], 2)).unwrap();
        assert!(matches!(r.answer, WhpAnswer::Yes(_)));
    }

    #[test]
    fn mono_examples() {
        let r = whp_mono(&el(&[0], &[1], 2), &el(&[0], &[1, 1], 2), &BoundedSearch::mono()).unwrap();
        let e = r.answer.witness().unwrap();
        assert_eq!(e.apply(&el(&[0], &[1], 2)), el(&[0], &[1, 1], 2));
        let r = whp_mono(&el(&[1], &[], 2), &el(&[2], &[], 2), &BoundedSearch::mono()).unwrap();
        let e = r.answer.witness().unwrap();
        assert_eq!(e.q(), &IntMat::from_i64(1, &[&[2]]));
        let r = whp_mono(&el(&[1], &[], 2), &el(&[0], &[], 2), &BoundedSearch::mono()).unwrap();
        assert_eq!(r.answer, WhpAnswer::No);
    }

    #[test]
    fn endo_examples() {
        let r = whp_endo(&el(&[1], &[1], 2), &el(&[0], &[2], 2), &BoundedSearch::endo()).unwrap();
        let e = r.answer.witness().unwrap();
        assert!(!e.is_type_one());
        assert_eq!(r.cert.d, BigInt::one());
        let g = el(&[1, -2], &[1, 2, -1], 2);
        assert!(whp_endo(&g, &g, &BoundedSearch::endo()).unwrap().answer.witness().is_some());
        let r = whp_endo(&el(&[2], &[1, 1], 2), &el(&[0], &[2], 2), &AbstainOracle(Capability::Endo)).unwrap();
        assert_eq!(r.cert.d, BigInt::from(2));
        assert!(matches!(r.answer, WhpAnswer::Unknown(_)));
    }

    #[test]
    fn abelian_groups() {
        // t ↦ x is an automorphism of ℤ × ℤ.
        let r = whp_auto(&el(&[1], &[], 1), &el(&[0], &[1], 1)).unwrap();
        assert!(r.answer.witness().is_some());
        let r = whp_auto(&el(&[2], &[], 1), &el(&[0], &[1], 1)).unwrap();
        assert_eq!(r.answer, WhpAnswer::No);
        let r = whp_mono(&el(&[2], &[], 1), &el(&[0], &[-1; 4], 1), &BoundedSearch::mono()).unwrap();
        assert!(r.answer.witness().is_some());
    }

    #[test]
    fn primitive_shift_single_coordinate() {
        let b = |x: i64| BigInt::from(x);
        assert_eq!(primitive_shift(&[b(4)], &b(3)), Some(vec![b(1)]));
        assert_eq!(primitive_shift(&[b(5)], &b(3)), Some(vec![b(-1)]));
        // gcd(2, 5) = 1 but 2 ≢ ±1 mod 5: no primitive vector in the class.
        assert_eq!(primitive_shift(&[b(2)], &b(5)), None);
        assert_eq!(primitive_shift(&[b(0), b(2)], &b(3)).map(|x| gcd_vec(&x)), Some(BigInt::one()));
    }

    fn brute_primitive(x0: &[i64], mu: i64) -> bool {
        let m = x0.len();
        let range = -6i64..=6;
        let mut ks: Vec<Vec<i64>> = vec![vec![]];
        for _ in 0..m {
            ks = ks.into_iter().flat_map(|k| range.clone().map(move |c| [k.clone(), vec![c]].concat())).collect();
        }
        ks.iter().any(|k| {
            let x: IVec = x0.iter().zip(k).map(|(a, c)| BigInt::from(a + c * mu)).collect();
            gcd_vec(&x).is_one()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn primitive_shift_matches_gcd_criterion(x0 in proptest::collection::vec(-12i64..=12, 2..=3), mu in 1i64..=12) {
            let xb: IVec = x0.iter().map(|&x| BigInt::from(x)).collect();
            let mut all = xb.clone();
            all.push(BigInt::from(mu));
            let criterion = gcd_vec(&all).is_one();
            let got = primitive_shift(&xb, &BigInt::from(mu));
            prop_assert_eq!(got.is_some(), criterion);
            prop_assert_eq!(brute_primitive(&x0, mu), criterion);
            if let Some(x) = got {
                prop_assert!(gcd_vec(&x).is_one());
                for (a, b) in x.iter().zip(&xb) {
                    prop_assert!(divides(&BigInt::from(mu), &(a - b)));
                }
            }
        }

        #[test]
        fn answers_verify_and_auto_is_symmetric(
            a in proptest::collection::vec(-3i64..=3, 2),
            b in proptest::collection::vec(-3i64..=3, 2),
            u in proptest::collection::vec((1i32..=2, any::<bool>()), 0..=3),
            v in proptest::collection::vec((1i32..=2, any::<bool>()), 0..=3),
        ) {
            let lift = |ls: Vec<(i32, bool)>| Word::from_letters(2, ls.into_iter().map(|(g, s)| if s { g } else { -g }));
            let g = GElem::new(ivec(&a), lift(u));
            let g2 = GElem::new(ivec(&b), lift(v));
            let fwd = whp_auto(&g, &g2).unwrap();
            let back = whp_auto(&g2, &g).unwrap();
            prop_assert_eq!(fwd.answer.witness().is_some(), back.answer.witness().is_some());
            if let Some(e) = fwd.answer.witness() {
                prop_assert_eq!(e.invert().unwrap().apply(&g2), g.clone());
            }
            for rep in [whp_mono(&g, &g2, &BoundedSearch::mono()).unwrap(), whp_endo(&g, &g2, &BoundedSearch::endo()).unwrap()] {
                if let Some(e) = rep.answer.witness() {
                    prop_assert_eq!(e.apply(&g), g2.clone());
                }
            }
            if let Some((x0, y0)) = &fwd.cert.particular {
                for j in 0..2 {
                    prop_assert_eq!(&fwd.cert.alpha * &x0[j] + &fwd.cert.mu * &y0[j], BigInt::from(b[j]));
                }
            }
            // An automorphism witness is also a monomorphism and endomorphism witness.
            if fwd.answer.witness().is_some() {
                prop_assert!(!matches!(whp_mono(&g, &g2, &BoundedSearch::mono()).unwrap().answer, WhpAnswer::No));
                prop_assert!(whp_endo(&g, &g2, &BoundedSearch::endo()).unwrap().answer.witness().is_some());
            }
        }
    }
}
