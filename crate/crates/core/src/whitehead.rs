//! Whitehead automorphisms and the automorphic orbit problem in `Fₙ`.
//!
//! Words are compared up to conjugacy: inner automorphisms are free, so a
//! word is first cyclically reduced and rotated to a canonical form.
//! Peak reduction then brings both words to minimal cyclic length, and a
//! breadth-first search over the equal-length orbit graph decides the rest.

use std::collections::HashMap;

use crate::endo::FreeEndo;
use crate::free::{conjugator, Word};

/// Signed permutations of the generators, identity excluded.
pub fn permutation_automorphisms(n: usize) -> Vec<FreeEndo> {
    let mut perms: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..n {
        perms = perms
            .into_iter()
            .flat_map(|p| {
                (0..n).filter(|i| !p.contains(i)).map(|i| [p.clone(), vec![i]].concat()).collect::<Vec<_>>()
            })
            .collect();
    }
    let mut out = Vec::new();
    for p in perms {
        for signs in 0u32..(1 << n) {
            let images = (0..n)
                .map(|i| {
                    let g = Word::generator(n, p[i] + 1);
                    if signs >> i & 1 == 1 {
                        g.inverse()
                    } else {
                        g
                    }
                })
                .collect();
            let e = FreeEndo::new(n, images).expect("well formed");
            if !e.is_identity() {
                out.push(e);
            }
        }
    }
    out
}

/// The automorphisms `(A, a)`: `x ↦ a^{−[x⁻¹∈A]} x a^{[x∈A]}`, `a ↦ a`,
/// for nonempty `A` avoiding `a^{±1}`.
pub fn multiplier_automorphisms(n: usize) -> Vec<FreeEndo> {
    let letters: Vec<i32> = (1..=n as i32).flat_map(|g| [g, -g]).collect();
    let mut out = Vec::new();
    for &a in &letters {
        let others: Vec<i32> = letters.iter().copied().filter(|l| l.abs() != a.abs()).collect();
        let aw = Word::from_letters(n, [a]);
        for mask in 1u32..(1 << others.len()) {
            let in_a = |l: i32| others.iter().position(|&o| o == l).is_some_and(|k| mask >> k & 1 == 1);
            let images = (1..=n as i32)
                .map(|x| {
                    let xw = Word::generator(n, x as usize);
                    if x == a.abs() {
                        return xw;
                    }
                    let left = if in_a(-x) { aw.inverse() } else { Word::identity(n) };
                    let right = if in_a(x) { aw.clone() } else { Word::identity(n) };
                    left.mul(&xw).mul(&right)
                })
                .collect();
            out.push(FreeEndo::new(n, images).expect("well formed"));
        }
    }
    out
}

/// Both kinds of Whitehead automorphism.
pub fn whitehead_automorphisms(n: usize) -> Vec<FreeEndo> {
    let mut out = permutation_automorphisms(n);
    out.extend(multiplier_automorphisms(n));
    out
}

fn cyclic_len(w: &Word) -> usize {
    w.cyclic_reduce().0.len()
}

/// Shortlex-least cyclic rotation `c` of `w`, with `x` such that `x⁻¹wx = c`.
pub fn canonical_rotation(w: &Word) -> (Word, Word) {
    let core = w.cyclic_reduce().0;
    let ls = core.letters();
    let c = (0..ls.len().max(1))
        .map(|r| Word::from_letters(w.rank(), ls[r.min(ls.len())..].iter().chain(&ls[..r.min(ls.len())]).copied()))
        .min_by(|a, b| a.shortlex_cmp(b))
        .expect("at least one rotation");
    let x = conjugator(w, &c).expect("rotations are conjugate");
    (c, x)
}

/// A word of minimal length in the automorphic orbit of `w`, and an
/// automorphism carrying `w` to it.
pub fn whitehead_minimize(w: &Word) -> (Word, FreeEndo) {
    let n = w.rank();
    let moves = multiplier_automorphisms(n);
    let mut cur = w.clone();
    let mut auto = FreeEndo::identity(n);
    loop {
        let len = cyclic_len(&cur);
        let best = moves
            .iter()
            .map(|t| (cyclic_len(&t.apply(&cur)), t))
            .filter(|(l, _)| *l < len)
            .min_by_key(|(l, _)| *l);
        let Some((_, t)) = best else { break };
        cur = t.apply(&cur);
        auto = auto.compose(t);
    }
    let (c, x) = canonical_rotation(&cur);
    (c, auto.compose(&FreeEndo::conjugation(&x)))
}

/// Some automorphism `φ` with `uφ = v`, if one exists.
pub fn whp_auto_free(u: &Word, v: &Word) -> Option<FreeEndo> {
    assert_eq!(u.rank(), v.rank(), "words live in different free groups");
    let n = u.rank();
    let (cu, au) = whitehead_minimize(u);
    let (cv, av) = whitehead_minimize(v);
    if cu.len() != cv.len() {
        return None;
    }
    let moves = whitehead_automorphisms(n);
    // Node k is reached from parent[k] by step[k].
    let mut nodes = vec![cu.clone()];
    let mut parent: Vec<Option<(usize, FreeEndo)>> = vec![None];
    let mut seen: HashMap<Word, usize> = HashMap::from([(cu.clone(), 0)]);
    let mut head = 0;
    let target = loop {
        if let Some(&k) = seen.get(&cv) {
            break k;
        }
        if head == nodes.len() {
            return None;
        }
        let c = nodes[head].clone();
        for t in &moves {
            let w = t.apply(&c);
            if cyclic_len(&w) != c.len() {
                continue;
            }
            let (c2, x) = canonical_rotation(&w);
            if seen.contains_key(&c2) {
                continue;
            }
            seen.insert(c2.clone(), nodes.len());
            nodes.push(c2);
            parent.push(Some((head, t.compose(&FreeEndo::conjugation(&x)))));
        }
        head += 1;
    };
    let mut steps = Vec::new();
    let mut k = target;
    while let Some((p, step)) = &parent[k] {
        steps.push(step.clone());
        k = *p;
    }
    let path = steps.iter().rev().fold(FreeEndo::identity(n), |acc, s| acc.compose(s));
    let phi = au.compose(&path).compose(&av.invert().expect("products of automorphisms"));
    debug_assert_eq!(phi.apply(u), *v);
    Some(phi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::free::words_up_to;
    use std::collections::HashSet;

    fn w(n: usize, ls: &[i32]) -> Word {
        Word::from_letters(n, ls.iter().copied())
    }

    #[test]
    fn generator_counts() {
        assert_eq!(permutation_automorphisms(2).len(), 7);
        assert_eq!(multiplier_automorphisms(2).len(), 12);
        assert_eq!(permutation_automorphisms(3).len(), 47);
        assert!(whitehead_automorphisms(3).iter().all(|e| e.invert().is_some()));
    }

    #[test]
    fn minimize_examples() {
        let (m, a) = whitehead_minimize(&w(2, &[1]));
        assert_eq!((m, a), (w(2, &[1]), FreeEndo::identity(2)));
        for u in [w(2, &[1, 2, -1]), w(2, &[1, 2]), w(2, &[1, 2, 1, 2, 2])] {
            let (m, a) = whitehead_minimize(&u);
            assert_eq!(m.len(), 1);
            assert_eq!(a.apply(&u), m);
            assert!(a.invert().is_some());
        }
        let (m, _) = whitehead_minimize(&w(2, &[1, 2, -1, -2]));
        assert_eq!(m.len(), 4);
    }

    #[test]
    fn minimize_is_idempotent() {
        for u in words_up_to(2, 4) {
            let (m, _) = whitehead_minimize(&u);
            assert_eq!(whitehead_minimize(&m).0, m);
        }
    }

    #[test]
    fn orbit_examples() {
        assert_eq!(whp_auto_free(&w(2, &[1, 2]), &w(2, &[1, 2])).unwrap().apply(&w(2, &[1, 2])), w(2, &[1, 2]));
        let swap = whp_auto_free(&w(2, &[1]), &w(2, &[2])).unwrap();
        assert_eq!(swap.apply(&w(2, &[1])), w(2, &[2]));
        assert!(whp_auto_free(&w(2, &[1]), &w(2, &[1, 1])).is_none());
        let c = w(2, &[1, 2, -1, -2]);
        let phi = whp_auto_free(&c, &c.inverse()).unwrap();
        assert_eq!(phi.apply(&c), c.inverse());
        assert!(whp_auto_free(&w(2, &[1, 1, 2]), &w(2, &[1, 2, 2, 2])).is_some());
        assert!(whp_auto_free(&w(2, &[1, 2, 1, 2]), &w(2, &[1, 2, 2])).is_none());
    }

    /// Words reachable from `u` by at most `depth` Whitehead automorphisms.
    fn ball(u: &Word, moves: &[FreeEndo], depth: usize) -> HashSet<Word> {
        let mut all: HashSet<Word> = HashSet::from([u.clone()]);
        let mut frontier = vec![u.clone()];
        for _ in 0..depth {
            let mut next = Vec::new();
            for x in &frontier {
                for t in moves {
                    let y = t.apply(x);
                    if all.insert(y.clone()) {
                        next.push(y);
                    }
                }
            }
            frontier = next;
        }
        all
    }

    #[test]
    fn agrees_with_orbit_search_in_rank_two() {
        let moves = whitehead_automorphisms(2);
        let words = words_up_to(2, 3);
        let balls: Vec<HashSet<Word>> = words.iter().map(|u| ball(u, &moves, 2)).collect();
        for (i, u) in words.iter().enumerate() {
            for (j, v) in words.iter().enumerate() {
                let brute = !balls[i].is_disjoint(&balls[j]);
                let got = whp_auto_free(u, v);
                assert_eq!(got.is_some(), brute, "{u} vs {v}");
                if let Some(phi) = got {
                    assert_eq!(phi.apply(u), *v);
                }
            }
        }
    }
}
