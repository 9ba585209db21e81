//! Free groups: reduced words, Nielsen reduction with change-of-basis
//! tracking, Stallings automata, pullbacks, coset intersection and roots.

use std::cmp::Ordering;
use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::lattice::{vec_add, zero_vec, IVec, Lattice};

/// Anything that can be multiplied and inverted; used to evaluate words.
pub trait GroupOps: Clone {
    fn op(&self, other: &Self) -> Self;
    fn inv(&self) -> Self;
}

/// A freely reduced word. Letter `k > 0` is `x_k`, letter `-k` is `x_k⁻¹`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Word {
    rank: usize,
    letters: Vec<i32>,
}

/// Letter order used for tie-breaking: x1 < X1 < x2 < X2 < …
fn letter_key(l: i32) -> u32 {
    2 * (l.unsigned_abs() - 1) + u32::from(l < 0)
}

impl Word {
    pub fn identity(rank: usize) -> Self {
        Word { rank, letters: Vec::new() }
    }

    /// The generator `x_i`, 1-based.
    pub fn generator(rank: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= rank, "generator index out of range");
        Word { rank, letters: vec![i as i32] }
    }

    /// Builds a word from letters, reducing freely.
    pub fn from_letters(rank: usize, letters: impl IntoIterator<Item = i32>) -> Self {
        let mut out: Vec<i32> = Vec::new();
        for l in letters {
            assert!(l != 0 && (l.unsigned_abs() as usize) <= rank, "letter {l} out of range");
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word { rank, letters: out }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word { rank: self.rank, letters: self.letters.iter().rev().map(|l| -l).collect() }
    }

    pub fn mul(&self, other: &Word) -> Word {
        assert_eq!(self.rank, other.rank, "rank mismatch");
        let mut k = 0;
        let (a, b) = (&self.letters, &other.letters);
        while k < a.len() && k < b.len() && a[a.len() - 1 - k] == -b[k] {
            k += 1;
        }
        let mut letters = a[..a.len() - k].to_vec();
        letters.extend_from_slice(&b[k..]);
        Word { rank: self.rank, letters }
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let (core, c) = base.cyclic_reduce();
        let mut letters = Vec::with_capacity(core.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            letters.extend_from_slice(&core.letters);
        }
        c.mul(&Word { rank: self.rank, letters }).mul(&c.inverse())
    }

    pub fn pow_big(&self, k: &BigInt) -> Word {
        self.pow(k.to_i64().expect("exponent out of range"))
    }

    /// Returns `(core, c)` with `self = c·core·c⁻¹` and `core` cyclically
    /// reduced.
    pub fn cyclic_reduce(&self) -> (Word, Word) {
        let l = &self.letters;
        let mut k = 0;
        while 2 * k + 1 < l.len() && l[k] == -l[l.len() - 1 - k] {
            k += 1;
        }
        let core = Word { rank: self.rank, letters: l[k..l.len() - k].to_vec() };
        let c = Word { rank: self.rank, letters: l[..k].to_vec() };
        (core, c)
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        self.len() < 2 || self.letters[0] != -self.letters[self.len() - 1]
    }

    pub fn abelianize(&self) -> IVec {
        let mut v = zero_vec(self.rank);
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize - 1;
            if l > 0 {
                v[i] += 1;
            } else {
                v[i] -= 1;
            }
        }
        v
    }

    /// Replaces `x_i` by `images[i-1]`. The target rank is read off the
    /// images, so use [`Word::substitute_into`] when there are none.
    pub fn substitute(&self, images: &[Word]) -> Word {
        let rank = images.first().map_or(0, |w| w.rank);
        self.substitute_into(images, rank)
    }

    pub fn substitute_into(&self, images: &[Word], rank: usize) -> Word {
        assert_eq!(images.len(), self.rank, "wrong number of images");
        self.evaluate(images, &Word::identity(rank))
    }

    /// Evaluates the word in any group given images of the generators.
    pub fn evaluate<T: GroupOps>(&self, images: &[T], one: &T) -> T {
        assert_eq!(images.len(), self.rank, "wrong number of images");
        let mut acc = one.clone();
        for &l in &self.letters {
            let g = &images[l.unsigned_abs() as usize - 1];
            acc = if l > 0 { acc.op(g) } else { acc.op(&g.inv()) };
        }
        acc
    }

    /// The same letters viewed in a free group of larger rank.
    pub fn widen(&self, rank: usize) -> Word {
        assert!(rank >= self.rank, "cannot narrow a word");
        Word { rank, letters: self.letters.clone() }
    }

    /// Shortlex order with the letter order x1 < X1 < x2 < X2 < …
    pub fn shortlex_cmp(&self, other: &Word) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            let a = self.letters.iter().map(|&l| letter_key(l));
            let b = other.letters.iter().map(|&l| letter_key(l));
            a.cmp(b)
        })
    }

    /// Whether `x_i` or its inverse occurs.
    pub fn uses(&self, i: usize) -> bool {
        self.letters.iter().any(|l| l.unsigned_abs() as usize == i)
    }
}

impl GroupOps for Word {
    fn op(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn inv(&self) -> Self {
        self.inverse()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|&l| if l > 0 { format!("x{l}") } else { format!("X{}", -l) })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// All reduced words of length at most `max_len`, in shortlex order.
pub fn words_up_to(rank: usize, max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::identity(rank)];
    let mut layer = vec![Word::identity(rank)];
    let mut alphabet: Vec<i32> = (1..=rank as i32).flat_map(|i| [i, -i]).collect();
    alphabet.sort_by_key(|&l| letter_key(l));
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &l in &alphabet {
                if w.letters.last() == Some(&-l) {
                    continue;
                }
                let mut letters = w.letters.clone();
                letters.push(l);
                next.push(Word { rank, letters });
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Conjugator `x` with `x⁻¹·w·x = w2`, if the words are conjugate.
pub fn conjugator(w: &Word, w2: &Word) -> Option<Word> {
    let (c1, p1) = w.cyclic_reduce();
    let (c2, p2) = w2.cyclic_reduce();
    if c1.len() != c2.len() {
        return None;
    }
    let n = c1.len();
    if n == 0 {
        return Some(p1.mul(&p2.inverse()));
    }
    let r = (0..n).find(|&r| (0..n).all(|i| c1.letters[(r + i) % n] == c2.letters[i]))?;
    let p = Word { rank: w.rank, letters: c1.letters[..r].to_vec() };
    Some(p1.mul(&p).mul(&p2.inverse()))
}

/// `(z, k)` with `v = z^k`, `k ≥ 1` and `z` not a proper power. `None` for
/// the identity.
pub fn word_root(v: &Word) -> Option<(Word, usize)> {
    if v.is_identity() {
        return None;
    }
    let (core, c) = v.cyclic_reduce();
    let n = core.len();
    let period = (1..=n)
        .find(|&p| n % p == 0 && (0..n).all(|i| core.letters[i] == core.letters[i % p]))
        .expect("n is always a period");
    let z = Word { rank: v.rank, letters: core.letters[..period].to_vec() };
    Some((c.mul(&z).mul(&c.inverse()), n / period))
}

/// Some `z` with `z^d = v`; `d = 0` requires `v = 1`.
pub fn dth_power_check(v: &Word, d: &BigInt) -> Option<Word> {
    let Some((z, k)) = word_root(v) else {
        return Some(Word::identity(v.rank));
    };
    if d.is_zero() {
        return None;
    }
    let (q, r) = BigInt::from(k).div_rem(d);
    r.is_zero().then(|| z.pow_big(&q))
}

/// Nielsen basis of a tuple together with both change-of-basis maps.
///
/// `forward[j]` writes `basis[j]` as a word in the `p` original entries;
/// `backward[i]` writes the `i`-th original entry in the basis.
#[derive(Clone, Debug)]
pub struct NielsenResult {
    pub basis: Vec<Word>,
    pub forward: Vec<Word>,
    pub backward: Vec<Word>,
}

/// Ordering key of a word: length, then the letters of its first half.
fn half_key(w: &Word) -> (usize, Vec<u32>) {
    let h = w.len().div_ceil(2);
    (w.len(), w.letters[..h].iter().map(|&l| letter_key(l)).collect())
}

/// Ordering key of the pair `{w, w⁻¹}`.
type PairKey = ((usize, Vec<u32>), (usize, Vec<u32>));

fn pair_key(w: &Word) -> PairKey {
    let (a, b) = (half_key(w), half_key(&w.inverse()));
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

pub fn nielsen_reduce(tuple: &[Word]) -> NielsenResult {
    let p = tuple.len();
    let mut cur: Vec<Option<Word>> = tuple.iter().cloned().map(Some).collect();
    let mut fwd: Vec<Word> = (1..=p).map(|i| Word::generator(p, i)).collect();
    // backward words are over slot ids until the end
    let mut bwd: Vec<Word> = fwd.clone();

    let substitute_slot = |bwd: &mut Vec<Word>, slot: usize, image: Word| {
        let images: Vec<Word> = (1..=p)
            .map(|i| if i == slot + 1 { image.clone() } else { Word::generator(p, i) })
            .collect();
        for w in bwd.iter_mut() {
            *w = w.substitute(&images);
        }
    };

    loop {
        // drop identities first
        if let Some(i) = (0..p).find(|&i| cur[i].as_ref().is_some_and(Word::is_identity)) {
            cur[i] = None;
            substitute_slot(&mut bwd, i, Word::identity(p));
            continue;
        }
        let mut best: Option<(PairKey, usize, usize, i64, bool)> = None;
        for i in 0..p {
            let Some(wi) = &cur[i] else { continue };
            let ki = pair_key(wi);
            for j in 0..p {
                if i == j {
                    continue;
                }
                let Some(wj) = &cur[j] else { continue };
                for f in [1i64, -1] {
                    let wjf = if f > 0 { wj.clone() } else { wj.inverse() };
                    for right in [true, false] {
                        let cand = if right { wi.mul(&wjf) } else { wjf.mul(wi) };
                        let kc = pair_key(&cand);
                        if kc < ki && best.as_ref().is_none_or(|b| kc < b.0) {
                            best = Some((kc, i, j, f, right));
                        }
                    }
                }
            }
        }
        let Some((_, i, j, f, right)) = best else { break };
        let wj = cur[j].clone().unwrap();
        let wjf = if f > 0 { wj } else { wj.inverse() };
        let yi = Word::generator(p, i + 1);
        let yjf = Word::generator(p, j + 1).pow(f);
        let wi = cur[i].take().unwrap();
        if right {
            cur[i] = Some(wi.mul(&wjf));
            fwd[i] = fwd[i].mul(&fwd[j].pow(f));
            substitute_slot(&mut bwd, i, yi.mul(&yjf.inverse()));
        } else {
            cur[i] = Some(wjf.mul(&wi));
            fwd[i] = fwd[j].pow(f).mul(&fwd[i]);
            substitute_slot(&mut bwd, i, yjf.inverse().mul(&yi));
        }
    }

    let alive: Vec<usize> = (0..p).filter(|&i| cur[i].is_some()).collect();
    let k = alive.len();
    let renumber: Vec<Word> = (0..p)
        .map(|i| match alive.iter().position(|&a| a == i) {
            Some(pos) => Word::generator(k, pos + 1),
            None => Word::identity(k),
        })
        .collect();
    let basis: Vec<Word> = alive.iter().map(|&i| cur[i].clone().unwrap()).collect();
    let forward = alive.iter().map(|&i| fwd[i].clone()).collect();
    let backward = bwd.iter().map(|w| w.substitute(&renumber)).collect();
    NielsenResult { basis, forward, backward }
}

/// Inverse of the automorphism `x_i ↦ images[i]` of a free group, given as
/// the images of the generators; `None` if the map is not an automorphism.
pub fn invert_automorphism(rank: usize, images: &[Word]) -> Option<Vec<Word>> {
    assert_eq!(images.len(), rank, "wrong number of images");
    let r = nielsen_reduce(images);
    if r.basis.len() != rank || r.basis.iter().any(|b| b.len() != 1) {
        return None;
    }
    let mut inv = vec![Word::identity(rank); rank];
    for (b, eta) in r.basis.iter().zip(&r.forward) {
        let l = b.letters[0];
        let g = l.unsigned_abs() as usize - 1;
        inv[g] = if l > 0 { eta.clone() } else { eta.inverse() };
    }
    Some(inv)
}

/// A deterministic automaton over the letters `±1..±n`, i.e. a folded graph.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Automaton {
    rank: usize,
    /// `adj[v][slot(l)]` is the target of the `l`-edge out of `v`.
    adj: Vec<Vec<Option<usize>>>,
}

fn slot(l: i32) -> usize {
    letter_key(l) as usize
}

fn slot_letter(s: usize) -> i32 {
    let g = (s / 2 + 1) as i32;
    if s.is_multiple_of(2) {
        g
    } else {
        -g
    }
}

impl Automaton {
    fn step(&self, v: usize, l: i32) -> Option<usize> {
        self.adj[v][slot(l)]
    }

    fn read(&self, start: usize, w: &Word) -> Option<usize> {
        w.letters.iter().try_fold(start, |v, &l| self.step(v, l))
    }

    fn len(&self) -> usize {
        self.adj.len()
    }
}

/// An unfolded labelled graph under construction.
struct RawGraph {
    rank: usize,
    n: usize,
    edges: Vec<(usize, i32, usize)>,
    identify: Vec<(usize, usize)>,
}

impl RawGraph {
    fn new(rank: usize, n: usize) -> Self {
        RawGraph { rank, n, edges: Vec::new(), identify: Vec::new() }
    }

    fn add_vertex(&mut self) -> usize {
        self.n += 1;
        self.n - 1
    }

    /// Adds a path reading `w` from `from` to `to`.
    fn add_path(&mut self, from: usize, w: &Word, to: usize) {
        let mut v = from;
        for (i, &l) in w.letters.iter().enumerate() {
            let t = if i + 1 == w.len() { to } else { self.add_vertex() };
            self.add_edge(v, l, t);
            v = t;
        }
        if w.is_empty() && from != to {
            self.identify.push((from, to));
        }
    }

    fn add_edge(&mut self, u: usize, l: i32, v: usize) {
        if l > 0 {
            self.edges.push((u, l, v));
        } else {
            self.edges.push((v, -l, u));
        }
    }

    /// Folds into a deterministic automaton; returns it with the map from old
    /// vertex ids to new ones.
    fn fold(self) -> (Automaton, Vec<usize>) {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            let mut y = x;
            while parent[y] != r {
                let next = parent[y];
                parent[y] = r;
                y = next;
            }
            r
        }
        for &(a, b) in &self.identify {
            let (a, b) = (find(&mut parent, a), find(&mut parent, b));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut edges = self.edges;
        loop {
            for e in edges.iter_mut() {
                e.0 = find(&mut parent, e.0);
                e.2 = find(&mut parent, e.2);
            }
            edges.sort_unstable();
            edges.dedup();
            let mut changed = false;
            let mut out: BTreeMap<(usize, i32), usize> = BTreeMap::new();
            for &(u, l, v) in &edges {
                for (key, t) in [((u, l), v), ((v, -l), u)] {
                    match out.get(&key) {
                        Some(&t2) => {
                            let (a, b) = (find(&mut parent, t), find(&mut parent, t2));
                            if a != b {
                                parent[a.max(b)] = a.min(b);
                                changed = true;
                            }
                        }
                        None => {
                            out.insert(key, t);
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let mut ids = vec![usize::MAX; self.n];
        let mut count = 0;
        for v in 0..self.n {
            let r = find(&mut parent, v);
            if ids[r] == usize::MAX {
                ids[r] = count;
                count += 1;
            }
            ids[v] = ids[r];
        }
        let mut adj = vec![vec![None; 2 * self.rank]; count];
        for &(u, l, v) in &edges {
            let (u, v) = (ids[u], ids[v]);
            adj[u][slot(l)] = Some(v);
            adj[v][slot(-l)] = Some(u);
        }
        (Automaton { rank: self.rank, adj }, ids)
    }
}

/// Folded core graph of a finitely generated subgroup of `F_n`, with a
/// breadth-first spanning tree and the free basis read off from it.
///
/// Vertex 0 is the basepoint. Vertices are numbered in breadth-first order
/// with letters visited as x1, X1, x2, X2, …
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StallingsGraph {
    aut: Automaton,
    /// Positive edges `(source, generator, target)` sorted by `(source, generator)`.
    edges: Vec<(usize, usize, usize)>,
    /// Basis index of each edge, `None` on tree edges.
    edge_basis: Vec<Option<usize>>,
    tree_words: Vec<Word>,
    basis: Vec<Word>,
}

impl StallingsGraph {
    pub fn from_generators(rank: usize, gens: &[Word]) -> Self {
        let mut g = RawGraph::new(rank, 1);
        for w in gens {
            assert_eq!(w.rank, rank, "rank mismatch");
            g.add_path(0, w, 0);
        }
        let (aut, ids) = g.fold();
        Self::from_automaton(&aut, ids[0])
    }

    /// Graph from explicit positive edges `(source, generator, target)` with
    /// basepoint 0; folds and trims as needed.
    pub fn from_edges(rank: usize, vertices: usize, edges: &[(usize, usize, usize)]) -> Self {
        let mut g = RawGraph::new(rank, vertices.max(1));
        for &(a, gen, b) in edges {
            g.add_edge(a, gen as i32, b);
        }
        let (aut, ids) = g.fold();
        Self::from_automaton(&aut, ids[0])
    }

    /// Trims everything except the core at `base`, renumbers and reads off a
    /// spanning tree.
    fn from_automaton(aut: &Automaton, base: usize) -> Self {
        let rank = aut.rank;
        let n = aut.len();
        // restrict to the component of base
        let mut alive = vec![false; n];
        let mut queue = VecDeque::from([base]);
        alive[base] = true;
        while let Some(v) = queue.pop_front() {
            for t in aut.adj[v].iter().flatten() {
                if !alive[*t] {
                    alive[*t] = true;
                    queue.push_back(*t);
                }
            }
        }
        // prune hanging trees; a loop fills two slots and so counts twice
        let degree = |v: usize, alive: &[bool]| {
            aut.adj[v].iter().filter(|t| t.is_some_and(|t| alive[t])).count()
        };
        loop {
            let dead: Vec<usize> =
                (0..n).filter(|&v| alive[v] && v != base && degree(v, &alive) <= 1).collect();
            if dead.is_empty() {
                break;
            }
            for v in dead {
                alive[v] = false;
            }
        }
        // breadth-first renumbering and spanning tree
        let mut ids = vec![usize::MAX; n];
        let mut order = vec![base];
        ids[base] = 0;
        let mut tree_words = vec![Word::identity(rank)];
        let mut parent_edge: Vec<Option<(usize, i32)>> = vec![None];
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            for s in 0..2 * rank {
                let Some(t) = aut.adj[v][s] else { continue };
                if !alive[t] || ids[t] != usize::MAX {
                    continue;
                }
                ids[t] = order.len();
                let l = slot_letter(s);
                tree_words.push(tree_words[ids[v]].mul(&Word { rank, letters: vec![l] }));
                parent_edge.push(Some((ids[v], l)));
                order.push(t);
            }
            head += 1;
        }
        let count = order.len();
        let mut adj = vec![vec![None; 2 * rank]; count];
        for (new, &old) in order.iter().enumerate() {
            for s in 0..2 * rank {
                if let Some(t) = aut.adj[old][s] {
                    if alive[t] {
                        adj[new][s] = Some(ids[t]);
                    }
                }
            }
        }
        let aut = Automaton { rank, adj };
        let mut edges = Vec::new();
        for v in 0..count {
            for g in 1..=rank {
                if let Some(t) = aut.step(v, g as i32) {
                    edges.push((v, g, t));
                }
            }
        }
        let mut basis = Vec::new();
        let mut edge_basis = Vec::new();
        for &(u, g, v) in &edges {
            let l = g as i32;
            let is_tree = parent_edge[v] == Some((u, l)) || parent_edge[u] == Some((v, -l));
            if is_tree && u != v {
                edge_basis.push(None);
            } else {
                edge_basis.push(Some(basis.len()));
                let x = Word { rank, letters: vec![l] };
                basis.push(tree_words[u].mul(&x).mul(&tree_words[v].inverse()));
            }
        }
        StallingsGraph { aut, edges, edge_basis, tree_words, basis }
    }

    pub fn rank_ambient(&self) -> usize {
        self.aut.rank
    }

    pub fn vertex_count(&self) -> usize {
        self.aut.len()
    }

    pub fn edges(&self) -> &[(usize, usize, usize)] {
        &self.edges
    }

    /// Free rank of the subgroup: edges − vertices + 1.
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Word] {
        &self.basis
    }

    pub fn tree_word(&self, v: usize) -> &Word {
        &self.tree_words[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.aut.adj[v].iter().filter(|t| t.is_some()).count()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.aut.read(0, w) == Some(0)
    }

    /// Expression of `w` over the graph's basis, present iff `w` lies in the
    /// subgroup.
    pub fn express(&self, w: &Word) -> Option<Word> {
        let k = self.basis.len();
        let mut v = 0;
        let mut letters = Vec::new();
        for &l in &w.letters {
            let t = self.aut.step(v, l)?;
            let (src, g, dst) = if l > 0 { (v, l as usize, t) } else { (t, (-l) as usize, v) };
            let idx = self.edges.binary_search(&(src, g, dst)).expect("edge present");
            if let Some(b) = self.edge_basis[idx] {
                letters.push(if l > 0 { b as i32 + 1 } else { -(b as i32 + 1) });
            }
            v = t;
        }
        (v == 0).then(|| Word::from_letters(k, letters))
    }

    /// Index and representatives `r` with `F_n = ⊔ r·H`, present iff every
    /// vertex has full degree.
    pub fn finite_index(&self) -> Option<(usize, Vec<Word>)> {
        let full = 2 * self.aut.rank;
        if (0..self.vertex_count()).any(|v| self.degree(v) != full) {
            return None;
        }
        let reps = self.tree_words.iter().map(Word::inverse).collect();
        Some((self.vertex_count(), reps))
    }
}

/// Free basis of the subgroup `{w : w·ρ ∈ sub}` of `F_rank`, where `ρ` sends
/// the letter `x_j` to `steps[j-1]`. Vertices of the Schreier graph are the
/// canonical representatives modulo `sub`; the quotient reached from 0 must
/// be finite.
pub fn schreier_basis(rank: usize, steps: &[IVec], sub: &Lattice) -> Vec<Word> {
    assert_eq!(steps.len(), rank, "one step vector per letter");
    let k = sub.ambient();
    let mut index: BTreeMap<IVec, usize> = BTreeMap::new();
    let mut verts = vec![zero_vec(k)];
    index.insert(zero_vec(k), 0);
    let mut edges = Vec::new();
    let mut head = 0;
    while head < verts.len() {
        let c = verts[head].clone();
        for (j, step) in steps.iter().enumerate() {
            let next = sub.reduce(&vec_add(&c, step));
            let id = match index.get(&next) {
                Some(&id) => id,
                None => {
                    verts.push(next.clone());
                    index.insert(next, verts.len() - 1);
                    verts.len() - 1
                }
            };
            edges.push((head, j + 1, id));
        }
        head += 1;
    }
    StallingsGraph::from_edges(rank, verts.len(), &edges).basis
}

/// Basis of `H ∩ H'` with each basis word expressed over both input bases.
#[derive(Clone, Debug)]
pub struct Pullback {
    pub graph: StallingsGraph,
    pub vbasis: Vec<Word>,
    pub expr_h: Vec<Word>,
    pub expr_h2: Vec<Word>,
}

fn product(a: &Automaton, b: &Automaton, start: (usize, usize)) -> (Automaton, Vec<(usize, usize)>) {
    let rank = a.rank;
    let mut index: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut states = vec![start];
    index.insert(start, 0);
    let mut adj: Vec<Vec<Option<usize>>> = Vec::new();
    let mut head = 0;
    while head < states.len() {
        let (p, q) = states[head];
        let mut row = vec![None; 2 * rank];
        for (s, slot_target) in row.iter_mut().enumerate() {
            let l = slot_letter(s);
            if let (Some(p2), Some(q2)) = (a.step(p, l), b.step(q, l)) {
                let next = states.len();
                let id = *index.entry((p2, q2)).or_insert(next);
                if id == next {
                    states.push((p2, q2));
                }
                *slot_target = Some(id);
            }
        }
        adj.push(row);
        head += 1;
    }
    (Automaton { rank, adj }, states)
}

pub fn pullback_basis(h: &StallingsGraph, h2: &StallingsGraph) -> Pullback {
    assert_eq!(h.aut.rank, h2.aut.rank, "rank mismatch");
    let (prod, _) = product(&h.aut, &h2.aut, (0, 0));
    let graph = StallingsGraph::from_automaton(&prod, 0);
    let vbasis = graph.basis.clone();
    let expr_h = vbasis.iter().map(|v| h.express(v).expect("in H")).collect();
    let expr_h2 = vbasis.iter().map(|v| h2.express(v).expect("in H'")).collect();
    Pullback { graph, vbasis, expr_h, expr_h2 }
}

/// The graph of `H` with a hair reading `u` into the basepoint; returns the
/// automaton, the hair start and the basepoint.
fn hair_automaton(u: &Word, h: &StallingsGraph) -> (Automaton, usize, usize) {
    let mut g = RawGraph::new(h.aut.rank, h.vertex_count());
    for &(a, gen, b) in &h.edges {
        g.add_edge(a, gen as i32, b);
    }
    let s = g.add_vertex();
    g.add_path(s, u, 0);
    let (aut, ids) = g.fold();
    (aut, ids[s], ids[0])
}

/// Some `v₀ ∈ u·H ∩ u2·H2`, present iff the cosets meet.
pub fn free_coset_intersect(
    u: &Word,
    h: &StallingsGraph,
    u2: &Word,
    h2: &StallingsGraph,
) -> Option<Word> {
    // v ∈ uH iff reading v from the hair start ends at the basepoint
    let (a, s, base) = hair_automaton(u, h);
    let (b, s2, base2) = hair_automaton(u2, h2);
    let (prod, states) = product(&a, &b, (s, s2));
    let target = states.iter().position(|&st| st == (base, base2))?;
    // shortest path by breadth-first search
    let mut prev: Vec<Option<(usize, i32)>> = vec![None; prod.len()];
    let mut seen = vec![false; prod.len()];
    seen[0] = true;
    let mut queue = VecDeque::from([0]);
    while let Some(v) = queue.pop_front() {
        for sl in 0..2 * prod.rank {
            if let Some(t) = prod.adj[v][sl] {
                if !seen[t] {
                    seen[t] = true;
                    prev[t] = Some((v, slot_letter(sl)));
                    queue.push_back(t);
                }
            }
        }
    }
    let mut letters = Vec::new();
    let mut v = target;
    while let Some((p, l)) = prev[v] {
        letters.push(l);
        v = p;
    }
    letters.reverse();
    Some(Word::from_letters(h.aut.rank, letters))
}

/// Orders words by shortlex; handy for deterministic output.
pub fn sort_words(ws: &mut [Word]) {
    ws.sort_by(|a, b| a.shortlex_cmp(b));
}

/// Exponent of `w` as a power of `root`, if it is one.
pub fn power_of(w: &Word, root: &Word) -> Option<BigInt> {
    if w.is_identity() {
        return Some(BigInt::zero());
    }
    let (z, k) = word_root(w)?;
    let k = BigInt::from(k);
    if &z == root {
        Some(k)
    } else if z == root.inverse() {
        Some(-k)
    } else {
        None
    }
}
