//! Exact integer linear algebra over ℤ: matrices, Hermite and Smith normal
//! forms, lattices (subgroups of ℤᵏ) and affine cosets of lattices.
//!
//! Vectors are row vectors and matrices act on the right (`x ↦ xA`), which
//! matches how the group code composes maps.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A row vector of big integers.
pub type IVec = Vec<BigInt>;

pub fn ivec(xs: &[i64]) -> IVec {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn zero_vec(k: usize) -> IVec {
    vec![BigInt::zero(); k]
}

pub fn unit_vec(k: usize, i: usize) -> IVec {
    let mut v = zero_vec(k);
    v[i] = BigInt::one();
    v
}

pub fn vec_add(a: &[BigInt], b: &[BigInt]) -> IVec {
    assert_eq!(a.len(), b.len(), "vector length mismatch");
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[BigInt], b: &[BigInt]) -> IVec {
    assert_eq!(a.len(), b.len(), "vector length mismatch");
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_neg(a: &[BigInt]) -> IVec {
    a.iter().map(|x| -x).collect()
}

pub fn vec_scale(a: &[BigInt], k: &BigInt) -> IVec {
    a.iter().map(|x| x * k).collect()
}

pub fn vec_dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    assert_eq!(a.len(), b.len(), "vector length mismatch");
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn vec_is_zero(a: &[BigInt]) -> bool {
    a.iter().all(Zero::is_zero)
}

/// Greatest common divisor of the entries, with `gcd(0) = 0`.
pub fn gcd_vec(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// Extended gcd: returns `(g, s, t)` with `g = s·a + t·b` and `g ≥ 0`.
pub fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (BigInt::one(), BigInt::zero());
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while !r1.is_zero() {
        let q = r0.div_floor(&r1);
        let r2 = &r0 - &q * &r1;
        r0 = std::mem::replace(&mut r1, r2);
        let s2 = &s0 - &q * &s1;
        s0 = std::mem::replace(&mut s1, s2);
        let t2 = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t2);
    }
    if r0.is_negative() {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// `d | x` with the convention that `0 | x` iff `x = 0`.
pub fn divides(d: &BigInt, x: &BigInt) -> bool {
    if d.is_zero() {
        x.is_zero()
    } else {
        (x % d).is_zero()
    }
}

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMat { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows; `cols` is needed when there are no rows.
    pub fn from_rows(cols: usize, rows: Vec<IVec>) -> Self {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "row length mismatch");
            data.extend(row);
        }
        IntMat { rows: r, cols, data }
    }

    pub fn from_i64(cols: usize, rows: &[&[i64]]) -> Self {
        Self::from_rows(cols, rows.iter().map(|r| ivec(r)).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<IVec> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> IVec {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[BigInt]) -> IVec {
        assert_eq!(v.len(), self.rows, "vector length mismatch");
        let mut out = zero_vec(self.cols);
        for (i, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o += a * self.get(i, j);
            }
        }
        out
    }

    pub fn add(&self, other: &IntMat) -> IntMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix shape mismatch");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        IntMat { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &IntMat) -> IntMat {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> IntMat {
        IntMat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| -a).collect() }
    }

    pub fn pow(&self, k: u32) -> IntMat {
        assert_eq!(self.rows, self.cols, "power of a non-square matrix");
        let mut acc = Self::identity(self.rows);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.cols, "column mismatch in vstack");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        IntMat { rows: self.rows + other.rows, cols: self.cols, data }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[dst] += k · row[src]`
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        for j in 0..self.cols {
            let v = &self.data[src * self.cols + j] * k;
            self.data[dst * self.cols + j] += v;
        }
    }

    /// `col[dst] += k · col[src]`
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        for i in 0..self.rows {
            let v = &self.data[i * self.cols + src] * k;
            self.data[i * self.cols + dst] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self.data[i * self.cols + j];
            self.data[i * self.cols + j] = v;
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    a.set(i, j, v);
                }
            }
            prev = a.get(k, k).clone();
        }
        sign * a.get(n - 1, n - 1)
    }

    /// Inverse over ℤ, present iff the matrix is square with determinant ±1.
    pub fn inverse(&self) -> Option<IntMat> {
        if self.rows != self.cols {
            return None;
        }
        let h = hnf(self);
        (h.h == IntMat::identity(self.rows)).then_some(h.u)
    }
}

impl fmt::Display for IntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let parts: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            write!(f, "{}", parts.join(","))?;
        }
        write!(f, "]")
    }
}

/// Row Hermite normal form `U·M = H` with `U` unimodular.
///
/// The first `pivots.len()` rows of `H` are nonzero and in echelon form with
/// positive pivots and entries above each pivot reduced into `[0, pivot)`;
/// the remaining rows are zero, so the matching rows of `U` span the left
/// kernel of `M`.
#[derive(Clone, Debug)]
pub struct Hnf {
    pub h: IntMat,
    pub u: IntMat,
    pub pivots: Vec<usize>,
}

pub fn hnf(m: &IntMat) -> Hnf {
    let rows = m.rows;
    let mut h = m.clone();
    let mut u = IntMat::identity(rows);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        if r == rows {
            break;
        }
        loop {
            let best = (r..rows)
                .filter(|&i| !h.get(i, c).is_zero())
                .min_by(|&i, &j| h.get(i, c).abs().cmp(&h.get(j, c).abs()));
            let Some(p) = best else { break };
            h.swap_rows(r, p);
            u.swap_rows(r, p);
            let mut clean = true;
            for i in r + 1..rows {
                if h.get(i, c).is_zero() {
                    continue;
                }
                let q = -h.get(i, c).div_floor(h.get(r, c));
                h.add_row(i, r, &q);
                u.add_row(i, r, &q);
                if !h.get(i, c).is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if h.get(r, c).is_zero() {
            continue;
        }
        if h.get(r, c).is_negative() {
            h.negate_row(r);
            u.negate_row(r);
        }
        for i in 0..r {
            let q = -h.get(i, c).div_floor(h.get(r, c));
            if !q.is_zero() {
                h.add_row(i, r, &q);
                u.add_row(i, r, &q);
            }
        }
        pivots.push(c);
        r += 1;
    }
    Hnf { h, u, pivots }
}

/// Smith normal form `U·M·V = D`.
#[derive(Clone, Debug)]
pub struct Snf {
    pub u: IntMat,
    pub d: IntMat,
    pub v: IntMat,
    pub divisors: Vec<BigInt>,
}

pub fn smith_normal_form(m: &IntMat) -> Snf {
    let (rows, cols) = (m.rows, m.cols);
    let mut d = m.clone();
    let mut u = IntMat::identity(rows);
    let mut v = IntMat::identity(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let x = d.get(i, j);
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < d.get(bi, bj).abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        d.swap_rows(t, bi);
        u.swap_rows(t, bi);
        d.swap_cols(t, bj);
        v.swap_cols(t, bj);
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if !d.get(i, t).is_zero() {
                    let q = -d.get(i, t).div_floor(d.get(t, t));
                    d.add_row(i, t, &q);
                    u.add_row(i, t, &q);
                    clean &= d.get(i, t).is_zero();
                }
            }
            for j in t + 1..cols {
                if !d.get(t, j).is_zero() {
                    let q = -d.get(t, j).div_floor(d.get(t, t));
                    d.add_col(j, t, &q);
                    v.add_col(j, t, &q);
                    clean &= d.get(t, j).is_zero();
                }
            }
            if !clean {
                // A smaller remainder sits in row or column t: make it the pivot.
                let mut pos = (t, t);
                for i in t + 1..rows {
                    if !d.get(i, t).is_zero() && d.get(i, t).abs() < d.get(pos.0, pos.1).abs() {
                        pos = (i, t);
                    }
                }
                for j in t + 1..cols {
                    if !d.get(t, j).is_zero() && d.get(t, j).abs() < d.get(pos.0, pos.1).abs() {
                        pos = (t, j);
                    }
                }
                d.swap_rows(t, pos.0);
                u.swap_rows(t, pos.0);
                d.swap_cols(t, pos.1);
                v.swap_cols(t, pos.1);
                continue;
            }
            let bad = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !(d.get(i, j) % d.get(t, t)).is_zero()));
            match bad {
                Some(i) => {
                    let one = BigInt::one();
                    d.add_row(t, i, &one);
                    u.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    let divisors = (0..rows.min(cols))
        .map(|i| d.get(i, i).clone())
        .take_while(|x| !x.is_zero())
        .collect();
    Snf { u, d, v, divisors }
}

/// A subgroup of ℤᵏ stored by its row HNF basis.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Lattice {
    basis: IntMat,
    pivots: Vec<usize>,
}

impl Lattice {
    pub fn zero(dim: usize) -> Self {
        Lattice { basis: IntMat::zeros(0, dim), pivots: Vec::new() }
    }

    pub fn full(dim: usize) -> Self {
        Lattice { basis: IntMat::identity(dim), pivots: (0..dim).collect() }
    }

    pub fn from_generators(dim: usize, gens: &[IVec]) -> Self {
        let m = IntMat::from_rows(dim, gens.to_vec());
        Self::from_matrix(&m)
    }

    /// The lattice spanned by the rows of `m`.
    pub fn from_matrix(m: &IntMat) -> Self {
        let h = hnf(m);
        let rank = h.pivots.len();
        let rows = (0..rank).map(|i| h.h.row(i).to_vec()).collect();
        Lattice { basis: IntMat::from_rows(m.cols, rows), pivots: h.pivots }
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }

    pub fn basis(&self) -> &IntMat {
        &self.basis
    }

    pub fn basis_vecs(&self) -> Vec<IVec> {
        self.basis.row_vecs()
    }

    /// Canonical representative of `v + L`: each pivot coordinate lands in
    /// `[0, pivot)`.
    pub fn reduce(&self, v: &[BigInt]) -> IVec {
        self.reduce_with_coords(v).0
    }

    /// Returns `(r, c)` with `v = r + c·B`.
    pub fn reduce_with_coords(&self, v: &[BigInt]) -> (IVec, IVec) {
        assert_eq!(v.len(), self.ambient(), "vector length mismatch");
        let mut r = v.to_vec();
        let mut coords = zero_vec(self.rank());
        for (i, &c) in self.pivots.iter().enumerate() {
            let q = r[c].div_floor(self.basis.get(i, c));
            if !q.is_zero() {
                for j in c..self.ambient() {
                    r[j] -= &q * self.basis.get(i, j);
                }
                coords[i] = q;
            }
        }
        (r, coords)
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        vec_is_zero(&self.reduce(v))
    }

    /// Coordinates of `v` in the HNF basis, present iff `v ∈ L`.
    pub fn coords(&self, v: &[BigInt]) -> Option<IVec> {
        let (r, c) = self.reduce_with_coords(v);
        vec_is_zero(&r).then_some(c)
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.basis_vecs().iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Lattice) -> Lattice {
        Lattice::from_matrix(&self.basis.vstack(&other.basis))
    }

    pub fn intersect(&self, other: &Lattice) -> Lattice {
        assert_eq!(self.ambient(), other.ambient(), "ambient mismatch");
        // y·B = z·B'  ⇔  (y,z)·[B; -B'] = 0
        let stacked = self.basis.vstack(&other.basis.neg());
        let kernel = left_kernel(&stacked);
        let r = self.rank();
        let gens: Vec<IVec> = kernel
            .basis_vecs()
            .iter()
            .map(|k| self.basis.vec_mul(&k[..r]))
            .collect();
        Lattice::from_generators(self.ambient(), &gens)
    }

    /// `{x·A : x ∈ L}`
    pub fn image(&self, a: &IntMat) -> Lattice {
        Lattice::from_matrix(&self.basis.mul(a))
    }

    /// `{x : x·A ∈ L}`
    pub fn preimage(&self, a: &IntMat) -> Lattice {
        lattice_preimage(a, self)
    }

    /// Index and canonical coset representatives of `L` in ℤᵏ, present iff
    /// `L` has full rank. The representatives come from the Smith form and
    /// are then reduced canonically and sorted.
    pub fn index(&self) -> Option<(BigInt, Vec<IVec>)> {
        lattice_index(self)
    }
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.basis_vecs().iter().map(|v| fmt_vec(v)).collect();
        write!(f, "<{}>", parts.join(", "))
    }
}

pub fn fmt_vec(v: &[BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

/// `{x : x·A = 0}`
pub fn left_kernel(a: &IntMat) -> Lattice {
    let h = hnf(a);
    let rank = h.pivots.len();
    let gens: Vec<IVec> = (rank..a.rows).map(|i| h.u.row(i).to_vec()).collect();
    Lattice::from_generators(a.rows, &gens)
}

/// Either empty or `offset + direction`, with the offset canonically reduced.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum AffineCoset {
    Empty,
    Coset { offset: IVec, direction: Lattice },
}

impl AffineCoset {
    pub fn new(offset: IVec, direction: Lattice) -> Self {
        let offset = direction.reduce(&offset);
        AffineCoset::Coset { offset, direction }
    }

    pub fn lattice(direction: Lattice) -> Self {
        let k = direction.ambient();
        Self::new(zero_vec(k), direction)
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, AffineCoset::Empty)
    }

    pub fn offset(&self) -> Option<&IVec> {
        match self {
            AffineCoset::Empty => None,
            AffineCoset::Coset { offset, .. } => Some(offset),
        }
    }

    pub fn direction(&self) -> Option<&Lattice> {
        match self {
            AffineCoset::Empty => None,
            AffineCoset::Coset { direction, .. } => Some(direction),
        }
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        match self {
            AffineCoset::Empty => false,
            AffineCoset::Coset { offset, direction } => direction.contains(&vec_sub(v, offset)),
        }
    }

    pub fn translate(&self, v: &[BigInt]) -> Self {
        match self {
            AffineCoset::Empty => AffineCoset::Empty,
            AffineCoset::Coset { offset, direction } => {
                Self::new(vec_add(offset, v), direction.clone())
            }
        }
    }

    pub fn intersect(&self, other: &AffineCoset) -> AffineCoset {
        coset_intersect(self, other)
    }

    /// `{x : x·A ∈ self}`
    pub fn preimage(&self, a: &IntMat) -> AffineCoset {
        let AffineCoset::Coset { offset, direction } = self else {
            return AffineCoset::Empty;
        };
        // x·A - y·B = offset
        let p = a.rows();
        let stacked = a.vstack(&direction.basis().neg());
        match solve_linear(&stacked, offset) {
            AffineCoset::Empty => AffineCoset::Empty,
            AffineCoset::Coset { offset: sol, direction: ker } => {
                let gens: Vec<IVec> = ker.basis_vecs().iter().map(|k| k[..p].to_vec()).collect();
                AffineCoset::new(sol[..p].to_vec(), Lattice::from_generators(p, &gens))
            }
        }
    }
}

impl fmt::Display for AffineCoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AffineCoset::Empty => write!(f, "empty"),
            AffineCoset::Coset { offset, direction } => {
                write!(f, "{} + {}", fmt_vec(offset), direction)
            }
        }
    }
}

/// All `x ∈ ℤᵖ` with `x·A = b`.
pub fn solve_linear(a: &IntMat, b: &[BigInt]) -> AffineCoset {
    assert_eq!(b.len(), a.cols(), "right-hand side length mismatch");
    let h = hnf(a);
    let rank = h.pivots.len();
    let mut y = zero_vec(rank);
    for (i, &c) in h.pivots.iter().enumerate() {
        let mut rhs = b[c].clone();
        for (k, yk) in y.iter().enumerate().take(i) {
            rhs -= yk * h.h.get(k, c);
        }
        let (q, r) = rhs.div_mod_floor(h.h.get(i, c));
        if !r.is_zero() {
            return AffineCoset::Empty;
        }
        y[i] = q;
    }
    let mut reached = zero_vec(a.cols());
    for (i, yi) in y.iter().enumerate() {
        for (j, slot) in reached.iter_mut().enumerate() {
            *slot += yi * h.h.get(i, j);
        }
    }
    if reached != b {
        return AffineCoset::Empty;
    }
    let mut x = zero_vec(a.rows());
    for (i, yi) in y.iter().enumerate() {
        for (j, slot) in x.iter_mut().enumerate() {
            *slot += yi * h.u.get(i, j);
        }
    }
    let kernel: Vec<IVec> = (rank..a.rows()).map(|i| h.u.row(i).to_vec()).collect();
    AffineCoset::new(x, Lattice::from_generators(a.rows(), &kernel))
}

pub fn lattice_preimage(a: &IntMat, l: &Lattice) -> Lattice {
    assert_eq!(a.cols(), l.ambient(), "ambient mismatch");
    match AffineCoset::lattice(l.clone()).preimage(a) {
        AffineCoset::Coset { direction, .. } => direction,
        AffineCoset::Empty => unreachable!("0 always lies in a preimage"),
    }
}

pub fn coset_intersect(c1: &AffineCoset, c2: &AffineCoset) -> AffineCoset {
    let (
        AffineCoset::Coset { offset: o1, direction: l1 },
        AffineCoset::Coset { offset: o2, direction: l2 },
    ) = (c1, c2)
    else {
        return AffineCoset::Empty;
    };
    // o1 + y·B1 = o2 + z·B2
    let r = l1.rank();
    let stacked = l1.basis().vstack(&l2.basis().neg());
    match solve_linear(&stacked, &vec_sub(o2, o1)) {
        AffineCoset::Empty => AffineCoset::Empty,
        AffineCoset::Coset { offset: yz, .. } => {
            let point = vec_add(o1, &l1.basis().vec_mul(&yz[..r]));
            AffineCoset::new(point, l1.intersect(l2))
        }
    }
}

pub fn lattice_index(l: &Lattice) -> Option<(BigInt, Vec<IVec>)> {
    let k = l.ambient();
    if l.rank() < k {
        return None;
    }
    let snf = smith_normal_form(l.basis());
    // B = U⁻¹·D·V⁻¹ and U⁻¹ is unimodular, so L is spanned by the rows of D·V⁻¹.
    let vinv = snf.v.inverse().expect("SNF column transform is unimodular");
    let index: BigInt = snf.divisors.iter().product();
    let mut reps = Vec::new();
    let mut r = zero_vec(k);
    loop {
        reps.push(l.reduce(&vinv.vec_mul(&r)));
        // odometer over the box ∏[0, dᵢ)
        let mut i = 0;
        while i < k {
            r[i] += 1;
            if r[i] < snf.divisors[i] {
                break;
            }
            r[i] = BigInt::zero();
            i += 1;
        }
        if i == k {
            break;
        }
    }
    reps.sort();
    Some((index, reps))
}

/// A unimodular matrix whose first row is the primitive vector `v`.
pub fn unimodular_completion(v: &[BigInt]) -> IntMat {
    assert!(gcd_vec(v).is_one(), "vector is not primitive");
    // U·vᵀ = e₁ᵀ, so v·Uᵀ = e₁ and v is the first row of (Uᵀ)⁻¹.
    let col = IntMat::from_rows(1, v.iter().map(|x| vec![x.clone()]).collect());
    let h = hnf(&col);
    h.u.transpose().inverse().expect("transform is unimodular")
}

/// A vector `c` with `v·c = 1`, for primitive `v`.
pub fn bezout_vector(v: &[BigInt]) -> IVec {
    let col = IntMat::from_rows(1, v.iter().map(|x| vec![x.clone()]).collect());
    let h = hnf(&col);
    assert!(h.h.get(0, 0).is_one(), "vector is not primitive");
    h.u.row(0).to_vec()
}
