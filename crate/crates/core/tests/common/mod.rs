//! Brute-force oracles. Everything here works on plain residue arrays and
//! exhaustive search so it shares no algorithm with the library.
#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::Arc;

use proptest::prelude::*;
use roiter_core::{AlgebraPresentation, Field, Matrix, Representation};

/// Dense matrix over Z/p, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Om {
    pub r: usize,
    pub c: usize,
    pub d: Vec<u32>,
}

impl Om {
    pub fn zero(r: usize, c: usize) -> Om {
        Om { r, c, d: vec![0; r * c] }
    }
    pub fn id(n: usize) -> Om {
        let mut m = Om::zero(n, n);
        for i in 0..n {
            m.d[i * n + i] = 1;
        }
        m
    }
    pub fn at(&self, i: usize, j: usize) -> u32 {
        self.d[i * self.c + j]
    }
    pub fn mul(&self, o: &Om, p: u32) -> Om {
        assert_eq!(self.c, o.r);
        let mut out = Om::zero(self.r, o.c);
        for i in 0..self.r {
            for j in 0..o.c {
                let mut s = 0;
                for k in 0..self.c {
                    s += self.at(i, k) * o.at(k, j);
                }
                out.d[i * o.c + j] = s % p;
            }
        }
        out
    }
    pub fn add(&self, o: &Om, c: u32, p: u32) -> Om {
        Om { r: self.r, c: self.c, d: self.d.iter().zip(&o.d).map(|(a, b)| (a + c * b) % p).collect() }
    }
    pub fn is_zero(&self) -> bool {
        self.d.iter().all(|&v| v == 0)
    }
    pub fn from_lib(m: &Matrix) -> Om {
        Om { r: m.rows(), c: m.cols(), d: m.data().iter().map(|&v| v as u32).collect() }
    }
    pub fn to_lib(&self, f: Field) -> Matrix {
        Matrix::from_vec(f, self.r, self.c, self.d.iter().map(|&v| v as u8).collect()).unwrap()
    }
}

fn inv_mod(a: u32, p: u32) -> u32 {
    (1..p).find(|b| a * b % p == 1).expect("unit")
}

/// Rank by column-major elimination scanning pivots from the last column backwards.
pub fn rank_oracle(m: &Om, p: u32) -> usize {
    let mut rows: Vec<Vec<u32>> = (0..m.r).map(|i| (0..m.c).map(|j| m.at(i, j)).collect()).collect();
    let mut rank = 0;
    for col in (0..m.c).rev() {
        let Some(piv) = (rank..rows.len()).find(|&i| rows[i][col] != 0) else { continue };
        rows.swap(rank, piv);
        let inv = inv_mod(rows[rank][col], p);
        for i in 0..rows.len() {
            if i != rank && rows[i][col] != 0 {
                let f = rows[i][col] * inv % p;
                for j in 0..m.c {
                    rows[i][j] = (rows[i][j] + (p - f) * rows[rank][j]) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn inverse_oracle(m: &Om, p: u32) -> Option<Om> {
    let n = m.r;
    let mut a: Vec<Vec<u32>> =
        (0..n).map(|i| (0..n).map(|j| m.at(i, j)).chain((0..n).map(|j| (i == j) as u32)).collect()).collect();
    for col in 0..n {
        let piv = (col..n).find(|&i| a[i][col] != 0)?;
        a.swap(col, piv);
        let inv = inv_mod(a[col][col], p);
        for v in a[col].iter_mut() {
            *v = *v * inv % p;
        }
        for i in 0..n {
            if i != col && a[i][col] != 0 {
                let f = a[i][col];
                for j in 0..2 * n {
                    a[i][j] = (a[i][j] + (p - f) * a[col][j]) % p;
                }
            }
        }
    }
    Some(Om { r: n, c: n, d: a.iter().flat_map(|row| row[n..].to_vec()).collect() })
}

pub fn all_matrices(p: u32, r: usize, c: usize) -> Vec<Om> {
    let n = r * c;
    let total = (p as usize).pow(n as u32);
    (0..total)
        .map(|mut k| {
            let mut d = vec![0; n];
            for v in d.iter_mut() {
                *v = (k % p as usize) as u32;
                k /= p as usize;
            }
            Om { r, c, d }
        })
        .collect()
}

/// `GL_n(F_p)` as pairs `(g, g^{-1})`.
pub fn gl(p: u32, n: usize) -> Vec<(Om, Om)> {
    all_matrices(p, n, n).into_iter().filter_map(|g| inverse_oracle(&g, p).map(|h| (g, h))).collect()
}

/// Cartesian product of lists.
pub fn product<T: Clone>(lists: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut out = vec![vec![]];
    for l in lists {
        let mut next = Vec::with_capacity(out.len() * l.len());
        for prefix in &out {
            for x in l {
                let mut v = prefix.clone();
                v.push(x.clone());
                next.push(v);
            }
        }
        out = next;
    }
    out
}

pub struct Alg {
    pub p: u32,
    pub n: usize,
    /// `(source, target)` per arrow.
    pub arrows: Vec<(usize, usize)>,
    pub lib: Arc<AlgebraPresentation>,
}

impl Alg {
    pub fn new(lib: &Arc<AlgebraPresentation>) -> Alg {
        let q = lib.quiver();
        Alg {
            p: lib.field().p() as u32,
            n: q.num_vertices(),
            arrows: q.arrows().iter().map(|a| (a.source, a.target)).collect(),
            lib: lib.clone(),
        }
    }

    /// Relations evaluated with oracle arithmetic.
    pub fn satisfies_relations(&self, dims: &[usize], maps: &[Om]) -> bool {
        self.lib.relations().iter().all(|r| {
            let mut acc = Om::zero(dims[r.target], dims[r.source]);
            for (c, path) in &r.terms {
                let mut m = Om::id(dims[r.source]);
                for &a in path {
                    m = maps[a].mul(&m, self.p);
                }
                acc = acc.add(&m, *c as u32, self.p);
            }
            acc.is_zero()
        })
    }

    pub fn all_reps(&self, dims: &[usize]) -> Vec<Vec<Om>> {
        let lists: Vec<Vec<Om>> =
            self.arrows.iter().map(|&(s, t)| all_matrices(self.p, dims[t], dims[s])).collect();
        product(&lists).into_iter().filter(|maps| self.satisfies_relations(dims, maps)).collect()
    }

    pub fn act(&self, g: &[(Om, Om)], maps: &[Om]) -> Vec<Om> {
        self.arrows.iter().zip(maps).map(|(&(s, t), m)| g[t].0.mul(m, self.p).mul(&g[s].1, self.p)).collect()
    }

    pub fn is_intertwiner(&self, x: &[Om], y: &[Om], f: &[Om]) -> bool {
        self.arrows
            .iter()
            .enumerate()
            .all(|(a, &(s, t))| y[a].mul(&f[s], self.p) == f[t].mul(&x[a], self.p))
    }

    /// Every homomorphism, by exhaustive search over vertex-map tuples.
    pub fn homs(&self, xd: &[usize], x: &[Om], yd: &[usize], y: &[Om]) -> Vec<Vec<Om>> {
        let lists: Vec<Vec<Om>> = (0..self.n).map(|v| all_matrices(self.p, yd[v], xd[v])).collect();
        product(&lists).into_iter().filter(|f| self.is_intertwiner(x, y, f)).collect()
    }

    /// No idempotent endomorphism besides 0 and 1 (exhaustive).
    pub fn is_indecomposable(&self, dims: &[usize], maps: &[Om]) -> bool {
        if dims.iter().sum::<usize>() == 0 {
            return false;
        }
        let ends = self.homs(dims, maps, dims, maps);
        ends.iter().all(|e| {
            let idem = e.iter().all(|m| m.mul(m, self.p) == *m);
            let zero = e.iter().all(Om::is_zero);
            let one = e.iter().zip(dims).all(|(m, &d)| *m == Om::id(d));
            !idem || zero || one
        })
    }

    pub fn is_iso(&self, xd: &[usize], x: &[Om], yd: &[usize], y: &[Om]) -> bool {
        xd == yd
            && self
                .homs(xd, x, yd, y)
                .iter()
                .any(|f| f.iter().zip(xd).all(|(m, &d)| rank_oracle(m, self.p) == d))
    }

    pub fn from_lib(x: &Representation) -> (Vec<usize>, Vec<Om>) {
        (x.dims().to_vec(), x.maps().iter().map(Om::from_lib).collect())
    }

    pub fn to_lib(&self, dims: &[usize], maps: &[Om]) -> Representation {
        let f = self.lib.field();
        Representation::new(self.lib.clone(), dims.to_vec(), maps.iter().map(|m| m.to_lib(f)).collect()).unwrap()
    }
}

pub fn dim_vectors(n: usize, total: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in dim_vectors(n - 1, total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Isomorphism classes of representations with the given dimension vector, found
/// as orbits of `∏ GL(d_v)` on all matrix tuples. Returns one representative per
/// orbit together with a lookup from every tuple to its orbit index.
pub struct Orbits {
    pub reps: Vec<Vec<Om>>,
    pub index: HashMap<Vec<Om>, usize>,
}

pub fn orbits(alg: &Alg, dims: &[usize]) -> Orbits {
    let tuples = alg.all_reps(dims);
    let groups: Vec<Vec<(Om, Om)>> = dims.iter().map(|&d| gl(alg.p, d)).collect();
    let group = product(&groups);
    let mut index = HashMap::new();
    let mut reps = Vec::new();
    for t in tuples {
        if index.contains_key(&t) {
            continue;
        }
        let k = reps.len();
        for g in &group {
            index.insert(alg.act(g, &t), k);
        }
        reps.push(t);
    }
    Orbits { reps, index }
}

/// Indecomposable classes of length `1..=max_len` by dimension vector.
pub fn raw_indecomposables(alg: &Alg, max_len: usize) -> Vec<(Vec<usize>, Orbits, Vec<bool>)> {
    let mut out = Vec::new();
    for len in 1..=max_len {
        for dims in dim_vectors(alg.n, len) {
            let o = orbits(alg, &dims);
            let flags = o.reps.iter().map(|r| alg.is_indecomposable(&dims, r)).collect();
            out.push((dims, o, flags));
        }
    }
    out
}

/// A subspace of `F_p^n` as the set of all its elements.
pub type Elems = BTreeSet<Vec<u32>>;

pub fn vectors(p: u32, n: usize) -> Vec<Vec<u32>> {
    all_matrices(p, 1, n).into_iter().map(|m| m.d).collect()
}

pub fn span(p: u32, n: usize, gens: &[Vec<u32>]) -> Elems {
    let mut s: Elems = [vec![0; n]].into_iter().collect();
    for g in gens {
        let old: Vec<Vec<u32>> = s.iter().cloned().collect();
        for c in 1..p {
            for v in &old {
                s.insert(v.iter().zip(g).map(|(a, b)| (a + c * b) % p).collect());
            }
        }
    }
    s
}

pub fn all_subspaces(p: u32, n: usize) -> Vec<Elems> {
    let vs = vectors(p, n);
    let mut seen: HashSet<Elems> = HashSet::new();
    let mut frontier: Vec<Elems> = vec![span(p, n, &[])];
    seen.insert(frontier[0].clone());
    while let Some(s) = frontier.pop() {
        for v in &vs {
            if !s.contains(v) {
                let gens: Vec<Vec<u32>> = s.iter().cloned().chain([v.clone()]).collect();
                let t = span(p, n, &gens);
                if seen.insert(t.clone()) {
                    frontier.push(t);
                }
            }
        }
    }
    let mut out: Vec<Elems> = seen.into_iter().collect();
    out.sort();
    out
}

pub fn apply(m: &Om, v: &[u32], p: u32) -> Vec<u32> {
    (0..m.r).map(|i| (0..m.c).map(|j| m.at(i, j) * v[j]).sum::<u32>() % p).collect()
}

/// Every arrow-stable tuple of subspaces.
pub fn brute_submodules(alg: &Alg, dims: &[usize], maps: &[Om]) -> Vec<Vec<Elems>> {
    let subs: Vec<Vec<Elems>> = dims.iter().map(|&d| all_subspaces(alg.p, d)).collect();
    product(&subs)
        .into_iter()
        .filter(|u| {
            alg.arrows
                .iter()
                .zip(maps)
                .all(|(&(s, t), m)| u[s].iter().all(|v| u[t].contains(&apply(m, v, alg.p))))
        })
        .collect()
}

fn basis_of(p: u32, s: &Elems) -> Vec<Vec<u32>> {
    let mut basis: Vec<Vec<u32>> = Vec::new();
    let n = s.iter().next().map_or(0, Vec::len);
    for v in s {
        if !span(p, n, &basis).contains(v) {
            basis.push(v.clone());
        }
    }
    basis
}

fn coords(p: u32, basis: &[Vec<u32>], v: &[u32]) -> Vec<u32> {
    for c in vectors(p, basis.len()) {
        let w: Vec<u32> =
            (0..v.len()).map(|i| basis.iter().zip(&c).map(|(b, k)| b[i] * k).sum::<u32>() % p).collect();
        if w == v {
            return c;
        }
    }
    panic!("vector outside the span");
}

/// The submodule as a representation in its own coordinates.
pub fn restrict_to(alg: &Alg, maps: &[Om], u: &[Elems]) -> (Vec<usize>, Vec<Om>) {
    let bases: Vec<Vec<Vec<u32>>> = u.iter().map(|s| basis_of(alg.p, s)).collect();
    let dims: Vec<usize> = bases.iter().map(Vec::len).collect();
    let new_maps = alg
        .arrows
        .iter()
        .zip(maps)
        .map(|(&(s, t), m)| {
            let mut out = Om::zero(dims[t], dims[s]);
            for (j, b) in bases[s].iter().enumerate() {
                let c = coords(alg.p, &bases[t], &apply(m, b, alg.p));
                for (i, v) in c.into_iter().enumerate() {
                    out.d[i * dims[s] + j] = v;
                }
            }
            out
        })
        .collect();
    (dims, new_maps)
}

/// `Σ_{i∈I} 2^{-i}` scaled by `2^127`, exact for elements up to 127.
pub fn measure_key(m: &[u32]) -> u128 {
    m.iter().map(|&i| 1u128 << (127 - i)).sum()
}

/// Maximum over chains of indecomposable submodules of their length sets.
pub fn chain_measure(alg: &Alg, dims: &[usize], maps: &[Om]) -> Vec<u32> {
    let subs = brute_submodules(alg, dims, maps);
    let mut ind: Vec<(usize, Vec<Elems>)> = subs
        .into_iter()
        .filter(|u| {
            let (d, m) = restrict_to(alg, maps, u);
            alg.is_indecomposable(&d, &m)
        })
        .map(|u| (u.iter().map(|s| basis_of(alg.p, s).len()).sum(), u))
        .collect();
    ind.sort_by_key(|(l, _)| *l);
    let mut best: Vec<Vec<u32>> = Vec::new();
    for (i, (len, u)) in ind.iter().enumerate() {
        let mut b: Vec<u32> = Vec::new();
        for j in 0..i {
            let (lv, v) = &ind[j];
            if lv < len && v.iter().zip(u).all(|(a, c)| a.is_subset(c)) && measure_key(&best[j]) > measure_key(&b) {
                b = best[j].clone();
            }
        }
        b.push(*len as u32);
        best.push(b);
    }
    best.into_iter().max_by_key(|b| measure_key(b)).unwrap_or_default()
}

/// Whether `x` embeds in `m^r` for some `r <= |x|`, by trying multisets of homs.
pub fn embeds_in_power(alg: &Alg, x: &(Vec<usize>, Vec<Om>), m: &(Vec<usize>, Vec<Om>)) -> bool {
    let homs = alg.homs(&x.0, &x.1, &m.0, &m.1);
    let len: usize = x.0.iter().sum();
    if len == 0 {
        return true;
    }
    fn rec(alg: &Alg, xd: &[usize], homs: &[Vec<Om>], start: usize, left: usize, acc: &mut Vec<usize>) -> bool {
        if !acc.is_empty() {
            let injective = (0..alg.n).all(|v| {
                let rows: usize = acc.iter().map(|&k| homs[k][v].r).sum();
                let mut stacked = Om::zero(rows, xd[v]);
                let mut r0 = 0;
                for &k in acc.iter() {
                    let h = &homs[k][v];
                    for i in 0..h.r {
                        for j in 0..h.c {
                            stacked.d[(r0 + i) * xd[v] + j] = h.at(i, j);
                        }
                    }
                    r0 += h.r;
                }
                rank_oracle(&stacked, alg.p) == xd[v]
            });
            if injective {
                return true;
            }
        }
        if left == 0 {
            return false;
        }
        for k in start..homs.len() {
            acc.push(k);
            if rec(alg, xd, homs, k, left - 1, acc) {
                return true;
            }
            acc.pop();
        }
        false
    }
    rec(alg, &x.0, &homs, 0, len, &mut Vec::new())
}

/// Random representation of a hereditary algebra with the given dimension vector.
pub fn arb_rep(lib: Arc<AlgebraPresentation>, max_dim: usize) -> impl Strategy<Value = Representation> {
    let n = lib.num_vertices();
    let p = lib.field().p();
    proptest::collection::vec(0..=max_dim, n)
        .prop_flat_map(move |dims| {
            let lib = lib.clone();
            let sizes: Vec<usize> =
                lib.quiver().arrows().iter().map(|a| dims[a.source] * dims[a.target]).collect();
            let total: usize = sizes.iter().sum();
            (Just(dims), Just(lib), proptest::collection::vec(0..p, total))
        })
        .prop_filter_map("relations", |(dims, lib, entries)| {
            let f = lib.field();
            let mut it = entries.into_iter();
            let maps = lib
                .quiver()
                .arrows()
                .iter()
                .map(|a| {
                    let (r, c) = (dims[a.target], dims[a.source]);
                    Matrix::from_vec(f, r, c, it.by_ref().take(r * c).collect()).unwrap()
                })
                .collect();
            Representation::new(lib, dims, maps).ok()
        })
}
