//! Finite snapshots of subcategories: enumeration of indecomposables up to a length
//! bound, take-off measures, cogeneration closures, submodule-closure checks and
//! the embedding construction avoiding a given submodule.

use std::collections::HashMap;
use std::sync::Arc;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::ffla::{Field, Matrix, Subspace};
use crate::grmeasure::{gr_data, gr_submodule, GRMeasure, GrCache};
use crate::presentation::{simple, AlgebraPresentation};
use crate::repcore::{
    canonical_cmp, direct_sum, enumerate_submodules, fingerprint, hom_space, is_cogenerated, is_indecomposable,
    iso_test, Fingerprint, Morphism, Representation, Submodule, VertexMaps,
};
use crate::tame::tits_form_nonnegative;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Enumeration,
    Closure,
    Manual,
}

/// Pairwise non-isomorphic indecomposables of length at most `max_len`, sorted by
/// (measure, canonical order).
#[derive(Clone, Debug)]
pub struct SubcatSnapshot {
    pub alg: Arc<AlgebraPresentation>,
    pub max_len: usize,
    pub members: Vec<Representation>,
    pub measures: Vec<GRMeasure>,
    pub provenance: Provenance,
}

impl SubcatSnapshot {
    /// Seals a list of pairwise non-isomorphic indecomposables.
    pub fn new(
        alg: &Arc<AlgebraPresentation>,
        max_len: usize,
        members: Vec<Representation>,
        provenance: Provenance,
        caps: &Caps,
    ) -> Result<Self> {
        let cache = GrCache::new();
        let measures = members.par_iter().map(|m| cache.measure(m, caps)).collect::<Result<Vec<_>>>()?;
        let mut pairs: Vec<(GRMeasure, Representation)> = measures.into_iter().zip(members).collect();
        pairs.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| canonical_cmp(&a.1, &b.1)));
        let (measures, members) = pairs.into_iter().unzip();
        Ok(SubcatSnapshot { alg: alg.clone(), max_len, members, measures, provenance })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// `counts[n]`: number of members of length `n`.
    pub fn counts_by_length(&self) -> Vec<usize> {
        let mut counts = vec![0; self.max_len + 1];
        for m in &self.members {
            counts[m.length()] += 1;
        }
        counts
    }

    /// Index of the member isomorphic to `x`, if any.
    pub fn find(&self, x: &Representation, caps: &Caps) -> Result<Option<usize>> {
        let fp = fingerprint(x);
        for (i, m) in self.members.iter().enumerate() {
            if m.dims() == x.dims() && fingerprint(m) == fp && iso_test(m, x, caps)? {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    pub fn to_json(&self) -> Value {
        let q = self.alg.quiver();
        json!({
            "algebra": self.alg.name(),
            "max_len": self.max_len,
            "provenance": self.provenance,
            "counts_by_length": self.counts_by_length(),
            "members": self.members.iter().zip(&self.measures).map(|(m, mu)| {
                let maps: serde_json::Map<String, Value> = q.arrows().iter().zip(m.maps()).map(|(a, x)| {
                    let rows: Vec<Vec<u8>> = (0..x.rows()).map(|r| x.row(r).to_vec()).collect();
                    (a.label.clone(), json!(rows))
                }).collect();
                json!({"dims": m.dims(), "length": m.length(), "measure": mu, "maps": maps})
            }).collect::<Vec<_>>(),
        })
    }

    /// One line per length: `length<TAB>count<TAB>measures`.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("length\tcount\tmeasures\n");
        for (n, &c) in self.counts_by_length().iter().enumerate().skip(1) {
            let mut ms: Vec<String> = self
                .members
                .iter()
                .zip(&self.measures)
                .filter(|(m, _)| m.length() == n)
                .map(|(_, mu)| mu.to_string())
                .collect();
            ms.dedup();
            out.push_str(&format!("{n}\t{c}\t{}\n", ms.join(" ")));
        }
        out
    }
}

/// Default enumeration bound: over F_2 lengths up to 6 when the Tits form is
/// indefinite and 12 otherwise; over larger fields 4 and 8.
pub fn default_enumeration_bound(alg: &AlgebraPresentation) -> usize {
    let tame = tits_form_nonnegative(alg);
    match (alg.field().p(), tame) {
        (2, false) => 6,
        (2, true) => 12,
        (_, false) => 4,
        (_, true) => 8,
    }
}

fn check_enumeration_cap(alg: &AlgebraPresentation, max_len: usize, caps: &Caps) -> Result<()> {
    let bound = caps.enumerate_len.unwrap_or_else(|| default_enumeration_bound(alg));
    if max_len > bound {
        return Err(Error::cap("indecomposable enumeration", format!("length {max_len} exceeds the bound {bound}")));
    }
    Ok(())
}

/// Extension data of `S(v)` by `z`: representatives of a basis of
/// `Ext¹(S(v), z)`, as vectors in `⊕_{α: v→w} z_w` (arrows from `v` in order).
fn ext_basis(z: &Representation, v: usize) -> Vec<Vec<u8>> {
    let alg = z.algebra();
    let q = alg.quiver();
    let f = z.field();
    let out: Vec<usize> = q.arrows_from(v).collect();
    let mut offsets = HashMap::new();
    let mut total = 0;
    for &a in &out {
        offsets.insert(a, total);
        total += z.dim(q.arrow(a).target);
    }
    if total == 0 {
        return Vec::new();
    }
    // relation constraints: Σ c_i z(rest_i) x_{first_i} = 0
    let mut rows: Vec<Vec<u8>> = Vec::new();
    for r in alg.relations().iter().filter(|r| r.source == v) {
        let mut block = Matrix::zeros(f, z.dim(r.target), total);
        for (c, path) in &r.terms {
            let first = path[0];
            let act = z.path_action(q.arrow(first).target, &path[1..]);
            let off = offsets[&first];
            for i in 0..act.rows() {
                for j in 0..act.cols() {
                    let cur = block.get(i, off + j);
                    block.set(i, off + j, f.add(cur, f.mul(*c, act.get(i, j))));
                }
            }
        }
        for i in 0..block.rows() {
            rows.push(block.row(i).to_vec());
        }
    }
    let cocycles = if rows.is_empty() {
        Subspace::full(f, total)
    } else {
        Matrix::from_rows(f, &rows).expect("rectangular").null_space()
    };
    let mut span = Subspace::zero(f, total);
    for k in 0..z.dim(v) {
        let mut b = vec![0u8; total];
        for &a in &out {
            let img = z.map(a).column(k);
            b[offsets[&a]..offsets[&a] + img.len()].copy_from_slice(&img);
        }
        span.insert(b);
    }
    let mut reps = Vec::new();
    for c in cocycles.basis() {
        if span.insert(c.clone()) {
            reps.push(c.clone());
        }
    }
    reps
}

/// All `m`-dimensional subspaces of `F^e`, as reduced echelon bases.
fn grassmannian(f: Field, e: usize, m: usize) -> Vec<Vec<Vec<u8>>> {
    let mut out = Vec::new();
    let mut pivots = Vec::new();
    fn rec(f: Field, e: usize, m: usize, start: usize, pivots: &mut Vec<usize>, out: &mut Vec<Vec<Vec<u8>>>) {
        if pivots.len() == m {
            // free entries: row r, columns after pivot r that are not pivots
            let slots: Vec<(usize, usize)> = pivots
                .iter()
                .enumerate()
                .flat_map(|(r, &p)| (p + 1..e).filter(|c| !pivots.contains(c)).map(move |c| (r, c)))
                .collect();
            for vals in f.all_vectors(slots.len()) {
                let mut rows = vec![vec![0u8; e]; m];
                for (r, &p) in pivots.iter().enumerate() {
                    rows[r][p] = 1;
                }
                for (&(r, c), &x) in slots.iter().zip(&vals) {
                    rows[r][c] = x;
                }
                out.push(rows);
            }
            return;
        }
        for p in start..e {
            pivots.push(p);
            rec(f, e, m, p + 1, pivots, out);
            pivots.pop();
        }
    }
    rec(f, e, m, 0, &mut pivots, &mut out);
    out
}

/// The extension of `S(v)` by `⊕ parts` whose class on the `k`-th part is `cocycles[k]`.
fn glue(alg: &Arc<AlgebraPresentation>, v: usize, parts: &[(&Representation, Vec<u8>)]) -> Representation {
    let q = alg.quiver();
    let f = alg.field();
    let n = alg.num_vertices();
    let base = direct_sum(alg, &parts.iter().map(|p| p.0.clone()).collect::<Vec<_>>()).expect("same algebra");
    let mut dims = base.dims().to_vec();
    dims[v] += 1;
    let new = base.dim(v);
    // block offsets of each part at each vertex
    let mut offs = vec![vec![0usize; parts.len()]; n];
    for (w, row) in offs.iter_mut().enumerate() {
        let mut acc = 0;
        for (k, p) in parts.iter().enumerate() {
            row[k] = acc;
            acc += p.0.dim(w);
        }
    }
    let maps = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(id, a)| {
            let mut m = Matrix::zeros(f, dims[a.target], dims[a.source]);
            m.set_block(0, 0, base.map(id));
            if a.source == v {
                for (k, (z, c)) in parts.iter().enumerate() {
                    let off: usize = q.arrows_from(v).take_while(|&b| b != id).map(|b| z.dim(q.arrow(b).target)).sum();
                    for i in 0..z.dim(a.target) {
                        m.set(offs[a.target][k] + i, new, c[off + i]);
                    }
                }
            }
            m
        })
        .collect();
    Representation::new(alg.clone(), dims, maps).expect("extension satisfies the relations")
}

/// Multisets over `types` (with multiplicity bounds) of total length `target`.
fn multisets(types: &[(usize, usize)], target: usize) -> Vec<Vec<(usize, usize)>> {
    // types: (length, max multiplicity); result: (type index, multiplicity)
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(
        types: &[(usize, usize)],
        i: usize,
        left: usize,
        cur: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        if i == types.len() {
            return;
        }
        rec(types, i + 1, left, cur, out);
        let (len, max) = types[i];
        for m in 1..=max {
            if m * len > left {
                break;
            }
            cur.push((i, m));
            rec(types, i + 1, left - m * len, cur, out);
            cur.pop();
        }
    }
    rec(types, 0, target, &mut cur, &mut out);
    out
}

/// Adds `x` to `classes` unless an isomorphic module is already there.
fn insert_class(classes: &mut Vec<(Fingerprint, Representation)>, fp: Fingerprint, x: Representation, caps: &Caps) -> Result<bool> {
    for (g, y) in classes.iter() {
        if *g == fp && iso_test(y, &x, caps)? {
            return Ok(false);
        }
    }
    classes.push((fp, x));
    Ok(true)
}

/// Every indecomposable of length exactly `n`, given all of length `< n`.
fn next_level(
    alg: &Arc<AlgebraPresentation>,
    known: &[Representation],
    n: usize,
    caps: &Caps,
) -> Result<Vec<Representation>> {
    let f = alg.field();
    let nv = alg.num_vertices();
    let ext_by_vertex: Vec<Vec<Vec<Vec<u8>>>> =
        (0..nv).map(|v| known.iter().map(|z| ext_basis(z, v)).collect()).collect();
    let mut tasks: Vec<(usize, Vec<(usize, usize)>)> = Vec::new();
    for (v, ext) in ext_by_vertex.iter().enumerate() {
        let types: Vec<(usize, usize)> = known.iter().zip(ext).map(|(z, e)| (z.length(), e.len())).collect();
        for ms in multisets(&types, n - 1) {
            tasks.push((v, ms));
        }
    }
    let found: Vec<Vec<(Fingerprint, Representation)>> = tasks
        .par_iter()
        .map(|(v, ms)| -> Result<Vec<(Fingerprint, Representation)>> {
            let ext = &ext_by_vertex[*v];
            let choices: Vec<Vec<Vec<Vec<u8>>>> =
                ms.iter().map(|&(t, m)| grassmannian(f, ext[t].len(), m)).collect();
            let mut local: Vec<(Fingerprint, Representation)> = Vec::new();
            let mut idx = vec![0usize; choices.len()];
            loop {
                let mut parts: Vec<(&Representation, Vec<u8>)> = Vec::new();
                for (k, &(t, _)) in ms.iter().enumerate() {
                    let z = &known[t];
                    for coeffs in &choices[k][idx[k]] {
                        let len = ext[t][0].len();
                        let mut c = vec![0u8; len];
                        for (a, rep) in coeffs.iter().zip(&ext[t]) {
                            if *a != 0 {
                                f.axpy(&mut c, *a, rep);
                            }
                        }
                        parts.push((z, c));
                    }
                }
                let x = glue(alg, *v, &parts);
                if is_indecomposable(&x, caps)? {
                    let fp = fingerprint(&x);
                    insert_class(&mut local, fp, x, caps)?;
                }
                // odometer over the subspace choices
                let mut k = 0;
                loop {
                    if k == idx.len() {
                        return Ok(local);
                    }
                    idx[k] += 1;
                    if idx[k] < choices[k].len() {
                        break;
                    }
                    idx[k] = 0;
                    k += 1;
                }
            }
        })
        .collect::<Result<_>>()?;
    let mut classes: Vec<(Fingerprint, Representation)> = Vec::new();
    for batch in found {
        for (fp, x) in batch {
            insert_class(&mut classes, fp, x, caps)?;
        }
    }
    let mut out: Vec<Representation> = classes.into_iter().map(|c| c.1).collect();
    out.sort_by(canonical_cmp);
    Ok(out)
}

/// Indecomposables of length `<= max_len` up to isomorphism, sorted canonically,
/// without measures. Each length is obtained from the shorter ones as extensions
/// of a simple top by a direct sum of known indecomposables.
pub fn indecomposable_classes(
    alg: &Arc<AlgebraPresentation>,
    max_len: usize,
    caps: &Caps,
) -> Result<Vec<Representation>> {
    check_enumeration_cap(alg, max_len, caps)?;
    if max_len == 0 {
        return Ok(Vec::new());
    }
    let mut known: Vec<Representation> = (0..alg.num_vertices()).map(|v| simple(alg, v)).collect();
    for n in 2..=max_len {
        let level = next_level(alg, &known, n, caps)?;
        known.extend(level);
    }
    known.sort_by(canonical_cmp);
    Ok(known)
}

pub fn enumerate_indecomposables(
    alg: &Arc<AlgebraPresentation>,
    max_len: usize,
    caps: &Caps,
) -> Result<SubcatSnapshot> {
    let members = indecomposable_classes(alg, max_len, caps)?;
    SubcatSnapshot::new(alg, max_len, members, Provenance::Enumeration, caps)
}

#[derive(Clone, Debug, Serialize)]
pub struct TakeoffEntry {
    pub measure: GRMeasure,
    pub dims: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TakeoffReport {
    pub max_len: usize,
    pub entries: Vec<TakeoffEntry>,
    /// Fewer than the requested number of measures occur within the bound.
    pub truncated: bool,
}

/// The `count` smallest measures occurring in the snapshot, with their members.
pub fn take_off_sequence(snapshot: &SubcatSnapshot, count: usize) -> TakeoffReport {
    let mut entries: Vec<TakeoffEntry> = Vec::new();
    for (m, mu) in snapshot.members.iter().zip(&snapshot.measures) {
        match entries.last_mut() {
            Some(e) if e.measure == *mu => e.dims.push(m.dims().to_vec()),
            _ => {
                if entries.len() == count {
                    break;
                }
                entries.push(TakeoffEntry { measure: mu.clone(), dims: vec![m.dims().to_vec()] });
            }
        }
    }
    let truncated = entries.len() < count;
    TakeoffReport { max_len: snapshot.max_len, entries, truncated }
}

/// Indecomposables of length `<= max_len` cogenerated by `⊕ seeds`.
pub fn cogeneration_closure(
    alg: &Arc<AlgebraPresentation>,
    seeds: &[Representation],
    max_len: usize,
    caps: &Caps,
) -> Result<SubcatSnapshot> {
    let classes = indecomposable_classes(alg, max_len, caps)?;
    closure_from_classes(alg, &classes, seeds, max_len, caps)
}

/// As [`cogeneration_closure`], filtering an already enumerated class list.
pub fn closure_from_classes(
    alg: &Arc<AlgebraPresentation>,
    classes: &[Representation],
    seeds: &[Representation],
    max_len: usize,
    caps: &Caps,
) -> Result<SubcatSnapshot> {
    let m = direct_sum(alg, seeds)?;
    let flags = classes
        .par_iter()
        .map(|x| if x.length() <= max_len { is_cogenerated(x, &m) } else { Ok(false) })
        .collect::<Result<Vec<bool>>>()?;
    let members = classes.iter().zip(flags).filter(|(_, ok)| *ok).map(|(x, _)| x.clone()).collect();
    SubcatSnapshot::new(alg, max_len, members, Provenance::Closure, caps)
}

/// A member together with an indecomposable submodule of it that is not a member.
#[derive(Clone, Debug)]
pub struct ClosureViolation {
    pub member: usize,
    pub submodule: Representation,
}

/// Checks that every indecomposable submodule of every member is isomorphic to a
/// member (this covers all summands of all submodules).
pub fn is_submodule_closed(snapshot: &SubcatSnapshot, caps: &Caps) -> Result<Option<ClosureViolation>> {
    for (i, x) in snapshot.members.iter().enumerate() {
        let data = gr_data(x, caps)?;
        for (s, &ind) in data.lattice.subs.iter().zip(&data.indecomposable) {
            if !ind {
                continue;
            }
            let u = s.to_representation(x).0;
            if snapshot.find(&u, caps)?.is_none() {
                return Ok(Some(ClosureViolation { member: i, submodule: u }));
            }
        }
    }
    Ok(None)
}

fn maps_kernel(maps: &[Matrix]) -> Submodule {
    Submodule::from_spaces_unchecked(maps.iter().map(Matrix::null_space).collect())
}

fn maps_image(maps: &[Matrix]) -> Submodule {
    Submodule::from_spaces_unchecked(maps.iter().map(Matrix::column_space).collect())
}

/// An injective `u: x -> m` with `u(x) ∩ m0 = 0`, built by repeatedly adding a map
/// into a submodule meeting `m0 + f(x)` trivially whose kernel does not contain
/// the current kernel.
pub fn embed_avoiding(x: &Representation, m: &Representation, m0: &Submodule, caps: &Caps) -> Result<Morphism> {
    x.require_same_algebra(m)?;
    if !m0.is_arrow_stable(m) {
        return Err(Error::Precondition("m0 is not a submodule".into()));
    }
    let subs = enumerate_submodules(m, caps)?;
    let f_field = x.field();
    let mut f: VertexMaps = (0..x.dims().len()).map(|v| Matrix::zeros(f_field, m.dim(v), x.dim(v))).collect();
    loop {
        let ker = maps_kernel(&f);
        if ker.is_zero() {
            debug_assert!(maps_image(&f).intersect(m0).is_zero());
            return Morphism::new(x.clone(), m.clone(), f);
        }
        let m1 = m0.join(&maps_image(&f));
        let complement = subs
            .iter()
            .filter(|s| s.intersect(&m1).is_zero())
            .max_by_key(|s| s.length())
            .expect("zero submodule always qualifies");
        let (mp, incl) = complement.to_representation(m);
        let step = hom_space(x, &mp)
            .into_iter()
            .map(|g| g.iter().zip(incl.maps()).map(|(gv, iv)| iv.mul(gv)).collect::<VertexMaps>())
            .find(|g| !ker.is_contained_in(&maps_kernel(g)));
        let Some(g) = step else {
            return Err(Error::Stalled(format!(
                "kernel of dimension {:?} survives; complement of {:?} admits no suitable map",
                ker.dims(),
                m1.dims()
            )));
        };
        f = f.iter().zip(&g).map(|(a, b)| a.add(b)).collect();
    }
}

/// An injective map `x -> y`, searched among random then (under the cap) all Hom
/// elements.
pub fn find_embedding(x: &Representation, y: &Representation, caps: &Caps) -> Result<Option<Morphism>> {
    x.require_same_algebra(y)?;
    if x.dims().iter().zip(y.dims()).any(|(a, b)| a > b) {
        return Ok(None);
    }
    let basis = hom_space(x, y);
    if basis.is_empty() {
        return Ok(x.is_zero().then(|| Morphism::zero(x, y)));
    }
    let f = x.field();
    let combine = |c: &[u8]| -> VertexMaps {
        let mut acc: VertexMaps = (0..x.dims().len()).map(|v| Matrix::zeros(f, y.dim(v), x.dim(v))).collect();
        for (a, b) in c.iter().zip(&basis) {
            if *a != 0 {
                for (m, n) in acc.iter_mut().zip(b) {
                    m.add_scaled(*a, n);
                }
            }
        }
        acc
    };
    let injective = |maps: &VertexMaps| maps.iter().all(|m| m.rank() == m.cols());
    let mut rng = caps.rng(x.length() as u64 * 7919 + y.length() as u64);
    for _ in 0..caps.random_tries {
        let c: Vec<u8> = (0..basis.len()).map(|_| rng.gen_range(0..f.p())).collect();
        let g = combine(&c);
        if injective(&g) {
            return Ok(Some(Morphism::new(x.clone(), y.clone(), g)?));
        }
    }
    if !caps.exhaustive_ok(f.p(), basis.len()) {
        return Err(Error::cap("embedding search", format!("dim Hom = {}", basis.len())));
    }
    for c in f.all_vectors(basis.len()) {
        let g = combine(&c);
        if injective(&g) {
            return Ok(Some(Morphism::new(x.clone(), y.clone(), g)?));
        }
    }
    Ok(None)
}

/// A member with `[C : S(v)] >= d` for every vertex `v` occurring in some member.
pub fn find_high_multiplicity_indec(snapshot: &SubcatSnapshot, d: usize) -> Option<Representation> {
    let n = snapshot.alg.num_vertices();
    let occurring: Vec<usize> = (0..n).filter(|&v| snapshot.members.iter().any(|m| m.dim(v) > 0)).collect();
    let mut sorted: Vec<&Representation> = snapshot.members.iter().collect();
    sorted.sort_by(|a, b| canonical_cmp(a, b));
    sorted.into_iter().find(|m| occurring.iter().all(|&v| m.jh_multiplicity(v) >= d)).cloned()
}

#[derive(Clone, Debug, Serialize)]
pub struct GrBoundReport {
    pub p_bound: usize,
    pub q_bound: usize,
    pub checked: usize,
    /// `(dims, length, length of the GR submodule)` for every violation.
    pub violations: Vec<(Vec<usize>, usize, usize)>,
}

impl GrBoundReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// `|Y| <= |X| · p · q` for every non-simple member `Y` with GR submodule `X`.
pub fn check_gr_bound(snapshot: &SubcatSnapshot, caps: &Caps) -> Result<GrBoundReport> {
    check_gr_bound_with(snapshot, |y| Ok(gr_submodule(y, caps)?.0.length()))
}

/// As [`check_gr_bound`] with a caller-supplied GR submodule length.
pub fn check_gr_bound_with(
    snapshot: &SubcatSnapshot,
    sub_len: impl Fn(&Representation) -> Result<usize> + Sync,
) -> Result<GrBoundReport> {
    let (p_bound, q_bound) = snapshot.alg.projective_injective_bounds();
    let rows = snapshot
        .members
        .par_iter()
        .filter(|y| y.length() >= 2)
        .map(|y| Ok((y.dims().to_vec(), y.length(), sub_len(y)?)))
        .collect::<Result<Vec<_>>>()?;
    let checked = rows.len();
    let violations = rows.into_iter().filter(|(_, n, s)| *n > s * p_bound * q_bound).collect();
    Ok(GrBoundReport { p_bound, q_bound, checked, violations })
}
