//! Combinatorics of hereditary algebras: Euler form, Coxeter matrix, null root and
//! defect, knitting of preprojective dimension vectors, and the desk-scale scans
//! around cogeneration of preprojectives and maps from defect -1 preprojectives.

use std::sync::Arc;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::artrans::inverse_translate;
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::ffla::{Field, Matrix};
use crate::presentation::{projective, AlgebraPresentation};
use crate::repcore::{
    hom_space, is_cogenerated, is_indecomposable, submodule_lattice, Morphism, Representation, Submodule,
    VertexMaps,
};

pub type IntMatrix = Vec<Vec<i64>>;
type QMatrix = Vec<Vec<Rational64>>;

fn to_q(m: &IntMatrix) -> QMatrix {
    m.iter().map(|r| r.iter().map(|&x| Rational64::from_integer(x)).collect()).collect()
}

fn to_int(m: &QMatrix) -> IntMatrix {
    m.iter()
        .map(|r| {
            r.iter()
                .map(|x| {
                    assert!(x.is_integer(), "integral matrix expected");
                    x.to_integer()
                })
                .collect()
        })
        .collect()
}

fn transpose<T: Clone>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    let n = m.len();
    let k = m.first().map_or(0, Vec::len);
    (0..k).map(|j| (0..n).map(|i| m[i][j].clone()).collect()).collect()
}

fn qmul(a: &QMatrix, b: &QMatrix) -> QMatrix {
    let k = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..k)
                .map(|j| row.iter().zip(b).map(|(x, brow)| *x * brow[j]).fold(Rational64::zero(), |s, t| s + t))
                .collect()
        })
        .collect()
}

fn qinverse(m: &QMatrix) -> Option<QMatrix> {
    let n = m.len();
    let mut a: QMatrix = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { Rational64::one() } else { Rational64::zero() }));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(c, p);
        let inv = Rational64::one() / a[c][c];
        for x in a[c].iter_mut() {
            *x *= inv;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c];
                let pivot = a[c].clone();
                for (x, y) in a[r].iter_mut().zip(pivot) {
                    *x -= f * y;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

fn qdet(m: &QMatrix) -> Rational64 {
    let n = m.len();
    let mut a = m.clone();
    let mut det = Rational64::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return Rational64::zero();
        };
        if p != c {
            a.swap(c, p);
            det = -det;
        }
        det *= a[c][c];
        for r in c + 1..n {
            let f = a[r][c] / a[c][c];
            if !f.is_zero() {
                let pivot = a[c].clone();
                for (x, y) in a[r].iter_mut().zip(pivot) {
                    *x -= f * y;
                }
            }
        }
    }
    det
}

fn qkernel(m: &QMatrix) -> Vec<Vec<Rational64>> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = Rational64::one() / a[r][c];
        for x in a[r].iter_mut() {
            *x *= inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c];
                let pivot = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(pivot) {
                    *x -= f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Rational64::zero(); cols];
            v[free] = Rational64::one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[i][free];
            }
            v
        })
        .collect()
}

fn mat_vec(m: &IntMatrix, x: &[i64]) -> Vec<i64> {
    m.iter().map(|r| r.iter().zip(x).map(|(a, b)| a * b).sum()).collect()
}

/// Symmetric Tits form `2(Σ x_v² − Σ_arrows x_s x_t + Σ_relations x_s x_t)` as a matrix.
fn tits_matrix(alg: &AlgebraPresentation) -> IntMatrix {
    let n = alg.num_vertices();
    let mut q = vec![vec![0i64; n]; n];
    for (v, row) in q.iter_mut().enumerate() {
        row[v] = 2;
    }
    for a in alg.quiver().arrows() {
        q[a.source][a.target] -= 1;
        q[a.target][a.source] -= 1;
    }
    for r in alg.relations() {
        q[r.source][r.target] += 1;
        q[r.target][r.source] += 1;
    }
    q
}

fn is_psd(q: &IntMatrix) -> bool {
    let n = q.len();
    let qq = to_q(q);
    (1u32..(1 << n)).all(|mask| {
        let idx: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let minor: QMatrix = idx.iter().map(|&i| idx.iter().map(|&j| qq[i][j]).collect()).collect();
        !qdet(&minor).is_negative()
    })
}

/// True iff the Tits form of the presentation is positive semidefinite (finite or
/// tame type for the shipped examples); used to pick enumeration bounds.
pub fn tits_form_nonnegative(alg: &AlgebraPresentation) -> bool {
    is_psd(&tits_matrix(alg))
}

/// Euler form, Coxeter matrix and, for affine quivers, null root and defect.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EulerData {
    /// `<x, y> = xᵀ E y = Σ x_v y_v − Σ_{α: i→j} x_i y_j`.
    pub euler: IntMatrix,
    /// `Φ = −E⁻¹Eᵀ`, so that `dim τX = Φ dim X` for non-projective indecomposables.
    pub coxeter: IntMatrix,
    pub coxeter_inverse: IntMatrix,
    pub null_root: Option<Vec<i64>>,
    /// Coefficients of the defect form, negative on projectives, gcd 1.
    pub defect: Option<Vec<i64>>,
}

impl EulerData {
    pub fn euler_form(&self, x: &[i64], y: &[i64]) -> i64 {
        x.iter().zip(mat_vec(&self.euler, y)).map(|(a, b)| a * b).sum()
    }

    pub fn tau_dims(&self, x: &[i64]) -> Vec<i64> {
        mat_vec(&self.coxeter, x)
    }

    pub fn tau_inverse_dims(&self, x: &[i64]) -> Vec<i64> {
        mat_vec(&self.coxeter_inverse, x)
    }

    pub fn defect_of(&self, x: &[i64]) -> Option<i64> {
        self.defect.as_ref().map(|d| d.iter().zip(x).map(|(a, b)| a * b).sum())
    }

    pub fn is_affine(&self) -> bool {
        self.null_root.is_some()
    }
}

pub fn dims_i64(x: &Representation) -> Vec<i64> {
    x.dims().iter().map(|&d| d as i64).collect()
}

pub fn euler_data(alg: &AlgebraPresentation) -> Result<EulerData> {
    if !alg.is_hereditary() {
        return Err(Error::NotHereditary);
    }
    let n = alg.num_vertices();
    let mut e = vec![vec![0i64; n]; n];
    for (v, row) in e.iter_mut().enumerate() {
        row[v] = 1;
    }
    for a in alg.quiver().arrows() {
        e[a.source][a.target] -= 1;
    }
    let eq = to_q(&e);
    let e_inv = qinverse(&eq).ok_or_else(|| Error::Precondition("quiver has oriented cycles".into()))?;
    let e_t = transpose(&eq);
    let neg = |m: QMatrix| -> QMatrix { m.into_iter().map(|r| r.into_iter().map(|x| -x).collect()).collect() };
    let coxeter = to_int(&neg(qmul(&e_inv, &e_t)));
    let e_t_inv = transpose(&e_inv);
    let coxeter_inverse = to_int(&neg(qmul(&e_t_inv, &eq)));

    let sym: IntMatrix = (0..n).map(|i| (0..n).map(|j| e[i][j] + e[j][i]).collect()).collect();
    let mut null_root = None;
    let mut defect = None;
    if is_psd(&sym) {
        let ker = qkernel(&to_q(&sym));
        if ker.len() == 1 {
            let v = &ker[0];
            let lcm = v.iter().fold(1i64, |l, x| l.lcm(x.denom()));
            let mut h: Vec<i64> = v.iter().map(|x| (x * Rational64::from_integer(lcm)).to_integer()).collect();
            let g = h.iter().fold(0i64, |g, x| g.gcd(x));
            h.iter_mut().for_each(|x| *x /= g);
            if h.iter().all(|&x| x < 0) {
                h.iter_mut().for_each(|x| *x = -*x);
            }
            if h.iter().all(|&x| x > 0) {
                // δ(x) = <h, x>, rescaled to be primitive and negative on projectives
                let mut d: Vec<i64> = (0..n).map(|j| (0..n).map(|i| h[i] * e[i][j]).sum()).collect();
                let g = d.iter().fold(0i64, |g, x| g.gcd(x));
                if g != 0 {
                    d.iter_mut().for_each(|x| *x /= g);
                }
                let p0: Vec<i64> = dims_i64(&projective_plain(alg, 0));
                let s: i64 = d.iter().zip(&p0).map(|(a, b)| a * b).sum();
                if s > 0 {
                    d.iter_mut().for_each(|x| *x = -*x);
                }
                null_root = Some(h);
                defect = Some(d);
            }
        }
    }
    Ok(EulerData { euler: e, coxeter, coxeter_inverse, null_root, defect })
}

// dimension vector of P(v) without needing an Arc handle
fn projective_plain(alg: &AlgebraPresentation, v: usize) -> Representation {
    projective(&Arc::new(alg.clone()), v)
}

/// One knitted preprojective: `dims(τ^{-j} P(vertex))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KnitRow {
    pub vertex: usize,
    pub j: usize,
    pub dims: Vec<i64>,
}

/// Applies `Φ⁻¹` repeatedly to projective dimension vectors; a ray stops once a
/// coordinate would become negative.
pub fn knit_dim_vectors(alg: &Arc<AlgebraPresentation>, steps: usize) -> Result<Vec<KnitRow>> {
    let data = euler_data(alg)?;
    let mut rows = Vec::new();
    for v in 0..alg.num_vertices() {
        let mut x = dims_i64(&projective(alg, v));
        for j in 0..=steps {
            rows.push(KnitRow { vertex: v, j, dims: x.clone() });
            let next = data.tau_inverse_dims(&x);
            if next.iter().any(|&c| c < 0) || next.iter().all(|&c| c == 0) {
                break;
            }
            x = next;
        }
    }
    rows.sort_by_key(|r| (r.j, r.vertex));
    Ok(rows)
}

/// `τ^{-j} P(v)` for all `v` and `j` while the length stays within `max_len`.
pub fn preprojectives(alg: &Arc<AlgebraPresentation>, max_len: usize) -> Vec<(usize, usize, Representation)> {
    let mut out = Vec::new();
    for v in 0..alg.num_vertices() {
        let mut x = projective(alg, v);
        let mut j = 0;
        while !x.is_zero() && x.length() <= max_len {
            out.push((v, j, x.clone()));
            x = inverse_translate(&x);
            j += 1;
        }
    }
    out.sort_by_key(|(v, j, x)| (x.length(), *j, *v));
    out
}

/// For the pair `(P(p), P(p'))` and `i`: the least `n <= jmax` such that
/// `τ^{-i} P(p')` is cogenerated by `τ^{-j} P(p)` for every `j` in `n..=jmax`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KtRow {
    pub p: String,
    pub p_prime: String,
    pub i: usize,
    pub cogenerated: Vec<bool>,
    pub n: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct KtReport {
    pub b: usize,
    pub jmax: usize,
    pub rows: Vec<KtRow>,
}

impl KtReport {
    pub fn all_found(&self) -> bool {
        self.rows.iter().all(|r| r.n.is_some())
    }
}

pub fn kerner_takane_check(alg: &Arc<AlgebraPresentation>, b: usize, jmax: usize) -> Result<KtReport> {
    euler_data(alg)?;
    let n = alg.num_vertices();
    let depth = b.max(jmax);
    let orbits: Vec<Vec<Representation>> = (0..n)
        .map(|v| {
            let mut orbit = vec![projective(alg, v)];
            for _ in 0..depth {
                let next = inverse_translate(orbit.last().expect("nonempty"));
                orbit.push(next);
            }
            orbit
        })
        .collect();
    let names = alg.quiver().vertices();
    let mut rows = Vec::new();
    for p in 0..n {
        for pp in 0..n {
            for i in 0..=b {
                let x = &orbits[pp][i];
                let cogenerated =
                    (0..=jmax).map(|j| is_cogenerated(x, &orbits[p][j])).collect::<Result<Vec<bool>>>()?;
                let tail = cogenerated.iter().rev().take_while(|&&c| c).count();
                let first = if tail == 0 { None } else { Some(jmax + 1 - tail) };
                rows.push(KtRow { p: names[p].clone(), p_prime: names[pp].clone(), i, cogenerated, n: first });
            }
        }
    }
    Ok(KtReport { b, jmax, rows })
}

/// Every element of `Hom(x, y)`, or a cap error.
fn all_homs(x: &Representation, y: &Representation, caps: &Caps) -> Result<Vec<VertexMaps>> {
    let basis = hom_space(x, y);
    let f = x.field();
    if !caps.exhaustive_ok(f.p(), basis.len()) {
        return Err(Error::cap("Hom enumeration", format!("dim Hom = {} over F_{}", basis.len(), f.p())));
    }
    Ok(f.all_vectors(basis.len()).map(|c| combine(f, x, y, &basis, &c)).collect())
}

fn combine(f: Field, x: &Representation, y: &Representation, basis: &[VertexMaps], coefs: &[u8]) -> VertexMaps {
    let mut acc: VertexMaps = (0..x.dims().len()).map(|v| Matrix::zeros(f, y.dim(v), x.dim(v))).collect();
    for (c, b) in coefs.iter().zip(basis) {
        if *c != 0 {
            for (m, n) in acc.iter_mut().zip(b) {
                m.add_scaled(*c, n);
            }
        }
    }
    acc
}

/// The regular radical of a regular indecomposable `r`: the unique maximal proper
/// submodule that is zero or regular indecomposable. `None` if it is not unique.
pub fn regular_radical(r: &Representation, data: &EulerData, caps: &Caps) -> Result<Option<Submodule>> {
    let lattice = submodule_lattice(r, caps)?;
    let last = lattice.subs.len() - 1;
    let mut candidates = Vec::new();
    for s in &lattice.subs[..last] {
        if s.is_zero() {
            candidates.push(s.clone());
            continue;
        }
        let u = s.to_representation(r).0;
        if data.defect_of(&dims_i64(&u)) == Some(0) && is_indecomposable(&u, caps)? {
            candidates.push(s.clone());
        }
    }
    let maximal: Vec<&Submodule> = candidates
        .iter()
        .filter(|s| !candidates.iter().any(|t| t != *s && s.is_contained_in(t)))
        .collect();
    Ok(if maximal.len() == 1 { Some(maximal[0].clone()) } else { None })
}

#[derive(Clone, Debug, Serialize)]
pub struct Lemma1Violation {
    pub preprojective: Vec<usize>,
    pub regular: Vec<usize>,
    pub rank: Vec<usize>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Lemma1Report {
    pub preprojectives: usize,
    pub regulars: usize,
    pub maps_checked: usize,
    pub counterexamples: Vec<Lemma1Violation>,
    /// Dimension vectors of regular modules whose regular radical was not unique.
    pub ambiguous: Vec<Vec<usize>>,
    /// Pairs skipped because a cap was hit.
    pub skipped: usize,
}

/// Maps `f: P -> R` from defect `-1` preprojectives to regular indecomposables with
/// image outside the regular radical must be mono or epi.
pub fn lemma1_scan(
    alg: &Arc<AlgebraPresentation>,
    indecomposables: &[Representation],
    caps: &Caps,
) -> Result<Lemma1Report> {
    let data = euler_data(alg)?;
    if !data.is_affine() {
        return Err(Error::Precondition("the defect scans need an affine quiver".into()));
    }
    let preproj: Vec<Representation> = preprojectives(alg, indecomposables_max_len(indecomposables))
        .into_iter()
        .map(|t| t.2)
        .filter(|p| data.defect_of(&dims_i64(p)) == Some(-1))
        .collect();
    let regular: Vec<&Representation> =
        indecomposables.iter().filter(|r| data.defect_of(&dims_i64(r)) == Some(0)).collect();
    let mut report = Lemma1Report { preprojectives: preproj.len(), regulars: regular.len(), ..Default::default() };
    for r in &regular {
        let Some(rad) = (match regular_radical(r, &data, caps) {
            Ok(v) => v,
            Err(e) if e.is_cap() => {
                report.skipped += preproj.len();
                continue;
            }
            Err(e) => return Err(e),
        }) else {
            report.ambiguous.push(r.dims().to_vec());
            continue;
        };
        for p in &preproj {
            let maps = match all_homs(p, r, caps) {
                Ok(m) => m,
                Err(e) if e.is_cap() => {
                    report.skipped += 1;
                    continue;
                }
                Err(e) => return Err(e),
            };
            for f in maps {
                let image = Submodule::from_spaces_unchecked(f.iter().map(Matrix::column_space).collect());
                if image.is_contained_in(&rad) {
                    continue;
                }
                report.maps_checked += 1;
                let mono = f.iter().all(|m| m.rank() == m.cols());
                let epi = f.iter().all(|m| m.rank() == m.rows());
                if !mono && !epi {
                    report.counterexamples.push(Lemma1Violation {
                        preprojective: p.dims().to_vec(),
                        regular: r.dims().to_vec(),
                        rank: f.iter().map(Matrix::rank).collect(),
                    });
                }
            }
        }
    }
    Ok(report)
}

fn indecomposables_max_len(xs: &[Representation]) -> usize {
    xs.iter().map(Representation::length).max().unwrap_or(0)
}

#[derive(Clone, Debug)]
pub enum Lemma2Outcome {
    /// Surjections `f_i: P -> P_i` onto defect `-1` preprojectives whose tuple is injective.
    Witness { targets: Vec<Representation>, maps: Vec<Morphism> },
    NotFound { defect: i64, tuples_searched: usize },
}

impl Lemma2Outcome {
    pub fn is_witness(&self) -> bool {
        matches!(self, Lemma2Outcome::Witness { .. })
    }
}

/// Searches `d = -δ(P)` surjections from `p` onto members of `targets` (defect `-1`
/// preprojectives) with jointly zero kernel.
pub fn lemma2_scan(
    alg: &Arc<AlgebraPresentation>,
    p: &Representation,
    targets: &[Representation],
    caps: &Caps,
) -> Result<Lemma2Outcome> {
    let data = euler_data(alg)?;
    let defect = data
        .defect_of(&dims_i64(p))
        .ok_or_else(|| Error::Precondition("the defect scans need an affine quiver".into()))?;
    if defect >= 0 {
        return Err(Error::Precondition(format!("P has defect {defect}; a negative defect is required")));
    }
    let d = (-defect) as usize;
    if d == 1 {
        return Ok(Lemma2Outcome::Witness { targets: vec![p.clone()], maps: vec![Morphism::identity(p)] });
    }
    let targets: Vec<&Representation> =
        targets.iter().filter(|t| data.defect_of(&dims_i64(t)) == Some(-1)).collect();
    // surjections per target
    let mut surj: Vec<(usize, VertexMaps)> = Vec::new();
    for (k, t) in targets.iter().enumerate() {
        if t.length() > p.length() {
            continue;
        }
        for f in all_homs(p, t, caps)? {
            if f.iter().all(|m| m.rank() == m.rows()) {
                surj.push((k, f));
            }
        }
    }
    let mut searched = 0usize;
    let mut chosen: Vec<usize> = Vec::new();
    let full = Submodule::full(p);
    let found = search_tuples(&surj, d, 0, &full, &mut chosen, &mut searched, caps)?;
    Ok(match found {
        Some(idx) => Lemma2Outcome::Witness {
            targets: idx.iter().map(|&i| targets[surj[i].0].clone()).collect(),
            maps: idx
                .iter()
                .map(|&i| Morphism::new(p.clone(), targets[surj[i].0].clone(), surj[i].1.clone()))
                .collect::<Result<_>>()?,
        },
        None => Lemma2Outcome::NotFound { defect, tuples_searched: searched },
    })
}

fn search_tuples(
    surj: &[(usize, VertexMaps)],
    d: usize,
    start: usize,
    kernel: &Submodule,
    chosen: &mut Vec<usize>,
    searched: &mut usize,
    caps: &Caps,
) -> Result<Option<Vec<usize>>> {
    if chosen.len() == d {
        *searched += 1;
        return Ok(kernel.is_zero().then(|| chosen.clone()));
    }
    if *searched as f64 > 2f64.powi(caps.exhaustive_bits as i32 + 4) {
        return Err(Error::cap("surjection tuple search", format!("more than {searched} tuples")));
    }
    for i in start..surj.len() {
        let ker = Submodule::from_spaces_unchecked(surj[i].1.iter().map(Matrix::null_space).collect());
        let next = kernel.intersect(&ker);
        chosen.push(i);
        if let Some(w) = search_tuples(surj, d, i + 1, &next, chosen, searched, caps)? {
            return Ok(Some(w));
        }
        chosen.pop();
    }
    Ok(None)
}
