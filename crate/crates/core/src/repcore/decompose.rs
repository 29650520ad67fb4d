//! Indecomposability and Krull-Schmidt decomposition via the endomorphism ring.
//!
//! A module is indecomposable iff its endomorphism ring is local. We look for an
//! endomorphism that is neither nilpotent nor invertible (its Fitting decomposition
//! splits the module); failing that, we certify locality by exhibiting a nilpotent
//! two-sided ideal whose quotient is a division ring.

use rand::Rng;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::ffla::{poly, Field, Matrix, Subspace};

use super::iso::{canonical_cmp, rep_hash};
use super::{hom_space, Representation, Submodule, VertexMaps};

/// Structure of `End(x)` as far as indecomposability is concerned.
#[derive(Clone, Debug)]
pub enum EndAnalysis {
    /// `End(x)` is local; `residue_dim` is the dimension of its residue field.
    Local { residue_dim: usize },
    /// An endomorphism that is neither nilpotent nor invertible.
    Split(VertexMaps),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Nilpotent,
    Invertible,
    Neither,
}

struct EndAlgebra<'a> {
    x: &'a Representation,
    field: Field,
    basis: Vec<VertexMaps>,
}

impl<'a> EndAlgebra<'a> {
    fn compose(&self, a: &VertexMaps, b: &VertexMaps) -> VertexMaps {
        a.iter().zip(b).map(|(p, q)| p.mul(q)).collect()
    }

    fn identity(&self) -> VertexMaps {
        self.x.dims().iter().map(|&d| Matrix::identity(self.field, d)).collect()
    }

    fn zero(&self) -> VertexMaps {
        self.x.dims().iter().map(|&d| Matrix::zeros(self.field, d, d)).collect()
    }

    fn flatten(&self, a: &VertexMaps) -> Vec<u8> {
        a.iter().flat_map(|m| m.data().iter().copied()).collect()
    }

    fn flat_len(&self) -> usize {
        self.x.dims().iter().map(|d| d * d).sum()
    }

    fn combination(&self, coefs: &[u8], elems: &[VertexMaps]) -> VertexMaps {
        let mut acc = self.zero();
        for (c, e) in coefs.iter().zip(elems) {
            if *c != 0 {
                for (m, n) in acc.iter_mut().zip(e) {
                    m.add_scaled(*c, n);
                }
            }
        }
        acc
    }

    fn kind(&self, a: &VertexMaps) -> Kind {
        if a.iter().all(Matrix::is_invertible) {
            Kind::Invertible
        } else if is_nilpotent(a) {
            Kind::Nilpotent
        } else {
            Kind::Neither
        }
    }

    fn eval(&self, g: &[u8], a: &VertexMaps) -> VertexMaps {
        a.iter().map(|m| poly::eval_matrix(self.field, g, m)).collect()
    }

    /// Minimal polynomial of `a` in the algebra, by Krylov iteration.
    fn min_poly(&self, a: &VertexMaps) -> Vec<u8> {
        let f = self.field;
        let mut powers: Vec<Vec<u8>> = Vec::new();
        let mut cur = self.identity();
        loop {
            let flat = self.flatten(&cur);
            if !powers.is_empty() {
                let m = Matrix::from_columns(f, flat.len(), &powers);
                if let Some(coef) = m.solve(&flat) {
                    // a^k = sum c_i a^i  =>  t^k - sum c_i t^i
                    let mut p: Vec<u8> = coef.iter().map(|&c| f.neg(c)).collect();
                    p.push(1);
                    return p;
                }
            }
            powers.push(flat);
            cur = self.compose(&cur, a);
        }
    }

    /// Either a splitting endomorphism derived from `a`, or a nilpotent element
    /// (possibly zero) lying in the radical if the algebra is local.
    fn examine(&self, a: &VertexMaps) -> std::result::Result<Option<VertexMaps>, VertexMaps> {
        let f = self.field;
        let m = self.min_poly(a);
        let g = poly::smallest_factor(f, &m).unwrap_or_else(|| m.clone());
        let mut rest = m.clone();
        let mut k = 0;
        while poly::degree(&rest).unwrap_or(0) > 0 {
            let (q, r) = poly::divrem(f, &rest, &g);
            if !poly::is_zero(&r) {
                break;
            }
            rest = q;
            k += 1;
        }
        if poly::degree(&rest).unwrap_or(0) > 0 {
            return Err(self.eval(&g, a));
        }
        if g == [0, 1] {
            return Ok(Some(a.clone()));
        }
        if k >= 2 {
            return Ok(Some(self.eval(&g, a)));
        }
        Ok(None)
    }
}

fn is_nilpotent(a: &VertexMaps) -> bool {
    a.iter().all(|m| {
        let mut p = m.clone();
        let mut rank = p.rank();
        while rank > 0 {
            p = p.mul(m);
            let r = p.rank();
            if r == rank {
                return false;
            }
            rank = r;
        }
        true
    })
}

/// Analyses `End(x)`. Fails on the zero module and when a certifying search would
/// exceed the caps.
pub fn endomorphism_analysis(x: &Representation, caps: &Caps) -> Result<EndAnalysis> {
    if x.is_zero() {
        return Err(Error::ZeroModule);
    }
    let f = x.field();
    let comps = x.support_components();
    if comps.len() > 1 {
        let proj = (0..x.dims().len())
            .map(|v| {
                let d = x.dim(v);
                if comps[0].contains(&v) {
                    Matrix::identity(f, d)
                } else {
                    Matrix::zeros(f, d, d)
                }
            })
            .collect();
        return Ok(EndAnalysis::Split(proj));
    }
    let basis = hom_space(x, x);
    if basis.len() == 1 {
        return Ok(EndAnalysis::Local { residue_dim: 1 });
    }
    let alg = EndAlgebra { x, field: f, basis };
    let mut nil: Vec<VertexMaps> = Vec::new();
    for b in &alg.basis {
        match alg.examine(b) {
            Err(split) => return Ok(EndAnalysis::Split(split)),
            Ok(Some(n)) => nil.push(n),
            Ok(None) => {}
        }
    }
    let mut rng = caps.rng(rep_hash(x));
    for _ in 0..caps.random_tries.min(16) {
        let coefs: Vec<u8> = (0..alg.basis.len()).map(|_| rng.gen_range(0..f.p())).collect();
        let a = alg.combination(&coefs, &alg.basis);
        match alg.examine(&a) {
            Err(split) => return Ok(EndAnalysis::Split(split)),
            Ok(Some(n)) => nil.push(n),
            Ok(None) => {}
        }
    }
    loop {
        let ideal = ideal_closure(&alg, &nil);
        let dim_end = alg.basis.len();
        if !ideal_is_nilpotent(&alg, &ideal) {
            for e in &ideal.1 {
                if alg.kind(e) == Kind::Neither {
                    return Ok(EndAnalysis::Split(e.clone()));
                }
            }
            return search_splitter(&alg, caps, &mut rng);
        }
        let complement = complement_elements(&alg, &ideal.0);
        let k = complement.len();
        debug_assert_eq!(k + ideal.0.dim(), dim_end);
        if k == 1 {
            return Ok(EndAnalysis::Local { residue_dim: 1 });
        }
        if !caps.exhaustive_ok(f.p(), k) {
            return Err(Error::cap(
                "endomorphism ring analysis",
                format!("quotient of dimension {k} over F_{}", f.p()),
            ));
        }
        let mut grew = false;
        for coefs in f.all_vectors(k).skip(1) {
            let a = alg.combination(&coefs, &complement);
            match alg.kind(&a) {
                Kind::Invertible => {}
                Kind::Neither => return Ok(EndAnalysis::Split(a)),
                Kind::Nilpotent => {
                    nil.push(a);
                    grew = true;
                    break;
                }
            }
        }
        if !grew {
            return Ok(EndAnalysis::Local { residue_dim: k });
        }
    }
}

/// Two-sided ideal generated by `gens`, as (flattened span, spanning elements).
fn ideal_closure(alg: &EndAlgebra<'_>, gens: &[VertexMaps]) -> (Subspace, Vec<VertexMaps>) {
    let mut span = Subspace::zero(alg.field, alg.flat_len());
    let mut elems: Vec<VertexMaps> = Vec::new();
    let mut queue: Vec<VertexMaps> = gens.to_vec();
    while let Some(e) = queue.pop() {
        if !span.insert(alg.flatten(&e)) {
            continue;
        }
        for b in &alg.basis {
            queue.push(alg.compose(b, &e));
            queue.push(alg.compose(&e, b));
        }
        elems.push(e);
    }
    (span, elems)
}

fn ideal_is_nilpotent(alg: &EndAlgebra<'_>, ideal: &(Subspace, Vec<VertexMaps>)) -> bool {
    let (mut span, mut elems) = ideal.clone();
    loop {
        if span.is_zero() {
            return true;
        }
        let mut next_span = Subspace::zero(alg.field, alg.flat_len());
        let mut next = Vec::new();
        for a in &elems {
            for b in &ideal.1 {
                let c = alg.compose(a, b);
                if next_span.insert(alg.flatten(&c)) {
                    next.push(c);
                }
            }
        }
        if next_span.dim() == span.dim() {
            return false;
        }
        span = next_span;
        elems = next;
    }
}

fn complement_elements(alg: &EndAlgebra<'_>, ideal: &Subspace) -> Vec<VertexMaps> {
    let mut span = ideal.clone();
    let mut out = Vec::new();
    for b in &alg.basis {
        if span.insert(alg.flatten(b)) {
            out.push(b.clone());
        }
    }
    out
}

fn search_splitter(
    alg: &EndAlgebra<'_>,
    caps: &Caps,
    rng: &mut rand_chacha::ChaCha8Rng,
) -> Result<EndAnalysis> {
    let f = alg.field;
    let d = alg.basis.len();
    for _ in 0..caps.random_tries * 16 {
        let coefs: Vec<u8> = (0..d).map(|_| rng.gen_range(0..f.p())).collect();
        let a = alg.combination(&coefs, &alg.basis);
        if alg.kind(&a) == Kind::Neither {
            return Ok(EndAnalysis::Split(a));
        }
    }
    if caps.exhaustive_ok(f.p(), d) {
        for coefs in f.all_vectors(d) {
            let a = alg.combination(&coefs, &alg.basis);
            if alg.kind(&a) == Kind::Neither {
                return Ok(EndAnalysis::Split(a));
            }
        }
    }
    Err(Error::cap("splitting endomorphism search", format!("End of dimension {d}")))
}

pub fn is_indecomposable(x: &Representation, caps: &Caps) -> Result<bool> {
    Ok(matches!(endomorphism_analysis(x, caps)?, EndAnalysis::Local { .. }))
}

/// Splits `x` along the Fitting decomposition of a non-nilpotent, non-invertible
/// endomorphism: `x = ker(f^n) ⊕ im(f^n)` with `n = length(x)`.
pub(crate) fn fitting_split(x: &Representation, f: &VertexMaps) -> (Submodule, Submodule) {
    let n = x.length();
    let powered: VertexMaps = f
        .iter()
        .map(|m| {
            let mut p = Matrix::identity(m.field(), m.rows());
            for _ in 0..n {
                p = p.mul(m);
            }
            p
        })
        .collect();
    let kernel = Submodule::from_spaces_unchecked(powered.iter().map(Matrix::null_space).collect());
    let image = Submodule::from_spaces_unchecked(powered.iter().map(Matrix::column_space).collect());
    (kernel, image)
}

/// Indecomposable summands of `x`, sorted canonically.
pub fn decompose(x: &Representation, caps: &Caps) -> Result<Vec<Representation>> {
    if x.is_zero() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut stack = vec![x.clone()];
    while let Some(m) = stack.pop() {
        match endomorphism_analysis(&m, caps)? {
            EndAnalysis::Local { .. } => out.push(m),
            EndAnalysis::Split(f) => {
                let (k, i) = fitting_split(&m, &f);
                debug_assert!(k.intersect(&i).is_zero());
                assert_eq!(k.length() + i.length(), m.length(), "Fitting decomposition is direct");
                assert!(!k.is_zero() && !i.is_zero(), "splitting endomorphism gives proper summands");
                stack.push(k.to_representation(&m).0);
                stack.push(i.to_representation(&m).0);
            }
        }
    }
    out.sort_by(canonical_cmp);
    Ok(out)
}
