//! Push-down along a covering of quivers.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ffla::Matrix;
use crate::presentation::{AlgebraPresentation, Quiver};

use super::Representation;

/// A quiver morphism `cover -> base` given by its vertex and arrow maps.
#[derive(Clone, Debug)]
pub struct CoveringSpec {
    cover: Arc<AlgebraPresentation>,
    base: Arc<AlgebraPresentation>,
    vertex_map: Vec<usize>,
    arrow_map: Vec<usize>,
}

impl CoveringSpec {
    pub fn new(
        cover: Arc<AlgebraPresentation>,
        base: Arc<AlgebraPresentation>,
        vertex_map: Vec<usize>,
        arrow_map: Vec<usize>,
    ) -> Result<Self> {
        let (cq, bq) = (cover.quiver(), base.quiver());
        if vertex_map.len() != cq.num_vertices() || arrow_map.len() != cq.arrows().len() {
            return Err(Error::Shape("covering maps must cover every vertex and arrow".into()));
        }
        if vertex_map.iter().any(|&v| v >= bq.num_vertices()) || arrow_map.iter().any(|&a| a >= bq.arrows().len()) {
            return Err(Error::Quiver("covering maps into nonexistent base vertex or arrow".into()));
        }
        for (a, &b) in cq.arrows().iter().zip(&arrow_map) {
            let ba = bq.arrow(b);
            if vertex_map[a.source] != ba.source || vertex_map[a.target] != ba.target {
                return Err(Error::Quiver(format!(
                    "covering arrow {} does not lie over {}",
                    a.label, ba.label
                )));
            }
        }
        if cover.field() != base.field() {
            return Err(Error::AlgebraMismatch);
        }
        Ok(CoveringSpec { cover, base, vertex_map, arrow_map })
    }

    pub fn identity(alg: &Arc<AlgebraPresentation>) -> Self {
        let q = alg.quiver();
        CoveringSpec {
            cover: alg.clone(),
            base: alg.clone(),
            vertex_map: (0..q.num_vertices()).collect(),
            arrow_map: (0..q.arrows().len()).collect(),
        }
    }

    pub fn cover(&self) -> &Arc<AlgebraPresentation> {
        &self.cover
    }
    pub fn base(&self) -> &Arc<AlgebraPresentation> {
        &self.base
    }
    pub fn vertex_map(&self) -> &[usize] {
        &self.vertex_map
    }
    pub fn arrow_map(&self) -> &[usize] {
        &self.arrow_map
    }
}

/// Base module whose component at `v` is the direct sum over the fibre of `v`
/// (in covering-vertex order); every covering arrow contributes one block.
pub fn push_down(spec: &CoveringSpec, xhat: &Representation) -> Result<Representation> {
    if **xhat.algebra() != *spec.cover {
        return Err(Error::AlgebraMismatch);
    }
    let base = &spec.base;
    let n = base.num_vertices();
    let mut dims = vec![0; n];
    let mut offset = vec![0; spec.vertex_map.len()];
    for (w, &v) in spec.vertex_map.iter().enumerate() {
        offset[w] = dims[v];
        dims[v] += xhat.dim(w);
    }
    let f = base.field();
    let mut maps: Vec<Matrix> =
        base.quiver().arrows().iter().map(|a| Matrix::zeros(f, dims[a.target], dims[a.source])).collect();
    for (id, a) in spec.cover.quiver().arrows().iter().enumerate() {
        maps[spec.arrow_map[id]].set_block(offset[a.target], offset[a.source], xhat.map(id));
    }
    Representation::new(base.clone(), dims, maps)
}

/// True iff all arrows starting at each vertex have the same kernel.
pub fn kernels_agree(x: &Representation) -> bool {
    let q = x.algebra().quiver();
    (0..q.num_vertices()).all(|v| {
        let kernels: Vec<_> = q.arrows_from(v).map(|a| x.map(a).null_space()).collect();
        kernels.windows(2).all(|w| w[0] == w[1])
    })
}

/// The covering-quiver module `Y_n` (n >= 1) over the universal cover of the
/// example4 quiver, together with its covering spec.
///
/// The cover has vertices `c_1..c_n`, `b_0..b_n` and `a_k, a'_k` for each `b_k`, with
/// `beta_k: c_k -> b_{k-1}`, `beta'_k: c_k -> b_k`, `alpha_k: b_k -> a_k`,
/// `alpha'_k: b_k -> a'_k`. `Y_n` is one-dimensional everywhere except at the inner
/// `b_k`, where it is two-dimensional and `alpha_k = alpha'_k = [1 1]`. Its length is
/// `5n + 2` with top of length `n`.
pub fn y_module(base: &Arc<AlgebraPresentation>, n: usize) -> Result<(CoveringSpec, Representation)> {
    if n == 0 {
        return Err(Error::Precondition("Y_n needs n >= 1".into()));
    }
    let bq = base.quiver();
    let (va, vb, vc) = (bq.vertex("a")?, bq.vertex("b")?, bq.vertex("c")?);
    let (alpha, alpha2) = (bq.arrow_id("alpha")?, bq.arrow_id("alpha'")?);
    let (beta, beta2) = (bq.arrow_id("beta")?, bq.arrow_id("beta'")?);

    let mut vertices: Vec<String> = Vec::new();
    let mut vmap = Vec::new();
    let mut dims = Vec::new();
    for k in 1..=n {
        vertices.push(format!("c{k}"));
        vmap.push(vc);
        dims.push(1);
    }
    for k in 0..=n {
        vertices.push(format!("b{k}"));
        vmap.push(vb);
        dims.push(if k == 0 || k == n { 1 } else { 2 });
    }
    for k in 0..=n {
        for s in ["", "'"] {
            vertices.push(format!("a{k}{s}"));
            vmap.push(va);
            dims.push(1);
        }
    }
    let mut arrows: Vec<(String, String, String)> = Vec::new();
    let mut amap = Vec::new();
    for k in 1..=n {
        arrows.push((format!("beta{k}"), format!("c{k}"), format!("b{}", k - 1)));
        amap.push(beta);
        arrows.push((format!("beta'{k}"), format!("c{k}"), format!("b{k}")));
        amap.push(beta2);
    }
    for k in 0..=n {
        arrows.push((format!("alpha{k}"), format!("b{k}"), format!("a{k}")));
        amap.push(alpha);
        arrows.push((format!("alpha'{k}"), format!("b{k}"), format!("a{k}'")));
        amap.push(alpha2);
    }
    let quiver = Quiver::new(
        &vertices,
        &arrows.iter().map(|(l, s, t)| (l.clone(), s.clone(), t.clone())).collect::<Vec<_>>(),
    )?;
    let cover = AlgebraPresentation::new(quiver, Vec::new(), base.field())?;
    let f = base.field();
    let inner = |k: usize| k > 0 && k < n;
    let mut maps = Vec::new();
    for k in 1..=n {
        // beta_k lands in b_{k-1}: second basis vector if inner
        let tgt = k - 1;
        maps.push(if inner(tgt) { Matrix::from_rows(f, &[vec![0], vec![1]])? } else { Matrix::identity(f, 1) });
        // beta'_k lands in b_k: first basis vector if inner
        maps.push(if inner(k) { Matrix::from_rows(f, &[vec![1], vec![0]])? } else { Matrix::identity(f, 1) });
    }
    for k in 0..=n {
        let m = if inner(k) { Matrix::from_rows(f, &[vec![1, 1]])? } else { Matrix::identity(f, 1) };
        maps.push(m.clone());
        maps.push(m);
    }
    let xhat = Representation::new(cover.clone(), dims, maps)?;
    let spec = CoveringSpec::new(cover, base.clone(), vmap, amap)?;
    Ok((spec, xhat))
}
