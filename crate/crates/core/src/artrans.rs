//! Auslander-Reiten translation `τ = D Tr` and `τ⁻ = Tr D` via minimal projective
//! presentations.

use std::sync::Arc;

use crate::ffla::Matrix;
use crate::presentation::{projective, AlgebraPresentation};
use crate::repcore::{direct_sum, Morphism, Representation, Submodule};

/// `p1 --d--> p0 --pi--> x --> 0` with `p0 --pi--> x` a projective cover and
/// `p1 -> ker pi` a projective cover.
#[derive(Clone, Debug)]
pub struct ProjectivePresentation {
    /// Vertex of each indecomposable summand `P(v)` of `p0`, in block order.
    pub p0_vertices: Vec<usize>,
    pub p1_vertices: Vec<usize>,
    pub p0: Representation,
    pub p1: Representation,
    pub d: Morphism,
    pub pi: Morphism,
}

impl ProjectivePresentation {
    /// `coker d` computed from the presentation alone.
    pub fn cokernel(&self) -> Representation {
        self.d.image().quotient(&self.p0).0
    }

    /// The image of `d` lies in the radical of `p0`.
    pub fn is_minimal(&self) -> bool {
        self.d.image().is_contained_in(&self.p0.radical())
    }
}

/// The map `⊕ P(v_k) -> y` sending the generator of the `k`-th summand to `images[k]`
/// (a vector of `y` at `vertices[k]`).
pub fn map_from_projectives(
    alg: &Arc<AlgebraPresentation>,
    vertices: &[usize],
    images: &[Vec<u8>],
    y: &Representation,
) -> (Representation, Morphism) {
    let f = alg.field();
    let summands: Vec<Representation> = vertices.iter().map(|&v| projective(alg, v)).collect();
    let p = direct_sum(alg, &summands).expect("same algebra");
    let maps = (0..alg.num_vertices())
        .map(|w| {
            let mut cols: Vec<Vec<u8>> = Vec::new();
            for (&v, img) in vertices.iter().zip(images) {
                for path in alg.residue_basis(v, w) {
                    cols.push(y.path_action(v, path).mul_vec(img));
                }
            }
            Matrix::from_columns(f, y.dim(w), &cols)
        })
        .collect();
    let m = Morphism::new(p.clone(), y.clone(), maps).expect("generator images define a module map");
    (p, m)
}

/// Generators of a top complement: unit vectors outside the radical at each vertex.
fn top_generators(x: &Representation) -> (Vec<usize>, Vec<Vec<u8>>) {
    let rad = x.radical();
    let mut verts = Vec::new();
    let mut vecs = Vec::new();
    for (v, s) in rad.spaces().iter().enumerate() {
        for c in s.complement_columns() {
            let mut e = vec![0u8; x.dim(v)];
            e[c] = 1;
            verts.push(v);
            vecs.push(e);
        }
    }
    (verts, vecs)
}

pub fn minimal_presentation(x: &Representation) -> ProjectivePresentation {
    let alg = x.algebra();
    let (v0, g0) = top_generators(x);
    let (p0, pi) = map_from_projectives(alg, &v0, &g0, x);
    let kernel: Submodule = pi.kernel();
    let (k, incl) = kernel.to_representation(&p0);
    let (v1, g1) = top_generators(&k);
    let images: Vec<Vec<u8>> = v1.iter().zip(&g1).map(|(&v, g)| incl.map(v).mul_vec(g)).collect();
    let (p1, d) = map_from_projectives(alg, &v1, &images, &p0);
    ProjectivePresentation { p0_vertices: v0, p1_vertices: v1, p0, p1, d, pi }
}

/// The transpose `Tr x = coker Hom(d, A)`, a module over the opposite algebra.
pub fn transpose(x: &Representation) -> Representation {
    let alg = x.algebra();
    let op = alg.opposite();
    let pres = minimal_presentation(x);
    // p1 block offsets at each vertex, to read off the path coefficients of d
    let p0_offsets = block_offsets(alg, &pres.p0_vertices);
    let f = alg.field();
    let p1_offsets = block_offsets(alg, &pres.p1_vertices);
    // Hom(P0, A) -> Hom(P1, A): generator of P^op(w_m) goes to the reversed path
    // coefficients of d[m][k] inside P^op(v_k) at vertex w_m.
    let target_dims: Vec<usize> = (0..alg.num_vertices())
        .map(|u| pres.p1_vertices.iter().map(|&v| op.residue_basis(v, u).len()).sum())
        .collect();
    let summands: Vec<Representation> = pres.p1_vertices.iter().map(|&v| projective(&op, v)).collect();
    let p1_star = direct_sum(&op, &summands).expect("same algebra");
    debug_assert_eq!(p1_star.dims(), &target_dims[..]);
    let mut images = Vec::new();
    for (m, &w) in pres.p0_vertices.iter().enumerate() {
        let mut img = vec![0u8; p1_star.dim(w)];
        let mut op_off = 0;
        for (k, &v) in pres.p1_vertices.iter().enumerate() {
            // column of the generator of the k-th p1 summand, at vertex v
            let col = pres.d.map(v).column(p1_offsets[v][k]);
            let a_paths = alg.residue_basis(w, v);
            let start = p0_offsets[v][m];
            let op_len = op.residue_basis(v, w).len();
            for (i, path) in a_paths.iter().enumerate() {
                let c = col[start + i];
                if c == 0 {
                    continue;
                }
                let rev: Vec<usize> = path.iter().rev().copied().collect();
                let (_, coords) = op.normal_form(v, &rev);
                for (j, &e) in coords.iter().enumerate() {
                    img[op_off + j] = f.add(img[op_off + j], f.mul(c, e));
                }
            }
            op_off += op_len;
        }
        images.push(img);
    }
    let (_, dstar) = map_from_projectives(&op, &pres.p0_vertices, &images, &p1_star);
    dstar.image().quotient(&p1_star).0
}

/// `offsets[u][k]`: first coordinate of the `k`-th summand `P(vertices[k])` at `u`.
fn block_offsets(alg: &AlgebraPresentation, vertices: &[usize]) -> Vec<Vec<usize>> {
    (0..alg.num_vertices())
        .map(|u| {
            let mut acc = 0;
            vertices
                .iter()
                .map(|&v| {
                    let o = acc;
                    acc += alg.residue_basis(v, u).len();
                    o
                })
                .collect()
        })
        .collect()
}

/// `τ x = D Tr x`; zero exactly on projective modules.
pub fn translate(x: &Representation) -> Representation {
    transpose(x).dual_onto(x.algebra())
}

/// `τ⁻ x = Tr D x`; zero exactly on injective modules.
pub fn inverse_translate(x: &Representation) -> Representation {
    transpose(&x.dual()).rebind(x.algebra())
}
