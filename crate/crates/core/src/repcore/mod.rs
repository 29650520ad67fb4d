//! Representations of bound quivers and the linear algebra built on them.

mod covering;
mod decompose;
mod io;
mod iso;
mod morphism;
mod submodule;

use std::fmt;
use std::sync::Arc;

pub use covering::{kernels_agree, push_down, y_module, CoveringSpec};
pub use decompose::{decompose, endomorphism_analysis, is_indecomposable, EndAnalysis};
pub use io::{load_module, parse_module, resolve_algebra, write_module};
pub use iso::{canonical_cmp, fingerprint, iso_test, Fingerprint};
pub use morphism::{hom_basis, hom_dim, hom_space, is_cogenerated, Morphism, VertexMaps};
pub use submodule::{enumerate_submodules, submodule_lattice, Submodule, SubmoduleHandle, SubmoduleLattice};

use crate::error::{Error, Result};
use crate::ffla::{Field, Matrix, Subspace};
use crate::presentation::AlgebraPresentation;

/// A finite-dimensional representation: one vector space per vertex, one matrix per
/// arrow (shape `dim target x dim source`), satisfying every relation.
#[derive(Clone)]
pub struct Representation {
    alg: Arc<AlgebraPresentation>,
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

impl PartialEq for Representation {
    fn eq(&self, other: &Self) -> bool {
        self.same_algebra(other) && self.dims == other.dims && self.maps == other.maps
    }
}
impl Eq for Representation {}

impl fmt::Debug for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Representation")
            .field("dims", &self.dims)
            .field("maps", &self.maps)
            .finish()
    }
}

impl Representation {
    /// Validates shapes and relations.
    pub fn new(alg: Arc<AlgebraPresentation>, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Self> {
        let q = alg.quiver();
        if dims.len() != q.num_vertices() {
            return Err(Error::Shape(format!(
                "{} dimensions for {} vertices",
                dims.len(),
                q.num_vertices()
            )));
        }
        if maps.len() != q.arrows().len() {
            return Err(Error::Shape(format!("{} matrices for {} arrows", maps.len(), q.arrows().len())));
        }
        for (a, m) in q.arrows().iter().zip(&maps) {
            if m.rows() != dims[a.target] || m.cols() != dims[a.source] || m.field() != alg.field() {
                return Err(Error::Shape(format!(
                    "arrow {} needs a {}x{} matrix over F_{}, got {}x{} over F_{}",
                    a.label,
                    dims[a.target],
                    dims[a.source],
                    alg.field().p(),
                    m.rows(),
                    m.cols(),
                    m.field().p()
                )));
            }
        }
        let rep = Representation { alg, dims, maps };
        rep.check()?;
        Ok(rep)
    }

    pub(crate) fn new_unchecked(alg: Arc<AlgebraPresentation>, dims: Vec<usize>, maps: Vec<Matrix>) -> Self {
        let rep = Representation { alg, dims, maps };
        debug_assert!(rep.check().is_ok(), "relation violated in internal construction");
        rep
    }

    pub fn zero_maps(alg: Arc<AlgebraPresentation>, dims: Vec<usize>) -> Self {
        let f = alg.field();
        let maps = alg
            .quiver()
            .arrows()
            .iter()
            .map(|a| Matrix::zeros(f, dims[a.target], dims[a.source]))
            .collect();
        Representation { alg, dims, maps }
    }

    pub fn zero(alg: Arc<AlgebraPresentation>) -> Self {
        let n = alg.num_vertices();
        Self::zero_maps(alg, vec![0; n])
    }

    pub fn algebra(&self) -> &Arc<AlgebraPresentation> {
        &self.alg
    }
    pub fn field(&self) -> Field {
        self.alg.field()
    }
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }
    pub fn dim(&self, v: usize) -> usize {
        self.dims[v]
    }
    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }
    pub fn map(&self, arrow: usize) -> &Matrix {
        &self.maps[arrow]
    }
    pub fn length(&self) -> usize {
        self.dims.iter().sum()
    }
    pub fn is_zero(&self) -> bool {
        self.length() == 0
    }

    pub fn same_algebra(&self, other: &Representation) -> bool {
        Arc::ptr_eq(&self.alg, &other.alg) || *self.alg == *other.alg
    }

    pub fn require_same_algebra(&self, other: &Representation) -> Result<()> {
        if self.same_algebra(other) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    /// Matrix by which a path (traversal order, starting at `start`) acts.
    pub fn path_action(&self, start: usize, path: &[usize]) -> Matrix {
        let mut m = Matrix::identity(self.field(), self.dims[start]);
        for &a in path {
            m = self.maps[a].mul(&m);
        }
        m
    }

    /// Confirms that all relations vanish; names the first violated relation otherwise.
    pub fn check(&self) -> Result<()> {
        let f = self.field();
        for (i, r) in self.alg.relations().iter().enumerate() {
            let mut acc = Matrix::zeros(f, self.dims[r.target], self.dims[r.source]);
            for (c, path) in &r.terms {
                acc.add_scaled(*c, &self.path_action(r.source, path));
            }
            if !acc.is_zero() {
                return Err(Error::RelationViolated {
                    index: i,
                    relation: r.display(self.alg.quiver()),
                });
            }
        }
        Ok(())
    }

    /// Jordan-Hölder multiplicity of the simple at `v`.
    pub fn jh_multiplicity(&self, v: usize) -> usize {
        self.dims[v]
    }

    pub fn is_semisimple(&self) -> bool {
        self.maps.iter().all(Matrix::is_zero)
    }

    /// The radical: sum of the images of all arrows.
    pub fn radical(&self) -> Submodule {
        let f = self.field();
        let mut spaces: Vec<Subspace> = self.dims.iter().map(|&d| Subspace::zero(f, d)).collect();
        for (a, m) in self.alg.quiver().arrows().iter().zip(&self.maps) {
            spaces[a.target] = spaces[a.target].join(&m.column_space());
        }
        Submodule::from_spaces_unchecked(spaces)
    }

    pub fn top_dims(&self) -> Vec<usize> {
        let rad = self.radical();
        self.dims.iter().zip(rad.spaces()).map(|(&d, s)| d - s.dim()).collect()
    }

    pub fn socle(&self) -> Submodule {
        let f = self.field();
        let q = self.alg.quiver();
        let spaces = (0..self.dims.len())
            .map(|v| {
                let mut s = Subspace::full(f, self.dims[v]);
                for a in q.arrows_from(v) {
                    s = s.intersect(&self.maps[a].null_space());
                }
                s
            })
            .collect();
        Submodule::from_spaces_unchecked(spaces)
    }

    pub fn socle_dims(&self) -> Vec<usize> {
        self.socle().dims()
    }

    /// True iff the module is isomorphic to its projective cover.
    pub fn is_projective(&self) -> bool {
        let cover: usize = self
            .top_dims()
            .iter()
            .enumerate()
            .map(|(v, &t)| t * (0..self.dims.len()).map(|w| self.alg.residue_basis(v, w).len()).sum::<usize>())
            .sum();
        cover == self.length()
    }

    /// True iff the module is isomorphic to its injective envelope.
    pub fn is_injective(&self) -> bool {
        self.dual().is_projective()
    }

    /// The dual representation over the opposite algebra.
    pub fn dual(&self) -> Representation {
        self.dual_onto(&self.alg.opposite())
    }

    /// The dual representation, placed over `target`, which must be the opposite of
    /// this representation's algebra.
    pub fn dual_onto(&self, target: &Arc<AlgebraPresentation>) -> Representation {
        debug_assert!(target.num_vertices() == self.alg.num_vertices());
        let maps = self.maps.iter().map(Matrix::transpose).collect();
        Representation::new_unchecked(target.clone(), self.dims.clone(), maps)
    }

    /// Reattaches the data to a structurally equal algebra handle.
    pub fn rebind(self, alg: &Arc<AlgebraPresentation>) -> Representation {
        assert!(*self.alg == **alg, "rebind to a different algebra");
        Representation { alg: alg.clone(), ..self }
    }

    /// Restriction to the full subquiver on `vertices`.
    pub fn restrict(&self, vertices: &[usize]) -> Result<Representation> {
        let (sub, arrow_ids) = self.alg.full_subalgebra(vertices)?;
        let dims = vertices.iter().map(|&v| self.dims[v]).collect();
        let maps = arrow_ids.iter().map(|&a| self.maps[a].clone()).collect();
        Representation::new(sub, dims, maps)
    }

    /// Base change `g_v` at every vertex: the new arrow matrices are `g_t M g_s^{-1}`.
    pub fn conjugate(&self, g: &[Matrix]) -> Result<Representation> {
        let inverses: Vec<Matrix> = g
            .iter()
            .map(|m| m.inverse().ok_or_else(|| Error::Precondition("base change is not invertible".into())))
            .collect::<Result<_>>()?;
        let maps = self
            .alg
            .quiver()
            .arrows()
            .iter()
            .zip(&self.maps)
            .map(|(a, m)| g[a.target].mul(m).mul(&inverses[a.source]))
            .collect();
        Representation::new(self.alg.clone(), self.dims.clone(), maps)
    }

    /// Connected components of the support; more than one means decomposable.
    pub fn support_components(&self) -> Vec<Vec<usize>> {
        // only arrows acting nontrivially connect vertices
        let q = self.alg.quiver();
        let mut parent: Vec<usize> = (0..self.dims.len()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for (a, m) in q.arrows().iter().zip(&self.maps) {
            if !m.is_zero() {
                let (x, y) = (find(&mut parent, a.source), find(&mut parent, a.target));
                parent[x] = y;
            }
        }
        let mut by_root: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for v in 0..self.dims.len() {
            if self.dims[v] > 0 {
                let r = find(&mut parent, v);
                by_root.entry(r).or_default().push(v);
            }
        }
        let mut out: Vec<Vec<usize>> = by_root.into_values().collect();
        out.sort();
        out
    }
}

/// Block-diagonal direct sum. All summands must live over `alg`.
pub fn direct_sum(alg: &Arc<AlgebraPresentation>, xs: &[Representation]) -> Result<Representation> {
    for x in xs {
        if !(Arc::ptr_eq(x.algebra(), alg) || **x.algebra() == **alg) {
            return Err(Error::AlgebraMismatch);
        }
    }
    let n = alg.num_vertices();
    let f = alg.field();
    let dims: Vec<usize> = (0..n).map(|v| xs.iter().map(|x| x.dims[v]).sum()).collect();
    let maps = (0..alg.quiver().arrows().len())
        .map(|a| {
            let blocks: Vec<&Matrix> = xs.iter().map(|x| &x.maps[a]).collect();
            Matrix::block_diag(f, &blocks)
        })
        .collect();
    Ok(Representation { alg: alg.clone(), dims, maps })
}

