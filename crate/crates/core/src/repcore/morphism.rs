use crate::error::{Error, Result};
use crate::ffla::{Matrix, Subspace};

use super::{Representation, Submodule};

/// One matrix per vertex, `f_v: X_v -> Y_v` of shape `dim Y_v x dim X_v`.
pub type VertexMaps = Vec<Matrix>;

/// A module homomorphism between two representations over the same algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    source: Representation,
    target: Representation,
    maps: VertexMaps,
}

impl Morphism {
    /// Validates shapes and the intertwining condition `Y(α) f_i = f_j X(α)`.
    pub fn new(source: Representation, target: Representation, maps: VertexMaps) -> Result<Self> {
        source.require_same_algebra(&target)?;
        if maps.len() != source.dims().len() {
            return Err(Error::Shape("one matrix per vertex expected".into()));
        }
        for (v, m) in maps.iter().enumerate() {
            if m.rows() != target.dim(v) || m.cols() != source.dim(v) {
                return Err(Error::Shape(format!(
                    "vertex {v}: expected {}x{}, got {}x{}",
                    target.dim(v),
                    source.dim(v),
                    m.rows(),
                    m.cols()
                )));
            }
        }
        if !intertwines(&source, &target, &maps) {
            return Err(Error::Precondition("vertex maps do not commute with the arrows".into()));
        }
        Ok(Morphism { source, target, maps })
    }

    pub(crate) fn new_unchecked(source: Representation, target: Representation, maps: VertexMaps) -> Self {
        debug_assert!(intertwines(&source, &target, &maps));
        Morphism { source, target, maps }
    }

    pub fn identity(x: &Representation) -> Self {
        let f = x.field();
        let maps = x.dims().iter().map(|&d| Matrix::identity(f, d)).collect();
        Morphism { source: x.clone(), target: x.clone(), maps }
    }

    pub fn zero(x: &Representation, y: &Representation) -> Self {
        let f = x.field();
        let maps = (0..x.dims().len()).map(|v| Matrix::zeros(f, y.dim(v), x.dim(v))).collect();
        Morphism { source: x.clone(), target: y.clone(), maps }
    }

    pub fn source(&self) -> &Representation {
        &self.source
    }
    pub fn target(&self) -> &Representation {
        &self.target
    }
    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }
    pub fn map(&self, v: usize) -> &Matrix {
        &self.maps[v]
    }

    /// `after ∘ self`.
    pub fn then(&self, after: &Morphism) -> Result<Morphism> {
        if self.target != after.source {
            return Err(Error::Shape("composition of non-composable morphisms".into()));
        }
        let maps = after.maps.iter().zip(&self.maps).map(|(g, f)| g.mul(f)).collect();
        Ok(Morphism { source: self.source.clone(), target: after.target.clone(), maps })
    }

    pub fn kernel(&self) -> Submodule {
        Submodule::from_spaces_unchecked(self.maps.iter().map(Matrix::null_space).collect())
    }

    pub fn image(&self) -> Submodule {
        Submodule::from_spaces_unchecked(self.maps.iter().map(Matrix::column_space).collect())
    }

    pub fn is_injective(&self) -> bool {
        self.maps.iter().all(|m| m.rank() == m.cols())
    }

    pub fn is_surjective(&self) -> bool {
        self.maps.iter().all(|m| m.rank() == m.rows())
    }

    pub fn is_iso(&self) -> bool {
        self.maps.iter().all(Matrix::is_invertible)
    }

    pub fn is_zero(&self) -> bool {
        self.maps.iter().all(Matrix::is_zero)
    }

    /// Sum of two parallel morphisms.
    pub fn add(&self, other: &Morphism) -> Result<Morphism> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::Shape("sum of non-parallel morphisms".into()));
        }
        let maps = self.maps.iter().zip(&other.maps).map(|(a, b)| a.add(b)).collect();
        Ok(Morphism { maps, ..self.clone() })
    }

    pub fn scaled(&self, c: u8) -> Morphism {
        Morphism { maps: self.maps.iter().map(|m| m.scaled(c)).collect(), ..self.clone() }
    }
}

fn intertwines(x: &Representation, y: &Representation, f: &[Matrix]) -> bool {
    x.algebra()
        .quiver()
        .arrows()
        .iter()
        .enumerate()
        .all(|(id, a)| y.map(id).mul(&f[a.source]) == f[a.target].mul(x.map(id)))
}

/// Basis of `Hom(x, y)` as raw vertex maps, from the kernel of the linear system of
/// intertwining constraints.
pub fn hom_space(x: &Representation, y: &Representation) -> Vec<VertexMaps> {
    let f = x.field();
    let n = x.dims().len();
    let mut offsets = Vec::with_capacity(n + 1);
    let mut total = 0;
    for v in 0..n {
        offsets.push(total);
        total += x.dim(v) * y.dim(v);
    }
    offsets.push(total);
    let arrows = x.algebra().quiver().arrows();
    let rows: usize = arrows.iter().map(|a| y.dim(a.target) * x.dim(a.source)).sum();
    let mut sys = Matrix::zeros(f, rows, total);
    let mut row = 0;
    for (id, a) in arrows.iter().enumerate() {
        let (i, j) = (a.source, a.target);
        let (ym, xm) = (y.map(id), x.map(id));
        for r in 0..y.dim(j) {
            for c in 0..x.dim(i) {
                // (Y f_i)[r][c] = sum_k Y[r][k] f_i[k][c]
                for k in 0..y.dim(i) {
                    let coef = ym.get(r, k);
                    if coef != 0 {
                        let col = offsets[i] + k * x.dim(i) + c;
                        sys.set(row, col, f.add(sys.get(row, col), coef));
                    }
                }
                // -(f_j X)[r][c] = -sum_k f_j[r][k] X[k][c]
                for k in 0..x.dim(j) {
                    let coef = xm.get(k, c);
                    if coef != 0 {
                        let col = offsets[j] + r * x.dim(j) + k;
                        sys.set(row, col, f.sub(sys.get(row, col), coef));
                    }
                }
                row += 1;
            }
        }
    }
    sys.kernel_basis()
        .into_iter()
        .map(|vec| {
            (0..n)
                .map(|v| {
                    Matrix::from_vec(f, y.dim(v), x.dim(v), vec[offsets[v]..offsets[v + 1]].to_vec())
                        .expect("residues in range")
                })
                .collect()
        })
        .collect()
}

pub fn hom_dim(x: &Representation, y: &Representation) -> usize {
    hom_space(x, y).len()
}

/// Basis of `Hom(x, y)`.
pub fn hom_basis(x: &Representation, y: &Representation) -> Result<Vec<Morphism>> {
    x.require_same_algebra(y)?;
    Ok(hom_space(x, y)
        .into_iter()
        .map(|maps| Morphism::new_unchecked(x.clone(), y.clone(), maps))
        .collect())
}

/// True iff the common kernel of all maps `x -> m` is zero, i.e. `x` embeds in a
/// finite power of `m`.
pub fn is_cogenerated(x: &Representation, m: &Representation) -> Result<bool> {
    x.require_same_algebra(m)?;
    let basis = hom_space(x, m);
    Ok((0..x.dims().len()).all(|v| {
        let d = x.dim(v);
        if d == 0 {
            return true;
        }
        let mut common = Subspace::full(x.field(), d);
        for f in &basis {
            common = common.intersect(&f[v].null_space());
            if common.is_zero() {
                break;
            }
        }
        common.is_zero()
    }))
}
