use std::collections::{HashMap, HashSet, VecDeque};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::ffla::{Matrix, Subspace};

use super::{Morphism, Representation};

/// An arrow-stable family of subspaces of an ambient representation, one per
/// vertex, each kept in reduced echelon form. The ambient module is passed to the
/// methods that need it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Submodule {
    spaces: Vec<Subspace>,
}

pub type SubmoduleHandle = Submodule;

impl Submodule {
    pub fn new(ambient: &Representation, spaces: Vec<Subspace>) -> Result<Self> {
        if spaces.len() != ambient.dims().len()
            || spaces.iter().zip(ambient.dims()).any(|(s, &d)| s.ambient() != d)
        {
            return Err(Error::Shape("subspace family does not match the ambient dimensions".into()));
        }
        let s = Submodule { spaces };
        if !s.is_arrow_stable(ambient) {
            return Err(Error::Precondition("subspace family is not arrow-stable".into()));
        }
        Ok(s)
    }

    pub(crate) fn from_spaces_unchecked(spaces: Vec<Subspace>) -> Self {
        Submodule { spaces }
    }

    pub fn zero(x: &Representation) -> Self {
        Submodule { spaces: x.dims().iter().map(|&d| Subspace::zero(x.field(), d)).collect() }
    }

    pub fn full(x: &Representation) -> Self {
        Submodule { spaces: x.dims().iter().map(|&d| Subspace::full(x.field(), d)).collect() }
    }

    pub fn spaces(&self) -> &[Subspace] {
        &self.spaces
    }
    pub fn dims(&self) -> Vec<usize> {
        self.spaces.iter().map(Subspace::dim).collect()
    }
    pub fn length(&self) -> usize {
        self.spaces.iter().map(Subspace::dim).sum()
    }
    pub fn is_zero(&self) -> bool {
        self.spaces.iter().all(Subspace::is_zero)
    }
    pub fn is_full(&self) -> bool {
        self.spaces.iter().all(Subspace::is_full)
    }

    pub fn is_arrow_stable(&self, x: &Representation) -> bool {
        x.algebra().quiver().arrows().iter().enumerate().all(|(id, a)| {
            self.spaces[a.source]
                .basis()
                .iter()
                .all(|b| self.spaces[a.target].contains(&x.map(id).mul_vec(b)))
        })
    }

    pub fn is_contained_in(&self, other: &Submodule) -> bool {
        self.spaces.iter().zip(&other.spaces).all(|(a, b)| a.is_subspace_of(b))
    }

    pub fn join(&self, other: &Submodule) -> Submodule {
        Submodule { spaces: self.spaces.iter().zip(&other.spaces).map(|(a, b)| a.join(b)).collect() }
    }

    pub fn intersect(&self, other: &Submodule) -> Submodule {
        Submodule { spaces: self.spaces.iter().zip(&other.spaces).map(|(a, b)| a.intersect(b)).collect() }
    }

    /// Smallest submodule containing `self` and the homogeneous vector `vec` at `v`.
    pub fn extended_by(&self, x: &Representation, v: usize, vec: Vec<u8>) -> Submodule {
        let mut spaces = self.spaces.clone();
        let q = x.algebra().quiver();
        let mut stack = vec![(v, vec)];
        while let Some((i, w)) = stack.pop() {
            if spaces[i].insert(w.clone()) {
                for a in q.arrows_from(i) {
                    stack.push((q.arrow(a).target, x.map(a).mul_vec(&w)));
                }
            }
        }
        Submodule { spaces }
    }

    /// Submodule generated by homogeneous vectors.
    pub fn from_generators(x: &Representation, gens: &[(usize, Vec<u8>)]) -> Result<Submodule> {
        let mut s = Submodule::zero(x);
        for (v, vec) in gens {
            if *v >= x.dims().len() || vec.len() != x.dim(*v) {
                return Err(Error::Shape(format!("generator does not lie in component {v}")));
            }
            if vec.iter().any(|&c| c >= x.field().p()) {
                return Err(Error::EntryOutOfRange { value: 0, p: x.field().p() });
            }
            s = s.extended_by(x, *v, vec.clone());
        }
        Ok(s)
    }

    /// The submodule as a representation in its echelon basis, with its inclusion.
    pub fn to_representation(&self, x: &Representation) -> (Representation, Morphism) {
        let f = x.field();
        let dims = self.dims();
        let maps = x
            .algebra()
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .map(|(id, a)| {
                let cols: Vec<Vec<u8>> = self.spaces[a.source]
                    .basis()
                    .iter()
                    .map(|b| {
                        self.spaces[a.target]
                            .coordinates(&x.map(id).mul_vec(b))
                            .expect("submodule is arrow-stable")
                    })
                    .collect();
                Matrix::from_columns(f, dims[a.target], &cols)
            })
            .collect();
        let sub = Representation::new_unchecked(x.algebra().clone(), dims, maps);
        let incl = self.spaces.iter().map(|s| s.basis_matrix().transpose()).collect();
        let m = Morphism::new_unchecked(sub.clone(), x.clone(), incl);
        (sub, m)
    }

    /// The quotient `x / self` on the complementary unit vectors, with its projection.
    pub fn quotient(&self, x: &Representation) -> (Representation, Morphism) {
        let f = x.field();
        let comps: Vec<Vec<usize>> = self.spaces.iter().map(Subspace::complement_columns).collect();
        let project = |v: usize, mut w: Vec<u8>| -> Vec<u8> {
            self.spaces[v].reduce(&mut w);
            comps[v].iter().map(|&c| w[c]).collect()
        };
        let dims: Vec<usize> = comps.iter().map(Vec::len).collect();
        let maps = x
            .algebra()
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .map(|(id, a)| {
                let cols: Vec<Vec<u8>> =
                    comps[a.source].iter().map(|&c| project(a.target, x.map(id).column(c))).collect();
                Matrix::from_columns(f, dims[a.target], &cols)
            })
            .collect();
        let quot = Representation::new_unchecked(x.algebra().clone(), dims.clone(), maps);
        let proj = (0..x.dims().len())
            .map(|v| {
                let cols: Vec<Vec<u8>> = (0..x.dim(v))
                    .map(|k| {
                        let mut e = vec![0u8; x.dim(v)];
                        e[k] = 1;
                        project(v, e)
                    })
                    .collect();
                Matrix::from_columns(f, dims[v], &cols)
            })
            .collect();
        let m = Morphism::new_unchecked(x.clone(), quot.clone(), proj);
        (quot, m)
    }
}

/// All submodules of a module, with the covering relation.
#[derive(Clone, Debug)]
pub struct SubmoduleLattice {
    /// Sorted by length, then by echelon bases.
    pub subs: Vec<Submodule>,
    /// `lower_covers[i]`: indices of the maximal proper submodules of `subs[i]`.
    pub lower_covers: Vec<Vec<usize>>,
}

impl SubmoduleLattice {
    pub fn index_of(&self, s: &Submodule) -> Option<usize> {
        self.subs.binary_search_by(|t| (t.length(), t).cmp(&(s.length(), s))).ok()
    }
}

pub(crate) fn check_submodule_cap(x: &Representation, caps: &Caps) -> Result<()> {
    let bits = x.length() as f64 * (x.field().p() as f64).log2();
    if bits > caps.submodule_bits as f64 + 1e-9 {
        return Err(Error::cap(
            "submodule enumeration",
            format!(
                "{}^{} candidate vectors exceeds 2^{}",
                x.field().p(),
                x.length(),
                caps.submodule_bits
            ),
        ));
    }
    Ok(())
}

/// Enumerates every submodule by joining cyclic submodules onto known ones.
pub fn submodule_lattice(x: &Representation, caps: &Caps) -> Result<SubmoduleLattice> {
    check_submodule_cap(x, caps)?;
    let f = x.field();
    let points: Vec<Vec<Vec<u8>>> = x.dims().iter().map(|&d| f.projective_points(d).collect()).collect();
    let mut found: Vec<Submodule> = vec![Submodule::zero(x)];
    let mut index: HashMap<Submodule, usize> = HashMap::new();
    index.insert(found[0].clone(), 0);
    let mut edges: HashSet<(usize, usize)> = HashSet::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let base = found[i].clone();
        let len = base.length();
        for (v, pts) in points.iter().enumerate() {
            for u in pts {
                if base.spaces[v].contains(u) {
                    continue;
                }
                let next = base.extended_by(x, v, u.clone());
                let j = match index.get(&next) {
                    Some(&j) => j,
                    None => {
                        let j = found.len();
                        index.insert(next.clone(), j);
                        found.push(next.clone());
                        queue.push_back(j);
                        j
                    }
                };
                if next.length() == len + 1 {
                    edges.insert((i, j));
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..found.len()).collect();
    order.sort_by(|&a, &b| (found[a].length(), &found[a]).cmp(&(found[b].length(), &found[b])));
    let mut rank = vec![0; found.len()];
    for (pos, &old) in order.iter().enumerate() {
        rank[old] = pos;
    }
    let mut lower_covers = vec![Vec::new(); found.len()];
    for (lo, hi) in edges {
        lower_covers[rank[hi]].push(rank[lo]);
    }
    for c in lower_covers.iter_mut() {
        c.sort_unstable();
    }
    let mut slots: Vec<Option<Submodule>> = found.into_iter().map(Some).collect();
    let subs = order.iter().map(|&old| slots[old].take().expect("each index once")).collect();
    Ok(SubmoduleLattice { subs, lower_covers })
}

/// All submodules, each listed once, ordered by length then echelon bases.
pub fn enumerate_submodules(x: &Representation, caps: &Caps) -> Result<Vec<Submodule>> {
    Ok(submodule_lattice(x, caps)?.subs)
}
