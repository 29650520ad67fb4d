use std::cmp::Ordering;
use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use rand::Rng;
use serde::Serialize;

use crate::caps::Caps;
use crate::error::Result;
use crate::ffla::Matrix;

use super::{hom_dim, hom_space, Representation};

/// Cheap isomorphism invariants. Equal fingerprints are necessary, not sufficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Fingerprint {
    pub dims: Vec<usize>,
    pub top: Vec<usize>,
    pub socle: Vec<usize>,
    pub end_dim: usize,
    /// Rank of every arrow matrix.
    pub ranks: Vec<usize>,
}

pub fn fingerprint(x: &Representation) -> Fingerprint {
    Fingerprint {
        dims: x.dims().to_vec(),
        top: x.top_dims(),
        socle: x.socle_dims(),
        end_dim: hom_dim(x, x),
        ranks: x.maps().iter().map(Matrix::rank).collect(),
    }
}

/// Deterministic hash of the raw data, used to salt randomized searches so that
/// results do not depend on evaluation order.
pub(crate) fn rep_hash(x: &Representation) -> u64 {
    let mut h = DefaultHasher::new();
    x.dims().hash(&mut h);
    for m in x.maps() {
        m.data().hash(&mut h);
    }
    h.finish()
}

/// Total order used to list modules: length, dimension vector, fingerprint, then
/// the raw matrices.
pub fn canonical_cmp(a: &Representation, b: &Representation) -> Ordering {
    a.length()
        .cmp(&b.length())
        .then_with(|| a.dims().cmp(b.dims()))
        .then_with(|| fingerprint(a).cmp(&fingerprint(b)))
        .then_with(|| a.maps().cmp(b.maps()))
}

/// Decides `x ≅ y` by searching `Hom(x, y)` for an invertible element.
///
/// Random combinations are tried first; if none is invertible and the Hom space is
/// small enough (`p^d <= 2^exhaustive_bits`) every element is checked, making a
/// negative answer exact. Beyond the cap a negative answer rests on the random
/// samples only.
pub fn iso_test(x: &Representation, y: &Representation, caps: &Caps) -> Result<bool> {
    x.require_same_algebra(y)?;
    if x.dims() != y.dims() {
        return Ok(false);
    }
    if x.is_zero() {
        return Ok(true);
    }
    let ranks = |r: &Representation| r.maps().iter().map(Matrix::rank).collect::<Vec<_>>();
    if ranks(x) != ranks(y) || x.top_dims() != y.top_dims() || x.socle_dims() != y.socle_dims() {
        return Ok(false);
    }
    let basis = hom_space(x, y);
    let d = basis.len();
    if d == 0 || hom_dim(y, x) != d || hom_dim(x, x) != d || hom_dim(y, y) != d {
        return Ok(false);
    }
    let f = x.field();
    let combine = |coefs: &[u8]| -> Vec<Matrix> {
        let mut acc: Vec<Matrix> = (0..x.dims().len()).map(|v| Matrix::zeros(f, y.dim(v), x.dim(v))).collect();
        for (c, b) in coefs.iter().zip(&basis) {
            if *c != 0 {
                for (m, n) in acc.iter_mut().zip(b) {
                    m.add_scaled(*c, n);
                }
            }
        }
        acc
    };
    let invertible = |maps: &[Matrix]| maps.iter().all(Matrix::is_invertible);
    let mut rng = caps.rng(rep_hash(x) ^ rep_hash(y).rotate_left(17));
    for _ in 0..caps.random_tries {
        let coefs: Vec<u8> = (0..d).map(|_| rng.gen_range(0..f.p())).collect();
        if invertible(&combine(&coefs)) {
            return Ok(true);
        }
    }
    if caps.exhaustive_ok(f.p(), d) {
        return Ok(f.all_vectors(d).skip(1).any(|c| invertible(&combine(&c))));
    }
    Ok(false)
}
