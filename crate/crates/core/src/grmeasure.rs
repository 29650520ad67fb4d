//! The Gabriel-Roiter measure.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::repcore::{
    canonical_cmp, fingerprint, is_indecomposable, iso_test, submodule_lattice, Fingerprint, Representation,
    Submodule, SubmoduleLattice,
};

/// A finite set of positive integers, stored increasing, ordered as the binary
/// fraction `Σ 2^{-i}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GRMeasure(Vec<u32>);

impl GRMeasure {
    pub fn new(elements: Vec<u32>) -> Result<Self> {
        if elements.first() == Some(&0) || elements.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Precondition(format!("{elements:?} is not a strictly increasing set of positive integers")));
        }
        Ok(GRMeasure(elements))
    }

    pub fn empty() -> Self {
        GRMeasure(Vec::new())
    }

    pub fn elements(&self) -> &[u32] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn last(&self) -> Option<u32> {
        self.0.last().copied()
    }

    /// `self ∪ {n}` for `n` above every element.
    pub fn extended(&self, n: u32) -> GRMeasure {
        debug_assert!(self.0.last().is_none_or(|&l| l < n));
        let mut v = self.0.clone();
        v.push(n);
        GRMeasure(v)
    }

    /// Exact value `Σ_{i∈I} 2^{-i}`.
    pub fn value(&self) -> BigRational {
        let denom_exp = self.0.last().copied().unwrap_or(0);
        let mut num = BigInt::from(0);
        for &i in &self.0 {
            num += BigInt::from(1) << (denom_exp - i) as usize;
        }
        BigRational::new(num, BigInt::from(1) << denom_exp as usize)
    }
}

pub fn measure_value(m: &GRMeasure) -> BigRational {
    m.value()
}

impl Ord for GRMeasure {
    /// At the first position where the sorted lists differ the smaller element
    /// contributes the larger power of two, so its set is greater; a proper prefix
    /// is smaller.
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.0.iter().zip(&other.0) {
            if a != b {
                return b.cmp(a);
            }
        }
        self.0.len().cmp(&other.0.len())
    }
}

impl PartialOrd for GRMeasure {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub fn compare(a: &GRMeasure, b: &GRMeasure) -> Ordering {
    a.cmp(b)
}

impl fmt::Display for GRMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Serialize for GRMeasure {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

/// Measures of every submodule of a module, with indecomposability flags.
#[derive(Clone, Debug)]
pub struct GrData {
    pub lattice: SubmoduleLattice,
    pub indecomposable: Vec<bool>,
    pub measures: Vec<GRMeasure>,
}

/// Dynamic programme over the submodule lattice: the measure of `U` is the largest
/// measure of its maximal submodules, extended by `|U|` when `U` is indecomposable.
pub fn gr_data(x: &Representation, caps: &Caps) -> Result<GrData> {
    let lattice = submodule_lattice(x, caps)?;
    let indecomposable = lattice
        .subs
        .par_iter()
        .map(|s| if s.is_zero() { Ok(false) } else { is_indecomposable(&s.to_representation(x).0, caps) })
        .collect::<Result<Vec<bool>>>()?;
    let mut measures: Vec<GRMeasure> = Vec::with_capacity(lattice.subs.len());
    for (i, s) in lattice.subs.iter().enumerate() {
        let below = lattice.lower_covers[i].iter().map(|&j| &measures[j]).max().cloned().unwrap_or_default();
        measures.push(if indecomposable[i] { below.extended(s.length() as u32) } else { below });
    }
    Ok(GrData { lattice, indecomposable, measures })
}

pub fn gr_measure(x: &Representation, caps: &Caps) -> Result<GRMeasure> {
    if x.is_zero() {
        return Ok(GRMeasure::empty());
    }
    let data = gr_data(x, caps)?;
    Ok(data.measures.last().cloned().expect("lattice contains the whole module"))
}

/// An indecomposable proper submodule of maximal measure, with that measure; ties go
/// to the submodule whose representation is smallest in canonical order.
pub fn gr_submodule(x: &Representation, caps: &Caps) -> Result<(Submodule, GRMeasure)> {
    if x.length() < 2 {
        return Err(Error::Precondition("a Gabriel-Roiter submodule needs length at least 2".into()));
    }
    if !is_indecomposable(x, caps)? {
        return Err(Error::Precondition("Gabriel-Roiter submodules are defined for indecomposables".into()));
    }
    let data = gr_data(x, caps)?;
    let n = data.lattice.subs.len();
    let candidates: Vec<usize> = (0..n - 1).filter(|&i| data.indecomposable[i]).collect();
    let best = candidates.iter().map(|&i| &data.measures[i]).max().cloned().expect("simple submodules exist");
    let mut ties: Vec<(Representation, usize)> = candidates
        .iter()
        .filter(|&&i| data.measures[i] == best)
        .map(|&i| (data.lattice.subs[i].to_representation(x).0, i))
        .collect();
    ties.sort_by(|a, b| canonical_cmp(&a.0, &b.0).then(a.1.cmp(&b.1)));
    Ok((data.lattice.subs[ties[0].1].clone(), best))
}

/// Memo table for measures of whole modules, keyed by fingerprint and confirmed by
/// an isomorphism test.
#[derive(Default)]
pub struct GrCache {
    table: Mutex<HashMap<Fingerprint, Vec<(Representation, GRMeasure)>>>,
}

impl GrCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn measure(&self, x: &Representation, caps: &Caps) -> Result<GRMeasure> {
        let key = fingerprint(x);
        let known: Vec<(Representation, GRMeasure)> =
            self.table.lock().expect("cache lock").get(&key).cloned().unwrap_or_default();
        for (y, m) in &known {
            if iso_test(x, y, caps)? {
                return Ok(m.clone());
            }
        }
        let m = gr_measure(x, caps)?;
        self.table.lock().expect("cache lock").entry(key).or_default().push((x.clone(), m.clone()));
        Ok(m)
    }

    pub fn len(&self) -> usize {
        self.table.lock().expect("cache lock").values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
