//! Quivers with admissible homogeneous relations over F_p, and the residue bases of
//! their path algebras.
//!
//! Convention: an arrow `α: i → j` acts as a linear map `X_i → X_j`, and a path is
//! written in traversal order (first arrow first). The projective `P(v)` has as
//! basis the residues of paths starting at `v`; the injective `I(v)` is the dual of
//! the projective of the opposite algebra at `v`.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ffla::{Field, Matrix, Subspace};
use crate::repcore::Representation;

/// Arrow ids in traversal order. The empty path is the trivial path at some vertex.
pub type Path = Vec<usize>;

const DEFAULT_SEARCH_BOUND: usize = 24;
const MAX_PATHS_PER_LENGTH: usize = 200_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub label: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    /// Builds a quiver from vertex labels and `(label, source, target)` arrow triples.
    pub fn new<S: AsRef<str>>(vertices: &[S], arrows: &[(S, S, S)]) -> Result<Self> {
        let vertices: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        for (i, v) in vertices.iter().enumerate() {
            if v.is_empty() || vertices[..i].contains(v) {
                return Err(Error::Quiver(format!("duplicate or empty vertex label {v:?}")));
            }
        }
        let mut q = Quiver { vertices, arrows: Vec::new() };
        for (label, s, t) in arrows {
            let label = label.as_ref().to_string();
            if label.is_empty() || q.arrows.iter().any(|a| a.label == label) {
                return Err(Error::Quiver(format!("duplicate or empty arrow label {label:?}")));
            }
            let source = q.vertex(s.as_ref())?;
            let target = q.vertex(t.as_ref())?;
            q.arrows.push(Arrow { label, source, target });
        }
        Ok(q)
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }
    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }
    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }
    pub fn arrow(&self, id: usize) -> &Arrow {
        &self.arrows[id]
    }

    pub fn vertex(&self, label: &str) -> Result<usize> {
        self.vertices
            .iter()
            .position(|v| v == label)
            .ok_or_else(|| Error::UnknownVertex(label.to_string()))
    }

    pub fn arrow_id(&self, label: &str) -> Result<usize> {
        self.arrows
            .iter()
            .position(|a| a.label == label)
            .ok_or_else(|| Error::UnknownArrow(label.to_string()))
    }

    pub fn arrows_from(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].source == v)
    }

    pub fn arrows_to(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].target == v)
    }

    /// End vertex of a path starting at `start`, or `None` if it is not composable.
    pub fn path_end(&self, start: usize, path: &[usize]) -> Option<usize> {
        let mut v = start;
        for &a in path {
            let arrow = self.arrows.get(a)?;
            if arrow.source != v {
                return None;
            }
            v = arrow.target;
        }
        Some(v)
    }

    pub fn path_label(&self, start: usize, path: &[usize]) -> String {
        if path.is_empty() {
            format!("e_{}", self.vertices[start])
        } else {
            path.iter().map(|&a| self.arrows[a].label.as_str()).collect::<Vec<_>>().join(".")
        }
    }

    pub fn opposite(&self) -> Quiver {
        Quiver {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow { label: a.label.clone(), source: a.target, target: a.source })
                .collect(),
        }
    }

    /// Connected components of the underlying graph restricted to `support`.
    pub fn components(&self, support: &[bool]) -> Vec<Vec<usize>> {
        let n = self.vertices.len();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for start in 0..n {
            if !support[start] || comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut stack = vec![start];
            let mut members = Vec::new();
            comp[start] = id;
            while let Some(v) = stack.pop() {
                members.push(v);
                for a in &self.arrows {
                    for (x, y) in [(a.source, a.target), (a.target, a.source)] {
                        if x == v && support[y] && comp[y] == usize::MAX {
                            comp[y] = id;
                            stack.push(y);
                        }
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }
}

/// A homogeneous relation: a linear combination of parallel paths of equal length >= 2.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    pub source: usize,
    pub target: usize,
    pub terms: Vec<(u8, Path)>,
}

impl Relation {
    pub fn new(quiver: &Quiver, field: Field, terms: Vec<(u8, Path)>) -> Result<Self> {
        let terms: Vec<(u8, Path)> = terms.into_iter().filter(|(c, _)| *c % field.p() != 0).collect();
        let Some((_, first)) = terms.first() else {
            return Err(Error::Relation("relation has no nonzero terms".into()));
        };
        let Some(&a0) = first.first() else {
            return Err(Error::Relation("trivial path in relation".into()));
        };
        let source = quiver
            .arrows
            .get(a0)
            .ok_or_else(|| Error::Relation(format!("arrow id {a0} out of range")))?
            .source;
        let len = first.len();
        let target = quiver
            .path_end(source, first)
            .ok_or_else(|| Error::Relation("path is not composable".into()))?;
        for (c, path) in &terms {
            field.check(*c as u32)?;
            if path.len() < 2 {
                return Err(Error::Relation(format!(
                    "path {} has length {} < 2",
                    quiver.path_label(source, path),
                    path.len()
                )));
            }
            if path.len() != len {
                return Err(Error::Relation("terms of mixed length".into()));
            }
            let start = quiver.arrows.get(path[0]).map(|a| a.source);
            if start != Some(source) || quiver.path_end(source, path) != Some(target) {
                return Err(Error::Relation(format!(
                    "path {} does not run from {} to {}",
                    quiver.path_label(source, path),
                    quiver.vertices[source],
                    quiver.vertices[target]
                )));
            }
        }
        Ok(Relation { source, target, terms })
    }

    pub fn len(&self) -> usize {
        self.terms[0].1.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn display(&self, quiver: &Quiver) -> String {
        self.terms
            .iter()
            .map(|(c, p)| {
                let label = quiver.path_label(self.source, p);
                if *c == 1 {
                    label
                } else {
                    format!("{c} {label}")
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    fn opposite(&self) -> Relation {
        Relation {
            source: self.target,
            target: self.source,
            terms: self
                .terms
                .iter()
                .map(|(c, p)| (*c, p.iter().rev().copied().collect()))
                .collect(),
        }
    }
}

/// Residue data for paths of one length between two fixed vertices.
#[derive(Clone, Debug)]
struct GradedPiece {
    paths: Vec<Path>,
    index: HashMap<Path, usize>,
    ideal: Subspace,
    standard: Vec<usize>,
    offset: usize,
}

/// Residue basis for all paths from `s` to `t`.
#[derive(Clone, Debug, Default)]
struct Component {
    pieces: Vec<GradedPiece>,
    standard: Vec<Path>,
}

/// A validated quiver algebra `F_p Q / I` with `I` admissible and homogeneous.
#[derive(Clone)]
pub struct AlgebraPresentation {
    name: Option<String>,
    quiver: Quiver,
    relations: Vec<Relation>,
    field: Field,
    search_bound: usize,
    nilpotency: usize,
    components: Vec<Vec<Component>>,
}

impl PartialEq for AlgebraPresentation {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.quiver == other.quiver && self.relations == other.relations
    }
}
impl Eq for AlgebraPresentation {}

impl fmt::Debug for AlgebraPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AlgebraPresentation")
            .field("name", &self.name)
            .field("vertices", &self.quiver.vertices)
            .field("arrows", &self.quiver.arrows.len())
            .field("relations", &self.relations.len())
            .field("p", &self.field.p())
            .finish()
    }
}

/// Outcome of [`AlgebraPresentation::validate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub total_dimension: usize,
    /// Longest nonzero path length.
    pub nilpotency_bound: usize,
    /// `(source, target, length, dimension)` for every nonzero graded piece.
    pub graded_pieces: Vec<(String, String, usize, usize)>,
}

impl AlgebraPresentation {
    /// Validates admissibility and computes residue bases. Path lengths are searched
    /// up to [`DEFAULT_SEARCH_BOUND`].
    pub fn new(quiver: Quiver, relations: Vec<Relation>, field: Field) -> Result<Arc<Self>> {
        Self::with_search_bound(quiver, relations, field, DEFAULT_SEARCH_BOUND)
    }

    pub fn with_search_bound(
        quiver: Quiver,
        relations: Vec<Relation>,
        field: Field,
        search_bound: usize,
    ) -> Result<Arc<Self>> {
        for r in &relations {
            // Re-validate relations built by hand.
            Relation::new(&quiver, field, r.terms.clone())?;
        }
        let n = quiver.num_vertices();
        // paths[s][len]: paths from s of that length
        let mut paths: Vec<Vec<Vec<Path>>> = vec![vec![vec![Vec::new()]]; n];
        let mut pieces: Vec<Vec<Vec<GradedPiece>>> = vec![vec![Vec::new(); n]; n];
        let mut nilpotency = None;
        for len in 0..=search_bound + 1 {
            if len > 0 {
                for (s, by_len) in paths.iter_mut().enumerate() {
                    let mut next = Vec::new();
                    for p in &by_len[len - 1] {
                        let end = quiver.path_end(s, p).expect("composable");
                        for a in quiver.arrows_from(end) {
                            let mut q = p.clone();
                            q.push(a);
                            next.push(q);
                        }
                    }
                    if next.len() > MAX_PATHS_PER_LENGTH {
                        return Err(Error::cap(
                            "path enumeration",
                            format!("{} paths of length {len}", next.len()),
                        ));
                    }
                    by_len.push(next);
                }
            }
            let mut all_vanish = true;
            let mut witness = None;
            for s in 0..n {
                for t in 0..n {
                    let piece = Self::graded_piece(&quiver, &relations, field, &paths, s, t, len);
                    if !piece.standard.is_empty() {
                        all_vanish = false;
                        if witness.is_none() {
                            let p = &piece.paths[piece.standard[0]];
                            witness = Some(quiver.path_label(s, p));
                        }
                    }
                    pieces[s][t].push(piece);
                }
            }
            if all_vanish {
                nilpotency = Some(len.saturating_sub(1));
                break;
            }
            if len == search_bound + 1 {
                return Err(Error::NotAdmissible {
                    witness: witness.unwrap_or_default(),
                    bound: search_bound,
                });
            }
        }
        let nilpotency = nilpotency.expect("loop exits with a bound");
        let components = pieces
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|mut graded| {
                        graded.truncate(nilpotency + 1);
                        let mut standard = Vec::new();
                        for piece in graded.iter_mut() {
                            piece.offset = standard.len();
                            standard.extend(piece.standard.iter().map(|&i| piece.paths[i].clone()));
                        }
                        Component { pieces: graded, standard }
                    })
                    .collect()
            })
            .collect();
        Ok(Arc::new(AlgebraPresentation {
            name: None,
            quiver,
            relations,
            field,
            search_bound,
            nilpotency,
            components,
        }))
    }

    fn graded_piece(
        quiver: &Quiver,
        relations: &[Relation],
        field: Field,
        paths: &[Vec<Vec<Path>>],
        s: usize,
        t: usize,
        len: usize,
    ) -> GradedPiece {
        let list: Vec<Path> = paths[s][len]
            .iter()
            .filter(|p| quiver.path_end(s, p) == Some(t))
            .cloned()
            .collect();
        let index: HashMap<Path, usize> =
            list.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        let mut ideal = Subspace::zero(field, list.len());
        for r in relations {
            let m = r.len();
            if m > len {
                continue;
            }
            for pre_len in 0..=len - m {
                let post_len = len - m - pre_len;
                for pre in paths[s][pre_len].iter().filter(|p| quiver.path_end(s, p) == Some(r.source)) {
                    for post in paths[r.target][post_len]
                        .iter()
                        .filter(|p| quiver.path_end(r.target, p) == Some(t))
                    {
                        let mut v = vec![0u8; list.len()];
                        for (c, term) in &r.terms {
                            let full: Path =
                                pre.iter().chain(term.iter()).chain(post.iter()).copied().collect();
                            let i = index[&full];
                            v[i] = field.add(v[i], *c);
                        }
                        ideal.insert(v);
                    }
                }
            }
        }
        let standard = ideal.complement_columns();
        GradedPiece { paths: list, index, ideal, standard, offset: 0 }
    }

    pub fn with_name(self: Arc<Self>, name: &str) -> Arc<Self> {
        let mut a = (*self).clone();
        a.name = Some(name.to_string());
        Arc::new(a)
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }
    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }
    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }
    pub fn field(&self) -> Field {
        self.field
    }
    pub fn num_vertices(&self) -> usize {
        self.quiver.num_vertices()
    }
    /// Longest length of a nonzero path residue.
    pub fn nilpotency_bound(&self) -> usize {
        self.nilpotency
    }
    pub fn is_hereditary(&self) -> bool {
        self.relations.is_empty()
    }

    pub fn vertex(&self, label: &str) -> Result<usize> {
        self.quiver.vertex(label)
    }

    /// Standard monomials (residue basis) of paths from `s` to `t`.
    pub fn residue_basis(&self, s: usize, t: usize) -> &[Path] {
        &self.components[s][t].standard
    }

    /// Coordinates of the residue of `path` (starting at `s`) in the residue basis
    /// of its endpoints.
    pub fn normal_form(&self, s: usize, path: &[usize]) -> (usize, Vec<u8>) {
        let t = self.quiver.path_end(s, path).expect("composable path");
        let comp = &self.components[s][t];
        let mut out = vec![0u8; comp.standard.len()];
        if let Some(piece) = comp.pieces.get(path.len()) {
            let mut v = vec![0u8; piece.paths.len()];
            v[piece.index[path]] = 1;
            piece.ideal.reduce(&mut v);
            for (k, &col) in piece.standard.iter().enumerate() {
                out[piece.offset + k] = v[col];
            }
        }
        (t, out)
    }

    pub fn validate(&self) -> ValidationReport {
        let mut graded_pieces = Vec::new();
        let mut total = 0;
        let names = &self.quiver.vertices;
        for s in 0..self.num_vertices() {
            for t in 0..self.num_vertices() {
                for (len, piece) in self.components[s][t].pieces.iter().enumerate() {
                    if !piece.standard.is_empty() {
                        total += piece.standard.len();
                        graded_pieces.push((names[s].clone(), names[t].clone(), len, piece.standard.len()));
                    }
                }
            }
        }
        ValidationReport { total_dimension: total, nilpotency_bound: self.nilpotency, graded_pieces }
    }

    /// The opposite algebra: arrows reversed, relation paths reversed.
    pub fn opposite(&self) -> Arc<Self> {
        let quiver = self.quiver.opposite();
        let relations = self.relations.iter().map(Relation::opposite).collect();
        let mut a = (*Self::with_search_bound(quiver, relations, self.field, self.search_bound)
            .expect("opposite of an admissible presentation is admissible"))
        .clone();
        a.name = self.name.as_ref().map(|n| format!("{n}^op"));
        Arc::new(a)
    }

    /// Full subquiver on `keep` with the relations supported there.
    pub fn full_subalgebra(&self, keep: &[usize]) -> Result<(Arc<Self>, Vec<usize>)> {
        let labels: Vec<&str> = keep.iter().map(|&v| self.quiver.vertices[v].as_str()).collect();
        let arrow_ids: Vec<usize> = (0..self.quiver.arrows.len())
            .filter(|&a| {
                let arr = &self.quiver.arrows[a];
                keep.contains(&arr.source) && keep.contains(&arr.target)
            })
            .collect();
        let triples: Vec<(&str, &str, &str)> = arrow_ids
            .iter()
            .map(|&a| {
                let arr = &self.quiver.arrows[a];
                (
                    arr.label.as_str(),
                    self.quiver.vertices[arr.source].as_str(),
                    self.quiver.vertices[arr.target].as_str(),
                )
            })
            .collect();
        let quiver = Quiver::new(&labels, &triples)?;
        let remap = |a: usize| arrow_ids.iter().position(|&x| x == a);
        let mut relations = Vec::new();
        for r in &self.relations {
            let terms: Option<Vec<(u8, Path)>> = r
                .terms
                .iter()
                .map(|(c, p)| p.iter().map(|&a| remap(a)).collect::<Option<Path>>().map(|q| (*c, q)))
                .collect();
            if let Some(terms) = terms {
                relations.push(Relation::new(&quiver, self.field, terms)?);
            }
        }
        Ok((Self::with_search_bound(quiver, relations, self.field, self.search_bound)?, arrow_ids))
    }

    /// Parses the text format documented in the README.
    pub fn parse(text: &str) -> Result<Arc<Self>> {
        let mut modulus = None;
        let mut vertices: Option<Vec<String>> = None;
        let mut arrows: Vec<(String, String, String)> = Vec::new();
        let mut relations_src: Vec<(usize, String)> = Vec::new();
        let mut bound = None;
        let mut name = None;
        for (lineno, raw) in text.lines().enumerate() {
            let line = lineno + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let err = |msg: String| Error::Parse { line, msg };
            let (key, value) = content
                .split_once('=')
                .ok_or_else(|| err("expected `key = value`".into()))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "name" => name = Some(value.to_string()),
                "modulus" => {
                    if modulus.is_some() {
                        return Err(err("duplicate modulus".into()));
                    }
                    let p: u32 = value.parse().map_err(|_| err(format!("bad modulus {value:?}")))?;
                    modulus = Some(Field::new(p)?);
                }
                "vertices" => {
                    if vertices.is_some() {
                        return Err(err("duplicate vertex list".into()));
                    }
                    vertices = Some(value.split_whitespace().map(str::to_string).collect());
                }
                "arrow" => {
                    let (label, ends) =
                        value.split_once(':').ok_or_else(|| err("expected `label: src -> tgt`".into()))?;
                    let (s, t) =
                        ends.split_once("->").ok_or_else(|| err("expected `src -> tgt`".into()))?;
                    arrows.push((label.trim().into(), s.trim().into(), t.trim().into()));
                }
                "relation" => relations_src.push((line, value.to_string())),
                "max_path_length" => {
                    bound = Some(value.parse().map_err(|_| err(format!("bad bound {value:?}")))?)
                }
                other => return Err(err(format!("unknown key {other:?}"))),
            }
        }
        let field = modulus.ok_or(Error::Parse { line: 0, msg: "missing modulus".into() })?;
        let vertices = vertices.ok_or(Error::Parse { line: 0, msg: "missing vertices".into() })?;
        let quiver = Quiver::new(&vertices, &arrows)?;
        let mut relations = Vec::new();
        for (line, src) in relations_src {
            relations.push(parse_relation(&quiver, field, &src).map_err(|e| match e {
                Error::Parse { msg, .. } => Error::Parse { line, msg },
                other => other,
            })?);
        }
        let alg = Self::with_search_bound(quiver, relations, field, bound.unwrap_or(DEFAULT_SEARCH_BOUND))?;
        Ok(match name {
            Some(n) => alg.with_name(&n),
            None => alg,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(n) = &self.name {
            out.push_str(&format!("name = {n}\n"));
        }
        out.push_str(&format!("modulus = {}\n", self.field.p()));
        out.push_str(&format!("vertices = {}\n", self.quiver.vertices.join(" ")));
        for a in &self.quiver.arrows {
            out.push_str(&format!(
                "arrow = {}: {} -> {}\n",
                a.label, self.quiver.vertices[a.source], self.quiver.vertices[a.target]
            ));
        }
        for r in &self.relations {
            let terms: Vec<String> = r
                .terms
                .iter()
                .map(|(c, p)| format!("{c} {}", self.quiver.path_label(r.source, p)))
                .collect();
            out.push_str(&format!("relation = {}\n", terms.join(" + ")));
        }
        out
    }

    /// Lengths of the indecomposable projectives and injectives: `(max |P(v)|, max |I(v)|)`.
    pub fn projective_injective_bounds(&self) -> (usize, usize) {
        let n = self.num_vertices();
        let p = (0..n)
            .map(|v| (0..n).map(|w| self.residue_basis(v, w).len()).sum::<usize>())
            .max()
            .unwrap_or(0);
        let q = (0..n)
            .map(|v| (0..n).map(|w| self.residue_basis(w, v).len()).sum::<usize>())
            .max()
            .unwrap_or(0);
        (p, q)
    }
}

fn parse_relation(quiver: &Quiver, field: Field, src: &str) -> Result<Relation> {
    let mut terms = Vec::new();
    for term in src.split('+') {
        let words: Vec<&str> = term.split_whitespace().collect();
        let (coef, path) = match words.as_slice() {
            [path] => (1u32, *path),
            [c, path] => (
                c.parse::<u32>()
                    .map_err(|_| Error::Parse { line: 0, msg: format!("bad coefficient {c:?}") })?,
                *path,
            ),
            _ => return Err(Error::Parse { line: 0, msg: format!("bad relation term {term:?}") }),
        };
        let arrows = path.split('.').map(|l| quiver.arrow_id(l)).collect::<Result<Path>>()?;
        terms.push((field.check(coef)?, arrows));
    }
    Relation::new(quiver, field, terms)
}

/// The indecomposable projective at `v`: residues of paths starting at `v`.
pub fn projective(alg: &Arc<AlgebraPresentation>, v: usize) -> Representation {
    let n = alg.num_vertices();
    let dims: Vec<usize> = (0..n).map(|w| alg.residue_basis(v, w).len()).collect();
    let maps = alg
        .quiver
        .arrows
        .iter()
        .enumerate()
        .map(|(id, arrow)| {
            let src_basis = alg.residue_basis(v, arrow.source);
            let cols: Vec<Vec<u8>> = src_basis
                .iter()
                .map(|q| {
                    let mut ext = q.clone();
                    ext.push(id);
                    alg.normal_form(v, &ext).1
                })
                .collect();
            Matrix::from_columns(alg.field, dims[arrow.target], &cols)
        })
        .collect();
    Representation::new_unchecked(alg.clone(), dims, maps)
}

/// The indecomposable injective at `v`, as the dual of the opposite projective.
pub fn injective(alg: &Arc<AlgebraPresentation>, v: usize) -> Representation {
    let op = alg.opposite();
    let p = projective(&op, v);
    p.dual_onto(alg)
}

pub fn simple(alg: &Arc<AlgebraPresentation>, v: usize) -> Representation {
    let mut dims = vec![0; alg.num_vertices()];
    dims[v] = 1;
    Representation::zero_maps(alg.clone(), dims)
}
