mod common;

use std::sync::Arc;

use common::{raw_indecomposables, Alg};
use roiter_core::builtin;
use roiter_core::explorer::{
    check_gr_bound, check_gr_bound_with, cogeneration_closure, default_enumeration_bound, embed_avoiding,
    enumerate_indecomposables, find_embedding, find_high_multiplicity_indec, indecomposable_classes,
    is_submodule_closed, take_off_sequence, Provenance, SubcatSnapshot,
};
use roiter_core::grmeasure::GRMeasure;
use roiter_core::repcore::{is_cogenerated, iso_test};
use roiter_core::tame::preprojectives;
use roiter_core::{
    direct_sum, injective, projective, simple, AlgebraPresentation, Caps, Error, Field, Representation, Submodule,
    Subspace,
};

fn caps() -> Caps {
    Caps::default()
}

fn f3_algebra() -> Arc<AlgebraPresentation> {
    AlgebraPresentation::parse(
        "name = a3\nmodulus = 3\nvertices = x y z\narrow = f: x -> y\narrow = g: y -> z\nrelation = 1 f.g\n",
    )
    .unwrap()
}

fn counts_from_oracle(alg: &Arc<AlgebraPresentation>, max_len: usize) -> Vec<usize> {
    let mut counts = vec![0; max_len + 1];
    for (dims, _, flags) in raw_indecomposables(&Alg::new(alg), max_len) {
        counts[dims.iter().sum::<usize>()] += flags.iter().filter(|&&f| f).count();
    }
    counts
}

/// Completeness and irredundancy against orbit enumeration of all matrix tuples.
#[test]
fn enumeration_matches_raw_orbits() {
    let cases: Vec<(Arc<AlgebraPresentation>, usize)> = vec![
        (builtin::k2(), 4),
        (builtin::k3(), 3),
        (builtin::example4(), 3),
        (builtin::remark(false), 3),
        (builtin::remark(true), 3),
        (builtin::d4(), 3),
        (f3_algebra(), 3),
    ];
    for (alg, len) in cases {
        let snap = enumerate_indecomposables(&alg, len, &caps()).unwrap();
        assert_eq!(snap.counts_by_length(), counts_from_oracle(&alg, len), "{:?}", alg.name());
        // every raw indecomposable orbit is hit by exactly one member
        let oracle = Alg::new(&alg);
        for (dims, orbits, flags) in raw_indecomposables(&oracle, len) {
            for (rep, _) in orbits.reps.iter().zip(&flags).filter(|(_, f)| **f) {
                let x = oracle.to_lib(&dims, rep);
                let hits = snap.members.iter().filter(|m| iso_test(m, &x, &caps()).unwrap()).count();
                assert_eq!(hits, 1, "{:?} {dims:?}", alg.name());
            }
        }
    }
}

#[test]
fn kronecker_enumeration() {
    let k2 = builtin::k2();
    assert!(enumerate_indecomposables(&k2, 0, &caps()).unwrap().is_empty());
    let one = enumerate_indecomposables(&k2, 1, &caps()).unwrap();
    assert_eq!(one.len(), 2);
    let three = enumerate_indecomposables(&k2, 3, &caps()).unwrap();
    assert_eq!(three.len(), 7);
    assert_eq!(three.counts_by_length(), vec![0, 2, 3, 2]);
    assert_eq!(three.provenance, Provenance::Enumeration);
    // sorted by measure
    assert!(three.measures.windows(2).all(|w| w[0] <= w[1]));
}

#[test]
fn enumeration_guard() {
    assert_eq!(default_enumeration_bound(&builtin::k2()), 12);
    assert_eq!(default_enumeration_bound(&builtin::k3()), 6);
    assert_eq!(default_enumeration_bound(&f3_algebra()), 8);
    let err = indecomposable_classes(&builtin::k3(), 7, &caps()).unwrap_err();
    assert!(err.is_cap());
    let raised = Caps { enumerate_len: Some(7), ..caps() };
    assert!(indecomposable_classes(&builtin::k2(), 7, &raised).is_ok());
}

#[test]
fn take_off_examples() {
    let k2 = builtin::k2();
    let snap = enumerate_indecomposables(&k2, 5, &caps()).unwrap();
    let report = take_off_sequence(&snap, 3);
    let ms: Vec<&[u32]> = report.entries.iter().map(|e| e.measure.elements()).collect();
    assert_eq!(ms, vec![&[1][..], &[1, 3], &[1, 3, 5]]);
    assert!(!report.truncated);
    assert_eq!(report.entries[0].dims, vec![vec![0, 1], vec![1, 0]]);
    let long = take_off_sequence(&snap, 50);
    assert!(long.truncated);
    assert!(long.entries.windows(2).all(|w| w[0].measure < w[1].measure));
    for name in ["k3", "example4", "remark", "d4"] {
        let alg = builtin::by_name(name).unwrap();
        let snap = enumerate_indecomposables(&alg, 3, &caps()).unwrap();
        assert_eq!(take_off_sequence(&snap, 1).entries[0].measure, GRMeasure::new(vec![1]).unwrap());
    }
}

#[test]
fn closure_examples() {
    let k2 = builtin::k2();
    let c = caps();
    let all = enumerate_indecomposables(&k2, 4, &c).unwrap();
    let inj = cogeneration_closure(&k2, &[injective(&k2, 0), injective(&k2, 1)], 4, &c).unwrap();
    assert_eq!(inj.len(), all.len());
    assert_eq!(inj.provenance, Provenance::Closure);
    let p = cogeneration_closure(&k2, &[projective(&k2, 0)], 3, &c).unwrap();
    let dims: Vec<&[usize]> = p.members.iter().map(|m| m.dims()).collect();
    assert_eq!(dims, vec![&[0, 1][..], &[1, 2]]);
    let s = cogeneration_closure(&k2, &[simple(&k2, 0)], 4, &c).unwrap();
    assert_eq!(s.len(), 1);
    assert_eq!(s.members[0].dims(), &[1, 0]);
    for snap in [&inj, &p, &s] {
        assert!(is_submodule_closed(snap, &c).unwrap().is_none());
    }
}

#[test]
fn closure_members_are_exactly_the_cogenerated_classes() {
    let e4 = builtin::example4();
    let c = caps();
    let seeds = [projective(&e4, 1)];
    let m = direct_sum(&e4, &seeds).unwrap();
    let snap = cogeneration_closure(&e4, &seeds, 4, &c).unwrap();
    for x in indecomposable_classes(&e4, 4, &c).unwrap() {
        let member = snap.find(&x, &c).unwrap().is_some();
        assert_eq!(member, is_cogenerated(&x, &m).unwrap());
    }
    assert!(is_submodule_closed(&snap, &c).unwrap().is_none());
}

#[test]
fn submodule_closed_counterexample() {
    let k2 = builtin::k2();
    let c = caps();
    let snap = SubcatSnapshot::new(&k2, 3, vec![projective(&k2, 0)], Provenance::Manual, &c).unwrap();
    let v = is_submodule_closed(&snap, &c).unwrap().expect("S(2) is missing");
    assert_eq!(v.member, 0);
    assert_eq!(v.submodule.dims(), &[0, 1]);
    let empty = SubcatSnapshot::new(&k2, 3, vec![], Provenance::Manual, &c).unwrap();
    assert!(is_submodule_closed(&empty, &c).unwrap().is_none());
}

#[test]
fn embed_avoiding_examples() {
    let k2 = builtin::k2();
    let c = caps();
    let f = Field::F2;
    let p1 = projective(&k2, 0);
    let m = direct_sum(&k2, &[p1.clone(), p1.clone()]).unwrap();
    let s2 = simple(&k2, 1);
    // one socle line of the first summand
    let m0 = Submodule::new(&m, vec![Subspace::zero(f, 2), Subspace::span(f, 4, [vec![1, 0, 0, 0]])]).unwrap();
    let u = embed_avoiding(&s2, &m, &m0, &c).unwrap();
    assert!(u.kernel().is_zero());
    assert!(u.image().intersect(&m0).is_zero());
    // a whole summand as m0
    let first = Submodule::from_generators(&m, &[(0, vec![1, 0])]).unwrap();
    assert_eq!(first.length(), 3);
    let u = embed_avoiding(&p1, &m, &first, &c).unwrap();
    assert!(u.kernel().is_zero());
    assert!(u.image().intersect(&first).is_zero());
    let zero = Submodule::zero(&m);
    assert!(embed_avoiding(&p1, &m, &zero, &c).unwrap().kernel().is_zero());
    let err = embed_avoiding(&simple(&k2, 0), &s2, &Submodule::zero(&s2), &c).unwrap_err();
    assert!(matches!(err, Error::Stalled(_)));
}

#[test]
fn embed_avoiding_against_exhaustive_monos() {
    // every socle line of P(1) ⊕ P(1) leaves room for S(2)
    let k2 = builtin::k2();
    let c = caps();
    let f = Field::F2;
    let p1 = projective(&k2, 0);
    let m = direct_sum(&k2, &[p1.clone(), p1]).unwrap();
    let s2 = simple(&k2, 1);
    for v in f.all_vectors(4).filter(|v| v.iter().any(|&e| e != 0)) {
        let m0 = Submodule::new(&m, vec![Subspace::zero(f, 2), Subspace::span(f, 4, [v])]).unwrap();
        let u = embed_avoiding(&s2, &m, &m0, &c).unwrap();
        assert!(u.kernel().is_zero());
        assert!(u.image().intersect(&m0).is_zero());
    }
}

#[test]
fn high_multiplicity_examples() {
    let k2 = builtin::k2();
    let c = caps();
    let seeds: Vec<Representation> = preprojectives(&k2, 5).into_iter().map(|(_, _, x)| x).collect();
    let snap = cogeneration_closure(&k2, &seeds, 5, &c).unwrap();
    assert!(find_high_multiplicity_indec(&snap, 0).is_some());
    assert_eq!(find_high_multiplicity_indec(&snap, 2).unwrap().dims(), &[2, 3]);
    assert!(find_high_multiplicity_indec(&snap, 100).is_none());
}

#[test]
fn gr_bound_examples() {
    let k2 = builtin::k2();
    let c = caps();
    let snap = enumerate_indecomposables(&k2, 5, &c).unwrap();
    let r = check_gr_bound(&snap, &c).unwrap();
    assert!(r.ok());
    assert_eq!((r.p_bound, r.q_bound), (3, 3));
    assert_eq!(r.checked, snap.members.iter().filter(|m| m.length() >= 2).count());
    let simples = enumerate_indecomposables(&k2, 1, &c).unwrap();
    let r = check_gr_bound(&simples, &c).unwrap();
    assert!(r.ok() && r.checked == 0);
    let broken = check_gr_bound_with(&snap, |_| Ok(0)).unwrap();
    assert_eq!(broken.violations.len(), broken.checked);
    let e4 = builtin::example4();
    assert!(check_gr_bound(&enumerate_indecomposables(&e4, 4, &c).unwrap(), &c).unwrap().ok());
}

#[test]
fn kronecker_preprojective_closure() {
    let k2 = builtin::k2();
    let c = caps();
    for l in [3, 5, 7] {
        let seeds: Vec<Representation> = preprojectives(&k2, l).into_iter().map(|(_, _, x)| x).collect();
        let snap = cogeneration_closure(&k2, &seeds, l, &c).unwrap();
        let counts = snap.counts_by_length();
        for (n, &k) in counts.iter().enumerate().skip(1) {
            assert_eq!(k, n % 2, "L = {l}, length {n}");
        }
        // every member below the bound embeds in a longer member
        for x in &snap.members {
            if x.length() + 2 > l {
                continue;
            }
            let longer = snap.members.iter().filter(|y| y.length() > x.length());
            let hit = longer.into_iter().any(|y| find_embedding(x, y, &c).unwrap().is_some());
            assert!(hit, "{:?}", x.dims());
        }
        assert!(is_submodule_closed(&snap, &c).unwrap().is_none());
    }
}

#[test]
fn snapshot_serialisations() {
    let k2 = builtin::k2();
    let snap = enumerate_indecomposables(&k2, 3, &caps()).unwrap();
    let j = snap.to_json();
    assert_eq!(j["counts_by_length"], serde_json::json!([0, 2, 3, 2]));
    assert_eq!(j["members"].as_array().unwrap().len(), 7);
    let tsv = snap.to_tsv();
    assert_eq!(tsv.lines().next(), Some("length\tcount\tmeasures"));
    assert!(tsv.contains("3\t2\t"));
}

#[test]
fn enumeration_is_deterministic_across_thread_counts() {
    let alg = builtin::example4();
    let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let four = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
    let a = one.install(|| enumerate_indecomposables(&alg, 4, &caps()).unwrap());
    let b = four.install(|| enumerate_indecomposables(&alg, 4, &caps()).unwrap());
    assert_eq!(a.members, b.members);
    assert_eq!(a.to_json(), b.to_json());
}
