mod common;

use std::sync::Arc;

use common::{arb_rep, brute_submodules, embeds_in_power, Alg, Om};
use proptest::prelude::*;
use roiter_core::builtin;
use roiter_core::registry::example4_module_320;
use roiter_core::repcore::{
    decompose, enumerate_submodules, fingerprint, hom_basis, hom_dim, is_cogenerated, is_indecomposable, iso_test,
    parse_module, push_down, write_module, y_module, CoveringSpec,
};
use roiter_core::{
    direct_sum, injective, projective, simple, AlgebraPresentation, Caps, Error, Field, Matrix, Morphism,
    Representation, Submodule, Subspace,
};

fn f3_algebra() -> Arc<AlgebraPresentation> {
    AlgebraPresentation::parse(
        "name = sq3\nmodulus = 3\nvertices = x y z\narrow = f: x -> y\narrow = k: x -> y\narrow = g: y -> z\n\
         relation = 1 f.g + 2 k.g\n",
    )
    .unwrap()
}

fn m(f: Field, rows: &[&[u8]]) -> Matrix {
    Matrix::from_rows(f, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
}

fn k2_module(dims: [usize; 2], a: Matrix, b: Matrix) -> Representation {
    Representation::new(builtin::k2(), dims.to_vec(), vec![a, b]).unwrap()
}

fn caps() -> Caps {
    Caps::default()
}

#[test]
fn check_examples() {
    for name in builtin::NAMES {
        let alg = builtin::by_name(name).unwrap();
        for v in 0..alg.num_vertices() {
            simple(&alg, v).check().unwrap();
        }
    }
    let r = builtin::remark(false);
    let f = Field::F2;
    let one = m(f, &[&[1]]);
    let err = Representation::new(r.clone(), vec![1, 1, 1], vec![one.clone(), one.clone(), Matrix::zeros(f, 1, 1)])
        .unwrap_err();
    match err {
        Error::RelationViolated { relation, .. } => assert_eq!(relation, "beta.alpha"),
        other => panic!("{other:?}"),
    }
    // the same maps with beta' instead satisfy the relation
    Representation::new(r, vec![1, 1, 1], vec![one.clone(), Matrix::zeros(f, 1, 1), one]).unwrap();
    example4_module_320(&builtin::example4()).unwrap().check().unwrap();
}

#[test]
fn shape_mismatch_is_rejected() {
    let f = Field::F2;
    let err = Representation::new(builtin::k2(), vec![1, 1], vec![Matrix::zeros(f, 2, 1), Matrix::zeros(f, 1, 1)]);
    assert!(matches!(err, Err(Error::Shape(_))));
}

#[test]
fn direct_sum_examples() {
    let k2 = builtin::k2();
    let z = direct_sum(&k2, &[]).unwrap();
    assert!(z.is_zero());
    let s = direct_sum(&k2, &[simple(&k2, 0), simple(&k2, 1)]).unwrap();
    assert_eq!(s.dims(), &[1, 1]);
    assert!(s.is_semisimple());
    let p = projective(&k2, 0);
    assert_eq!(direct_sum(&k2, &[p.clone(), p.clone()]).unwrap().length(), 6);
    assert!(matches!(direct_sum(&k2, &[p, simple(&builtin::k3(), 0)]), Err(Error::AlgebraMismatch)));
}

#[test]
fn hom_examples() {
    let k2 = builtin::k2();
    let (s1, s2, p1) = (simple(&k2, 0), simple(&k2, 1), projective(&k2, 0));
    assert!(hom_basis(&s1, &s2).unwrap().is_empty());
    let ends = hom_basis(&p1, &p1).unwrap();
    assert_eq!(ends.len(), 1);
    assert!(ends[0].is_iso());
    let maps = hom_basis(&s2, &p1).unwrap();
    assert_eq!(maps.len(), 2);
    for f in &maps {
        assert!(f.kernel().is_zero());
    }
    assert!(Morphism::identity(&p1).kernel().is_zero());
    assert!(Morphism::zero(&p1, &p1).kernel().is_full());
}

#[test]
fn generator_examples() {
    let k2 = builtin::k2();
    let p1 = projective(&k2, 0);
    assert!(Submodule::from_generators(&p1, &[]).unwrap().is_zero());
    assert!(Submodule::from_generators(&p1, &[(0, vec![1])]).unwrap().is_full());
    let units = [(0, vec![1]), (1, vec![1, 0]), (1, vec![0, 1])];
    assert!(Submodule::from_generators(&p1, &units).unwrap().is_full());
    assert_eq!(Submodule::from_generators(&p1, &[(1, vec![1, 1])]).unwrap().dims(), vec![0, 1]);
}

#[test]
fn submodule_examples() {
    let k2 = builtin::k2();
    let c = caps();
    assert_eq!(enumerate_submodules(&simple(&k2, 0), &c).unwrap().len(), 2);
    let ss = direct_sum(&k2, &[simple(&k2, 1), simple(&k2, 1)]).unwrap();
    assert_eq!(enumerate_submodules(&ss, &c).unwrap().len(), 5);
    assert_eq!(enumerate_submodules(&projective(&k2, 0), &c).unwrap().len(), 6);
    let big = direct_sum(&k2, &vec![projective(&k2, 0); 5]).unwrap();
    let err = enumerate_submodules(&big, &c).unwrap_err();
    assert!(err.is_cap());
}

#[test]
fn cogeneration_examples() {
    let k2 = builtin::k2();
    let (s1, s2, p1) = (simple(&k2, 0), simple(&k2, 1), projective(&k2, 0));
    assert!(is_cogenerated(&p1, &p1).unwrap());
    assert!(!is_cogenerated(&s1, &s2).unwrap());
    assert!(is_cogenerated(&s2, &p1).unwrap());
    // everything is cogenerated by the injective cogenerator
    let inj = direct_sum(&k2, &[injective(&k2, 0), injective(&k2, 1)]).unwrap();
    assert!(is_cogenerated(&p1, &inj).unwrap());
}

#[test]
fn iso_examples() {
    let k2 = builtin::k2();
    let c = caps();
    let p1 = projective(&k2, 0);
    assert!(iso_test(&p1, &p1, &c).unwrap());
    assert!(!iso_test(&simple(&k2, 0), &simple(&k2, 1), &c).unwrap());
    let f = Field::F2;
    let g = [m(f, &[&[1]]), m(f, &[&[1, 1], &[0, 1]])];
    assert!(iso_test(&p1, &p1.conjugate(&g).unwrap(), &c).unwrap());
    // regular modules at different points of P^1 are not isomorphic
    let r0 = k2_module([1, 1], m(f, &[&[1]]), m(f, &[&[0]]));
    let r1 = k2_module([1, 1], m(f, &[&[1]]), m(f, &[&[1]]));
    assert!(!iso_test(&r0, &r1, &c).unwrap());
}

#[test]
fn k3_quotient_presentations_under_arrow_basis_change() {
    // A K(2)-module x, with the K(3)/I_a-module built from it through two bases of
    // the annihilator of a = (1:1:0): t = (1,1,0), (0,0,1) and t' = (1,1,1), (0,0,1)
    // after the compensating change of arrows x' = (x_a, x_b - x_a).
    let f = Field::F2;
    let k3 = builtin::k3();
    let xa = m(f, &[&[1, 0], &[0, 1], &[0, 0]]);
    let xb = m(f, &[&[0, 0], &[1, 0], &[0, 1]]);
    let build = |t1: [u8; 3], t2: [u8; 3], a: &Matrix, b: &Matrix| {
        let maps = (0..3).map(|k| a.scaled(t1[k]).add(&b.scaled(t2[k]))).collect();
        Representation::new(k3.clone(), vec![2, 3], maps).unwrap()
    };
    let x = build([1, 1, 0], [0, 0, 1], &xa, &xb);
    let y = build([1, 1, 1], [0, 0, 1], &xa, &xb.sub(&xa));
    let g = [m(f, &[&[0, 1], &[1, 1]]), m(f, &[&[1, 0, 1], &[0, 1, 0], &[0, 0, 1]])];
    let y = y.conjugate(&g).unwrap();
    assert_ne!(x, y);
    assert!(iso_test(&x, &y, &caps()).unwrap());
    let z = build([1, 1, 0], [0, 0, 1], &xa, &xa);
    assert!(!iso_test(&x, &z, &caps()).unwrap());
}

#[test]
fn indecomposability_examples() {
    let k2 = builtin::k2();
    let c = caps();
    assert!(is_indecomposable(&simple(&k2, 0), &c).unwrap());
    let ss = direct_sum(&k2, &[simple(&k2, 1), simple(&k2, 1)]).unwrap();
    assert!(!is_indecomposable(&ss, &c).unwrap());
    assert!(is_indecomposable(&example4_module_320(&builtin::example4()).unwrap(), &c).unwrap());
    assert!(matches!(is_indecomposable(&Representation::zero(k2), &c), Err(Error::ZeroModule)));
}

#[test]
fn decompose_examples() {
    let k2 = builtin::k2();
    let c = caps();
    let p1 = projective(&k2, 0);
    assert_eq!(decompose(&p1, &c).unwrap().len(), 1);
    let parts = decompose(&direct_sum(&k2, &[simple(&k2, 0), simple(&k2, 1)]).unwrap(), &c).unwrap();
    let mut dims: Vec<Vec<usize>> = parts.iter().map(|p| p.dims().to_vec()).collect();
    dims.sort();
    assert_eq!(dims, vec![vec![0, 1], vec![1, 0]]);
    let parts = decompose(&direct_sum(&k2, &[p1.clone(), p1.clone()]).unwrap(), &c).unwrap();
    assert_eq!(parts.len(), 2);
    assert!(parts.iter().all(|q| iso_test(q, &p1, &c).unwrap()));
}

#[test]
fn jordan_holder_multiplicities() {
    let k2 = builtin::k2();
    let p1 = projective(&k2, 0);
    assert_eq!(p1.jh_multiplicity(1), 2);
    let s = simple(&k2, 0);
    assert_eq!((s.jh_multiplicity(0), s.jh_multiplicity(1)), (1, 0));
    let sum = direct_sum(&k2, &[p1.clone(), s.clone()]).unwrap();
    for v in 0..2 {
        assert_eq!(sum.jh_multiplicity(v), p1.jh_multiplicity(v) + s.jh_multiplicity(v));
    }
}

#[test]
fn push_down_examples() {
    let e4 = builtin::example4();
    let c = caps();
    let p = projective(&e4, 0);
    assert_eq!(push_down(&CoveringSpec::identity(&e4), &p).unwrap(), p);
    let (spec, y1) = y_module(&e4, 1).unwrap();
    let x1 = push_down(&spec, &y1).unwrap();
    assert_eq!(x1.length(), 7);
    assert!(iso_test(&x1, &projective(&e4, e4.vertex("c").unwrap()), &c).unwrap());
    let (spec, y2) = y_module(&e4, 2).unwrap();
    let x2 = push_down(&spec, &y2).unwrap();
    assert_eq!(x2.length(), 12);
    assert_eq!(x2.top_dims(), vec![0, 0, 2]);
    assert!(is_indecomposable(&x2, &c).unwrap());
}

#[test]
fn module_text_round_trip() {
    let e4 = builtin::example4();
    let x = example4_module_320(&e4).unwrap();
    let text = write_module(&x, "example4");
    let y = parse_module(&text, &|r| builtin::by_name(r)).unwrap();
    assert_eq!(x, y);
    let bad = parse_module("algebra = k2\ndims = 1 1\nmap a = 2\n", &|r| builtin::by_name(r));
    assert!(bad.is_err());
    let bad = parse_module("algebra = k2\ndims = 1 1\nmap c = 1\n", &|r| builtin::by_name(r));
    assert!(matches!(bad, Err(Error::Parse { line: 3, .. })));
}

/// Every pair of modules of length at most 3 over K(2), against the oracles.
#[test]
fn exhaustive_small_k2_against_oracles() {
    let alg = Alg::new(&builtin::k2());
    let c = caps();
    let mut all: Vec<(Vec<usize>, Vec<Om>)> = Vec::new();
    for len in 0..=3 {
        for dims in common::dim_vectors(2, len) {
            for maps in alg.all_reps(&dims) {
                all.push((dims.clone(), maps));
            }
        }
    }
    let libs: Vec<Representation> = all.iter().map(|(d, m)| alg.to_lib(d, m)).collect();
    for (i, x) in all.iter().enumerate() {
        let lx = &libs[i];
        if !lx.is_zero() {
            assert_eq!(is_indecomposable(lx, &c).unwrap(), alg.is_indecomposable(&x.0, &x.1), "{lx:?}");
        }
        assert_eq!(enumerate_submodules(lx, &c).unwrap().len(), brute_submodules(&alg, &x.0, &x.1).len());
        for (j, y) in all.iter().enumerate().step_by(3) {
            let ly = &libs[j];
            let homs = alg.homs(&x.0, &x.1, &y.0, &y.1).len();
            assert_eq!(2usize.pow(hom_dim(lx, ly) as u32), homs);
            assert_eq!(iso_test(lx, ly, &c).unwrap(), alg.is_iso(&x.0, &x.1, &y.0, &y.1));
            if lx.length() <= 2 {
                assert_eq!(is_cogenerated(lx, ly).unwrap(), embeds_in_power(&alg, x, y), "{lx:?} {ly:?}");
            }
        }
    }
}

fn small_algebras() -> Vec<Arc<AlgebraPresentation>> {
    vec![builtin::k2(), builtin::example4(), builtin::remark(false), f3_algebra()]
}

fn arb_pair() -> impl Strategy<Value = (Representation, Representation)> {
    (0..4usize).prop_flat_map(|i| {
        let alg = small_algebras()[i].clone();
        let d = if alg.field().p() == 2 { 2 } else { 1 };
        (arb_rep(alg.clone(), d), arb_rep(alg, d))
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn hom_dimension_matches_exhaustive_count((x, y) in arb_pair()) {
        let alg = Alg::new(x.algebra());
        let (xd, xm) = Alg::from_lib(&x);
        let (yd, ym) = Alg::from_lib(&y);
        let count = alg.homs(&xd, &xm, &yd, &ym).len();
        prop_assert_eq!((alg.p as usize).pow(hom_dim(&x, &y) as u32), count);
        for f in hom_basis(&x, &y).unwrap() {
            let maps: Vec<Om> = f.maps().iter().map(Om::from_lib).collect();
            prop_assert!(alg.is_intertwiner(&xm, &ym, &maps));
        }
    }

    #[test]
    fn cogeneration_matches_embedding_search((x, y) in arb_pair()) {
        let alg = Alg::new(x.algebra());
        if x.length() <= 5 {
            let oracle = embeds_in_power(&alg, &Alg::from_lib(&x), &Alg::from_lib(&y));
            prop_assert_eq!(is_cogenerated(&x, &y).unwrap(), oracle);
        }
    }

    #[test]
    fn submodules_match_subspace_tuples((x, _y) in arb_pair()) {
        let alg = Alg::new(x.algebra());
        let (d, mm) = Alg::from_lib(&x);
        let brute = brute_submodules(&alg, &d, &mm);
        let subs = enumerate_submodules(&x, &caps()).unwrap();
        prop_assert_eq!(subs.len(), brute.len());
        for s in &subs {
            prop_assert!(s.is_arrow_stable(&x));
            let elems: Vec<common::Elems> = s
                .spaces()
                .iter()
                .map(|sp| common::span(alg.p, sp.ambient(), &sp.basis().iter().map(|v| v.iter().map(|&e| e as u32).collect()).collect::<Vec<_>>()))
                .collect();
            prop_assert!(brute.contains(&elems));
        }
    }

    #[test]
    fn indecomposability_matches_idempotent_search((x, _y) in arb_pair()) {
        let alg = Alg::new(x.algebra());
        if !x.is_zero() {
            let (d, mm) = Alg::from_lib(&x);
            prop_assert_eq!(is_indecomposable(&x, &caps()).unwrap(), alg.is_indecomposable(&d, &mm));
        }
    }

    #[test]
    fn iso_matches_oracle_and_conjugates((x, y) in arb_pair(), seed in any::<u64>()) {
        let alg = Alg::new(x.algebra());
        let c = caps();
        let (xd, xm) = Alg::from_lib(&x);
        let (yd, ym) = Alg::from_lib(&y);
        prop_assert_eq!(iso_test(&x, &y, &c).unwrap(), alg.is_iso(&xd, &xm, &yd, &ym));
        // random base change
        let g: Vec<Matrix> = x.dims().iter().enumerate().map(|(v, &d)| {
            let group = common::gl(alg.p, d);
            group[(seed as usize >> (4 * v)) % group.len()].0.to_lib(x.field())
        }).collect();
        let xg = x.conjugate(&g).unwrap();
        prop_assert!(iso_test(&x, &xg, &c).unwrap());
        prop_assert!(iso_test(&xg, &x, &c).unwrap());
        prop_assert_eq!(fingerprint(&x), fingerprint(&xg));
        if iso_test(&x, &y, &c).unwrap() {
            prop_assert!(iso_test(&xg, &y, &c).unwrap());
        }
    }

    #[test]
    fn decompose_recovers_the_module((x, y) in arb_pair()) {
        let c = caps();
        let s = direct_sum(x.algebra(), &[x.clone(), y.clone()]).unwrap();
        if !s.is_zero() {
            let parts = decompose(&s, &c).unwrap();
            for p in &parts {
                prop_assert!(is_indecomposable(p, &c).unwrap());
            }
            let back = direct_sum(x.algebra(), &parts).unwrap();
            prop_assert!(iso_test(&back, &s, &c).unwrap());
            // Krull-Schmidt: the summands of x are among those of x ⊕ y
            if !x.is_zero() {
                let px = decompose(&x, &c).unwrap();
                prop_assert!(px.len() <= parts.len());
            }
        }
    }

    #[test]
    fn jh_is_additive((x, y) in arb_pair()) {
        let s = direct_sum(x.algebra(), &[x.clone(), y.clone()]).unwrap();
        let total: usize = (0..x.dims().len()).map(|v| s.jh_multiplicity(v)).sum();
        prop_assert_eq!(total, s.length());
        for v in 0..x.dims().len() {
            prop_assert_eq!(s.jh_multiplicity(v), x.dim(v) + y.dim(v));
        }
    }

    #[test]
    fn kernels_and_images_are_submodules((x, y) in arb_pair()) {
        for f in hom_basis(&x, &y).unwrap() {
            let k = f.kernel();
            let im = f.image();
            prop_assert!(k.is_arrow_stable(&x));
            prop_assert!(im.is_arrow_stable(&y));
            prop_assert_eq!(k.length() + im.length(), x.length());
        }
    }
}

#[test]
fn submodule_constructor_asserts_stability() {
    let k2 = builtin::k2();
    let p1 = projective(&k2, 0);
    let f = Field::F2;
    let bad = vec![Subspace::full(f, 1), Subspace::zero(f, 2)];
    assert!(Submodule::new(&p1, bad).is_err());
    let good = vec![Subspace::zero(f, 1), Subspace::span(f, 2, [vec![1, 0]])];
    assert!(Submodule::new(&p1, good).is_ok());
}
