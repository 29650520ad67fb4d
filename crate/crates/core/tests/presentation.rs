mod common;

use roiter_core::builtin;
use roiter_core::repcore::{hom_dim, is_cogenerated};
use roiter_core::{injective, projective, simple, AlgebraPresentation, Error};

#[test]
fn validate_reports_total_dimension() {
    assert_eq!(builtin::k2().validate().total_dimension, 4);
    assert_eq!(builtin::example4().validate().total_dimension, 11);
    // e_a, e_b, e_c, alpha, beta, beta', beta'.alpha
    assert_eq!(builtin::remark(false).validate().total_dimension, 7);
    assert_eq!(builtin::d4().validate().total_dimension, 9);
}

#[test]
fn loop_without_relation_is_rejected() {
    let err = AlgebraPresentation::parse("modulus = 2\nvertices = x\narrow = l: x -> x\n").unwrap_err();
    assert!(matches!(err, Error::NotAdmissible { .. }), "{err:?}");
}

#[test]
fn loop_with_cube_zero_is_admissible() {
    let alg = AlgebraPresentation::parse("modulus = 3\nvertices = x\narrow = l: x -> x\nrelation = l.l.l\n").unwrap();
    assert_eq!(alg.validate().total_dimension, 3);
    assert_eq!(projective(&alg, 0).dims(), &[3]);
}

#[test]
fn parser_errors_carry_line_numbers() {
    let err = AlgebraPresentation::parse("modulus = 2\nvertices = a b\narrow = f: a -> c\n").unwrap_err();
    assert!(matches!(err, Error::Quiver(_) | Error::UnknownVertex(_) | Error::Parse { .. }), "{err:?}");
    let err = AlgebraPresentation::parse("modulus = 2\nvertices = a b\nweight = 3\n").unwrap_err();
    assert!(matches!(err, Error::Parse { line: 3, .. }));
    assert!(AlgebraPresentation::parse("modulus = 4\nvertices = a\n").is_err());
    // a degree-one relation is not admissible
    assert!(AlgebraPresentation::parse("modulus = 2\nvertices = a b\narrow = f: a -> b\nrelation = f\n").is_err());
}

#[test]
fn text_round_trip() {
    for name in builtin::NAMES {
        let alg = builtin::by_name(name).unwrap();
        let again = AlgebraPresentation::parse(&alg.to_text()).unwrap();
        assert_eq!(*alg, *again, "{name}");
    }
}

#[test]
fn projectives_injectives_simples() {
    let k2 = builtin::k2();
    assert_eq!(projective(&k2, 1).dims(), &[0, 1]);
    assert_eq!(projective(&k2, 0).dims(), &[1, 2]);
    assert_eq!(injective(&k2, 0).dims(), &[1, 0]);
    assert_eq!(injective(&k2, 1).dims(), &[2, 1]);
    assert_eq!(simple(&k2, 0).dims(), &[1, 0]);
    let e4 = builtin::example4();
    let pc = projective(&e4, e4.vertex("c").unwrap());
    assert_eq!(pc.dims(), &[4, 2, 1]);
    assert_eq!(pc.length(), 7);
    assert_eq!(simple(&e4, e4.vertex("b").unwrap()).dims(), &[0, 1, 0]);
    for name in builtin::NAMES {
        let alg = builtin::by_name(name).unwrap();
        for v in 0..alg.num_vertices() {
            assert_eq!(simple(&alg, v).length(), 1);
        }
    }
}

#[test]
fn projective_lengths_bound_everything() {
    for name in builtin::NAMES {
        let alg = builtin::by_name(name).unwrap();
        let (pb, qb) = alg.projective_injective_bounds();
        for v in 0..alg.num_vertices() {
            assert!(projective(&alg, v).length() <= pb);
            assert!(injective(&alg, v).length() <= qb);
        }
        assert!((0..alg.num_vertices()).any(|v| projective(&alg, v).length() == pb));
    }
}

#[test]
fn yoneda_dimension_count() {
    // dim Hom(P(v), X) = dim X_v, with X running over every projective and injective
    for name in builtin::NAMES {
        let alg = builtin::by_name(name).unwrap();
        let n = alg.num_vertices();
        let xs: Vec<_> = (0..n).flat_map(|w| [projective(&alg, w), injective(&alg, w)]).collect();
        for v in 0..n {
            for x in &xs {
                assert_eq!(hom_dim(&projective(&alg, v), x), x.dim(v), "{name}");
            }
        }
    }
}

#[test]
fn simple_is_top_of_projective_and_socle_of_injective() {
    for name in builtin::NAMES {
        let alg = builtin::by_name(name).unwrap();
        for v in 0..alg.num_vertices() {
            let s = simple(&alg, v);
            let mut unit = vec![0; alg.num_vertices()];
            unit[v] = 1;
            assert_eq!(projective(&alg, v).top_dims(), unit);
            assert_eq!(injective(&alg, v).socle_dims(), unit);
            assert!(is_cogenerated(&s, &injective(&alg, v)).unwrap());
            assert_eq!(hom_dim(&projective(&alg, v), &s), 1);
        }
    }
}

#[test]
fn opposite_of_opposite_is_the_algebra() {
    for name in builtin::NAMES {
        let alg = builtin::by_name(name).unwrap();
        let op = alg.opposite();
        assert_eq!(op.validate().total_dimension, alg.validate().total_dimension);
        assert_eq!(*op.opposite(), *alg, "{name}");
    }
}

#[test]
fn projectives_satisfy_relations() {
    for name in builtin::NAMES {
        let alg = builtin::by_name(name).unwrap();
        for v in 0..alg.num_vertices() {
            projective(&alg, v).check().unwrap();
            injective(&alg, v).check().unwrap();
        }
    }
}
