use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::laurent::LaurentPoly;
use crate::poly::Monomial;

fn p(s: &str) -> Poly {
    s.parse().unwrap()
}

fn w(letters: &[Gen]) -> Word {
    Word::new(letters.to_vec())
}

use crate::coxeter::Gen;

fn random_poly(rng: &mut ChaCha8Rng, nvars: usize) -> Poly {
    Poly::from_terms((0..rng.gen_range(1..4)).map(|_| {
        let exps: Vec<u8> = (0..nvars).map(|_| rng.gen_range(0..=2)).collect();
        (
            Monomial::from_exponents(&exps),
            Q::new(rng.gen_range(-4..=4), rng.gen_range(1..=2)),
        )
    }))
}

fn slots(word: &[Gen], nvars: usize, contents: &[&str]) -> BSElement {
    let polys: Vec<Poly> = contents.iter().map(|c| p(c)).collect();
    BSElement::from_slots(&w(word), nvars, &polys).unwrap()
}

#[test]
fn normal_form_of_pure_tensors() {
    let bs = w(&[0]);
    let one = BSElement::from_slots(&bs, 3, &[Poly::one(), Poly::one()]).unwrap();
    assert_eq!(one, BSElement::one_tensor(&bs, 3));
    assert!(matches!(
        BSElement::from_slots(&bs, 3, &[Poly::one()]),
        Err(Error::LengthMismatch(1, 2))
    ));

    // oracle: the maps p (x) q -> pq and p (x) q -> p s(q) separate B_s
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let alpha = Poly::alpha(0);
    for _ in 0..30 {
        let (a, b) = (random_poly(&mut rng, 3), random_poly(&mut rng, 3));
        let m = BSElement::from_slots(&bs, 3, &[a.clone(), b.clone()]).unwrap();
        assert_eq!(m.comp(0), &a * &b.p_op(0));
        assert_eq!(m.comp(1), &a * &b.partial(0));
        let (c0, c1) = (m.comp(0), m.comp(1));
        assert_eq!(&c0 + &(&c1 * &alpha), &a * &b);
        assert_eq!(&c0 - &(&c1 * &alpha), &a * &b.swap_adjacent(0));
    }
}

#[test]
fn sliding_relation_in_bsbrbs() {
    // 1 (x) y (x) 1 (x) 1 = (x + y) 1^(x) - 1 (x) x (x) 1 (x) 1
    let lhs = slots(&[0, 1, 0], 3, &["1", "x2", "1", "1"]);
    let one = BSElement::one_tensor(&w(&[0, 1, 0]), 3);
    let rhs = one
        .left_mult(&p("x1 + x2"))
        .sub(&slots(&[0, 1, 0], 3, &["1", "x1", "1", "1"]))
        .unwrap();
    assert_eq!(lhs, rhs);
}

#[test]
fn right_and_left_multiplication() {
    let bs = w(&[0]);
    let b0 = BSElement::basis(&bs, 3, 0);
    let b1 = BSElement::basis(&bs, 3, 1);
    let alpha = Poly::alpha(0);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..20 {
        let r = random_poly(&mut rng, 3);
        let expected = b0
            .left_mult(&r.p_op(0))
            .add(&b1.left_mult(&r.partial(0)))
            .unwrap();
        assert_eq!(b0.right_mult(&r), expected);
        let expected = b0
            .left_mult(&(&(&alpha * &alpha) * &r.partial(0)))
            .add(&b1.left_mult(&r.p_op(0)))
            .unwrap();
        assert_eq!(b1.right_mult(&r), expected);
    }
    let q = p("x1*x3 - 2");
    let one = BSElement::one_tensor(&w(&[0, 1]), 3);
    assert_eq!(one.left_mult(&q).comp(0), q);
}

#[test]
fn generator_images_and_degrees() {
    let bs = w(&[0]);
    let empty = Word::empty();
    let m = BSMorphism::generator(GenKind::Dot, 0, 0, &bs, 3).unwrap();
    assert_eq!(m.degree(), 1);
    assert_eq!(m.image(0), &BSElement::one_tensor(&empty, 3));
    assert_eq!(m.image(1).comp(0), Poly::alpha(0));

    let ma = BSMorphism::generator(GenKind::DotAdjoint, 0, 0, &empty, 3).unwrap();
    assert_eq!(ma.degree(), 1);
    let expected = slots(&[0], 3, &["x2 - x1", "1"])
        .add(&slots(&[0], 3, &["1", "x2 - x1"]))
        .unwrap();
    assert_eq!(ma.image(0), &expected);
    assert_eq!(ma.image(0).comp(0), Poly::alpha(0));
    assert_eq!(ma.image(0).comp(1), Poly::one());

    let j = BSMorphism::generator(GenKind::Trivalent, 0, 0, &w(&[0, 0]), 3).unwrap();
    let ja = BSMorphism::generator(GenKind::TrivalentAdjoint, 0, 0, &bs, 3).unwrap();
    assert_eq!((j.degree(), ja.degree()), (-1, -1));
    // j_s o j_s^a vanishes: p (x) 1 (x) q -> p d(1) (x) q = 0
    assert!(j
        .compose(&ja)
        .unwrap()
        .images()
        .iter()
        .all(|im| im.is_zero()));

    assert!(matches!(
        BSMorphism::generator(GenKind::Trivalent, 0, 0, &w(&[0, 1]), 3),
        Err(Error::LetterMismatch(_))
    ));
    assert!(BSMorphism::generator(GenKind::Dot, 1, 0, &bs, 3).is_err());
}

#[test]
fn generators_are_bimodule_maps() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let cases = [
        (GenKind::Dot, 0, w(&[0, 1])),
        (GenKind::DotAdjoint, 1, w(&[0, 1])),
        (GenKind::Trivalent, 1, w(&[0, 1, 1])),
        (GenKind::TrivalentAdjoint, 1, w(&[0, 1])),
    ];
    for (kind, pos, src) in cases {
        let s = if kind == GenKind::DotAdjoint {
            0
        } else {
            src.letters()[pos]
        };
        let g = BSMorphism::generator(kind, s, pos, &src, 3).unwrap();
        for _ in 0..5 {
            assert!(
                g.commutes_with_right_mult(&random_poly(&mut rng, 3)),
                "{kind}"
            );
        }
    }
}

#[test]
fn dot_adjoint_image_is_central() {
    // m_s^a(1) p = p m_s^a(1) for 50 random p
    let ma = BSMorphism::generator(GenKind::DotAdjoint, 0, 0, &Word::empty(), 3).unwrap();
    let img = ma.image(0);
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..50 {
        let q = random_poly(&mut rng, 3);
        assert_eq!(img.right_mult(&q), img.left_mult(&q));
    }
}

#[test]
fn trivalent_associativity() {
    let sss = w(&[0, 0, 0]);
    let j = BSMorphism::generator(GenKind::Trivalent, 0, 0, &w(&[0, 0]), 3).unwrap();
    let j_left = BSMorphism::generator(GenKind::Trivalent, 0, 0, &sss, 3).unwrap();
    let j_right = BSMorphism::generator(GenKind::Trivalent, 0, 1, &sss, 3).unwrap();
    assert_eq!(j.compose(&j_left).unwrap(), j.compose(&j_right).unwrap());
}

#[test]
fn barbell_loop_is_minus_identity() {
    // j_s o m_r o m_r^a o j_s^a = -id on B_s
    let bs = w(&[0]);
    let ja = BSMorphism::generator(GenKind::TrivalentAdjoint, 0, 0, &bs, 3).unwrap();
    let mra = BSMorphism::generator(GenKind::DotAdjoint, 1, 1, &w(&[0, 0]), 3).unwrap();
    let mr = BSMorphism::generator(GenKind::Dot, 1, 1, &w(&[0, 1, 0]), 3).unwrap();
    let j = BSMorphism::generator(GenKind::Trivalent, 0, 0, &w(&[0, 0]), 3).unwrap();
    let loop_ = j
        .compose(&mr)
        .unwrap()
        .compose(&mra)
        .unwrap()
        .compose(&ja)
        .unwrap();
    assert_eq!(
        loop_,
        BSMorphism::identity(&bs, 3).scale(-Q::from_integer(1))
    );
}

#[test]
fn idempotent_decomposition_in_s3() {
    let d = decompose_srs(3, 0, 1).unwrap();
    assert!(d.e_idempotent);
    assert!(d.complement.is_idempotent());
    assert_eq!(d.total_rank, "v^-3 + 3*v^-1 + 3*v + v^3".parse().unwrap());
    assert_eq!(d.image_e, "v^-1 + v".parse().unwrap());
    assert_eq!(
        d.image_complement,
        "v^-3 + 2*v^-1 + 2*v + v^3".parse().unwrap()
    );
    assert!(d.ranks_add_up());
    // (1-e)(1 (x) x (x) 1 (x) 1) = 1/2(x+y-z) (x) 1 (x) 1 (x) 1 + 1 (x) 1 (x) 1 (x) 1/2(x+y-z)
    let half = "1/2*x1 + 1/2*x2 - 1/2*x3";
    let expected = slots(&[0, 1, 0], 3, &[half, "1", "1", "1"])
        .add(&slots(&[0, 1, 0], 3, &["1", "1", "1", half]))
        .unwrap();
    assert_eq!(d.complement_on_generator, expected);
}

#[test]
fn graded_rank_examples() {
    assert_eq!(graded_rank(&w(&[0])), "v^-1 + v".parse().unwrap());
    assert_eq!(graded_rank(&Word::empty()), LaurentPoly::one());
    for n in 0..6 {
        let word = Word::new(vec![0; n]);
        let mut expected = LaurentPoly::one();
        for _ in 0..n {
            expected = &expected * &LaurentPoly::quantum_two();
        }
        assert_eq!(graded_rank(&word), expected);
    }
    let id = BSMorphism::identity(&w(&[0, 1]), 3);
    assert_eq!(image_graded_rank(&id).unwrap(), graded_rank(&w(&[0, 1])));
    let twice = id.scale(Q::from_integer(2));
    assert!(matches!(
        image_graded_rank(&twice),
        Err(Error::NotIdempotent)
    ));
}

#[test]
fn braid_morphism_case_two() {
    let f = f_morphism(3, 0, 1).unwrap();
    let (src, tgt) = (w(&[0, 1, 0]), w(&[1, 0, 1]));
    assert_eq!(f.source(), &src);
    assert_eq!(f.target(), &tgt);
    assert_eq!(f.degree(), 0);
    assert_eq!(f.image(0), &BSElement::one_tensor(&tgt, 3));
    // 1 (x) x1 (x) 1 (x) 1 -> (x1 + x2) (x) 1 (x) 1 (x) 1 - 1 (x) 1 (x) 1 (x) x3
    let gen = slots(&[0, 1, 0], 3, &["1", "x1", "1", "1"]);
    let expected = slots(&[1, 0, 1], 3, &["x1 + x2", "1", "1", "1"])
        .sub(&slots(&[1, 0, 1], 3, &["1", "1", "1", "x3"]))
        .unwrap();
    assert_eq!(f.apply(&gen).unwrap(), expected);
}

#[test]
fn braid_morphism_case_three() {
    let f = f_morphism(3, 1, 0).unwrap();
    let gen = slots(&[1, 0, 1], 3, &["1", "x3", "1", "1"]);
    let expected = slots(&[0, 1, 0], 3, &["1", "1", "1", "x2 + x3"])
        .sub(&slots(&[0, 1, 0], 3, &["x1", "1", "1", "1"]))
        .unwrap();
    assert_eq!(f.apply(&gen).unwrap(), expected);
}

#[test]
fn braid_morphisms_are_bimodule_maps() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for (a, b) in [(0, 1), (1, 0), (1, 2), (2, 1), (0, 2), (2, 0)] {
        let f = f_morphism(4, a, b).unwrap();
        assert_eq!(f.degree(), 0);
        assert_eq!(f.image(0), &BSElement::one_tensor(f.target(), 4));
        for _ in 0..5 {
            assert!(
                f.commutes_with_right_mult(&random_poly(&mut rng, 4)),
                "f({a},{b})"
            );
        }
        // homogeneous of degree 0
        for mask in 0..1u32 << f.source().len() {
            let d = BSElement::basis(f.source(), 4, mask).degree();
            let img = f.image(mask);
            assert!(img.is_zero() || img.degree() == d);
        }
    }
}

#[test]
fn braid_round_trip_in_s3() {
    let f_sr = f_morphism(3, 0, 1).unwrap();
    let f_rs = f_morphism(3, 1, 0).unwrap();
    let round = f_rs.compose(&f_sr).unwrap();
    let src = w(&[0, 1, 0]);
    // agrees with the identity on 1^(x) and equals 1 - e overall
    assert_eq!(round.image(0), &BSElement::one_tensor(&src, 3));
    let e = srs_idempotent(3, 0, 1).unwrap();
    assert_eq!(round, BSMorphism::identity(&src, 3).sub(&e).unwrap());
    // commuting moves are involutions
    let f = f_morphism(4, 0, 2).unwrap();
    let g = f_morphism(4, 2, 0).unwrap();
    assert_eq!(g.compose(&f).unwrap(), BSMorphism::identity(f.source(), 4));
}

#[test]
fn tensoring_with_identities() {
    let f = f_morphism(3, 0, 1).unwrap();
    let big = f.tensor_with_identity(&w(&[1]), &w(&[0])).unwrap();
    assert_eq!(big.source(), &w(&[1, 0, 1, 0, 0]));
    assert_eq!(big.target(), &w(&[1, 1, 0, 1, 0]));
    assert_eq!(big.image(0), &BSElement::one_tensor(big.target(), 3));
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    assert!(big.commutes_with_right_mult(&random_poly(&mut rng, 3)));
    // (id (x) f) o (id (x) g) = id (x) (f o g)
    let g = f_morphism(3, 1, 0).unwrap();
    let lhs = f
        .tensor_with_identity(&w(&[0]), &Word::empty())
        .unwrap()
        .compose(&g.tensor_with_identity(&w(&[0]), &Word::empty()).unwrap())
        .unwrap();
    let rhs = f
        .compose(&g)
        .unwrap()
        .tensor_with_identity(&w(&[0]), &Word::empty())
        .unwrap();
    assert_eq!(lhs, rhs);
    assert_eq!(
        BSMorphism::identity(&Word::empty(), 3)
            .tensor_with_identity(&w(&[0]), &w(&[1]))
            .unwrap(),
        BSMorphism::identity(&w(&[0, 1]), 3)
    );
}

#[test]
fn adjunction_round_trips() {
    let bs = w(&[0]);
    let empty = Word::empty();
    let m = BSMorphism::generator(GenKind::Dot, 0, 0, &bs, 3).unwrap();
    let ma = BSMorphism::generator(GenKind::DotAdjoint, 0, 0, &empty, 3).unwrap();
    let j = BSMorphism::generator(GenKind::Trivalent, 0, 0, &w(&[0, 0]), 3).unwrap();
    let ja = BSMorphism::generator(GenKind::TrivalentAdjoint, 0, 0, &bs, 3).unwrap();

    // Hom(B_s M, N) -> Hom(M, B_s N) -> back
    for f in [&m, &j, &ja] {
        let there = adjunction_right(0, f).unwrap();
        assert_eq!(&adjunction_left(0, &there).unwrap(), f);
    }
    // Hom(M, B_s N) -> Hom(B_s M, N) -> back
    for g in [&ma, &ja, &j.compose(&ja).unwrap()] {
        if g.target().letters().first() == Some(&0) {
            let back = adjunction_left(0, g).unwrap();
            assert_eq!(&adjunction_right(0, &back).unwrap(), g);
        }
    }
    // the dot and its adjoint correspond
    assert_eq!(adjunction_right(0, &m).unwrap(), ma);
    assert!(adjunction_right(1, &m).is_err());
}

#[test]
fn element_json() {
    let gen = slots(&[0, 1, 0], 3, &["1", "x1", "1", "1"]);
    let json = gen.to_json();
    assert_eq!(json["word"], "s0.s1.s0");
    assert_eq!(json["comps"]["000"], "1/2*x1 + 1/2*x2");
    assert_eq!(json["comps"]["100"], "-1/2");
}
