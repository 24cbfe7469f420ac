use cliffq::qtype::{detect_qtype, pattern_compose, qtype_compose, OpKind, QType, SubspacePattern};
use cliffq::{Blade, FieldTag, Multivector, Scalar, Signature};
use proptest::prelude::*;

fn signature() -> impl Strategy<Value = Signature> {
    (1usize..=5).prop_flat_map(|n| (0..=n).prop_map(move |p| Signature::new(p, n - p).unwrap()))
}

fn int_mv(sig: Signature, field: FieldTag) -> impl Strategy<Value = Multivector> {
    let dim = sig.dim() as u32;
    let complex = field == FieldTag::Complex;
    prop::collection::vec((0..dim, -4i32..=4, -4i32..=4), 0..10).prop_map(move |terms| {
        Multivector::from_terms(
            sig,
            field,
            terms.into_iter().map(|(m, re, im)| {
                (Blade::from_mask(m), Scalar::new(re as f64, if complex { im as f64 } else { 0.0 }))
            }),
        )
        .unwrap()
    })
}

fn triple() -> impl Strategy<Value = (Multivector, Multivector, Multivector)> {
    (signature(), prop_oneof![Just(FieldTag::Real), Just(FieldTag::Complex)])
        .prop_flat_map(|(s, f)| (int_mv(s, f), int_mv(s, f), int_mv(s, f)))
}

fn pattern() -> impl Strategy<Value = SubspacePattern> {
    (0u8..16, 0u8..16).prop_map(|(r, i)| SubspacePattern::from_types(QType::from_bits(r), QType::from_bits(i)))
}

/// Integer element of `p`: keep only the allowed components of `u`.
fn restrict(u: &Multivector, p: &SubspacePattern) -> Multivector {
    let terms: Vec<_> = u
        .terms()
        .map(|(b, c)| {
            let class = p.class(b.residue());
            let re = if class.allows_real() { c.re } else { 0.0 };
            let im = if class.allows_imaginary() { c.im } else { 0.0 };
            (b, Scalar::new(re, im))
        })
        .collect();
    Multivector::from_terms(u.sig(), u.field(), terms).unwrap()
}

fn zero_like(u: &Multivector) -> Multivector {
    Multivector::zero(u.sig(), u.field())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn product_splits_into_brackets((u, v, _) in triple()) {
        let uv = u.geometric_product(&v).unwrap();
        let half = u.commutator(&v).unwrap().try_add(&u.anticommutator(&v).unwrap()).unwrap().scale_real(0.5);
        prop_assert_eq!(uv, half);
    }

    #[test]
    fn bracket_symmetries((u, v, w) in triple()) {
        prop_assert_eq!(u.commutator(&v).unwrap(), v.commutator(&u).unwrap().neg());
        prop_assert_eq!(u.anticommutator(&v).unwrap(), v.anticommutator(&u).unwrap());
        let jacobi = u.commutator(&v).unwrap().commutator(&w).unwrap()
            .try_add(&v.commutator(&w).unwrap().commutator(&u).unwrap()).unwrap()
            .try_add(&w.commutator(&u).unwrap().commutator(&v).unwrap()).unwrap();
        prop_assert!(jacobi.is_empty());
    }

    #[test]
    fn associativity_and_identity((u, v, w) in triple()) {
        let left = u.geometric_product(&v).unwrap().geometric_product(&w).unwrap();
        let right = u.geometric_product(&v.geometric_product(&w).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        let e = Multivector::identity(u.sig(), u.field());
        prop_assert_eq!(e.geometric_product(&u).unwrap(), u.clone());
        prop_assert_eq!(u.geometric_product(&e).unwrap(), u);
    }

    #[test]
    fn conjugation_is_involutive_anti_automorphism((u, v, _) in triple(), re in -3i32..=3, im in -3i32..=3) {
        prop_assert_eq!(u.clifford_conjugate().clifford_conjugate(), u.clone());
        let uv = u.geometric_product(&v).unwrap().clifford_conjugate();
        let vu = v.clifford_conjugate().geometric_product(&u.clifford_conjugate()).unwrap();
        prop_assert_eq!(uv, vu);
        let lambda = if u.field() == FieldTag::Complex { Scalar::new(re as f64, im as f64) } else { Scalar::new(re as f64, 0.0) };
        prop_assert_eq!(u.scale(lambda).unwrap().clifford_conjugate(), u.clifford_conjugate().scale(lambda.conj()).unwrap());
    }

    #[test]
    fn conjugation_matches_reversed_generator_word((u, _, _) in triple()) {
        // rebuild each term as conj(c) * e^{ak} ... e^{a1}
        let mut expect = zero_like(&u);
        for (b, c) in u.terms() {
            let mut word = Multivector::from_blade(u.sig(), u.field(), Blade::IDENTITY, c.conj()).unwrap();
            for i in b.indices().into_iter().rev() {
                let g = Multivector::from_blade(u.sig(), u.field(), Blade::generator(i), Scalar::new(1.0, 0.0)).unwrap();
                word = word.geometric_product(&g).unwrap();
            }
            expect = expect.try_add(&word).unwrap();
        }
        prop_assert_eq!(u.clifford_conjugate(), expect);
    }

    #[test]
    fn projections_partition((u, _, _) in triple()) {
        let n = u.sig().n();
        let mut by_grade = zero_like(&u);
        for k in 0..=n {
            by_grade = by_grade.try_add(&u.grade_project(k).unwrap()).unwrap();
        }
        prop_assert_eq!(&by_grade, &u);
        let parity = u.parity_project(true).try_add(&u.parity_project(false)).unwrap();
        prop_assert_eq!(&parity, &u);
        let mut by_type = zero_like(&u);
        for r in 0..4 {
            let part = u.qtype_project(r);
            prop_assert_eq!(part.qtype_project(r), part.clone());
            for s in 0..4 {
                if s != r {
                    prop_assert!(part.qtype_project(s).is_empty());
                }
            }
            let mut via_grades = zero_like(&u);
            for k in (r..=n).step_by(4) {
                via_grades = via_grades.try_add(&u.grade_project(k).unwrap()).unwrap();
            }
            prop_assert_eq!(&part, &via_grades);
            by_type = by_type.try_add(&part).unwrap();
        }
        prop_assert_eq!(by_type, u);
    }

    #[test]
    fn type_composition_is_sound((u, v, _) in triple()) {
        for op in OpKind::ALL {
            let w = op.apply(&u, &v).unwrap();
            let bound = qtype_compose(op, detect_qtype(&u, 0.0), detect_qtype(&v, 0.0));
            prop_assert!(detect_qtype(&w, 0.0).is_subset(bound), "{:?}: {} {} -> {}", op, u, v, w);
        }
    }

    #[test]
    fn pattern_composition_is_sound(s in signature(), p1 in pattern(), p2 in pattern(), seed in any::<u64>()) {
        let mut rng = cliffq::verifier::rng::SplitMix64::new(seed);
        let u = cliffq::verifier::sample::integer_sample(&mut rng, s, &p1, FieldTag::Complex);
        let v = cliffq::verifier::sample::integer_sample(&mut rng, s, &p2, FieldTag::Complex);
        for op in OpKind::ALL {
            let w = op.apply(&u, &v).unwrap();
            prop_assert!(pattern_compose(op, &p1, &p2).matches(&w, 0.0));
        }
        // restriction agrees with sampling
        prop_assert_eq!(restrict(&u, &p1), u);
    }

    #[test]
    fn pattern_composition_is_monotone(p1 in pattern(), p2 in pattern(), q1 in pattern()) {
        let wider = p1.join(&q1);
        for op in OpKind::ALL {
            prop_assert!(pattern_compose(op, &p1, &p2).is_within(&pattern_compose(op, &wider, &p2)));
        }
    }

    #[test]
    fn exponential_inverse(s in signature(), coeffs in prop::collection::vec(-1.0f64..1.0, 1..6), seed in any::<u32>()) {
        let terms: Vec<_> = coeffs.iter().enumerate()
            .map(|(i, c)| (Blade::from_mask(seed.wrapping_add(i as u32 * 7) % s.dim() as u32), Scalar::new(*c, 0.0)))
            .collect();
        let u = Multivector::from_terms(s, FieldTag::Real, terms).unwrap();
        let eps = 1e-14;
        let (a, b) = (u.exp(eps, 200).unwrap(), u.neg().exp(eps, 200).unwrap());
        let err = a.geometric_product(&b).unwrap().distance(&Multivector::identity(s, FieldTag::Real)).unwrap();
        prop_assert!(err <= 10.0 * eps * a.l1_norm() * b.l1_norm(), "err {}", err);
    }
}
