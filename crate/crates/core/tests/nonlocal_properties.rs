use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use slocc_core::exactnum::{ExactMatrix, GaussianRational};
use slocc_core::nonlocal::{
    canonical_params, cross_ratio, normal_form_state, reduce_to_normal_form, slocc_equivalent_params, Moduli,
    ParamVector,
};
use slocc_core::pencil::{apply_ilo, class_label, ILOTriple, ProjectivePoint};

fn gq(a: i64, b: i64, c: i64) -> GaussianRational {
    &GaussianRational::ratio(a, b) + &(&GaussianRational::i() * &GaussianRational::from(c))
}

fn arb_point() -> impl Strategy<Value = ProjectivePoint> {
    prop_oneof![
        1 => Just(ProjectivePoint::infinity()),
        8 => (-9i64..=9, 1i64..=5, -2i64..=2).prop_map(|(a, b, c)| ProjectivePoint::finite(gq(a, b, c))),
    ]
}

fn arb_params(len: usize) -> impl Strategy<Value = ParamVector> {
    prop::collection::vec((-6i64..=6, 1i64..=4), len)
        .prop_filter_map("valid", |raw| {
            ParamVector::new(raw.into_iter().map(|(a, b)| GaussianRational::ratio(a, b)).collect(), false).ok()
        })
}

fn symmetric(label: &slocc_core::pencil::ClassLabel) -> ParamVector {
    match label.params() {
        Some(Moduli::Symmetric(v)) => v.clone(),
        other => panic!("expected symmetric moduli, got {other:?}"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cross_ratio_is_mobius_invariant(
        pts in prop::collection::vec(arb_point(), 4),
        t in prop::array::uniform4((-5i64..=5, -1i64..=1)),
    ) {
        let tm = ExactMatrix::from_fn(2, 2, |i, j| gq(t[2 * i + j].0, 1, t[2 * i + j].1));
        prop_assume!(tm.rank() == 2);
        match cross_ratio(&pts[0], &pts[1], &pts[2], &pts[3]) {
            Ok(before) => {
                let m: Vec<_> = pts.iter().map(|p| p.mobius(&tm)).collect();
                prop_assert_eq!(cross_ratio(&m[0], &m[1], &m[2], &m[3]).unwrap(), before);
            }
            Err(_) => {
                let distinct = (0..4).all(|i| (i + 1..4).all(|j| pts[i] != pts[j]));
                prop_assert!(!distinct);
            }
        }
    }

    #[test]
    fn classifier_separates_orbits(
        (a, b) in (1usize..=3).prop_flat_map(|len| (arb_params(len), arb_params(len))),
        extra in 1usize..=2,
    ) {
        let n = a.m() + extra;
        let h = extra == 1;
        let (a, b) = (a.with_extra_h(h), b.with_extra_h(h));
        let la = class_label(&normal_form_state(&a, n).unwrap()).unwrap();
        let lb = class_label(&normal_form_state(&b, n).unwrap()).unwrap();
        prop_assert_eq!(la == lb, slocc_equivalent_params(&a, &b));
        prop_assert_eq!(symmetric(&la), canonical_params(&a));
    }

    #[test]
    fn parameter_count_bound(
        raw in prop::collection::vec((1i64..=40, 1i64..=3), 2..=7),
        extra in 1usize..=3,
    ) {
        let eigs: Vec<GaussianRational> = raw.iter().map(|&(a, b)| GaussianRational::ratio(a, b)).collect();
        let n = eigs.len() + extra;
        if let Ok((v, _)) = reduce_to_normal_form(&eigs, n) {
            prop_assert_eq!(v.len(), eigs.len() - 2);
            prop_assert!(v.len() <= n - 3);
        }
    }
}

#[test]
fn parameters_survive_random_ilos() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for (v, n) in [("[2]", 5), ("[4/3, 3/2]", 5), ("[-3, 1/5]", 6)] {
        let v: ParamVector = v.parse().unwrap();
        let h = n == v.m() + 1;
        let v = v.with_extra_h(h);
        let s = normal_form_state(&v, n).unwrap();
        let want = canonical_params(&v);
        for _ in 0..100 {
            let op = ILOTriple::random(n, n, &mut rng);
            assert_eq!(symmetric(&class_label(&apply_ilo(&s, &op).unwrap()).unwrap()), want);
        }
    }
}
