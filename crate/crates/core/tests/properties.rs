use nagell::arith::max_weighted_root;
use nagell::families::{EulerInstance, KlmInstance};
use nagell::transport::PipelineTrace;
use nagell::verify::{self, check_round_trips};
use nagell::{Point3, QuadricForm, Rational, StepKind, WeierstrassCurve};
use num_bigint::BigInt;
use num_traits::Signed;
use proptest::prelude::*;

fn worked_example() -> (QuadricForm, QuadricForm, Point3) {
    let a = QuadricForm::from_ints([[1, 1, 0, 0], [1, 2, -3, 0], [0, -3, 0, -1], [0, 0, -1, 3]]).unwrap();
    let b = QuadricForm::diag([-2, 1, 2, -1]);
    (a, b, Point3::from_ints([1, 1, 1, 1]).unwrap())
}

/// Instances with enough rational points to sample from.
fn sampled_instances() -> Vec<(&'static str, PipelineTrace, Vec<Point3>)> {
    let build = |(a, b, x): (QuadricForm, QuadricForm, Point3)| PipelineTrace::build(&a, &b, &x).unwrap();
    let p = |c: [i64; 4]| Point3::from_ints(c).unwrap();
    vec![
        ("worked", build(worked_example()), vec![]),
        ("euler(3,8)", build(EulerInstance::new(3, 8).unwrap().quadrics()), vec![p([1, 1, 2, 3])]),
        ("klm(1,1,3)", build(KlmInstance::new(1, 1, 3).unwrap().quadrics()), vec![p([5, 7, 1, 11])]),
    ]
}

#[test]
fn round_trips_on_sampled_points() {
    for (name, t, seeds) in sampled_instances() {
        let n = check_round_trips(&t, &seeds, 20).unwrap_or_else(|v| panic!("{name}: {v}"));
        assert!(n >= 20);
    }
}

fn check_trace(t: &PipelineTrace) {
    verify::check_trace(t).unwrap();
}

#[test]
fn invariants_on_fixed_instances() {
    for (_, t, _) in sampled_instances() {
        check_trace(&t);
    }
    let t = PipelineTrace::build_from(KlmInstance::new(2, 3, 5).unwrap().quadrics());
    check_trace(&t);
}

trait BuildFrom {
    fn build_from(q: (QuadricForm, QuadricForm, Point3)) -> PipelineTrace;
}

impl BuildFrom for PipelineTrace {
    fn build_from((a, b, x): (QuadricForm, QuadricForm, Point3)) -> PipelineTrace {
        PipelineTrace::build(&a, &b, &x).unwrap()
    }
}

fn brute_weighted_root(vals: &[(i64, u32)]) -> i64 {
    let bound = vals.iter().filter(|(v, _)| *v != 0).map(|(v, _)| v.abs()).min().unwrap_or(1);
    (1..=bound)
        .filter(|u| vals.iter().all(|(v, w)| v % u.pow(*w) == 0))
        .max()
        .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn euler_pipeline_invariants(m in -40i64..40, n in -40i64..40) {
        prop_assume!(m != 0 && n != 0 && m != n);
        let inst = EulerInstance::new(m, n).unwrap();
        let t = PipelineTrace::build_from(inst.quadrics());
        check_trace(&t);
        prop_assert!(t.cubic.took_shortcut());
        for img in inst.trivial_images() {
            let e = t.forward_to(&img.source, None).unwrap();
            prop_assert_eq!(t.backward_from(&e, None).unwrap(), img.source);
        }
    }

    #[test]
    fn klm_pipeline_invariants(k in 1i64..25, l in 1i64..25, m in 1i64..25) {
        let inst = KlmInstance::new(k, l, m).unwrap();
        let t = PipelineTrace::build_from(inst.quadrics());
        check_trace(&t);
        for img in inst.trivial_images() {
            prop_assert!(inst.curve().contains(&img.image));
            let e = t.forward_to(&img.source, None).unwrap();
            prop_assert_eq!(t.backward_from(&e, None).unwrap(), img.source);
        }
    }

    #[test]
    fn generic_pencils(
        a in proptest::collection::vec(-4i64..=4, 9),
        b in proptest::collection::vec(-4i64..=4, 9),
    ) {
        // symmetric pairs with A33 = B33 = 0, so (0,0,0,1) lies on both
        let sym = |v: &[i64]| {
            let mut m = [[0i64; 4]; 4];
            let idx = [(0, 0), (0, 1), (0, 2), (0, 3), (1, 1), (1, 2), (1, 3), (2, 2), (2, 3)];
            for ((i, j), x) in idx.iter().zip(v) {
                m[*i][*j] = *x;
                m[*j][*i] = *x;
            }
            QuadricForm::from_ints(m).unwrap()
        };
        let (qa, qb) = (sym(&a), sym(&b));
        let x = Point3::from_ints([0, 0, 0, 1]).unwrap();
        let t = PipelineTrace::build(&qa, &qb, &x);
        prop_assume!(t.is_ok());
        let t = t.unwrap();
        check_trace(&t);
        prop_assert_eq!(t.distinguished_final(), &nagell::Point2::from_ints([0, 1, 0]).unwrap());
        prop_assert_eq!(t.backward_from(t.distinguished_final(), None).unwrap(), x);
    }

    #[test]
    fn weighted_root_is_maximal(x in -5000i64..5000, y in -5000i64..5000, z in -5000i64..5000) {
        prop_assume!(x != 0 || y != 0 || z != 0);
        let vals = [(x, 2), (y, 4), (z, 6)];
        let got = max_weighted_root(&vals.map(|(v, w)| (BigInt::from(v), w))).unwrap();
        prop_assert_eq!(got, BigInt::from(brute_weighted_root(&vals)));
    }

    #[test]
    fn discriminant_matches_roots(r1 in -30i64..30, r2 in -30i64..30, r3 in -30i64..30) {
        // (x - r1)(x - r2)(x - r3): discriminant is the squared Vandermonde product
        let w = WeierstrassCurve::from_ints(-(r1 + r2 + r3), r1 * r2 + r1 * r3 + r2 * r3, -r1 * r2 * r3);
        let v = (r1 - r2) * (r1 - r3) * (r2 - r3);
        prop_assert_eq!(w.discriminant(), Rational::from_integer(BigInt::from(v * v)));
        prop_assert_eq!(w.is_singular(), v == 0);
        if v != 0 {
            let mut roots = vec![r1, r2, r3];
            roots.sort();
            let want: Vec<Rational> = roots.into_iter().map(|r| Rational::from_integer(r.into())).collect();
            prop_assert_eq!(w.rational_roots(), want);
        }
    }
}

#[test]
fn step_records_name_their_stage() {
    let t = PipelineTrace::build_from(KlmInstance::new(2, 3, 5).unwrap().quadrics());
    let stages: Vec<_> = t.cubic.steps.iter().filter_map(|s| s.kind.stage()).collect();
    assert_eq!(stages, (1..=8).collect::<Vec<u8>>());
    assert!(t.cubic.steps.iter().all(|s| s.kind != StepKind::ExchangeXY));
    assert!(t.final_curve().a2.is_positive());
}
