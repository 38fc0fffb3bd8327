use nagell::transport::PipelineTrace;
use nagell::{run_pipeline, Error, Point2, Point3, QuadricForm, StepKind, TernaryCubic};

fn pt(x: i64, y: i64, z: i64) -> Point2 {
    Point2::from_ints([x, y, z]).unwrap()
}

#[test]
fn vertical_tangent_swaps_y_and_z() {
    // at (1,0,0) the tangent is Y = 0, so Γ201 vanishes after Step 1
    let c = TernaryCubic::from_entries(&[(210, 1), (102, 1), (30, 1), (3, 1)]);
    let t = run_pipeline(&c, &pt(1, 0, 0)).unwrap();
    let kinds: Vec<_> = t.steps.iter().map(|s| s.kind).collect();
    let swap = kinds.iter().position(|k| *k == StepKind::SwapYZ).expect("swap step");
    assert_eq!(kinds[swap + 1], StepKind::AlignTangent);
    assert!(t.steps.iter().all(|s| s.is_consistent()));
    assert!(!t.weierstrass.is_singular());
    assert_eq!(t.steps.last().unwrap().point_after, pt(0, 1, 0));
}

#[test]
fn flex_takes_the_shortcut() {
    // y² = x³ + 1 written with the flex at (1,0,0)
    let c = TernaryCubic::from_entries(&[(201, 1), (30, -1), (3, -1)]);
    let t = run_pipeline(&c, &pt(1, 0, 0)).unwrap();
    assert!(t.took_shortcut());
    assert!(t.step(StepKind::Quadratic).is_none());
    assert!(t.step(StepKind::CompleteSquare).is_some());
    assert!(!t.weierstrass.is_singular());
}

#[test]
fn identical_quadrics_are_rejected() {
    let a = QuadricForm::diag([1, 1, -1, 0]);
    let x = Point3::from_ints([0, 0, 0, 1]).unwrap();
    assert_eq!(PipelineTrace::build(&a, &a, &x).unwrap_err(), Error::DegenerateIntersection);
}

#[test]
fn point_off_the_intersection_is_rejected() {
    let a = QuadricForm::diag([1, 1, -1, 0]);
    let b = QuadricForm::diag([2, 1, 0, -1]);
    let x = Point3::from_ints([1, 0, 0, 0]).unwrap();
    assert_eq!(PipelineTrace::build(&a, &b, &x).unwrap_err(), Error::PointNotOnIntersection);
}

#[test]
fn singular_curves_are_caught() {
    // nodal cubic y² = x²(x + 1) through its smooth point (0,1,0)
    let c = TernaryCubic::from_entries(&[(300, -1), (201, -1), (21, 1)]);
    let err = run_pipeline(&c, &pt(0, 1, 0)).unwrap_err();
    assert!(matches!(err, Error::SingularCurve { .. } | Error::SingularPoint { .. }), "{err:?}");
    // and at the node itself
    let err = run_pipeline(&c, &pt(0, 0, 1)).unwrap_err();
    assert!(matches!(err, Error::SingularPoint { .. }), "{err:?}");
}

#[test]
fn point_off_the_cubic_is_rejected() {
    let c = TernaryCubic::from_entries(&[(201, 1), (30, -1), (3, -1)]);
    assert_eq!(
        run_pipeline(&c, &pt(1, 1, 1)).unwrap_err(),
        Error::PointNotOnCubic { step: Some(StepKind::Translate) }
    );
}
