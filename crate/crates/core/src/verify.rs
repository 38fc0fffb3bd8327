//! Self-checks for a finished trace.
//!
//! Everything here re-derives a property from the recorded data rather than
//! trusting the step that produced it.

use num_traits::{One, Zero};

use crate::algebra::{pullback_cubic, Point3, Rational, TernaryCubic};
use crate::form::Form;
use crate::sampling::{sample_cubic_points, sample_intersection_points};
use crate::transport::PipelineTrace;
use crate::weierstrass::{QuadraticMapData, StepMap};

/// A property that failed, with enough context to find it.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{0}")]
pub struct Violation(pub String);

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), Violation> {
    if ok {
        Ok(())
    } else {
        Err(Violation(what()))
    }
}

/// Per-step invariants: each recorded point lies on its cubic, each linear
/// step pulls one cubic back to a multiple of the other in both directions
/// with inverse matrices, the quadratic step satisfies its polynomial
/// identity, and the resulting curves are nonsingular with Step 7 leaving
/// no removable square.
pub fn check_trace(t: &PipelineTrace) -> Result<(), Violation> {
    let mut before = t.cubic.initial.clone();
    for s in &t.cubic.steps {
        ensure(s.is_consistent(), || format!("{}: point off its cubic", s.kind))?;
        match &s.map {
            StepMap::Linear { forward, inverse } => {
                ensure(pullback_cubic(inverse, &before).projectively_eq(&s.cubic_after), || {
                    format!("{}: inverse pullback is not proportional", s.kind)
                })?;
                ensure(pullback_cubic(forward, &s.cubic_after).projectively_eq(&before), || {
                    format!("{}: forward pullback is not proportional", s.kind)
                })?;
                let fi = forward.compose(inverse);
                let d = fi.matrix()[0][0].clone();
                let scalar = !d.is_zero()
                    && (0..3).all(|i| {
                        (0..3).all(|j| fi.matrix()[i][j] == if i == j { d.clone() } else { Rational::zero() })
                    });
                ensure(scalar, || format!("{}: maps are not mutually inverse", s.kind))?;
            }
            StepMap::Quadratic(_) => {
                ensure(quadratic_identity(&before, &s.cubic_after), || {
                    format!("{}: C5(XZ, XY, Z^2) is not a multiple of XZ^2 C4", s.kind)
                })?;
            }
        }
        before = s.cubic_after.clone();
    }
    let w = t.weierstrass();
    ensure(!w.is_singular(), || format!("singular curve {w}"))?;
    ensure(!t.final_curve().is_singular(), || format!("singular curve {}", t.final_curve()))?;
    let (_, u) = w.minimal_scaling();
    ensure(u.is_one(), || format!("Step 7 left the square of {u} in {w}"))
}

/// C5(XZ, XY, Z²) = λ·XZ²·C4(X, Y, Z) for some nonzero λ.
pub fn quadratic_identity(c4: &TernaryCubic, c5: &TernaryCubic) -> bool {
    let lhs = c5.to_form().substitute(&QuadraticMapData::rho_forms());
    let rhs = &Form::<3>::monomial([1, 0, 2], Rational::one()) * &c4.to_form();
    let Some((e, c)) = rhs.terms().next() else { return false };
    let ratio = lhs.coeff(e) / c;
    !ratio.is_zero() && (&lhs - &rhs.scale(&ratio)).is_zero()
}

/// Samples at least `count` points of the space curve and checks ψ∘φ = id,
/// transport round trips, stage membership, and φ∘ψ = id on the plane
/// cubic. Returns the number of space points checked.
pub fn check_round_trips(t: &PipelineTrace, seeds: &[Point3], count: usize) -> Result<usize, Violation> {
    let pts = sample_intersection_points(t, seeds, count, 20 * count);
    ensure(pts.len() >= count, || format!("only {} points sampled", pts.len()))?;
    let stages: Vec<u8> = (0..=8).filter(|r| t.cubic.stage(*r).is_some()).collect();
    let err = |e: crate::Error| Violation(e.to_string());
    for x in &pts {
        ensure(t.quadric.contains(x), || format!("{x} is not on the intersection"))?;
        let y = t.quadric.forward(x).map_err(err)?;
        ensure(&t.quadric.backward(&y).map_err(err)? == x, || format!("psi(phi({x})) != {x}"))?;
        let e = t.forward_to(x, None).map_err(err)?;
        ensure(&t.backward_from(&e, None).map_err(err)? == x, || format!("transport round trip fails at {x}"))?;
        for &r in &stages {
            let q = t.forward_to(x, Some(r)).map_err(err)?;
            let (c, _) = t.cubic.stage(r).expect("listed stage");
            ensure(c.evaluate(&q.to_rationals()).is_zero(), || format!("image of {x} is off C({r})"))?;
        }
    }
    let plane: Vec<_> = pts.iter().take(3).map(|x| t.quadric.forward(x)).collect::<Result<_, _>>().map_err(err)?;
    for p in sample_cubic_points(&t.quadric.cubic, &plane, count, 20 * count) {
        let lifted = t.quadric.backward(&p).map_err(err)?;
        ensure(t.quadric.forward(&lifted).map_err(err)? == p, || format!("phi(psi({p})) != {p}"))?;
    }
    Ok(pts.len())
}
