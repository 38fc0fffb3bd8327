//! The full chain from the quadric intersection to the final curve.

use num_traits::Zero;

use crate::algebra::{Point2, Point3, QuadricForm, Rational};
use crate::form::Form;
use crate::quadric::QuadricStage;
use crate::weierstrass::{run_pipeline, CubicTrace, QuadraticMapData, StepMap, WeierstrassCurve};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PipelineTrace {
    pub quadric: QuadricStage,
    pub cubic: CubicTrace,
}

/// The composite map from P³ to a cubic stage, as forms in (x0..x3).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CompositeMap {
    Linear([[Rational; 4]; 3]),
    /// Three quadratic forms; X_ij is the coefficient of x_i·x_j, i ≤ j.
    Quadratic([Form<4>; 3]),
}

impl CompositeMap {
    pub fn forms(&self) -> [Form<4>; 3] {
        match self {
            CompositeMap::Linear(m) => std::array::from_fn(|i| Form::linear(&m[i])),
            CompositeMap::Quadratic(f) => f.clone(),
        }
    }

    /// Coefficient of x_i·x_j (i ≤ j) in the given output row.
    pub fn quadratic_coeff(&self, row: usize, i: usize, j: usize) -> Rational {
        let (i, j) = (i.min(j), i.max(j));
        let mut e = [0u8; 4];
        e[i] += 1;
        e[j] += 1;
        self.forms()[row].coeff(&e)
    }

    /// Raw image vector, possibly zero.
    pub fn apply(&self, x: &[Rational; 4]) -> [Rational; 3] {
        self.forms().map(|f| f.eval(x))
    }
}

impl PipelineTrace {
    pub fn build(a: &QuadricForm, b: &QuadricForm, x: &Point3) -> Result<Self> {
        let quadric = QuadricStage::new(a, b, x)?;
        let cubic = run_pipeline(&quadric.cubic, &quadric.z)?;
        Ok(PipelineTrace { quadric, cubic })
    }

    /// The Step 7 curve.
    pub fn weierstrass(&self) -> &WeierstrassCurve {
        &self.cubic.weierstrass
    }

    pub fn final_curve(&self) -> &WeierstrassCurve {
        self.cubic.final_curve()
    }

    pub fn distinguished_final(&self) -> &Point2 {
        &self.cubic.steps.last().expect("nonempty").point_after
    }

    fn step_count(&self, stage: Option<u8>) -> Result<usize> {
        match stage {
            None => Ok(self.cubic.steps.len()),
            Some(r) => self
                .cubic
                .steps_through(r)
                .ok_or_else(|| Error::InvalidInstance(format!("no stage {r} in this trace"))),
        }
    }

    /// Carries a point of the intersection to C_(stage), or to the final
    /// curve for `None`.
    pub fn forward_to(&self, p: &Point3, stage: Option<u8>) -> Result<Point2> {
        let n = self.step_count(stage)?;
        let mut q = self.quadric.forward(p)?;
        for s in &self.cubic.steps[..n] {
            q = s.forward(&q)?;
        }
        Ok(q)
    }

    /// Inverse of [`forward_to`](Self::forward_to).
    pub fn backward_from(&self, p: &Point2, stage: Option<u8>) -> Result<Point3> {
        let n = self.step_count(stage)?;
        let target = match n {
            0 => &self.cubic.initial,
            n => &self.cubic.steps[n - 1].cubic_after,
        };
        if !target.evaluate(&p.to_rationals()).is_zero() {
            return Err(Error::PointNotOnCurve);
        }
        let mut q = p.clone();
        for s in self.cubic.steps[..n].iter().rev() {
            q = s.backward(&q)?;
        }
        self.quadric.backward(&q)
    }

    /// Symbolic composite of every map up to C_(stage).
    pub fn composite(&self, stage: Option<u8>) -> Result<CompositeMap> {
        let n = self.step_count(stage)?;
        let m = self.quadric.map.matrix();
        let mut forms: [Form<4>; 3] = std::array::from_fn(|i| Form::linear(&m[i]));
        let mut quadratic = false;
        for s in &self.cubic.steps[..n] {
            let outer = match &s.map {
                StepMap::Linear { forward, .. } => forward.row_forms(),
                StepMap::Quadratic(_) => {
                    quadratic = true;
                    QuadraticMapData::rho_forms()
                }
            };
            forms = outer.map(|f| f.substitute(&forms));
        }
        if quadratic {
            return Ok(CompositeMap::Quadratic(forms));
        }
        let rows = forms.map(|f| {
            std::array::from_fn(|j| {
                let mut e = [0u8; 4];
                e[j] = 1;
                f.coeff(&e)
            })
        });
        Ok(CompositeMap::Linear(rows))
    }
}

pub fn transport_forward(trace: &PipelineTrace, p: &Point3) -> Result<Point2> {
    trace.forward_to(p, None)
}

pub fn transport_backward(trace: &PipelineTrace, p: &Point2) -> Result<Point3> {
    trace.backward_from(p, None)
}

pub fn extract_composite(trace: &PipelineTrace) -> CompositeMap {
    trace.composite(None).expect("final stage always exists")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::normalize_point;

    fn example() -> PipelineTrace {
        let a = QuadricForm::from_ints([[1, 1, 0, 0], [1, 2, -3, 0], [0, -3, 0, -1], [0, 0, -1, 3]]).unwrap();
        let b = QuadricForm::diag([-2, 1, 2, -1]);
        PipelineTrace::build(&a, &b, &Point3::from_ints([1, 1, 1, 1]).unwrap()).unwrap()
    }

    #[test]
    fn distinguished_point_goes_to_infinity_and_back() {
        let t = example();
        let x = Point3::from_ints([1, 1, 1, 1]).unwrap();
        let inf = Point2::from_ints([0, 1, 0]).unwrap();
        assert_eq!(t.distinguished_final(), &inf);
        assert_eq!(transport_forward(&t, &x).unwrap(), inf);
        assert_eq!(transport_backward(&t, &inf).unwrap(), x);
    }

    #[test]
    fn off_curve_points_rejected() {
        let t = example();
        let bad = Point2::from_ints([1, 1, 1]).unwrap();
        assert_eq!(transport_backward(&t, &bad).unwrap_err(), Error::PointNotOnCurve);
        let bad = Point3::from_ints([1, 0, 0, 0]).unwrap();
        assert_eq!(transport_forward(&t, &bad).unwrap_err(), Error::PointNotOnIntersection);
    }

    #[test]
    fn composite_agrees_at_the_stage_zero_point() {
        let t = example();
        let c = t.composite(Some(0)).unwrap();
        let CompositeMap::Linear(_) = c else { panic!("projection is linear") };
        let x = Point3::from_ints([1, 1, 1, 1]).unwrap();
        // the projection is undefined at its own centre
        assert!(normalize_point(&c.apply(&x.to_rationals())).is_err());
    }
}
