//! From two quadrics in P³ and a rational point on both to a plane cubic.
//!
//! After moving the point to (0,0,0,1) each quadric reads `q + ℓ·Y3 = 0` with
//! q quadratic and ℓ linear in (Y0,Y1,Y2). Eliminating Y3 gives the cubic
//! `q2·ℓ1 − q1·ℓ2 = 0`, and projecting from (0,0,0,1) is the birational map
//! between the two curves.

use num_traits::Zero;

use crate::algebra::{normalize_point, rat, LinearMap4, Point2, Point3, QuadricForm, Rational, TernaryCubic};
use crate::form::Form;
use crate::{Error, Result};

/// The two quadrics after translating the base point to (0,0,0,1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslatedPencil {
    /// Upper-left 3×3 blocks of both matrices.
    pub a: [[Rational; 3]; 3],
    pub b: [[Rational; 3]; 3],
    /// Half the coefficients of ℓ1 and ℓ2.
    pub u: [Rational; 3],
    pub v: [Rational; 3],
}

fn quadratic3(m: &[[Rational; 3]; 3]) -> Form<3> {
    let mut f = Form::zero();
    for i in 0..3 {
        for j in 0..3 {
            let mut e = [0u8; 3];
            e[i] += 1;
            e[j] += 1;
            f.add_term(e, m[i][j].clone());
        }
    }
    f
}

fn doubled(u: &[Rational; 3]) -> [Rational; 3] {
    std::array::from_fn(|i| &u[i] * rat(2))
}

fn lift(f: &Form<3>) -> Form<4> {
    let mut g = Form::zero();
    for (e, c) in f.terms() {
        g.add_term([e[0], e[1], e[2], 0], c.clone());
    }
    g
}

impl TranslatedPencil {
    pub fn q1(&self) -> Form<3> {
        quadratic3(&self.a)
    }

    pub fn q2(&self) -> Form<3> {
        quadratic3(&self.b)
    }

    pub fn l1(&self) -> Form<3> {
        Form::linear(&doubled(&self.u))
    }

    pub fn l2(&self) -> Form<3> {
        Form::linear(&doubled(&self.v))
    }

    /// `q1 + ℓ1·Y3` and `q2 + ℓ2·Y3` as forms in (Y0,Y1,Y2,Y3).
    pub fn surfaces(&self) -> [Form<4>; 2] {
        let y3 = Form::<4>::var(3);
        [
            &lift(&self.q1()) + &(&lift(&self.l1()) * &y3),
            &lift(&self.q2()) + &(&lift(&self.l2()) * &y3),
        ]
    }

    pub fn contains(&self, p: &Point3) -> bool {
        let y = p.to_rationals();
        self.surfaces().iter().all(|s| s.eval(&y).is_zero())
    }

    /// Cross product of u and v: the point where ℓ1 = ℓ2 = 0.
    pub fn z(&self) -> Result<Point2> {
        let (u, v) = (&self.u, &self.v);
        let raw = [
            &u[1] * &v[2] - &u[2] * &v[1],
            &u[2] * &v[0] - &u[0] * &v[2],
            &u[0] * &v[1] - &u[1] * &v[0],
        ];
        normalize_point(&raw).map_err(|_| Error::DegenerateIntersection)
    }
}

/// Linear and quadratic pieces of both surfaces, split along Y2 so that φ
/// can be evaluated at (0,0,0,1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitData {
    pub alpha1: Form<4>,
    pub alpha2: Form<4>,
    pub beta1: Form<4>,
    pub beta2: Form<4>,
    pub gamma0: Form<4>,
    pub gamma1: Form<4>,
    pub delta0: Form<4>,
    pub delta1: Form<4>,
}

fn split_one(m: &[[Rational; 3]; 3], u: &[Rational; 3]) -> (Form<4>, Form<4>, Form<4>, Form<4>) {
    let two = rat(2);
    let one = |coeffs: [Rational; 4]| Form::<4>::linear(&coeffs);
    let z = Rational::zero;
    let first = one([&two * &m[0][2], &two * &m[1][2], m[2][2].clone(), &two * &u[2]]);
    let g0 = one([m[0][0].clone(), m[0][1].clone(), z(), &two * &u[0]]);
    let g1 = one([m[0][1].clone(), m[1][1].clone(), z(), &two * &u[1]]);
    let second = &(&g0 * &Form::var(0)) + &(&g1 * &Form::var(1));
    (first, second, g0, g1)
}

pub fn split_pencil(pencil: &TranslatedPencil) -> SplitData {
    let (alpha1, alpha2, gamma0, gamma1) = split_one(&pencil.a, &pencil.u);
    let (beta1, beta2, delta0, delta1) = split_one(&pencil.b, &pencil.v);
    SplitData { alpha1, alpha2, beta1, beta2, gamma0, gamma1, delta0, delta1 }
}

impl SplitData {
    /// φ in the form that stays defined at (0,0,0,1).
    pub fn phi_forms(&self) -> [Form<4>; 3] {
        [
            &(&self.alpha1 * &self.delta1) - &(&self.beta1 * &self.gamma1),
            &(&self.beta1 * &self.gamma0) - &(&self.alpha1 * &self.delta0),
            &(&self.gamma1 * &self.delta0) - &(&self.delta1 * &self.gamma0),
        ]
    }
}

/// Moves `x` to (0,0,0,1). The returned map sends original coordinates to
/// translated ones and includes the coordinate swap used when x3 = 0.
pub fn translate_base_point(
    a: &QuadricForm,
    b: &QuadricForm,
    x: &Point3,
) -> Result<(LinearMap4, TranslatedPencil)> {
    let xr = x.to_rationals();
    if !a.evaluate(&xr).is_zero() || !b.evaluate(&xr).is_zero() {
        return Err(Error::PointNotOnIntersection);
    }
    let swap = match x.coords().iter().rposition(|c| !c.is_zero()) {
        Some(3) | None => LinearMap4::identity(),
        Some(j) => LinearMap4::swap(j, 3),
    };
    // a swap is its own inverse
    let (a, b) = (a.transform(&swap), b.transform(&swap));
    let xs = swap.apply(&xr);
    let xs: [Rational; 4] = std::array::from_fn(|i| &xs[i] / &xs[3]);

    let mut shift = LinearMap4::identity().matrix().clone();
    for i in 0..3 {
        shift[i][3] = -xs[i].clone();
    }
    let map = LinearMap4::new(shift)?.compose(&swap);

    let block = |q: &QuadricForm| -> [[Rational; 3]; 3] {
        std::array::from_fn(|i| std::array::from_fn(|j| q.entry(i, j).clone()))
    };
    let half_linear = |q: &QuadricForm| -> [Rational; 3] {
        std::array::from_fn(|i| (0..4).fold(Rational::zero(), |s, j| s + q.entry(i, j) * &xs[j]))
    };
    let pencil = TranslatedPencil {
        a: block(&a),
        b: block(&b),
        u: half_linear(&a),
        v: half_linear(&b),
    };
    Ok((map, pencil))
}

/// The cubic `q2·ℓ1 − q1·ℓ2`, divided by its positive content.
pub fn build_cubic(pencil: &TranslatedPencil) -> Result<TernaryCubic> {
    let f = &(&pencil.q2() * &pencil.l1()) - &(&pencil.q1() * &pencil.l2());
    let c = TernaryCubic::from_form(&f);
    if c.is_zero() {
        return Err(Error::DegenerateIntersection);
    }
    Ok(c.primitive())
}

/// Projection from (0,0,0,1), in translated coordinates.
pub fn phi(pencil: &TranslatedPencil, p: &Point3) -> Result<Point2> {
    if !pencil.contains(p) {
        return Err(Error::PointNotOnIntersection);
    }
    let y = p.to_rationals();
    if let Ok(q) = normalize_point(&[y[0].clone(), y[1].clone(), y[2].clone()]) {
        return Ok(q);
    }
    let forms = split_pencil(pencil).phi_forms();
    normalize_point(&forms.map(|f| f.eval(&y))).map_err(|_| Error::MapUndefined)
}

/// Inverse of [`phi`]: lifts a point of the cubic back to both surfaces.
pub fn psi(pencil: &TranslatedPencil, p: &Point2) -> Result<Point3> {
    let y = p.to_rationals();
    let (q1, q2) = (pencil.q1().eval(&y), pencil.q2().eval(&y));
    let (l1, l2) = (pencil.l1().eval(&y), pencil.l2().eval(&y));
    if !(&q1 * &l2 - &q2 * &l1).is_zero() {
        return Err(Error::PointNotOnCubic { step: None });
    }
    let lifted = |l: &Rational, q: &Rational| [&y[0] * l, &y[1] * l, &y[2] * l, -q.clone()];
    let raw = if !l1.is_zero() {
        lifted(&l1, &q1)
    } else if !l2.is_zero() {
        lifted(&l2, &q2)
    } else if !q1.is_zero() || !q2.is_zero() {
        // only the base point projects onto the common zero of ℓ1 and ℓ2
        [Rational::zero(), Rational::zero(), Rational::zero(), rat(1)]
    } else {
        return Err(Error::DegenerateIntersection);
    };
    normalize_point(&raw)
}

/// Everything computed from the quadric pair, kept for point transport.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadricStage {
    pub a: QuadricForm,
    pub b: QuadricForm,
    pub base: Point3,
    /// Original coordinates → translated coordinates.
    pub map: LinearMap4,
    pub pencil: TranslatedPencil,
    pub cubic: TernaryCubic,
    /// Image of the base point on the cubic.
    pub z: Point2,
}

impl QuadricStage {
    pub fn new(a: &QuadricForm, b: &QuadricForm, x: &Point3) -> Result<Self> {
        let (map, pencil) = translate_base_point(a, b, x)?;
        let cubic = build_cubic(&pencil)?;
        let z = pencil.z()?;
        // the base point must lift back, otherwise the pencil contains a line
        psi(&pencil, &z)?;
        Ok(QuadricStage {
            a: a.clone(),
            b: b.clone(),
            base: x.clone(),
            map,
            pencil,
            cubic,
            z,
        })
    }

    pub fn contains(&self, p: &Point3) -> bool {
        let x = p.to_rationals();
        self.a.evaluate(&x).is_zero() && self.b.evaluate(&x).is_zero()
    }

    pub fn forward(&self, p: &Point3) -> Result<Point2> {
        if !self.contains(p) {
            return Err(Error::PointNotOnIntersection);
        }
        phi(&self.pencil, &self.map.apply_point(p))
    }

    pub fn backward(&self, p: &Point2) -> Result<Point3> {
        let y = psi(&self.pencil, p)?;
        Ok(self.map.inverse().apply_point(&y))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The worked example pair through (1,1,1,1).
    pub(crate) fn example() -> (QuadricForm, QuadricForm, Point3) {
        let a = QuadricForm::from_ints([[1, 1, 0, 0], [1, 2, -3, 0], [0, -3, 0, -1], [0, 0, -1, 3]]).unwrap();
        let b = QuadricForm::diag([-2, 1, 2, -1]);
        (a, b, Point3::from_ints([1, 1, 1, 1]).unwrap())
    }

    #[test]
    fn worked_example_cubic() {
        let (a, b, x) = example();
        let (_, pencil) = translate_base_point(&a, &b, &x).unwrap();
        let c = build_cubic(&pencil).unwrap();
        assert_eq!(c, TernaryCubic::from_ints([-2, 3, 6, 4, -16, 4, -2, -2, 12, -8]));
        assert_eq!(pencil.z().unwrap(), Point2::from_ints([2, 2, 1]).unwrap());
    }

    #[test]
    fn split_identities() {
        let (a, b, x) = example();
        let (_, pencil) = translate_base_point(&a, &b, &x).unwrap();
        let s = split_pencil(&pencil);
        let [s1, s2] = pencil.surfaces();
        let y0 = Form::<4>::var(0);
        let y1 = Form::<4>::var(1);
        let y2 = Form::<4>::var(2);
        assert!((&(&(&s.gamma0 * &y0) + &(&s.gamma1 * &y1)) - &s.alpha2).is_zero());
        assert!((&(&(&s.delta0 * &y0) + &(&s.delta1 * &y1)) - &s.beta2).is_zero());
        assert!((&(&(&s.alpha1 * &y2) + &s.alpha2) - &s1).is_zero());
        assert!((&(&(&s.beta1 * &y2) + &s.beta2) - &s2).is_zero());
    }

    #[test]
    fn base_point_maps_to_z_both_ways() {
        let (a, b, x) = example();
        let (_, pencil) = translate_base_point(&a, &b, &x).unwrap();
        let origin = Point3::from_ints([0, 0, 0, 1]).unwrap();
        assert_eq!(phi(&pencil, &origin).unwrap(), pencil.z().unwrap());
        assert_eq!(psi(&pencil, &pencil.z().unwrap()).unwrap(), origin);
    }

    #[test]
    fn point_off_the_quadrics_rejected() {
        let (a, b, _) = example();
        let bad = Point3::from_ints([1, 2, 3, 4]).unwrap();
        assert_eq!(translate_base_point(&a, &b, &bad).unwrap_err(), Error::PointNotOnIntersection);
    }

    #[test]
    fn reindexes_when_last_coordinate_vanishes() {
        // X0² − X1² = 0 and X2·X3 = 0 (the second written symmetrically) contain (1,1,1,0)
        let a = QuadricForm::diag([1, -1, 0, 0]);
        let b = QuadricForm::from_ints([[0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]).unwrap();
        let x = Point3::from_ints([1, 1, 1, 0]).unwrap();
        let (map, _) = translate_base_point(&a, &b, &x).unwrap();
        assert_eq!(map.apply_point(&x), Point3::from_ints([0, 0, 0, 1]).unwrap());
    }

    #[test]
    fn identical_quadrics_are_degenerate() {
        let (a, _, x) = example();
        let (_, pencil) = translate_base_point(&a, &a, &x).unwrap();
        assert_eq!(build_cubic(&pencil).unwrap_err(), Error::DegenerateIntersection);
        assert_eq!(QuadricStage::new(&a, &a, &x).unwrap_err(), Error::DegenerateIntersection);
    }
}
