//! Closed forms for two classical problems whose solutions are rational
//! points on an intersection of two diagonal quadrics.
//!
//! [`EulerInstance`] asks whether x² + My² and x² + Ny² can both be squares;
//! [`KlmInstance`] asks for four squares α², β², γ², δ² whose consecutive
//! differences are in the ratio k : ℓ : m.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{Point2, Point3, QuadricForm, Rational};
use crate::form::Form;
use crate::transport::CompositeMap;
use crate::weierstrass::WeierstrassCurve;
use crate::{Error, Result};

/// What a trivial point becomes on the final curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointLabel {
    Infinity,
    TwoTorsion,
    Other,
}

impl PointLabel {
    fn of(p: &Point2) -> Self {
        let c = p.coords();
        if c[2].is_zero() {
            PointLabel::Infinity
        } else if c[1].is_zero() {
            PointLabel::TwoTorsion
        } else {
            PointLabel::Other
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            PointLabel::Infinity => "infinity",
            PointLabel::TwoTorsion => "2-torsion",
            PointLabel::Other => "other",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrivialImage {
    pub source: Point3,
    pub image: Point2,
    pub label: PointLabel,
}

fn image(source: [i64; 4], target: [BigInt; 3]) -> TrivialImage {
    let source = Point3::from_ints(source).expect("sign patterns are nonzero");
    let image = Point2::from_ints(target).expect("printed images are nonzero");
    let label = PointLabel::of(&image);
    TrivialImage { source, image, label }
}

fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

/// x² + My² = z², x² + Ny² = w², in coordinates (y, x, z, w).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EulerInstance {
    pub m: i64,
    pub n: i64,
}

impl EulerInstance {
    pub fn new(m: i64, n: i64) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidInstance("M and N must be nonzero".into()));
        }
        if m == n {
            return Err(Error::InvalidInstance("M and N must differ".into()));
        }
        Ok(EulerInstance { m, n })
    }

    pub fn quadrics(&self) -> (QuadricForm, QuadricForm, Point3) {
        let a = QuadricForm::diag([self.m, 1, -1, 0]);
        let b = QuadricForm::diag([self.n, 1, 0, -1]);
        (a, b, Point3::from_ints([0, 1, 1, 1]).unwrap())
    }

    /// y² = x(x − M)(x − (M − N)).
    pub fn curve(&self) -> WeierstrassCurve {
        WeierstrassCurve::from_factored(-big(self.m), -big(self.m - self.n))
    }

    /// Rows of the linear map (y, x, z, w) ↦ (X, Y, Z).
    pub fn composite_matrix(&self) -> [[BigInt; 4]; 3] {
        let (m, n) = (big(self.m), big(self.n));
        let d = &m - &n;
        let z = BigInt::zero;
        [
            [z(), -(&m * &d), z(), &m * &d],
            [&m * &n * &d, z(), z(), z()],
            [z(), -d.clone(), -n, m],
        ]
    }

    pub fn composite_map(&self) -> CompositeMap {
        CompositeMap::Linear(self.composite_matrix().map(|row| row.map(Rational::from_integer)))
    }

    pub fn trivial_images(&self) -> Vec<TrivialImage> {
        let (m, n) = (big(self.m), big(self.n));
        let (o, z) = (BigInt::one, BigInt::zero);
        vec![
            image([0, 1, 1, 1], [z(), o(), z()]),
            image([0, 1, 1, -1], [&m - &n, z(), o()]),
            image([0, 1, -1, 1], [z(), z(), o()]),
            image([0, 1, -1, -1], [m, z(), o()]),
        ]
    }
}

/// Squares α², β², γ², δ² with β² − α² : γ² − β² : δ² − γ² = k : ℓ : m.
///
/// Points on the intersection are written (β, γ, α, δ).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KlmInstance {
    pub k: i64,
    pub l: i64,
    pub m: i64,
}

impl KlmInstance {
    pub fn new(k: i64, l: i64, m: i64) -> Result<Self> {
        if k < 1 || l < 1 || m < 1 {
            return Err(Error::InvalidInstance("k, l and m must be positive".into()));
        }
        Ok(KlmInstance { k, l, m })
    }

    pub fn quadrics(&self) -> (QuadricForm, QuadricForm, Point3) {
        let (k, l, m) = (self.k, self.l, self.m);
        let a = QuadricForm::diag([k + l, -k, -l, 0]);
        let b = QuadricForm::diag([-m, m + l, 0, -l]);
        (a, b, Point3::from_ints([1, 1, 1, 1]).unwrap())
    }

    /// y² = x(x + km)(x + (k + ℓ)(ℓ + m)).
    pub fn curve(&self) -> WeierstrassCurve {
        let (k, l, m) = (big(self.k), big(self.l), big(self.m));
        WeierstrassCurve::from_factored(&k * &m, (&k + &l) * (&l + &m))
    }

    /// (β, γ, α, δ) on the intersection as the progression (α, β, γ, δ).
    pub fn progression(p: &Point3) -> [Rational; 4] {
        let [b, g, a, d] = p.to_rationals();
        [a, b, g, d]
    }

    pub fn step_size(&self, q: &[Rational; 4]) -> Result<Rational> {
        progression_step_size(q, self.k, self.l, self.m)
    }

    /// The quadratic map to y² = x(x + km)(x + (k + ℓ)(ℓ + m)).
    pub fn composite_map(&self) -> CompositeMap {
        let (k, l, m) = (big(self.k), big(self.l), big(self.m));
        let kl = &k + &l;
        let lm = &l + &m;
        let s = &k + &l + &m;
        let km_ = &k - &m;
        let kpm = &k + &m;
        let k2lm = &k + big(2) * &l + &m;
        let c01 = &k * &l + big(2) * &k * &m + &l * &m;
        let c23 = &k * &k + &k * &l + &l * &m + &m * &m;
        let t = |sign: i64, f: &[(&BigInt, u32)]| -> BigInt {
            f.iter().fold(big(sign), |acc, (b, e)| acc * b.pow(*e))
        };
        let x = [
            t(-1, &[(&k, 1), (&m, 2), (&kl, 2), (&lm, 1), (&s, 2)]),
            t(1, &[(&k, 1), (&m, 1), (&kl, 1), (&lm, 1), (&s, 2), (&c01, 1)]),
            t(-1, &[(&k, 1), (&l, 1), (&m, 2), (&kl, 1), (&km_, 1), (&lm, 1), (&s, 1)]),
            t(-1, &[(&k, 1), (&l, 1), (&m, 1), (&km_, 1), (&kl, 2), (&lm, 1), (&s, 1)]),
            t(-1, &[(&k, 2), (&m, 1), (&kl, 1), (&lm, 2), (&s, 2)]),
            t(1, &[(&k, 1), (&l, 1), (&m, 1), (&kl, 1), (&km_, 1), (&lm, 2), (&s, 1)]),
            t(1, &[(&k, 2), (&m, 1), (&l, 1), (&kl, 1), (&km_, 1), (&lm, 1), (&s, 1)]),
            t(1, &[(&k, 1), (&l, 2), (&m, 2), (&kl, 1), (&lm, 2)]),
            t(-1, &[(&k, 1), (&l, 2), (&m, 1), (&kl, 1), (&lm, 1), (&c23, 1)]),
            t(1, &[(&k, 2), (&l, 2), (&m, 1), (&kl, 2), (&lm, 1)]),
        ];
        let y = [
            t(1, &[(&k, 1), (&l, 1), (&m, 2), (&kl, 2), (&lm, 1), (&s, 2)]),
            t(1, &[(&k, 1), (&l, 2), (&m, 1), (&kl, 1), (&km_, 1), (&lm, 1), (&s, 2)]),
            t(-1, &[(&k, 2), (&l, 1), (&m, 2), (&kl, 1), (&lm, 1), (&s, 1), (&k2lm, 1)]),
            t(-1, &[(&k, 1), (&l, 1), (&m, 1), (&kl, 2), (&kpm, 1), (&lm, 2), (&s, 1)]),
            t(-1, &[(&k, 2), (&l, 1), (&m, 1), (&kl, 1), (&lm, 2), (&s, 2)]),
            t(1, &[(&k, 1), (&l, 1), (&m, 1), (&kl, 2), (&kpm, 1), (&lm, 2), (&s, 1)]),
            t(1, &[(&k, 2), (&l, 1), (&m, 2), (&kl, 1), (&lm, 1), (&s, 1), (&k2lm, 1)]),
            t(-1, &[(&k, 1), (&l, 2), (&m, 2), (&kl, 1), (&lm, 2), (&s, 1)]),
            t(-1, &[(&k, 1), (&l, 2), (&m, 1), (&kl, 1), (&km_, 1), (&lm, 1), (&s, 2)]),
            t(1, &[(&k, 2), (&l, 2), (&m, 1), (&kl, 2), (&lm, 1), (&s, 1)]),
        ];
        let z = [
            t(1, &[(&m, 2), (&kl, 2), (&s, 2)]),
            t(-2, &[(&k, 1), (&m, 1), (&kl, 1), (&lm, 1), (&s, 2)]),
            t(-2, &[(&l, 1), (&m, 2), (&kl, 1), (&lm, 1), (&s, 1)]),
            t(2, &[(&k, 1), (&l, 1), (&m, 1), (&kl, 2), (&s, 1)]),
            t(1, &[(&k, 2), (&lm, 2), (&s, 2)]),
            t(2, &[(&k, 1), (&l, 1), (&m, 1), (&lm, 2), (&s, 1)]),
            t(-2, &[(&k, 2), (&l, 1), (&kl, 1), (&lm, 1), (&s, 1)]),
            t(1, &[(&l, 2), (&m, 2), (&lm, 2)]),
            t(-2, &[(&k, 1), (&l, 2), (&m, 1), (&kl, 1), (&lm, 1)]),
            t(1, &[(&k, 2), (&l, 2), (&kl, 2)]),
        ];
        CompositeMap::Quadratic([x, y, z].map(|coeffs| quadratic_form(&coeffs)))
    }

    pub fn trivial_images(&self) -> Vec<TrivialImage> {
        let (k, l, m) = (big(self.k), big(self.l), big(self.m));
        let kl = &k + &l;
        let lm = &l + &m;
        let s = &k + &l + &m;
        let (o, z) = (BigInt::one, BigInt::zero);
        vec![
            image([1, 1, 1, 1], [z(), o(), z()]),
            image([1, 1, 1, -1], [&m * &lm, &m * &lm * &s, o()]),
            image([1, 1, -1, 1], [&k * &kl, -(&k * &kl * &s), o()]),
            image([1, 1, -1, -1], [z(), z(), o()]),
            image([1, -1, 1, 1], [-(&m * &kl), -(&m * &l * &kl), o()]),
            image([1, -1, 1, -1], [-(&kl * &lm), z(), o()]),
            image([1, -1, -1, 1], [-(&k * &m), z(), o()]),
            image([1, -1, -1, -1], [-(&k * &lm), &k * &l * &lm, o()]),
        ]
    }
}

/// Coefficients listed as 00, 01, 02, 03, 11, 12, 13, 22, 23, 33.
fn quadratic_form(coeffs: &[BigInt; 10]) -> Form<4> {
    let mut f = Form::zero();
    let pairs = (0..4).flat_map(|i| (i..4).map(move |j| (i, j)));
    for ((i, j), c) in pairs.zip(coeffs) {
        let mut e = [0u8; 4];
        e[i] += 1;
        e[j] += 1;
        f.add_term(e, Rational::from_integer(c.clone()));
    }
    f
}

/// The common step s = (β² − α²)/k = (γ² − β²)/ℓ = (δ² − γ²)/m.
pub fn progression_step_size(q: &[Rational; 4], k: i64, l: i64, m: i64) -> Result<Rational> {
    if k == 0 || l == 0 || m == 0 {
        return Err(Error::InvalidInstance("k, l and m must be nonzero".into()));
    }
    let sq: Vec<Rational> = q.iter().map(|v| v * v).collect();
    let r = |n: i64| Rational::from_integer(big(n));
    let s = (&sq[1] - &sq[0]) / r(k);
    if (&sq[2] - &sq[1]) / r(l) != s || (&sq[3] - &sq[2]) / r(m) != s {
        return Err(Error::NotAProgression);
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_rational, TernaryCubic};
    use crate::transport::PipelineTrace;

    fn r(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn rejects_bad_instances() {
        assert!(EulerInstance::new(0, 2).is_err());
        assert!(EulerInstance::new(2, 2).is_err());
        assert!(KlmInstance::new(0, 1, 1).is_err());
    }

    #[test]
    fn euler_initial_cubic() {
        let (a, b, x) = EulerInstance::new(3, 2).unwrap().quadrics();
        let t = PipelineTrace::build(&a, &b, &x).unwrap();
        let expected = TernaryCubic::from_entries(&[(210, -1), (201, -2), (21, -1), (12, 1)]);
        assert!(t.quadric.cubic.projectively_eq(&expected));
    }

    #[test]
    fn klm_initial_cubic_and_point() {
        let (a, b, x) = KlmInstance::new(2, 3, 5).unwrap().quadrics();
        let t = PipelineTrace::build(&a, &b, &x).unwrap();
        let expected =
            TernaryCubic::from_entries(&[(210, -10), (201, 5), (120, 10), (102, -5), (21, -8), (12, 8)]);
        assert!(t.quadric.cubic.projectively_eq(&expected));
        assert_eq!(t.quadric.z, Point2::from_ints([8, 5, 10]).unwrap());
    }

    #[test]
    fn klm_curve_for_2_3_5() {
        let c = KlmInstance::new(2, 3, 5).unwrap().curve();
        assert_eq!(c, WeierstrassCurve::from_ints(50, 400, 0));
        assert_eq!(c.factored().unwrap(), "y^2 = x(x+10)(x+40)");
    }

    #[test]
    fn step_size() {
        let one = [r("1"), r("1"), r("1"), r("1")];
        assert_eq!(progression_step_size(&one, 1, 1, 1).unwrap(), r("0"));
        let bad = [r("1"), r("2"), r("1"), r("1")];
        assert_eq!(progression_step_size(&bad, 1, 1, 1).unwrap_err(), Error::NotAProgression);
        let q = [r("1"), r("5"), r("7"), r("-7")];
        assert_eq!(progression_step_size(&q, 1, 1, 0).unwrap_err().name(), "InvalidInstance");
        let q = [r("1"), r("5"), r("7"), r("1")];
        assert!(progression_step_size(&q, 1, 1, 1).is_err());
    }

    #[test]
    fn labels() {
        let imgs = KlmInstance::new(2, 3, 5).unwrap().trivial_images();
        let torsion = imgs.iter().filter(|t| t.label == PointLabel::TwoTorsion).count();
        assert_eq!(torsion, 3);
        assert_eq!(imgs[0].label, PointLabel::Infinity);
    }
}
