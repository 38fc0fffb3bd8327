//! From a plane cubic with a rational point to Weierstrass normal form.
//!
//! Each step is a change of coordinates recorded as a [`StepRecord`]. Linear
//! steps keep a forward matrix F and a matrix I with F·I a nonzero scalar
//! matrix; the new cubic is a multiple of the old one pulled back along I.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::algebra::{
    normalize_point, primitive_ints, pullback_cubic, rat, LinearMap3, Point2, Rational, TernaryCubic,
};
use crate::arith::{integer_cubic_roots, max_weighted_root};
use crate::form::Form;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StepKind {
    /// Moves a nonzero coordinate of the point into the X slot.
    Reindex,
    Translate,
    SwapYZ,
    AlignTangent,
    /// Flex shortcut: swap X and Y and continue with Step 6.
    ExchangeXY,
    MoveSecondIntersection,
    AlignSecondTangent,
    Quadratic,
    CompleteSquare,
    Normalize,
    ShiftRoots,
}

impl StepKind {
    pub const ALL: [StepKind; 11] = [
        StepKind::Reindex,
        StepKind::Translate,
        StepKind::SwapYZ,
        StepKind::AlignTangent,
        StepKind::ExchangeXY,
        StepKind::MoveSecondIntersection,
        StepKind::AlignSecondTangent,
        StepKind::Quadratic,
        StepKind::CompleteSquare,
        StepKind::Normalize,
        StepKind::ShiftRoots,
    ];

    pub fn name(self) -> &'static str {
        match self {
            StepKind::Reindex => "reindex",
            StepKind::Translate => "translate",
            StepKind::SwapYZ => "swap-yz",
            StepKind::AlignTangent => "align-tangent",
            StepKind::ExchangeXY => "exchange-xy",
            StepKind::MoveSecondIntersection => "move-second-intersection",
            StepKind::AlignSecondTangent => "align-second-tangent",
            StepKind::Quadratic => "quadratic",
            StepKind::CompleteSquare => "complete-square",
            StepKind::Normalize => "normalize",
            StepKind::ShiftRoots => "shift-roots",
        }
    }

    pub fn from_name(s: &str) -> Option<StepKind> {
        Self::ALL.into_iter().find(|k| k.name() == s)
    }

    /// Number r of the cubic C_(r) this step produces. Auxiliary swaps
    /// produce no numbered cubic, except the X/Y exchange which stands in for
    /// Steps 3 to 5.
    pub fn stage(self) -> Option<u8> {
        match self {
            StepKind::Reindex | StepKind::SwapYZ => None,
            StepKind::Translate => Some(1),
            StepKind::AlignTangent => Some(2),
            StepKind::MoveSecondIntersection => Some(3),
            StepKind::AlignSecondTangent => Some(4),
            StepKind::Quadratic | StepKind::ExchangeXY => Some(5),
            StepKind::CompleteSquare => Some(6),
            StepKind::Normalize => Some(7),
            StepKind::ShiftRoots => Some(8),
        }
    }
}

impl fmt::Display for StepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The quadratic transformation ρ = (XZ, XY, Z²) with inverse ψ = (X², YZ,
/// XZ), plus the two cubics needed to evaluate them where the monomial forms
/// vanish.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticMapData {
    pub before: TernaryCubic,
    pub after: TernaryCubic,
}

fn first_nonzero(candidates: &[[Rational; 3]]) -> Result<Point2> {
    candidates
        .iter()
        .find_map(|v| normalize_point(v).ok())
        .ok_or(Error::MapUndefined)
}

impl QuadraticMapData {
    pub fn rho_monomial(p: &[Rational; 3]) -> [Rational; 3] {
        let [x, y, z] = p;
        [x * z, x * y, z * z]
    }

    pub fn psi_monomial(p: &[Rational; 3]) -> [Rational; 3] {
        let [x, y, z] = p;
        [x * x, y * z, x * z]
    }

    /// ρ as three quadratic forms, for symbolic composition.
    pub fn rho_forms() -> [Form<3>; 3] {
        let (x, y, z) = (Form::var(0), Form::var(1), Form::var(2));
        [&x * &z, &x * &y, &z * &z]
    }

    /// ρ at a point of the `before` cubic, using the μ form near (1,0,0) and
    /// the λ form at (0,1,0).
    pub fn rho(&self, p: &Point2) -> Result<Point2> {
        let c = &self.before;
        let v = p.to_rationals();
        let [x, y, z] = &v;
        let g = |i, j, k| c.get(i, j, k).clone();
        let mu = g(1, 2, 0) * y + g(1, 1, 1) * z;
        let mu_form = [
            &mu * x,
            -(g(2, 0, 1) * x * x + g(1, 0, 2) * x * z + g(0, 1, 2) * y * z + g(0, 0, 3) * z * z),
            &mu * z,
        ];
        let lambda = g(1, 0, 2) * x + g(0, 1, 2) * y + g(0, 0, 3) * z;
        let lambda_form = [
            &lambda * z,
            &lambda * y,
            -(g(2, 0, 1) * x * z + g(1, 2, 0) * y * y + g(1, 1, 1) * y * z),
        ];
        first_nonzero(&[Self::rho_monomial(&v), mu_form, lambda_form])
    }

    /// ψ at a point of the `after` cubic, using the σ form at (0,1,0) and the
    /// τ form at (0,0,1).
    pub fn psi(&self, p: &Point2) -> Result<Point2> {
        let c = &self.after;
        let v = p.to_rationals();
        let [x, y, z] = &v;
        let g = |i, j, k| c.get(i, j, k).clone();
        let sigma = g(3, 0, 0) * x + g(2, 0, 1) * z;
        let sigma_form = [
            -(g(1, 1, 1) * x * y + g(1, 0, 2) * x * z + g(0, 2, 1) * y * y + g(0, 1, 2) * y * z),
            &sigma * y,
            &sigma * x,
        ];
        let tau = g(1, 1, 1) * x + g(0, 2, 1) * y + g(0, 1, 2) * z;
        let tau_form = [
            &tau * x,
            -(g(3, 0, 0) * x * x + g(2, 0, 1) * x * z + g(1, 0, 2) * z * z),
            &tau * z,
        ];
        first_nonzero(&[Self::psi_monomial(&v), sigma_form, tau_form])
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepMap {
    /// `forward · inverse` is a nonzero multiple of the identity.
    Linear { forward: LinearMap3, inverse: LinearMap3 },
    Quadratic(QuadraticMapData),
}

impl StepMap {
    fn linear(forward: LinearMap3, inverse: LinearMap3) -> StepMap {
        StepMap::Linear { forward, inverse }
    }

    fn permutation(m: LinearMap3) -> StepMap {
        StepMap::Linear { forward: m.clone(), inverse: m }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepRecord {
    pub kind: StepKind,
    pub map: StepMap,
    pub cubic_after: TernaryCubic,
    pub point_after: Point2,
    /// For linear steps: `cubic_after = multiplier · (cubic_before ∘ inverse)`.
    pub multiplier: Option<Rational>,
    /// Named integer parameters chosen by the step, e.g. the tangent pair g.
    pub params: Vec<(&'static str, Vec<BigInt>)>,
}

impl StepRecord {
    pub fn forward(&self, p: &Point2) -> Result<Point2> {
        match &self.map {
            StepMap::Linear { forward, .. } => Ok(forward.apply_point(p)),
            StepMap::Quadratic(q) => q.rho(p),
        }
    }

    pub fn backward(&self, p: &Point2) -> Result<Point2> {
        match &self.map {
            StepMap::Linear { inverse, .. } => Ok(inverse.apply_point(p)),
            StepMap::Quadratic(q) => q.psi(p),
        }
    }

    /// True if the point of `cubic_after` is on it.
    pub fn is_consistent(&self) -> bool {
        self.cubic_after.evaluate(&self.point_after.to_rationals()).is_zero()
    }
}

fn linear_step(
    kind: StepKind,
    c: &TernaryCubic,
    p: &Point2,
    forward: LinearMap3,
    inverse: LinearMap3,
    divisor: Option<Rational>,
    params: Vec<(&'static str, Vec<BigInt>)>,
) -> StepRecord {
    let pulled = pullback_cubic(&inverse, c);
    let scaled = match &divisor {
        Some(d) => pulled.scale(&(Rational::one() / d)),
        None => pulled.clone(),
    };
    // positive content keeps the signs the divisor produced
    let after = scaled.primitive();
    let multiplier = after.ratio_to(&pulled);
    let point_after = forward.apply_point(p);
    StepRecord {
        kind,
        map: StepMap::linear(forward, inverse),
        cubic_after: after,
        point_after,
        multiplier,
        params,
    }
}

fn ints(v: &[BigInt]) -> Vec<Rational> {
    v.iter().cloned().map(Rational::from_integer).collect()
}

fn check_on(c: &TernaryCubic, p: &Point2, kind: StepKind) -> Result<()> {
    if c.evaluate(&p.to_rationals()).is_zero() {
        Ok(())
    } else {
        Err(Error::PointNotOnCubic { step: Some(kind) })
    }
}

fn require_zero(c: &TernaryCubic, codes: &[u16], kind: StepKind) -> Result<()> {
    let support = c.support();
    if codes.iter().any(|m| support.contains(m)) {
        Err(Error::UnexpectedShape { step: Some(kind) })
    } else {
        Ok(())
    }
}

/// A permutation moving the first nonzero coordinate of `p` into X, or
/// `None` if p_x ≠ 0 already.
pub fn reindex(c: &TernaryCubic, p: &Point2) -> Option<StepRecord> {
    let j = p.coords().iter().position(|x| !x.is_zero())?;
    if j == 0 {
        return None;
    }
    let m = LinearMap3::swap(0, j);
    let after = pullback_cubic(&m, c);
    Some(StepRecord {
        kind: StepKind::Reindex,
        point_after: m.apply_point(p),
        map: StepMap::permutation(m),
        multiplier: Some(Rational::one()),
        cubic_after: after,
        params: vec![("swap", vec![BigInt::zero(), BigInt::from(j)])],
    })
}

/// Step 1: moves `p` (with p_x ≠ 0) to (1,0,0).
pub fn step1_translate(c0: &TernaryCubic, p: &Point2) -> Result<StepRecord> {
    let kind = StepKind::Translate;
    check_on(c0, p, kind)?;
    let v = p.to_rationals();
    if v[0].is_zero() {
        return Err(Error::UnexpectedShape { step: Some(kind) });
    }
    let py = &v[1] / &v[0];
    let pz = &v[2] / &v[0];
    let (o, z) = (Rational::one(), Rational::zero());
    let forward = LinearMap3::new([
        [o.clone(), z.clone(), z.clone()],
        [-py.clone(), o.clone(), z.clone()],
        [-pz.clone(), z.clone(), o.clone()],
    ])?;
    let inverse = forward.inverse();
    let rec = linear_step(kind, c0, p, forward, inverse, None, vec![]);
    debug_assert!(rec.cubic_after.get(3, 0, 0).is_zero());
    Ok(rec)
}

/// Step 2: makes Y = 0 the tangent at (1,0,0). Swaps Y and Z first when
/// the tangent already is Y = 0. The flag reports a flex, where Steps 3 to
/// 5 collapse into an X/Y exchange.
pub fn step2_align_tangent(c1: &TernaryCubic, p: &Point2) -> Result<(Vec<StepRecord>, bool)> {
    let kind = StepKind::AlignTangent;
    check_on(c1, p, kind)?;
    if !c1.get(3, 0, 0).is_zero() {
        return Err(Error::UnexpectedShape { step: Some(kind) });
    }
    let mut out = Vec::new();
    let mut c = c1.clone();
    let mut p = p.clone();
    if c.get(2, 1, 0).is_zero() && c.get(2, 0, 1).is_zero() {
        return Err(Error::SingularPoint { step: Some(kind) });
    }
    if c.get(2, 0, 1).is_zero() {
        let m = LinearMap3::swap(1, 2);
        let rec = StepRecord {
            kind: StepKind::SwapYZ,
            cubic_after: pullback_cubic(&m, &c),
            point_after: m.apply_point(&p),
            map: StepMap::permutation(m),
            multiplier: Some(Rational::one()),
            params: vec![],
        };
        c = rec.cubic_after.clone();
        p = rec.point_after.clone();
        out.push(rec);
    }
    let g = primitive_ints(&[c.get(2, 1, 0).clone(), c.get(2, 0, 1).clone()]).expect("nonzero pair");
    let [gy, gz] = [ints(&g)[0].clone(), ints(&g)[1].clone()];
    let (o, z) = (Rational::one(), Rational::zero());
    let forward = LinearMap3::new([
        [o.clone(), z.clone(), z.clone()],
        [z.clone(), o.clone(), z.clone()],
        [z.clone(), gy.clone(), gz.clone()],
    ])?;
    let inverse = LinearMap3::new([
        [gz.clone(), z.clone(), z.clone()],
        [z.clone(), gz.clone(), z.clone()],
        [z.clone(), -gy, o],
    ])?;
    let rec = linear_step(kind, &c, &p, forward, inverse, None, vec![("g", g)]);
    let flex = rec.cubic_after.get(1, 2, 0).is_zero();
    out.push(rec);
    Ok((out, flex))
}

/// Shortcut for a flex at (1,0,0): exchanging X and Y already yields a
/// general Weierstrass cubic.
pub fn exchange_xy(c2: &TernaryCubic, p: &Point2) -> Result<StepRecord> {
    let kind = StepKind::ExchangeXY;
    check_on(c2, p, kind)?;
    let m = LinearMap3::swap(0, 1);
    let after = pullback_cubic(&m, c2);
    require_zero(&after, &[210, 120, 30], kind)?;
    Ok(StepRecord {
        kind,
        point_after: m.apply_point(p),
        map: StepMap::permutation(m),
        multiplier: Some(Rational::one()),
        cubic_after: after,
        params: vec![],
    })
}

/// Step 3: sends the third intersection of the tangent Y = 0, namely
/// q = (Γ030, −Γ120, 0), to (0,1,0).
pub fn step3_move_second_intersection(c2: &TernaryCubic, p: &Point2) -> Result<StepRecord> {
    let kind = StepKind::MoveSecondIntersection;
    check_on(c2, p, kind)?;
    require_zero(c2, &[300, 210], kind)?;
    if c2.get(1, 2, 0).is_zero() {
        return Err(Error::InflectionShouldHaveShortcut);
    }
    let q = primitive_ints(&[c2.get(0, 3, 0).clone(), -c2.get(1, 2, 0).clone()]).expect("Γ120 ≠ 0");
    let qp = Point2::from_ints([q[0].clone(), q[1].clone(), BigInt::zero()])?;
    check_on(c2, &qp, kind)?;
    let [qx, qy] = [ints(&q)[0].clone(), ints(&q)[1].clone()];
    let (o, z) = (Rational::one(), Rational::zero());
    let forward = LinearMap3::new([
        [-qy.clone(), qx.clone(), z.clone()],
        [z.clone(), o.clone(), z.clone()],
        [z.clone(), z.clone(), o.clone()],
    ])?;
    let inverse = LinearMap3::new([
        [o, -qx, z.clone()],
        [z.clone(), -qy.clone(), z.clone()],
        [z.clone(), z, -qy.clone()],
    ])?;
    let rec = linear_step(kind, c2, p, forward, inverse, Some(-qy), vec![("q", q)]);
    require_zero(&rec.cubic_after, &[300, 30, 210], kind)?;
    Ok(rec)
}

/// Step 4: makes X = 0 the tangent at (0,1,0).
pub fn step4_align_tangent_at_q(c3: &TernaryCubic, p: &Point2) -> Result<StepRecord> {
    let kind = StepKind::AlignSecondTangent;
    check_on(c3, p, kind)?;
    require_zero(c3, &[300, 30, 210], kind)?;
    if c3.get(1, 2, 0).is_zero() {
        return Err(Error::UnexpectedShape { step: Some(kind) });
    }
    let h = primitive_ints(&[c3.get(1, 2, 0).clone(), c3.get(0, 2, 1).clone()]).expect("Γ120 ≠ 0");
    let [hx, hz] = [ints(&h)[0].clone(), ints(&h)[1].clone()];
    let (o, z) = (Rational::one(), Rational::zero());
    let forward = LinearMap3::new([
        [hx.clone(), z.clone(), hz.clone()],
        [z.clone(), o.clone(), z.clone()],
        [z.clone(), z.clone(), o.clone()],
    ])?;
    let inverse = LinearMap3::new([
        [o, z.clone(), -hz],
        [z.clone(), hx.clone(), z.clone()],
        [z.clone(), z, hx.clone()],
    ])?;
    let rec = linear_step(kind, c3, p, forward, inverse, Some(hx), vec![("h", h)]);
    require_zero(&rec.cubic_after, &[300, 210, 30, 21], kind)?;
    Ok(rec)
}

/// Step 5: the quadratic transformation ρ, which only relabels coefficients.
pub fn step5_quadratic(c4: &TernaryCubic, p: &Point2) -> Result<StepRecord> {
    let kind = StepKind::Quadratic;
    check_on(c4, p, kind)?;
    require_zero(c4, &[300, 210, 30, 21], kind)?;
    let g = |i, j, k| c4.get(i, j, k).clone();
    let z = Rational::zero;
    let after = TernaryCubic::new([
        g(2, 0, 1),
        z(),
        g(1, 0, 2),
        z(),
        g(1, 1, 1),
        g(0, 0, 3),
        z(),
        g(1, 2, 0),
        g(0, 1, 2),
        z(),
    ]);
    if after.get(0, 2, 1).is_zero() || after.get(3, 0, 0).is_zero() {
        return Err(Error::SingularCurve { step: Some(kind) });
    }
    let data = QuadraticMapData { before: c4.clone(), after: after.clone() };
    let point_after = data.rho(p)?;
    Ok(StepRecord {
        kind,
        map: StepMap::Quadratic(data),
        cubic_after: after,
        point_after,
        multiplier: None,
        params: vec![],
    })
}

/// Step 6: completes the square in Y; scaled so that Γ021 = 1.
pub fn step6_complete_square(c5: &TernaryCubic, p: &Point2) -> Result<StepRecord> {
    let kind = StepKind::CompleteSquare;
    check_on(c5, p, kind)?;
    require_zero(c5, &[210, 120, 30], kind)?;
    let a = c5.get(0, 2, 1).clone();
    if a.is_zero() {
        return Err(Error::SingularCurve { step: Some(kind) });
    }
    let b = c5.get(1, 1, 1).clone();
    let c = c5.get(0, 1, 2).clone();
    let two_a = &a * rat(2);
    let (o, z) = (Rational::one(), Rational::zero());
    let forward = LinearMap3::new([
        [o.clone(), z.clone(), z.clone()],
        [b.clone(), two_a.clone(), c.clone()],
        [z.clone(), z.clone(), o.clone()],
    ])?;
    let inverse = LinearMap3::new([
        [two_a.clone(), z.clone(), z.clone()],
        [-b, o, -c],
        [z.clone(), z, two_a],
    ])?;
    let pulled = pullback_cubic(&inverse, c5);
    let factor = pulled.get(0, 2, 1).clone();
    let after = pulled.scale(&(Rational::one() / &factor));
    require_zero(&after, &[210, 120, 111, 30, 12], kind)?;
    Ok(StepRecord {
        kind,
        point_after: forward.apply_point(p),
        map: StepMap::linear(forward, inverse),
        multiplier: Some(Rational::one() / factor),
        cubic_after: after,
        params: vec![],
    })
}

/// Short Weierstrass curve y² = x³ + a2·x² + a4·x + a6.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeierstrassCurve {
    pub a2: Rational,
    pub a4: Rational,
    pub a6: Rational,
}

impl WeierstrassCurve {
    pub fn new(a2: Rational, a4: Rational, a6: Rational) -> Self {
        WeierstrassCurve { a2, a4, a6 }
    }

    pub fn from_ints<T: Into<BigInt>>(a2: T, a4: T, a6: T) -> Self {
        Self::new(rat(a2), rat(a4), rat(a6))
    }

    /// y² = x(x + A)(x + B).
    pub fn from_factored<T: Into<BigInt>>(a: T, b: T) -> Self {
        let (a, b) = (rat(a), rat(b));
        Self::new(&a + &b, a * b, Rational::zero())
    }

    /// Reads the curve off a cubic in Step 7 shape.
    pub fn from_cubic(c: &TernaryCubic) -> Option<Self> {
        let expected = [300u16, 201, 102, 21, 3];
        if c.support().iter().any(|m| !expected.contains(m))
            || *c.get(3, 0, 0) != -Rational::one()
            || !c.get(0, 2, 1).is_one()
        {
            return None;
        }
        Some(Self::new(-c.get(2, 0, 1).clone(), -c.get(1, 0, 2).clone(), -c.get(0, 0, 3).clone()))
    }

    /// Y²Z − X³ − a2X²Z − a4XZ² − a6Z³, i.e. Γ300 = −1 and Γ021 = 1.
    pub fn to_cubic(&self) -> TernaryCubic {
        let z = Rational::zero;
        TernaryCubic::new([
            -Rational::one(),
            z(),
            -self.a2.clone(),
            z(),
            z(),
            -self.a4.clone(),
            z(),
            Rational::one(),
            z(),
            -self.a6.clone(),
        ])
    }

    pub fn discriminant(&self) -> Rational {
        let (a2, a4, a6) = (&self.a2, &self.a4, &self.a6);
        let r = |n: i64| rat(n);
        -r(4) * a2 * a2 * a2 * a6 + a2 * a2 * a4 * a4 + r(18) * a2 * a4 * a6
            - r(4) * a4 * a4 * a4
            - r(27) * a6 * a6
    }

    pub fn is_singular(&self) -> bool {
        self.discriminant().is_zero()
    }

    pub fn contains(&self, p: &Point2) -> bool {
        self.to_cubic().evaluate(&p.to_rationals()).is_zero()
    }

    fn integral(&self) -> Option<[BigInt; 3]> {
        [&self.a2, &self.a4, &self.a6]
            .iter()
            .all(|c| c.is_integer())
            .then(|| [self.a2.to_integer(), self.a4.to_integer(), self.a6.to_integer()])
    }

    /// Distinct rational roots of the right-hand side, ascending.
    pub fn rational_roots(&self) -> Vec<Rational> {
        // substitute x = t/d with d clearing every denominator: monic in t
        let d = [&self.a2, &self.a4, &self.a6]
            .iter()
            .fold(BigInt::one(), |acc, c| num_integer::Integer::lcm(&acc, c.denom()));
        let dr = Rational::from_integer(d.clone());
        let a = (&self.a2 * &dr).to_integer();
        let b = (&self.a4 * &dr * &dr).to_integer();
        let c = (&self.a6 * &dr * &dr * &dr).to_integer();
        integer_cubic_roots(&a, &b, &c)
            .into_iter()
            .map(|t| Rational::new(t, d.clone()))
            .collect()
    }

    /// Scales to the largest u with u² | a2, u⁴ | a4, u⁶ | a6 (integer
    /// coefficients only). Returns the reduced curve and u; the point map is
    /// (X, Y, Z) ↦ (u·X, Y, u³·Z).
    pub fn minimal_scaling(&self) -> (WeierstrassCurve, BigInt) {
        let Some([a2, a4, a6]) = self.integral() else {
            return (self.clone(), BigInt::one());
        };
        let u = max_weighted_root(&[(a2, 2), (a4, 4), (a6, 6)]).unwrap_or_else(BigInt::one);
        (self.scaled_down(&u), u)
    }

    fn scaled_down(&self, u: &BigInt) -> WeierstrassCurve {
        let u2 = rat(u * u);
        WeierstrassCurve::new(
            &self.a2 / &u2,
            &self.a4 / (&u2 * &u2),
            &self.a6 / (&u2 * &u2 * &u2),
        )
    }

    /// `y^2 = x(x-3)(x-1)` style rendering when the cubic splits over ℚ.
    pub fn factored(&self) -> Option<String> {
        let roots = self.rational_roots();
        if roots.len() != 3 {
            return None;
        }
        let mut order: Vec<&Rational> = roots.iter().filter(|r| r.is_zero()).collect();
        order.extend(roots.iter().rev().filter(|r| !r.is_zero()));
        let factors: String = order
            .iter()
            .map(|r| {
                if r.is_zero() {
                    "x".to_string()
                } else if r.is_positive() {
                    format!("(x-{r})")
                } else {
                    format!("(x+{})", -(*r).clone())
                }
            })
            .collect();
        Some(format!("y^2 = {factors}"))
    }
}

impl fmt::Display for WeierstrassCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y^2 = x^3")?;
        for (c, mono) in [(&self.a2, "x^2"), (&self.a4, "x"), (&self.a6, "")] {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { '-' } else { '+' };
            let abs = c.abs();
            if abs.is_one() && !mono.is_empty() {
                write!(f, " {sign} {mono}")?;
            } else {
                write!(f, " {sign} {abs}{mono}")?;
            }
        }
        Ok(())
    }
}

/// Step 7: scales X and Y so that Γ300 = −1 and Γ021 = 1, removing the
/// largest factor φ the coefficients allow.
pub fn step7_normalize(c6: &TernaryCubic, p: &Point2) -> Result<(StepRecord, WeierstrassCurve)> {
    let kind = StepKind::Normalize;
    check_on(c6, p, kind)?;
    require_zero(c6, &[210, 120, 111, 30, 12], kind)?;
    if !c6.get(0, 2, 1).is_one() {
        return Err(Error::UnexpectedShape { step: Some(kind) });
    }
    let delta = -c6.get(3, 0, 0).clone();
    if delta.is_zero() {
        return Err(Error::DegenerateCubic);
    }
    let g: Vec<&Rational> = [(2, 0, 1), (3, 0, 0), (1, 0, 2), (0, 0, 3)]
        .iter()
        .map(|&(i, j, k)| c6.get(i, j, k))
        .collect();
    if g.iter().any(|c| !c.is_integer()) {
        return Err(Error::UnexpectedShape { step: Some(kind) });
    }
    let [g201, g300, g102, g003] = [0, 1, 2, 3].map(|i| g[i].to_integer());
    let phi = max_weighted_root(&[
        (g201, 2),
        (&g300 * &g102, 4),
        (&g300 * &g300 * &g003, 6),
    ])
    .ok_or(Error::SingularCurve { step: Some(kind) })?;
    let phi = rat(phi);
    let (phi2, phi3) = (&phi * &phi, &phi * &phi * &phi);
    let z = Rational::zero;
    let forward = LinearMap3::new([
        [&delta * &phi, z(), z()],
        [z(), delta.clone(), z()],
        [z(), z(), phi3.clone()],
    ])?;
    let inverse = LinearMap3::new([[phi2.clone(), z(), z()], [z(), phi3.clone(), z()], [z(), z(), delta.clone()]])?;
    let divisor = &phi3 * &phi3 * &delta;
    let after = pullback_cubic(&inverse, c6).scale(&(Rational::one() / &divisor));
    let curve = WeierstrassCurve::from_cubic(&after).ok_or(Error::UnexpectedShape { step: Some(kind) })?;
    if curve.is_singular() {
        return Err(Error::SingularCurve { step: Some(kind) });
    }
    let phi_int = phi.to_integer();
    let rec = StepRecord {
        kind,
        point_after: forward.apply_point(p),
        map: StepMap::linear(forward, inverse),
        multiplier: Some(Rational::one() / divisor),
        cubic_after: after,
        params: vec![("phi", vec![phi_int]), ("delta", vec![delta.to_integer()])],
    };
    Ok((rec, curve))
}

/// What Step 8 did with the Step 7 curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step8Outcome {
    /// Largest root moved to 0 and the common square removed.
    Shifted,
    /// Three rational roots, one of them already 0.
    AlreadyFactored,
    NotSplit,
}

impl Step8Outcome {
    pub fn name(&self) -> &'static str {
        match self {
            Step8Outcome::Shifted => "shifted",
            Step8Outcome::AlreadyFactored => "already-factored",
            Step8Outcome::NotSplit => "not-split",
        }
    }
}

/// Step 8: when x³ + a2x² + a4x + a6 splits over ℚ and has no root at 0,
/// moves the largest root to 0 and divides out the largest square common
/// to the other two, giving y² = x(x + A)(x + B).
pub fn step8_shift_roots(w: &WeierstrassCurve, p: &Point2) -> (Step8Outcome, Option<(StepRecord, WeierstrassCurve)>) {
    let roots = w.rational_roots();
    if roots.len() != 3 || roots.iter().any(|r| !r.is_integer()) {
        return (Step8Outcome::NotSplit, None);
    }
    if roots.iter().any(Zero::is_zero) {
        return (Step8Outcome::AlreadyFactored, None);
    }
    let r: Vec<BigInt> = roots.iter().map(|x| x.to_integer()).collect();
    let top = r[2].clone();
    let (a, b) = (&top - &r[1], &top - &r[0]);
    let u = max_weighted_root(&[(a.clone(), 2), (b.clone(), 2)]).unwrap_or_else(BigInt::one);
    let (ur, topr) = (rat(u.clone()), rat(top.clone()));
    let u2 = &ur * &ur;
    let u3 = &u2 * &ur;
    let z = Rational::zero;
    let inverse = LinearMap3::new([[u2.clone(), z(), topr.clone()], [z(), u3.clone(), z()], [z(), z(), Rational::one()]])
        .expect("u ≠ 0");
    let forward = LinearMap3::new([[ur.clone(), z(), -(&topr * &ur)], [z(), Rational::one(), z()], [z(), z(), u3.clone()]])
        .expect("u ≠ 0");
    let multiplier = Rational::one() / (&u3 * &u3);
    let after = pullback_cubic(&inverse, &w.to_cubic()).scale(&multiplier);
    let curve = WeierstrassCurve::from_factored(&a / (&u * &u), &b / (&u * &u));
    debug_assert_eq!(after, curve.to_cubic());
    let rec = StepRecord {
        kind: StepKind::ShiftRoots,
        point_after: forward.apply_point(p),
        map: StepMap::linear(forward, inverse),
        multiplier: Some(multiplier),
        cubic_after: after,
        params: vec![("roots", r), ("u", vec![u])],
    };
    (Step8Outcome::Shifted, Some((rec, curve)))
}

/// Every step from the initial cubic to the final curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicTrace {
    pub initial: TernaryCubic,
    pub initial_point: Point2,
    pub steps: Vec<StepRecord>,
    /// The Step 7 curve.
    pub weierstrass: WeierstrassCurve,
    pub step8: Step8Outcome,
    /// The Step 8 curve when [`Step8Outcome::Shifted`].
    pub shifted: Option<WeierstrassCurve>,
}

impl CubicTrace {
    pub fn final_curve(&self) -> &WeierstrassCurve {
        self.shifted.as_ref().unwrap_or(&self.weierstrass)
    }

    pub fn final_cubic(&self) -> &TernaryCubic {
        &self.steps.last().expect("at least Step 7").cubic_after
    }

    pub fn took_shortcut(&self) -> bool {
        self.steps.iter().any(|s| s.kind == StepKind::ExchangeXY)
    }

    pub fn step(&self, kind: StepKind) -> Option<&StepRecord> {
        self.steps.iter().find(|s| s.kind == kind)
    }

    /// C_(r), with C_(0) the initial cubic.
    pub fn stage(&self, r: u8) -> Option<(&TernaryCubic, &Point2)> {
        if r == 0 {
            return Some((&self.initial, &self.initial_point));
        }
        self.steps
            .iter()
            .rev()
            .find(|s| s.kind.stage() == Some(r))
            .map(|s| (&s.cubic_after, &s.point_after))
    }

    /// Number of leading steps that produce C_(r).
    pub fn steps_through(&self, r: u8) -> Option<usize> {
        if r == 0 {
            return Some(0);
        }
        self.steps.iter().rposition(|s| s.kind.stage() == Some(r)).map(|i| i + 1)
    }
}

/// Runs Steps 1 to 8 on a cubic through `p`.
pub fn run_pipeline(c0: &TernaryCubic, p: &Point2) -> Result<CubicTrace> {
    check_on(c0, p, StepKind::Translate)?;
    let mut steps: Vec<StepRecord> = Vec::new();
    let mut cur = (c0.clone(), p.clone());
    let push = |rec: StepRecord, cur: &mut (TernaryCubic, Point2), steps: &mut Vec<StepRecord>| {
        *cur = (rec.cubic_after.clone(), rec.point_after.clone());
        steps.push(rec);
    };
    if let Some(rec) = reindex(&cur.0, &cur.1) {
        push(rec, &mut cur, &mut steps);
    }
    push(step1_translate(&cur.0, &cur.1)?, &mut cur, &mut steps);
    let (recs, flex) = step2_align_tangent(&cur.0, &cur.1)?;
    for rec in recs {
        push(rec, &mut cur, &mut steps);
    }
    if flex {
        push(exchange_xy(&cur.0, &cur.1)?, &mut cur, &mut steps);
    } else {
        push(step3_move_second_intersection(&cur.0, &cur.1)?, &mut cur, &mut steps);
        push(step4_align_tangent_at_q(&cur.0, &cur.1)?, &mut cur, &mut steps);
        push(step5_quadratic(&cur.0, &cur.1)?, &mut cur, &mut steps);
    }
    push(step6_complete_square(&cur.0, &cur.1)?, &mut cur, &mut steps);
    let (rec, weierstrass) = step7_normalize(&cur.0, &cur.1)?;
    push(rec, &mut cur, &mut steps);
    let (step8, shifted) = match step8_shift_roots(&weierstrass, &cur.1) {
        (outcome, Some((rec, curve))) => {
            push(rec, &mut cur, &mut steps);
            (outcome, Some(curve))
        }
        (outcome, None) => (outcome, None),
    };
    Ok(CubicTrace {
        initial: c0.clone(),
        initial_point: p.clone(),
        steps,
        weierstrass,
        step8,
        shifted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn worked_c0() -> TernaryCubic {
        TernaryCubic::from_ints([-2, 3, 6, 4, -16, 4, -2, -2, 12, -8])
    }

    fn pt(x: i64, y: i64, z: i64) -> Point2 {
        Point2::from_ints([x, y, z]).unwrap()
    }

    #[test]
    fn worked_example_step_by_step() {
        let p = pt(2, 2, 1);
        let s1 = step1_translate(&worked_c0(), &p).unwrap();
        assert_eq!(s1.cubic_after, TernaryCubic::from_ints([0, -2, -2, -3, -8, 4, -2, -2, 12, -8]));
        assert_eq!(s1.point_after, pt(1, 0, 0));
        let (s2, flex) = step2_align_tangent(&s1.cubic_after, &s1.point_after).unwrap();
        assert!(!flex);
        assert_eq!(s2[0].cubic_after, TernaryCubic::from_ints([0, 0, -2, -9, -16, -4, -20, -50, -36, -8]));
        let s3 = step3_move_second_intersection(&s2[0].cubic_after, &s2[0].point_after).unwrap();
        assert_eq!(s3.params[0].1, vec![BigInt::from(-20), BigInt::from(9)]);
        let c3 = TernaryCubic::from_entries(&[(201, -2), (120, 81), (111, 64), (102, 36), (21, -1970), (12, -2196), (3, -648)]);
        assert_eq!(s3.cubic_after, c3);
    }

    #[test]
    fn quadratic_redefinitions() {
        let c4 = TernaryCubic::from_entries(&[(201, -2), (120, 6561), (111, 5184), (102, -4964), (12, -4195476), (3, -6268808)]);
        let s5 = step5_quadratic(&c4, &pt(1, 0, 0)).unwrap();
        let StepMap::Quadratic(q) = &s5.map else { panic!() };
        assert_eq!(q.rho(&pt(1, 0, 0)).unwrap(), pt(0, 1, 0));
        assert_eq!(q.rho(&pt(0, 1, 0)).unwrap(), pt(0, -4195476, -6561));
        assert_eq!(q.psi(&pt(0, 1, 0)).unwrap(), pt(1, 0, 0));
        assert_eq!(q.psi(&pt(0, 0, 1)).unwrap(), pt(0, 6268808, -4195476));
    }

    #[test]
    fn curve_rendering() {
        let w = WeierstrassCurve::from_ints(-4, 3, 0);
        assert_eq!(w.to_string(), "y^2 = x^3 - 4x^2 + 3x");
        assert_eq!(w.factored().unwrap(), "y^2 = x(x-3)(x-1)");
        let k = WeierstrassCurve::from_factored(10, 40);
        assert_eq!(k.factored().unwrap(), "y^2 = x(x+10)(x+40)");
        assert_eq!(WeierstrassCurve::from_ints(0, 0, -2).factored(), None);
    }

    #[test]
    fn discriminant_vanishes_on_cusp() {
        assert!(WeierstrassCurve::from_ints(0, 0, 0).is_singular());
        assert!(!WeierstrassCurve::from_ints(-4, 3, 0).is_singular());
    }

    #[test]
    fn minimal_scaling_removes_fourth_powers() {
        let w = WeierstrassCurve::from_ints(4 * 5, 16 * 6, 0);
        let (m, u) = w.minimal_scaling();
        assert_eq!(u, BigInt::from(2));
        assert_eq!(m, WeierstrassCurve::from_ints(5, 6, 0));
    }

    #[test]
    fn step8_on_klm_example() {
        let w = WeierstrassCurve::from_ints(227, 10243, 74529);
        let (outcome, res) = step8_shift_roots(&w, &pt(0, 1, 0));
        assert_eq!(outcome, Step8Outcome::Shifted);
        let (rec, curve) = res.unwrap();
        assert_eq!(curve, WeierstrassCurve::from_factored(10, 40));
        assert_eq!(rec.point_after, pt(0, 1, 0));
    }

    #[test]
    fn singular_distinguished_point() {
        // node at (1,0,0): no X² terms beyond degree one in Y, Z
        let c = TernaryCubic::from_entries(&[(120, 1), (102, -1), (30, 1), (3, 1)]);
        assert_eq!(
            step2_align_tangent(&c, &pt(1, 0, 0)).unwrap_err(),
            Error::SingularPoint { step: Some(StepKind::AlignTangent) }
        );
    }
}
