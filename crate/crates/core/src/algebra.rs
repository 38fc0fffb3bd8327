//! Exact scalars, projective points, quadrics, ternary cubics and linear maps.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::form::Form;
use crate::{Error, Result};

pub type Rational = BigRational;

pub(crate) fn rat<T: Into<BigInt>>(n: T) -> Rational {
    Rational::from_integer(n.into())
}

/// Parses `"p/q"`, `"p"` or a plain integer with surrounding whitespace.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str(p.trim()).ok()?;
        let q = BigInt::from_str(q.trim()).ok()?;
        if q.is_zero() {
            return None;
        }
        Some(Rational::new(p, q))
    } else {
        BigInt::from_str(s).ok().map(Rational::from_integer)
    }
}

/// Scales a rational vector to a primitive integer vector, keeping the sign
/// of every entry. Returns `None` for the zero vector.
pub(crate) fn primitive_ints(v: &[Rational]) -> Option<Vec<BigInt>> {
    if v.iter().all(Zero::is_zero) {
        return None;
    }
    let den = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &den).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    Some(ints.into_iter().map(|x| x / &g).collect())
}

/// Point of P^(N-1) in primitive integer coordinates whose first nonzero
/// coordinate is positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjectivePoint<const N: usize> {
    coords: [BigInt; N],
}

pub type Point2 = ProjectivePoint<3>;
pub type Point3 = ProjectivePoint<4>;

impl<const N: usize> ProjectivePoint<N> {
    pub fn new(raw: &[Rational; N]) -> Result<Self> {
        normalize_point(raw)
    }

    pub fn from_ints<T: Clone + Into<BigInt>>(raw: [T; N]) -> Result<Self> {
        Self::new(&raw.map(rat))
    }

    pub fn coords(&self) -> &[BigInt; N] {
        &self.coords
    }

    pub fn to_rationals(&self) -> [Rational; N] {
        self.coords.clone().map(Rational::from_integer)
    }

    /// Dehomogenizes by the last coordinate; `None` at infinity.
    pub fn affine(&self) -> Option<Vec<Rational>> {
        let w = &self.coords[N - 1];
        if w.is_zero() {
            return None;
        }
        Some(
            self.coords[..N - 1]
                .iter()
                .map(|c| Rational::new(c.clone(), w.clone()))
                .collect(),
        )
    }
}

impl<const N: usize> fmt::Display for ProjectivePoint<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl<const N: usize> FromStr for ProjectivePoint<N> {
    type Err = Error;

    /// Accepts comma separated rationals, optionally in parentheses.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != N {
            return Err(Error::InvalidInstance(format!(
                "expected {N} coordinates, got {}",
                parts.len()
            )));
        }
        let mut raw: [Rational; N] = std::array::from_fn(|_| Rational::zero());
        for (slot, p) in raw.iter_mut().zip(parts) {
            *slot = parse_rational(p)
                .ok_or_else(|| Error::InvalidInstance(format!("bad coordinate {p:?}")))?;
        }
        Self::new(&raw)
    }
}

pub fn normalize_point<const N: usize>(raw: &[Rational; N]) -> Result<ProjectivePoint<N>> {
    let mut ints = primitive_ints(raw).ok_or(Error::ZeroVector)?;
    if ints.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative()) {
        for c in ints.iter_mut() {
            *c = -&*c;
        }
    }
    let coords: [BigInt; N] = ints.try_into().expect("length preserved");
    Ok(ProjectivePoint { coords })
}

/// Symmetric 4×4 matrix A defining the quadric Xᵀ·A·X = 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadricForm {
    m: [[Rational; 4]; 4],
}

impl QuadricForm {
    pub fn new(m: [[Rational; 4]; 4]) -> Result<Self> {
        for i in 0..4 {
            for j in 0..i {
                if m[i][j] != m[j][i] {
                    return Err(Error::NotSymmetric);
                }
            }
        }
        Ok(QuadricForm { m })
    }

    pub fn from_ints(m: [[i64; 4]; 4]) -> Result<Self> {
        Self::new(m.map(|row| row.map(rat)))
    }

    pub fn diag<T: Clone + Into<BigInt>>(d: [T; 4]) -> Self {
        let mut m: [[Rational; 4]; 4] = std::array::from_fn(|_| std::array::from_fn(|_| Rational::zero()));
        for (i, v) in d.into_iter().enumerate() {
            m[i][i] = rat(v);
        }
        QuadricForm { m }
    }

    pub fn matrix(&self) -> &[[Rational; 4]; 4] {
        &self.m
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        &self.m[i][j]
    }

    pub fn evaluate(&self, x: &[Rational; 4]) -> Rational {
        let mut s = Rational::zero();
        for i in 0..4 {
            for j in 0..4 {
                s += &self.m[i][j] * &x[i] * &x[j];
            }
        }
        s
    }

    /// Mᵀ·A·M, the form expressed in new coordinates X = M·Y.
    pub fn transform(&self, m: &LinearMap4) -> QuadricForm {
        let mm = m.matrix();
        let out = std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                let mut s = Rational::zero();
                for a in 0..4 {
                    for b in 0..4 {
                        s += &mm[a][i] * &self.m[a][b] * &mm[b][j];
                    }
                }
                s
            })
        });
        QuadricForm { m: out }
    }

    pub fn to_form(&self) -> Form<4> {
        let mut f = Form::zero();
        for i in 0..4 {
            for j in 0..4 {
                let mut e = [0u8; 4];
                e[i] += 1;
                e[j] += 1;
                f.add_term(e, self.m[i][j].clone());
            }
        }
        f
    }
}

pub fn evaluate_quadric(q: &QuadricForm, p: &Point3) -> Rational {
    q.evaluate(&p.to_rationals())
}

/// Exponent triples (i, j, k) of Xⁱ·Yʲ·Zᵏ in storage order, lexicographically
/// descending: 300, 210, 201, 120, 111, 102, 030, 021, 012, 003.
pub const MONOMIALS: [[u8; 3]; 10] = [
    [3, 0, 0],
    [2, 1, 0],
    [2, 0, 1],
    [1, 2, 0],
    [1, 1, 1],
    [1, 0, 2],
    [0, 3, 0],
    [0, 2, 1],
    [0, 1, 2],
    [0, 0, 3],
];

pub fn monomial_index(i: u8, j: u8, k: u8) -> usize {
    MONOMIALS
        .iter()
        .position(|m| *m == [i, j, k])
        .unwrap_or_else(|| panic!("no cubic monomial {i}{j}{k}"))
}

/// Plane cubic Σ Γ_ijk XⁱYʲZᵏ = 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TernaryCubic {
    gamma: [Rational; 10],
}

impl TernaryCubic {
    pub fn new(gamma: [Rational; 10]) -> Self {
        TernaryCubic { gamma }
    }

    pub fn from_ints<T: Clone + Into<BigInt>>(gamma: [T; 10]) -> Self {
        TernaryCubic { gamma: gamma.map(rat) }
    }

    /// Builds a cubic from `(ijk, value)` pairs, e.g. `(201, -2)`.
    pub fn from_entries<T: Clone + Into<BigInt>>(entries: &[(u16, T)]) -> Self {
        let mut gamma: [Rational; 10] = std::array::from_fn(|_| Rational::zero());
        for (code, v) in entries {
            let (i, j, k) = ((code / 100) as u8, (code / 10 % 10) as u8, (code % 10) as u8);
            gamma[monomial_index(i, j, k)] = rat(v.clone());
        }
        TernaryCubic { gamma }
    }

    pub fn gamma(&self) -> &[Rational; 10] {
        &self.gamma
    }

    pub fn get(&self, i: u8, j: u8, k: u8) -> &Rational {
        &self.gamma[monomial_index(i, j, k)]
    }

    pub fn is_zero(&self) -> bool {
        self.gamma.iter().all(Zero::is_zero)
    }

    pub fn evaluate(&self, p: &[Rational; 3]) -> Rational {
        let mut s = Rational::zero();
        for (m, c) in MONOMIALS.iter().zip(&self.gamma) {
            if c.is_zero() {
                continue;
            }
            let mut t = c.clone();
            for (x, &e) in p.iter().zip(m) {
                for _ in 0..e {
                    t *= x;
                }
            }
            s += t;
        }
        s
    }

    pub fn scale(&self, c: &Rational) -> Self {
        TernaryCubic {
            gamma: std::array::from_fn(|i| &self.gamma[i] * c),
        }
    }

    /// Divides by the positive rational content, leaving integer coefficients
    /// with gcd 1 and every sign intact.
    pub fn primitive(&self) -> Self {
        match primitive_ints(&self.gamma) {
            Some(v) => TernaryCubic {
                gamma: std::array::from_fn(|i| Rational::from_integer(v[i].clone())),
            },
            None => self.clone(),
        }
    }

    /// Primitive integer representative whose first nonzero coefficient is
    /// positive.
    pub fn normalized(&self) -> Self {
        let p = self.primitive();
        match p.gamma.iter().find(|c| !c.is_zero()) {
            Some(c) if c.is_negative() => p.scale(&-Rational::one()),
            _ => p,
        }
    }

    /// The integer coefficients of [`normalized`](Self::normalized).
    pub fn normalized_ints(&self) -> [BigInt; 10] {
        self.normalized().gamma.map(|c| c.to_integer())
    }

    /// λ with `self = λ·other`, if it exists and is nonzero.
    pub fn ratio_to(&self, other: &TernaryCubic) -> Option<Rational> {
        let pivot = other.gamma.iter().position(|c| !c.is_zero())?;
        let lambda = &self.gamma[pivot] / &other.gamma[pivot];
        if lambda.is_zero() {
            return None;
        }
        (0..10)
            .all(|i| self.gamma[i] == &other.gamma[i] * &lambda)
            .then_some(lambda)
    }

    pub fn projectively_eq(&self, other: &TernaryCubic) -> bool {
        self.ratio_to(other).is_some()
    }

    pub fn to_form(&self) -> Form<3> {
        let mut f = Form::zero();
        for (m, c) in MONOMIALS.iter().zip(&self.gamma) {
            f.add_term(*m, c.clone());
        }
        f
    }

    /// Panics if `f` has a term that is not cubic.
    pub fn from_form(f: &Form<3>) -> Self {
        let mut gamma: [Rational; 10] = std::array::from_fn(|_| Rational::zero());
        for (e, c) in f.terms() {
            gamma[monomial_index(e[0], e[1], e[2])] = c.clone();
        }
        TernaryCubic { gamma }
    }

    pub fn gradient(&self, p: &[Rational; 3]) -> [Rational; 3] {
        let mut g: [Rational; 3] = std::array::from_fn(|_| Rational::zero());
        for (m, c) in MONOMIALS.iter().zip(&self.gamma) {
            for v in 0..3 {
                if m[v] == 0 || c.is_zero() {
                    continue;
                }
                let mut t = c * rat(m[v]);
                for w in 0..3 {
                    let e = if w == v { m[w] - 1 } else { m[w] };
                    for _ in 0..e {
                        t *= &p[w];
                    }
                }
                g[v] += t;
            }
        }
        g
    }

    /// Support of the cubic as `ijk` codes.
    pub fn support(&self) -> Vec<u16> {
        MONOMIALS
            .iter()
            .zip(&self.gamma)
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, _)| m[0] as u16 * 100 + m[1] as u16 * 10 + m[2] as u16)
            .collect()
    }
}

impl fmt::Display for TernaryCubic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (m, c) in MONOMIALS.iter().zip(&self.gamma) {
            if c.is_zero() {
                continue;
            }
            let (sign, abs) = if c.is_negative() { ("-", -c.clone()) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            if !abs.is_one() {
                write!(f, "{abs}")?;
            }
            let mut wrote = !abs.is_one();
            for (name, &e) in ["X", "Y", "Z"].iter().zip(m) {
                match e {
                    0 => {}
                    1 => {
                        write!(f, "{name}")?;
                        wrote = true;
                    }
                    _ => {
                        write!(f, "{name}^{e}")?;
                        wrote = true;
                    }
                }
            }
            if !wrote {
                write!(f, "1")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

pub fn evaluate_cubic(c: &TernaryCubic, p: &Point2) -> Rational {
    c.evaluate(&p.to_rationals())
}

/// Invertible N×N rational matrix acting on column vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearMap<const N: usize> {
    m: [[Rational; N]; N],
}

pub type LinearMap3 = LinearMap<3>;
pub type LinearMap4 = LinearMap<4>;

impl<const N: usize> LinearMap<N> {
    pub fn new(m: [[Rational; N]; N]) -> Result<Self> {
        let map = LinearMap { m };
        if map.det().is_zero() {
            return Err(Error::NotInvertible);
        }
        Ok(map)
    }

    pub fn from_ints<T: Clone + Into<BigInt>>(m: [[T; N]; N]) -> Result<Self> {
        Self::new(m.map(|row| row.map(rat)))
    }

    pub fn identity() -> Self {
        LinearMap {
            m: std::array::from_fn(|i| {
                std::array::from_fn(|j| if i == j { Rational::one() } else { Rational::zero() })
            }),
        }
    }

    /// Exchanges coordinates `a` and `b`.
    pub fn swap(a: usize, b: usize) -> Self {
        let mut id = Self::identity();
        id.m.swap(a, b);
        id
    }

    pub fn matrix(&self) -> &[[Rational; N]; N] {
        &self.m
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    pub fn det(&self) -> Rational {
        let mut a = self.m.clone();
        let mut det = Rational::one();
        for col in 0..N {
            let Some(piv) = (col..N).find(|&r| !a[r][col].is_zero()) else {
                return Rational::zero();
            };
            if piv != col {
                a.swap(piv, col);
                det = -det;
            }
            det *= &a[col][col];
            for r in col + 1..N {
                if a[r][col].is_zero() {
                    continue;
                }
                let f = &a[r][col] / &a[col][col];
                for c in col..N {
                    let t = &f * &a[col][c];
                    a[r][c] -= t;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Self {
        let mut a = self.m.clone();
        let mut inv = Self::identity().m;
        for col in 0..N {
            let piv = (col..N)
                .find(|&r| !a[r][col].is_zero())
                .expect("LinearMap is invertible by construction");
            a.swap(piv, col);
            inv.swap(piv, col);
            let p = a[col][col].clone();
            for c in 0..N {
                a[col][c] /= &p;
                inv[col][c] /= &p;
            }
            for r in 0..N {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for c in 0..N {
                    let t = &f * &a[col][c];
                    a[r][c] -= t;
                    let t = &f * &inv[col][c];
                    inv[r][c] -= t;
                }
            }
        }
        LinearMap { m: inv }
    }

    /// Matrix product `self · other`, i.e. apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        LinearMap {
            m: std::array::from_fn(|i| {
                std::array::from_fn(|j| {
                    (0..N).fold(Rational::zero(), |s, k| s + &self.m[i][k] * &other.m[k][j])
                })
            }),
        }
    }

    pub fn apply(&self, v: &[Rational; N]) -> [Rational; N] {
        std::array::from_fn(|i| (0..N).fold(Rational::zero(), |s, k| s + &self.m[i][k] * &v[k]))
    }

    pub fn apply_point(&self, p: &ProjectivePoint<N>) -> ProjectivePoint<N> {
        normalize_point(&self.apply(&p.to_rationals())).expect("invertible map keeps points nonzero")
    }

    /// Linear forms `Σ_j m[i][j]·x_j`, one per row.
    pub fn row_forms(&self) -> [Form<N>; N] {
        std::array::from_fn(|i| Form::linear(&self.m[i]))
    }
}

pub fn apply_linear<const N: usize>(m: &LinearMap<N>, p: &ProjectivePoint<N>) -> ProjectivePoint<N> {
    m.apply_point(p)
}

/// The cubic `C∘M⁻¹`: its value at `v` is `C(M⁻¹·v)`. Given the matrix that
/// expresses old coordinates in terms of new ones, this is the cubic in the
/// new coordinates.
pub fn pullback_cubic(m_inverse: &LinearMap3, c: &TernaryCubic) -> TernaryCubic {
    TernaryCubic::from_form(&c.to_form().substitute(&m_inverse.row_forms()))
}
