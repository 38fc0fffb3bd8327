//! Sparse multivariate polynomials over ℚ, used for symbolic pullbacks and
//! identity checks.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::algebra::Rational;

/// A polynomial in `N` variables, stored as exponent vector → coefficient.
/// Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Form<const N: usize> {
    terms: BTreeMap<[u8; N], Rational>,
}

impl<const N: usize> Form<N> {
    pub fn zero() -> Self {
        Form { terms: BTreeMap::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial([0; N], c)
    }

    pub fn monomial(exp: [u8; N], c: Rational) -> Self {
        let mut f = Self::zero();
        f.add_term(exp, c);
        f
    }

    pub fn var(i: usize) -> Self {
        let mut exp = [0; N];
        exp[i] = 1;
        Self::monomial(exp, Rational::one())
    }

    /// `Σ c_i·x_i`.
    pub fn linear(coeffs: &[Rational; N]) -> Self {
        let mut f = Self::zero();
        for (i, c) in coeffs.iter().enumerate() {
            let mut exp = [0; N];
            exp[i] = 1;
            f.add_term(exp, c.clone());
        }
        f
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u8; N], &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &[u8; N]) -> Rational {
        self.terms.get(exp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, exp: [u8; N], c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Form {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::constant(Rational::one());
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, x: &[Rational; N]) -> Rational {
        let mut total = Rational::zero();
        for (exp, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &e) in x.iter().zip(exp.iter()) {
                for _ in 0..e {
                    t *= xi;
                }
            }
            total += t;
        }
        total
    }

    /// Substitutes `images[i]` for the i-th variable.
    pub fn substitute<const M: usize>(&self, images: &[Form<M>; N]) -> Form<M> {
        // powers are cached per variable since cubic inputs reuse them heavily
        let mut cache: Vec<Vec<Form<M>>> = images
            .iter()
            .map(|f| vec![Form::<M>::constant(Rational::one()), f.clone()])
            .collect();
        let mut out = Form::<M>::zero();
        for (exp, c) in &self.terms {
            let mut t = Form::<M>::constant(c.clone());
            for (i, &e) in exp.iter().enumerate() {
                let e = e as usize;
                while cache[i].len() <= e {
                    let next = &cache[i][cache[i].len() - 1] * &images[i];
                    cache[i].push(next);
                }
                t = &t * &cache[i][e];
            }
            out = &out + &t;
        }
        out
    }
}

impl<const N: usize> Add for &Form<N> {
    type Output = Form<N>;
    fn add(self, rhs: &Form<N>) -> Form<N> {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl<const N: usize> Sub for &Form<N> {
    type Output = Form<N>;
    fn sub(self, rhs: &Form<N>) -> Form<N> {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl<const N: usize> Neg for &Form<N> {
    type Output = Form<N>;
    fn neg(self) -> Form<N> {
        Form {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl<const N: usize> Mul for &Form<N> {
    type Output = Form<N>;
    fn mul(self, rhs: &Form<N>) -> Form<N> {
        let mut out = Form::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let mut e = [0u8; N];
                for i in 0..N {
                    e[i] = ea[i] + eb[i];
                }
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}
