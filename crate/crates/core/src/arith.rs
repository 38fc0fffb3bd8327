//! Integer helpers: factorization, weighted roots and integer roots of cubics.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

const SMALL_PRIMES: [u32; 25] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];

/// Deterministic for n < 3.3·10²⁴ and a strong probable-prime test beyond.
pub fn is_probable_prime(n: &BigInt) -> bool {
    if *n < BigInt::from(2) {
        return false;
    }
    for &p in &SMALL_PRIMES {
        let p = BigInt::from(p);
        if *n == p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let one = BigInt::one();
    let nm1 = n - &one;
    let mut d = nm1.clone();
    let mut s = 0u32;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'witness: for &a in &SMALL_PRIMES[..13] {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_brent(n: &BigInt, c: u64) -> Option<BigInt> {
    let c = BigInt::from(c);
    let f = |x: &BigInt| (x * x + &c) % n;
    let mut y = BigInt::from(2);
    let mut r = 1u64;
    let mut q = BigInt::one();
    let mut g = BigInt::one();
    let mut x = y.clone();
    let mut ys = y.clone();
    const BATCH: u64 = 64;
    while g.is_one() {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g.is_one() {
            ys = y.clone();
            for _ in 0..BATCH.min(r - k) {
                y = f(&y);
                q = (q * (&x - &y).abs()) % n;
            }
            g = q.gcd(n);
            k += BATCH;
        }
        r *= 2;
        if r > 1 << 24 {
            return None;
        }
    }
    if g == *n {
        loop {
            ys = f(&ys);
            g = (&x - &ys).abs().gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    (g != *n).then_some(g)
}

/// Prime factorization of |n| as prime → exponent. Zero and ±1 give an
/// empty map.
pub fn factorize(n: &BigInt) -> BTreeMap<BigInt, u32> {
    let mut out = BTreeMap::new();
    let mut n = n.abs();
    if n.is_zero() {
        return out;
    }
    for p in 2u32..1000 {
        let bp = BigInt::from(p);
        if &bp * &bp > n {
            break;
        }
        while (&n % &bp).is_zero() {
            n /= &bp;
            *out.entry(bp.clone()).or_insert(0) += 1;
        }
    }
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_probable_prime(&m) {
            *out.entry(m).or_insert(0) += 1;
            continue;
        }
        if let Some(r) = perfect_power(&m) {
            for _ in 0..r.1 {
                stack.push(r.0.clone());
            }
            continue;
        }
        let d = (1u64..)
            .find_map(|c| pollard_brent(&m, c))
            .expect("some polynomial splits a composite");
        stack.push(&m / &d);
        stack.push(d);
    }
    out
}

/// `Some((b, k))` with `n = b^k`, `k ≥ 2` maximal, for n > 1.
fn perfect_power(n: &BigInt) -> Option<(BigInt, u32)> {
    let bits = n.bits() as u32;
    for k in (2..=bits).rev() {
        let b = n.nth_root(k);
        if b > BigInt::one() && b.pow(k) == *n {
            return Some((b, k));
        }
    }
    None
}

/// Largest positive φ with φ^w | v for every `(v, w)` with v ≠ 0. `None`
/// when every v is zero, since then φ is unbounded.
pub fn max_weighted_root(constraints: &[(BigInt, u32)]) -> Option<BigInt> {
    let nonzero: Vec<&(BigInt, u32)> = constraints.iter().filter(|(v, _)| !v.is_zero()).collect();
    if nonzero.is_empty() {
        return None;
    }
    // φ divides every constrained value, so only primes of their gcd matter
    let g = nonzero.iter().fold(BigInt::zero(), |acc, (v, _)| acc.gcd(v));
    let mut phi = BigInt::one();
    for p in factorize(&g).keys() {
        let e = nonzero
            .iter()
            .map(|(v, w)| valuation(v, p) / w)
            .min()
            .unwrap_or(0);
        phi *= p.pow(e);
    }
    Some(phi)
}

/// Exponent of `p` in `n ≠ 0`.
pub fn valuation(n: &BigInt, p: &BigInt) -> u32 {
    let mut n = n.clone();
    let mut e = 0;
    while !n.is_zero() && (&n % p).is_zero() {
        n /= p;
        e += 1;
    }
    e
}

pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

fn eval_monic(c: &[BigInt; 3], x: &BigInt) -> BigInt {
    ((x + &c[0]) * x + &c[1]) * x + &c[2]
}

/// Distinct integer roots, ascending, of x³ + a·x² + b·x + c.
///
/// Works on the integer sequence f(n) directly: the forward difference
/// f(n+1) − f(n) is a quadratic in n, which splits the integers into at most
/// three runs on which f is monotone. Each run is binary searched, so no
/// factorization of c is needed.
pub fn integer_cubic_roots(a: &BigInt, b: &BigInt, c: &BigInt) -> Vec<BigInt> {
    let coeffs = [a.clone(), b.clone(), c.clone()];
    let f = |x: &BigInt| eval_monic(&coeffs, x);
    let bound = BigInt::one() + a.abs().max(b.abs()).max(c.abs());
    let lo = -bound.clone();
    let hi = bound;

    // g(n) = f(n+1) - f(n) = 3n² + (3+2a)n + (1+a+b)
    let ga = BigInt::from(3);
    let gb: BigInt = BigInt::from(3) + a * 2;
    let gc: BigInt = BigInt::one() + a + b;
    let g = |x: &BigInt| (&ga * x + &gb) * x + &gc;
    let disc: BigInt = &gb * &gb - BigInt::from(12) * &gc;

    let mut cuts: Vec<(BigInt, BigInt, bool)> = Vec::new();
    let mut dip = None;
    if !disc.is_negative() {
        let s = disc.sqrt();
        let left = (-&gb - &s).div_floor(&BigInt::from(6));
        let right = (-&gb + &s).div_floor(&BigInt::from(6));
        let p = (-3..=4).map(|d| &left + d).find(|x| !g(x).is_positive());
        let q = (-3..=4).rev().map(|d| &right + d).find(|x| !g(x).is_positive());
        if let (Some(p), Some(q)) = (p, q) {
            if p <= q {
                dip = Some((p, q));
            }
        }
    }
    match dip {
        None => cuts.push((lo, hi, true)),
        Some((p, q)) => {
            cuts.push((lo, p.clone(), true));
            cuts.push((p, &q + 1, false));
            cuts.push((q + 1, hi, true));
        }
    }

    let mut roots = Vec::new();
    for (l, h, increasing) in cuts {
        if l > h {
            continue;
        }
        // first n in [l, h] with f(n) >= 0 (increasing) or <= 0 (decreasing)
        let past = |x: &BigInt| {
            let v = f(x);
            if increasing {
                !v.is_negative()
            } else {
                !v.is_positive()
            }
        };
        if !past(&h) {
            continue;
        }
        let (mut l, mut h) = (l, h);
        while l < h {
            let mid: BigInt = (&l + &h).div_floor(&BigInt::from(2));
            if past(&mid) {
                h = mid;
            } else {
                l = mid + 1;
            }
        }
        for d in [-1i32, 0, 1] {
            let x = &l + d;
            if f(&x).is_zero() {
                roots.push(x);
            }
        }
    }
    roots.sort();
    roots.dedup();
    roots
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn factorization_small_and_large() {
        let f = factorize(&b(-360));
        assert_eq!(f.get(&b(2)), Some(&3));
        assert_eq!(f.get(&b(3)), Some(&2));
        assert_eq!(f.get(&b(5)), Some(&1));
        let p: BigInt = "1000000007".parse().unwrap();
        let q: BigInt = "998244353".parse().unwrap();
        let n = &p * &p * &q;
        let f = factorize(&n);
        assert_eq!(f.get(&p), Some(&2));
        assert_eq!(f.get(&q), Some(&1));
        assert!(factorize(&b(1)).is_empty());
    }

    #[test]
    fn primality() {
        assert!(is_probable_prime(&b(2)));
        assert!(is_probable_prime(&b(1_000_000_007)));
        assert!(!is_probable_prime(&b(561)));
        assert!(!is_probable_prime(&b(1)));
    }

    #[test]
    fn weighted_root() {
        // φ² | 72, φ⁴ | 1296·5 → φ = 6
        let phi = max_weighted_root(&[(b(72), 2), (b(6480), 4)]).unwrap();
        assert_eq!(phi, b(6));
        assert_eq!(max_weighted_root(&[(b(12), 2)]).unwrap(), b(2));
        assert_eq!(max_weighted_root(&[(b(0), 2), (b(0), 4)]), None);
        assert_eq!(max_weighted_root(&[(b(0), 2), (b(64), 6)]).unwrap(), b(2));
    }

    #[test]
    fn cubic_roots_split() {
        // (x+9)(x+49)(x+169)
        let roots = integer_cubic_roots(&b(227), &b(10243), &b(74529));
        assert_eq!(roots, vec![b(-169), b(-49), b(-9)]);
        // x(x-3)(x-1)
        assert_eq!(integer_cubic_roots(&b(-4), &b(3), &b(0)), vec![b(0), b(1), b(3)]);
    }

    #[test]
    fn cubic_roots_adjacent_and_repeated() {
        // (x-1)(x-2)(x-3)
        assert_eq!(integer_cubic_roots(&b(-6), &b(11), &b(-6)), vec![b(1), b(2), b(3)]);
        // (x-2)²(x+1)
        assert_eq!(integer_cubic_roots(&b(-3), &b(0), &b(4)), vec![b(-1), b(2)]);
        // x³ - 2 has none
        assert!(integer_cubic_roots(&b(0), &b(0), &b(-2)).is_empty());
    }

    #[test]
    fn cubic_roots_brute_force_agreement() {
        for r1 in -6i64..=6 {
            for r2 in r1..=6 {
                for r3 in [-7i64, 0, 5, 11] {
                    let a = -(r1 + r2 + r3);
                    let bb = r1 * r2 + r1 * r3 + r2 * r3;
                    let c = -(r1 * r2 * r3);
                    let mut want = vec![b(r1), b(r2), b(r3)];
                    want.sort();
                    want.dedup();
                    assert_eq!(integer_cubic_roots(&b(a), &b(bb), &b(c)), want);
                }
            }
        }
    }

    #[test]
    fn sqrt_exact() {
        assert_eq!(exact_sqrt(&b(49)), Some(b(7)));
        assert_eq!(exact_sqrt(&b(50)), None);
        assert_eq!(exact_sqrt(&b(-4)), None);
    }
}
