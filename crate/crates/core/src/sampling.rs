//! Rational points on plane cubics by the chord and tangent construction.
//!
//! A line through two rational points of a cubic meets it in a third
//! rational point. Starting from a few known points and drawing chords
//! yields new points whenever the curve has any point of infinite order.

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::algebra::{normalize_point, Point2, Point3, Rational, TernaryCubic};
use crate::transport::PipelineTrace;

// C(sP + tQ) = c30 s³ + c21 s²t + c12 st² + c03 t³
fn restricted(c: &TernaryCubic, p: &[Rational; 3], q: &[Rational; 3]) -> [Rational; 4] {
    let dot = |g: [Rational; 3], v: &[Rational; 3]| -> Rational { g.iter().zip(v).map(|(a, b)| a * b).sum() };
    [c.evaluate(p), dot(c.gradient(p), q), dot(c.gradient(q), p), c.evaluate(q)]
}

/// Third intersection of the line through `p` and `q` (the tangent when
/// they coincide). `None` if the line lies in the curve or `p` is singular.
pub fn third_point(c: &TernaryCubic, p: &Point2, q: &Point2) -> Option<Point2> {
    let pv = p.to_rationals();
    if p == q {
        let g = c.gradient(&pv);
        let d = [
            &g[1] * &pv[2] - &g[2] * &pv[1],
            &g[2] * &pv[0] - &g[0] * &pv[2],
            &g[0] * &pv[1] - &g[1] * &pv[0],
        ];
        if d.iter().all(Zero::is_zero) {
            return None;
        }
        let [_, _, c12, c03] = restricted(c, &pv, &d);
        let raw = std::array::from_fn(|i| -&c03 * &pv[i] + &c12 * &d[i]);
        return normalize_point(&raw).ok();
    }
    let qv = q.to_rationals();
    let [_, c21, c12, _] = restricted(c, &pv, &qv);
    let raw = std::array::from_fn(|i| -&c12 * &pv[i] + &c21 * &qv[i]);
    normalize_point(&raw).ok()
}

fn height(p: &Point2) -> u64 {
    p.coords().iter().map(|c| c.bits()).sum()
}

// each new point is joined to this many of the lowest known points
const PARTNERS: usize = 8;

/// Up to `count` distinct points of `c`, grown from `seeds`. Each new point
/// is joined to the lowest known points and to itself (the tangent), and the
/// lowest third point found so far is taken next, which keeps heights small.
/// Stops after `max_chords` lines.
pub fn sample_cubic_points(c: &TernaryCubic, seeds: &[Point2], count: usize, max_chords: usize) -> Vec<Point2> {
    let mut known: Vec<Point2> = Vec::new();
    let mut candidates: BTreeSet<(u64, Point2)> = BTreeSet::new();
    let mut chords = 0;
    let mut add = |p: Point2, known: &mut Vec<Point2>, candidates: &mut BTreeSet<(u64, Point2)>| {
        let mut partners: Vec<&Point2> = known.iter().collect();
        partners.sort_by_key(|q| height(q));
        partners.truncate(PARTNERS);
        for q in partners.into_iter().chain(std::iter::once(&p)) {
            if chords >= max_chords {
                break;
            }
            chords += 1;
            if let Some(r) = third_point(c, &p, q) {
                candidates.insert((height(&r), r));
            }
        }
        known.push(p);
    };
    for s in seeds {
        if c.evaluate(&s.to_rationals()).is_zero() && !known.contains(s) {
            add(s.clone(), &mut known, &mut candidates);
        }
    }
    while known.len() < count {
        let Some((_, next)) = candidates.pop_first() else { break };
        if !known.contains(&next) {
            add(next, &mut known, &mut candidates);
        }
    }
    known.truncate(count);
    known
}

/// Points of the quadric intersection, found on the initial cubic and lifted
/// back. The distinguished point is always among the seeds.
pub fn sample_intersection_points(
    trace: &PipelineTrace,
    extra_seeds: &[Point3],
    count: usize,
    max_chords: usize,
) -> Vec<Point3> {
    let mut seeds = vec![trace.quadric.z.clone()];
    seeds.extend(extra_seeds.iter().filter_map(|x| trace.quadric.forward(x).ok()));
    sample_cubic_points(&trace.quadric.cubic, &seeds, count, max_chords)
        .iter()
        .filter_map(|p| trace.quadric.backward(p).ok())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chord_on_a_weierstrass_curve() {
        // y² = x³ − x + 1 : the line y = 1 through (0,1) and (1,1) meets it again at (−1,1)
        let c = TernaryCubic::from_entries(&[(300, -1), (102, 1), (21, 1), (3, -1)]);
        let p = Point2::from_ints([0, 1, 1]).unwrap();
        let q = Point2::from_ints([1, 1, 1]).unwrap();
        assert_eq!(third_point(&c, &p, &q).unwrap(), Point2::from_ints([-1, 1, 1]).unwrap());
    }

    #[test]
    fn tangent_at_a_flex_returns_it() {
        let c = TernaryCubic::from_entries(&[(300, -1), (102, 1), (21, 1), (3, -1)]);
        let inf = Point2::from_ints([0, 1, 0]).unwrap();
        assert_eq!(third_point(&c, &inf, &inf).unwrap(), inf);
    }

    #[test]
    fn samples_lie_on_the_curve() {
        // rank one curve y² = x³ − 2
        let c = TernaryCubic::from_entries(&[(300, -1), (21, 1), (3, 2)]);
        let seed = Point2::from_ints([3, 5, 1]).unwrap();
        let pts = sample_cubic_points(&c, &[seed], 6, 200);
        assert_eq!(pts.len(), 6);
        for p in pts {
            assert!(c.evaluate(&p.to_rationals()).is_zero());
        }
    }
}
