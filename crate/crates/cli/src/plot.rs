//! Affine and projective-triangle SVG views of a plane cubic.
//!
//! The curve is found by scanning a grid and marking every cell whose
//! corners disagree in sign, which is plain and deterministic. Points of
//! interest are drawn as red dots.

use std::fmt::Write;

use nagell::{Point2, TernaryCubic};
use num_traits::{Signed, ToPrimitive, Zero};

/// Grid cells per side.
pub const RESOLUTION: usize = 800;
const SIZE: f64 = 800.0;
const PAD: f64 = 40.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Window {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
}

impl Window {
    pub fn parse(s: &str) -> Option<Window> {
        let v: Vec<f64> = s.split(',').map(|p| p.trim().parse().ok()).collect::<Option<_>>()?;
        let [x0, x1, y0, y1] = v[..] else { return None };
        (x0 < x1 && y0 < y1 && v.iter().all(|t| t.is_finite())).then_some(Window { x0, x1, y0, y1 })
    }

    /// Square window around the marked points, padded by a quarter.
    pub fn fit(points: &[(f64, f64)]) -> Window {
        if points.is_empty() {
            return Window { x0: -5.0, x1: 5.0, y0: -5.0, y1: 5.0 };
        }
        let (mut lx, mut hx, mut ly, mut hy) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
        for &(x, y) in points {
            lx = lx.min(x);
            hx = hx.max(x);
            ly = ly.min(y);
            hy = hy.max(y);
        }
        let (cx, cy) = ((lx + hx) / 2.0, (ly + hy) / 2.0);
        let mut half = (hx - lx).max(hy - ly) / 2.0 * 1.25;
        if half < 1e-9 {
            half = (cx.abs().max(cy.abs()) / 2.0).max(2.0);
        }
        Window { x0: cx - half, x1: cx + half, y0: cy - half, y1: cy + half }
    }
}

/// Coefficients scaled into floating point; only signs matter for the scan.
struct FloatCubic([f64; 10]);

impl FloatCubic {
    fn new(c: &TernaryCubic) -> Self {
        let max = c.gamma().iter().map(|g| g.abs()).max().expect("ten coefficients");
        let g = c.gamma().clone().map(|g| if max.is_zero() { 0.0 } else { (g / &max).to_f64().unwrap_or(0.0) });
        FloatCubic(g)
    }

    fn eval(&self, x: f64, y: f64, z: f64) -> f64 {
        let g = &self.0;
        g[0] * x * x * x
            + g[1] * x * x * y
            + g[2] * x * x * z
            + g[3] * x * y * y
            + g[4] * x * y * z
            + g[5] * x * z * z
            + g[6] * y * y * y
            + g[7] * y * y * z
            + g[8] * y * z * z
            + g[9] * z * z * z
    }
}

fn changes(v: [f64; 4]) -> bool {
    let pos = v.iter().any(|t| *t > 0.0);
    let neg = v.iter().any(|t| *t < 0.0);
    (pos && neg) || v.contains(&0.0)
}

// Marked cells as horizontal runs, one path.
fn cells_path(marked: &[Vec<bool>], x_at: impl Fn(usize) -> f64, y_at: impl Fn(usize) -> f64) -> String {
    let mut d = String::new();
    for (j, row) in marked.iter().enumerate() {
        let mut i = 0;
        while i < row.len() {
            if !row[i] {
                i += 1;
                continue;
            }
            let start = i;
            while i < row.len() && row[i] {
                i += 1;
            }
            let (x0, x1) = (x_at(start), x_at(i));
            let (ya, yb) = (y_at(j), y_at(j + 1));
            let (top, h) = (ya.min(yb), (ya - yb).abs());
            let _ = write!(d, "M{x0:.2} {top:.2}h{:.2}v{h:.2}h{:.2}z", x1 - x0, x0 - x1);
        }
    }
    d
}

fn header(w: f64, h: f64, title: &str) -> String {
    format!(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n\
         <svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w:.0}\" height=\"{h:.0}\" viewBox=\"0 0 {w:.0} {h:.0}\">\n\
         <title>{title}</title>\n\
         <rect width=\"{w:.0}\" height=\"{h:.0}\" fill=\"white\"/>\n"
    )
}

fn dot(out: &mut String, x: f64, y: f64, p: &Point2) {
    let _ = writeln!(
        out,
        "<circle class=\"marked\" cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"5\" fill=\"red\" data-point=\"{p}\"/>"
    );
}

fn curve(out: &mut String, d: &str) {
    if !d.is_empty() {
        let _ = writeln!(out, "<path class=\"curve\" fill=\"black\" d=\"{d}\"/>");
    }
}

fn affine_coords(p: &Point2) -> Option<(f64, f64)> {
    let a = p.affine()?;
    Some((a[0].to_f64()?, a[1].to_f64()?))
}

pub fn affine_window(marked: &[Point2]) -> Window {
    Window::fit(&marked.iter().filter_map(affine_coords).collect::<Vec<_>>())
}

// Cells of the affine grid the curve passes through, top row first.
fn affine_cells(c: &TernaryCubic, w: Window, n: usize) -> Vec<Vec<bool>> {
    let f = FloatCubic::new(c);
    let x_of = |i: usize| w.x0 + (w.x1 - w.x0) * i as f64 / n as f64;
    let y_of = |j: usize| w.y1 - (w.y1 - w.y0) * j as f64 / n as f64;
    let vals: Vec<Vec<f64>> = (0..=n).map(|j| (0..=n).map(|i| f.eval(x_of(i), y_of(j), 1.0)).collect()).collect();
    (0..n)
        .map(|j| {
            (0..n)
                .map(|i| changes([vals[j][i], vals[j][i + 1], vals[j + 1][i], vals[j + 1][i + 1]]))
                .collect()
        })
        .collect()
}

/// The chart Z = 1 with x to the right and y up.
pub fn affine_svg(c: &TernaryCubic, marked: &[Point2], w: Window, title: &str) -> String {
    let n = RESOLUTION;
    let marked_cells = affine_cells(c, w, n);
    let scale = SIZE / n as f64;
    let mut out = header(SIZE, SIZE, title);
    let px = |x: f64| (x - w.x0) / (w.x1 - w.x0) * SIZE;
    let py = |y: f64| (w.y1 - y) / (w.y1 - w.y0) * SIZE;
    out.push_str("<g class=\"axes\" stroke=\"#999999\" stroke-width=\"1\">\n");
    if w.y0 <= 0.0 && 0.0 <= w.y1 {
        let _ = writeln!(out, "<line x1=\"0\" y1=\"{0:.2}\" x2=\"{SIZE:.0}\" y2=\"{0:.2}\"/>", py(0.0));
    }
    if w.x0 <= 0.0 && 0.0 <= w.x1 {
        let _ = writeln!(out, "<line x1=\"{0:.2}\" y1=\"0\" x2=\"{0:.2}\" y2=\"{SIZE:.0}\"/>", px(0.0));
    }
    out.push_str("</g>\n");
    curve(&mut out, &cells_path(&marked_cells, |i| i as f64 * scale, |j| j as f64 * scale));
    for p in marked {
        if let Some((x, y)) = affine_coords(p) {
            if (w.x0..=w.x1).contains(&x) && (w.y0..=w.y1).contains(&y) {
                dot(&mut out, px(x), py(y), p);
            }
        }
    }
    out.push_str("</svg>\n");
    out
}

/// Triangle vertices (0,0,1) left, (1,0,0) right, (0,1,0) top; a point is
/// placed at the barycentric weights (|X|, |Y|, |Z|), so all four sign
/// classes of real points fold onto the same triangle.
pub fn projective_svg(c: &TernaryCubic, marked: &[Point2], title: &str) -> String {
    let f = FloatCubic::new(c);
    let side = SIZE - 2.0 * PAD;
    let height = side * 3f64.sqrt() / 2.0;
    let canvas_h = height + 2.0 * PAD;
    let vz = (PAD, PAD + height);
    let vx = (PAD + side, PAD + height);
    let vy = (PAD + side / 2.0, PAD);
    let place = |b: [f64; 3]| {
        let s = b[0] + b[1] + b[2];
        let (a, bb, cc) = (b[0] / s, b[1] / s, b[2] / s);
        (a * vx.0 + bb * vy.0 + cc * vz.0, a * vx.1 + bb * vy.1 + cc * vz.1)
    };
    // inverse of `place` on the canvas: weights of X, Y, Z
    let weights = |x: f64, y: f64| {
        let wy = (vz.1 - y) / height;
        let wx = (x - vz.0 - wy * (vy.0 - vz.0)) / side;
        [wx, wy, 1.0 - wx - wy]
    };
    let n = RESOLUTION;
    let step = side / n as f64;
    let rows = (height / step).ceil() as usize;
    let x_of = |i: usize| PAD + i as f64 * step;
    let y_of = |j: usize| PAD + j as f64 * step;
    let inside = |b: [f64; 3]| b.iter().all(|t| *t >= -1e-9);
    let signs = [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)];
    let vals: Vec<Vec<Option<[f64; 4]>>> = (0..=rows)
        .map(|j| {
            (0..=n)
                .map(|i| {
                    let b = weights(x_of(i), y_of(j));
                    inside(b).then(|| signs.map(|(sx, sy)| f.eval(sx * b[0], sy * b[1], b[2])))
                })
                .collect()
        })
        .collect();
    let marked_cells: Vec<Vec<bool>> = (0..rows)
        .map(|j| {
            (0..n)
                .map(|i| {
                    let corners = [&vals[j][i], &vals[j][i + 1], &vals[j + 1][i], &vals[j + 1][i + 1]];
                    if corners.iter().any(|c| c.is_none()) {
                        return false;
                    }
                    let cs: Vec<[f64; 4]> = corners.iter().map(|c| c.unwrap()).collect();
                    (0..4).any(|s| changes([cs[0][s], cs[1][s], cs[2][s], cs[3][s]]))
                })
                .collect()
        })
        .collect();
    let mut out = header(SIZE, canvas_h, title);
    let _ = writeln!(
        out,
        "<polygon class=\"triangle\" points=\"{:.2},{:.2} {:.2},{:.2} {:.2},{:.2}\" fill=\"none\" stroke=\"#999999\" stroke-width=\"1\"/>",
        vz.0, vz.1, vx.0, vx.1, vy.0, vy.1
    );
    curve(&mut out, &cells_path(&marked_cells, x_of, y_of));
    for p in marked {
        let b = p.coords().clone().map(|c| c.abs().to_f64().unwrap_or(f64::MAX));
        let (x, y) = place(b);
        dot(&mut out, x, y, p);
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn window_parsing() {
        assert_eq!(Window::parse("-1,1,-2,2"), Some(Window { x0: -1.0, x1: 1.0, y0: -2.0, y1: 2.0 }));
        assert_eq!(Window::parse("1,-1,0,1"), None);
        assert_eq!(Window::parse("1,2,3"), None);
    }

    #[test]
    fn fit_single_point() {
        let w = Window::fit(&[(2.0, 2.0)]);
        assert!(w.x0 < 2.0 && 2.0 < w.x1 && w.y0 < 2.0 && 2.0 < w.y1);
    }

    #[test]
    fn empty_real_locus_draws_nothing() {
        // x² + y² + z² = 0 times z has only the line z = 0, which is at infinity
        let c = TernaryCubic::from_entries(&[(201, 1), (21, 1), (3, 1)]);
        let svg = affine_svg(&c, &[], Window::fit(&[]), "empty");
        assert!(!svg.contains("<path"));
    }

    #[test]
    fn weierstrass_curve_is_symmetric() {
        // y² = x(x − 3)(x − 1) on a window symmetric in y
        let c = TernaryCubic::from_entries(&[(300, -1), (201, 4), (102, -3), (21, 1)]);
        let cells = affine_cells(&c, Window { x0: -2.0, x1: 6.0, y0: -4.0, y1: 4.0 }, 200);
        assert!(cells.iter().flatten().any(|b| *b));
        for j in 0..200 {
            assert_eq!(cells[j], cells[199 - j], "row {j}");
        }
    }
}
