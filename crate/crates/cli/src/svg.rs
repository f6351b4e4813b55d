//! Minimal SVG figures: axes, boundary polylines and point markers.

use std::fmt::Write;

use rings_core::ComplexPoint;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const MARGIN: f64 = 40.0;

#[derive(Debug, Clone, Copy)]
struct Frame {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Frame {
    fn covering<'a>(pts: impl Iterator<Item = &'a ComplexPoint>) -> Self {
        let mut f = Frame { x0: f64::INFINITY, x1: f64::NEG_INFINITY, y0: f64::INFINITY, y1: f64::NEG_INFINITY };
        for p in pts.filter(|p| p.re.is_finite() && p.im.is_finite()) {
            f.x0 = f.x0.min(p.re);
            f.x1 = f.x1.max(p.re);
            f.y0 = f.y0.min(p.im);
            f.y1 = f.y1.max(p.im);
        }
        if !f.x0.is_finite() {
            f = Frame { x0: -1.0, x1: 1.0, y0: -1.0, y1: 1.0 };
        }
        // Keep the origin in view and pad degenerate extents.
        f.x0 = f.x0.min(0.0);
        f.x1 = f.x1.max(0.0);
        f.y0 = f.y0.min(0.0);
        f.y1 = f.y1.max(0.0);
        let pad = |lo: &mut f64, hi: &mut f64| {
            let span = (*hi - *lo).max(1e-9);
            *lo -= 0.05 * span;
            *hi += 0.05 * span;
        };
        pad(&mut f.x0, &mut f.x1);
        pad(&mut f.y0, &mut f.y1);
        f
    }

    fn map(&self, p: ComplexPoint) -> (f64, f64) {
        let sx = (WIDTH - 2.0 * MARGIN) / (self.x1 - self.x0);
        let sy = (HEIGHT - 2.0 * MARGIN) / (self.y1 - self.y0);
        (MARGIN + (p.re - self.x0) * sx, HEIGHT - MARGIN - (p.im - self.y0) * sy)
    }
}

/// Renders boundary polylines and point markers. Output bytes depend only
/// on the input.
pub fn render(points: &[ComplexPoint], boundaries: &[Vec<ComplexPoint>]) -> String {
    let frame = Frame::covering(points.iter().chain(boundaries.iter().flatten()));
    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    )
    .unwrap();
    writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();

    let (ox, oy) = frame.map(ComplexPoint::new(0.0, 0.0));
    let (left, top) = frame.map(ComplexPoint::new(frame.x0, frame.y1));
    let (right, bottom) = frame.map(ComplexPoint::new(frame.x1, frame.y0));
    writeln!(s, r#"<g stroke="black" stroke-width="1">"#).unwrap();
    writeln!(s, r#"<line x1="{left:.2}" y1="{oy:.2}" x2="{right:.2}" y2="{oy:.2}"/>"#).unwrap();
    writeln!(s, r#"<line x1="{ox:.2}" y1="{top:.2}" x2="{ox:.2}" y2="{bottom:.2}"/>"#).unwrap();
    writeln!(s, "</g>").unwrap();
    writeln!(s, r#"<g font-family="sans-serif" font-size="12">"#).unwrap();
    writeln!(s, r#"<text x="{:.2}" y="{:.2}">Re</text>"#, right - 16.0, oy - 6.0).unwrap();
    writeln!(s, r#"<text x="{:.2}" y="{:.2}">Im</text>"#, ox + 6.0, top + 12.0).unwrap();
    writeln!(s, r#"<text x="{:.2}" y="{:.2}">{}</text>"#, left, bottom + 16.0, tick(frame.x0)).unwrap();
    writeln!(s, r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#, right, bottom + 16.0, tick(frame.x1)).unwrap();
    writeln!(s, r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#, left - 4.0, top + 4.0, tick(frame.y1)).unwrap();
    writeln!(s, r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#, left - 4.0, bottom, tick(frame.y0)).unwrap();
    writeln!(s, "</g>").unwrap();

    if !boundaries.is_empty() {
        writeln!(s, r#"<g fill="none" stroke="steelblue" stroke-width="1.5">"#).unwrap();
        for line in boundaries.iter().filter(|l| !l.is_empty()) {
            let coords: Vec<String> = line
                .iter()
                .map(|&p| {
                    let (x, y) = frame.map(p);
                    format!("{x:.2},{y:.2}")
                })
                .collect();
            writeln!(s, r#"<polyline points="{}"/>"#, coords.join(" ")).unwrap();
        }
        writeln!(s, "</g>").unwrap();
    }
    if !points.is_empty() {
        writeln!(s, r#"<g fill="crimson">"#).unwrap();
        for &p in points {
            let (x, y) = frame.map(p);
            writeln!(s, r#"<circle cx="{x:.2}" cy="{y:.2}" r="3"/>"#).unwrap();
        }
        writeln!(s, "</g>").unwrap();
    }
    s.push_str("</svg>\n");
    s
}

fn tick(v: f64) -> String {
    format!("{v:.2}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_markers_no_boundary() {
        let pts: Vec<ComplexPoint> = [(0.0, 0.0), (1.0, 1.0), (2.0, -1.0), (-1.0, 0.5)]
            .iter()
            .map(|&(x, y)| ComplexPoint::new(x, y))
            .collect();
        let svg = render(&pts, &[]);
        assert_eq!(svg.matches("<circle").count(), 4);
        assert!(!svg.contains("<polyline"));
        assert!(svg.starts_with("<svg") && svg.ends_with("</svg>\n"));
        assert_eq!(svg, render(&pts, &[]));
    }

    #[test]
    fn boundary_becomes_a_polyline() {
        let line: Vec<ComplexPoint> = (0..5).map(|k| ComplexPoint::new(k as f64, (k * k) as f64)).collect();
        let svg = render(&[], &[line]);
        assert_eq!(svg.matches("<polyline").count(), 1);
    }

    #[test]
    fn points_stay_inside_the_canvas() {
        let pts = [ComplexPoint::new(-3.0, 7.0), ComplexPoint::new(5.0, -2.0)];
        let frame = Frame::covering(pts.iter());
        for p in pts {
            let (x, y) = frame.map(p);
            assert!((MARGIN..=WIDTH - MARGIN).contains(&x));
            assert!((MARGIN..=HEIGHT - MARGIN).contains(&y));
        }
    }
}
