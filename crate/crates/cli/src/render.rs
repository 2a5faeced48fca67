//! SVG output. Coordinates are rounded for display only.

use std::fmt::Write;

use beacon_core::geometry::Point;
use beacon_core::polygon::RectPolygon;

#[derive(Debug, Clone)]
pub struct RenderSpec {
    pub size: f64,
    pub margin: f64,
    pub precision: usize,
    pub stroke: String,
    pub fill: String,
    pub kernel_fill: String,
    pub beacon_color: String,
    pub path_color: String,
    pub cut_color: String,
}

impl Default for RenderSpec {
    fn default() -> Self {
        RenderSpec {
            size: 600.0,
            margin: 20.0,
            precision: 2,
            stroke: "#222".into(),
            fill: "#eef2f7".into(),
            kernel_fill: "#8fc1e3".into(),
            beacon_color: "#c0392b".into(),
            path_color: "#27ae60".into(),
            cut_color: "#7f8c8d".into(),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct Layers {
    pub kernel: Option<RectPolygon>,
    pub beacons: Vec<Point>,
    pub paths: Vec<Vec<Point>>,
    pub cuts: Vec<(Point, Point)>,
}

struct Frame {
    x0: f64,
    y1: f64,
    scale: f64,
    margin: f64,
    precision: usize,
}

impl Frame {
    fn new(poly: &RectPolygon, spec: &RenderSpec) -> Frame {
        let (lo, hi) = poly.bbox();
        let (x0, y0) = lo.to_f64();
        let (x1, y1) = hi.to_f64();
        let span = (x1 - x0).max(y1 - y0).max(f64::MIN_POSITIVE);
        Frame { x0, y1, scale: (spec.size - 2.0 * spec.margin) / span, margin: spec.margin, precision: spec.precision }
    }

    fn xy(&self, p: &Point) -> (String, String) {
        let (x, y) = p.to_f64();
        let sx = self.margin + (x - self.x0) * self.scale;
        let sy = self.margin + (self.y1 - y) * self.scale;
        (format!("{sx:.*}", self.precision), format!("{sy:.*}", self.precision))
    }

    fn path(&self, pts: &[Point]) -> String {
        let mut d = String::new();
        for (i, p) in pts.iter().enumerate() {
            let (x, y) = self.xy(p);
            let _ = write!(d, "{}{x} {y} ", if i == 0 { "M" } else { "L" });
        }
        d.push('Z');
        d
    }
}

pub fn render(poly: &RectPolygon, layers: &Layers, spec: &RenderSpec) -> String {
    let f = Frame::new(poly, spec);
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{0}" height="{0}" viewBox="0 0 {0} {0}">"#,
        spec.size
    );
    let _ = writeln!(
        s,
        r#"  <path class="polygon" d="{}" fill="{}" stroke="{}" stroke-width="1.5"/>"#,
        f.path(poly.vertices()),
        spec.fill,
        spec.stroke
    );
    if let Some(k) = &layers.kernel {
        let _ = writeln!(
            s,
            r#"  <path class="kernel" d="{}" fill="{}" fill-opacity="0.6"/>"#,
            f.path(k.vertices()),
            spec.kernel_fill
        );
    }
    for (a, b) in &layers.cuts {
        let ((x1, y1), (x2, y2)) = (f.xy(a), f.xy(b));
        let _ = writeln!(
            s,
            r#"  <line class="cut" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="{}" stroke-dasharray="4 3"/>"#,
            spec.cut_color
        );
    }
    for path in &layers.paths {
        let pts: Vec<String> = path
            .iter()
            .map(|p| {
                let (x, y) = f.xy(p);
                format!("{x},{y}")
            })
            .collect();
        let _ = writeln!(
            s,
            r#"  <polyline class="path" points="{}" fill="none" stroke="{}" stroke-width="1.5"/>"#,
            pts.join(" "),
            spec.path_color
        );
    }
    let r = 5.0;
    for b in &layers.beacons {
        let (x, y) = b.to_f64();
        let cx = f.margin + (x - f.x0) * f.scale;
        let cy = f.margin + (f.y1 - y) * f.scale;
        let p = spec.precision;
        let _ = writeln!(
            s,
            r#"  <path class="beacon" d="M{:.p$} {:.p$} L{:.p$} {:.p$} M{:.p$} {:.p$} L{:.p$} {:.p$}" stroke="{}" stroke-width="2"/>"#,
            cx - r,
            cy - r,
            cx + r,
            cy + r,
            cx - r,
            cy + r,
            cx + r,
            cy - r,
            spec.beacon_color
        );
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_is_one_closed_path() {
        let sq = RectPolygon::validate(vec![
            Point::from_ints(0, 0),
            Point::from_ints(1, 0),
            Point::from_ints(1, 1),
            Point::from_ints(0, 1),
        ])
        .unwrap();
        let svg = render(&sq, &Layers::default(), &RenderSpec::default());
        let d = svg.lines().find(|l| l.contains("class=\"polygon\"")).unwrap();
        assert_eq!(d.matches('L').count(), 3);
        assert_eq!(d.matches('M').count(), 1);
        assert!(d.contains('Z'));
        assert!(svg.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn beacons_are_crosses() {
        let sq = RectPolygon::validate(vec![
            Point::from_ints(0, 0),
            Point::from_ints(4, 0),
            Point::from_ints(4, 4),
            Point::from_ints(0, 4),
        ])
        .unwrap();
        let layers = Layers { beacons: vec![Point::from_ints(2, 2)], ..Layers::default() };
        let svg = render(&sq, &layers, &RenderSpec::default());
        assert_eq!(svg.matches("class=\"beacon\"").count(), 1);
    }
}
