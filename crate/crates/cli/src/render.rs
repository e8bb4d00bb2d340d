//! SVG pictures of staircase intervals. Infinite coordinates are clipped to
//! a frame and the clipped edges end in arrowheads.

use std::fmt::Write as _;

use persistdist::{ExtendedScalar, Point, StaircaseInterval};

const SIZE: f64 = 480.0;
const MARGIN: f64 = 24.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Frame {
    pub x0: f64,
    pub y0: f64,
    pub x1: f64,
    pub y1: f64,
}

impl Frame {
    /// Bounding box of the finite coordinates, padded by a tenth of its
    /// size (at least one unit) so clipped edges stay visible.
    pub fn fit<'a>(regions: impl IntoIterator<Item = &'a StaircaseInterval>) -> Frame {
        let (mut xs, mut ys) = (Vec::new(), Vec::new());
        for r in regions {
            for p in r.all_vertices() {
                xs.extend(p.x.is_finite().then(|| p.x.approx()));
                ys.extend(p.y.is_finite().then(|| p.y.approx()));
            }
        }
        let span = |v: &[f64]| {
            let lo = v.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            if lo.is_finite() {
                (lo, hi)
            } else {
                (0.0, 1.0)
            }
        };
        let ((x0, x1), (y0, y1)) = (span(&xs), span(&ys));
        let pad = ((x1 - x0).max(y1 - y0) / 10.0).max(1.0);
        Frame { x0: x0 - pad, y0: y0 - pad, x1: x1 + pad, y1: y1 + pad }
    }

    pub fn parse(text: &str) -> Result<Frame, String> {
        let v: Vec<f64> = text
            .split(',')
            .map(|t| t.trim().parse::<f64>().map_err(|_| format!("bad frame coordinate {t:?}")))
            .collect::<Result<_, _>>()?;
        match v[..] {
            [x0, y0, x1, y1] if x0 < x1 && y0 < y1 => Ok(Frame { x0, y0, x1, y1 }),
            [_, _, _, _] => Err("frame must satisfy x0 < x1 and y0 < y1".into()),
            _ => Err("frame takes four numbers: x0,y0,x1,y1".into()),
        }
    }

    fn scale(&self) -> f64 {
        (SIZE - 2.0 * MARGIN) / (self.x1 - self.x0).max(self.y1 - self.y0)
    }

    fn clip(v: &ExtendedScalar, lo: f64, hi: f64) -> f64 {
        v.approx().clamp(lo, hi)
    }

    fn place(&self, x: f64, y: f64) -> (f64, f64) {
        let s = self.scale();
        (MARGIN + (x - self.x0) * s, SIZE - MARGIN - (y - self.y0) * s)
    }

    fn project(&self, p: &Point) -> (f64, f64) {
        self.place(Self::clip(&p.x, self.x0, self.x1), Self::clip(&p.y, self.y0, self.y1))
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Style {
    pub fill: &'static str,
    pub stroke: &'static str,
    pub opacity: f64,
    pub dashed: bool,
}

pub const FIRST: Style = Style { fill: "#4c78a8", stroke: "#1f3b57", opacity: 0.35, dashed: false };
pub const SECOND: Style = Style { fill: "#f58518", stroke: "#8a4a0d", opacity: 0.35, dashed: true };
pub const VALID: Style = Style { fill: "#54a24b", stroke: "#2c5a27", opacity: 0.6, dashed: false };
pub const INVALID: Style = Style { fill: "#e45756", stroke: "#7d2a29", opacity: 0.6, dashed: false };

fn clipped(p: &Point) -> bool {
    !p.is_finite()
}

fn path(frame: &Frame, pts: &[&Point]) -> String {
    let mut d = String::new();
    for (k, p) in pts.iter().enumerate() {
        let (x, y) = frame.project(p);
        let _ = write!(d, "{}{x:.2},{y:.2} ", if k == 0 { "M" } else { "L" });
    }
    d.trim_end().to_string()
}

fn region(out: &mut String, frame: &Frame, s: &StaircaseInterval, style: Style) {
    let dash = if style.dashed { " stroke-dasharray=\"6 3\"" } else { "" };
    let (lower, upper) = s.boundary_vertices();
    if s.vertex_count() == 2 {
        let (x, y) = frame.project(&lower[0]);
        let _ = writeln!(out, r#"  <circle cx="{x:.2}" cy="{y:.2}" r="3" fill="{}" stroke="{}"/>"#, style.stroke, style.stroke);
        return;
    }
    let outline: Vec<&Point> = lower.iter().chain(upper.iter().rev().skip(1)).collect();
    let _ = writeln!(
        out,
        r#"  <path d="{} Z" fill="{}" fill-opacity="{}" stroke="{}" stroke-width="1.5"{dash}/>"#,
        path(frame, &outline),
        style.fill,
        style.opacity,
        style.stroke
    );
    for chain in [lower, upper] {
        for e in chain.windows(2) {
            let (a, b) = (&e[0], &e[1]);
            let tip = match (clipped(a), clipped(b)) {
                (false, true) => Some((a, b)),
                (true, false) => Some((b, a)),
                _ => None,
            };
            if let Some((from, to)) = tip {
                let (x0, y0) = frame.project(from);
                let (x1, y1) = frame.project(to);
                let _ = writeln!(
                    out,
                    r#"  <line x1="{x0:.2}" y1="{y0:.2}" x2="{x1:.2}" y2="{y1:.2}" stroke="{}" stroke-width="1.5" marker-end="url(#arrow)"/>"#,
                    style.stroke
                );
            }
        }
    }
}

/// A standalone SVG document drawing each region in its style, in order.
pub fn svg(frame: &Frame, layers: &[(&StaircaseInterval, Style)]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    out.push_str(
        "  <defs>\n    <marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" markerWidth=\"7\" markerHeight=\"7\" orient=\"auto-start-reverse\">\n      <path d=\"M0,0 L10,5 L0,10 z\"/>\n    </marker>\n  </defs>\n",
    );
    let (fx0, fy1) = frame.place(frame.x0, frame.y1);
    let (fx1, fy0) = frame.place(frame.x1, frame.y0);
    let _ = writeln!(
        out,
        r##"  <rect x="{fx0:.2}" y="{fy1:.2}" width="{:.2}" height="{:.2}" fill="none" stroke="#999" stroke-width="0.5"/>"##,
        fx1 - fx0,
        fy0 - fy1
    );
    for (s, style) in layers {
        region(&mut out, frame, s, *style);
    }
    let _ = writeln!(
        out,
        r##"  <text x="{fx0:.2}" y="{:.2}" font-size="10" fill="#666">({}, {})</text>"##,
        fy0 + 12.0,
        frame.x0,
        frame.y0
    );
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rect(x0: i64, y0: i64, x1: ExtendedScalar, y1: ExtendedScalar) -> StaircaseInterval {
        StaircaseInterval::rectangle(x0.into(), y0.into(), x1, y1).unwrap()
    }

    #[test]
    fn frame_fits_finite_coordinates() {
        let f = Frame::fit([&rect(0, 0, 2.into(), 2.into())]);
        assert_eq!(f, Frame { x0: -1.0, y0: -1.0, x1: 3.0, y1: 3.0 });
        assert!(Frame::parse("0,0,1").is_err());
        assert!(Frame::parse("0,0,-1,1").is_err());
        assert_eq!(Frame::parse("0, 0, 4, 4").unwrap().x1, 4.0);
    }

    #[test]
    fn unbounded_edges_get_arrows() {
        let q = rect(0, 0, ExtendedScalar::PosInf, ExtendedScalar::PosInf);
        let frame = Frame { x0: -1.0, y0: -1.0, x1: 5.0, y1: 5.0 };
        let out = svg(&frame, &[(&q, FIRST)]);
        assert_eq!(out.matches("marker-end").count(), 2);
        assert!(out.starts_with("<svg"));
        let sq = rect(0, 0, 2.into(), 2.into());
        assert_eq!(svg(&frame, &[(&sq, FIRST)]).matches("marker-end").count(), 0);
    }
}
