//! Minimal SVG plots: a histogram with a density overlay, a PP scatter with
//! its diagonal, and a plain curve.

use std::fmt::Write;

const W: f64 = 640.0;
const H: f64 = 400.0;
const PAD: f64 = 40.0;

struct Frame {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Frame {
    fn new(x0: f64, x1: f64, y0: f64, y1: f64) -> Self {
        let (x1, y1) = (
            if x1 > x0 { x1 } else { x0 + 1.0 },
            if y1 > y0 { y1 } else { y0 + 1.0 },
        );
        Self { x0, x1, y0, y1 }
    }

    fn px(&self, x: f64) -> f64 {
        PAD + (x - self.x0) / (self.x1 - self.x0) * (W - 2.0 * PAD)
    }

    fn py(&self, y: f64) -> f64 {
        H - PAD - (y - self.y0) / (self.y1 - self.y0) * (H - 2.0 * PAD)
    }
}

fn open(title: &str) -> String {
    let mut s = String::new();
    let _ = write!(
        s,
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n\
         <svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{H}\" viewBox=\"0 0 {W} {H}\">\n\
         <title>{}</title>\n\
         <rect x=\"0\" y=\"0\" width=\"{W}\" height=\"{H}\" fill=\"white\"/>\n",
        escape(title)
    );
    s
}

fn axes(s: &mut String, f: &Frame) {
    let _ = writeln!(
        s,
        "<path d=\"M{:.2} {:.2} L{:.2} {:.2} L{:.2} {:.2}\" fill=\"none\" stroke=\"black\"/>",
        f.px(f.x0),
        f.py(f.y1),
        f.px(f.x0),
        f.py(f.y0),
        f.px(f.x1),
        f.py(f.y0)
    );
    for (x, anchor) in [(f.x0, "start"), (f.x1, "end")] {
        let _ = writeln!(
            s,
            "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"11\" text-anchor=\"{anchor}\">{}</text>",
            f.px(x),
            H - PAD / 3.0,
            short(x)
        );
    }
    let _ = writeln!(
        s,
        "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"11\">{}</text>",
        4.0,
        f.py(f.y1) - 4.0,
        short(f.y1)
    );
}

fn polyline(s: &mut String, f: &Frame, pts: &[(f64, f64)], color: &str) {
    let mut d = String::new();
    for (x, y) in pts.iter().filter(|(x, y)| x.is_finite() && y.is_finite()) {
        let _ = write!(d, "{:.2},{:.2} ", f.px(*x), f.py(*y));
    }
    let _ = writeln!(
        s,
        "<polyline points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\"/>",
        d.trim_end()
    );
}

fn short(v: f64) -> String {
    format!("{v:.4e}")
}

fn escape(t: &str) -> String {
    t.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

fn max_finite(vals: impl Iterator<Item = f64>) -> f64 {
    vals.filter(|v| v.is_finite()).fold(0.0, f64::max)
}

/// Bars for `densities` over `edges`, with `(x, pdf)` drawn on top.
pub fn histogram(title: &str, edges: &[f64], densities: &[f64], curve: &[(f64, f64)]) -> String {
    let top = max_finite(densities.iter().copied().chain(curve.iter().map(|p| p.1)));
    let f = Frame::new(edges[0], edges[edges.len() - 1], 0.0, top * 1.05);
    let mut s = open(title);
    for (w, d) in edges.windows(2).zip(densities) {
        let _ = writeln!(
            s,
            "<rect x=\"{:.2}\" y=\"{:.2}\" width=\"{:.2}\" height=\"{:.2}\" fill=\"#9ecae1\" stroke=\"#3182bd\"/>",
            f.px(w[0]),
            f.py(*d),
            (f.px(w[1]) - f.px(w[0])).max(0.0),
            (f.py(0.0) - f.py(*d)).max(0.0)
        );
    }
    polyline(&mut s, &f, curve, "#d62728");
    axes(&mut s, &f);
    s.push_str("</svg>\n");
    s
}

/// Scatter of `(p_exp, p_theo)` with the identity line.
pub fn pp(title: &str, points: &[(f64, f64)]) -> String {
    let f = Frame::new(0.0, 1.0, 0.0, 1.0);
    let mut s = open(title);
    polyline(&mut s, &f, &[(0.0, 0.0), (1.0, 1.0)], "#888888");
    for (a, b) in points {
        let _ = writeln!(
            s,
            "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"2\" fill=\"#3182bd\"/>",
            f.px(*a),
            f.py(*b)
        );
    }
    axes(&mut s, &f);
    s.push_str("</svg>\n");
    s
}

pub fn curve(title: &str, pts: &[(f64, f64)]) -> String {
    let xs = pts.iter().map(|p| p.0).filter(|x| x.is_finite());
    let x0 = xs.clone().fold(f64::INFINITY, f64::min);
    let x1 = xs.fold(f64::NEG_INFINITY, f64::max);
    let top = max_finite(pts.iter().map(|p| p.1));
    let f = Frame::new(x0, x1, 0.0, top * 1.05);
    let mut s = open(title);
    polyline(&mut s, &f, pts, "#d62728");
    axes(&mut s, &f);
    s.push_str("</svg>\n");
    s
}
