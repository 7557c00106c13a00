//! Minimal dependency-free SVG emission for tropical complexes, amoeba
//! scatters, and fibration base pictures.

use num_traits::ToPrimitive;

use crate::tropical::{AmoebaSample, EdgeGeom, TropicalComplex};

/// A fixed-size canvas mapping a world window onto SVG coordinates.
pub struct Canvas {
    width: f64,
    height: f64,
    window: (f64, f64, f64, f64), // (x_min, x_max, y_min, y_max)
    body: String,
}

impl Canvas {
    pub fn new(width: f64, height: f64, window: (f64, f64, f64, f64)) -> Self {
        Canvas { width, height, window, body: String::new() }
    }

    fn map(&self, x: f64, y: f64) -> (f64, f64) {
        let (x0, x1, y0, y1) = self.window;
        let sx = (x - x0) / (x1 - x0) * self.width;
        let sy = self.height - (y - y0) / (y1 - y0) * self.height;
        (sx, sy)
    }

    pub fn line(&mut self, a: (f64, f64), b: (f64, f64), color: &str, width: f64) {
        let (x1, y1) = self.map(a.0, a.1);
        let (x2, y2) = self.map(b.0, b.1);
        self.body.push_str(&format!(
            "<line x1=\"{x1:.2}\" y1=\"{y1:.2}\" x2=\"{x2:.2}\" y2=\"{y2:.2}\" stroke=\"{color}\" stroke-width=\"{width}\"/>\n"
        ));
    }

    pub fn dot(&mut self, p: (f64, f64), r: f64, color: &str) {
        let (cx, cy) = self.map(p.0, p.1);
        self.body.push_str(&format!(
            "<circle cx=\"{cx:.2}\" cy=\"{cy:.2}\" r=\"{r}\" fill=\"{color}\"/>\n"
        ));
    }

    pub fn text(&mut self, p: (f64, f64), s: &str) {
        let (x, y) = self.map(p.0, p.1);
        self.body.push_str(&format!(
            "<text x=\"{x:.2}\" y=\"{y:.2}\" font-size=\"10\" fill=\"#333\">{s}</text>\n"
        ));
    }

    pub fn finish(self) -> String {
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n{}</svg>\n",
            self.width, self.height, self.width, self.height, self.body
        )
    }
}

fn qs_to_f64(v: &[crate::Q]) -> Vec<f64> {
    v.iter().map(|x| x.to_f64().unwrap_or(0.0)).collect()
}

/// Render a tropical complex with chamber labels, optionally overlaying an
/// amoeba scatter.
pub fn render_tropical(trop: &TropicalComplex, amoeba: Option<&AmoebaSample>) -> String {
    // World window from the vertex/witness extent, padded.
    let mut xs = vec![-1.0, 1.0];
    let mut ys = vec![-1.0, 1.0];
    let mut note = |p: &[f64]| {
        xs.push(p[0]);
        if p.len() > 1 {
            ys.push(p[1]);
        }
    };
    for v in &trop.vertices {
        note(&qs_to_f64(v));
    }
    for c in &trop.chambers {
        note(&qs_to_f64(&c.witness));
    }
    if let Some(am) = amoeba {
        for p in &am.points {
            note(p);
        }
    }
    let pad = 1.0;
    let (x0, x1) = (
        xs.iter().cloned().fold(f64::INFINITY, f64::min) - pad,
        xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max) + pad,
    );
    let (y0, y1) = (
        ys.iter().cloned().fold(f64::INFINITY, f64::min) - pad,
        ys.iter().cloned().fold(f64::NEG_INFINITY, f64::max) + pad,
    );
    let ray_len = (x1 - x0) + (y1 - y0);
    let mut c = Canvas::new(640.0, 640.0, (x0, x1, y0, y1));
    let lift = |p: &[f64]| -> (f64, f64) {
        if p.len() == 1 {
            (p[0], 0.0)
        } else {
            (p[0], p[1])
        }
    };
    for e in &trop.edges {
        match &e.geom {
            EdgeGeom::Segment { a, b } => {
                c.line(lift(&qs_to_f64(a)), lift(&qs_to_f64(b)), "#1f77b4", 2.0)
            }
            EdgeGeom::Ray { base, dir } => {
                let b = qs_to_f64(base);
                let d = qs_to_f64(dir);
                let n = (d[0] * d[0] + d[1] * d[1]).sqrt().max(1e-9);
                let end = [b[0] + d[0] / n * ray_len, b[1] + d[1] / n * ray_len];
                c.line(lift(&b), lift(&end), "#1f77b4", 2.0);
            }
            EdgeGeom::Line { base, dir } => {
                let b = qs_to_f64(base);
                let d = qs_to_f64(dir);
                let n = (d[0] * d[0] + d[1] * d[1]).sqrt().max(1e-9);
                let p1 = [b[0] - d[0] / n * ray_len, b[1] - d[1] / n * ray_len];
                let p2 = [b[0] + d[0] / n * ray_len, b[1] + d[1] / n * ray_len];
                c.line(lift(&p1), lift(&p2), "#1f77b4", 2.0);
            }
        }
    }
    for v in &trop.vertices {
        c.dot(lift(&qs_to_f64(v)), 4.0, "#d62728");
    }
    for ch in &trop.chambers {
        let w = qs_to_f64(&ch.witness);
        c.text(lift(&w), &format!("a{}", ch.label));
    }
    if let Some(am) = amoeba {
        for p in &am.points {
            c.dot(lift(p), 1.5, "#2ca02c");
        }
    }
    c.finish()
}

/// Render a fibration base: walls as vertical lines, discriminant dots, and
/// singular rays (by argument) on a disc.
pub fn render_base(walls: &[f64], dots: &[(f64, f64)], ray_args: &[f64]) -> String {
    let mut c = Canvas::new(640.0, 640.0, (-3.2, 3.2, -3.2, 3.2));
    for &w in walls {
        c.line((w, -3.0), (w, 3.0), "#9467bd", 1.5);
    }
    for &arg in ray_args {
        c.line((0.0, 0.0), (3.0 * arg.cos(), 3.0 * arg.sin()), "#ff7f0e", 1.5);
    }
    for &(x, y) in dots {
        c.dot((x, y), 4.0, "#d62728");
    }
    c.finish()
}
