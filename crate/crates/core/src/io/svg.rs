use std::fmt::Write;

use crate::geom::Point;

/// Axis-aligned bounding box of plotted data.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bounds {
    pub min_x: f64,
    pub min_y: f64,
    pub max_x: f64,
    pub max_y: f64,
}

impl Bounds {
    fn empty() -> Self {
        Bounds { min_x: f64::INFINITY, min_y: f64::INFINITY, max_x: f64::NEG_INFINITY, max_y: f64::NEG_INFINITY }
    }

    fn include(&mut self, p: &Point<f64>) {
        if p.x.is_finite() && p.y.is_finite() {
            self.min_x = self.min_x.min(p.x);
            self.max_x = self.max_x.max(p.x);
            self.min_y = self.min_y.min(p.y);
            self.max_y = self.max_y.max(p.y);
        }
    }

    /// The box grown by 5% of its extent on every side; degenerate extents
    /// get a unit margin.
    pub fn with_margin(&self) -> Self {
        if !self.min_x.is_finite() {
            return Bounds { min_x: -1.0, min_y: -1.0, max_x: 1.0, max_y: 1.0 };
        }
        let pad = |lo: f64, hi: f64| if hi > lo { 0.05 * (hi - lo) } else { 1.0 };
        let (px, py) = (pad(self.min_x, self.max_x), pad(self.min_y, self.max_y));
        Bounds { min_x: self.min_x - px, min_y: self.min_y - py, max_x: self.max_x + px, max_y: self.max_y + py }
    }
}

enum Item {
    Path { points: Vec<Point<f64>>, closed: bool, color: String, dashed: bool },
    Dot { at: Point<f64>, color: String },
}

/// Minimal SVG figure in data coordinates, `y` pointing up.
#[derive(Default)]
pub struct Svg {
    items: Vec<Item>,
}

impl Svg {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn polyline(&mut self, points: &[Point<f64>], closed: bool, color: &str) -> &mut Self {
        self.items.push(Item::Path { points: points.to_vec(), closed, color: color.into(), dashed: false });
        self
    }

    pub fn dashed(&mut self, points: &[Point<f64>], color: &str) -> &mut Self {
        self.items.push(Item::Path { points: points.to_vec(), closed: false, color: color.into(), dashed: true });
        self
    }

    /// A step plot through `(x_k, v_k)`, holding each value until the next
    /// abscissa.
    pub fn steps(&mut self, xs: &[f64], values: &[f64], color: &str) -> &mut Self {
        let mut pts = Vec::new();
        for (i, (&x, &v)) in xs.iter().zip(values).enumerate() {
            if i > 0 {
                pts.push(Point::new(x, values[i - 1]));
            }
            pts.push(Point::new(x, v));
        }
        self.polyline(&pts, false, color)
    }

    pub fn dot(&mut self, at: Point<f64>, color: &str) -> &mut Self {
        self.items.push(Item::Dot { at, color: color.into() });
        self
    }

    pub fn bounds(&self) -> Bounds {
        let mut b = Bounds::empty();
        for item in &self.items {
            match item {
                Item::Path { points, .. } => points.iter().for_each(|p| b.include(p)),
                Item::Dot { at, .. } => b.include(at),
            }
        }
        b
    }

    pub fn render(&self) -> String {
        let view = self.bounds().with_margin();
        let (w, h) = (view.max_x - view.min_x, view.max_y - view.min_y);
        let stroke = 0.004 * w.max(h);
        let mut out = String::new();
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}" width="800" height="{}">"#,
            view.min_x,
            0.0 - view.max_y,
            w,
            h,
            (800.0 * h / w).round().max(1.0)
        );
        for item in &self.items {
            match item {
                Item::Path { points, closed, color, dashed } => {
                    let coords: Vec<String> = points.iter().map(|p| format!("{},{}", p.x, 0.0 - p.y)).collect();
                    let tag = if *closed { "polygon" } else { "polyline" };
                    let dash = if *dashed { format!(r#" stroke-dasharray="{} {}""#, 3.0 * stroke, 2.0 * stroke) } else { String::new() };
                    let _ = writeln!(
                        out,
                        r#"<{tag} points="{}" fill="none" stroke="{color}" stroke-width="{stroke}"{dash}/>"#,
                        coords.join(" ")
                    );
                }
                Item::Dot { at, color } => {
                    let _ = writeln!(out, r#"<circle cx="{}" cy="{}" r="{}" fill="{color}"/>"#, at.x, 0.0 - at.y, 2.0 * stroke);
                }
            }
        }
        out.push_str("</svg>\n");
        out
    }
}
