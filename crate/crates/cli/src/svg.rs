//! Minimal self-contained SVG line plots with a logarithmic y axis.

use std::fmt::Write;

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 480.0;
const LEFT: f64 = 90.0;
const RIGHT: f64 = 200.0;
const TOP: f64 = 50.0;
const BOTTOM: f64 = 60.0;
const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub label: String,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    /// Symmetric error half-widths drawn as whiskers.
    pub whiskers: Option<Vec<f64>>,
    pub dashed: bool,
    /// Index into the palette.
    pub color: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Plot {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub series: Vec<Series>,
}

struct Frame {
    x0: f64,
    x1: f64,
    d0: f64,
    d1: f64,
}

impl Frame {
    fn px(&self, x: f64) -> f64 {
        let span = if self.x1 > self.x0 { self.x1 - self.x0 } else { 1.0 };
        LEFT + (x - self.x0) / span * (WIDTH - LEFT - RIGHT)
    }

    fn py(&self, y: f64) -> f64 {
        let d = y.max(10f64.powf(self.d0)).log10();
        TOP + (self.d1 - d) / (self.d1 - self.d0) * (HEIGHT - TOP - BOTTOM)
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn tick_label(x: f64) -> String {
    if x.fract() == 0.0 && x.abs() < 1e6 {
        format!("{x:.0}")
    } else {
        format!("{x}")
    }
}

impl Plot {
    fn frame(&self) -> Frame {
        let xs = self.series.iter().flat_map(|s| s.x.iter().copied());
        let (x0, x1) = xs.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), x| (a.min(x), b.max(x)));
        let mut ys = Vec::new();
        for s in &self.series {
            for (k, &y) in s.y.iter().enumerate() {
                let w = s.whiskers.as_ref().map_or(0.0, |w| w[k]);
                ys.extend([y, y + w, y - w]);
            }
        }
        let (lo, hi) = ys
            .into_iter()
            .filter(|y| *y > 0.0 && y.is_finite())
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), y| (a.min(y), b.max(y)));
        let (d0, mut d1) = if lo.is_finite() { (lo.log10().floor(), hi.log10().ceil()) } else { (0.0, 1.0) };
        if d1 <= d0 {
            d1 = d0 + 1.0;
        }
        let (x0, x1) = if x0.is_finite() { (x0, x1) } else { (0.0, 1.0) };
        Frame { x0, x1, d0, d1 }
    }

    pub fn to_svg(&self) -> String {
        let f = self.frame();
        let mut out = String::new();
        let plot_w = WIDTH - LEFT - RIGHT;
        let plot_h = HEIGHT - TOP - BOTTOM;
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
        );
        let _ = writeln!(out, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
        let _ = writeln!(
            out,
            r#"<text x="{}" y="28" text-anchor="middle" font-size="15">{}</text>"#,
            LEFT + plot_w / 2.0,
            escape(&self.title)
        );
        let _ = writeln!(
            out,
            r#"<rect x="{LEFT}" y="{TOP}" width="{plot_w}" height="{plot_h}" fill="none" stroke="black"/>"#
        );

        // y decades
        let decades = (f.d1 - f.d0) as i32;
        let step = (decades / 8).max(1);
        let mut d = f.d0 as i32;
        while d <= f.d1 as i32 {
            let y = f.py(10f64.powi(d));
            let _ = writeln!(
                out,
                r##"<line x1="{LEFT}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="#ddd"/><text x="{:.2}" y="{:.2}" text-anchor="end">1e{d}</text>"##,
                LEFT + plot_w,
                LEFT - 6.0,
                y + 4.0
            );
            d += step;
        }

        // x ticks at the data points when there are few of them
        let mut xs: Vec<f64> = self.series.iter().flat_map(|s| s.x.iter().copied()).collect();
        xs.sort_by(f64::total_cmp);
        xs.dedup();
        if xs.len() > 12 {
            xs = (0..=5).map(|k| f.x0 + (f.x1 - f.x0) * k as f64 / 5.0).collect();
        }
        for x in xs {
            let px = f.px(x);
            let _ = writeln!(
                out,
                r#"<line x1="{px:.2}" y1="{:.2}" x2="{px:.2}" y2="{:.2}" stroke="black"/><text x="{px:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
                TOP + plot_h,
                TOP + plot_h + 5.0,
                TOP + plot_h + 20.0,
                tick_label(x)
            );
        }
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            LEFT + plot_w / 2.0,
            HEIGHT - 15.0,
            escape(&self.x_label)
        );
        let _ = writeln!(
            out,
            r#"<text transform="translate(22 {:.2}) rotate(-90)" text-anchor="middle">{}</text>"#,
            TOP + plot_h / 2.0,
            escape(&self.y_label)
        );

        for (k, s) in self.series.iter().enumerate() {
            let color = PALETTE[s.color % PALETTE.len()];
            let dash = if s.dashed { r#" stroke-dasharray="6 4""# } else { "" };
            let points: Vec<String> =
                s.x.iter().zip(&s.y).map(|(&x, &y)| format!("{:.2},{:.2}", f.px(x), f.py(y))).collect();
            let _ = writeln!(
                out,
                r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="1.8"{dash}/>"#,
                points.join(" ")
            );
            if !s.dashed {
                for (&x, &y) in s.x.iter().zip(&s.y) {
                    let _ = writeln!(
                        out,
                        r#"<circle cx="{:.2}" cy="{:.2}" r="3" fill="{color}"/>"#,
                        f.px(x),
                        f.py(y)
                    );
                }
            }
            if let Some(w) = &s.whiskers {
                for ((&x, &y), &h) in s.x.iter().zip(&s.y).zip(w) {
                    let px = f.px(x);
                    let (top, bot) = (f.py(y + h), f.py(y - h));
                    let _ = writeln!(
                        out,
                        r#"<path d="M{px:.2} {top:.2}V{bot:.2}M{:.2} {top:.2}H{:.2}M{:.2} {bot:.2}H{:.2}" stroke="{color}"/>"#,
                        px - 4.0,
                        px + 4.0,
                        px - 4.0,
                        px + 4.0
                    );
                }
            }
            let ly = TOP + 10.0 + 18.0 * k as f64;
            let lx = WIDTH - RIGHT + 12.0;
            let _ = writeln!(
                out,
                r#"<line x1="{lx}" y1="{ly}" x2="{}" y2="{ly}" stroke="{color}" stroke-width="1.8"{dash}/><text x="{}" y="{}">{}</text>"#,
                lx + 24.0,
                lx + 30.0,
                ly + 4.0,
                escape(&s.label)
            );
        }
        out.push_str("</svg>\n");
        out
    }
}
