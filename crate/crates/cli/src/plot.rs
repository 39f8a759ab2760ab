//! Minimal SVG line charts of sweep CSV files.

use std::fmt::Write as _;
use std::io::Read;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 600.0;
const MARGIN_LEFT: f64 = 70.0;
const MARGIN_RIGHT: f64 = 150.0;
const MARGIN_TOP: f64 = 30.0;
const MARGIN_BOTTOM: f64 = 60.0;
const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"];

#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub name: String,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Chart {
    pub x: Vec<f64>,
    pub series: Vec<Series>,
}

fn is_plotted(name: &str) -> bool {
    matches!(name, "gl" | "lb" | "ub") || name.starts_with("lower_K") || name.starts_with("upper_K")
}

impl Chart {
    /// Reads the `Y` column as abscissa and every bound column as a series.
    pub fn from_csv<R: Read>(input: R) -> Result<Self, String> {
        let mut rdr = csv::Reader::from_reader(input);
        let header = rdr.headers().map_err(|e| e.to_string())?.clone();
        let x_col = header.iter().position(|h| h == "Y").ok_or("missing Y column")?;
        let cols: Vec<usize> = (0..header.len()).filter(|&i| is_plotted(&header[i])).collect();
        if cols.is_empty() {
            return Err("no bound columns to plot".into());
        }
        let mut chart = Chart {
            x: Vec::new(),
            series: cols.iter().map(|&i| Series { name: header[i].to_string(), values: Vec::new() }).collect(),
        };
        for (line, rec) in rdr.records().enumerate() {
            let rec = rec.map_err(|e| e.to_string())?;
            let num = |i: usize| {
                rec.get(i)
                    .and_then(|s| s.parse::<f64>().ok())
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| format!("row {}: bad value in column {}", line + 1, &header[i]))
            };
            chart.x.push(num(x_col)?);
            for (s, &i) in chart.series.iter_mut().zip(&cols) {
                s.values.push(num(i)?);
            }
        }
        if chart.x.is_empty() {
            return Err("no data rows".into());
        }
        Ok(chart)
    }

    pub fn to_svg(&self) -> String {
        let (x_lo, x_hi) = padded_range(self.x.iter().copied());
        let (y_lo, y_hi) = padded_range(self.series.iter().flat_map(|s| s.values.iter().copied()));
        let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
        let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
        let sx = |x: f64| MARGIN_LEFT + (x - x_lo) / (x_hi - x_lo) * plot_w;
        let sy = |y: f64| MARGIN_TOP + (1.0 - (y - y_lo) / (y_hi - y_lo)) * plot_h;

        let mut svg = String::new();
        let _ = writeln!(
            svg,
            r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {WIDTH} {HEIGHT}" width="{WIDTH}" height="{HEIGHT}" font-family="sans-serif" font-size="12">"#
        );
        let _ = writeln!(svg, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
        // axes
        let (x0, y0) = (MARGIN_LEFT, MARGIN_TOP + plot_h);
        let _ = writeln!(
            svg,
            r#"<path d="M{x0},{MARGIN_TOP} L{x0},{y0} L{},{y0}" fill="none" stroke="black"/>"#,
            x0 + plot_w
        );
        for i in 0..=5 {
            let t = i as f64 / 5.0;
            let xv = x_lo + t * (x_hi - x_lo);
            let px = sx(xv);
            let _ = writeln!(svg, r#"<line x1="{px:.2}" y1="{y0}" x2="{px:.2}" y2="{}" stroke="black"/>"#, y0 + 5.0);
            let _ = writeln!(svg, r#"<text x="{px:.2}" y="{}" text-anchor="middle">{}</text>"#, y0 + 20.0, tick(xv));
            let yv = y_lo + t * (y_hi - y_lo);
            let py = sy(yv);
            let _ = writeln!(svg, r#"<line x1="{}" y1="{py:.2}" x2="{x0}" y2="{py:.2}" stroke="black"/>"#, x0 - 5.0);
            let _ =
                writeln!(svg, r#"<text x="{}" y="{:.2}" text-anchor="end">{}</text>"#, x0 - 8.0, py + 4.0, tick(yv));
        }
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{}" text-anchor="middle">Y</text>"#,
            MARGIN_LEFT + plot_w / 2.0,
            HEIGHT - 15.0
        );
        let _ = writeln!(
            svg,
            r#"<text x="18" y="{:.2}" text-anchor="middle" transform="rotate(-90 18 {:.2})">value to X</text>"#,
            MARGIN_TOP + plot_h / 2.0,
            MARGIN_TOP + plot_h / 2.0
        );

        for (i, s) in self.series.iter().enumerate() {
            let color = PALETTE[i % PALETTE.len()];
            // reuse colors with dashes once the palette runs out
            let dash = if i >= PALETTE.len() { r#" stroke-dasharray="6 3""# } else { "" };
            let points: Vec<String> =
                self.x.iter().zip(&s.values).map(|(&x, &y)| format!("{:.2},{:.2}", sx(x), sy(y))).collect();
            let _ = writeln!(
                svg,
                r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="1.5"{dash}><title>{}</title></polyline>"#,
                points.join(" "),
                s.name
            );
            let ly = MARGIN_TOP + 10.0 + 20.0 * i as f64;
            let lx = WIDTH - MARGIN_RIGHT + 15.0;
            let _ = writeln!(
                svg,
                r#"<line x1="{lx}" y1="{ly}" x2="{}" y2="{ly}" stroke="{color}" stroke-width="2"{dash}/>"#,
                lx + 25.0
            );
            let _ = writeln!(svg, r#"<text x="{}" y="{}">{}</text>"#, lx + 32.0, ly + 4.0, s.name);
        }
        svg.push_str("</svg>\n");
        svg
    }
}

fn padded_range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
    if hi - lo < 1e-12 {
        (lo - 0.5, hi + 0.5)
    } else {
        let pad = 0.05 * (hi - lo);
        (lo - pad, hi + pad)
    }
}

fn tick(v: f64) -> String {
    format!("{:.3}", v).trim_end_matches('0').trim_end_matches('.').to_string()
}
