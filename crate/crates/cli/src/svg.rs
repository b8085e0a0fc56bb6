//! Minimal self-contained SVG 1.1 line plots: axes, ticks, legend, optional
//! slope -1/2 reference line. No external assets, deterministic output.

use std::fmt::Write as _;

use crate::error::{CliError, CliResult};

pub struct Series {
    pub name: String,
    pub points: Vec<(f64, f64)>,
}

pub struct PlotOptions {
    pub x_label: String,
    pub y_label: String,
    pub title: String,
    pub loglog: bool,
    /// Draw a dashed slope -1/2 guide through the first point of the first
    /// series.
    pub slope_ref: bool,
}

const WIDTH: f64 = 860.0;
const HEIGHT: f64 = 560.0;
const MARGIN_L: f64 = 80.0;
const MARGIN_R: f64 = 190.0;
const MARGIN_T: f64 = 50.0;
const MARGIN_B: f64 = 65.0;
const PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
];

fn nice_step(span: f64) -> f64 {
    let raw = span / 5.0;
    let mag = 10f64.powf(raw.abs().log10().floor());
    let norm = raw / mag;
    let nice = if norm < 1.5 {
        1.0
    } else if norm < 3.5 {
        2.0
    } else if norm < 7.5 {
        5.0
    } else {
        10.0
    };
    nice * mag
}

fn ticks(lo: f64, hi: f64) -> Vec<f64> {
    if !(hi > lo) {
        return vec![lo];
    }
    let step = nice_step(hi - lo);
    let mut t = (lo / step).ceil() * step;
    let mut out = Vec::new();
    while t <= hi + 1e-9 * step {
        out.push(t);
        t += step;
    }
    out
}

fn fmt_tick(v: f64, loglog: bool) -> String {
    let shown = if loglog { 10f64.powf(v) } else { v };
    if shown != 0.0 && (shown.abs() >= 1e4 || shown.abs() < 1e-3) {
        format!("{shown:.1e}")
    } else {
        let s = format!("{shown:.4}");
        let s = s.trim_end_matches('0').trim_end_matches('.');
        if s.is_empty() { "0".to_string() } else { s.to_string() }
    }
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Renders the series to an SVG document.
pub fn render(series: &[Series], opts: &PlotOptions) -> CliResult<String> {
    let transformed: Vec<(String, Vec<(f64, f64)>)> = series
        .iter()
        .map(|s| {
            let pts: Vec<(f64, f64)> = s
                .points
                .iter()
                .filter(|(x, y)| {
                    if opts.loglog {
                        *x > 0.0 && *y > 0.0
                    } else {
                        x.is_finite() && y.is_finite()
                    }
                })
                .map(|&(x, y)| {
                    if opts.loglog {
                        (x.log10(), y.log10())
                    } else {
                        (x, y)
                    }
                })
                .collect();
            (s.name.clone(), pts)
        })
        .collect();

    let all: Vec<(f64, f64)> = transformed.iter().flat_map(|(_, p)| p.iter().copied()).collect();
    if all.is_empty() {
        return Err(CliError::runtime("no plottable data points"));
    }
    let (mut x_lo, mut x_hi) = all
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), (x, _)| {
            (lo.min(*x), hi.max(*x))
        });
    let (mut y_lo, mut y_hi) = all
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), (_, y)| {
            (lo.min(*y), hi.max(*y))
        });
    // Degenerate ranges (single point) get symmetric padding.
    if x_hi - x_lo < 1e-12 {
        x_lo -= 1.0;
        x_hi += 1.0;
    }
    if y_hi - y_lo < 1e-12 {
        y_lo -= 1.0;
        y_hi += 1.0;
    }
    let pad_x = 0.04 * (x_hi - x_lo);
    let pad_y = 0.06 * (y_hi - y_lo);
    x_lo -= pad_x;
    x_hi += pad_x;
    y_lo -= pad_y;
    y_hi += pad_y;

    let plot_w = WIDTH - MARGIN_L - MARGIN_R;
    let plot_h = HEIGHT - MARGIN_T - MARGIN_B;
    let sx = move |x: f64| MARGIN_L + (x - x_lo) / (x_hi - x_lo) * plot_w;
    let sy = move |y: f64| MARGIN_T + plot_h - (y - y_lo) / (y_hi - y_lo) * plot_h;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">"
    );
    let _ = writeln!(svg, "<rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>");
    let _ = writeln!(
        svg,
        "<text x=\"{:.1}\" y=\"28\" font-family=\"sans-serif\" font-size=\"17\" text-anchor=\"middle\">{}</text>",
        MARGIN_L + plot_w / 2.0,
        xml_escape(&opts.title)
    );

    // Gridlines and ticks.
    for t in ticks(x_lo, x_hi) {
        let x = sx(t);
        let _ = writeln!(
            svg,
            "<line x1=\"{x:.2}\" y1=\"{:.2}\" x2=\"{x:.2}\" y2=\"{:.2}\" stroke=\"#dddddd\" stroke-width=\"1\"/>",
            MARGIN_T,
            MARGIN_T + plot_h
        );
        let _ = writeln!(
            svg,
            "<text x=\"{x:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">{}</text>",
            MARGIN_T + plot_h + 20.0,
            fmt_tick(t, opts.loglog)
        );
    }
    for t in ticks(y_lo, y_hi) {
        let y = sy(t);
        let _ = writeln!(
            svg,
            "<line x1=\"{:.2}\" y1=\"{y:.2}\" x2=\"{:.2}\" y2=\"{y:.2}\" stroke=\"#dddddd\" stroke-width=\"1\"/>",
            MARGIN_L,
            MARGIN_L + plot_w
        );
        let _ = writeln!(
            svg,
            "<text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"end\">{}</text>",
            MARGIN_L - 8.0,
            y + 4.0,
            fmt_tick(t, opts.loglog)
        );
    }

    // Axes frame.
    let _ = writeln!(
        svg,
        "<rect x=\"{MARGIN_L}\" y=\"{MARGIN_T}\" width=\"{plot_w}\" height=\"{plot_h}\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>"
    );
    let _ = writeln!(
        svg,
        "<text x=\"{:.1}\" y=\"{:.1}\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\">{}</text>",
        MARGIN_L + plot_w / 2.0,
        HEIGHT - 14.0,
        xml_escape(&opts.x_label)
    );
    let _ = writeln!(
        svg,
        "<text x=\"20\" y=\"{:.1}\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 20 {:.1})\">{}</text>",
        MARGIN_T + plot_h / 2.0,
        MARGIN_T + plot_h / 2.0,
        xml_escape(&opts.y_label)
    );

    // Slope -1/2 reference through the first point of the first series.
    if opts.slope_ref {
        if let Some((name, pts)) = transformed.iter().find(|(_, p)| !p.is_empty()) {
            let _ = name;
            let (x0, y0) = pts[0];
            let mut path = String::new();
            let steps = 64;
            for i in 0..=steps {
                let x = x_lo + (x_hi - x_lo) * i as f64 / steps as f64;
                let y = if opts.loglog {
                    y0 - 0.5 * (x - x0)
                } else {
                    // y = y0 * (x/x0)^(-1/2) needs positive coordinates.
                    if x <= 0.0 || x0 <= 0.0 {
                        continue;
                    }
                    y0 * (x / x0).powf(-0.5)
                };
                let cmd = if path.is_empty() { 'M' } else { 'L' };
                let _ = write!(path, "{cmd}{:.2} {:.2} ", sx(x), sy(y));
            }
            let _ = writeln!(
                svg,
                "<path d=\"{}\" fill=\"none\" stroke=\"#888888\" stroke-width=\"1.5\" stroke-dasharray=\"6 4\"/>",
                path.trim_end()
            );
            let _ = writeln!(
                svg,
                "<text x=\"{:.1}\" y=\"{:.1}\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#666666\">slope -1/2</text>",
                MARGIN_L + plot_w + 10.0,
                MARGIN_T + 20.0 * (transformed.len() as f64 + 1.5)
            );
        }
    }

    // Series.
    for (idx, (name, pts)) in transformed.iter().enumerate() {
        let color = PALETTE[idx % PALETTE.len()];
        if pts.len() > 1 {
            let mut path = String::new();
            for (i, (x, y)) in pts.iter().enumerate() {
                let cmd = if i == 0 { 'M' } else { 'L' };
                let _ = write!(path, "{cmd}{:.2} {:.2} ", sx(*x), sy(*y));
            }
            let _ = writeln!(
                svg,
                "<path d=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"2\"/>",
                path.trim_end()
            );
        }
        for (x, y) in pts {
            let _ = writeln!(
                svg,
                "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"3\" fill=\"{color}\"/>",
                sx(*x),
                sy(*y)
            );
        }
        // Legend entry.
        let ly = MARGIN_T + 20.0 * (idx as f64 + 1.0);
        let _ = writeln!(
            svg,
            "<line x1=\"{:.1}\" y1=\"{ly:.1}\" x2=\"{:.1}\" y2=\"{ly:.1}\" stroke=\"{color}\" stroke-width=\"2\"/>",
            MARGIN_L + plot_w + 10.0,
            MARGIN_L + plot_w + 34.0
        );
        let _ = writeln!(
            svg,
            "<text x=\"{:.1}\" y=\"{:.1}\" font-family=\"sans-serif\" font-size=\"12\">{}</text>",
            MARGIN_L + plot_w + 40.0,
            ly + 4.0,
            xml_escape(name)
        );
    }

    svg.push_str("</svg>\n");
    Ok(svg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts(loglog: bool) -> PlotOptions {
        PlotOptions {
            x_label: "n".into(),
            y_label: "value".into(),
            title: "test".into(),
            loglog,
            slope_ref: true,
        }
    }

    #[test]
    fn renders_basic_plot() {
        let s = Series {
            name: "tv".into(),
            points: vec![(256.0, 0.1), (1024.0, 0.05), (4096.0, 0.025)],
        };
        let svg = render(&[s], &opts(true)).unwrap();
        assert!(svg.starts_with("<svg"));
        assert!(svg.contains("</svg>"));
        assert!(svg.contains("slope -1/2"));
    }

    #[test]
    fn single_point_is_valid() {
        let s = Series {
            name: "one".into(),
            points: vec![(1.0, 2.0)],
        };
        let svg = render(&[s], &opts(false)).unwrap();
        assert!(svg.contains("circle"));
    }

    #[test]
    fn empty_data_is_an_error() {
        let s = Series {
            name: "none".into(),
            points: vec![],
        };
        assert!(render(&[s], &opts(false)).is_err());
        // All points invalid under loglog is also empty.
        let s = Series {
            name: "neg".into(),
            points: vec![(-1.0, 1.0)],
        };
        assert!(render(&[s], &opts(true)).is_err());
    }

    #[test]
    fn deterministic_output() {
        let mk = || Series {
            name: "tv".into(),
            points: vec![(256.0, 0.1), (1024.0, 0.05)],
        };
        assert_eq!(
            render(&[mk()], &opts(true)).unwrap(),
            render(&[mk()], &opts(true)).unwrap()
        );
    }
}
