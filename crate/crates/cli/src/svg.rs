use std::fmt::Write as _;

use serde_json::Value;

use skelsig_core::plane::{RationalLine, RationalPoint};
use skelsig_core::skeleton::{FigureDataset, PointStatus};
use skelsig_core::Rational;

const WIDTH: f64 = 760.0;
const HEIGHT: f64 = 560.0;
const MARGIN: f64 = 56.0;

const PALETTE: [&str; 12] = [
    "#1f77b4", // L(2,1)
    "#ff7f0e", // L3
    "#2ca02c", // U4
    "#d62728", // L4
    "#9467bd", // U6
    "#8c564b", // L(5,1)
    "#f2c14e", // gaps
    "#7f7f7f", // r = 1 guide
    "#c7c7c7", // admissible
    "#17becf", // realized
    "#e377c2", // exception, realized
    "#000000", // exception, excluded
];

const LINE_NAMES: [&str; 6] = ["L(2,1)", "L3", "U4", "L4", "U6", "L(5,1)"];
const GAP_COLOR: usize = 6;
const GUIDE_COLOR: usize = 7;

fn status_color(status: PointStatus) -> &'static str {
    PALETTE[match status {
        PointStatus::Admissible => 8,
        PointStatus::Realized => 9,
        PointStatus::Gap => GAP_COLOR,
        PointStatus::ExceptionRealized => 10,
        PointStatus::ExceptionExcluded => 11,
    }]
}

fn to_f64(q: Rational) -> f64 {
    q.numer() as f64 / q.denom() as f64
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

struct Frame {
    h_max: f64,
    r_max: f64,
}

impl Frame {
    fn x(&self, h: f64) -> f64 {
        MARGIN + h / self.h_max * (WIDTH - 2.0 * MARGIN)
    }

    fn y(&self, r: f64) -> f64 {
        HEIGHT - MARGIN - r / self.r_max * (HEIGHT - 2.0 * MARGIN)
    }

    /// Two far-apart points of the line; the clip path trims them to the viewport.
    fn segment(&self, line: &RationalLine) -> ((f64, f64), (f64, f64)) {
        let (a, b, c) = line.coefficients();
        let (a, b, c) = (a as f64, b as f64, c as f64);
        if b == 0.0 {
            let h = c / a;
            ((h, -self.r_max), (h, 2.0 * self.r_max))
        } else {
            let (h0, h1) = (-self.h_max, 2.0 * self.h_max);
            ((h0, (c - a * h0) / b), (h1, (c - a * h1) / b))
        }
    }

    fn r_zero(&self, line: &RationalLine) -> f64 {
        let (a, _, c) = line.coefficients();
        c as f64 / a as f64
    }
}

/// Deterministic SVG of a figure dataset; `config` is embedded as metadata.
pub fn render(data: &FigureDataset, config: &Value) -> String {
    let frame = Frame {
        h_max: data.bounds.h_max.max(1) as f64,
        r_max: data.bounds.r_max.max(1) as f64,
    };
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(s, "<metadata>{}</metadata>", escape(&config.to_string()));
    let _ = writeln!(
        s,
        r#"<defs><clipPath id="plot"><rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}"/></clipPath></defs>"#,
        frame.x(0.0),
        frame.y(frame.r_max),
        frame.x(frame.h_max) - frame.x(0.0),
        frame.y(0.0) - frame.y(frame.r_max)
    );
    let _ = writeln!(s, r##"<rect width="100%" height="100%" fill="#ffffff"/>"##);
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" font-size="14">genus {}{}</text>"#,
        MARGIN,
        MARGIN / 2.0,
        data.sigma,
        if data.degenerate { " (no gap points)" } else { "" }
    );

    axes(&mut s, &frame);

    let _ = writeln!(s, r#"<g clip-path="url(#plot)">"#);
    for g in &data.gaps {
        let corner = to_pair(&g.corner);
        let lower = frame.r_zero(&g.boundary_lower);
        let upper = frame.r_zero(&g.boundary_upper);
        let _ = writeln!(
            s,
            r#"<polygon class="gap" data-n="{}" points="{:.2},{:.2} {:.2},{:.2} {:.2},{:.2}" fill="{}" fill-opacity="0.35" stroke="none"/>"#,
            g.lower_index,
            frame.x(corner.0),
            frame.y(corner.1),
            frame.x(lower),
            frame.y(0.0),
            frame.x(upper),
            frame.y(0.0),
            PALETTE[GAP_COLOR]
        );
    }
    let ((h0, r0), (h1, r1)) = frame.segment(&data.guide);
    let _ = writeln!(
        s,
        r#"<line class="guide" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{}" stroke-dasharray="6 4"/>"#,
        frame.x(h0),
        frame.y(r0),
        frame.x(h1),
        frame.y(r1),
        PALETTE[GUIDE_COLOR]
    );
    for named in &data.lines {
        let color = LINE_NAMES
            .iter()
            .position(|n| *n == named.name)
            .map_or("#000000", |i| PALETTE[i]);
        let ((h0, r0), (h1, r1)) = frame.segment(&named.line);
        let _ = writeln!(
            s,
            r#"<line class="boundary" data-name="{}" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{color}" stroke-width="1.5"><title>{}: {}</title></line>"#,
            escape(&named.name),
            frame.x(h0),
            frame.y(r0),
            frame.x(h1),
            frame.y(r1),
            escape(&named.name),
            named.line
        );
    }
    let _ = writeln!(s, "</g>");
    for p in &data.points {
        let _ = writeln!(
            s,
            r#"<circle cx="{:.2}" cy="{:.2}" r="2.50" fill="{}"><title>({}, {}) {}</title></circle>"#,
            frame.x(p.h as f64),
            frame.y(p.r as f64),
            status_color(p.status),
            p.h,
            p.r,
            p.status
        );
    }

    legend(&mut s, data);
    s.push_str("</svg>\n");
    s
}

fn to_pair(p: &RationalPoint) -> (f64, f64) {
    (to_f64(p.h), to_f64(p.r))
}

fn axes(s: &mut String, frame: &Frame) {
    let (x0, y0) = (frame.x(0.0), frame.y(0.0));
    let (x1, y1) = (frame.x(frame.h_max), frame.y(frame.r_max));
    let _ = writeln!(
        s,
        r##"<path d="M{x0:.2},{y1:.2} L{x0:.2},{y0:.2} L{x1:.2},{y0:.2}" fill="none" stroke="#333333"/>"##
    );
    let h_step = tick_step(frame.h_max);
    let mut h = 0.0;
    while h <= frame.h_max + 1e-9 {
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            frame.x(h),
            y0 + 16.0,
            h as u64
        );
        h += h_step;
    }
    let r_step = tick_step(frame.r_max);
    let mut r = 0.0;
    while r <= frame.r_max + 1e-9 {
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
            x0 - 6.0,
            frame.y(r) + 4.0,
            r as u64
        );
        r += r_step;
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">h</text>"#,
        (x0 + x1) / 2.0,
        y0 + 34.0
    );
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">r</text>"#,
        x0 - 34.0,
        (y0 + y1) / 2.0
    );
}

fn tick_step(max: f64) -> f64 {
    [1.0, 2.0, 5.0, 10.0, 20.0, 50.0, 100.0, 200.0, 500.0]
        .into_iter()
        .find(|step| max / step <= 12.0)
        .unwrap_or(1000.0)
}

fn legend(s: &mut String, data: &FigureDataset) {
    let mut entries: Vec<(String, &str, bool)> = data
        .lines
        .iter()
        .map(|l| {
            let color = LINE_NAMES
                .iter()
                .position(|n| *n == l.name)
                .map_or("#000000", |i| PALETTE[i]);
            (format!("{}: {}", l.name, l.line), color, false)
        })
        .collect();
    entries.push(("r = 1".into(), PALETTE[GUIDE_COLOR], false));
    for status in [
        PointStatus::Admissible,
        PointStatus::Realized,
        PointStatus::Gap,
        PointStatus::ExceptionRealized,
        PointStatus::ExceptionExcluded,
    ] {
        if data.points.iter().any(|p| p.status == status) {
            entries.push((status.label().to_string(), status_color(status), true));
        }
    }
    let x = WIDTH - MARGIN - 190.0;
    for (i, (label, color, dot)) in entries.iter().enumerate() {
        let y = MARGIN + 14.0 * i as f64;
        if *dot {
            let _ = writeln!(s, r#"<circle cx="{:.2}" cy="{:.2}" r="3.00" fill="{color}"/>"#, x + 8.0, y - 4.0);
        } else {
            let _ = writeln!(
                s,
                r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{color}" stroke-width="2"/>"#,
                x,
                y - 4.0,
                x + 16.0,
                y - 4.0
            );
        }
        let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}">{}</text>"#, x + 22.0, y, escape(label));
    }
}
