//! Static SVG showing the polygon `M` (left) and the cone fan (right).

use std::fmt::Write as _;

use diagasym::fan::{ConeKind, Fan, Polygon};
use diagasym::series::to_f64;

const PANEL: f64 = 300.0;
const MARGIN: f64 = 30.0;

fn panel_origin(panel: usize) -> (f64, f64) {
    (MARGIN + panel as f64 * (PANEL + 2.0 * MARGIN), MARGIN + PANEL)
}

fn axes(out: &mut String, panel: usize, x_label: &str, y_label: &str) {
    let (ox, oy) = panel_origin(panel);
    let _ = writeln!(
        out,
        r#"<path d="M{ox:.1},{:.1} L{ox:.1},{oy:.1} L{:.1},{oy:.1}" fill="none" stroke="black"/>"#,
        oy - PANEL,
        ox + PANEL
    );
    let _ = writeln!(out, r#"<text x="{:.1}" y="{:.1}">{x_label}</text>"#, ox + PANEL - 10.0, oy + 20.0);
    let _ = writeln!(out, r#"<text x="{:.1}" y="{:.1}">{y_label}</text>"#, ox - 20.0, oy - PANEL + 10.0);
}

pub fn render(polygon: &Polygon, fan: &Fan) -> String {
    let width = 2.0 * PANEL + 4.0 * MARGIN;
    let height = PANEL + 2.0 * MARGIN;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" font-family="sans-serif" font-size="12">"#
    );

    axes(&mut out, 0, "z", "w");
    let pts: Vec<(f64, f64)> = polygon.vertices.iter().map(|v| (to_f64(&v.z), to_f64(&v.w))).collect();
    let extent = pts.iter().fold(0f64, |m, &(z, w)| m.max(z).max(w)) * 1.1;
    let (ox, oy) = panel_origin(0);
    let map = |(z, w): (f64, f64)| (ox + z / extent * PANEL, oy - w / extent * PANEL);
    let path: Vec<String> = pts
        .iter()
        .map(|&p| {
            let (x, y) = map(p);
            format!("{x:.1},{y:.1}")
        })
        .collect();
    let _ = writeln!(
        out,
        r#"<polygon points="{}" fill="lightsteelblue" stroke="navy"/>"#,
        path.join(" ")
    );
    for (line, a, b) in polygon.edges() {
        let (x1, y1) = map((to_f64(&a.z), to_f64(&a.w)));
        let (x2, y2) = map((to_f64(&b.z), to_f64(&b.w)));
        let _ = writeln!(
            out,
            r#"<text x="{:.1}" y="{:.1}">Q{}</text>"#,
            (x1 + x2) / 2.0 + 4.0,
            (y1 + y2) / 2.0 - 4.0,
            line + 1
        );
    }

    axes(&mut out, 1, "p", "q");
    let (ox, oy) = panel_origin(1);
    for (k, c) in fan.cones.iter().enumerate() {
        let g = &c.generators[1];
        let (p, q) = (g.p_rat(), g.q_rat());
        let (p, q) = (to_f64(&p), to_f64(&q));
        let norm = p.max(q);
        let (x, y) = (ox + p / norm * PANEL, oy - q / norm * PANEL);
        if k + 1 < fan.cones.len() {
            let _ = writeln!(out, r#"<line x1="{ox:.1}" y1="{oy:.1}" x2="{x:.1}" y2="{y:.1}" stroke="darkred"/>"#);
        }
        let mid = {
            let g1 = &c.generators[0];
            let (p1, q1) = (to_f64(&g1.p_rat()), to_f64(&g1.q_rat()));
            let (p1, q1) = (p1 / p1.max(q1), q1 / p1.max(q1));
            ((p1 + p / norm) / 2.0, (q1 + q / norm) / 2.0)
        };
        let label = match c.kind {
            ConeKind::Saddle(i) => format!("K{}", i + 1),
            ConeKind::Vertex(i, j) => format!("Ω{},{}", i + 1, j + 1),
        };
        let _ = writeln!(
            out,
            r#"<text x="{:.1}" y="{:.1}">{label}</text>"#,
            ox + mid.0 * PANEL * 0.7,
            oy - mid.1 * PANEL * 0.7
        );
    }
    out.push_str("</svg>\n");
    out
}
