//! Text, CSV and number formatting shared by the subcommands.

use std::fmt::Write as _;

use diagasym::fan::{Fan, Polygon};
use diagasym::harness::{ConvergenceRow, HornRow};
use diagasym::parfrac::PairConstants;
use diagasym::series::CoeffTable;

/// `x` with 12 significant digits; fixed notation for moderate magnitudes.
pub fn sig12(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0".into();
    }
    let mag = x.abs().log10().floor() as i32;
    if (-4..12).contains(&mag) {
        let decimals = (11 - mag).max(0) as usize;
        let s = format!("{x:.decimals$}");
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        format!("{x:.11e}")
    }
}

pub fn expansion_csv(table: &CoeffTable) -> String {
    let mut out = String::from("x,y,numerator,denominator\n");
    for (x, y, v) in table.iter() {
        let _ = writeln!(out, "{x},{y},{},{}", v.numer(), v.denom());
    }
    out
}

pub fn constants_csv(constants: &PairConstants) -> String {
    let mut out = String::from("i,j,A_num,A_den\n");
    for ((i, j), v) in constants.iter() {
        let _ = writeln!(out, "{},{},{},{}", i + 1, j + 1, v.numer(), v.denom());
    }
    out
}

fn cone_indices(kind: &diagasym::fan::ConeKind) -> (String, String) {
    use diagasym::fan::ConeKind::*;
    match *kind {
        Saddle(i) => ((i + 1).to_string(), String::new()),
        Vertex(i, j) => ((i + 1).to_string(), (j + 1).to_string()),
    }
}

pub fn fan_csv(fan: &Fan) -> String {
    let mut out = String::from("kind,i,j,gen1_p,gen1_q,gen2_p,gen2_q,base_z,base_w\n");
    for c in &fan.cones {
        let kind = match c.kind {
            diagasym::fan::ConeKind::Saddle(_) => "saddle",
            diagasym::fan::ConeKind::Vertex(..) => "vertex",
        };
        let (i, j) = cone_indices(&c.kind);
        let [g1, g2] = &c.generators;
        let _ = writeln!(
            out,
            "{kind},{i},{j},{},{},{},{},{},{}",
            g1.p(),
            g1.q(),
            g2.p(),
            g2.q(),
            c.base.z,
            c.base.w
        );
    }
    out
}

pub fn polygon_text(polygon: &Polygon) -> String {
    let mut out = String::new();
    let vertices: Vec<String> = polygon.vertices.iter().map(ToString::to_string).collect();
    let _ = writeln!(out, "vertices: {}", vertices.join(", "));
    for (line, a, b) in polygon.edges() {
        let _ = writeln!(out, "edge on Q_{}: {a} -- {b}", line + 1);
    }
    out
}

pub fn fan_text(fan: &Fan) -> String {
    let mut out = String::new();
    for c in &fan.cones {
        let [g1, g2] = &c.generators;
        let base = match c.kind {
            diagasym::fan::ConeKind::Saddle(_) => "line intercepts",
            diagasym::fan::ConeKind::Vertex(..) => "vertex",
        };
        let _ = writeln!(out, "{:<12} rays {g1} .. {g2}   {base} {}", c.kind.to_string(), c.base);
    }
    out
}

pub fn convergence_text(rows: &[ConvergenceRow]) -> String {
    let mut out = format!(
        "{:>6}  {:>20}  {:>20}  {:>16}  {:>12}\n",
        "k", "ln|f(kp,kq)|", "ln|main term|", "ratio", "|ratio-1|"
    );
    for r in rows {
        let _ = writeln!(
            out,
            "{:>6}  {:>20}  {:>20}  {:>16}  {:>12}",
            r.k,
            sig12(r.exact.ln_abs),
            sig12(r.predicted.ln_abs),
            sig12(r.ratio),
            format!("{:.3e}", r.error())
        );
    }
    out
}

pub fn convergence_csv(rows: &[ConvergenceRow]) -> String {
    let mut out = String::from("k,exact_log,pred_log,ratio\n");
    for r in rows {
        let _ = writeln!(out, "{},{},{},{}", r.k, sig12(r.exact.ln_abs), sig12(r.predicted.ln_abs), sig12(r.ratio));
    }
    out
}

pub fn horn_text(rows: &[HornRow]) -> String {
    let mut out = format!("{:>6}  {:>16}  {:>16}  {:>12}\n", "k", "f(x+1,y)/f", "f(x,y+1)/f", "error");
    for r in rows {
        let _ = writeln!(
            out,
            "{:>6}  {:>16}  {:>16}  {:>12}",
            r.k,
            sig12(diagasym::series::to_f64(&r.empirical.0)),
            sig12(diagasym::series::to_f64(&r.empirical.1)),
            format!("{:.3e}", r.error)
        );
    }
    out
}

pub fn horn_csv(rows: &[HornRow]) -> String {
    let mut out = String::from("k,ratio_z,ratio_w,limit_z,limit_w,error\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            r.k,
            sig12(diagasym::series::to_f64(&r.empirical.0)),
            sig12(diagasym::series::to_f64(&r.empirical.1)),
            r.limit.0,
            r.limit.1,
            sig12(r.error)
        );
    }
    out
}
