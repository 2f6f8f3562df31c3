//! CSV traces, SVG scene snapshots and plain-text summaries.

use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};
use crate::experiment::{ExperimentSummary, TrialRecord};
use crate::planner::PlanResult;
use crate::scenario::Scenario;

pub const CSV_HEADER: [&str; 8] = [
    "trial",
    "seed",
    "algorithm",
    "iteration",
    "best_cost",
    "n_nodes",
    "n_xfail",
    "elapsed_ns",
];

/// Canvas width of rendered scenes.
pub const SVG_WIDTH: f64 = 800.0;

/// Fixed-point decimal with 12 significant digits.
pub fn format_decimal(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v:.11}");
    }
    let magnitude = v.abs().log10().floor() as i32;
    let decimals = (11 - magnitude).max(0) as usize;
    format!("{v:.decimals$}")
}

/// Writes the trace rows as CSV. Missing costs become empty fields.
pub fn write_csv<W: Write>(records: &[TrialRecord], out: W) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in records {
        w.write_record([
            r.trial.to_string(),
            r.seed.to_string(),
            r.algorithm.clone(),
            r.iteration.to_string(),
            r.best_cost.map(format_decimal).unwrap_or_default(),
            r.node_count.to_string(),
            r.fail_count.to_string(),
            r.elapsed_ns.to_string(),
        ])?;
    }
    w.flush()
}

pub fn emit_csv(records: &[TrialRecord], path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    write_csv(records, std::io::BufWriter::new(file)).map_err(|e| Error::io(path, e))
}

struct Viewport {
    lo: [f64; 2],
    hi: [f64; 2],
    scale: f64,
}

impl Viewport {
    fn x(&self, x: f64) -> f64 {
        (x - self.lo[0]) * self.scale
    }

    // SVG y grows downward
    fn y(&self, y: f64) -> f64 {
        (self.hi[1] - y) * self.scale
    }

    fn height(&self) -> f64 {
        (self.hi[1] - self.lo[1]) * self.scale
    }
}

/// Renders a 2-D scene: bounds, obstacles, tree edges, fail nodes, best
/// path, start and goal.
pub fn render_svg(result: &PlanResult, scenario: &Scenario) -> Result<String> {
    if scenario.dim() != 2 {
        return Err(Error::UnsupportedDimension(scenario.dim()));
    }
    let b = scenario.world.bounds();
    let vp = Viewport {
        lo: [b.lo()[0], b.lo()[1]],
        hi: [b.hi()[0], b.hi()[1]],
        scale: SVG_WIDTH / (b.hi()[0] - b.lo()[0]),
    };
    let (w, h) = (SVG_WIDTH, vp.height());
    let px = vp.scale;
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w:.0}" height="{h:.2}" viewBox="0 0 {w:.0} {h:.2}">"#
    );
    let _ = writeln!(s, "<title>{}</title>", scenario.name);
    let _ = writeln!(
        s,
        r##"<rect class="bounds" x="0" y="0" width="{w:.0}" height="{h:.2}" fill="#ffffff" stroke="#000000" stroke-width="2"/>"##
    );

    let _ = writeln!(s, r##"<g class="obstacles" fill="#555555">"##);
    for o in scenario.world.obstacles() {
        let x0 = o.lo()[0].max(vp.lo[0]);
        let x1 = o.hi()[0].min(vp.hi[0]);
        let y0 = o.lo()[1].max(vp.lo[1]);
        let y1 = o.hi()[1].min(vp.hi[1]);
        let _ = writeln!(
            s,
            r#"<rect class="obstacle" x="{:.3}" y="{:.3}" width="{:.3}" height="{:.3}"/>"#,
            vp.x(x0),
            vp.y(y1),
            (x1 - x0) * px,
            (y1 - y0) * px
        );
    }
    let _ = writeln!(s, "</g>");

    let _ = writeln!(
        s,
        r##"<g class="tree" stroke="#7a9cc6" stroke-width="0.7">"##
    );
    for (_, n) in result.tree.nodes() {
        if let Some(p) = n.parent() {
            let pc = result.tree.node(p).config();
            let c = n.config();
            let _ = writeln!(
                s,
                r#"<line class="edge" x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}"/>"#,
                vp.x(pc[0]),
                vp.y(pc[1]),
                vp.x(c[0]),
                vp.y(c[1])
            );
        }
    }
    let _ = writeln!(s, "</g>");

    let _ = writeln!(s, r##"<g class="fail-nodes" fill="#e00000">"##);
    for f in result.fail_set.items() {
        let _ = writeln!(
            s,
            r#"<circle class="fail" cx="{:.3}" cy="{:.3}" r="2.5"/>"#,
            vp.x(f.config[0]),
            vp.y(f.config[1])
        );
    }
    let _ = writeln!(s, "</g>");

    if let Some(path) = &result.best_path {
        let pts: Vec<String> = path
            .iter()
            .map(|c| format!("{:.3},{:.3}", vp.x(c[0]), vp.y(c[1])))
            .collect();
        let _ = writeln!(
            s,
            r##"<polyline class="best-path" points="{}" fill="none" stroke="#00a040" stroke-width="3"/>"##,
            pts.join(" ")
        );
    }

    let g = scenario.goal.center();
    let _ = writeln!(
        s,
        r##"<circle class="goal" cx="{:.3}" cy="{:.3}" r="{:.3}" fill="#00a04033" stroke="#00a040"/>"##,
        vp.x(g[0]),
        vp.y(g[1]),
        scenario.goal.radius() * px
    );
    let st = &scenario.start;
    let _ = writeln!(
        s,
        r##"<circle class="start" cx="{:.3}" cy="{:.3}" r="6" fill="#f0c000" stroke="#000000"/>"##,
        vp.x(st[0]),
        vp.y(st[1])
    );
    let _ = writeln!(s, "</svg>");
    Ok(s)
}

pub fn emit_svg(result: &PlanResult, scenario: &Scenario, path: impl AsRef<Path>) -> Result<()> {
    let svg = render_svg(result, scenario)?;
    let path = path.as_ref();
    std::fs::write(path, svg).map_err(|e| Error::io(path, e))
}

/// Aligned plain-text table, one line per arm.
pub fn format_summary(summary: &ExperimentSummary) -> String {
    let opt =
        |v: Option<f64>, prec: usize| v.map_or_else(|| "-".to_string(), |x| format!("{x:.prec$}"));
    let header = [
        "algorithm",
        "trials",
        "solved",
        "mean_cost",
        "std_cost",
        "success",
        "first_iter",
        "wall_ms",
    ];
    let rows: Vec<[String; 8]> = summary
        .arms
        .iter()
        .map(|a| {
            [
                a.label.clone(),
                a.trials.to_string(),
                a.solved.to_string(),
                opt(a.mean_final_cost, 4),
                opt(a.std_final_cost, 4),
                opt(a.success_rate, 3),
                opt(a.mean_first_solution_iter, 1),
                format!("{:.1}", a.mean_wall_time.as_secs_f64() * 1e3),
            ]
        })
        .collect();
    let widths: Vec<usize> = (0..header.len())
        .map(|i| {
            rows.iter()
                .map(|r| r[i].len())
                .chain(std::iter::once(header[i].len()))
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    let line = |cells: Vec<&str>, out: &mut String| {
        let parts: Vec<String> = cells
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if i == 0 {
                    format!("{c:<w$}", w = widths[i])
                } else {
                    format!("{c:>w$}", w = widths[i])
                }
            })
            .collect();
        out.push_str(parts.join("  ").trim_end());
        out.push('\n');
    };
    line(header.to_vec(), &mut out);
    for r in &rows {
        line(r.iter().map(String::as_str).collect(), &mut out);
    }
    out
}
