//! Text and SVG drawings of bead configurations and antigravity traces.

use std::fmt::Write as _;

use super::heap::HeapConfig;
use super::moves::AntigravityTrace;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RenderFormat {
    Ascii,
    Svg,
}

pub const EMPTY_MARKER: &str = "(empty abacus)";

const CELL: f64 = 36.0;
const HALF: f64 = 18.0;
const MARGIN: f64 = 20.0;

pub fn render_config(c: &HeapConfig, format: RenderFormat) -> String {
    match format {
        RenderFormat::Ascii => ascii(c, None),
        RenderFormat::Svg => {
            let mut out = String::new();
            let (w, h) = panel_size(c);
            svg_open(&mut out, w, h + 20.0);
            svg_panel(&mut out, c, None, 0.0, 0.0);
            out.push_str("</svg>\n");
            out
        }
    }
}

pub fn render_trace(t: &AntigravityTrace, format: RenderFormat) -> String {
    match format {
        RenderFormat::Ascii => {
            let mut out = String::new();
            let _ = writeln!(out, "anchor {}", t.anchor);
            out.push_str(&ascii(&t.initial_config(), Some(t.anchor)));
            for (k, m) in t.moves.iter().enumerate() {
                let _ = writeln!(out, "\nmove {}: {}", k + 1, m);
                out.push_str(&ascii(&t.config_after(k + 1), Some(t.anchor)));
            }
            match t.support.bounds() {
                Some((a, b)) => {
                    let _ = writeln!(out, "\nsupport [{a},{b}]");
                }
                None => out.push_str("\nsupport empty\n"),
            }
            out
        }
        RenderFormat::Svg => {
            let states: Vec<HeapConfig> = (0..=t.moves.len()).map(|k| t.config_after(k)).collect();
            let sizes: Vec<(f64, f64)> = states.iter().map(panel_size).collect();
            let width: f64 = sizes.iter().map(|s| s.0 + MARGIN).sum::<f64>() + MARGIN;
            let height = sizes.iter().map(|s| s.1).fold(0.0, f64::max) + 60.0;
            let mut out = String::new();
            svg_open(&mut out, width, height);
            let mut x = MARGIN;
            for (k, (state, size)) in states.iter().zip(&sizes).enumerate() {
                let caption = if k == 0 { "start".to_string() } else { t.moves[k - 1].to_string() };
                let _ = writeln!(
                    out,
                    r#"<text x="{:.1}" y="16" font-family="monospace" font-size="12">{}</text>"#,
                    x,
                    escape(&caption)
                );
                svg_panel(&mut out, state, Some(t.anchor), x, 24.0);
                x += size.0 + MARGIN;
            }
            out.push_str("</svg>\n");
            out
        }
    }
}

fn ascii(c: &HeapConfig, anchor: Option<usize>) -> String {
    if c.is_empty() {
        return format!("{EMPTY_MARKER}\n");
    }
    let beads = c.beads();
    let heights = c.heights();
    let lo = beads.iter().map(|b| b.runner.0).min().unwrap();
    let hi = beads.iter().map(|b| b.runner.0).max().unwrap();
    let label = |p: usize| if Some(p) == anchor { format!("<{p}>") } else { p.to_string() };
    let inner = beads
        .iter()
        .map(|b| label(b.position).len())
        .chain((lo..=hi).map(|v| v.to_string().len()))
        .max()
        .unwrap()
        .max(2);
    let col = inner + 3;
    let ncols = (hi - lo + 1) as usize;
    let width = ncols * col;
    let top = heights.iter().max().unwrap() * 2 + 3;
    let mut grid = vec![vec![b' '; width]; top];
    for (b, &h) in beads.iter().zip(&heights) {
        let x = (b.runner.0 - lo) as usize * col;
        let bottom = top - 1 - 2 * h;
        let edge = format!("+{}+", "-".repeat(inner));
        let mid = format!("|{:^inner$}|", label(b.position));
        for (row, text) in [(bottom - 2, &edge), (bottom - 1, &mid), (bottom, &edge)] {
            grid[row][x..x + text.len()].copy_from_slice(text.as_bytes());
        }
    }
    let mut out = String::new();
    for row in grid {
        out.push_str(String::from_utf8(row).unwrap().trim_end());
        out.push('\n');
    }
    let mut axis = String::new();
    for v in lo..=hi {
        let _ = write!(axis, "{:^w$}", v, w = inner + 2);
        axis.push(' ');
    }
    out.push_str(axis.trim_end());
    out.push('\n');
    out
}

fn panel_size(c: &HeapConfig) -> (f64, f64) {
    if c.is_empty() {
        return (120.0, CELL);
    }
    let lo = c.beads().iter().map(|b| b.runner.0).min().unwrap();
    let hi = c.beads().iter().map(|b| b.runner.0).max().unwrap();
    let top = *c.heights().iter().max().unwrap() as f64;
    ((hi - lo + 1) as f64 * CELL, top * HALF + CELL + 20.0)
}

fn svg_open(out: &mut String, w: f64, h: f64) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0}" height="{h:.0}" viewBox="0 0 {w:.0} {h:.0}">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
}

fn svg_panel(out: &mut String, c: &HeapConfig, anchor: Option<usize>, x0: f64, y0: f64) {
    if c.is_empty() {
        let _ = writeln!(
            out,
            r#"<text x="{:.1}" y="{:.1}" font-family="monospace" font-size="12">{}</text>"#,
            x0,
            y0 + 20.0,
            EMPTY_MARKER
        );
        return;
    }
    let beads = c.beads();
    let heights = c.heights();
    let lo = beads.iter().map(|b| b.runner.0).min().unwrap();
    let hi = beads.iter().map(|b| b.runner.0).max().unwrap();
    let (_, h) = panel_size(c);
    let base = y0 + h - 20.0;
    for v in lo..=hi {
        let cx = x0 + (v - lo) as f64 * CELL + CELL / 2.0;
        let _ = writeln!(
            out,
            r##"<line x1="{cx:.1}" y1="{y0:.1}" x2="{cx:.1}" y2="{base:.1}" stroke="#999" stroke-width="1"/>"##
        );
        let _ = writeln!(
            out,
            r#"<text x="{cx:.1}" y="{:.1}" text-anchor="middle" font-family="monospace" font-size="11">{v}</text>"#,
            base + 14.0
        );
    }
    for (b, &hh) in beads.iter().zip(&heights) {
        let x = x0 + (b.runner.0 - lo) as f64 * CELL + 2.0;
        let y = base - CELL - hh as f64 * HALF;
        let fill = if Some(b.position) == anchor { "#f4c542" } else { "#dde6f3" };
        let _ = writeln!(
            out,
            r##"<rect x="{x:.1}" y="{y:.1}" width="{:.1}" height="{:.1}" fill="{fill}" stroke="#333"/>"##,
            CELL - 4.0,
            CELL - 2.0
        );
        let _ = writeln!(
            out,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="middle" font-family="monospace" font-size="12">{}</text>"#,
            x + (CELL - 4.0) / 2.0,
            y + CELL / 2.0 + 3.0,
            b.position
        );
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
