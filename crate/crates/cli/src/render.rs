//! SVG and ASCII pictures of tilings.
//!
//! Lattice point `(p, q)` sits at `p * (1, 0) + q * (-1/2, sqrt(3)/2)` in the
//! plane, so up triangles point up.

use std::fmt::Write;

use lozenge_core::{Letter, Tiling, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RenderFormat {
    Svg,
    Ascii,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RenderSpec {
    pub format: RenderFormat,
    /// Pixels per unit edge for SVG, text rows per triangle row for ASCII.
    pub scale: u32,
    /// Fill colours for lozenges whose diagonal is `a`, `b` and `c`.
    pub palette: [String; 3],
}

impl RenderSpec {
    pub fn new(format: RenderFormat, scale: u32) -> Self {
        RenderSpec {
            format,
            scale: scale.max(1),
            palette: ["#f4f4f4".into(), "#9a9a9a".into(), "#4d4d4d".into()],
        }
    }
}

pub fn render(t: &Tiling, spec: &RenderSpec) -> String {
    match spec.format {
        RenderFormat::Svg => svg(t, spec),
        RenderFormat::Ascii => ascii(t, spec.scale as i32),
    }
}

fn plane(v: Vertex) -> (f64, f64) {
    (v.p as f64 - v.q as f64 / 2.0, v.q as f64 * 3f64.sqrt() / 2.0)
}

fn letter_index(l: Letter) -> usize {
    match l {
        Letter::A => 0,
        Letter::B => 1,
        Letter::C => 2,
    }
}

fn svg(t: &Tiling, spec: &RenderSpec) -> String {
    let s = spec.scale as f64;
    let points: Vec<(f64, f64)> = t.lozenges().iter().flat_map(|l| l.vertices()).map(plane).collect();
    let min_x = points.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
    let max_x = points.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
    let min_y = points.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
    let max_y = points.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
    let (min_x, max_x, min_y, max_y) =
        if points.is_empty() { (0.0, 0.0, 0.0, 0.0) } else { (min_x, max_x, min_y, max_y) };
    let margin = s / 2.0;
    let width = (max_x - min_x) * s + 2.0 * margin;
    let height = (max_y - min_y) * s + 2.0 * margin;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width:.2}\" height=\"{height:.2}\" viewBox=\"0 0 {width:.2} {height:.2}\">"
    );
    for l in t.lozenges() {
        let pts: Vec<String> = l
            .vertices()
            .iter()
            .map(|&v| {
                let (x, y) = plane(v);
                format!("{:.2},{:.2}", (x - min_x) * s + margin, (max_y - y) * s + margin)
            })
            .collect();
        let _ = writeln!(
            out,
            "  <polygon points=\"{}\" fill=\"{}\" stroke=\"#000000\" stroke-width=\"1\"/>",
            pts.join(" "),
            spec.palette[letter_index(l.diagonal)]
        );
    }
    out.push_str("</svg>\n");
    out
}

/// Lozenge outlines on a character grid. Slanted edges take `k` rows and
/// columns, horizontal edges `2k` underscores; slashes win over underscores
/// when they share a cell.
fn ascii(t: &Tiling, k: i32) -> String {
    let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
    for l in t.lozenges() {
        let vs = l.vertices();
        for i in 0..4 {
            let (u, w) = (vs[i], vs[(i + 1) % 4]);
            edges.push(if (u.q, u.p) <= (w.q, w.p) { (u, w) } else { (w, u) });
        }
    }
    edges.sort();
    edges.dedup();
    if edges.is_empty() {
        return String::new();
    }
    let col = |v: Vertex| k * (2 * v.p - v.q);
    let max_q = edges.iter().map(|e| e.1.q).max().unwrap_or(0);
    let line = |v: Vertex| k * (max_q - v.q);
    let min_col = edges.iter().flat_map(|e| [col(e.0), col(e.1)]).min().unwrap_or(0);

    let mut cells: std::collections::BTreeMap<(i32, i32), char> = std::collections::BTreeMap::new();
    let mut put = |row: i32, c: i32, ch: char| {
        let slot = cells.entry((row, c - min_col)).or_insert(ch);
        if *slot == '_' {
            *slot = ch;
        }
    };
    for &(lo, hi) in &edges {
        let (c, l) = (col(lo), line(lo));
        if lo.q == hi.q {
            for j in 0..2 * k {
                put(l - 1, c + j, '_');
            }
        } else if col(hi) > c {
            for i in 0..k {
                put(l - 1 - i, c + i, '/');
            }
        } else {
            for i in 0..k {
                put(l - 1 - i, c - 1 - i, '\\');
            }
        }
    }
    let rows = cells.keys().map(|k| k.0).max().unwrap_or(0);
    let first = cells.keys().map(|k| k.0).min().unwrap_or(0);
    let mut out = String::new();
    for r in first..=rows {
        let mut text = String::new();
        let row: Vec<(i32, char)> = cells.range((r, i32::MIN)..=(r, i32::MAX)).map(|(&(_, c), &ch)| (c, ch)).collect();
        let mut at = 0;
        for (c, ch) in row {
            while at < c {
                text.push(' ');
                at += 1;
            }
            text.push(ch);
            at += 1;
        }
        out.push_str(text.trim_end());
        out.push('\n');
    }
    out
}
