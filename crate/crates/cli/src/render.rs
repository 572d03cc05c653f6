//! ASCII and SVG drawings of certificates and edge maps.

use std::collections::BTreeMap;
use std::fmt::Write;

use num_bigint::BigInt;
use num_traits::One;
use tilesum_core::engine::Certificate;
use tilesum_core::{Color, EdgeId, EdgeMap, Names, Orient, Point, Tile};

const UNIT: i64 = 64;
const MARGIN: i64 = 16;

fn side(c: Color, names: &Names) -> String {
    match c {
        Color::Blank0 => String::new(),
        c => c.glyph(names),
    }
}

fn width(s: &str) -> usize {
    s.chars().count()
}

fn center(s: &str, w: usize) -> String {
    let pad = w.saturating_sub(width(s));
    format!("{}{}{}", " ".repeat(pad / 2), s, " ".repeat(pad - pad / 2))
}

fn cells(cert: &Certificate) -> BTreeMap<Point, Vec<&Tile>> {
    let mut out: BTreeMap<Point, Vec<&Tile>> = BTreeMap::new();
    for p in &cert.placements {
        out.entry(p.pos).or_default().push(&p.tile);
    }
    out
}

fn span(points: impl Iterator<Item = Point>) -> Option<(Point, Point)> {
    points.fold(None, |acc, p| match acc {
        None => Some((p, p)),
        Some((lo, hi)) => Some((
            Point::new(lo.x.min(p.x), lo.y.min(p.y)),
            Point::new(hi.x.max(p.x), hi.y.max(p.y)),
        )),
    })
}

/// Draws each placement as a box with its north colour on top, west and east
/// on the middle line and south at the bottom, highest row first. A
/// position holding several tiles shows the first and a count.
pub fn certificate_ascii(cert: &Certificate, names: &Names) -> String {
    let grid = cells(cert);
    let Some((lo, hi)) = span(grid.keys().copied()) else {
        return String::new();
    };
    let inner = grid
        .values()
        .flatten()
        .flat_map(|t| t.colors())
        .map(|c| width(&side(c, names)))
        .max()
        .unwrap_or(0)
        .max(1)
        * 2
        + 1;
    let label_w = [lo.y, hi.y]
        .iter()
        .map(|y| y.to_string().len())
        .max()
        .unwrap_or(1);
    let rule = {
        let mut s = " ".repeat(label_w + 1);
        for _ in lo.x..=hi.x {
            s.push('+');
            s.push_str(&"-".repeat(inner));
        }
        s.push_str("+\n");
        s
    };

    let mut out = String::new();
    out.push_str(&rule);
    for y in (lo.y..=hi.y).rev() {
        let mut lines = [String::new(), String::new(), String::new()];
        for (i, line) in lines.iter_mut().enumerate() {
            if i == 1 {
                let _ = write!(line, "{y:>label_w$} ");
            } else {
                line.push_str(&" ".repeat(label_w + 1));
            }
        }
        for x in lo.x..=hi.x {
            let here = grid.get(&Point::new(x, y));
            let (n, mid, s) = match here.and_then(|ts| ts.first()) {
                None => (String::new(), " ".repeat(inner), String::new()),
                Some(t) => {
                    let (w, e) = (side(t.west, names), side(t.east, names));
                    let mark = match here.map_or(0, Vec::len) {
                        1 => String::new(),
                        k => format!("x{k}"),
                    };
                    let gap = inner.saturating_sub(width(&w) + width(&e));
                    let mid = format!("{w}{}{e}", center(&mark, gap));
                    (side(t.north, names), mid, side(t.south, names))
                }
            };
            lines[0].push('|');
            lines[0].push_str(&center(&n, inner));
            lines[1].push('|');
            lines[1].push_str(&mid);
            lines[2].push('|');
            lines[2].push_str(&center(&s, inner));
        }
        for line in &mut lines {
            line.push_str("|\n");
            out.push_str(line);
        }
        out.push_str(&rule);
    }
    out
}

fn entry_text(values: &[(Color, &BigInt)], names: &Names) -> String {
    let parts: Vec<String> = values
        .iter()
        .map(|(c, v)| {
            let g = c.glyph(names);
            if v.is_one() {
                g
            } else if (-*v).is_one() {
                format!("-{g}")
            } else {
                format!("{v}{g}")
            }
        })
        .collect();
    parts.join("+")
}

/// Slot of an edge in the strip layout: the strip of unit squares at
/// height `y` owns its west sides `V(x, y)` and its tops `H(x, y + 1)`.
type Slots<'a> = BTreeMap<(i64, i64, usize), Vec<(Color, &'a BigInt)>>;

fn slot(e: EdgeId) -> (i64, i64, usize) {
    match e.orient {
        Orient::V => (e.base.y, e.base.x, 0),
        Orient::H => (e.base.y - 1, e.base.x, 1),
    }
}

/// One text line per strip of unit squares, highest first. Within a line
/// the slots alternate between the vertical edge at `x` and the top edge of
/// the square at `x`; empty slots show `.`.
pub fn edgemap_ascii(f: &EdgeMap, names: &Names) -> String {
    let mut slots: Slots = BTreeMap::new();
    for (e, c, v) in f.support() {
        slots.entry(slot(e)).or_default().push((c, v));
    }
    if slots.is_empty() {
        return String::new();
    }
    let texts: BTreeMap<_, _> = slots
        .iter()
        .map(|(k, v)| (*k, entry_text(v, names)))
        .collect();
    let w = texts.values().map(|s| width(s)).max().unwrap_or(1);
    let (ys, xs): (Vec<i64>, Vec<i64>) = texts.keys().map(|&(y, x, _)| (y, x)).unzip();
    let (y0, y1) = (*ys.iter().min().unwrap(), *ys.iter().max().unwrap());
    let (x0, x1) = (*xs.iter().min().unwrap(), *xs.iter().max().unwrap());
    let label_w = [y0, y1]
        .iter()
        .map(|y| y.to_string().len())
        .max()
        .unwrap_or(1);

    let mut out = String::new();
    for y in (y0..=y1).rev() {
        let mut line = format!("{y:>label_w$} ");
        for x in x0..=x1 {
            for k in 0..2 {
                let t = texts.get(&(y, x, k)).map_or(".", String::as_str);
                line.push(' ');
                line.push_str(&center(t, w));
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

fn svg_open(out: &mut String, w: i64, h: i64) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="monospace" font-size="11">"#
    );
}

/// One unit square per placement, labelled with its four side colours.
pub fn certificate_svg(cert: &Certificate, names: &Names) -> String {
    let (lo, hi) =
        span(cert.placements.iter().map(|p| p.pos)).unwrap_or((Point::ORIGIN, Point::ORIGIN));
    let w = (hi.x - lo.x + 1) * UNIT + 2 * MARGIN;
    let h = (hi.y - lo.y + 1) * UNIT + 2 * MARGIN;
    let mut out = String::new();
    svg_open(&mut out, w, h);
    let q = UNIT / 4;
    for p in cert.sorted() {
        let left = MARGIN + (p.pos.x - lo.x) * UNIT;
        let top = MARGIN + (hi.y - p.pos.y) * UNIT;
        let _ = writeln!(
            out,
            r#"<rect x="{left}" y="{top}" width="{UNIT}" height="{UNIT}" fill="none" stroke="black"/>"#
        );
        let t = &p.tile;
        let labels = [
            (t.north, left + 2 * q, top + q, "middle"),
            (t.east, left + UNIT - 3, top + 2 * q + 4, "end"),
            (t.south, left + 2 * q, top + UNIT - 5, "middle"),
            (t.west, left + 3, top + 2 * q + 4, "start"),
        ];
        for (c, x, y, anchor) in labels {
            let text = side(c, names);
            if !text.is_empty() {
                let _ = writeln!(
                    out,
                    r#"<text x="{x}" y="{y}" text-anchor="{anchor}">{}</text>"#,
                    escape(&text)
                );
            }
        }
    }
    out.push_str("</svg>\n");
    out
}

/// Every edge of the support as a line segment labelled with its entries.
pub fn edgemap_svg(f: &EdgeMap, names: &Names) -> String {
    let (lo, hi) = f.bounds().unwrap_or((Point::ORIGIN, Point::ORIGIN));
    let w = (hi.x - lo.x) * UNIT + 2 * MARGIN + UNIT;
    let h = (hi.y - lo.y) * UNIT + 2 * MARGIN + UNIT;
    let mut out = String::new();
    svg_open(&mut out, w, h);
    let px = |p: Point| (MARGIN + (p.x - lo.x) * UNIT, MARGIN + (hi.y - p.y) * UNIT);
    let mut edges: BTreeMap<EdgeId, Vec<(Color, &BigInt)>> = BTreeMap::new();
    for (e, c, v) in f.support() {
        edges.entry(e).or_default().push((c, v));
    }
    for (e, vals) in &edges {
        let (a, b) = e.endpoints();
        let ((x1, y1), (x2, y2)) = (px(a), px(b));
        let _ = writeln!(
            out,
            r#"<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="black"/>"#
        );
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#,
            (x1 + x2) / 2 + 2,
            (y1 + y2) / 2 - 3,
            escape(&entry_text(vals, names))
        );
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use tilesum_core::engine::build_accepting_tiling;
    use tilesum_core::samples::eraser;
    use tilesum_core::tiling::initial_map;
    use tilesum_core::Ring;

    #[test]
    fn zero_map_is_an_empty_grid() {
        assert_eq!(
            edgemap_ascii(&EdgeMap::zero(Ring::Integers), &Names::new()),
            ""
        );
    }

    #[test]
    fn initial_map_is_one_line() {
        let tm = eraser();
        let f0 = initial_map(&tm, &tm.word(&["a"]).unwrap(), Ring::Integers).unwrap();
        let text = edgemap_ascii(&f0, tm.names());
        assert_eq!(text.lines().count(), 1);
        for g in ["↓", "q0a", "→"] {
            assert!(text.contains(g), "{text}");
        }
    }

    #[test]
    fn one_rect_per_placement() {
        let tm = eraser();
        let cert = build_accepting_tiling(&tm, &tm.word(&["a"]).unwrap(), 100).unwrap();
        let svg = certificate_svg(&cert, tm.names());
        assert_eq!(svg.matches("<rect").count(), cert.placements.len());
    }

    #[test]
    fn names_are_escaped() {
        assert_eq!(escape("a<b&\""), "a&lt;b&amp;&quot;");
    }
}
