//! Level-1 (cell) and level-2 (block) layer diagrams as text and SVG.
//!
//! Level-2 text: `layer k` headers as in level 1, then one row of
//! space-separated block symbols per coarse row, northmost first. A
//! functional cube is written `#`, an empty slot `.`.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::blocks::BlockId;
use crate::error::{GeometryError, ParseError};
use crate::geometry::Polyform;
use crate::layers::LayerDiagram;
use crate::reduction::{BlockLayout, EncoderLayout};

pub fn render_level1(p: &Polyform) -> Result<String, GeometryError> {
    Ok(LayerDiagram::from_polyform(p)?.to_string())
}

const PX: usize = 12;
const GAP: usize = 24;

pub fn render_level1_svg(p: &Polyform) -> Result<String, GeometryError> {
    let d = LayerDiagram::from_polyform(p)?;
    let [w, h, l] = d.extent();
    let panel = w * PX + GAP;
    let mut out = String::new();
    let (width, height) = (l * panel + GAP, h * PX + 2 * GAP);
    writeln!(out, r##"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">"##).unwrap();
    for z in 0..l {
        let x0 = GAP + z * panel;
        for y in 0..h {
            for x in 0..w {
                let fill = if d.is_filled(x, y, z) { "#888888" } else { "#ffffff" };
                let (px, py) = (x0 + x * PX, GAP + (h - 1 - y) * PX);
                writeln!(
                    out,
                    r##"<rect x="{px}" y="{py}" width="{PX}" height="{PX}" fill="{fill}" stroke="#000000" stroke-width="0.5"/>"##
                )
                .unwrap();
            }
        }
        writeln!(
            out,
            r##"<text x="{}" y="{}" font-family="sans-serif" font-size="12" text-anchor="middle">layer {}</text>"##,
            x0 + w * PX / 2,
            GAP + h * PX + 16,
            z + 1
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    Ok(out)
}

fn token(id: Option<BlockId>) -> &'static str {
    match id {
        None => ".",
        Some(BlockId::Cube) => "#",
        Some(id) => id.symbol(),
    }
}

/// Grids of block symbols for each coarse layer, bottom first, each row
/// northmost first.
pub fn level2_grid(layout: &BlockLayout) -> Vec<Vec<Vec<String>>> {
    let (lo, hi) = layout.bounds();
    let at: HashMap<[i32; 3], BlockId> = layout.slots().iter().copied().collect();
    (lo[2]..=hi[2])
        .map(|z| {
            (lo[1]..=hi[1])
                .rev()
                .map(|y| (lo[0]..=hi[0]).map(|x| token(at.get(&[x, y, z]).copied()).to_string()).collect())
                .collect()
        })
        .collect()
}

pub fn render_level2(layout: &BlockLayout) -> String {
    let mut out = String::new();
    for (k, layer) in level2_grid(layout).iter().enumerate() {
        if k > 0 {
            out.push('\n');
        }
        writeln!(out, "layer {}", k + 1).unwrap();
        for row in layer {
            writeln!(out, "{}", row.join(" ")).unwrap();
        }
    }
    out
}

pub fn parse_level2(text: &str) -> Result<Vec<Vec<Vec<String>>>, ParseError> {
    let mut layers: Vec<Vec<Vec<String>>> = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(k) = line.strip_prefix("layer ") {
            if k.trim().parse::<usize>().ok() != Some(layers.len() + 1) {
                return Err(ParseError::Syntax { line: n + 1, message: format!("unexpected header `{line}`") });
            }
            layers.push(Vec::new());
            continue;
        }
        let layer = layers
            .last_mut()
            .ok_or(ParseError::Syntax { line: n + 1, message: "row before first layer".into() })?;
        let row: Vec<String> = line.split_whitespace().map(str::to_string).collect();
        if let Some(first) = layer.first() {
            if first.len() != row.len() {
                return Err(ParseError::Ragged { line: n + 1, expected: first.len(), found: row.len() });
            }
        }
        layer.push(row);
    }
    Ok(layers)
}

const SEGMENT_COLORS: [&str; 4] = ["#f4cccc", "#d9ead3", "#cfe2f3", "#fff2cc"];

/// Level-2 SVG. With `segment = Some(t)`, the u/d rows of encoding layers
/// are tinted by which t-wide segment they belong to.
pub fn render_level2_svg(layout: &BlockLayout, segment: Option<usize>) -> String {
    const BOX: usize = 28;
    let (lo, hi) = layout.bounds();
    let grids = level2_grid(layout);
    let (w, h) = ((hi[0] - lo[0] + 1) as usize, (hi[1] - lo[1] + 1) as usize);
    let panel_h = h * BOX + GAP + 16;
    let mut out = String::new();
    writeln!(
        out,
        r##"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}">"##,
        w * BOX + 2 * GAP,
        grids.len() * panel_h + GAP
    )
    .unwrap();
    for (k, layer) in grids.iter().enumerate() {
        let z = lo[2] + k as i32;
        let y0 = GAP + k * panel_h;
        writeln!(out, r##"<text x="{GAP}" y="{}" font-family="sans-serif" font-size="12">layer {}</text>"##, y0 - 6, k + 1)
            .unwrap();
        for (r, row) in layer.iter().enumerate() {
            let y = hi[1] - r as i32;
            for (c, tok) in row.iter().enumerate() {
                let x = lo[0] + c as i32;
                let fill = match segment {
                    Some(t) if EncoderLayout::is_encoding_layer(z) && (y == 0 || y == 2) && x >= 0 && (x as usize) < 4 * t => {
                        SEGMENT_COLORS[x as usize / t]
                    }
                    _ if tok == "." => "none",
                    _ => "#ffffff",
                };
                let (px, py) = (GAP + c * BOX, y0 + r * BOX);
                writeln!(
                    out,
                    r##"<rect x="{px}" y="{py}" width="{BOX}" height="{BOX}" fill="{fill}" stroke="{}"/>"##,
                    if tok == "." { "none" } else { "#000000" }
                )
                .unwrap();
                if tok != "." {
                    writeln!(
                        out,
                        r##"<text x="{}" y="{}" font-family="serif" font-size="13" text-anchor="middle">{tok}</text>"##,
                        px + BOX / 2,
                        py + BOX / 2 + 5
                    )
                    .unwrap();
                }
            }
        }
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blocks::block;

    #[test]
    fn full_cube_renders_full() {
        let text = render_level1(block(BlockId::Cube)).unwrap();
        assert!(!text.contains('.'));
        assert_eq!(text.lines().filter(|l| l.starts_with("layer")).count(), 10);
    }

    #[test]
    fn svg_has_one_rect_per_cell() {
        let svg = render_level1_svg(block(BlockId::XBump)).unwrap();
        assert_eq!(svg.matches("<rect").count(), 1000);
        assert_eq!(svg.matches("#888888").count(), 36);
    }

    #[test]
    fn level2_round_trip() {
        let mut text = String::from("layer 1\n# l #\n\nlayer 2\nt y1 #\n");
        text.push('\n');
        let grid = parse_level2(&text).unwrap();
        assert_eq!(grid[1][0], ["t", "y1", "#"]);
        assert!(matches!(parse_level2("layer 1\na b\nc\n"), Err(ParseError::Ragged { line: 3, .. })));
    }
}
