//! Level-1 layer diagrams: a 3D polyform drawn as horizontal grids.
//!
//! Text format: each layer is introduced by `layer k` (1-based, bottom layer
//! first) followed by its grid rows, northmost row on top, `#` for a filled
//! cell and `.` for an empty one. Layers are separated by one blank line.

use std::fmt;

use crate::error::{GeometryError, ParseError};
use crate::geometry::{Cell, Polyform, CUBE};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayerDiagram {
    /// (width along x, depth along y, layer count along z)
    extent: [usize; 3],
    filled: Vec<bool>,
}

impl LayerDiagram {
    pub fn extent(&self) -> [usize; 3] {
        self.extent
    }

    fn idx(&self, x: usize, y: usize, z: usize) -> usize {
        (z * self.extent[1] + y) * self.extent[0] + x
    }

    pub fn is_filled(&self, x: usize, y: usize, z: usize) -> bool {
        self.filled[self.idx(x, y, z)]
    }

    /// Draws `p` in the box `[0, extent)`. Every cell must lie inside it.
    pub fn with_extent(p: &Polyform, extent: [usize; 3]) -> Result<LayerDiagram, GeometryError> {
        if p.dim() != 3 {
            return Err(GeometryError::DimensionMismatch { expected: 3, found: p.dim() });
        }
        let mut d = LayerDiagram { extent, filled: vec![false; extent.iter().product()] };
        for c in p.cells() {
            let inside = (0..3).all(|a| c.0[a] >= 0 && (c.0[a] as usize) < extent[a]);
            if !inside {
                return Err(GeometryError::NegativeCoordinate(c.coords(3).to_vec()));
            }
            let i = d.idx(c.0[0] as usize, c.0[1] as usize, c.0[2] as usize);
            d.filled[i] = true;
        }
        Ok(d)
    }

    /// Draws `p` in the smallest box anchored at the origin whose sides are
    /// multiples of the functional-cube size.
    pub fn from_polyform(p: &Polyform) -> Result<LayerDiagram, GeometryError> {
        if p.dim() != 3 {
            return Err(GeometryError::DimensionMismatch { expected: 3, found: p.dim() });
        }
        let mut extent = [CUBE as usize; 3];
        if let Some((lo, hi)) = p.bounding_box() {
            if (0..3).any(|a| lo.0[a] < 0) {
                return Err(GeometryError::NegativeCoordinate(lo.coords(3).to_vec()));
            }
            for a in 0..3 {
                let need = hi.0[a] as usize + 1;
                extent[a] = need.div_ceil(CUBE as usize).max(1) * CUBE as usize;
            }
        }
        LayerDiagram::with_extent(p, extent)
    }

    pub fn to_polyform(&self) -> Polyform {
        let [w, h, l] = self.extent;
        let mut cells = Vec::new();
        for z in 0..l {
            for y in 0..h {
                for x in 0..w {
                    if self.is_filled(x, y, z) {
                        cells.push(Cell::xyz(x as i32, y as i32, z as i32));
                    }
                }
            }
        }
        Polyform::from_cells(3, cells)
    }

    pub fn parse(text: &str) -> Result<LayerDiagram, ParseError> {
        let mut layers: Vec<Vec<Vec<bool>>> = Vec::new();
        let mut width: Option<usize> = None;
        let mut in_grid = false;
        for (n, raw) in text.lines().enumerate() {
            let line_no = n + 1;
            let line = raw.trim_end();
            if line.is_empty() {
                in_grid = false;
                continue;
            }
            if let Some(rest) = line.strip_prefix("layer") {
                let k: usize = rest.trim().parse().map_err(|_| ParseError::Syntax {
                    line: line_no,
                    message: format!("bad layer header `{line}`"),
                })?;
                if k != layers.len() + 1 {
                    return Err(ParseError::Syntax {
                        line: line_no,
                        message: format!("expected layer {}, found layer {k}", layers.len() + 1),
                    });
                }
                layers.push(Vec::new());
                in_grid = true;
                continue;
            }
            if !in_grid {
                return Err(ParseError::Syntax { line: line_no, message: "grid row outside a layer".into() });
            }
            let mut row = Vec::with_capacity(line.len());
            for ch in line.chars() {
                match ch {
                    '#' => row.push(true),
                    '.' => row.push(false),
                    other => return Err(ParseError::IllegalChar { line: line_no, ch: other }),
                }
            }
            let expected = *width.get_or_insert(row.len());
            if row.len() != expected {
                return Err(ParseError::Ragged { line: line_no, expected, found: row.len() });
            }
            layers.last_mut().expect("inside a layer").push(row);
        }
        if layers.is_empty() {
            return Err(ParseError::Syntax { line: 0, message: "no layers".into() });
        }
        let depth = layers[0].len();
        if let Some((k, layer)) = layers.iter().enumerate().find(|(_, l)| l.len() != depth || l.is_empty()) {
            return Err(ParseError::Syntax {
                line: 0,
                message: format!("layer {} has {} rows, expected {depth}", k + 1, layer.len()),
            });
        }
        let width = width.unwrap_or(0);
        let extent = [width, depth, layers.len()];
        let mut d = LayerDiagram { extent, filled: vec![false; extent.iter().product()] };
        for (z, layer) in layers.iter().enumerate() {
            for (r, row) in layer.iter().enumerate() {
                let y = depth - 1 - r;
                for (x, &f) in row.iter().enumerate() {
                    let i = d.idx(x, y, z);
                    d.filled[i] = f;
                }
            }
        }
        Ok(d)
    }
}

impl fmt::Display for LayerDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [w, h, l] = self.extent;
        for z in 0..l {
            if z > 0 {
                writeln!(f)?;
            }
            writeln!(f, "layer {}", z + 1)?;
            for y in (0..h).rev() {
                let row: String = (0..w).map(|x| if self.is_filled(x, y, z) { '#' } else { '.' }).collect();
                writeln!(f, "{row}")?;
            }
        }
        Ok(())
    }
}

pub fn parse_layer_diagram(text: &str) -> Result<Polyform, ParseError> {
    Ok(LayerDiagram::parse(text)?.to_polyform())
}

pub fn emit_layer_diagram(p: &Polyform) -> Result<String, GeometryError> {
    Ok(LayerDiagram::from_polyform(p)?.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn full_cube_text() -> String {
        let grid = "##########\n".repeat(10);
        (1..=10).map(|k| format!("layer {k}\n{grid}")).collect::<Vec<_>>().join("\n")
    }

    #[test]
    fn full_grid_parses_to_functional_cube() {
        let p = parse_layer_diagram(&full_cube_text()).unwrap();
        assert_eq!(p, Polyform::cuboid(3, &[0, 0, 0], &[10, 10, 10]).unwrap());
        assert_eq!(emit_layer_diagram(&p).unwrap(), full_cube_text());
    }

    #[test]
    fn rows_are_north_first() {
        let text = "layer 1\n#.\n..\n";
        let p = parse_layer_diagram(text).unwrap();
        assert_eq!(p.cells(), &[Cell::xyz(0, 1, 0)]);
    }

    #[test]
    fn ragged_rows_rejected() {
        let err = LayerDiagram::parse("layer 1\n###\n##\n").unwrap_err();
        assert_eq!(err, ParseError::Ragged { line: 3, expected: 3, found: 2 });
    }

    #[test]
    fn illegal_characters_rejected() {
        let err = LayerDiagram::parse("layer 1\n#x#\n").unwrap_err();
        assert_eq!(err, ParseError::IllegalChar { line: 2, ch: 'x' });
    }

    #[test]
    fn out_of_order_layers_rejected() {
        assert!(matches!(LayerDiagram::parse("layer 2\n#\n"), Err(ParseError::Syntax { line: 1, .. })));
    }

    #[test]
    fn negative_cells_cannot_be_emitted() {
        let p = Polyform::from_cells(3, vec![Cell::xyz(-1, 0, 0)]);
        assert!(matches!(emit_layer_diagram(&p), Err(GeometryError::NegativeCoordinate(_))));
    }
}
