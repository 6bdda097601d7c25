//! Wang tile sets, the binary color code, and a torus solver.
//!
//! A torus assignment of size `a x b` maps `(i, j)` to a tile, with `i`
//! running east and `j` running north; both directions wrap.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::WangError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WangTile {
    #[serde(rename = "n")]
    pub north: usize,
    #[serde(rename = "e")]
    pub east: usize,
    #[serde(rename = "s")]
    pub south: usize,
    #[serde(rename = "w")]
    pub west: usize,
}

impl WangTile {
    pub const fn new(north: usize, east: usize, south: usize, west: usize) -> WangTile {
        WangTile { north, east, south, west }
    }

    fn colors(&self) -> [usize; 4] {
        [self.north, self.east, self.south, self.west]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WangTileSet {
    q: usize,
    #[serde(default, rename = "colors", skip_serializing_if = "Option::is_none")]
    color_names: Option<Vec<String>>,
    tiles: Vec<WangTile>,
}

impl WangTileSet {
    pub fn new(q: usize, tiles: Vec<WangTile>) -> Result<WangTileSet, WangError> {
        let set = WangTileSet { q, color_names: None, tiles };
        set.validate()?;
        Ok(set)
    }

    pub fn with_color_names(mut self, names: Vec<String>) -> Result<WangTileSet, WangError> {
        if names.len() != self.q {
            return Err(WangError::Format(format!("{} color names for q = {}", names.len(), self.q)));
        }
        self.color_names = Some(names);
        Ok(self)
    }

    fn validate(&self) -> Result<(), WangError> {
        if self.q == 0 {
            return Err(WangError::NoColors);
        }
        if self.tiles.is_empty() {
            return Err(WangError::Format("tile set is empty".into()));
        }
        for tile in &self.tiles {
            if let Some(&color) = tile.colors().iter().find(|&&c| c >= self.q) {
                return Err(WangError::ColorOutOfRange { color, q: self.q });
            }
        }
        if let Some(names) = &self.color_names {
            if names.len() != self.q {
                return Err(WangError::Format(format!("{} color names for q = {}", names.len(), self.q)));
            }
        }
        Ok(())
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn p(&self) -> usize {
        self.tiles.len()
    }

    pub fn tiles(&self) -> &[WangTile] {
        &self.tiles
    }

    pub fn tile(&self, index: usize) -> Result<&WangTile, WangError> {
        self.tiles.get(index).ok_or(WangError::TileOutOfRange { index, count: self.tiles.len() })
    }

    pub fn color_names(&self) -> Option<&[String]> {
        self.color_names.as_deref()
    }

    /// Code length: `ceil(log2 q) + 2`.
    pub fn t(&self) -> usize {
        code_length(self.q)
    }

    pub fn from_json(text: &str) -> Result<WangTileSet, WangError> {
        let set: WangTileSet = serde_json::from_str(text).map_err(|e| WangError::Format(e.to_string()))?;
        set.validate()?;
        Ok(set)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("tile sets always serialize")
    }
}

fn ceil_log2(q: usize) -> usize {
    if q <= 1 {
        0
    } else {
        (usize::BITS - (q - 1).leading_zeros()) as usize
    }
}

pub fn code_length(q: usize) -> usize {
    ceil_log2(q) + 2
}

/// A binary word, most significant bit first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CodeWord(pub Vec<bool>);

impl CodeWord {
    pub fn constant(bit: bool, len: usize) -> CodeWord {
        CodeWord(vec![bit; len])
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for CodeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// `0`, then `c` in `ceil(log2 q)` big-endian bits, then `1`.
pub fn encode_color(c: usize, q: usize) -> Result<CodeWord, WangError> {
    if q == 0 {
        return Err(WangError::NoColors);
    }
    if c >= q {
        return Err(WangError::ColorOutOfRange { color: c, q });
    }
    let k = ceil_log2(q);
    let mut bits = Vec::with_capacity(k + 2);
    bits.push(false);
    bits.extend((0..k).rev().map(|b| (c >> b) & 1 == 1));
    bits.push(true);
    Ok(CodeWord(bits))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WangAssignment {
    a: usize,
    b: usize,
    /// Row-major, `j` outer: index `j * a + i`.
    cells: Vec<usize>,
}

impl WangAssignment {
    pub fn new(a: usize, b: usize, cells: Vec<usize>) -> Result<WangAssignment, WangError> {
        if a == 0 || b == 0 {
            return Err(WangError::EmptyTorus { a, b });
        }
        if cells.len() != a * b {
            return Err(WangError::AssignmentShape { a, b, found: cells.len() });
        }
        Ok(WangAssignment { a, b, cells })
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.a, self.b)
    }

    pub fn get(&self, i: usize, j: usize) -> usize {
        self.cells[(j % self.b) * self.a + (i % self.a)]
    }

    pub fn set(&mut self, i: usize, j: usize, tile: usize) {
        let idx = (j % self.b) * self.a + (i % self.a);
        self.cells[idx] = tile;
    }

    pub fn cells(&self) -> &[usize] {
        &self.cells
    }
}

impl fmt::Display for WangAssignment {
    /// Northmost row first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for j in (0..self.b).rev() {
            let row: Vec<String> = (0..self.a).map(|i| self.get(i, j).to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    East,
    North,
}

/// First adjacency violated by `a`: the cell and the side of it that does
/// not match its neighbor.
pub fn wang_mismatch(w: &WangTileSet, a: &WangAssignment) -> Result<Option<(usize, usize, Side)>, WangError> {
    for &index in &a.cells {
        w.tile(index)?;
    }
    let (na, nb) = a.dims();
    for j in 0..nb {
        for i in 0..na {
            let here = w.tiles[a.get(i, j)];
            if here.east != w.tiles[a.get(i + 1, j)].west {
                return Ok(Some((i, j, Side::East)));
            }
            if here.north != w.tiles[a.get(i, j + 1)].south {
                return Ok(Some((i, j, Side::North)));
            }
        }
    }
    Ok(None)
}

pub fn verify_wang(w: &WangTileSet, a: &WangAssignment) -> Result<bool, WangError> {
    Ok(wang_mismatch(w, a)?.is_none())
}

struct TorusSearch<'a> {
    set: &'a WangTileSet,
    a: usize,
    b: usize,
    grid: Vec<Option<usize>>,
}

impl TorusSearch<'_> {
    fn at(&self, i: usize, j: usize) -> Option<usize> {
        self.grid[(j % self.b) * self.a + (i % self.a)]
    }

    fn fits(&self, tile: usize, i: usize, j: usize) -> bool {
        let t = &self.set.tiles[tile];
        let (a, b) = (self.a, self.b);
        // On a one-wide torus a cell is its own neighbor.
        let look = |ni: usize, nj: usize| {
            if ni % a == i % a && nj % b == j % b {
                Some(tile)
            } else {
                self.at(ni, nj)
            }
        };
        let ok = |n: Option<usize>, f: &dyn Fn(&WangTile) -> bool| n.is_none_or(|n| f(&self.set.tiles[n]));
        ok(look(i + a - 1, j), &|n| n.east == t.west)
            && ok(look(i + 1, j), &|n| n.west == t.east)
            && ok(look(i, j + b - 1), &|n| n.north == t.south)
            && ok(look(i, j + 1), &|n| n.south == t.north)
    }

    fn has_candidate(&self, i: usize, j: usize) -> bool {
        self.at(i, j).is_some() || (0..self.set.p()).any(|t| self.fits(t, i, j))
    }

    fn run(&mut self, k: usize) -> bool {
        if k == self.grid.len() {
            return true;
        }
        let (i, j) = (k % self.a, k / self.a);
        for tile in 0..self.set.p() {
            if !self.fits(tile, i, j) {
                continue;
            }
            self.grid[k] = Some(tile);
            let alive = self.has_candidate(i + 1, j) && self.has_candidate(i, j + 1);
            if alive && self.run(k + 1) {
                return true;
            }
            self.grid[k] = None;
        }
        false
    }
}

/// Finds a valid assignment on the `a x b` torus, or proves there is none.
/// Cells are filled row by row from the south-west, tiles tried in input
/// order, so the answer is deterministic.
pub fn solve_torus(w: &WangTileSet, a: usize, b: usize) -> Option<WangAssignment> {
    if a == 0 || b == 0 {
        return None;
    }
    let mut search = TorusSearch { set: w, a, b, grid: vec![None; a * b] };
    if !search.run(0) {
        return None;
    }
    let cells = search.grid.into_iter().map(|c| c.expect("complete")).collect();
    Some(WangAssignment { a, b, cells })
}

/// Smallest torus with `a, b <= max_side` admitting a tiling, ordered by
/// area, then by `a`.
pub fn smallest_torus(w: &WangTileSet, max_side: usize) -> Option<WangAssignment> {
    let mut shapes: Vec<(usize, usize)> =
        (1..=max_side).flat_map(|a| (1..=max_side).map(move |b| (a, b))).collect();
    shapes.sort_by_key(|&(a, b)| (a * b, a));
    shapes.into_iter().find_map(|(a, b)| solve_torus(w, a, b))
}
