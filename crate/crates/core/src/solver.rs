//! Exact-cover search for translational tilings of boxes and quotient
//! regions.
//!
//! Rows are `(tile, offset)` placements, columns are region cells. The
//! search is Knuth's Algorithm X over dancing links, always branching on the
//! column with the fewest remaining rows (ties to the lowest cell index,
//! which is lexicographic cell order).

use std::collections::HashSet;
use std::sync::Arc;

use crate::error::SolverError;
use crate::geometry::{Cell, Polyform};
use crate::lattice::QuotientRegion;
use crate::tiling::{Placement, TileRef, TilingCertificate};

/// Largest region the solver accepts.
pub const MAX_REGION_CELLS: u64 = 1 << 22;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Region {
    /// `[0, d0) x [0, d1) x ...`, no wrapping.
    Box(Vec<i32>),
    /// Z^n modulo a period lattice.
    Quotient(QuotientRegion),
}

impl Region {
    pub fn dim(&self) -> usize {
        match self {
            Region::Box(d) => d.len(),
            Region::Quotient(q) => q.dim(),
        }
    }

    pub fn cell_count(&self) -> u64 {
        match self {
            Region::Box(d) => d.iter().map(|&s| s.max(0) as u64).product(),
            Region::Quotient(q) => q.det(),
        }
    }

    fn cell_at(&self, mut idx: usize) -> Cell {
        match self {
            Region::Box(d) => {
                let mut out = [0i32; 4];
                for k in (0..d.len()).rev() {
                    out[k] = (idx % d[k] as usize) as i32;
                    idx /= d[k] as usize;
                }
                Cell(out)
            }
            Region::Quotient(q) => q.cell_at(idx),
        }
    }

    /// Column of a cell, or `None` if it falls outside a box.
    fn index(&self, c: Cell) -> Option<usize> {
        match self {
            Region::Box(d) => {
                let mut idx = 0usize;
                for (k, &side) in d.iter().enumerate() {
                    if c.0[k] < 0 || c.0[k] >= side {
                        return None;
                    }
                    idx = idx * side as usize + c.0[k] as usize;
                }
                Some(idx)
            }
            Region::Quotient(q) => Some(q.index(c)),
        }
    }

    /// Period lattice under which a solution is also a periodic tiling.
    pub fn lattice(&self) -> QuotientRegion {
        match self {
            Region::Box(d) => {
                let n = d.len();
                let rows = (0..n).map(|i| (0..n).map(|j| if i == j { d[i] as i64 } else { 0 }).collect()).collect();
                QuotientRegion::new(rows).expect("non-empty box")
            }
            Region::Quotient(q) => q.clone(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    First,
    Count,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    /// One tiling, as placements.
    Found(Vec<Placement>),
    /// Exhaustive search found no tiling.
    Unsat,
    Count(u64),
    /// The node budget ran out; `counted` tilings were seen before it did.
    BudgetExhausted { nodes: u64, counted: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of search nodes (row selections).
    pub nodes: u64,
    pub max_cells: u64,
}

impl Default for Limits {
    fn default() -> Limits {
        Limits { nodes: u64::MAX, max_cells: MAX_REGION_CELLS }
    }
}

/// All placements of `tiles` in `region`, each with its sorted column set.
pub fn placements(tiles: &[Polyform], region: &Region) -> Result<Vec<(Placement, Vec<usize>)>, SolverError> {
    if tiles.is_empty() {
        return Err(SolverError::NoTiles);
    }
    for t in tiles {
        if t.dim() != region.dim() {
            return Err(SolverError::DimensionMismatch { expected: region.dim(), found: t.dim() });
        }
        if t.is_empty() {
            return Err(SolverError::EmptyTile);
        }
    }
    let n = region.cell_count() as usize;
    let mut rows = Vec::new();
    for (ti, tile) in tiles.iter().enumerate() {
        let anchor = tile.cells()[0];
        for idx in 0..n {
            let offset = region.cell_at(idx).sub(anchor);
            let mut cols = Vec::with_capacity(tile.volume());
            let mut fits = true;
            for c in tile.cells() {
                match region.index(c.offset(offset)) {
                    Some(col) => cols.push(col),
                    None => {
                        fits = false;
                        break;
                    }
                }
            }
            if !fits {
                continue;
            }
            cols.sort_unstable();
            if cols.windows(2).any(|w| w[0] == w[1]) {
                continue;
            }
            rows.push((Placement { tile: ti, offset }, cols));
        }
    }
    Ok(rows)
}

struct Dlx {
    left: Vec<usize>,
    right: Vec<usize>,
    up: Vec<usize>,
    down: Vec<usize>,
    col: Vec<usize>,
    row: Vec<usize>,
    size: Vec<usize>,
    columns: usize,
}

impl Dlx {
    /// Node 0 is the root, nodes `1..=columns` the column headers.
    fn new(columns: usize, rows: &[Vec<usize>]) -> Dlx {
        let headers = columns + 1;
        let total = headers + rows.iter().map(Vec::len).sum::<usize>();
        let mut d = Dlx {
            left: Vec::with_capacity(total),
            right: Vec::with_capacity(total),
            up: Vec::with_capacity(total),
            down: Vec::with_capacity(total),
            col: Vec::with_capacity(total),
            row: Vec::with_capacity(total),
            size: vec![0; headers],
            columns,
        };
        for i in 0..headers {
            d.left.push(if i == 0 { columns } else { i - 1 });
            d.right.push(if i == columns { 0 } else { i + 1 });
            d.up.push(i);
            d.down.push(i);
            d.col.push(i);
            d.row.push(usize::MAX);
        }
        for (r, cols) in rows.iter().enumerate() {
            let first = d.col.len();
            for (k, &c) in cols.iter().enumerate() {
                let h = c + 1;
                let node = d.col.len();
                d.col.push(h);
                d.row.push(r);
                d.up.push(d.up[h]);
                d.down.push(h);
                let last = d.up[h];
                d.down[last] = node;
                d.up[h] = node;
                d.size[h] += 1;
                d.left.push(if k == 0 { node } else { node - 1 });
                d.right.push(first);
                if k > 0 {
                    d.right[node - 1] = node;
                    d.left[first] = node;
                }
            }
        }
        d
    }

    fn cover(&mut self, c: usize) {
        let (l, r) = (self.left[c], self.right[c]);
        self.right[l] = r;
        self.left[r] = l;
        let mut i = self.down[c];
        while i != c {
            let mut j = self.right[i];
            while j != i {
                let (u, dn) = (self.up[j], self.down[j]);
                self.down[u] = dn;
                self.up[dn] = u;
                self.size[self.col[j]] -= 1;
                j = self.right[j];
            }
            i = self.down[i];
        }
    }

    fn uncover(&mut self, c: usize) {
        let mut i = self.up[c];
        while i != c {
            let mut j = self.left[i];
            while j != i {
                self.size[self.col[j]] += 1;
                let (u, dn) = (self.up[j], self.down[j]);
                self.down[u] = j;
                self.up[dn] = j;
                j = self.left[j];
            }
            i = self.up[i];
        }
        let (l, r) = (self.left[c], self.right[c]);
        self.right[l] = c;
        self.left[r] = c;
    }

    /// Live column with fewest rows; headers are linked in index order, so
    /// the first minimum found is the lowest cell.
    fn choose(&self) -> Option<usize> {
        let mut best = None;
        let mut best_size = usize::MAX;
        let mut c = self.right[0];
        while c != 0 {
            if self.size[c] < best_size {
                best_size = self.size[c];
                best = Some(c);
                if best_size == 0 {
                    break;
                }
            }
            c = self.right[c];
        }
        best
    }
}

struct Search {
    dlx: Dlx,
    mode: Mode,
    budget: u64,
    nodes: u64,
    count: u64,
    stack: Vec<usize>,
    found: Option<Vec<usize>>,
    exhausted: bool,
}

impl Search {
    /// Returns true to stop.
    fn run(&mut self) -> bool {
        let Some(c) = self.dlx.choose() else {
            self.count += 1;
            if self.mode == Mode::First {
                self.found = Some(self.stack.clone());
                return true;
            }
            return false;
        };
        if self.dlx.size[c] == 0 {
            return false;
        }
        self.dlx.cover(c);
        let mut r = self.dlx.down[c];
        let mut stop = false;
        while r != c {
            if self.nodes >= self.budget {
                self.exhausted = true;
                stop = true;
                break;
            }
            self.nodes += 1;
            self.stack.push(self.dlx.row[r]);
            let mut j = self.dlx.right[r];
            while j != r {
                self.dlx.cover(self.dlx.col[j]);
                j = self.dlx.right[j];
            }
            stop = self.run();
            let mut j = self.dlx.left[r];
            while j != r {
                self.dlx.uncover(self.dlx.col[j]);
                j = self.dlx.left[j];
            }
            self.stack.pop();
            if stop {
                break;
            }
            r = self.dlx.down[r];
        }
        self.dlx.uncover(c);
        stop
    }
}

pub fn solve(tiles: &[Polyform], region: &Region, mode: Mode, limits: Limits) -> Result<Outcome, SolverError> {
    let cells = region.cell_count();
    if cells > limits.max_cells {
        return Err(SolverError::RegionTooLarge { cells, limit: limits.max_cells });
    }
    let rows = placements(tiles, region)?;
    let cols: Vec<Vec<usize>> = rows.iter().map(|(_, c)| c.clone()).collect();
    let mut search = Search {
        dlx: Dlx::new(cells as usize, &cols),
        mode,
        budget: limits.nodes,
        nodes: 0,
        count: 0,
        stack: Vec::new(),
        found: None,
        exhausted: false,
    };
    debug_assert_eq!(search.dlx.columns, cells as usize);
    search.run();
    if search.exhausted {
        return Ok(Outcome::BudgetExhausted { nodes: search.nodes, counted: search.count });
    }
    Ok(match (mode, search.found) {
        (Mode::First, Some(chosen)) => Outcome::Found(chosen.into_iter().map(|r| rows[r].0).collect()),
        (Mode::First, None) => Outcome::Unsat,
        (Mode::Count, _) => Outcome::Count(search.count),
    })
}

/// Wraps a solution as a certificate over the region's period lattice.
pub fn certificate(tiles: &[Polyform], region: &Region, placements: Vec<Placement>) -> TilingCertificate {
    let refs = tiles
        .iter()
        .enumerate()
        .map(|(i, t)| TileRef { name: format!("tile{i}"), shape: Arc::new(t.clone()) })
        .collect();
    let mut cert = TilingCertificate::new(region.lattice(), refs);
    cert.placements = placements;
    cert
}

/// Counts tilings by plain depth-first search: always cover the lowest
/// uncovered cell, trying every placement through it.
pub fn naive_count(tiles: &[Polyform], region: &Region) -> Result<u64, SolverError> {
    let rows = placements(tiles, region)?;
    let n = region.cell_count() as usize;
    let mut through: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (r, (_, cols)) in rows.iter().enumerate() {
        for &c in cols {
            through[c].push(r);
        }
    }
    let mut covered = vec![false; n];
    fn go(next: usize, covered: &mut [bool], through: &[Vec<usize>], rows: &[(Placement, Vec<usize>)]) -> u64 {
        let Some(e) = (next..covered.len()).find(|&c| !covered[c]) else {
            return 1;
        };
        let mut total = 0;
        for &r in &through[e] {
            let cols = &rows[r].1;
            if cols.iter().any(|&c| covered[c]) {
                continue;
            }
            cols.iter().for_each(|&c| covered[c] = true);
            total += go(e + 1, covered, through, rows);
            cols.iter().for_each(|&c| covered[c] = false);
        }
        total
    }
    Ok(go(0, &mut covered, &through, &rows))
}

/// Whether the dancing-links count agrees with the naive search.
pub fn cross_validate(tiles: &[Polyform], region: &Region) -> Result<bool, SolverError> {
    let fast = match solve(tiles, region, Mode::Count, Limits::default())? {
        Outcome::Count(n) => n,
        other => unreachable!("count mode without budget returned {other:?}"),
    };
    Ok(fast == naive_count(tiles, region)?)
}

/// Distinct placements as `(tile, offset)` pairs, for comparing solutions.
pub fn placement_set(p: &[Placement]) -> HashSet<(usize, Cell)> {
    p.iter().map(|p| (p.tile, p.offset)).collect()
}
