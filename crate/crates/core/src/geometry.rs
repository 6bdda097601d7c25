//! Finite sets of unit cells in `Z^n` (n = 2, 3, 4) under translation.
//!
//! Axis convention used everywhere in the crate: axis 0 is x (east+), axis 1
//! is y (north+), axis 2 is z (up+, layers counted bottom-first) and axis 3 is
//! w (time, frames counted into the future).

use std::collections::HashMap;
use std::fmt;

use crate::error::GeometryError;

/// Largest supported dimension.
pub const MAX_DIM: usize = 4;

/// A lattice cell. Coordinates past the owning polyform's dimension are zero.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Cell(pub [i32; MAX_DIM]);

impl Cell {
    pub const ORIGIN: Cell = Cell([0; MAX_DIM]);

    /// Builds a cell from up to four coordinates, zero-padding the rest.
    pub fn new(coords: &[i32]) -> Cell {
        assert!(coords.len() <= MAX_DIM, "at most {MAX_DIM} coordinates");
        let mut c = [0; MAX_DIM];
        c[..coords.len()].copy_from_slice(coords);
        Cell(c)
    }

    pub fn xyz(x: i32, y: i32, z: i32) -> Cell {
        Cell([x, y, z, 0])
    }

    pub fn xyzw(x: i32, y: i32, z: i32, w: i32) -> Cell {
        Cell([x, y, z, w])
    }

    #[inline]
    pub fn coord(&self, axis: usize) -> i32 {
        self.0[axis]
    }

    #[inline]
    pub fn offset(self, v: Cell) -> Cell {
        let mut c = self.0;
        for (a, b) in c.iter_mut().zip(v.0) {
            *a += b;
        }
        Cell(c)
    }

    #[inline]
    pub fn sub(self, v: Cell) -> Cell {
        let mut c = self.0;
        for (a, b) in c.iter_mut().zip(v.0) {
            *a -= b;
        }
        Cell(c)
    }

    pub fn scaled(self, k: i32) -> Cell {
        Cell(self.0.map(|a| a * k))
    }

    pub fn coords(&self, dim: usize) -> &[i32] {
        &self.0[..dim]
    }
}

impl fmt::Debug for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.0[0], self.0[1], self.0[2], self.0[3])
    }
}

fn check_dim(dim: usize) -> Result<(), GeometryError> {
    if (2..=MAX_DIM).contains(&dim) {
        Ok(())
    } else {
        Err(GeometryError::UnsupportedDimension(dim))
    }
}

/// A finite, duplicate-free set of cells of a fixed dimension.
///
/// Cells are kept sorted, so two polyforms are equal exactly when their cell
/// sets are equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polyform {
    dim: usize,
    cells: Vec<Cell>,
}

impl fmt::Debug for Polyform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polyform(dim={}, volume={})", self.dim, self.cells.len())
    }
}

impl Polyform {
    pub fn empty(dim: usize) -> Result<Polyform, GeometryError> {
        check_dim(dim)?;
        Ok(Polyform { dim, cells: Vec::new() })
    }

    /// Collects cells given as coordinate slices of length `dim`.
    pub fn from_coords<'a, I>(dim: usize, coords: I) -> Result<Polyform, GeometryError>
    where
        I: IntoIterator<Item = &'a [i32]>,
    {
        check_dim(dim)?;
        let mut cells = Vec::new();
        for c in coords {
            if c.len() != dim {
                return Err(GeometryError::DimensionMismatch { expected: dim, found: c.len() });
            }
            cells.push(Cell::new(c));
        }
        Ok(Polyform::from_cells(dim, cells))
    }

    /// Builds a polyform from cells whose unused trailing coordinates are zero.
    /// Duplicates collapse.
    pub fn from_cells(dim: usize, mut cells: Vec<Cell>) -> Polyform {
        debug_assert!(check_dim(dim).is_ok());
        debug_assert!(cells.iter().all(|c| c.0[dim..].iter().all(|&a| a == 0)));
        cells.sort_unstable();
        cells.dedup();
        Polyform { dim, cells }
    }

    /// Axis-aligned box `[lo, hi)`.
    pub fn cuboid(dim: usize, lo: &[i32], hi: &[i32]) -> Result<Polyform, GeometryError> {
        check_dim(dim)?;
        if lo.len() != dim || hi.len() != dim {
            return Err(GeometryError::DimensionMismatch { expected: dim, found: lo.len().min(hi.len()) });
        }
        let mut cells = Vec::new();
        let mut cur = Cell::new(lo);
        if lo.iter().zip(hi).any(|(a, b)| a >= b) {
            return Ok(Polyform { dim, cells });
        }
        loop {
            cells.push(cur);
            let mut axis = dim;
            loop {
                if axis == 0 {
                    return Ok(Polyform::from_cells(dim, cells));
                }
                axis -= 1;
                cur.0[axis] += 1;
                if cur.0[axis] < hi[axis] {
                    break;
                }
                cur.0[axis] = lo[axis];
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn volume(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, c: &Cell) -> bool {
        self.cells.binary_search(c).is_ok()
    }

    fn same_dim(&self, other: &Polyform) -> Result<(), GeometryError> {
        if self.dim == other.dim {
            Ok(())
        } else {
            Err(GeometryError::DimensionMismatch { expected: self.dim, found: other.dim })
        }
    }

    pub fn translate(&self, v: &[i32]) -> Result<Polyform, GeometryError> {
        if v.len() != self.dim {
            return Err(GeometryError::DimensionMismatch { expected: self.dim, found: v.len() });
        }
        Ok(self.translated(Cell::new(v)))
    }

    /// Translation by a cell-valued vector; trailing coordinates must be zero.
    pub fn translated(&self, v: Cell) -> Polyform {
        debug_assert!(v.0[self.dim..].iter().all(|&a| a == 0));
        // Translation preserves lexicographic order.
        Polyform { dim: self.dim, cells: self.cells.iter().map(|c| c.offset(v)).collect() }
    }

    /// Inclusive bounding box `(min, max)`; `None` for the empty form.
    pub fn bounding_box(&self) -> Option<(Cell, Cell)> {
        let first = *self.cells.first()?;
        let (mut lo, mut hi) = (first, first);
        for c in &self.cells {
            for a in 0..self.dim {
                lo.0[a] = lo.0[a].min(c.0[a]);
                hi.0[a] = hi.0[a].max(c.0[a]);
            }
        }
        Some((lo, hi))
    }

    /// Translate so that the coordinate-wise minimum sits at the origin.
    pub fn normalized(&self) -> Polyform {
        match self.bounding_box() {
            Some((lo, _)) => self.translated(Cell::ORIGIN.sub(lo)),
            None => self.clone(),
        }
    }

    pub fn eq_up_to_translation(&self, other: &Polyform) -> bool {
        self.dim == other.dim && self.normalized() == other.normalized()
    }

    /// First common cell, if any.
    pub fn overlap_witness(&self, other: &Polyform) -> Result<Option<Cell>, GeometryError> {
        self.same_dim(other)?;
        let (mut i, mut j) = (0, 0);
        while i < self.cells.len() && j < other.cells.len() {
            match self.cells[i].cmp(&other.cells[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return Ok(Some(self.cells[i])),
            }
        }
        Ok(None)
    }

    pub fn disjoint(&self, other: &Polyform) -> Result<bool, GeometryError> {
        Ok(self.overlap_witness(other)?.is_none())
    }

    /// Disjoint union. Overlapping operands are an error carrying a shared cell.
    pub fn union(&self, other: &Polyform) -> Result<Polyform, GeometryError> {
        if let Some(w) = self.overlap_witness(other)? {
            return Err(GeometryError::Overlap { witness: w.coords(self.dim).to_vec() });
        }
        let mut cells = Vec::with_capacity(self.cells.len() + other.cells.len());
        let (mut i, mut j) = (0, 0);
        while i < self.cells.len() && j < other.cells.len() {
            if self.cells[i] < other.cells[j] {
                cells.push(self.cells[i]);
                i += 1;
            } else {
                cells.push(other.cells[j]);
                j += 1;
            }
        }
        cells.extend_from_slice(&self.cells[i..]);
        cells.extend_from_slice(&other.cells[j..]);
        Ok(Polyform { dim: self.dim, cells })
    }

    /// Union of many pairwise-disjoint polyforms of one dimension.
    pub fn disjoint_union<'a, I>(dim: usize, parts: I) -> Result<Polyform, GeometryError>
    where
        I: IntoIterator<Item = &'a Polyform>,
    {
        check_dim(dim)?;
        let mut cells = Vec::new();
        for p in parts {
            if p.dim != dim {
                return Err(GeometryError::DimensionMismatch { expected: dim, found: p.dim });
            }
            cells.extend_from_slice(&p.cells);
        }
        cells.sort_unstable();
        if let Some(w) = cells.windows(2).find(|w| w[0] == w[1]) {
            return Err(GeometryError::Overlap { witness: w[0].coords(dim).to_vec() });
        }
        Ok(Polyform { dim, cells })
    }

    /// Set difference `self \ other`.
    pub fn difference(&self, other: &Polyform) -> Result<Polyform, GeometryError> {
        self.same_dim(other)?;
        let cells = self.cells.iter().filter(|c| !other.contains(c)).copied().collect();
        Ok(Polyform { dim: self.dim, cells })
    }

    /// Number of face-adjacency components.
    pub fn component_count(&self) -> Result<usize, GeometryError> {
        if self.cells.is_empty() {
            return Err(GeometryError::Empty);
        }
        Ok(self.component_labels().1)
    }

    pub fn is_connected(&self) -> Result<bool, GeometryError> {
        Ok(self.component_count()? == 1)
    }

    /// Component label per cell (same order as `cells()`) and the number of
    /// components.
    pub fn component_labels(&self) -> (Vec<u32>, usize) {
        let n = self.cells.len();
        let mut label = vec![u32::MAX; n];
        if n == 0 {
            return (label, 0);
        }
        let index = CellIndex::new(self);
        if let CellIndex::Dense { lo, extent, slots } = &index {
            return self.dense_labels(lo, extent, slots);
        }
        let mut count = 0u32;
        let mut stack = Vec::new();
        for start in 0..n {
            if label[start] != u32::MAX {
                continue;
            }
            label[start] = count;
            stack.push(start);
            while let Some(i) = stack.pop() {
                let c = self.cells[i];
                for axis in 0..self.dim {
                    for step in [-1, 1] {
                        let mut nb = c;
                        nb.0[axis] += step;
                        if let Some(j) = index.get(&nb) {
                            if label[j] == u32::MAX {
                                label[j] = count;
                                stack.push(j);
                            }
                        }
                    }
                }
            }
            count += 1;
        }
        (label, count as usize)
    }

    fn dense_labels(&self, lo: &Cell, extent: &[usize; MAX_DIM], slots: &[u32]) -> (Vec<u32>, usize) {
        let mut stride = [1usize; MAX_DIM];
        for a in (0..MAX_DIM - 1).rev() {
            stride[a] = stride[a + 1] * extent[a + 1];
        }
        let mut label = vec![u32::MAX; self.cells.len()];
        let mut count = 0u32;
        let mut stack = Vec::new();
        for start in 0..self.cells.len() {
            if label[start] != u32::MAX {
                continue;
            }
            label[start] = count;
            stack.push(start);
            while let Some(i) = stack.pop() {
                let c = &self.cells[i];
                let f = dense_flat(lo, extent, c).expect("cell inside its own bounding box");
                for a in 0..self.dim {
                    let off = (c.0[a] - lo.0[a]) as usize;
                    let below = (off > 0).then(|| f - stride[a]);
                    let above = (off + 1 < extent[a]).then(|| f + stride[a]);
                    for nf in [below, above].into_iter().flatten() {
                        let j = slots[nf];
                        if j != u32::MAX && label[j as usize] == u32::MAX {
                            label[j as usize] = count;
                            stack.push(j as usize);
                        }
                    }
                }
            }
            count += 1;
        }
        (label, count as usize)
    }

    /// `{(x,y,z,w) : (x,y,z) in self, 0 <= w < frames}`.
    pub fn thicken(&self, frames: i32) -> Result<Polyform, GeometryError> {
        if self.dim != 3 {
            return Err(GeometryError::DimensionMismatch { expected: 3, found: self.dim });
        }
        if frames < 1 {
            return Err(GeometryError::InvalidFrameCount(frames));
        }
        let mut cells = Vec::with_capacity(self.cells.len() * frames as usize);
        for c in &self.cells {
            for w in 0..frames {
                cells.push(Cell([c.0[0], c.0[1], c.0[2], w]));
            }
        }
        // Already sorted: (x,y,z) ascending then w ascending.
        Ok(Polyform { dim: 4, cells })
    }

    /// The 3D cross-section at time `w` of a 4D polyform.
    pub fn time_slice(&self, w: i32) -> Result<Polyform, GeometryError> {
        if self.dim != 4 {
            return Err(GeometryError::DimensionMismatch { expected: 4, found: self.dim });
        }
        let cells = self
            .cells
            .iter()
            .filter(|c| c.0[3] == w)
            .map(|c| Cell([c.0[0], c.0[1], c.0[2], 0]))
            .collect();
        Ok(Polyform::from_cells(3, cells))
    }
}

/// Cell -> position lookup, dense over the bounding box when that is small.
pub(crate) enum CellIndex {
    Dense { lo: Cell, extent: [usize; MAX_DIM], slots: Vec<u32> },
    Sparse(HashMap<Cell, usize>),
}

const DENSE_LIMIT: usize = 1 << 26;

impl CellIndex {
    pub(crate) fn new(form: &Polyform) -> Self {
        let Some((lo, hi)) = form.bounding_box() else {
            return CellIndex::Sparse(HashMap::new());
        };
        let mut extent = [1usize; MAX_DIM];
        let mut total = 1usize;
        for a in 0..MAX_DIM {
            extent[a] = (hi.0[a] - lo.0[a] + 1) as usize;
            total = total.saturating_mul(extent[a]);
        }
        if total <= DENSE_LIMIT && form.cells.len() < u32::MAX as usize {
            let mut slots = vec![u32::MAX; total];
            for (i, c) in form.cells.iter().enumerate() {
                slots[dense_flat(&lo, &extent, c).expect("cell inside its own bounding box")] = i as u32;
            }
            CellIndex::Dense { lo, extent, slots }
        } else {
            CellIndex::Sparse(form.cells.iter().enumerate().map(|(i, c)| (*c, i)).collect())
        }
    }

    pub(crate) fn get(&self, c: &Cell) -> Option<usize> {
        match self {
            CellIndex::Dense { lo, extent, slots } => {
                let i = slots[dense_flat(lo, extent, c)?];
                (i != u32::MAX).then_some(i as usize)
            }
            CellIndex::Sparse(m) => m.get(c).copied(),
        }
    }
}

fn dense_flat(lo: &Cell, extent: &[usize; MAX_DIM], c: &Cell) -> Option<usize> {
    let mut f = 0usize;
    for a in 0..MAX_DIM {
        let off = c.0[a] - lo.0[a];
        if off < 0 || off as usize >= extent[a] {
            return None;
        }
        f = f * extent[a] + off as usize;
    }
    Some(f)
}

/// Side length of a functional cube.
pub const CUBE: i32 = 10;

/// Bit set over the five onion shells; bit `i - 1` stands for `T_i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct ShellSet(u8);

impl ShellSet {
    pub const EMPTY: ShellSet = ShellSet(0);
    pub const FULL: ShellSet = ShellSet(0b11111);

    pub fn from_shells(shells: &[u8]) -> Result<ShellSet, GeometryError> {
        let mut bits = 0u8;
        for &s in shells {
            if !(1..=5).contains(&s) {
                return Err(GeometryError::MalformedFrame(format!("no shell T{s}")));
            }
            bits |= 1 << (s - 1);
        }
        Ok(ShellSet(bits))
    }

    pub fn contains(self, shell: u8) -> bool {
        (1..=5).contains(&shell) && self.0 & (1 << (shell - 1)) != 0
    }

    pub fn union(self, other: ShellSet) -> ShellSet {
        ShellSet(self.0 | other.0)
    }

    pub fn intersects(self, other: ShellSet) -> bool {
        self.0 & other.0 != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Number of cells of K covered.
    pub fn volume(self) -> usize {
        (1..=5u8).filter(|&s| self.contains(s)).map(shell_size).sum()
    }
}

impl fmt::Display for ShellSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if *self == ShellSet::FULL {
            return f.write_str("K");
        }
        if self.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = (1..=5u8).filter(|&s| self.contains(s)).map(|s| format!("T{s}")).collect();
        f.write_str(&parts.join("|"))
    }
}

impl std::str::FromStr for ShellSet {
    type Err = GeometryError;

    /// Accepts `K`, `0` / `empty` / `∅`, or shells joined by `|` or `∪`.
    fn from_str(s: &str) -> Result<ShellSet, GeometryError> {
        let s = s.trim();
        match s {
            "K" => return Ok(ShellSet::FULL),
            "0" | "empty" | "∅" => return Ok(ShellSet::EMPTY),
            _ => {}
        }
        let mut shells = Vec::new();
        for part in s.split(['|', '∪']) {
            let part = part.trim();
            let n = part
                .strip_prefix('T')
                .and_then(|d| d.parse::<u8>().ok())
                .ok_or_else(|| GeometryError::MalformedFrame(s.to_string()))?;
            shells.push(n);
        }
        ShellSet::from_shells(&shells).map_err(|_| GeometryError::MalformedFrame(s.to_string()))
    }
}

/// Onion shell index (1..=5) of a cell of K = [0,10)^3: its L-infinity
/// distance to the cube boundary plus one.
pub fn shell_of(x: i32, y: i32, z: i32) -> Option<u8> {
    if [x, y, z].iter().any(|a| !(0..CUBE).contains(a)) {
        return None;
    }
    let depth = |a: i32| a.min(CUBE - 1 - a);
    Some(depth(x).min(depth(y)).min(depth(z)) as u8 + 1)
}

fn shell_size(shell: u8) -> usize {
    let outer = (CUBE - 2 * (shell as i32 - 1)) as usize;
    let inner = outer.saturating_sub(2);
    if shell == 5 {
        outer.pow(3)
    } else {
        outer.pow(3) - inner.pow(3)
    }
}

/// The partition of K into five nested surface shells `T_1 .. T_5`.
#[derive(Clone, Debug)]
pub struct OnionDecomposition {
    shells: Vec<Polyform>,
}

impl OnionDecomposition {
    /// `i` is 1-based.
    pub fn shell(&self, i: usize) -> &Polyform {
        &self.shells[i - 1]
    }

    pub fn shells(&self) -> &[Polyform] {
        &self.shells
    }

    /// Cells of K belonging to the given shells.
    pub fn cells_of(&self, set: ShellSet) -> Polyform {
        let mut cells = Vec::with_capacity(set.volume());
        for s in 1..=5u8 {
            if set.contains(s) {
                cells.extend_from_slice(self.shells[s as usize - 1].cells());
            }
        }
        Polyform::from_cells(3, cells)
    }
}

pub fn onion_shells() -> OnionDecomposition {
    let mut buckets: Vec<Vec<Cell>> = vec![Vec::new(); 5];
    for x in 0..CUBE {
        for y in 0..CUBE {
            for z in 0..CUBE {
                let s = shell_of(x, y, z).expect("inside K");
                buckets[s as usize - 1].push(Cell::xyz(x, y, z));
            }
        }
    }
    OnionDecomposition { shells: buckets.into_iter().map(|b| Polyform::from_cells(3, b)).collect() }
}

/// Stacks frames (subsets of K given as shell unions) along the time axis:
/// frame `j` occupies `w = j`.
pub fn compose_frames(frames: &[ShellSet]) -> Polyform {
    let mut cells = Vec::new();
    for x in 0..CUBE {
        for y in 0..CUBE {
            for z in 0..CUBE {
                let s = shell_of(x, y, z).expect("inside K");
                for (w, f) in frames.iter().enumerate() {
                    if f.contains(s) {
                        cells.push(Cell::xyzw(x, y, z, w as i32));
                    }
                }
            }
        }
    }
    Polyform::from_cells(4, cells)
}

/// Parses a comma-separated frame list such as `K, T4, T2|T4, 0`.
pub fn parse_frames(text: &str) -> Result<Vec<ShellSet>, GeometryError> {
    text.split(',').map(|f| f.parse()).collect()
}
