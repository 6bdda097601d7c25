//! Periodic tilings as certificates, the Wang-to-space builder, and the
//! partition verifier.
//!
//! Wang cell `(i, j)` becomes one encoder at block position
//! `i * (2t, 6) + j * (-2t, 6)`, lowered by `2w` blocks for tile `w` so
//! that its own encoding layer lands on the global matching layer `z = 0`.
//! Between encoder rows sits a row of linkers at one-block pitch; the
//! north-west neighbor plays the Wang north neighbor and the north-east one
//! the Wang east neighbor. Fillers close the u/d cavities of all other
//! encoding layers.

use std::collections::HashSet;
use std::sync::Arc;

use crate::error::TilingError;
use crate::geometry::{Cell, Polyform, CUBE};
use crate::lattice::QuotientRegion;
use crate::reduction::{build_tileset3, build_tileset4, TileSet, ENCODER, FILLER, LINKER, LINKER_D, LINKER_U};
use crate::wang::{wang_mismatch, WangAssignment, WangTileSet};

/// Frames per slice in the 4D construction.
pub const SLICE: i32 = 10;

/// Largest fundamental domain the verifier will materialize.
pub const MAX_DOMAIN: u64 = 1 << 32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TileRef {
    pub name: String,
    pub shape: Arc<Polyform>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Placement {
    pub tile: usize,
    pub offset: Cell,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Params {
    pub t: usize,
    pub p: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TilingCertificate {
    pub region: QuotientRegion,
    pub tiles: Vec<TileRef>,
    pub placements: Vec<Placement>,
    /// Code length and Wang tile count of the construction, if any.
    pub params: Option<Params>,
}

impl TilingCertificate {
    pub fn new(region: QuotientRegion, tiles: Vec<TileRef>) -> TilingCertificate {
        TilingCertificate { region, tiles, placements: Vec::new(), params: None }
    }

    pub fn dim(&self) -> usize {
        self.region.dim()
    }

    pub fn tile_index(&self, name: &str) -> Option<usize> {
        self.tiles.iter().position(|t| t.name == name)
    }

    pub fn place(&mut self, name: &str, offset: Cell) -> Result<(), TilingError> {
        let tile = self.tile_index(name).ok_or_else(|| TilingError::UnknownTile(name.to_string()))?;
        self.placements.push(Placement { tile, offset });
        Ok(())
    }

    pub fn tile_name(&self, p: &Placement) -> &str {
        &self.tiles[p.tile].name
    }

    /// Indices of placements of tiles whose name starts with `prefix`.
    pub fn placements_named(&self, prefix: &str) -> Vec<usize> {
        (0..self.placements.len()).filter(|&i| self.tiles[self.placements[i].tile].name.starts_with(prefix)).collect()
    }

    pub fn placed_volume(&self) -> u64 {
        self.placements.iter().map(|p| self.tiles[p.tile].shape.volume() as u64).sum()
    }

    fn check_shape(&self) -> Result<(), TilingError> {
        let dim = self.dim();
        for t in &self.tiles {
            if t.shape.dim() != dim {
                return Err(TilingError::DimensionMismatch { expected: dim, found: t.shape.dim() });
            }
        }
        for (index, p) in self.placements.iter().enumerate() {
            if p.tile >= self.tiles.len() {
                return Err(TilingError::TileIndex { index, tile: p.tile, count: self.tiles.len() });
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    Uncovered,
    DoubleCovered,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    /// Canonical representative of the offending residue class.
    pub cell: Cell,
    /// For a double cover, the placement that hit the class a second time.
    pub placement: Option<usize>,
}

/// Checks that the placements cover every residue class exactly once.
/// Returns the first violation found, or `None` for an exact partition.
pub fn verify_partition(cert: &TilingCertificate) -> Result<Option<Violation>, TilingError> {
    cert.check_shape()?;
    let region = &cert.region;
    let det = region.det();
    if det > MAX_DOMAIN {
        return Err(TilingError::RegionTooLarge(det));
    }
    let mut cover = vec![0u8; det as usize];
    let mut double: Option<Violation> = None;
    for (k, p) in cert.placements.iter().enumerate() {
        for c in cert.tiles[p.tile].shape.cells() {
            let idx = region.index(c.offset(p.offset));
            let n = &mut cover[idx];
            *n = n.saturating_add(1);
            if *n == 2 && double.is_none() {
                double = Some(Violation {
                    kind: ViolationKind::DoubleCovered,
                    cell: region.cell_at(idx),
                    placement: Some(k),
                });
            }
        }
    }
    if double.is_some() {
        return Ok(double);
    }
    Ok(cover.iter().position(|&n| n == 0).map(|idx| Violation {
        kind: ViolationKind::Uncovered,
        cell: region.cell_at(idx),
        placement: None,
    }))
}

fn arc_tiles(ts: &TileSet) -> Vec<TileRef> {
    ts.tiles.iter().map(|t| TileRef { name: t.name.clone(), shape: Arc::new(t.shape.clone()) }).collect()
}

/// Builds the periodic space tiling simulating `a`. With `checked`, a Wang
/// mismatch is an error; without, each linker copies the bit of the encoder
/// south of it, so a mismatch shows up as a partition violation instead.
pub fn build_tiling_from(ts: &TileSet, a: &WangAssignment, checked: bool) -> Result<TilingCertificate, TilingError> {
    let w = &ts.source;
    for &index in a.cells() {
        w.tile(index)?;
    }
    if checked {
        if let Some((i, j, _)) = wang_mismatch(w, a)? {
            return Err(TilingError::InvalidAssignment { i, j });
        }
    }
    let four_d = ts.dim == 4;
    let (t, p) = (w.t() as i32, w.p() as i32);
    let (na, nb) = a.dims();
    let width = 4 * t;
    let mut rows = vec![
        vec![na as i64 * (20 * t) as i64, na as i64 * 60, 0],
        vec![-(nb as i64) * (20 * t) as i64, nb as i64 * 60, 0],
        vec![0, 0, (20 * p) as i64],
    ];
    if four_d {
        rows.iter_mut().for_each(|r| r.push(0));
        rows.push(vec![0, 0, 0, SLICE as i64]);
    }
    let region = QuotientRegion::new(rows)?;
    let mut cert = TilingCertificate::new(region, arc_tiles(ts));
    cert.params = Some(Params { t: t as usize, p: p as usize });
    let layout = &ts.encoder;
    let at = |x: i32, y: i32, z: i32, time: i32| {
        if four_d {
            Cell::xyzw(x * CUBE, y * CUBE, z * CUBE, time)
        } else {
            Cell::xyz(x * CUBE, y * CUBE, z * CUBE)
        }
    };
    let half = SLICE / 2;
    for j in 0..nb {
        for i in 0..na {
            let tile = a.get(i, j);
            let (ex, ey, ez) = (2 * t * (i as i32 - j as i32), 6 * (i + j) as i32, -2 * tile as i32);
            cert.place(ENCODER, at(ex, ey, ez, 0))?;
            let lower = layout.north[tile].bits();
            let nw = layout.south[a.get(i, j + 1)].bits();
            let ne = layout.south[a.get(i + 1, j)].bits();
            for k in 0..width {
                let bit = lower[k as usize];
                let upper = if k < 2 * t { nw[(k + 2 * t) as usize] } else { ne[(k - 2 * t) as usize] };
                debug_assert!(!checked || bit == upper);
                let (name, time) = match (four_d, bit) {
                    (true, b) => (LINKER, if b { half } else { 0 }),
                    (false, true) => (LINKER_U, 0),
                    (false, false) => (LINKER_D, 0),
                };
                cert.place(name, at(ex + k, ey + 3, 0, time))?;
            }
            for layer in (0..p).filter(|&l| l != tile as i32) {
                let z = ez + 2 * layer;
                let words = [(0, layout.south[layer as usize].bits()), (2, layout.north[layer as usize].bits())];
                for (y, bits) in words {
                    for k in 0..width {
                        let bit = bits[k as usize];
                        let offset = match (four_d, bit) {
                            (true, b) => at(ex + k, ey + y, z, if b { half } else { 0 }),
                            (false, true) => at(ex + k, ey + y, z, 0),
                            (false, false) => at(ex + k, ey + y, z, 0).offset(Cell::xyz(0, 0, -CUBE / 2)),
                        };
                        cert.place(FILLER, offset)?;
                    }
                }
            }
        }
    }
    Ok(cert)
}

pub fn build_tiling3(w: &WangTileSet, a: &WangAssignment) -> Result<TilingCertificate, TilingError> {
    build_tiling_from(&build_tileset3(w)?, a, true)
}

pub fn build_tiling3_unchecked(w: &WangTileSet, a: &WangAssignment) -> Result<TilingCertificate, TilingError> {
    build_tiling_from(&build_tileset3(w)?, a, false)
}

pub fn build_tiling4(w: &WangTileSet, a: &WangAssignment) -> Result<TilingCertificate, TilingError> {
    build_tiling_from(&build_tileset4(w)?, a, true)
}

pub fn build_tiling4_unchecked(w: &WangTileSet, a: &WangAssignment) -> Result<TilingCertificate, TilingError> {
    build_tiling_from(&build_tileset4(w)?, a, false)
}

/// Space-only quotient: in 4D the time axis is collapsed.
fn space_region(cert: &TilingCertificate) -> Result<QuotientRegion, TilingError> {
    if cert.dim() == 4 {
        let mut gens = cert.region.rows().to_vec();
        gens.push(vec![0, 0, 0, 1]);
        QuotientRegion::from_generators(4, gens)
    } else {
        Ok(cert.region.clone())
    }
}

fn space_cell(dim: usize, x: i32, y: i32, z: i32) -> Cell {
    if dim == 4 {
        Cell::xyzw(x, y, z, 0)
    } else {
        Cell::xyz(x, y, z)
    }
}

/// Representative point of each linker: the south-west bottom corner of its
/// `l` block.
pub fn linker_points(cert: &TilingCertificate) -> Vec<Cell> {
    let rep = space_cell(cert.dim(), 0, CUBE, 0);
    cert.placements_named(LINKER).into_iter().map(|i| cert.placements[i].offset.offset(rep)).collect()
}

/// Whether the linker representative points, taken relative to one of them,
/// are exactly the lattice spanned by `(10,0,0)`, `(0,60,0)` and
/// `(0,0,20p)` modulo the period lattice (space part only in 4D).
pub fn linker_lattice_check(cert: &TilingCertificate) -> Result<bool, TilingError> {
    let params = cert.params.ok_or(TilingError::MissingParams)?;
    let points = linker_points(cert);
    let Some(&origin) = points.first() else {
        return Err(TilingError::Missing(LINKER));
    };
    let region = space_region(cert)?;
    let dim = cert.dim();
    let mut found = HashSet::new();
    for p in &points {
        if !found.insert(region.reduce(p.sub(origin))) {
            return Ok(false);
        }
    }
    let gens = [
        space_cell(dim, CUBE, 0, 0),
        space_cell(dim, 0, 6 * CUBE, 0),
        space_cell(dim, 0, 0, 2 * CUBE * params.p as i32),
    ];
    let mut closure = HashSet::from([Cell::ORIGIN]);
    let mut frontier = vec![Cell::ORIGIN];
    while let Some(c) = frontier.pop() {
        for g in gens {
            let n = region.reduce(c.offset(g));
            if closure.insert(n) {
                if closure.len() > found.len() {
                    return Ok(false);
                }
                frontier.push(n);
            }
        }
    }
    Ok(closure == found)
}

/// Encoders stack into vertical columns with period `20p`, the columns
/// account for the whole fundamental domain (each owns a `4t x 6` block
/// footprint), and in 4D all encoders share one time phase.
pub fn encoder_column_check(cert: &TilingCertificate) -> Result<bool, TilingError> {
    let params = cert.params.ok_or(TilingError::MissingParams)?;
    let encoders: Vec<Cell> = cert.placements_named(ENCODER).into_iter().map(|i| cert.placements[i].offset).collect();
    let Some(first) = encoders.first() else {
        return Err(TilingError::Missing(ENCODER));
    };
    let dim = cert.dim();
    let region = &cert.region;
    let z_period = 2 * CUBE * params.p as i32;
    let present: HashSet<Cell> = encoders.iter().map(|&c| region.reduce(c)).collect();
    let stacked = encoders.iter().all(|&c| present.contains(&region.reduce(c.offset(space_cell(dim, 0, 0, z_period)))));
    let mut footprint = (4 * params.t as u64 * CUBE as u64) * (6 * CUBE as u64) * z_period as u64;
    if dim == 4 {
        footprint *= SLICE as u64;
    }
    let accounted = present.len() == encoders.len() && encoders.len() as u64 * footprint == region.det();
    let phased = dim != 4 || encoders.iter().all(|c| (c.0[3] - first.0[3]).rem_euclid(SLICE) == 0);
    Ok(stacked && accounted && phased)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blocks::{block, BlockId};
    use crate::wang::WangTile;

    fn cube_cert(with: &[BlockId]) -> TilingCertificate {
        let region = QuotientRegion::cubic(3, 10).unwrap();
        let tiles = with
            .iter()
            .map(|&id| TileRef { name: id.symbol().to_string(), shape: Arc::new(block(id).clone()) })
            .collect();
        let mut cert = TilingCertificate::new(region, tiles);
        for id in with {
            cert.place(id.symbol(), Cell::ORIGIN).unwrap();
        }
        cert
    }

    #[test]
    fn u_and_u_bump_partition_the_cube() {
        assert_eq!(verify_partition(&cube_cert(&[BlockId::UDent, BlockId::UBump])).unwrap(), None);
    }

    #[test]
    fn missing_bump_is_uncovered() {
        let v = verify_partition(&cube_cert(&[BlockId::UDent])).unwrap().unwrap();
        assert_eq!(v.kind, ViolationKind::Uncovered);
        assert!(block(BlockId::UBump).contains(&v.cell));
    }

    #[test]
    fn duplicate_is_double_covered() {
        let mut cert = cube_cert(&[BlockId::UDent, BlockId::UBump]);
        cert.place("u", Cell::ORIGIN).unwrap();
        let v = verify_partition(&cert).unwrap().unwrap();
        assert_eq!(v.kind, ViolationKind::DoubleCovered);
        assert_eq!(v.placement, Some(2));
    }

    #[test]
    fn d_cavity_is_u_cavity_five_lower() {
        let shifted = block(BlockId::UBump).translated(Cell::xyz(0, 0, -5));
        assert_eq!(&shifted, block(BlockId::DBump));
    }

    #[test]
    fn all_red_pair_tiles_space() {
        let w = WangTileSet::new(1, vec![WangTile::new(0, 0, 0, 0); 2]).unwrap();
        let a = WangAssignment::new(1, 1, vec![0]).unwrap();
        let cert = build_tiling3(&w, &a).unwrap();
        assert_eq!(cert.placed_volume(), cert.region.det());
        assert_eq!(verify_partition(&cert).unwrap(), None);
        assert_eq!(cert.placements_named(ENCODER).len(), 1);
        assert!(linker_lattice_check(&cert).unwrap());
        assert!(encoder_column_check(&cert).unwrap());
    }

    #[test]
    fn mismatch_is_rejected_when_checked() {
        let w = WangTileSet::new(2, vec![WangTile::new(0, 0, 1, 0), WangTile::new(1, 0, 1, 0)]).unwrap();
        let a = WangAssignment::new(1, 1, vec![0]).unwrap();
        assert_eq!(build_tiling3(&w, &a).unwrap_err(), TilingError::InvalidAssignment { i: 0, j: 0 });
        let cert = build_tiling3_unchecked(&w, &a).unwrap();
        assert!(verify_partition(&cert).unwrap().is_some());
    }
}
