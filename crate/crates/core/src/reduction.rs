//! Compiles a Wang tile set into the 3D polycube set (encoder, U-linker,
//! D-linker, filler) and the 4D polyhypercube set (encoder, linker, filler).
//!
//! Tiles are assembled on a coarse grid of functional (hyper)cubes. A slot at
//! block position `(x, y, z)` occupies cells `[10x, 10x+10) x ...`; 4D slots
//! additionally span the frames of one slice.

use std::fmt::{self, Write as _};

use crate::blocks::{block, thick_block, BlockId};
use crate::error::{GeometryError, ReductionError};
use crate::geometry::{Cell, Polyform, CUBE};
use crate::wang::{encode_color, CodeWord, WangTileSet};

/// Blocks placed on the coarse grid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockLayout {
    dim: usize,
    slots: Vec<([i32; 3], BlockId)>,
}

impl BlockLayout {
    fn new(dim: usize) -> BlockLayout {
        BlockLayout { dim, slots: Vec::new() }
    }

    fn put(&mut self, pos: [i32; 3], id: BlockId) {
        debug_assert!(self.at(pos).is_none(), "slot {pos:?} filled twice");
        self.slots.push((pos, id));
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn slots(&self) -> &[([i32; 3], BlockId)] {
        &self.slots
    }

    pub fn at(&self, pos: [i32; 3]) -> Option<BlockId> {
        self.slots.iter().find(|(p, _)| *p == pos).map(|&(_, id)| id)
    }

    pub fn count(&self, id: BlockId) -> usize {
        self.slots.iter().filter(|(_, b)| *b == id).count()
    }

    /// Inclusive block-coordinate bounds.
    pub fn bounds(&self) -> ([i32; 3], [i32; 3]) {
        let mut lo = [i32::MAX; 3];
        let mut hi = [i32::MIN; 3];
        for (p, _) in &self.slots {
            for a in 0..3 {
                lo[a] = lo[a].min(p[a]);
                hi[a] = hi[a].max(p[a]);
            }
        }
        (lo, hi)
    }

    pub fn to_polyform(&self) -> Result<Polyform, GeometryError> {
        let parts: Vec<Polyform> = self
            .slots
            .iter()
            .map(|&(p, id)| {
                let shape = if self.dim == 3 { block(id) } else { thick_block(id) };
                shape.translated(Cell::xyzw(p[0] * CUBE, p[1] * CUBE, p[2] * CUBE, 0))
            })
            .collect();
        Polyform::disjoint_union(self.dim, parts.iter())
    }

    /// One `x y z id` line per slot, sorted by position (z, y, x).
    pub fn manifest(&self) -> String {
        let mut slots = self.slots.clone();
        slots.sort_by_key(|(p, _)| (p[2], p[1], p[0]));
        let mut out = String::new();
        for (p, id) in slots {
            writeln!(out, "{} {} {} {}", p[0], p[1], p[2], id).expect("write to string");
        }
        out
    }
}

/// The four segments of one row of an encoding layer, west to east.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowWords(pub [CodeWord; 4]);

impl RowWords {
    pub fn bits(&self) -> Vec<bool> {
        self.0.iter().flat_map(|w| w.bits().iter().copied()).collect()
    }
}

impl fmt::Display for RowWords {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let words: Vec<String> = self.0.iter().map(|w| w.to_string()).collect();
        f.write_str(&words.join(" "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EncoderLayout {
    pub t: usize,
    pub p: usize,
    pub blocks: BlockLayout,
    /// Per Wang tile `i`: the words of encoding layer `2i` (0-based).
    pub north: Vec<RowWords>,
    pub south: Vec<RowWords>,
}

impl EncoderLayout {
    /// Extent of the encoder body in blocks, bumps excluded.
    pub fn body_extent(&self) -> [usize; 3] {
        [4 * self.t, 3, 2 * self.p]
    }

    pub fn is_encoding_layer(z: i32) -> bool {
        z >= 0 && z % 2 == 0
    }
}

/// Which part of a linker a coarse layer is.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LayerRole {
    Matching,
    Interlocking,
    Padding,
    Bump,
}

pub fn linker_layer_role(z: i32, p: usize) -> LayerRole {
    if z == 0 {
        LayerRole::Matching
    } else if z == 2 * p as i32 {
        LayerRole::Bump
    } else if z % 2 == 1 {
        LayerRole::Interlocking
    } else {
        LayerRole::Padding
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LinkerVariant {
    U,
    D,
}

impl LinkerVariant {
    pub fn for_bit(bit: bool) -> LinkerVariant {
        if bit {
            LinkerVariant::U
        } else {
            LinkerVariant::D
        }
    }

    fn bump(self) -> BlockId {
        match self {
            LinkerVariant::U => BlockId::UBump,
            LinkerVariant::D => BlockId::DBump,
        }
    }
}

fn check(w: &WangTileSet) -> Result<(), ReductionError> {
    if w.p() < 2 {
        return Err(ReductionError::TooFewTiles(w.p()));
    }
    Ok(())
}

fn row_words(w: &WangTileSet) -> Result<(Vec<RowWords>, Vec<RowWords>), ReductionError> {
    let (q, t) = (w.q(), w.t());
    let zeros = CodeWord::constant(false, t);
    let ones = CodeWord::constant(true, t);
    let mut north = Vec::with_capacity(w.p());
    let mut south = Vec::with_capacity(w.p());
    for tile in w.tiles() {
        north.push(RowWords([
            ones.clone(),
            encode_color(tile.north, q)?,
            encode_color(tile.east, q)?,
            zeros.clone(),
        ]));
        south.push(RowWords([
            encode_color(tile.west, q)?,
            zeros.clone(),
            ones.clone(),
            encode_color(tile.south, q)?,
        ]));
    }
    Ok((north, south))
}

fn encoder_layout(w: &WangTileSet, four_d: bool) -> Result<EncoderLayout, ReductionError> {
    check(w)?;
    let (t, p) = (w.t(), w.p());
    let width = 4 * t as i32;
    let (north, south) = row_words(w)?;
    let (one, zero) = if four_d { (BlockId::D4Bump, BlockId::C4Bump) } else { (BlockId::UDent, BlockId::DDent) };
    let mut blocks = BlockLayout::new(if four_d { 4 } else { 3 });
    for layer in 0..p {
        let z = 2 * layer as i32;
        let bits_s = south[layer].bits();
        let bits_n = north[layer].bits();
        for x in 0..width {
            blocks.put([x, 0, z], if bits_s[x as usize] { one } else { zero });
            let middle = if z == 0 && x == 1 {
                if four_d { BlockId::W4Dent } else { BlockId::EDent }
            } else if four_d && z == 0 && x == 2 * t as i32 - 1 {
                BlockId::E4Bump
            } else if four_d && x == width - 1 {
                BlockId::V4Dent
            } else {
                BlockId::Cube
            };
            blocks.put([x, 1, z], middle);
            blocks.put([x, 2, z], if bits_n[x as usize] { one } else { zero });
            for y in 0..3 {
                blocks.put([x, y, z + 1], BlockId::TDent);
            }
        }
        if four_d {
            blocks.put([-1, 1, z], BlockId::V4Bump);
        }
    }
    blocks.put([1, 1, 2 * p as i32], if four_d { BlockId::W4Bump } else { BlockId::EBump });
    Ok(EncoderLayout { t, p, blocks, north, south })
}

fn linker_layout(p: usize, attach: BlockId, dim: usize) -> BlockLayout {
    let mut blocks = BlockLayout::new(dim);
    blocks.put([0, 0, 0], BlockId::Cube);
    blocks.put([0, 1, 0], BlockId::LDent);
    blocks.put([0, 2, 0], BlockId::Cube);
    blocks.put([0, -1, 0], attach);
    blocks.put([0, 3, 0], attach);
    for z in 1..2 * p as i32 {
        if z % 2 == 1 {
            let (dent, bump) = if z == 1 { (BlockId::Y1Dent, BlockId::Y1Bump) } else { (BlockId::Y0Dent, BlockId::Y0Bump) };
            blocks.put([0, 0, z], BlockId::TDent);
            blocks.put([0, 1, z], dent);
            blocks.put([0, 2, z], BlockId::Cube);
            for y in 3..=6 {
                blocks.put([0, y, z], BlockId::TBump);
            }
            blocks.put([0, 7, z], bump);
        } else {
            blocks.put([0, 0, z], BlockId::Cube);
            blocks.put([0, 1, z], if z == 2 { BlockId::XDent } else { BlockId::Cube });
            blocks.put([0, 2, z], BlockId::Cube);
            if z == 2 {
                blocks.put([1, 1, z], BlockId::XBump);
            }
        }
    }
    blocks.put([0, 1, 2 * p as i32], BlockId::LBump);
    blocks
}

pub fn encoder_layout3(w: &WangTileSet) -> Result<EncoderLayout, ReductionError> {
    encoder_layout(w, false)
}

pub fn encoder_layout4(w: &WangTileSet) -> Result<EncoderLayout, ReductionError> {
    encoder_layout(w, true)
}

pub fn linker_layout3(w: &WangTileSet, variant: LinkerVariant) -> Result<BlockLayout, ReductionError> {
    check(w)?;
    Ok(linker_layout(w.p(), variant.bump(), 3))
}

pub fn linker_layout4(w: &WangTileSet) -> Result<BlockLayout, ReductionError> {
    check(w)?;
    Ok(linker_layout(w.p(), BlockId::C4Dent, 4))
}

pub fn build_encoder3(w: &WangTileSet) -> Result<(Polyform, EncoderLayout), ReductionError> {
    let layout = encoder_layout3(w)?;
    Ok((layout.blocks.to_polyform()?, layout))
}

pub fn build_linker3(w: &WangTileSet, variant: LinkerVariant) -> Result<Polyform, ReductionError> {
    Ok(linker_layout3(w, variant)?.to_polyform()?)
}

pub fn build_filler3() -> Polyform {
    block(BlockId::UBump).clone()
}

pub fn build_encoder4(w: &WangTileSet) -> Result<(Polyform, EncoderLayout), ReductionError> {
    let layout = encoder_layout4(w)?;
    Ok((layout.blocks.to_polyform()?, layout))
}

pub fn build_linker4(w: &WangTileSet) -> Result<Polyform, ReductionError> {
    Ok(linker_layout4(w)?.to_polyform()?)
}

pub fn build_filler4() -> Polyform {
    block(BlockId::C4Dent).clone()
}

/// 4D replacement of a 3D encoder block, if it changes.
pub fn lift_block(id: BlockId) -> BlockId {
    match id {
        BlockId::UDent => BlockId::D4Bump,
        BlockId::DDent => BlockId::C4Bump,
        BlockId::EDent => BlockId::W4Dent,
        BlockId::EBump => BlockId::W4Bump,
        other => other,
    }
}

#[derive(Clone, Debug)]
pub struct NamedTile {
    pub name: String,
    pub shape: Polyform,
    pub layout: Option<BlockLayout>,
}

#[derive(Clone, Debug)]
pub struct TileSet {
    pub dim: usize,
    pub tiles: Vec<NamedTile>,
    pub encoder: EncoderLayout,
    pub source: WangTileSet,
}

pub const ENCODER: &str = "encoder";
pub const LINKER: &str = "linker";
pub const LINKER_U: &str = "linker-U";
pub const LINKER_D: &str = "linker-D";
pub const FILLER: &str = "filler";

impl TileSet {
    pub fn get(&self, name: &str) -> Option<&NamedTile> {
        self.tiles.iter().find(|t| t.name == name)
    }

    pub fn names(&self) -> Vec<&str> {
        self.tiles.iter().map(|t| t.name.as_str()).collect()
    }

    /// Audit listing of every tile's slots.
    pub fn manifest(&self) -> String {
        let mut out = String::new();
        let w = &self.source;
        writeln!(out, "dim {}", self.dim).expect("write to string");
        writeln!(out, "wang p={} q={} t={}", w.p(), w.q(), w.t()).expect("write to string");
        for (i, (n, s)) in self.encoder.north.iter().zip(&self.encoder.south).enumerate() {
            writeln!(out, "layer {} north {n} south {s}", 2 * i + 1).expect("write to string");
        }
        for tile in &self.tiles {
            writeln!(out, "\ntile {} volume {}", tile.name, tile.shape.volume()).expect("write to string");
            if let Some(layout) = &tile.layout {
                out.push_str(&layout.manifest());
            }
        }
        out
    }
}

pub fn build_tileset3(w: &WangTileSet) -> Result<TileSet, ReductionError> {
    let (encoder, layout) = build_encoder3(w)?;
    let mut tiles = vec![NamedTile { name: ENCODER.into(), shape: encoder, layout: Some(layout.blocks.clone()) }];
    for (name, variant) in [(LINKER_U, LinkerVariant::U), (LINKER_D, LinkerVariant::D)] {
        let l = linker_layout3(w, variant)?;
        tiles.push(NamedTile { name: name.into(), shape: l.to_polyform()?, layout: Some(l) });
    }
    let mut filler = BlockLayout::new(3);
    filler.put([0, 0, 0], BlockId::UBump);
    tiles.push(NamedTile { name: FILLER.into(), shape: build_filler3(), layout: Some(filler) });
    Ok(TileSet { dim: 3, tiles, encoder: layout, source: w.clone() })
}

pub fn build_tileset4(w: &WangTileSet) -> Result<TileSet, ReductionError> {
    let (encoder, layout) = build_encoder4(w)?;
    let linker = linker_layout4(w)?;
    let mut filler = BlockLayout::new(4);
    filler.put([0, 0, 0], BlockId::C4Dent);
    let tiles = vec![
        NamedTile { name: ENCODER.into(), shape: encoder, layout: Some(layout.blocks.clone()) },
        NamedTile { name: LINKER.into(), shape: linker.to_polyform()?, layout: Some(linker) },
        NamedTile { name: FILLER.into(), shape: build_filler4(), layout: Some(filler) },
    ];
    Ok(TileSet { dim: 4, tiles, encoder: layout, source: w.clone() })
}

pub fn build_tileset(w: &WangTileSet, dim: usize) -> Result<TileSet, ReductionError> {
    match dim {
        3 => build_tileset3(w),
        4 => build_tileset4(w),
        other => Err(ReductionError::Dimension(other)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wang::WangTile;

    fn three_tiles() -> WangTileSet {
        WangTileSet::from_json(include_str!("../data/three_tiles.wang")).unwrap()
    }

    #[test]
    fn single_tile_set_rejected() {
        let w = WangTileSet::new(1, vec![WangTile::new(0, 0, 0, 0)]).unwrap();
        assert_eq!(build_encoder3(&w).unwrap_err(), ReductionError::TooFewTiles(1));
        assert_eq!(build_tileset(&w, 4).unwrap_err(), ReductionError::TooFewTiles(1));
    }

    #[test]
    fn sample_encoder_slot_counts() {
        let l = encoder_layout3(&three_tiles()).unwrap();
        assert_eq!(l.blocks.slots().len(), 288 + 1);
        assert_eq!(l.blocks.count(BlockId::TDent), 144);
        assert_eq!(l.blocks.count(BlockId::EDent), 1);
        assert_eq!(l.blocks.count(BlockId::EBump), 1);
        assert_eq!(l.south[0].to_string(), "0001 0000 1111 0111");
        assert_eq!(l.north[1].to_string(), "1111 0111 0101 0000");
    }

    #[test]
    fn linker_t_count() {
        let l = linker_layout3(&three_tiles(), LinkerVariant::U).unwrap();
        assert_eq!(l.count(BlockId::TBump), 12);
        assert_eq!(linker_layer_role(0, 3), LayerRole::Matching);
        assert_eq!(linker_layer_role(3, 3), LayerRole::Interlocking);
        assert_eq!(linker_layer_role(4, 3), LayerRole::Padding);
        assert_eq!(linker_layer_role(6, 3), LayerRole::Bump);
    }

    #[test]
    fn linkers_differ_in_two_slots() {
        let u = linker_layout3(&three_tiles(), LinkerVariant::U).unwrap();
        let d = linker_layout3(&three_tiles(), LinkerVariant::D).unwrap();
        let diff = u.slots().iter().zip(d.slots()).filter(|(a, b)| a != b).count();
        assert_eq!(diff, 2);
    }

    #[test]
    fn filler_is_u_bump() {
        let f = build_filler3();
        assert_eq!(f.volume(), 220);
        assert!(f.union(block(BlockId::UDent)).unwrap().volume() == 1000);
    }
}
