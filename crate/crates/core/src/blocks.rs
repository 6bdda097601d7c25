//! The building-block catalog.
//!
//! Every 3D block is a subset of the functional cube `[0,10)^3` and, apart
//! from the cube itself, comes with a partner that fills exactly the rest of
//! the cube. The 4D blocks are frame stacks of onion-shell unions; they pair
//! up the same way inside a functional hypercube, possibly after a shift in
//! time. Shapes are loaded from the layer-diagram and frame-list data shipped
//! in `data/`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::error::BlockError;
use crate::geometry::{compose_frames, parse_frames, Cell, Polyform, CUBE};
use crate::layers::parse_layer_diagram;

const BLOCKS_3D: &str = include_str!("../data/blocks3d.layers");
const BLOCKS_4D: &str = include_str!("../data/blocks4d.frames");

/// Frames in a slice.
pub const SLICE: i32 = 10;

/// Identifier of a building block. Lower-case letters in the symbol mark the
/// block carrying a dent, upper-case its matching bump.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BlockId {
    UDent,
    UBump,
    DDent,
    DBump,
    XDent,
    XBump,
    Y0Dent,
    Y0Bump,
    Y1Dent,
    Y1Bump,
    TDent,
    TBump,
    EDent,
    EBump,
    LDent,
    LBump,
    Cube,
    C4Dent,
    C4Bump,
    D4Bump,
    V4Dent,
    V4Bump,
    W4Dent,
    W4Bump,
    E4Bump,
    Hypercube,
}

use BlockId::*;

impl BlockId {
    pub const ALL: [BlockId; 26] = [
        UDent, UBump, DDent, DBump, XDent, XBump, Y0Dent, Y0Bump, Y1Dent, Y1Bump, TDent, TBump, EDent, EBump,
        LDent, LBump, Cube, C4Dent, C4Bump, D4Bump, V4Dent, V4Bump, W4Dent, W4Bump, E4Bump, Hypercube,
    ];

    /// The eight complementary 3D pairs.
    pub const PAIRS_3D: [(BlockId, BlockId); 8] = [
        (UDent, UBump),
        (DDent, DBump),
        (XDent, XBump),
        (Y0Dent, Y0Bump),
        (Y1Dent, Y1Bump),
        (TDent, TBump),
        (EDent, EBump),
        (LDent, LBump),
    ];

    /// The eight genuinely 4D blocks.
    pub const BLOCKS_4D: [BlockId; 8] = [C4Dent, C4Bump, D4Bump, V4Dent, V4Bump, W4Dent, W4Bump, E4Bump];

    pub fn symbol(self) -> &'static str {
        match self {
            UDent => "u",
            UBump => "U",
            DDent => "d",
            DBump => "D",
            XDent => "x",
            XBump => "X",
            Y0Dent => "y0",
            Y0Bump => "Y0",
            Y1Dent => "y1",
            Y1Bump => "Y1",
            TDent => "t",
            TBump => "T",
            EDent => "e",
            EBump => "E",
            LDent => "l",
            LBump => "L",
            Cube => "FC",
            C4Dent => "c4",
            C4Bump => "C4",
            D4Bump => "D4",
            V4Dent => "v4",
            V4Bump => "V4",
            W4Dent => "w4",
            W4Bump => "W4",
            E4Bump => "E4",
            Hypercube => "FH",
        }
    }

    pub fn dim(self) -> usize {
        match self {
            C4Dent | C4Bump | D4Bump | V4Dent | V4Bump | W4Dent | W4Bump | E4Bump | Hypercube => 4,
            _ => 3,
        }
    }

    /// The block whose union with this one fills the functional (hyper)cube.
    /// `D4` pairs with `c4` only after a five-frame shift, and `E4` pairs
    /// with a copy of itself one slice later; both are reported here.
    pub fn partner(self) -> Option<BlockId> {
        Some(match self {
            UDent => UBump,
            UBump => UDent,
            DDent => DBump,
            DBump => DDent,
            XDent => XBump,
            XBump => XDent,
            Y0Dent => Y0Bump,
            Y0Bump => Y0Dent,
            Y1Dent => Y1Bump,
            Y1Bump => Y1Dent,
            TDent => TBump,
            TBump => TDent,
            EDent => EBump,
            EBump => EDent,
            LDent => LBump,
            LBump => LDent,
            C4Dent | D4Bump => C4Bump,
            C4Bump => C4Dent,
            V4Dent => V4Bump,
            V4Bump => V4Dent,
            W4Dent => W4Bump,
            W4Bump => W4Dent,
            E4Bump => E4Bump,
            Cube | Hypercube => return None,
        })
    }
}

impl fmt::Display for BlockId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for BlockId {
    type Err = BlockError;

    fn from_str(s: &str) -> Result<BlockId, BlockError> {
        BlockId::ALL
            .into_iter()
            .find(|b| b.symbol() == s)
            .ok_or_else(|| BlockError::UnknownBlock(s.to_string()))
    }
}

struct Catalog {
    shapes: HashMap<BlockId, Polyform>,
    thick: HashMap<BlockId, Polyform>,
}

fn catalog() -> &'static Catalog {
    static CATALOG: OnceLock<Catalog> = OnceLock::new();
    CATALOG.get_or_init(|| {
        let mut shapes = HashMap::new();
        for (name, body) in sections(BLOCKS_3D) {
            let id: BlockId = name.parse().expect("known block in shipped data");
            let shape = parse_layer_diagram(&body).expect("shipped layer diagram parses");
            shapes.insert(id, shape);
        }
        shapes.insert(Cube, Polyform::cuboid(3, &[0; 3], &[CUBE; 3]).expect("valid box"));
        for line in BLOCKS_4D.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
            let (name, frames) = line.split_once(':').expect("`id: frames` line in shipped data");
            let id: BlockId = name.trim().parse().expect("known block in shipped data");
            let frames = parse_frames(frames).expect("shipped frame list parses");
            shapes.insert(id, compose_frames(&frames));
        }
        shapes.insert(Hypercube, Polyform::cuboid(4, &[0; 4], &[CUBE; 4]).expect("valid box"));
        let thick = shapes
            .iter()
            .filter(|(id, _)| id.dim() == 3)
            .map(|(id, p)| (*id, p.thicken(SLICE).expect("3D block thickens")))
            .collect();
        Catalog { shapes, thick }
    })
}

/// Splits `block <name>` sections of the shipped 3D data.
fn sections(text: &str) -> Vec<(String, String)> {
    let mut out: Vec<(String, String)> = Vec::new();
    for line in text.lines() {
        if let Some(name) = line.strip_prefix("block ") {
            out.push((name.trim().to_string(), String::new()));
        } else if let Some((_, body)) = out.last_mut() {
            body.push_str(line);
            body.push('\n');
        }
    }
    out
}

/// Canonical shape of a block within its functional (hyper)cube frame.
pub fn block(id: BlockId) -> &'static Polyform {
    &catalog().shapes[&id]
}

pub fn block_by_name(name: &str) -> Result<&'static Polyform, BlockError> {
    Ok(block(name.parse()?))
}

/// 4D version of a block: 3D blocks are held constant for one slice, 4D
/// blocks are returned as they are.
pub fn thick_block(id: BlockId) -> &'static Polyform {
    let c = catalog();
    c.thick.get(&id).unwrap_or_else(|| &c.shapes[&id])
}

/// What breaks a claimed complement.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DefectKind {
    /// Both blocks contain the cell.
    Overlap,
    /// The cell lies in the target (hyper)cube but neither block has it.
    Gap,
    /// The cell lies outside the target (hyper)cube.
    Excess,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ComplementDefect {
    pub kind: DefectKind,
    pub cell: Cell,
}

fn defect_against_box(a: &Polyform, b: &Polyform, lo: Cell, side: [i32; 4]) -> Option<ComplementDefect> {
    if let Ok(Some(cell)) = a.overlap_witness(b) {
        return Some(ComplementDefect { kind: DefectKind::Overlap, cell });
    }
    let dim = a.dim();
    let inside = |c: &Cell| (0..dim).all(|k| c.0[k] >= lo.0[k] && c.0[k] < lo.0[k] + side[k]);
    if let Some(cell) = a.cells().iter().chain(b.cells()).find(|c| !inside(c)) {
        return Some(ComplementDefect { kind: DefectKind::Excess, cell: *cell });
    }
    let hi: Vec<i32> = (0..dim).map(|k| lo.0[k] + side[k]).collect();
    let target = Polyform::cuboid(dim, lo.coords(dim), &hi).expect("valid box");
    target
        .cells()
        .iter()
        .find(|c| !a.contains(c) && !b.contains(c))
        .map(|&cell| ComplementDefect { kind: DefectKind::Gap, cell })
}

/// Why two 3D blocks in canonical position do not form the functional cube,
/// or `None` if they do.
pub fn pair_defect(a: BlockId, b: BlockId) -> Option<ComplementDefect> {
    let (pa, pb) = (block(a), block(b));
    if pa.dim() != 3 || pb.dim() != 3 {
        return Some(ComplementDefect { kind: DefectKind::Excess, cell: Cell::ORIGIN });
    }
    defect_against_box(pa, pb, Cell::ORIGIN, [CUBE; 4])
}

pub fn pair_complements(a: BlockId, b: BlockId) -> bool {
    pair_defect(a, b).is_none()
}

/// Why `a` together with `b` shifted by `time_shift` frames fails to be one
/// functional hypercube. The target hypercube starts at the earliest frame
/// either block occupies.
pub fn frame_defect(a: BlockId, b: BlockId, time_shift: i32) -> Option<ComplementDefect> {
    let pa = thick_block(a);
    let pb = thick_block(b).translated(Cell::xyzw(0, 0, 0, time_shift));
    let start = [pa, &pb]
        .iter()
        .filter_map(|p| p.bounding_box())
        .map(|(lo, _)| lo.0[3])
        .min()
        .unwrap_or(0);
    defect_against_box(pa, &pb, Cell::xyzw(0, 0, 0, start), [CUBE; 4])
}

pub fn frame_complements(a: BlockId, b: BlockId, time_shift: i32) -> bool {
    frame_defect(a, b, time_shift).is_none()
}

/// Checks that a block and its own copy `shift` frames later are disjoint and
/// together fill every frame where both are present.
pub fn stacks_with_itself(id: BlockId, shift: i32) -> bool {
    let p = thick_block(id);
    let q = p.translated(Cell::xyzw(0, 0, 0, shift));
    if !p.disjoint(&q).unwrap_or(false) {
        return false;
    }
    let (Some((_, hi)), Some((lo, _))) = (p.bounding_box(), q.bounding_box()) else {
        return false;
    };
    (lo.0[3]..=hi.0[3]).all(|w| {
        let frame = |x: &Polyform| x.cells().iter().filter(|c| c.0[3] == w).count();
        frame(p) + frame(&q) == (CUBE * CUBE * CUBE) as usize
    })
}

/// One line of the catalog audit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogCheck {
    pub name: String,
    pub failure: Option<String>,
}

impl fmt::Display for CatalogCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(f, "ok   {}", self.name),
            Some(why) => write!(f, "FAIL {}: {why}", self.name),
        }
    }
}

fn check(name: String, failure: Option<String>) -> CatalogCheck {
    CatalogCheck { name, failure }
}

fn defect_text(d: Option<ComplementDefect>, dim: usize) -> Option<String> {
    d.map(|d| format!("{:?} at {:?}", d.kind, d.cell.coords(dim)))
}

/// Audits the shipped catalog: 3D pair complements and connectivity, the
/// declared 4D frame pairs, E4 self-stacking and 4D connectivity.
pub fn verify_catalog() -> Vec<CatalogCheck> {
    let mut out = Vec::new();
    for (a, b) in BlockId::PAIRS_3D {
        out.push(check(format!("{a}/{b} form the functional cube"), defect_text(pair_defect(a, b), 3)));
        for id in [a, b] {
            let want = if id == UDent { 2 } else { 1 };
            let n = block(id).component_count().unwrap_or(0);
            out.push(check(format!("{id} has {want} component(s)"), (n != want).then(|| format!("found {n}"))));
        }
    }
    out.push(check(
        "U and D agree up to translation".into(),
        (!block(UBump).eq_up_to_translation(block(DBump))).then(|| "shapes differ".into()),
    ));
    for (a, b, shift) in [(C4Bump, C4Dent, 0), (D4Bump, C4Dent, 5), (V4Bump, V4Dent, 0), (W4Bump, W4Dent, 0)] {
        let name = format!("{a}/{b}{} form the functional hypercube", if shift == 0 { String::new() } else { format!(" +{shift}") });
        out.push(check(name, defect_text(frame_defect(a, b, shift), 4)));
    }
    out.push(check(
        "E4 stacks with period 10".into(),
        (!stacks_with_itself(E4Bump, SLICE)).then(|| "overlap or gap".into()),
    ));
    for id in BlockId::BLOCKS_4D {
        let ok = block(id).is_connected().unwrap_or(false);
        out.push(check(format!("{id} is connected"), (!ok).then(|| "disconnected".into())));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_catalog_passes() {
        let checks = verify_catalog();
        assert!(checks.iter().all(|c| c.failure.is_none()), "{checks:?}");
        assert_eq!(checks.len(), 8 * 3 + 1 + 4 + 1 + 8);
    }

    #[test]
    fn symbols_round_trip() {
        for id in BlockId::ALL {
            assert_eq!(id.symbol().parse::<BlockId>().unwrap(), id);
        }
        assert_eq!("Q".parse::<BlockId>(), Err(BlockError::UnknownBlock("Q".into())));
        assert!(block_by_name("zz").is_err());
    }

    #[test]
    fn partner_is_an_involution_on_pairs() {
        for (a, b) in BlockId::PAIRS_3D {
            assert_eq!(a.partner(), Some(b));
            assert_eq!(b.partner(), Some(a));
        }
        assert_eq!(Cube.partner(), None);
    }

    #[test]
    fn block_u_volume_and_parts() {
        let u = block(UDent);
        assert_eq!(u.volume(), 780);
        assert_eq!(u.component_count().unwrap(), 2);
        assert_eq!(block(UBump).volume(), 220);
        assert!(block(UBump).is_connected().unwrap());
    }

    #[test]
    fn u_with_x_is_not_a_pair() {
        assert!(!pair_complements(UDent, XBump));
        assert_eq!(block(XBump).volume(), 36);
        let d = pair_defect(UDent, XBump).unwrap();
        assert!(matches!(d.kind, DefectKind::Overlap | DefectKind::Gap));
    }

    #[test]
    fn fc_is_the_full_cube() {
        assert_eq!(block(Cube).volume(), 1000);
        assert_eq!(block(Hypercube).volume(), 10_000);
    }

    #[test]
    fn thick_blocks() {
        assert_eq!(thick_block(UDent).volume(), 7800);
        assert_eq!(thick_block(C4Bump), block(C4Bump));
    }

    #[test]
    fn e4_spans_fourteen_frames() {
        let (lo, hi) = block(E4Bump).bounding_box().unwrap();
        assert_eq!((lo.0[3], hi.0[3]), (0, 13));
        assert!(stacks_with_itself(E4Bump, SLICE));
        assert!(!stacks_with_itself(E4Bump, 9));
    }
}
