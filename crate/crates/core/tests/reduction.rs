use std::collections::BTreeMap;

use proptest::prelude::*;

use wangcube::blocks::{thick_block, BlockId};
use wangcube::reduction::*;
use wangcube::wang::{WangTile, WangTileSet};

fn three_tiles() -> WangTileSet {
    WangTileSet::from_json(include_str!("../data/three_tiles.wang")).unwrap()
}

fn slot_map(l: &BlockLayout) -> BTreeMap<[i32; 3], BlockId> {
    l.slots().iter().copied().collect()
}

fn wang_set() -> impl Strategy<Value = WangTileSet> {
    (1usize..=9, 2usize..=4).prop_flat_map(|(q, p)| {
        proptest::collection::vec((0..q, 0..q, 0..q, 0..q), p).prop_map(move |ts| {
            let tiles = ts.into_iter().map(|(n, e, s, w)| WangTile::new(n, e, s, w)).collect();
            WangTileSet::new(q, tiles).unwrap()
        })
    })
}

#[test]
fn linker4_is_thick_u_linker_with_two_new_attachments() {
    let w = three_tiles();
    let thin = slot_map(&linker_layout3(&w, LinkerVariant::U).unwrap());
    let thick = slot_map(&linker_layout4(&w).unwrap());
    assert_eq!(thin.len(), thick.len());
    let changed: Vec<_> = thin.iter().filter(|(p, id)| thick.get(*p) != Some(id)).collect();
    assert_eq!(changed.len(), 2);
    for (p, id) in changed {
        assert_eq!((*id, thick[p]), (BlockId::UBump, BlockId::C4Dent));
    }
}

#[test]
fn tile_counts_and_names() {
    let w = three_tiles();
    assert_eq!(build_tileset3(&w).unwrap().names(), [ENCODER, LINKER_U, LINKER_D, FILLER]);
    assert_eq!(build_tileset4(&w).unwrap().names(), [ENCODER, LINKER, FILLER]);
    assert_eq!(build_filler4().volume(), 8088);
}

#[test]
fn linker4_volume_is_thick_linker_plus_attachment_change() {
    let w = three_tiles();
    let thin = build_linker3(&w, LinkerVariant::U).unwrap();
    let thick = build_linker4(&w).unwrap();
    let swap = thick_block(BlockId::C4Dent).volume() as i64 - thick_block(BlockId::UBump).volume() as i64;
    assert_eq!(thick.volume() as i64, 10 * thin.volume() as i64 + 2 * swap);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn encoder_slot_count(w in wang_set()) {
        let l = encoder_layout3(&w).unwrap();
        prop_assert_eq!(l.blocks.slots().len(), 4 * w.t() * 3 * 2 * w.p() + 1);
        for &([_, y, z], id) in l.blocks.slots() {
            if matches!(id, BlockId::UDent | BlockId::DDent) {
                prop_assert!(z % 2 == 0 && (y == 0 || y == 2), "{id} at y={y} z={z}");
            }
        }
    }

    #[test]
    fn words_match_iff_colors_do(w in wang_set()) {
        let l = encoder_layout3(&w).unwrap();
        let t = w.t();
        for (i, a) in w.tiles().iter().enumerate() {
            for (j, b) in w.tiles().iter().enumerate() {
                let north = l.north[i].bits();
                let south = l.south[j].bits();
                // North neighbor sits 2t blocks west; east neighbor 2t blocks east.
                prop_assert_eq!(north[..2 * t] == south[2 * t..], a.north == b.south);
                prop_assert_eq!(north[2 * t..] == south[..2 * t], a.east == b.west);
            }
        }
    }

    #[test]
    fn lifting_substitutes_and_adds(w in wang_set()) {
        let three = slot_map(&encoder_layout3(&w).unwrap().blocks);
        let four = slot_map(&encoder_layout4(&w).unwrap().blocks);
        for (p, id) in &three {
            let lifted = four.get(p).copied();
            let replaced = *id == BlockId::Cube && matches!(lifted, Some(BlockId::E4Bump | BlockId::V4Dent));
            prop_assert!(lifted == Some(lift_block(*id)) || replaced, "{:?}: {} became {:?}", p, id, lifted);
        }
        let added: Vec<BlockId> = four.iter().filter(|(p, _)| !three.contains_key(*p)).map(|(_, &id)| id).collect();
        prop_assert!(added.iter().all(|&id| id == BlockId::V4Bump));
        prop_assert_eq!(added.len(), w.p());
        prop_assert_eq!(four.values().filter(|&&id| id == BlockId::E4Bump).count(), 1);
    }

    #[test]
    fn color_names_do_not_change_geometry(w in wang_set()) {
        let names = (0..w.q()).map(|c| format!("color{c}")).collect();
        let named = w.clone().with_color_names(names).unwrap();
        prop_assert_eq!(encoder_layout3(&w).unwrap().blocks, encoder_layout3(&named).unwrap().blocks);
        prop_assert_eq!(linker_layout4(&w).unwrap(), linker_layout4(&named).unwrap());
    }
}
