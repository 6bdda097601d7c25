use wangcube::blocks::*;
use wangcube::geometry::{onion_shells, Cell, Polyform};
use wangcube::layers::{emit_layer_diagram, parse_layer_diagram};

/// Shell sizes by direct counting, independent of the library.
fn shell_sizes() -> [usize; 5] {
    let mut n = [0; 5];
    for x in 0..10i32 {
        for y in 0..10i32 {
            for z in 0..10i32 {
                let d = [x, y, z].iter().map(|&a| a.min(9 - a)).min().unwrap();
                n[d as usize] += 1;
            }
        }
    }
    n
}

#[test]
fn all_pairs_complement() {
    for (a, b) in BlockId::PAIRS_3D {
        assert!(pair_complements(a, b), "{a}/{b}: {:?}", pair_defect(a, b));
        assert_eq!(block(a).volume() + block(b).volume(), 1000);
    }
}

#[test]
fn transcribed_volumes() {
    let expected = [
        ("u", 780),
        ("U", 220),
        ("d", 780),
        ("D", 220),
        ("X", 36),
        ("Y0", 76),
        ("Y1", 64),
        ("T", 64),
        ("E", 44),
        ("L", 36),
    ];
    for (name, v) in expected {
        assert_eq!(block_by_name(name).unwrap().volume(), v, "{name}");
    }
}

#[test]
fn only_u_is_disconnected() {
    for (a, b) in BlockId::PAIRS_3D {
        for id in [a, b] {
            let n = block(id).component_count().unwrap();
            let expected = if id == BlockId::UDent { 2 } else { 1 };
            assert_eq!(n, expected, "{id}");
        }
    }
}

#[test]
fn u_and_d_bumps_differ_only_in_height() {
    assert!(block(BlockId::UBump).eq_up_to_translation(block(BlockId::DBump)));
    assert_ne!(block(BlockId::UBump), block(BlockId::DBump));
}

#[test]
fn e_and_l_are_distinct() {
    assert!(!pair_complements(BlockId::EDent, BlockId::LBump));
    assert!(!pair_complements(BlockId::LDent, BlockId::EBump));
    assert!(!block(BlockId::EBump).eq_up_to_translation(block(BlockId::LBump)));
}

#[test]
fn every_3d_block_fits_in_the_cube() {
    for (a, b) in BlockId::PAIRS_3D {
        for id in [a, b] {
            let (lo, hi) = block(id).bounding_box().unwrap();
            assert!((0..3).all(|k| lo.0[k] >= 0 && hi.0[k] < 10), "{id}");
        }
    }
}

#[test]
fn d_bump_layers_read_as_drawn() {
    let text = emit_layer_diagram(block(BlockId::DBump)).unwrap();
    let layers: Vec<&str> = text.split("\n\n").collect();
    assert_eq!(layers.len(), 10);
    let filled = |k: usize| layers[k].matches('#').count();
    assert_eq!(filled(0), 100);
    assert_eq!(filled(1), 100);
    assert_eq!(filled(2), 4);
    assert_eq!(filled(3), 16);
    assert!((4..10).all(|k| filled(k) == 0));
    let centre = "layer 3\n..........\n..........\n..........\n..........\n....##....\n....##....\n";
    assert!(layers[2].starts_with(centre), "{}", layers[2]);
}

#[test]
fn u_layers_six_and_seven_are_empty() {
    let text = emit_layer_diagram(block(BlockId::UDent)).unwrap();
    let layers: Vec<&str> = text.split("\n\n").collect();
    assert_eq!(layers[5].matches('#').count(), 0);
    assert_eq!(layers[6].matches('#').count(), 0);
}

#[test]
fn layer_text_round_trips_every_block() {
    for (a, b) in BlockId::PAIRS_3D {
        for id in [a, b] {
            let text = emit_layer_diagram(block(id)).unwrap();
            assert_eq!(&parse_layer_diagram(&text).unwrap(), block(id));
            assert_eq!(emit_layer_diagram(&parse_layer_diagram(&text).unwrap()).unwrap(), text);
        }
    }
}

#[test]
fn onion_shells_match_direct_count() {
    let shells = onion_shells();
    let sizes: Vec<usize> = shells.shells().iter().map(Polyform::volume).collect();
    assert_eq!(sizes, shell_sizes());
    assert_eq!(sizes, [488, 296, 152, 56, 8]);
    for (i, s) in shells.shells().iter().enumerate() {
        for c in s.cells() {
            let d = (0..3).map(|k| c.0[k].min(9 - c.0[k])).min().unwrap();
            assert_eq!(d as usize, i);
        }
    }
}

#[test]
fn four_d_volumes_from_shell_arithmetic() {
    let [t1, t2, t3, t4, t5] = shell_sizes();
    let k = 1000;
    let big_c = k + t4 + (t2 + t4) + (t2 + t3 + t4);
    let small_c = (t1 + t2 + t3 + t5) + (t1 + t3 + t5) + (t1 + t5) + 6 * k;
    assert_eq!(big_c, 1912);
    assert_eq!(small_c, 8088);
    assert_eq!(block(BlockId::C4Bump).volume(), big_c);
    assert_eq!(block(BlockId::C4Dent).volume(), small_c);
    assert_eq!(block(BlockId::E4Bump).volume(), 10_000);
}

#[test]
fn four_d_pairs() {
    assert!(frame_complements(BlockId::C4Bump, BlockId::C4Dent, 0));
    assert!(frame_complements(BlockId::D4Bump, BlockId::C4Dent, 5));
    assert!(frame_complements(BlockId::V4Bump, BlockId::V4Dent, 0));
    assert!(frame_complements(BlockId::W4Bump, BlockId::W4Dent, 0));
    assert!(!frame_complements(BlockId::D4Bump, BlockId::C4Dent, 0));
    assert!(stacks_with_itself(BlockId::E4Bump, 10));
}

#[test]
fn cross_pair_has_witness() {
    let d = frame_defect(BlockId::V4Bump, BlockId::W4Dent, 0).unwrap();
    assert_eq!(d.kind, DefectKind::Overlap);
    assert!(block(BlockId::V4Bump).contains(&d.cell));
    assert!(block(BlockId::W4Dent).contains(&d.cell));
}

#[test]
fn four_d_blocks_connected() {
    for id in BlockId::BLOCKS_4D {
        assert!(block(id).is_connected().unwrap(), "{id}");
    }
}

#[test]
fn c4_and_d4_differ_by_five_frames() {
    let shifted = block(BlockId::C4Bump).translated(Cell::xyzw(0, 0, 0, 5));
    assert_eq!(&shifted, block(BlockId::D4Bump));
}

#[test]
fn thick_blocks_hold_for_a_slice() {
    let t = thick_block(BlockId::TDent);
    assert_eq!(t.volume(), 10 * block(BlockId::TDent).volume());
    for w in 0..10 {
        assert_eq!(&t.time_slice(w).unwrap(), block(BlockId::TDent));
    }
}
