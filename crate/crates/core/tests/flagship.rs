use wangcube::tiling::*;
use wangcube::wang::{smallest_torus, WangTileSet};

fn three_tiles() -> WangTileSet {
    WangTileSet::from_json(include_str!("../data/three_tiles.wang")).unwrap()
}

#[test]
fn sample_space_tiling() {
    let w = three_tiles();
    let a = smallest_torus(&w, 4).unwrap();
    let cert = build_tiling3(&w, &a).unwrap();
    assert_eq!(cert.region.det(), 1_728_000);
    assert_eq!(cert.placed_volume(), cert.region.det());
    assert_eq!(verify_partition(&cert).unwrap(), None);
    assert!(linker_lattice_check(&cert).unwrap());
    assert!(encoder_column_check(&cert).unwrap());
}

#[test]
fn sample_spacetime_tiling() {
    let w = three_tiles();
    let a = smallest_torus(&w, 4).unwrap();
    let cert = build_tiling4(&w, &a).unwrap();
    assert_eq!(cert.region.det(), 17_280_000);
    assert_eq!(cert.placed_volume(), cert.region.det());
    assert_eq!(verify_partition(&cert).unwrap(), None);
    assert!(linker_lattice_check(&cert).unwrap());
    assert!(encoder_column_check(&cert).unwrap());
}
