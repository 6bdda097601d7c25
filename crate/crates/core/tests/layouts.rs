//! Level-2 diagrams of the compiled tiles against hand-checked references.

use wangcube::reduction::*;
use wangcube::render::{level2_grid, parse_level2, render_level2};
use wangcube::wang::WangTileSet;

fn three_tiles() -> WangTileSet {
    WangTileSet::from_json(include_str!("../data/three_tiles.wang")).unwrap()
}

fn assert_matches(layout: &BlockLayout, fixture: &str) {
    let expected = parse_level2(fixture).unwrap();
    assert_eq!(level2_grid(layout), expected, "rendered:\n{}", render_level2(layout));
    assert_eq!(parse_level2(&render_level2(layout)).unwrap(), expected);
}

#[test]
fn encoder_layout_matches() {
    let layout = encoder_layout3(&three_tiles()).unwrap();
    assert_matches(&layout.blocks, include_str!("fixtures/encoder3.level2"));
}

#[test]
fn u_linker_layout_matches() {
    let layout = linker_layout3(&three_tiles(), LinkerVariant::U).unwrap();
    assert_matches(&layout, include_str!("fixtures/linker3_u.level2"));
}

#[test]
fn d_linker_is_u_linker_with_d_attachments() {
    let layout = linker_layout3(&three_tiles(), LinkerVariant::D).unwrap();
    let fixture = include_str!("fixtures/linker3_u.level2").replace("U .", "D .");
    assert_matches(&layout, &fixture);
}

#[test]
fn encoder4_layout_matches() {
    let layout = encoder_layout4(&three_tiles()).unwrap();
    assert_matches(&layout.blocks, include_str!("fixtures/encoder4.level2"));
}

#[test]
fn linker4_layout_matches() {
    let layout = linker_layout4(&three_tiles()).unwrap();
    assert_matches(&layout, include_str!("fixtures/linker4.level2"));
}
