//! The 21-type evaluation tile set and its 11-color palette.

use std::collections::BTreeMap;

use crate::rtas::{ColorId, Glue, TileSet, TileType};

pub const CYAN: ColorId = ColorId(0);
pub const CE: ColorId = ColorId(1);
pub const WHITE: ColorId = ColorId(2);
pub const BLACK: ColorId = ColorId(3);
pub const DGNL_WHITE: ColorId = ColorId(4);
pub const DGNL_BLACK: ColorId = ColorId(5);
pub const INIT: ColorId = ColorId(6);
pub const SAT: ColorId = ColorId(7);
pub const YELLOW: ColorId = ColorId(8);
pub const RED: ColorId = ColorId(9);
pub const BLUE: ColorId = ColorId(10);

const PALETTE: [&str; 11] = [
    "cyan",
    "CE",
    "white",
    "black",
    "DGNL-white",
    "DGNL-black",
    "Init",
    "Sat",
    "yellow",
    "red",
    "blue",
];

pub fn palette() -> Vec<ColorId> {
    (0..PALETTE.len() as u16).map(ColorId).collect()
}

pub fn palette_name(c: ColorId) -> Option<&'static str> {
    PALETTE.get(c.0 as usize).copied()
}

pub fn color_by_name(name: &str) -> Option<ColorId> {
    PALETTE
        .iter()
        .position(|&p| p == name)
        .map(|i| ColorId(i as u16))
}

/// (name, color, N, W, S, E)
const TABLE: [(&str, ColorId, [&str; 4]); 21] = [
    ("t_F", RED, ["c", "F", "c", "f"]),
    ("t_T", BLUE, ["c", "T", "c", "t"]),
    ("t_Sat", SAT, ["F", "s", "c", "F"]),
    ("t_y", YELLOW, ["T", "s", "T", "s"]),
    ("t_InitF", INIT, ["c", "f", "c", "F"]),
    ("t_InitT", INIT, ["c", "t", "c", "T"]),
    ("t_wf", WHITE, ["n", "f", "n", "f"]),
    ("t_wt", WHITE, ["n", "t", "n", "t"]),
    ("t_bf", BLACK, ["v", "f", "v", "f"]),
    ("t_bt", BLACK, ["v", "t", "v", "t"]),
    ("t_CEss", CE, ["F", "s", "F", "s"]),
    ("t_CEff", CE, ["F", "f", "F", "f"]),
    ("t_CEfs", CE, ["F", "f", "T", "s"]),
    ("t_sbFF", CYAN, ["F", "F", "F", "F"]),
    ("t_sbFT", CYAN, ["T", "F", "T", "F"]),
    ("t_sbTF", CYAN, ["F", "T", "F", "T"]),
    ("t_sbTT", CYAN, ["T", "T", "T", "T"]),
    ("t_DGNLwF", DGNL_WHITE, ["F", "F", "n", "f"]),
    ("t_DGNLwT", DGNL_WHITE, ["F", "T", "n", "t"]),
    ("t_DGNLbF", DGNL_BLACK, ["F", "F", "v", "f"]),
    ("t_DGNLbT", DGNL_BLACK, ["T", "T", "v", "t"]),
];

pub fn t_eval() -> TileSet {
    let types = TABLE
        .iter()
        .map(|(name, color, [n, w, s, e])| {
            TileType::new(
                Glue::new(n),
                Glue::new(w),
                Glue::new(s),
                Glue::new(e),
                *color,
            )
            .named(name)
        })
        .collect();
    TileSet::new(types).expect("table has no duplicates")
}

/// Index of a named T_eval tile; panics on a typo since names are fixed.
pub fn idx(name: &str) -> usize {
    TABLE
        .iter()
        .position(|t| t.0 == name)
        .unwrap_or_else(|| panic!("no tile {name} in T_eval"))
}

pub fn color_census(ts: &TileSet) -> BTreeMap<ColorId, usize> {
    let mut m = BTreeMap::new();
    for t in ts.types() {
        *m.entry(t.color).or_insert(0) += 1;
    }
    m
}

/// The tileset file shipped alongside the library.
pub const TEVAL_FILE: &str = include_str!("../data/teval.tiles");
