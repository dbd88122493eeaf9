//! Rectilinear tile assembly: glues, tile types, L-shaped seeds and the
//! south-west to north-east tiling procedure.

use std::collections::HashMap;
use std::fmt;
use std::sync::{OnceLock, RwLock};

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RtasError {
    #[error("duplicate tile type {0}")]
    DuplicateTile(String),
    #[error("seed must be at least 1x1 (got {0}x{1})")]
    EmptySeed(usize, usize),
    #[error("grid of {width}x{height} needs {expected} cells, got {got}")]
    GridSize {
        width: usize,
        height: usize,
        expected: usize,
        got: usize,
    },
}

struct Interner {
    ids: HashMap<&'static str, u32>,
    names: Vec<&'static str>,
}

fn interner() -> &'static RwLock<Interner> {
    static CELL: OnceLock<RwLock<Interner>> = OnceLock::new();
    CELL.get_or_init(|| {
        RwLock::new(Interner {
            ids: HashMap::new(),
            names: Vec::new(),
        })
    })
}

/// An interned glue label. Only equality carries meaning; ordering is by name
/// so that listings are stable across runs.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Glue(u32);

impl Glue {
    pub fn new(name: &str) -> Glue {
        if let Some(&id) = interner().read().unwrap().ids.get(name) {
            return Glue(id);
        }
        let mut table = interner().write().unwrap();
        if let Some(&id) = table.ids.get(name) {
            return Glue(id);
        }
        let leaked: &'static str = Box::leak(name.to_owned().into_boxed_str());
        let id = table.names.len() as u32;
        table.names.push(leaked);
        table.ids.insert(leaked, id);
        Glue(id)
    }

    pub fn name(self) -> &'static str {
        interner().read().unwrap().names[self.0 as usize]
    }

    /// Dense process-local id; handy as an array index.
    pub fn id(self) -> u32 {
        self.0
    }
}

impl PartialOrd for Glue {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Glue {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        if self.0 == other.0 {
            return std::cmp::Ordering::Equal;
        }
        self.name().cmp(other.name())
    }
}

impl fmt::Display for Glue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl fmt::Debug for Glue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// Shorthand for a run of glues written as whitespace-separated tokens.
pub fn glues(text: &str) -> Vec<Glue> {
    text.split_whitespace().map(Glue::new).collect()
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ColorId(pub u16);

impl fmt::Display for ColorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match crate::teval::palette_name(*self) {
            Some(name) => f.write_str(name),
            None => write!(f, "{}", self.0),
        }
    }
}

/// A unit square with four glues and a color. Identity ignores `name`.
#[derive(Clone, Debug)]
pub struct TileType {
    pub north: Glue,
    pub west: Glue,
    pub south: Glue,
    pub east: Glue,
    pub color: ColorId,
    pub name: Option<String>,
}

impl TileType {
    pub fn new(north: Glue, west: Glue, south: Glue, east: Glue, color: ColorId) -> TileType {
        TileType {
            north,
            west,
            south,
            east,
            color,
            name: None,
        }
    }

    pub fn named(mut self, name: &str) -> TileType {
        self.name = Some(name.to_owned());
        self
    }

    fn key(&self) -> (Glue, Glue, Glue, Glue, ColorId) {
        (self.north, self.west, self.south, self.east, self.color)
    }

    pub fn label(&self) -> String {
        match &self.name {
            Some(n) => n.clone(),
            None => format!(
                "({},{},{},{},{})",
                self.north, self.west, self.south, self.east, self.color
            ),
        }
    }
}

impl PartialEq for TileType {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for TileType {}

impl std::hash::Hash for TileType {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.key().hash(state)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TileSet {
    types: Vec<TileType>,
}

impl TileSet {
    pub fn new(types: Vec<TileType>) -> Result<TileSet, RtasError> {
        for (i, t) in types.iter().enumerate() {
            if types[..i].contains(t) {
                return Err(RtasError::DuplicateTile(t.label()));
            }
        }
        Ok(TileSet { types })
    }

    pub fn types(&self) -> &[TileType] {
        &self.types
    }

    pub fn len(&self) -> usize {
        self.types.len()
    }

    pub fn is_empty(&self) -> bool {
        self.types.is_empty()
    }

    pub fn get(&self, i: usize) -> &TileType {
        &self.types[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.types
            .iter()
            .position(|t| t.name.as_deref() == Some(name))
    }

    /// Distinct glue tokens on any side.
    pub fn alphabet(&self) -> Vec<Glue> {
        let mut out: Vec<Glue> = Vec::new();
        for t in &self.types {
            for g in [t.north, t.west, t.south, t.east] {
                if !out.contains(&g) {
                    out.push(g);
                }
            }
        }
        out.sort();
        out
    }
}

/// No two distinct types agree on both west and south glues.
pub fn is_directed(ts: &TileSet) -> bool {
    let mut seen = std::collections::HashSet::new();
    ts.types.iter().all(|t| seen.insert((t.west, t.south)))
}

pub fn attachable(ts: &TileSet, west: Glue, south: Glue) -> Vec<usize> {
    ts.types
        .iter()
        .enumerate()
        .filter(|(_, t)| t.west == west && t.south == south)
        .map(|(i, _)| i)
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LSeed {
    pub x_north: Vec<Glue>,
    pub y_east: Vec<Glue>,
}

impl LSeed {
    pub fn new(x_north: Vec<Glue>, y_east: Vec<Glue>) -> Result<LSeed, RtasError> {
        if x_north.is_empty() || y_east.is_empty() {
            return Err(RtasError::EmptySeed(x_north.len(), y_east.len()));
        }
        Ok(LSeed { x_north, y_east })
    }

    pub fn width(&self) -> usize {
        self.x_north.len()
    }

    pub fn height(&self) -> usize {
        self.y_east.len()
    }
}

/// A filled rectangle. `cells` is row-major starting at the bottom row, so
/// `(x, y)` with 1-based coordinates lives at `(y-1)*width + (x-1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assembly {
    pub width: usize,
    pub height: usize,
    cells: Vec<u32>,
    tiles: TileSet,
}

impl Assembly {
    pub fn from_cells(
        tiles: TileSet,
        width: usize,
        height: usize,
        cells: Vec<u32>,
    ) -> Result<Assembly, RtasError> {
        if cells.len() != width * height {
            return Err(RtasError::GridSize {
                width,
                height,
                expected: width * height,
                got: cells.len(),
            });
        }
        Ok(Assembly {
            width,
            height,
            cells,
            tiles,
        })
    }

    pub fn tiles(&self) -> &TileSet {
        &self.tiles
    }

    pub fn index_at(&self, x: usize, y: usize) -> usize {
        self.cells[(y - 1) * self.width + (x - 1)] as usize
    }

    pub fn tile_at(&self, x: usize, y: usize) -> &TileType {
        self.tiles.get(self.index_at(x, y))
    }

    /// Checks the attachment rule at every cell against the given seed.
    pub fn respects(&self, seed: &LSeed) -> bool {
        if seed.width() != self.width || seed.height() != self.height {
            return false;
        }
        (1..=self.height).all(|y| {
            (1..=self.width).all(|x| {
                let t = self.tile_at(x, y);
                let west = if x == 1 {
                    seed.y_east[y - 1]
                } else {
                    self.tile_at(x - 1, y).east
                };
                let south = if y == 1 {
                    seed.x_north[x - 1]
                } else {
                    self.tile_at(x, y - 1).north
                };
                t.west == west && t.south == south
            })
        })
    }

    pub fn pattern(&self) -> Pattern {
        pattern_of(self)
    }
}

/// A rectangular grid of colors, same layout as [`Assembly`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Pattern {
    pub width: usize,
    pub height: usize,
    cells: Vec<ColorId>,
}

impl Pattern {
    pub fn new(width: usize, height: usize, cells: Vec<ColorId>) -> Result<Pattern, RtasError> {
        if cells.len() != width * height || width == 0 || height == 0 {
            return Err(RtasError::GridSize {
                width,
                height,
                expected: width * height,
                got: cells.len(),
            });
        }
        Ok(Pattern {
            width,
            height,
            cells,
        })
    }

    pub fn filled(width: usize, height: usize, color: ColorId) -> Pattern {
        Pattern {
            width,
            height,
            cells: vec![color; width * height],
        }
    }

    pub fn get(&self, x: usize, y: usize) -> ColorId {
        self.cells[(y - 1) * self.width + (x - 1)]
    }

    pub fn set(&mut self, x: usize, y: usize, c: ColorId) {
        self.cells[(y - 1) * self.width + (x - 1)] = c;
    }

    pub fn cells(&self) -> &[ColorId] {
        &self.cells
    }

    /// color(P): the sorted set of codes in use.
    pub fn colors(&self) -> Vec<ColorId> {
        let mut v = self.cells.clone();
        v.sort();
        v.dedup();
        v
    }

    /// Copies `other` so that its south-west cell lands on `(x0, y0)`.
    pub fn blit(&mut self, other: &Pattern, x0: usize, y0: usize) {
        for y in 1..=other.height {
            for x in 1..=other.width {
                self.set(x0 + x - 1, y0 + y - 1, other.get(x, y));
            }
        }
    }

    pub fn window(&self, x0: usize, y0: usize, w: usize, h: usize) -> Pattern {
        let mut cells = Vec::with_capacity(w * h);
        for y in y0..y0 + h {
            for x in x0..x0 + w {
                cells.push(self.get(x, y));
            }
        }
        Pattern {
            width: w,
            height: h,
            cells,
        }
    }

    /// Does `other` appear with its south-west corner at `(x0, y0)`?
    pub fn matches_at(&self, other: &Pattern, x0: usize, y0: usize) -> bool {
        if x0 == 0 || y0 == 0 {
            return false;
        }
        if x0 + other.width - 1 > self.width || y0 + other.height - 1 > self.height {
            return false;
        }
        (1..=other.height)
            .all(|y| (1..=other.width).all(|x| self.get(x0 + x - 1, y0 + y - 1) == other.get(x, y)))
    }

    /// All south-west anchors where `other` occurs.
    pub fn find(&self, other: &Pattern) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        if other.width > self.width || other.height > self.height {
            return out;
        }
        for y0 in 1..=self.height - other.height + 1 {
            for x0 in 1..=self.width - other.width + 1 {
                if self.matches_at(other, x0, y0) {
                    out.push((x0, y0));
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SimOutcome {
    Completed(Assembly),
    Stuck {
        pos: (usize, usize),
        west: Glue,
        south: Glue,
    },
    Ambiguous {
        pos: (usize, usize),
        candidates: Vec<usize>,
    },
}

impl SimOutcome {
    pub fn completed(self) -> Option<Assembly> {
        match self {
            SimOutcome::Completed(a) => Some(a),
            _ => None,
        }
    }

    pub fn is_completed(&self) -> bool {
        matches!(self, SimOutcome::Completed(_))
    }
}

impl fmt::Display for SimOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimOutcome::Completed(a) => write!(f, "completed {}x{}", a.width, a.height),
            SimOutcome::Stuck { pos, west, south } => {
                write!(
                    f,
                    "stuck at ({},{}): west={} south={}",
                    pos.0, pos.1, west, south
                )
            }
            SimOutcome::Ambiguous { pos, candidates } => {
                write!(
                    f,
                    "ambiguous at ({},{}): {} candidates",
                    pos.0,
                    pos.1,
                    candidates.len()
                )
            }
        }
    }
}

/// Anti-diagonal sweep: x+y ascending, then x ascending.
pub fn antidiagonal_order(width: usize, height: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(width * height);
    for s in 2..=width + height {
        let lo = s.saturating_sub(height).max(1);
        let hi = (s - 1).min(width);
        for x in lo..=hi {
            out.push((x, s - x));
        }
    }
    out
}

fn sweep_rank(pos: (usize, usize)) -> (usize, usize) {
    (pos.0 + pos.1, pos.0)
}

struct Lookup {
    table: HashMap<(Glue, Glue), Vec<usize>>,
}

impl Lookup {
    fn new(ts: &TileSet) -> Lookup {
        let mut table: HashMap<(Glue, Glue), Vec<usize>> = HashMap::new();
        for (i, t) in ts.types.iter().enumerate() {
            table.entry((t.west, t.south)).or_default().push(i);
        }
        Lookup { table }
    }

    fn get(&self, west: Glue, south: Glue) -> &[usize] {
        self.table
            .get(&(west, south))
            .map(|v| v.as_slice())
            .unwrap_or(&[])
    }
}

pub fn simulate(ts: &TileSet, seed: &LSeed) -> SimOutcome {
    let (w, h) = (seed.width(), seed.height());
    let lookup = Lookup::new(ts);
    let mut cells = vec![u32::MAX; w * h];
    for (x, y) in antidiagonal_order(w, h) {
        let west = if x == 1 {
            seed.y_east[y - 1]
        } else {
            ts.types[cells[(y - 1) * w + x - 2] as usize].east
        };
        let south = if y == 1 {
            seed.x_north[x - 1]
        } else {
            ts.types[cells[(y - 2) * w + x - 1] as usize].north
        };
        match lookup.get(west, south) {
            [] => {
                return SimOutcome::Stuck {
                    pos: (x, y),
                    west,
                    south,
                }
            }
            [one] => cells[(y - 1) * w + x - 1] = *one as u32,
            many => {
                return SimOutcome::Ambiguous {
                    pos: (x, y),
                    candidates: many.to_vec(),
                }
            }
        }
    }
    SimOutcome::Completed(Assembly {
        width: w,
        height: h,
        cells,
        tiles: ts.clone(),
    })
}

/// Runs the tiling rule over positions in the caller's order. Positions whose
/// west or south neighbour is still empty are skipped; the reported failure is
/// the sweep-first cell that had both neighbours but not exactly one
/// candidate, so any dependency-respecting order yields the same outcome.
pub fn simulate_in_order(ts: &TileSet, seed: &LSeed, order: &[(usize, usize)]) -> SimOutcome {
    let (w, h) = (seed.width(), seed.height());
    let lookup = Lookup::new(ts);
    let mut cells = vec![u32::MAX; w * h];
    let mut failure: Option<SimOutcome> = None;
    let mut fail_rank = (usize::MAX, usize::MAX);
    let mut filled = 0usize;
    for &(x, y) in order {
        let west = if x == 1 {
            Some(seed.y_east[y - 1])
        } else {
            let i = cells[(y - 1) * w + x - 2];
            (i != u32::MAX).then(|| ts.types[i as usize].east)
        };
        let south = if y == 1 {
            Some(seed.x_north[x - 1])
        } else {
            let i = cells[(y - 2) * w + x - 1];
            (i != u32::MAX).then(|| ts.types[i as usize].north)
        };
        let (Some(west), Some(south)) = (west, south) else {
            continue;
        };
        if cells[(y - 1) * w + x - 1] != u32::MAX {
            continue;
        }
        let cands = lookup.get(west, south);
        if cands.len() == 1 {
            cells[(y - 1) * w + x - 1] = cands[0] as u32;
            filled += 1;
            continue;
        }
        let rank = sweep_rank((x, y));
        if rank < fail_rank {
            fail_rank = rank;
            failure = Some(if cands.is_empty() {
                SimOutcome::Stuck {
                    pos: (x, y),
                    west,
                    south,
                }
            } else {
                SimOutcome::Ambiguous {
                    pos: (x, y),
                    candidates: cands.to_vec(),
                }
            });
        }
    }
    if filled == w * h {
        return SimOutcome::Completed(Assembly {
            width: w,
            height: h,
            cells,
            tiles: ts.clone(),
        });
    }
    failure.unwrap_or(SimOutcome::Stuck {
        pos: (1, 1),
        west: seed.y_east[0],
        south: seed.x_north[0],
    })
}

pub fn pattern_of(a: &Assembly) -> Pattern {
    Pattern {
        width: a.width,
        height: a.height,
        cells: a
            .cells
            .iter()
            .map(|&i| a.tiles.types[i as usize].color)
            .collect(),
    }
}

/// Top-row north glues, west to east.
pub fn north_exposure(a: &Assembly) -> Vec<Glue> {
    (1..=a.width)
        .map(|x| a.tile_at(x, a.height).north)
        .collect()
}

/// Rightmost-column east glues, bottom to top.
pub fn east_exposure(a: &Assembly) -> Vec<Glue> {
    (1..=a.height).map(|y| a.tile_at(a.width, y).east).collect()
}

/// Canonical form modulo glue renaming and color-preserving reordering.
/// Tiles are sorted by color; within a color the order minimising the
/// first-occurrence glue numbering is chosen by a pruned search over ties.
pub fn canonicalize(ts: &TileSet) -> TileSet {
    let order = canonical_order(ts);
    let mut rename: HashMap<Glue, usize> = HashMap::new();
    let mut types = Vec::with_capacity(order.len());
    for &i in &order {
        let t = &ts.types[i];
        let mut g = |x: Glue| {
            let n = rename.len();
            let id = *rename.entry(x).or_insert(n);
            Glue::new(&id.to_string())
        };
        let (n, w, s, e) = (g(t.north), g(t.west), g(t.south), g(t.east));
        types.push(TileType::new(n, w, s, e, t.color));
    }
    TileSet { types }
}

pub fn isomorphic(a: &TileSet, b: &TileSet) -> bool {
    a.len() == b.len() && canonicalize(a) == canonicalize(b)
}

type Code = [usize; 4];

fn canonical_order(ts: &TileSet) -> Vec<usize> {
    let mut by_color: Vec<usize> = (0..ts.len()).collect();
    by_color.sort_by_key(|&i| ts.types[i].color);
    let colors: Vec<ColorId> = by_color.iter().map(|&i| ts.types[i].color).collect();

    struct Search<'a> {
        ts: &'a TileSet,
        colors: Vec<ColorId>,
        best: Option<(Vec<Code>, Vec<usize>)>,
    }

    fn encode(t: &TileType, rename: &mut Vec<Glue>) -> Code {
        let mut code = [0; 4];
        for (k, g) in [t.north, t.west, t.south, t.east].into_iter().enumerate() {
            code[k] = match rename.iter().position(|&x| x == g) {
                Some(p) => p,
                None => {
                    rename.push(g);
                    rename.len() - 1
                }
            };
        }
        code
    }

    impl Search<'_> {
        fn go(
            &mut self,
            used: &mut Vec<bool>,
            rename: &mut Vec<Glue>,
            codes: &mut Vec<Code>,
            order: &mut Vec<usize>,
        ) {
            let depth = order.len();
            if depth == self.colors.len() {
                let better = match &self.best {
                    None => true,
                    Some((bc, _)) => codes.as_slice() < bc.as_slice(),
                };
                if better {
                    self.best = Some((codes.clone(), order.clone()));
                }
                return;
            }
            let color = self.colors[depth];
            let mut cands: Vec<(Code, usize)> = Vec::new();
            for (i, t) in self.ts.types.iter().enumerate() {
                if used[i] || t.color != color {
                    continue;
                }
                let mut r = rename.clone();
                cands.push((encode(t, &mut r), i));
            }
            let min = cands.iter().map(|c| c.0).min().unwrap();
            if let Some((bc, _)) = &self.best {
                // prefix comparison against the incumbent
                let mut prefix = codes.clone();
                prefix.push(min);
                if prefix.as_slice() > &bc[..prefix.len()] {
                    return;
                }
            }
            for (code, i) in cands.into_iter().filter(|c| c.0 == min) {
                let mark = rename.len();
                encode(&self.ts.types[i], rename);
                used[i] = true;
                codes.push(code);
                order.push(i);
                self.go(used, rename, codes, order);
                order.pop();
                codes.pop();
                used[i] = false;
                rename.truncate(mark);
            }
        }
    }

    let mut s = Search {
        ts,
        colors,
        best: None,
    };
    if ts.is_empty() {
        return Vec::new();
    }
    s.go(
        &mut vec![false; ts.len()],
        &mut Vec::new(),
        &mut Vec::new(),
        &mut Vec::new(),
    );
    s.best.map(|(_, o)| o).unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tile(n: &str, w: &str, s: &str, e: &str, c: u16) -> TileType {
        TileType::new(
            Glue::new(n),
            Glue::new(w),
            Glue::new(s),
            Glue::new(e),
            ColorId(c),
        )
    }

    fn half_adder() -> TileSet {
        TileSet::new(vec![
            tile("0", "0", "0", "0", 2),
            tile("1", "1", "0", "0", 3),
            tile("1", "0", "1", "0", 3),
            tile("0", "1", "1", "1", 2),
        ])
        .unwrap()
    }

    #[test]
    fn glue_interning_is_by_name() {
        assert_eq!(Glue::new("abc"), Glue::new("abc"));
        assert_ne!(Glue::new("abc"), Glue::new("abd"));
        assert_eq!(Glue::new("q7").name(), "q7");
    }

    #[test]
    fn directedness() {
        assert!(is_directed(&half_adder()));
        let one = TileSet::new(vec![tile("a", "x", "y", "a", 0)]).unwrap();
        assert!(is_directed(&one));
        let clash = TileSet::new(vec![
            tile("a", "x", "y", "a", 0),
            tile("b", "x", "y", "b", 1),
        ])
        .unwrap();
        assert!(!is_directed(&clash));
    }

    #[test]
    fn duplicates_rejected() {
        let t = tile("a", "b", "c", "d", 0);
        assert!(TileSet::new(vec![t.clone(), t.named("other")]).is_err());
    }

    #[test]
    fn attachable_missing_glues() {
        assert!(attachable(&half_adder(), Glue::new("zz"), Glue::new("0")).is_empty());
        assert_eq!(
            attachable(&half_adder(), Glue::new("1"), Glue::new("0")),
            vec![1]
        );
    }

    #[test]
    fn counter_first_tile() {
        let seed = LSeed::new(glues("0 0 0 0 0"), glues("1 1 1 1 1 1 1 1 1")).unwrap();
        let a = simulate(&half_adder(), &seed).completed().unwrap();
        assert_eq!(a.index_at(1, 1), 1);
        assert!(a.respects(&seed));
        // row y spells y in binary, least significant bit to the west
        for y in 1..=9 {
            for x in 1..=5 {
                let bit = (y >> (x - 1)) & 1 == 1;
                assert_eq!(a.tile_at(x, y).color == ColorId(3), bit, "cell {x},{y}");
            }
        }
    }

    #[test]
    fn stuck_reports_sweep_first_cell() {
        let seed = LSeed::new(glues("0 0 9"), glues("1 1")).unwrap();
        match simulate(&half_adder(), &seed) {
            SimOutcome::Stuck { pos, .. } => assert_eq!(pos, (3, 1)),
            other => panic!("{other}"),
        }
    }

    #[test]
    fn ambiguous_detected() {
        let ts = TileSet::new(vec![
            tile("a", "x", "y", "a", 0),
            tile("b", "x", "y", "b", 1),
        ])
        .unwrap();
        let seed = LSeed::new(glues("y"), glues("x")).unwrap();
        assert_eq!(
            simulate(&ts, &seed),
            SimOutcome::Ambiguous {
                pos: (1, 1),
                candidates: vec![0, 1]
            }
        );
    }

    #[test]
    fn exposures_single_tile() {
        let ts = TileSet::new(vec![tile("n", "w", "s", "e", 0)]).unwrap();
        let seed = LSeed::new(glues("s"), glues("w")).unwrap();
        let a = simulate(&ts, &seed).completed().unwrap();
        assert_eq!(north_exposure(&a), glues("n"));
        assert_eq!(east_exposure(&a), glues("e"));
        assert_eq!(a.pattern().colors(), vec![ColorId(0)]);
    }

    #[test]
    fn antidiagonal_covers_grid_once() {
        let o = antidiagonal_order(4, 3);
        assert_eq!(o.len(), 12);
        assert_eq!(o[0], (1, 1));
        assert_eq!(o[1], (1, 2));
        assert_eq!(o[2], (2, 1));
        let mut s = o.clone();
        s.sort();
        s.dedup();
        assert_eq!(s.len(), 12);
    }

    #[test]
    fn canonical_renaming() {
        let a = half_adder();
        let primed = TileSet::new(
            a.types()
                .iter()
                .map(|t| {
                    let p = |g: Glue| Glue::new(&format!("{}'", g));
                    TileType::new(p(t.north), p(t.west), p(t.south), p(t.east), t.color)
                })
                .collect(),
        )
        .unwrap();
        assert!(isomorphic(&a, &primed));
        let mut rev = a.types().to_vec();
        rev.reverse();
        assert!(isomorphic(&a, &TileSet::new(rev).unwrap()));
        assert!(!isomorphic(
            &a,
            &TileSet::new(a.types()[..3].to_vec()).unwrap()
        ));
        let c = canonicalize(&a);
        assert_eq!(canonicalize(&c), c);
    }

    #[test]
    fn pattern_search() {
        let mut p = Pattern::filled(4, 3, ColorId(0));
        p.set(3, 2, ColorId(1));
        let needle = Pattern::new(1, 1, vec![ColorId(1)]).unwrap();
        assert_eq!(p.find(&needle), vec![(3, 2)]);
        assert_eq!(p.window(2, 2, 2, 1).cells(), &[ColorId(0), ColorId(1)]);
    }
}
