//! Exact minimum-PATS search for small patterns.
//!
//! Glues are never enumerated. Every edge of the grid (seed edges included)
//! is a variable; putting two cells in one tile class unifies their four
//! side variables, so a partition determines its most general glue
//! assignment. A partition is feasible exactly when the resulting tile set is
//! directed: the attachment order then has no choice and reproduces the
//! pattern.

use std::collections::HashMap;

use thiserror::Error;

use crate::rtas::{
    antidiagonal_order, is_directed, simulate, Assembly, ColorId, Glue, LSeed, Pattern, TileSet,
    TileType,
};

pub const DEFAULT_NODE_LIMIT: u64 = 10_000_000;
pub const BRUTE_FORCE_MAX_CELLS: usize = 12;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolverError {
    #[error("instance too large: {cells} cells (limit {max})")]
    TooLarge { cells: usize, max: usize },
    #[error("search space exceeded: more than {0} nodes")]
    NodeLimit(u64),
    #[error("partition is {got} cells, pattern has {want}")]
    Shape { got: usize, want: usize },
}

/// Node limit from `PATSFORGE_NODE_LIMIT`, falling back to the default.
pub fn node_limit_from_env() -> u64 {
    std::env::var("PATSFORGE_NODE_LIMIT")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_NODE_LIMIT)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellPartition {
    pub width: usize,
    pub height: usize,
    /// Row-major from the bottom row, like `Pattern`.
    pub class_of: Vec<usize>,
}

impl CellPartition {
    pub fn new(width: usize, height: usize, class_of: Vec<usize>) -> Result<Self, SolverError> {
        if class_of.len() != width * height {
            return Err(SolverError::Shape {
                got: class_of.len(),
                want: width * height,
            });
        }
        Ok(CellPartition {
            width,
            height,
            class_of,
        })
    }

    pub fn class_count(&self) -> usize {
        let mut seen: Vec<usize> = self.class_of.clone();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }

    pub fn at(&self, x: usize, y: usize) -> usize {
        self.class_of[(y - 1) * self.width + (x - 1)]
    }

    /// The partition induced by a tiling: one class per tile type used.
    pub fn of_assembly(a: &Assembly) -> CellPartition {
        let mut ids = HashMap::new();
        let mut class_of = Vec::with_capacity(a.width * a.height);
        for y in 1..=a.height {
            for x in 1..=a.width {
                let n = ids.len();
                class_of.push(*ids.entry(a.index_at(x, y)).or_insert(n));
            }
        }
        CellPartition {
            width: a.width,
            height: a.height,
            class_of,
        }
    }

    pub fn respects_colors(&self, p: &Pattern) -> bool {
        let mut color = HashMap::new();
        self.class_of
            .iter()
            .zip(p.cells())
            .all(|(&k, &c)| *color.entry(k).or_insert(c) == c)
    }
}

/// Union-find with undo; no path compression so unions can be rolled back.
#[derive(Clone, Debug)]
pub(crate) struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
    log: Vec<u32>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
            log: Vec::new(),
        }
    }

    pub(crate) fn find(&self, mut v: u32) -> u32 {
        while self.parent[v as usize] != v {
            v = self.parent[v as usize];
        }
        v
    }

    pub(crate) fn union(&mut self, a: u32, b: u32) {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        if self.size[a as usize] < self.size[b as usize] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b as usize] = a;
        self.size[a as usize] += self.size[b as usize];
        self.log.push(b);
    }

    pub(crate) fn mark(&self) -> usize {
        self.log.len()
    }

    pub(crate) fn rollback(&mut self, mark: usize) {
        while self.log.len() > mark {
            let b = self.log.pop().unwrap();
            let a = self.parent[b as usize];
            self.size[a as usize] -= self.size[b as usize];
            self.parent[b as usize] = b;
        }
    }
}

/// Edge variables of a `w x h` grid. Vertical edges (west/east sides) come
/// first, `x` in `0..=w` with `x = 0` the seed column; then horizontal
/// edges, `y` in `0..=h` with `y = 0` the seed row.
#[derive(Clone, Debug)]
pub struct GlueSystem {
    width: usize,
    height: usize,
    pub(crate) uf: UnionFind,
}

const N: usize = 0;
const W: usize = 1;
const S: usize = 2;
const E: usize = 3;

impl GlueSystem {
    pub fn new(width: usize, height: usize) -> Self {
        let vars = (width + 1) * height + width * (height + 1);
        GlueSystem {
            width,
            height,
            uf: UnionFind::new(vars),
        }
    }

    fn vert(&self, x: usize, y: usize) -> u32 {
        ((y - 1) * (self.width + 1) + x) as u32
    }

    fn horiz(&self, x: usize, y: usize) -> u32 {
        ((self.width + 1) * self.height + y * self.width + (x - 1)) as u32
    }

    /// [north, west, south, east] variables of cell (x, y).
    pub fn sides(&self, x: usize, y: usize) -> [u32; 4] {
        [
            self.horiz(x, y),
            self.vert(x - 1, y),
            self.horiz(x, y - 1),
            self.vert(x, y),
        ]
    }

    pub fn seed_south(&self, x: usize) -> u32 {
        self.horiz(x, 0)
    }

    pub fn seed_west(&self, y: usize) -> u32 {
        self.vert(0, y)
    }

    pub fn find(&self, v: u32) -> u32 {
        self.uf.find(v)
    }

    pub fn unify_vars(&mut self, a: u32, b: u32) {
        self.uf.union(a, b);
    }

    pub fn unify_cells(&mut self, a: (usize, usize), b: (usize, usize)) {
        let (sa, sb) = (self.sides(a.0, a.1), self.sides(b.0, b.1));
        for k in 0..4 {
            self.uf.union(sa[k], sb[k]);
        }
    }
}

fn dense_colors(p: &Pattern) -> (Vec<usize>, usize) {
    let colors = p.colors();
    let dense = p
        .cells()
        .iter()
        .map(|c| colors.binary_search(c).unwrap())
        .collect();
    (dense, colors.len())
}

/// Unified glue system of a partition, plus one representative cell per
/// class in class-id order.
fn unify(part: &CellPartition) -> (GlueSystem, Vec<(usize, usize)>) {
    let mut gs = GlueSystem::new(part.width, part.height);
    let mut rep: HashMap<usize, (usize, usize)> = HashMap::new();
    let mut order = Vec::new();
    for y in 1..=part.height {
        for x in 1..=part.width {
            let k = part.at(x, y);
            match rep.get(&k) {
                Some(&r) => gs.unify_cells(r, (x, y)),
                None => {
                    rep.insert(k, (x, y));
                    order.push((x, y));
                }
            }
        }
    }
    (gs, order)
}

fn keys_distinct(gs: &GlueSystem, reps: &[(usize, usize)]) -> bool {
    let mut keys: Vec<(u32, u32)> = reps
        .iter()
        .map(|&(x, y)| {
            let s = gs.sides(x, y);
            (gs.find(s[W]), gs.find(s[S]))
        })
        .collect();
    keys.sort_unstable();
    keys.windows(2).all(|w| w[0] != w[1])
}

/// The witness for a partition, or `None` if it is not color-respecting or
/// its most general tile set is not directed.
pub fn partition_feasible(p: &Pattern, part: &CellPartition) -> Option<(TileSet, LSeed)> {
    if part.width != p.width || part.height != p.height || !part.respects_colors(p) {
        return None;
    }
    let (gs, reps) = unify(part);
    if !keys_distinct(&gs, &reps) {
        return None;
    }
    let (ts, seed) = witness(p, &gs, &reps);
    let sim = simulate(&ts, &seed).completed()?;
    (sim.pattern() == *p).then_some((ts, seed))
}

fn witness(p: &Pattern, gs: &GlueSystem, reps: &[(usize, usize)]) -> (TileSet, LSeed) {
    let mut names: HashMap<u32, Glue> = HashMap::new();
    let mut glue = |v: u32| {
        let r = gs.find(v);
        let n = names.len();
        *names
            .entry(r)
            .or_insert_with(|| Glue::new(&format!("g{n}")))
    };
    let types = reps
        .iter()
        .map(|&(x, y)| {
            let s = gs.sides(x, y);
            let (n, w, so, e) = (glue(s[N]), glue(s[W]), glue(s[S]), glue(s[E]));
            TileType::new(n, w, so, e, p.get(x, y))
        })
        .collect();
    let ts = TileSet::new(types).expect("directed classes are distinct tiles");
    let x_north = (1..=p.width).map(|x| glue(gs.seed_south(x))).collect();
    let y_east = (1..=p.height).map(|y| glue(gs.seed_west(y))).collect();
    (ts, LSeed::new(x_north, y_east).expect("non-empty grid"))
}

#[derive(Clone, Debug)]
pub struct Solution {
    pub tiles: TileSet,
    pub seed: LSeed,
    pub size: usize,
    pub partition: CellPartition,
}

struct Search<'a> {
    order: Vec<(usize, usize)>,
    color: Vec<usize>,
    /// Colors present among cells `order[i..]`, as bitsets; empty if the
    /// pattern has too many colors for the bound.
    suffix_colors: Vec<u128>,
    gs: GlueSystem,
    /// (color, representative cell) per open class
    classes: Vec<(usize, (usize, usize))>,
    class_colors: u128,
    assign: Vec<usize>,
    best: usize,
    best_assign: Option<Vec<usize>>,
    nodes: u64,
    limit: u64,
    width: usize,
    _p: &'a Pattern,
}

impl Search<'_> {
    fn cell_index(&self, (x, y): (usize, usize)) -> usize {
        (y - 1) * self.width + (x - 1)
    }

    fn lower_bound(&self, i: usize) -> usize {
        let missing = self
            .suffix_colors
            .get(i)
            .map_or(0, |s| (s & !self.class_colors).count_ones());
        self.classes.len() + missing as usize
    }

    fn directed(&self) -> bool {
        let reps: Vec<(usize, usize)> = self.classes.iter().map(|c| c.1).collect();
        keys_distinct(&self.gs, &reps)
    }

    fn key(&self, cell: (usize, usize)) -> (u32, u32) {
        let s = self.gs.sides(cell.0, cell.1);
        (self.gs.find(s[W]), self.gs.find(s[S]))
    }

    fn try_class(&mut self, i: usize, k: usize) -> Result<(), SolverError> {
        let cell = self.order[i];
        let mark = self.gs.uf.mark();
        self.gs.unify_cells(self.classes[k].1, cell);
        if self.directed() {
            let ci = self.cell_index(cell);
            self.assign[ci] = k;
            self.go(i + 1)?;
        }
        self.gs.uf.rollback(mark);
        Ok(())
    }

    fn go(&mut self, i: usize) -> Result<(), SolverError> {
        self.nodes += 1;
        if self.nodes > self.limit {
            return Err(SolverError::NodeLimit(self.limit));
        }
        if self.lower_bound(i) >= self.best {
            return Ok(());
        }
        if i == self.order.len() {
            self.best = self.classes.len();
            self.best_assign = Some(self.assign.clone());
            return Ok(());
        }
        let cell = self.order[i];
        let col = self.color[self.cell_index(cell)];
        let key = self.key(cell);
        // a class already owning this (west, south) pair must take the cell
        if let Some(k) = (0..self.classes.len()).find(|&k| self.key(self.classes[k].1) == key) {
            if self.classes[k].0 == col {
                self.try_class(i, k)?;
            }
            return Ok(());
        }
        for k in 0..self.classes.len() {
            if self.classes[k].0 == col {
                self.try_class(i, k)?;
            }
        }
        if self.classes.len() + 1 < self.best {
            let saved = self.class_colors;
            self.classes.push((col, cell));
            if col < 128 {
                self.class_colors |= 1 << col;
            }
            let ci = self.cell_index(cell);
            self.assign[ci] = self.classes.len() - 1;
            // a fresh class can only clash through the cell's own key, which
            // matched no class above
            self.go(i + 1)?;
            self.classes.pop();
            self.class_colors = saved;
        }
        Ok(())
    }
}

/// Smallest directed tile set (at most `budget` types) assembling `p`.
pub fn min_tileset(p: &Pattern, budget: usize) -> Result<Option<Solution>, SolverError> {
    min_tileset_with_limit(p, budget, node_limit_from_env())
}

pub fn min_tileset_with_limit(
    p: &Pattern,
    budget: usize,
    limit: u64,
) -> Result<Option<Solution>, SolverError> {
    let (color, k) = dense_colors(p);
    let order = antidiagonal_order(p.width, p.height);
    let suffix_colors = if k <= 128 {
        let mut v = vec![0u128; order.len() + 1];
        for i in (0..order.len()).rev() {
            let (x, y) = order[i];
            v[i] = v[i + 1] | 1u128 << color[(y - 1) * p.width + (x - 1)];
        }
        v
    } else {
        Vec::new()
    };
    let mut s = Search {
        order,
        color,
        suffix_colors,
        gs: GlueSystem::new(p.width, p.height),
        classes: Vec::new(),
        class_colors: 0,
        assign: vec![0; p.width * p.height],
        best: budget.min(p.width * p.height) + 1,
        best_assign: None,
        nodes: 0,
        limit,
        width: p.width,
        _p: p,
    };
    s.go(0)?;
    let Some(assign) = s.best_assign else {
        return Ok(None);
    };
    let partition = CellPartition::new(p.width, p.height, assign)?;
    let (tiles, seed) =
        partition_feasible(p, &partition).expect("search only completes directed partitions");
    assert!(is_directed(&tiles));
    assert_eq!(
        simulate(&tiles, &seed)
            .completed()
            .map(|a| a.pattern())
            .as_ref(),
        Some(p),
        "witness must reproduce the pattern"
    );
    Ok(Some(Solution {
        size: tiles.len(),
        tiles,
        seed,
        partition,
    }))
}

/// Exhaustive oracle: every color-respecting partition (row-major
/// restricted growth) with at most `max_classes` classes.
pub fn brute_force_min(p: &Pattern, max_classes: usize) -> Result<Option<usize>, SolverError> {
    let cells = p.width * p.height;
    if cells > BRUTE_FORCE_MAX_CELLS {
        return Err(SolverError::TooLarge {
            cells,
            max: BRUTE_FORCE_MAX_CELLS,
        });
    }
    let mut best: Option<usize> = None;
    let mut class_of = vec![0usize; cells];
    let mut class_color: Vec<ColorId> = Vec::new();
    fn rec(
        i: usize,
        p: &Pattern,
        max: usize,
        class_of: &mut Vec<usize>,
        class_color: &mut Vec<ColorId>,
        best: &mut Option<usize>,
    ) {
        let used = class_color.len();
        if best.is_some_and(|b| used >= b) {
            return;
        }
        if i == class_of.len() {
            let part = CellPartition {
                width: p.width,
                height: p.height,
                class_of: class_of.clone(),
            };
            if partition_feasible(p, &part).is_some() {
                *best = Some(used);
            }
            return;
        }
        let c = p.cells()[i];
        for k in 0..used {
            if class_color[k] == c {
                class_of[i] = k;
                rec(i + 1, p, max, class_of, class_color, best);
            }
        }
        if used < max {
            class_of[i] = used;
            class_color.push(c);
            rec(i + 1, p, max, class_of, class_color, best);
            class_color.pop();
        }
    }
    rec(
        0,
        p,
        max_classes,
        &mut class_of,
        &mut class_color,
        &mut best,
    );
    Ok(best)
}

/// Partial lookup tables for a one-cell-wide strip whose side inputs are
/// fixed and whose chain glue is free. Each table entry is a tile type:
/// (incoming chain glue, side input) -> (outgoing chain glue, color).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct ChainTable {
    entries: Vec<(u8, u8, u8, u8)>,
    cur: u8,
    glues: u8,
}

/// All tile tables (up to glue renaming by construction order) that can
/// have tiled the strip read so far within the type budget.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChainFrontier {
    budget: usize,
    live: Vec<ChainTable>,
}

impl ChainFrontier {
    pub fn new(budget: usize) -> Self {
        ChainFrontier {
            budget,
            live: vec![ChainTable {
                entries: Vec::new(),
                cur: 0,
                glues: 1,
            }],
        }
    }

    pub fn is_dead(&self) -> bool {
        self.live.is_empty()
    }

    pub fn step(&self, input: u8, color: u8) -> ChainFrontier {
        let mut live = Vec::new();
        for t in &self.live {
            match t.entries.iter().find(|e| e.0 == t.cur && e.1 == input) {
                Some(&(_, _, out, c)) => {
                    if c == color {
                        let mut n = t.clone();
                        n.cur = out;
                        live.push(n);
                    }
                }
                None if t.entries.len() < self.budget => {
                    for out in 0..=t.glues {
                        let mut n = t.clone();
                        n.entries.push((t.cur, input, out, color));
                        n.cur = out;
                        if out == t.glues {
                            n.glues += 1;
                        }
                        live.push(n);
                    }
                }
                None => {}
            }
        }
        ChainFrontier {
            budget: self.budget,
            live,
        }
    }
}

/// Can a strip with the given side inputs be tiled deterministically in the
/// given colors by at most `budget` tile types?
pub fn chain_admits(inputs: &[u8], colors: &[u8], budget: usize) -> bool {
    assert_eq!(inputs.len(), colors.len());
    let mut f = ChainFrontier::new(budget);
    for (&i, &c) in inputs.iter().zip(colors) {
        f = f.step(i, c);
        if f.is_dead() {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rtas::{glues, LSeed};

    fn pat(w: usize, h: usize, cells: &[u16]) -> Pattern {
        Pattern::new(w, h, cells.iter().map(|&c| ColorId(c)).collect()).unwrap()
    }

    fn counter() -> Pattern {
        let ts = TileSet::new(vec![
            TileType::new(
                Glue::new("0"),
                Glue::new("0"),
                Glue::new("0"),
                Glue::new("0"),
                ColorId(0),
            ),
            TileType::new(
                Glue::new("1"),
                Glue::new("1"),
                Glue::new("0"),
                Glue::new("0"),
                ColorId(1),
            ),
            TileType::new(
                Glue::new("1"),
                Glue::new("0"),
                Glue::new("1"),
                Glue::new("0"),
                ColorId(1),
            ),
            TileType::new(
                Glue::new("0"),
                Glue::new("1"),
                Glue::new("1"),
                Glue::new("1"),
                ColorId(0),
            ),
        ])
        .unwrap();
        let seed = LSeed::new(glues("0 0 0 0 0"), glues("1 1 1 1 1 1 1 1 1")).unwrap();
        simulate(&ts, &seed).completed().unwrap().pattern()
    }

    #[test]
    fn rollback_restores() {
        let mut uf = UnionFind::new(4);
        uf.union(0, 1);
        let m = uf.mark();
        uf.union(1, 2);
        assert_eq!(uf.find(2), uf.find(0));
        uf.rollback(m);
        assert_ne!(uf.find(2), uf.find(0));
        assert_eq!(uf.find(1), uf.find(0));
    }

    #[test]
    fn feasibility_examples() {
        let p = pat(2, 1, &[0, 1]);
        assert!(partition_feasible(&p, &CellPartition::new(2, 1, vec![0, 0]).unwrap()).is_none());
        let q = pat(2, 2, &[0, 1, 1, 0]);
        let (ts, _) =
            partition_feasible(&q, &CellPartition::new(2, 2, vec![0, 1, 2, 3]).unwrap()).unwrap();
        assert_eq!(ts.len(), 4);
    }

    #[test]
    fn counter_partition_is_feasible() {
        let p = counter();
        let ts = TileSet::new(vec![
            TileType::new(
                Glue::new("0"),
                Glue::new("0"),
                Glue::new("0"),
                Glue::new("0"),
                ColorId(0),
            ),
            TileType::new(
                Glue::new("1"),
                Glue::new("1"),
                Glue::new("0"),
                Glue::new("0"),
                ColorId(1),
            ),
            TileType::new(
                Glue::new("1"),
                Glue::new("0"),
                Glue::new("1"),
                Glue::new("0"),
                ColorId(1),
            ),
            TileType::new(
                Glue::new("0"),
                Glue::new("1"),
                Glue::new("1"),
                Glue::new("1"),
                ColorId(0),
            ),
        ])
        .unwrap();
        let seed = LSeed::new(glues("0 0 0 0 0"), glues("1 1 1 1 1 1 1 1 1")).unwrap();
        let a = simulate(&ts, &seed).completed().unwrap();
        let part = CellPartition::of_assembly(&a);
        assert_eq!(part.class_count(), 4);
        let (w, _) = partition_feasible(&p, &part).unwrap();
        assert_eq!(w.len(), 4);
    }

    #[test]
    fn small_minimums() {
        assert_eq!(
            min_tileset(&pat(3, 3, &[0; 9]), 10).unwrap().unwrap().size,
            1
        );
        assert_eq!(brute_force_min(&pat(2, 1, &[0, 1]), 4).unwrap(), Some(2));
        assert_eq!(
            brute_force_min(&pat(2, 2, &[0, 1, 1, 0]), 4).unwrap(),
            Some(2)
        );
        assert_eq!(brute_force_min(&pat(5, 1, &[0; 5]), 4).unwrap(), Some(1));
        assert!(matches!(
            brute_force_min(&pat(13, 1, &[0; 13]), 4),
            Err(SolverError::TooLarge { .. })
        ));
    }

    #[test]
    fn budget_and_limit() {
        let p = pat(2, 1, &[0, 1]);
        assert!(min_tileset(&p, 1).unwrap().is_none());
        let q = pat(3, 3, &[0, 1, 0, 1, 1, 0, 0, 0, 1]);
        assert_eq!(
            min_tileset_with_limit(&q, 9, 3).unwrap_err(),
            SolverError::NodeLimit(3)
        );
    }

    #[test]
    fn counter_solves_to_four() {
        let p = counter();
        let sol = min_tileset(&p, 8).unwrap().unwrap();
        assert_eq!(sol.size, 4);
        let a = simulate(&sol.tiles, &sol.seed).completed().unwrap();
        assert_eq!(a.pattern(), p);
    }

    #[test]
    fn chain_strips() {
        // constant input cannot count to three with two types
        assert!(!chain_admits(&[0; 4], &[0, 0, 0, 1], 2));
        assert!(chain_admits(&[0; 4], &[0, 0, 0, 1], 4));
        // the input can carry the colors directly
        assert!(chain_admits(&[0, 1, 1, 0, 1], &[0, 1, 1, 0, 1], 2));
        assert!(!chain_admits(&[0, 1, 1, 0, 1], &[0, 1, 1, 0, 1], 1));
    }
}
