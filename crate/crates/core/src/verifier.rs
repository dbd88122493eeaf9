//! Mechanical checks of the lower-bound lemmas at desk scale: the cyan
//! triple forced by LB4, the CE/yellow labeling forced next to the yellow
//! stack, the two-type rule, CE after yellow, and the cyan zigzag.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use thiserror::Error;

use crate::gadget::lb4_boundary;
use crate::rtas::{canonicalize, isomorphic, Assembly, ColorId, Glue, Pattern, TileSet, TileType};
use crate::solver::{ChainFrontier, GlueSystem};
use crate::teval::{self, CE, CYAN, YELLOW};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum VerifierError {
    #[error("expected exactly 2 tile types of color {color}, found {count}")]
    ColorCount { color: ColorId, count: usize },
    #[error("LB4 check needs c >= 4, r >= 2 and c + 11 <= 22 (south words are enumerated), got c={c} r={r}")]
    Scale { c: usize, r: usize },
}

/// Two types of one color: wests differ, easts differ, souths agree.
pub fn check_lemma_exactly2(ts: &TileSet, color: ColorId) -> Result<bool, VerifierError> {
    let of: Vec<&TileType> = ts.types().iter().filter(|t| t.color == color).collect();
    if of.len() != 2 {
        return Err(VerifierError::ColorCount {
            color,
            count: of.len(),
        });
    }
    let (a, b) = (of[0], of[1]);
    Ok(a.west != b.west && a.east != b.east && a.south == b.south)
}

/// Number of maximal `yellow CE^d` runs (d >= 1) along rows.
pub fn property2_runs(a: &Assembly) -> usize {
    let p = a.pattern();
    let mut n = 0;
    for y in 1..=p.height {
        for x in 1..p.width {
            if p.get(x, y) == YELLOW && p.get(x + 1, y) == CE {
                n += 1;
            }
        }
    }
    n
}

/// Every CE cell reached from a yellow cell through CE cells only is t_CEss.
pub fn check_property2(a: &Assembly) -> bool {
    let p = a.pattern();
    let ess = teval::t_eval().get(teval::idx("t_CEss")).clone();
    for y in 1..=p.height {
        for x in 1..=p.width {
            if p.get(x, y) != YELLOW {
                continue;
            }
            let mut d = x + 1;
            while d <= p.width && p.get(d, y) == CE {
                if *a.tile_at(d, y) != ess {
                    return false;
                }
                d += 1;
            }
        }
    }
    true
}

/// No column exposes `1` to the east on two vertically adjacent cells.
pub fn check_zigzag(a: &Assembly) -> bool {
    let one = Glue::new("1");
    (1..=a.width).all(|x| {
        (1..a.height).all(|y| !(a.tile_at(x, y).east == one && a.tile_at(x, y + 1).east == one))
    })
}

fn cyan(n: &str, w: &str, s: &str, e: &str) -> TileType {
    TileType::new(Glue::new(n), Glue::new(w), Glue::new(s), Glue::new(e), CYAN)
}

/// The sole 3-cyan set LB4 leaves open: A, B, C as (N, W, S, E).
pub fn spurious_cyan_triple() -> TileSet {
    TileSet::new(vec![
        cyan("a", "0", "a", "0").named("A"),
        cyan("a", "0", "b", "1").named("B"),
        cyan("b", "1", "a", "0").named("C"),
    ])
    .unwrap()
}

/// The normalized candidate space: A=(n1,0,a,e1), B=(n2,0,b,e2),
/// C=(n3,1,a,e3) with n in {a,b} and e in {0,1}.
pub fn cyan_triples() -> Vec<TileSet> {
    let mut out = Vec::with_capacity(64);
    for nm in 0..8u8 {
        for em in 0..8u8 {
            let n = |i: u8| if nm >> i & 1 == 1 { "b" } else { "a" };
            let e = |i: u8| if em >> i & 1 == 1 { "1" } else { "0" };
            out.push(
                TileSet::new(vec![
                    cyan(n(0), "0", "a", e(0)).named("A"),
                    cyan(n(1), "0", "b", e(1)).named("B"),
                    cyan(n(2), "1", "a", e(2)).named("C"),
                ])
                .unwrap(),
            );
        }
    }
    out
}

/// Every directed 2-type cyan set over the same glue alphabets.
pub fn cyan_pairs() -> Vec<TileSet> {
    let keys = [("0", "a"), ("0", "b"), ("1", "a"), ("1", "b")];
    let mut out = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            for free in 0..16u8 {
                let n = |k: u8| if free >> k & 1 == 1 { "b" } else { "a" };
                let e = |k: u8| if free >> k & 1 == 1 { "1" } else { "0" };
                out.push(
                    TileSet::new(vec![
                        cyan(n(0), keys[i].0, keys[i].1, e(1)),
                        cyan(n(2), keys[j].0, keys[j].1, e(3)),
                    ])
                    .unwrap(),
                );
            }
        }
    }
    out
}

/// Type budgets for the two boundary strips of LB4. The defaults are the
/// counts from the full-size argument: at most 8 CE types plus a yellow one
/// on the top row, and the 4 red/blue types of the right column.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Lb4Params {
    pub c: usize,
    pub r: usize,
    /// CE plus yellow types available to the top row.
    pub top_budget: usize,
    /// red plus blue types available to the right column.
    pub right_budget: usize,
}

impl Lb4Params {
    pub fn scaled() -> Self {
        Lb4Params {
            c: 7,
            r: 4,
            top_budget: 9,
            right_budget: 4,
        }
    }

    pub fn full() -> Self {
        Lb4Params {
            c: 25,
            r: 13,
            ..Self::scaled()
        }
    }

    pub fn rows(&self) -> usize {
        4 * self.r + 2
    }

    pub fn cols(&self) -> usize {
        self.c + 11
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Lb4Outcome {
    /// Distinct (north exposure, right-column state) pairs left after the
    /// last row, over tilings whose east exposure stayed admissible for the
    /// right column.
    pub tilings: u64,
    /// Some such tiling also lets the top row assemble.
    pub survives: bool,
}

fn top_admits(north: &[u8], top: &[u8], budget: usize) -> bool {
    let mut f = ChainFrontier::new(budget);
    for (&k, &c) in north.iter().zip(top) {
        f = f.step(k, c);
        if f.is_dead() {
            return false;
        }
    }
    true
}

/// Search over all west and south boundary words (over the set's own west
/// and south glues) for a tiling of the scaled cyan rectangle whose
/// exposures let the right column and the top row of LB4 assemble within
/// budget. Rows are swept bottom up; tilings that agree on the current north
/// exposure and on what the right column could still be are merged.
pub fn lb4_admits(ts: &TileSet, params: Lb4Params) -> Lb4Outcome {
    let (top_word, right_word) = lb4_boundary(params.c, params.r);
    let top: Vec<u8> = top_word[2..top_word.len() - 1]
        .iter()
        .map(|c| c.0 as u8)
        .collect();
    let right: Vec<u8> = right_word[..right_word.len() - 1]
        .iter()
        .map(|c| c.0 as u8)
        .collect();
    debug_assert_eq!((top.len(), right.len()), (params.cols(), params.rows()));

    let mut sym: HashMap<Glue, u8> = HashMap::new();
    let mut id = |g: Glue| {
        let n = sym.len() as u8;
        *sym.entry(g).or_insert(n)
    };
    let mut table: HashMap<(u8, u8), (u8, u8)> = HashMap::new();
    for t in ts.types() {
        let k = (id(t.west), id(t.south));
        table.insert(k, (id(t.north), id(t.east)));
    }
    let wests: BTreeSet<u8> = table.keys().map(|k| k.0).collect();
    let souths: Vec<u8> = table
        .keys()
        .map(|k| k.1)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();

    let row = |west: u8, south: &[u8]| -> Option<(Vec<u8>, u8)> {
        let mut w = west;
        let mut north = Vec::with_capacity(south.len());
        for &s in south {
            let &(n, e) = table.get(&(w, s))?;
            north.push(n);
            w = e;
        }
        Some((north, w))
    };

    let cols = params.cols();
    let mut level: HashMap<ChainFrontier, HashSet<Vec<u8>>> = HashMap::new();
    let start = level
        .entry(ChainFrontier::new(params.right_budget))
        .or_default();
    let count = souths.len().pow(cols as u32);
    for mut i in 0..count {
        let mut word = Vec::with_capacity(cols);
        for _ in 0..cols {
            word.push(souths[i % souths.len()]);
            i /= souths.len();
        }
        start.insert(word);
    }

    for &color in &right {
        let mut next: HashMap<ChainFrontier, HashSet<Vec<u8>>> = HashMap::new();
        for (frontier, words) in &level {
            let mut stepped: HashMap<u8, Option<ChainFrontier>> = HashMap::new();
            for south in words {
                for &w in &wests {
                    let Some((north, east)) = row(w, south) else {
                        continue;
                    };
                    let f = stepped.entry(east).or_insert_with(|| {
                        let f = frontier.step(east, color);
                        (!f.is_dead()).then_some(f)
                    });
                    if let Some(f) = f {
                        next.entry(f.clone()).or_default().insert(north);
                    }
                }
            }
        }
        level = next;
        if level.is_empty() {
            break;
        }
    }

    let mut out = Lb4Outcome::default();
    let mut seen: HashSet<&Vec<u8>> = HashSet::new();
    for words in level.values() {
        out.tilings += words.len() as u64;
        for w in words {
            if !out.survives && seen.insert(w) && top_admits(w, &top, params.top_budget) {
                out.survives = true;
            }
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct CandidateLine {
    pub index: usize,
    pub tiles: String,
    pub survived: bool,
}

#[derive(Clone, Debug)]
pub struct LemmaReport {
    pub lemma: String,
    pub examined: usize,
    pub survivors: Vec<TileSet>,
    pub expected: TileSet,
    pub candidates: Vec<CandidateLine>,
    /// Side conditions checked alongside the main enumeration.
    pub checks: Vec<(String, bool)>,
}

impl LemmaReport {
    pub fn unique_survivor_matches(&self) -> bool {
        self.survivors.len() == 1 && isomorphic(&self.survivors[0], &self.expected)
    }

    pub fn passed(&self) -> bool {
        self.unique_survivor_matches() && self.checks.iter().all(|c| c.1)
    }

    /// One line per candidate: `<lemma> <index> <survive|reject> <tiles>`.
    pub fn machine_lines(&self) -> String {
        let mut s = String::new();
        for c in &self.candidates {
            s.push_str(&format!(
                "{} {} {} {}\n",
                self.lemma,
                c.index,
                if c.survived { "survive" } else { "reject" },
                c.tiles
            ));
        }
        s
    }
}

impl fmt::Display for LemmaReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {} candidates examined", self.lemma, self.examined)?;
        writeln!(
            f,
            "survivors (up to glue renaming): {}",
            self.survivors.len()
        )?;
        for s in &self.survivors {
            writeln!(f, "  {}", describe(s))?;
        }
        writeln!(f, "expected: {}", describe(&self.expected))?;
        for (name, ok) in &self.checks {
            writeln!(f, "{:<48} {}", name, if *ok { "pass" } else { "FAIL" })?;
        }
        write!(
            f,
            "verdict: {}",
            if self.passed() { "PASS" } else { "FAIL" }
        )
    }
}

/// `name=(N,W,S,E)` for each type, or `t<i>=...` for unnamed ones.
pub fn describe(ts: &TileSet) -> String {
    ts.types()
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let name = t.name.clone().unwrap_or_else(|| format!("t{}", i + 1));
            format!("{}=({},{},{},{})", name, t.north, t.west, t.south, t.east)
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn push_unique(survivors: &mut Vec<TileSet>, ts: &TileSet) {
    let c = canonicalize(ts);
    if !survivors.iter().any(|s| canonicalize(s) == c) {
        survivors.push(ts.clone());
    }
}

/// Widest cyan rectangle whose south words are still enumerated outright.
pub const LB4_MAX_COLS: usize = 22;

pub fn verify_lemma_lb4(params: Lb4Params) -> Result<LemmaReport, VerifierError> {
    if params.c < 4 || params.r < 2 || params.cols() > LB4_MAX_COLS {
        return Err(VerifierError::Scale {
            c: params.c,
            r: params.r,
        });
    }
    let mut survivors = Vec::new();
    let mut candidates = Vec::new();
    let triples = cyan_triples();
    for (index, ts) in triples.iter().enumerate() {
        let survived = lb4_admits(ts, params).survives;
        if survived {
            push_unique(&mut survivors, ts);
        }
        candidates.push(CandidateLine {
            index,
            tiles: describe(ts),
            survived,
        });
    }
    let pairs_fail = cyan_pairs()
        .iter()
        .all(|ts| !lb4_admits(ts, params).survives);
    let tight = Lb4Params {
        right_budget: 3,
        ..params
    };
    let right_needs_four = lb4_admits(&spurious_cyan_triple(), tight).tilings == 0;
    Ok(LemmaReport {
        lemma: "lb4".into(),
        examined: triples.len(),
        survivors,
        expected: spurious_cyan_triple(),
        candidates,
        checks: vec![
            ("every 2-cyan set fails".into(), pairs_fail),
            (
                "spurious triple with <=3 red/blue types fails".into(),
                right_needs_four,
            ),
        ],
    })
}

/// The CE/yellow subpattern beside the yellow stack, bottom row first.
pub fn lb3_pattern() -> Pattern {
    let rows = ["Y.YY", "Y.YY", "..YY", "...Y", "...."];
    let cells = rows
        .iter()
        .flat_map(|r| r.chars().map(|ch| if ch == 'Y' { YELLOW } else { CE }))
        .collect();
    Pattern::new(4, 5, cells).unwrap()
}

/// t1, t2 (CE) and t3, t4 (yellow) as (N, W, S, E).
pub fn forced_ce_yellow_set() -> TileSet {
    let t = |n: &str, w: &str, s: &str, e: &str, c: ColorId, name: &str| {
        TileType::new(Glue::new(n), Glue::new(w), Glue::new(s), Glue::new(e), c).named(name)
    };
    TileSet::new(vec![
        t("0", "a", "0", "a", CE, "t1"),
        t("0", "b", "0", "b", CE, "t2"),
        t("0", "a", "1", "b", YELLOW, "t3"),
        t("1", "b", "1", "b", YELLOW, "t4"),
    ])
    .unwrap()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Lb3Options {
    pub yellow_types: usize,
    /// Unify the south of the yellow type at (4, 4) with the CE south glue.
    pub force_t3_south_zero: bool,
}

impl Default for Lb3Options {
    fn default() -> Self {
        Lb3Options {
            yellow_types: 2,
            force_t3_south_zero: false,
        }
    }
}

/// Labelings of the subpattern by exactly 2 CE and `yellow_types` yellow
/// types. Each color-respecting class assignment is tried with its most
/// general glues, under the two-type premise on the CE pair (shared south,
/// distinct wests and easts). Returns the directed labelings, deduplicated
/// up to renaming, and the number of assignments examined.
pub fn lb3_survivors(opts: Lb3Options) -> (Vec<TileSet>, usize) {
    let p = lb3_pattern();
    let cells: Vec<(usize, usize)> = (1..=5).flat_map(|y| (1..=4).map(move |x| (x, y))).collect();
    let mut survivors = Vec::new();
    let mut examined = 0;
    let mut class = vec![0usize; cells.len()];
    let mut opened = [0usize; 2];
    let limits = [2, opts.yellow_types];
    fn rec(
        i: usize,
        cells: &[(usize, usize)],
        p: &Pattern,
        class: &mut Vec<usize>,
        opened: &mut [usize; 2],
        limits: [usize; 2],
        f: &mut dyn FnMut(&[usize]),
    ) {
        if i == cells.len() {
            if opened[0] == limits[0] && opened[1] == limits[1] {
                f(class);
            }
            return;
        }
        let (x, y) = cells[i];
        let g = usize::from(p.get(x, y) == YELLOW);
        for k in 0..opened[g] {
            class[i] = g * 8 + k;
            rec(i + 1, cells, p, class, opened, limits, f);
        }
        if opened[g] < limits[g] {
            class[i] = g * 8 + opened[g];
            opened[g] += 1;
            rec(i + 1, cells, p, class, opened, limits, f);
            opened[g] -= 1;
        }
    }
    let mut check = |class: &[usize]| {
        examined += 1;
        if let Some(ts) = lb3_labeling(&p, &cells, class, opts) {
            push_unique(&mut survivors, &ts);
        }
    };
    rec(0, &cells, &p, &mut class, &mut opened, limits, &mut check);
    (survivors, examined)
}

fn lb3_labeling(
    p: &Pattern,
    cells: &[(usize, usize)],
    class: &[usize],
    opts: Lb3Options,
) -> Option<TileSet> {
    let mut gs = GlueSystem::new(4, 5);
    let mut reps: Vec<(usize, (usize, usize))> = Vec::new();
    for (i, &cell) in cells.iter().enumerate() {
        match reps.iter().find(|r| r.0 == class[i]) {
            Some(&(_, r)) => gs.unify_cells(r, cell),
            None => reps.push((class[i], cell)),
        }
    }
    reps.sort_unstable();
    let ce: Vec<[u32; 4]> = reps
        .iter()
        .filter(|r| r.0 < 8)
        .map(|r| gs.sides(r.1 .0, r.1 .1))
        .collect();
    gs.unify_vars(ce[0][2], ce[1][2]);
    if opts.force_t3_south_zero {
        gs.unify_vars(gs.sides(4, 4)[2], ce[0][2]);
    }
    let f = |v: u32| gs.find(v);
    if f(ce[0][1]) == f(ce[1][1]) || f(ce[0][3]) == f(ce[1][3]) {
        return None;
    }
    let mut keys: Vec<(u32, u32)> = reps
        .iter()
        .map(|r| {
            let s = gs.sides(r.1 .0, r.1 .1);
            (f(s[1]), f(s[2]))
        })
        .collect();
    keys.sort_unstable();
    if keys.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    let mut names: HashMap<u32, Glue> = HashMap::new();
    let mut glue = |v: u32| {
        let r = f(v);
        let n = names.len();
        *names
            .entry(r)
            .or_insert_with(|| Glue::new(&format!("g{n}")))
    };
    let types = reps
        .iter()
        .map(|r| {
            let s = gs.sides(r.1 .0, r.1 .1);
            TileType::new(
                glue(s[0]),
                glue(s[1]),
                glue(s[2]),
                glue(s[3]),
                p.get(r.1 .0, r.1 .1),
            )
        })
        .collect();
    TileSet::new(types).ok()
}

pub fn verify_lemma_lb3() -> LemmaReport {
    let (survivors, examined) = lb3_survivors(Lb3Options::default());
    let candidates = survivors
        .iter()
        .enumerate()
        .map(|(index, ts)| CandidateLine {
            index,
            tiles: describe(ts),
            survived: true,
        })
        .collect();
    let one_yellow = lb3_survivors(Lb3Options {
        yellow_types: 1,
        ..Default::default()
    })
    .0
    .is_empty();
    let forced = lb3_survivors(Lb3Options {
        force_t3_south_zero: true,
        ..Default::default()
    })
    .0
    .is_empty();
    LemmaReport {
        lemma: "lb3".into(),
        examined,
        survivors,
        expected: forced_ce_yellow_set(),
        candidates,
        checks: vec![
            ("one yellow type is infeasible".into(), one_yellow),
            (
                "t3 south forced to the CE south is infeasible".into(),
                forced,
            ),
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rtas::{glues, simulate, LSeed};
    use crate::teval::{t_eval, BLACK, INIT, WHITE};

    #[test]
    fn spurious_triple_passes_scaled_lb4() {
        let p = Lb4Params::scaled();
        assert!(lb4_admits(&spurious_cyan_triple(), p).survives);
        let tight = Lb4Params {
            right_budget: 3,
            ..p
        };
        assert_eq!(lb4_admits(&spurious_cyan_triple(), tight).tilings, 0);
        // all-equal wests: periodic north exposure
        let flat = TileSet::new(vec![cyan("a", "0", "a", "0"), cyan("b", "0", "b", "1")]).unwrap();
        assert!(!lb4_admits(&flat, p).survives);
        assert!(verify_lemma_lb4(Lb4Params::full()).is_err());
    }

    #[test]
    fn describe_names_unnamed_types() {
        let ts = TileSet::new(vec![cyan("a", "0", "a", "0")]).unwrap();
        assert_eq!(describe(&ts), "t1=(a,0,a,0)");
        assert!(describe(&spurious_cyan_triple()).starts_with("A=(a,0,a,0) "));
    }

    #[test]
    fn exactly2_on_teval() {
        let ts = t_eval();
        for c in [INIT, WHITE, BLACK] {
            assert_eq!(check_lemma_exactly2(&ts, c), Ok(true));
        }
        assert!(check_lemma_exactly2(&ts, CYAN).is_err());
        let eq_east = TileSet::new(vec![
            TileType::new(
                Glue::new("n"),
                Glue::new("p"),
                Glue::new("s"),
                Glue::new("e"),
                INIT,
            ),
            TileType::new(
                Glue::new("n"),
                Glue::new("q"),
                Glue::new("s"),
                Glue::new("e"),
                INIT,
            ),
        ])
        .unwrap();
        assert_eq!(check_lemma_exactly2(&eq_east, INIT), Ok(false));
    }

    #[test]
    fn property2_cannot_be_broken_locally() {
        let ts = t_eval();
        assert_eq!(
            crate::rtas::attachable(&ts, Glue::new("s"), Glue::new("F")),
            vec![teval::idx("t_CEss")]
        );
    }

    #[test]
    fn zigzag_on_rectangles() {
        let ts = spurious_cyan_triple();
        for w in 1..=10 {
            for h in 1..=10 {
                let seed = LSeed::new(vec![Glue::new("a"); w], vec![Glue::new("0"); h]).unwrap();
                let a = simulate(&ts, &seed).completed().unwrap();
                assert!(check_zigzag(&a));
            }
        }
        let seed = LSeed::new(glues("a a a a"), glues("1 0 1 0 0 1 0")).unwrap();
        let a = simulate(&ts, &seed).completed().unwrap();
        assert!(check_zigzag(&a));
        // two west 1s in a row jam the first column
        let seed = LSeed::new(glues("a a"), glues("1 1")).unwrap();
        assert!(!simulate(&ts, &seed).is_completed());
    }

    #[test]
    fn candidate_spaces() {
        assert_eq!(cyan_triples().len(), 64);
        assert!(cyan_triples().iter().any(|t| *t == spurious_cyan_triple()));
        assert_eq!(cyan_pairs().len(), 96);
    }

    #[test]
    fn lb3_pattern_shape() {
        let p = lb3_pattern();
        assert_eq!(p.get(4, 4), YELLOW);
        assert_eq!(p.get(3, 4), CE);
        assert_eq!(p.get(1, 2), YELLOW);
        assert_eq!(p.get(1, 3), CE);
    }

    #[test]
    fn forced_set_tiles_the_subpattern() {
        let ts = forced_ce_yellow_set();
        let seed = LSeed::new(glues("1 0 1 1"), glues("b a a a a")).unwrap();
        let a = simulate(&ts, &seed).completed().unwrap();
        assert_eq!(a.pattern(), lb3_pattern());
    }
}
