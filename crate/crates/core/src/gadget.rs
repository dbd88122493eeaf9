//! GADGET: the south-west block of P(φ). It is described by a blueprint
//! (seed glues plus named regions and motif anchors) and is always produced
//! by running the evaluation tile set over that seed.
//!
//! Layout, west to east, all parts standing on the bottom row:
//! - leftmost: LB4 (its red/blue and Init flanks, the cyan field, the
//!   boundary top row and right column) with a clean-up band above it that
//!   stacks yellows and retires the vertical T signals;
//! - middle: `c` columns that absorb the `s` rows coming out of the
//!   leftmost part, laid out so the quoted motifs occur;
//! - rightmost: 32 template instances climbing north-east in eight groups,
//!   each instance followed by the `c` columns that retire its signals.
//!
//! `n` columns are inserted wherever a row must be lowercased again, so
//! every row leaves the block as `f`/`t` except the top one, which leaves as
//! `F`; every column leaves it as `F`.

use std::fmt;

use thiserror::Error;

use crate::formats::{lines, number, syntax, FormatError};
use crate::rtas::{
    east_exposure, north_exposure, simulate, Assembly, ColorId, Glue, LSeed, Pattern, SimOutcome,
};
use crate::teval::{self, *};
use crate::verifier;

pub const DEFAULT_C: usize = 25;
pub const DEFAULT_R: usize = 13;

pub const BLUEPRINT_FILE: &str = include_str!("../data/gadget.bp");

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GadgetError {
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("seed is {got_w}x{got_h} but blueprint declares {w}x{h}")]
    Dimensions {
        w: usize,
        h: usize,
        got_w: usize,
        got_h: usize,
    },
    #[error("blueprint does not assemble: {0}")]
    Assembly(String),
    #[error("exposure check failed: {0}")]
    Exposure(String),
    #[error("missing region `{0}`")]
    MissingRegion(String),
    #[error("region `{0}` does not have LB4 proportions")]
    Lb4Shape(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region {
    pub name: String,
    pub x0: usize,
    pub y0: usize,
    pub x1: usize,
    pub y1: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MotifAnchor {
    pub name: String,
    pub x: usize,
    pub y: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetBlueprint {
    pub width: usize,
    pub height: usize,
    pub x_north: Vec<Glue>,
    pub y_east: Vec<Glue>,
    pub regions: Vec<Region>,
    pub motifs: Vec<MotifAnchor>,
}

pub const EIGHTHS: [&str; 8] = ["wFF", "wFT", "wTF", "wTT", "bTT", "bTF", "bFT", "bFF"];

impl GadgetBlueprint {
    pub fn seed(&self) -> Result<LSeed, GadgetError> {
        if self.x_north.len() != self.width || self.y_east.len() != self.height {
            return Err(GadgetError::Dimensions {
                w: self.width,
                h: self.height,
                got_w: self.x_north.len(),
                got_h: self.y_east.len(),
            });
        }
        LSeed::new(self.x_north.clone(), self.y_east.clone())
            .map_err(|e| GadgetError::Assembly(e.to_string()))
    }

    pub fn region(&self, name: &str) -> Result<&Region, GadgetError> {
        self.regions
            .iter()
            .find(|r| r.name == name)
            .ok_or_else(|| GadgetError::MissingRegion(name.to_owned()))
    }

    /// (c, r) read off the LB4 bounding box: width c+14, height 4r+3.
    pub fn lb4_params(&self) -> Result<(usize, usize), GadgetError> {
        let reg = self.region("LB4")?;
        let (w, h) = (reg.x1 + 1 - reg.x0, reg.y1 + 1 - reg.y0);
        if w < 15 || h < 7 || (h - 3) % 4 != 0 {
            return Err(GadgetError::Lb4Shape(reg.name.clone()));
        }
        Ok((w - 14, (h - 3) / 4))
    }
}

pub fn parse_blueprint(text: &str) -> Result<GadgetBlueprint, GadgetError> {
    let ls = lines(text);
    let (line, head) = ls
        .first()
        .ok_or_else(|| FormatError::Truncated("missing `gadget` header".into()))?;
    if head.len() != 3 || head[0] != "gadget" {
        return Err(syntax(*line, "expected `gadget <w> <h>`").into());
    }
    let width = number(*line, head[1], "width")?;
    let height = number(*line, head[2], "height")?;
    let mut bp = GadgetBlueprint {
        width,
        height,
        x_north: Vec::new(),
        y_east: Vec::new(),
        regions: Vec::new(),
        motifs: Vec::new(),
    };
    let (mut saw_x, mut saw_y) = (false, false);
    for (line, toks) in &ls[1..] {
        match toks[0] {
            "xseed:" => {
                bp.x_north.extend(toks[1..].iter().map(|t| Glue::new(t)));
                saw_x = true;
            }
            "yseed:" => {
                bp.y_east.extend(toks[1..].iter().map(|t| Glue::new(t)));
                saw_y = true;
            }
            "region" => {
                if toks.len() != 6 {
                    return Err(
                        syntax(*line, "expected `region <name> <x0> <y0> <x1> <y1>`").into(),
                    );
                }
                let n = |i: usize| number(*line, toks[i], "coordinate");
                bp.regions.push(Region {
                    name: toks[1].to_owned(),
                    x0: n(2)?,
                    y0: n(3)?,
                    x1: n(4)?,
                    y1: n(5)?,
                });
            }
            "motif" => {
                if toks.len() != 4 {
                    return Err(syntax(*line, "expected `motif <name> <x> <y>`").into());
                }
                bp.motifs.push(MotifAnchor {
                    name: toks[1].to_owned(),
                    x: number(*line, toks[2], "x")?,
                    y: number(*line, toks[3], "y")?,
                });
            }
            other => return Err(syntax(*line, format!("unknown directive `{other}`")).into()),
        }
    }
    if !saw_x || !saw_y {
        return Err(FormatError::Truncated("blueprint needs `xseed:` and `yseed:`".into()).into());
    }
    bp.seed()?;
    Ok(bp)
}

pub fn write_blueprint(bp: &GadgetBlueprint) -> String {
    let mut s = format!("gadget {} {}\n", bp.width, bp.height);
    // long seeds are wrapped; repeated directives concatenate
    for (tag, seq) in [("xseed:", &bp.x_north), ("yseed:", &bp.y_east)] {
        for chunk in seq.chunks(40) {
            let toks: Vec<&str> = chunk.iter().map(|g| g.name()).collect();
            s.push_str(&format!("{tag} {}\n", toks.join(" ")));
        }
    }
    for r in &bp.regions {
        s.push_str(&format!(
            "region {} {} {} {} {}\n",
            r.name, r.x0, r.y0, r.x1, r.y1
        ));
    }
    for m in &bp.motifs {
        s.push_str(&format!("motif {} {} {}\n", m.name, m.x, m.y));
    }
    s
}

pub fn shipped_blueprint() -> GadgetBlueprint {
    parse_blueprint(BLUEPRINT_FILE).expect("bundled blueprint parses")
}

/// LB4 boundary colors: the top row west to east (both Sat corners
/// included) and the right column bottom to top.
pub fn lb4_boundary(c: usize, r: usize) -> (Vec<ColorId>, Vec<ColorId>) {
    let rep = |col: ColorId, n: usize| std::iter::repeat_n(col, n);
    let top: Vec<ColorId> = rep(SAT, 1)
        .chain(rep(RED, 1))
        .chain(rep(CE, 2))
        .chain(rep(YELLOW, 3))
        .chain(rep(CE, 1))
        .chain(rep(YELLOW, 2))
        .chain(rep(CE, c))
        .chain(rep(YELLOW, 1))
        .chain(rep(CE, 2))
        .chain(rep(SAT, 1))
        .collect();
    let right: Vec<ColorId> = rep(RED, 2)
        .chain(rep(BLUE, 2 * r - 1))
        .chain(rep(RED, 2 * r - 1))
        .chain(rep(BLUE, 2))
        .chain(rep(SAT, 1))
        .collect();
    (top, right)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Palette {
    White,
    Black,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TemplateInstance {
    pub palette: Palette,
    pub bits: [bool; 4],
    pub pattern: Pattern,
    pub assembly: Assembly,
}

fn bit_glue(b: bool) -> Glue {
    Glue::new(if b { "T" } else { "F" })
}

/// The 6x4 instance: four diagonal columns, an Init column, and the four
/// red/blue cells reading the bits bottom to top.
pub fn template_instance(palette: Palette, bits: [bool; 4]) -> TemplateInstance {
    let col = match palette {
        Palette::White => "n",
        Palette::Black => "v",
    };
    let mut x = vec![Glue::new(col); 4];
    x.extend([Glue::new("c"), Glue::new("c")]);
    let seed = LSeed::new(x, bits.iter().map(|&b| bit_glue(b)).collect()).unwrap();
    let assembly = simulate(&t_eval(), &seed)
        .completed()
        .expect("template instances always assemble");
    TemplateInstance {
        palette,
        bits,
        pattern: assembly.pattern(),
        assembly,
    }
}

pub fn all_template_instances() -> Vec<TemplateInstance> {
    let mut out = Vec::with_capacity(32);
    for palette in [Palette::White, Palette::Black] {
        for mask in 0..16u8 {
            let bits = [0, 1, 2, 3].map(|i| mask >> i & 1 == 1);
            out.push(template_instance(palette, bits));
        }
    }
    out
}

/// A colored fragment quoted in the text together with the tiles the
/// evaluation set must place there (`None`: any tile of that color).
#[derive(Clone, Debug)]
pub struct Motif {
    pub name: &'static str,
    pub colors: Pattern,
    pub tiles: Vec<Option<&'static str>>,
}

impl Motif {
    fn row(name: &'static str, cells: &[(ColorId, Option<&'static str>)]) -> Motif {
        Motif {
            name,
            colors: Pattern::new(cells.len(), 1, cells.iter().map(|c| c.0).collect()).unwrap(),
            tiles: cells.iter().map(|c| c.1).collect(),
        }
    }

    pub fn tile(&self, x: usize, y: usize) -> Option<&'static str> {
        self.tiles[(y - 1) * self.colors.width + (x - 1)]
    }

    /// Adjacent cells with named tiles must agree on their shared glue.
    pub fn self_consistent(&self) -> bool {
        let ts = t_eval();
        let get = |x, y| self.tile(x, y).map(|n| ts.get(teval::idx(n)).clone());
        let (w, h) = (self.colors.width, self.colors.height);
        for y in 1..=h {
            for x in 1..=w {
                let Some(t) = get(x, y) else { continue };
                if t.color != self.colors.get(x, y) {
                    return false;
                }
                if x < w {
                    if let Some(e) = get(x + 1, y) {
                        if e.west != t.east {
                            return false;
                        }
                    }
                }
                if y < h {
                    if let Some(n) = get(x, y + 1) {
                        if n.south != t.north {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

pub fn motif_catalog(r: usize) -> Vec<Motif> {
    let mut out = Vec::new();

    // Init column beside red^2 blue^(2r-1) red
    let h = 2 * r + 2;
    let mut colors = Vec::with_capacity(2 * h);
    let mut tiles = Vec::with_capacity(2 * h);
    for y in 1..=h {
        let blue = (3..=2 * r + 1).contains(&y);
        colors.extend([INIT, if blue { BLUE } else { RED }]);
        tiles.extend(if blue {
            [Some("t_InitT"), Some("t_T")]
        } else {
            [Some("t_InitF"), Some("t_F")]
        });
    }
    out.push(Motif {
        name: "M_initcol",
        colors: Pattern::new(2, h, colors).unwrap(),
        tiles,
    });

    // six yellows with a CE on top, a CE pillar to the west
    let mut colors = Vec::new();
    let mut tiles = Vec::new();
    for _ in 0..6 {
        colors.extend([CE, YELLOW]);
        tiles.extend([Some("t_CEss"), Some("t_y")]);
    }
    colors.extend([CE, CE]);
    tiles.extend([Some("t_CEff"), Some("t_CEfs")]);
    out.push(Motif {
        name: "M_yellowstack",
        colors: Pattern::new(2, 7, colors).unwrap(),
        tiles,
    });

    out.push(Motif::row(
        "M_redCEsat",
        &[
            (RED, Some("t_F")),
            (CE, Some("t_CEfs")),
            (SAT, Some("t_Sat")),
        ],
    ));
    out.push(Motif::row(
        "M_rowtop",
        &[
            (RED, Some("t_F")),
            (CE, Some("t_CEff")),
            (CE, Some("t_CEfs")),
            (YELLOW, Some("t_y")),
        ],
    ));
    out.push(Motif::row(
        "M_bwicb",
        &[
            (BLUE, Some("t_T")),
            (WHITE, Some("t_wt")),
            (INIT, Some("t_InitT")),
            (CYAN, None),
            (BLUE, Some("t_T")),
        ],
    ));
    out.push(Motif::row(
        "M_rcir",
        &[
            (RED, Some("t_F")),
            (CE, Some("t_CEff")),
            (INIT, Some("t_InitF")),
            (RED, Some("t_F")),
        ],
    ));
    out
}

pub fn assemble_gadget(bp: &GadgetBlueprint) -> Result<Assembly, GadgetError> {
    match simulate(&t_eval(), &bp.seed()?) {
        SimOutcome::Completed(a) => Ok(a),
        other => Err(GadgetError::Assembly(other.to_string())),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExposureReport {
    /// First offending 1-based index along the top row, if any.
    pub north: Result<(), usize>,
    /// First offending 1-based row along the east column, if any.
    pub east: Result<(), usize>,
}

impl ExposureReport {
    pub fn passed(&self) -> bool {
        self.north.is_ok() && self.east.is_ok()
    }
}

pub fn check_exposures(a: &Assembly) -> ExposureReport {
    let f_up = Glue::new("F");
    let (f, t) = (Glue::new("f"), Glue::new("t"));
    let north = match north_exposure(a).iter().position(|&g| g != f_up) {
        Some(i) => Err(i + 1),
        None => Ok(()),
    };
    let east_glues = east_exposure(a);
    let h = east_glues.len();
    let east = match east_glues.iter().enumerate().position(|(i, &g)| {
        if i + 1 == h {
            g != f_up
        } else {
            g != f && g != t
        }
    }) {
        Some(i) => Err(i + 1),
        None => Ok(()),
    };
    ExposureReport { north, east }
}

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default)]
pub struct GadgetReport {
    pub checks: Vec<Check>,
}

impl GadgetReport {
    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.passed)
    }

    fn push(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.to_owned(),
            passed,
            detail: detail.into(),
        });
    }
}

impl fmt::Display for GadgetReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(
                f,
                "{:<20} {}  {}",
                c.name,
                if c.passed { "pass" } else { "FAIL" },
                c.detail
            )?;
        }
        Ok(())
    }
}

/// Runs every checkable constraint on a blueprint.
pub fn validate(bp: &GadgetBlueprint) -> GadgetReport {
    let mut rep = GadgetReport::default();
    let a = match assemble_gadget(bp) {
        Ok(a) => {
            rep.push("assembles", true, format!("{}x{}", a.width, a.height));
            a
        }
        Err(e) => {
            rep.push("assembles", false, e.to_string());
            return rep;
        }
    };
    let p = a.pattern();
    let ex = check_exposures(&a);
    rep.push(
        "north exposure",
        ex.north.is_ok(),
        match ex.north {
            Ok(()) => "all F".to_owned(),
            Err(i) => format!("column {i} is not F"),
        },
    );
    rep.push(
        "east exposure",
        ex.east.is_ok(),
        match ex.east {
            Ok(()) => "f/t below, F on top".to_owned(),
            Err(i) => format!("row {i} is off"),
        },
    );

    match (bp.region("LB4"), bp.lb4_params()) {
        (Ok(reg), Ok((c, r))) => {
            let (top, right) = lb4_boundary(c, r);
            let got_top: Vec<ColorId> = (reg.x0..=reg.x1).map(|x| p.get(x, reg.y1)).collect();
            let got_right: Vec<ColorId> = (reg.y0..=reg.y1).map(|y| p.get(reg.x1, y)).collect();
            rep.push(
                "LB4 top row",
                got_top == top,
                format!("c={c}, {} cells", top.len()),
            );
            rep.push(
                "LB4 right column",
                got_right == right,
                format!("r={r}, {} cells", right.len()),
            );
        }
        (Err(e), _) | (_, Err(e)) => rep.push("LB4", false, e.to_string()),
    }

    let runs = verifier::property2_runs(&a);
    rep.push(
        "CE after yellow",
        verifier::check_property2(&a),
        format!("{runs} yellow-CE runs"),
    );

    let r = bp.lb4_params().map(|(_, r)| r).unwrap_or(DEFAULT_R);
    let catalog = motif_catalog(r);
    let mut missing = Vec::new();
    for m in &catalog {
        let found = bp
            .motifs
            .iter()
            .filter(|a| a.name == m.name)
            .any(|anc| motif_at(&a, m, anc.x, anc.y));
        if !found {
            missing.push(m.name);
        }
    }
    rep.push(
        "motifs",
        missing.is_empty(),
        if missing.is_empty() {
            format!("{} anchored", catalog.len())
        } else {
            format!("missing {}", missing.join(", "))
        },
    );

    let instances = all_template_instances();
    let distinct = instances
        .iter()
        .enumerate()
        .all(|(i, a)| instances[..i].iter().all(|b| b.pattern != a.pattern));
    let present = instances
        .iter()
        .filter(|ti| !p.find(&ti.pattern).is_empty())
        .count();
    rep.push(
        "template instances",
        distinct && present == 32,
        format!("{present}/32 present, pairwise distinct: {distinct}"),
    );

    let xs: Result<Vec<usize>, _> = EIGHTHS.iter().map(|n| bp.region(n).map(|r| r.x0)).collect();
    let ordered = matches!(&xs, Ok(v) if v.windows(2).all(|w| w[0] < w[1]));
    rep.push("one-eighths order", ordered, EIGHTHS.join("-"));
    rep
}

/// Does the motif sit at `(x, y)` with the expected tiles?
pub fn motif_at(a: &Assembly, m: &Motif, x: usize, y: usize) -> bool {
    if !a.pattern().matches_at(&m.colors, x, y) {
        return false;
    }
    let ts = a.tiles();
    (1..=m.colors.height).all(|dy| {
        (1..=m.colors.width).all(|dx| match m.tile(dx, dy) {
            None => true,
            Some(name) => ts.get(a.index_at(x + dx - 1, y + dy - 1)).name.as_deref() == Some(name),
        })
    })
}

struct Builder {
    xs: Vec<Glue>,
    ys: Vec<Glue>,
}

impl Builder {
    fn col(&mut self, g: &str) -> usize {
        self.xs.push(Glue::new(g));
        self.xs.len()
    }

    fn row(&mut self, g: &str) -> usize {
        self.ys.push(Glue::new(g));
        self.ys.len()
    }

    fn east(&self) -> Vec<Glue> {
        let seed = LSeed::new(self.xs.clone(), self.ys.clone()).unwrap();
        match simulate(&t_eval(), &seed) {
            SimOutcome::Completed(a) => east_exposure(&a),
            other => panic!("gadget layout bug: {other}"),
        }
    }

    /// Lowercases every uppercase row in `lo..=hi` with one `n` column each,
    /// bottom row first.
    fn lowercase_rows(&mut self, lo: usize, hi: usize) {
        let east = self.east();
        let (up_f, up_t) = (Glue::new("F"), Glue::new("T"));
        for y in lo..=hi {
            let g = east[y - 1];
            if g == up_f || g == up_t {
                self.col("n");
            }
        }
    }
}

/// Lays out the gadget for LB4 constants `c` and `r`.
pub fn build_blueprint(c: usize, r: usize) -> GadgetBlueprint {
    assert!(c >= 1 && r >= 1);
    let mut b = Builder {
        xs: Vec::new(),
        ys: Vec::new(),
    };
    let mut regions = Vec::new();
    let mut motifs = Vec::new();
    let anchor = |motifs: &mut Vec<MotifAnchor>, name: &str, x: usize, y: usize| {
        motifs.push(MotifAnchor {
            name: name.to_owned(),
            x,
            y,
        })
    };

    // LB4 body rows carry F F T^(2r-1) F^(2r-1) T T from the west edge
    let mut body = vec!["F", "F"];
    body.extend(std::iter::repeat_n("T", 2 * r - 1));
    body.extend(std::iter::repeat_n("F", 2 * r - 1));
    body.extend(["T", "T"]);
    for g in &body {
        b.row(g);
    }
    let lb4_top = b.row("s");
    let retire_c = b.row("s");
    let stack_lo = b.ys.len() + 1;
    for _ in 0..6 {
        b.row("s");
    }

    // red/blue flank, Init flank, cyan field, right red/blue column
    b.col("c");
    b.col("c");
    let mut field = vec!["F", "T", "T", "T", "T", "F", "T", "T"];
    field.extend(std::iter::repeat_n("F", c));
    field.extend(["T", "F", "F"]);
    for g in &field {
        b.col(g);
    }
    let lb4_right = b.col("c");
    // the first T column is consumed on the top row itself
    let raised = field.iter().filter(|&&g| g == "T").count() - 1;
    for _ in 0..raised {
        b.row("f");
    }
    regions.push(Region {
        name: "LB4".into(),
        x0: 1,
        y0: 1,
        x1: lb4_right,
        y1: lb4_top,
    });
    regions.push(Region {
        name: "leftmost".into(),
        x0: 1,
        y0: 1,
        x1: lb4_right,
        y1: b.ys.len(),
    });
    anchor(&mut motifs, "M_rowtop", 2, lb4_top);
    anchor(&mut motifs, "M_yellowstack", 4, stack_lo);
    debug_assert_eq!(retire_c, lb4_top + 1);

    // middle part
    let mid_lo = b.xs.len() + 1;
    let mut pending = 6 + raised;
    let m1 = b.col("c");
    b.col("c");
    b.col("n");
    let m4 = b.col("c");
    b.col("F");
    b.col("c");
    let m7 = b.col("c");
    b.col("T");
    b.col("c");
    pending -= 5;
    anchor(&mut motifs, "M_initcol", m1, 1);
    anchor(&mut motifs, "M_bwicb", m1 + 1, 3);
    anchor(&mut motifs, "M_rcir", m4, lb4_top + 1);
    anchor(&mut motifs, "M_redCEsat", m7, lb4_top + 1);
    let mut c_cols = 6;
    for _ in 0..pending {
        b.col("c");
        c_cols += 1;
    }
    if c_cols % 2 == 1 {
        b.row("s");
        b.col("c");
    }
    let mid_top = b.ys.len();
    b.lowercase_rows(1, mid_top);
    regions.push(Region {
        name: "middle".into(),
        x0: mid_lo,
        y0: 1,
        x1: b.xs.len(),
        y1: mid_top,
    });

    // rightmost part: eight groups of four instances
    for name in EIGHTHS {
        let palette = if name.starts_with('w') { "n" } else { "v" };
        let low: Vec<&str> = name[1..]
            .chars()
            .map(|ch| if ch == 'T' { "T" } else { "F" })
            .collect();
        let x0 = b.xs.len() + 1;
        let y0 = b.ys.len() + 1;
        for high in [["F", "F"], ["F", "T"], ["T", "F"], ["T", "T"]] {
            let bits = [low[0], low[1], high[0], high[1]];
            let base = b.ys.len() + 1;
            for g in bits {
                b.row(g);
            }
            let raised = if palette == "v" {
                bits.iter().filter(|&&g| g == "T").count()
            } else {
                0
            };
            let retire = (raised + raised % 2).max(2);
            for _ in 0..raised {
                b.row("f");
            }
            for _ in raised..retire {
                b.row("s");
            }
            for _ in 0..4 {
                b.col(palette);
            }
            for _ in 0..retire {
                b.col("c");
            }
            b.lowercase_rows(base, b.ys.len());
        }
        regions.push(Region {
            name: name.into(),
            x0,
            y0,
            x1: b.xs.len(),
            y1: b.ys.len(),
        });
    }

    let top = b.row("F");
    b.lowercase_rows(1, top - 1);
    let (w, h) = (b.xs.len(), b.ys.len());
    regions.push(Region {
        name: "joint".into(),
        x0: w,
        y0: h,
        x1: w,
        y1: h,
    });
    GadgetBlueprint {
        width: w,
        height: h,
        x_north: b.xs,
        y_east: b.ys,
        regions,
        motifs,
    }
}
