//! Monotone 1-in-3-SAT instances, their seed encodings, and the reduced
//! pattern P(φ): GADGET in the south-west corner, the joint and the clause
//! evaluation circuit to its north-east.

use std::fmt;

use thiserror::Error;

use crate::formats::{lines, number, syntax, FormatError};
use crate::gadget::{self, GadgetBlueprint, GadgetError};
use crate::rtas::{Glue, LSeed, Pattern};
use crate::teval::*;

pub const ORACLE_MAX_VARS: usize = 24;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReductionError {
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("line {line}: non-monotone clause")]
    NonMonotone { line: usize },
    #[error("line {line}: variable index out of range ({var} not in 1..={m})")]
    OutOfRange { line: usize, var: i64, m: usize },
    #[error("instance too large for oracle ({0} variables)")]
    TooLarge(usize),
    #[error("assignment has {got} values, formula has {want} variables")]
    Arity { got: usize, want: usize },
    #[error("bad assignment `{0}`: use F/T or 0/1 per variable")]
    BadAssignment(String),
    #[error("blueprint invalid: {0}")]
    Blueprint(#[from] GadgetError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Formula {
    pub m: usize,
    pub clauses: Vec<[usize; 3]>,
}

impl Formula {
    pub fn new(m: usize, clauses: Vec<[usize; 3]>) -> Result<Formula, ReductionError> {
        for (j, c) in clauses.iter().enumerate() {
            let line = j + 2;
            for &v in c {
                if v == 0 || v > m {
                    return Err(ReductionError::OutOfRange {
                        line,
                        var: v as i64,
                        m,
                    });
                }
            }
            if c[0] == c[1] || c[1] == c[2] || c[0] == c[2] {
                return Err(ReductionError::NonMonotone { line });
            }
        }
        Ok(Formula { m, clauses })
    }

    pub fn k(&self) -> usize {
        self.clauses.len()
    }

    /// (v1 ∨ v2 ∨ v3) ∧ (v1 ∨ v2 ∨ v4)
    pub fn example() -> Formula {
        Formula::new(4, vec![[1, 2, 3], [1, 2, 4]]).unwrap()
    }

    fn contains(&self, j: usize, i: usize) -> bool {
        self.clauses[j - 1].contains(&i)
    }
}

pub fn parse_formula(text: &str) -> Result<Formula, ReductionError> {
    let ls = lines(text);
    let (line, head) = ls
        .first()
        .ok_or_else(|| FormatError::Truncated("missing `p mono13` header".into()))?;
    if head.len() != 4 || head[0] != "p" || head[1] != "mono13" {
        return Err(syntax(*line, "expected `p mono13 <m> <k>`").into());
    }
    let m = number(*line, head[2], "variable count")?;
    let k = number(*line, head[3], "clause count")?;
    if ls.len() - 1 != k {
        return Err(syntax(
            *line,
            format!("header promises {k} clauses, found {}", ls.len() - 1),
        )
        .into());
    }
    let mut clauses = Vec::with_capacity(k);
    for (line, toks) in &ls[1..] {
        if toks.len() != 3 {
            return Err(syntax(*line, "a clause has exactly three literals").into());
        }
        let mut c = [0usize; 3];
        for (slot, tok) in c.iter_mut().zip(toks) {
            let v: i64 = tok
                .parse()
                .map_err(|_| syntax(*line, format!("expected a variable index, found `{tok}`")))?;
            if v < 0 {
                return Err(ReductionError::NonMonotone { line: *line });
            }
            if v == 0 || v as usize > m {
                return Err(ReductionError::OutOfRange {
                    line: *line,
                    var: v,
                    m,
                });
            }
            *slot = v as usize;
        }
        if c[0] == c[1] || c[1] == c[2] || c[0] == c[2] {
            return Err(ReductionError::NonMonotone { line: *line });
        }
        clauses.push(c);
    }
    Ok(Formula { m, clauses })
}

pub fn write_formula(f: &Formula) -> String {
    let mut s = format!("p mono13 {} {}\n", f.m, f.k());
    for c in &f.clauses {
        s.push_str(&format!("{} {} {}\n", c[0], c[1], c[2]));
    }
    s
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Assignment {
    pub bits: Vec<bool>,
}

impl Assignment {
    pub fn parse(text: &str) -> Result<Assignment, ReductionError> {
        let bits = text
            .chars()
            .filter(|c| !c.is_whitespace() && *c != ',')
            .map(|c| match c {
                'T' | 't' | '1' => Ok(true),
                'F' | 'f' | '0' => Ok(false),
                _ => Err(ReductionError::BadAssignment(text.trim().to_owned())),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Assignment { bits })
    }

    /// Bit i-1 of `mask` is variable v_i.
    pub fn from_mask(m: usize, mask: u64) -> Assignment {
        Assignment {
            bits: (0..m).map(|i| mask >> i & 1 == 1).collect(),
        }
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "T" } else { "F" })?;
        }
        Ok(())
    }
}

pub fn satisfies_1in3(f: &Formula, a: &Assignment) -> bool {
    assert_eq!(a.bits.len(), f.m, "assignment length must equal m");
    f.clauses
        .iter()
        .all(|c| c.iter().filter(|&&v| a.bits[v - 1]).count() == 1)
}

/// Scans assignments in counting order, v1 being the lowest bit, and returns
/// the first that satisfies the formula.
pub fn solve_1in3_bruteforce(f: &Formula) -> Result<Option<Assignment>, ReductionError> {
    Ok(all_solutions_iter(f)?.next())
}

pub fn all_solutions(f: &Formula) -> Result<Vec<Assignment>, ReductionError> {
    Ok(all_solutions_iter(f)?.collect())
}

fn all_solutions_iter(
    f: &Formula,
) -> Result<impl Iterator<Item = Assignment> + '_, ReductionError> {
    if f.m > ORACLE_MAX_VARS {
        return Err(ReductionError::TooLarge(f.m));
    }
    let masks: Vec<u64> = f
        .clauses
        .iter()
        .map(|c| c.iter().fold(0u64, |acc, &v| acc | 1 << (v - 1)))
        .collect();
    Ok((0..1u64 << f.m)
        .filter(move |bits| masks.iter().all(|cm| (cm & bits).count_ones() == 1))
        .map(move |bits| Assignment::from_mask(f.m, bits)))
}

fn g(name: &str) -> Glue {
    Glue::new(name)
}

pub fn encode_x(f: &Formula, h: usize) -> Vec<Glue> {
    let (c, n, v) = (g("c"), g("n"), g("v"));
    let mut out = Vec::new();
    for j in 1..=f.k() {
        out.push(c);
        out.extend(std::iter::repeat_n(n, h));
        out.extend((1..=f.m).map(|i| if f.contains(j, i) { v } else { n }));
        out.extend(std::iter::repeat_n(n, j - 1));
    }
    out.push(c);
    out
}

pub fn encode_y(a: &Assignment, k: usize) -> Vec<Glue> {
    let (tf, tt) = (g("F"), g("T"));
    a.bits
        .iter()
        .map(|&b| if b { tt } else { tf })
        .chain(std::iter::repeat_n(tf, k))
        .collect()
}

pub fn build_circuit_seed(f: &Formula, a: &Assignment, h: usize) -> LSeed {
    assert!(h >= 1);
    let mut x = vec![g("n"); f.m + 1];
    x.extend(encode_x(f, h));
    let mut y = vec![g("f"); h - 1];
    y.push(g("F"));
    y.extend(encode_y(a, f.k()));
    LSeed::new(x, y).expect("non-empty by construction")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Column {
    /// Joint column q in 1..=m+1.
    Joint {
        q: usize,
    },
    /// Leading `c` of clause j.
    Clause {
        j: usize,
    },
    Prepad {
        j: usize,
        o: usize,
    },
    Member {
        j: usize,
        i: usize,
        listed: bool,
    },
    Postpad {
        j: usize,
        p: usize,
    },
    Trailing,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircuitLayout {
    pub h: usize,
    pub m: usize,
    pub k: usize,
    pub columns: Vec<Column>,
}

impl CircuitLayout {
    pub fn new(f: &Formula, h: usize) -> CircuitLayout {
        let mut columns: Vec<Column> = (1..=f.m + 1).map(|q| Column::Joint { q }).collect();
        for j in 1..=f.k() {
            columns.push(Column::Clause { j });
            columns.extend((1..=h).map(|o| Column::Prepad { j, o }));
            columns.extend((1..=f.m).map(|i| Column::Member {
                j,
                i,
                listed: f.contains(j, i),
            }));
            columns.extend((1..j).map(|p| Column::Postpad { j, p }));
        }
        columns.push(Column::Trailing);
        CircuitLayout {
            h,
            m: f.m,
            k: f.k(),
            columns,
        }
    }

    pub fn width(&self) -> usize {
        self.columns.len()
    }

    pub fn height(&self) -> usize {
        self.h + self.m + self.k
    }

    pub fn expected_width(h: usize, m: usize, k: usize) -> usize {
        (m + 1) + (k + 1) + k * (h + m) + k * k.saturating_sub(1) / 2
    }

    /// 1-based column index of a descriptor.
    pub fn column_of(&self, col: Column) -> Option<usize> {
        self.columns.iter().position(|&c| c == col).map(|i| i + 1)
    }
}

/// Paints the evaluation region without consulting any assignment.
pub fn paint_circuit(f: &Formula, h: usize) -> Pattern {
    assert!(h >= 1);
    let lay = CircuitLayout::new(f, h);
    let (m, k) = (f.m, f.k());
    let top = lay.height();
    let mut p = Pattern::filled(lay.width(), top, CYAN);
    // a diagonal column: `below` under row d, `diag` at d, cyan up to `last`, CE above
    let stripe = |p: &mut Pattern, x: usize, d: usize, below, diag, last: usize| {
        for y in 1..=top {
            let c = if y < d {
                below
            } else if y == d {
                diag
            } else if y <= last {
                CYAN
            } else {
                CE
            };
            p.set(x, y, c);
        }
    };
    for (ix, col) in lay.columns.iter().enumerate() {
        let x = ix + 1;
        match *col {
            Column::Joint { q } => stripe(&mut p, x, h + q - 1, WHITE, DGNL_WHITE, top),
            Column::Clause { j } => {
                for y in 1..=top {
                    let c = if j == 1 {
                        if y <= h + m {
                            INIT
                        } else {
                            RED
                        }
                    } else if y <= h + m + j - 2 {
                        INIT
                    } else if y == h + m + j - 1 {
                        SAT
                    } else {
                        CE
                    };
                    p.set(x, y, c);
                }
            }
            Column::Prepad { j, o } => stripe(&mut p, x, o, WHITE, DGNL_WHITE, h + m + j - 1),
            Column::Member { j, i, listed } => {
                let (below, diag) = if listed {
                    (BLACK, DGNL_BLACK)
                } else {
                    (WHITE, DGNL_WHITE)
                };
                stripe(&mut p, x, h + i, below, diag, h + m + j - 1)
            }
            Column::Postpad { j, p: pp } => {
                stripe(&mut p, x, h + m + pp, WHITE, DGNL_WHITE, h + m + j - 1)
            }
            Column::Trailing => {
                for y in 1..=top {
                    p.set(x, y, if y < top || k == 0 { INIT } else { SAT });
                }
            }
        }
    }
    p
}

/// Where the first two-true clause goes wrong: the membership column of its
/// second true variable, on the clause's evaluation row. The cell receives
/// `s` from the west and `T` from the south; no CE tile matches, so the
/// yellow tile lands where the pattern has CE.
pub fn expected_jam(f: &Formula, a: &Assignment, h: usize) -> Option<(usize, usize)> {
    let lay = CircuitLayout::new(f, h);
    for (j0, c) in f.clauses.iter().enumerate() {
        let j = j0 + 1;
        let mut trues: Vec<usize> = c.iter().copied().filter(|&v| a.bits[v - 1]).collect();
        trues.sort();
        if trues.len() >= 2 {
            let x = lay.column_of(Column::Member {
                j,
                i: trues[1],
                listed: true,
            })?;
            return Some((x, h + f.m + j));
        }
    }
    None
}

/// The full reduced pattern P(φ) for a validated blueprint.
pub fn reduce(f: &Formula, bp: &GadgetBlueprint) -> Result<Pattern, ReductionError> {
    let gad = gadget::assemble_gadget(bp)?.pattern();
    let h = gad.height;
    let circuit = paint_circuit(f, h);
    let mut p = Pattern::filled(gad.width + circuit.width, circuit.height, CYAN);
    p.blit(&gad, 1, 1);
    p.blit(&circuit, gad.width + 1, 1);
    Ok(p)
}

pub fn build_seed(
    f: &Formula,
    a: &Assignment,
    bp: &GadgetBlueprint,
) -> Result<LSeed, ReductionError> {
    if a.bits.len() != f.m {
        return Err(ReductionError::Arity {
            got: a.bits.len(),
            want: f.m,
        });
    }
    let mut x = bp.x_north.clone();
    x.extend(std::iter::repeat_n(g("n"), f.m + 1));
    x.extend(encode_x(f, bp.height));
    let mut y = bp.y_east.clone();
    y.extend(encode_y(a, f.k()));
    Ok(LSeed::new(x, y).expect("non-empty by construction"))
}
