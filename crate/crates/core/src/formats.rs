//! Plain-text formats for tile sets, seeds and patterns. Tokens are
//! whitespace separated and `#` starts a comment.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::rtas::{ColorId, Glue, LSeed, Pattern, TileSet, TileType};
use crate::teval;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("unexpected end of input: {0}")]
    Truncated(String),
}

pub(crate) fn syntax(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        msg: msg.into(),
    }
}

/// Non-empty lines with comments stripped, paired with 1-based line numbers.
pub(crate) fn lines(text: &str) -> Vec<(usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .filter_map(|(i, l)| {
            let l = l.split('#').next().unwrap_or("");
            let toks: Vec<&str> = l.split_whitespace().collect();
            (!toks.is_empty()).then_some((i + 1, toks))
        })
        .collect()
}

pub(crate) fn number(line: usize, tok: &str, what: &str) -> Result<usize, FormatError> {
    tok.parse::<usize>()
        .map_err(|_| syntax(line, format!("expected {what}, found `{tok}`")))
}

pub fn parse_color(tok: &str) -> Option<ColorId> {
    teval::color_by_name(tok).or_else(|| tok.parse::<u16>().ok().map(ColorId))
}

fn color_at(line: usize, tok: &str) -> Result<ColorId, FormatError> {
    parse_color(tok).ok_or_else(|| syntax(line, format!("unknown color `{tok}`")))
}

fn expect_header<'a>(
    ls: &'a [(usize, Vec<&'a str>)],
    word: &str,
    arity: usize,
) -> Result<(usize, &'a [&'a str]), FormatError> {
    let (line, toks) = ls
        .first()
        .ok_or_else(|| FormatError::Truncated(format!("missing `{word}` header")))?;
    if toks[0] != word || toks.len() != arity + 1 {
        return Err(syntax(
            *line,
            format!("expected `{word}` header with {arity} fields"),
        ));
    }
    Ok((*line, &toks[1..]))
}

pub fn parse_tileset(text: &str) -> Result<TileSet, FormatError> {
    let ls = lines(text);
    tileset_from_lines(&ls)
}

fn tileset_from_lines(ls: &[(usize, Vec<&str>)]) -> Result<TileSet, FormatError> {
    let (line, head) = expect_header(ls, "tileset", 1)?;
    let n = number(line, head[0], "tile count")?;
    let body = &ls[1..];
    if body.len() != n {
        let at = body.get(n).map(|l| l.0).unwrap_or(line);
        return Err(syntax(
            at,
            format!("header promises {n} tiles, found {}", body.len()),
        ));
    }
    let mut types = Vec::with_capacity(n);
    for (line, toks) in body {
        if toks.len() != 7 || toks[0] != "tile" {
            return Err(syntax(
                *line,
                "expected `tile <name> <color> <N> <W> <S> <E>`",
            ));
        }
        let color = color_at(*line, toks[2])?;
        let mut t = TileType::new(
            Glue::new(toks[3]),
            Glue::new(toks[4]),
            Glue::new(toks[5]),
            Glue::new(toks[6]),
            color,
        );
        if toks[1] != "_" {
            t = t.named(toks[1]);
        }
        types.push(t);
    }
    TileSet::new(types).map_err(|e| syntax(line, e.to_string()))
}

pub fn write_tileset(ts: &TileSet) -> String {
    let mut s = format!("tileset {}\n", ts.len());
    for t in ts.types() {
        let _ = writeln!(
            s,
            "tile {} {} {} {} {} {}",
            t.name.as_deref().unwrap_or("_"),
            t.color,
            t.north,
            t.west,
            t.south,
            t.east
        );
    }
    s
}

pub fn parse_seed(text: &str) -> Result<LSeed, FormatError> {
    seed_from_lines(&lines(text))
}

fn seed_from_lines(ls: &[(usize, Vec<&str>)]) -> Result<LSeed, FormatError> {
    let (line, head) = expect_header(ls, "seed", 2)?;
    let w = number(line, head[0], "width")?;
    let h = number(line, head[1], "height")?;
    if ls.len() != 3 {
        return Err(FormatError::Truncated(
            "seed needs `x:` and `y:` lines".into(),
        ));
    }
    let row = |k: usize, tag: &str, len: usize| -> Result<Vec<Glue>, FormatError> {
        let (line, toks) = &ls[k];
        if toks[0] != tag {
            return Err(syntax(*line, format!("expected `{tag}` line")));
        }
        if toks.len() - 1 != len {
            return Err(syntax(
                *line,
                format!("expected {len} glues, found {}", toks.len() - 1),
            ));
        }
        Ok(toks[1..].iter().map(|t| Glue::new(t)).collect())
    };
    let x = row(1, "x:", w)?;
    let y = row(2, "y:", h)?;
    LSeed::new(x, y).map_err(|e| syntax(line, e.to_string()))
}

pub fn write_seed(seed: &LSeed) -> String {
    let join = |v: &[Glue]| v.iter().map(|g| g.name()).collect::<Vec<_>>().join(" ");
    format!(
        "seed {} {}\nx: {}\ny: {}\n",
        seed.width(),
        seed.height(),
        join(&seed.x_north),
        join(&seed.y_east)
    )
}

/// A tile set followed by a seed in one document, as written by `solve`.
pub fn parse_rtas(text: &str) -> Result<(TileSet, LSeed), FormatError> {
    let ls = lines(text);
    let split = ls
        .iter()
        .position(|l| l.1[0] == "seed")
        .ok_or_else(|| FormatError::Truncated("missing `seed` section".into()))?;
    Ok((
        tileset_from_lines(&ls[..split])?,
        seed_from_lines(&ls[split..])?,
    ))
}

pub fn write_rtas(ts: &TileSet, seed: &LSeed) -> String {
    format!("{}{}", write_tileset(ts), write_seed(seed))
}

pub fn parse_pattern(text: &str) -> Result<Pattern, FormatError> {
    let ls = lines(text);
    let (line, head) = expect_header(&ls, "pattern", 3)?;
    let w = number(line, head[0], "width")?;
    let h = number(line, head[1], "height")?;
    let k = number(line, head[2], "color count")?;
    if w == 0 || h == 0 {
        return Err(syntax(line, "pattern must be at least 1x1"));
    }
    if ls.len() - 1 != h {
        return Err(syntax(
            line,
            format!("expected {h} rows, found {}", ls.len() - 1),
        ));
    }
    let mut cells = vec![ColorId(0); w * h];
    for (r, (line, toks)) in ls[1..].iter().enumerate() {
        if toks.len() != w {
            return Err(syntax(
                *line,
                format!("expected {w} colors, found {}", toks.len()),
            ));
        }
        // rows are listed top first
        let y = h - r;
        for (x, tok) in toks.iter().enumerate() {
            cells[(y - 1) * w + x] = color_at(*line, tok)?;
        }
    }
    let distinct: BTreeSet<_> = cells.iter().collect();
    if distinct.len() != k {
        return Err(syntax(
            line,
            format!("header says {k} colors, found {}", distinct.len()),
        ));
    }
    Pattern::new(w, h, cells).map_err(|e| syntax(line, e.to_string()))
}

pub fn write_pattern(p: &Pattern) -> String {
    let mut s = format!("pattern {} {} {}\n", p.width, p.height, p.colors().len());
    for y in (1..=p.height).rev() {
        let row: Vec<String> = (1..=p.width).map(|x| p.get(x, y).to_string()).collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::teval::{t_eval, TEVAL_FILE};

    #[test]
    fn bundled_teval_matches_table() {
        let parsed = parse_tileset(TEVAL_FILE).unwrap();
        assert_eq!(parsed, t_eval());
        for (a, b) in parsed.types().iter().zip(t_eval().types()) {
            assert_eq!(a.name, b.name);
        }
    }

    #[test]
    fn tileset_count_mismatch() {
        let err = parse_tileset("tileset 2\ntile a red c F c f\n").unwrap_err();
        assert!(matches!(err, FormatError::Syntax { line: 1, .. }));
    }

    #[test]
    fn seed_roundtrip_and_comments() {
        let s = parse_seed("# counter\nseed 2 3\nx: 0 0 # tail\ny: 1 1 1\n").unwrap();
        assert_eq!(s.width(), 2);
        assert_eq!(parse_seed(&write_seed(&s)).unwrap(), s);
        assert!(parse_seed("seed 2 1\nx: 0\ny: 1\n").is_err());
    }

    #[test]
    fn pattern_rows_top_first() {
        let p = parse_pattern("pattern 2 2 2\nred red\nblue red\n").unwrap();
        assert_eq!(p.get(1, 1), teval::BLUE);
        assert_eq!(p.get(1, 2), teval::RED);
        assert_eq!(parse_pattern(&write_pattern(&p)).unwrap(), p);
        assert!(parse_pattern("pattern 2 1 2\nred red\n").is_err());
        assert_eq!(
            parse_pattern("pattern 1 1 1\n40\n").unwrap().get(1, 1),
            ColorId(40)
        );
    }

    #[test]
    fn combined_document() {
        let ts = t_eval();
        let seed = LSeed::new(crate::rtas::glues("n c"), crate::rtas::glues("F")).unwrap();
        let (a, b) = parse_rtas(&write_rtas(&ts, &seed)).unwrap();
        assert_eq!((a, b), (ts, seed));
    }
}
