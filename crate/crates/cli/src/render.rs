use std::collections::BTreeMap;
use std::fmt::Write as _;

use anyhow::{bail, Result};
use clap::ValueEnum;
use patsforge::rtas::{ColorId, Pattern};
use patsforge::teval::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Ascii,
    Ppm,
    Svg,
}

#[derive(Clone, Debug)]
pub struct RenderSpec {
    pub format: Format,
    /// Pixels per cell side (ppm and svg).
    pub cell: usize,
    pub palette: BTreeMap<ColorId, (char, [u8; 3])>,
}

impl RenderSpec {
    pub fn new(format: Format, cell: usize) -> Self {
        RenderSpec {
            format,
            cell: cell.max(1),
            palette: default_palette(),
        }
    }
}

pub fn default_palette() -> BTreeMap<ColorId, (char, [u8; 3])> {
    [
        (CYAN, '~', [0, 200, 230]),
        (CE, 'C', [150, 150, 150]),
        (WHITE, 'w', [255, 255, 255]),
        (BLACK, 'b', [0, 0, 0]),
        (DGNL_WHITE, 'W', [215, 215, 215]),
        (DGNL_BLACK, 'B', [70, 70, 70]),
        (INIT, 'I', [240, 150, 30]),
        (SAT, 'S', [40, 170, 60]),
        (YELLOW, 'Y', [250, 230, 20]),
        (RED, 'F', [220, 30, 30]),
        (BLUE, 'T', [30, 60, 220]),
    ]
    .into_iter()
    .map(|(c, g, rgb)| (c, (g, rgb)))
    .collect()
}

pub fn render(p: &Pattern, spec: &RenderSpec) -> Result<Vec<u8>> {
    for c in p.colors() {
        if !spec.palette.contains_key(&c) {
            bail!("missing palette entry for color {c}");
        }
    }
    let entry = |x: usize, y: usize| spec.palette[&p.get(x, y)];
    // rows go top first in every format
    let rows = || (1..=p.height).rev();
    Ok(match spec.format {
        Format::Ascii => {
            let mut s = String::with_capacity((p.width + 1) * p.height);
            for y in rows() {
                s.extend((1..=p.width).map(|x| entry(x, y).0));
                s.push('\n');
            }
            s.into_bytes()
        }
        Format::Ppm => {
            let k = spec.cell;
            let mut out = format!("P6\n{} {}\n255\n", p.width * k, p.height * k).into_bytes();
            for y in rows() {
                let mut line = Vec::with_capacity(p.width * k * 3);
                for x in 1..=p.width {
                    for _ in 0..k {
                        line.extend_from_slice(&entry(x, y).1);
                    }
                }
                for _ in 0..k {
                    out.extend_from_slice(&line);
                }
            }
            out
        }
        Format::Svg => {
            let k = spec.cell;
            let mut s = format!(
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" shape-rendering=\"crispEdges\">\n",
                p.width * k,
                p.height * k
            );
            for (row, y) in rows().enumerate() {
                for x in 1..=p.width {
                    let [r, g, b] = entry(x, y).1;
                    let _ = writeln!(
                        s,
                        "<rect x=\"{}\" y=\"{}\" width=\"{k}\" height=\"{k}\" fill=\"#{r:02x}{g:02x}{b:02x}\"/>",
                        (x - 1) * k,
                        row * k
                    );
                }
            }
            s.push_str("</svg>\n");
            s.into_bytes()
        }
    })
}
