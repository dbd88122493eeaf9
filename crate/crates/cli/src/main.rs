mod render;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use patsforge::formats::{
    parse_pattern, parse_seed, parse_tileset, write_pattern, write_rtas, write_seed,
};
use patsforge::gadget::{parse_blueprint, shipped_blueprint, validate, GadgetBlueprint};
use patsforge::reduction::{
    build_circuit_seed, build_seed, paint_circuit, parse_formula, reduce, satisfies_1in3,
    Assignment, Formula,
};
use patsforge::rtas::{antidiagonal_order, simulate, SimOutcome};
use patsforge::solver::{
    brute_force_min, min_tileset_with_limit, node_limit_from_env, SolverError,
};
use patsforge::verifier::{verify_lemma_lb3, verify_lemma_lb4, Lb4Params, LemmaReport};

use render::{render, Format, RenderSpec};

#[derive(Parser)]
#[command(
    name = "patsforge",
    version,
    about = "Pattern self-assembly: reduction, simulation, exact solving and lemma checks"
)]
struct Cli {
    /// Print the seed for a formula and an assignment (e.g. FFTT) and exit.
    #[arg(long, num_args = 2, value_names = ["FORMULA", "ASSIGNMENT"])]
    seedgen: Option<Vec<String>>,
    /// With --seedgen: gadget blueprint (defaults to the shipped one).
    #[arg(long, requires = "seedgen")]
    gadget: Option<PathBuf>,
    /// With --seedgen: circuit-only seed of height h+m+k, no gadget.
    #[arg(long, requires = "seedgen", conflicts_with = "gadget")]
    h: Option<usize>,
    #[command(subcommand)]
    cmd: Option<Cmd>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build the pattern P(φ) for a monotone 1-in-3-SAT formula.
    Reduce {
        formula: PathBuf,
        #[arg(long)]
        gadget: Option<PathBuf>,
        /// Emit only the evaluation circuit with this bottom padding, no gadget.
        #[arg(long, conflicts_with = "gadget")]
        h: Option<usize>,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Run a directed RTAS from its seed and print the terminal pattern.
    Simulate {
        tileset: PathBuf,
        seed: PathBuf,
        /// Report outcome and per-type usage on stderr.
        #[arg(long)]
        diag: bool,
        /// Fail unless the terminal pattern equals this one.
        #[arg(long)]
        expect: Option<PathBuf>,
    },
    /// Find a smallest directed RTAS for a pattern.
    Solve {
        pattern: PathBuf,
        #[arg(long)]
        budget: Option<usize>,
        /// Cross-check the size against exhaustive enumeration (tiny patterns).
        #[arg(long)]
        oracle: bool,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Mechanical checks of the lower-bound lemmas and of a gadget blueprint.
    Verify {
        #[command(subcommand)]
        what: VerifyCmd,
    },
    /// Draw a pattern.
    Render {
        pattern: PathBuf,
        #[arg(long, value_enum, default_value = "ascii")]
        format: Format,
        /// Pixels per cell for ppm and svg.
        #[arg(long, default_value_t = 8)]
        cell: usize,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Check an assignment against a formula clause by clause.
    Eval {
        formula: PathBuf,
        assignment: String,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    Lb4 {
        #[arg(long, default_value_t = 7)]
        c: usize,
        #[arg(long, default_value_t = 4)]
        r: usize,
        /// One line per candidate instead of the summary.
        #[arg(long)]
        machine: bool,
    },
    Lb3 {
        #[arg(long)]
        machine: bool,
    },
    Gadget {
        blueprint: PathBuf,
        #[arg(long)]
        machine: bool,
    },
}

/// Ok(false) is a domain failure: stuck, infeasible, or a failed check.
type Outcome = Result<bool>;

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn emit(out: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match out {
        Some(p) => fs::write(p, bytes).with_context(|| format!("cannot write {}", p.display())),
        None => io::stdout().write_all(bytes).context("cannot write stdout"),
    }
}

fn load_formula(path: &Path) -> Result<Formula> {
    parse_formula(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn load_blueprint(path: Option<&Path>) -> Result<GadgetBlueprint> {
    match path {
        Some(p) => parse_blueprint(&read(p)?).with_context(|| format!("in {}", p.display())),
        None => Ok(shipped_blueprint()),
    }
}

/// An assignment is given inline (FFTT, 0011) or as a file holding one.
fn load_assignment(arg: &str) -> Result<Assignment> {
    let p = Path::new(arg);
    let text = if p.is_file() {
        read(p)?
    } else {
        arg.to_owned()
    };
    Ok(Assignment::parse(&text)?)
}

fn seedgen(args: &[String], gadget: Option<&Path>, h: Option<usize>) -> Outcome {
    let f = load_formula(Path::new(&args[0]))?;
    let a = load_assignment(&args[1])?;
    if a.bits.len() != f.m {
        bail!(
            "assignment has {} values, formula has {} variables",
            a.bits.len(),
            f.m
        );
    }
    let seed = match h {
        Some(0) => bail!("--h must be at least 1"),
        Some(h) => build_circuit_seed(&f, &a, h),
        None => build_seed(&f, &a, &load_blueprint(gadget)?)?,
    };
    emit(None, write_seed(&seed).as_bytes())?;
    Ok(true)
}

fn cmd_reduce(
    formula: &Path,
    gadget: Option<&Path>,
    h: Option<usize>,
    o: Option<&Path>,
) -> Outcome {
    let f = load_formula(formula)?;
    let p = match h {
        Some(0) => bail!("--h must be at least 1"),
        Some(h) => paint_circuit(&f, h),
        None => match reduce(&f, &load_blueprint(gadget)?) {
            Ok(p) => p,
            Err(e) => {
                eprintln!("{e}");
                return Ok(false);
            }
        },
    };
    emit(o, write_pattern(&p).as_bytes())?;
    Ok(true)
}

fn cmd_simulate(tileset: &Path, seed: &Path, diag: bool, expect: Option<&Path>) -> Outcome {
    let ts = parse_tileset(&read(tileset)?).with_context(|| format!("in {}", tileset.display()))?;
    let seed = parse_seed(&read(seed)?).with_context(|| format!("in {}", seed.display()))?;
    let expect = match expect {
        Some(p) => Some(parse_pattern(&read(p)?).with_context(|| format!("in {}", p.display()))?),
        None => None,
    };
    let out = simulate(&ts, &seed);
    if diag {
        eprintln!("{out}");
    }
    match out {
        SimOutcome::Completed(a) => {
            if diag {
                let mut used = vec![0usize; ts.len()];
                for y in 1..=a.height {
                    for x in 1..=a.width {
                        used[a.index_at(x, y)] += 1;
                    }
                }
                for (t, n) in ts.types().iter().zip(used) {
                    eprintln!("{:>8}  {}", n, t.label());
                }
            }
            let got = a.pattern();
            emit(None, write_pattern(&got).as_bytes())?;
            let Some(want) = expect else {
                return Ok(true);
            };
            if (want.width, want.height) != (got.width, got.height) {
                eprintln!(
                    "size {}x{}, expected {}x{}",
                    got.width, got.height, want.width, want.height
                );
                return Ok(false);
            }
            let diff = antidiagonal_order(got.width, got.height)
                .into_iter()
                .find(|&(x, y)| got.get(x, y) != want.get(x, y));
            match diff {
                Some((x, y)) => {
                    eprintln!(
                        "differs at ({x},{y}): expected {} got {}",
                        want.get(x, y),
                        got.get(x, y)
                    );
                    Ok(false)
                }
                None => Ok(true),
            }
        }
        SimOutcome::Stuck { pos, west, south } => {
            eprintln!(
                "stuck at ({},{}): west={} south={}",
                pos.0, pos.1, west, south
            );
            Ok(false)
        }
        SimOutcome::Ambiguous { pos, candidates } => {
            let names: Vec<String> = candidates.iter().map(|&i| ts.get(i).label()).collect();
            eprintln!("ambiguous at ({},{}): {}", pos.0, pos.1, names.join(" "));
            Ok(false)
        }
    }
}

fn cmd_solve(pattern: &Path, budget: Option<usize>, oracle: bool, o: Option<&Path>) -> Outcome {
    let p = parse_pattern(&read(pattern)?).with_context(|| format!("in {}", pattern.display()))?;
    let budget = budget.unwrap_or(p.width * p.height);
    let sol = match min_tileset_with_limit(&p, budget, node_limit_from_env()) {
        Ok(s) => s,
        Err(e @ SolverError::NodeLimit(_)) => {
            eprintln!("{e}");
            return Ok(false);
        }
        Err(e) => return Err(e.into()),
    };
    let Some(sol) = sol else {
        eprintln!("no directed RTAS with at most {budget} tile types");
        return Ok(false);
    };
    if oracle {
        let brute = brute_force_min(&p, budget)?;
        if brute != Some(sol.size) {
            eprintln!(
                "oracle disagrees: search found {}, enumeration {:?}",
                sol.size, brute
            );
            return Ok(false);
        }
        eprintln!("oracle agrees: {} types", sol.size);
    }
    eprintln!("{} tile types", sol.size);
    emit(o, write_rtas(&sol.tiles, &sol.seed).as_bytes())?;
    Ok(true)
}

fn report(r: &LemmaReport, machine: bool) -> Result<bool> {
    if machine {
        let mut s = r.machine_lines();
        for (name, ok) in &r.checks {
            s.push_str(&format!(
                "{} check {} {}\n",
                r.lemma,
                if *ok { "pass" } else { "fail" },
                name
            ));
        }
        s.push_str(&format!(
            "{} verdict {}\n",
            r.lemma,
            if r.passed() { "pass" } else { "fail" }
        ));
        emit(None, s.as_bytes())?;
    } else {
        println!("{r}");
    }
    Ok(r.passed())
}

fn cmd_verify(what: &VerifyCmd) -> Outcome {
    match what {
        VerifyCmd::Lb4 { c, r, machine } => {
            let params = Lb4Params {
                c: *c,
                r: *r,
                ..Lb4Params::scaled()
            };
            report(&verify_lemma_lb4(params)?, *machine)
        }
        VerifyCmd::Lb3 { machine } => report(&verify_lemma_lb3(), *machine),
        VerifyCmd::Gadget { blueprint, machine } => {
            let bp = parse_blueprint(&read(blueprint)?)
                .with_context(|| format!("in {}", blueprint.display()))?;
            let rep = validate(&bp);
            if *machine {
                let mut s = String::new();
                for c in &rep.checks {
                    s.push_str(&format!(
                        "gadget {} {}\n",
                        c.name,
                        if c.passed { "pass" } else { "fail" }
                    ));
                }
                emit(None, s.as_bytes())?;
            } else {
                print!("{rep}");
                println!("verdict: {}", if rep.passed() { "PASS" } else { "FAIL" });
            }
            Ok(rep.passed())
        }
    }
}

fn cmd_render(pattern: &Path, format: Format, cell: usize, o: Option<&Path>) -> Outcome {
    let p = parse_pattern(&read(pattern)?).with_context(|| format!("in {}", pattern.display()))?;
    match render(&p, &RenderSpec::new(format, cell)) {
        Ok(bytes) => {
            emit(o, &bytes)?;
            Ok(true)
        }
        Err(e) => {
            eprintln!("{e}");
            Ok(false)
        }
    }
}

fn cmd_eval(formula: &Path, assignment: &str) -> Outcome {
    let f = load_formula(formula)?;
    let a = load_assignment(assignment)?;
    if a.bits.len() != f.m {
        bail!(
            "assignment has {} values, formula has {} variables",
            a.bits.len(),
            f.m
        );
    }
    for (j, c) in f.clauses.iter().enumerate() {
        let trues = c.iter().filter(|&&v| a.bits[v - 1]).count();
        let verdict = if trues == 1 { "ok" } else { "violated" };
        println!(
            "clause {} ({} {} {}): {} true, {}",
            j + 1,
            c[0],
            c[1],
            c[2],
            trues,
            verdict
        );
    }
    let sat = satisfies_1in3(&f, &a);
    println!(
        "{a}: {}",
        if sat { "satisfies" } else { "does not satisfy" }
    );
    Ok(sat)
}

fn run(cli: Cli) -> Outcome {
    if let Some(args) = &cli.seedgen {
        return seedgen(args, cli.gadget.as_deref(), cli.h);
    }
    let Some(cmd) = cli.cmd else {
        bail!("no subcommand given; see --help");
    };
    match &cmd {
        Cmd::Reduce {
            formula,
            gadget,
            h,
            o,
        } => cmd_reduce(formula, gadget.as_deref(), *h, o.as_deref()),
        Cmd::Simulate {
            tileset,
            seed,
            diag,
            expect,
        } => cmd_simulate(tileset, seed, *diag, expect.as_deref()),
        Cmd::Solve {
            pattern,
            budget,
            oracle,
            o,
        } => cmd_solve(pattern, *budget, *oracle, o.as_deref()),
        Cmd::Verify { what } => cmd_verify(what),
        Cmd::Render {
            pattern,
            format,
            cell,
            o,
        } => cmd_render(pattern, *format, *cell, o.as_deref()),
        Cmd::Eval {
            formula,
            assignment,
        } => cmd_eval(formula, assignment),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
