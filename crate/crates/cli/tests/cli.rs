use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_patsforge"))
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join(name)
}

fn teval() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/data/teval.tiles")
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

struct Scratch {
    dir: tempfile::TempDir,
}

impl Scratch {
    fn new() -> Self {
        Scratch {
            dir: tempfile::tempdir().unwrap(),
        }
    }

    fn path(&self, name: &str) -> String {
        self.dir.path().join(name).to_string_lossy().into_owned()
    }

    fn write(&self, name: &str, text: &str) -> String {
        let p = self.path(name);
        fs::write(&p, text).unwrap();
        p
    }
}

fn circuit_files(s: &Scratch, assignment: &str) -> (String, String) {
    let cnf = data("data/example.cnf");
    let cnf = cnf.to_str().unwrap();
    let pat = s.path("circuit.pattern");
    assert_eq!(code(&run(&["reduce", cnf, "--h", "3", "-o", &pat])), 0);
    let out = run(&["--seedgen", cnf, assignment, "--h", "3"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let seed = s.write("circuit.seed", &String::from_utf8(out.stdout).unwrap());
    (pat, seed)
}

#[test]
fn circuit_render_matches_golden() {
    let s = Scratch::new();
    let (pat, _) = circuit_files(&s, "FFTT");
    let out = run(&["render", &pat, "--format", "ascii"]);
    assert_eq!(code(&out), 0);
    let golden = fs::read(data("golden/circuit_example.txt")).unwrap();
    assert_eq!(out.stdout, golden);
    // determinism
    assert_eq!(run(&["render", &pat]).stdout, golden);
}

#[test]
fn satisfying_seed_reproduces_circuit() {
    let s = Scratch::new();
    let (pat, seed) = circuit_files(&s, "FFTT");
    let out = run(&[
        "simulate",
        teval().to_str().unwrap(),
        &seed,
        "--expect",
        &pat,
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert_eq!(out.stdout, fs::read(&pat).unwrap());
}

#[test]
fn unsatisfying_seed_is_a_domain_failure() {
    let s = Scratch::new();
    let (pat, seed) = circuit_files(&s, "TFTF");
    let out = run(&[
        "simulate",
        teval().to_str().unwrap(),
        &seed,
        "--expect",
        &pat,
    ]);
    assert_eq!(code(&out), 1);
    assert!(
        stderr(&out).contains("differs at (12,8): expected CE got yellow"),
        "{}",
        stderr(&out)
    );
}

#[test]
fn stuck_run_reports_the_cell() {
    let s = Scratch::new();
    let ts = s.write("one.tiles", "tileset 1\ntile t red a a a a\n");
    let seed = s.write("s.seed", "seed 2 1\nx: a b\ny: a\n");
    let out = run(&["simulate", &ts, &seed]);
    assert_eq!(code(&out), 1);
    assert!(
        stderr(&out).contains("stuck at (2,1): west=a south=b"),
        "{}",
        stderr(&out)
    );
}

#[test]
fn usage_and_io_errors_exit_2() {
    assert_eq!(code(&run(&["frobnicate"])), 2);
    assert_eq!(code(&run(&["render", "/definitely/not/here.pattern"])), 2);
    assert_eq!(code(&run(&["simulate", "--bogus-flag"])), 2);
    let s = Scratch::new();
    let bad = s.write("bad.pattern", "pattern 2 1 1\nred\n");
    let out = run(&["render", &bad]);
    assert_eq!(code(&out), 2);
    assert!(
        stderr(&out).contains("line 2: expected 2 colors"),
        "{}",
        stderr(&out)
    );
}

#[test]
fn solve_writes_a_reproducing_rtas() {
    let s = Scratch::new();
    let p = s.write("p.pattern", "pattern 3 2 2\nred blue red\nblue red blue\n");
    let out_file = s.path("out.rtas");
    let out = run(&["solve", &p, "--oracle", "-o", &out_file]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stderr(&out).contains("oracle agrees: 2 types"));
    let text = fs::read_to_string(&out_file).unwrap();
    let (ts, seed) = patsforge::formats::parse_rtas(&text).unwrap();
    let a = patsforge::rtas::simulate(&ts, &seed).completed().unwrap();
    assert_eq!(
        patsforge::formats::write_pattern(&a.pattern()),
        fs::read_to_string(&p).unwrap()
    );
    assert_eq!(code(&run(&["solve", &p, "--budget", "1"])), 1);
}

#[test]
fn solve_oracle_refuses_large_patterns() {
    let s = Scratch::new();
    let p = s.write(
        "big.pattern",
        "pattern 4 4 1\nred red red red\nred red red red\nred red red red\nred red red red\n",
    );
    assert_eq!(code(&run(&["solve", &p])), 0);
    assert_eq!(code(&run(&["solve", &p, "--oracle"])), 2);
}

#[test]
fn eval_exit_codes() {
    let cnf = data("data/example.cnf");
    let cnf = cnf.to_str().unwrap();
    let ok = run(&["eval", cnf, "FTFF"]);
    assert_eq!(code(&ok), 0);
    assert!(String::from_utf8_lossy(&ok.stdout).contains("FTFF: satisfies"));
    let bad = run(&["eval", cnf, "TFTF"]);
    assert_eq!(code(&bad), 1);
    assert!(String::from_utf8_lossy(&bad.stdout).contains("clause 1 (1 2 3): 2 true, violated"));
    assert_eq!(code(&run(&["eval", cnf, "TF"])), 2);
}

#[test]
fn verify_lb3_machine_output() {
    let out = run(&["verify", "lb3", "--machine"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("lb3 0 survive ")));
    assert!(text.ends_with("lb3 verdict pass\n"));
}

#[test]
fn verify_shipped_gadget() {
    let bp = Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/data/gadget.bp");
    let out = run(&["verify", "gadget", bp.to_str().unwrap(), "--machine"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().all(|l| l.ends_with(" pass")));
    assert_eq!(text.lines().count(), 9);
}

#[test]
fn full_scale_lb4_is_refused() {
    let out = run(&["verify", "lb4", "--c", "25", "--r", "13"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn reduce_with_scaled_gadget() {
    let s = Scratch::new();
    let bp = s.write(
        "g.bp",
        &patsforge::gadget::write_blueprint(&patsforge::gadget::build_blueprint(6, 3)),
    );
    let cnf = data("data/example.cnf");
    let cnf = cnf.to_str().unwrap();
    let pat = s.path("p.pattern");
    assert_eq!(code(&run(&["reduce", cnf, "--gadget", &bp, "-o", &pat])), 0);
    let seed_out = run(&["--seedgen", cnf, "TFFF", "--gadget", &bp]);
    assert_eq!(code(&seed_out), 0);
    let seed = s.write("p.seed", &String::from_utf8(seed_out.stdout).unwrap());
    let out = run(&[
        "simulate",
        teval().to_str().unwrap(),
        &seed,
        "--expect",
        &pat,
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
}
