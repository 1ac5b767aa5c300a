use std::io::Write;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_varcomplex"))
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = bin().args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["check-invariance", "kg2d", "u1"]).0, 0);
    assert_eq!(run(&["check-invariance", "kg2d", "phase-phi"]).0, 1);
    assert_eq!(run(&["derive-el", "nosuch"]).0, 2);
    assert_eq!(run(&["derive-el", "kg2d", "--format=pdf"]).0, 2);
    assert_eq!(run(&["momentum", "kg2d", "boost"]).0, 2);
    assert_eq!(run(&["derive-el", "kg2d", "--dim=3"]).0, 2);
    assert_eq!(run(&["momentum", "kg2d", "translation", "--max-terms=3"]).0, 3);
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn diagnostics_go_to_stderr() {
    let (code, stdout, stderr) = run(&["derive-el", "nosuch"]);
    assert_eq!(code, 2);
    assert!(stdout.is_empty());
    assert!(stderr.contains("unknown scenario 'nosuch'"));
    let (_, _, stderr) = run(&["check-noether", "kg2d", "time", "u1"]);
    assert!(stderr.contains("assuming [time, u1] = 0"));
}

fn scenario_file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn scenario_files() {
    let (_, text, _) = run(&["render", "kg2d"]);
    let f = scenario_file(&text);
    let path = f.path().to_str().unwrap();
    let (code, from_file, _) = run(&["derive-el", &format!("--scenario-file={path}")]);
    assert_eq!(code, 0);
    assert_eq!(from_file, run(&["derive-el", "kg2d"]).1);
    let (code, _, _) = run(&["check-noether", &format!("--scenario-file={path}"), "time", "space"]);
    assert_eq!(code, 0);
    let (code, positional, _) = run(&["momentum", path, "u1"]);
    assert_eq!(code, 0);
    assert_eq!(positional, run(&["momentum", "kg2d", "u1"]).1);
}

#[test]
fn parse_errors_report_line_and_column() {
    let f = scenario_file("scenario broken\ndim 2\nhodge abstract\nfield phi\nL = d(phi)^star(d(psi))\n");
    let (code, stdout, stderr) = run(&["derive-el", &format!("--scenario-file={}", f.path().display())]);
    assert_eq!(code, 2);
    assert!(stdout.is_empty());
    assert!(stderr.contains("5:19: unknown symbol 'psi'"), "{stderr}");
    let f = scenario_file("scenario broken\ndim 2\nhodge abstract\nfield phi\nL = (phi\n");
    let (_, _, stderr) = run(&["derive-el", &format!("--scenario-file={}", f.path().display())]);
    assert!(stderr.contains("5:9: expected ')'"), "{stderr}");
}

#[test]
fn render_reads_back_ast() {
    let (_, json, _) = run(&["render", "kg2d", "--format=ast", "--expr=d(phi)^star(d(phibar))"]);
    let (code, plain, _) = run(&["render", "kg2d", &format!("--expr={}", json.trim())]);
    assert_eq!(code, 0);
    let (_, direct, _) = run(&["render", "kg2d", "--expr=d(phi)^star(d(phibar))"]);
    assert_eq!(plain, direct);
}

#[test]
fn parametric_dimension() {
    let (code, out, _) = run(&["derive-el", "kg-abstract", "--dim=6"]);
    assert_eq!(code, 0);
    assert!(out.contains("x5"));
    assert_eq!(run(&["derive-el", "yangmills", "--dim=1"]).0, 2);
}
