//! Transcript tests. Each `golden/*.golden` file starts with the command line,
//! then the exit code, then the exact stdout. Set `UPDATE_GOLDEN=1` to rewrite
//! the transcripts from the current build.

use std::path::PathBuf;

use varcomplex::cli::run;

fn transcripts() -> Vec<PathBuf> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden");
    let mut out: Vec<PathBuf> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "golden"))
        .collect();
    out.sort();
    out
}

fn transcript(args: &str) -> String {
    let out = run(std::iter::once("varcomplex").chain(args.split_whitespace()));
    format!("$ varcomplex {args}\nexit {}\n{}", out.code, out.stdout)
}

#[test]
fn transcripts_match() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let files = transcripts();
    assert!(files.len() >= 20);
    for path in files {
        let expected = std::fs::read_to_string(&path).unwrap();
        let args = expected.lines().next().unwrap().strip_prefix("$ varcomplex ").unwrap().to_string();
        let actual = transcript(&args);
        if update {
            std::fs::write(&path, &actual).unwrap();
        } else {
            assert_eq!(actual, expected, "{}", path.display());
        }
    }
}

#[test]
fn output_is_byte_identical_across_runs() {
    for path in transcripts() {
        let text = std::fs::read_to_string(&path).unwrap();
        let args = text.lines().next().unwrap().strip_prefix("$ varcomplex ").unwrap();
        assert_eq!(transcript(args), transcript(args), "{args}");
    }
}
